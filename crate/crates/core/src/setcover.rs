//! Exact set cover shared by the form-cover and point-cover solvers.

use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::{EchelonBasis, Prime};

/// Default cap on search nodes before a cover search gives up.
pub const NODE_LIMIT: u64 = 100_000_000;

/// Cap on remembered dead states.
const MEMO_LIMIT: usize = 1 << 21;

/// Maximal subsets `F` of `vectors` (by index) whose linear span contains no
/// vector of `excluded`, each closed under the vectors already in its span.
///
/// `None` if some single vector already spans an excluded one (including a
/// zero excluded vector), in which case no cover exists.
pub(crate) fn maximal_flats(
    p: Prime,
    dim: usize,
    vectors: &[Vec<u64>],
    excluded: &[Vec<u64>],
) -> Option<Vec<BitSet>> {
    let n = vectors.len();
    if excluded.iter().any(|t| t.iter().all(|&x| x == 0)) {
        return None;
    }
    let admissible = |b: &EchelonBasis| excluded.iter().all(|t| !b.contains(t));
    let closure = |b: &EchelonBasis| {
        BitSet::from_indices(n, (0..n).filter(|&j| b.contains(&vectors[j])))
    };

    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut stack: Vec<(BitSet, EchelonBasis)> = Vec::new();
    for v in vectors {
        let mut b = EchelonBasis::new(p, dim);
        b.insert(v);
        if !admissible(&b) {
            return None;
        }
        let flat = closure(&b);
        if seen.insert(flat.clone()) {
            stack.push((flat, b));
        }
    }

    let mut maximal = Vec::new();
    while let Some((flat, basis)) = stack.pop() {
        let mut extended = false;
        let mut reached = flat.clone();
        for (j, v) in vectors.iter().enumerate() {
            if reached.contains(j) {
                continue;
            }
            let mut b = basis.clone();
            b.insert(v);
            if !admissible(&b) {
                continue;
            }
            extended = true;
            let bigger = closure(&b);
            for x in bigger.iter() {
                reached.insert(x);
            }
            if seen.insert(bigger.clone()) {
                stack.push((bigger, b));
            }
        }
        if !extended {
            maximal.push(flat);
        }
    }
    maximal.sort_by_key(|s| s.to_vec());
    Some(maximal)
}

/// Exact minimum set cover of `0..n` by a fixed candidate family.
pub(crate) struct ExactCover {
    n: usize,
    /// Surviving candidates after deduplication and dominance removal.
    sets: Vec<BitSet>,
    /// Index of each surviving candidate in the caller's list.
    origin: Vec<usize>,
    /// For each element, candidates containing it in branching order.
    by_element: Vec<Vec<usize>>,
    limit: u64,
}

impl ExactCover {
    pub fn new(n: usize, candidates: &[BitSet]) -> Self {
        let mut order: Vec<usize> = (0..candidates.len())
            .filter(|&c| !candidates[c].is_empty())
            .collect();
        order.sort_by_key(|&c| (candidates[c].to_vec(), c));
        order.dedup_by(|a, b| candidates[*a] == candidates[*b]);
        let kept: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&c| {
                !order.iter().any(|&o| {
                    o != c
                        && candidates[c].is_subset(&candidates[o])
                        && candidates[c] != candidates[o]
                })
            })
            .collect();
        let sets: Vec<BitSet> = kept.iter().map(|&c| candidates[c].clone()).collect();
        let mut by_element = vec![Vec::new(); n];
        for (ci, s) in sets.iter().enumerate() {
            for e in s.iter() {
                by_element[e].push(ci);
            }
        }
        for list in &mut by_element {
            list.sort_by_key(|&ci| std::cmp::Reverse(sets[ci].count()));
        }
        ExactCover {
            n,
            sets,
            origin: kept,
            by_element,
            limit: NODE_LIMIT,
        }
    }

    pub fn with_limit(mut self, limit: u64) -> Self {
        self.limit = limit;
        self
    }

    /// Whether every element lies in at least one candidate.
    pub fn feasible(&self) -> bool {
        self.by_element.iter().all(|l| !l.is_empty())
    }

    /// A cover by at most `max_parts` candidates (caller indices), or `None`.
    pub fn cover_within(&self, max_parts: usize) -> Result<Option<Vec<usize>>> {
        if !self.feasible() {
            return Ok(None);
        }
        let mut state = SearchState {
            nodes: 0,
            failed: HashSet::new(),
            chosen: Vec::new(),
        };
        let all = BitSet::from_indices(self.n, 0..self.n);
        if self.search(&all, max_parts, &mut state)? {
            Ok(Some(state.chosen.iter().map(|&c| self.origin[c]).collect()))
        } else {
            Ok(None)
        }
    }

    /// A minimum cover (caller indices), or `None` if some element lies in
    /// no candidate.
    pub fn min_cover(&self) -> Result<Option<Vec<usize>>> {
        if !self.feasible() {
            return Ok(None);
        }
        let mut best = self.greedy();
        while !best.is_empty() {
            match self.cover_within(best.len() - 1)? {
                Some(better) => best = better,
                None => break,
            }
        }
        Ok(Some(best))
    }

    fn greedy(&self) -> Vec<usize> {
        let mut uncovered = BitSet::from_indices(self.n, 0..self.n);
        let mut chosen = Vec::new();
        while !uncovered.is_empty() {
            let (ci, _) = self
                .sets
                .iter()
                .enumerate()
                .map(|(ci, s)| (ci, s.intersection_count(&uncovered)))
                .max_by_key(|&(ci, c)| (c, std::cmp::Reverse(ci)))
                .expect("feasible instance has candidates");
            uncovered.difference_with(&self.sets[ci]);
            chosen.push(self.origin[ci]);
        }
        chosen
    }

    fn search(&self, uncovered: &BitSet, remaining: usize, st: &mut SearchState) -> Result<bool> {
        let Some(e) = uncovered.first() else {
            return Ok(true);
        };
        if remaining == 0 {
            return Ok(false);
        }
        st.nodes += 1;
        let nodes = st.nodes;
        if nodes > self.limit {
            return Err(Error::SizeGuard {
                required: binomial(self.sets.len() as u128, remaining as u128).max(nodes as u128),
                limit: self.limit as u128,
            });
        }
        let need = uncovered.count();
        let best = self
            .sets
            .iter()
            .map(|c| c.intersection_count(uncovered))
            .max()
            .unwrap_or(0);
        if best * remaining < need {
            return Ok(false);
        }
        let key = (uncovered.clone(), remaining);
        if st.failed.contains(&key) {
            return Ok(false);
        }
        for &ci in &self.by_element[e] {
            let mut next = uncovered.clone();
            next.difference_with(&self.sets[ci]);
            st.chosen.push(ci);
            if self.search(&next, remaining - 1, st)? {
                return Ok(true);
            }
            st.chosen.pop();
        }
        if st.failed.len() < MEMO_LIMIT {
            st.failed.insert(key);
        }
        Ok(false)
    }
}

struct SearchState {
    nodes: u64,
    failed: HashSet<(BitSet, usize)>,
    chosen: Vec<usize>,
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(n: usize, v: &[&[usize]]) -> Vec<BitSet> {
        v.iter().map(|s| BitSet::from_indices(n, s.iter().copied())).collect()
    }

    #[test]
    fn small_instances() {
        let c = sets(4, &[&[0, 1], &[2, 3], &[1, 2], &[0], &[3]]);
        let ec = ExactCover::new(4, &c);
        assert_eq!(ec.min_cover().unwrap().unwrap(), vec![0, 1]);
        assert!(ec.cover_within(1).unwrap().is_none());
        let ec = ExactCover::new(3, &sets(3, &[&[0], &[1]]));
        assert!(ec.min_cover().unwrap().is_none());
        let ec = ExactCover::new(0, &[]);
        assert_eq!(ec.min_cover().unwrap().unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn guard_trips() {
        // 12 elements covered by pairs: the minimum is 6
        let n = 12;
        let mut c = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                c.push(BitSet::from_indices(n, [a, b]));
            }
        }
        let ec = ExactCover::new(n, &c).with_limit(0);
        assert!(matches!(ec.cover_within(6), Err(Error::SizeGuard { .. })));
        let ec = ExactCover::new(n, &c);
        assert!(ec.cover_within(5).unwrap().is_none());
        assert_eq!(ec.min_cover().unwrap().unwrap().len(), 6);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(24, 5), 42504);
        assert_eq!(binomial(3, 5), 0);
    }
}
