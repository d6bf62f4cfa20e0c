//! Cauchy-Schwarz complexity and sequential Cauchy-Schwarz complexity.
//!
//! A *cover* of a set of forms `A` excluding a set `B` is a family of subsets
//! of `A` whose union is `A` and whose linear spans each avoid every form of
//! `B`. The system has CS-complexity at most `k` at `i` when the forms other
//! than `ψ_i` have such a cover with `k + 1` parts excluding `{ψ_i}`.
//!
//! Sequential complexity `(k, ℓ)` at `i` asks for a sequence of `ℓ` distinct
//! forms ending at `ψ_i` such that every prefix `P` admits a `(k + 1)`-part
//! cover of the remaining forms excluding all of `P`.
//!
//! The cover search is exact. Admissibility (the span avoids the excluded
//! forms) is inherited by subsets, so every part can be grown to a maximal
//! admissible *flat*: a subset closed under taking forms already in its span.
//! The solver enumerates those flats and runs a branch-and-bound set cover
//! over them, branching on the lowest-index uncovered form.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::{tensor_power, EchelonBasis, FpVector};
use crate::setcover::{maximal_flats, ExactCover};
use crate::system::LinearSystem;

/// A cover of the forms outside `targets` whose parts each avoid every target
/// in their span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub targets: Vec<usize>,
    pub parts: Vec<Vec<usize>>,
}

/// Certificate that a system has sequential CS-complexity at most `(k, ℓ)`
/// at form `i`, where `ℓ = sequence.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub system_hash: String,
    pub i: usize,
    pub k: usize,
    pub sequence: Vec<usize>,
    pub covers: Vec<CoverCertificate>,
}

impl WitnessCertificate {
    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// `s_CS(i)` together with a minimal cover, or the marker for forms that no
/// cover can separate (zero forms, or forms proportional to another form).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CsComplexity {
    Finite { s: usize, certificate: CoverCertificate },
    Infinite,
}

impl CsComplexity {
    pub fn value(&self) -> Option<usize> {
        match self {
            CsComplexity::Finite { s, .. } => Some(*s),
            CsComplexity::Infinite => None,
        }
    }
}

/// Cover instance: forms `to_cover` against the maximal admissible flats.
struct CoverProblem {
    to_cover: Vec<usize>,
    flats: Vec<BitSet>,
    solver: ExactCover,
}

impl CoverProblem {
    /// `None` when infeasible for every part count: some excluded form is
    /// zero, or some form to cover already spans an excluded form.
    fn new(sys: &LinearSystem, to_cover: &[usize], excluded: &[usize]) -> Option<Self> {
        let vectors: Vec<Vec<u64>> = to_cover.iter().map(|&j| sys.form(j).to_vec()).collect();
        let blocked: Vec<Vec<u64>> = excluded.iter().map(|&j| sys.form(j).to_vec()).collect();
        let flats = maximal_flats(sys.prime(), sys.num_vars(), &vectors, &blocked)?;
        let solver = ExactCover::new(to_cover.len(), &flats);
        Some(CoverProblem {
            to_cover: to_cover.to_vec(),
            flats,
            solver,
        })
    }

    fn parts(&self, chosen: Vec<usize>) -> Vec<Vec<usize>> {
        chosen
            .into_iter()
            .map(|c| self.flats[c].iter().map(|l| self.to_cover[l]).collect())
            .collect()
    }

    fn cover_within(&self, max_parts: usize) -> Result<Option<Vec<Vec<usize>>>> {
        Ok(self.solver.cover_within(max_parts)?.map(|c| self.parts(c)))
    }

    fn min_cover(&self) -> Result<Vec<Vec<usize>>> {
        let chosen = self.solver.min_cover()?.expect("singleton flats always give a cover");
        Ok(self.parts(chosen))
    }
}

fn check_indices(sys: &LinearSystem, indices: &[usize]) -> Result<()> {
    indices.iter().try_for_each(|&i| sys.check_index(i))
}

/// Covers `to_cover` by at most `max_parts` subsets whose spans exclude every
/// form in `excluded`; `None` if no such cover exists.
pub fn admissible_cover(
    sys: &LinearSystem,
    to_cover: &[usize],
    excluded: &[usize],
    max_parts: usize,
) -> Result<Option<CoverCertificate>> {
    check_indices(sys, to_cover)?;
    check_indices(sys, excluded)?;
    if to_cover.iter().any(|j| excluded.contains(j)) {
        return Err(Error::InvalidParameter(
            "to_cover and excluded overlap".into(),
        ));
    }
    let Some(problem) = CoverProblem::new(sys, to_cover, excluded) else {
        return Ok(None);
    };
    Ok(problem.cover_within(max_parts)?.map(|parts| CoverCertificate {
        targets: excluded.to_vec(),
        parts,
    }))
}

/// The least `s` such that the forms other than `ψ_i` split into `s + 1`
/// parts (or fewer) whose spans avoid `ψ_i`.
pub fn cs_complexity_at(sys: &LinearSystem, i: usize) -> Result<CsComplexity> {
    sys.check_index(i)?;
    let rest: Vec<usize> = (0..sys.num_forms()).filter(|&j| j != i).collect();
    let Some(problem) = CoverProblem::new(sys, &rest, &[i]) else {
        return Ok(CsComplexity::Infinite);
    };
    let parts = problem.min_cover()?;
    Ok(CsComplexity::Finite {
        s: parts.len().saturating_sub(1),
        certificate: CoverCertificate {
            targets: vec![i],
            parts,
        },
    })
}

/// Shortest witness of sequential complexity `(k, ℓ)` at `i` with
/// `ℓ ≤ max_len`, or `None`.
///
/// Iterative deepening on `ℓ`; within a length, depth-first over distinct
/// form indices in increasing order.
pub fn sequential_witness(
    sys: &LinearSystem,
    i: usize,
    k: usize,
    max_len: usize,
) -> Result<Option<WitnessCertificate>> {
    sys.check_index(i)?;
    if max_len == 0 {
        return Err(Error::InvalidParameter("max_len must be at least 1".into()));
    }
    let mut search = WitnessSearch {
        sys,
        target: i,
        max_parts: k + 1,
        feasible: HashMap::new(),
        dead: HashSet::new(),
    };
    for len in 1..=max_len.min(sys.num_forms()) {
        let mut seq = Vec::new();
        if search.extend(&mut seq, len)? {
            seq.push(i);
            return certify_sequence(sys, &seq, k);
        }
    }
    Ok(None)
}

struct WitnessSearch<'a> {
    sys: &'a LinearSystem,
    target: usize,
    max_parts: usize,
    feasible: HashMap<BitSet, bool>,
    dead: HashSet<(BitSet, usize)>,
}

impl WitnessSearch<'_> {
    fn prefix_ok(&mut self, prefix: &BitSet) -> Result<bool> {
        if let Some(&ok) = self.feasible.get(prefix) {
            return Ok(ok);
        }
        let r = self.sys.num_forms();
        let excluded = prefix.to_vec();
        let rest: Vec<usize> = (0..r).filter(|&j| !prefix.contains(j)).collect();
        let ok = match CoverProblem::new(self.sys, &rest, &excluded) {
            Some(pb) => pb.cover_within(self.max_parts)?.is_some(),
            None => false,
        };
        self.feasible.insert(prefix.clone(), ok);
        Ok(ok)
    }

    /// Extends `seq` (which excludes the target) so that `seq + [target]`
    /// has length `len` and every prefix is feasible.
    fn extend(&mut self, seq: &mut Vec<usize>, len: usize) -> Result<bool> {
        let r = self.sys.num_forms();
        let set = BitSet::from_indices(r, seq.iter().copied());
        let remaining = len - seq.len();
        if self.dead.contains(&(set.clone(), remaining)) {
            return Ok(false);
        }
        if remaining == 1 {
            let mut last = set.clone();
            last.insert(self.target);
            if self.prefix_ok(&last)? {
                return Ok(true);
            }
        } else {
            for j in 0..r {
                if j == self.target || set.contains(j) {
                    continue;
                }
                let mut next = set.clone();
                next.insert(j);
                if !self.prefix_ok(&next)? {
                    continue;
                }
                seq.push(j);
                if self.extend(seq, len)? {
                    return Ok(true);
                }
                seq.pop();
            }
        }
        self.dead.insert((set, remaining));
        Ok(false)
    }
}

/// Builds the covers for a given sequence (the last entry is the target),
/// or `None` if some prefix has no `(k + 1)`-part cover.
pub fn certify_sequence(
    sys: &LinearSystem,
    sequence: &[usize],
    k: usize,
) -> Result<Option<WitnessCertificate>> {
    check_indices(sys, sequence)?;
    let Some(&i) = sequence.last() else {
        return Err(Error::InvalidParameter("empty sequence".into()));
    };
    if (1..sequence.len()).any(|a| sequence[..a].contains(&sequence[a])) {
        return Err(Error::InvalidParameter("sequence repeats a form".into()));
    }
    let mut covers = Vec::with_capacity(sequence.len());
    for j in 1..=sequence.len() {
        let prefix = &sequence[..j];
        let rest: Vec<usize> = (0..sys.num_forms()).filter(|x| !prefix.contains(x)).collect();
        match admissible_cover(sys, &rest, prefix, k + 1)? {
            Some(c) => covers.push(c),
            None => return Ok(None),
        }
    }
    Ok(Some(WitnessCertificate {
        system_hash: sys.hash(),
        i,
        k,
        sequence: sequence.to_vec(),
        covers,
    }))
}

/// A single reason a certificate fails to verify.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessViolation {
    HashMismatch { expected: String, found: String },
    EmptySequence,
    IndexOutOfRange { index: usize },
    WrongTarget { i: usize, last: usize },
    RepeatedEntry { position: usize, form: usize },
    CoverCount { expected: usize, found: usize },
    TargetMismatch { prefix_len: usize },
    TooManyParts { prefix_len: usize, parts: usize, max: usize },
    UncoveredForm { prefix_len: usize, form: usize },
    TargetInSpan { prefix_len: usize, part: usize, target: usize },
}

impl fmt::Display for WitnessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use WitnessViolation::*;
        match self {
            HashMismatch { expected, found } => {
                write!(f, "system hash mismatch: certificate {found}, system {expected}")
            }
            EmptySequence => write!(f, "empty witness sequence"),
            IndexOutOfRange { index } => write!(f, "form index {index} out of range"),
            WrongTarget { i, last } => write!(f, "sequence ends at {last}, not at target {i}"),
            RepeatedEntry { position, form } => {
                write!(f, "form {form} repeated at position {position}")
            }
            CoverCount { expected, found } => {
                write!(f, "expected {expected} covers, found {found}")
            }
            TargetMismatch { prefix_len } => {
                write!(f, "cover {prefix_len} does not target the first {prefix_len} forms")
            }
            TooManyParts { prefix_len, parts, max } => {
                write!(f, "cover {prefix_len} has {parts} parts, more than {max}")
            }
            UncoveredForm { prefix_len, form } => {
                write!(f, "uncovered form {form} in cover {prefix_len}")
            }
            TargetInSpan { prefix_len, part, target } => write!(
                f,
                "target {target} lies in the span of part {part} of cover {prefix_len}"
            ),
        }
    }
}

/// Outcome of [`verify_witness`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub valid: bool,
    pub violations: Vec<WitnessViolation>,
}

impl WitnessReport {
    pub fn first_violation(&self) -> Option<&WitnessViolation> {
        self.violations.first()
    }
}

/// Re-checks every claim of a certificate with span computations.
pub fn verify_witness(sys: &LinearSystem, cert: &WitnessCertificate) -> WitnessReport {
    let mut v = Vec::new();
    let hash = sys.hash();
    if cert.system_hash != hash {
        v.push(WitnessViolation::HashMismatch {
            expected: hash,
            found: cert.system_hash.clone(),
        });
    }
    verify_structure(sys, cert, &mut v);
    WitnessReport {
        valid: v.is_empty(),
        violations: v,
    }
}

fn verify_structure(sys: &LinearSystem, cert: &WitnessCertificate, v: &mut Vec<WitnessViolation>) {
    let r = sys.num_forms();
    let seq = &cert.sequence;
    let Some(&last) = seq.last() else {
        v.push(WitnessViolation::EmptySequence);
        return;
    };
    let out_of_range = seq
        .iter()
        .chain(cert.covers.iter().flat_map(|c| c.targets.iter().chain(c.parts.iter().flatten())))
        .find(|&&x| x >= r);
    if let Some(&index) = out_of_range {
        v.push(WitnessViolation::IndexOutOfRange { index });
        return;
    }
    if last != cert.i {
        v.push(WitnessViolation::WrongTarget { i: cert.i, last });
    }
    for a in 1..seq.len() {
        if seq[..a].contains(&seq[a]) {
            v.push(WitnessViolation::RepeatedEntry {
                position: a,
                form: seq[a],
            });
        }
    }
    if cert.covers.len() != seq.len() {
        v.push(WitnessViolation::CoverCount {
            expected: seq.len(),
            found: cert.covers.len(),
        });
    }
    for (idx, cover) in cert.covers.iter().enumerate().take(seq.len()) {
        let prefix_len = idx + 1;
        if cover.targets != seq[..prefix_len] {
            v.push(WitnessViolation::TargetMismatch { prefix_len });
        }
        check_cover(sys, &seq[..prefix_len], &cover.parts, cert.k + 1, prefix_len, v);
    }
}

/// Checks that `parts` covers every form outside `targets` with at most
/// `max_parts` parts whose spans avoid each target.
pub(crate) fn check_cover(
    sys: &LinearSystem,
    targets: &[usize],
    parts: &[Vec<usize>],
    max_parts: usize,
    prefix_len: usize,
    v: &mut Vec<WitnessViolation>,
) {
    if parts.len() > max_parts {
        v.push(WitnessViolation::TooManyParts {
            prefix_len,
            parts: parts.len(),
            max: max_parts,
        });
    }
    let r = sys.num_forms();
    let covered = BitSet::from_indices(r, parts.iter().flatten().copied());
    for form in (0..r).filter(|j| !targets.contains(j)) {
        if !covered.contains(form) {
            v.push(WitnessViolation::UncoveredForm { prefix_len, form });
        }
    }
    for (t, part) in parts.iter().enumerate() {
        let basis = EchelonBasis::from_rows(
            sys.prime(),
            sys.num_vars(),
            part.iter().map(|&j| sys.form(j)),
        );
        for &target in targets {
            if basis.contains(sys.form(target)) {
                v.push(WitnessViolation::TargetInSpan {
                    prefix_len,
                    part: t,
                    target,
                });
            }
        }
    }
}

/// Result of the tensor-power independence test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TensorCriterion {
    /// Smallest `k` with the `(k+1)`-th tensor powers independent.
    /// `ranks[j]` is the rank at exponent `j + 1`.
    Independent { k: usize, ranks: Vec<usize> },
    /// Some form is zero or two forms are proportional, so the powers are
    /// dependent at every exponent.
    NeverIndependent { forms: (usize, usize) },
    NoneUpTo { k_max: usize, ranks: Vec<usize> },
}

impl TensorCriterion {
    pub fn value(&self) -> Option<usize> {
        match self {
            TensorCriterion::Independent { k, .. } => Some(*k),
            _ => None,
        }
    }
}

/// Largest tensor-power row length the criterion will build.
pub const TENSOR_LENGTH_LIMIT: usize = 1 << 22;

/// Smallest `k ≤ k_max` for which `ψ_1^{k+1}, ..., ψ_r^{k+1}` are linearly
/// independent.
pub fn tensor_criterion(sys: &LinearSystem, k_max: usize) -> Result<TensorCriterion> {
    let p = sys.prime();
    let r = sys.num_forms();
    let d = sys.num_vars();
    for a in 0..r {
        if sys.form(a).iter().all(|&x| x == 0) {
            return Ok(TensorCriterion::NeverIndependent { forms: (a, a) });
        }
        for b in a + 1..r {
            let pair = EchelonBasis::from_rows(p, d, [sys.form(a), sys.form(b)]);
            if pair.rank() < 2 {
                return Ok(TensorCriterion::NeverIndependent { forms: (a, b) });
            }
        }
    }
    let mut ranks = Vec::new();
    for k in 0..=k_max {
        let m = k + 1;
        let len = (d as u128).pow(m as u32);
        if len > TENSOR_LENGTH_LIMIT as u128 {
            return Err(Error::SizeGuard {
                required: len,
                limit: TENSOR_LENGTH_LIMIT as u128,
            });
        }
        let mut basis = EchelonBasis::new(p, len as usize);
        for j in 0..r {
            basis.insert(tensor_power(&sys.form_vector(j), m).entries());
        }
        ranks.push(basis.rank());
        if basis.rank() == r {
            return Ok(TensorCriterion::Independent { k, ranks });
        }
    }
    Ok(TensorCriterion::NoneUpTo { k_max, ranks })
}

/// Per-index CS-complexities, their maximum, and the tensor criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityReport {
    pub per_index: Vec<CsComplexity>,
    /// `max_i s_CS(i)`, or `None` if some index has no finite value.
    pub overall: Option<usize>,
    pub tensor: TensorCriterion,
}

pub fn complexity_report(sys: &LinearSystem, k_max: usize) -> Result<ComplexityReport> {
    let per_index = (0..sys.num_forms())
        .map(|i| cs_complexity_at(sys, i))
        .collect::<Result<Vec<_>>>()?;
    let overall = per_index
        .iter()
        .map(CsComplexity::value)
        .collect::<Option<Vec<_>>>()
        .map(|v| v.into_iter().max().unwrap_or(0));
    Ok(ComplexityReport {
        per_index,
        overall,
        tensor: tensor_criterion(sys, k_max)?,
    })
}

/// Converts the forms of a part into vectors (test and report helper).
pub fn part_vectors(sys: &LinearSystem, part: &[usize]) -> Vec<FpVector> {
    part.iter().map(|&j| sys.form_vector(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::system_from_points;
    use crate::field::Prime;

    fn ap(p: u64, k: usize) -> LinearSystem {
        let rows: Vec<Vec<i64>> = (0..k as i64).map(|j| vec![1, j]).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        LinearSystem::from_ints(p, &refs).unwrap()
    }

    fn six_points() -> LinearSystem {
        let pts = [[1, 0], [0, 1], [0, 2], [1, 3], [2, 3], [3, 3]];
        let pts: Vec<Vec<u64>> = pts.iter().map(|x| x.to_vec()).collect();
        system_from_points(Prime::new(7).unwrap(), 2, &pts).unwrap()
    }

    #[test]
    fn empty_cover_is_feasible() {
        let sys = LinearSystem::from_ints(5, &[&[1, 0]]).unwrap();
        let c = admissible_cover(&sys, &[], &[0], 0).unwrap().unwrap();
        assert!(c.parts.is_empty());
    }

    #[test]
    fn ap_cover_with_singletons() {
        // x excluded; x+y and x+2y each span a line avoiding x
        let sys = ap(5, 3);
        let c = admissible_cover(&sys, &[1, 2], &[0], 2).unwrap().unwrap();
        assert_eq!(c.parts, vec![vec![1], vec![2]]);
        assert!(admissible_cover(&sys, &[1, 2], &[0], 1).unwrap().is_none());
    }

    #[test]
    fn zero_excluded_form_is_infeasible() {
        let sys = LinearSystem::from_ints(5, &[&[0, 0], &[1, 1]]).unwrap();
        assert!(admissible_cover(&sys, &[1], &[0], 3).unwrap().is_none());
        assert_eq!(cs_complexity_at(&sys, 0).unwrap(), CsComplexity::Infinite);
    }

    #[test]
    fn overlapping_sets_are_rejected() {
        let sys = ap(5, 3);
        assert!(admissible_cover(&sys, &[0, 1], &[1], 2).is_err());
        assert!(admissible_cover(&sys, &[7], &[0], 2).is_err());
    }

    #[test]
    fn six_points_need_three_lines() {
        let sys = six_points();
        assert!(admissible_cover(&sys, &[0, 1, 2, 3, 4], &[5], 2).unwrap().is_none());
        // hand check: {(1,0),(0,1)} on x+y=1, {(0,2),(1,3)} on y=x+2, {(2,3)} alone
        let c = admissible_cover(&sys, &[0, 1, 2, 3, 4], &[5], 3).unwrap().unwrap();
        assert_eq!(c.parts.len(), 3);
        assert_eq!(cs_complexity_at(&sys, 5).unwrap().value(), Some(2));
    }

    #[test]
    fn ap_complexity_is_k_minus_two() {
        for (p, k) in [(5, 3), (5, 4), (5, 5), (7, 5), (7, 7)] {
            let sys = ap(p, k);
            assert_eq!(cs_complexity_at(&sys, 0).unwrap().value(), Some(k - 2), "p={p} k={k}");
        }
        let single = LinearSystem::from_ints(5, &[&[1]]).unwrap();
        match cs_complexity_at(&single, 0).unwrap() {
            CsComplexity::Finite { s, certificate } => {
                assert_eq!(s, 0);
                assert!(certificate.parts.is_empty());
            }
            CsComplexity::Infinite => panic!(),
        }
    }

    #[test]
    fn proportional_forms_have_infinite_complexity() {
        let sys = LinearSystem::from_ints(5, &[&[1, 1], &[2, 2], &[0, 1]]).unwrap();
        assert_eq!(cs_complexity_at(&sys, 0).unwrap(), CsComplexity::Infinite);
        assert_eq!(complexity_report(&sys, 2).unwrap().overall, None);
    }

    #[test]
    fn six_point_witnesses() {
        let sys = six_points();
        let w = sequential_witness(&sys, 0, 1, 2).unwrap().unwrap();
        assert_eq!(w.sequence, vec![0]);
        for i in 1..6 {
            let w = sequential_witness(&sys, i, 1, 2).unwrap().unwrap();
            assert!(w.len() <= 2);
            assert!(verify_witness(&sys, &w).valid);
        }
        let w = sequential_witness(&sys, 5, 1, 2).unwrap().unwrap();
        assert_eq!(w.len(), 2);
        assert!(sequential_witness(&sys, 5, 1, 1).unwrap().is_none());
    }

    #[test]
    fn mutated_certificate_fails() {
        let sys = six_points();
        let mut w = sequential_witness(&sys, 5, 1, 2).unwrap().unwrap();
        let removed = w.covers[1].parts[0].remove(0);
        let report = verify_witness(&sys, &w);
        assert!(!report.valid);
        assert!(report.violations.iter().any(|v| matches!(
            v,
            WitnessViolation::UncoveredForm { form, .. } if *form == removed
        ) || report.first_violation().is_some()));
        assert!(report.first_violation().unwrap().to_string().contains("uncovered form"));
    }

    #[test]
    fn verify_reports_bad_structure() {
        let sys = ap(5, 3);
        let good = certify_sequence(&sys, &[1, 0], 1).unwrap().unwrap();
        assert!(verify_witness(&sys, &good).valid);

        let mut bad = good.clone();
        bad.system_hash = "00".into();
        assert!(matches!(
            verify_witness(&sys, &bad).first_violation(),
            Some(WitnessViolation::HashMismatch { .. })
        ));

        let mut bad = good.clone();
        bad.i = 2;
        assert!(!verify_witness(&sys, &bad).valid);

        let mut bad = good.clone();
        bad.covers[0].parts = vec![vec![0, 2]];
        assert!(verify_witness(&sys, &bad)
            .violations
            .iter()
            .any(|v| matches!(v, WitnessViolation::TargetInSpan { .. })));

        let mut bad = good.clone();
        bad.k = 0;
        assert!(verify_witness(&sys, &bad)
            .violations
            .iter()
            .any(|v| matches!(v, WitnessViolation::TooManyParts { .. })));

        let mut bad = good;
        bad.sequence = vec![9, 0];
        assert!(matches!(
            verify_witness(&sys, &bad).first_violation(),
            Some(WitnessViolation::IndexOutOfRange { index: 9 })
        ));
    }

    #[test]
    fn certificate_json_round_trip() {
        let sys = six_points();
        let w = sequential_witness(&sys, 3, 1, 2).unwrap().unwrap();
        let back = WitnessCertificate::from_json(&w.to_json()).unwrap();
        assert_eq!(back, w);
        let v: serde_json::Value = serde_json::from_str(&w.to_json()).unwrap();
        for key in ["system_hash", "i", "k", "sequence", "covers"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert!(v["covers"][0].get("targets").is_some());
        assert!(v["covers"][0].get("parts").is_some());
    }

    #[test]
    fn tensor_criterion_examples() {
        assert_eq!(tensor_criterion(&ap(5, 3), 4).unwrap().value(), Some(1));
        let dup = LinearSystem::from_ints(5, &[&[1, 1], &[1, 1], &[1, 0]]).unwrap();
        assert!(matches!(
            tensor_criterion(&dup, 4).unwrap(),
            TensorCriterion::NeverIndependent { forms: (0, 1) }
        ));
        // 4 points on a line in F_3 cannot all be distinct: x, x+y, x+2y, y
        let sys = LinearSystem::from_ints(3, &[&[1, 0], &[1, 1], &[1, 2], &[0, 1]]).unwrap();
        match tensor_criterion(&sys, 0).unwrap() {
            TensorCriterion::NoneUpTo { k_max: 0, ranks } => assert_eq!(ranks, vec![2]),
            other => panic!("{other:?}"),
        }
    }
}
