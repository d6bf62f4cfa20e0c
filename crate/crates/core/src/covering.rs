//! Covers of point sets in `F_p^M` by affine subspaces that avoid given
//! points.
//!
//! For a translation-invariant system the CS-complexity at `i` equals the
//! least number of affine subspaces, minus one, that cover the associated
//! set without `a_i` and each avoid `a_i`. This module solves such instances
//! directly in point form, either with arbitrary affine spans of subsets of
//! the target set or with hyperplanes only.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::{homogenize, EchelonBasis, Prime};
use crate::setcover::{maximal_flats, ExactCover, NODE_LIMIT};

/// `basepoint + span(directions)` inside `F_p^dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineSubspace {
    pub p: Prime,
    pub dim: usize,
    pub basepoint: Vec<u64>,
    pub directions: Vec<Vec<u64>>,
}

impl AffineSubspace {
    /// Canonical form: directions in reduced echelon form sorted by pivot,
    /// basepoint reduced to zero at the pivot columns.
    pub fn new(p: Prime, basepoint: Vec<u64>, directions: &[Vec<u64>]) -> Result<Self> {
        let dim = basepoint.len();
        check_point(p, dim, &basepoint)?;
        for d in directions {
            check_point(p, dim, d)?;
        }
        let basis = EchelonBasis::from_rows(p, dim, directions.iter().map(Vec::as_slice));
        let mut rows: Vec<Vec<u64>> = basis.basis().to_vec();
        rows.sort_by_key(|r| r.iter().position(|&x| x != 0));
        Ok(AffineSubspace {
            p,
            dim,
            basepoint: basis.reduce(&basepoint),
            directions: rows,
        })
    }

    pub fn point(p: Prime, x: Vec<u64>) -> Result<Self> {
        Self::new(p, x, &[])
    }

    /// Affine span of a nonempty point list.
    pub fn span(p: Prime, points: &[Vec<u64>]) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::InvalidParameter("affine span of no points".into()))?;
        let dirs: Vec<Vec<u64>> = points[1..]
            .iter()
            .map(|x| x.iter().zip(first).map(|(&a, &b)| p.sub(a, b)).collect())
            .collect();
        Self::new(p, first.clone(), &dirs)
    }

    /// Dimension of the subspace (number of independent directions).
    pub fn dimension(&self) -> usize {
        EchelonBasis::from_rows(self.p, self.dim, self.directions.iter().map(Vec::as_slice)).rank()
    }

    /// Membership by `x - basepoint ∈ span(directions)`; does not assume
    /// canonical form.
    pub fn contains(&self, x: &[u64]) -> bool {
        if x.len() != self.dim {
            return false;
        }
        let basis =
            EchelonBasis::from_rows(self.p, self.dim, self.directions.iter().map(Vec::as_slice));
        let diff: Vec<u64> = x
            .iter()
            .zip(&self.basepoint)
            .map(|(&a, &b)| self.p.sub(a, b))
            .collect();
        basis.contains(&diff)
    }
}

impl fmt::Display for AffineSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.basepoint)?;
        for d in &self.directions {
            write!(f, " + F{:?}", d)?;
        }
        Ok(())
    }
}

/// `{x : normal · x = offset}` with the first nonzero normal entry equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hyperplane {
    pub p: Prime,
    pub normal: Vec<u64>,
    pub offset: u64,
}

impl Hyperplane {
    /// Scales `normal` and `offset` to canonical form.
    pub fn new(p: Prime, normal: Vec<u64>, offset: u64) -> Result<Self> {
        check_point(p, normal.len(), &normal)?;
        let lead = normal
            .iter()
            .find(|&&x| x != 0)
            .copied()
            .ok_or(Error::ZeroForm)?;
        let inv = p.inv(lead);
        Ok(Hyperplane {
            p,
            normal: normal.iter().map(|&x| p.mul(x, inv)).collect(),
            offset: p.mul(offset % p.get(), inv),
        })
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        let p = self.p;
        let dot = self
            .normal
            .iter()
            .zip(x)
            .fold(0, |acc, (&a, &b)| p.add(acc, p.mul(a, b)));
        dot == self.offset
    }

    pub fn to_subspace(&self) -> AffineSubspace {
        let p = self.p;
        let m = self.normal.len();
        let j = self.normal.iter().position(|&x| x != 0).expect("nonzero normal");
        let mut base = vec![0; m];
        base[j] = self.offset;
        let dirs: Vec<Vec<u64>> = (0..m)
            .filter(|&c| c != j)
            .map(|c| {
                let mut v = vec![0; m];
                v[c] = 1;
                v[j] = p.neg(self.normal[c]);
                v
            })
            .collect();
        AffineSubspace::new(p, base, &dirs).expect("entries already reduced")
    }
}

fn check_point(p: Prime, dim: usize, x: &[u64]) -> Result<()> {
    if x.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: x.len(),
        });
    }
    if let Some(&value) = x.iter().find(|&&v| v >= p.get()) {
        return Err(Error::EntryOutOfRange { value, p: p.get() });
    }
    Ok(())
}

/// Largest hyperplane family [`hyperplanes_excluding`] will list.
pub const HYPERPLANE_LIMIT: u128 = 10_000_000;

/// All hyperplanes of `F_p^dim` avoiding every excluded point, ordered by
/// normal (lexicographic) then offset.
pub fn hyperplanes_excluding(p: Prime, dim: usize, excluding: &[Vec<u64>]) -> Result<Vec<Hyperplane>> {
    if dim == 0 {
        return Err(Error::InvalidParameter("ambient dimension must be at least 1".into()));
    }
    for x in excluding {
        check_point(p, dim, x)?;
    }
    let q = p.get() as u128;
    let total = q
        .checked_pow(dim as u32)
        .map(|pm| (pm - 1) / (q - 1) * q)
        .unwrap_or(u128::MAX);
    if total > HYPERPLANE_LIMIT {
        return Err(Error::SizeGuard {
            required: total,
            limit: HYPERPLANE_LIMIT,
        });
    }
    let mut out = Vec::new();
    for lead in 0..dim {
        let free = dim - lead - 1;
        for code in 0..(p.get() as usize).pow(free as u32) {
            let mut normal = vec![0u64; dim];
            normal[lead] = 1;
            let mut c = code;
            for slot in normal[lead + 1..].iter_mut().rev() {
                *slot = (c % p.get() as usize) as u64;
                c /= p.get() as usize;
            }
            for offset in 0..p.get() {
                let h = Hyperplane {
                    p,
                    normal: normal.clone(),
                    offset,
                };
                if excluding.iter().all(|x| !h.contains(x)) {
                    out.push(h);
                }
            }
        }
    }
    Ok(out)
}

/// [`hyperplanes_excluding`] as affine subspaces.
pub fn enumerate_hyperplanes(
    p: Prime,
    dim: usize,
    excluding: &[Vec<u64>],
) -> Result<Vec<AffineSubspace>> {
    Ok(hyperplanes_excluding(p, dim, excluding)?
        .iter()
        .map(Hyperplane::to_subspace)
        .collect())
}

/// Candidate family for [`min_cover_excluding`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverMode {
    HyperplanesOnly,
    AffineSpans,
}

/// Subspaces covering `covered` while avoiding `excluded`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineCover {
    pub p: Prime,
    pub dim: usize,
    pub subspaces: Vec<AffineSubspace>,
    pub covered: Vec<Vec<u64>>,
    pub excluded: Vec<Vec<u64>>,
}

impl AffineCover {
    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }
}

/// A point-set instance as read from JSON: `{"p", "M", "points", "excluded"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    pub p: Prime,
    #[serde(rename = "M")]
    pub dim: usize,
    pub points: Vec<Vec<u64>>,
    #[serde(default)]
    pub excluded: Vec<Vec<u64>>,
}

impl PointSet {
    pub fn from_json(text: &str) -> Result<Self> {
        let set: PointSet = serde_json::from_str(text)?;
        for x in set.points.iter().chain(&set.excluded) {
            check_point(set.p, set.dim, x)?;
        }
        Ok(set)
    }
}

/// Options for [`cover_within_excluding`] and [`min_cover_excluding_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverOptions {
    pub mode: CoverMode,
    pub node_limit: u64,
}

impl CoverOptions {
    pub fn new(mode: CoverMode) -> Self {
        CoverOptions {
            mode,
            node_limit: NODE_LIMIT,
        }
    }
}

struct PointProblem {
    p: Prime,
    dim: usize,
    points: Vec<Vec<u64>>,
    excluded: Vec<Vec<u64>>,
    subspaces: Vec<AffineSubspace>,
    solver: ExactCover,
}

impl PointProblem {
    fn new(
        p: Prime,
        dim: usize,
        points: &[Vec<u64>],
        excluded: &[Vec<u64>],
        opts: CoverOptions,
    ) -> Result<Self> {
        for x in points.iter().chain(excluded) {
            check_point(p, dim, x)?;
        }
        if let Some(x) = points.iter().find(|x| excluded.contains(x)) {
            return Err(Error::InvalidParameter(format!(
                "point {x:?} is both covered and excluded"
            )));
        }
        let n = points.len();
        let (subspaces, masks): (Vec<AffineSubspace>, Vec<BitSet>) = match opts.mode {
            CoverMode::HyperplanesOnly => hyperplanes_excluding(p, dim, excluded)?
                .into_iter()
                .map(|h| {
                    let mask =
                        BitSet::from_indices(n, (0..n).filter(|&j| h.contains(&points[j])));
                    (h.to_subspace(), mask)
                })
                .unzip(),
            CoverMode::AffineSpans => {
                let hom: Vec<Vec<u64>> = points.iter().map(|x| homogenize(x)).collect();
                let hex: Vec<Vec<u64>> = excluded.iter().map(|x| homogenize(x)).collect();
                let flats = maximal_flats(p, dim + 1, &hom, &hex)
                    .expect("a point outside the excluded list spans only itself");
                flats
                    .into_iter()
                    .map(|f| {
                        let members: Vec<Vec<u64>> = f.iter().map(|j| points[j].clone()).collect();
                        (AffineSubspace::span(p, &members).expect("nonempty flat"), f)
                    })
                    .unzip()
            }
        };
        let solver = ExactCover::new(n, &masks).with_limit(opts.node_limit);
        if !solver.feasible() {
            let lonely = (0..n)
                .find(|&j| masks.iter().all(|m| !m.contains(j)))
                .expect("infeasible instance has an uncovered point");
            return Err(Error::NoFiniteCover(points[lonely].clone()));
        }
        Ok(PointProblem {
            p,
            dim,
            points: points.to_vec(),
            excluded: excluded.to_vec(),
            subspaces,
            solver,
        })
    }

    fn cover(&self, chosen: Vec<usize>) -> AffineCover {
        AffineCover {
            p: self.p,
            dim: self.dim,
            subspaces: chosen.into_iter().map(|c| self.subspaces[c].clone()).collect(),
            covered: self.points.clone(),
            excluded: self.excluded.clone(),
        }
    }
}

/// A minimum cover of `points` by candidates avoiding `excluded`.
///
/// Fails with [`Error::NoFiniteCover`] when some point lies on no candidate,
/// and with [`Error::SizeGuard`] when the search exceeds its node budget.
pub fn min_cover_excluding(
    p: Prime,
    dim: usize,
    points: &[Vec<u64>],
    excluded: &[Vec<u64>],
    mode: CoverMode,
) -> Result<AffineCover> {
    min_cover_excluding_with(p, dim, points, excluded, CoverOptions::new(mode))
}

pub fn min_cover_excluding_with(
    p: Prime,
    dim: usize,
    points: &[Vec<u64>],
    excluded: &[Vec<u64>],
    opts: CoverOptions,
) -> Result<AffineCover> {
    let problem = PointProblem::new(p, dim, points, excluded, opts)?;
    let chosen = problem.solver.min_cover()?.expect("feasibility checked");
    Ok(problem.cover(chosen))
}

/// A cover with at most `max_count` candidates, or `None` if none exists.
pub fn cover_within_excluding(
    p: Prime,
    dim: usize,
    points: &[Vec<u64>],
    excluded: &[Vec<u64>],
    opts: CoverOptions,
    max_count: usize,
) -> Result<Option<AffineCover>> {
    let problem = match PointProblem::new(p, dim, points, excluded, opts) {
        Ok(pb) => pb,
        Err(Error::NoFiniteCover(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    Ok(problem.solver.cover_within(max_count)?.map(|c| problem.cover(c)))
}

/// One failed invariant of an [`AffineCover`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverViolation {
    Dimension { subspace: usize },
    Uncovered { point: Vec<u64> },
    ExcludedInside { subspace: usize, point: Vec<u64> },
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverViolation::Dimension { subspace } => {
                write!(f, "subspace {subspace} has the wrong ambient dimension")
            }
            CoverViolation::Uncovered { point } => write!(f, "point {point:?} is not covered"),
            CoverViolation::ExcludedInside { subspace, point } => {
                write!(f, "excluded point {point:?} lies in subspace {subspace}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub valid: bool,
    pub violations: Vec<CoverViolation>,
}

/// Re-checks both cover invariants by membership tests.
pub fn verify_cover(cover: &AffineCover) -> CoverReport {
    let mut violations = Vec::new();
    for (i, v) in cover.subspaces.iter().enumerate() {
        if v.dim != cover.dim
            || v.basepoint.len() != cover.dim
            || v.directions.iter().any(|d| d.len() != cover.dim)
        {
            violations.push(CoverViolation::Dimension { subspace: i });
        }
    }
    if violations.is_empty() {
        for x in &cover.covered {
            if !cover.subspaces.iter().any(|v| v.contains(x)) {
                violations.push(CoverViolation::Uncovered { point: x.clone() });
            }
        }
        for (i, v) in cover.subspaces.iter().enumerate() {
            for x in &cover.excluded {
                if v.contains(x) {
                    violations.push(CoverViolation::ExcludedInside {
                        subspace: i,
                        point: x.clone(),
                    });
                }
            }
        }
    }
    CoverReport {
        valid: violations.is_empty(),
        violations,
    }
}
