//! Systems of linear forms over `F_p`.
//!
//! A [`LinearSystem`] is an ordered list of `r` forms in `d` variables,
//! stored as an `r × d` matrix. Order matters: certificates and function
//! tuples refer to forms by position, and duplicate forms are distinct
//! positions.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{extend_to_basis, solve_right, FpMatrix, FpVector, Prime};

/// System file contents before validation. Entries may be any integers;
/// they are reduced mod `p` on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSystem {
    pub p: i64,
    pub forms: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// One problem found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotPrime { p: i64 },
    ModulusTooLarge { p: i64 },
    NoForms,
    NoVariables,
    RaggedRow { row: usize, expected: usize, found: usize },
    LabelCount { expected: usize, found: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPrime { p } => write!(f, "modulus not prime: {p}"),
            Violation::ModulusTooLarge { p } => write!(f, "modulus too large: {p}"),
            Violation::NoForms => write!(f, "system has no forms"),
            Violation::NoVariables => write!(f, "forms have no variables"),
            Violation::RaggedRow { row, expected, found } => {
                write!(f, "ragged row {row}: expected {expected} entries, found {found}")
            }
            Violation::LabelCount { expected, found } => {
                write!(f, "expected {expected} labels, found {found}")
            }
        }
    }
}

/// Checks a raw description and builds the system, or lists every violation.
pub fn validate(raw: &RawSystem) -> Result<LinearSystem> {
    let mut violations = Vec::new();
    let prime = if raw.p < 0 {
        violations.push(Violation::NotPrime { p: raw.p });
        None
    } else {
        match Prime::new(raw.p as u64) {
            Ok(p) => Some(p),
            Err(Error::ModulusTooLarge(_)) => {
                violations.push(Violation::ModulusTooLarge { p: raw.p });
                None
            }
            Err(_) => {
                violations.push(Violation::NotPrime { p: raw.p });
                None
            }
        }
    };
    let d = raw.forms.first().map_or(0, Vec::len);
    if raw.forms.is_empty() {
        violations.push(Violation::NoForms);
    } else if d == 0 {
        violations.push(Violation::NoVariables);
    }
    for (row, form) in raw.forms.iter().enumerate() {
        if form.len() != d {
            violations.push(Violation::RaggedRow {
                row,
                expected: d,
                found: form.len(),
            });
        }
    }
    if let Some(labels) = &raw.labels {
        if labels.len() != raw.forms.len() {
            violations.push(Violation::LabelCount {
                expected: raw.forms.len(),
                found: labels.len(),
            });
        }
    }
    match prime {
        Some(p) if violations.is_empty() => {
            let rows: Vec<Vec<u64>> = raw
                .forms
                .iter()
                .map(|f| f.iter().map(|&e| p.reduce(e)).collect())
                .collect();
            let mut sys = LinearSystem::from_rows(p, &rows)?;
            sys.labels = raw.labels.clone();
            Ok(sys)
        }
        _ => Err(Error::InvalidSystem(violations)),
    }
}

/// An ordered system of `r ≥ 1` linear forms in `d ≥ 1` variables.
///
/// Serializes in the raw system format `{"p", "forms", "labels"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(into = "RawSystem")]
pub struct LinearSystem {
    matrix: FpMatrix,
    labels: Option<Vec<String>>,
}

impl From<LinearSystem> for RawSystem {
    fn from(sys: LinearSystem) -> Self {
        sys.to_raw()
    }
}

/// Degeneracies that do not invalidate a system but matter for complexity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub zero_forms: Vec<usize>,
    pub duplicate_pairs: Vec<(usize, usize)>,
}

impl LinearSystem {
    pub fn from_matrix(matrix: FpMatrix) -> Result<Self> {
        if matrix.rows() == 0 {
            return Err(Error::InvalidSystem(vec![Violation::NoForms]));
        }
        if matrix.cols() == 0 {
            return Err(Error::InvalidSystem(vec![Violation::NoVariables]));
        }
        Ok(LinearSystem { matrix, labels: None })
    }

    pub fn from_rows(p: Prime, rows: &[Vec<u64>]) -> Result<Self> {
        Self::from_matrix(FpMatrix::from_rows(p, rows)?)
    }

    /// Convenience constructor from signed integer rows.
    pub fn from_ints(p: u64, rows: &[&[i64]]) -> Result<Self> {
        validate(&RawSystem {
            p: p as i64,
            forms: rows.iter().map(|r| r.to_vec()).collect(),
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.num_forms() {
            return Err(Error::InvalidSystem(vec![Violation::LabelCount {
                expected: self.num_forms(),
                found: labels.len(),
            }]));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawSystem = serde_json::from_str(text)?;
        validate(&raw)
    }

    pub fn prime(&self) -> Prime {
        self.matrix.prime()
    }

    pub fn num_forms(&self) -> usize {
        self.matrix.rows()
    }

    pub fn num_vars(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn form(&self, i: usize) -> &[u64] {
        self.matrix.row(i)
    }

    pub fn form_vector(&self, i: usize) -> FpVector {
        FpVector::new(self.prime(), self.form(i).to_vec()).expect("rows are reduced")
    }

    pub fn forms(&self) -> impl Iterator<Item = &[u64]> {
        self.matrix.row_iter()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.num_forms() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.num_forms(),
            });
        }
        Ok(())
    }

    pub fn diagnostics(&self) -> Diagnostics {
        let mut d = Diagnostics::default();
        for i in 0..self.num_forms() {
            if self.form(i).iter().all(|&x| x == 0) {
                d.zero_forms.push(i);
            }
            for j in i + 1..self.num_forms() {
                if self.form(i) == self.form(j) {
                    d.duplicate_pairs.push((i, j));
                }
            }
        }
        d
    }

    pub fn to_raw(&self) -> RawSystem {
        RawSystem {
            p: self.prime().get() as i64,
            forms: self
                .forms()
                .map(|f| f.iter().map(|&x| x as i64).collect())
                .collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("serializable")
    }

    /// Compact JSON `{"p":P,"forms":[[...],...]}` with reduced entries and
    /// no labels. This is the byte string that [`LinearSystem::hash`] digests.
    pub fn canonical_json(&self) -> String {
        #[derive(Serialize)]
        struct Canonical<'a> {
            p: u64,
            forms: &'a [Vec<u64>],
        }
        serde_json::to_string(&Canonical {
            p: self.prime().get(),
            forms: &self.matrix.to_rows(),
        })
        .expect("serializable")
    }

    /// Lowercase hex SHA-256 of [`LinearSystem::canonical_json`].
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }

    /// The system `ΨR` for a `d × d` matrix `R`; labels carry over.
    pub fn transform(&self, r: &FpMatrix) -> Result<LinearSystem> {
        Ok(LinearSystem {
            matrix: self.matrix.mul(r)?,
            labels: self.labels.clone(),
        })
    }

    pub fn is_translation_invariant(&self) -> bool {
        self.ones_preimage().is_some()
    }

    fn ones_preimage(&self) -> Option<Vec<u64>> {
        solve_right(&self.matrix, &vec![1; self.num_forms()])
    }
}

/// A translation-invariant system rewritten with first column `1^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub system: LinearSystem,
    /// Invertible `R` with `system = original · R`.
    pub transform: FpMatrix,
}

/// Finds `Ψ' = ΨR` with first column all ones, or `None` if `1^r` is not in
/// the column space of `Ψ`.
///
/// If the first column is already `1^r` then `R` is the identity. Otherwise
/// `c` is the solution of `Ψc = 1^r` with free variables set to zero, and `R`
/// has first column `c` completed by unit vectors.
pub fn normalize_translation_invariant(sys: &LinearSystem) -> Option<Normalized> {
    let p = sys.prime();
    let d = sys.num_vars();
    if sys.forms().all(|f| f[0] == 1) {
        return Some(Normalized {
            system: sys.clone(),
            transform: FpMatrix::identity(p, d),
        });
    }
    let c = sys.ones_preimage()?;
    let transform = extend_to_basis(p, &c).expect("preimage of 1^r is nonzero");
    let system = sys.transform(&transform).expect("square transform");
    debug_assert!(system.forms().all(|f| f[0] == 1));
    Some(Normalized { system, transform })
}

/// The point set `Z ⊂ F_p^M` of a normalized translation-invariant system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociatedSet {
    pub p: Prime,
    /// Ambient dimension `M = d - 1`.
    pub dim: usize,
    pub points: Vec<Vec<u64>>,
    /// `origin[i]` is the form index that produced `points[i]`.
    pub origin: Vec<usize>,
}

impl AssociatedSet {
    /// Reattaches the all-ones column.
    pub fn to_system(&self) -> LinearSystem {
        system_from_points(self.p, self.dim, &self.points).expect("points share a dimension")
    }
}

/// Associated set of a translation-invariant system (normalizing first).
pub fn associated_set(sys: &LinearSystem) -> Result<AssociatedSet> {
    let norm = normalize_translation_invariant(sys).ok_or(Error::NotTranslationInvariant)?;
    let points = norm.system.forms().map(|f| f[1..].to_vec()).collect();
    Ok(AssociatedSet {
        p: sys.prime(),
        dim: sys.num_vars() - 1,
        points,
        origin: (0..sys.num_forms()).collect(),
    })
}

/// The system with forms `x + a·t` for the given points `a ∈ F_p^M`.
pub fn system_from_points(p: Prime, dim: usize, points: &[Vec<u64>]) -> Result<LinearSystem> {
    let rows: Vec<Vec<u64>> = points
        .iter()
        .map(|a| {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: a.len(),
                });
            }
            let mut row = vec![1];
            row.extend(a.iter().map(|&x| x % p.get()));
            Ok(row)
        })
        .collect::<Result<_>>()?;
    LinearSystem::from_rows(p, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn raw(p: i64, forms: &[&[i64]]) -> RawSystem {
        RawSystem {
            p,
            forms: forms.iter().map(|f| f.to_vec()).collect(),
            labels: None,
        }
    }

    #[test]
    fn validate_examples() {
        let sys = validate(&raw(5, &[&[1, 0], &[1, 1], &[1, 2]])).unwrap();
        assert_eq!((sys.num_forms(), sys.num_vars()), (3, 2));

        match validate(&raw(4, &[&[1, 0]])) {
            Err(Error::InvalidSystem(v)) => {
                assert_eq!(v, vec![Violation::NotPrime { p: 4 }]);
                assert_eq!(v[0].to_string(), "modulus not prime: 4");
            }
            other => panic!("unexpected {other:?}"),
        }

        match validate(&raw(5, &[&[1, 0], &[1]])) {
            Err(Error::InvalidSystem(v)) => {
                assert_eq!(v.len(), 1);
                assert!(v[0].to_string().starts_with("ragged row 1"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validate_collects_every_violation() {
        let mut r = raw(9, &[&[1, 2], &[3], &[]]);
        r.labels = Some(vec!["a".into()]);
        let Err(Error::InvalidSystem(v)) = validate(&r) else {
            panic!("expected violations")
        };
        assert_eq!(v.len(), 4);
        assert!(matches!(validate(&raw(5, &[])), Err(Error::InvalidSystem(_))));
        assert!(matches!(validate(&raw(5, &[&[]])), Err(Error::InvalidSystem(_))));
        assert!(matches!(validate(&raw(-3, &[&[1]])), Err(Error::InvalidSystem(_))));
    }

    #[test]
    fn entries_are_reduced_on_load() {
        let sys = LinearSystem::from_json(r#"{"p":7,"forms":[[8,-1],[14,22]]}"#).unwrap();
        assert_eq!(sys.form(0), &[1, 6]);
        assert_eq!(sys.form(1), &[0, 1]);
    }

    #[test]
    fn diagnostics_flag_zero_and_duplicate_forms() {
        let sys = LinearSystem::from_ints(5, &[&[1, 1], &[0, 0], &[1, 1], &[6, 1]]).unwrap();
        let d = sys.diagnostics();
        assert_eq!(d.zero_forms, vec![1]);
        assert_eq!(d.duplicate_pairs, vec![(0, 2), (0, 3), (2, 3)]);
    }

    #[test]
    fn canonical_json_and_hash_ignore_labels() {
        let a = LinearSystem::from_ints(5, &[&[1, 0], &[6, 1]]).unwrap();
        let b = a.clone().with_labels(vec!["x".into(), "x+y".into()]).unwrap();
        assert_eq!(a.canonical_json(), r#"{"p":5,"forms":[[1,0],[1,1]]}"#);
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
        let c = LinearSystem::from_ints(5, &[&[1, 0], &[1, 2]]).unwrap();
        assert_ne!(a.hash(), c.hash());
    }

    #[test]
    fn normalization_examples() {
        let ap = LinearSystem::from_ints(5, &[&[1, 0], &[1, 1], &[1, 2]]).unwrap();
        let n = normalize_translation_invariant(&ap).unwrap();
        assert_eq!(n.system, ap);
        assert_eq!(n.transform, FpMatrix::identity(ap.prime(), 2));

        // x, 2x: (1,1) is not a multiple of (1,2)
        let dil = LinearSystem::from_ints(5, &[&[1], &[2]]).unwrap();
        assert!(normalize_translation_invariant(&dil).is_none());
        assert!(matches!(associated_set(&dil), Err(Error::NotTranslationInvariant)));

        let scaled = LinearSystem::from_ints(5, &[&[2, 0], &[2, 1], &[2, 2]]).unwrap();
        let n = normalize_translation_invariant(&scaled).unwrap();
        assert_eq!(n.transform.to_rows(), vec![vec![3, 0], vec![0, 1]]);
        assert!(n.system.forms().all(|f| f[0] == 1));
    }

    #[test]
    fn associated_set_examples() {
        let ap = LinearSystem::from_ints(5, &[&[1, 0], &[1, 1], &[1, 2]]).unwrap();
        let z = associated_set(&ap).unwrap();
        assert_eq!(z.points, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(z.dim, 1);

        let hc = LinearSystem::from_ints(
            7,
            &[&[1, 1, 0], &[1, 0, 1], &[1, 0, 2], &[1, 1, 3], &[1, 2, 3], &[1, 3, 3]],
        )
        .unwrap();
        let z = associated_set(&hc).unwrap();
        assert_eq!(
            z.points,
            vec![vec![1, 0], vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3], vec![3, 3]]
        );

        let ns = LinearSystem::from_ints(
            23,
            &[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1], &[1, 10, 1], &[1, 1, 2], &[1, 2, 2]],
        )
        .unwrap();
        let z = associated_set(&ns).unwrap();
        assert_eq!(
            z.points,
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![10, 1], vec![1, 2], vec![2, 2]]
        );
    }

    /// Image of `Ψ` as a set of `r`-tuples, by enumerating `F_p^d`.
    fn image(sys: &LinearSystem) -> HashSet<Vec<u64>> {
        let p = sys.prime();
        let d = sys.num_vars();
        let total = (p.get() as usize).pow(d as u32);
        (0..total)
            .map(|mut code| {
                let x: Vec<u64> = (0..d)
                    .map(|_| {
                        let digit = (code % p.get() as usize) as u64;
                        code /= p.get() as usize;
                        digit
                    })
                    .collect();
                sys.forms()
                    .map(|f| f.iter().zip(&x).fold(0, |acc, (&a, &b)| p.add(acc, p.mul(a, b))))
                    .collect()
            })
            .collect()
    }

    fn image_is_translation_invariant(sys: &LinearSystem) -> bool {
        let p = sys.prime();
        let img = image(sys);
        img.iter()
            .all(|y| img.contains(&y.iter().map(|&v| p.add(v, 1)).collect::<Vec<_>>()))
    }

    prop_compose! {
        fn small_system()(p in prop::sample::select(vec![2u64, 3, 5]), r in 1usize..5, d in 1usize..4)
            (rows in prop::collection::vec(prop::collection::vec(0..p, d), r), p in Just(p))
            -> LinearSystem {
            LinearSystem::from_rows(Prime::new(p).unwrap(), &rows).unwrap()
        }
    }

    proptest! {
        #[test]
        fn normalization_matches_image_oracle(sys in small_system()) {
            let norm = normalize_translation_invariant(&sys);
            prop_assert_eq!(norm.is_some(), image_is_translation_invariant(&sys));
            if let Some(n) = norm {
                prop_assert!(n.transform.is_invertible());
                prop_assert_eq!(&sys.transform(&n.transform).unwrap(), &n.system);
                prop_assert!(n.system.forms().all(|f| f[0] == 1));
                prop_assert_eq!(image(&n.system), image(&sys));
            }
        }

        #[test]
        fn associated_set_round_trip(sys in small_system()) {
            if let Ok(z) = associated_set(&sys) {
                let n = normalize_translation_invariant(&sys).unwrap();
                prop_assert_eq!(z.to_system(), n.system);
                prop_assert_eq!(z.dim, sys.num_vars() - 1);
            }
        }
    }
}
