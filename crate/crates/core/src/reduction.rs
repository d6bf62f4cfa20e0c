//! One Cauchy-Schwarz step on a system with a sequential witness, and chains
//! of such steps down to a system with an ordinary CS-complexity cover.
//!
//! Given `Ψ = (ψ_0, ..., ψ_{r-1})` in `d` variables and a witness
//! `(s_0, ..., s_{ℓ-1})` at `i = s_{ℓ-1}`, the step
//!
//! 1. relabels the forms so the witness comes first (`perm`),
//! 2. applies an invertible `T` with `ψ_{s_0} T = (1, 0, ..., 0)`, giving
//!    forms `φ_0, ..., φ_{r-1}` with `φ_0 = e_0`,
//! 3. doubles the remaining variables: for `a < r - 1` the output form is
//!    `(φ_{a+1}, 0^{d-1})` and for `a ≥ r - 1` it is
//!    `(φ_{b,0}, 0^{d-1}, φ_{b,1}, ..., φ_{b,d-1})` with `b = a - r + 2`.
//!
//! The second half of the output is evaluated on conjugated functions. The
//! first `ℓ - 1` output forms are again a witness, now of length `ℓ - 1`,
//! and the step rebuilds its covers from the input covers.

use serde::Serialize;

use crate::analysis::{
    family_tables, lambda_average, lambda_average_slots, Family, FunctionSlot, FunctionTable,
};
use crate::complexity::{verify_witness, CoverCertificate, WitnessCertificate};
use crate::error::{Error, Result};
use crate::field::{completing_transform, EchelonBasis, FpMatrix};
use crate::system::LinearSystem;

/// Default cap on the number of forms in any system of a chain.
pub const DEFAULT_FORM_CAP: usize = 1 << 12;

/// Record of the subspace-intersection identity for one merged part.
///
/// With `D1 = ⟨C'⟩ ⊂ U1` (last `d - 1` coordinates zero) and
/// `D2 = ⟨E'⟩ ⊂ U2` (coordinates `1..d` zero), the identity holds when
/// `D1 ∩ U2 = D2 ∩ U1 = 0` and `(D1 + D2) ∩ Ui = Di`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MergeCheck {
    /// Length of the propagated prefix this cover belongs to.
    pub prefix_len: usize,
    pub part: usize,
    pub dim_d1: usize,
    pub dim_d2: usize,
    pub dim_d1_cap_u2: usize,
    pub dim_d2_cap_u1: usize,
    pub dim_sum_cap_u1: usize,
    pub dim_sum_cap_u2: usize,
    pub holds: bool,
}

/// One Cauchy-Schwarz step.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionStep {
    pub input: LinearSystem,
    pub witness: WitnessCertificate,
    /// `permutation[j]` is the input index placed at position `j`.
    pub permutation: Vec<usize>,
    pub transform: FpMatrix,
    pub output: LinearSystem,
    /// `slots[a]` names the input form (by its original index) whose
    /// function feeds output form `a`.
    pub slots: Vec<FunctionSlot>,
    pub propagated: WitnessCertificate,
    pub merge_checks: Vec<MergeCheck>,
}

/// Dimension of `V ∩ {y : y_c = 0 for c in zero_cols}` for `V = ⟨rows⟩`.
fn dim_cap_coordinate(basis: &EchelonBasis, zero_cols: &[usize]) -> usize {
    let projected = EchelonBasis::from_rows(
        basis.prime(),
        zero_cols.len(),
        basis
            .basis()
            .iter()
            .map(|row| zero_cols.iter().map(|&c| row[c]).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .iter()
            .map(Vec::as_slice),
    );
    basis.rank() - projected.rank()
}

/// Applies one Cauchy-Schwarz step to a verified witness of length `ℓ ≥ 2`.
pub fn cs_step(sys: &LinearSystem, witness: &WitnessCertificate) -> Result<ReductionStep> {
    let report = verify_witness(sys, witness);
    if let Some(v) = report.first_violation() {
        return Err(Error::InvalidWitness(v.to_string()));
    }
    let ell = witness.len();
    if ell == 1 {
        return Err(Error::BaseCase);
    }
    let p = sys.prime();
    let r = sys.num_forms();
    let d = sys.num_vars();
    let seq = &witness.sequence;

    let mut permutation = seq.clone();
    permutation.extend((0..r).filter(|j| !seq.contains(j)));
    let mut position = vec![0; r];
    for (q, &m) in permutation.iter().enumerate() {
        position[m] = q;
    }

    let transform = completing_transform(&sys.form_vector(seq[0]))?;
    let moved = sys.transform(&transform)?;
    let phi: Vec<&[u64]> = permutation.iter().map(|&m| moved.form(m)).collect();

    let width = 2 * d - 1;
    let mut rows = Vec::with_capacity(2 * r - 2);
    let mut slots = Vec::with_capacity(2 * r - 2);
    for a in 0..r - 1 {
        let mut row = phi[a + 1].to_vec();
        row.resize(width, 0);
        rows.push(row);
        slots.push(FunctionSlot {
            source: permutation[a + 1],
            conjugated: false,
        });
    }
    for b in 1..r {
        let mut row = vec![0; width];
        row[0] = phi[b][0];
        row[d..].copy_from_slice(&phi[b][1..]);
        rows.push(row);
        slots.push(FunctionSlot {
            source: permutation[b],
            conjugated: true,
        });
    }
    let output = LinearSystem::from_rows(p, &rows)?;

    // Input index m (not the first witness form) sits at output m' = q - 1 in
    // the first half and at q + r - 2 in the second half, q = position[m].
    let first_half = |m: usize| position[m] - 1;
    let second_half = |m: usize| position[m] + r - 2;
    let u1_zero: Vec<usize> = (d..width).collect();
    let u2_zero: Vec<usize> = (1..d).collect();
    let e_parts = &witness.covers[0].parts;

    let mut covers = Vec::with_capacity(ell - 1);
    let mut merge_checks = Vec::new();
    for j in 1..ell {
        let c_parts = &witness.covers[j].parts;
        let count = c_parts.len().max(e_parts.len());
        let mut parts = Vec::with_capacity(count);
        for t in 0..count {
            let c: Vec<usize> = c_parts.get(t).map_or(Vec::new(), |part| {
                part.iter().map(|&m| first_half(m)).collect()
            });
            let e: Vec<usize> = e_parts.get(t).map_or(Vec::new(), |part| {
                part.iter().map(|&m| second_half(m)).collect()
            });
            let d1 = EchelonBasis::from_rows(p, width, c.iter().map(|&a| output.form(a)));
            let d2 = EchelonBasis::from_rows(p, width, e.iter().map(|&a| output.form(a)));
            let sum = EchelonBasis::from_rows(
                p,
                width,
                c.iter().chain(&e).map(|&a| output.form(a)),
            );
            let check = MergeCheck {
                prefix_len: j,
                part: t,
                dim_d1: d1.rank(),
                dim_d2: d2.rank(),
                dim_d1_cap_u2: dim_cap_coordinate(&d1, &u2_zero),
                dim_d2_cap_u1: dim_cap_coordinate(&d2, &u1_zero),
                dim_sum_cap_u1: dim_cap_coordinate(&sum, &u1_zero),
                dim_sum_cap_u2: dim_cap_coordinate(&sum, &u2_zero),
                holds: false,
            };
            let holds = check.dim_d1_cap_u2 == 0
                && check.dim_d2_cap_u1 == 0
                && check.dim_sum_cap_u1 == check.dim_d1
                && check.dim_sum_cap_u2 == check.dim_d2;
            if !holds {
                return Err(Error::PropagationFailure {
                    step: 0,
                    reason: format!("subspace identity fails for prefix {j}, part {t}"),
                });
            }
            merge_checks.push(MergeCheck { holds, ..check });
            let mut part: Vec<usize> = c.into_iter().chain(e).collect();
            if !part.is_empty() {
                part.sort_unstable();
                parts.push(part);
            }
        }
        covers.push(CoverCertificate {
            targets: (0..j).collect(),
            parts,
        });
    }
    let propagated = WitnessCertificate {
        system_hash: output.hash(),
        i: ell - 2,
        k: witness.k,
        sequence: (0..ell - 1).collect(),
        covers,
    };
    if let Some(v) = verify_witness(&output, &propagated).first_violation() {
        return Err(Error::PropagationFailure {
            step: 0,
            reason: v.to_string(),
        });
    }
    Ok(ReductionStep {
        input: sys.clone(),
        witness: witness.clone(),
        permutation,
        transform,
        output,
        slots,
        propagated,
        merge_checks,
    })
}

/// Steps from a witness down to length 1, or until the form cap stops it.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionChain {
    pub steps: Vec<ReductionStep>,
    /// Witness on the last system of the chain.
    pub final_witness: WitnessCertificate,
    /// Cover showing CS-complexity at most `k` at the tracked form of the
    /// last system; present when the chain reached length 1.
    pub base: Option<CoverCertificate>,
    /// For each form of the last system, the original function feeding it
    /// and whether it is conjugated.
    pub final_slots: Vec<FunctionSlot>,
    /// `(forms, variables)` of every system in the chain.
    pub shapes: Vec<(usize, usize)>,
    pub truncated: bool,
}

impl ReductionChain {
    pub fn final_system<'a>(&'a self, original: &'a LinearSystem) -> &'a LinearSystem {
        self.steps.last().map_or(original, |s| &s.output)
    }

    /// For each original form, the `(slot, conjugated)` pairs at which its
    /// function occurs in the last system.
    pub fn occurrences(&self, original_forms: usize) -> Vec<Vec<(usize, bool)>> {
        let mut out = vec![Vec::new(); original_forms];
        for (slot, s) in self.final_slots.iter().enumerate() {
            out[s.source].push((slot, s.conjugated));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// [`build_chain_capped`] with [`DEFAULT_FORM_CAP`].
pub fn build_chain(sys: &LinearSystem, witness: &WitnessCertificate) -> Result<ReductionChain> {
    build_chain_capped(sys, witness, DEFAULT_FORM_CAP)
}

/// Applies [`cs_step`] until the witness has length 1. Stops early with
/// `truncated = true` if the next system would exceed `form_cap` forms.
pub fn build_chain_capped(
    sys: &LinearSystem,
    witness: &WitnessCertificate,
    form_cap: usize,
) -> Result<ReductionChain> {
    if let Some(v) = verify_witness(sys, witness).first_violation() {
        return Err(Error::InvalidWitness(v.to_string()));
    }
    let mut steps: Vec<ReductionStep> = Vec::new();
    let mut current_sys = sys.clone();
    let mut current = witness.clone();
    let mut slots: Vec<FunctionSlot> = (0..sys.num_forms())
        .map(|source| FunctionSlot {
            source,
            conjugated: false,
        })
        .collect();
    let mut shapes = vec![(sys.num_forms(), sys.num_vars())];
    let mut truncated = false;
    while current.len() > 1 {
        if 2 * current_sys.num_forms() - 2 > form_cap {
            truncated = true;
            break;
        }
        let step = cs_step(&current_sys, &current).map_err(|e| match e {
            Error::PropagationFailure { reason, .. } => Error::PropagationFailure {
                step: steps.len(),
                reason,
            },
            other => other,
        })?;
        slots = step
            .slots
            .iter()
            .map(|s| FunctionSlot {
                source: slots[s.source].source,
                conjugated: slots[s.source].conjugated ^ s.conjugated,
            })
            .collect();
        shapes.push((step.output.num_forms(), step.output.num_vars()));
        current_sys = step.output.clone();
        current = step.propagated.clone();
        steps.push(step);
    }
    let base = (current.len() == 1).then(|| current.covers[0].clone());
    Ok(ReductionChain {
        steps,
        final_witness: current,
        base,
        final_slots: slots,
        shapes,
        truncated,
    })
}

/// `|Λ_Ψ(f)|² - Re Λ_{Ψ'}(g)` for one tuple, where `g` follows the step's
/// slot table. Nonpositive up to roundoff for 1-bounded `f`.
pub fn step_violation(step: &ReductionStep, functions: &[FunctionTable]) -> Result<f64> {
    let lhs = lambda_average(&step.input, functions)?.norm_sqr();
    let rhs = lambda_average_slots(&step.output, functions, &step.slots)?;
    Ok(lhs - rhs.re)
}

/// Maximum of [`step_violation`] over `trials` seeded tuples from `family`
/// on `F_p^n`.
pub fn numeric_step_check(
    step: &ReductionStep,
    n: usize,
    trials: usize,
    seed: u64,
    family: Family,
) -> Result<f64> {
    let mut worst = f64::NEG_INFINITY;
    let mut draw = family_tables(step.input.prime(), step.input.num_forms(), n, family, seed);
    for t in 0..trials {
        let fs = draw(t)?;
        worst = worst.max(step_violation(step, &fs)?);
    }
    Ok(worst)
}
