//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use seqcs::analysis::{
    gowers_norm, gowers_norm_direct, gvn_check, lambda_average, random_one_bounded, Family,
    FunctionTable,
};
use seqcs::complexity::{sequential_witness, tensor_criterion, verify_witness};
use seqcs::covering::{cover_within_excluding, min_cover_excluding, CoverMode, CoverOptions};
use seqcs::field::{tensor_power, FpMatrix};
use seqcs::phi::{
    counterexample_family, gray_code_check, phi_system, phi_witness, s_km_points,
};
use seqcs::reduction::{cs_step, numeric_step_check};
use seqcs::{FpVector, LinearSystem, Prime};

const TOL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    ensure(start.elapsed() < budget, || {
        format!("took {:.2?}, budget {budget:?}", start.elapsed())
    })
}

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn tables(p: Prime, n: usize, count: usize, seed: u64) -> Vec<FunctionTable> {
    (0..count)
        .map(|j| random_one_bounded(p, n, seed * 1000 + j as u64, Family::Disk).unwrap())
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst = f64::NEG_INFINITY;
    for k in [3usize, 4] {
        for p in [5u64, 7] {
            let sys = phi_system(prime(p), k, 1).map_err(|e| e.to_string())?;
            for n in [1usize, 2] {
                for t in 0..200u64 {
                    let fs = tables(prime(p), n, k, t);
                    let lam = lambda_average(&sys, &fs).unwrap().norm();
                    let bound = fs
                        .iter()
                        .map(|f| gowers_norm(f, k - 1).unwrap())
                        .fold(f64::INFINITY, f64::min);
                    worst = worst.max(lam - bound);
                    ensure(lam <= bound + TOL, || {
                        format!("k={k} p={p} n={n} trial {t}: |Λ| = {lam} > {bound}")
                    })?;
                }
            }
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("max |Λ| - min‖f‖ = {worst:.3e}, {:.2?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let sys = common::golden("six_points_p7");
    let mut worst = f64::NEG_INFINITY;
    for i in 0..sys.num_forms() {
        let w = sequential_witness(&sys, i, 1, 2)
            .unwrap()
            .ok_or_else(|| format!("no (1,2) witness at index {i}"))?;
        ensure(verify_witness(&sys, &w).valid, || format!("witness at {i} fails"))?;
        let report = gvn_check(&sys, i, 1, 2, 1, Family::Random, 100, 70 + i as u64).unwrap();
        worst = worst.max(report.max_violation);
        ensure(report.passed, || format!("index {i}: violation {}", report.max_violation))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("max violation {worst:.3e}, {:.2?}", start.elapsed()))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    let mut worst = f64::NEG_INFINITY;
    for (name, sys) in common::all_golden() {
        for w in common::golden_witnesses(name, &sys) {
            if w.len() != 2 {
                continue;
            }
            let step = cs_step(&sys, &w).map_err(|e| format!("{name}: {e}"))?;
            let v = numeric_step_check(&step, 1, 100, 3 + checked, Family::Random).unwrap();
            worst = worst.max(v);
            ensure(v <= TOL, || format!("{name} at {}: |Λ|² - Λ' = {v}", w.i))?;
            checked += 1;
        }
    }
    ensure(checked > 0, || "no length-2 witnesses".into())?;
    Ok(format!("{checked} witnesses, max |Λ|² - Λ' = {worst:.3e}"))
}

fn criterion_4() -> Outcome {
    let mut steps = 0;
    let mut merges = 0;
    for (name, sys) in common::all_golden() {
        for w in common::golden_witnesses(name, &sys) {
            ensure(verify_witness(&sys, &w).valid, || format!("{name}: golden witness invalid"))?;
            if w.len() < 2 {
                continue;
            }
            let step = cs_step(&sys, &w).map_err(|e| format!("{name}: {e}"))?;
            let report = verify_witness(&step.output, &step.propagated);
            ensure(report.valid, || {
                format!("{name} at {}: {:?}", w.i, report.first_violation())
            })?;
            ensure(step.propagated.len() + 1 == w.len(), || "length did not drop by one".into())?;
            for m in &step.merge_checks {
                let exact = m.dim_d1_cap_u2 == 0
                    && m.dim_d2_cap_u1 == 0
                    && m.dim_sum_cap_u1 == m.dim_d1
                    && m.dim_sum_cap_u2 == m.dim_d2;
                ensure(m.holds && exact, || format!("{name}: merge identity fails {m:?}"))?;
                merges += 1;
            }
            steps += 1;
        }
    }
    Ok(format!("{steps} steps verified, {merges} merged-cover identities exact"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let origin = vec![vec![0u64, 0]];
    let p5 = prime(5);
    let pts: Vec<Vec<u64>> = s_km_points(p5, 6, 2).into_iter().skip(1).collect();
    let opts = CoverOptions::new(CoverMode::HyperplanesOnly);
    let five = cover_within_excluding(p5, 2, &pts, &origin, opts, 5).map_err(|e| e.to_string())?;
    ensure(five.is_none(), || "found a cover by 5 lines".into())?;
    let p3 = prime(3);
    let pts: Vec<Vec<u64>> = s_km_points(p3, 4, 2).into_iter().skip(1).collect();
    let cover = min_cover_excluding(p3, 2, &pts, &origin, CoverMode::HyperplanesOnly)
        .map_err(|e| e.to_string())?;
    ensure(cover.len() == 3, || format!("p=3 minimum is {}", cover.len()))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("no 5-line cover at p=5; minimum 3 at p=3; {:.2?}", start.elapsed()))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for p in [2u64, 3, 5] {
        for m in 1..=3usize {
            for k in 1..=(m * (p as usize - 1) + 1).min(7) {
                let w = phi_witness(prime(p), k, m).map_err(|e| e.to_string())?;
                let tag = format!("p={p} M={m} k={k}");
                ensure(w.sequence.len() == s_km_points(prime(p), k, m).len(), || {
                    format!("{tag}: wrong length")
                })?;
                ensure(w.sequence.last() == Some(&vec![0; m]), || format!("{tag}: bad end"))?;
                for (j, cover) in w.affine_covers().iter().enumerate() {
                    ensure(cover.len() < k.max(1), || format!("{tag} prefix {j}: too many"))?;
                    ensure(seqcs::covering::verify_cover(cover).valid, || {
                        format!("{tag} prefix {j}: cover invalid")
                    })?;
                }
                cases += 1;
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{cases} grid cases, {:.2?}", start.elapsed()))
}

fn criterion_7() -> Outcome {
    let p = prime(3);
    let fs = counterexample_family(p, 4, 2, &[2, 1], 1).map_err(|e| e.to_string())?;
    let lam = lambda_average(&phi_system(p, 4, 2).unwrap(), &fs).unwrap();
    ensure((lam - 1.0).norm() < 1e-12, || format!("Λ = {lam}"))?;
    let u2 = gowers_norm(&fs[0], 2).unwrap();
    let delta = 1.0 - u2;
    ensure(delta > 0.0, || format!("‖f_0‖_U2 = {u2}"))?;
    let lifted = counterexample_family(p, 4, 2, &[2, 1], 2).unwrap();
    let u2_lifted = gowers_norm(&lifted[0], 2).unwrap();
    ensure((u2_lifted - u2 * u2).abs() < 1e-10, || {
        format!("ℓ=2 norm {u2_lifted} vs square {}", u2 * u2)
    })?;
    let sigma = gray_code_check(p, 4, 2, &[2, 1], 1000, 7).unwrap();
    ensure(sigma == 0, || format!("max |σ| = {sigma}"))?;
    Ok(format!("Λ = 1, ‖f_0‖_U2 = {u2:.6} (δ = {delta:.6}), max |σ| = 0"))
}

fn criterion_8() -> Outcome {
    let mut worst: f64 = 0.0;
    for (p, n, k) in [(3u64, 1usize, 2usize), (3, 1, 3), (3, 2, 2), (5, 1, 2), (5, 1, 3)] {
        for t in 0..50u64 {
            let f = random_one_bounded(prime(p), n, 900 + t, Family::Phases).unwrap();
            let a = gowers_norm(&f, k).unwrap();
            let b = gowers_norm_direct(&f, k).unwrap();
            worst = worst.max((a - b).abs());
            ensure((a - b).abs() < 1e-10, || format!("(p,n,k)=({p},{n},{k}): {a} vs {b}"))?;
        }
    }
    Ok(format!("max difference {worst:.3e}"))
}

/// Smallest `j` with the `(j+1)`-th tensor powers of the rows independent.
fn tensor_oracle(sys: &LinearSystem) -> usize {
    (0..)
        .find(|&j| {
            let rows: Vec<Vec<u64>> = sys
                .forms()
                .map(|f| {
                    tensor_power(&FpVector::new(sys.prime(), f.to_vec()).unwrap(), j + 1)
                        .into_entries()
                })
                .collect();
            FpMatrix::from_rows(sys.prime(), &rows).unwrap().rank() == sys.num_forms()
        })
        .unwrap()
}

fn criterion_9() -> Outcome {
    for (p, k) in [(5u64, 3usize), (5, 4), (5, 5), (7, 5)] {
        let sys = phi_system(prime(p), k, 1).unwrap();
        let got = tensor_criterion(&sys, 8).unwrap().value();
        let oracle = tensor_oracle(&sys);
        ensure(got == Some(k - 2) && oracle == k - 2, || {
            format!("(p,k)=({p},{k}): criterion {got:?}, oracle {oracle}")
        })?;
    }
    Ok("Φ_k,1 gives k - 2 at all four (p, k)".into())
}

fn collinear(p: Prime, a: &[u64], b: &[u64], c: &[u64]) -> bool {
    let u = [p.sub(b[0], a[0]), p.sub(b[1], a[1])];
    let v = [p.sub(c[0], a[0]), p.sub(c[1], a[1])];
    p.sub(p.mul(u[0], v[1]), p.mul(u[1], v[0])) == 0
}

fn criterion_10() -> Outcome {
    let sys = common::golden("no_three_collinear_p23");
    let p = sys.prime();
    let pts: Vec<&[u64]> = sys.forms().map(|f| &f[1..]).collect();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            for c in b + 1..pts.len() {
                ensure(!collinear(p, pts[a], pts[b], pts[c]), || {
                    format!("points {a}, {b}, {c} are collinear")
                })?;
            }
        }
    }
    for i in 0..sys.num_forms() {
        for max_len in 1..=6 {
            let w = sequential_witness(&sys, i, 1, max_len).unwrap();
            ensure(w.is_none(), || format!("witness found at {i}, max_len {max_len}"))?;
        }
    }
    Ok("no 3 collinear; no k = 1 witness up to length 6 at any index".into())
}

/// End-to-end check on `Φ_{6,2}` over `F_5`: the construction certifies
/// `(4, 19)` at the origin and the inequality holds numerically.
fn phi_6_2_at_origin() -> Outcome {
    let p = prime(5);
    let sys = common::golden("phi_5_6_2");
    let cert = phi_witness(p, 6, 2).unwrap().certificate(None).unwrap();
    ensure(cert.len() == 19 && cert.k == 4 && cert.i == 0, || "unexpected certificate".into())?;
    ensure(verify_witness(&sys, &cert).valid, || "certificate invalid".into())?;
    let report = gvn_check(&sys, 0, 4, 19, 1, Family::Random, 50, 19).unwrap();
    ensure(report.passed, || format!("violation {}", report.max_violation))?;
    Ok(format!("(4, 19) certified; max violation {:.3e}", report.max_violation))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1 Gowers AP bound", criterion_1),
        ("2 sequential bound on the F_7 example", criterion_2),
        ("3 per-step Cauchy-Schwarz", criterion_3),
        ("4 witness propagation", criterion_4),
        ("5 covering lower bound", criterion_5),
        ("6 Φ_k,M witness construction", criterion_6),
        ("7 lower-bound family", criterion_7),
        ("8 Gowers oracle equivalence", criterion_8),
        ("9 tensor criterion", criterion_9),
        ("10 negative control over F_23", criterion_10),
        ("note Φ_6,2 at ℓ = 19", phi_6_2_at_origin),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
