use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;
use serde_json::{json, Value};

use seqcs::analysis::{
    gowers_norm, gowers_norm_direct, gvn_check, lambda_average, random_one_bounded, Family,
    FunctionTable, ENUMERATION_LIMIT, INEQUALITY_TOLERANCE,
};
use seqcs::complexity::{
    complexity_report, sequential_witness, verify_witness, CsComplexity, TensorCriterion,
    WitnessCertificate,
};
use seqcs::covering::{
    cover_within_excluding, min_cover_excluding_with, verify_cover, AffineCover, AffineSubspace,
    CoverMode, CoverOptions, PointSet,
};
use seqcs::phi::{
    counterexample_family, default_weight, gray_code_check, phi_witness, PhiDescriptor,
};
use seqcs::reduction::{build_chain_capped, numeric_step_check, DEFAULT_FORM_CAP};
use seqcs::system::associated_set;
use seqcs::{Error, LinearSystem, Prime};

use crate::{parse_family, Outcome};

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn load_system(path: &Path) -> Result<LinearSystem, String> {
    LinearSystem::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn prime(p: u64) -> Result<Prime, String> {
    Prime::new(p).map_err(|e| e.to_string())
}

fn check_points(sys: &LinearSystem, n: usize, max_points: u128) -> Result<(), String> {
    let required = (sys.prime().get() as u128).saturating_pow((n * sys.num_vars()) as u32);
    if required > max_points {
        return Err(Error::SizeGuard { required, limit: max_points }.to_string());
    }
    Ok(())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn fmt_point(x: &[u64]) -> String {
    let inner: Vec<String> = x.iter().map(u64::to_string).collect();
    format!("({})", inner.join(","))
}

fn fmt_parts(parts: &[Vec<usize>]) -> String {
    parts
        .iter()
        .map(|part| {
            let inner: Vec<String> = part.iter().map(usize::to_string).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_certificate(cert: &WitnessCertificate, out: &mut String) {
    let _ = writeln!(
        out,
        "witness at form {}: k = {}, length {}, sequence {:?}",
        cert.i,
        cert.k,
        cert.len(),
        cert.sequence
    );
    for (j, cover) in cert.covers.iter().enumerate() {
        let _ = writeln!(out, "  prefix {}: {}", j + 1, fmt_parts(&cover.parts));
    }
}

#[derive(Debug, Args, Serialize)]
pub struct AnalyzeArgs {
    /// System file.
    pub system: PathBuf,
    /// Largest k tried by the tensor criterion.
    #[arg(long, default_value_t = 6)]
    pub k_max: usize,
}

pub fn analyze(a: &AnalyzeArgs) -> Result<Outcome, String> {
    let sys = load_system(&a.system)?;
    let ti = sys.is_translation_invariant();
    let points = if ti {
        Some(associated_set(&sys).map_err(|e| e.to_string())?.points)
    } else {
        None
    };
    let report = complexity_report(&sys, a.k_max).map_err(|e| e.to_string())?;

    let mut t = String::new();
    let _ = writeln!(
        t,
        "p = {}, r = {}, d = {}",
        sys.prime().get(),
        sys.num_forms(),
        sys.num_vars()
    );
    let _ = writeln!(t, "translation invariant: {}", if ti { "yes" } else { "no" });
    if let Some(points) = &points {
        let shown: Vec<String> = points.iter().map(|x| fmt_point(x)).collect();
        let _ = writeln!(t, "associated set: {}", shown.join(" "));
    }
    for (i, c) in report.per_index.iter().enumerate() {
        match c {
            CsComplexity::Finite { s, certificate } => {
                let _ = writeln!(t, "s_CS({i}) = {s}  cover {}", fmt_parts(&certificate.parts));
            }
            CsComplexity::Infinite => {
                let _ = writeln!(t, "s_CS({i}) = infinite");
            }
        }
    }
    match &report.tensor {
        TensorCriterion::Independent { k, .. } => {
            let _ = writeln!(t, "tensor criterion: k = {k}");
        }
        TensorCriterion::NeverIndependent { forms } => {
            let _ = writeln!(t, "tensor criterion: never independent (forms {} and {})", forms.0, forms.1);
        }
        TensorCriterion::NoneUpTo { k_max, .. } => {
            let _ = writeln!(t, "tensor criterion: dependent for every k <= {k_max}");
        }
    }
    Ok(Outcome {
        report: json!({
            "p": sys.prime(),
            "r": sys.num_forms(),
            "d": sys.num_vars(),
            "system_hash": sys.hash(),
            "translation_invariant": ti,
            "associated_set": points,
            "complexity": report,
        }),
        table: t,
        artifact: None,
        sidecars: Vec::new(),
        pass: true,
    })
}

#[derive(Debug, Args, Serialize)]
pub struct WitnessArgs {
    /// System file.
    pub system: PathBuf,
    /// Target form index (0-based).
    #[arg(long)]
    pub at: usize,
    /// Complexity parameter: every prefix cover has at most k + 1 parts.
    #[arg(long)]
    pub k: usize,
    /// Longest sequence tried.
    #[arg(long, default_value_t = 4)]
    pub max_len: usize,
}

pub fn witness(a: &WitnessArgs) -> Result<Outcome, String> {
    let sys = load_system(&a.system)?;
    let found = sequential_witness(&sys, a.at, a.k, a.max_len).map_err(|e| e.to_string())?;
    let mut t = String::new();
    match &found {
        Some(cert) => fmt_certificate(cert, &mut t),
        None => {
            let _ = writeln!(t, "none within max-len {}", a.max_len);
        }
    }
    Ok(Outcome {
        report: json!({ "found": found.is_some(), "certificate": found }),
        table: t,
        artifact: found.as_ref().map(to_value),
        sidecars: Vec::new(),
        pass: found.is_some(),
    })
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Certificate file.
    pub certificate: PathBuf,
    /// System file the certificate refers to.
    pub system: PathBuf,
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, String> {
    let sys = load_system(&a.system)?;
    let cert = WitnessCertificate::from_json(&read(&a.certificate)?)
        .map_err(|e| format!("{}: {e}", a.certificate.display()))?;
    let report = verify_witness(&sys, &cert);
    let table = match report.first_violation() {
        None => format!("PASS: witness of length {} at form {} with k = {}\n", cert.len(), cert.i, cert.k),
        Some(v) => format!("FAIL: {v}\n"),
    };
    Ok(Outcome {
        pass: report.valid,
        report: to_value(&report),
        table,
        artifact: None,
        sidecars: Vec::new(),
    })
}

#[derive(Debug, Args, Serialize)]
pub struct ReduceArgs {
    /// System file.
    pub system: PathBuf,
    /// Witness certificate for the system.
    pub certificate: PathBuf,
    /// Stop before a system with more forms than this.
    #[arg(long, default_value_t = DEFAULT_FORM_CAP)]
    pub form_cap: usize,
    /// Random tuples per step for the numeric Cauchy-Schwarz check (0 skips it).
    #[arg(long, default_value_t = 0)]
    pub check_trials: usize,
    /// Dimension n of the domain F_p^n used by the numeric check.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_parser = parse_family, default_value = "random")]
    pub family: Family,
    #[arg(long, default_value_t = INEQUALITY_TOLERANCE)]
    pub tolerance: f64,
    /// Largest number of variable assignments enumerated for one average;
    /// values above the library cap of 10^8 are still refused.
    #[arg(long, default_value_t = ENUMERATION_LIMIT)]
    pub max_points: u128,
}

pub fn reduce(a: &ReduceArgs) -> Result<Outcome, String> {
    let sys = load_system(&a.system)?;
    let cert = WitnessCertificate::from_json(&read(&a.certificate)?)
        .map_err(|e| format!("{}: {e}", a.certificate.display()))?;
    let chain = build_chain_capped(&sys, &cert, a.form_cap).map_err(|e| e.to_string())?;
    let merges_hold = chain.steps.iter().all(|s| s.merge_checks.iter().all(|m| m.holds));
    let mut checks = Vec::new();
    if a.check_trials > 0 {
        for (j, step) in chain.steps.iter().enumerate() {
            check_points(&step.output, a.n, a.max_points).map_err(|e| format!("step {j}: {e}"))?;
            let v = numeric_step_check(step, a.n, a.check_trials, a.seed + j as u64, a.family)
                .map_err(|e| format!("step {j}: {e}"))?;
            checks.push(v);
        }
    }
    let checks_pass = checks.iter().all(|&v| v <= a.tolerance);

    let mut t = String::new();
    for (j, (r, d)) in chain.shapes.iter().enumerate() {
        let _ = write!(t, "system {j}: {r} forms in {d} variables");
        if j > 0 {
            let _ = write!(t, ", witness length {}", chain.steps[j - 1].propagated.len());
            if let Some(v) = checks.get(j - 1) {
                let _ = write!(t, ", max |Λ|² - Λ' = {v:.3e}");
            }
        }
        t.push('\n');
    }
    if chain.truncated {
        let _ = writeln!(t, "truncated at the form cap {}", a.form_cap);
    }
    if let Some(base) = &chain.base {
        let _ = writeln!(t, "base cover at form {}: {}", chain.final_witness.i, fmt_parts(&base.parts));
    }
    let _ = writeln!(t, "merged-cover identities: {}", if merges_hold { "hold" } else { "FAIL" });

    let chain_value: Value = serde_json::from_str(&chain.to_json()).expect("chain JSON parses");
    Ok(Outcome {
        report: json!({
            "shapes": chain.shapes,
            "truncated": chain.truncated,
            "final_witness": chain.final_witness,
            "base": chain.base,
            "final_slots": chain.final_slots,
            "merge_identities_hold": merges_hold,
            "step_checks": checks,
        }),
        table: t,
        artifact: Some(chain_value),
        sidecars: Vec::new(),
        pass: merges_hold && checks_pass,
    })
}

#[derive(Debug, Args, Serialize)]
pub struct GvnArgs {
    /// System file.
    #[arg(long)]
    pub system: PathBuf,
    /// Form index i whose Gowers norm bounds the average.
    #[arg(long, conflicts_with = "at_origin", required_unless_present = "at_origin")]
    pub at: Option<usize>,
    /// Use the form at the origin of the associated set.
    #[arg(long)]
    pub at_origin: bool,
    /// Norm order is k + 1.
    #[arg(long)]
    pub k: usize,
    /// Exponent is 2^(1 - ell).
    #[arg(long)]
    pub ell: usize,
    /// Functions live on F_p^n.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_parser = parse_family, default_value = "random")]
    pub family: Family,
    #[arg(long, default_value_t = INEQUALITY_TOLERANCE)]
    pub tolerance: f64,
    /// Largest number of variable assignments enumerated for one average;
    /// values above the library cap of 10^8 are still refused.
    #[arg(long, default_value_t = ENUMERATION_LIMIT)]
    pub max_points: u128,
}

fn origin_index(sys: &LinearSystem) -> Result<usize, String> {
    let z = associated_set(sys).map_err(|e| e.to_string())?;
    z.points
        .iter()
        .position(|x| x.iter().all(|&c| c == 0))
        .ok_or_else(|| "the associated set does not contain the origin".to_string())
}

pub fn gvn(a: &GvnArgs) -> Result<Outcome, String> {
    let sys = load_system(&a.system)?;
    let i = match a.at {
        Some(i) => i,
        None => origin_index(&sys)?,
    };
    check_points(&sys, a.n, a.max_points)?;
    let mut report = gvn_check(&sys, i, a.k, a.ell, a.n, a.family, a.trials, a.seed)
        .map_err(|e| e.to_string())?;
    report.passed = report.max_violation <= a.tolerance;
    let mut t = String::new();
    let _ = writeln!(
        t,
        "|Λ| <= ‖f_{i}‖_U{}^(2^(1-{})) over {} trials on F_{}^{}",
        a.k + 1,
        a.ell,
        a.trials,
        sys.prime().get(),
        a.n
    );
    let _ = writeln!(
        t,
        "max violation {:.3e}: {}",
        report.max_violation,
        if report.passed { "PASS" } else { "FAIL" }
    );
    Ok(Outcome {
        pass: report.passed,
        report: to_value(&report),
        table: t,
        artifact: None,
        sidecars: Vec::new(),
    })
}

#[derive(Debug, Args, Serialize)]
pub struct PhikmArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub k: usize,
    #[arg(long = "M")]
    #[serde(rename = "M")]
    pub m: usize,
    /// Emit the witness sequence at the origin and its certificate.
    #[arg(long)]
    pub witness: bool,
    /// Verify every prefix cover and the certificate (implies --witness).
    #[arg(long)]
    pub verify: bool,
    /// Write the covers as (basepoint, basis) pairs to this path.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
    /// Evaluate the polynomial-phase family with Λ = 1.
    #[arg(long)]
    pub counterexample: bool,
    /// Weight vector, comma separated; defaults to the lexicographically
    /// largest valid one.
    #[arg(long, value_delimiter = ',')]
    pub w: Option<Vec<u64>>,
    /// Block level ℓ of the family (functions on F_p^{ℓM}).
    #[arg(long, default_value_t = 1)]
    pub level: usize,
    /// Random samples of the alternating sum (0 skips it).
    #[arg(long, default_value_t = 0)]
    pub gray_code_trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn cover_pairs(covers: &[AffineSubspace]) -> Value {
    covers
        .iter()
        .map(|h| json!({ "basepoint": h.basepoint, "basis": h.directions }))
        .collect()
}

pub fn phikm(a: &PhikmArgs) -> Result<Outcome, String> {
    let p = prime(a.p)?;
    let desc = PhiDescriptor::new(p, a.k, a.m).map_err(|e| e.to_string())?;
    let sys = desc.system();
    let points = desc.points();
    let mut report = json!({
        "p": p,
        "k": desc.k,
        "M": desc.m,
        "size": points.len(),
        "points": points,
        "system": sys,
        "system_hash": sys.hash(),
    });
    let mut t = String::new();
    let _ = writeln!(
        t,
        "Φ_{{{},{}}} over F_{}: {} forms in {} variables",
        desc.k,
        desc.m,
        a.p,
        sys.num_forms(),
        sys.num_vars()
    );
    let mut pass = true;
    let mut artifact = Some(to_value(&sys));
    let mut sidecars = Vec::new();

    if a.witness || a.verify || a.sidecar.is_some() {
        let w = phi_witness(p, desc.k, desc.m).map_err(|e| e.to_string())?;
        let shown: Vec<String> = w.sequence.iter().map(|x| fmt_point(x)).collect();
        let _ = writeln!(t, "witness sequence (length {}): {}", w.sequence.len(), shown.join(" "));
        let certificate = if desc.k >= 2 {
            Some(w.certificate(None).map_err(|e| e.to_string())?)
        } else {
            None
        };
        let geometry = json!({
            "p": p,
            "k": desc.k,
            "M": desc.m,
            "sequence": w.sequence,
            "covers": w.covers.iter().map(|c| cover_pairs(c)).collect::<Vec<_>>(),
        });
        report["witness"] = json!({
            "length": w.sequence.len(),
            "certificate": certificate,
            "geometry": geometry,
        });
        if let Some(cert) = &certificate {
            artifact = Some(to_value(cert));
        }
        if let Some(path) = &a.sidecar {
            sidecars.push((path.clone(), geometry));
        }
        if a.verify {
            let covers_ok = w
                .affine_covers()
                .iter()
                .all(|c| verify_cover(c).valid && c.len() < desc.k.max(1));
            let cert_ok = certificate
                .as_ref()
                .map(|c| verify_witness(&sys, c).valid)
                .unwrap_or(true);
            let ok = covers_ok && cert_ok;
            report["verification"] = json!({ "covers": covers_ok, "certificate": cert_ok });
            let _ = writeln!(t, "verification: {}", if ok { "PASS" } else { "FAIL" });
            pass &= ok;
        }
    }

    if a.counterexample || a.gray_code_trials > 0 {
        let w = match &a.w {
            Some(w) => w.clone(),
            None => default_weight(p, desc.k, desc.m).map_err(|e| e.to_string())?,
        };
        report["weight"] = json!(w);
        let _ = writeln!(t, "weight w = {w:?}");
        if a.counterexample {
            let fs = counterexample_family(p, desc.k, desc.m, &w, a.level)
                .map_err(|e| e.to_string())?;
            let lambda = lambda_average(&sys, &fs).map_err(|e| e.to_string())?;
            let size = (a.p as u128).pow((desc.m * a.level) as u32);
            let norms: Vec<Value> = (2..=desc.k.saturating_sub(1).max(2))
                .filter(|&order| size.saturating_pow(order as u32) <= ENUMERATION_LIMIT)
                .map(|order| {
                    let v = gowers_norm(&fs[0], order).map_err(|e| e.to_string())?;
                    Ok(json!({ "order": order, "norm": v }))
                })
                .collect::<Result<_, String>>()?;
            let ok = (lambda - 1.0).norm() < 1e-12;
            let _ = writeln!(t, "Λ = {:.12} + {:.12}i", lambda.re, lambda.im);
            for n in &norms {
                let _ = writeln!(t, "‖f_0‖_U{} = {:.6}", n["order"], n["norm"].as_f64().unwrap_or(f64::NAN));
            }
            report["counterexample"] = json!({
                "level": a.level,
                "lambda": [lambda.re, lambda.im],
                "origin_norms": norms,
                "lambda_is_one": ok,
            });
            pass &= ok;
        }
        if a.gray_code_trials > 0 {
            let sigma = gray_code_check(p, desc.k, desc.m, &w, a.gray_code_trials, a.seed)
                .map_err(|e| e.to_string())?;
            let _ = writeln!(t, "alternating sum: max |σ| = {sigma} over {} samples", a.gray_code_trials);
            report["gray_code"] = json!({ "trials": a.gray_code_trials, "max_abs_sigma": sigma });
            pass &= sigma == 0;
        }
    }
    Ok(Outcome {
        report,
        table: t,
        artifact,
        sidecars,
        pass,
    })
}

#[derive(Debug, Args, Serialize)]
pub struct CoverArgs {
    /// Point-set file `{"p", "M", "points", "excluded"}`.
    #[arg(long, conflicts_with = "phikm_origin", required_unless_present = "phikm_origin")]
    pub points: Option<PathBuf>,
    /// Cover S_{k,M} minus the origin, avoiding the origin.
    #[arg(long, requires_all = ["p", "k", "m"])]
    pub phikm_origin: bool,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long = "M", id = "m")]
    #[serde(rename = "M")]
    pub m: Option<usize>,
    /// Use hyperplanes only instead of arbitrary affine subspaces.
    #[arg(long)]
    pub hyperplanes_only: bool,
    /// Only ask whether a cover of at most this size exists.
    #[arg(long)]
    pub max: Option<usize>,
    /// Search-node budget before giving up.
    #[arg(long)]
    pub node_limit: Option<u64>,
}

fn cover_table(cover: &AffineCover) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "{} subspaces:", cover.len());
    for h in &cover.subspaces {
        let _ = writeln!(t, "  {h}");
    }
    t
}

pub fn cover(a: &CoverArgs) -> Result<Outcome, String> {
    let set = match &a.points {
        Some(path) => {
            PointSet::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => {
            let (p, k, m) = (a.p.unwrap_or(0), a.k.unwrap_or(0), a.m.unwrap_or(0));
            let desc = PhiDescriptor::new(prime(p)?, k, m).map_err(|e| e.to_string())?;
            let mut points = desc.points();
            let origin = points.remove(0);
            PointSet {
                p: desc.p,
                dim: m,
                points,
                excluded: vec![origin],
            }
        }
    };
    let mode = if a.hyperplanes_only {
        CoverMode::HyperplanesOnly
    } else {
        CoverMode::AffineSpans
    };
    let mut opts = CoverOptions::new(mode);
    if let Some(limit) = a.node_limit {
        opts.node_limit = limit;
    }
    let result = match a.max {
        Some(max) => cover_within_excluding(set.p, set.dim, &set.points, &set.excluded, opts, max),
        None => min_cover_excluding_with(set.p, set.dim, &set.points, &set.excluded, opts).map(Some),
    };
    let (cover, blocker) = match result {
        Ok(c) => (c, None),
        Err(Error::NoFiniteCover(point)) => (None, Some(point)),
        Err(e) => return Err(e.to_string()),
    };
    let mut t = String::new();
    match (&cover, &blocker, a.max) {
        (Some(c), _, None) => {
            let _ = write!(t, "minimum cover: {}", cover_table(c));
        }
        (Some(c), _, Some(max)) => {
            let _ = write!(t, "cover within {max}: {}", cover_table(c));
        }
        (None, Some(point), _) => {
            let _ = writeln!(t, "no cover: {} lies on no admissible subspace", fmt_point(point));
        }
        (None, None, max) => {
            let _ = writeln!(t, "no cover with at most {} subspaces", max.unwrap_or(0));
        }
    }
    Ok(Outcome {
        report: json!({
            "mode": mode,
            "max": a.max,
            "minimum": if a.max.is_none() { cover.as_ref().map(AffineCover::len) } else { None },
            "cover": cover,
            "blocking_point": blocker,
        }),
        table: t,
        artifact: None,
        sidecars: Vec::new(),
        pass: cover.is_some(),
    })
}

#[derive(Debug, Args, Serialize)]
pub struct GowersArgs {
    /// Function table file `{"p", "n", "values": [[re, im], ...]}`.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    pub table: Option<PathBuf>,
    /// Draw a random 1-bounded table instead.
    #[arg(long, requires_all = ["p", "n"])]
    pub random: bool,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_parser = parse_family, default_value = "phases")]
    pub family: Family,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Norm order k of U^k.
    #[arg(long)]
    pub k: usize,
    /// Also evaluate the direct definition as a cross-check.
    #[arg(long)]
    pub direct: bool,
}

pub fn gowers(a: &GowersArgs) -> Result<Outcome, String> {
    let f = match &a.table {
        Some(path) => FunctionTable::from_json(&read(path)?)
            .map_err(|e| format!("{}: {e}", path.display()))?,
        None => random_one_bounded(prime(a.p.unwrap_or(0))?, a.n.unwrap_or(0), a.seed, a.family)
            .map_err(|e| e.to_string())?,
    };
    let norm = gowers_norm(&f, a.k).map_err(|e| e.to_string())?;
    let direct = if a.direct {
        Some(gowers_norm_direct(&f, a.k).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let mut t = format!("‖f‖_U{} = {norm:.12}\n", a.k);
    if let Some(d) = direct {
        let _ = writeln!(t, "direct definition: {d:.12}");
    }
    let artifact = a.random.then(|| serde_json::from_str(&f.to_json()).expect("table JSON parses"));
    Ok(Outcome {
        report: json!({
            "p": f.prime(),
            "n": f.n(),
            "k": a.k,
            "norm": norm,
            "direct": direct,
        }),
        table: t,
        artifact,
        sidecars: Vec::new(),
        pass: true,
    })
}
