//! Numeric evaluation of `Λ_Ψ` averages and Gowers uniformity norms on
//! `F_p^n`, with seeded families of 1-bounded test functions.
//!
//! Points of `F_p^n` are encoded as integers in `[0, p^n)` by their base-`p`
//! digits, digit 0 being the least significant (the first coordinate).
//! All sums use compensated (Neumaier) summation, and parallel loops are
//! reduced in a fixed order so results do not depend on the thread count.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::system::LinearSystem;

/// Largest number of points a `Λ` enumeration or direct Gowers sum visits.
pub const ENUMERATION_LIMIT: u128 = 100_000_000;

/// Highest Gowers norm order accepted.
pub const MAX_GOWERS_ORDER: usize = 8;

/// Tolerance for the inequality checks.
pub const INEQUALITY_TOLERANCE: f64 = 1e-9;

/// Neumaier compensated sum of `f64`.
#[derive(Debug, Clone, Copy, Default)]
struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of complex numbers, one accumulator per component.
#[derive(Debug, Clone, Copy, Default)]
struct ComplexSum {
    re: Compensated,
    im: Compensated,
}

impl ComplexSum {
    fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    fn value(self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

fn sum_f64(xs: &[f64]) -> f64 {
    let mut s = Compensated::default();
    for &x in xs {
        s.add(x);
    }
    s.value()
}

fn sum_complex(xs: &[Complex64]) -> Complex64 {
    let mut s = ComplexSum::default();
    for &x in xs {
        s.add(x);
    }
    s.value()
}

/// `e_p(t) = exp(2πi t / p)`.
pub fn e_p(p: Prime, t: u64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * (t % p.get()) as f64 / p.get() as f64)
}

/// Arithmetic on digit-encoded points of `F_p^n`.
#[derive(Debug, Clone)]
struct Space {
    p: u64,
    n: usize,
    size: usize,
    add_table: Option<Vec<u32>>,
    scale_table: Option<Vec<u32>>,
}

impl Space {
    const ADD_TABLE_LIMIT: usize = 1 << 10;
    const SCALE_TABLE_LIMIT: usize = 1 << 22;

    fn new(p: Prime, n: usize) -> Result<Self> {
        let size = checked_size(p, n)?;
        let mut s = Space {
            p: p.get(),
            n,
            size,
            add_table: None,
            scale_table: None,
        };
        if size <= Self::ADD_TABLE_LIMIT {
            let mut t = Vec::with_capacity(size * size);
            for a in 0..size {
                for b in 0..size {
                    t.push(s.add_digits(a, b) as u32);
                }
            }
            s.add_table = Some(t);
        }
        if size * s.p as usize <= Self::SCALE_TABLE_LIMIT {
            let mut t = Vec::with_capacity(size * s.p as usize);
            for c in 0..s.p {
                for a in 0..size {
                    t.push(s.scale_digits(c, a) as u32);
                }
            }
            s.scale_table = Some(t);
        }
        Ok(s)
    }

    fn add_digits(&self, mut a: usize, mut b: usize) -> usize {
        let p = self.p as usize;
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.n {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    fn scale_digits(&self, c: u64, mut a: usize) -> usize {
        let p = self.p as usize;
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.n {
            out += ((a % p) * c as usize % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        match &self.add_table {
            Some(t) => t[a * self.size + b] as usize,
            None => self.add_digits(a, b),
        }
    }

    #[inline]
    fn scale(&self, c: u64, a: usize) -> usize {
        match &self.scale_table {
            Some(t) => t[c as usize * self.size + a] as usize,
            None => self.scale_digits(c, a),
        }
    }
}

fn checked_size(p: Prime, n: usize) -> Result<usize> {
    let size = (p.get() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > ENUMERATION_LIMIT {
        return Err(Error::SizeGuard {
            required: size,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(size as usize)
}

/// A function `F_p^n → C` stored densely by digit-encoded index.
///
/// JSON form: `{"p": int, "n": int, "values": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct FunctionTable {
    p: Prime,
    n: usize,
    values: Vec<Complex64>,
}

#[derive(Deserialize)]
struct RawTable {
    p: Prime,
    n: usize,
    values: Vec<Complex64>,
}

impl TryFrom<RawTable> for FunctionTable {
    type Error = Error;

    fn try_from(raw: RawTable) -> Result<Self> {
        FunctionTable::new(raw.p, raw.n, raw.values)
    }
}

impl FunctionTable {
    pub fn new(p: Prime, n: usize, values: Vec<Complex64>) -> Result<Self> {
        let size = checked_size(p, n)?;
        if values.len() != size {
            return Err(Error::DimensionMismatch {
                expected: size,
                found: values.len(),
            });
        }
        Ok(FunctionTable { p, n, values })
    }

    pub fn constant(p: Prime, n: usize, c: Complex64) -> Result<Self> {
        let size = checked_size(p, n)?;
        Ok(FunctionTable {
            p,
            n,
            values: vec![c; size],
        })
    }

    /// Tabulates `f` on every point, passed as its coordinate vector.
    pub fn from_fn(p: Prime, n: usize, mut f: impl FnMut(&[u64]) -> Complex64) -> Result<Self> {
        let size = checked_size(p, n)?;
        let mut x = vec![0u64; n];
        let values = (0..size)
            .map(|idx| {
                decode_into(p.get(), idx, &mut x);
                f(&x)
            })
            .collect();
        Ok(FunctionTable { p, n, values })
    }

    /// Indicator function of a set of points.
    pub fn indicator(p: Prime, n: usize, points: &[Vec<u64>]) -> Result<Self> {
        let mut t = Self::constant(p, n, Complex64::new(0.0, 0.0))?;
        for x in points {
            let idx = encode(p.get(), x, n)?;
            t.values[idx] = Complex64::new(1.0, 0.0);
        }
        Ok(t)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, x: &[u64]) -> Result<Complex64> {
        Ok(self.values[encode(self.p.get(), x, self.n)?])
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_one_bounded(&self) -> bool {
        self.max_abs() <= 1.0 + 1e-12
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|z| z * c)
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        FunctionTable {
            p: self.p,
            n: self.n,
            values: self.values.iter().map(|&z| f(z)).collect(),
        }
    }

    /// `f'(y^(1), ..., y^(ℓ)) = f(y^(1)) ⋯ f(y^(ℓ))` on `F_p^{ℓn}`, with
    /// block `y^(1)` in the least significant digits.
    pub fn tensor_power(&self, ell: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidParameter("tensor power must be positive".into()));
        }
        let size = checked_size(self.p, self.n * ell)?;
        let base = self.values.len();
        let values = (0..size)
            .map(|mut idx| {
                let mut z = Complex64::new(1.0, 0.0);
                for _ in 0..ell {
                    z *= self.values[idx % base];
                    idx /= base;
                }
                z
            })
            .collect();
        Ok(FunctionTable {
            p: self.p,
            n: self.n * ell,
            values,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

fn decode_into(p: u64, mut idx: usize, x: &mut [u64]) {
    for slot in x.iter_mut() {
        *slot = (idx as u64) % p;
        idx /= p as usize;
    }
}

fn encode(p: u64, x: &[u64], n: usize) -> Result<usize> {
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let mut idx = 0usize;
    for &v in x.iter().rev() {
        if v >= p {
            return Err(Error::EntryOutOfRange { value: v, p });
        }
        idx = idx * p as usize + v as usize;
    }
    Ok(idx)
}

/// Which function feeds form `j` of a system: table `source`, conjugated or
/// not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctionSlot {
    pub source: usize,
    pub conjugated: bool,
}

/// `Λ_Ψ(f_1, ..., f_r) = E_{x ∈ (F_p^n)^d} ∏_i f_i(ψ_i(x))`.
pub fn lambda_average(sys: &LinearSystem, functions: &[FunctionTable]) -> Result<Complex64> {
    if functions.len() != sys.num_forms() {
        return Err(Error::DimensionMismatch {
            expected: sys.num_forms(),
            found: functions.len(),
        });
    }
    let slots: Vec<FunctionSlot> = (0..functions.len())
        .map(|source| FunctionSlot {
            source,
            conjugated: false,
        })
        .collect();
    lambda_average_slots(sys, functions, &slots)
}

/// `Λ_Ψ` where form `j` is evaluated on `functions[slots[j].source]`,
/// conjugated when `slots[j].conjugated`.
pub fn lambda_average_slots(
    sys: &LinearSystem,
    functions: &[FunctionTable],
    slots: &[FunctionSlot],
) -> Result<Complex64> {
    let r = sys.num_forms();
    let d = sys.num_vars();
    if slots.len() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            found: slots.len(),
        });
    }
    let first = functions
        .first()
        .ok_or_else(|| Error::InvalidParameter("no function tables".into()))?;
    let (p, n) = (first.p, first.n);
    if p != sys.prime() {
        return Err(Error::ModulusMismatch {
            left: sys.prime().get(),
            right: p.get(),
        });
    }
    for f in functions {
        if f.p != p || f.n != n {
            return Err(Error::TableMismatch(format!(
                "expected tables on F_{p}^{n}, found F_{}^{}",
                f.p, f.n
            )));
        }
    }
    if let Some(s) = slots.iter().find(|s| s.source >= functions.len()) {
        return Err(Error::IndexOutOfRange {
            index: s.source,
            len: functions.len(),
        });
    }
    let total = (p.get() as u128)
        .checked_pow((n * d) as u32)
        .unwrap_or(u128::MAX);
    if total > ENUMERATION_LIMIT {
        return Err(Error::SizeGuard {
            required: total,
            limit: ENUMERATION_LIMIT,
        });
    }
    let space = Space::new(p, n)?;
    let size = space.size;
    let coeffs: Vec<&[u64]> = sys.forms().collect();
    let tables: Vec<Vec<Complex64>> = slots
        .iter()
        .map(|s| {
            let v = &functions[s.source].values;
            if s.conjugated {
                v.iter().map(|z| z.conj()).collect()
            } else {
                v.clone()
            }
        })
        .collect();

    let partial_sums: Vec<Complex64> = (0..size)
        .into_par_iter()
        .map(|x0| {
            let mut partial = vec![vec![0usize; r]; d];
            for i in 0..r {
                partial[0][i] = space.scale(coeffs[i][0], x0);
            }
            let mut acc = ComplexSum::default();
            enumerate(&space, &coeffs, &tables, 1, &mut partial, &mut acc);
            acc.value()
        })
        .collect();
    Ok(sum_complex(&partial_sums) / total as f64)
}

fn enumerate(
    space: &Space,
    coeffs: &[&[u64]],
    tables: &[Vec<Complex64>],
    level: usize,
    partial: &mut [Vec<usize>],
    acc: &mut ComplexSum,
) {
    let d = partial.len();
    let r = coeffs.len();
    if level == d {
        let mut z = Complex64::new(1.0, 0.0);
        for i in 0..r {
            z *= tables[i][partial[d - 1][i]];
        }
        acc.add(z);
        return;
    }
    for x in 0..space.size {
        for i in 0..r {
            let prev = partial[level - 1][i];
            partial[level][i] = space.add(prev, space.scale(coeffs[i][level], x));
        }
        enumerate(space, coeffs, tables, level + 1, partial, acc);
    }
}

fn check_order(k: usize) -> Result<()> {
    if k == 0 || k > MAX_GOWERS_ORDER {
        return Err(Error::InvalidParameter(format!(
            "Gowers norm order must be in 1..={MAX_GOWERS_ORDER}, got {k}"
        )));
    }
    Ok(())
}

/// `‖f‖_{U^k}`, computed by the recursion
/// `‖f‖_{U^k}^{2^k} = E_h ‖Δ_h f‖_{U^{k-1}}^{2^{k-1}}` with
/// `Δ_h f(x) = f(x+h) conj(f(x))` and `‖f‖_{U^1} = |E f|`.
///
/// The cost is about `(p^n)^k` operations, guarded by [`ENUMERATION_LIMIT`].
pub fn gowers_norm(f: &FunctionTable, k: usize) -> Result<f64> {
    check_order(k)?;
    let size = f.values.len() as u128;
    let cost = size.checked_pow(k as u32).unwrap_or(u128::MAX);
    if cost > ENUMERATION_LIMIT {
        return Err(Error::SizeGuard {
            required: cost,
            limit: ENUMERATION_LIMIT,
        });
    }
    let space = Space::new(f.p, f.n)?;
    let power = if k == 1 {
        gowers_power(&space, &f.values, 1)
    } else {
        let per_h: Vec<f64> = (0..space.size)
            .into_par_iter()
            .map(|h| gowers_power(&space, &derivative(&space, &f.values, h), k - 1))
            .collect();
        sum_f64(&per_h) / space.size as f64
    };
    Ok(root(power, k))
}

fn derivative(space: &Space, f: &[Complex64], h: usize) -> Vec<Complex64> {
    (0..space.size)
        .map(|x| f[space.add(x, h)] * f[x].conj())
        .collect()
}

fn gowers_power(space: &Space, f: &[Complex64], k: usize) -> f64 {
    if k == 1 {
        let m = sum_complex(f) / space.size as f64;
        return m.norm_sqr();
    }
    let mut acc = Compensated::default();
    for h in 0..space.size {
        acc.add(gowers_power(space, &derivative(space, f, h), k - 1));
    }
    acc.value() / space.size as f64
}

fn root(power: f64, k: usize) -> f64 {
    let clamped = if power < 0.0 {
        log::debug!("clamping negative Gowers average {power:e} to zero");
        0.0
    } else {
        power
    };
    clamped.powf(1.0 / (1u64 << k) as f64)
}

/// `‖f‖_{U^k}` from the defining `2^k`-fold sum over `x, h_1, ..., h_k` of
/// `∏_ω C^{|ω|} f(x + ω·h)`. Used as an independent oracle.
pub fn gowers_norm_direct(f: &FunctionTable, k: usize) -> Result<f64> {
    check_order(k)?;
    let size = f.values.len() as u128;
    let cost = size.checked_pow(k as u32 + 1).unwrap_or(u128::MAX);
    if cost > ENUMERATION_LIMIT {
        return Err(Error::SizeGuard {
            required: cost,
            limit: ENUMERATION_LIMIT,
        });
    }
    let space = Space::new(f.p, f.n)?;
    let n = space.size;
    let per_x: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut acc = ComplexSum::default();
            let mut h = vec![0usize; k];
            loop {
                let mut z = Complex64::new(1.0, 0.0);
                for omega in 0u32..(1 << k) {
                    let mut pt = x;
                    for (b, &hb) in h.iter().enumerate() {
                        if omega >> b & 1 == 1 {
                            pt = space.add(pt, hb);
                        }
                    }
                    let v = f.values[pt];
                    z *= if omega.count_ones() % 2 == 1 { v.conj() } else { v };
                }
                acc.add(z);
                let mut b = 0;
                loop {
                    if b == k {
                        return acc.value();
                    }
                    h[b] += 1;
                    if h[b] < n {
                        break;
                    }
                    h[b] = 0;
                    b += 1;
                }
            }
        })
        .collect();
    let total = sum_complex(&per_x) / (cost as f64);
    Ok(root(total.re, k))
}

/// Seeded families of 1-bounded functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Uniform unit-modulus phases.
    Phases,
    /// Uniform points of the closed unit disk.
    Disk,
    /// Uniform `±1`.
    Signs,
    /// Indicator of a random set of density about `1/p`.
    Sparse,
    /// Cycles through phases, disk, signs and sparse by trial.
    Random,
    /// `e_p(a·x + b)` for random `a`, `b`.
    Character,
    /// `e_p(xᵀAx + a·x)` for random upper-triangular `A` and random `a`.
    QuadraticPhase,
}

impl Family {
    const CYCLE: [Family; 4] = [Family::Phases, Family::Disk, Family::Signs, Family::Sparse];

    fn for_trial(self, trial: usize) -> Family {
        match self {
            Family::Random => Self::CYCLE[trial % Self::CYCLE.len()],
            other => other,
        }
    }
}

/// A deterministic random table from `family` seeded by `seed`.
///
/// [`Family::Random`] behaves as [`Family::Phases`] here.
pub fn random_one_bounded(p: Prime, n: usize, seed: u64, family: Family) -> Result<FunctionTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample(p, n, &mut rng, family.for_trial(0))
}

fn sample(p: Prime, n: usize, rng: &mut ChaCha8Rng, family: Family) -> Result<FunctionTable> {
    let q = p.get();
    match family {
        Family::Phases | Family::Random => {
            FunctionTable::from_fn(p, n, |_| Complex64::from_polar(1.0, TAU * rng.gen::<f64>()))
        }
        Family::Disk => FunctionTable::from_fn(p, n, |_| {
            let radius = rng.gen::<f64>().sqrt();
            Complex64::from_polar(radius, TAU * rng.gen::<f64>())
        }),
        Family::Signs => FunctionTable::from_fn(p, n, |_| {
            Complex64::new(if rng.gen::<bool>() { 1.0 } else { -1.0 }, 0.0)
        }),
        Family::Sparse => FunctionTable::from_fn(p, n, |_| {
            Complex64::new(if rng.gen_range(0..q) == 0 { 1.0 } else { 0.0 }, 0.0)
        }),
        Family::Character => {
            let a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..q)).collect();
            let b = rng.gen_range(0..q);
            FunctionTable::from_fn(p, n, |x| {
                let t = x.iter().zip(&a).fold(b, |acc, (&xi, &ai)| p.add(acc, p.mul(xi, ai)));
                e_p(p, t)
            })
        }
        Family::QuadraticPhase => {
            let quad: Vec<Vec<u64>> = (0..n)
                .map(|i| (0..n).map(|j| if j >= i { rng.gen_range(0..q) } else { 0 }).collect())
                .collect();
            let lin: Vec<u64> = (0..n).map(|_| rng.gen_range(0..q)).collect();
            FunctionTable::from_fn(p, n, |x| {
                let mut t = 0;
                for i in 0..n {
                    t = p.add(t, p.mul(lin[i], x[i]));
                    for j in i..n {
                        t = p.add(t, p.mul(quad[i][j], p.mul(x[i], x[j])));
                    }
                }
                e_p(p, t)
            })
        }
    }
}

/// One trial of a generalized von Neumann check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GvnTrial {
    pub abs_lambda: f64,
    pub norm: f64,
    pub bound: f64,
    pub slack: f64,
}

/// Outcome of testing `|Λ_Ψ(f)| ≤ ‖f_i‖_{U^{k+1}}^{2^{1-ℓ}}` numerically.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GvnReport {
    pub system_hash: String,
    pub i: usize,
    pub k: usize,
    pub ell: usize,
    pub n: usize,
    pub exponent: f64,
    pub trials: Vec<GvnTrial>,
    /// `-min(slack)`; positive values are violations.
    pub max_violation: f64,
    pub passed: bool,
}

/// Runs [`gvn_check_with`] on tables drawn from `family`.
#[allow(clippy::too_many_arguments)]
pub fn gvn_check(
    sys: &LinearSystem,
    i: usize,
    k: usize,
    ell: usize,
    n: usize,
    family: Family,
    trials: usize,
    seed: u64,
) -> Result<GvnReport> {
    let draw = family_tables(sys.prime(), sys.num_forms(), n, family, seed);
    gvn_check_with(sys, i, k, ell, n, trials, draw)
}

/// Generator of `count` seeded tables per trial from `family`; trial `t`
/// of [`Family::Random`] uses the `t`-th family of its cycle.
pub fn family_tables(
    p: Prime,
    count: usize,
    n: usize,
    family: Family,
    seed: u64,
) -> impl FnMut(usize) -> Result<Vec<FunctionTable>> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    move |t| {
        let fam = family.for_trial(t);
        (0..count)
            .map(|_| {
                let mut rng = ChaCha8Rng::seed_from_u64(master.gen());
                sample(p, n, &mut rng, fam)
            })
            .collect()
    }
}

/// Evaluates both sides of the inequality on `trials` tuples produced by
/// `generate(trial)`.
pub fn gvn_check_with(
    sys: &LinearSystem,
    i: usize,
    k: usize,
    ell: usize,
    n: usize,
    trials: usize,
    mut generate: impl FnMut(usize) -> Result<Vec<FunctionTable>>,
) -> Result<GvnReport> {
    sys.check_index(i)?;
    if ell == 0 {
        return Err(Error::InvalidParameter("ell must be at least 1".into()));
    }
    let exponent = 2f64.powi(1 - ell as i32);
    let mut out = Vec::with_capacity(trials);
    for t in 0..trials {
        let fs = generate(t)?;
        if let Some(f) = fs.iter().find(|f| f.n != n) {
            return Err(Error::TableMismatch(format!("expected n = {n}, found {}", f.n)));
        }
        let abs_lambda = lambda_average(sys, &fs)?.norm();
        let norm = gowers_norm(&fs[i], k + 1)?;
        let bound = norm.powf(exponent);
        out.push(GvnTrial {
            abs_lambda,
            norm,
            bound,
            slack: bound - abs_lambda,
        });
    }
    let min_slack = out.iter().map(|t| t.slack).fold(f64::INFINITY, f64::min);
    let max_violation = if out.is_empty() { 0.0 } else { -min_slack };
    Ok(GvnReport {
        system_hash: sys.hash(),
        i,
        k,
        ell,
        n,
        exponent,
        trials: out,
        max_violation,
        passed: max_violation <= INEQUALITY_TOLERANCE,
    })
}
