//! The systems `Φ_{k,M}`, their covering witness sequences, and the
//! polynomial-phase functions that make their average equal to 1.
//!
//! `S_{k,M}` is the set of `z ∈ [0, p-1]^M` with integer coordinate sum below
//! `k`, listed in lexicographic order (first coordinate most significant).
//! `Φ_{k,M}` has one form `x + z_1 t_1 + ... + z_M t_M` per `z ∈ S_{k,M}`,
//! in that order, as the row `(1, z_1, ..., z_M)`.

use num_bigint::BigUint;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{e_p, FunctionTable};
use crate::complexity::{CoverCertificate, WitnessCertificate};
use crate::covering::{AffineCover, AffineSubspace};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::system::{system_from_points, LinearSystem};

/// Parameters `(p, k, M)` with `k` clamped to `M(p-1) + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PhiDescriptor {
    pub p: Prime,
    pub k: usize,
    #[serde(rename = "M")]
    pub m: usize,
}

impl PhiDescriptor {
    pub fn new(p: Prime, k: usize, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("M must be at least 1".into()));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        let top = m * (p.get() as usize - 1) + 1;
        Ok(PhiDescriptor {
            p,
            k: k.min(top),
            m,
        })
    }

    pub fn points(&self) -> Vec<Vec<u64>> {
        s_km_points(self.p, self.k, self.m)
    }

    pub fn system(&self) -> LinearSystem {
        system_from_points(self.p, self.m, &self.points()).expect("points have length M")
    }

    /// Index of `0^M` in [`PhiDescriptor::points`]; always 0.
    pub fn origin_index(&self) -> usize {
        0
    }
}

/// Points of `S_{k,M}` in lexicographic order.
pub fn s_km_points(p: Prime, k: usize, m: usize) -> Vec<Vec<u64>> {
    let q = p.get();
    let mut out = Vec::new();
    let mut z = vec![0u64; m];
    loop {
        if (z.iter().sum::<u64>() as usize) < k {
            out.push(z.clone());
        }
        let mut c = m;
        loop {
            if c == 0 {
                return out;
            }
            c -= 1;
            z[c] += 1;
            if z[c] < q {
                break;
            }
            z[c] = 0;
        }
    }
}

/// `Φ_{k,M}` over `F_p` (with `k` clamped).
pub fn phi_system(p: Prime, k: usize, m: usize) -> Result<LinearSystem> {
    Ok(PhiDescriptor::new(p, k, m)?.system())
}

/// An ordering of `S_{k,M}` ending at `0^M`, with a cover of the unvisited
/// points by at most `k - 1` affine subspaces avoiding the visited ones,
/// for every prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiWitness {
    pub descriptor: PhiDescriptor,
    pub sequence: Vec<Vec<u64>>,
    /// `covers[j]` belongs to the prefix of length `j + 1`.
    pub covers: Vec<Vec<AffineSubspace>>,
}

impl PhiWitness {
    /// Each prefix cover as an [`AffineCover`] over the remaining points.
    pub fn affine_covers(&self) -> Vec<AffineCover> {
        let p = self.descriptor.p;
        let m = self.descriptor.m;
        (0..self.sequence.len())
            .map(|j| {
                let excluded = self.sequence[..=j].to_vec();
                AffineCover {
                    p,
                    dim: m,
                    subspaces: self.covers[j].clone(),
                    covered: self.sequence[j + 1..].to_vec(),
                    excluded,
                }
            })
            .collect()
    }

    /// Witness certificate on [`phi_system`] at complexity `k - 2`, using
    /// the first `len` sequence entries (the whole sequence if `None`).
    ///
    /// Part `t` of prefix `j` is the set of unvisited forms whose point lies
    /// in the `t`-th subspace; empty parts are dropped.
    pub fn certificate(&self, len: Option<usize>) -> Result<WitnessCertificate> {
        let desc = self.descriptor;
        if desc.k < 2 {
            return Err(Error::InvalidParameter(
                "a certificate at complexity k - 2 needs k >= 2".into(),
            ));
        }
        let len = len.unwrap_or(self.sequence.len());
        if len == 0 || len > self.sequence.len() {
            return Err(Error::InvalidParameter(format!(
                "prefix length must be in 1..={}",
                self.sequence.len()
            )));
        }
        let points = desc.points();
        let index_of = |z: &Vec<u64>| points.iter().position(|x| x == z).expect("point of S");
        let sequence: Vec<usize> = self.sequence[..len].iter().map(index_of).collect();
        let covers = (0..len)
            .map(|j| {
                let prefix = &sequence[..=j];
                let parts = self.covers[j]
                    .iter()
                    .map(|h| {
                        (0..points.len())
                            .filter(|a| !prefix.contains(a) && h.contains(&points[*a]))
                            .collect::<Vec<_>>()
                    })
                    .filter(|part| !part.is_empty())
                    .collect();
                CoverCertificate {
                    targets: prefix.to_vec(),
                    parts,
                }
            })
            .collect();
        Ok(WitnessCertificate {
            system_hash: desc.system().hash(),
            i: sequence[len - 1],
            k: desc.k - 2,
            sequence,
            covers,
        })
    }

    /// Certificate ending at point `z`: the prefix up to `z`'s position.
    pub fn certificate_at(&self, z: &[u64]) -> Result<WitnessCertificate> {
        let pos = self
            .sequence
            .iter()
            .position(|x| x == z)
            .ok_or_else(|| Error::InvalidParameter(format!("{z:?} is not a point of S_k,M")))?;
        self.certificate(Some(pos + 1))
    }
}

/// The slice-by-slice witness construction.
///
/// For `M = 1` the sequence is `m-1, ..., 0` with `m = min(k, p)`, covered
/// by singletons. For `M > 1` the slices `t_M = j` are processed for
/// `j = p-1` down to `0`; slice `j` reuses the `(M-1)`-dimensional witness
/// for `S_{k-j, M-1}` lifted to `t_M = j`, and its covers are completed by
/// the hyperplanes `t_M = j'` for all `j' < j`.
pub fn phi_witness(p: Prime, k: usize, m: usize) -> Result<PhiWitness> {
    let descriptor = PhiDescriptor::new(p, k, m)?;
    let (sequence, covers) = build_witness(p, descriptor.k, m)?;
    Ok(PhiWitness {
        descriptor,
        sequence,
        covers,
    })
}

type WitnessParts = (Vec<Vec<u64>>, Vec<Vec<AffineSubspace>>);

fn build_witness(p: Prime, k: usize, m: usize) -> Result<WitnessParts> {
    let q = p.get();
    if m == 1 {
        let top = k.min(q as usize) as u64;
        let sequence: Vec<Vec<u64>> = (0..top).rev().map(|a| vec![a]).collect();
        let covers = (0..sequence.len())
            .map(|j| {
                sequence[j + 1..]
                    .iter()
                    .map(|x| AffineSubspace::point(p, x.clone()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok((sequence, covers));
    }
    let mut sequence = Vec::new();
    let mut covers = Vec::new();
    for j in (0..q).rev() {
        let Some(sub_k) = k.checked_sub(j as usize).filter(|&s| s >= 1) else {
            continue;
        };
        let sub_k = sub_k.min((m - 1) * (q as usize - 1) + 1);
        let (sub_seq, sub_covers) = build_witness(p, sub_k, m - 1)?;
        let below: Vec<AffineSubspace> = (0..j)
            .map(|jj| slice_hyperplane(p, m, jj))
            .collect::<Result<_>>()?;
        for (b, h) in sub_seq.into_iter().zip(sub_covers) {
            let mut point = b;
            point.push(j);
            sequence.push(point);
            let mut cover: Vec<AffineSubspace> =
                h.iter().map(|s| lift(s, j)).collect::<Result<_>>()?;
            cover.extend(below.iter().cloned());
            covers.push(cover);
        }
    }
    Ok((sequence, covers))
}

/// `{t : t_M = j}` in `F_p^M`.
fn slice_hyperplane(p: Prime, m: usize, j: u64) -> Result<AffineSubspace> {
    let mut base = vec![0; m];
    base[m - 1] = j;
    let dirs: Vec<Vec<u64>> = (0..m - 1)
        .map(|c| {
            let mut v = vec![0; m];
            v[c] = 1;
            v
        })
        .collect();
    AffineSubspace::new(p, base, &dirs)
}

/// `H × {j}` one dimension up.
fn lift(h: &AffineSubspace, j: u64) -> Result<AffineSubspace> {
    let mut base = h.basepoint.clone();
    base.push(j);
    let dirs: Vec<Vec<u64>> = h
        .directions
        .iter()
        .map(|d| {
            let mut v = d.clone();
            v.push(0);
            v
        })
        .collect();
    AffineSubspace::new(h.p, base, &dirs)
}

/// Lexicographically largest `w ∈ [0, p-1]^M` with `Σ w_i = k - 1` and
/// `w_1 > 0`.
pub fn default_weight(p: Prime, k: usize, m: usize) -> Result<Vec<u64>> {
    let desc = PhiDescriptor::new(p, k, m)?;
    if desc.k < 2 {
        return Err(Error::InvalidParameter("a weight needs k >= 2".into()));
    }
    let mut left = desc.k as u64 - 1;
    let w = (0..m)
        .map(|_| {
            let x = left.min(p.get() - 1);
            left -= x;
            x
        })
        .collect();
    Ok(w)
}

fn check_weight(p: Prime, k: usize, w: &[u64]) -> Result<()> {
    if w.iter().any(|&x| x >= p.get()) {
        return Err(Error::InvalidParameter(format!(
            "weight entries must lie in [0, {}]",
            p.get() - 1
        )));
    }
    if w.iter().sum::<u64>() as usize + 1 != k {
        return Err(Error::InvalidParameter(format!(
            "weight entries must sum to k - 1 = {}",
            k as i64 - 1
        )));
    }
    if w.first().is_none_or(|&x| x == 0) {
        return Err(Error::InvalidParameter("the first weight entry must be positive".into()));
    }
    Ok(())
}

/// `C(a, b)` computed exactly and reduced mod `p`.
fn binomial_mod(a: u64, b: u64, p: Prime) -> u64 {
    if b > a {
        return 0;
    }
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..b {
        num *= a - i;
        den *= i + 1;
    }
    let value = num / den % BigUint::from(p.get());
    value.iter_u64_digits().next().unwrap_or(0)
}

/// Table of `x ↦ ∏_i C(x_i, e_i) mod p` on `F_p^M` in digit order, with
/// `x_i` read as its representative in `[0, p-1]`.
pub fn binomial_polynomial(p: Prime, exponents: &[u64]) -> Vec<u64> {
    let q = p.get();
    let m = exponents.len();
    let per_coord: Vec<Vec<u64>> = exponents
        .iter()
        .map(|&e| (0..q).map(|x| binomial_mod(x, e, p)).collect())
        .collect();
    let size = q.pow(m as u32) as usize;
    (0..size)
        .map(|mut idx| {
            let mut v = 1;
            for table in &per_coord {
                v = p.mul(v, table[idx % q as usize]);
                idx /= q as usize;
            }
            v
        })
        .collect()
}

/// The exponents `(w_1 - 1, w_2, ..., w_M)` of the degree `k - 2`
/// polynomial.
fn polynomial_exponents(w: &[u64]) -> Vec<u64> {
    let mut e = w.to_vec();
    e[0] -= 1;
    e
}

/// Coefficient `(-1)^{|z|} ∏ C(w_i, z_i) mod p`.
fn sign_coefficient(p: Prime, w: &[u64], z: &[u64]) -> u64 {
    let mut c = w
        .iter()
        .zip(z)
        .fold(1, |acc, (&wi, &zi)| p.mul(acc, binomial_mod(wi, zi, p)));
    if z.iter().sum::<u64>() % 2 == 1 {
        c = p.neg(c);
    }
    c
}

/// The functions `f_z(y) = e_p(c_z P(y))` on `F_p^M`, or their `ℓ`-fold
/// block products on `F_p^{ℓM}`, in the order of [`s_km_points`].
pub fn counterexample_family(
    p: Prime,
    k: usize,
    m: usize,
    w: &[u64],
    level: usize,
) -> Result<Vec<FunctionTable>> {
    let desc = PhiDescriptor::new(p, k, m)?;
    if w.len() != m {
        return Err(Error::InvalidParameter(format!("weight must have M = {m} entries")));
    }
    check_weight(p, desc.k, w)?;
    if level == 0 {
        return Err(Error::InvalidParameter("level must be at least 1".into()));
    }
    let poly = binomial_polynomial(p, &polynomial_exponents(w));
    desc.points()
        .iter()
        .map(|z| {
            let c = sign_coefficient(p, w, z);
            let values: Vec<Complex64> = poly.iter().map(|&v| e_p(p, p.mul(c, v))).collect();
            let base = FunctionTable::new(p, m, values)?;
            if level == 1 {
                Ok(base)
            } else {
                base.tensor_power(level)
            }
        })
        .collect()
}

/// `Σ_{z ∈ ∏[0, w_i]} (-1)^{|z|} ∏ C(w_i, z_i) Q(x + z·t)` in `F_p`, for a
/// table `Q` on `F_p^M` and `x, t_1, ..., t_M ∈ F_p^M`.
fn gray_code_sum(p: Prime, w: &[u64], table: &[u64], x: &[u64], t: &[Vec<u64>]) -> u64 {
    let q = p.get();
    let m = w.len();
    let mut z = vec![0u64; m];
    let mut total = 0;
    loop {
        let mut idx = 0usize;
        for coord in (0..m).rev() {
            let v = (0..m).fold(x[coord], |acc, i| p.add(acc, p.mul(z[i], t[i][coord])));
            idx = idx * q as usize + v as usize;
        }
        total = p.add(total, p.mul(sign_coefficient(p, w, &z), table[idx]));
        let mut c = 0;
        loop {
            if c == m {
                return total;
            }
            z[c] += 1;
            if z[c] <= w[c] {
                break;
            }
            z[c] = 0;
            c += 1;
        }
    }
}

/// Largest `|σ|` (as a symmetric residue) of the alternating sum over
/// random `(x, t)` for the polynomial with the given exponents.
pub fn gray_code_check_with(
    p: Prime,
    w: &[u64],
    exponents: &[u64],
    trials: usize,
    seed: u64,
) -> u64 {
    let q = p.get();
    let m = w.len();
    let table = binomial_polynomial(p, exponents);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0;
    for _ in 0..trials {
        let x: Vec<u64> = (0..m).map(|_| rng.gen_range(0..q)).collect();
        let t: Vec<Vec<u64>> = (0..m)
            .map(|_| (0..m).map(|_| rng.gen_range(0..q)).collect())
            .collect();
        let s = gray_code_sum(p, w, &table, &x, &t);
        worst = worst.max(s.min(q - s));
    }
    worst
}

/// [`gray_code_check_with`] for the degree `k - 2` polynomial of `w`.
pub fn gray_code_check(
    p: Prime,
    k: usize,
    m: usize,
    w: &[u64],
    trials: usize,
    seed: u64,
) -> Result<u64> {
    let desc = PhiDescriptor::new(p, k, m)?;
    if w.len() != m {
        return Err(Error::InvalidParameter(format!("weight must have M = {m} entries")));
    }
    check_weight(p, desc.k, w)?;
    Ok(gray_code_check_with(p, w, &polynomial_exponents(w), trials, seed))
}
