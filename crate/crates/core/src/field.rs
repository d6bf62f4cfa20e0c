//! Exact arithmetic and linear algebra over a prime field `F_p`.
//!
//! Field elements are plain `u64` residues in `[0, p)`. The modulus is kept
//! below `2^32` so that a product of two residues never overflows.
//!
//! Span questions are answered by rank computations on an [`EchelonBasis`],
//! never by searching over coefficient tuples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Canonical residue of an arbitrary integer.
    #[inline]
    pub fn reduce(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.0), "inverse of zero in F_{}", self.0);
        self.pow(a, self.0 - 2)
    }
}

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = u64::deserialize(d)?;
        Prime::new(p).map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// A vector of residues over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpVector {
    p: Prime,
    entries: Vec<u64>,
}

impl FpVector {
    /// Builds a vector from residues that are already reduced.
    pub fn new(p: Prime, entries: Vec<u64>) -> Result<Self> {
        if let Some(&value) = entries.iter().find(|&&e| e >= p.get()) {
            return Err(Error::EntryOutOfRange { value, p: p.get() });
        }
        Ok(FpVector { p, entries })
    }

    /// Builds a vector from arbitrary integers, reducing each mod `p`.
    pub fn from_ints(p: Prime, entries: &[i64]) -> Self {
        FpVector {
            p,
            entries: entries.iter().map(|&e| p.reduce(e)).collect(),
        }
    }

    pub fn zero(p: Prime, len: usize) -> Self {
        FpVector {
            p,
            entries: vec![0; len],
        }
    }

    pub fn unit(p: Prime, len: usize, index: usize) -> Self {
        let mut v = Self::zero(p, len);
        v.entries[index] = 1;
        v
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u64> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        FpVector {
            p,
            entries: self.entries.iter().map(|&e| p.mul(e, c)).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn mul_matrix(&self, m: &FpMatrix) -> Result<FpVector> {
        check_modulus(self.p, m.p)?;
        if m.rows != self.len() {
            return Err(Error::DimensionMismatch {
                expected: m.rows,
                found: self.len(),
            });
        }
        Ok(FpVector {
            p: self.p,
            entries: row_times_matrix(self.p, &self.entries, m),
        })
    }
}

pub(crate) fn row_times_matrix(p: Prime, row: &[u64], m: &FpMatrix) -> Vec<u64> {
    let mut out = vec![0u64; m.cols];
    for (r, &a) in row.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (c, o) in out.iter_mut().enumerate() {
            *o = p.add(*o, p.mul(a, m.get(r, c)));
        }
    }
    out
}

fn check_modulus(a: Prime, b: Prime) -> Result<()> {
    if a != b {
        return Err(Error::ModulusMismatch {
            left: a.get(),
            right: b.get(),
        });
    }
    Ok(())
}

/// A dense row-major matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn new(p: Prime, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(&value) = data.iter().find(|&&e| e >= p.get()) {
            return Err(Error::EntryOutOfRange { value, p: p.get() });
        }
        Ok(FpMatrix { p, rows, cols, data })
    }

    /// Builds a matrix from reduced rows of equal length.
    pub fn from_rows(p: Prime, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(p, rows.len(), cols, data)
    }

    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u64) {
        self.data[r * self.cols + c] = value % self.p.get();
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u64]> {
        // chunks_exact panics on a zero chunk size
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.row_iter().map(<[u64]>::to_vec).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        check_modulus(self.p, other.p)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            data.extend(row_times_matrix(self.p, self.row(r), other));
        }
        Ok(FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new(self.p, self.cols);
        for row in self.row_iter() {
            basis.insert(row);
        }
        basis.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Gauss-Jordan inverse; `None` for singular or non-square matrices.
    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let p = self.p;
        let mut aug = FpMatrix::zeros(p, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.get(r, c);
            }
            aug.data[r * 2 * n + n + r] = 1;
        }
        let reduced = rref(&aug);
        if n > 0 && (reduced.pivots.len() < n || reduced.pivots[n - 1] != n - 1) {
            return None;
        }
        let mut inv = FpMatrix::zeros(p, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.data[r * n + c] = reduced.matrix.get(r, n + c);
            }
        }
        Some(inv)
    }
}

/// Output of [`rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form over `F_p`.
pub fn rref(m: &FpMatrix) -> Rref {
    let p = m.p;
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for c in 0..a.cols {
        if lead == a.rows {
            break;
        }
        let Some(pr) = (lead..a.rows).find(|&r| a.get(r, c) != 0) else {
            continue;
        };
        if pr != lead {
            for j in 0..a.cols {
                a.data.swap(pr * a.cols + j, lead * a.cols + j);
            }
        }
        let inv = p.inv(a.get(lead, c));
        for j in 0..a.cols {
            let v = p.mul(a.get(lead, j), inv);
            a.data[lead * a.cols + j] = v;
        }
        for r in 0..a.rows {
            let f = a.get(r, c);
            if r == lead || f == 0 {
                continue;
            }
            for j in 0..a.cols {
                let v = p.sub(a.get(r, j), p.mul(f, a.get(lead, j)));
                a.data[r * a.cols + j] = v;
            }
        }
        pivots.push(c);
        lead += 1;
    }
    Rref {
        rank: pivots.len(),
        matrix: a,
        pivots,
    }
}

/// Incrementally built row-echelon basis of a subspace of `F_p^dim`.
///
/// Each stored row has a leading one at its pivot column and zeros in the
/// pivot columns of all other rows.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    p: Prime,
    dim: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(p: Prime, dim: usize) -> Self {
        EchelonBasis {
            p,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<'a>(p: Prime, dim: usize, rows: impl IntoIterator<Item = &'a [u64]>) -> Self {
        let mut b = Self::new(p, dim);
        for r in rows {
            b.insert(r);
        }
        b
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Residual of `v` after eliminating against the basis.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.dim);
        let p = self.p;
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = w[pc];
            if f == 0 {
                continue;
            }
            for (x, &b) in w.iter_mut().zip(row) {
                *x = p.sub(*x, p.mul(f, b));
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns `true` if the rank grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = p.inv(w[pc]);
        for x in w.iter_mut() {
            *x = p.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let f = row[pc];
            if f == 0 {
                continue;
            }
            for (x, &b) in row.iter_mut().zip(&w) {
                *x = p.sub(*x, p.mul(f, b));
            }
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }
}

fn check_vectors(dim: usize, p: Prime, vs: &[FpVector]) -> Result<()> {
    for s in vs {
        check_modulus(p, s.p)?;
        if s.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: s.len(),
            });
        }
    }
    Ok(())
}

/// Whether `v` is an `F_p`-linear combination of `span`. The empty span is `{0}`.
pub fn in_span(v: &FpVector, span: &[FpVector]) -> Result<bool> {
    check_vectors(v.len(), v.p, span)?;
    let basis = EchelonBasis::from_rows(v.p, v.len(), span.iter().map(FpVector::entries));
    Ok(basis.contains(&v.entries))
}

/// Whether `a` is an affine combination of `points`. The affine span of the
/// empty set is empty.
///
/// Computed by homogenization: `a ∈ aff(S)` iff `(1, a) ∈ span{(1, s)}`.
pub fn in_affine_span(a: &FpVector, points: &[FpVector]) -> Result<bool> {
    check_vectors(a.len(), a.p, points)?;
    Ok(affine_contains(a.p, a.entries(), points.iter().map(FpVector::entries)))
}

pub(crate) fn homogenize(x: &[u64]) -> Vec<u64> {
    let mut h = Vec::with_capacity(x.len() + 1);
    h.push(1);
    h.extend_from_slice(x);
    h
}

pub(crate) fn affine_contains<'a>(
    p: Prime,
    a: &[u64],
    points: impl IntoIterator<Item = &'a [u64]>,
) -> bool {
    let mut basis = EchelonBasis::new(p, a.len() + 1);
    for s in points {
        basis.insert(&homogenize(s));
    }
    basis.contains(&homogenize(a))
}

/// `m`-th tensor power of `v`, indexed by multi-indices `(j_1, ..., j_m)` in
/// lexicographic order (`j_1` most significant).
pub fn tensor_power(v: &FpVector, m: usize) -> FpVector {
    assert!(m >= 1, "tensor power exponent must be positive");
    let p = v.p;
    let mut acc = vec![1u64];
    for _ in 0..m {
        let mut next = Vec::with_capacity(acc.len() * v.len());
        for &a in &acc {
            next.extend(v.entries.iter().map(|&b| p.mul(a, b)));
        }
        acc = next;
    }
    FpVector { p, entries: acc }
}

/// Invertible `T` with `v · T = (1, 0, ..., 0)`.
///
/// With `j` the first nonzero coordinate of `v`, column 0 of `T` is
/// `e_j / v_j` and the remaining columns are `e_m - (v_m / v_j) e_j` for
/// `m != j` in increasing order.
pub fn completing_transform(v: &FpVector) -> Result<FpMatrix> {
    let p = v.p;
    let d = v.len();
    let j = v.entries.iter().position(|&x| x != 0).ok_or(Error::ZeroForm)?;
    let inv = p.inv(v.entries[j]);
    let mut t = FpMatrix::zeros(p, d, d);
    t.set(j, 0, inv);
    let mut col = 1;
    for m in (0..d).filter(|&m| m != j) {
        t.set(m, col, 1);
        t.set(j, col, p.neg(p.mul(v.entries[m], inv)));
        col += 1;
    }
    Ok(t)
}

/// Invertible `R` whose first column is `c` (which must be nonzero); the
/// other columns are the unit vectors `e_m`, `m != j`, where `j` is the first
/// nonzero coordinate of `c`.
pub(crate) fn extend_to_basis(p: Prime, c: &[u64]) -> Result<FpMatrix> {
    let d = c.len();
    let j = c.iter().position(|&x| x != 0).ok_or(Error::ZeroForm)?;
    let mut r = FpMatrix::zeros(p, d, d);
    for (i, &x) in c.iter().enumerate() {
        r.set(i, 0, x);
    }
    let mut col = 1;
    for m in (0..d).filter(|&m| m != j) {
        r.set(m, col, 1);
        col += 1;
    }
    Ok(r)
}

/// Solves `m · x = b` (column vector `x`), returning the solution with all
/// free variables set to zero.
pub(crate) fn solve_right(m: &FpMatrix, b: &[u64]) -> Option<Vec<u64>> {
    let p = m.p;
    let mut aug = FpMatrix::zeros(p, m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug.set(r, c, m.get(r, c));
        }
        aug.set(r, m.cols, b[r]);
    }
    let red = rref(&aug);
    if red.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![0u64; m.cols];
    for (r, &pc) in red.pivots.iter().enumerate() {
        x[pc] = red.matrix.get(r, m.cols);
    }
    Some(x)
}

impl Serialize for FpMatrix {
    /// Serializes as a list of rows.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}
