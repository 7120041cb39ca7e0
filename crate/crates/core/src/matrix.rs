//! Dense complex matrices over tensor-product index spaces.
//!
//! Multi-indices are row-major over the declared legs: in `A ⊗ B` the index
//! `(i, j)` sits at `i * dim(B) + j`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::C64;

mod eigen;

pub use eigen::{eigh, SelfadjointDecomposition};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Equality compares shape and entries; the leg factorization is metadata.
#[derive(Clone, Debug)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
    legs: Vec<usize>,
}

impl PartialEq for ComplexMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols], legs: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m.legs = vec![n];
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data, legs: Vec::new() }
    }

    /// Builds a matrix from real row slices.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m.legs = vec![n];
        m
    }

    /// Matrix unit `E_{ij}` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.data[i * n + j] = ONE;
        m.legs = vec![n];
        m
    }

    /// Declares the tensor legs of a square matrix.
    pub fn with_legs(mut self, legs: Vec<usize>) -> Result<Self> {
        let prod: usize = legs.iter().product();
        if self.rows != self.cols || prod != self.rows {
            return Err(Error::ProfileMismatch(format!(
                "legs {:?} do not factor a {}x{} matrix",
                legs, self.rows, self.cols
            )));
        }
        self.legs = legs;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out.legs = self.legs.clone();
        out
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|x| *x *= c);
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Entrywise max-modulus distance.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Selfadjointness defect `max |M - M*|`.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut d: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                d = d.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        d
    }

    /// Product; skips zero entries of the left factor, which keeps products
    /// of shift-like matrices cheap.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let (n, m) = (self.rows, other.cols);
        let mut out = Self::zeros(n, m);
        for i in 0..n {
            let out_row = &mut out.data[i * m..(i + 1) * m];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let b_row = &other.data[k * m..(k + 1) * m];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        if self.legs.iter().product::<usize>() == m && !self.legs.is_empty() {
            out.legs = self.legs.clone();
        } else if other.legs.iter().product::<usize>() == n && !other.legs.is_empty() {
            out.legs = other.legs.clone();
        }
        out
    }

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Kronecker product with legs concatenated.
    pub fn tensor(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for k in 0..other.rows {
                    let base = (i * other.rows + k) * c + j * other.cols;
                    for l in 0..other.cols {
                        out.data[base + l] = a * other.data[k * other.cols + l];
                    }
                }
            }
        }
        if self.is_square() && other.is_square() {
            let mut legs = leg_list(self);
            legs.extend(leg_list(other));
            out.legs = legs;
        }
        out
    }

    /// Restriction to the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// Cheap upper bound `sqrt(‖M‖₁ ‖M‖∞)` for the operator norm.
    pub fn norm_bound(&self) -> f64 {
        let mut col = vec![0.0f64; self.cols];
        let mut row_max: f64 = 0.0;
        for i in 0..self.rows {
            let mut s = 0.0;
            for (j, z) in self.row(i).iter().enumerate() {
                let a = z.norm();
                s += a;
                col[j] += a;
            }
            row_max = row_max.max(s);
        }
        let col_max = col.into_iter().fold(0.0, f64::max);
        libm::sqrt(row_max * col_max)
    }

    /// Numerical rank: singular values above `threshold` (relative to 1).
    pub fn rank(&self, threshold: f64) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let gram = if self.cols <= self.rows {
            self.adjoint().matmul(self)
        } else {
            self.matmul(&self.adjoint())
        };
        let dec = eigh(&gram);
        dec.eigenvalues.iter().filter(|&&l| l > threshold * threshold).count()
    }
}

fn leg_list(m: &ComplexMatrix) -> Vec<usize> {
    if m.legs.is_empty() {
        vec![m.rows]
    } else {
        m.legs.clone()
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let mut out = self.clone();
        out.data.iter_mut().zip(&rhs.data).for_each(|(a, b)| *a += b);
        if out.legs.is_empty() {
            out.legs = rhs.legs.clone();
        }
        out
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let mut out = self.clone();
        out.data.iter_mut().zip(&rhs.data).for_each(|(a, b)| *a -= b);
        if out.legs.is_empty() {
            out.legs = rhs.legs.clone();
        }
        out
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// Kronecker product (free-function form).
pub fn tensor(m: &ComplexMatrix, n: &ComplexMatrix) -> ComplexMatrix {
    m.tensor(n)
}

/// How the interior margin applies to one tensor leg.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LegClass {
    /// One-sided Fock leg: the top `margin` indices are dropped.
    Fock,
    /// Window of a bilateral shift: `margin` indices dropped at both ends.
    Bilateral,
    /// Finite leg with no truncation artifact.
    Full,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TruncationProfile {
    pub leg_dims: Vec<usize>,
    pub classes: Vec<LegClass>,
    pub margin: usize,
}

impl TruncationProfile {
    /// Profile in which every leg is a Fock leg.
    pub fn fock(leg_dims: Vec<usize>, margin: usize) -> Result<Self> {
        let classes = vec![LegClass::Fock; leg_dims.len()];
        Self::new(leg_dims, classes, margin)
    }

    pub fn new(leg_dims: Vec<usize>, classes: Vec<LegClass>, margin: usize) -> Result<Self> {
        if leg_dims.len() != classes.len() {
            return Err(Error::ProfileMismatch("one class per leg required".into()));
        }
        if margin < 1 {
            return Err(Error::ProfileMismatch("margin must be at least 1".into()));
        }
        for (&d, &c) in leg_dims.iter().zip(&classes) {
            let used = match c {
                LegClass::Fock => margin,
                LegClass::Bilateral => 2 * margin,
                LegClass::Full => 0,
            };
            if c != LegClass::Full && used >= d {
                return Err(Error::ProfileMismatch(format!(
                    "margin {margin} too large for leg of dimension {d}"
                )));
            }
        }
        Ok(Self { leg_dims, classes, margin })
    }

    pub fn total_dim(&self) -> usize {
        self.leg_dims.iter().product()
    }

    fn kept_range(&self, leg: usize) -> (usize, usize) {
        let d = self.leg_dims[leg];
        match self.classes[leg] {
            LegClass::Fock => (0, d - self.margin),
            LegClass::Bilateral => (self.margin, d - self.margin),
            LegClass::Full => (0, d),
        }
    }

    /// Flat indices retained by the compression, ascending.
    pub fn interior_indices(&self) -> Vec<usize> {
        let mut out = vec![0usize];
        for leg in 0..self.leg_dims.len() {
            let (lo, hi) = self.kept_range(leg);
            let d = self.leg_dims[leg];
            let mut next = Vec::with_capacity(out.len() * (hi - lo));
            for &base in &out {
                for i in lo..hi {
                    next.push(base * d + i);
                }
            }
            out = next;
        }
        out
    }

    pub fn interior_dim(&self) -> usize {
        (0..self.leg_dims.len())
            .map(|l| {
                let (lo, hi) = self.kept_range(l);
                hi - lo
            })
            .product()
    }
}

/// Restriction of `m` to basis vectors away from the truncation boundary.
pub fn compress_interior(m: &ComplexMatrix, profile: &TruncationProfile) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::ProfileMismatch("compression needs a square matrix".into()));
    }
    if m.rows != profile.total_dim() {
        return Err(Error::ProfileMismatch(format!(
            "matrix of size {} against profile {:?}",
            m.rows, profile.leg_dims
        )));
    }
    if !m.legs.is_empty() && m.legs != profile.leg_dims {
        return Err(Error::ProfileMismatch(format!(
            "declared legs {:?} differ from profile {:?}",
            m.legs, profile.leg_dims
        )));
    }
    let idx = profile.interior_indices();
    let mut out = m.submatrix(&idx, &idx);
    out.legs = (0..profile.leg_dims.len())
        .map(|l| {
            let (lo, hi) = profile.kept_range(l);
            hi - lo
        })
        .collect();
    Ok(out)
}

/// Largest singular value.
///
/// Small matrices go through the Hermitian eigensolver on `M*M`; larger ones
/// use power iteration on `M*M` until the Rayleigh quotient settles.
pub fn op_norm(m: &ComplexMatrix) -> f64 {
    if m.rows == 0 || m.cols == 0 || m.is_zero() {
        return 0.0;
    }
    let n = m.cols.min(m.rows);
    if n <= 160 {
        let gram = if m.cols <= m.rows { m.adjoint().matmul(m) } else { m.matmul(&m.adjoint()) };
        let top = eigh(&gram).eigenvalues.last().copied().unwrap_or(0.0);
        return libm::sqrt(top.max(0.0));
    }
    let adj = m.adjoint();
    // Deterministic start vector with no special alignment.
    let mut v: Vec<C64> =
        (0..m.cols).map(|i| C64::new(1.0 + (i % 7) as f64 * 0.1, (i % 3) as f64 * 0.05)).collect();
    normalize(&mut v);
    let mut last = 0.0;
    for _ in 0..20_000 {
        let w = adj.matvec(&m.matvec(&v));
        let lambda: f64 = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum();
        v = w;
        if normalize(&mut v) == 0.0 {
            return 0.0;
        }
        if (lambda - last).abs() <= 1e-13 * lambda.abs() {
            return libm::sqrt(lambda.max(0.0));
        }
        last = lambda;
    }
    libm::sqrt(last.max(0.0))
}

fn normalize(v: &mut [C64]) -> f64 {
    let n = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum());
    if n > 0.0 {
        v.iter_mut().for_each(|z| *z /= n);
    }
    n
}

/// `exp(i·angle_scale·Q)` for selfadjoint `Q`, via the spectral decomposition.
pub fn expm_selfadjoint(q: &ComplexMatrix, angle_scale: f64, tolerance: f64) -> Result<ComplexMatrix> {
    let defect = q.hermitian_defect();
    if defect > tolerance {
        return Err(Error::NotSelfadjoint { defect });
    }
    let dec = eigh(q);
    let n = q.rows;
    let phases: Vec<C64> = dec
        .eigenvalues
        .iter()
        .map(|&l| C64::from_polar(1.0, angle_scale * l))
        .collect();
    let v = &dec.eigenvectors;
    let mut out = ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n).map(|k| v.get(i, k) * phases[k] * v.get(j, k).conj()).sum()
    });
    out.legs = q.legs.clone();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn shift(n: usize) -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(n, n);
        for i in 0..n - 1 {
            s.set(i + 1, i, ONE);
        }
        s.with_legs(vec![n]).unwrap()
    }

    #[test]
    fn identity_tensor_identity() {
        let i4 = ComplexMatrix::identity(2).tensor(&ComplexMatrix::identity(2));
        assert_eq!(i4.max_abs_diff(&ComplexMatrix::identity(4)), 0.0);
        assert_eq!(i4.legs(), &[2, 2]);
    }

    #[test]
    fn shift_tensor_identity_has_two_unit_entries() {
        let m = shift(2).tensor(&ComplexMatrix::identity(2));
        let nonzero: Vec<_> = m.entries().iter().filter(|z| z.norm() != 0.0).collect();
        assert_eq!(nonzero.len(), 2);
        assert!(nonzero.iter().all(|z| **z == ONE));
    }

    #[test]
    fn tensor_is_associative() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| C64::new(i as f64, j as f64 + 1.0));
        let b = shift(3);
        let c = ComplexMatrix::from_fn(2, 2, |i, j| C64::new((i + 2 * j) as f64, -1.0));
        let l = a.tensor(&b).tensor(&c);
        let r = a.tensor(&b.tensor(&c));
        assert_eq!(l.max_abs_diff(&r), 0.0);
    }

    #[test]
    fn expm_examples() {
        let z = ComplexMatrix::zeros(3, 3);
        let e = expm_selfadjoint(&z, 2.0 * PI, 1e-12).unwrap();
        assert!(e.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-12);

        let p = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
        let e = expm_selfadjoint(&p, 2.0 * PI, 1e-12).unwrap();
        assert!(e.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);

        // Q = p/2: eigenvalue 1/2 picks up e^{iπ} = -1.
        let e = expm_selfadjoint(&p.scale(C64::new(0.5, 0.0)), 2.0 * PI, 1e-12).unwrap();
        let expect = &ComplexMatrix::identity(2) - &p.scale(C64::new(2.0, 0.0));
        assert!(e.max_abs_diff(&expect) < 1e-12);

        let bad = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(expm_selfadjoint(&bad, 1.0, 1e-12), Err(Error::NotSelfadjoint { .. })));
    }

    #[test]
    fn compression_examples() {
        let n = 6;
        let s = shift(n);
        let prof = TruncationProfile::fock(vec![n], 1).unwrap();
        let id = compress_interior(&ComplexMatrix::identity(n), &prof).unwrap();
        assert_eq!(id.max_abs_diff(&ComplexMatrix::identity(n - 1)), 0.0);

        let ss = compress_interior(&(&s.adjoint() * &s), &prof).unwrap();
        assert_eq!(ss.max_abs_diff(&ComplexMatrix::identity(n - 1)), 0.0);

        let p = &ComplexMatrix::identity(n) - &(&s * &s.adjoint());
        let cp = compress_interior(&p, &prof).unwrap();
        assert_eq!(cp.max_abs_diff(&ComplexMatrix::unit(n - 1, 0, 0)), 0.0);
    }

    #[test]
    fn profile_validation() {
        assert!(TruncationProfile::fock(vec![4], 0).is_err());
        assert!(TruncationProfile::fock(vec![4, 2], 2).is_err());
        assert!(TruncationProfile::new(vec![2, 8], vec![LegClass::Full, LegClass::Fock], 2).is_ok());
        assert!(TruncationProfile::new(vec![5], vec![LegClass::Bilateral], 2).is_ok());
        assert!(TruncationProfile::new(vec![4], vec![LegClass::Bilateral], 2).is_err());
        let wrong = ComplexMatrix::identity(4);
        let prof = TruncationProfile::fock(vec![3], 1).unwrap();
        assert!(matches!(compress_interior(&wrong, &prof), Err(Error::ProfileMismatch(_))));
    }

    #[test]
    fn bilateral_compression_drops_both_ends() {
        let prof = TruncationProfile::new(vec![7], vec![LegClass::Bilateral], 2).unwrap();
        assert_eq!(prof.interior_indices(), vec![2, 3, 4]);
        let prof = TruncationProfile::new(vec![2, 3], vec![LegClass::Full, LegClass::Fock], 1).unwrap();
        assert_eq!(prof.interior_indices(), vec![0, 1, 3, 4]);
    }

    #[test]
    fn norm_examples() {
        assert!((op_norm(&ComplexMatrix::identity(5)) - 1.0).abs() < 1e-12);
        assert_eq!(op_norm(&ComplexMatrix::zeros(4, 4)), 0.0);
        assert!((op_norm(&shift(8)) - 1.0).abs() < 1e-12);
        // Large path goes through power iteration.
        assert!((op_norm(&shift(300)) - 1.0).abs() < 1e-10);
        let d = ComplexMatrix::diagonal(&[C64::new(3.0, 0.0), C64::new(0.0, -2.0)]);
        assert!((op_norm(&d) - 3.0).abs() < 1e-12);
        assert!(d.norm_bound() >= 3.0 - 1e-12);
    }

    #[test]
    fn rank_counts_singular_values() {
        let s = shift(5);
        assert_eq!(s.rank(1e-6), 4);
        assert_eq!(ComplexMatrix::unit(3, 1, 2).rank(1e-6), 1);
    }
}
