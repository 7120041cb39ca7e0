use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::element::Tensor;
use crate::error::{Error, Result};
use crate::matrix::{compress_interior, op_norm, ComplexMatrix, LegClass, TruncationProfile};
use crate::models::spaces::w_tilde;
use crate::models::{build_space, QParameters, SpaceId};
use crate::C64;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathLabel {
    UT,
    VT,
    Custom(String),
}

/// Sampled unitary path: per-sample unitarity defects and the largest
/// increment ratio `‖X(tᵢ₊₁) − X(tᵢ)‖ / |tᵢ₊₁ − tᵢ|^exponent`.
///
/// Samples are regenerated on demand by [`HomotopySuite::sample`] rather
/// than stored.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct UnitaryPath {
    pub label: PathLabel,
    pub grid: Vec<f64>,
    pub unitarity_defects: Vec<f64>,
    /// `1` for a Lipschitz check, `1/2` for a Hölder check.
    pub exponent: f64,
    pub bound: f64,
    pub max_increment_ratio: f64,
}

impl UnitaryPath {
    pub fn max_unitarity_defect(&self) -> f64 {
        self.unitarity_defects.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PathOptions {
    pub samples: usize,
    /// Declared continuity constant for both paths.
    pub bound: f64,
    pub unitarity_tolerance: f64,
}

impl Default for PathOptions {
    fn default() -> Self {
        Self { samples: 65, bound: 4.0, unitarity_tolerance: 1e-10 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomotopySuite {
    pub params: QParameters,
    pub u_path: UnitaryPath,
    pub v_path: UnitaryPath,
    /// `γ₀ + α₀*α₀` on `ℂ^N ⊗ ℂ^{2M+1}`.
    pub endpoint: ComplexMatrix,
    /// Interior distance between the endpoint and the operator of `w̃`.
    pub endpoint_defect: f64,
    /// Distance between `U_q` and the fundamental matrix of SU_q(2).
    pub funrep_defect: f64,
    /// `‖V₀ − U₀‖`.
    pub start_defect: f64,
}

fn window(params: &QParameters) -> usize {
    2 * params.circle_window + 1
}

/// Truncated bilateral shift `|k⟩ ↦ |k + j⟩` on `k ∈ [−M, M]`.
fn shift(w: usize, j: i64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(w, w);
    for col in 0..w {
        let row = col as i64 + j;
        if (0..w as i64).contains(&row) {
            m.set(row as usize, col, C64::new(1.0, 0.0));
        }
    }
    m.with_legs(vec![w]).expect("square")
}

/// Concrete operator of a tensor whose Fock legs precede its circle legs,
/// with `u` acting as the bilateral shift on `ℂ^{2M+1}`.
pub fn bilateral_rep(t: &Tensor, params: &QParameters) -> Result<ComplexMatrix> {
    let legs = &t.layout().legs;
    let first_circle = legs.iter().position(|l| !l.is_fock()).unwrap_or(legs.len());
    if legs[first_circle..].iter().any(|l| l.is_fock()) {
        return Err(Error::KindMismatch("Fock legs must precede circle legs".into()));
    }
    let w = window(params);
    let fock_dim = t.layout().matrix_dim();
    let circles = legs.len() - first_circle;
    let total = fock_dim * w.pow(circles as u32);
    let mut acc = ComplexMatrix::zeros(total, total);
    for (key, m) in t.terms() {
        let mut op = m.clone();
        for &k in key {
            op = op.tensor(&shift(w, k));
        }
        acc = &acc + &op;
    }
    Ok(acc)
}

/// `ρ_t(α)e_n = √(1−t^{2n}) e_{n−1}`, `ρ_t(γ)e_n = tⁿ e_n`, with `0⁰ = 1`.
fn rho(n: usize, t: f64) -> (ComplexMatrix, ComplexMatrix) {
    let pow = |k: usize| if k == 0 { 1.0 } else { libm::pow(t, k as f64) };
    let a = ComplexMatrix::from_fn(n, n, |i, j| {
        if j == i + 1 {
            C64::new(libm::sqrt(1.0 - pow(2 * j)), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let g = ComplexMatrix::diagonal(&(0..n).map(|i| C64::new(pow(i), 0.0)).collect::<Vec<_>>());
    (a.with_legs(vec![n]).expect("square"), g.with_legs(vec![n]).expect("square"))
}

/// Row-wise sparse matrix for the path samples.
#[derive(Clone, Debug)]
struct Sparse {
    n: usize,
    rows: Vec<Vec<(usize, C64)>>,
}

impl Sparse {
    fn from_dense(m: &ComplexMatrix) -> Self {
        let rows = (0..m.rows())
            .map(|i| m.row(i).iter().enumerate().filter(|(_, z)| z.norm() != 0.0).map(|(j, z)| (j, *z)).collect())
            .collect();
        Self { n: m.rows(), rows }
    }

    fn identity(n: usize) -> Self {
        Self { n, rows: (0..n).map(|i| vec![(i, C64::new(1.0, 0.0))]).collect() }
    }

    fn kron(&self, other: &Sparse) -> Self {
        let n = self.n * other.n;
        let mut rows = vec![Vec::new(); n];
        for (i, ri) in self.rows.iter().enumerate() {
            for (k, rk) in other.rows.iter().enumerate() {
                let row = &mut rows[i * other.n + k];
                for &(j, a) in ri {
                    for &(l, b) in rk {
                        row.push((j * other.n + l, a * b));
                    }
                }
            }
        }
        Self { n, rows }
    }

    fn compact(mut self) -> Self {
        for row in &mut self.rows {
            row.sort_by_key(|e| e.0);
            let mut out: Vec<(usize, C64)> = Vec::with_capacity(row.len());
            for &(j, z) in row.iter() {
                match out.last_mut() {
                    Some(last) if last.0 == j => last.1 += z,
                    _ => out.push((j, z)),
                }
            }
            out.retain(|e| e.1.norm() != 0.0);
            *row = out;
        }
        self
    }

    fn scale(&self, c: C64) -> Self {
        Self { n: self.n, rows: self.rows.iter().map(|r| r.iter().map(|&(j, z)| (j, z * c)).collect()).collect() }
    }

    fn add(&self, other: &Sparse) -> Self {
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.iter().chain(b).copied().collect()).collect();
        Self { n: self.n, rows }.compact()
    }

    fn sub(&self, other: &Sparse) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    fn adjoint(&self) -> Self {
        let mut rows = vec![Vec::new(); self.n];
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, z) in r {
                rows[j].push((i, z.conj()));
            }
        }
        Self { n: self.n, rows }
    }

    fn mul(&self, other: &Sparse) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().flat_map(|&(k, a)| other.rows[k].iter().map(move |&(j, b)| (j, a * b))).collect())
            .collect();
        Self { n: self.n, rows }.compact()
    }

    /// `[[a, b], [c, d]]`.
    fn block2(entries: [&Sparse; 4]) -> Self {
        let n = entries[0].n;
        let mut rows = vec![Vec::new(); 2 * n];
        for (idx, m) in entries.iter().enumerate() {
            let (bi, bj) = (idx / 2, idx % 2);
            for (i, r) in m.rows.iter().enumerate() {
                rows[bi * n + i].extend(r.iter().map(|&(j, z)| (bj * n + j, z)));
            }
        }
        Self { n: 2 * n, rows }.compact()
    }

    /// Max entry modulus of `self − 1` on `interior × interior`.
    fn interior_identity_defect(&self, interior: &[bool]) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, r) in self.rows.iter().enumerate() {
            if !interior[i] {
                continue;
            }
            let mut diag_seen = false;
            for &(j, z) in r {
                if !interior[j] {
                    continue;
                }
                let e = if i == j {
                    diag_seen = true;
                    z - C64::new(1.0, 0.0)
                } else {
                    z
                };
                worst = worst.max(e.norm());
            }
            if !diag_seen {
                worst = worst.max(1.0);
            }
        }
        worst
    }

    /// `sqrt(‖M‖₁ ‖M‖∞)`.
    fn norm_bound(&self) -> f64 {
        let mut col = vec![0.0f64; self.n];
        let mut row_max: f64 = 0.0;
        for r in &self.rows {
            let mut s = 0.0;
            for &(j, z) in r {
                s += z.norm();
                col[j] += z.norm();
            }
            row_max = row_max.max(s);
        }
        libm::sqrt(row_max * col.into_iter().fold(0.0, f64::max))
    }

    fn to_dense(&self, legs: Vec<usize>) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.n, self.n);
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, z) in r {
                m.add_at(i, j, z);
            }
        }
        m.with_legs(legs).expect("legs match")
    }
}

fn block2(entries: [&ComplexMatrix; 4], n: usize, w: usize) -> ComplexMatrix {
    let sparse: Vec<Sparse> = entries.iter().map(|m| Sparse::from_dense(m)).collect();
    Sparse::block2([&sparse[0], &sparse[1], &sparse[2], &sparse[3]]).to_dense(vec![2, n, w])
}

struct Factory {
    n: usize,
    w: usize,
    s_minus: Sparse,
}

impl Factory {
    fn new(params: &QParameters) -> Self {
        let w = window(params);
        Self { n: params.fock_dim, w, s_minus: Sparse::from_dense(&shift(w, -1)) }
    }

    fn legs(&self) -> Vec<usize> {
        vec![2, self.n, self.w]
    }

    /// `(α_t, γ_t)` on `ℂ^N ⊗ ℂ^{2M+1}`.
    fn generators(&self, t: f64) -> (Sparse, Sparse) {
        let (a, g) = rho(self.n, t);
        (Sparse::from_dense(&a).kron(&self.s_minus), Sparse::from_dense(&g).kron(&self.s_minus))
    }

    /// `[[ρ_t(α), −tρ_t(γ)*], [ρ_t(γ), ρ_t(α)*]]`; `U_t` is this times
    /// `1 ⊗ S⁻` on the first block column and `1 ⊗ S⁺` on the second, so
    /// increments of `U_t` are bounded in norm by increments of this matrix.
    fn coefficients(&self, t: f64) -> ComplexMatrix {
        let (a, g) = rho(self.n, t);
        let s = |m: &ComplexMatrix| Sparse::from_dense(m);
        Sparse::block2([&s(&a), &s(&g.adjoint().scale(C64::new(-t, 0.0))), &s(&g), &s(&a.adjoint())])
            .to_dense(vec![2, self.n])
    }

    fn u(&self, t: f64) -> Sparse {
        let (a, g) = self.generators(t);
        let b = g.adjoint().scale(C64::new(-t, 0.0));
        Sparse::block2([&a, &b, &g, &a.adjoint()])
    }

    fn v(&self, t: f64) -> Sparse {
        let (a, g) = self.generators(0.0);
        let (r1, rt) = (C64::new(libm::sqrt(1.0 - t), 0.0), C64::new(libm::sqrt(t), 0.0));
        let one = Sparse::identity(self.n * self.w);
        let lower = g.add(&a.adjoint().mul(&a).scale(rt));
        Sparse::block2([&a.scale(r1), &one.scale(-rt), &lower, &a.adjoint().scale(r1)])
    }

    fn endpoint(&self) -> ComplexMatrix {
        let (a, g) = self.generators(0.0);
        g.add(&a.adjoint().mul(&a)).to_dense(vec![self.n, self.w])
    }
}

fn block_profile(params: &QParameters, w: usize) -> Result<TruncationProfile> {
    TruncationProfile::new(
        vec![2, params.fock_dim, w],
        vec![LegClass::Full, LegClass::Fock, LegClass::Bilateral],
        params.margin,
    )
}

fn unitarity_defect(x: &Sparse, interior: &[bool]) -> f64 {
    let adj = x.adjoint();
    adj.mul(x).interior_identity_defect(interior).max(x.mul(&adj).interior_identity_defect(interior))
}

fn run_path(
    label: PathLabel,
    end: f64,
    exponent: f64,
    options: &PathOptions,
    interior: &[bool],
    f: impl Fn(f64) -> Sparse,
    increment: impl Fn(&Sparse, &Sparse, f64, f64) -> f64,
) -> Result<UnitaryPath> {
    let k = options.samples.max(2);
    let grid: Vec<f64> = (0..k).map(|i| end * i as f64 / (k - 1) as f64).collect();
    let mut defects = Vec::with_capacity(k);
    let mut worst_ratio: f64 = 0.0;
    let mut prev: Option<Sparse> = None;
    for (i, &t) in grid.iter().enumerate() {
        let x = f(t);
        let d = unitarity_defect(&x, interior);
        if d > options.unitarity_tolerance {
            return Err(Error::PathDefect { t, norm: d });
        }
        defects.push(d);
        if let Some(p) = prev {
            let s = grid[i - 1];
            let ratio = increment(&p, &x, s, t) / libm::pow(t - s, exponent);
            worst_ratio = worst_ratio.max(ratio);
            if ratio > options.bound {
                return Err(Error::PathDefect { t, norm: ratio });
            }
        }
        prev = Some(x);
    }
    Ok(UnitaryPath { label, grid, unitarity_defects: defects, exponent, bound: options.bound, max_increment_ratio: worst_ratio })
}

pub fn homotopy_paths(params: &QParameters) -> Result<HomotopySuite> {
    homotopy_paths_with(params, &PathOptions::default())
}

/// `U_t` on `[0, q]` and `V_t` on `[0, 1]`, with the endpoint and
/// fundamental-matrix identifications.
pub fn homotopy_paths_with(params: &QParameters, options: &PathOptions) -> Result<HomotopySuite> {
    params.validate()?;
    if params.margin < 2 {
        return Err(Error::InvalidParameters("bilateral window needs margin at least 2".into()));
    }
    let fac = Factory::new(params);
    let profile = block_profile(params, fac.w)?;
    let mut interior = vec![false; profile.total_dim()];
    for i in profile.interior_indices() {
        interior[i] = true;
    }
    let u_path = run_path(PathLabel::UT, params.q, 1.0, options, &interior, |t| fac.u(t), |_, _, s, t| {
        op_norm(&(&fac.coefficients(t) - &fac.coefficients(s)))
    })?;
    let v_path =
        run_path(PathLabel::VT, 1.0, 0.5, options, &interior, |t| fac.v(t), |a, b, _, _| b.sub(a).norm_bound())?;

    let legs = fac.legs();
    let start_defect = fac.v(0.0).to_dense(legs.clone()).max_abs_diff(&fac.u(0.0).to_dense(legs));

    let space = build_space(SpaceId::Suq2, params)?;
    let rep = |name: &str| -> Result<ComplexMatrix> {
        match &space.generator(name)?.a2 {
            crate::Element::Tensor(t) => bilateral_rep(t, params),
            _ => Err(Error::KindMismatch("generator is not a tensor".into())),
        }
    };
    let (alpha, gamma) = (rep("alpha")?, rep("gamma")?);
    let fundamental =
        block2([&alpha, &gamma.adjoint().scale(C64::new(-params.q, 0.0)), &gamma, &alpha.adjoint()], fac.n, fac.w);
    let funrep_defect = fac.u(params.q).to_dense(fac.legs()).max_abs_diff(&fundamental);

    let endpoint = fac.endpoint();
    let wt = match &w_tilde(params)?.a2 {
        crate::Element::Tensor(t) => bilateral_rep(t, params)?,
        _ => return Err(Error::KindMismatch("w̃ is not a tensor".into())),
    };
    let inner = TruncationProfile::new(vec![fac.n, fac.w], vec![LegClass::Fock, LegClass::Bilateral], params.margin)?;
    let endpoint_defect = compress_interior(&(&endpoint - &wt), &inner)?.max_abs();

    Ok(HomotopySuite { params: *params, u_path, v_path, endpoint, endpoint_defect, funrep_defect, start_defect })
}

impl HomotopySuite {
    /// Regenerates one sample of a path.
    pub fn sample(&self, label: &PathLabel, t: f64) -> Option<ComplexMatrix> {
        let fac = Factory::new(&self.params);
        match label {
            PathLabel::UT => Some(fac.u(t).to_dense(fac.legs())),
            PathLabel::VT => Some(fac.v(t).to_dense(fac.legs())),
            PathLabel::Custom(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let p = QParameters::new(0.5, 12, 4, 2).unwrap();
        let s = homotopy_paths_with(&p, &PathOptions { samples: 17, ..PathOptions::default() }).unwrap();
        assert_eq!(s.start_defect, 0.0);
        assert_eq!(s.funrep_defect, 0.0);
        assert_eq!(s.endpoint_defect, 0.0);
        assert!(s.u_path.max_unitarity_defect() <= 1e-10);
        assert!(s.v_path.max_unitarity_defect() <= 1e-10);
        assert_eq!(s.u_path.grid.len(), 17);
    }

    #[test]
    fn margin_one_is_rejected() {
        let p = QParameters::new(0.5, 12, 4, 1).unwrap();
        assert!(matches!(homotopy_paths(&p), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn tight_bound_reports_first_failing_sample() {
        let p = QParameters::new(0.5, 12, 4, 2).unwrap();
        let opts = PathOptions { samples: 9, bound: 1e-3, unitarity_tolerance: 1e-10 };
        match homotopy_paths_with(&p, &opts) {
            Err(Error::PathDefect { t, .. }) => assert!(t > 0.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bilateral_shift_of_u_star() {
        let p = QParameters::new(0.5, 8, 3, 2).unwrap();
        let t = Tensor::from_laurent(&crate::LaurentElement::u(-1), true);
        let m = bilateral_rep(&t, &p).unwrap();
        assert_eq!(m, shift(7, -1));
    }
}
