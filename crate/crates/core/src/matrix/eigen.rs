//! Cyclic Jacobi eigensolver for Hermitian matrices.

use alloc::vec::Vec;

use super::ComplexMatrix;
use crate::C64;

#[derive(Clone, Debug, PartialEq)]
pub struct SelfadjointDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Columns are eigenvectors; first nonzero entry of each is real positive.
    pub eigenvectors: ComplexMatrix,
}

impl SelfadjointDecomposition {
    /// `V Λ V*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v.get(i, k) * self.eigenvalues[k] * v.get(j, k).conj()).sum()
        })
    }
}

/// Eigendecomposition of a Hermitian matrix (only the upper triangle's
/// Hermitian part is meaningful; the input is symmetrized first).
pub fn eigh(m: &ComplexMatrix) -> SelfadjointDecomposition {
    assert!(m.is_square(), "eigh needs a square matrix");
    let n = m.rows();
    let mut a: Vec<C64> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            a.push((m.get(i, j) + m.get(j, i).conj()) * 0.5);
        }
    }
    let mut v: Vec<C64> = (0..n * n)
        .map(|k| if k / n == k % n { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
        .collect();

    let total: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    let eps = f64::EPSILON * f64::EPSILON * total.max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q].norm_sqr();
            }
        }
        if off <= eps {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 || r * r <= eps / ((n * n) as f64) {
                    continue;
                }
                let w = apq / r;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + libm::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                // G = [[c, s], [-s w̄, c w̄]] on coordinates (p, q).
                let wc = w.conj();
                let g_pp = C64::new(c, 0.0);
                let g_pq = C64::new(s, 0.0);
                let g_qp = -wc * s;
                let g_qq = wc * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * g_pp + akq * g_qp;
                    a[k * n + q] = akp * g_pq + akq * g_qq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = g_pp.conj() * apk + g_qp.conj() * aqk;
                    a[q * n + k] = g_pq.conj() * apk + g_qq.conj() * aqk;
                }
                a[p * n + q] = C64::new(0.0, 0.0);
                a[q * n + p] = C64::new(0.0, 0.0);
                a[p * n + p] = C64::new(a[p * n + p].re, 0.0);
                a[q * n + q] = C64::new(a[q * n + q].re, 0.0);
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * g_pp + vkq * g_qp;
                    v[k * n + q] = vkp * g_pq + vkq * g_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re).then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let phase = (0..n)
            .map(|k| v[k * n + src])
            .find(|z| z.norm() > 1e-12)
            .map(|z| z.conj() / z.norm())
            .unwrap_or(C64::new(1.0, 0.0));
        for k in 0..n {
            vectors.set(k, col, v[k * n + src] * phase);
        }
    }
    SelfadjointDecomposition { eigenvalues, eigenvectors: vectors }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_input_sorted() {
        let m = ComplexMatrix::diagonal(&[C64::new(3.0, 0.0), C64::new(-1.0, 0.0), C64::new(2.0, 0.0)]);
        let d = eigh(&m);
        assert_eq!(d.eigenvalues, alloc::vec![-1.0, 2.0, 3.0]);
        assert!(d.reconstruct().max_abs_diff(&m) < 1e-14);
    }

    #[test]
    fn complex_two_by_two() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let m = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => C64::new(0.0, 1.0),
            (1, 0) => C64::new(0.0, -1.0),
            _ => C64::new(1.0, 0.0),
        });
        let d = eigh(&m);
        assert!((d.eigenvalues[0]).abs() < 1e-14);
        assert!((d.eigenvalues[1] - 2.0).abs() < 1e-14);
        assert!(d.reconstruct().max_abs_diff(&m) < 1e-14);
        for k in 0..2 {
            assert!(d.eigenvectors.get(0, k).im.abs() < 1e-15);
            assert!(d.eigenvectors.get(0, k).re > 0.0);
        }
    }
}
