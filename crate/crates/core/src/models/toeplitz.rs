use alloc::vec;

use crate::element::ops::toeplitz_power;
use crate::element::{Layout, Leg, Tensor};
use crate::error::{Error, Result};
use crate::laurent::LaurentElement;
use crate::matrix::ComplexMatrix;
use crate::models::QParameters;
use crate::C64;

/// Truncated unilateral shift `s e_n = e_{n+1}`, `s e_{N−1} = 0`.
pub fn toeplitz_shift(params: &QParameters) -> ComplexMatrix {
    toeplitz_power(params.fock_dim, 1)
}

/// Truncated Toeplitz operator of a Laurent polynomial.
pub fn toeplitz_of(v: &LaurentElement, n: usize) -> ComplexMatrix {
    let mut acc = ComplexMatrix::zeros(n, n);
    for (k, c) in v.terms() {
        acc = &acc + &toeplitz_power(n, k).scale(c);
    }
    acc.with_legs(vec![n]).expect("square")
}

/// `(ρ(α), ρ(γ))`: `ρ(α)e_n = √(1−q^{2n}) e_{n−1}`, `ρ(γ)e_n = qⁿ e_n`.
pub fn q_generators(params: &QParameters) -> (ComplexMatrix, ComplexMatrix) {
    let n = params.fock_dim;
    let q = params.q;
    let alpha = ComplexMatrix::from_fn(n, n, |i, j| {
        if j == i + 1 {
            C64::new(libm::sqrt(1.0 - libm::pow(q, 2.0 * j as f64)), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let gamma = ComplexMatrix::diagonal(&(0..n).map(|i| C64::new(libm::pow(q, i as f64), 0.0)).collect::<alloc::vec::Vec<_>>());
    (alpha.with_legs(vec![n]).expect("square"), gamma)
}

/// Symbol of a single-leg Toeplitz-type matrix by interior diagonal
/// averaging, rejecting diagonals that do not stabilize.
pub fn symbol_extract(t: &ComplexMatrix, params: &QParameters) -> Result<LaurentElement> {
    if !t.is_square() || t.rows() != params.fock_dim {
        return Err(Error::KindMismatch("symbol extraction needs an N×N matrix".into()));
    }
    let tensor = Tensor::matrix(Layout::new(vec![Leg::fock(params.fock_dim)]), t.clone())?;
    tensor.symbol_leg(0, &params.strict_policy())?.to_laurent()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{compress_interior, TruncationProfile};

    fn params(q: f64, n: usize) -> QParameters {
        QParameters::new(q, n, 8, 2).unwrap()
    }

    #[test]
    fn shift_examples() {
        let p = QParameters { q: 0.5, fock_dim: 2, circle_window: 2, margin: 1 };
        let s = toeplitz_shift(&p);
        assert_eq!(s, ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]).with_legs(vec![2]).unwrap());

        let p = params(0.5, 16);
        let s = toeplitz_shift(&p);
        let d = &ComplexMatrix::identity(16) - &(&s * &s.adjoint());
        assert_eq!(d.max_abs_diff(&ComplexMatrix::unit(16, 0, 0)), 0.0);
        let prof = TruncationProfile::fock(vec![16], 1).unwrap();
        let e = compress_interior(&(&(&s.adjoint() * &s) - &ComplexMatrix::identity(16)), &prof).unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn symbol_examples() {
        let p = params(0.5, 32);
        let s = toeplitz_shift(&p);
        assert_eq!(symbol_extract(&s, &p).unwrap(), LaurentElement::u(1));
        let (a, g) = q_generators(&p);
        let sa = symbol_extract(&a, &p).unwrap();
        assert!(sa.max_abs_diff(&LaurentElement::u(-1)) <= p.tail_tolerance());
        let sg = symbol_extract(&g, &p).unwrap();
        assert!(sg.max_abs_diff(&LaurentElement::zero()) <= p.tail_tolerance());
        let corner = &ComplexMatrix::identity(32) - &(&s * &s.adjoint());
        let sc = symbol_extract(&corner, &p).unwrap();
        assert!(sc.max_abs_diff(&LaurentElement::zero()) <= 2.0 / 32.0);
    }

    #[test]
    fn q_generator_identities() {
        let p = params(0.5, 16);
        let (a, g) = q_generators(&p);
        for i in 0..16 {
            assert_eq!(g.get(i, i).re, 0.5f64.powi(i as i32));
        }
        let lhs = &(&a.adjoint() * &a) + &(&g.adjoint() * &g);
        assert!(lhs.max_abs_diff(&ComplexMatrix::identity(16)) <= 1e-15);
        let q2 = C64::new(0.25, 0.0);
        let rhs = &(&a * &a.adjoint()) + &(&g * &g.adjoint()).scale(q2);
        let prof = TruncationProfile::fock(vec![16], 1).unwrap();
        let c = compress_interior(&rhs, &prof).unwrap();
        assert!(c.max_abs_diff(&ComplexMatrix::identity(15)) <= 1e-15);
    }

    #[test]
    fn laurent_toeplitz_matches_powers() {
        let v = LaurentElement::from_terms([(2, C64::new(1.0, 0.0)), (-1, C64::new(0.0, 2.0))]);
        let t = toeplitz_of(&v, 10);
        assert_eq!(t.get(2, 0), C64::new(1.0, 0.0));
        assert_eq!(t.get(0, 1), C64::new(0.0, 2.0));
    }
}
