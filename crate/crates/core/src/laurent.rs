//! Exact Laurent polynomials: the model of C(S¹).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::C64;

/// Finitely supported Fourier coefficients; zero coefficients are not stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LaurentElement {
    coeffs: BTreeMap<i64, C64>,
}

impl LaurentElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, C64::new(1.0, 0.0))
    }

    /// `c·u^k`.
    pub fn monomial(k: i64, c: C64) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    /// The generator power `u^k`.
    pub fn u(k: i64) -> Self {
        Self::monomial(k, C64::new(1.0, 0.0))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C64)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, k: i64, c: C64) {
        let e = self.coeffs.entry(k).or_insert(C64::new(0.0, 0.0));
        *e += c;
        if e.re == 0.0 && e.im == 0.0 {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: i64) -> C64 {
        self.coeffs.get(&k).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Largest `|k|` in the support.
    pub fn max_abs_degree(&self) -> i64 {
        self.coeffs.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    /// Drops coefficients with modulus at most `tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        Self { coeffs: self.coeffs.iter().filter(|(_, c)| c.norm() > tol).map(|(&k, &c)| (k, c)).collect() }
    }

    pub fn adjoint(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(&k, c)| (-k, c.conj())).collect() }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::from_terms(self.terms().map(|(k, a)| (k, a * c)))
    }

    /// Value at a point `z` of the circle (or anywhere in ℂ∖{0}).
    pub fn eval(&self, z: C64) -> C64 {
        self.terms().map(|(k, c)| c * z.powi(k as i32)).sum()
    }

    /// Max coefficient distance.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other).coeffs.values().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.coeffs.keys().copied().collect()
    }
}

impl Add for &LaurentElement {
    type Output = LaurentElement;
    fn add(self, rhs: &LaurentElement) -> LaurentElement {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c);
        }
        out
    }
}

impl Sub for &LaurentElement {
    type Output = LaurentElement;
    fn sub(self, rhs: &LaurentElement) -> LaurentElement {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, -c);
        }
        out
    }
}

impl Mul for &LaurentElement {
    type Output = LaurentElement;
    fn mul(self, rhs: &LaurentElement) -> LaurentElement {
        let mut out = LaurentElement::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &LaurentElement {
    type Output = LaurentElement;
    fn neg(self) -> LaurentElement {
        self.scale(C64::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convolution_product() {
        let a = LaurentElement::from_terms([(0, C64::new(2.0, 0.0)), (1, C64::new(1.0, 0.0))]);
        let b = LaurentElement::from_terms([(-1, C64::new(1.0, 0.0)), (1, C64::new(3.0, 0.0))]);
        let p = &a * &b;
        assert_eq!(p.coeff(-1), C64::new(2.0, 0.0));
        assert_eq!(p.coeff(0), C64::new(1.0, 0.0));
        assert_eq!(p.coeff(1), C64::new(6.0, 0.0));
        assert_eq!(p.coeff(2), C64::new(3.0, 0.0));
        assert_eq!(p.degrees().len(), 4);
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let a = &LaurentElement::u(3) - &LaurentElement::u(3);
        assert!(a.is_zero());
        let unit = &LaurentElement::u(2) * &LaurentElement::u(2).adjoint();
        assert_eq!(unit, LaurentElement::one());
    }
}
