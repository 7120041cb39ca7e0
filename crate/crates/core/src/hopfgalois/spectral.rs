use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::C64;

/// Largest deviation of a root-of-unity average from `0` or `1` that is
/// still snapped.
const SNAP_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralComponentRequest {
    pub element: Element,
    pub degree: i64,
    /// Number of roots of unity averaged over.
    pub order: usize,
}

/// `(1/R) Σ_j λ_j^{d−k}`, which is `1` when `d ≡ k (mod R)` and `0` otherwise.
fn weight(d: i64, k: i64, order: usize) -> Result<bool> {
    let r = order as f64;
    let mut acc = C64::new(0.0, 0.0);
    for j in 0..order {
        acc += C64::from_polar(1.0, 2.0 * PI * j as f64 * (d - k) as f64 / r);
    }
    let w = acc / r;
    if (w - C64::new(1.0, 0.0)).norm() <= SNAP_TOLERANCE {
        Ok(true)
    } else if w.norm() <= SNAP_TOLERANCE {
        Ok(false)
    } else {
        Err(Error::DegreeOverflow { degree: d, order })
    }
}

/// `(1/R) Σ_j λ_j^{−k} α_{λ_j}(a)` over the `R`-th roots of unity. Each
/// homogeneous part is weighted by its character sum, which is exactly `0` or
/// `1`, so the result carries no rounding.
pub fn spectral_component(x: &Element, k: i64, order: usize) -> Result<Element> {
    let top = x.max_charged_degree();
    if order as i64 <= 2 * top.max(k.abs()) {
        return Err(Error::DegreeOverflow { degree: top.max(k.abs()), order });
    }
    let mut out = Element::zero();
    for d in x.degrees_present() {
        if weight(d, k, order)? {
            out = out.add(&x.homogeneous_part(d))?;
        }
    }
    Ok(out)
}

impl SpectralComponentRequest {
    pub fn run(&self) -> Result<Element> {
        spectral_component(&self.element, self.degree, self.order)
    }
}

/// `Σ_k a_k` over the degrees present, for round-trip checks.
pub fn reconstruct(x: &Element, order: usize) -> Result<Element> {
    let degrees: Vec<i64> = x.degrees_present();
    let mut out = Element::zero();
    for k in degrees {
        out = out.add(&spectral_component(x, k, order)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::toeplitz_power;
    use crate::models::spaces::w;
    use crate::models::QParameters;
    use crate::{Layout, Leg, Tensor};

    fn on_charged_leg(m: crate::ComplexMatrix) -> Element {
        Element::Tensor(Tensor::matrix(Layout::new(alloc::vec![Leg::fock_charged(8)]), m).unwrap())
    }

    #[test]
    fn shift_components() {
        let s = on_charged_leg(toeplitz_power(8, 1));
        assert_eq!(spectral_component(&s, 1, 8).unwrap(), s);
        assert!(spectral_component(&s, 0, 8).unwrap().is_zero());
        let s2 = on_charged_leg(toeplitz_power(8, -2));
        let sum = s.add(&s2).unwrap();
        assert_eq!(spectral_component(&sum, 1, 8).unwrap(), s);
        assert_eq!(spectral_component(&sum, -2, 8).unwrap(), s2);
        assert_eq!(reconstruct(&sum, 8).unwrap(), sum);
    }

    #[test]
    fn low_order_overflows() {
        let s = on_charged_leg(toeplitz_power(8, 3));
        assert!(matches!(spectral_component(&s, 3, 6), Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn degree_zero_part_of_w() {
        let p = QParameters::new(0.5, 16, 8, 2).unwrap();
        let w2 = w(&p).unwrap().a2;
        let zero = spectral_component(&w2, 0, 8).unwrap();
        assert_eq!(zero, w2.homogeneous_part(0));
        assert_eq!(zero.degrees_present(), alloc::vec![0]);
        assert!(!spectral_component(&w2, -1, 8).unwrap().is_zero());
    }
}
