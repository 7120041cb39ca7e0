use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::laurent::LaurentElement;
use crate::C64;

pub const WINDING_SAMPLES: usize = 1024;
const MIN_MODULUS: f64 = 1e-6;

/// Degree of `z ↦ v(z)` around the origin from summed argument increments.
pub fn winding_number(v: &LaurentElement) -> Result<i64> {
    let samples: alloc::vec::Vec<C64> = (0..WINDING_SAMPLES)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / WINDING_SAMPLES as f64;
            v.eval(C64::new(libm::cos(theta), libm::sin(theta)))
        })
        .collect();
    let min_modulus = samples.iter().fold(f64::INFINITY, |m, z| m.min(z.norm()));
    if min_modulus <= MIN_MODULUS {
        return Err(Error::NotInvertibleOnCircle { min_modulus });
    }
    let mut total = 0.0;
    for j in 0..WINDING_SAMPLES {
        let (a, b) = (samples[j], samples[(j + 1) % WINDING_SAMPLES]);
        let r = b / a;
        total += libm::atan2(r.im, r.re);
    }
    Ok(libm::round(total / (2.0 * PI)) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn examples() {
        assert_eq!(winding_number(&LaurentElement::u(3)).unwrap(), 3);
        assert_eq!(winding_number(&LaurentElement::one()).unwrap(), 0);
        let two_plus_u = LaurentElement::from_terms([(0, c(2.0)), (1, c(1.0))]);
        assert_eq!(winding_number(&two_plus_u).unwrap(), 0);
        let u_plus_half = LaurentElement::from_terms([(0, c(0.5)), (1, c(1.0))]);
        assert_eq!(winding_number(&u_plus_half).unwrap(), 1);
        assert_eq!(winding_number(&LaurentElement::u(-2)).unwrap(), -2);
    }

    #[test]
    fn zeros_on_the_circle_are_rejected() {
        let one_plus_u = LaurentElement::from_terms([(0, c(1.0)), (1, c(1.0))]);
        assert!(matches!(winding_number(&one_plus_u), Err(Error::NotInvertibleOnCircle { .. })));
        assert!(winding_number(&LaurentElement::zero()).is_err());
    }
}
