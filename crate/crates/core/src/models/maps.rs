//! The named *-homomorphisms between the model algebras.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::element::{toeplitz_power, Element, Layout, Leg, Tensor};
use crate::error::{Error, Result};
use crate::models::spaces::{build_space, nu, nu_then_unit, omega, varpi, SpaceId};
use crate::models::QParameters;
use crate::pullback::Morphism;
use crate::ComplexMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapName {
    /// Symbol map on the first tensor leg.
    Sigma,
    /// `C(SU_q(2)) → C(S¹)`.
    PL,
    /// `C(SU_q(2)) → T⊗C(S¹)`.
    PR,
    /// Gauge shift of the last circle leg by the degree of the other
    /// charged legs.
    Kappa,
    Nu,
    Omega,
    Varpi,
    /// `C(B⁴_q) ⊂ T⊗T`.
    Iota,
    /// `C(S⁵_q) → C(S⁵_H)`.
    F,
}

impl MapName {
    pub const ALL: [MapName; 9] = [
        MapName::Sigma,
        MapName::PL,
        MapName::PR,
        MapName::Kappa,
        MapName::Nu,
        MapName::Omega,
        MapName::Varpi,
        MapName::Iota,
        MapName::F,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MapName::Sigma => "sigma",
            MapName::PL => "pL",
            MapName::PR => "pR",
            MapName::Kappa => "kappa",
            MapName::Nu => "nu",
            MapName::Omega => "omega",
            MapName::Varpi => "varpi",
            MapName::Iota => "iota",
            MapName::F => "f",
        }
    }
}

impl fmt::Display for MapName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MapName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MapName::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::KindMismatch(alloc::format!("unknown map {s}")))
    }
}

fn kappa_for(x: &Element) -> Result<Morphism> {
    let t = match x {
        Element::Tensor(t) => t,
        Element::Scalar(_) => return Ok(Morphism::Identity),
        Element::Pair(..) => return Err(Error::KindMismatch("kappa acts on graded tensors, not pairs".into())),
    };
    let legs = &t.layout().legs;
    let h = legs
        .iter()
        .rposition(|l| !l.is_fock())
        .ok_or_else(|| Error::KindMismatch("kappa needs a circle leg".into()))?;
    let others: Vec<usize> = (0..legs.len()).filter(|&i| i != h && legs[i].charged()).collect();
    Ok(Morphism::Kappa { h, others, inverse: false })
}

/// Applies a named map to an element of its source algebra.
pub fn map_apply(name: MapName, x: &Element, params: &QParameters) -> Result<Element> {
    let policy = params.lenient_policy();
    let n = params.fock_dim;
    let need_pair = |x: &Element| match x {
        Element::Tensor(_) => Err(Error::KindMismatch(alloc::format!("{} expects a pair", name))),
        _ => Ok(()),
    };
    let need_tensor = |x: &Element| match x {
        Element::Pair(..) => Err(Error::KindMismatch(alloc::format!("{} expects a tensor", name))),
        _ => Ok(()),
    };
    match name {
        MapName::Sigma => {
            need_tensor(x)?;
            Morphism::Symbol(0).apply(x, &policy)
        }
        MapName::PL => {
            need_pair(x)?;
            Morphism::First.apply(x, &policy)
        }
        MapName::PR => {
            need_pair(x)?;
            Morphism::Second.apply(x, &policy)
        }
        MapName::Kappa => kappa_for(x)?.apply(x, &policy),
        MapName::Nu => {
            need_pair(x)?;
            nu(n).apply(x, &policy)
        }
        MapName::Omega => {
            need_tensor(x)?;
            omega().apply(x, &policy)
        }
        MapName::Varpi => {
            need_tensor(x)?;
            varpi().apply(x, &policy)
        }
        MapName::Iota => match x {
            Element::Pair(_, b) => Ok((**b).clone()),
            _ => Ok(x.clone()),
        },
        MapName::F => {
            need_pair(x)?;
            Morphism::componentwise(nu_then_unit(n), Morphism::Identity).apply(x, &policy)
        }
    }
}

fn product_letter(legs: &[Leg], key: Vec<i64>, factors: &[ComplexMatrix]) -> Element {
    let m = factors.iter().skip(1).fold(factors[0].clone(), |acc, f| acc.tensor(f));
    Element::Tensor(Tensor::term(Layout::new(legs.to_vec()), key, m).expect("factors match legs"))
}

fn generators_of(id: SpaceId, params: &QParameters) -> Result<Vec<Element>> {
    Ok(build_space(id, params)?.generators.iter().map(|(_, g)| g.to_element()).collect())
}

/// Generators of the source algebra of `name`, closed under adjoints.
///
/// Fock letters are `s` and `1 − ss*` only, so every symbol taken along the
/// way is exact.
pub fn domain_letters(name: MapName, params: &QParameters) -> Result<Vec<Element>> {
    let n = params.fock_dim;
    let s = toeplitz_power(n, 1);
    let one = ComplexMatrix::identity(n);
    let p0 = ComplexMatrix::unit(n, 0, 0);
    let (f, fc, cc) = (Leg::fock(n), Leg::fock_charged(n), Leg::circle_charged());
    let base = match name {
        MapName::Sigma => {
            let legs = [f, cc];
            alloc::vec![
                product_letter(&legs, alloc::vec![1], core::slice::from_ref(&s)),
                product_letter(&legs, alloc::vec![1], &[one]),
                product_letter(&legs, alloc::vec![0], &[p0]),
            ]
        }
        MapName::PL | MapName::PR | MapName::Nu => generators_of(SpaceId::Suq2, params)?,
        MapName::Kappa => {
            let legs = [cc, fc];
            alloc::vec![product_letter(&legs, alloc::vec![1], core::slice::from_ref(&one)), product_letter(&legs, alloc::vec![0], &[s])]
        }
        MapName::Omega | MapName::Varpi => {
            let legs = if name == MapName::Omega { [fc, fc] } else { [f, f] };
            alloc::vec![
                product_letter(&legs, alloc::vec![], &[s.clone(), one.clone()]),
                product_letter(&legs, alloc::vec![], &[one.clone(), s.clone()]),
                product_letter(&legs, alloc::vec![], &[p0, s]),
            ]
        }
        MapName::Iota => generators_of(SpaceId::B4q, params)?,
        MapName::F => generators_of(SpaceId::S5q, params)?,
    };
    let mut out = base.clone();
    out.extend(base.iter().map(Element::adjoint));
    Ok(out)
}

/// Product of the letters picked by `word`.
pub fn word(letters: &[Element], word: &[usize]) -> Result<Element> {
    word.iter().try_fold(Element::one(), |acc, &i| acc.mul(&letters[i]))
}

/// Largest of `‖f(xy) − f(x)f(y)‖`, `‖f(x+y) − f(x) − f(y)‖` and
/// `‖f(x*) − f(x)*‖`, measured after compression.
pub fn hom_defect(name: MapName, x: &Element, y: &Element, params: &QParameters) -> Result<f64> {
    let m = params.margin;
    let fx = map_apply(name, x, params)?;
    let fy = map_apply(name, y, params)?;
    let mult = map_apply(name, &x.mul(y)?, params)?.defect(&fx.mul(&fy)?, m)?;
    let add = map_apply(name, &x.add(y)?, params)?.defect(&fx.add(&fy)?, m)?;
    let star = map_apply(name, &x.adjoint(), params)?.defect(&fx.adjoint(), m)?;
    Ok(mult.max(add).max(star))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{Layout, Leg, Tensor};
    use crate::models::spaces::{w, w_lift, w_tilde};
    use crate::ComplexMatrix;

    fn params() -> QParameters {
        QParameters::new(0.5, 16, 8, 2).unwrap()
    }

    #[test]
    fn nu_sends_w_tilde_to_w() {
        let p = params();
        let image = map_apply(MapName::Nu, &w_tilde(&p).unwrap().to_element(), &p).unwrap();
        assert_eq!(image, w(&p).unwrap().to_element());
    }

    #[test]
    fn varpi_of_c_is_w_tilde() {
        let p = params();
        let image = map_apply(MapName::Varpi, &w_lift(&p), &p).unwrap();
        assert_eq!(image.defect(&w_tilde(&p).unwrap().to_element(), 2).unwrap(), 0.0);
    }

    #[test]
    fn kappa_shifts_by_the_degree() {
        let p = params();
        // a = s² (degree 2) on a charged Fock leg, tensored with u³.
        let lay = Layout::new(alloc::vec![Leg::fock_charged(16), Leg::circle_charged()]);
        let s2 = crate::element::toeplitz_power(16, 2);
        let x = Element::Tensor(Tensor::term(lay.clone(), alloc::vec![3], s2.clone()).unwrap());
        let y = map_apply(MapName::Kappa, &x, &p).unwrap();
        let t = y.as_tensor().unwrap();
        assert!(t.coefficient(&[5]).is_some() && t.term_count() == 1);
        assert!(map_apply(MapName::Kappa, &Element::pair(x.clone(), x), &p).is_err());
    }

    #[test]
    fn maps_respect_short_words() {
        let p = params();
        for name in MapName::ALL {
            let q = if name == MapName::F { QParameters::new(0.5, 8, 4, 2).unwrap() } else { p };
            let letters = domain_letters(name, &q).unwrap();
            let k = letters.len();
            let x = word(&letters, &[0, k - 1]).unwrap();
            let y = word(&letters, &[k / 2, 1 % k]).unwrap();
            assert!(hom_defect(name, &x, &y, &q).unwrap() <= 1e-9, "{name}");
        }
    }

    #[test]
    fn kind_mismatches_are_reported() {
        let p = params();
        let t = Element::Tensor(Tensor::matrix(Layout::new(alloc::vec![Leg::fock(16)]), ComplexMatrix::identity(16)).unwrap());
        assert!(matches!(map_apply(MapName::Nu, &t, &p), Err(Error::KindMismatch(_))));
        assert!("zeta".parse::<MapName>().is_err());
    }
}
