use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::words::{Letter, WordMatrix, WordTensor};
use crate::element::{Element, ElementMatrix, Layout, Leg, Tensor};
use crate::error::{Error, Result};
use crate::ktheory::bilateral_rep;
use crate::matrix::{ComplexMatrix, LegClass, TruncationProfile};
use crate::models::{build_space, QParameters, SpaceId};
use crate::C64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorepKind {
    /// Diagonal corepresentation `diag(u^{n₁}, …)` of `C(U(1))`.
    U1 { weights: Vec<i64> },
    /// The fundamental matrix `U = [[α, −qγ*], [γ, α*]]` of SU_q(2).
    Suq2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corepresentation {
    pub size: usize,
    pub kind: CorepKind,
    pub unitary: bool,
}

impl Corepresentation {
    pub fn u1(weights: &[i64]) -> Self {
        Self { size: weights.len(), kind: CorepKind::U1 { weights: weights.to_vec() }, unitary: true }
    }

    pub fn suq2_fundamental() -> Self {
        Self { size: 2, kind: CorepKind::Suq2, unitary: true }
    }

    pub fn direct_sum(&self, other: &Corepresentation) -> Result<Corepresentation> {
        match (&self.kind, &other.kind) {
            (CorepKind::U1 { weights: a }, CorepKind::U1 { weights: b }) => {
                let mut w = a.clone();
                w.extend_from_slice(b);
                Ok(Self::u1(&w))
            }
            _ => Err(Error::KindMismatch("direct sums are only formed for U(1) corepresentations".into())),
        }
    }

    /// `ρ(U)` on `ℂ^N ⊗ ℂ^{2M+1}`, blockwise.
    pub fn concrete_suq2(params: &QParameters) -> Result<[ComplexMatrix; 4]> {
        let space = build_space(SpaceId::Suq2, params)?;
        let rep = |name: &str| -> Result<ComplexMatrix> {
            match &space.generator(name)?.a2 {
                Element::Tensor(t) => bilateral_rep(t, params),
                _ => Err(Error::KindMismatch("generator is not a tensor".into())),
            }
        };
        let (a, g) = (rep("alpha")?, rep("gamma")?);
        Ok([a.clone(), g.adjoint().scale(C64::new(-params.q, 0.0)), g, a.adjoint()])
    }
}

/// Values of a cleaving map (already projected to the base) on the
/// coefficients `u_kl`, and of its convolution inverse.
#[derive(Clone, Debug, PartialEq)]
pub enum Coefficients {
    Elements(ElementMatrix),
    Words(WordMatrix),
}

impl Coefficients {
    fn mul(&self, other: &Coefficients) -> Result<Coefficients> {
        match (self, other) {
            (Coefficients::Elements(a), Coefficients::Elements(b)) => Ok(Coefficients::Elements(a.mul(b)?)),
            (Coefficients::Words(a), Coefficients::Words(b)) => Ok(Coefficients::Words(a.mul(b)?)),
            _ => Err(Error::KindMismatch("cleavings of different models".into())),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Coefficients::Elements(m) => m.size(),
            Coefficients::Words(m) => m.size(),
        }
    }

    /// Distance to the identity after compression (and, for words, after
    /// the unitarity relations of `U`).
    fn identity_defect(&self, params: &QParameters) -> Result<f64> {
        match self {
            Coefficients::Elements(m) => m.defect(&ElementMatrix::identity(m.size()), params.margin),
            Coefficients::Words(m) => {
                let reduced = reduce(m, params)?;
                let dim = reduced.get(0, 0).dim();
                Ok(reduced.defect(&WordMatrix::identity(m.size(), dim)))
            }
        }
    }
}

fn h_profile(params: &QParameters) -> Result<TruncationProfile> {
    TruncationProfile::new(
        vec![params.fock_dim, 2 * params.circle_window + 1],
        vec![LegClass::Fock, LegClass::Bilateral],
        params.margin,
    )
}

const WORD_TOLERANCE: f64 = 1e-12;

/// Compresses the matrix coefficients (unless already compressed) and
/// applies the unitarity of `U`.
pub(crate) fn reduce(m: &WordMatrix, params: &QParameters) -> Result<WordMatrix> {
    let profile = h_profile(params)?;
    let full = profile.total_dim();
    m.map(|w| {
        let w = if w.dim() == full { w.compress(&profile)? } else { w.clone() };
        Ok(w.reduce_unitarity(m.size(), WORD_TOLERANCE))
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CleavingOnCorep {
    pub name: String,
    /// Base node the values live in.
    pub target: String,
    pub gamma: Coefficients,
    pub inverse: Coefficients,
}

fn u1_layout() -> Layout {
    Layout::new(vec![Leg::circle(), Leg::circle_charged()])
}

fn u1_entry(weights: &[i64], f: impl Fn(i64) -> [i64; 2]) -> Coefficients {
    let m = ElementMatrix::from_fn(weights.len(), |i, j| {
        if i == j {
            let key = f(weights[i]).to_vec();
            Element::Tensor(Tensor::term(u1_layout(), key, ComplexMatrix::identity(1)).expect("circle legs"))
        } else {
            Element::zero()
        }
    });
    Coefficients::Elements(m)
}

impl CleavingOnCorep {
    /// `γ(x) = x₍₁₎ ⊗ x₍₂₎`.
    pub fn coproduct(corep: &Corepresentation, params: &QParameters) -> Result<Self> {
        let (gamma, inverse) = match &corep.kind {
            CorepKind::U1 { weights } => (u1_entry(weights, |n| [n, n]), u1_entry(weights, |n| [-n, -n])),
            CorepKind::Suq2 => {
                let rho = Corepresentation::concrete_suq2(params)?;
                let star = |i: usize, j: usize| rho[2 * j + i].adjoint();
                let g = WordMatrix::from_fn(2, |k, l| {
                    (0..2).fold(WordTensor::zero(rho[0].rows()), |acc, m| {
                        acc.add(&WordTensor::term(vec![Letter::U(k, m)], rho[2 * m + l].clone()))
                    })
                });
                // γ⁻¹(u_kl) = S(u_ml) ⊗ S(u_km) summed over m.
                let inv = WordMatrix::from_fn(2, |k, l| {
                    (0..2).fold(WordTensor::zero(rho[0].rows()), |acc, m| {
                        acc.add(&WordTensor::term(vec![Letter::Star(m, l)], star(k, m)))
                    })
                });
                (Coefficients::Words(g), Coefficients::Words(inv))
            }
        };
        Ok(Self { name: "coproduct".into(), target: base_name(corep), gamma, inverse })
    }

    /// `γ(x) = 1 ⊗ x`.
    pub fn unit(corep: &Corepresentation, params: &QParameters) -> Result<Self> {
        let (gamma, inverse) = match &corep.kind {
            CorepKind::U1 { weights } => (u1_entry(weights, |n| [0, n]), u1_entry(weights, |n| [0, -n])),
            CorepKind::Suq2 => {
                let rho = Corepresentation::concrete_suq2(params)?;
                let g = WordMatrix::from_fn(2, |k, l| WordTensor::constant(rho[2 * k + l].clone()));
                let inv = WordMatrix::from_fn(2, |k, l| WordTensor::constant(rho[2 * l + k].adjoint()));
                (Coefficients::Words(g), Coefficients::Words(inv))
            }
        };
        Ok(Self { name: "unit".into(), target: base_name(corep), gamma, inverse })
    }

    /// `‖Γ·Γ⁻¹ − 1‖` and `‖Γ⁻¹·Γ − 1‖`.
    pub fn inverse_defect(&self, params: &QParameters) -> Result<f64> {
        let a = self.gamma.mul(&self.inverse)?.identity_defect(params)?;
        Ok(a.max(self.inverse.mul(&self.gamma)?.identity_defect(params)?))
    }
}

fn base_name(corep: &Corepresentation) -> String {
    match corep.kind {
        CorepKind::U1 { .. } => "C(S1)⊗C(S1)".into(),
        CorepKind::Suq2 => "C(SUq(2))⊗C(SUq(2))".into(),
    }
}

/// `a = π₁(Γ₁) · π₂(Γ₂⁻¹)`, verified invertible with inverse
/// `π₂(Γ₂) · π₁(Γ₁⁻¹)`.
pub fn clutching_matrix(c1: &CleavingOnCorep, c2: &CleavingOnCorep, params: &QParameters) -> Result<Coefficients> {
    if c1.target != c2.target {
        return Err(Error::KindMismatch("cleavings over different bases".into()));
    }
    for c in [c1, c2] {
        let defect = c.inverse_defect(params)?;
        if defect > params.compatibility_tolerance(WORD_TOLERANCE) {
            return Err(Error::NotInvertible { defect });
        }
    }
    let reduced = |x: Coefficients| -> Result<Coefficients> {
        Ok(match x {
            Coefficients::Words(m) => Coefficients::Words(reduce(&m, params)?),
            other => other,
        })
    };
    let a = reduced(c1.gamma.mul(&c2.inverse)?)?;
    let a_inv = reduced(c2.gamma.mul(&c1.inverse)?)?;
    let defect = a.mul(&a_inv)?.identity_defect(params)?.max(a_inv.mul(&a)?.identity_defect(params)?);
    if defect > params.compatibility_tolerance(WORD_TOLERANCE) {
        return Err(Error::NotInvertible { defect });
    }
    Ok(a)
}

/// `U ⊗ 1` in the word model on the compressed space.
pub(crate) fn fundamental_words(params: &QParameters) -> Result<WordMatrix> {
    let dim = h_profile(params)?.interior_dim();
    Ok(WordMatrix::from_fn(2, |k, l| WordTensor::term(vec![Letter::U(k, l)], ComplexMatrix::identity(dim))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> QParameters {
        QParameters::new(0.5, 12, 4, 2).unwrap()
    }

    #[test]
    fn u1_clutching_is_u_to_the_n() {
        let p = params();
        let c = Corepresentation::u1(&[3]);
        let a = clutching_matrix(&CleavingOnCorep::coproduct(&c, &p).unwrap(), &CleavingOnCorep::unit(&c, &p).unwrap(), &p)
            .unwrap();
        let expect = Element::Tensor(Tensor::term(u1_layout(), vec![3, 0], ComplexMatrix::identity(1)).unwrap());
        match a {
            Coefficients::Elements(m) => assert_eq!(*m.get(0, 0), expect),
            _ => panic!(),
        }
    }

    #[test]
    fn equal_cleavings_give_identity() {
        let p = params();
        for c in [Corepresentation::u1(&[2, -1]), Corepresentation::suq2_fundamental()] {
            let g = CleavingOnCorep::coproduct(&c, &p).unwrap();
            let a = clutching_matrix(&g, &g, &p).unwrap();
            assert!(a.identity_defect(&p).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn suq2_clutching_is_fundamental_matrix() {
        let p = params();
        let c = Corepresentation::suq2_fundamental();
        let g1 = CleavingOnCorep::coproduct(&c, &p).unwrap();
        let g2 = CleavingOnCorep::unit(&c, &p).unwrap();
        assert!(g1.inverse_defect(&p).unwrap() <= 1e-12);
        assert!(g2.inverse_defect(&p).unwrap() <= 1e-12);
        match clutching_matrix(&g1, &g2, &p).unwrap() {
            Coefficients::Words(a) => assert!(a.defect(&fundamental_words(&p).unwrap()) <= 1e-12),
            _ => panic!(),
        }
    }

    #[test]
    fn mixed_models_are_rejected() {
        let p = params();
        let a = CleavingOnCorep::coproduct(&Corepresentation::u1(&[1]), &p).unwrap();
        let b = CleavingOnCorep::unit(&Corepresentation::suq2_fundamental(), &p).unwrap();
        assert!(clutching_matrix(&a, &b, &p).is_err());
    }
}
