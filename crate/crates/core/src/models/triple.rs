//! Triples `(t₁, t₂, t₃)` of `T⊗T` elements glued cyclically along their
//! symbol legs: `(σ⊗id)(tᵢ) = flip((id⊗σ)(tᵢ₊₁))`, indices mod 3.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::element::{Element, Tensor};
use crate::error::Result;
use crate::models::spaces::fock_tensor;
use crate::models::QParameters;
use crate::pullback::Morphism;
use crate::ComplexMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzTriple {
    pub name: String,
    pub components: [Element; 3],
}

fn flip(x: &Element) -> Result<Element> {
    x.map_tensor(|t: &Tensor| t.permute_legs(&[1, 0]))
}

impl ToeplitzTriple {
    pub fn new(name: &str, components: [Element; 3]) -> Self {
        Self { name: name.into(), components }
    }

    /// The three Toeplitz-type projections `(1,1,1)`,
    /// `((1−ss*)⊗1, 0, 1⊗(1−ss*))` and `(0, 0, (1−ss*)⊗(1−ss*))`.
    pub fn right_column(params: &QParameters) -> Vec<ToeplitzTriple> {
        let n = params.fock_dim;
        let p0 = ComplexMatrix::unit(n, 0, 0);
        let one = ComplexMatrix::identity(n);
        vec![
            ToeplitzTriple::new("unit", [Element::one(), Element::one(), Element::one()]),
            ToeplitzTriple::new(
                "line_defect",
                [fock_tensor(params, &[p0.clone(), one.clone()]), Element::zero(), fock_tensor(params, &[one, p0.clone()])],
            ),
            ToeplitzTriple::new("corner", [Element::zero(), Element::zero(), fock_tensor(params, &[p0.clone(), p0])]),
        ]
    }

    fn map(&self, f: impl Fn(&Element) -> Result<Element>) -> Result<ToeplitzTriple> {
        let [a, b, c] = &self.components;
        Ok(Self { name: self.name.clone(), components: [f(a)?, f(b)?, f(c)?] })
    }

    pub fn mul(&self, other: &ToeplitzTriple) -> Result<ToeplitzTriple> {
        let mut out = self.clone();
        for i in 0..3 {
            out.components[i] = self.components[i].mul(&other.components[i])?;
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> ToeplitzTriple {
        self.map(|x| Ok(x.adjoint())).expect("adjoint is total")
    }

    /// `1 − p`.
    pub fn complement(&self) -> Result<ToeplitzTriple> {
        self.map(|x| Element::one().sub(x))
    }

    pub fn defect(&self, other: &ToeplitzTriple, margin: usize) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            worst = worst.max(self.components[i].defect(&other.components[i], margin)?);
        }
        Ok(worst)
    }

    pub fn idempotent_defect(&self, margin: usize) -> Result<f64> {
        self.mul(self)?.defect(self, margin)
    }

    pub fn selfadjoint_defect(&self, margin: usize) -> Result<f64> {
        self.adjoint().defect(self, margin)
    }

    /// Largest mismatch of the cyclic gluing conditions.
    pub fn gluing_defect(&self, params: &QParameters) -> Result<f64> {
        let policy = params.lenient_policy();
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            let left = Morphism::Symbol(0).apply(&self.components[i], &policy)?;
            let right = flip(&Morphism::Symbol(1).apply(&self.components[(i + 1) % 3], &policy)?)?;
            worst = worst.max(left.defect(&right, params.margin)?);
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_column_is_glued_projections() {
        let p = QParameters::new(0.5, 16, 8, 2).unwrap();
        for t in ToeplitzTriple::right_column(&p) {
            assert_eq!(t.idempotent_defect(2).unwrap(), 0.0, "{}", t.name);
            assert_eq!(t.selfadjoint_defect(2).unwrap(), 0.0, "{}", t.name);
            assert_eq!(t.gluing_defect(&p).unwrap(), 0.0, "{}", t.name);
        }
    }

    #[test]
    fn broken_gluing_is_detected() {
        let p = QParameters::new(0.5, 16, 8, 2).unwrap();
        let one = ComplexMatrix::identity(16);
        let t = ToeplitzTriple::new("bad", [fock_tensor(&p, &[one.clone(), one]), Element::zero(), Element::zero()]);
        assert!(t.gluing_defect(&p).unwrap() > 0.5);
    }
}
