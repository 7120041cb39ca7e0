use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::element::{Element, ElementMatrix, Layout, Tensor};
use crate::error::{Error, Result};
use crate::matrix::{expm_selfadjoint, ComplexMatrix};
use crate::pullback::{NodeKind, PullbackDiagram, PullbackElement};


const SELFADJOINT_TOLERANCE: f64 = 1e-12;

/// `(I_k, e^{2πiQ})`.
#[derive(Clone, Debug, PartialEq)]
pub struct BottUnitary {
    pub diagram: String,
    pub u1: ElementMatrix,
    pub u2: ElementMatrix,
}

impl BottUnitary {
    pub fn size(&self) -> usize {
        self.u1.size()
    }

    pub fn entry(&self, i: usize, j: usize) -> PullbackElement {
        PullbackElement { diagram: self.diagram.clone(), a1: self.u1.get(i, j).clone(), a2: self.u2.get(i, j).clone() }
    }

    /// `‖u*u − 1‖` and `‖uu* − 1‖` after compression.
    pub fn unitarity_defect(&self, margin: usize) -> Result<f64> {
        let one = ElementMatrix::identity(self.size());
        let a = self.u2.adjoint().mul(&self.u2)?.defect(&one, margin)?;
        Ok(a.max(self.u2.mul(&self.u2.adjoint())?.defect(&one, margin)?))
    }
}

/// Dense block of a circle-constant entry.
fn block_of(x: &Element, layout: &Layout) -> Result<ComplexMatrix> {
    let dim = layout.matrix_dim();
    match x {
        Element::Scalar(c) => Ok(ComplexMatrix::identity(dim).scale(*c)),
        Element::Tensor(t) => {
            if t.terms().any(|(k, _)| k.iter().any(|&d| d != 0)) {
                return Err(Error::KindMismatch("Bott lift must be constant along circle legs".into()));
            }
            Ok(t.eval_circles_at_one())
        }
        Element::Pair(..) => Err(Error::KindMismatch("Bott lift must live on a tensor node".into())),
    }
}

/// `∂₀₁[p] = [(I_k, e^{2πiQ})]` for a selfadjoint lift `Q` of the projection `p`.
pub fn bott_unitary(diagram: &PullbackDiagram, p: &ElementMatrix, q: &ElementMatrix) -> Result<BottUnitary> {
    let layout = match &diagram.right.kind {
        NodeKind::Tensor(l) => l.clone(),
        NodeKind::Pair { .. } => return Err(Error::KindMismatch("Bott map needs a tensor right node".into())),
    };
    let margin = diagram.margin();
    let image = q.map(|x| diagram.project2(x))?;
    let defect = image.defect(p, margin)?;
    if defect > diagram.tolerance {
        return Err(Error::LiftDefect { defect });
    }
    let k = q.size();
    let dim = layout.matrix_dim();
    let blocks: Vec<ComplexMatrix> = q.entries().iter().map(|x| block_of(x, &layout)).collect::<Result<_>>()?;
    let big = ComplexMatrix::from_fn(k * dim, k * dim, |r, c| blocks[(r / dim) * k + c / dim].get(r % dim, c % dim));
    let defect = big.hermitian_defect();
    if defect > SELFADJOINT_TOLERANCE {
        return Err(Error::NotSelfadjoint { defect });
    }
    let e = expm_selfadjoint(&big, 2.0 * PI, SELFADJOINT_TOLERANCE)?;
    let key = vec![0; layout.circle_count()];
    let dims = layout.fock_dims();
    let mut entries = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut m = ComplexMatrix::from_fn(dim, dim, |r, c| e.get(i * dim + r, j * dim + c));
            if !dims.is_empty() {
                m = m.with_legs(dims.clone())?;
            }
            entries.push(Element::Tensor(Tensor::term(layout.clone(), key.clone(), m)?));
        }
    }
    let u2 = ElementMatrix::from_entries(k, entries)?;
    let out = BottUnitary { diagram: diagram.id.clone(), u1: ElementMatrix::identity(k), u2 };
    let defect = out.unitarity_defect(margin)?;
    if defect > 1e-9 {
        return Err(Error::NotInvertible { defect });
    }
    for i in 0..k {
        for j in 0..k {
            let e = out.entry(i, j);
            let defect = diagram.compatibility_defect(&e.a1, &e.a2)?;
            if defect > 1e-9 {
                return Err(Error::Incompatible { defect, tolerance: 1e-9 });
            }
        }
    }
    Ok(out)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Leg;
    use crate::models::{build_space, QParameters, SpaceId};
    use crate::C64;

    fn corner(n: usize, c: f64) -> Element {
        let layout = Layout::new(vec![Leg::fock(n), Leg::circle_charged()]);
        let m = ComplexMatrix::unit(n, 0, 0).scale(C64::new(c, 0.0)).with_legs(vec![n]).unwrap();
        Element::Tensor(Tensor::term(layout, vec![0], m).unwrap())
    }

    #[test]
    fn trivial_cases() {
        let p = QParameters::new(0.5, 16, 8, 2).unwrap();
        let d = build_space(SpaceId::Suq2, &p).unwrap().diagram;
        let zero = ElementMatrix::zeros(1);
        let one = ElementMatrix::identity(1);
        let u = bott_unitary(&d, &zero, &zero).unwrap();
        assert!(u.u2.defect(&one, 2).unwrap() < 1e-12);
        let u = bott_unitary(&d, &one, &one).unwrap();
        assert!(u.u2.defect(&one, 2).unwrap() < 1e-12);
        let q = ElementMatrix::scalar(corner(16, 1.0));
        let u = bott_unitary(&d, &zero, &q).unwrap();
        assert!(u.u2.defect(&one, 2).unwrap() < 1e-12);
    }

    #[test]
    fn half_corner_gives_reflection() {
        let p = QParameters::new(0.5, 16, 8, 2).unwrap();
        let d = build_space(SpaceId::Suq2, &p).unwrap().diagram;
        let one = ElementMatrix::identity(1);
        let q = ElementMatrix::scalar(Element::one().sub(&corner(16, 0.5)).unwrap());
        let u = bott_unitary(&d, &one, &q).unwrap();
        let expect = ElementMatrix::scalar(Element::one().sub(&corner(16, 2.0)).unwrap());
        assert!(u.u2.defect(&expect, 2).unwrap() < 1e-12);
        assert!(u.unitarity_defect(2).unwrap() < 1e-12);
    }

    #[test]
    fn bad_inputs() {
        let p = QParameters::new(0.5, 16, 8, 2).unwrap();
        let d = build_space(SpaceId::Suq2, &p).unwrap().diagram;
        let one = ElementMatrix::identity(1);
        let zero = ElementMatrix::zeros(1);
        assert!(matches!(bott_unitary(&d, &zero, &one), Err(Error::LiftDefect { .. })));
        let layout = Layout::new(vec![Leg::fock(16), Leg::circle_charged()]);
        let s = crate::element::toeplitz_power(16, 1);
        let skew = Element::Tensor(Tensor::term(layout, vec![0], s).unwrap());
        assert!(bott_unitary(&d, &zero, &ElementMatrix::scalar(skew)).is_err());
    }
}
