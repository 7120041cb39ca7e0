use alloc::string::String;

use crate::element::{Element, ElementMatrix};
use crate::error::{Error, Result};
use crate::pullback::{PullbackDiagram, PullbackElement};
use crate::C64;

/// `‖p² − p‖` accepted after compression.
pub const IDEMPOTENT_TOLERANCE: f64 = 1e-9;

fn same_diagram(diagram: &PullbackDiagram, id: &str) -> Result<()> {
    if diagram.id == id {
        Ok(())
    } else {
        Err(Error::KindMismatch(alloc::format!("data for {id} used over {}", diagram.id)))
    }
}

/// An invertible base matrix `a` with right-node lifts `c` of `a` and `d` of
/// `a⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct MilnorData {
    pub diagram: String,
    pub a: ElementMatrix,
    pub a_inv: ElementMatrix,
    pub c: ElementMatrix,
    pub d: ElementMatrix,
}

fn projected_defect(diagram: &PullbackDiagram, lift: &ElementMatrix, target: &ElementMatrix) -> Result<f64> {
    let image = lift.map(|x| diagram.project2(x))?;
    image.defect(target, diagram.margin())
}

impl MilnorData {
    pub fn new(
        diagram: &PullbackDiagram,
        a: ElementMatrix,
        a_inv: ElementMatrix,
        c: ElementMatrix,
        d: ElementMatrix,
    ) -> Result<Self> {
        let defect = projected_defect(diagram, &c, &a)?.max(projected_defect(diagram, &d, &a_inv)?);
        if defect > diagram.tolerance {
            return Err(Error::LiftDefect { defect });
        }
        let inverse = a.mul(&a_inv)?.defect(&ElementMatrix::identity(a.size()), diagram.margin())?;
        if inverse > diagram.tolerance {
            return Err(Error::NotInvertible { defect: inverse });
        }
        Ok(Self { diagram: diagram.id.clone(), a, a_inv, c, d })
    }

    /// Data for a unitary `a`: `a⁻¹ = a*`, `c` the entrywise lift, `d = c*`.
    pub fn from_unitary(diagram: &PullbackDiagram, a: ElementMatrix) -> Result<Self> {
        let c = a.map(|x| diagram.lift(x))?;
        let d = c.adjoint();
        Self::new(diagram, a.clone(), a.adjoint(), c, d)
    }

    pub fn trivial(diagram: &PullbackDiagram, n: usize) -> Self {
        let one = ElementMatrix::identity(n);
        Self { diagram: diagram.id.clone(), a: one.clone(), a_inv: one.clone(), c: one.clone(), d: one }
    }

    pub fn size(&self) -> usize {
        self.a.size()
    }
}

/// A square idempotent over a pullback, stored as its two components.
#[derive(Clone, Debug, PartialEq)]
pub struct MilnorIdempotent {
    pub diagram: String,
    /// Size of the clutching matrix; zero for a projection not built by
    /// [`milnor_idempotent`].
    pub n: usize,
    pub p1: ElementMatrix,
    pub p2: ElementMatrix,
}

impl MilnorIdempotent {
    /// A projection given directly by its components, compatibility verified.
    pub fn from_components(diagram: &PullbackDiagram, p1: ElementMatrix, p2: ElementMatrix) -> Result<Self> {
        let out = Self { diagram: diagram.id.clone(), n: 0, p1, p2 };
        out.verify_compatible(diagram)?;
        Ok(out)
    }

    /// The `1×1` projection `(x₁, x₂)`.
    pub fn from_element(diagram: &PullbackDiagram, x: &PullbackElement) -> Result<Self> {
        same_diagram(diagram, &x.diagram)?;
        Self::from_components(diagram, ElementMatrix::scalar(x.a1.clone()), ElementMatrix::scalar(x.a2.clone()))
    }

    pub fn size(&self) -> usize {
        self.p1.size()
    }

    pub fn entry(&self, i: usize, j: usize) -> PullbackElement {
        PullbackElement { diagram: self.diagram.clone(), a1: self.p1.get(i, j).clone(), a2: self.p2.get(i, j).clone() }
    }

    fn verify_compatible(&self, diagram: &PullbackDiagram) -> Result<()> {
        same_diagram(diagram, &self.diagram)?;
        if self.p1.size() != self.p2.size() {
            return Err(Error::KindMismatch("components of different sizes".into()));
        }
        for (x1, x2) in self.p1.entries().iter().zip(self.p2.entries()) {
            diagram.left.check(x1)?;
            diagram.right.check(x2)?;
            let defect = diagram.compatibility_defect(x1, x2)?;
            if defect > diagram.tolerance {
                return Err(Error::Incompatible { defect, tolerance: diagram.tolerance });
            }
        }
        Ok(())
    }

    pub fn idempotent_defect(&self, margin: usize) -> Result<f64> {
        let d1 = self.p1.mul(&self.p1)?.defect(&self.p1, margin)?;
        Ok(d1.max(self.p2.mul(&self.p2)?.defect(&self.p2, margin)?))
    }

    pub fn selfadjoint_defect(&self, margin: usize) -> Result<f64> {
        let d1 = self.p1.adjoint().defect(&self.p1, margin)?;
        Ok(d1.max(self.p2.adjoint().defect(&self.p2, margin)?))
    }

    /// Entrywise distance to `other` after compression.
    pub fn defect(&self, other: &MilnorIdempotent, margin: usize) -> Result<f64> {
        Ok(self.p1.defect(&other.p1, margin)?.max(self.p2.defect(&other.p2, margin)?))
    }

    pub fn direct_sum(&self, other: &MilnorIdempotent) -> Result<MilnorIdempotent> {
        if self.diagram != other.diagram {
            return Err(Error::KindMismatch("direct sum across diagrams".into()));
        }
        Ok(Self {
            diagram: self.diagram.clone(),
            n: self.n + other.n,
            p1: self.p1.direct_sum(&other.p1),
            p2: self.p2.direct_sum(&other.p2),
        })
    }

    /// `1 − p`.
    pub fn complement(&self) -> Result<MilnorIdempotent> {
        let one = ElementMatrix::identity(self.size());
        Ok(Self { diagram: self.diagram.clone(), n: 0, p1: one.sub(&self.p1)?, p2: one.sub(&self.p2)? })
    }

    /// Applies `f` to every entry of both components.
    pub fn map(
        &self,
        diagram: &str,
        mut f1: impl FnMut(&Element) -> Result<Element>,
        mut f2: impl FnMut(&Element) -> Result<Element>,
    ) -> Result<MilnorIdempotent> {
        Ok(Self { diagram: diagram.into(), n: self.n, p1: self.p1.map(&mut f1)?, p2: self.p2.map(&mut f2)? })
    }
}

/// `p_a`: blocks `(1, c(2−dc)d)`, `(0, c(2−dc)(1−dc))`, `(0, (1−dc)d)`,
/// `(0, (1−dc)²)`.
pub fn milnor_idempotent(diagram: &PullbackDiagram, data: &MilnorData) -> Result<MilnorIdempotent> {
    same_diagram(diagram, &data.diagram)?;
    let n = data.size();
    let one = ElementMatrix::identity(n);
    let zero = ElementMatrix::zeros(n);
    let (c, d) = (&data.c, &data.d);
    let dc = d.mul(c)?;
    let rest = one.sub(&dc)?;
    let two_minus = one.scale(C64::new(2.0, 0.0)).sub(&dc)?;
    let c2 = c.mul(&two_minus)?;
    let p2 = ElementMatrix::blocks(&c2.mul(d)?, &c2.mul(&rest)?, &rest.mul(d)?, &rest.mul(&rest)?)?;
    let p1 = ElementMatrix::blocks(&one, &zero, &zero, &zero)?;
    let p = MilnorIdempotent { diagram: diagram.id.clone(), n, p1, p2 };
    p.verify_compatible(diagram)?;
    let defect = p.idempotent_defect(diagram.margin())?;
    if defect > IDEMPOTENT_TOLERANCE {
        return Err(Error::NotIdempotent { defect });
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::spaces::{corner_projection, w_lift, w_tilde};
    use crate::models::{build_space, QParameters, SpaceId};

    fn params() -> QParameters {
        QParameters::new(0.5, 16, 8, 2).unwrap()
    }

    #[test]
    fn trivial_data_gives_diag_one_zero() {
        let p = params();
        let s = build_space(SpaceId::Cp2q, &p).unwrap();
        let m = milnor_idempotent(&s.diagram, &MilnorData::trivial(&s.diagram, 1)).unwrap();
        let expect = ElementMatrix::from_fn(2, |i, j| if i == 0 && j == 0 { Element::one() } else { Element::zero() });
        assert_eq!(m.p1, expect);
        assert_eq!(m.p2.defect(&expect, 2).unwrap(), 0.0);
    }

    #[test]
    fn w_tilde_idempotent_has_corner_block() {
        let p = params();
        let s = build_space(SpaceId::Cp2q, &p).unwrap();
        let a = ElementMatrix::scalar(w_tilde(&p).unwrap().to_element());
        let data = MilnorData::from_unitary(&s.diagram, a).unwrap();
        assert_eq!(*data.c.get(0, 0), w_lift(&p));
        let m = milnor_idempotent(&s.diagram, &data).unwrap();
        let expect = ElementMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 0) => Element::one(),
            (1, 1) => corner_projection(&p),
            _ => Element::zero(),
        });
        assert_eq!(m.p2.defect(&expect, 2).unwrap(), 0.0);
        assert_eq!(m.selfadjoint_defect(2).unwrap(), 0.0);
    }

    #[test]
    fn wrong_lift_is_rejected() {
        let p = params();
        let s = build_space(SpaceId::Cp2q, &p).unwrap();
        let a = ElementMatrix::scalar(w_tilde(&p).unwrap().to_element());
        let one = ElementMatrix::identity(1);
        let err = MilnorData::new(&s.diagram, a.clone(), a.adjoint(), one.clone(), one).unwrap_err();
        assert!(matches!(err, Error::LiftDefect { .. }));
    }
}
