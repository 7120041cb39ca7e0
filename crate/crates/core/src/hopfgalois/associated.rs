use alloc::string::String;

use super::corep::{clutching_matrix, fundamental_words, CleavingOnCorep, Coefficients, Corepresentation};
use crate::element::ElementMatrix;
use crate::error::{Error, Result};
use crate::ktheory::{fiber_rank, homotopy_paths, k_invariant, milnor_idempotent, KInvariant, MilnorData, MilnorIdempotent};
use crate::models::spaces::w_tilde;
use crate::models::{build_space, QParameters, SpaceId};

/// The module associated to a corepresentation, presented by the Milnor
/// idempotent of its clutching matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct AssociatedModule {
    pub diagram: String,
    pub clutching: Coefficients,
    /// `‖a − U⊗1‖` for the SU_q(2) model; zero otherwise.
    pub clutching_defect: f64,
    /// Whether the class was carried to `w̃` through the homotopy suite.
    pub reduced_to_w_tilde: bool,
    pub idempotent: MilnorIdempotent,
    pub invariant: KInvariant,
    pub fiber_rank: i64,
}

/// Clutches the two cleavings and computes the invariant of `p_a`.
///
/// U(1) corepresentations are clutched over the SU_q(2) diagram and lifted
/// directly. The SU_q(2) fundamental corepresentation is clutched
/// symbolically; its class is then carried to `w̃` by the homotopy suite and
/// the idempotent is built over the quantum projective plane from the lift
/// of `w̃`.
pub fn associated_idempotent(
    corep: &Corepresentation,
    c1: &CleavingOnCorep,
    c2: &CleavingOnCorep,
    params: &QParameters,
) -> Result<AssociatedModule> {
    let clutching = clutching_matrix(c1, c2, params)?;
    if clutching.size() != corep.size {
        return Err(Error::KindMismatch("cleavings do not match the corepresentation".into()));
    }
    match &clutching {
        Coefficients::Elements(a) => {
            let space = build_space(SpaceId::Suq2, params)?;
            let data = MilnorData::from_unitary(&space.diagram, a.clone())?;
            let p = milnor_idempotent(&space.diagram, &data)?;
            Ok(AssociatedModule {
                diagram: space.diagram.id.clone(),
                clutching_defect: 0.0,
                reduced_to_w_tilde: false,
                invariant: k_invariant(&space.diagram, &p)?,
                fiber_rank: fiber_rank(&space.diagram, &p)?,
                idempotent: p,
                clutching,
            })
        }
        Coefficients::Words(a) => {
            let clutching_defect = a.defect(&fundamental_words(params)?);
            if clutching_defect > params.compatibility_tolerance(1e-12) {
                return Err(Error::LiftDefect { defect: clutching_defect });
            }
            let suite = homotopy_paths(params)?;
            let identification = suite.endpoint_defect.max(suite.funrep_defect).max(suite.start_defect);
            if identification > 0.0 {
                return Err(Error::PathDefect { t: 1.0, norm: identification });
            }
            let space = build_space(SpaceId::Cp2q, params)?;
            let a = ElementMatrix::scalar(w_tilde(params)?.to_element());
            let data = MilnorData::from_unitary(&space.diagram, a)?;
            let p = milnor_idempotent(&space.diagram, &data)?;
            Ok(AssociatedModule {
                diagram: space.diagram.id.clone(),
                clutching_defect,
                reduced_to_w_tilde: true,
                invariant: k_invariant(&space.diagram, &p)?,
                fiber_rank: fiber_rank(&space.diagram, &p)?,
                idempotent: p,
                clutching,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(c: &Corepresentation, p: &QParameters) -> AssociatedModule {
        let g1 = CleavingOnCorep::coproduct(c, p).unwrap();
        let g2 = CleavingOnCorep::unit(c, p).unwrap();
        associated_idempotent(c, &g1, &g2, p).unwrap()
    }

    #[test]
    fn u1_weights() {
        let p = QParameters::new(0.5, 16, 8, 3).unwrap();
        for n in -3..=3 {
            let m = run(&Corepresentation::u1(&[n]), &p);
            assert_eq!(m.invariant, KInvariant::new(1, -n), "weight {n}");
        }
        let sum = run(&Corepresentation::u1(&[1, -2]), &p);
        assert_eq!(sum.invariant, KInvariant::new(2, 1));
        assert_eq!(run(&Corepresentation::u1(&[0]), &p).invariant, KInvariant::new(1, 0));
    }

    #[test]
    fn suq2_fundamental_reduces_to_w_tilde() {
        let p = QParameters::new(0.5, 12, 4, 2).unwrap();
        let m = run(&Corepresentation::suq2_fundamental(), &p);
        assert!(m.reduced_to_w_tilde);
        assert_eq!(m.invariant, KInvariant::new(1, 1));
        assert_eq!(m.fiber_rank, 1);
    }
}
