use alloc::string::String;

use crate::error::Result;
use crate::pullback::{DiagramMorphism, PullbackDiagram};

use super::milnor::{milnor_idempotent, MilnorData, MilnorIdempotent};

#[derive(Clone, Debug, PartialEq)]
pub struct NaturalityReport {
    pub morphism: String,
    /// `p_a` pushed through the induced map.
    pub pushed: MilnorIdempotent,
    /// `p_{a′}` built from the transported data.
    pub recomputed: MilnorIdempotent,
    pub defect: f64,
}

/// Compares `M₂ₙ(φ)(p_a)` with `p_{a′}`, where `a′ = φ₁₂(a)` and the lifts
/// are transported by `φ₂`.
pub fn naturality_check(
    m: &DiagramMorphism,
    source: &PullbackDiagram,
    target: &PullbackDiagram,
    data: &MilnorData,
) -> Result<NaturalityReport> {
    let pa = milnor_idempotent(source, data)?;
    let mut pushed = pa.clone();
    pushed.diagram = target.id.clone();
    for i in 0..pa.size() {
        for j in 0..pa.size() {
            let e = m.induced_map(source, target, &pa.entry(i, j))?;
            pushed.p1.set(i, j, e.a1);
            pushed.p2.set(i, j, e.a2);
        }
    }
    let pol = &source.policy;
    let moved = MilnorData::new(
        target,
        data.a.map(|x| m.phi12.apply(x, pol))?,
        data.a_inv.map(|x| m.phi12.apply(x, pol))?,
        data.c.map(|x| m.phi2.apply(x, pol))?,
        data.d.map(|x| m.phi2.apply(x, pol))?,
    )?;
    let recomputed = milnor_idempotent(target, &moved)?;
    let defect = pushed.defect(&recomputed, target.margin())?;
    Ok(NaturalityReport { morphism: m.id.clone(), pushed, recomputed, defect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::ElementMatrix;
    use crate::ktheory::invariant::k_invariant;
    use crate::ktheory::KInvariant;
    use crate::models::spaces::{morphisms, w, w_tilde};
    use crate::models::{build_space, QParameters, SpaceId};

    #[test]
    fn identity_and_f_u1() {
        let p = QParameters::new(0.5, 16, 8, 2).unwrap();
        let sq = build_space(SpaceId::Cp2q, &p).unwrap().diagram;
        let sh = build_space(SpaceId::Cp2h, &p).unwrap().diagram;
        let data = MilnorData::from_unitary(&sq, ElementMatrix::scalar(w_tilde(&p).unwrap().to_element())).unwrap();

        let id = DiagramMorphism::identity(&sq.id);
        assert_eq!(naturality_check(&id, &sq, &sq, &data).unwrap().defect, 0.0);

        let f = morphisms(&p).into_iter().find(|m| m.id == "f_u1").unwrap();
        let r = naturality_check(&f, &sq, &sh, &data).unwrap();
        assert_eq!(r.defect, 0.0);
        let direct = MilnorData::from_unitary(&sh, ElementMatrix::scalar(w(&p).unwrap().to_element())).unwrap();
        let pw = milnor_idempotent(&sh, &direct).unwrap();
        assert_eq!(r.recomputed.defect(&pw, 2).unwrap(), 0.0);
        assert_eq!(k_invariant(&sh, &r.pushed).unwrap(), KInvariant::new(1, 1));

        let trivial = MilnorData::trivial(&sq, 1);
        let r = naturality_check(&f, &sq, &sh, &trivial).unwrap();
        assert_eq!(r.defect, 0.0);
    }
}
