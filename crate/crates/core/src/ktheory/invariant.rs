use core::ops::{Add, Neg, Sub};

use crate::element::{Element, ElementMatrix, SymbolPolicy};
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, TruncationProfile};
use crate::models::ToeplitzTriple;
use crate::pullback::{NodeKind, PullbackDiagram};
use crate::C64;

use super::milnor::{MilnorData, MilnorIdempotent, IDEMPOTENT_TOLERANCE};

const RANK_THRESHOLD: f64 = 1e-6;
const ROUNDING_LIMIT: f64 = 0.1;

/// `(rank, charge)` of a projection over a pullback.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct KInvariant {
    pub rank: i64,
    pub charge: i64,
}

impl KInvariant {
    pub const fn new(rank: i64, charge: i64) -> Self {
        Self { rank, charge }
    }
}

impl Add for KInvariant {
    type Output = KInvariant;
    fn add(self, o: KInvariant) -> KInvariant {
        KInvariant::new(self.rank + o.rank, self.charge + o.charge)
    }
}

impl Sub for KInvariant {
    type Output = KInvariant;
    fn sub(self, o: KInvariant) -> KInvariant {
        KInvariant::new(self.rank - o.rank, self.charge - o.charge)
    }
}

impl Neg for KInvariant {
    type Output = KInvariant;
    fn neg(self) -> KInvariant {
        KInvariant::new(-self.rank, -self.charge)
    }
}

/// Scalar image of an element: symbols on every Fock leg, circles at `z = 1`,
/// first component of pairs.
pub fn character(x: &Element, policy: &SymbolPolicy) -> Result<C64> {
    match x {
        Element::Scalar(c) => Ok(*c),
        Element::Pair(a, _) => character(a, policy),
        Element::Tensor(t) => {
            let mut t = t.clone();
            for leg in 0..t.layout().len() {
                if t.layout().legs[leg].is_fock() {
                    t = t.symbol_leg(leg, policy)?;
                }
            }
            let m = t.eval_circles_at_one();
            if m.rows() != 1 {
                return Err(Error::CharacterUndefined);
            }
            Ok(m.get(0, 0))
        }
    }
}

pub fn character_matrix(m: &ElementMatrix, policy: &SymbolPolicy) -> Result<ComplexMatrix> {
    let n = m.size();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, character(m.get(i, j), policy)?);
        }
    }
    Ok(out)
}

/// Rank of the character image of the left component.
pub fn fiber_rank(diagram: &PullbackDiagram, p: &MilnorIdempotent) -> Result<i64> {
    Ok(character_matrix(&p.p1, &diagram.policy)?.rank(RANK_THRESHOLD) as i64)
}

fn interior_dim(kind: &NodeKind, margin: usize) -> Result<usize> {
    match kind {
        NodeKind::Tensor(layout) => {
            let dims = layout.fock_dims();
            if dims.is_empty() {
                Ok(1)
            } else {
                Ok(TruncationProfile::fock(dims, margin)?.interior_dim())
            }
        }
        NodeKind::Pair { .. } => Err(Error::CharacterUndefined),
    }
}

fn diagonal_trace(x: &Element, margin: usize, dim: usize) -> Result<f64> {
    match x {
        Element::Scalar(c) => Ok(c.re * dim as f64),
        Element::Tensor(t) => Ok(t.compressed_trace(margin)?.0.re),
        Element::Pair(..) => Err(Error::CharacterUndefined),
    }
}

/// Rounds `excess(m)` after checking it agrees at margins `m` and `m + 1`.
fn converged_charge(margin: usize, excess: impl Fn(usize) -> Result<f64>) -> Result<i64> {
    let a = excess(margin)?;
    let b = excess(margin + 1)?;
    let (ra, rb) = (libm::round(a), libm::round(b));
    let defect = (a - ra).abs().max((b - rb).abs());
    if ra != rb {
        return Err(Error::ChargeNotConverged { defect: (a - b).abs().max(defect) });
    }
    if defect > ROUNDING_LIMIT {
        return Err(Error::ChargeNotConverged { defect });
    }
    Ok(ra as i64)
}

/// Rank of the character image and trace excess of the right component over
/// `rank · (interior dimension)`.
pub fn k_invariant(diagram: &PullbackDiagram, p: &MilnorIdempotent) -> Result<KInvariant> {
    let margin = diagram.margin();
    let defect = p.idempotent_defect(margin)?;
    if defect > IDEMPOTENT_TOLERANCE {
        return Err(Error::NotIdempotent { defect });
    }
    let rank = fiber_rank(diagram, p)?;
    let charge = converged_charge(margin, |m| {
        let dim = interior_dim(&diagram.right.kind, m)?;
        let mut total = 0.0;
        for i in 0..p.size() {
            total += diagonal_trace(p.p2.get(i, i), m, dim)?;
        }
        Ok(total - (rank as f64) * dim as f64)
    })?;
    Ok(KInvariant { rank, charge })
}

/// `∂₁₀[a] = [p_a] − [I_n]`.
pub fn connecting_class(diagram: &PullbackDiagram, data: &MilnorData) -> Result<KInvariant> {
    let p = super::milnor::milnor_idempotent(diagram, data)?;
    Ok(k_invariant(diagram, &p)? - KInvariant::new(data.size() as i64, 0))
}

fn fock_dim_of(x: &Element, margin: usize) -> Result<Option<usize>> {
    match x {
        Element::Tensor(t) => {
            let dims = t.layout().fock_dims();
            Ok(Some(TruncationProfile::fock(dims, margin)?.interior_dim()))
        }
        Element::Scalar(_) => Ok(None),
        Element::Pair(..) => Err(Error::CharacterUndefined),
    }
}

/// Character rank of a glued triple, read off its first component.
pub fn triple_rank(t: &ToeplitzTriple, policy: &SymbolPolicy) -> Result<i64> {
    let c = character(&t.components[0], policy)?;
    Ok(if c.norm() > RANK_THRESHOLD { 1 } else { 0 })
}

/// `(rank, charge)` of a glued triple; the charge is the total trace excess
/// of the three components.
pub fn triple_invariant(t: &ToeplitzTriple, policy: &SymbolPolicy, fock_dim: usize) -> Result<KInvariant> {
    let margin = policy.margin;
    let defect = t.idempotent_defect(margin)?;
    if defect > IDEMPOTENT_TOLERANCE {
        return Err(Error::NotIdempotent { defect });
    }
    let rank = triple_rank(t, policy)?;
    let charge = converged_charge(margin, |m| {
        let mut total = 0.0;
        for x in &t.components {
            let dim = match fock_dim_of(x, m)? {
                Some(d) => d,
                None => TruncationProfile::fock(alloc::vec![fock_dim, fock_dim], m)?.interior_dim(),
            };
            total += diagonal_trace(x, m, dim)? - rank as f64 * dim as f64;
        }
        Ok(total)
    })?;
    Ok(KInvariant { rank, charge })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktheory::milnor::milnor_idempotent;
    use crate::models::spaces::{corner_projection, w, w_tilde};
    use crate::models::{build_space, QParameters, SpaceId};

    fn params() -> QParameters {
        QParameters::new(0.5, 16, 8, 2).unwrap()
    }

    #[test]
    fn unit_and_corner() {
        let p = params();
        let s = build_space(SpaceId::Cp2h, &p).unwrap();
        let d = &s.diagram;
        let unit = MilnorIdempotent::from_element(d, &d.unit()).unwrap();
        assert_eq!(k_invariant(d, &unit).unwrap(), KInvariant::new(1, 0));
        let corner = d.make_element(Element::zero(), corner_projection(&p)).unwrap();
        let corner = MilnorIdempotent::from_element(d, &corner).unwrap();
        assert_eq!(k_invariant(d, &corner).unwrap(), KInvariant::new(0, 1));
        assert_eq!(k_invariant(d, &corner.complement().unwrap()).unwrap(), KInvariant::new(1, -1));
        let sum = unit.direct_sum(&corner).unwrap();
        assert_eq!(k_invariant(d, &sum).unwrap(), KInvariant::new(1, 1));
    }

    #[test]
    fn milnor_classes() {
        let p = params();
        let sq = build_space(SpaceId::Cp2q, &p).unwrap();
        let a = ElementMatrix::scalar(w_tilde(&p).unwrap().to_element());
        let data = MilnorData::from_unitary(&sq.diagram, a).unwrap();
        let pa = milnor_idempotent(&sq.diagram, &data).unwrap();
        assert_eq!(k_invariant(&sq.diagram, &pa).unwrap(), KInvariant::new(1, 1));
        assert_eq!(fiber_rank(&sq.diagram, &pa).unwrap(), 1);

        let sh = build_space(SpaceId::Cp2h, &p).unwrap();
        let a = ElementMatrix::scalar(w(&p).unwrap().to_element());
        let data = MilnorData::from_unitary(&sh.diagram, a).unwrap();
        assert_eq!(connecting_class(&sh.diagram, &data).unwrap(), KInvariant::new(0, 1));
        let trivial = MilnorData::trivial(&sh.diagram, 1);
        assert_eq!(connecting_class(&sh.diagram, &trivial).unwrap(), KInvariant::new(0, 0));
    }

    #[test]
    fn right_column_triples() {
        let p = params();
        let pol = p.lenient_policy();
        let rows = ToeplitzTriple::right_column(&p);
        assert_eq!(triple_invariant(&rows[0], &pol, 16).unwrap(), KInvariant::new(1, 0));
        assert_eq!(triple_rank(&rows[1], &pol).unwrap(), 0);
        assert!(matches!(triple_invariant(&rows[1], &pol, 16), Err(Error::ChargeNotConverged { .. })));
        assert_eq!(triple_invariant(&rows[2], &pol, 16).unwrap(), KInvariant::new(0, 1));
    }

    #[test]
    fn characters() {
        let pol = params().lenient_policy();
        assert_eq!(character(&Element::real(2.0), &pol).unwrap(), C64::new(2.0, 0.0));
        assert_eq!(character(&corner_projection(&params()), &pol).unwrap(), C64::new(0.0, 0.0));
    }
}
