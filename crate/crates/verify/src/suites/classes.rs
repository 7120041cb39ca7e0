use milnor_ktk_core::element::ElementMatrix;
use milnor_ktk_core::ktheory::{
    connecting_class, fiber_rank, k_invariant, milnor_idempotent, naturality_check, triple_invariant, triple_rank,
    KInvariant, MilnorData, MilnorIdempotent,
};
use milnor_ktk_core::models::spaces::{corner_projection, morphisms, w, w_tilde};
use milnor_ktk_core::models::{build_space, map_apply, MapName, SpaceId, ToeplitzTriple};
use milnor_ktk_core::pullback::{DiagramMorphism, PullbackDiagram};
use milnor_ktk_core::{Element, Error, QParameters, Result as CoreResult};

use super::{Context, Recorder};
use crate::config::SuiteId;
use crate::report::CheckResult;

const CLASS_ANCHOR: &str = "[L1⊕L−1]−2[1]=∂10([w])=[p]";
const TRANSPORT_ANCHOR: &str = "M2n(φ)(pa)=pa′";
const RIGHT_COLUMN_ANCHOR: &str = "Atiyah–Todd-type and the Toeplitz-type";
const NOT_ASSOCIATED_ANCHOR: &str = "are not associated to";

fn corner(d: &PullbackDiagram, p: &QParameters) -> CoreResult<MilnorIdempotent> {
    MilnorIdempotent::from_element(d, &d.make_element(Element::zero(), corner_projection(p))?)
}

fn f_u1(p: &QParameters) -> CoreResult<DiagramMorphism> {
    morphisms(p).into_iter().find(|m| m.id == "f_u1").ok_or_else(|| Error::UnknownDiagram("f_u1".into()))
}

fn w_tilde_data(sq: &PullbackDiagram, p: &QParameters) -> CoreResult<MilnorData> {
    MilnorData::from_unitary(sq, ElementMatrix::scalar(w_tilde(p)?.to_element()))
}

pub fn class_of_w(ctx: &Context) -> Vec<CheckResult> {
    let p = ctx.plane;
    let mut r = Recorder::new(SuiteId::ConnectingClass, &p);
    let spaces = build_space(SpaceId::Cp2h, &p).and_then(|h| Ok((h.diagram, build_space(SpaceId::Cp2q, &p)?.diagram)));
    let (sh, sq) = match spaces {
        Ok(x) => x,
        Err(e) => {
            r.defect("build", Err(e), 0.0, CLASS_ANCHOR);
            return r.finish();
        }
    };
    let data = w(&p).and_then(|x| MilnorData::from_unitary(&sh, ElementMatrix::scalar(x.to_element())));
    let pw = data.as_ref().map_err(Clone::clone).and_then(|d| milnor_idempotent(&sh, d));
    r.defect("p_w_idempotent", pw.as_ref().map_err(Clone::clone).and_then(|x| x.idempotent_defect(p.margin)), ctx.exact(), "p² = p");
    let class = data.as_ref().map_err(Clone::clone).and_then(|d| connecting_class(&sh, d));
    r.equal("connecting_class", class.clone(), KInvariant::new(0, 1), CLASS_ANCHOR);
    let corner_class = corner(&sh, &p).and_then(|c| k_invariant(&sh, &c));
    r.equal("corner_class", corner_class.clone(), KInvariant::new(0, 1), CLASS_ANCHOR);
    let same = class.and_then(|a| Ok(a == corner_class?));
    r.equal("class_equals_corner", same, true, CLASS_ANCHOR);

    let transport = w_tilde_data(&sq, &p).and_then(|tilde| naturality_check(&f_u1(&p)?, &sq, &sh, &tilde));
    match (transport, pw) {
        (Ok(t), Ok(pw)) => {
            r.defect("transport_of_p_w_tilde", Ok(t.defect), ctx.exact(), TRANSPORT_ANCHOR);
            r.defect("transport_is_p_w", t.recomputed.defect(&pw, p.margin), ctx.exact(), TRANSPORT_ANCHOR);
            r.equal("transported_invariant", k_invariant(&sh, &t.pushed), KInvariant::new(1, 1), TRANSPORT_ANCHOR);
        }
        (Err(e), _) | (_, Err(e)) => r.defect("transport", Err(e), 0.0, TRANSPORT_ANCHOR),
    }
    r.finish()
}

pub fn right_column(ctx: &Context) -> Vec<CheckResult> {
    let p = &ctx.params;
    let n = p.fock_dim;
    let pol = p.lenient_policy();
    let mut r = Recorder::new(SuiteId::RightColumn, p);
    let rows = ToeplitzTriple::right_column(p);
    for t in &rows {
        r.defect(&format!("{}/idempotent", t.name), t.idempotent_defect(p.margin), 0.0, RIGHT_COLUMN_ANCHOR);
        r.defect(&format!("{}/selfadjoint", t.name), t.selfadjoint_defect(p.margin), 0.0, RIGHT_COLUMN_ANCHOR);
        r.defect(&format!("{}/glued", t.name), t.gluing_defect(p), 0.0, RIGHT_COLUMN_ANCHOR);
        r.equal(&format!("{}/rank", t.name), triple_rank(t, &pol), if t.name == "unit" { 1 } else { 0 }, RIGHT_COLUMN_ANCHOR);
    }
    r.equal("unit/invariant", triple_invariant(&rows[0], &pol, n), KInvariant::new(1, 0), RIGHT_COLUMN_ANCHOR);
    r.rejects(
        "line_defect/charge_not_converged",
        triple_invariant(&rows[1], &pol, n),
        |e| matches!(e, Error::ChargeNotConverged { .. }),
        RIGHT_COLUMN_ANCHOR,
    );
    r.equal("corner/invariant", triple_invariant(&rows[2], &pol, n), KInvariant::new(0, 1), RIGHT_COLUMN_ANCHOR);
    r.finish()
}

pub fn naturality(ctx: &Context) -> Vec<CheckResult> {
    let p = ctx.plane;
    let mut r = Recorder::new(SuiteId::Naturality, &p);
    let sq = build_space(SpaceId::Cp2q, &p).map(|s| s.diagram);
    let sh = build_space(SpaceId::Cp2h, &p).map(|s| s.diagram);
    match (sq, sh) {
        (Ok(sq), Ok(sh)) => {
            let id = DiagramMorphism::identity(&sq.id);
            let got = w_tilde_data(&sq, &p).and_then(|d| naturality_check(&id, &sq, &sq, &d)).map(|x| x.defect);
            r.defect("identity", got, 0.0, TRANSPORT_ANCHOR);
            let got = f_u1(&p).and_then(|f| naturality_check(&f, &sq, &sh, &MilnorData::trivial(&sq, 2))).map(|x| x.defect);
            r.defect("f_u1_trivial", got, 0.0, TRANSPORT_ANCHOR);
            let got = w_tilde_data(&sq, &p).and_then(|d| naturality_check(&f_u1(&p)?, &sq, &sh, &d)).map(|x| x.defect);
            r.defect("f_u1_w_tilde", got, ctx.exact(), TRANSPORT_ANCHOR);
        }
        (Err(e), _) | (_, Err(e)) => r.defect("build", Err(e), 0.0, TRANSPORT_ANCHOR),
    }
    let q = ctx.params;
    r.at(&q);
    let got = w_tilde(&q).and_then(|x| map_apply(MapName::Nu, &x.to_element(), &q)?.defect(&w(&q)?.to_element(), q.margin));
    r.defect("nu_w_tilde_is_w", got, 0.0, "ν(w̃) = w");
    r.finish()
}

pub fn non_association(ctx: &Context) -> Vec<CheckResult> {
    let p = ctx.plane;
    let mut r = Recorder::new(SuiteId::NonAssociation, &p);
    let built = build_space(SpaceId::Cp2h, &p).and_then(|s| {
        let c = corner(&s.diagram, &p)?;
        Ok((s.diagram, c))
    });
    match built {
        Ok((d, c)) => {
            let rest = c.complement();
            r.equal("p/fiber_rank", fiber_rank(&d, &c), 0, NOT_ASSOCIATED_ANCHOR);
            r.equal("p/charge", k_invariant(&d, &c).map(|k| k.charge), 1, NOT_ASSOCIATED_ANCHOR);
            let rest_rank = rest.clone().and_then(|x| fiber_rank(&d, &x));
            r.equal("complement/fiber_rank", rest_rank, 1, NOT_ASSOCIATED_ANCHOR);
            let rest_charge = rest.and_then(|x| k_invariant(&d, &x)).map(|k| k.charge);
            r.equal("complement/charge", rest_charge, -1, NOT_ASSOCIATED_ANCHOR);
        }
        Err(e) => r.defect("build", Err(e), 0.0, NOT_ASSOCIATED_ANCHOR),
    }
    r.finish()
}
