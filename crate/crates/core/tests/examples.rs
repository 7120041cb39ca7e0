use milnor_ktk_core::element::ElementMatrix;
use milnor_ktk_core::hopfgalois::{associated_idempotent, CleavingOnCorep, Corepresentation};
use milnor_ktk_core::ktheory::{
    connecting_class, fiber_rank, homotopy_paths, k_invariant, milnor_idempotent, naturality_check, triple_invariant,
    triple_rank, KInvariant, MilnorData, MilnorIdempotent,
};
use milnor_ktk_core::models::spaces::{corner_projection, morphisms, w, w_tilde};
use milnor_ktk_core::models::{build_space, check_relations, SpaceId, ToeplitzTriple};
use milnor_ktk_core::{Element, Error, QParameters};

fn standard() -> QParameters {
    QParameters::new(0.5, 32, 8, 2).unwrap()
}

#[test]
fn w_tilde_projection_is_diagonal() {
    let p = standard();
    let d = build_space(SpaceId::Cp2q, &p).unwrap().diagram;
    let data = MilnorData::from_unitary(&d, ElementMatrix::scalar(w_tilde(&p).unwrap().to_element())).unwrap();
    let pa = milnor_idempotent(&d, &data).unwrap();
    let corner = d.make_element(Element::zero(), corner_projection(&p)).unwrap();
    assert!(pa.entry(0, 0).defect(&d.unit(), 2).unwrap() <= 1e-14);
    assert!(pa.entry(0, 1).defect(&d.zero(), 2).unwrap() <= 1e-14);
    assert!(pa.entry(1, 0).defect(&d.zero(), 2).unwrap() <= 1e-14);
    assert!(pa.entry(1, 1).defect(&corner, 2).unwrap() <= 1e-14);
}

#[test]
fn connecting_class_of_w_matches_corner() {
    let p = QParameters::new(0.5, 16, 8, 2).unwrap();
    let d = build_space(SpaceId::Cp2h, &p).unwrap().diagram;
    let data = MilnorData::from_unitary(&d, ElementMatrix::scalar(w(&p).unwrap().to_element())).unwrap();
    let corner = MilnorIdempotent::from_element(&d, &d.make_element(Element::zero(), corner_projection(&p)).unwrap()).unwrap();
    let k = connecting_class(&d, &data).unwrap();
    assert_eq!(k, KInvariant::new(0, 1));
    assert_eq!(k, k_invariant(&d, &corner).unwrap());

    let sq = build_space(SpaceId::Cp2q, &p).unwrap().diagram;
    let tilde = MilnorData::from_unitary(&sq, ElementMatrix::scalar(w_tilde(&p).unwrap().to_element())).unwrap();
    let f = morphisms(&p).into_iter().find(|m| m.id == "f_u1").unwrap();
    assert_eq!(naturality_check(&f, &sq, &d, &tilde).unwrap().defect, 0.0);
}

#[test]
fn corner_is_not_associated() {
    let p = QParameters::new(0.5, 16, 8, 2).unwrap();
    let d = build_space(SpaceId::Cp2h, &p).unwrap().diagram;
    let corner = MilnorIdempotent::from_element(&d, &d.make_element(Element::zero(), corner_projection(&p)).unwrap()).unwrap();
    assert_eq!(fiber_rank(&d, &corner).unwrap(), 0);
    assert_eq!(k_invariant(&d, &corner).unwrap().charge, 1);
    let rest = corner.complement().unwrap();
    assert_eq!(fiber_rank(&d, &rest).unwrap(), 1);
    assert_eq!(k_invariant(&d, &rest).unwrap().charge, -1);
}

#[test]
fn right_column() {
    let p = standard();
    let pol = p.lenient_policy();
    let rows = ToeplitzTriple::right_column(&p);
    for t in &rows {
        assert_eq!(t.idempotent_defect(2).unwrap(), 0.0);
        assert_eq!(t.selfadjoint_defect(2).unwrap(), 0.0);
    }
    assert_eq!(triple_invariant(&rows[0], &pol, 32).unwrap(), KInvariant::new(1, 0));
    assert_eq!(triple_rank(&rows[1], &pol).unwrap(), 0);
    assert!(matches!(triple_invariant(&rows[1], &pol, 32), Err(Error::ChargeNotConverged { .. })));
    assert_eq!(triple_invariant(&rows[2], &pol, 32).unwrap(), KInvariant::new(0, 1));
}

#[test]
fn relations_hold_exactly() {
    for q in [0.3, 0.5, 0.9] {
        let p = QParameters::new(q, 16, 8, 2).unwrap();
        for id in [SpaceId::Suq2, SpaceId::S3h, SpaceId::B4q] {
            let r = check_relations(&build_space(id, &p).unwrap(), &p).unwrap();
            assert!(r.max_defect() <= 1e-12, "{id} at q={q}: {}", r.max_defect());
        }
    }
}

#[test]
fn homotopy_at_three_deformations() {
    for q in [0.3, 0.5, 0.9] {
        let suite = homotopy_paths(&QParameters::new(q, 32, 8, 2).unwrap()).unwrap();
        assert!(suite.u_path.max_unitarity_defect() <= 1e-10);
        assert!(suite.v_path.max_unitarity_defect() <= 1e-10);
        assert_eq!(suite.u_path.grid.len(), 65);
        assert_eq!((suite.funrep_defect, suite.endpoint_defect), (0.0, 0.0));
    }
}

#[test]
fn fundamental_corepresentation() {
    let p = QParameters::new(0.5, 16, 8, 2).unwrap();
    let c = Corepresentation::suq2_fundamental();
    let m = associated_idempotent(&c, &CleavingOnCorep::coproduct(&c, &p).unwrap(), &CleavingOnCorep::unit(&c, &p).unwrap(), &p)
        .unwrap();
    assert!(m.reduced_to_w_tilde);
    assert_eq!(m.invariant, KInvariant::new(1, 1));
}
