use milnor_ktk_core::element::ElementMatrix;
use milnor_ktk_core::hopfgalois::{associated_idempotent, CleavingOnCorep, Corepresentation};
use milnor_ktk_core::ktheory::{bott_unitary, homotopy_paths, milnor_idempotent, KInvariant, MilnorData, MilnorIdempotent};
use milnor_ktk_core::models::spaces::{corner_projection, w_tilde};
use milnor_ktk_core::models::{build_space, SpaceId};
use milnor_ktk_core::pullback::{PullbackDiagram, PullbackElement};
use milnor_ktk_core::{ComplexMatrix, Element, Error, Layout, Leg, QParameters, Result as CoreResult, Tensor, C64};
use rayon::prelude::*;

use super::{Context, Recorder};
use crate::config::SuiteId;
use crate::report::CheckResult;

/// Entries of `p_{w̃}` are integer combinations of matrix units.
const ENTRY_TOLERANCE: f64 = 1e-14;

const CD_ANCHOR: &str = "cd=ss*⊗1+(1−ss*)⊗1=1⊗1";

fn w_tilde_projection(p: &QParameters) -> CoreResult<(PullbackDiagram, MilnorData, MilnorIdempotent)> {
    let d = build_space(SpaceId::Cp2q, p)?.diagram;
    let data = MilnorData::from_unitary(&d, ElementMatrix::scalar(w_tilde(p)?.to_element()))?;
    let pa = milnor_idempotent(&d, &data)?;
    Ok((d, data, pa))
}

fn describe(d: &PullbackDiagram, x: &PullbackElement, corner: &PullbackElement, margin: usize) -> &'static str {
    let near = |y: &PullbackElement| x.defect(y, margin).map(|e| e <= ENTRY_TOLERANCE).unwrap_or(false);
    if near(&d.unit()) {
        "(1,1)"
    } else if near(&d.zero()) {
        "(0,0)"
    } else if near(corner) {
        "(0,(1−ss*)⊗(1−ss*))"
    } else {
        "?"
    }
}

pub fn milnor(ctx: &Context) -> Vec<CheckResult> {
    let p = &ctx.params;
    let mut r = Recorder::new(SuiteId::Milnor, p);
    let (d, data, pa) = match w_tilde_projection(p) {
        Ok(x) => x,
        Err(e) => {
            r.defect("p_w_tilde", Err(e), 0.0, CD_ANCHOR);
            return r.finish();
        }
    };
    let m = p.margin;
    r.defect("cd_is_one", data.c.mul(&data.d).and_then(|cd| cd.defect(&ElementMatrix::identity(1), m)), ENTRY_TOLERANCE, CD_ANCHOR);
    let corner = match d.make_element(Element::zero(), corner_projection(p)) {
        Ok(c) => c,
        Err(e) => {
            r.defect("corner", Err(e), 0.0, CD_ANCHOR);
            return r.finish();
        }
    };
    let expected = [[d.unit(), d.zero()], [d.zero(), corner.clone()]];
    for (i, row) in expected.iter().enumerate() {
        for (j, want) in row.iter().enumerate() {
            r.defect(&format!("entry_{i}{j}"), pa.entry(i, j).defect(want, m), ENTRY_TOLERANCE, CD_ANCHOR);
        }
    }
    r.defect("idempotent", pa.idempotent_defect(m), ENTRY_TOLERANCE, "p² = p");
    r.defect("selfadjoint", pa.selfadjoint_defect(m), ENTRY_TOLERANCE, "p* = p");
    let blocks: Vec<&str> = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| describe(&d, &pa.entry(i, j), &corner, m)).collect();
    let structure = format!("p = [[{}, {}], [{}, {}]]", blocks[0], blocks[1], blocks[2], blocks[3]);
    r.equal("block_structure", Ok(structure.clone()), "p = [[(1,1), (0,0)], [(0,0), (0,(1−ss*)⊗(1−ss*))]]".to_string(), CD_ANCHOR);
    r.note(structure);
    r.finish()
}

fn fock_corner(n: usize, c: f64) -> Element {
    let layout = Layout::new(vec![Leg::fock(n), Leg::circle_charged()]);
    let m = ComplexMatrix::unit(n, 0, 0).scale(C64::new(c, 0.0)).with_legs(vec![n]).expect("square");
    Element::Tensor(Tensor::term(layout, vec![0], m).expect("one Fock leg"))
}

pub fn bott(ctx: &Context) -> Vec<CheckResult> {
    let p = &ctx.params;
    let n = p.fock_dim;
    let mut r = Recorder::new(SuiteId::Bott, p);
    let d = match build_space(SpaceId::Suq2, p) {
        Ok(s) => s.diagram,
        Err(e) => {
            r.defect("suq2_build", Err(e), 0.0, "exp(2πi Q)");
            return r.finish();
        }
    };
    let (zero, one) = (ElementMatrix::zeros(1), ElementMatrix::identity(1));
    let m = p.margin;
    let trivial = bott_unitary(&d, &one, &one).and_then(|u| u.u2.defect(&one, m));
    r.defect("projection_lift", trivial, ctx.exact(), "Q = p gives exp(2πiQ) = 1");
    let corner = ElementMatrix::scalar(fock_corner(n, 1.0));
    let compact = bott_unitary(&d, &zero, &corner).and_then(|u| u.u2.defect(&one, m));
    r.defect("compact_projection", compact, ctx.exact(), "exp(2πi(1−ss*)) = 1");
    let half = Element::one().sub(&fock_corner(n, 0.5)).map(ElementMatrix::scalar);
    let reflection = Element::one().sub(&fock_corner(n, 2.0)).map(ElementMatrix::scalar);
    let got = half.and_then(|h| {
        let u = bott_unitary(&d, &one, &h)?;
        Ok(u.u2.defect(&reflection?, m)?.max(u.unitarity_defect(m)?))
    });
    r.defect("half_corner_reflection", got, ctx.exact(), "Q = 1 − ½(1−ss*) gives 1 − 2(1−ss*)");
    r.rejects("wrong_lift_rejected", bott_unitary(&d, &zero, &one), |e| matches!(e, Error::LiftDefect { .. }), "π₂(Q) = p");
    r.finish()
}

pub fn homotopy(ctx: &Context) -> Vec<CheckResult> {
    let p = &ctx.params;
    let mut r = Recorder::new(SuiteId::Homotopy, p);
    match homotopy_paths(p) {
        Ok(s) => {
            for (name, path) in [("u_path", &s.u_path), ("v_path", &s.v_path)] {
                r.defect(&format!("{name}/unitary"), Ok(path.max_unitarity_defect()), 1e-10, "U_t, V_t unitary on the interior");
                r.note(format!("{} samples, max unitarity defect {:.3e}", path.grid.len(), path.max_unitarity_defect()));
                r.defect(&format!("{name}/increments"), Ok(path.max_increment_ratio), path.bound, "‖P_t − P_s‖ ≤ C|t − s|^θ");
                r.note(format!("exponent {}", path.exponent));
            }
            r.defect("fundamental_endpoint", Ok(s.funrep_defect), 0.0, "U_q = U");
            r.defect("w_tilde_endpoint", Ok(s.endpoint_defect), 0.0, "γ₀+α₀*α₀ = w̃");
            r.defect("start", Ok(s.start_defect), 0.0, "V₀ = U₀");
        }
        Err(e) => r.defect("paths", Err(e), 0.0, "U_t, V_t unitary on the interior"),
    }
    r.finish()
}

fn run_corep(c: &Corepresentation, p: &QParameters) -> CoreResult<milnor_ktk_core::hopfgalois::AssociatedModule> {
    let g1 = CleavingOnCorep::coproduct(c, p)?;
    let g2 = CleavingOnCorep::unit(c, p)?;
    associated_idempotent(c, &g1, &g2, p)
}

pub fn clutching(ctx: &Context) -> Vec<CheckResult> {
    let p = ctx.params;
    let wide = QParameters { margin: p.margin.max(3), ..p };
    let mut u1: Vec<CheckResult> = (-3i64..=3)
        .into_par_iter()
        .flat_map_iter(|n| {
            let mut r = Recorder::new(SuiteId::Clutching, &wide);
            let got = run_corep(&Corepresentation::u1(&[n]), &wide).map(|m| m.invariant);
            r.equal(&format!("u1_weight_{n:+}"), got, KInvariant::new(1, -n), "Γ₁ = Δ, Γ₂ = 1 give a = u^n");
            r.finish()
        })
        .collect();
    let mut r = Recorder::new(SuiteId::Clutching, &wide);
    let sum = run_corep(&Corepresentation::u1(&[1, -2]), &wide).map(|m| m.invariant);
    r.equal("u1_direct_sum", sum, KInvariant::new(2, 1), "invariants add over direct sums");
    r.at(&p);
    match run_corep(&Corepresentation::suq2_fundamental(), &p) {
        Ok(m) => {
            r.defect("suq2/clutching_is_fundamental", Ok(m.clutching_defect), ctx.exact(), "a = U");
            r.equal("suq2/reduced_to_w_tilde", Ok(m.reduced_to_w_tilde), true, "U is homotopic to diag(w̃, 1)");
            r.equal("suq2/invariant", Ok(m.invariant), KInvariant::new(1, 1), "[p̃] = [L̃₁⊕L̃₋₁]−[1]");
            r.equal("suq2/fiber_rank", Ok(m.fiber_rank), 1, "[p̃] = [L̃₁⊕L̃₋₁]−[1]");
        }
        Err(e) => r.defect("suq2", Err(e), 0.0, "a = U"),
    }
    u1.extend(r.finish());
    u1
}
