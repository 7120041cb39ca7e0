use milnor_ktk_core::element::toeplitz_power;
use milnor_ktk_core::models::spaces::{morphisms as diagram_morphisms, w_tilde};
use milnor_ktk_core::models::{
    build_space, check_relations, domain_letters, hom_defect, map_apply, symbol_extract, word, MapName, SpaceId,
};
use milnor_ktk_core::pullback::Morphism;
use milnor_ktk_core::{ComplexMatrix, Element, Error, LaurentElement, Layout, Leg, QParameters, Tensor, C64};
use rayon::prelude::*;

use super::random::{stream, word as random_word};
use super::{Context, Recorder};
use crate::config::SuiteId;
use crate::report::CheckResult;

const WORD_PAIRS: usize = 20;

pub fn relations(ctx: &Context) -> Vec<CheckResult> {
    let jobs = [
        (SpaceId::Suq2, ctx.params),
        (SpaceId::S3h, ctx.params),
        (SpaceId::B4q, ctx.params),
        (SpaceId::S5q, ctx.plane),
        (SpaceId::S5h, ctx.plane),
        (SpaceId::Cp2q, ctx.plane),
        (SpaceId::Cp2h, ctx.plane),
    ];
    jobs.par_iter()
        .flat_map_iter(|(id, p)| {
            let mut r = Recorder::new(SuiteId::Relations, p);
            let report = build_space(*id, p).and_then(|s| Ok((check_relations(&s, p)?, s.diagram.tolerance)));
            match report {
                Ok((report, diagram_tol)) => {
                    let tol = if matches!(id, SpaceId::Suq2 | SpaceId::S3h | SpaceId::B4q) { ctx.exact() } else { diagram_tol };
                    for rel in report.relations {
                        r.defect(&format!("{id}/{}", rel.name), Ok(rel.defect), tol, &rel.relation);
                    }
                }
                Err(e) => r.defect(&format!("{id}/build"), Err(e), 0.0, "generators and relations"),
            }
            r.finish()
        })
        .collect()
}

pub fn symbol(ctx: &Context) -> Vec<CheckResult> {
    let p = &ctx.params;
    let n = p.fock_dim;
    let mut r = Recorder::new(SuiteId::Symbol, p);
    for k in -3..=3 {
        let got = symbol_extract(&toeplitz_power(n, k), p).map(|s| s.max_abs_diff(&LaurentElement::u(k)));
        r.defect(&format!("shift_power_{k:+}"), got, ctx.exact(), "σ(s^k) = u^k");
    }
    let s = toeplitz_power(n, 1);
    let got = symbol_extract(&s.adjoint().matmul(&s), p).map(|x| x.max_abs_diff(&LaurentElement::one()));
    r.defect("isometry", got, ctx.exact(), "σ(s*s) = 1");
    let ramp = ComplexMatrix::diagonal(&(0..n).map(|i| C64::new(i as f64, 0.0)).collect::<Vec<_>>());
    r.rejects("unstable_diagonal_rejected", symbol_extract(&ramp, p), |e| matches!(e, Error::SymbolUnstable { .. }), "σ is defined on Toeplitz-type operators only");
    let got = w_tilde(p).and_then(|w| map_apply(MapName::Sigma, &w.a2, p)?.defect(&Element::one(), p.margin));
    r.defect("w_tilde_right_symbol", got, ctx.exact(), "(σ⊗id)(ss*⊗1+(1−ss*)⊗u*) = 1");
    r.finish()
}

fn shift_element(n: usize) -> Element {
    let layout = Layout::new(vec![Leg::fock_charged(n), Leg::circle_charged()]);
    let mut acc = Element::zero();
    for (k, j) in [(2, 3), (-1, 0), (0, -2)] {
        let t = Tensor::term(layout.clone(), vec![j], toeplitz_power(n, k)).expect("one Fock leg");
        acc = acc.add(&Element::Tensor(t)).expect("same layout");
    }
    acc
}

pub fn gauge(ctx: &Context) -> Vec<CheckResult> {
    let p = &ctx.params;
    let n = p.fock_dim;
    let mut r = Recorder::new(SuiteId::Gauge, p);
    let layout = Layout::new(vec![Leg::fock_charged(n), Leg::circle_charged()]);
    let x = Element::Tensor(Tensor::term(layout, vec![3], toeplitz_power(n, 2)).expect("one Fock leg"));
    let shifted = map_apply(MapName::Kappa, &x, p).map(|y| {
        let t = y.as_tensor().expect("kappa keeps tensors").clone();
        (t.term_count(), t.coefficient(&[5]).is_some())
    });
    r.equal("degree_shift", shifted, (1, true), "κ(a⊗u^k) = a⊗u^{k+deg a}");

    let forward = Morphism::Kappa { h: 1, others: vec![0], inverse: false };
    let back = Morphism::Kappa { h: 1, others: vec![0], inverse: true };
    let pol = p.lenient_policy();
    let y = shift_element(n);
    let round = forward.apply(&y, &pol).and_then(|z| back.apply(&z, &pol)).and_then(|z| z.defect(&y, p.margin));
    r.defect("inverse_round_trip", round, 0.0, "κ⁻¹κ = id");

    match build_space(SpaceId::S3h, p) {
        Ok(s) => {
            for (name, g) in &s.generators {
                r.defect(
                    &format!("compatible_{name}"),
                    s.diagram.compatibility_defect(&g.a1, &g.a2),
                    ctx.exact(),
                    "κ∘(id⊗σ) agrees with σ⊗id on the generators",
                );
            }
        }
        Err(e) => r.defect("s3h_build", Err(e), 0.0, "generators and relations"),
    }
    r.rejects("pairs_rejected", map_apply(MapName::Kappa, &Element::pair(x.clone(), x), p), |e| matches!(e, Error::KindMismatch(_)), "κ acts on graded tensors");
    r.finish()
}

fn star_hom(ctx: &Context, name: MapName) -> Vec<CheckResult> {
    let p = if name == MapName::F { ctx.plane } else { ctx.params };
    let mut r = Recorder::new(SuiteId::Morphisms, &p);
    let mut rng = stream(ctx.config.seed, name.as_str());
    let result = domain_letters(name, &p).and_then(|letters| {
        let mut worst: f64 = 0.0;
        for _ in 0..WORD_PAIRS {
            let x = word(&letters, &random_word(&mut rng, letters.len(), 4))?;
            let y = word(&letters, &random_word(&mut rng, letters.len(), 4))?;
            worst = worst.max(hom_defect(name, &x, &y, &p)?);
        }
        Ok(worst)
    });
    r.defect(&format!("star_hom/{name}"), result, ctx.spectral(), "f(xy) = f(x)f(y), f(x*) = f(x)*");
    r.finish()
}

fn square(ctx: &Context, id: &str) -> Vec<CheckResult> {
    let p: QParameters = if id == "nu" { ctx.params } else { ctx.plane };
    let mut r = Recorder::new(SuiteId::Morphisms, &p);
    let result = diagram_morphisms(&p)
        .into_iter()
        .find(|m| m.id == id)
        .ok_or_else(|| Error::UnknownDiagram(id.to_string()))
        .and_then(|m| {
            let source = build_space(m.source.parse()?, &p)?;
            let target = build_space(m.target.parse()?, &p)?;
            let gens: Vec<_> = source.generators.iter().map(|(_, g)| g.clone()).collect();
            m.square_defect(&source.diagram, &target.diagram, &gens)
        });
    r.defect(&format!("square/{id}"), result, p.compatibility_tolerance(ctx.exact()), "φ₁₂∘πᵢ = ρᵢ∘φᵢ");
    r.finish()
}

pub fn morphisms(ctx: &Context) -> Vec<CheckResult> {
    let maps: Vec<Vec<CheckResult>> = MapName::ALL.par_iter().map(|&m| star_hom(ctx, m)).collect();
    let squares: Vec<Vec<CheckResult>> = ["nu", "f", "f_u1"].par_iter().map(|id| square(ctx, id)).collect();
    maps.into_iter().chain(squares).flatten().collect()
}
