use milnor_ktk_core::element::toeplitz_power;
use milnor_ktk_core::hopfgalois::reconstruct;
use milnor_ktk_core::ktheory::{fredholm_index, milnor_idempotent, winding_number, IndexReport, MilnorData};
use milnor_ktk_core::models::{build_space, toeplitz_of, SpaceId};
use milnor_ktk_core::{QParameters, Result as CoreResult};
use rayon::prelude::*;

use super::random::{circle_unitary, graded_element, invertible_laurent, stream};
use super::{Context, Recorder};
use crate::config::SuiteId;
use crate::report::CheckResult;

const WINDING_PAIRS: usize = 100;
const INDEX_PAIRS: usize = 20;
const GRADED_SAMPLES: usize = 200;
const UNITARY_SAMPLES: usize = 50;
/// Order of the root of unity used for spectral components.
const SPECTRAL_ORDER: usize = 16;

/// Counts failing samples; the defect of a sampled check is that count.
fn failures(results: Vec<CoreResult<bool>>) -> CoreResult<f64> {
    let mut bad = 0usize;
    for r in results {
        if !r? {
            bad += 1;
        }
    }
    Ok(bad as f64)
}

pub fn index(ctx: &Context) -> Vec<CheckResult> {
    let p = &ctx.params;
    let n = p.fock_dim;
    let mut r = Recorder::new(SuiteId::Index, p);
    r.equal("adjoint_shift", fredholm_index(&toeplitz_power(n, -1), p), 1, "index(s*) = 1");
    for k in -3..=3 {
        let got = IndexReport::of(&toeplitz_power(n, k), p).map(|x| (x.by_symbol, x.by_kernel));
        r.equal(&format!("power_{k:+}"), got, (-k, -k), "index(T(u^n)) = −n");
    }
    let mut rng = stream(ctx.config.seed, "winding");
    let pairs: Vec<_> = (0..WINDING_PAIRS).map(|_| (invertible_laurent(&mut rng), invertible_laurent(&mut rng))).collect();
    let got = failures(pairs.iter().map(|((v, k), (w, l))| Ok(winding_number(&(v * w))? == k + l)).collect());
    r.defect("winding_additivity", got, 0.0, "wind(vw) = wind(v) + wind(w)");
    r.note(format!("{WINDING_PAIRS} random pairs"));

    // products are truncated at depth up to the summed degrees
    let wide = QParameters::new(p.q, 48, p.circle_window, 12).expect("fixed sizes are valid");
    r.at(&wide);
    let mut rng = stream(ctx.config.seed, "index");
    let pairs: Vec<_> = (0..INDEX_PAIRS).map(|_| (invertible_laurent(&mut rng), invertible_laurent(&mut rng))).collect();
    let got = failures(
        pairs
            .par_iter()
            .map(|((v, k), (w, l))| {
                let (a, b) = (toeplitz_of(v, 48), toeplitz_of(w, 48));
                Ok(fredholm_index(&(&a * &b), &wide)? == -k - l)
            })
            .collect(),
    );
    r.defect("index_additivity", got, 0.0, "index(T(v)T(w)) = index(T(v)) + index(T(w))");
    r.finish()
}

pub fn properties(ctx: &Context) -> Vec<CheckResult> {
    let p = &ctx.params;
    let mut r = Recorder::new(SuiteId::Properties, p);
    let mut rng = stream(ctx.config.seed, "graded");
    let xs: Vec<_> = (0..GRADED_SAMPLES).map(|_| graded_element(&mut rng, p.fock_dim)).collect();
    let got = failures(xs.par_iter().map(|x| Ok(reconstruct(x, SPECTRAL_ORDER)? == *x)).collect());
    r.defect("spectral_reconstruction", got, 0.0, "x = Σ_k x_k");
    r.note(format!("{GRADED_SAMPLES} random graded elements"));

    let mut rng = stream(ctx.config.seed, "unitaries");
    let inputs: Vec<_> = (0..UNITARY_SAMPLES).map(|_| circle_unitary(&mut rng)).collect();
    let got = build_space(SpaceId::Suq2, p).and_then(|s| {
        let d = s.diagram;
        let defects = inputs
            .into_par_iter()
            .map(|a| {
                let pa = milnor_idempotent(&d, &MilnorData::from_unitary(&d, a)?)?;
                Ok(pa.idempotent_defect(p.margin)?.max(pa.selfadjoint_defect(p.margin)?))
            })
            .collect::<CoreResult<Vec<f64>>>()?;
        Ok(defects.into_iter().fold(0.0, f64::max))
    });
    r.defect("milnor_idempotency", got, ctx.spectral(), "p_a² = p_a");
    r.note(format!("{UNITARY_SAMPLES} random unitaries over C(S¹)⊗C(S¹)"));
    r.finish()
}
