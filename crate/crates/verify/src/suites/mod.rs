//! Verification suites. Each suite returns its checks in any order; the
//! report sorts them.

use std::fmt::Debug;

use milnor_ktk_core::{QParameters, Result as CoreResult};

use crate::config::{RunConfig, SuiteId};
use crate::report::{CheckParams, CheckResult, Status};
use crate::VerifyError;

mod algebra;
mod classes;
mod clutching;
mod numeric;
pub(crate) mod random;

/// Shared inputs of every suite.
#[derive(Clone, Debug)]
pub struct Context {
    pub config: RunConfig,
    pub params: QParameters,
    pub plane: QParameters,
}

impl Context {
    pub fn new(config: &RunConfig) -> Result<Self, VerifyError> {
        config.validate()?;
        Ok(Self { config: config.clone(), params: config.params()?, plane: config.plane_params()? })
    }

    pub fn exact(&self) -> f64 {
        self.config.tolerance_exact
    }

    pub fn spectral(&self) -> f64 {
        self.config.tolerance_spectral
    }
}

pub fn run_suite(id: SuiteId, ctx: &Context) -> Vec<CheckResult> {
    match id {
        SuiteId::Relations => algebra::relations(ctx),
        SuiteId::Symbol => algebra::symbol(ctx),
        SuiteId::Gauge => algebra::gauge(ctx),
        SuiteId::Morphisms => algebra::morphisms(ctx),
        SuiteId::Milnor => clutching::milnor(ctx),
        SuiteId::Bott => clutching::bott(ctx),
        SuiteId::Homotopy => clutching::homotopy(ctx),
        SuiteId::Clutching => clutching::clutching(ctx),
        SuiteId::ConnectingClass => classes::class_of_w(ctx),
        SuiteId::RightColumn => classes::right_column(ctx),
        SuiteId::Naturality => classes::naturality(ctx),
        SuiteId::NonAssociation => classes::non_association(ctx),
        SuiteId::Index => numeric::index(ctx),
        SuiteId::Properties => numeric::properties(ctx),
    }
}

/// Collects checks of one suite.
pub(crate) struct Recorder {
    suite: SuiteId,
    params: CheckParams,
    out: Vec<CheckResult>,
}

impl Recorder {
    pub fn new(suite: SuiteId, params: &QParameters) -> Self {
        Self { suite, params: params.into(), out: Vec::new() }
    }

    pub fn at(&mut self, params: &QParameters) -> &mut Self {
        self.params = params.into();
        self
    }

    fn push(&mut self, check: &str, status: Status, defect: Option<f64>, anchor: &str, detail: Option<String>) {
        self.out.push(CheckResult {
            suite: self.suite,
            check: check.to_string(),
            status,
            defect,
            params: self.params,
            paper_anchor: anchor.to_string(),
            detail,
        });
    }

    /// Passes iff the computation succeeds with `defect ≤ tol`.
    pub fn defect(&mut self, check: &str, defect: CoreResult<f64>, tol: f64, anchor: &str) {
        match defect {
            Ok(d) => {
                let status = if d <= tol { Status::Pass } else { Status::Fail };
                self.push(check, status, Some(d), anchor, None);
            }
            Err(e) => self.push(check, Status::Fail, None, anchor, Some(e.to_string())),
        }
    }

    /// Exact equality; the defect is 0 or 1.
    pub fn equal<T: PartialEq + Debug>(&mut self, check: &str, got: CoreResult<T>, expected: T, anchor: &str) {
        match got {
            Ok(v) if v == expected => self.push(check, Status::Pass, Some(0.0), anchor, None),
            Ok(v) => self.push(check, Status::Fail, Some(1.0), anchor, Some(format!("got {v:?}, expected {expected:?}"))),
            Err(e) => self.push(check, Status::Fail, None, anchor, Some(e.to_string())),
        }
    }

    /// Passes iff the computation fails with an error accepted by `expect`.
    pub fn rejects<T: Debug>(
        &mut self,
        check: &str,
        got: CoreResult<T>,
        expect: impl Fn(&milnor_ktk_core::Error) -> bool,
        anchor: &str,
    ) {
        match got {
            Err(e) if expect(&e) => self.push(check, Status::Pass, Some(0.0), anchor, Some(e.to_string())),
            Err(e) => self.push(check, Status::Fail, None, anchor, Some(format!("unexpected error: {e}"))),
            Ok(v) => self.push(check, Status::Fail, Some(1.0), anchor, Some(format!("accepted: {v:?}"))),
        }
    }

    /// Attaches a note to the most recent check.
    pub fn note(&mut self, detail: String) {
        if let Some(last) = self.out.last_mut() {
            last.detail = Some(match last.detail.take() {
                Some(d) => format!("{d}; {detail}"),
                None => detail,
            });
        }
    }

    pub fn finish(self) -> Vec<CheckResult> {
        self.out
    }
}
