//! Acceptance criteria, one line each. Every criterion runs the public
//! suites at the stated parameters and tolerances. Runs without the test
//! harness so the lines are printed even when everything passes.

use std::time::{Duration, Instant};

use milnor_ktk::{run, CheckResult, Report, RunConfig, Status, SuiteId};

struct Outcome {
    pass: bool,
    note: String,
}

fn config(suites: &[SuiteId]) -> RunConfig {
    RunConfig { suites: suites.to_vec(), ..RunConfig::default() }
}

fn timed(c: &RunConfig) -> (Report, Duration) {
    let start = Instant::now();
    let report = run(c).expect("valid configuration");
    (report, start.elapsed())
}

fn failures(results: &[&CheckResult]) -> Vec<String> {
    results.iter().filter(|r| r.status != Status::Pass).map(|r| format!("{}/{}", r.suite, r.check)).collect()
}

fn all_pass(results: &[&CheckResult], extra: String) -> Outcome {
    let bad = failures(results);
    if results.is_empty() {
        return Outcome { pass: false, note: "no checks ran".into() };
    }
    let note = if bad.is_empty() { format!("{} checks; {extra}", results.len()) } else { format!("failing: {}", bad.join(", ")) };
    Outcome { pass: bad.is_empty(), note }
}

fn milnor_projection() -> Outcome {
    let (report, took) = timed(&config(&[SuiteId::Milnor]));
    let results: Vec<_> = report.results.iter().collect();
    let entries_exact = results.iter().filter(|r| r.check.starts_with("entry_")).all(|r| r.defect.is_some_and(|d| d <= 1e-14));
    let mut o = all_pass(&results, format!("{took:.2?}"));
    o.pass &= entries_exact && took < Duration::from_secs(5);
    o
}

fn double_equality() -> Outcome {
    let (report, _) = timed(&config(&[SuiteId::ConnectingClass]));
    let results: Vec<_> = report.results.iter().collect();
    let need = ["connecting_class", "corner_class", "class_equals_corner", "transport_of_p_w_tilde", "transport_is_p_w"];
    let mut o = all_pass(&results, "class (0,1) and transport defect 0".into());
    o.pass &= need.iter().all(|n| results.iter().any(|r| r.check == *n));
    o
}

fn homotopy_paths() -> Outcome {
    let mut results = Vec::new();
    let mut took = Duration::ZERO;
    for q in [0.3, 0.5, 0.9] {
        let (report, t) = timed(&RunConfig { q, ..config(&[SuiteId::Homotopy]) });
        took += t;
        results.extend(report.results);
    }
    let refs: Vec<_> = results.iter().collect();
    let unitary = refs.iter().filter(|r| r.check.ends_with("/unitary")).all(|r| r.defect.is_some_and(|d| d <= 1e-10));
    let mut o = all_pass(&refs, format!("{took:.2?} for three values of q"));
    o.pass &= unitary && took < Duration::from_secs(20);
    o
}

fn relations() -> Outcome {
    let mut results = Vec::new();
    for q in [0.3, 0.5, 0.9] {
        for n in [16, 32] {
            let (report, _) = timed(&RunConfig { q, n, ..config(&[SuiteId::Relations]) });
            results.extend(report.results);
        }
    }
    let core: Vec<_> = results
        .iter()
        .filter(|r| ["suq2/", "s3h/", "b4q/"].iter().any(|p| r.check.starts_with(p)))
        .collect();
    let exact = core.iter().all(|r| r.defect.is_some_and(|d| d <= 1e-12));
    let everything: Vec<_> = results.iter().collect();
    let mut o = all_pass(&everything, format!("{} displayed relations at ≤ 1e-12", core.len()));
    o.pass &= exact && !core.is_empty();
    o
}

fn suite(id: SuiteId, filter: impl Fn(&CheckResult) -> bool, extra: &str) -> Outcome {
    let (report, _) = timed(&config(&[id]));
    let results: Vec<_> = report.results.iter().filter(|r| filter(r)).collect();
    all_pass(&results, extra.into())
}

fn properties() -> Outcome {
    let (report, _) = timed(&config(&[SuiteId::Properties, SuiteId::Morphisms]));
    let results: Vec<_> = report.results.iter().collect();
    let hom = results.iter().filter(|r| r.check.starts_with("star_hom/")).count();
    let mut o = all_pass(&results, format!("{hom} maps on random words"));
    o.pass &= hom == 9;
    o
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: Vec<Criterion> = vec![
        ("Milnor projection of w̃ at N=32", milnor_projection),
        ("connecting class of w and its transport", double_equality),
        ("homotopy paths at q = 0.3, 0.5, 0.9", homotopy_paths),
        ("generator relations for q in {0.3, 0.5, 0.9}, N in {16, 32}", relations),
        ("clutching of the fundamental corepresentation", || {
            suite(SuiteId::Clutching, |r| r.check.starts_with("suq2/"), "a = U and invariant (1,1)")
        }),
        ("index and winding", || suite(SuiteId::Index, |_| true, "both methods agree")),
        ("right column triples", || suite(SuiteId::RightColumn, |_| true, "invariants (1,0), (0,·), (0,1)")),
        ("non-association witnesses", || suite(SuiteId::NonAssociation, |_| true, "ranks 0/1, charges 1/−1")),
        ("property suites", properties),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        println!("criterion {}: {} {name} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.note);
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
