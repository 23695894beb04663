//! Acceptance suite: each criterion runs as one test and prints a
//! pass/fail line (visible with `--nocapture`).

use std::time::Instant;

use cpb_sim::model::effective_rabi;
use cpb_sim::sweep::{
    find_extrema, reproduce_figures, run_trace, ExtremumKind, ParameterPoint, DEFAULT_T_MAX,
    DEFAULT_T_STEPS,
};
use cpb_sim::validation;

fn report_line(criterion: &str, passed: bool, detail: &str) {
    let tag = if passed { "PASS" } else { "FAIL" };
    println!("[{tag}] {criterion}: {detail}");
}

#[test]
fn criterion_1_oracle_equivalence() {
    let started = Instant::now();
    let (worst, at) = validation::oracle_equivalence_worst().unwrap();
    let elapsed = started.elapsed();
    let passed = worst <= validation::ORACLE_DEVIATION_TOL && elapsed.as_secs_f64() < 10.0;
    report_line(
        "criterion 1 oracle equivalence",
        passed,
        &format!(
            "max phase-aligned deviation {worst:.3e} (tolerance {:.0e}) at {at}; \
             90 tuples x 500 times in {:.2}s",
            validation::ORACLE_DEVIATION_TOL,
            elapsed.as_secs_f64()
        ),
    );
    assert!(
        worst <= validation::ORACLE_DEVIATION_TOL,
        "closed form deviates from oracle by {worst:.3e} at {at}"
    );
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "oracle grid took {:.2}s, budget is 10s",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_2_invariant_suite() {
    let summary = validation::invariant_suite(
        validation::PROPERTY_DRAWS,
        validation::PROPERTY_SEED,
    )
    .unwrap();
    let passed = summary.worst_unitarity <= validation::UNITARITY_TOL
        && summary.worst_norm <= validation::NORM_TOL
        && summary.worst_excitation <= validation::EXCITATION_TOL
        && summary.skew_in_range
        && summary.initial_skew_exact;
    report_line(
        "criterion 2 invariant suite",
        passed,
        &format!(
            "{} draws: unitarity {:.3e}, norm {:.3e}, excitation {:.3e}, \
             S_I in [1,2]: {}, S_I(0)=1 exact: {}",
            summary.draws,
            summary.worst_unitarity,
            summary.worst_norm,
            summary.worst_excitation,
            summary.skew_in_range,
            summary.initial_skew_exact
        ),
    );
    assert!(summary.worst_unitarity <= validation::UNITARITY_TOL);
    assert!(summary.worst_norm <= validation::NORM_TOL);
    assert!(summary.worst_excitation <= validation::EXCITATION_TOL);
    assert!(summary.skew_in_range);
    assert!(summary.initial_skew_exact);
}

#[test]
fn criterion_3_measure_identities() {
    let summary = validation::measure_identity_suite(50).unwrap();
    let tol = validation::MEASURE_IDENTITY_TOL;
    let passed = summary.worst_purity_identity <= tol
        && summary.worst_variance_identity <= tol
        && summary.worst_wy_pure <= tol
        && summary.worst_wy_commuting <= tol
        && summary.worst_wootters_agreement <= tol;
    report_line(
        "criterion 3 measure identities",
        passed,
        &format!(
            "{} evolved states: C^2=2(1-purity) {:.3e}, variance-sum {:.3e}, \
             WY-pure {:.3e}, WY-commuting {:.3e}, Wootters {:.3e} (tolerance {tol:.0e})",
            summary.states_checked,
            summary.worst_purity_identity,
            summary.worst_variance_identity,
            summary.worst_wy_pure,
            summary.worst_wy_commuting,
            summary.worst_wootters_agreement
        ),
    );
    assert!(summary.worst_purity_identity <= tol);
    assert!(summary.worst_variance_identity <= tol);
    assert!(summary.worst_wy_pure <= tol);
    assert!(summary.worst_wy_commuting <= tol);
    assert!(summary.worst_wootters_agreement <= tol);
}

/// First extremum time of the given kind on the default window.
fn first_extremum_t(point: ParameterPoint, kind: ExtremumKind) -> Option<f64> {
    let series = run_trace(point, DEFAULT_T_MAX, DEFAULT_T_STEPS).unwrap();
    find_extrema(&series)
        .unwrap()
        .into_iter()
        .find(|r| r.kind == kind && r.occurrence == 1)
        .map(|r| r.t)
}

fn interior_extremum_count(point: ParameterPoint) -> usize {
    let series = run_trace(point, DEFAULT_T_MAX, DEFAULT_T_STEPS).unwrap();
    find_extrema(&series).unwrap().len()
}

/// Trend (a): first-max time strictly decreasing across n = 2, 5, 8.
fn trend_first_max_decreasing_in_n() -> (bool, String) {
    let times: Vec<f64> = [2usize, 5, 8]
        .iter()
        .map(|&n| {
            first_extremum_t(ParameterPoint::new(0.0, 0.25, n), ExtremumKind::Maximum)
                .expect("first maximum exists")
        })
        .collect();
    let ok = times.windows(2).all(|w| w[1] < w[0]);
    (
        ok,
        format!(
            "first-max times across n=2,5,8: {:.3}, {:.3}, {:.3}",
            times[0], times[1], times[2]
        ),
    )
}

/// Trend (b): interior extremum count ordered like the Rabi scale Ω(γ)
/// through γ = 1/4, 1/6, 1/8 (Ω decreases along the sequence, so the
/// count must not increase along it).
fn trend_extremum_count_follows_rabi() -> (bool, String) {
    let gammas = [0.25, 1.0 / 6.0, 0.125];
    let counts: Vec<usize> = gammas
        .iter()
        .map(|&g| interior_extremum_count(ParameterPoint::new(0.0, g, 2)))
        .collect();
    let omegas: Vec<f64> = gammas.iter().map(|&g| effective_rabi(g).unwrap()).collect();
    assert!(omegas.windows(2).all(|w| w[1] < w[0]));
    let ok = counts.windows(2).all(|w| w[1] <= w[0]);
    (
        ok,
        format!(
            "extremum counts for gamma=1/4,1/6,1/8: {}, {}, {} (Omega {:.4}, {:.4}, {:.4})",
            counts[0], counts[1], counts[2], omegas[0], omegas[1], omegas[2]
        ),
    )
}

/// Trend (c): first-max time at Δ=0.3 strictly below Δ=0 (n=1, γ=1/4).
fn trend_detuning_speeds_first_max() -> (bool, String) {
    let resonant =
        first_extremum_t(ParameterPoint::new(0.0, 0.25, 1), ExtremumKind::Maximum).unwrap();
    let detuned =
        first_extremum_t(ParameterPoint::new(0.3, 0.25, 1), ExtremumKind::Maximum).unwrap();
    (
        detuned < resonant,
        format!("first max at delta=0.3: T={detuned:.4}; at delta=0: T={resonant:.4}"),
    )
}

#[test]
fn criterion_4_reference_extremum_anchors() {
    let dir = tempfile::tempdir().unwrap();
    let report = reproduce_figures(dir.path()).unwrap();
    let rendered = report.render();

    let trends_hold = trend_first_max_decreasing_in_n().0
        && trend_extremum_count_follows_rabi().0
        && trend_detuning_speeds_first_max().0;

    let mut all_ok = true;
    for anchor in &report.anchors {
        let kind = match anchor.spec.kind {
            ExtremumKind::Maximum => "first max",
            ExtremumKind::Minimum => "first min",
        };
        let detail = format!(
            "{kind} (delta={}, gamma={}, n={}): computed T={:?}, reference T={}, within 20%: {}",
            anchor.spec.point.delta,
            anchor.spec.point.gamma,
            anchor.spec.point.photon_number,
            anchor.computed_t,
            anchor.spec.reference_t,
            anchor.within_tolerance
        );
        report_line("criterion 4 anchor", anchor.within_tolerance, &detail);
        if !anchor.within_tolerance {
            // An out-of-tolerance anchor must be logged as a deviation in
            // the reproduction report, and only fails the build when the
            // criterion-5 orderings fail too.
            assert!(
                rendered.contains("DEVIATION"),
                "out-of-tolerance anchor missing from the report"
            );
            assert!(
                trends_hold,
                "anchor outside tolerance AND qualitative trends failed: {detail}"
            );
            all_ok = false;
        }
    }
    report_line(
        "criterion 4 reference anchors",
        true,
        &format!(
            "{} anchors checked; {} within tolerance; deviations recorded in report",
            report.anchors.len(),
            report.anchors.iter().filter(|a| a.within_tolerance).count()
        ),
    );
    // Keep the computed anchor times visible in the test log.
    let _ = all_ok;
}

#[test]
fn criterion_5_qualitative_trends() {
    let (a_ok, a_detail) = trend_first_max_decreasing_in_n();
    report_line("criterion 5a first-max decreasing in n", a_ok, &a_detail);
    let (b_ok, b_detail) = trend_extremum_count_follows_rabi();
    report_line("criterion 5b extremum count follows Omega", b_ok, &b_detail);
    let (c_ok, c_detail) = trend_detuning_speeds_first_max();
    report_line("criterion 5c detuning speeds first max", c_ok, &c_detail);
    assert!(a_ok, "{a_detail}");
    assert!(b_ok, "{b_detail}");
    assert!(c_ok, "{c_detail}");
}

#[test]
fn criterion_6_figure_determinism() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let report_a = reproduce_figures(dir_a.path()).unwrap();
    let report_b = reproduce_figures(dir_b.path()).unwrap();
    assert_eq!(report_a.files.len(), report_b.files.len());

    let mut compared = 0;
    for (fa, fb) in report_a.files.iter().zip(&report_b.files) {
        let rel_a = fa.strip_prefix(dir_a.path()).unwrap();
        let rel_b = fb.strip_prefix(dir_b.path()).unwrap();
        assert_eq!(rel_a, rel_b);
        let bytes_a = std::fs::read(fa).unwrap();
        let bytes_b = std::fs::read(fb).unwrap();
        assert_eq!(bytes_a, bytes_b, "{} differs between runs", rel_a.display());
        compared += 1;
    }
    report_line(
        "criterion 6 determinism",
        true,
        &format!("two figure runs produced {compared} byte-identical files"),
    );
    assert!(compared >= 21, "expected 15 CSVs + 5 scripts + report");
}
