//! One-shot reproduction of the five reference figures: CSV bundles, plot
//! scripts, and a report comparing first-extremum times against the
//! reference values with pass/deviation annotation.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::sweep::emit::{trace_file_stem, write_plot_script, write_trace_csv};
use crate::sweep::extrema::{find_extrema, ExtremumKind, ExtremumRecord};
use crate::sweep::{run_traces, ParameterPoint, DEFAULT_T_MAX, DEFAULT_T_STEPS};

/// Anchors pass when the computed time is within ±20% of the reference.
pub const ANCHOR_TOLERANCE: f64 = 0.2;

/// One figure bundle: a set of curves sharing fixed knobs.
#[derive(Debug, Clone)]
pub struct FigureSet {
    /// Bundle id, also the output subdirectory name ("fig1".."fig5").
    pub id: &'static str,
    /// Human summary of the swept/fixed knobs.
    pub summary: String,
    pub points: Vec<ParameterPoint>,
    /// Per-curve legend labels, parallel to `points`.
    pub labels: Vec<String>,
    /// Optional provenance note carried into the report.
    pub note: Option<String>,
}

/// The five reference figure bundles.
pub fn figure_sets() -> Vec<FigureSet> {
    let small_gammas = [0.25, 1.0 / 6.0, 0.125];
    vec![
        FigureSet {
            id: "fig1",
            summary: "n=1, gamma=0.25, delta in {0, 0.3, 0.9}".into(),
            points: [0.0, 0.3, 0.9]
                .iter()
                .map(|&d| ParameterPoint::new(d, 0.25, 1))
                .collect(),
            labels: ["0", "0.3", "0.9"]
                .iter()
                .map(|d| format!("delta={d}"))
                .collect(),
            note: None,
        },
        FigureSet {
            id: "fig2",
            summary: "delta=0, gamma=0.25, n in {2, 5, 8}".into(),
            points: [2usize, 5, 8]
                .iter()
                .map(|&n| ParameterPoint::new(0.0, 0.25, n))
                .collect(),
            labels: [2, 5, 8].iter().map(|n| format!("n={n}")).collect(),
            note: None,
        },
        FigureSet {
            id: "fig3",
            summary: "n=2, delta=0, gamma in {1/4, 1/6, 1/8}".into(),
            points: small_gammas
                .iter()
                .map(|&g| ParameterPoint::new(0.0, g, 2))
                .collect(),
            labels: ["1/4", "1/6", "1/8"]
                .iter()
                .map(|g| format!("gamma={g}"))
                .collect(),
            note: None,
        },
        FigureSet {
            id: "fig4",
            summary: "n=2, delta=0.3, gamma in {1/4, 1/6, 1/8}".into(),
            points: small_gammas
                .iter()
                .map(|&g| ParameterPoint::new(0.3, g, 2))
                .collect(),
            labels: ["1/4", "1/6", "1/8"]
                .iter()
                .map(|g| format!("gamma={g}"))
                .collect(),
            note: None,
        },
        FigureSet {
            id: "fig5",
            summary: "n=2, delta=0, gamma in {4, 6, 8}".into(),
            points: [4.0, 6.0, 8.0]
                .iter()
                .map(|&g| ParameterPoint::new(0.0, g, 2))
                .collect(),
            labels: [4, 6, 8].iter().map(|g| format!("gamma={g}")).collect(),
            note: Some(
                "reference material lists both gamma = 4, 6, 8 and gamma = 2, 4, 6 \
                 for this set; the caption values 4, 6, 8 are used here"
                    .into(),
            ),
        },
    ]
}

/// A reference extremum time to compare against.
#[derive(Debug, Clone)]
pub struct AnchorSpec {
    pub point: ParameterPoint,
    pub kind: ExtremumKind,
    /// Reference time read off the corresponding published curve.
    pub reference_t: f64,
}

/// The four quoted reference extremum times.
pub fn anchor_specs() -> Vec<AnchorSpec> {
    vec![
        AnchorSpec {
            point: ParameterPoint::new(0.0, 0.25, 1),
            kind: ExtremumKind::Maximum,
            reference_t: 7.0,
        },
        AnchorSpec {
            point: ParameterPoint::new(0.0, 0.25, 1),
            kind: ExtremumKind::Minimum,
            reference_t: 12.5,
        },
        AnchorSpec {
            point: ParameterPoint::new(0.3, 0.25, 1),
            kind: ExtremumKind::Maximum,
            reference_t: 3.0,
        },
        AnchorSpec {
            point: ParameterPoint::new(0.0, 0.25, 2),
            kind: ExtremumKind::Minimum,
            reference_t: 10.0,
        },
    ]
}

/// Outcome of one anchor comparison.
#[derive(Debug, Clone)]
pub struct AnchorOutcome {
    pub spec: AnchorSpec,
    pub computed_t: Option<f64>,
    pub relative_deviation: Option<f64>,
    pub within_tolerance: bool,
}

/// First maximum/minimum of one emitted curve.
#[derive(Debug, Clone)]
pub struct CurveSummary {
    pub figure: &'static str,
    pub label: String,
    pub point: ParameterPoint,
    pub rabi_scale: f64,
    pub first_max: Option<ExtremumRecord>,
    pub first_min: Option<ExtremumRecord>,
    pub extremum_count: usize,
}

/// Everything `reproduce_figures` produced.
#[derive(Debug)]
pub struct ReproductionReport {
    pub curves: Vec<CurveSummary>,
    pub anchors: Vec<AnchorOutcome>,
    pub notes: Vec<String>,
    pub files: Vec<PathBuf>,
}

impl ReproductionReport {
    pub fn all_anchors_within_tolerance(&self) -> bool {
        self.anchors.iter().all(|a| a.within_tolerance)
    }

    /// Render the report as the text written to `reproduction_report.txt`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("Skew-information figure reproduction report\n");
        out.push_str("============================================\n\n");

        let mut current_figure = "";
        for curve in &self.curves {
            if curve.figure != current_figure {
                current_figure = curve.figure;
                out.push_str(&format!("{}\n", curve.figure));
            }
            out.push_str(&format!(
                "  {} (delta={}, gamma={}, n={}, Omega={:.6}):\n",
                curve.label,
                curve.point.delta,
                curve.point.gamma,
                curve.point.photon_number,
                curve.rabi_scale
            ));
            match &curve.first_max {
                Some(r) => out.push_str(&format!(
                    "    first maximum at T={:.4} (S_I={:.6})\n",
                    r.t, r.value
                )),
                None => out.push_str("    no interior maximum in the window\n"),
            }
            match &curve.first_min {
                Some(r) => out.push_str(&format!(
                    "    first minimum at T={:.4} (S_I={:.6})\n",
                    r.t, r.value
                )),
                None => out.push_str("    no interior minimum in the window\n"),
            }
            out.push_str(&format!(
                "    interior extrema in the window: {}\n",
                curve.extremum_count
            ));
        }

        out.push_str(&format!(
            "\nReference extremum checks (tolerance +/-{:.0}% of the reference T)\n",
            ANCHOR_TOLERANCE * 100.0
        ));
        for anchor in &self.anchors {
            let kind = match anchor.spec.kind {
                ExtremumKind::Maximum => "first maximum",
                ExtremumKind::Minimum => "first minimum",
            };
            let status = if anchor.within_tolerance {
                "ok       "
            } else {
                "DEVIATION"
            };
            match (anchor.computed_t, anchor.relative_deviation) {
                (Some(t), Some(dev)) => out.push_str(&format!(
                    "  [{status}] {kind} for delta={}, gamma={}, n={}: computed T={:.4}, reference T={}, deviation {:.1}%\n",
                    anchor.spec.point.delta,
                    anchor.spec.point.gamma,
                    anchor.spec.point.photon_number,
                    t,
                    anchor.spec.reference_t,
                    dev * 100.0
                )),
                _ => out.push_str(&format!(
                    "  [{status}] {kind} for delta={}, gamma={}, n={}: no extremum found, reference T={}\n",
                    anchor.spec.point.delta,
                    anchor.spec.point.gamma,
                    anchor.spec.point.photon_number,
                    anchor.spec.reference_t
                )),
            }
        }

        out.push_str("\nNotes\n");
        for note in &self.notes {
            out.push_str(&format!("  - {note}\n"));
        }
        out
    }
}

fn first_of(records: &[ExtremumRecord], kind: ExtremumKind) -> Option<ExtremumRecord> {
    records
        .iter()
        .find(|r| r.kind == kind && r.occurrence == 1)
        .copied()
}

/// Evaluate the five figure bundles on the default grid, write their CSVs
/// and plot scripts under `output_dir`, compare the reference extremum
/// times, and write `reproduction_report.txt`.
pub fn reproduce_figures(output_dir: &Path) -> Result<ReproductionReport> {
    let sets = figure_sets();

    // One flat evaluation pass over every curve, parallel when enabled.
    let all_points: Vec<ParameterPoint> = sets.iter().flat_map(|s| s.points.clone()).collect();
    let all_traces = run_traces(&all_points, DEFAULT_T_MAX, DEFAULT_T_STEPS)?;

    fs::create_dir_all(output_dir).map_err(|e| Error::Io {
        path: output_dir.to_path_buf(),
        source: e,
    })?;

    let mut files = Vec::new();
    let mut curves = Vec::new();
    let mut notes = Vec::new();
    let mut trace_iter = all_traces.into_iter();

    for set in &sets {
        let fig_dir = output_dir.join(set.id);
        fs::create_dir_all(&fig_dir).map_err(|e| Error::Io {
            path: fig_dir.clone(),
            source: e,
        })?;

        let mut plot_curves = Vec::new();
        for (point, label) in set.points.iter().zip(&set.labels) {
            let series = trace_iter.next().expect("one trace per figure point");
            let name = format!("{}.csv", trace_file_stem(point));
            let path = fig_dir.join(&name);
            write_trace_csv(&path, &series)?;
            files.push(path);
            plot_curves.push((format!("{}/{}", set.id, name), label.clone()));

            let records = find_extrema(&series)?;
            curves.push(CurveSummary {
                figure: set.id,
                label: label.clone(),
                point: *point,
                rabi_scale: series.rabi_scale,
                first_max: first_of(&records, ExtremumKind::Maximum),
                first_min: first_of(&records, ExtremumKind::Minimum),
                extremum_count: records.len(),
            });
        }

        let script_path = output_dir.join(format!("{}.gp", set.id));
        write_plot_script(
            &script_path,
            &format!("{} ({})", set.id, set.summary),
            set.id,
            &plot_curves,
        )?;
        files.push(script_path);

        if let Some(note) = &set.note {
            notes.push(format!("{}: {}", set.id, note));
        }
    }

    // Anchor comparisons against the already-computed curves.
    let mut anchors = Vec::new();
    for spec in anchor_specs() {
        let summary = curves
            .iter()
            .find(|c| c.point == spec.point)
            .expect("anchor points are figure curves");
        let computed = match spec.kind {
            ExtremumKind::Maximum => summary.first_max,
            ExtremumKind::Minimum => summary.first_min,
        };
        let computed_t = computed.map(|r| r.t);
        let relative_deviation =
            computed_t.map(|t| (t - spec.reference_t).abs() / spec.reference_t);
        let within_tolerance = relative_deviation.is_some_and(|d| d <= ANCHOR_TOLERANCE);
        anchors.push(AnchorOutcome {
            spec,
            computed_t,
            relative_deviation,
            within_tolerance,
        });
    }

    // Qualitative ordering notes.
    let fig2_maxima: Vec<f64> = curves
        .iter()
        .filter(|c| c.figure == "fig2")
        .filter_map(|c| c.first_max.map(|r| r.t))
        .collect();
    let decreasing = fig2_maxima.windows(2).all(|w| w[1] < w[0]);
    notes.push(format!(
        "fig2 first-maximum times across n=2,5,8: {} (strictly decreasing: {})",
        fig2_maxima
            .iter()
            .map(|t| format!("{t:.3}"))
            .collect::<Vec<_>>()
            .join(", "),
        if decreasing { "yes" } else { "NO" }
    ));

    let fig3_counts: Vec<usize> = curves
        .iter()
        .filter(|c| c.figure == "fig3")
        .map(|c| c.extremum_count)
        .collect();
    let follows_rabi = fig3_counts.windows(2).all(|w| w[1] <= w[0]);
    notes.push(format!(
        "fig3 interior extremum counts for gamma=1/4,1/6,1/8: {} \
         (ordering follows Omega(gamma): {})",
        fig3_counts
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(", "),
        if follows_rabi { "yes" } else { "NO" }
    ));

    // Prose claims in the reference discussion that lack a defined
    // baseline are recorded here rather than encoded as checks.
    notes.push(
        "the reference discussion labels the delta=0 case inconsistently \
         (resonant vs non-resonant) around its fig2 commentary; recorded, not tested"
            .into(),
    );
    notes.push(
        "the reference conclusion quotes 1%/2% and 5% timing changes without \
         defining the baseline; recorded, not tested"
            .into(),
    );

    let report = ReproductionReport {
        curves,
        anchors,
        notes,
        files,
    };

    let report_path = output_dir.join("reproduction_report.txt");
    fs::write(&report_path, report.render()).map_err(|e| Error::Io {
        path: report_path.clone(),
        source: e,
    })?;

    let mut report = report;
    report.files.push(report_path);
    Ok(report)
}
