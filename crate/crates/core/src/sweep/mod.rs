//! Parameter sweeps: time traces of the information measures, extremum
//! detection, CSV/plot emission, and the five reference figure bundles.
//!
//! A sweep point is the dimensionless tuple (Δ, γ, n); the Rabi scale
//! Ω(γ) is derived per point. Points are independent work items and are
//! evaluated in parallel when the `parallel` feature is enabled, with a
//! byte-identical sequential fallback otherwise.

mod emit;
mod extrema;
mod figures;

pub use emit::{emit_outputs, write_trace_csv, EmitSummary};
pub use extrema::{find_extrema, find_extrema_sampled, ExtremumKind, ExtremumRecord, REFINE_TOL};
pub use figures::{
    anchor_specs, figure_sets, reproduce_figures, AnchorOutcome, AnchorSpec, CurveSummary,
    FigureSet, ReproductionReport, ANCHOR_TOLERANCE,
};

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::measures::{measure_report, MeasureReport};
use crate::model::effective_rabi;
use crate::propagator::evolve_initial;

/// Default trace window, resolving the fastest reference oscillation
/// with better than 20 samples per period.
pub const DEFAULT_T_MAX: f64 = 25.0;
pub const DEFAULT_T_STEPS: usize = 2001;

/// Upper bound on `t_steps × points` per sweep, to keep runaway configs
/// from looking like hangs.
pub const MAX_EVALUATIONS: u64 = 10_000_000;

/// One sweep point: scaled detuning Δ, capacitance ratio γ, photon number n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParameterPoint {
    pub delta: f64,
    pub gamma: f64,
    pub photon_number: usize,
}

impl ParameterPoint {
    pub fn new(delta: f64, gamma: f64, photon_number: usize) -> Self {
        Self {
            delta,
            gamma,
            photon_number,
        }
    }

    /// Ω(γ) for this point.
    pub fn rabi_scale(&self) -> Result<f64> {
        effective_rabi(self.gamma)
    }

    /// All measures of the evolved state at scaled time `t`.
    pub fn measures_at(&self, t: f64) -> Result<MeasureReport> {
        let omega = self.rabi_scale()?;
        let (_, state) = evolve_initial(self.photon_number, self.delta, omega, t)?;
        measure_report(&state)
    }

    /// `S_I(T)` as a continuous function, used for extremum refinement.
    pub fn skew_information_at(&self, t: f64) -> Result<f64> {
        Ok(self.measures_at(t)?.skew_information)
    }
}

/// One sampled row of a trace.
#[derive(Debug, Clone, Copy)]
pub struct TraceRow {
    pub t: f64,
    pub skew_information: f64,
    pub concurrence: f64,
    pub purity: f64,
    pub variance_sum: f64,
    pub wy_sum: f64,
}

/// Sampled time series of the measures at one parameter point.
#[derive(Debug, Clone)]
pub struct TraceSeries {
    pub point: ParameterPoint,
    /// Ω(γ), recorded once per series.
    pub rabi_scale: f64,
    pub rows: Vec<TraceRow>,
}

impl TraceSeries {
    /// Times of the sampled rows.
    pub fn times(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.t).collect()
    }

    /// Skew-information column.
    pub fn skew_values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.skew_information).collect()
    }
}

/// Evaluate one trace: `t_steps` uniform samples on `[0, t_max]`.
pub fn run_trace(point: ParameterPoint, t_max: f64, t_steps: usize) -> Result<TraceSeries> {
    if t_max.is_nan() || t_max <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    if t_steps < 2 {
        return Err(Error::InvalidParameter(format!(
            "t_steps must be at least 2, got {t_steps}"
        )));
    }
    let rabi_scale = point.rabi_scale()?;
    let mut rows = Vec::with_capacity(t_steps);
    for j in 0..t_steps {
        let t = t_max * j as f64 / (t_steps - 1) as f64;
        let report = point
            .measures_at(t)
            .map_err(|source| Error::Evaluation {
                t,
                source: Box::new(source),
            })?;
        rows.push(TraceRow {
            t,
            skew_information: report.skew_information,
            concurrence: report.concurrence,
            purity: report.purity,
            variance_sum: report.variance_sum,
            wy_sum: report.wy_sum,
        });
    }
    Ok(TraceSeries {
        point,
        rabi_scale,
        rows,
    })
}

/// Evaluate many traces sequentially, preserving input order.
pub fn run_traces_seq(
    points: &[ParameterPoint],
    t_max: f64,
    t_steps: usize,
) -> Result<Vec<TraceSeries>> {
    points
        .iter()
        .map(|&p| run_trace(p, t_max, t_steps))
        .collect()
}

/// Evaluate many traces on the rayon pool, preserving input order.
#[cfg(feature = "parallel")]
pub fn run_traces_par(
    points: &[ParameterPoint],
    t_max: f64,
    t_steps: usize,
) -> Result<Vec<TraceSeries>> {
    use rayon::prelude::*;
    points
        .par_iter()
        .map(|&p| run_trace(p, t_max, t_steps))
        .collect()
}

/// Evaluate many traces, parallel when the `parallel` feature is on.
pub fn run_traces(
    points: &[ParameterPoint],
    t_max: f64,
    t_steps: usize,
) -> Result<Vec<TraceSeries>> {
    #[cfg(feature = "parallel")]
    {
        run_traces_par(points, t_max, t_steps)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_traces_seq(points, t_max, t_steps)
    }
}

/// A full sweep configuration: the cross product of the three lists.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub delta_values: Vec<f64>,
    pub gamma_values: Vec<f64>,
    pub n_values: Vec<usize>,
    pub t_max: f64,
    pub t_steps: usize,
    pub output_dir: PathBuf,
    pub emit_plots: bool,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.delta_values.is_empty() || self.gamma_values.is_empty() || self.n_values.is_empty()
        {
            return Err(Error::Config(
                "delta, gamma, and n lists must all be non-empty".into(),
            ));
        }
        if self.t_max.is_nan() || self.t_max <= 0.0 {
            return Err(Error::Config(format!(
                "tmax must be positive, got {}",
                self.t_max
            )));
        }
        if self.t_steps < 2 {
            return Err(Error::Config(format!(
                "steps must be at least 2, got {}",
                self.t_steps
            )));
        }
        for &gamma in &self.gamma_values {
            if gamma.is_nan() || gamma <= 0.0 {
                return Err(Error::Config(format!(
                    "gamma values must be positive, got {gamma}"
                )));
            }
        }
        for &delta in &self.delta_values {
            if !delta.is_finite() {
                return Err(Error::Config(format!(
                    "delta values must be finite, got {delta}"
                )));
            }
        }
        let points =
            (self.delta_values.len() * self.gamma_values.len() * self.n_values.len()) as u64;
        let requested = points.saturating_mul(self.t_steps as u64);
        if requested > MAX_EVALUATIONS {
            return Err(Error::SweepTooLarge {
                requested,
                limit: MAX_EVALUATIONS,
            });
        }
        Ok(())
    }

    /// Cross product of the lists, in (delta, gamma, n) nesting order.
    pub fn points(&self) -> Vec<ParameterPoint> {
        let mut points = Vec::new();
        for &delta in &self.delta_values {
            for &gamma in &self.gamma_values {
                for &n in &self.n_values {
                    points.push(ParameterPoint::new(delta, gamma, n));
                }
            }
        }
        points
    }
}

/// Overrides parsed from a line-oriented `key = value` config file.
///
/// Recognized keys: `delta`, `gamma`, `n` (comma-separated lists),
/// `tmax`, `steps`, `out`, `plots`. Blank lines and `#` comments are
/// skipped; unknown keys are errors.
#[derive(Debug, Default, Clone)]
pub struct ConfigOverrides {
    pub delta_values: Option<Vec<f64>>,
    pub gamma_values: Option<Vec<f64>>,
    pub n_values: Option<Vec<usize>>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
    pub output_dir: Option<PathBuf>,
    pub emit_plots: Option<bool>,
}

impl ConfigOverrides {
    pub fn parse(text: &str) -> Result<Self> {
        let mut overrides = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {}: expected `key = value`, got `{raw}`",
                    lineno + 1
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "delta" => overrides.delta_values = Some(parse_list(key, value)?),
                "gamma" => overrides.gamma_values = Some(parse_list(key, value)?),
                "n" => overrides.n_values = Some(parse_list(key, value)?),
                "tmax" => overrides.t_max = Some(parse_scalar(key, value)?),
                "steps" => overrides.t_steps = Some(parse_scalar(key, value)?),
                "out" => overrides.output_dir = Some(PathBuf::from(value)),
                "plots" => {
                    overrides.emit_plots = Some(match value {
                        "true" => true,
                        "false" => false,
                        other => {
                            return Err(Error::Config(format!(
                                "plots must be true or false, got `{other}`"
                            )))
                        }
                    })
                }
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(overrides)
    }

    /// Replace the matching fields of `config` with the file's values.
    pub fn apply(&self, config: &mut SweepConfig) {
        if let Some(v) = &self.delta_values {
            config.delta_values = v.clone();
        }
        if let Some(v) = &self.gamma_values {
            config.gamma_values = v.clone();
        }
        if let Some(v) = &self.n_values {
            config.n_values = v.clone();
        }
        if let Some(v) = self.t_max {
            config.t_max = v;
        }
        if let Some(v) = self.t_steps {
            config.t_steps = v;
        }
        if let Some(v) = &self.output_dir {
            config.output_dir = v.clone();
        }
        if let Some(v) = self.emit_plots {
            config.emit_plots = v;
        }
    }
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(|item| {
            item.trim()
                .parse::<T>()
                .map_err(|_| Error::Config(format!("{key}: cannot parse `{}`", item.trim())))
        })
        .collect()
}

fn parse_scalar<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse::<T>()
        .map_err(|_| Error::Config(format!("{key}: cannot parse `{value}`")))
}
