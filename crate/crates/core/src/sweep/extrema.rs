//! Interior extrema of a sampled trace, refined on the continuous curve.
//!
//! Detection walks the discrete slope signs; a sign change brackets an
//! extremum which is then refined by golden-section search on the
//! continuous function. Flat stretches (plateaus) bounded by opposite
//! slopes are reported once at their center. Endpoints are never
//! reported, and a constant series yields no records.

use crate::error::{Error, Result};
use crate::sweep::TraceSeries;

/// Refinement stops when the bracket width drops below this.
pub const REFINE_TOL: f64 = 1e-4;
/// Discrete |dv/dt| below this counts as flat.
pub const PLATEAU_SLOPE: f64 = 1e-12;

const INV_GOLDEN: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Maximum,
    Minimum,
}

/// One located extremum.
#[derive(Debug, Clone, Copy)]
pub struct ExtremumRecord {
    pub kind: ExtremumKind,
    /// Refined abscissa.
    pub t: f64,
    /// Function value at `t`.
    pub value: f64,
    /// 1-based ordinal among records of the same kind, in time order.
    pub occurrence: usize,
}

/// Locate the interior extrema of the skew-information column of a trace,
/// refining each on the continuous `S_I(T)` of the trace's parameter point.
pub fn find_extrema(series: &TraceSeries) -> Result<Vec<ExtremumRecord>> {
    let ts = series.times();
    let values = series.skew_values();
    let point = series.point;
    find_extrema_sampled(&ts, &values, |t| point.skew_information_at(t))
}

/// Locate the interior extrema of an arbitrary sampled curve, refining
/// each with the continuous function `f` that produced the samples.
pub fn find_extrema_sampled<F>(ts: &[f64], values: &[f64], f: F) -> Result<Vec<ExtremumRecord>>
where
    F: Fn(f64) -> Result<f64>,
{
    if ts.len() != values.len() {
        return Err(Error::DimensionMismatch(ts.len(), values.len()));
    }
    if ts.len() < 3 {
        return Err(Error::SeriesTooShort(ts.len()));
    }

    // Slope sign per segment: -1, 0, +1.
    let signs: Vec<i8> = (0..ts.len() - 1)
        .map(|i| {
            let dt = ts[i + 1] - ts[i];
            let slope = (values[i + 1] - values[i]) / dt;
            if slope.abs() < PLATEAU_SLOPE {
                0
            } else if slope > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect();

    let mut records = Vec::new();
    // Index of the last segment of the previous non-zero run, if any.
    let mut prev: Option<(usize, i8)> = None;
    let mut i = 0;
    while i < signs.len() {
        if signs[i] == 0 {
            i += 1;
            continue;
        }
        let sign = signs[i];
        if let Some((prev_end, prev_sign)) = prev {
            if prev_sign != sign {
                let kind = if prev_sign > 0 {
                    ExtremumKind::Maximum
                } else {
                    ExtremumKind::Minimum
                };
                let record = if i > prev_end + 1 {
                    // Plateau between samples prev_end+1 and i: report once
                    // at the window center, no refinement.
                    let t = 0.5 * (ts[prev_end + 1] + ts[i]);
                    ExtremumRecord {
                        kind,
                        t,
                        value: f(t)?,
                        occurrence: 0,
                    }
                } else {
                    // Classic sign change at sample i; refine in the
                    // bracketing interval.
                    let (t, value) =
                        golden_refine(&f, ts[prev_end], ts[i + 1], kind == ExtremumKind::Maximum)?;
                    ExtremumRecord {
                        kind,
                        t,
                        value,
                        occurrence: 0,
                    }
                };
                records.push(record);
            }
        }
        // Advance past this run of equal signs.
        let mut end = i;
        while end + 1 < signs.len() && signs[end + 1] == sign {
            end += 1;
        }
        prev = Some((end, sign));
        i = end + 1;
    }

    let mut max_seen = 0;
    let mut min_seen = 0;
    for record in &mut records {
        match record.kind {
            ExtremumKind::Maximum => {
                max_seen += 1;
                record.occurrence = max_seen;
            }
            ExtremumKind::Minimum => {
                min_seen += 1;
                record.occurrence = min_seen;
            }
        }
    }
    Ok(records)
}

/// Golden-section search on `[lo, hi]`, maximizing or minimizing `f`.
fn golden_refine<F>(f: &F, mut lo: f64, mut hi: f64, maximize: bool) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let better = |a: f64, b: f64| if maximize { a > b } else { a < b };
    let mut x1 = hi - INV_GOLDEN * (hi - lo);
    let mut x2 = lo + INV_GOLDEN * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > REFINE_TOL {
        if better(f1, f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_GOLDEN * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_GOLDEN * (hi - lo);
            f2 = f(x2)?;
        }
    }
    let t = 0.5 * (lo + hi);
    Ok((t, f(t)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn sample(f: impl Fn(f64) -> f64, t_max: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
        let ts: Vec<f64> = (0..n).map(|i| t_max * i as f64 / (n - 1) as f64).collect();
        let vs: Vec<f64> = ts.iter().map(|&t| f(t)).collect();
        (ts, vs)
    }

    #[test]
    fn finds_analytic_cosine_extrema() {
        let f = |t: f64| 1.0 + 0.5 * (1.0 - t.cos());
        let (ts, vs) = sample(f, 10.0, 1000);
        let records = find_extrema_sampled(&ts, &vs, |t| Ok(f(t))).unwrap();
        assert!(records.len() >= 2);
        assert_eq!(records[0].kind, ExtremumKind::Maximum);
        assert_abs_diff_eq!(records[0].t, PI, epsilon = 1e-3);
        assert_abs_diff_eq!(records[0].value, 2.0, epsilon = 1e-6);
        assert_eq!(records[1].kind, ExtremumKind::Minimum);
        assert_abs_diff_eq!(records[1].t, 2.0 * PI, epsilon = 1e-3);
        assert_eq!(records[0].occurrence, 1);
        assert_eq!(records[1].occurrence, 1);
    }

    #[test]
    fn constant_series_has_no_extrema() {
        let (ts, vs) = sample(|_| 1.5, 10.0, 100);
        let records = find_extrema_sampled(&ts, &vs, |_| Ok(1.5)).unwrap();
        assert!(records.is_empty());
    }

    #[test]
    fn monotone_series_has_no_extrema() {
        let (ts, vs) = sample(|t| t, 10.0, 100);
        let records = find_extrema_sampled(&ts, &vs, Ok).unwrap();
        assert!(records.is_empty());
    }

    #[test]
    fn plateau_reported_once_at_center() {
        // Rise to 1 on [0,1], flat on [1,3], fall on [3,4].
        let f = |t: f64| {
            if t < 1.0 {
                t
            } else if t <= 3.0 {
                1.0
            } else {
                4.0 - t
            }
        };
        let (ts, vs) = sample(f, 4.0, 401);
        let records = find_extrema_sampled(&ts, &vs, |t| Ok(f(t))).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].kind, ExtremumKind::Maximum);
        assert_abs_diff_eq!(records[0].t, 2.0, epsilon = 0.05);
    }

    #[test]
    fn shoulder_is_not_an_extremum() {
        // Rise, flat, rise again: no extremum.
        let f = |t: f64| {
            if t < 1.0 {
                t
            } else if t <= 3.0 {
                1.0
            } else {
                1.0 + (t - 3.0)
            }
        };
        let (ts, vs) = sample(f, 4.0, 401);
        let records = find_extrema_sampled(&ts, &vs, |t| Ok(f(t))).unwrap();
        assert!(records.is_empty());
    }

    #[test]
    fn kinds_alternate() {
        let f = |t: f64| (0.7 * t).sin() * (0.13 * t).cos();
        let (ts, vs) = sample(f, 40.0, 4001);
        let records = find_extrema_sampled(&ts, &vs, |t| Ok(f(t))).unwrap();
        assert!(records.len() > 4);
        for pair in records.windows(2) {
            assert_ne!(pair[0].kind, pair[1].kind);
            assert!(pair[0].t < pair[1].t);
        }
    }

    #[test]
    fn too_short_series_rejected() {
        assert!(matches!(
            find_extrema_sampled(&[0.0, 1.0], &[0.0, 1.0], Ok),
            Err(Error::SeriesTooShort(2))
        ));
    }

    #[test]
    fn refinement_tightens_grid_estimate() {
        // Coarse grid, sharp analytic extremum.
        let f = |t: f64| -(t - 1.234_567).powi(2);
        let (ts, vs) = sample(f, 4.0, 41);
        let records = find_extrema_sampled(&ts, &vs, |t| Ok(f(t))).unwrap();
        assert_eq!(records.len(), 1);
        assert_abs_diff_eq!(records[0].t, 1.234_567, epsilon = 1e-4);
    }
}
