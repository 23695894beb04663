//! CSV and gnuplot-script emission for trace sets.
//!
//! Numeric cells use fixed 12-significant-digit scientific notation and
//! file names come from the shortest round-trip decimal form of each
//! knob, so identical configs produce byte-identical outputs.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::sweep::{ParameterPoint, SweepConfig, TraceSeries};

/// CSV header shared by every emitted trace.
pub const CSV_HEADER: &str = "T,S_I,concurrence,purity,variance_sum,wy_sum";

/// Outcome of an emission run.
#[derive(Debug)]
pub struct EmitSummary {
    pub files: Vec<PathBuf>,
    pub warning: Option<String>,
}

/// `trace_d{delta}_g{gamma}_n{n}` with shortest round-trip float formatting.
pub fn trace_file_stem(point: &ParameterPoint) -> String {
    format!(
        "trace_d{}_g{}_n{}",
        point.delta, point.gamma, point.photon_number
    )
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Write one trace as CSV: header plus one row per sample.
pub fn write_trace_csv(path: &Path, series: &TraceSeries) -> Result<()> {
    let mut out = String::with_capacity(series.rows.len() * 96);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &series.rows {
        out.push_str(&format!(
            "{:.11e},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}\n",
            row.t,
            row.skew_information,
            row.concurrence,
            row.purity,
            row.variance_sum,
            row.wy_sum
        ));
    }
    fs::write(path, out).map_err(|e| io_err(path, e))
}

/// Write a gnuplot script plotting the skew-information column of each
/// listed CSV (paths relative to the script's directory).
pub fn write_plot_script(
    path: &Path,
    title: &str,
    output_stem: &str,
    curves: &[(String, String)],
) -> Result<()> {
    let mut script = String::new();
    script.push_str("set datafile separator \",\"\n");
    script.push_str("set terminal pngcairo size 900,540\n");
    script.push_str(&format!("set output '{output_stem}.png'\n"));
    script.push_str(&format!("set title \"{title}\"\n"));
    script.push_str("set xlabel \"T\"\n");
    script.push_str("set ylabel \"S_I\"\n");
    script.push_str("set yrange [0.95:2.05]\n");
    script.push_str("set key top right\n");
    script.push_str("plot \\\n");
    for (i, (file, label)) in curves.iter().enumerate() {
        let sep = if i + 1 < curves.len() { ", \\\n" } else { "\n" };
        script.push_str(&format!(
            "  '{file}' skip 1 using 1:2 with lines title \"{label}\"{sep}"
        ));
    }
    let mut f = fs::File::create(path).map_err(|e| io_err(path, e))?;
    f.write_all(script.as_bytes()).map_err(|e| io_err(path, e))
}

/// Emit one CSV per trace into `config.output_dir`, plus one plot script
/// covering the whole set when `emit_plots` is on.
///
/// An empty trace set writes nothing and succeeds with a warning.
pub fn emit_outputs(traces: &[TraceSeries], config: &SweepConfig) -> Result<EmitSummary> {
    if traces.is_empty() {
        return Ok(EmitSummary {
            files: Vec::new(),
            warning: Some("no traces to emit; no files written".into()),
        });
    }
    let dir = &config.output_dir;
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;

    let mut files = Vec::new();
    let mut curves = Vec::new();
    for series in traces {
        let name = format!("{}.csv", trace_file_stem(&series.point));
        let path = dir.join(&name);
        write_trace_csv(&path, series)?;
        let label = format!(
            "delta={} gamma={} n={}",
            series.point.delta, series.point.gamma, series.point.photon_number
        );
        curves.push((name, label));
        files.push(path);
    }

    if config.emit_plots {
        let path = dir.join("plot_traces.gp");
        write_plot_script(&path, "skew information traces", "plot_traces", &curves)?;
        files.push(path);
    }

    Ok(EmitSummary {
        files,
        warning: None,
    })
}
