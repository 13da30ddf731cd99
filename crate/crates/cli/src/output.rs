//! Report files: `report.json` and one CSV per numeric series.

use std::fs;
use std::path::{Path, PathBuf};

use bergman_core::lab::{ExperimentReport, SeriesPoint};
use serde::Serialize;

use crate::config::{ExperimentConfig, OutputFormat};
use crate::CliError;

/// Contents of `report.json`.
#[derive(Debug, Serialize)]
pub struct ReportFile<'a> {
    pub schema_version: u32,
    pub config: &'a ExperimentConfig,
    pub exit_code: i32,
    pub report: &'a ExperimentReport,
}

pub const SCHEMA_VERSION: u32 = 1;

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// File-name-safe form of a series name.
pub fn csv_name(series: &str) -> String {
    let stem: String = series
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '_' })
        .collect();
    format!("{stem}.csv")
}

fn write_csv(path: &Path, points: &[SeriesPoint]) -> Result<(), CliError> {
    let csv_error = |e: csv::Error| CliError::Io {
        path: path.display().to_string(),
        source: e.into(),
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_error)?;
    if points.is_empty() {
        w.write_record(["index", "value", "error_bound"]).map_err(csv_error)?;
    }
    for p in points {
        w.serialize(p).map_err(csv_error)?;
    }
    w.flush().map_err(io_error(path))
}

/// Writes the requested files into `dir` and returns their paths.
pub fn write_outputs(
    dir: &Path,
    format: OutputFormat,
    config: &ExperimentConfig,
    report: &ExperimentReport,
    exit_code: i32,
) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(io_error(dir))?;
    let mut written = Vec::new();
    if matches!(format, OutputFormat::Json | OutputFormat::Both) {
        let path = dir.join("report.json");
        let file = ReportFile {
            schema_version: SCHEMA_VERSION,
            config,
            exit_code,
            report,
        };
        let text = serde_json::to_string_pretty(&file).map_err(|e| CliError::Config(e.to_string()))?;
        fs::write(&path, text + "\n").map_err(io_error(&path))?;
        written.push(path);
    }
    if matches!(format, OutputFormat::Csv | OutputFormat::Both) {
        for (name, points) in &report.sequences {
            let path = dir.join(csv_name(name));
            write_csv(&path, points)?;
            written.push(path);
        }
        for s in &report.spectra {
            let path = dir.join(format!("spectrum_{}.csv", s.truncation));
            let points: Vec<SeriesPoint> = s
                .eigenvalues
                .iter()
                .enumerate()
                .map(|(k, &l)| SeriesPoint {
                    index: k as f64,
                    value: l,
                    error_bound: 0.0,
                })
                .collect();
            write_csv(&path, &points)?;
            written.push(path);
        }
    }
    Ok(written)
}
