//! Workload files, Gantt rendering and report serialization.

mod gantt;
mod report;
mod workload;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

pub use gantt::{render_gantt, GanttFormat, RenderOptions};
pub use report::{emit_report, format_value, round_half_up, ReportFormat, ScheduleReport};
pub use workload::{emit_workload, parse_workload, WorkloadDocument};

use crate::scheduling::Violation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WorkloadFormat {
    Csv,
    Json,
}

impl WorkloadFormat {
    /// Guess from a file extension; anything but `.json` is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => WorkloadFormat::Json,
            _ => WorkloadFormat::Csv,
        }
    }
}

impl FromStr for WorkloadFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(WorkloadFormat::Csv),
            "json" => Ok(WorkloadFormat::Json),
            other => Err(format!("unknown workload format `{other}`")),
        }
    }
}

fn line_suffix(line: &Option<usize>) -> String {
    line.map(|l| format!(" on line {l}")).unwrap_or_default()
}

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("schema error{}: {message}", line_suffix(.line))]
    Schema { line: Option<usize>, message: String },
    #[error("malformed row on line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("invalid workload: {}", Violations(.0))]
    Invalid(Vec<Violation>),
    #[error("input is not valid UTF-8")]
    Utf8(#[from] std::str::Utf8Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid render options: {0}")]
    Options(String),
}

struct Violations<'a>(&'a [Violation]);

impl fmt::Display for Violations<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
