use serde::{Deserialize, Serialize};

use crate::metrics::{ComparisonReport, ScheduleMetrics};
use crate::scheduling::Segment;

/// Round half away from zero to `places` decimals (half-up for the
/// non-negative times reported here).
pub fn round_half_up(x: f64, places: u32) -> f64 {
    let factor = 10f64.powi(places as i32);
    // nudge by a relative epsilon so 0.125 stored as 0.12499999... still rounds up
    let scaled = x * factor;
    let nudged = scaled + scaled.signum() * scaled.abs() * 4.0 * f64::EPSILON;
    nudged.round() / factor
}

/// Two-decimal presentation form.
pub fn format_value(x: f64) -> String {
    format!("{:.2}", round_half_up(x, 2))
}

/// Output document for one simulated policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleReport {
    pub workload: String,
    pub policy: String,
    pub segments: Vec<Segment>,
    pub metrics: ScheduleMetrics,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Table,
}

pub fn emit_report(report: &ComparisonReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("report serializes");
            out.push(b'\n');
            out
        }
        ReportFormat::Table => {
            let rows: Vec<[String; 3]> = report
                .entries
                .iter()
                .map(|e| match (&e.metrics, &e.error) {
                    (Some(m), _) => [e.policy.clone(), format_value(m.avg_waiting), format_value(m.avg_turnaround)],
                    (None, Some(err)) => [e.policy.clone(), "error".into(), err.clone()],
                    (None, None) => [e.policy.clone(), "-".into(), "-".into()],
                })
                .collect();
            let header = ["policy".to_string(), "avg_waiting".into(), "avg_turnaround".into()];
            let mut widths = header.clone().map(|h| h.len());
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let mut out = String::new();
            for row in std::iter::once(&header).chain(&rows) {
                out.push_str(&format!(
                    "{:<w0$}  {:>w1$}  {:>w2$}\n",
                    row[0],
                    row[1],
                    row[2],
                    w0 = widths[0],
                    w1 = widths[1],
                    w2 = widths[2]
                ));
            }
            out.into_bytes()
        }
    }
}
