use std::fmt::Write as _;

use super::{format_value, IoError};
use crate::scheduling::Schedule;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GanttFormat {
    Ascii,
    Svg,
    Json,
}

/// `scale` is time units per character (ascii) or per pixel (svg).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    format: GanttFormat,
    scale: f64,
    pub show_labels: bool,
    pub show_times: bool,
}

impl RenderOptions {
    pub fn new(format: GanttFormat) -> Self {
        let scale = match format {
            GanttFormat::Svg => 0.05,
            _ => 1.0,
        };
        RenderOptions { format, scale, show_labels: true, show_times: true }
    }

    pub fn with_scale(mut self, scale: f64) -> Result<Self, IoError> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(IoError::Options(format!("scale must be positive, got {scale}")));
        }
        self.scale = scale;
        Ok(self)
    }

    pub fn format(&self) -> GanttFormat {
        self.format
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }
}

/// Integral times print without decimals; others with two.
pub(crate) fn format_time(t: f64) -> String {
    if t.fract() == 0.0 && t.abs() < 1e15 {
        format!("{}", t as i64)
    } else {
        format_value(t)
    }
}

enum Cell<'a> {
    Run(&'a str, f64, f64),
    Idle(f64, f64),
}

fn cells(schedule: &Schedule) -> Vec<Cell<'_>> {
    let mut out = Vec::new();
    let mut cursor = 0.0;
    for seg in &schedule.segments {
        if seg.start > cursor {
            out.push(Cell::Idle(cursor, seg.start));
        }
        out.push(Cell::Run(&seg.id, seg.start, seg.end));
        cursor = seg.end;
    }
    out
}

pub fn render_gantt(schedule: &Schedule, options: &RenderOptions) -> Vec<u8> {
    match options.format {
        GanttFormat::Ascii => render_ascii(schedule, options).into_bytes(),
        GanttFormat::Svg => render_svg(schedule, options).into_bytes(),
        GanttFormat::Json => serde_json::to_vec(&schedule.segments).expect("segments serialize"),
    }
}

fn render_ascii(schedule: &Schedule, options: &RenderOptions) -> String {
    let cells = cells(schedule);
    if cells.is_empty() {
        return if options.show_times { "0\n".to_string() } else { String::new() };
    }
    let mut border = String::from("+");
    let mut labels = String::from("|");
    let mut times = String::new();
    for cell in &cells {
        let (label, start, end, fill) = match *cell {
            Cell::Run(id, s, e) => (if options.show_labels { id } else { "" }, s, e, ' '),
            Cell::Idle(s, e) => ("", s, e, '.'),
        };
        let start_label = format_time(start);
        let proportional = ((end - start) / options.scale).round() as usize;
        let width = proportional.max(label.len() + 2).max(start_label.len() + 1).max(3);
        border.push_str(&"-".repeat(width));
        border.push('+');
        let pad = width - label.len();
        let left = pad / 2;
        labels.extend(std::iter::repeat_n(fill, left));
        labels.push_str(label);
        labels.extend(std::iter::repeat_n(fill, pad - left));
        labels.push('|');
        times.push_str(&format!("{start_label:<w$}", w = width + 1));
    }
    times.push_str(&format_time(schedule.makespan()));

    let mut out = format!("{border}\n{labels}\n{border}\n");
    if options.show_times {
        out.push_str(times.trim_end());
        out.push('\n');
    }
    out
}

fn render_svg(schedule: &Schedule, options: &RenderOptions) -> String {
    const MARGIN: f64 = 10.0;
    const LANE: f64 = 40.0;
    let px = |t: f64| MARGIN + t / options.scale;
    let width = px(schedule.makespan()) + MARGIN;
    let height = MARGIN + LANE + 30.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.2}" height="{height:.2}" viewBox="0 0 {:.2} {height:.2}" font-family="monospace" font-size="12">"#,
        width, width
    );
    let _ = writeln!(
        out,
        r#"  <line class="axis" x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black"/>"#,
        px(0.0),
        px(schedule.makespan()),
        y = MARGIN + LANE
    );
    for (i, seg) in schedule.segments.iter().enumerate() {
        let x = px(seg.start);
        let w = seg.duration() / options.scale;
        let hue = task_hue(&seg.id);
        let _ = writeln!(
            out,
            r#"  <rect class="segment" data-id="{id}" x="{x:.2}" y="{MARGIN:.2}" width="{w:.2}" height="{LANE:.2}" fill="hsl({hue},60%,75%)" stroke="black"/>"#,
            id = escape(&seg.id)
        );
        if options.show_labels {
            let _ = writeln!(
                out,
                r#"  <text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                x + w / 2.0,
                MARGIN + LANE / 2.0 + 4.0,
                escape(&seg.id)
            );
        }
        if options.show_times {
            if i == 0 || schedule.segments[i - 1].end != seg.start {
                tick(&mut out, x, seg.start, MARGIN + LANE);
            }
            tick(&mut out, px(seg.end), seg.end, MARGIN + LANE);
        }
    }
    if schedule.segments.is_empty() && options.show_times {
        tick(&mut out, px(0.0), 0.0, MARGIN + LANE);
    }
    out.push_str("</svg>\n");
    out
}

fn tick(out: &mut String, x: f64, t: f64, y: f64) {
    let _ = writeln!(
        out,
        r#"  <text class="tick" x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        y + 16.0,
        format_time(t)
    );
}

fn task_hue(id: &str) -> u32 {
    id.bytes().fold(17u32, |h, b| h.wrapping_mul(31).wrapping_add(b as u32)) % 360
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
