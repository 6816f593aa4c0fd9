use serde::{Deserialize, Serialize};

use super::{IoError, WorkloadFormat};
use crate::scheduling::{validate_workload, Task};

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct WorkloadDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub tasks: Vec<Task>,
}

impl WorkloadDocument {
    pub fn new(tasks: Vec<Task>) -> Self {
        WorkloadDocument { name: None, source: None, tasks }
    }
}

const REQUIRED: [&str; 3] = ["id", "burst", "priority"];
const OPTIONAL: [&str; 3] = ["arrival", "external_priority", "new_priority"];

/// Parse a CSV or JSON workload. The result always passes
/// [`validate_workload`] without a policy.
pub fn parse_workload(bytes: &[u8], format: WorkloadFormat) -> Result<WorkloadDocument, IoError> {
    let text = std::str::from_utf8(bytes)?;
    let doc = match format {
        WorkloadFormat::Json => parse_json(text)?,
        WorkloadFormat::Csv => parse_csv(text)?,
    };
    let violations = validate_workload(&doc.tasks, None);
    if violations.is_empty() {
        Ok(doc)
    } else {
        Err(IoError::Invalid(violations))
    }
}

fn parse_json(text: &str) -> Result<WorkloadDocument, IoError> {
    let doc: WorkloadDocument = serde_json::from_str(text)?;
    for (idx, task) in doc.tasks.iter().enumerate() {
        if task.burst <= 0.0 || task.arrival < 0.0 {
            return Err(IoError::Schema {
                line: None,
                message: format!(
                    "task {} (#{}): burst must be positive and arrival non-negative",
                    task.id,
                    idx + 1
                ),
            });
        }
    }
    Ok(doc)
}

fn parse_csv(text: &str) -> Result<WorkloadDocument, IoError> {
    let mut doc = WorkloadDocument::default();
    for line in text.lines() {
        let Some(comment) = line.trim_start().strip_prefix('#') else { continue };
        let comment = comment.trim();
        if let Some(name) = comment.strip_prefix("name:") {
            doc.name = Some(name.trim().to_string());
        } else if let Some(source) = comment.strip_prefix("source:") {
            doc.source = Some(source.trim().to_string());
        }
    }

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let header_line = || {
        text.lines()
            .position(|l| {
                let l = l.trim();
                !l.is_empty() && !l.starts_with('#')
            })
            .map(|i| i + 1)
    };
    let headers = match reader.headers() {
        Ok(h) => h.clone(),
        Err(e) => return Err(IoError::Schema { line: header_line(), message: e.to_string() }),
    };
    if headers.is_empty() || headers.iter().all(str::is_empty) {
        if text.lines().all(|l| l.trim().is_empty() || l.trim_start().starts_with('#')) {
            return Ok(doc);
        }
        return Err(IoError::Schema { line: header_line(), message: "missing header".into() });
    }

    let mut columns: Vec<&str> = Vec::new();
    for h in headers.iter() {
        if !REQUIRED.contains(&h) && !OPTIONAL.contains(&h) {
            return Err(IoError::Schema {
                line: header_line(),
                message: format!(
                    "unknown column `{h}` (expected id,burst,arrival,priority[,external_priority][,new_priority])"
                ),
            });
        }
        if columns.contains(&h) {
            return Err(IoError::Schema { line: header_line(), message: format!("column `{h}` repeated") });
        }
        columns.push(h);
    }
    if let Some(missing) = REQUIRED.iter().find(|r| !columns.contains(r)) {
        return Err(IoError::Schema {
            line: header_line(),
            message: format!("missing required column `{missing}`"),
        });
    }
    let col = |name: &str| columns.iter().position(|c| *c == name);
    let (id_col, burst_col, prio_col) = (col("id").unwrap(), col("burst").unwrap(), col("priority").unwrap());
    let (arrival_col, ext_col, np_col) = (col("arrival"), col("external_priority"), col("new_priority"));

    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            IoError::Malformed { line, message: e.to_string() }
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let number = |idx: usize, name: &str| -> Result<f64, IoError> {
            let raw = record.get(idx).unwrap_or("");
            raw.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| IoError::Malformed {
                line,
                message: format!("{name} `{raw}` is not a number"),
            })
        };
        let optional = |idx: Option<usize>, name: &str| -> Result<Option<f64>, IoError> {
            match idx {
                Some(i) if !record.get(i).unwrap_or("").is_empty() => number(i, name).map(Some),
                _ => Ok(None),
            }
        };

        let id = record.get(id_col).unwrap_or("").to_string();
        if id.is_empty() {
            return Err(IoError::Schema { line: Some(line), message: "empty id".into() });
        }
        let burst = number(burst_col, "burst")?;
        if burst <= 0.0 {
            return Err(IoError::Schema {
                line: Some(line),
                message: format!("task {id}: burst must be positive, got {}", record.get(burst_col).unwrap_or("")),
            });
        }
        let arrival = optional(arrival_col, "arrival")?.unwrap_or(0.0);
        if arrival < 0.0 {
            return Err(IoError::Schema {
                line: Some(line),
                message: format!("task {id}: arrival must be non-negative, got {arrival}"),
            });
        }
        let static_priority = number(prio_col, "priority")?;
        doc.tasks.push(Task {
            id,
            burst,
            arrival,
            static_priority,
            external_priority: optional(ext_col, "external_priority")?,
            new_priority: optional(np_col, "new_priority")?,
        });
    }
    Ok(doc)
}

/// Serialize a workload. CSV writes `# name:` / `# source:` comments for the
/// metadata and only the optional columns some task uses.
pub fn emit_workload(doc: &WorkloadDocument, format: WorkloadFormat) -> Vec<u8> {
    match format {
        WorkloadFormat::Json => serde_json::to_vec_pretty(doc).expect("workload serializes"),
        WorkloadFormat::Csv => {
            let mut out = String::new();
            if let Some(name) = &doc.name {
                out.push_str(&format!("# name: {name}\n"));
            }
            if let Some(source) = &doc.source {
                out.push_str(&format!("# source: {source}\n"));
            }
            let with_ext = doc.tasks.iter().any(|t| t.external_priority.is_some());
            let with_np = doc.tasks.iter().any(|t| t.new_priority.is_some());
            let mut writer = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["id", "burst", "arrival", "priority"];
            if with_ext {
                header.push("external_priority");
            }
            if with_np {
                header.push("new_priority");
            }
            writer.write_record(&header).expect("write to memory");
            let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            for t in &doc.tasks {
                let mut row =
                    vec![t.id.clone(), t.burst.to_string(), t.arrival.to_string(), t.static_priority.to_string()];
                if with_ext {
                    row.push(opt(t.external_priority));
                }
                if with_np {
                    row.push(opt(t.new_priority));
                }
                writer.write_record(&row).expect("write to memory");
            }
            out.push_str(std::str::from_utf8(&writer.into_inner().expect("flush")).expect("utf-8"));
            out.into_bytes()
        }
    }
}
