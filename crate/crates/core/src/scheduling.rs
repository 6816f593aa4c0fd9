//! Event-driven single-CPU simulation.
//!
//! Decisions happen only at arrival instants and completions. Ties are
//! broken by priority key, then earlier arrival, then smaller id.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::fuzzy::{FuzzyEngine, FuzzyError};

/// One schedulable process. Higher priority values run first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Task {
    pub id: String,
    pub burst: f64,
    #[serde(default)]
    pub arrival: f64,
    #[serde(rename = "priority")]
    pub static_priority: f64,
    /// Priority computed elsewhere, replayed by the fuzzy-priority baseline.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub external_priority: Option<f64>,
    /// Previously computed new priority, replayed by the modified fuzzy policy.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub new_priority: Option<f64>,
}

impl Task {
    pub fn new(id: impl Into<String>, burst: f64, arrival: f64, static_priority: f64) -> Self {
        Task {
            id: id.into(),
            burst,
            arrival,
            static_priority,
            external_priority: None,
            new_priority: None,
        }
    }

    pub fn with_external_priority(mut self, p: f64) -> Self {
        self.external_priority = Some(p);
        self
    }

    pub fn with_new_priority(mut self, p: f64) -> Self {
        self.new_priority = Some(p);
        self
    }

    /// Recorded new priority, falling back to the external priority.
    pub fn recorded_new_priority(&self) -> Option<f64> {
        self.new_priority.or(self.external_priority)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrioritizedTask {
    #[serde(flatten)]
    pub task: Task,
    #[serde(rename = "np")]
    pub new_priority: f64,
}

/// Computes each task's new priority from (static priority, burst). With
/// `replay`, a recorded value on the task is copied instead when present.
pub fn assign_new_priorities(
    workload: &[Task],
    engine: &FuzzyEngine,
    replay: bool,
) -> Result<Vec<PrioritizedTask>, FuzzyError> {
    workload
        .iter()
        .map(|task| {
            let new_priority = match task.recorded_new_priority() {
                Some(p) if replay => p,
                _ => engine.infer(&[task.static_priority, task.burst])?,
            };
            Ok(PrioritizedTask { task: task.clone(), new_priority })
        })
        .collect()
}

/// Where the fuzzy policies get their priority key.
#[derive(Debug, Clone)]
pub enum PrioritySource {
    /// Infer from (static priority, burst).
    Engine(Arc<FuzzyEngine>),
    /// Use priorities recorded on the tasks.
    Recorded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyKind {
    StaticPriority,
    Sjf,
    FuzzyPriority,
    ModifiedFuzzy,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 4] =
        [PolicyKind::StaticPriority, PolicyKind::Sjf, PolicyKind::FuzzyPriority, PolicyKind::ModifiedFuzzy];

    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::StaticPriority => "static_priority",
            PolicyKind::Sjf => "sjf",
            PolicyKind::FuzzyPriority => "fuzzy_priority",
            PolicyKind::ModifiedFuzzy => "modified_fuzzy",
        }
    }

    pub fn with_source(self, source: PrioritySource) -> Policy {
        match self {
            PolicyKind::StaticPriority => Policy::StaticPriority,
            PolicyKind::Sjf => Policy::Sjf,
            PolicyKind::FuzzyPriority => Policy::FuzzyPriority(source),
            PolicyKind::ModifiedFuzzy => Policy::ModifiedFuzzy(source),
        }
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "priority" | "static_priority" => Ok(PolicyKind::StaticPriority),
            "sjf" => Ok(PolicyKind::Sjf),
            "fuzzy_priority" | "fuzzy" => Ok(PolicyKind::FuzzyPriority),
            "modified_fuzzy" => Ok(PolicyKind::ModifiedFuzzy),
            other => Err(format!(
                "unknown policy `{other}` (expected priority, sjf, fuzzy_priority or modified_fuzzy)"
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Policy {
    /// Non-preemptive shortest burst first.
    Sjf,
    /// Non-preemptive, highest static priority first.
    StaticPriority,
    /// Non-preemptive, highest fuzzy priority first. Recorded keys come from
    /// `external_priority`.
    FuzzyPriority(PrioritySource),
    /// Preempts only when a newly arrived task has a strictly higher new
    /// priority. Recorded keys come from `new_priority`, falling back to
    /// `external_priority`.
    ModifiedFuzzy(PrioritySource),
}

impl Policy {
    pub fn kind(&self) -> PolicyKind {
        match self {
            Policy::Sjf => PolicyKind::Sjf,
            Policy::StaticPriority => PolicyKind::StaticPriority,
            Policy::FuzzyPriority(_) => PolicyKind::FuzzyPriority,
            Policy::ModifiedFuzzy(_) => PolicyKind::ModifiedFuzzy,
        }
    }

    pub fn name(&self) -> &'static str {
        self.kind().name()
    }

    fn is_preemptive(&self) -> bool {
        matches!(self, Policy::ModifiedFuzzy(_))
    }

    fn recorded_key(&self, task: &Task) -> Option<f64> {
        match self {
            Policy::FuzzyPriority(_) => task.external_priority,
            Policy::ModifiedFuzzy(_) => task.recorded_new_priority(),
            _ => None,
        }
    }

    /// Dispatch key per task; larger runs first.
    fn keys(&self, workload: &[Task]) -> Result<Vec<f64>, FuzzyError> {
        workload
            .iter()
            .map(|task| match self {
                Policy::Sjf => Ok(-task.burst),
                Policy::StaticPriority => Ok(task.static_priority),
                Policy::FuzzyPriority(PrioritySource::Engine(engine))
                | Policy::ModifiedFuzzy(PrioritySource::Engine(engine)) => {
                    engine.infer(&[task.static_priority, task.burst])
                }
                Policy::FuzzyPriority(PrioritySource::Recorded)
                | Policy::ModifiedFuzzy(PrioritySource::Recorded) => Ok(self
                    .recorded_key(task)
                    .expect("validated workload has recorded priorities")),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub id: String,
    pub start: f64,
    pub end: f64,
}

impl Segment {
    pub fn duration(&self) -> f64 {
        self.end - self.start
    }
}

/// Time-ordered execution segments for a workload. Idle time is a gap
/// between segments.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub tasks: Vec<Task>,
    pub segments: Vec<Segment>,
}

impl Schedule {
    pub fn makespan(&self) -> f64 {
        self.segments.last().map_or(0.0, |s| s.end)
    }

    /// Task ids in execution order, one per segment.
    pub fn order(&self) -> Vec<&str> {
        self.segments.iter().map(|s| s.id.as_str()).collect()
    }

    /// Segment boundaries: every start plus the final end.
    pub fn boundaries(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::with_capacity(self.segments.len() + 1);
        for seg in &self.segments {
            if out.last() != Some(&seg.start) {
                out.push(seg.start);
            }
            out.push(seg.end);
        }
        out
    }

    pub fn completion(&self, id: &str) -> Option<f64> {
        self.segments.iter().rev().find(|s| s.id == id).map(|s| s.end)
    }

    /// Problems with this schedule: overlap, ordering, early starts, partial
    /// service, or CPU idle while a task was waiting. Empty when valid.
    pub fn verify(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for seg in &self.segments {
            if seg.start.partial_cmp(&seg.end) != Some(std::cmp::Ordering::Less) {
                problems.push(format!("segment {} [{}, {}] is empty", seg.id, seg.start, seg.end));
            }
            match self.tasks.iter().find(|t| t.id == seg.id) {
                Some(task) if seg.start < task.arrival => problems
                    .push(format!("{} starts at {} before arriving at {}", seg.id, seg.start, task.arrival)),
                Some(_) => {}
                None => problems.push(format!("segment for unknown task {}", seg.id)),
            }
        }
        for w in self.segments.windows(2) {
            if w[1].start < w[0].end {
                problems.push(format!("{} overlaps {} at {}", w[1].id, w[0].id, w[1].start));
            }
        }
        for task in &self.tasks {
            let served: f64 =
                self.segments.iter().filter(|s| s.id == task.id).map(Segment::duration).sum();
            if (served - task.burst).abs() > 1e-9 * task.burst.max(1.0) {
                problems.push(format!("{} served {} of burst {}", task.id, served, task.burst));
            }
        }
        let mut gaps = Vec::new();
        let mut cursor = 0.0;
        for seg in &self.segments {
            if seg.start > cursor {
                gaps.push((cursor, seg.start));
            }
            cursor = seg.end;
        }
        for (g0, g1) in gaps {
            for task in &self.tasks {
                let done = self.completion(&task.id).unwrap_or(task.arrival);
                if task.arrival < g1 && done > g0 {
                    problems.push(format!("CPU idle over [{g0}, {g1}] while {} was ready", task.id));
                }
            }
        }
        problems
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    EmptyId { row: usize },
    DuplicateId { id: String, rows: Vec<usize> },
    NonFinite { id: String, field: &'static str },
    NonPositiveBurst { id: String, burst: f64 },
    NegativeArrival { id: String, arrival: f64 },
    MissingPriority { id: String, field: &'static str, policy: &'static str },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyId { row } => write!(f, "task on row {row} has an empty id"),
            Violation::DuplicateId { id, rows } => {
                let rows: Vec<String> = rows.iter().map(ToString::to_string).collect();
                write!(f, "duplicate id {id} on rows {}", rows.join(", "))
            }
            Violation::NonFinite { id, field } => write!(f, "task {id}: {field} is not a finite number"),
            Violation::NonPositiveBurst { id, burst } => {
                write!(f, "task {id}: burst must be positive, got {burst}")
            }
            Violation::NegativeArrival { id, arrival } => {
                write!(f, "task {id}: arrival must be non-negative, got {arrival}")
            }
            Violation::MissingPriority { id, field, policy } => {
                write!(f, "task {id}: policy {policy} needs a recorded {field}")
            }
        }
    }
}

/// Checks a workload, optionally against the needs of `policy`. Rows are
/// 1-based positions in `workload`.
pub fn validate_workload(workload: &[Task], policy: Option<&Policy>) -> Vec<Violation> {
    let mut violations = Vec::new();
    for (idx, task) in workload.iter().enumerate() {
        let row = idx + 1;
        if task.id.trim().is_empty() {
            violations.push(Violation::EmptyId { row });
        } else if workload[..idx].iter().all(|t| t.id != task.id) {
            let rows: Vec<usize> = workload
                .iter()
                .enumerate()
                .filter(|(_, t)| t.id == task.id)
                .map(|(i, _)| i + 1)
                .collect();
            if rows.len() > 1 {
                violations.push(Violation::DuplicateId { id: task.id.clone(), rows });
            }
        }
        let id = || task.id.clone();
        let finite = [
            ("burst", Some(task.burst)),
            ("arrival", Some(task.arrival)),
            ("priority", Some(task.static_priority)),
            ("external_priority", task.external_priority),
            ("new_priority", task.new_priority),
        ];
        for (field, value) in finite {
            if value.is_some_and(|v| !v.is_finite()) {
                violations.push(Violation::NonFinite { id: id(), field });
            }
        }
        if task.burst <= 0.0 {
            violations.push(Violation::NonPositiveBurst { id: id(), burst: task.burst });
        }
        if task.arrival < 0.0 {
            violations.push(Violation::NegativeArrival { id: id(), arrival: task.arrival });
        }
        match policy {
            Some(p @ Policy::FuzzyPriority(PrioritySource::Recorded)) if task.external_priority.is_none() => {
                violations.push(Violation::MissingPriority {
                    id: id(),
                    field: "external_priority",
                    policy: p.name(),
                })
            }
            Some(p @ Policy::ModifiedFuzzy(PrioritySource::Recorded))
                if task.recorded_new_priority().is_none() =>
            {
                violations.push(Violation::MissingPriority { id: id(), field: "new_priority", policy: p.name() })
            }
            _ => {}
        }
    }
    violations
}

#[derive(Debug, thiserror::Error)]
pub enum SchedError {
    #[error("invalid workload: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
}

fn join(violations: &[Violation]) -> String {
    violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Simulates `workload` under `policy` starting at time 0.
pub fn simulate(workload: &[Task], policy: &Policy) -> Result<Schedule, SchedError> {
    let violations = validate_workload(workload, Some(policy));
    if !violations.is_empty() {
        return Err(SchedError::Invalid(violations));
    }
    let keys = policy.keys(workload)?;
    let rank = |a: usize, b: usize| -> Ordering {
        keys[b]
            .total_cmp(&keys[a])
            .then(workload[a].arrival.total_cmp(&workload[b].arrival))
            .then_with(|| workload[a].id.cmp(&workload[b].id))
    };
    let best = |ready: &[usize]| -> usize {
        *ready.iter().min_by(|&&a, &&b| rank(a, b)).expect("ready queue is non-empty")
    };

    let mut pending: Vec<usize> = (0..workload.len()).collect();
    pending.sort_by(|&a, &b| workload[a].arrival.total_cmp(&workload[b].arrival).then(a.cmp(&b)));
    let mut pending = pending.into_iter().peekable();

    let mut remaining: Vec<f64> = workload.iter().map(|t| t.burst).collect();
    let mut ready: Vec<usize> = Vec::new();
    let mut arrived: Vec<usize> = Vec::new();
    let mut running: Option<usize> = None;
    let mut segments: Vec<Segment> = Vec::new();
    let mut now = 0.0_f64;

    loop {
        arrived.clear();
        while let Some(&idx) = pending.peek() {
            if workload[idx].arrival > now {
                break;
            }
            pending.next();
            ready.push(idx);
            arrived.push(idx);
        }
        if ready.is_empty() {
            match pending.peek() {
                Some(&idx) => {
                    now = workload[idx].arrival;
                    continue;
                }
                None => break,
            }
        }

        let current = match running {
            Some(cur) if !arrived.iter().any(|&a| keys[a] > keys[cur]) => cur,
            _ => best(&ready),
        };

        let finish = now + remaining[current];
        let next_arrival = pending.peek().map(|&idx| workload[idx].arrival);
        let end = match next_arrival {
            Some(at) if policy.is_preemptive() && at < finish => at,
            _ => finish,
        };

        match segments.last_mut() {
            Some(last) if last.id == workload[current].id && last.end == now => last.end = end,
            _ => segments.push(Segment { id: workload[current].id.clone(), start: now, end }),
        }

        if end == finish {
            remaining[current] = 0.0;
            ready.retain(|&i| i != current);
            running = None;
        } else {
            remaining[current] -= end - now;
            running = Some(current);
        }
        now = end;
    }

    Ok(Schedule { tasks: workload.to_vec(), segments })
}
