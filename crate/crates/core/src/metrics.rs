use serde::{Deserialize, Serialize};

use crate::scheduling::{simulate, Policy, Schedule, Task};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskMetrics {
    pub id: String,
    pub completion: f64,
    pub turnaround: f64,
    pub waiting: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleMetrics {
    pub per_task: Vec<TaskMetrics>,
    pub avg_waiting: f64,
    pub avg_turnaround: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricsError {
    #[error("task {0} never runs in the schedule")]
    MissingTask(String),
}

/// Per-task completion, turnaround (completion - arrival) and waiting
/// (turnaround - burst), in workload order, plus their means.
pub fn compute_metrics(schedule: &Schedule) -> Result<ScheduleMetrics, MetricsError> {
    let per_task = schedule
        .tasks
        .iter()
        .map(|task| {
            let completion =
                schedule.completion(&task.id).ok_or_else(|| MetricsError::MissingTask(task.id.clone()))?;
            let turnaround = completion - task.arrival;
            Ok(TaskMetrics { id: task.id.clone(), completion, turnaround, waiting: turnaround - task.burst })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = per_task.len() as f64;
    let (avg_waiting, avg_turnaround) = if per_task.is_empty() {
        (0.0, 0.0)
    } else {
        (
            per_task.iter().map(|m| m.waiting).sum::<f64>() / n,
            per_task.iter().map(|m| m.turnaround).sum::<f64>() / n,
        )
    };
    Ok(ScheduleMetrics { per_task, avg_waiting, avg_turnaround })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonEntry {
    pub policy: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<ScheduleMetrics>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub workload: String,
    pub entries: Vec<ComparisonEntry>,
}

impl ComparisonReport {
    pub fn get(&self, policy: &str) -> Option<&ScheduleMetrics> {
        self.entries.iter().find(|e| e.policy == policy).and_then(|e| e.metrics.as_ref())
    }
}

/// Runs every policy on the same workload. A policy that fails is reported in
/// its own entry; the others still run.
pub fn compare(name: &str, workload: &[Task], policies: &[Policy]) -> ComparisonReport {
    let entries = std::thread::scope(|scope| {
        let handles: Vec<_> = policies
            .iter()
            .map(|policy| {
                scope.spawn(move || {
                    let result = simulate(workload, policy)
                        .map_err(|e| e.to_string())
                        .and_then(|s| compute_metrics(&s).map_err(|e| e.to_string()));
                    let (metrics, error) = match result {
                        Ok(m) => (Some(m), None),
                        Err(e) => (None, Some(e)),
                    };
                    ComparisonEntry { policy: policy.name().to_string(), metrics, error }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("simulation thread panicked")).collect()
    });
    ComparisonReport { workload: name.to_string(), entries }
}
