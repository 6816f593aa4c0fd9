//! Fuzzy-priority CPU scheduling toolkit.
//!
//! * [`fuzzy`] - Mamdani inference engine with the built-in
//!   (priority, execution time) -> new priority rule table.
//! * [`scheduling`] - event-driven simulation of SJF, static priority,
//!   fuzzy priority and the arrival-preemptive modified fuzzy policy.
//! * [`metrics`] - waiting/turnaround metrics and multi-policy comparison.
//! * [`io`] - workload files, Gantt charts and reports.

pub mod fuzzy;
pub mod io;
pub mod metrics;
pub mod scheduling;

pub use fuzzy::{FuzzyEngine, FuzzyError, GeometryConfig};
pub use metrics::{compare, compute_metrics, ComparisonReport, ScheduleMetrics, TaskMetrics};
pub use scheduling::{
    assign_new_priorities, simulate, validate_workload, Policy, PolicyKind, PrioritySource, Schedule,
    SchedError, Segment, Task,
};
