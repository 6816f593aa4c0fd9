#![allow(dead_code)]

use std::path::PathBuf;

use fuzzysched::fuzzy::{GeometryConfig, MembershipFunction, RuleBase};
use fuzzysched::io::{parse_workload, WorkloadFormat};
use fuzzysched::{Schedule, Task};
use rand::Rng;

pub fn fixture(name: &str) -> Vec<Task> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    let bytes = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_workload(&bytes, WorkloadFormat::Csv).unwrap().tasks
}

fn trapezoid(mf: &MembershipFunction, x: f64) -> f64 {
    let (a, b, c, d) = mf.corners();
    let rise = if b > a { (x - a) / (b - a) } else if x >= a { 1.0 } else { 0.0 };
    let fall = if d > c { (d - x) / (d - c) } else if x <= d { 1.0 } else { 0.0 };
    rise.min(fall).clamp(0.0, 1.0)
}

/// Brute-force Mamdani evaluation: min/clip/max with a midpoint Riemann sum
/// over `samples` cells of the output universe.
pub fn riemann_infer(config: &GeometryConfig, rules: &RuleBase, inputs: &[f64], samples: usize) -> f64 {
    let degree = |var_name: &str, term: &str, x: f64| {
        let var = config.inputs.iter().find(|v| v.name() == var_name).unwrap();
        let (lo, hi) = var.universe();
        let mf = &var.terms()[var.term_index(term).unwrap()].function;
        trapezoid(mf, x.clamp(lo, hi))
    };
    let strengths: Vec<(MembershipFunction, f64)> = rules
        .rules
        .iter()
        .map(|rule| {
            let strength = rule
                .antecedents
                .iter()
                .map(|c| {
                    let idx = config.inputs.iter().position(|v| v.name() == c.variable).unwrap();
                    degree(&c.variable, &c.term, inputs[idx])
                })
                .fold(1.0, f64::min);
            let out = &config.output;
            (out.terms()[out.term_index(&rule.consequent.term).unwrap()].function, strength)
        })
        .collect();
    let (lo, hi) = config.output.universe();
    let dx = (hi - lo) / samples as f64;
    let (mut area, mut moment) = (0.0, 0.0);
    for i in 0..samples {
        let x = lo + (i as f64 + 0.5) * dx;
        let mu = strengths.iter().map(|(mf, s)| trapezoid(mf, x).min(*s)).fold(0.0, f64::max);
        area += mu;
        moment += x * mu;
    }
    moment / area
}

/// Independent schedule checks: ordering, non-overlap, full service,
/// no early start, and no idle CPU while some task is ready.
pub fn schedule_problems(schedule: &Schedule) -> Vec<String> {
    let mut problems = Vec::new();
    let segs = &schedule.segments;
    for w in segs.windows(2) {
        if w[1].start < w[0].end {
            problems.push(format!("overlap at {}", w[1].start));
        }
    }
    for s in segs {
        if s.start >= s.end {
            problems.push(format!("empty segment {}", s.id));
        }
    }
    for t in &schedule.tasks {
        let mine: Vec<_> = segs.iter().filter(|s| s.id == t.id).collect();
        let served: f64 = mine.iter().map(|s| s.end - s.start).sum();
        if served != t.burst {
            problems.push(format!("{} served {served} of {}", t.id, t.burst));
        }
        if mine.iter().any(|s| s.start < t.arrival) {
            problems.push(format!("{} starts early", t.id));
        }
    }
    // every instant where the CPU is idle must have no arrived unfinished task
    let mut idle = Vec::new();
    let mut cursor = 0.0;
    for s in segs {
        if s.start > cursor {
            idle.push((cursor, s.start));
        }
        cursor = s.end;
    }
    for (a, b) in idle {
        for t in &schedule.tasks {
            let served_before: f64 =
                segs.iter().filter(|s| s.id == t.id && s.end <= a).map(|s| s.end - s.start).sum();
            if t.arrival < b && served_before < t.burst {
                problems.push(format!("idle [{a},{b}) while {} ready", t.id));
            }
        }
    }
    problems
}

/// Random workload: n in 1..=max_n, integer bursts 1-30, arrivals 0-20,
/// integer priorities, and recorded priorities on every task.
pub fn random_workload(rng: &mut impl Rng, max_n: usize, zero_arrivals: bool) -> Vec<Task> {
    let n = rng.gen_range(1..=max_n);
    (0..n)
        .map(|i| {
            let burst = rng.gen_range(1..=30) as f64;
            let arrival = if zero_arrivals { 0.0 } else { rng.gen_range(0..=20) as f64 };
            let priority = rng.gen_range(1..=9) as f64;
            let ext = (rng.gen_range(0.0..10.0_f64) * 1000.0).round() / 1000.0;
            let np = (rng.gen_range(0.0..10.0_f64) * 100.0).round() / 100.0;
            Task::new(format!("P{}", i + 1), burst, arrival, priority)
                .with_external_priority(ext)
                .with_new_priority(np)
        })
        .collect()
}

/// Average waiting time of a non-preemptive, zero-arrival run in `order`:
/// the job at position i delays the n - 1 - i jobs behind it.
pub fn prefix_sum_waiting(bursts_in_order: &[f64]) -> f64 {
    let n = bursts_in_order.len();
    bursts_in_order.iter().enumerate().map(|(i, b)| (n - 1 - i) as f64 * b).sum::<f64>() / n as f64
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for perm in permutations(n - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}
