//! Built-in priority-scheduling configuration: three five-term variables and
//! the 25-rule table mapping (priority, execution time) to a new priority.

use super::{Clause, FuzzyRule, LinguisticVariable, RuleBase};

pub const PRIORITY: &str = "priority";
pub const EXEC_TIME: &str = "exec_time";
pub const NEW_PRIORITY: &str = "new_priority";

pub const PRIORITY_TERMS: [&str; 5] = ["very_low", "low", "medium", "high", "very_high"];
pub const EXEC_TIME_TERMS: [&str; 5] = ["very_small", "small", "medium", "long", "very_long"];

pub const PRIORITY_UNIVERSE: (f64, f64) = (0.0, 10.0);
/// Bursts are at least one time unit, so the shortest term peaks at 1.
pub const EXEC_TIME_UNIVERSE: (f64, f64) = (1.0, 25.0);
pub const NEW_PRIORITY_UNIVERSE: (f64, f64) = (0.0, 10.0);

// (priority, exec_time) -> new_priority, grouped by execution time.
const TABLE: [(&str, &str, &str); 25] = [
    ("very_low", "very_small", "very_high"),
    ("low", "very_small", "very_high"),
    ("medium", "very_small", "very_high"),
    ("high", "very_small", "very_high"),
    ("very_high", "very_small", "very_high"),
    ("very_low", "small", "medium"),
    ("low", "small", "medium"),
    ("medium", "small", "high"),
    ("high", "small", "high"),
    ("very_high", "small", "very_high"),
    ("very_low", "medium", "very_low"),
    ("low", "medium", "low"),
    ("medium", "medium", "medium"),
    ("high", "medium", "medium"),
    ("very_high", "medium", "medium"),
    ("very_low", "long", "very_low"),
    ("low", "long", "very_low"),
    ("medium", "long", "low"),
    ("high", "long", "low"),
    ("very_high", "long", "low"),
    ("very_low", "very_long", "very_low"),
    ("low", "very_long", "very_low"),
    ("medium", "very_long", "very_low"),
    ("high", "very_long", "low"),
    ("very_high", "very_long", "low"),
];

pub fn priority_variable() -> LinguisticVariable {
    LinguisticVariable::evenly_spaced(PRIORITY, PRIORITY_UNIVERSE, &PRIORITY_TERMS)
        .expect("built-in priority variable is valid")
}

pub fn exec_time_variable() -> LinguisticVariable {
    LinguisticVariable::evenly_spaced(EXEC_TIME, EXEC_TIME_UNIVERSE, &EXEC_TIME_TERMS)
        .expect("built-in execution time variable is valid")
}

pub fn new_priority_variable() -> LinguisticVariable {
    LinguisticVariable::evenly_spaced(NEW_PRIORITY, NEW_PRIORITY_UNIVERSE, &PRIORITY_TERMS)
        .expect("built-in new priority variable is valid")
}

pub fn default_rulebase() -> RuleBase {
    let rules = TABLE
        .iter()
        .map(|&(pp, et, np)| {
            FuzzyRule::new(
                vec![Clause::new(PRIORITY, pp), Clause::new(EXEC_TIME, et)],
                Clause::new(NEW_PRIORITY, np),
            )
        })
        .collect();
    RuleBase { inputs: vec![PRIORITY.into(), EXEC_TIME.into()], output: NEW_PRIORITY.into(), rules }
}
