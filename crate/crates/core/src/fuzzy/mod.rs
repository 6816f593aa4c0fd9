//! Mamdani fuzzy inference: min conjunction, clipped consequents, max
//! aggregation and exact centroid defuzzification.

mod dsl;
mod engine;
mod membership;
mod rules;
mod variable;

pub mod defaults;

use std::fmt;

pub use dsl::parse_rulebase;
pub use engine::{defuzzify_centroid, AggregatedOutput, FuzzyEngine, GeometryConfig};
pub use membership::MembershipFunction;
pub use rules::{Clause, FuzzyRule, RuleBase};
pub use variable::{LinguisticVariable, Term};

pub use defaults::default_rulebase;

/// Position in rule DSL text, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

fn located(loc: &Option<Location>) -> String {
    loc.map(|l| format!(" at {l}")).unwrap_or_default()
}

#[derive(Debug, thiserror::Error)]
pub enum FuzzyError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("syntax error at {at}: {message}")]
    Syntax { at: Location, message: String },
    #[error("unknown variable `{name}`{}", located(.at))]
    UnknownVariable { name: String, at: Option<Location> },
    #[error("unknown term `{term}` for variable `{variable}`{}", located(.at))]
    UnknownTerm { variable: String, term: String, at: Option<Location> },
    #[error("duplicate antecedent combination on line {line} (first defined on line {first_line})")]
    DuplicateAntecedent { line: usize, first_line: usize },
    #[error("no rule fired: aggregated output is zero everywhere")]
    NoRuleFired,
    #[error("input for `{variable}` is not a finite number")]
    NonFiniteInput { variable: String },
    #[error("expected {expected} inputs, got {got}")]
    InputArity { expected: usize, got: usize },
    #[error("geometry config: {0}")]
    Json(#[from] serde_json::Error),
}
