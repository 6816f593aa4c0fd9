use std::fmt;

use serde::{Deserialize, Serialize};

/// `variable IS term`
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Clause {
    pub variable: String,
    pub term: String,
}

impl Clause {
    pub fn new(variable: impl Into<String>, term: impl Into<String>) -> Self {
        Clause { variable: variable.into(), term: term.into() }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} IS {}", self.variable, self.term)
    }
}

/// Conjunctive rule: `IF a AND b ... THEN c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzyRule {
    pub antecedents: Vec<Clause>,
    pub consequent: Clause,
}

impl FuzzyRule {
    pub fn new(antecedents: Vec<Clause>, consequent: Clause) -> Self {
        FuzzyRule { antecedents, consequent }
    }

    /// Antecedent terms keyed by variable name, sorted, so that rules
    /// differing only in clause order compare equal.
    pub(crate) fn antecedent_key(&self) -> Vec<(&str, &str)> {
        let mut key: Vec<_> =
            self.antecedents.iter().map(|c| (c.variable.as_str(), c.term.as_str())).collect();
        key.sort_unstable();
        key
    }
}

impl fmt::Display for FuzzyRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IF ")?;
        for (i, clause) in self.antecedents.iter().enumerate() {
            if i > 0 {
                write!(f, " AND ")?;
            }
            write!(f, "{clause}")?;
        }
        write!(f, " THEN {}", self.consequent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleBase {
    pub inputs: Vec<String>,
    pub output: String,
    pub rules: Vec<FuzzyRule>,
}

impl RuleBase {
    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Consequent term for an exact antecedent combination, given in input order.
    pub fn lookup(&self, terms: &[&str]) -> Option<&str> {
        self.rules
            .iter()
            .find(|rule| {
                rule.antecedents.len() == terms.len()
                    && self.inputs.iter().zip(terms).all(|(var, term)| {
                        rule.antecedents.iter().any(|c| &c.variable == var && c.term == *term)
                    })
            })
            .map(|rule| rule.consequent.term.as_str())
    }

    /// One rule per line, parseable by [`crate::fuzzy::parse_rulebase`].
    pub fn to_dsl(&self) -> String {
        let mut out = String::new();
        for rule in &self.rules {
            out.push_str(&rule.to_string());
            out.push('\n');
        }
        out
    }
}
