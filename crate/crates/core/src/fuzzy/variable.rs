use serde::{Deserialize, Serialize};

use super::{FuzzyError, MembershipFunction};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    #[serde(flatten)]
    pub function: MembershipFunction,
}

/// A named variable over a closed universe with an ordered list of terms.
///
/// Term order is semantic (lowest to highest) and is preserved everywhere
/// degrees are reported.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawVariable", into = "RawVariable")]
pub struct LinguisticVariable {
    name: String,
    universe: (f64, f64),
    terms: Vec<Term>,
}

#[derive(Serialize, Deserialize)]
struct RawVariable {
    name: String,
    universe: [f64; 2],
    terms: Vec<Term>,
}

impl TryFrom<RawVariable> for LinguisticVariable {
    type Error = FuzzyError;

    fn try_from(raw: RawVariable) -> Result<Self, Self::Error> {
        LinguisticVariable::new(raw.name, (raw.universe[0], raw.universe[1]), raw.terms)
    }
}

impl From<LinguisticVariable> for RawVariable {
    fn from(v: LinguisticVariable) -> Self {
        RawVariable { name: v.name, universe: [v.universe.0, v.universe.1], terms: v.terms }
    }
}

impl LinguisticVariable {
    pub fn new(
        name: impl Into<String>,
        universe: (f64, f64),
        terms: Vec<Term>,
    ) -> Result<Self, FuzzyError> {
        let name = name.into();
        let (lo, hi) = universe;
        if !is_identifier(&name) {
            return Err(FuzzyError::Config(format!("invalid variable name {name:?}")));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(FuzzyError::Config(format!(
                "variable {name}: universe [{lo}, {hi}] is not a proper interval"
            )));
        }
        if terms.is_empty() {
            return Err(FuzzyError::Config(format!("variable {name} has no terms")));
        }
        for (i, term) in terms.iter().enumerate() {
            if !is_identifier(&term.name) {
                return Err(FuzzyError::Config(format!(
                    "variable {name}: invalid term name {:?}",
                    term.name
                )));
            }
            if terms[..i].iter().any(|t| t.name == term.name) {
                return Err(FuzzyError::Config(format!(
                    "variable {name}: duplicate term {}",
                    term.name
                )));
            }
            term.function.validate()?;
            let (a, d) = term.function.support();
            if a < lo || d > hi {
                return Err(FuzzyError::Config(format!(
                    "variable {name}: term {} support [{a}, {d}] leaves universe [{lo}, {hi}]",
                    term.name
                )));
            }
        }
        Ok(LinguisticVariable { name, universe, terms })
    }

    /// Five evenly spaced terms with shoulder trapezoids at both ends and
    /// triangles between adjacent peaks. Degrees sum to one everywhere.
    pub fn evenly_spaced(
        name: impl Into<String>,
        universe: (f64, f64),
        term_names: &[&str],
    ) -> Result<Self, FuzzyError> {
        let (lo, hi) = universe;
        let n = term_names.len();
        if n < 2 {
            return Err(FuzzyError::Config("evenly spaced variables need two or more terms".into()));
        }
        let step = (hi - lo) / (n - 1) as f64;
        let peak = |i: usize| if i == n - 1 { hi } else { lo + step * i as f64 };
        let terms = term_names
            .iter()
            .enumerate()
            .map(|(i, name)| {
                let function = if i == 0 {
                    MembershipFunction::Trapezoidal(lo, lo, lo, peak(1))
                } else if i == n - 1 {
                    MembershipFunction::Trapezoidal(peak(n - 2), hi, hi, hi)
                } else {
                    MembershipFunction::Triangular(peak(i - 1), peak(i), peak(i + 1))
                };
                Term { name: (*name).to_string(), function }
            })
            .collect();
        LinguisticVariable::new(name, universe, terms)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> (f64, f64) {
        self.universe
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn term_index(&self, term: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.name == term)
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.universe.0, self.universe.1)
    }

    /// Degree of every term at `x` (clamped to the universe), in term order.
    pub fn fuzzify(&self, x: f64) -> Vec<f64> {
        let x = self.clamp(x);
        self.terms.iter().map(|t| t.function.degree(x)).collect()
    }

    pub fn degree_of(&self, term: &str, x: f64) -> Option<f64> {
        let idx = self.term_index(term)?;
        Some(self.terms[idx].function.degree(self.clamp(x)))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
