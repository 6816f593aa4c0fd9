use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::defaults;
use super::membership::Line;
use super::{FuzzyError, FuzzyRule, LinguisticVariable, MembershipFunction, RuleBase};

/// Input and output variables of an engine. Serialized as the geometry
/// configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryConfig {
    pub inputs: Vec<LinguisticVariable>,
    pub output: LinguisticVariable,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig {
            inputs: vec![defaults::priority_variable(), defaults::exec_time_variable()],
            output: defaults::new_priority_variable(),
        }
    }
}

impl GeometryConfig {
    pub fn from_json(text: &str) -> Result<Self, FuzzyError> {
        let config: GeometryConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("geometry config serializes")
    }

    pub fn validate(&self) -> Result<(), FuzzyError> {
        if self.inputs.is_empty() {
            return Err(FuzzyError::Config("at least one input variable is required".into()));
        }
        let mut names: Vec<&str> = self.inputs.iter().map(|v| v.name()).collect();
        names.push(self.output.name());
        let mut sorted = names.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(FuzzyError::Config(format!("variable `{}` is defined twice", w[0])));
        }
        Ok(())
    }

    pub fn input(&self, name: &str) -> Option<(usize, &LinguisticVariable)> {
        self.inputs.iter().enumerate().find(|(_, v)| v.name() == name)
    }
}

#[derive(Debug, Clone)]
struct CompiledRule {
    antecedents: Vec<(usize, usize)>,
    consequent: usize,
}

/// Immutable Mamdani engine: geometry plus a validated rule base.
#[derive(Debug, Clone)]
pub struct FuzzyEngine {
    config: GeometryConfig,
    rules: RuleBase,
    compiled: Vec<CompiledRule>,
}

impl Default for FuzzyEngine {
    fn default() -> Self {
        FuzzyEngine::new(GeometryConfig::default(), defaults::default_rulebase())
            .expect("built-in engine configuration is valid")
    }
}

impl FuzzyEngine {
    pub fn new(config: GeometryConfig, rules: RuleBase) -> Result<Self, FuzzyError> {
        config.validate()?;
        let input_names: Vec<&str> = config.inputs.iter().map(|v| v.name()).collect();
        if rules.inputs.iter().map(String::as_str).ne(input_names.iter().copied())
            || rules.output != config.output.name()
        {
            return Err(FuzzyError::Config(format!(
                "rule base variables ({} -> {}) do not match geometry ({} -> {})",
                rules.inputs.join(", "),
                rules.output,
                input_names.join(", "),
                config.output.name()
            )));
        }
        if rules.is_empty() {
            return Err(FuzzyError::Config("rule base is empty".into()));
        }
        let mut seen = HashMap::new();
        let mut compiled = Vec::with_capacity(rules.len());
        for (idx, rule) in rules.rules.iter().enumerate() {
            compiled.push(compile(&config, rule)?);
            if let Some(first) = seen.insert(rule.antecedent_key(), idx + 1) {
                return Err(FuzzyError::DuplicateAntecedent { line: idx + 1, first_line: first });
            }
        }
        Ok(FuzzyEngine { config, rules, compiled })
    }

    pub fn config(&self) -> &GeometryConfig {
        &self.config
    }

    pub fn inputs(&self) -> &[LinguisticVariable] {
        &self.config.inputs
    }

    pub fn output(&self) -> &LinguisticVariable {
        &self.config.output
    }

    pub fn rulebase(&self) -> &RuleBase {
        &self.rules
    }

    /// Degrees for every input variable, in input order. Inputs are clamped
    /// to their universes.
    pub fn fuzzify_inputs(&self, values: &[f64]) -> Result<Vec<Vec<f64>>, FuzzyError> {
        if values.len() != self.config.inputs.len() {
            return Err(FuzzyError::InputArity { expected: self.config.inputs.len(), got: values.len() });
        }
        self.config
            .inputs
            .iter()
            .zip(values)
            .map(|(var, &x)| {
                if x.is_finite() {
                    Ok(var.fuzzify(x))
                } else {
                    Err(FuzzyError::NonFiniteInput { variable: var.name().to_string() })
                }
            })
            .collect()
    }

    /// Firing strength of `rule`: the minimum of its antecedent degrees.
    pub fn evaluate_rule(&self, rule: &FuzzyRule, degrees: &[Vec<f64>]) -> Result<f64, FuzzyError> {
        let compiled = compile(&self.config, rule)?;
        Ok(activation(&compiled, degrees))
    }

    /// Clip each consequent at its rule's activation and take the pointwise max.
    pub fn aggregate<'r>(
        &self,
        activations: impl IntoIterator<Item = (&'r FuzzyRule, f64)>,
    ) -> Result<AggregatedOutput, FuzzyError> {
        let mut agg = AggregatedOutput::zero(&self.config.output);
        for (rule, level) in activations {
            let compiled = compile(&self.config, rule)?;
            agg.raise(compiled.consequent, level);
        }
        Ok(agg)
    }

    /// Aggregated output for crisp inputs, before defuzzification.
    pub fn infer_aggregate(&self, values: &[f64]) -> Result<AggregatedOutput, FuzzyError> {
        let degrees = self.fuzzify_inputs(values)?;
        let mut agg = AggregatedOutput::zero(&self.config.output);
        for rule in &self.compiled {
            agg.raise(rule.consequent, activation(rule, &degrees));
        }
        Ok(agg)
    }

    /// Crisp output for crisp inputs.
    pub fn infer(&self, values: &[f64]) -> Result<f64, FuzzyError> {
        self.infer_aggregate(values)?.centroid()
    }
}

fn compile(config: &GeometryConfig, rule: &FuzzyRule) -> Result<CompiledRule, FuzzyError> {
    let mut antecedents = Vec::with_capacity(rule.antecedents.len());
    for clause in &rule.antecedents {
        let (var_idx, var) = config
            .input(&clause.variable)
            .ok_or_else(|| FuzzyError::UnknownVariable { name: clause.variable.clone(), at: None })?;
        let term_idx = var.term_index(&clause.term).ok_or_else(|| FuzzyError::UnknownTerm {
            variable: clause.variable.clone(),
            term: clause.term.clone(),
            at: None,
        })?;
        antecedents.push((var_idx, term_idx));
    }
    if rule.consequent.variable != config.output.name() {
        return Err(FuzzyError::UnknownVariable { name: rule.consequent.variable.clone(), at: None });
    }
    let consequent = config.output.term_index(&rule.consequent.term).ok_or_else(|| {
        FuzzyError::UnknownTerm {
            variable: rule.consequent.variable.clone(),
            term: rule.consequent.term.clone(),
            at: None,
        }
    })?;
    Ok(CompiledRule { antecedents, consequent })
}

fn activation(rule: &CompiledRule, degrees: &[Vec<f64>]) -> f64 {
    rule.antecedents
        .iter()
        .map(|&(var, term)| degrees.get(var).and_then(|d| d.get(term)).copied().unwrap_or(0.0))
        .fold(1.0, f64::min)
}

/// Max of output terms clipped at per-term levels, over the output universe.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregatedOutput {
    universe: (f64, f64),
    terms: Vec<MembershipFunction>,
    levels: Vec<f64>,
}

impl AggregatedOutput {
    fn zero(output: &LinguisticVariable) -> Self {
        let terms: Vec<_> = output.terms().iter().map(|t| t.function).collect();
        let levels = vec![0.0; terms.len()];
        AggregatedOutput { universe: output.universe(), terms, levels }
    }

    fn raise(&mut self, term: usize, level: f64) {
        let level = level.clamp(0.0, 1.0);
        if level > self.levels[term] {
            self.levels[term] = level;
        }
    }

    pub fn universe(&self) -> (f64, f64) {
        self.universe
    }

    /// Clip level per output term, in term order.
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|&l| l <= 0.0)
    }

    pub fn value(&self, x: f64) -> f64 {
        let (lo, hi) = self.universe;
        if !(lo..=hi).contains(&x) {
            return 0.0;
        }
        self.terms
            .iter()
            .zip(&self.levels)
            .map(|(mf, &level)| mf.degree(x).min(level))
            .fold(0.0, f64::max)
    }

    /// Area under the aggregate and its first moment, integrated exactly over
    /// the linear pieces of the envelope.
    pub fn moments(&self) -> (f64, f64) {
        let (lo, hi) = self.universe;
        let active: Vec<(&MembershipFunction, f64)> =
            self.terms.iter().zip(self.levels.iter().copied()).filter(|(_, l)| *l > 0.0).collect();

        let mut cuts = vec![lo, hi];
        for &(mf, level) in &active {
            cuts.extend(mf.breakpoints());
            cuts.extend(mf.level_crossings(level).into_iter().flatten());
        }
        cuts.retain(|x| (lo..=hi).contains(x));
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();

        let mut area = 0.0;
        let mut moment = 0.0;
        let mut lines: Vec<Line> = Vec::with_capacity(active.len());
        let mut sub: Vec<f64> = Vec::new();
        for w in cuts.windows(2) {
            let (x0, x1) = (w[0], w[1]);
            let mid = 0.5 * (x0 + x1);
            lines.clear();
            lines.extend(active.iter().map(|&(mf, level)| {
                let piece = mf.piece_at(mid);
                if piece.at(mid) >= level {
                    Line { slope: 0.0, intercept: level }
                } else {
                    piece
                }
            }));

            // split where two clipped terms cross so the envelope is linear
            sub.clear();
            sub.push(x0);
            for (i, f) in lines.iter().enumerate() {
                for g in &lines[i + 1..] {
                    let d0 = f.at(x0) - g.at(x0);
                    let d1 = f.at(x1) - g.at(x1);
                    if d0 * d1 < 0.0 {
                        sub.push(x0 + (x1 - x0) * d0 / (d0 - d1));
                    }
                }
            }
            sub.push(x1);
            sub.sort_by(f64::total_cmp);

            for s in sub.windows(2) {
                let (s0, s1) = (s[0], s[1]);
                let dx = s1 - s0;
                if dx <= 0.0 {
                    continue;
                }
                let y0 = lines.iter().map(|l| l.at(s0)).fold(0.0, f64::max);
                let y1 = lines.iter().map(|l| l.at(s1)).fold(0.0, f64::max);
                area += 0.5 * (y0 + y1) * dx;
                moment += dx * (s0 * (2.0 * y0 + y1) + s1 * (y0 + 2.0 * y1)) / 6.0;
            }
        }
        (area, moment)
    }

    /// Centroid defuzzification. Fails if no rule contributed.
    pub fn centroid(&self) -> Result<f64, FuzzyError> {
        let (area, moment) = self.moments();
        if self.is_zero() || area <= 0.0 {
            return Err(FuzzyError::NoRuleFired);
        }
        let (lo, hi) = self.universe;
        Ok((moment / area).clamp(lo, hi))
    }

    /// `n` evenly spaced `(x, value)` samples across the universe, endpoints
    /// included.
    pub fn samples(&self, n: usize) -> Vec<(f64, f64)> {
        let (lo, hi) = self.universe;
        let n = n.max(2);
        (0..n)
            .map(|i| {
                let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
                (x, self.value(x))
            })
            .collect()
    }
}

/// Free-standing form of [`AggregatedOutput::centroid`].
pub fn defuzzify_centroid(agg: &AggregatedOutput) -> Result<f64, FuzzyError> {
    agg.centroid()
}
