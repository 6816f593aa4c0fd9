//! Line-oriented rule language:
//!
//! ```text
//! # comment
//! IF priority IS high AND exec_time IS small THEN new_priority IS high
//! ```
//!
//! Keywords are case-insensitive; variable and term names are matched exactly.

use std::collections::HashMap;

use super::{Clause, FuzzyError, FuzzyRule, GeometryConfig, LinguisticVariable, Location, RuleBase};

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let code = match line.find('#') {
        Some(idx) => &line[..idx],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    for (idx, ch) in code.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token { text: &code[s..idx], column: code[..s].chars().count() + 1 });
            }
        } else if start.is_none() {
            start = Some(idx);
        }
    }
    if let Some(s) = start {
        tokens.push(Token { text: &code[s..], column: code[..s].chars().count() + 1 });
    }
    tokens
}

struct LineParser<'a> {
    line: usize,
    end_column: usize,
    tokens: std::iter::Peekable<std::vec::IntoIter<Token<'a>>>,
}

impl<'a> LineParser<'a> {
    fn at(&self, column: usize) -> Location {
        Location { line: self.line, column }
    }

    fn syntax(&self, column: usize, message: impl Into<String>) -> FuzzyError {
        FuzzyError::Syntax { at: self.at(column), message: message.into() }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), FuzzyError> {
        match self.tokens.next() {
            Some(tok) if tok.text.eq_ignore_ascii_case(kw) => Ok(()),
            Some(tok) => Err(self.syntax(tok.column, format!("expected `{kw}`, found `{}`", tok.text))),
            None => Err(self.syntax(self.end_column, format!("expected `{kw}`, found end of line"))),
        }
    }

    fn identifier(&mut self, what: &str) -> Result<Token<'a>, FuzzyError> {
        match self.tokens.next() {
            Some(tok) if super::variable::is_identifier(tok.text) && !is_keyword(tok.text) => Ok(tok),
            Some(tok) => Err(self.syntax(tok.column, format!("expected {what}, found `{}`", tok.text))),
            None => Err(self.syntax(self.end_column, format!("expected {what}, found end of line"))),
        }
    }

    fn clause(&mut self, allowed: &[&LinguisticVariable]) -> Result<Clause, FuzzyError> {
        let var = self.identifier("variable name")?;
        self.keyword("IS")?;
        let term = self.identifier("term name")?;
        let variable = allowed.iter().find(|v| v.name() == var.text).ok_or_else(|| {
            FuzzyError::UnknownVariable { name: var.text.to_string(), at: Some(self.at(var.column)) }
        })?;
        if variable.term_index(term.text).is_none() {
            return Err(FuzzyError::UnknownTerm {
                variable: var.text.to_string(),
                term: term.text.to_string(),
                at: Some(self.at(term.column)),
            });
        }
        Ok(Clause::new(var.text, term.text))
    }
}

fn is_keyword(s: &str) -> bool {
    ["if", "is", "and", "then"].iter().any(|kw| s.eq_ignore_ascii_case(kw))
}

/// Parse rules against the variables in `config`. Antecedents must name input
/// variables (each at most once per rule); the consequent must name the output.
pub fn parse_rulebase(text: &str, config: &GeometryConfig) -> Result<RuleBase, FuzzyError> {
    let inputs: Vec<&LinguisticVariable> = config.inputs.iter().collect();
    let output = [&config.output];
    let mut rules = Vec::new();
    let mut seen: HashMap<Vec<(String, String)>, usize> = HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        let end_column = raw.split('#').next().unwrap_or("").trim_end().chars().count() + 1;
        let mut p = LineParser { line, end_column, tokens: tokens.into_iter().peekable() };

        p.keyword("IF")?;
        let mut antecedents = vec![p.clause(&inputs)?];
        loop {
            match p.tokens.peek() {
                Some(tok) if tok.text.eq_ignore_ascii_case("AND") => {
                    p.tokens.next();
                    let column = p.tokens.peek().map_or(end_column, |t| t.column);
                    let clause = p.clause(&inputs)?;
                    if antecedents.iter().any(|c: &Clause| c.variable == clause.variable) {
                        return Err(p.syntax(
                            column,
                            format!("variable `{}` appears twice in one rule", clause.variable),
                        ));
                    }
                    antecedents.push(clause);
                }
                _ => break,
            }
        }
        p.keyword("THEN")?;
        let consequent = p.clause(&output)?;
        if let Some(tok) = p.tokens.next() {
            return Err(p.syntax(tok.column, format!("unexpected `{}` after consequent", tok.text)));
        }

        let rule = FuzzyRule::new(antecedents, consequent);
        let key = rule
            .antecedent_key()
            .into_iter()
            .map(|(v, t)| (v.to_string(), t.to_string()))
            .collect();
        if let Some(&first_line) = seen.get(&key) {
            return Err(FuzzyError::DuplicateAntecedent { line, first_line });
        }
        seen.insert(key, line);
        rules.push(rule);
    }

    Ok(RuleBase {
        inputs: config.inputs.iter().map(|v| v.name().to_string()).collect(),
        output: config.output.name().to_string(),
        rules,
    })
}
