//! The line-oriented problem file format.
//!
//! ```text
//! # comment
//! mode: flat | assumptive | aba | core-logic | rule-system
//! strict: f1; f2; ...
//! assumptions: a1; a2; ...
//! contrary: a := f          (repeatable)
//! rules: b1, b2 -> h        (repeatable; empty body written `-> h`)
//! attack: ucut|ducut|at-aba (repeatable)
//! query: f                  (repeatable)
//! semantics: grd|cmp|prf|stb
//! entailment: cap|cup|wcap
//! ```
//!
//! `mode: aba` picks the rule-system backend when `rules:` lines are
//! present and the core-logic backend otherwise; `core-logic` and
//! `rule-system` select explicitly. Unknown keys are rejected. In rule
//! bodies the arrow separating body from head is the first one at paren
//! depth zero, so implications inside a body must be parenthesized.

use std::collections::BTreeSet;
use std::str::FromStr;

use seqarg::aba::InferenceRule;
use seqarg::attack::AttackRule;
use seqarg::entailment::EntailmentMode;
use seqarg::formula::Formula;
use seqarg::parser::parse;
use seqarg::semantics::Semantics;

use crate::AppError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemMode {
    Flat,
    Assumptive,
    AbaCoreLogic,
    AbaRuleSystem,
}

impl ProblemMode {
    pub fn is_aba(self) -> bool {
        matches!(self, ProblemMode::AbaCoreLogic | ProblemMode::AbaRuleSystem)
    }
}

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub mode: ProblemMode,
    pub strict: BTreeSet<Formula>,
    pub assumptions: BTreeSet<Formula>,
    pub contrary_overrides: Vec<(Formula, Formula)>,
    pub rules: Vec<InferenceRule>,
    pub attacks: BTreeSet<AttackRule>,
    pub queries: Vec<Formula>,
    pub semantics: Option<Semantics>,
    pub entailment: Option<EntailmentMode>,
}

fn usage(line: usize, message: impl Into<String>) -> AppError {
    AppError::Usage(format!("line {line}: {}", message.into()))
}

fn parse_formula(line: usize, text: &str) -> Result<Formula, AppError> {
    parse(text.trim()).map_err(|e| usage(line, format!("in {:?}: {e}", text.trim())))
}

fn parse_formula_list(line: usize, text: &str) -> Result<Vec<Formula>, AppError> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_formula(line, s))
        .collect()
}

/// Position of the first `->` at paren depth zero, skipping `<->`.
fn top_level_arrow(text: &str) -> Option<usize> {
    let bytes = text.as_bytes();
    let mut depth = 0usize;
    let mut i = 0usize;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth = depth.saturating_sub(1),
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 3;
                continue;
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') && depth == 0 => return Some(i),
            _ => {}
        }
        i += 1;
    }
    None
}

fn parse_rule(line: usize, text: &str) -> Result<InferenceRule, AppError> {
    let arrow = top_level_arrow(text)
        .ok_or_else(|| usage(line, "a rule needs `->` between body and head"))?;
    let body_text = &text[..arrow];
    let head_text = &text[arrow + 2..];
    let body = body_text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_formula(line, s))
        .collect::<Result<Vec<_>, _>>()?;
    if head_text.trim().is_empty() {
        return Err(usage(line, "a rule needs a head formula"));
    }
    let head = parse_formula(line, head_text)?;
    Ok(InferenceRule { body, head })
}

pub fn parse_problem(source: &str) -> Result<ProblemFile, AppError> {
    let mut mode_token: Option<(usize, String)> = None;
    let mut strict: Option<Vec<Formula>> = None;
    let mut assumptions: Option<Vec<Formula>> = None;
    let mut contrary_overrides = Vec::new();
    let mut rules = Vec::new();
    let mut attacks = BTreeSet::new();
    let mut queries: Vec<Formula> = Vec::new();
    let mut semantics: Option<Semantics> = None;
    let mut entailment: Option<EntailmentMode> = None;

    for (index, raw) in source.lines().enumerate() {
        let line = index + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| usage(line, "expected `key: value`"))?;
        let value = value.trim();
        match key.trim() {
            "mode" => {
                if mode_token.is_some() {
                    return Err(usage(line, "duplicate `mode:` line"));
                }
                mode_token = Some((line, value.to_owned()));
            }
            "strict" => {
                if strict.is_some() {
                    return Err(usage(line, "duplicate `strict:` line"));
                }
                strict = Some(parse_formula_list(line, value)?);
            }
            "assumptions" => {
                if assumptions.is_some() {
                    return Err(usage(line, "duplicate `assumptions:` line"));
                }
                assumptions = Some(parse_formula_list(line, value)?);
            }
            "contrary" => {
                let (lhs, rhs) = value
                    .split_once(":=")
                    .ok_or_else(|| usage(line, "expected `contrary: a := f`"))?;
                contrary_overrides.push((parse_formula(line, lhs)?, parse_formula(line, rhs)?));
            }
            "rules" => rules.push(parse_rule(line, value)?),
            "attack" => {
                let rule = AttackRule::from_str(value).map_err(|e| usage(line, e))?;
                attacks.insert(rule);
            }
            "query" => {
                let formula = parse_formula(line, value)?;
                if !queries.contains(&formula) {
                    queries.push(formula);
                }
            }
            "semantics" => {
                if semantics.is_some() {
                    return Err(usage(line, "duplicate `semantics:` line"));
                }
                semantics = Some(Semantics::from_str(value).map_err(|e| usage(line, e))?);
            }
            "entailment" => {
                if entailment.is_some() {
                    return Err(usage(line, "duplicate `entailment:` line"));
                }
                entailment =
                    Some(EntailmentMode::from_str(value).map_err(|e| usage(line, e))?);
            }
            other => return Err(usage(line, format!("unknown key: {other}"))),
        }
    }

    let (mode_line, token) =
        mode_token.ok_or_else(|| AppError::Usage("missing `mode:` line".into()))?;
    let mode = match token.as_str() {
        "flat" => ProblemMode::Flat,
        "assumptive" => ProblemMode::Assumptive,
        "core-logic" => ProblemMode::AbaCoreLogic,
        "rule-system" => ProblemMode::AbaRuleSystem,
        "aba" => {
            if rules.is_empty() {
                ProblemMode::AbaCoreLogic
            } else {
                ProblemMode::AbaRuleSystem
            }
        }
        other => return Err(usage(mode_line, format!("unknown mode: {other}"))),
    };

    let problem = ProblemFile {
        mode,
        strict: strict.unwrap_or_default().into_iter().collect(),
        assumptions: assumptions.unwrap_or_default().into_iter().collect(),
        contrary_overrides,
        rules,
        attacks,
        queries,
        semantics,
        entailment,
    };
    validate(&problem)?;
    Ok(problem)
}

fn validate(problem: &ProblemFile) -> Result<(), AppError> {
    let fail = |message: &str| Err(AppError::Usage(message.to_owned()));
    match problem.mode {
        ProblemMode::Flat => {
            if problem.strict.is_empty() {
                return fail("flat mode needs a nonempty `strict:` section");
            }
            if !problem.assumptions.is_empty() {
                return fail("flat mode does not take `assumptions:`");
            }
            if !problem.contrary_overrides.is_empty() {
                return fail("flat mode does not take `contrary:`");
            }
            if !problem.rules.is_empty() {
                return fail("flat mode does not take `rules:`");
            }
            if problem.attacks.is_empty() {
                return fail("flat mode needs at least one `attack:` line");
            }
            if problem.attacks.contains(&AttackRule::AtAba) {
                return fail("the at-aba attack rule needs assumptions");
            }
        }
        ProblemMode::Assumptive => {
            if problem.assumptions.is_empty() {
                return fail("assumptive mode needs a nonempty `assumptions:` section");
            }
            if !problem.rules.is_empty() {
                return fail("assumptive mode does not take `rules:`");
            }
            if problem.attacks.is_empty() {
                return fail("assumptive mode needs at least one `attack:` line");
            }
            if !problem.contrary_overrides.is_empty()
                && !problem.attacks.contains(&AttackRule::AtAba)
            {
                return fail("`contrary:` lines need the at-aba attack rule");
            }
        }
        ProblemMode::AbaCoreLogic | ProblemMode::AbaRuleSystem => {
            if problem.assumptions.is_empty() {
                return fail("aba mode needs a nonempty `assumptions:` section");
            }
            if problem.mode == ProblemMode::AbaCoreLogic && !problem.rules.is_empty() {
                return fail("core-logic mode does not take `rules:`");
            }
            if !problem.attacks.is_empty()
                && problem.attacks != BTreeSet::from([AttackRule::AtAba])
            {
                return fail("aba mode admits only the at-aba attack rule");
            }
        }
    }
    for (lhs, _) in &problem.contrary_overrides {
        if !problem.assumptions.contains(lhs) {
            return Err(AppError::Validation(format!(
                "contrary given for {lhs}, which is not an assumption"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_flat_file() {
        let problem = parse_problem(
            "# the running example\nmode: flat\nstrict: p; p -> q; ~q\nattack: ucut\nquery: q | ~q\n",
        )
        .unwrap();
        assert_eq!(problem.mode, ProblemMode::Flat);
        assert_eq!(problem.strict.len(), 3);
        assert_eq!(problem.queries.len(), 1);
    }

    #[test]
    fn aba_mode_infers_the_backend() {
        let core = parse_problem("mode: aba\nstrict: s\nassumptions: p; q\n").unwrap();
        assert_eq!(core.mode, ProblemMode::AbaCoreLogic);
        let rulesys =
            parse_problem("mode: aba\nassumptions: a; b\nrules: a -> c\n").unwrap();
        assert_eq!(rulesys.mode, ProblemMode::AbaRuleSystem);
    }

    #[test]
    fn rule_bodies_split_at_the_top_level_arrow() {
        let problem =
            parse_problem("mode: rule-system\nassumptions: a; b\nrules: (x -> y), a -> b\n")
                .unwrap();
        assert_eq!(problem.rules.len(), 1);
        assert_eq!(problem.rules[0].body.len(), 2);
        assert_eq!(problem.rules[0].head, parse("b").unwrap());
        let empty_body = parse_problem("mode: rule-system\nassumptions: a\nrules: -> h\n")
            .unwrap();
        assert!(empty_body.rules[0].body.is_empty());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = parse_problem("mode: flat\nstrict: p\nattack: ucut\nnonsense: 1\n")
            .unwrap_err();
        assert!(matches!(err, AppError::Usage(m) if m.contains("unknown key")));
    }

    #[test]
    fn missing_sections_are_usage_errors() {
        assert!(matches!(
            parse_problem("mode: flat\nattack: ucut\n"),
            Err(AppError::Usage(_))
        ));
        assert!(matches!(
            parse_problem("strict: p\n"),
            Err(AppError::Usage(_))
        ));
        assert!(matches!(
            parse_problem("mode: flat\nstrict: p\n"),
            Err(AppError::Usage(_))
        ));
    }

    #[test]
    fn formula_errors_carry_line_numbers() {
        let err = parse_problem("mode: flat\nstrict: p; q |\nattack: ucut\n").unwrap_err();
        assert!(matches!(err, AppError::Usage(m) if m.starts_with("line 2:")));
    }

    #[test]
    fn contrary_must_map_assumptions() {
        let err = parse_problem(
            "mode: aba\nstrict: s\nassumptions: p\ncontrary: q := ~q\n",
        )
        .unwrap_err();
        assert!(matches!(err, AppError::Validation(_)));
    }
}
