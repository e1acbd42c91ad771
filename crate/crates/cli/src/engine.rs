//! Assembles the framework described by a problem file and implements
//! the subcommands on top of it. All output is deterministic: universes,
//! attack listings, extension lists and families come out in canonical
//! order, so repeated runs are byte-identical.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use seqarg::aba::{
    contraposition_counterexample, translate_to_sequent, AbaError, AbaFramework,
    DeductionSystem, NativeAbaFramework,
};
use seqarg::attack::{AttackRule, Framework};
use seqarg::entailment::{
    answer_with_extensions, EntailmentMode, EntailmentWitness, QueryAnswer,
};
use seqarg::formula::Formula;
use seqarg::mcs;
use seqarg::semantics::{ExtensionCache, Semantics, SemanticsError};
use seqarg::universe::{build_universe, negated_conjunction_pool, UniverseError, UniverseOptions};

use crate::problem::{ProblemFile, ProblemMode};
use crate::AppError;

#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub max_atoms: usize,
    pub max_premises: usize,
    pub max_arguments: usize,
}

pub struct Engine {
    pub problem: ProblemFile,
    pub caps: Caps,
    pub contrary: Option<BTreeMap<Formula, Formula>>,
    pub framework: Framework,
    pub aba: Option<AbaFramework>,
}

fn validation(err: impl std::fmt::Display) -> AppError {
    AppError::Validation(err.to_string())
}

impl From<UniverseError> for AppError {
    fn from(err: UniverseError) -> Self {
        validation(err)
    }
}

impl From<AbaError> for AppError {
    fn from(err: AbaError) -> Self {
        validation(err)
    }
}

impl From<SemanticsError> for AppError {
    fn from(err: SemanticsError) -> Self {
        validation(err)
    }
}

/// The contrariness mapping: file overrides, negation for the rest.
fn contrary_map(problem: &ProblemFile) -> BTreeMap<Formula, Formula> {
    let mut map: BTreeMap<Formula, Formula> = problem
        .assumptions
        .iter()
        .map(|a| (a.clone(), Formula::neg(a.clone())))
        .collect();
    for (lhs, rhs) in &problem.contrary_overrides {
        map.insert(lhs.clone(), rhs.clone());
    }
    map
}

/// Build the framework for a problem, with every query (and the extra
/// one, when given) injected into the conclusion pool.
pub fn build_engine(
    problem: ProblemFile,
    caps: Caps,
    extra_query: Option<&Formula>,
) -> Result<Engine, AppError> {
    let options = UniverseOptions {
        minimal_support: false,
        max_premises: caps.max_premises,
        max_atoms: caps.max_atoms,
    };
    let mut queries: BTreeSet<Formula> = problem.queries.iter().cloned().collect();
    if let Some(q) = extra_query {
        queries.insert(q.clone());
    }

    let needs_contrary =
        problem.attacks.contains(&AttackRule::AtAba) || problem.mode.is_aba();
    let contrary = needs_contrary.then(|| contrary_map(&problem));

    match problem.mode {
        ProblemMode::Flat | ProblemMode::Assumptive => {
            let mut pool: BTreeSet<Formula> = problem
                .strict
                .union(&problem.assumptions)
                .cloned()
                .collect();
            pool.extend(queries);
            if let Some(map) = &contrary {
                pool.extend(map.values().cloned());
            }
            if problem.attacks.contains(&AttackRule::Ucut)
                || problem.attacks.contains(&AttackRule::Ducut)
            {
                let base: BTreeSet<Formula> = problem
                    .strict
                    .union(&problem.assumptions)
                    .cloned()
                    .collect();
                pool.extend(negated_conjunction_pool(&base));
            }
            let universe =
                build_universe(&problem.strict, &problem.assumptions, &pool, &options)?;
            let framework =
                seqarg::attack::build_framework(universe, problem.attacks.clone(), contrary.clone())
                    .map_err(validation)?;
            Ok(Engine {
                problem,
                caps,
                contrary,
                framework,
                aba: None,
            })
        }
        ProblemMode::AbaCoreLogic | ProblemMode::AbaRuleSystem => {
            let system = match problem.mode {
                ProblemMode::AbaCoreLogic => DeductionSystem::CoreLogic,
                _ => DeductionSystem::RuleSystem(problem.rules.clone()),
            };
            let aba = AbaFramework::new(
                system,
                problem.strict.clone(),
                problem.assumptions.clone(),
                contrary.clone().expect("aba mode always has a mapping"),
            )?;
            let mut pool = aba.default_goal_pool();
            pool.extend(queries);
            let framework = translate_to_sequent(&aba, &pool, &options)?;
            Ok(Engine {
                problem,
                caps,
                contrary,
                framework,
                aba: Some(aba),
            })
        }
    }
}

pub struct CommandOutput {
    pub text: String,
    pub json: Value,
    pub check_failed: bool,
}

impl CommandOutput {
    fn new(text: String, json: Value) -> Self {
        CommandOutput {
            text,
            json,
            check_failed: false,
        }
    }
}

pub fn cmd_args(engine: &Engine) -> CommandOutput {
    let lines: Vec<String> = engine
        .framework
        .universe()
        .arguments()
        .iter()
        .map(|a| a.to_string())
        .collect();
    CommandOutput::new(
        lines.join("\n") + if lines.is_empty() { "" } else { "\n" },
        json!({ "arguments": lines }),
    )
}

pub fn cmd_attacks(engine: &Engine) -> CommandOutput {
    let framework = &engine.framework;
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for attack in framework.attacks() {
        lines.push(framework.display_attack(attack));
        entries.push(json!({
            "attacker": framework.universe().arguments()[attack.attacker].to_string(),
            "attacked": framework.universe().arguments()[attack.attacked].to_string(),
            "rule": attack.rule.to_string(),
            "witness": attack.witness.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        }));
    }
    CommandOutput::new(
        lines.join("\n") + if lines.is_empty() { "" } else { "\n" },
        json!({ "attacks": entries }),
    )
}

fn render_extension(engine: &Engine, members: &BTreeSet<usize>) -> String {
    if members.is_empty() {
        return "{ }".to_owned();
    }
    let parts: Vec<String> = members
        .iter()
        .map(|&i| engine.framework.universe().arguments()[i].to_string())
        .collect();
    format!("{{ {} }}", parts.join(" ; "))
}

pub fn cmd_extensions(engine: &Engine, semantics: Semantics) -> Result<CommandOutput, AppError> {
    let mut cache = ExtensionCache::new(
        engine.framework.attack_graph(),
        engine.caps.max_arguments,
    );
    let extensions = cache.extensions(semantics)?;
    let lines: Vec<String> = extensions
        .iter()
        .map(|e| render_extension(engine, &e.members))
        .collect();
    let arrays: Vec<Vec<String>> = extensions
        .iter()
        .map(|e| {
            e.members
                .iter()
                .map(|&i| engine.framework.universe().arguments()[i].to_string())
                .collect()
        })
        .collect();
    Ok(CommandOutput::new(
        lines.join("\n") + if lines.is_empty() { "" } else { "\n" },
        json!({ "semantics": semantics.to_string(), "extensions": arrays }),
    ))
}

fn witness_lines(engine: &Engine, answer: &QueryAnswer, semantics: Semantics) -> Vec<String> {
    let argument = |i: usize| engine.framework.universe().arguments()[i].to_string();
    let mut lines = Vec::new();
    if answer.no_extensions {
        lines.push(format!(
            "  note: no {semantics} extensions; cap and wcap hold vacuously, cup fails"
        ));
        return lines;
    }
    match &answer.witness {
        Some(EntailmentWitness::EveryExtension { argument: i }) => {
            lines.push(format!("  witness in every extension: {}", argument(*i)));
        }
        Some(EntailmentWitness::SomeExtension {
            extension,
            argument: i,
        }) => {
            lines.push(format!(
                "  witness in extension {}: {}",
                extension,
                argument(*i)
            ));
        }
        Some(EntailmentWitness::PerExtension { arguments }) => {
            for (extension, i) in arguments {
                lines.push(format!(
                    "  witness in extension {}: {}",
                    extension,
                    argument(*i)
                ));
            }
        }
        None => {}
    }
    lines
}

fn witness_json(engine: &Engine, answer: &QueryAnswer) -> Value {
    let argument = |i: usize| engine.framework.universe().arguments()[i].to_string();
    match &answer.witness {
        Some(EntailmentWitness::EveryExtension { argument: i }) => {
            json!({ "in_every_extension": argument(*i) })
        }
        Some(EntailmentWitness::SomeExtension {
            extension,
            argument: i,
        }) => json!({ "extension": extension, "argument": argument(*i) }),
        Some(EntailmentWitness::PerExtension { arguments }) => json!({
            "per_extension": arguments
                .iter()
                .map(|(e, i)| json!({ "extension": e, "argument": argument(*i) }))
                .collect::<Vec<_>>()
        }),
        None => Value::Null,
    }
}

pub fn cmd_entails(
    engine: &Engine,
    semantics: Semantics,
    mode: EntailmentMode,
    queries: &[Formula],
) -> Result<CommandOutput, AppError> {
    let mut cache = ExtensionCache::new(
        engine.framework.attack_graph(),
        engine.caps.max_arguments,
    );
    let extensions = cache.extensions(semantics)?;
    let conclusions: Vec<&Formula> = engine
        .framework
        .universe()
        .arguments()
        .iter()
        .map(|a| a.conclusion())
        .collect();
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for goal in queries {
        let answer = answer_with_extensions(&extensions, &conclusions, mode, goal);
        lines.push(format!(
            "{goal} [{semantics}/{mode}]: {}",
            if answer.holds { "yes" } else { "no" }
        ));
        lines.extend(witness_lines(engine, &answer, semantics));
        entries.push(json!({
            "query": goal.to_string(),
            "semantics": semantics.to_string(),
            "mode": mode.to_string(),
            "holds": answer.holds,
            "no_extensions": answer.no_extensions,
            "witness": witness_json(engine, &answer),
        }));
    }
    Ok(CommandOutput::new(
        lines.join("\n") + "\n",
        json!({ "queries": entries }),
    ))
}

fn render_family(label: &str, members: &[BTreeSet<Formula>]) -> Vec<String> {
    members
        .iter()
        .map(|member| {
            let parts: Vec<String> = member.iter().map(|f| f.to_string()).collect();
            if parts.is_empty() {
                format!("{label}: {{ }}")
            } else {
                format!("{label}: {{ {} }}", parts.join(", "))
            }
        })
        .collect()
}

fn set_line(label: &str, set: &BTreeSet<Formula>) -> String {
    let parts: Vec<String> = set.iter().map(|f| f.to_string()).collect();
    if parts.is_empty() {
        format!("{label}: {{ }}")
    } else {
        format!("{label}: {{ {} }}", parts.join(", "))
    }
}

fn family_json(members: &[BTreeSet<Formula>]) -> Vec<Vec<String>> {
    members
        .iter()
        .map(|m| m.iter().map(|f| f.to_string()).collect())
        .collect()
}

pub fn cmd_mcs(engine: &Engine) -> Result<CommandOutput, AppError> {
    let cap = engine.caps.max_premises;
    let problem = &engine.problem;
    let mut lines = Vec::new();

    // Rule systems have their own consistency notion; the classical
    // minimal-conflict and free listings do not apply there.
    if let Some(aba) = engine.aba.as_ref().filter(|a| {
        matches!(a.system(), DeductionSystem::RuleSystem(_))
    }) {
        let members = aba.maximal_consistent_assumption_sets();
        lines.extend(render_family("mcs", &members));
        let intersection = members
            .iter()
            .skip(1)
            .fold(members.first().cloned().unwrap_or_default(), |acc, m| {
                acc.intersection(m).cloned().collect()
            });
        lines.push(set_line("intersection", &intersection));
        let json = json!({
            "mcs": family_json(&members),
            "intersection": intersection.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        });
        return Ok(CommandOutput::new(lines.join("\n") + "\n", json));
    }

    let family = if problem.assumptions.is_empty() {
        mcs::mcs(&problem.strict, cap).map_err(validation)?
    } else {
        mcs::mcs_with_assumptions(&problem.strict, &problem.assumptions, cap)
            .map_err(validation)?
    };
    lines.extend(render_family("mcs", &family.members));
    let intersection = family.intersection();
    lines.push(set_line("intersection", &intersection));

    let base: BTreeSet<Formula> = problem
        .strict
        .union(&problem.assumptions)
        .cloned()
        .collect();
    let conflicts = mcs::minimal_conflicts(&base, cap).map_err(validation)?;
    for conflict in &conflicts {
        lines.push(set_line("minimal conflict", conflict));
    }
    let free = mcs::free(&base, cap).map_err(validation)?;
    lines.push(set_line("free", &free));

    let json = json!({
        "mcs": family_json(&family.members),
        "intersection": intersection.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "minimal_conflicts": family_json(&conflicts),
        "free": free.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    });
    Ok(CommandOutput::new(lines.join("\n") + "\n", json))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

struct CheckReport {
    lines: Vec<String>,
    rows: Vec<Value>,
    pass: usize,
    fail: usize,
    skip: usize,
}

impl CheckReport {
    fn new() -> Self {
        CheckReport {
            lines: Vec::new(),
            rows: Vec::new(),
            pass: 0,
            fail: 0,
            skip: 0,
        }
    }

    fn row(&mut self, label: String, answers: Vec<(&str, bool)>, agree: bool) {
        let status = if agree { "PASS" } else { "FAIL" };
        let rendered: Vec<String> = answers
            .iter()
            .map(|(name, value)| format!("{name}={}", yes_no(*value)))
            .collect();
        self.lines
            .push(format!("{label}: {} {status}", rendered.join(" ")));
        self.rows.push(json!({
            "label": label,
            "answers": answers
                .iter()
                .map(|(name, value)| json!({ "engine": name, "holds": value }))
                .collect::<Vec<_>>(),
            "status": status,
        }));
        if agree {
            self.pass += 1;
        } else {
            self.fail += 1;
        }
    }

    fn skip_row(&mut self, label: String, reason: &str) {
        self.lines.push(format!("{label}: SKIP ({reason})"));
        self.rows.push(json!({ "label": label, "status": "SKIP", "reason": reason }));
        self.skip += 1;
    }

    fn finish(mut self, preamble: Vec<String>, extra: Value) -> CommandOutput {
        let mut lines = preamble;
        lines.append(&mut self.lines);
        lines.push(format!(
            "check: {} pass, {} fail, {} skip",
            self.pass, self.fail, self.skip
        ));
        let mut output = CommandOutput::new(
            lines.join("\n") + "\n",
            json!({
                "rows": self.rows,
                "summary": { "pass": self.pass, "fail": self.fail, "skip": self.skip },
                "contraposition": extra,
            }),
        );
        output.check_failed = self.fail > 0;
        output
    }
}

/// Cross-check the equivalences on this instance. Flat files compare
/// preferred and stable entailment against the flat MCS reasoner (the
/// undercut rule must be active). Assumptive and aba files compare
/// against the assumption-level MCS reasoner, gated on contraposition;
/// aba files additionally compare the native ABA route against the
/// translated framework under all four semantics.
pub fn cmd_check(engine: &Engine, queries: &[Formula]) -> Result<CommandOutput, AppError> {
    if queries.is_empty() {
        return Err(AppError::Usage(
            "check needs at least one query (use `query:` lines or --query)".into(),
        ));
    }
    let cap = engine.caps.max_arguments;
    let mut cache = ExtensionCache::new(engine.framework.attack_graph(), cap);
    let conclusions: Vec<&Formula> = engine
        .framework
        .universe()
        .arguments()
        .iter()
        .map(|a| a.conclusion())
        .collect();
    let preferred = cache.extensions(Semantics::Preferred)?;
    let stable = cache.extensions(Semantics::Stable)?;
    let mut report = CheckReport::new();

    match engine.problem.mode {
        ProblemMode::Flat => {
            if !engine.problem.attacks.contains(&AttackRule::Ucut) {
                return Err(AppError::Usage(
                    "the flat equivalence check needs the ucut attack rule".into(),
                ));
            }
            for mode in EntailmentMode::ALL {
                for goal in queries {
                    let via_preferred =
                        answer_with_extensions(&preferred, &conclusions, mode, goal).holds;
                    let via_stable =
                        answer_with_extensions(&stable, &conclusions, mode, goal).holds;
                    let via_mcs =
                        mcs::mcs_entails(&engine.problem.strict, goal, mode, engine.caps.max_premises)
                            .map_err(validation)?;
                    let agree = via_preferred == via_stable && via_stable == via_mcs;
                    report.row(
                        format!("flat [{mode}] {goal}"),
                        vec![("prf", via_preferred), ("stb", via_stable), ("mcs", via_mcs)],
                        agree,
                    );
                }
            }
            Ok(report.finish(Vec::new(), Value::Null))
        }
        ProblemMode::Assumptive | ProblemMode::AbaCoreLogic | ProblemMode::AbaRuleSystem => {
            if engine.problem.mode == ProblemMode::Assumptive
                && engine.problem.attacks != BTreeSet::from([AttackRule::AtAba])
            {
                return Err(AppError::Usage(
                    "the assumptive equivalence check needs at-aba as the only attack rule"
                        .into(),
                ));
            }
            // Both assumptive and aba files have a framework-level view
            // of the instance for the contraposition and MCS sides.
            let aba_view = match engine.aba.clone() {
                Some(aba) => aba,
                None => AbaFramework::new(
                    DeductionSystem::CoreLogic,
                    engine.problem.strict.clone(),
                    engine.problem.assumptions.clone(),
                    engine.contrary.clone().expect("at-aba implies a mapping"),
                )?,
            };

            let bound = aba_view.assumptions().len().min(4);
            let counterexample = contraposition_counterexample(&aba_view, bound);
            let preamble = vec![match &counterexample {
                None => "contraposition: ok".to_owned(),
                Some(w) => format!("contraposition: fails ({w})"),
            }];

            let native = match engine.problem.mode.is_aba() {
                true => Some(build_native(engine, &aba_view, cap)?),
                false => None,
            };
            if let Some((native, mut native_cache)) = native {
                let native_conclusions: Vec<&Formula> =
                    native.arguments().iter().map(|a| &a.conclusion).collect();
                for sem in Semantics::ALL {
                    let native_exts = native_cache.extensions(sem)?;
                    let translated_exts = cache.extensions(sem)?;
                    for mode in EntailmentMode::ALL {
                        for goal in queries {
                            let via_native = answer_with_extensions(
                                &native_exts,
                                &native_conclusions,
                                mode,
                                goal,
                            )
                            .holds;
                            let via_translation = answer_with_extensions(
                                &translated_exts,
                                &conclusions,
                                mode,
                                goal,
                            )
                            .holds;
                            report.row(
                                format!("translation [{sem}/{mode}] {goal}"),
                                vec![("aba", via_native), ("seq", via_translation)],
                                via_native == via_translation,
                            );
                        }
                    }
                }
            }

            for mode in EntailmentMode::ALL {
                for goal in queries {
                    if counterexample.is_some() {
                        report.skip_row(
                            format!("mcs-agreement [{mode}] {goal}"),
                            "contraposition fails",
                        );
                        continue;
                    }
                    let via_preferred =
                        answer_with_extensions(&preferred, &conclusions, mode, goal).holds;
                    let via_stable =
                        answer_with_extensions(&stable, &conclusions, mode, goal).holds;
                    let via_mcs = aba_view.mcs_entails(mode, goal);
                    let agree = via_preferred == via_stable && via_stable == via_mcs;
                    report.row(
                        format!("mcs-agreement [{mode}] {goal}"),
                        vec![("prf", via_preferred), ("stb", via_stable), ("mcs", via_mcs)],
                        agree,
                    );
                }
            }

            let contraposition_json = match &counterexample {
                None => json!("ok"),
                Some(w) => json!({ "fails": w.to_string() }),
            };
            Ok(report.finish(preamble, contraposition_json))
        }
    }
}

type NativeWithCache = (NativeAbaFramework, ExtensionCache);

fn build_native(
    engine: &Engine,
    aba: &AbaFramework,
    cap: usize,
) -> Result<NativeWithCache, AppError> {
    let mut pool = aba.default_goal_pool();
    pool.extend(engine.problem.queries.iter().cloned());
    let native = NativeAbaFramework::build(aba, &pool, cap)?;
    let cache = ExtensionCache::new(native.graph().clone(), cap);
    Ok((native, cache))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_disagreeing_row_marks_the_check_failed() {
        let mut report = CheckReport::new();
        report.row("mcs-agreement [cap] p".into(), vec![("prf", true), ("mcs", false)], false);
        report.row("mcs-agreement [cup] p".into(), vec![("prf", true), ("mcs", true)], true);
        report.skip_row("mcs-agreement [wcap] p".into(), "contraposition fails");
        let output = report.finish(Vec::new(), Value::Null);
        assert!(output.check_failed);
        assert!(output.text.contains("prf=yes mcs=no FAIL"));
        assert!(output.text.ends_with("check: 1 pass, 1 fail, 1 skip\n"));
    }
}
