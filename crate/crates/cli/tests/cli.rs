//! End-to-end tests of the binary: output is compared byte-for-byte
//! where the format is pinned, and exit codes follow the documented
//! mapping (0 ok, 1 usage, 2 validation, 3 check failure).

use std::path::PathBuf;
use std::process::{Command, Output};

fn file(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "files", name]
        .iter()
        .collect();
    path.to_string_lossy().into_owned()
}

fn seqarg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqarg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 output")
}

#[test]
fn args_lists_the_expected_flat_arguments() {
    let output = seqarg(&["args", &file("flat.apf")]);
    assert!(output.status.success());
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    for expected in [
        "p, p -> q => q",
        "~q => ~q",
        "p => p",
        "=> q | ~q",
        "p -> q, ~q => ~p",
    ] {
        assert!(lines.contains(&expected), "missing argument: {expected}");
    }
    // Canonical order and determinism: a second run is byte-identical.
    let again = seqarg(&["args", &file("flat.apf")]);
    assert_eq!(output.stdout, again.stdout);
}

#[test]
fn args_lists_the_translated_assumptive_arguments() {
    let output = seqarg(&["args", &file("assumptive.apf")]);
    assert!(output.status.success());
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    for expected in [
        "s => s",
        "p, ~p | ~q |~ => ~q",
        "q, ~p | ~q |~ => ~p",
        "p, q, ~p | r, ~q | r |~ => r",
    ] {
        assert!(lines.contains(&expected), "missing argument: {expected}");
    }
}

#[test]
fn attacks_carry_rule_and_witness_annotations() {
    let output = seqarg(&["attacks", &file("flat.apf")]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text
        .lines()
        .any(|l| l == "p, p -> q => q --[ucut:{~q}]--> ~q => ~q"));
    assert!(text
        .lines()
        .any(|l| l == "p -> q, ~q => ~p --[ucut:{p}]--> p => p"));
    // Arguments with an empty support are never attacked.
    assert!(!text.lines().any(|l| l.ends_with("--> => q | ~q")));
}

#[test]
fn attacks_on_the_translated_framework_follow_contraries() {
    let output = seqarg(&["attacks", &file("assumptive.apf")]);
    assert!(output.status.success());
    let text = stdout(&output);
    let b = "p, ~p | ~q |~ => ~q";
    let c = "q, ~p | ~q |~ => ~p";
    let d = "p, q, ~p | r, ~q | r |~ => r";
    assert!(text.lines().any(|l| l == format!("{b} --[at-aba:{{q}}]--> {c}")));
    assert!(text.lines().any(|l| l == format!("{c} --[at-aba:{{p}}]--> {b}")));
    assert!(text.lines().any(|l| l == format!("{b} --[at-aba:{{q}}]--> {d}")));
    assert!(text.lines().any(|l| l == format!("{c} --[at-aba:{{p}}]--> {d}")));
    assert!(!text.lines().any(|l| l.ends_with("--> s => s")));
}

#[test]
fn frameworks_without_attacks_list_nothing() {
    let output = seqarg(&["attacks", &file("peaceful.apf")]);
    assert!(output.status.success());
    assert_eq!(stdout(&output), "");
    // A consistent premise base has itself as the single maximal
    // consistent subset.
    let output = seqarg(&["mcs", &file("peaceful.apf")]);
    assert_eq!(
        stdout(&output),
        "mcs: { p, q }\nintersection: { p, q }\nfree: { p, q }\n"
    );
}

#[test]
fn stable_and_preferred_coincide_on_the_assumptive_example() {
    let stable = seqarg(&[
        "extensions",
        "--semantics",
        "stb",
        "--max-arguments",
        "64",
        &file("assumptive.apf"),
    ]);
    assert!(stable.status.success());
    let preferred = seqarg(&[
        "extensions",
        "--semantics",
        "prf",
        "--max-arguments",
        "64",
        &file("assumptive.apf"),
    ]);
    assert_eq!(stdout(&stable).lines().count(), 3);
    assert_eq!(stdout(&stable), stdout(&preferred));
}

#[test]
fn extensions_of_the_contradicting_pair() {
    let output = seqarg(&["extensions", "--semantics", "prf", &file("twovoices.apf")]);
    assert!(output.status.success());
    assert_eq!(
        stdout(&output),
        "{ => ~(p & ~p) ; ~p => ~(p & ~p) ; ~p => ~p }\n\
         { => ~(p & ~p) ; p => p ; p => ~(p & ~p) ; p => ~~p }\n"
    );
}

#[test]
fn grounded_extension_is_unique_and_unattacked() {
    let output = seqarg(&["extensions", &file("flat.apf")]);
    assert!(output.status.success());
    assert_eq!(
        stdout(&output),
        "{ => q | ~q ; => ~(p & ((p -> q) & ~q)) }\n"
    );
}

#[test]
fn stable_extensions_can_be_absent() {
    let output = seqarg(&["extensions", "--semantics", "stb", &file("selfdefeat.apf")]);
    assert!(output.status.success());
    assert_eq!(stdout(&output), "");
}

#[test]
fn entails_answers_the_flat_example() {
    let output = seqarg(&["entails", "--max-arguments", "64", &file("flat.apf")]);
    assert!(output.status.success());
    assert_eq!(
        stdout(&output),
        "q | ~q [grd/cap]: yes\n  witness in every extension: => q | ~q\np [grd/cap]: no\np -> q [grd/cap]: no\n~q [grd/cap]: no\nq [grd/cap]: no\n"
    );

    let skeptical = seqarg(&[
        "entails",
        "--semantics",
        "prf",
        "--mode",
        "cap",
        "--max-arguments",
        "64",
        &file("flat.apf"),
    ]);
    let text = stdout(&skeptical);
    assert!(text.contains("q | ~q [prf/cap]: yes"));
    assert!(text.contains("p [prf/cap]: no"));
    let credulous = seqarg(&[
        "entails",
        "--semantics",
        "prf",
        "--mode",
        "cup",
        "--max-arguments",
        "64",
        &file("flat.apf"),
    ]);
    let text = stdout(&credulous);
    assert!(text.contains("p [prf/cup]: yes"));
    assert!(text.contains("~q [prf/cup]: yes"));
}

#[test]
fn entails_answers_the_assumptive_example() {
    for (mode, expectations) in [
        ("cap", vec![("s", "yes"), ("p", "no"), ("q", "no"), ("~p | ~q", "no")]),
        ("cup", vec![("s", "yes"), ("p", "yes"), ("q", "yes"), ("~p | ~q", "yes")]),
        ("wcap", vec![("s", "yes"), ("p", "no"), ("q", "no"), ("~p | ~q", "no")]),
    ] {
        let output = seqarg(&[
            "entails",
            "--semantics",
            "prf",
            "--mode",
            mode,
            "--max-arguments",
            "64",
            &file("assumptive.apf"),
        ]);
        assert!(output.status.success());
        let text = stdout(&output);
        for (query, verdict) in &expectations {
            let needle = format!("{query} [prf/{mode}]: {verdict}");
            assert!(text.contains(&needle), "missing: {needle}\n{text}");
        }
    }
}

#[test]
fn entails_accepts_fresh_queries() {
    // The query is not in the file; the universe is built with it, so
    // there is never a user-facing pool error.
    let output = seqarg(&[
        "entails",
        "--query",
        "r | ~r",
        &file("twovoices.apf"),
    ]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("r | ~r [prf/cap]: yes"));
}

#[test]
fn entails_flags_vacuous_answers_without_extensions() {
    let output = seqarg(&["entails", &file("selfdefeat.apf")]);
    assert!(output.status.success());
    assert_eq!(
        stdout(&output),
        "a [stb/cap]: yes\n  note: no stb extensions; cap and wcap hold vacuously, cup fails\n"
    );
}

#[test]
fn mcs_reports_families_conflicts_and_free_formulas() {
    let output = seqarg(&["mcs", &file("flat.apf")]);
    assert!(output.status.success());
    assert_eq!(
        stdout(&output),
        "mcs: { p, p -> q }\n\
         mcs: { p, ~q }\n\
         mcs: { p -> q, ~q }\n\
         intersection: { }\n\
         minimal conflict: { p, p -> q, ~q }\n\
         free: { }\n"
    );

    let output = seqarg(&["mcs", &file("assumptive.apf")]);
    assert!(output.status.success());
    assert_eq!(
        stdout(&output),
        "mcs: { p, q, ~p | r, ~q | r }\n\
         mcs: { p, ~p | r, ~p | ~q, ~q | r }\n\
         mcs: { q, ~p | r, ~p | ~q, ~q | r }\n\
         intersection: { ~p | r, ~q | r }\n\
         minimal conflict: { p, q, ~p | ~q }\n\
         free: { s, ~p | r, ~q | r }\n"
    );
}

#[test]
fn check_passes_on_the_flat_example() {
    let output = seqarg(&["check", "--max-arguments", "64", &file("flat.apf")]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("flat [cap] p: prf=no stb=no mcs=no PASS"));
    assert!(text.contains("flat [cup] p: prf=yes stb=yes mcs=yes PASS"));
    assert!(text.ends_with("check: 15 pass, 0 fail, 0 skip\n"));
}

#[test]
fn check_passes_on_the_assumptive_example() {
    let output = seqarg(&["check", "--max-arguments", "64", &file("assumptive.apf")]);
    assert!(output.status.success(), "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.starts_with("contraposition: ok\n"));
    assert!(text.contains("translation [grd/cap] s: aba=yes seq=yes PASS"));
    assert!(text.contains("mcs-agreement [cap] r: prf=no stb=no mcs=no PASS"));
    assert!(text.contains("mcs-agreement [wcap] r: prf=yes stb=yes mcs=yes PASS"));
    assert!(text.ends_with("check: 75 pass, 0 fail, 0 skip\n"));
}

#[test]
fn check_skips_mcs_rows_when_contraposition_fails() {
    let output = seqarg(&["check", &file("rules.apf")]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.starts_with("contraposition: fails (A = {a, b}, G = {}, phi = a, psi = b)\n"));
    assert!(text.contains("translation [grd/cap] nb: aba=yes seq=yes PASS"));
    assert!(text.contains("mcs-agreement [cap] nb: SKIP (contraposition fails)"));
    assert!(text.ends_with("check: 24 pass, 0 fail, 6 skip\n"));
}

#[test]
fn json_output_mirrors_the_text_structure() {
    let output = seqarg(&["--json", "mcs", &file("flat.apf")]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("valid JSON");
    assert_eq!(value["mcs"].as_array().unwrap().len(), 3);
    assert_eq!(value["intersection"].as_array().unwrap().len(), 0);
    assert_eq!(value["free"].as_array().unwrap().len(), 0);

    let output = seqarg(&[
        "--json",
        "entails",
        "--semantics",
        "prf",
        "--mode",
        "wcap",
        &file("twovoices.apf"),
    ]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("valid JSON");
    let queries = value["queries"].as_array().unwrap();
    assert_eq!(queries.len(), 1);
    assert_eq!(queries[0]["query"], "p");
    assert_eq!(queries[0]["holds"], false);

    let output = seqarg(&["--json", "args", &file("twovoices.apf")]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("valid JSON");
    assert!(value["arguments"]
        .as_array()
        .unwrap()
        .iter()
        .any(|a| a == "p => p"));
}

#[test]
fn usage_errors_exit_with_code_1() {
    let missing_strict = "mode: flat\nattack: ucut\n";
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.apf");
    std::fs::write(&path, missing_strict).unwrap();
    let output = seqarg(&["args", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("nonempty `strict:`"));

    let output = seqarg(&["extensions", "--semantics", "bogus", &file("flat.apf")]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("unknown semantics"));

    let unknown_key = "mode: flat\nstrict: p\nattack: ucut\nwhatever: 1\n";
    std::fs::write(&path, unknown_key).unwrap();
    let output = seqarg(&["args", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr(&output).contains("unknown key"));

    let output = seqarg(&["args", dir.path().join("absent.apf").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn validation_errors_exit_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.apf");
    std::fs::write(
        &path,
        "mode: assumptive\nstrict: p; ~p\nassumptions: q\nattack: at-aba\n",
    )
    .unwrap();
    let output = seqarg(&["args", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("inconsistent"));

    // The enumeration cap is a validation error and names the cap.
    let output = seqarg(&["extensions", "--semantics", "prf", &file("flat.apf")]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("cap"));
}

#[test]
fn help_prints_and_exits_zero() {
    let output = seqarg(&["--help"]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("seqarg"));
}
