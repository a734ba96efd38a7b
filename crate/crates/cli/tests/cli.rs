//! Contract tests for the `tg` binary: exit codes, JSON stability, and
//! output shapes.

use std::process::{Command, Output};

fn tg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tg"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .env_remove("TG_CAP")
        .output()
        .expect("spawn tg")
}

fn tg_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tg"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .env(key, value)
        .output()
        .expect("spawn tg")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn verify_json_is_deterministic_modulo_timing() {
    let args = ["verify", "fixtures/double_cut.txt", "-k", "2", "--json"];
    let a = tg(&args);
    let b = tg(&args);
    assert!(a.status.success() && b.status.success());
    let scrub = |text: &str| {
        let mut v: serde_json::Value = serde_json::from_str(text).expect("json");
        for c in v["claims"].as_array_mut().expect("claims") {
            c.as_object_mut().unwrap().remove("millis");
        }
        v
    };
    assert_eq!(scrub(&stdout(&a)), scrub(&stdout(&b)));
}

#[test]
fn verify_exit_codes() {
    // Healthy graph: 0.
    assert!(tg(&["verify", "fixtures/double_cut.txt", "-k", "2"]).status.success());
    // Degenerate but exempt: still 0.
    assert!(tg(&["verify", "fixtures/c4.txt", "-k", "2"]).status.success());
    // Usage errors: 2.
    let out = tg(&["verify", "fixtures/double_cut.txt", "-k", "2", "--claim", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown claim id"));
    let out = tg(&["verify", "no_such_file.txt", "-k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tg(&["verify", "fixtures/double_cut.txt", "-k", "99"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("invalid token count"));
    // Missing required argument: clap's own usage exit.
    let out = tg(&["verify", "fixtures/double_cut.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_env_var_is_validated() {
    let out = tg_env(&["cuts", "fixtures/p3.txt"], "TG_CAP", "not-a-number");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("TG_CAP"));
    // A valid env cap is honoured...
    let out = tg_env(&["build", "fixtures/double_cut.txt", "-k", "2"], "TG_CAP", "3");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cap"));
    // ...and the flag overrides it.
    let out = tg_env(
        &["build", "fixtures/double_cut.txt", "-k", "2", "--cap", "100"],
        "TG_CAP",
        "3",
    );
    assert!(out.status.success());
}

#[test]
fn build_edgelist_and_dot() {
    let out = tg(&["build", "fixtures/p3.txt", "-k", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("{a,b} {a,c}"));
    assert!(text.contains("{a,c} {b,c}"));

    let out = tg(&["build", "fixtures/p3.txt", "-k", "2", "--emit", "dot"]);
    let text = stdout(&out);
    assert!(text.starts_with("graph tokens {"));
    assert!(text.contains("\"{a,b}\" -- \"{a,c}\";"));

    let out = tg(&["build", "fixtures/p3.txt", "-k", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
    assert_eq!(v["edges"].as_array().unwrap().len(), 2);
}

#[test]
fn cuts_listing() {
    let out = tg(&["cuts", "fixtures/double_cut.txt"]);
    let text = stdout(&out);
    assert!(text.contains("2 same-neighbour 2-cut(s)"));
    assert!(text.contains("{x1, y1}"));
    assert!(!text.contains("tuples:"), "tuple counts need -k");

    let out = tg(&["cuts", "fixtures/double_cut.txt", "-k", "2"]);
    let text = stdout(&out);
    assert!(text.contains("tuples: 2"));
    assert!(text.contains("total tuple classes at k=2: 4"));

    let out = tg(&["cuts", "fixtures/double_cut.txt", "-k", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["q"], 2);
    assert_eq!(v["tuple_total"], 4);
    assert_eq!(v["cuts"][0]["component_sizes"], serde_json::json!([1, 3]));
}

#[test]
fn phi_cycle_output() {
    let out = tg(&[
        "phi", "fixtures/double_cut.txt", "-k", "2", "--cut", "1", "--alpha", "0-1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("({x1,x2} {y1,x2})"));
    assert!(text.contains("moves 6 of 15"));

    // The full flip set of one cut is induced by swapping the cut pair.
    let out = tg(&[
        "phi", "fixtures/double_cut.txt", "-k", "2", "--cut", "1", "--alpha", "all", "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["is_automorphism"], true);
    assert_eq!(v["moved"], 8);

    // Empty flip set is the identity.
    let out = tg(&[
        "phi", "fixtures/double_cut.txt", "-k", "2", "--cut", "1", "--alpha", "none",
    ]);
    assert!(stdout(&out).contains("moves 0 of 15"));
}

#[test]
fn phi_rejects_bad_cut_and_tuple() {
    let out = tg(&[
        "phi", "fixtures/double_cut.txt", "-k", "2", "--cut", "9", "--alpha", "all",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("out of range"));

    let out = tg(&[
        "phi", "fixtures/double_cut.txt", "-k", "2", "--cut", "1", "--alpha", "2-2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("valid: 0-1, 1-0"));
}

#[test]
fn psi_combines_cuts() {
    let out = tg(&[
        "psi", "fixtures/double_cut.txt", "-k", "2", "--beta", "1:0-1,2:0-1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("({x1,x2} {y1,y2})"));
    assert!(text.contains("moves 8 of 15"));

    // Taking a whole cut's flip block is the induced pair swap.
    let out = tg(&["psi", "fixtures/double_cut.txt", "-k", "2", "--beta", "2:all", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["is_automorphism"], true);
    assert_eq!(v["beta"].as_array().unwrap().len(), 2);
}

#[test]
fn order_and_report_numbers() {
    let out = tg(&["order", "fixtures/double_cut.txt", "-k", "2"]);
    let text = stdout(&out);
    assert!(text.contains("predicted order: 32"));
    assert!(text.contains("closure order: 32"));
    assert!(!text.contains("oracle"), "token oracle runs only on request");

    let out = tg(&["report", "fixtures/double_cut.txt", "-k", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["token_vertices"], 15);
    assert_eq!(v["token_edges"], 32);
    assert_eq!(v["aut_order"], 8);
    assert_eq!(v["stab_order"], 2);
    assert_eq!(v["predicted"], "32");
    assert_eq!(v["closure"], 32);
    assert_eq!(v["token_aut_order"], 32);
}

#[test]
fn oracle_output() {
    let out = tg(&["oracle", "fixtures/k23.txt", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["order"], 12);
    assert!(!v["generators"].as_array().unwrap().is_empty());

    let out = tg(&["oracle", "fixtures/asym_tree.txt"]);
    let text = stdout(&out);
    assert!(text.contains("|Aut| = 1"));
}

#[test]
fn verify_list_and_filter() {
    let out = tg(&["verify", "fixtures/double_cut.txt", "-k", "2", "--list"]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 24);
    assert_eq!(text.lines().next().unwrap(), "action-axioms");

    let out = tg(&[
        "verify", "fixtures/double_cut.txt", "-k", "2", "--claim", "phi-xor-law", "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(v["claims"].as_array().unwrap().len(), 1);
    assert_eq!(v["claims"][0]["id"], "phi-xor-law");
    assert_eq!(v["claims"][0]["status"], "pass");
}
