use std::process::Command as Process;

use clap::Parser;
use kauffman_cli::formats::{chi_from_json, jnf_from_json, kelement_from_json};
use kauffman_cli::{run, Cli, CommandResult, Status};
use kauffman_core::words::{parse, Word};
use kauffman_core::{diagrams, normal_form};
use proptest::prelude::*;
use serde_json::Value;

fn exec(args: &[&str]) -> CommandResult {
    let cli = Cli::try_parse_from(std::iter::once("kauffman").chain(args.iter().copied())).unwrap();
    run(&cli)
}

fn text(args: &[&str]) -> String {
    let r = exec(args);
    assert_eq!(r.status, Status::Ok, "{args:?}: {:?}", r.diagnostics);
    r.text
}

fn binary(args: &[&str]) -> (i32, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_kauffman"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn normalize_examples() {
    assert_eq!(text(&["--n", "3", "normalize", "h1 h2 h1"]), "h[1,1]");
    assert_eq!(text(&["--n", "3", "normalize", "h1 h1"]), "c h[1,1]");
    assert_eq!(text(&["--n", "3", "normalize", "1"]), "1");
}

#[test]
fn trace_lists_steps() {
    let out = text(&["--n", "3", "normalize", "h1 h1", "--trace"]);
    assert_eq!(
        out,
        "rule=3 pos=0 h[1,1] h[1,1] => c h[1,1] chi:-2->0\nc h[1,1]"
    );
    let r = exec(&["--n", "3", "--json", "normalize", "h1 h2 h1", "--trace"]);
    let steps = r.payload["trace"]["steps"].as_array().unwrap();
    assert!(!steps.is_empty());
    for s in steps {
        let d = s["chi_after"].as_i64().unwrap() - s["chi_before"].as_i64().unwrap();
        assert!(d == 0 || d == 2);
    }
}

#[test]
fn mul_and_eval() {
    assert!(text(&["--n", "4", "mul", "h[3,2]", "h[2,1]"]).starts_with("c h[3,1]\n"));
    assert!(text(&["--n", "3", "mul", "1", "h2"]).starts_with("h[2,2]\n"));
    let r = exec(&["--n", "3", "eval", "c"]);
    let e = kelement_from_json(&r.payload["element"]).unwrap();
    assert_eq!(e.exp, 1);
    assert!(e.diagram.is_identity());
    let printed: Value = serde_json::from_str(&r.text).unwrap();
    assert_eq!(printed, r.payload["element"]);
}

#[test]
fn chi_report() {
    assert_eq!(
        text(&["--n", "5", "chi", "c h[3,1] h[4,2]"]),
        "c_count=1 blue=1 red=1 chi=1"
    );
    let r = exec(&["--n", "5", "chi", "h[4,4] h[2,2]"]);
    let c = chi_from_json(&r.payload["chi"]).unwrap();
    assert_eq!((c.red, c.chi), (2, -2));
}

#[test]
fn membership_examples() {
    let out = text(&["--n", "4", "member", "c h[3,1]", "--certificate"]);
    assert!(out.starts_with("yes\n"));
    assert!(out.ends_with("certificate: h[3,2] h[2,3] h[2,1]"));
    assert!(text(&["--n", "3", "member", "c"]).starts_with("no (chi_odd)"));
    let r = exec(&["--n", "3", "member", "c c"]);
    assert_eq!(r.status, Status::Ok);
    assert!(r.text.starts_with("no (pure_scalar)"));
    assert_eq!(r.diagnostics.len(), 1);
    assert_eq!(r.payload["reason"], "pure_scalar");
}

#[test]
fn decompose_outcomes() {
    assert_eq!(text(&["--n", "6", "decompose", "h[5,2]"]), "h[5,4] h[3,2]");
    assert_eq!(text(&["--n", "3", "decompose", "1"]), "1");
    assert_eq!(exec(&["--n", "3", "decompose", "c"]).status, Status::Failed);
    assert_eq!(exec(&["--n", "3", "decompose", "c c"]).diagnostics.len(), 2);
}

#[test]
fn idempotents_of_k3() {
    assert_eq!(text(&["--n", "3", "idempotents"]), "1\nh[2,1]\nh[1,2]");
    let r = exec(&["--n", "5", "idempotents"]);
    assert_eq!(r.payload["count"], 15);
    for j in r.payload["idempotents"].as_array().unwrap() {
        let jnf = jnf_from_json(j).unwrap();
        let compact = parse(j["compact"].as_str().unwrap(), 5).unwrap();
        assert_eq!(normal_form(&compact).unwrap(), jnf);
    }
}

#[test]
fn eggbox_degree_ten() {
    let r = exec(&["eggbox", "--n", "10", "--class", "d1"]);
    assert!(r
        .text
        .starts_with("D1 (n=10): 5 R-classes x 4 L-classes, 8 idempotents"));
    assert_eq!(r.text.matches('*').count(), 8);
    let both = exec(&["--n", "10", "eggbox"]);
    let classes = both.payload["classes"].as_array().unwrap();
    assert_eq!(classes[1]["rows"].as_array().unwrap().len(), 4);
    assert_eq!(classes[1]["cols"].as_array().unwrap().len(), 5);
    assert_eq!(classes[1]["idempotent_count"], 8);
}

#[test]
fn verify_ranks_at_five() {
    let r = exec(&["verify", "--n", "5", "--suite", "main2"]);
    assert_eq!(r.status, Status::Ok);
    assert!(r.text.starts_with("ranks        PASS  rank 4"));
    assert_eq!(r.payload["suites"][0]["data"]["idrank"], 6);
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "--n",
        "4",
        "--seed",
        "7",
        "--suite",
        "confluence",
        "--trials",
        "300",
    ];
    assert_eq!(exec(&args).payload, exec(&args).payload);
}

#[test]
fn verify_skips_over_budget() {
    let r = exec(&[
        "verify",
        "--n",
        "9",
        "--suite",
        "ranks",
        "--suite",
        "incomparable",
    ]);
    assert_eq!(r.status, Status::Ok);
    let suites = r.payload["suites"].as_array().unwrap();
    assert!(suites.iter().all(|s| s["status"] == "skip"));
}

#[test]
fn envelope_schema() {
    let r = exec(&["--n", "3", "--json", "normalize", "h1"]);
    let v = r.to_json();
    assert_eq!(v["schema"], "kauffman.normalize/1");
    assert_eq!(v["status"], "ok");
    assert_eq!(v["exit_code"], 0);
    let bad = exec(&["--n", "3", "normalize", "h9"]).to_json();
    assert_eq!(bad["status"], "error");
    assert_eq!(bad["exit_code"], 2);
}

#[test]
fn exit_codes() {
    assert_eq!(binary(&["--n", "3", "normalize", "h1"]).0, 0);
    assert_eq!(binary(&["--n", "3", "normalize", "x1"]).0, 2);
    assert_eq!(binary(&["normalize", "h1"]).0, 2);
    assert_eq!(binary(&["--n", "2", "normalize", "h1"]).0, 2);
    assert_eq!(binary(&["--n", "3", "frobnicate"]).0, 2);
    assert_eq!(binary(&["--n", "3", "decompose", "c"]).0, 1);
    let (code, out) = binary(&["--n", "3", "--json", "mul", "h1", "h2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "kauffman.mul/1");
    assert_eq!(v["payload"]["normal_form"]["text"], "h[1,1] h[2,2]");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mul_payload_matches_core(a in proptest::collection::vec(1usize..5, 0..6), b in proptest::collection::vec(1usize..5, 0..6)) {
        let render = |v: &[usize]| if v.is_empty() { "1".to_string() } else {
            v.iter().map(|i| format!("h{i}")).collect::<Vec<_>>().join(" ")
        };
        let (ta, tb) = (render(&a), render(&b));
        let r = exec(&["--n", "5", "mul", &ta, &tb]);
        let e = kelement_from_json(&r.payload["element"]).unwrap();
        let jnf = jnf_from_json(&r.payload["normal_form"]).unwrap();
        let word = Word::from_generators(&[a.as_slice(), b.as_slice()].concat());
        prop_assert_eq!(&e, &diagrams::eval(&word, 5).unwrap());
        prop_assert_eq!(diagrams::eval(&jnf.to_word(), 5).unwrap(), e);
    }
}
