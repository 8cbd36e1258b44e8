//! Named verification suites behind `kauffman verify`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::thread;

use clap::ValueEnum;
use kauffman_core::idempotents::{
    chi_predicate, closure_bfs, enumerate_idempotents, verdict_for, Reason,
};
use kauffman_core::rewrite::{fuzz_confluence, normalize, summary};
use kauffman_core::structure::{verify_incomparable, verify_main2, SearchBudget, StructureError};
use kauffman_core::words::{enumerate_jnf, Jnf};
use serde_json::{json, Value};

use crate::{CommandResult, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Confluence,
    Membership,
    Idempotents,
    Incomparable,
    #[value(alias = "main2")]
    Ranks,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Confluence,
        Suite::Membership,
        Suite::Idempotents,
        Suite::Incomparable,
        Suite::Ranks,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Confluence => "confluence",
            Suite::Membership => "membership",
            Suite::Idempotents => "idempotents",
            Suite::Incomparable => "incomparable",
            Suite::Ranks => "ranks",
        }
    }
}

/// Degree limits for the exhaustive suites.
#[derive(Clone, Debug)]
pub struct Limits {
    pub membership_max_n: usize,
    pub membership_max_exp: u64,
    pub idempotents_max_n: usize,
    pub confluence_max_len: usize,
    pub search: SearchBudget,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            membership_max_n: 6,
            membership_max_exp: 5,
            idempotents_max_n: 9,
            confluence_max_len: 20,
            search: SearchBudget::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

impl Verdict {
    fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub verdict: Verdict,
    pub detail: String,
    pub data: Value,
}

fn outcome(suite: Suite, pass: bool, detail: String, data: Value) -> SuiteOutcome {
    SuiteOutcome {
        suite,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        detail,
        data,
    }
}

fn skip(suite: Suite, why: impl Into<String>) -> SuiteOutcome {
    SuiteOutcome {
        suite,
        verdict: Verdict::Skip,
        detail: why.into(),
        data: Value::Null,
    }
}

fn failed(suite: Suite, err: impl std::fmt::Display) -> SuiteOutcome {
    outcome(suite, false, err.to_string(), Value::Null)
}

fn confluence(n: usize, seed: u64, trials: usize, limits: &Limits) -> SuiteOutcome {
    match fuzz_confluence(n, trials, limits.confluence_max_len, seed) {
        Ok(r) => outcome(
            Suite::Confluence,
            r.is_clean(),
            summary(&r),
            json!({ "trials": r.trials, "divergences": r.divergences.len(), "chi_violations": r.chi_violations.len(), "steps": r.steps_checked }),
        ),
        Err(e) => failed(Suite::Confluence, e),
    }
}

fn membership(n: usize, limits: &Limits) -> SuiteOutcome {
    if n > limits.membership_max_n {
        return skip(
            Suite::Membership,
            format!(
                "budget: closure search limited to n <= {}",
                limits.membership_max_n
            ),
        );
    }
    let closure = match closure_bfs(n, limits.membership_max_exp) {
        Ok(c) => c,
        Err(e) => return failed(Suite::Membership, e),
    };
    let mut disagreements = 0;
    let mut pure_scalar = Vec::new();
    let forms = enumerate_jnf(n, limits.membership_max_exp as usize);
    for j in &forms {
        let v = verdict_for(j);
        let reachable = closure.contains(j);
        if v.member != reachable {
            disagreements += 1;
        }
        if v.reason == Reason::PureScalar && chi_predicate(j) && !reachable {
            pure_scalar.push(j.to_string());
        }
    }
    outcome(
        Suite::Membership,
        disagreements == 0,
        format!(
            "{} normal forms up to c^{}: {} disagreements; pure scalars excluded: {}",
            forms.len(),
            limits.membership_max_exp,
            disagreements,
            pure_scalar.join(", ")
        ),
        json!({ "forms": forms.len(), "disagreements": disagreements, "pure_scalar": pure_scalar }),
    )
}

fn idempotents(n: usize, limits: &Limits) -> SuiteOutcome {
    if n > limits.idempotents_max_n {
        return skip(
            Suite::Idempotents,
            format!(
                "budget: diagram enumeration limited to n <= {}",
                limits.idempotents_max_n
            ),
        );
    }
    let from_diagrams: BTreeSet<Jnf> = match enumerate_idempotents(n) {
        Ok(v) => v.into_iter().collect(),
        Err(e) => return failed(Suite::Idempotents, e),
    };
    let mut from_words = BTreeSet::new();
    for j in enumerate_jnf(n, 0) {
        let w = j.to_word();
        match normalize(&w.concat(&w)) {
            Ok(t) if t.output == j => {
                from_words.insert(j);
            }
            Ok(_) => {}
            Err(e) => return failed(Suite::Idempotents, e),
        }
    }
    let balanced = from_diagrams.iter().all(|j| {
        let c = j.chi();
        c.c_count == 0 && c.blue == c.red
    });
    let agree = from_diagrams == from_words;
    outcome(
        Suite::Idempotents,
        balanced && agree,
        format!(
            "{} idempotents; diagram and word sets {}; all balanced: {balanced}",
            from_diagrams.len(),
            if agree { "agree" } else { "differ" }
        ),
        json!({ "count": from_diagrams.len(), "sets_agree": agree, "balanced": balanced }),
    )
}

fn budget_or_fail(suite: Suite, e: StructureError) -> SuiteOutcome {
    match e {
        StructureError::BudgetExceeded(what) => skip(suite, format!("budget: {what}")),
        e => failed(suite, e),
    }
}

fn incomparable(n: usize, limits: &Limits) -> SuiteOutcome {
    match verify_incomparable(n, &limits.search) {
        Ok(r) => outcome(
            Suite::Incomparable,
            r.passed(),
            format!(
                "{} elements; witnesses {} and {}; completing z: {}, forced to h[2,2]: {}",
                r.members,
                r.witnesses_d1_below_d2.len(),
                r.witnesses_d2_below_d1.len(),
                r.completing_z.len(),
                r.hooked_z_equal_h2
            ),
            json!({
                "members": r.members,
                "witnesses": r.witnesses_d1_below_d2.len() + r.witnesses_d2_below_d1.len(),
                "completing_z": r.completing_z.len(),
                "forced": r.hooked_z_equal_h2,
            }),
        ),
        Err(e) => budget_or_fail(Suite::Incomparable, e),
    }
}

fn ranks(n: usize, limits: &Limits) -> SuiteOutcome {
    match verify_main2(n, &limits.search) {
        Ok(r) => outcome(
            Suite::Ranks,
            r.matches_formulas(),
            format!(
                "rank {} (D1 {}, D2 {}), idrank {} (D1 {}, D2 {}); expected {} and {}",
                r.rank_total,
                r.rank_d1,
                r.rank_d2,
                r.idrank_total,
                r.idrank_d1,
                r.idrank_d2,
                kauffman_core::structure::RankReport::expected_rank(n),
                kauffman_core::structure::RankReport::expected_idrank(n)
            ),
            json!({
                "rank": r.rank_total,
                "idrank": r.idrank_total,
                "rank_d1": r.rank_d1,
                "rank_d2": r.rank_d2,
                "idrank_d1": r.idrank_d1,
                "idrank_d2": r.idrank_d2,
                "semigroup_rank": r.semigroup_rank(),
                "semigroup_idrank": r.semigroup_idrank(),
            }),
        ),
        Err(e) => budget_or_fail(Suite::Ranks, e),
    }
}

pub fn run_suite(
    suite: Suite,
    n: usize,
    seed: u64,
    trials: usize,
    limits: &Limits,
) -> SuiteOutcome {
    match suite {
        Suite::Confluence => confluence(n, seed, trials, limits),
        Suite::Membership => membership(n, limits),
        Suite::Idempotents => idempotents(n, limits),
        Suite::Incomparable => incomparable(n, limits),
        Suite::Ranks => ranks(n, limits),
    }
}

/// Runs the selected suites concurrently; results come back in suite order.
pub fn run_with(
    n: usize,
    seed: u64,
    selected: &[Suite],
    trials: usize,
    limits: &Limits,
) -> CommandResult {
    let suites: BTreeSet<Suite> = if selected.is_empty() {
        Suite::ALL.into_iter().collect()
    } else {
        selected.iter().copied().collect()
    };
    let outcomes: Vec<SuiteOutcome> = thread::scope(|s| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&suite| {
                (
                    suite,
                    s.spawn(move || run_suite(suite, n, seed, trials, limits)),
                )
            })
            .collect();
        handles
            .into_iter()
            .map(|(suite, h)| h.join().unwrap_or_else(|_| failed(suite, "suite panicked")))
            .collect()
    });
    let mut text = String::new();
    for o in &outcomes {
        let _ = writeln!(
            text,
            "{:<13}{}  {}",
            o.suite.name(),
            o.verdict.label(),
            o.detail
        );
    }
    let any_failed = outcomes.iter().any(|o| o.verdict == Verdict::Fail);
    let payload = json!({
        "n": n,
        "seed": seed,
        "suites": outcomes.iter().map(|o| json!({
            "suite": o.suite.name(),
            "status": o.verdict.label().to_lowercase(),
            "detail": o.detail,
            "data": o.data,
        })).collect::<Vec<_>>(),
    });
    CommandResult {
        command: "verify",
        status: if any_failed {
            Status::Failed
        } else {
            Status::Ok
        },
        text: text.trim_end().to_string(),
        payload,
        diagnostics: Vec::new(),
    }
}

pub fn run(n: usize, seed: u64, selected: &[Suite], trials: usize) -> CommandResult {
    run_with(n, seed, selected, trials, &Limits::default())
}
