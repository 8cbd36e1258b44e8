use clap::{Parser, Subcommand, ValueEnum};
use kauffman_core::diagrams::{self, DiagramError};
use kauffman_core::idempotents::{
    decompose, enumerate_idempotents, verdict_for, DecomposeError, Reason,
};
use kauffman_core::rewrite::{normalize, RewriteError};
use kauffman_core::structure::{ClassId, EggboxView};
use kauffman_core::words::{chi, parse, render_compact, ParseError, Word};
use serde_json::json;
use thiserror::Error;

use crate::formats::{
    certificate_to_json, chi_to_json, eggbox_to_json, jnf_to_json, kelement_to_json, reason_name,
    trace_to_json,
};
use crate::verify::{self, Suite};
use crate::{CommandResult, Status};

#[derive(Debug, Parser)]
#[command(
    name = "kauffman",
    version,
    about = "Normal forms, diagrams and idempotents of the Kauffman monoid K_n"
)]
pub struct Cli {
    /// Degree of the monoid (at least 3).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Emit a JSON envelope instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rewrite a word to its normal form.
    Normalize {
        word: String,
        /// Print every rewrite step.
        #[arg(long)]
        trace: bool,
    },
    /// Multiply two words.
    Mul { left: String, right: String },
    /// Evaluate a word as a scalar power times a diagram.
    Eval { word: String },
    /// Loop, blue and red block counts of a word.
    Chi { word: String },
    /// Decide membership in the idempotent-generated submonoid.
    Member {
        word: String,
        /// Also print a verified product of length-two idempotents.
        #[arg(long)]
        certificate: bool,
    },
    /// Factor a member into length-two idempotents.
    Decompose { word: String },
    /// List all idempotents.
    Idempotents,
    /// Draw the eggbox diagrams of the two top non-trivial classes.
    Eggbox {
        #[arg(long, value_enum, default_value_t = ClassChoice::Both)]
        class: ClassChoice,
    },
    /// Run verification suites and print a pass/fail table.
    Verify {
        /// Suites to run; all of them when omitted.
        #[arg(long, value_enum)]
        suite: Vec<Suite>,
        /// Random words for the confluence suite.
        #[arg(long, default_value_t = 2000)]
        trials: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassChoice {
    D1,
    D2,
    Both,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("missing required option --n <degree>")]
    MissingDegree,
    #[error("degree {0} is below 3")]
    DegreeTooSmall(usize),
    #[error("cannot parse {text:?}: {source}")]
    Parse { text: String, source: ParseError },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    fn status(&self) -> Status {
        match self {
            CliError::MissingDegree | CliError::DegreeTooSmall(_) | CliError::Parse { .. } => {
                Status::Usage
            }
            CliError::Rewrite(_) => Status::Guard,
            CliError::Decompose(DecomposeError::Rewrite(_)) => Status::Guard,
            CliError::Diagram(_) | CliError::Decompose(_) | CliError::Other(_) => Status::Failed,
        }
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Normalize { .. } => "normalize",
            Command::Mul { .. } => "mul",
            Command::Eval { .. } => "eval",
            Command::Chi { .. } => "chi",
            Command::Member { .. } => "member",
            Command::Decompose { .. } => "decompose",
            Command::Idempotents => "idempotents",
            Command::Eggbox { .. } => "eggbox",
            Command::Verify { .. } => "verify",
        }
    }
}

fn word(text: &str, n: usize) -> Result<Word, CliError> {
    parse(text, n).map_err(|source| CliError::Parse {
        text: text.to_string(),
        source,
    })
}

const PURE_SCALAR_NOTE: &str = "a pure power of c has even non-negative chi, \
     yet no non-empty product of idempotents has the identity diagram";

pub fn run(cli: &Cli) -> CommandResult {
    let name = cli.command.name();
    let result = cli
        .n
        .ok_or(CliError::MissingDegree)
        .and_then(|n| {
            if n < 3 {
                Err(CliError::DegreeTooSmall(n))
            } else {
                Ok(n)
            }
        })
        .and_then(|n| dispatch(&cli.command, n, cli.seed));
    result.unwrap_or_else(|e| CommandResult::error(name, e.status(), e.to_string()))
}

fn dispatch(command: &Command, n: usize, seed: u64) -> Result<CommandResult, CliError> {
    let name = command.name();
    match command {
        Command::Normalize { word: text, trace } => {
            let w = word(text, n)?;
            let t = normalize(&w)?;
            let out = if *trace {
                t.to_string()
            } else {
                t.output.to_string()
            };
            let mut payload =
                json!({ "input": w.to_string(), "normal_form": jnf_to_json(&t.output) });
            if *trace {
                payload["trace"] = trace_to_json(&t);
            }
            Ok(CommandResult::ok(name, out, payload))
        }
        Command::Mul { left, right } => {
            let (u, v) = (word(left, n)?, word(right, n)?);
            let t = normalize(&u.concat(&v))?;
            let e = diagrams::kmul(&diagrams::eval(&u, n)?, &diagrams::eval(&v, n)?)?;
            if diagrams::eval(&t.output.to_word(), n)? != e {
                return Err(CliError::Other(format!(
                    "normal form {} disagrees with the diagram product",
                    t.output
                )));
            }
            let element = kelement_to_json(&e);
            Ok(CommandResult::ok(
                name,
                format!("{}\n{element}", t.output),
                json!({ "left": u.to_string(), "right": v.to_string(), "normal_form": jnf_to_json(&t.output), "element": element }),
            ))
        }
        Command::Eval { word: text } => {
            let w = word(text, n)?;
            let element = kelement_to_json(&diagrams::eval(&w, n)?);
            Ok(CommandResult::ok(
                name,
                element.to_string(),
                json!({ "word": w.to_string(), "element": element }),
            ))
        }
        Command::Chi { word: text } => {
            let w = word(text, n)?;
            let c = chi(&w);
            Ok(CommandResult::ok(
                name,
                format!(
                    "c_count={} blue={} red={} chi={}",
                    c.c_count, c.blue, c.red, c.chi
                ),
                json!({ "word": w.to_string(), "chi": chi_to_json(&c) }),
            ))
        }
        Command::Member {
            word: text,
            certificate,
        } => {
            let w = word(text, n)?;
            let t = normalize(&w)?;
            let v = verdict_for(&t.output);
            let mut lines = vec![
                if v.member {
                    "yes".to_string()
                } else {
                    format!("no ({})", reason_name(v.reason))
                },
                format!("normal form: {}", v.normal_form),
                format!(
                    "chi: c_count={} blue={} red={} chi={}",
                    v.chi.c_count, v.chi.blue, v.chi.red, v.chi.chi
                ),
            ];
            let mut payload = json!({
                "word": w.to_string(),
                "member": v.member,
                "reason": reason_name(v.reason),
                "chi": chi_to_json(&v.chi),
                "normal_form": jnf_to_json(&v.normal_form),
                "certificate": null,
            });
            if *certificate && v.member {
                let cert = decompose(&w, n)?;
                lines.push(format!("certificate: {cert}"));
                payload["certificate"] = certificate_to_json(&cert);
            }
            let result = CommandResult::ok(name, lines.join("\n"), payload);
            Ok(if v.reason == Reason::PureScalar {
                result.with_diagnostic(PURE_SCALAR_NOTE)
            } else {
                result
            })
        }
        Command::Decompose { word: text } => {
            let w = word(text, n)?;
            let cert = match decompose(&w, n) {
                Err(e @ DecomposeError::NotAMember(_, Reason::PureScalar)) => {
                    return Ok(CommandResult::error(name, Status::Failed, e.to_string())
                        .with_diagnostic(PURE_SCALAR_NOTE))
                }
                r => r?,
            };
            Ok(CommandResult::ok(
                name,
                cert.to_string(),
                json!({ "word": w.to_string(), "certificate": certificate_to_json(&cert) }),
            ))
        }
        Command::Idempotents => {
            let all = enumerate_idempotents(n).map_err(|e| CliError::Other(e.to_string()))?;
            let text: Vec<String> = all.iter().map(|j| render_compact(&j.to_word())).collect();
            Ok(CommandResult::ok(
                name,
                text.join("\n"),
                json!({ "n": n, "count": all.len(), "idempotents": all.iter().map(jnf_to_json).collect::<Vec<_>>() }),
            ))
        }
        Command::Eggbox { class } => {
            let which: &[ClassId] = match class {
                ClassChoice::D1 => &[ClassId::D1],
                ClassChoice::D2 => &[ClassId::D2],
                ClassChoice::Both => &[ClassId::D1, ClassId::D2],
            };
            let views: Vec<EggboxView> = which.iter().map(|&c| EggboxView::new(c, n)).collect();
            let text: Vec<String> = views.iter().map(|v| v.to_string()).collect();
            Ok(CommandResult::ok(
                name,
                text.join("\n").trim_end().to_string(),
                json!({ "n": n, "classes": views.iter().map(eggbox_to_json).collect::<Vec<_>>() }),
            ))
        }
        Command::Verify { suite, trials } => Ok(verify::run(n, seed, suite, *trials)),
    }
}
