//! The `lpsem` command-line interface.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::interp::{PartialInterpretation, TwoValuedInterpretation};
use crate::levelmaps::{
    canonical_levels, certify, greatest_certified_model, Condition, LevelMapping, Semantics,
    DEFAULT_ORACLE_CAP,
};
use crate::operators::{least_model, lfp, Operator, SemanticsTrace};
use crate::properties::fuzz;
use crate::stable::{afp, enumerate_stable, stable_models_json, DEFAULT_ENUMERATION_CAP};
use crate::strata::{weakly_perfect_with, WeaklyPerfectResult, WpVariant};
use crate::syntax::{ground, parse_program, GroundProgram, Program};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_OVERFLOW: i32 = 3;
pub const EXIT_INVALID_FILE: i32 = 4;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Parser)]
#[command(name = "lpsem", version, about = "Semantics and level mappings of normal logic programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Program file; standard input when absent or `-`.
    pub file: Option<PathBuf>,
    /// Term depth bound for programs with function symbols.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Emit JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelSemantics {
    Least,
    Fitting,
    Wf,
    Ws,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelSemantics {
    Least,
    Fitting,
    Wf,
    Ws,
    Afp,
    Stable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConditionArg {
    Def,
    Stable,
    F,
    Wf,
    Ws,
    Sfi,
    Locstrat,
}

impl From<ConditionArg> for Condition {
    fn from(c: ConditionArg) -> Self {
        match c {
            ConditionArg::Def => Condition::Def,
            ConditionArg::Stable => Condition::Stable,
            ConditionArg::F => Condition::F,
            ConditionArg::Wf => Condition::Wf,
            ConditionArg::Ws => Condition::Ws,
            ConditionArg::Sfi => Condition::Sfi,
            ConditionArg::Locstrat => Condition::LocStrat,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and pretty-print a program.
    Parse(Input),
    /// Print the ground instantiation.
    Ground(Input),
    /// Compute a model.
    Model {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "wf")]
        semantics: ModelSemantics,
        /// Also print the iterates.
        #[arg(long)]
        trace: bool,
        /// Weakly perfect rounds stop on any negative literal in the bottom
        /// layer.
        #[arg(long)]
        strict_layers: bool,
    },
    /// Extract the canonical level mapping of a semantics.
    Levels {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        semantics: LevelSemantics,
        /// Model file, required for `--semantics stable`.
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Check a model and level mapping against a condition.
    Certify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        levels: PathBuf,
        #[arg(long, value_enum)]
        condition: ConditionArg,
    },
    /// Enumerate stable models.
    Stable {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Run the alternating fixed point.
    Afp(Input),
    /// Compare the Fitting, weakly perfect and well-founded models.
    Compare {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        strict_layers: bool,
    },
    /// Brute-force search for the greatest certified model.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        condition: ConditionArg,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
    },
    /// Check the invariant suite on generated programs.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest base handed to the brute-force oracle.
        #[arg(long, default_value_t = 4)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
}

/// Failure of a command: an exit code and a message for standard error.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) => EXIT_PARSE,
            Error::GroundingOverflow | Error::CapExceeded { .. } => EXIT_OVERFLOW,
            Error::Inconsistent(_)
            | Error::NotTotal(_)
            | Error::DomainMismatch(_)
            | Error::InvalidInput(_) => EXIT_INVALID_FILE,
            Error::Internal(_) => EXIT_INTERNAL,
            Error::NotDefinite | Error::NotStable => EXIT_FAILED,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = std::result::Result<(String, i32), Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return e.exit_code();
        }
    };
    match execute(cli.command, stdin) {
        Ok((text, code)) => {
            let _ = writeln!(out, "{}", text.trim_end());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn main() -> i32 {
    let args: Vec<_> = std::env::args_os().collect();
    run(args, &mut std::io::stdin(), &mut std::io::stdout(), &mut std::io::stderr())
}

fn read_source(input: &Input, stdin: &mut dyn Read) -> Result<String, Failure> {
    let io = |e: std::io::Error, what: &str| Failure { code: EXIT_FAILED, message: format!("{what}: {e}") };
    match &input.file {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| io(e, &p.display().to_string())),
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| io(e, "standard input"))?;
            Ok(s)
        }
    }
}

fn load_program(input: &Input, stdin: &mut dyn Read) -> Result<Program, Failure> {
    Ok(parse_program(&read_source(input, stdin)?).map_err(Error::from)?)
}

fn load(input: &Input, stdin: &mut dyn Read) -> Result<GroundProgram, Failure> {
    let p = load_program(input, stdin)?;
    Ok(ground(&p, input.depth)?)
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let bad = |m: String| Failure { code: EXIT_INVALID_FILE, message: m };
    let text = fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))
}

/// The `key` member of a wrapper such as the output of `lpsem model --json`,
/// or `v` itself.
fn unwrap_key(v: Value, key: &str) -> Value {
    match v {
        Value::Object(mut m) if m.contains_key(key) => m.remove(key).expect("present"),
        v => v,
    }
}

fn variant(strict: bool) -> WpVariant {
    if strict {
        WpVariant::Strict
    } else {
        WpVariant::default()
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn render_trace(g: &GroundProgram, t: &SemanticsTrace) -> String {
    t.iterates
        .iter()
        .enumerate()
        .map(|(k, i)| format!("{}↑{k} = {}", t.operator, i.literal_string(g.table())))
        .collect::<Vec<_>>()
        .join("\n")
}

fn render_rounds(g: &GroundProgram, r: &WeaklyPerfectResult) -> String {
    use crate::strata::RoundOutcome;
    let mut out = Vec::new();
    for round in &r.rounds {
        let a = round.index;
        out.push(format!("round {a}"));
        out.push(format!("  N = {}", round.accumulated.literal_string(g.table())));
        out.push(format!("  P = {{{}}}", round.program.clause_strings().join(" ")));
        out.push(format!("  R = {{{}}}", g.names(&round.eliminated).join(", ")));
        out.push(format!("  S = {{{}}}", g.names(&round.stratum).join(", ")));
        out.push(format!("  L = {{{}}}", round.layer.clause_strings().join(" ")));
        match &round.outcome {
            RoundOutcome::Continue { model, .. } => {
                out.push(format!("  M = {}", model.literal_string(g.table())))
            }
            RoundOutcome::Stop(reason) => out.push(format!("  stop: {reason}")),
        }
    }
    out.join("\n")
}

fn execute(command: Command, stdin: &mut dyn Read) -> CmdResult {
    match command {
        Command::Parse(input) => {
            let p = load_program(&input, stdin)?;
            let text = if input.json {
                let clauses: Vec<String> = p.clauses.iter().map(|c| c.to_string()).collect();
                let declared: Vec<String> = p.declared_atoms.iter().map(|a| a.to_string()).collect();
                pretty(&json!({ "clauses": clauses, "declared_atoms": declared }))
            } else {
                p.to_string()
            };
            Ok((text, EXIT_OK))
        }
        Command::Ground(input) => {
            let g = load(&input, stdin)?;
            let text = if input.json {
                pretty(&json!({ "base": g.base_atoms(), "clauses": g.clause_strings() }))
            } else {
                g.to_string()
            };
            Ok((text, EXIT_OK))
        }
        Command::Model { input, semantics, trace, strict_layers } => {
            let g = load(&input, stdin)?;
            let (model, trace_json, trace_text) = match semantics {
                ModelSemantics::Least => {
                    let (m, t) = least_model(&g)?;
                    (m.totalize(g.base()), t.to_json(&g), render_trace(&g, &t))
                }
                ModelSemantics::Fitting | ModelSemantics::Wf => {
                    let op = if semantics == ModelSemantics::Fitting { Operator::Phi } else { Operator::Wp };
                    let (m, t) = lfp(&g, op);
                    (m, t.to_json(&g), render_trace(&g, &t))
                }
                ModelSemantics::Ws => {
                    let r = weakly_perfect_with(&g, variant(strict_layers))?;
                    let (j, t) = (r.to_json(&g), render_rounds(&g, &r));
                    (r.model, j, t)
                }
            };
            let name = format!("{semantics:?}").to_lowercase();
            let text = if input.json {
                let mut v = json!({ "semantics": name, "model": model.to_json(g.table(), g.base()) });
                if trace {
                    v["trace"] = trace_json;
                }
                pretty(&v)
            } else if trace {
                format!("{trace_text}\n{}", model.render(g.table(), g.base()))
            } else {
                model.render(g.table(), g.base())
            };
            Ok((text, EXIT_OK))
        }
        Command::Levels { input, semantics, model } => {
            let g = load(&input, stdin)?;
            let s = match semantics {
                LevelSemantics::Least => Semantics::Least,
                LevelSemantics::Fitting => Semantics::Fitting,
                LevelSemantics::Wf => Semantics::Wf,
                LevelSemantics::Ws => Semantics::Ws,
                LevelSemantics::Afp => Semantics::Afp,
                LevelSemantics::Stable => {
                    let path = model.ok_or_else(|| Failure {
                        code: EXIT_INVALID_FILE,
                        message: "--semantics stable needs --model".into(),
                    })?;
                    let i = PartialInterpretation::from_json(&unwrap_key(read_json(&path)?, "model"), g.table())?;
                    Semantics::Stable(TwoValuedInterpretation::new(i.true_set().clone()))
                }
            };
            let (m, l) = canonical_levels(&g, &s)?;
            let text = if input.json {
                let mut v = l.to_json(g.table());
                v["model"] = m.to_json(g.table(), g.base());
                pretty(&v)
            } else {
                format!("{}\n{}", m.render(g.table(), g.base()), l.render(g.table()))
            };
            Ok((text, EXIT_OK))
        }
        Command::Certify { input, model, levels, condition } => {
            let g = load(&input, stdin)?;
            let i = PartialInterpretation::from_json(&unwrap_key(read_json(&model)?, "model"), g.table())?;
            let l = LevelMapping::from_json(&read_json(&levels)?, g.table())?;
            let report = certify(&g, &i, &l, condition.into())?;
            let text = if input.json { pretty(&report.to_json(&g)) } else { report.render(&g) };
            Ok((text, if report.passed { EXIT_OK } else { EXIT_FAILED }))
        }
        Command::Stable { input, cap } => {
            let g = load(&input, stdin)?;
            let models = enumerate_stable(&g, cap)?;
            let text = if input.json {
                pretty(&stable_models_json(&g, &models))
            } else if models.is_empty() {
                "no stable models".to_string()
            } else {
                models
                    .iter()
                    .map(|m| format!("{{{}}}", g.names(&m.atoms).join(", ")))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok((text, if models.is_empty() { EXIT_FAILED } else { EXIT_OK }))
        }
        Command::Afp(input) => {
            let g = load(&input, stdin)?;
            let r = afp(&g);
            let text = if input.json {
                pretty(&r.to_json(&g))
            } else {
                let set = |m: &TwoValuedInterpretation| format!("{{{}}}", g.names(&m.atoms).join(", "));
                let mut lines = Vec::new();
                for (k, (l, u)) in r.l_sequence.iter().zip(&r.g_sequence).enumerate() {
                    lines.push(format!("L{k} = {}  G{k} = {}", set(l), set(u)));
                }
                lines.push(r.wf_model.render(g.table(), g.base()));
                lines.join("\n")
            };
            Ok((text, EXIT_OK))
        }
        Command::Compare { input, strict_layers } => {
            let g = load(&input, stdin)?;
            let fit = lfp(&g, Operator::Phi).0;
            let wf = lfp(&g, Operator::Wp).0;
            let wp = weakly_perfect_with(&g, variant(strict_layers))?.model;
            let (c1, c2) = (fit.knowledge_leq(&wp), wp.knowledge_leq(&wf));
            let text = if input.json {
                let (t, b) = (g.table(), g.base());
                pretty(&json!({
                    "fitting": fit.to_json(t, b),
                    "weakly_perfect": wp.to_json(t, b),
                    "well_founded": wf.to_json(t, b),
                    "containments": { "fitting_in_weakly_perfect": c1, "weakly_perfect_in_well_founded": c2 },
                }))
            } else {
                let t = g.table();
                format!(
                    "M_F  = {}\nM_WP = {}\nM_WF = {}\nM_F ⊆ M_WP: {c1}\nM_WP ⊆ M_WF: {c2}",
                    fit.literal_string(t),
                    wp.literal_string(t),
                    wf.literal_string(t)
                )
            };
            if !(c1 && c2) {
                return Err(Failure {
                    code: EXIT_INTERNAL,
                    message: format!("containment violated\n{text}"),
                });
            }
            Ok((text, EXIT_OK))
        }
        Command::Oracle { input, condition, cap } => {
            let g = load(&input, stdin)?;
            let r = greatest_certified_model(&g, condition.into(), cap)?;
            let text = if input.json { pretty(&r.to_json(&g)) } else { r.render(&g) };
            Ok((text, EXIT_OK))
        }
        Command::Fuzz { n, seed, cap, json } => match fuzz(n, seed, cap) {
            None => {
                let text = if json {
                    pretty(&json!({ "programs": n, "seed": seed, "counterexample": null }))
                } else {
                    format!("{n} programs checked, no counterexample")
                };
                Ok((text, EXIT_OK))
            }
            Some((p, f)) => {
                let text = if json {
                    pretty(&json!({
                        "programs": n,
                        "seed": seed,
                        "counterexample": { "program": p.to_string(), "property": f.property, "detail": f.detail },
                    }))
                } else {
                    format!("counterexample ({f}):\n{p}")
                };
                Ok((text, EXIT_FAILED))
            }
        },
    }
}
