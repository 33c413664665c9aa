//! Command-line front end: argument parsing, subcommand dispatch and
//! reporting. [`run`] is the whole program minus process I/O.

pub mod parse;
pub mod render;

use std::ffi::OsString;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use onerel::oracles::{self, CheckReport, DEFAULT_SEED};
use onerel::{is_root, OneRelatorPresentation, SolveError, Solver, SolverLimits, Verdict};
use serde_json::{json, Value};

pub use parse::{format_presentation, parse_alphabet, parse_presentation, parse_word, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "onerel",
    version,
    about = "Word problem and Magnus subgroup membership for one-relator groups"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Maximum hierarchy depth before giving up.
    #[arg(long, global = true)]
    max_depth: Option<usize>,
    /// Maximum length of any intermediate word.
    #[arg(long, global = true)]
    max_word_len: Option<usize>,
    /// Emit a single JSON document on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized check suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for check suites.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether WORD is trivial in the group.
    Solve { presentation: String, word: String },
    /// Decide whether WORD lies in the subgroup generated by --subset.
    Member {
        presentation: String,
        word: String,
        /// Comma-separated generators, possibly empty.
        #[arg(long, allow_hyphen_values = true)]
        subset: String,
    },
    /// Print the breakdown tree.
    Hierarchy { presentation: String },
    /// Decide whether R lies in the normal closure of S.
    IsRoot {
        s: String,
        r: String,
        #[arg(long)]
        alphabet: String,
    },
    /// Independent oracles.
    Oracle {
        #[command(subcommand)]
        oracle: OracleCommand,
    },
    /// Run a property suite.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        max_len: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Search for WORD as a product of conjugates of the relator.
    Ncl {
        presentation: String,
        word: String,
        #[arg(long, default_value_t = 2)]
        conj_len: usize,
        #[arg(long, default_value_t = 2)]
        factors: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Suite {
    Conjugacy,
    CommutatorRoots,
    Freiheitssatz,
    ModularGroup,
    Hierarchy,
    Witnesses,
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Parse(ParseError),
    Solve(SolveError),
    Usage(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Parse(_) | Failure::Usage(_) => EXIT_USAGE,
            Failure::Solve(SolveError::ResourceExhausted(_)) => EXIT_EXHAUSTED,
            Failure::Solve(SolveError::Internal(_)) => EXIT_INTERNAL,
            Failure::Solve(_) => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Parse(e) => e.to_string(),
            Failure::Solve(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        Failure::Solve(e)
    }
}

/// What a successful command produced: text for humans, fields for `--json`.
struct Outcome {
    code: i32,
    text: String,
    fields: Value,
}

impl Outcome {
    fn decided(text: impl Into<String>, fields: Value) -> Self {
        Outcome {
            code: EXIT_OK,
            text: text.into(),
            fields,
        }
    }
}

pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                RunOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                RunOutput {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let mut limits = SolverLimits::default();
    if let Some(d) = cli.global.max_depth {
        limits.max_depth = d;
    }
    if let Some(l) = cli.global.max_word_len {
        limits.max_word_len = l;
    }
    let mut solver = Solver::new(limits);
    let start = Instant::now();
    let result = dispatch(&cli, &mut solver, limits);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let stats = solver.stats();

    match result {
        Ok(out) => {
            let stdout = if cli.global.json {
                let mut doc = json!({
                    "command": echo,
                    "exit_code": out.code,
                    "budget": stats,
                    "elapsed_ms": elapsed_ms,
                });
                if let Value::Object(m) = out.fields {
                    doc.as_object_mut().unwrap().extend(m);
                }
                format!("{doc}\n")
            } else {
                out.text
            };
            RunOutput {
                code: out.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => {
            let mut err = json!({"kind": match f.code() {
                EXIT_EXHAUSTED => "resource-exhausted",
                EXIT_INTERNAL => "internal",
                _ => "usage",
            }, "message": f.message()});
            if let Failure::Parse(p) = &f {
                if let Some(o) = p.offset() {
                    err["offset"] = json!(o);
                }
            }
            let stdout = if cli.global.json {
                format!(
                    "{}\n",
                    json!({"command": echo, "exit_code": f.code(), "error": err, "budget": stats, "elapsed_ms": elapsed_ms})
                )
            } else {
                String::new()
            };
            RunOutput {
                code: f.code(),
                stdout,
                stderr: format!("error: {}\n", f.message()),
            }
        }
    }
}

fn presentation_arg(text: &str) -> Result<OneRelatorPresentation, Failure> {
    parse_presentation(text).map_err(Failure::Parse)
}

fn dispatch(cli: &Cli, solver: &mut Solver, limits: SolverLimits) -> Result<Outcome, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Solve { presentation, word } => {
            let p = presentation_arg(presentation)?;
            let w = parse_word(word, p.alphabet())?;
            let verdict = match solver.word_problem(&p, &w)? {
                Verdict::Trivial => "trivial",
                _ => "nontrivial",
            };
            Ok(Outcome::decided(
                format!("{verdict}\n"),
                json!({"verdict": verdict}),
            ))
        }
        Command::Member {
            presentation,
            word,
            subset,
        } => {
            let p = presentation_arg(presentation)?;
            let w = parse_word(word, p.alphabet())?;
            let s = parse::parse_subset(subset, p.alphabet())?;
            match solver.magnus_membership(&p, &w, &s)? {
                Verdict::Member(wit) => {
                    let shown = p.alphabet().format_word(&wit.expression);
                    Ok(Outcome::decided(
                        format!("member {shown}\n"),
                        json!({"verdict": "member", "witness": shown}),
                    ))
                }
                _ => Ok(Outcome::decided(
                    "not-member\n",
                    json!({"verdict": "not-member"}),
                )),
            }
        }
        Command::Hierarchy { presentation } => {
            let p = presentation_arg(presentation)?;
            let tree = solver.hierarchy_tree(&p)?;
            Ok(Outcome::decided(
                render::hierarchy_text(&tree),
                json!({"hierarchy": render::hierarchy_json(&tree), "descent_depth": tree.descent_depth()}),
            ))
        }
        Command::IsRoot { s, r, alphabet } => {
            let a = parse_alphabet(alphabet)?;
            let sw = parse_word(s, &a)?;
            let rw = parse_word(r, &a)?;
            if sw.cyclic_core().is_empty() {
                return Err(Failure::Usage("S is trivial in the free group".into()));
            }
            let verdict = if is_root(solver, &sw, &rw, &a)? {
                "root"
            } else {
                "not-root"
            };
            Ok(Outcome::decided(
                format!("{verdict}\n"),
                json!({"verdict": verdict}),
            ))
        }
        Command::Oracle {
            oracle:
                OracleCommand::Ncl {
                    presentation,
                    word,
                    conj_len,
                    factors,
                },
        } => {
            let p = presentation_arg(presentation)?;
            let w = parse_word(word, p.alphabet())?;
            let a = p.alphabet();
            match oracles::ncl_semidecide(&p, &w, *conj_len, *factors) {
                None => Ok(Outcome::decided("unknown\n", json!({"verdict": "unknown"}))),
                Some(cert) => {
                    let factors: Vec<Value> = cert
                        .factors
                        .iter()
                        .map(|(c, e)| json!({"conjugator": a.format_word(c), "exponent": e}))
                        .collect();
                    let mut text = String::from("certificate\n");
                    for (c, e) in &cert.factors {
                        text += &format!(
                            "  {} r^{e} {}\n",
                            a.format_word(c),
                            a.format_word(&c.invert())
                        );
                    }
                    if !solver.is_trivial(&p, &w)? {
                        return Err(Failure::Solve(SolveError::Internal(
                            "solver rejects a word with a normal-closure certificate".into(),
                        )));
                    }
                    Ok(Outcome::decided(
                        text,
                        json!({"verdict": "certificate", "factors": factors}),
                    ))
                }
            }
        }
        Command::Check { suite, max_len } => {
            let report = run_suite(*suite, *max_len, g.seed, g.jobs, limits)?;
            let code = if !report.violations.is_empty() {
                EXIT_INTERNAL
            } else if !report.exhausted.is_empty() {
                EXIT_EXHAUSTED
            } else {
                EXIT_OK
            };
            Ok(Outcome {
                code,
                text: format!("{report}\n"),
                fields: json!({
                    "suite": report.name,
                    "passed": report.passed(),
                    "checked": report.checked,
                    "violations": report.violations,
                    "resource_exhausted": report.exhausted,
                    "lines": report.lines,
                }),
            })
        }
    }
}

fn run_suite(
    suite: Suite,
    max_len: Option<usize>,
    seed: u64,
    jobs: usize,
    limits: SolverLimits,
) -> Result<CheckReport, Failure> {
    let bounded = |default: usize, cap: usize| -> Result<usize, Failure> {
        let n = max_len.unwrap_or(default);
        if n == 0 || n > cap {
            return Err(Failure::Usage(format!("--max-len must be in 1..={cap}")));
        }
        Ok(n)
    };
    Ok(match suite {
        Suite::Conjugacy => oracles::check_conjugacy_theorem(bounded(4, 5)?, limits, jobs),
        Suite::CommutatorRoots => oracles::check_commutator_roots(bounded(4, 5)?, limits),
        Suite::Freiheitssatz => oracles::check_freiheitssatz(seed, 200, 50, limits, jobs),
        Suite::ModularGroup => oracles::check_modular_group(bounded(12, 14)?),
        Suite::Hierarchy => oracles::check_hierarchy(2, bounded(6, 8)?, limits),
        Suite::Witnesses => oracles::check_witnesses(seed, 100, limits),
    })
}
