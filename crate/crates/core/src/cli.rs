//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards `std::env::args` and the standard streams.
//!
//! Exit codes: 0 success, 1 validation failure, 2 bad input, 3 internal
//! consistency failure, 4 bound exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::code::{from_generators, is_semaphore, is_special, lower_approx, upper_approx, SemaphoreCode};
use crate::congruence::{enumerate_all_bounded, Lattice, Pentagon, RightCongruence, DEFAULT_ENUMERATION_CARRIER};
use crate::error::{Error, Result};
use crate::graph::{resets, AGraph};
use crate::json::{self, rationals, CodeJson, CongruenceJson, PairsJson, ProfileJson};
use crate::walks::{self, LetterDistribution, ResetProfile};
use crate::words::{Alphabet, Word};

#[derive(Debug, Parser)]
#[command(name = "resetwalk", version, about = "Right congruences, semaphore codes and reset walks on A^k")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Right congruences given as JSON block lists.
    #[command(subcommand)]
    Rc(RcCommand),
    /// Semaphore codes.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Random-walk analytics.
    #[command(subcommand)]
    Walk(WalkCommand),
    /// Lattice enumeration and checks.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Cayley graph export.
    #[command(subcommand)]
    Graph(GraphCommand),
}

#[derive(Debug, Args)]
struct InFile {
    /// Congruence JSON (`rc generate` takes a pairs file).
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
}

#[derive(Debug, Subcommand)]
enum RcCommand {
    Validate(InFile),
    Generate(InFile),
    Lower(InFile),
    Upper(InFile),
    Resets(InFile),
    IsSpecial(InFile),
}

#[derive(Debug, Subcommand)]
enum CodeCommand {
    /// Check a code file for the semaphore property.
    Check {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Enumerate `XA* \ A⁺XA*` up to a length.
    Generate {
        #[arg(long, default_value = "ab")]
        alphabet: String,
        /// Comma-separated generators.
        #[arg(long)]
        gens: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Restrict the code generated by `--gens` (or read from `--in`) to `A^k`.
    Restrict {
        #[arg(long, default_value = "ab")]
        alphabet: String,
        #[arg(long, conflicts_with = "input")]
        gens: Option<String>,
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        #[arg(short, long)]
        k: usize,
    },
}

#[derive(Debug, Args)]
struct WalkSource {
    /// Congruence JSON; the walk runs on its reset code.
    #[arg(long = "in", value_name = "FILE", conflicts_with = "code", required_unless_present = "code")]
    input: Option<PathBuf>,
    /// Code JSON.
    #[arg(long, value_name = "FILE")]
    code: Option<PathBuf>,
    /// Letter distribution such as `a=1/3,b=2/3`; uniform when omitted.
    #[arg(long)]
    pi: Option<String>,
}

#[derive(Debug, Subcommand)]
enum WalkCommand {
    Stationary {
        #[command(flatten)]
        source: WalkSource,
        /// Print states and the transition matrix as well.
        #[arg(long)]
        matrix: bool,
    },
    Profile {
        #[command(flatten)]
        source: WalkSource,
    },
    Lumped {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        pi: Option<String>,
        #[arg(long)]
        matrix: bool,
    },
    Simulate {
        #[command(flatten)]
        source: WalkSource,
        #[arg(long, default_value_t = 1_000_000)]
        steps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Modular,
    Semimodular,
    Atomistic,
    JordanDedekind,
}

#[derive(Debug, Subcommand)]
enum LatticeCommand {
    /// Enumerate RC(A^k) and test lattice properties.
    Census {
        #[arg(short)]
        g: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, value_delimiter = ',')]
        checks: Vec<Check>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CARRIER)]
        max_carrier: usize,
        /// Restrict to special right congruences.
        #[arg(long)]
        special: bool,
    },
}

#[derive(Debug, Subcommand)]
enum GraphCommand {
    Dot(InFile),
    Json(InFile),
}

/// Run the CLI on `args` (including the program name). Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", diagnostic(&e));
            e.exit_code()
        }
    }
}

/// Machine-readable error report.
fn diagnostic(e: &Error) -> Value {
    let witness = match e {
        Error::ClosureViolation { u, v, letter } => json!({"u": u, "v": v, "letter": letter.to_string()}),
        Error::NotLumpable { s, t } => json!({"s": s, "t": t}),
        Error::NotCovering { word, .. } => json!({"word": word}),
        Error::BoundExceeded { requested, limit } => json!({"requested": requested.to_string(), "limit": limit.to_string()}),
        _ => Value::Null,
    };
    json!({"error": e.to_string(), "exit": e.exit_code(), "witness": witness})
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_congruence(path: &Path) -> Result<RightCongruence> {
    json::from_str::<CongruenceJson>(&read(path)?)?.to_congruence()
}

fn read_code(path: &Path) -> Result<CodeJson> {
    json::from_str::<CodeJson>(&read(path)?)
}

fn distribution(alphabet: &Alphabet, pi: &Option<String>) -> Result<LetterDistribution> {
    match pi {
        Some(s) => LetterDistribution::parse(alphabet, s),
        None => Ok(LetterDistribution::uniform(alphabet)),
    }
}

fn emit(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<i32> {
    writeln!(out, "{}", json::to_string(value)).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(0)
}

fn parse_list(alphabet: &Alphabet, s: &str) -> Result<Vec<Word>> {
    s.split(',').map(|w| alphabet.parse_word(w.trim())).collect()
}

fn approximation(rc: &RightCongruence, ideal: &crate::code::IdealRep) -> Value {
    json!({
        "congruence": CongruenceJson::from_congruence(rc),
        "code": CodeJson::from_ideal(ideal),
    })
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Rc(rc) => match rc {
            RcCommand::Validate(f) => {
                let rc = read_congruence(&f.input)?;
                emit(out, &CongruenceJson::from_congruence(&rc))
            }
            RcCommand::Generate(f) => {
                let pairs: PairsJson = json::from_str(&read(&f.input)?)?;
                emit(out, &CongruenceJson::from_congruence(&pairs.generate()?))
            }
            RcCommand::Lower(f) => {
                let (rc, ideal) = lower_approx(&read_congruence(&f.input)?)?;
                emit(out, &approximation(&rc, &ideal))
            }
            RcCommand::Upper(f) => {
                let (rc, ideal) = upper_approx(&read_congruence(&f.input)?)?;
                emit(out, &approximation(&rc, &ideal))
            }
            RcCommand::Resets(f) => emit(out, &CodeJson::from_ideal(&resets(&read_congruence(&f.input)?))),
            RcCommand::IsSpecial(f) => emit(out, &json!({"special": is_special(&read_congruence(&f.input)?)?})),
        },
        Command::Code(c) => match c {
            CodeCommand::Check { input } => {
                let (alphabet, words) = read_code(&input)?.words()?;
                let d = is_semaphore(&alphabet, &words);
                if d.is_semaphore() {
                    emit(out, &json!({"semaphore": true}))
                } else {
                    Err(Error::NotSemaphore(d.describe(&alphabet)))
                }
            }
            CodeCommand::Generate { alphabet, gens, max_len } => {
                let alphabet = Alphabet::from_letters(&alphabet)?;
                let g = from_generators(&alphabet, &parse_list(&alphabet, &gens)?, max_len);
                emit(out, &CodeJson::from_generated(&g))
            }
            CodeCommand::Restrict {
                alphabet,
                gens,
                input,
                k,
            } => {
                let ideal = match (gens, input) {
                    (Some(gens), _) => {
                        let alphabet = Alphabet::from_letters(&alphabet)?;
                        from_generators(&alphabet, &parse_list(&alphabet, &gens)?, k).restrict_k(k)?
                    }
                    (None, Some(path)) => crate::code::restrict_k(&read_code(&path)?.to_code()?, k)?,
                    (None, None) => return Err(Error::Parse("give --gens or --in".into())),
                };
                emit(out, &CodeJson::from_ideal(&ideal))
            }
        },
        Command::Walk(w) => walk(w, out, err),
        Command::Lattice(LatticeCommand::Census {
            g,
            k,
            checks,
            max_carrier,
            special,
        }) => census(g, k, &checks, max_carrier, special, out),
        Command::Graph(g) => match g {
            GraphCommand::Dot(f) => {
                let graph = AGraph::cayley(&read_congruence(&f.input)?);
                write!(out, "{}", graph.to_dot()).map_err(|e| Error::Internal(e.to_string()))?;
                Ok(0)
            }
            GraphCommand::Json(f) => emit(out, &AGraph::cayley(&read_congruence(&f.input)?).to_json()),
        },
    }
}

enum Source {
    Congruence(RightCongruence),
    Code(CodeJson),
}

fn load_source(source: &WalkSource) -> Result<Source> {
    match (&source.input, &source.code) {
        (Some(path), _) => Ok(Source::Congruence(read_congruence(path)?)),
        (None, Some(path)) => Ok(Source::Code(read_code(path)?)),
        (None, None) => Err(Error::Parse("give --in or --code".into())),
    }
}

fn walk(command: WalkCommand, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        WalkCommand::Stationary { source, matrix } => {
            let (vector, t) = match load_source(&source)? {
                Source::Congruence(rc) => {
                    let pi = distribution(rc.alphabet(), &source.pi)?;
                    let l = walks::lumped(&rc, &pi)?;
                    (l.stationary, l.matrix)
                }
                Source::Code(c) => {
                    let code = c.to_code()?;
                    let pi = distribution(code.alphabet(), &source.pi)?;
                    let report = walks::stationary(&code, &pi)?;
                    if !report.positive {
                        let _ = writeln!(err, "warning: π is not positive; the fixed vector may not be unique");
                    }
                    if !report.irreducible {
                        let _ = writeln!(err, "warning: the walk is not irreducible");
                    }
                    (report.vector, report.matrix)
                }
            };
            if matrix {
                emit(
                    out,
                    &json!({"states": vector.labels, "I": vector.render(), "T": t.render()}),
                )
            } else {
                emit(out, &vector.render())
            }
        }
        WalkCommand::Profile { source } => {
            let profile = match load_source(&source)? {
                Source::Congruence(rc) => walks::reset_profile(&rc, &distribution(rc.alphabet(), &source.pi)?)?,
                Source::Code(c) => {
                    let ideal = c.to_ideal()?;
                    let pi = distribution(ideal.alphabet(), &source.pi)?;
                    ResetProfile::of_words(ideal.code().words(), &pi, ideal.k())
                }
            };
            emit(out, &ProfileJson::from_profile(&profile))
        }
        WalkCommand::Lumped { input, pi, matrix } => {
            let rc = read_congruence(&input)?;
            let pi = distribution(rc.alphabet(), &pi)?;
            let l = walks::lumped(&rc, &pi)?;
            if matrix {
                emit(
                    out,
                    &json!({"blocks": l.stationary.labels, "I": l.stationary.render(), "T": l.matrix.render()}),
                )
            } else {
                emit(out, &rationals(&l.stationary.values))
            }
        }
        WalkCommand::Simulate { source, steps, seed } => {
            let code: SemaphoreCode = match load_source(&source)? {
                Source::Congruence(rc) => resets(&rc).code().clone(),
                Source::Code(c) => c.to_code()?,
            };
            let pi = distribution(code.alphabet(), &source.pi)?;
            let sim = walks::simulate(&code, &pi, steps, seed)?;
            emit(
                out,
                &json!({
                    "states": sim.labels,
                    "visits": sim.visits,
                    "frequencies": sim.frequencies,
                    "episodes": sim.reset_times.len(),
                    "mean_reset_time": sim.mean_reset_time,
                    "steps": steps,
                    "seed": seed,
                }),
            )
        }
    }
}

fn census(g: usize, k: usize, checks: &[Check], max_carrier: usize, special: bool, out: &mut dyn Write) -> Result<i32> {
    let alphabet = Alphabet::new(g)?;
    let elements = if special {
        crate::code::src_lattice(&alphabet, k)?
    } else {
        enumerate_all_bounded(&alphabet, k, max_carrier)?
    };
    let lattice = Lattice::new(elements)?;
    let report = lattice.report();
    let all = [Check::Modular, Check::Semimodular, Check::Atomistic, Check::JordanDedekind];
    let checks = if checks.is_empty() { &all[..] } else { checks };
    let show = |i: usize| lattice.elements()[i].to_string();
    let pentagon = |p: &Option<Pentagon>| {
        p.map(|p| {
            json!({
                "top": show(p.top), "upper": show(p.upper), "lower": show(p.lower),
                "side": show(p.side), "bottom": show(p.bottom),
            })
        })
    };
    let mut result = serde_json::Map::new();
    result.insert("g".into(), json!(g));
    result.insert("k".into(), json!(k));
    result.insert("size".into(), json!(report.size));
    result.insert("atoms".into(), json!(report.atoms.len()));
    result.insert("covers".into(), json!(report.covers.len()));
    let mut witnesses = serde_json::Map::new();
    for check in checks {
        match check {
            Check::Modular => {
                result.insert("modular".into(), json!(report.modular));
                witnesses.insert("modular".into(), json!(pentagon(&report.witnesses.modular)));
            }
            Check::Semimodular => {
                result.insert("semimodular".into(), json!(report.semimodular));
                witnesses.insert("semimodular".into(), json!(pentagon(&report.witnesses.semimodular)));
            }
            Check::Atomistic => {
                result.insert("atomistic".into(), json!(report.atomistic));
                witnesses.insert("atomistic".into(), json!(report.witnesses.atomistic.map(show)));
            }
            Check::JordanDedekind => {
                result.insert("jordan_dedekind".into(), json!(report.jordan_dedekind));
                witnesses.insert(
                    "jordan_dedekind".into(),
                    json!(report
                        .witnesses
                        .jordan_dedekind
                        .as_ref()
                        .map(|(x, lengths)| json!({"element": show(*x), "chain_lengths": lengths}))),
                );
            }
        }
    }
    result.insert("witnesses".into(), Value::Object(witnesses));
    emit(out, &Value::Object(result))
}
