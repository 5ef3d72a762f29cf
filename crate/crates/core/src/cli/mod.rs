//! Command-line front end. JSON goes to standard output; `--verbose` adds a
//! human-readable summary on standard error.
//!
//! Exit codes: 0 success, 1 no solution or a failed check, 2 usage or input
//! error.

mod svg;

pub use svg::CircleDiagram;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::alphabet::{
    count_all, count_balanced, count_surjective, english_partition, grl_encode, run_pattern, stirling2,
    AlphabetError, PartitionedAlphabet,
};
use crate::block_automata::parse_dictionary;
use crate::circle_partition::{is_balanced, partition, PartitionError, PartitionMode, PartitionSpec};
use crate::grammar::{parse_grammar, GrammarError};
use crate::josephus::{
    eliminate, solve_arrangement, solve_step_size, EliminationConvention, JosephusError, Side, TwoClassCircle,
};
use crate::search::{find_sequence_and_sentence, sentence_report, SearchError, SearchInstance, SearchMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_SOLUTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Josephus(#[from] JosephusError),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Parser, Debug)]
#[command(name = "circlang", version, about = "Circular partitions, elimination arrangements and run-constrained sentences")]
struct Cli {
    /// Print a human-readable summary to standard error.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Balanced partition of 1..n into r groups by step k.
    Partition {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "removal")]
        mode: PartitionMode,
        /// Include the construction trace.
        #[arg(long)]
        trace: bool,
    },
    /// Elimination order on a circle of n.
    Josephus {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Positions to remove; defaults to all of them.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value = "count-k")]
        convention: EliminationConvention,
    },
    /// Run lengths of a two-class circle whose survivors are all first class.
    SolveArrangement {
        #[arg(long)]
        first: usize,
        #[arg(long)]
        second: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "count-k")]
        convention: EliminationConvention,
    },
    /// Step sizes that remove exactly the second-class positions.
    SolveStep {
        /// Comma-separated run lengths, alternating classes.
        #[arg(long)]
        pattern: String,
        /// Class of the first run.
        #[arg(long, value_enum, default_value = "first")]
        leading: LeadingArg,
        /// Positions to remove; defaults to the number of second-class positions.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        k_max: usize,
        #[arg(long, default_value = "count-k")]
        convention: EliminationConvention,
    },
    /// Generalized run-length encoding of a text.
    Grl {
        #[arg(long)]
        text: String,
        #[arg(long, default_value = "english")]
        alphabet: String,
    },
    /// Counts of arrangements of length n over r classes.
    Count {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum)]
        kind: CountKind,
    },
    /// Searches for a sequence t and a grammatical sentence spelling it.
    FindSentence {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        grammar: PathBuf,
        /// Word list; defaults to the grammar's quoted words.
        #[arg(long)]
        dictionary: Option<PathBuf>,
        #[arg(long, default_value = "english")]
        alphabet: String,
        #[arg(long, default_value = "maximal")]
        mode: SearchMode,
        #[arg(long, default_value_t = crate::search::DEFAULT_CANDIDATE_CAP)]
        cap: u64,
    },
    /// Checks a sentence's run pattern.
    CheckSentence {
        #[arg(long)]
        text: String,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value = "english")]
        alphabet: String,
    },
    /// Writes an SVG of a text placed around a circle.
    RenderCircle {
        #[arg(long)]
        text: String,
        #[arg(long, default_value = "english")]
        alphabet: String,
        #[arg(long)]
        out: PathBuf,
        /// `k=K,count=C[,convention=count-k|skip-k]`
        #[arg(long)]
        annotate_elimination: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LeadingArg {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CountKind {
    All,
    Surjective,
    Balanced,
    Stirling,
}

impl clap::builder::ValueParserFactory for PartitionMode {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<PartitionMode>().map_err(|e| e.to_string()))
    }
}

impl clap::builder::ValueParserFactory for EliminationConvention {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<EliminationConvention>().map_err(|e| e.to_string()))
    }
}

impl clap::builder::ValueParserFactory for SearchMode {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<SearchMode>())
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let verbose = cli.verbose;
    match dispatch(cli.command, verbose, err) {
        Ok((value, code)) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json"));
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn parse_lengths(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad pattern entry `{p}` in `{text}`")))
        })
        .collect()
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// `english` or a path to an alphabet JSON file.
pub fn load_alphabet(spec: &str) -> Result<PartitionedAlphabet, CliError> {
    if spec == "english" {
        Ok(english_partition())
    } else {
        Ok(PartitionedAlphabet::from_json(&read(Path::new(spec))?)?)
    }
}

fn annotation(spec: &str) -> Result<(usize, usize, EliminationConvention), CliError> {
    let (mut k, mut count, mut convention) = (None, None, EliminationConvention::CountK);
    for part in spec.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("expected key=value, got `{part}`")))?;
        let number = || {
            value
                .trim()
                .parse::<usize>()
                .map_err(|_| CliError::Input(format!("bad number `{value}` for `{key}`")))
        };
        match key.trim() {
            "k" => k = Some(number()?),
            "count" => count = Some(number()?),
            "convention" => convention = value.trim().parse()?,
            other => return Err(CliError::Input(format!("unknown annotation key `{other}`"))),
        }
    }
    match (k, count) {
        (Some(k), Some(count)) => Ok((k, count, convention)),
        _ => Err(CliError::Input("annotation needs both k= and count=".into())),
    }
}

fn dispatch(command: Command, verbose: bool, err: &mut dyn Write) -> Result<(Value, i32), CliError> {
    match command {
        Command::Partition { n, r, k, mode, trace } => {
            let result = partition(PartitionSpec::new(n, r, k)?, mode)?;
            if verbose {
                let _ = writeln!(err, "{} partition of 1..{n} into {r} groups, step {k}", mode);
                let _ = writeln!(err, "case: {}", result.trace.case);
                for (i, g) in result.groups.iter().enumerate() {
                    let _ = writeln!(err, "  G{}: {:?}", i + 1, g);
                }
            }
            let mut v = json!({
                "n": n, "r": r, "k": k, "mode": mode,
                "groups": result.groups,
                "balanced": is_balanced(&result.groups, n, r),
            });
            if trace {
                v["trace"] = serde_json::to_value(&result.trace).expect("trace serializes");
            }
            Ok((v, EXIT_OK))
        }
        Command::Josephus { n, k, count, convention } => {
            let t = eliminate(n, k, count.unwrap_or(n), convention)?;
            if verbose {
                let _ = writeln!(err, "removed: {:?}", t.removed);
                let _ = writeln!(err, "survivors: {:?}", t.survivors);
            }
            Ok((serde_json::to_value(&t).expect("trace serializes"), EXIT_OK))
        }
        Command::SolveArrangement { first, second, k, convention } => {
            let circle = solve_arrangement(first, second, k, convention)?;
            if verbose {
                let _ = writeln!(err, "runs: {:?} (first run is {:?} class)", circle.runs(), circle.leading);
            }
            Ok((
                json!({
                    "n": circle.n(), "k": k, "convention": convention,
                    "runs": circle.runs(), "leading": circle.leading,
                }),
                EXIT_OK,
            ))
        }
        Command::SolveStep { pattern, leading, count, k_max, convention } => {
            let leading = match leading {
                LeadingArg::First => Side::First,
                LeadingArg::Second => Side::Second,
            };
            let circle = TwoClassCircle::new(parse_lengths(&pattern)?)?.with_leading(leading);
            let second = crate::josephus::label_circle(&circle)
                .iter()
                .filter(|s| **s == Side::Second)
                .count();
            let count = count.unwrap_or(second);
            let steps = solve_step_size(&circle, convention, count, k_max)?;
            if verbose {
                let _ = writeln!(err, "removing {count} of {}: steps {:?}", circle.n(), steps);
            }
            let code = if steps.is_empty() { EXIT_NO_SOLUTION } else { EXIT_OK };
            Ok((json!({"n": circle.n(), "count": count, "convention": convention, "steps": steps}), code))
        }
        Command::Grl { text, alphabet } => {
            let a = load_alphabet(&alphabet)?;
            let letters = a.strip(&text)?;
            let enc = grl_encode(&a, letters.iter().copied())?;
            if verbose {
                let _ = writeln!(err, "{} letters, {} runs", letters.len(), enc.len());
            }
            let runs: Vec<Value> = enc
                .runs()
                .iter()
                .map(|r| json!({"letters": r.letters.to_string(), "class": a.class_name(r.class), "k": r.len()}))
                .collect();
            Ok((
                json!({
                    "letters": letters.iter().collect::<String>(),
                    "runs": runs,
                    "pattern": run_pattern(&enc),
                    "abstract": enc.abstract_vector().runs(),
                }),
                EXIT_OK,
            ))
        }
        Command::Count { n, r, kind } => {
            let (name, value) = match kind {
                CountKind::All => ("all", count_all(n, r)),
                CountKind::Surjective => ("surjective", count_surjective(n, r)),
                CountKind::Balanced => ("balanced", count_balanced(n, r)?),
                CountKind::Stirling => ("stirling", stirling2(n, r)),
            };
            if verbose {
                let _ = writeln!(err, "{name}({n}, {r}) = {value}");
            }
            Ok((json!({"n": n, "r": r, "kind": name, "value": value.to_string()}), EXIT_OK))
        }
        Command::FindSentence { pattern, grammar, dictionary, alphabet, mode, cap } => {
            let a = load_alphabet(&alphabet)?;
            let g = parse_grammar(&read(&grammar)?)?;
            let dict = match dictionary {
                Some(path) => parse_dictionary(&read(&path)?, a.case_fold()),
                None => g.dictionary().iter().cloned().collect(),
            };
            let inst = SearchInstance::new(a.clone(), parse_lengths(&pattern)?, dict, g)?
                .with_mode(mode)
                .with_candidate_cap(cap);
            let outcome = find_sequence_and_sentence(&inst)?;
            if verbose {
                let _ = writeln!(
                    err,
                    "{mode}: {} candidates, {} lattice parses",
                    outcome.candidates, outcome.checks
                );
            }
            Ok(match outcome.solution {
                Some(sol) => {
                    if verbose {
                        let _ = writeln!(err, "sentence: {}", sol.sentence.join(" "));
                    }
                    (sol.to_json(&a), EXIT_OK)
                }
                None => (json!({"solution": null}), EXIT_NO_SOLUTION),
            })
        }
        Command::CheckSentence { text, pattern, alphabet } => {
            let a = load_alphabet(&alphabet)?;
            let report = sentence_report(&text, &a, &parse_lengths(&pattern)?)?;
            if verbose {
                let _ = write!(err, "{report}");
            }
            let code = if report.matches { EXIT_OK } else { EXIT_NO_SOLUTION };
            Ok((
                json!({
                    "matches": report.matches,
                    "letters": report.letters,
                    "observed": report.observed,
                    "expected": report.expected,
                    "first_mismatch": report.first_mismatch,
                }),
                code,
            ))
        }
        Command::RenderCircle { text, alphabet, out, annotate_elimination } => {
            let a = load_alphabet(&alphabet)?;
            let mut diagram = CircleDiagram::from_text(&text, &a)?;
            if diagram.is_empty() {
                return Err(CliError::Input("text has no alphabet letters".into()));
            }
            let mut removed = None;
            if let Some(spec) = annotate_elimination {
                let (k, count, convention) = annotation(&spec)?;
                let trace = eliminate(diagram.len(), k, count, convention)?;
                diagram = diagram.with_removal_order(&trace.removed);
                removed = Some(trace.removed);
            }
            std::fs::write(&out, diagram.render()).map_err(|source| CliError::Io {
                path: out.clone(),
                source,
            })?;
            if verbose {
                let _ = writeln!(err, "wrote {} positions to {}", diagram.len(), out.display());
            }
            Ok((
                json!({"out": out, "positions": diagram.len(), "removed": removed}),
                EXIT_OK,
            ))
        }
    }
}
