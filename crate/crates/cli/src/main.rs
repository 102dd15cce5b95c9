//! Command-line front end: every library operation behind a stable text or
//! JSON interface. Outputs are byte-identical across runs for identical
//! flags and seed. Exit codes: 0 success (for `member`: the word is a
//! member), 1 for `member` on a non-member, 2 on usage errors, 3 when a
//! resource cap is hit.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{Value, json};

use signed_hammersley::{
    Error, Limits, PowerSeriesTable, SignedPermutation, StrictnessMode, Word, build_a1, build_a2,
    derive_sign, enumerate_with_limits, enumeration_lines, greedy_decompose, is_member,
    multiplicity, predecessors, sample_trajectory, scaling_exact_with_limits, scaling_montecarlo,
};

#[derive(Parser)]
#[command(
    name = "hammersley",
    version,
    about = "Signed Hammersley process toolkit: simulation, membership, multiplicities, heap decomposition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum ModeArg {
    #[default]
    Nonstrict,
    /// Strict inequality required for the polarity of the first letter.
    #[value(name = "paper-strict", alias = "first-letter-strict")]
    PaperStrict,
    EitherStrict,
}

impl From<ModeArg> for StrictnessMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Nonstrict => StrictnessMode::NonStrict,
            ModeArg::PaperStrict => StrictnessMode::FirstLetterStrict,
            ModeArg::EitherStrict => StrictnessMode::EitherStrict,
        }
    }
}

fn mode_name(mode: ModeArg) -> &'static str {
    match mode {
        ModeArg::Nonstrict => "nonstrict",
        ModeArg::PaperStrict => "paper-strict",
        ModeArg::EitherStrict => "either-strict",
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(clap::Args)]
struct OutputArgs {
    /// Write the result to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a word is a possible process output.
    Member {
        /// Word as sign-suffixed tokens, e.g. "2+ 1-".
        word: String,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t)]
        mode: ModeArg,
        /// Also write the two counter automata as JSON to this file.
        #[arg(long)]
        emit_automata: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact multiplicity of a word: the number of process histories
    /// producing it.
    Mult {
        word: String,
        #[arg(long)]
        k: u32,
        /// Report 0 for the empty word instead of the conventional 1.
        #[arg(long)]
        empty_as_zero: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// All words reachable in exactly n steps with exact multiplicities,
    /// as tab-separated `word\tcount` lines in lexicographic order.
    Enumerate {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One seeded random trajectory of the process, one word per line.
    Simulate {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Greedy heap decomposition of a signed permutation.
    Decompose {
        #[arg(long)]
        k: u32,
        /// Comma-separated distinct integers, e.g. "1,8,15".
        #[arg(long)]
        perm: String,
        /// Comma-separated signs of equal length, e.g. "-,+,-".
        #[arg(long, allow_hyphen_values = true)]
        signs: String,
        /// Write the forest as Graphviz DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Derive a sign sequence under which a heapable permutation stays
    /// heapable; prints "not heapable" otherwise.
    DeriveSign {
        #[arg(long)]
        perm: String,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Expected number of heaps opened by n insertions: exact rational or
    /// Monte-Carlo estimate.
    Scaling {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
        /// Compute the exact value by full enumeration.
        #[arg(long, conflicts_with = "samples")]
        exact: bool,
        /// Monte-Carlo sample count.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One-step pre-images of a word with the insertion events that map
    /// them forward.
    Predecessors {
        word: String,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    message: String,
    code: ExitCode,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::ResourceLimit { .. } => ExitCode::from(3),
            _ => ExitCode::from(2),
        };
        Failure {
            message: err.to_string(),
            code,
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure {
            message: err.to_string(),
            code: ExitCode::FAILURE,
        }
    }
}

fn emit(output: &OutputArgs, content: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, content)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    let limits = Limits::from_env();
    match command {
        Command::Member {
            word,
            k,
            mode,
            emit_automata,
            output,
        } => {
            let word = Word::parse(&word, k)?;
            let strictness = StrictnessMode::from(mode);
            let member = is_member(&word, strictness);
            if let Some(path) = emit_automata {
                let description = json!({
                    "mode": mode_name(mode),
                    "a1": build_a1(k, strictness).to_json(),
                    "a2": build_a2(k, strictness).to_json(),
                });
                fs::write(path, pretty(&description))?;
            }
            let content = match output.format {
                Format::Text => format!("{}\n", if member { "member" } else { "not a member" }),
                Format::Json => pretty(&json!({
                    "word": word.to_string(),
                    "k": k,
                    "mode": mode_name(mode),
                    "member": member,
                })),
            };
            emit(&output, &content)?;
            Ok(if member {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Mult {
            word,
            k,
            empty_as_zero,
            output,
        } => {
            let word = Word::parse(&word, k)?;
            let mut table = PowerSeriesTable::with_limits(k, &limits);
            let value = if word.is_empty() && empty_as_zero {
                0u32.into()
            } else {
                multiplicity(&word, &mut table)?
            };
            let content = match output.format {
                Format::Text => format!("{value}\n"),
                Format::Json => pretty(&json!({
                    "word": word.to_string(),
                    "k": k,
                    "multiplicity": value.to_string(),
                })),
            };
            emit(&output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { k, n, output } => {
            let map = enumerate_with_limits(k, n, &limits)?;
            let content = match output.format {
                Format::Text => enumeration_lines(&map),
                Format::Json => {
                    let mut lines = String::new();
                    for (word, count) in &map {
                        let record = json!({
                            "word": word.to_string(),
                            "count": count.to_string(),
                        });
                        lines.push_str(&record.to_string());
                        lines.push('\n');
                    }
                    lines
                }
            };
            emit(&output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate { k, n, seed, output } => {
            let trajectory = sample_trajectory(k, n, seed)?;
            let content = match output.format {
                Format::Text => {
                    let mut lines = String::new();
                    for word in &trajectory {
                        lines.push_str(&word.to_string());
                        lines.push('\n');
                    }
                    lines
                }
                Format::Json => pretty(&json!({
                    "k": k,
                    "n": n,
                    "seed": seed,
                    "trajectory": trajectory.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                })),
            };
            emit(&output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose {
            k,
            perm,
            signs,
            dot,
            output,
        } => {
            let permutation = SignedPermutation::parse(&perm, &signs)?;
            let (forest, trees) = greedy_decompose(&permutation, k)?;
            if let Some(path) = dot {
                fs::write(path, forest.to_dot())?;
            }
            let content = match output.format {
                Format::Text => format!("trees: {trees}\n"),
                Format::Json => pretty(&json!({
                    "k": k,
                    "perm": permutation.values(),
                    "signs": permutation.signs().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "trees": trees,
                    "forest": forest.to_json(),
                })),
            };
            emit(&output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::DeriveSign { perm, k, output } => {
            let values = parse_values(&perm)?;
            let derived = derive_sign(&values, k)?;
            let content = match output.format {
                Format::Text => match &derived {
                    Some(signs) => {
                        let rendered: Vec<String> = signs.iter().map(|s| s.to_string()).collect();
                        format!("{}\n", rendered.join(","))
                    }
                    None => "not heapable\n".to_string(),
                },
                Format::Json => pretty(&json!({
                    "perm": values,
                    "k": k,
                    "heapable": derived.is_some(),
                    "signs": derived.as_ref().map(|signs| {
                        signs.iter().map(|s| s.to_string()).collect::<Vec<_>>()
                    }),
                })),
            };
            emit(&output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Scaling {
            k,
            n,
            exact: _,
            samples,
            seed,
            output,
        } => {
            let content = match samples {
                None => {
                    let value = scaling_exact_with_limits(k, n, &limits)?;
                    match output.format {
                        Format::Text => format!("{value}\n"),
                        Format::Json => pretty(&json!({
                            "k": k,
                            "n": n,
                            "Z_exact": value.to_string(),
                        })),
                    }
                }
                Some(samples) => {
                    let estimate = scaling_montecarlo(k, n, samples, seed)?;
                    let mean = estimate.mean.to_f64().unwrap_or(f64::NAN);
                    match output.format {
                        Format::Text => format!(
                            "Z ~ {mean} (stderr {}, samples {}, seed {})\n",
                            estimate.stderr, estimate.samples, estimate.seed
                        ),
                        Format::Json => pretty(&json!({
                            "k": k,
                            "n": n,
                            "Z_mc": mean,
                            "stderr": estimate.stderr,
                            "samples": estimate.samples,
                            "seed": estimate.seed,
                        })),
                    }
                }
            };
            emit(&output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Predecessors { word, k, output } => {
            let word = Word::parse(&word, k)?;
            let preds = predecessors(&word);
            let content = match output.format {
                Format::Text => {
                    let mut lines = String::new();
                    for p in &preds {
                        let kill = match p.kill_position {
                            Some(j) => format!("kill@{j}"),
                            None => "kill none".to_string(),
                        };
                        lines.push_str(&format!(
                            "{}\tinsert {}@{}\t{}\n",
                            p.word, p.event.polarity, p.event.position, kill
                        ));
                    }
                    lines
                }
                Format::Json => pretty(&json!({
                    "word": word.to_string(),
                    "k": k,
                    "predecessors": preds.iter().map(|p| json!({
                        "word": p.word.to_string(),
                        "position": p.event.position,
                        "polarity": p.event.polarity.to_string(),
                        "kill_position": p.kill_position,
                    })).collect::<Vec<_>>(),
                })),
            };
            emit(&output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_values(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>().map_err(|_| {
                Failure::from(Error::MalformedToken {
                    token: t.to_string(),
                })
            })
        })
        .collect()
}

fn pretty(value: &Value) -> String {
    let mut rendered = serde_json::to_string_pretty(value).expect("serializable");
    rendered.push('\n');
    rendered
}
