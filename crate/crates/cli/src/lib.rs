//! Argument parsing and command dispatch for the `circparikh` binary.
//!
//! Exit codes: 0 success or pass, 1 not equivalent, 2 verification failure,
//! 64 usage error.

use std::fmt::Write as _;
use std::fs;

use circparikh::circular::{avg_count, circular_parikh_matrix, direct_count};
use circparikh::enumerate::{partition_by_matrix, search_negative_minor};
use circparikh::rewriting::{find_applications, rewrite_closure, Rule, DEFAULT_MAX_NODES};
use circparikh::suites::{run_suite, Limits, Suite};
use circparikh::words::{count_subword, parikh_matrix};
use circparikh::{Alphabet, Error, UnitriangularMatrix};
use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_EQUIVALENT: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Largest number of words `|Σ|^n` that `classes` and `search-minor` will
/// enumerate at a single length.
pub const MAX_ENUMERATED_WORDS: u64 = 1 << 24;

#[derive(Parser, Debug)]
#[command(name = "circparikh", version, about = "Subword counts and Parikh matrices of linear and circular words")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count occurrences of a subword.
    Count {
        #[arg(short, long)]
        alphabet: Option<String>,
        #[arg(long, value_enum, default_value_t = CountMode::Average)]
        mode: CountMode,
        word: String,
        subword: String,
    },
    /// Print a Parikh matrix.
    Matrix {
        #[arg(short, long)]
        alphabet: Option<String>,
        #[arg(long)]
        circular: bool,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Text)]
        format: MatrixFormat,
        word: String,
    },
    /// Decide M-equivalence of two circular words (linear with --linear).
    Mequiv {
        #[arg(short, long)]
        alphabet: Option<String>,
        #[arg(long)]
        linear: bool,
        first: String,
        second: String,
    },
    /// List CE1/CE2 applications, or emit the rewrite closure as DOT.
    Rules {
        #[arg(short, long)]
        alphabet: Option<String>,
        #[arg(long, value_enum, default_value_t = RuleFilter::All)]
        rule: RuleFilter,
        #[arg(long)]
        closure: bool,
        /// Write the closure graph to this file instead of stdout.
        #[arg(long)]
        dot: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: usize,
        word: String,
    },
    /// Partition the necklaces of one length by circular Parikh matrix.
    Classes {
        #[arg(short, long)]
        alphabet: Option<String>,
        #[arg(long)]
        length: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Run an exhaustive verification suite ("all" runs every suite).
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_length: Option<usize>,
        #[arg(long, default_value_t = 4)]
        max_power: u32,
        #[arg(long, default_value_t = 10)]
        failure_cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Look for a negative minor among circular Parikh matrices.
    SearchMinor {
        #[arg(short, long)]
        alphabet: Option<String>,
        #[arg(long)]
        max_length: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CountMode {
    Direct,
    Average,
    Linear,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MatrixFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RuleFilter {
    Ce1,
    Ce2,
    All,
}

/// Output of one invocation.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn usage(e: impl std::fmt::Display) -> Outcome {
    Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") }
}

fn ok(stdout: String) -> Outcome {
    Outcome { code: EXIT_OK, stdout, stderr: String::new() }
}

fn alphabet_or_default(list: &Option<String>) -> Result<Alphabet, Error> {
    match list {
        Some(s) => Alphabet::parse(s),
        None => Ok(Alphabet::latin(3)),
    }
}

fn check_enumeration_cap(alphabet: &Alphabet, n: usize) -> Result<(), Error> {
    let total = (alphabet.len() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > MAX_ENUMERATED_WORDS {
        return Err(Error::InvalidArgument(format!(
            "{}^{n} words exceeds the enumeration cap of {MAX_ENUMERATED_WORDS}",
            alphabet.len()
        )));
    }
    Ok(())
}

fn matrix_text(m: &UnitriangularMatrix, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::Text => format!("{m}\n"),
        MatrixFormat::Json => format!("{}\n", m.to_json()),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                ok(text)
            };
        }
    };
    dispatch(cli.command).unwrap_or_else(usage)
}

fn dispatch(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Count { alphabet, mode, word, subword } => {
            let a = alphabet_or_default(&alphabet)?;
            let v = a.parse_word(&subword)?;
            let text = match mode {
                CountMode::Linear => count_subword(&a.parse_word(&word)?, &v).to_string(),
                CountMode::Direct => direct_count(&a.parse_circular(&word)?, &v).to_string(),
                CountMode::Average => avg_count(&a.parse_circular(&word)?, &v).to_string(),
            };
            Ok(ok(format!("{text}\n")))
        }
        Command::Matrix { alphabet, circular, format, word } => {
            let a = alphabet_or_default(&alphabet)?;
            let m = if circular {
                circular_parikh_matrix(&a, &a.parse_circular(&word)?)
            } else {
                parikh_matrix(&a, &a.parse_word(&word)?)
            };
            Ok(ok(matrix_text(&m, format)))
        }
        Command::Mequiv { alphabet, linear, first, second } => {
            let a = alphabet_or_default(&alphabet)?;
            let (m1, m2) = if linear {
                (parikh_matrix(&a, &a.parse_word(&first)?), parikh_matrix(&a, &a.parse_word(&second)?))
            } else {
                (
                    circular_parikh_matrix(&a, &a.parse_circular(&first)?),
                    circular_parikh_matrix(&a, &a.parse_circular(&second)?),
                )
            };
            Ok(match m1.first_difference(&m2) {
                None => ok("EQUIVALENT\n".into()),
                Some((i, j)) => Outcome {
                    code: EXIT_NOT_EQUIVALENT,
                    stdout: format!(
                        "NOT EQUIVALENT: entry ({},{}): {} vs {}\n",
                        i + 1,
                        j + 1,
                        m1.get(i, j),
                        m2.get(i, j)
                    ),
                    stderr: String::new(),
                },
            })
        }
        Command::Rules { alphabet, rule, closure, dot, max_nodes, word } => {
            let a = alphabet_or_default(&alphabet)?;
            let cw = a.parse_circular(&word)?;
            let rules: &[Rule] = match rule {
                RuleFilter::Ce1 => &[Rule::CE1],
                RuleFilter::Ce2 => &[Rule::CE2],
                RuleFilter::All => &[Rule::CE1, Rule::CE2],
            };
            if closure || dot.is_some() {
                let graph = rewrite_closure(&a, &cw, rules, max_nodes)?;
                let text = graph.to_dot(&a);
                let mut out = String::new();
                match dot {
                    Some(path) => {
                        fs::write(&path, &text)
                            .map_err(|e| Error::InvalidArgument(format!("cannot write {path}: {e}")))?;
                        writeln!(out, "{} nodes, {} edges written to {path}", graph.nodes.len(), graph.edges.len())
                            .unwrap();
                    }
                    None => out.push_str(&text),
                }
                let mut outcome = ok(out);
                if !graph.complete {
                    outcome.stderr = format!("warning: closure truncated at {max_nodes} nodes\n");
                }
                return Ok(outcome);
            }
            let apps = find_applications(&a, &cw, rules)?;
            let mut out = String::new();
            let valid = apps.iter().filter(|x| x.is_valid()).count();
            writeln!(out, "{}: {} applications, {} valid", a.render_circular(&cw), apps.len(), valid).unwrap();
            for app in &apps {
                writeln!(out, "{}", app.describe(&a)).unwrap();
            }
            Ok(ok(out))
        }
        Command::Classes { alphabet, length, format } => {
            let a = alphabet_or_default(&alphabet)?;
            check_enumeration_cap(&a, length)?;
            let report = partition_by_matrix(&a, length);
            Ok(ok(match format {
                ReportFormat::Text => report.to_text(),
                ReportFormat::Json => format!("{}\n", report.to_json()),
                ReportFormat::Csv => report.to_csv(),
            }))
        }
        Command::Verify { suite, max_length, max_power, failure_cap, json } => {
            let suites: Vec<Suite> =
                if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse::<Suite>()?] };
            let limits = Limits { bound: max_length, max_power, failure_cap };
            let results: Vec<_> = suites.into_iter().map(|s| run_suite(s, limits)).collect();
            let mut out = String::new();
            if json {
                out.push_str(&serde_json::to_string_pretty(&results).expect("suite results serialize"));
                out.push('\n');
            } else {
                for r in &results {
                    writeln!(out, "{}", r.summary()).unwrap();
                    for f in &r.failures {
                        writeln!(out, "  {f}").unwrap();
                    }
                }
            }
            let code = if results.iter().all(|r| r.passed()) { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok(Outcome { code, stdout: out, stderr: String::new() })
        }
        Command::SearchMinor { alphabet, max_length } => {
            let a = alphabet_or_default(&alphabet)?;
            check_enumeration_cap(&a, max_length)?;
            let r = search_negative_minor(&a, max_length);
            let mut out = String::new();
            match r.witness {
                Some(w) => {
                    let one_based = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
                    writeln!(
                        out,
                        "found: {} rows {{{}}} cols {{{}}} minor {}",
                        a.render_circular(&w.word),
                        one_based(&w.rows),
                        one_based(&w.cols),
                        w.value
                    )
                    .unwrap();
                }
                None => writeln!(out, "none found").unwrap(),
            }
            writeln!(out, "{} necklaces, {} minors checked", r.necklaces_checked, r.minors_checked).unwrap();
            Ok(ok(out))
        }
    }
}
