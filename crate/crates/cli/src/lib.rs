//! Command-line front end for `treesplit`.
//!
//! Exit codes: 0 success, 1 malformed input or usage, 2 verification failure,
//! 3 theorem violation (the offending tree is echoed to stderr).

pub mod bench;
pub mod dot;

use std::fs;
use std::io::{Read, Write};

use clap::{Parser, Subcommand};
use treesplit::{
    build_partition, gen_random_tree, gen_tight_family, oracle_best_pair_jobs,
    solve_with_threshold, verify, Rational, RootedTree, SolveError, TightFamilyParams, Witness,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_VIOLATION: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "treesplit",
    version,
    about = "Heavy root paths and unrelated pairs in weighted rooted trees"
)]
pub struct Cli {
    /// Write data output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a witness for FILE as JSON.
    Solve {
        file: String,
        #[arg(long, default_value = "1/3")]
        threshold: Rational,
    },
    /// Check a witness JSON file against a tree.
    Verify {
        file: String,
        witness: String,
        #[arg(long, default_value = "1/3")]
        threshold: Rational,
    },
    /// Exhaustive best path and best unrelated pair.
    Oracle {
        file: String,
        #[arg(long, default_value_t = treesplit::oracle::DEFAULT_MAX_N)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Generate a tree in the text format.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Time the solver on a random tree.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        repeat: usize,
        #[arg(long, default_value_t = 1000)]
        max_weight: u64,
    },
    /// Render FILE as Graphviz DOT.
    ExportDot {
        file: String,
        /// Color vertices and mark A/B membership from the partition run.
        #[arg(long)]
        with_trace: bool,
    },
}

#[derive(Debug, Subcommand)]
enum GenKind {
    /// The caterpillar T(m, eps).
    Tight {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        eps: Rational,
    },
    /// Uniform attachment with integer weights in 0..=max-weight.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        max_weight: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.to_string(),
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| input_error(format!("stdin: {e}")))?;
            Ok(s)
        } else {
            fs::read_to_string(path).map_err(|e| input_error(format!("{path}: {e}")))
        }
    }

    fn tree(&mut self, path: &str) -> Result<RootedTree, Failure> {
        let text = self.read(path)?;
        RootedTree::parse(&text).map_err(|e| input_error(format!("{path}: {e}")))
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run(
    args: &[String],
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { stdin };
    let (code, text) = match execute(cli.command, &mut io, stderr) {
        Ok(out) => out,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, text.as_bytes()).map_err(|e| format!("{path}: {e}")),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_INPUT;
    }
    code
}

fn execute(command: Command, io: &mut Io, stderr: &mut dyn Write) -> Result<(u8, String), Failure> {
    match command {
        Command::Solve { file, threshold } => {
            let t = io.tree(&file)?;
            match solve_with_threshold(&t, &threshold) {
                Ok(w) => Ok((EXIT_OK, json(&w))),
                Err(e @ SolveError::TheoremViolation { .. }) => {
                    let _ = writeln!(stderr, "THEOREM VIOLATION: {e}");
                    if let SolveError::TheoremViolation { tree, partition } = &e {
                        let _ = writeln!(stderr, "offending tree:\n{}", tree.to_text());
                        let _ = writeln!(stderr, "trace: {}", json(&partition.trace));
                    }
                    Err(Failure {
                        code: EXIT_VIOLATION,
                        message: "please report this tree".into(),
                    })
                }
                Err(e) => Err(Failure {
                    code: EXIT_INVALID,
                    message: e.to_string(),
                }),
            }
        }
        Command::Verify {
            file,
            witness,
            threshold,
        } => {
            let t = io.tree(&file)?;
            let text = io.read(&witness)?;
            let w: Witness =
                serde_json::from_str(&text).map_err(|e| input_error(format!("{witness}: {e}")))?;
            let report =
                verify(&t, &w, &threshold).map_err(|e| input_error(format!("{witness}: {e}")))?;
            let code = if report.is_valid() {
                EXIT_OK
            } else {
                EXIT_INVALID
            };
            Ok((code, report.to_string()))
        }
        Command::Oracle { file, max_n, jobs } => {
            let t = io.tree(&file)?;
            let res = oracle_best_pair_jobs(&t, max_n, jobs).map_err(input_error)?;
            Ok((EXIT_OK, json(&res)))
        }
        Command::Gen { kind } => {
            let t = match kind {
                GenKind::Tight { m, eps } => {
                    gen_tight_family(&TightFamilyParams::new(m, eps).map_err(input_error)?)
                }
                GenKind::Random {
                    n,
                    seed,
                    max_weight,
                } => gen_random_tree(n, seed, max_weight).map_err(input_error)?,
            };
            Ok((EXIT_OK, t.to_text()))
        }
        Command::Bench {
            n,
            seed,
            repeat,
            max_weight,
        } => {
            let s = bench::run_bench(n, seed, max_weight, repeat).map_err(input_error)?;
            Ok((
                EXIT_OK,
                format!(
                    "n: {}\nseed: {}\nrepeat: {}\nwitness: {}\nmedian_ns: {}\nnodes_per_sec: {:.0}\n",
                    s.n, s.seed, s.repeat, s.witness_kind, s.median_ns, s.nodes_per_sec
                ),
            ))
        }
        Command::ExportDot { file, with_trace } => {
            let t = io.tree(&file)?;
            let partition = with_trace.then(|| build_partition(&t));
            Ok((EXIT_OK, dot::to_dot(&t, partition.as_ref())))
        }
    }
}
