//! Argument handling and dispatch for the `phigraph` binary.
//!
//! [`run`] never touches the process: it takes the argument vector and a
//! reader for standard input and returns the exit code and both output
//! streams, which keeps every command testable in-process.

use std::fmt::Write as _;
use std::io::Read;

use clap::{Parser, Subcommand};
use phi_graph::{
    build, chain, inverse_totient, inverse_totient_brute, is_perfect_totient, known_seed,
    recognize, recognize_family, totient, verify, Error, ExportFormat, FamilySpec, SeedSet,
    UnlabeledTree, Verdict, DEFAULT_BUDGET,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

/// Upper limit for `ptn --upto`; each candidate costs one totient chain.
const PTN_MAX_UPTO: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn out(exit_code: i32, stdout: String) -> Self {
        CommandResult {
            exit_code,
            stdout,
            stderr: String::new(),
        }
    }

    fn err(exit_code: i32, stderr: String) -> Self {
        CommandResult {
            exit_code,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "phigraph", version, about = "Totient graphs, inverse totients and tree recognition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Euler's totient of N.
    Phi {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Iterated totient chain of N, its length R(N) and sum Φ(N).
    Chain {
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// All x with φ(x) = M.
    Invphi {
        m: u64,
        /// Scan every x up to BOUND instead of using the divisor search.
        #[arg(long, value_name = "BOUND")]
        brute: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Graph of the seed set, as JSON or DOT.
    Build {
        #[arg(required = true, value_name = "SEED")]
        seed: Vec<String>,
        #[arg(long)]
        dot: bool,
    },
    /// Degree-one vertices of the seed set's graph.
    Leaves {
        #[arg(required = true, value_name = "SEED")]
        seed: Vec<String>,
    },
    /// Smallest seed set generating the same graph.
    SeedMin {
        #[arg(required = true, value_name = "SEED")]
        seed: Vec<String>,
    },
    /// Decide whether a tree is the graph of some seed set.
    Recognize {
        #[arg(long, value_name = "SPEC", conflicts_with = "tree", required_unless_present = "tree")]
        family: Option<String>,
        /// Edge-list or DOT file; `-` reads standard input.
        #[arg(long, value_name = "FILE")]
        tree: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Tree of a named family, as an edge list or DOT.
    Generate {
        spec: String,
        #[arg(long)]
        dot: bool,
    },
    /// Seed set known to generate a family member.
    KnownSeed { spec: String },
    /// Perfect totient numbers up to N.
    Ptn {
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..=PTN_MAX_UPTO))]
        upto: u64,
    },
    /// Run the built-in theorem checks and print a pass/fail table.
    VerifyPaper,
}

/// Parses `argv` (including the program name) and executes the command.
pub fn run<S: AsRef<str>>(argv: &[S], stdin: &mut dyn Read) -> CommandResult {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult::err(code, text)
            } else {
                CommandResult::out(code, text)
            };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(r) => r,
        Err(e) => CommandResult::err(exit_code_for(&e), format!("error: {e}\n")),
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidFamily(_) | Error::InvalidTree(_) | Error::Parse { .. } | Error::InvalidSeed => {
            EXIT_USAGE
        }
        _ => EXIT_RUNTIME,
    }
}

/// Seeds may be given as one comma-separated list or as several arguments.
fn parse_seed(parts: &[String]) -> phi_graph::Result<SeedSet> {
    let mut values = Vec::new();
    for part in parts {
        values.extend(part.parse::<SeedSet>()?.iter());
    }
    SeedSet::new(values)
}

fn joined(values: impl IntoIterator<Item = u64>) -> String {
    let mut s = values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    s.push('\n');
    s
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> phi_graph::Result<CommandResult> {
    let ok = |s: String| Ok(CommandResult::out(EXIT_OK, s));
    match command {
        Command::Phi { n } => ok(format!("{}\n", totient(n))),
        Command::Chain { n, json } => {
            let c = chain(n);
            if json {
                let values = c.values().iter().map(u64::to_string).collect::<Vec<_>>();
                ok(format!(
                    "{{\"n\":{},\"chain\":[{}],\"R\":{},\"Phi\":{}}}\n",
                    n,
                    values.join(","),
                    c.steps(),
                    c.phi_sum()
                ))
            } else {
                let mut s = joined(c.values().iter().copied());
                writeln!(s, "R {}", c.steps()).unwrap();
                writeln!(s, "Phi {}", c.phi_sum()).unwrap();
                ok(s)
            }
        }
        Command::Invphi { m, brute, json } => {
            let set = match brute {
                Some(bound) => inverse_totient_brute(m, bound)?,
                None => inverse_totient(m)?,
            };
            if json {
                let values = set.solutions().iter().map(u64::to_string).collect::<Vec<_>>();
                ok(format!("[{}]\n", values.join(",")))
            } else {
                ok(joined(set.solutions().iter().copied()))
            }
        }
        Command::Build { seed, dot } => {
            let g = build(&parse_seed(&seed)?);
            let format = if dot { ExportFormat::Dot } else { ExportFormat::Json };
            let mut s = g.export(format);
            if !s.ends_with('\n') {
                s.push('\n');
            }
            ok(s)
        }
        Command::Leaves { seed } => {
            let g = build(&parse_seed(&seed)?);
            ok(joined(g.leaves()?))
        }
        Command::SeedMin { seed } => {
            let g = build(&parse_seed(&seed)?);
            ok(joined(g.minimal_seed().iter()))
        }
        Command::Recognize {
            family,
            tree,
            budget,
        } => {
            let result = match (family, tree) {
                (Some(spec), _) => recognize_family(&spec.parse::<FamilySpec>()?, budget)?,
                (None, Some(path)) => recognize(&read_tree(&path, stdin)?, budget)?,
                (None, None) => unreachable!("clap requires one of --family and --tree"),
            };
            let code = match result.verdict() {
                Verdict::Realized => EXIT_OK,
                Verdict::Refuted => EXIT_FALSE,
                Verdict::BudgetExceeded => EXIT_RUNTIME,
            };
            Ok(CommandResult::out(code, format!("{}\n", result.to_json())))
        }
        Command::Generate { spec, dot } => {
            let t = phi_graph::generate(&spec.parse::<FamilySpec>()?)?;
            ok(if dot { t.to_dot() } else { t.to_edge_list() })
        }
        Command::KnownSeed { spec } => {
            let spec: FamilySpec = spec.parse()?;
            match known_seed(&spec)? {
                Some(a) => ok(format!("{a}\n")),
                None => Ok(CommandResult::err(
                    EXIT_FALSE,
                    format!("no known seed set for {spec}\n"),
                )),
            }
        }
        Command::Ptn { upto } => {
            let mut found = Vec::new();
            for n in 2..=upto {
                if is_perfect_totient(n)? {
                    found.push(n);
                }
            }
            ok(joined(found))
        }
        Command::VerifyPaper => {
            let checks = verify::run_all();
            let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            let mut s = String::new();
            for c in &checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                writeln!(s, "{mark}  {:width$}  {}", c.name, c.detail).unwrap();
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            writeln!(s, "{} passed, {} failed", checks.len() - failed, failed).unwrap();
            let code = if failed == 0 { EXIT_OK } else { EXIT_FALSE };
            Ok(CommandResult::out(code, s))
        }
    }
}

fn read_tree(path: &str, stdin: &mut dyn Read) -> phi_graph::Result<UnlabeledTree> {
    let text = if path == "-" {
        let mut buf = String::new();
        stdin
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidTree(format!("cannot read standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidTree(format!("cannot read {path}: {e}")))?
    };
    UnlabeledTree::parse(&text)
}
