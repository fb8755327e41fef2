use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use stab_core::io::{parse_graph_or_spec, write_graph};
use stab_core::lab::{classify_type, conditions, construct_example, ExampleParams, Flag, EXAMPLE_NAMES};
use stab_core::stability::classify;
use stab_core::survey::{survey, Dedup, SurveyOptions};
use stab_core::{boolean_square, cartesian_skeleton, product, Budget, CirculantSpec, Error, Graph, ProductKind};

#[derive(Parser)]
#[command(name = "stab", version, about = "Stability of graphs under the canonical double cover")]
struct Cli {
    /// Node budget per search; defaults to STAB_BUDGET or 10^7.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stability verdict with group orders and a TF-morphism witness.
    Classify {
        /// `c:<n>:<s,...>`, a graph file, or `-` for stdin
        graph: String,
    },
    /// Every circulant instability condition, as JSON.
    Conditions { spec: String },
    /// Classify every circulant up to a given order, as JSON Lines.
    Survey {
        #[arg(long)]
        max_order: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value = "none")]
        dedup: Dedup,
        /// Output file, resumed from if it exists; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A product of two graphs in the graph text format.
    Product {
        #[arg(long)]
        kind: ProductKind,
        left: String,
        right: String,
    },
    /// Boolean square and Cartesian skeleton in the graph text format.
    Skeleton { graph: String },
    /// A named construction, as JSON (or graph text with `--graph`).
    Construct {
        /// one of the construction names
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        cycle: Option<usize>,
        #[arg(long)]
        graph: bool,
    },
}

enum Failure {
    Input(String),
    Budget(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::SearchBudgetExceeded(_) => Failure::Budget(e.to_string()),
            Error::Io(_) | Error::Unsound(_) => Failure::Other(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read_graph(arg: &str) -> Result<(Graph, Option<CirculantSpec>), Failure> {
    let text = if arg.trim_start().starts_with("c:") {
        arg.to_string()
    } else if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(e.to_string()))?;
        s
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Input(format!("{arg}: {e}")))?
    };
    Ok(parse_graph_or_spec(&text)?)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn run(cli: Cli) -> Result<(), Failure> {
    let budget = cli.budget.map_or_else(Budget::from_env, Budget);
    match cli.command {
        Command::Classify { graph } => {
            let (g, spec) = read_graph(&graph)?;
            let c = classify(&g, budget)?;
            let mut value = serde_json::to_value(&c).expect("serializable");
            if let Some(spec) = spec {
                value["type"] = serde_json::to_value(classify_type(&spec, budget)).expect("serializable");
            }
            emit(&format!("{}\n", json(&value)));
        }
        Command::Conditions { spec } => {
            let spec: CirculantSpec = spec.parse()?;
            let report = conditions(&spec, budget);
            emit(&format!("{}\n", json(&report)));
            if report.summary().flags().contains(&Flag::Inconclusive) {
                return Err(Failure::Budget("some searches ran out of budget".into()));
            }
        }
        Command::Survey { max_order, jobs, dedup, out } => {
            let opts = SurveyOptions { max_order, budget, jobs, dedup, out: out.clone() };
            let output = survey(&opts)?;
            match out {
                Some(path) => eprintln!("{} records written to {}", output.records.len(), path.display()),
                None => emit(&output.to_jsonl()),
            }
        }
        Command::Product { kind, left, right } => {
            let (g, _) = read_graph(&left)?;
            let (h, _) = read_graph(&right)?;
            emit(&write_graph(&product(&g, &h, kind).graph));
        }
        Command::Skeleton { graph } => {
            let (g, _) = read_graph(&graph)?;
            emit("# boolean square\n");
            emit(&write_graph(&boolean_square(&g)));
            emit("# cartesian skeleton\n");
            emit(&write_graph(&cartesian_skeleton(&g)));
        }
        Command::Construct { name, n, m, cycle, graph } => {
            if !EXAMPLE_NAMES.contains(&name.as_str()) {
                return Err(Failure::Input(format!("unknown construction {name:?}; expected one of {EXAMPLE_NAMES:?}")));
            }
            let c = construct_example(&name, &ExampleParams { n, m, cycle })?;
            if graph {
                emit(&write_graph(&c.graph));
            } else {
                emit(&format!("{}\n", json(&c)));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
