use std::fmt::Write as _;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bmenet::enumerate::{network_count, network_count_u128, total_network_count, NetworkIter};
use bmenet::graph::build_graph;
use bmenet::io::{
    network_to_json, network_value, optimization_value, parse_distance_matrix, parse_network, parse_weighted_splits,
    weighted_splits_to_json,
};
use bmenet::metric::{find_consistent_ordering, kalmanson_decompose};
use bmenet::optimize::{minimize_with, Options, DEFAULT_BUDGET};
use bmenet::rational;
use bmenet::split::CircularOrdering;
use bmenet::vector::network_vector;
use bmenet::{Error, Network};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

mod verify;

#[derive(Parser)]
#[command(name = "bmenet", version, about = "Level-1 network polytopes: counts, vectors, faces and exact minimization")]
struct Cli {
    /// Worker threads for enumeration and minimization.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Maximum number of networks to evaluate (overrides BMENET_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u128>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Network counts v(n,k) as CSV rows `n,v(n,0),...,v(n,n-3)`.
    Count {
        #[arg(long)]
        n: Option<usize>,
        /// Emit rows 3..=MAX_N (ignored with --n).
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        /// Append the row total as a last column.
        #[arg(long)]
        totals: bool,
    },
    /// Every network with n leaves and k bridges, one JSON literal per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Emit only partition PART of PARTS.
        #[arg(long, requires = "parts", default_value_t = 0)]
        part: usize,
        #[arg(long, default_value_t = 1)]
        parts: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Vertex vector of a network.
    Vector {
        /// JSON literal, or a path to a file holding one.
        network: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Splits displayed by a network.
    Sigma {
        network: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exact minimum of x·d over all networks with k bridges.
    Minimize {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Circular split decomposition of a Kalmanson distance matrix.
    Decompose {
        matrix: PathBuf,
        /// Comma-separated circular ordering; searched for if omitted (n <= 9).
        #[arg(long, value_delimiter = ',')]
        ordering: Option<Vec<usize>>,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: verify::Suite,
        /// Largest (or only, for table1) taxon count to check.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random trials per case for the randomized suites.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Graphviz DOT drawing of a network, optionally weighted.
    ExportDot {
        network: String,
        #[arg(long)]
        weights: Option<PathBuf>,
    },
}

/// Exit 1 for a failed check, 2 for bad input.
pub(crate) enum Failure {
    Check(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotKalmanson(_) => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_network(arg: &str) -> Result<Network, Failure> {
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { read_file(&PathBuf::from(arg))? };
    Ok(parse_network(&text)?)
}

fn budget(cli_value: Option<u128>) -> Result<u128, Failure> {
    if let Some(b) = cli_value {
        return Ok(b);
    }
    match std::env::var("BMENET_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Input(format!("BMENET_BUDGET is not an integer: {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn count(n: Option<usize>, max_n: usize, totals: bool) -> Result<String, Failure> {
    let rows: Vec<usize> = match n {
        Some(n) => vec![n],
        None => (3..=max_n).collect(),
    };
    let mut out = String::new();
    for n in rows {
        let mut cells = vec![n.to_string()];
        for k in 0..=n.saturating_sub(3) {
            cells.push(network_count(n, k)?.to_string());
        }
        if totals {
            cells.push(total_network_count(n)?.to_string());
        }
        let _ = writeln!(out, "{}", cells.join(","));
    }
    Ok(out)
}

fn enumerate(n: usize, k: usize, part: usize, parts: usize, format: Format, budget: u128) -> Outcome {
    let needed = network_count_u128(n, k)?;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget }.into());
    }
    let stdout = std::io::stdout();
    let mut w = BufWriter::new(stdout.lock());
    for net in NetworkIter::new(n, k, part, parts)? {
        let line = match format {
            Format::Text => net.to_string(),
            _ => network_to_json(&net),
        };
        if writeln!(w, "{line}").is_err() {
            break; // closed pipe
        }
    }
    let _ = w.flush();
    Ok(())
}

fn vector(net: &Network, format: Format) -> String {
    let x = network_vector(net);
    match format {
        Format::Json => {
            let entries: Vec<String> = x.entries().iter().map(rational::format).collect();
            json!({"network": network_value(net), "x": entries}).to_string() + "\n"
        }
        _ => x.to_csv(),
    }
}

fn sigma(net: &Network, format: Format) -> String {
    let system = net.sigma_splits();
    match format {
        Format::Json => {
            let parts: Vec<Vec<usize>> = system.splits().iter().map(|s| s.part()).collect();
            json!({"n": net.n(), "splits": parts}).to_string() + "\n"
        }
        _ => system.splits().iter().map(|s| format!("{s}\n")).collect(),
    }
}

fn minimize(k: usize, matrix: &PathBuf, format: Format, opts: Options) -> Result<String, Failure> {
    let parsed = parse_distance_matrix(&read_file(matrix)?)?;
    let n = parsed.matrix.n();
    let r = minimize_with(&parsed.matrix, n, k, opts)?;
    Ok(match format {
        Format::Text => {
            let mut out = format!("minimum {}\nevaluated {}\n", rational::format(&r.minimum), r.evaluated);
            for net in &r.argmin {
                let _ = writeln!(out, "{net}");
            }
            out
        }
        _ => {
            let mut v = optimization_value(&r);
            v["n"] = json!(n);
            v["k"] = json!(k);
            v["labels"] = json!(parsed.labels);
            v.to_string() + "\n"
        }
    })
}

fn decompose(matrix: &PathBuf, ordering: Option<Vec<usize>>) -> Result<String, Failure> {
    let d = parse_distance_matrix(&read_file(matrix)?)?.matrix;
    let c = match ordering {
        Some(seq) => CircularOrdering::new(&seq)?,
        None => find_consistent_ordering(&d)?
            .ok_or_else(|| Failure::Check("no circular ordering satisfies the Kalmanson condition".into()))?,
    };
    Ok(weighted_splits_to_json(&kalmanson_decompose(&d, &c)?) + "\n")
}

fn export_dot(net: &Network, weights: Option<&PathBuf>) -> Result<String, Failure> {
    let ws = weights.map(|p| read_file(p).and_then(|t| Ok(parse_weighted_splits(&t)?))).transpose()?;
    Ok(build_graph(net, ws.as_ref())?.to_dot())
}

fn run(cli: Cli) -> Outcome {
    let opts = Options { budget: budget(cli.budget)?, jobs: cli.jobs.max(1) };
    let text = match cli.command {
        Command::Count { n, max_n, totals } => count(n, max_n, totals)?,
        Command::Enumerate { n, k, part, parts, format } => return enumerate(n, k, part, parts, format, opts.budget),
        Command::Vector { network, format } => vector(&read_network(&network)?, format),
        Command::Sigma { network, format } => sigma(&read_network(&network)?, format),
        Command::Minimize { k, matrix, format } => minimize(k, &matrix, format, opts)?,
        Command::Decompose { matrix, ordering } => decompose(&matrix, ordering)?,
        Command::Verify { suite, n, seed, trials } => return verify::run(suite, n, seed, trials, opts),
        Command::ExportDot { network, weights } => export_dot(&read_network(&network)?, weights.as_ref())?,
    };
    print!("{text}");
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("bmenet: check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("bmenet: {msg}");
            ExitCode::from(2)
        }
    }
}
