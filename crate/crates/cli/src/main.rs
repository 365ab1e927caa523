use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use luinv::cosets::{CosetRep, DEFAULT_COSET_BUDGET, StabilizerSigns, stabilizer_signs};
use luinv::dimensions::{ParticleSpec, free_gen_counts, mixed_spec, stable_dims};
use luinv::graphs::{DEFAULT_GRAPH_BUDGET, GraphClass, GraphJson, enumerate};
use luinv::invariants::{
    DEFAULT_CONTRACT_BUDGET, EvalRecord, LoadedState, StateFile, StateTensor, density_rank, evaluate, purify,
};
use luinv::verify::{self, Level};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] luinv::Error),
    #[error("{0}")]
    Io(String),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(luinv::Error::Budget(_)) => 3,
            CliError::Lib(_) => 2,
            CliError::Io(_) => 1,
            CliError::VerifyFailed(_) => 4,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

#[derive(Parser, Debug)]
#[command(name = "luinv", version, about = "Local-unitary invariants of identical particles")]
struct Cli {
    /// Largest wreath-product order scanned by the vanishing test.
    #[arg(long, global = true, default_value_t = DEFAULT_COSET_BUDGET)]
    budget_coset: u64,
    /// Largest multiply-add count of one tensor contraction.
    #[arg(long, global = true, default_value_t = DEFAULT_CONTRACT_BUDGET)]
    budget_contract: u64,
    /// Largest total edge count `m · Σ l_j` for graph enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_GRAPH_BUDGET)]
    budget_graph: usize,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stable dimensions d_m as CSV.
    Dims { spec: String, max_degree: usize },
    /// Free generator counts a_m as CSV.
    FreeGens { spec: String, max_degree: usize },
    /// Graph classes of one degree.
    Graphs {
        spec: String,
        degree: usize,
        /// Only connected classes.
        #[arg(long)]
        connected: bool,
        /// Only classes whose invariant does not vanish.
        #[arg(long)]
        nonvanishing: bool,
        /// Write one DOT file per class into this directory.
        #[arg(long, value_name = "DIR")]
        dot: Option<PathBuf>,
        /// Print the listing as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate invariants on a state or density file.
    Eval {
        spec: String,
        state: PathBuf,
        /// Evaluate every class of this degree.
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        degree: Option<usize>,
        /// Evaluate the classes with these canonical ids.
        #[arg(long)]
        graph: Vec<String>,
    },
    /// Run the self-check suite and print a JSON report.
    Verify {
        #[arg(default_value = "quick")]
        level: String,
        /// Also write the report to this file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn parse_spec(s: &str) -> Result<ParticleSpec> {
    Ok(s.parse::<ParticleSpec>()?)
}

fn write_stdout(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn csv(header: &str, values: &[impl std::fmt::Display]) -> String {
    let mut s = format!("m,{header}\n");
    for (i, v) in values.iter().enumerate() {
        s.push_str(&format!("{},{v}\n", i + 1));
    }
    s
}

#[derive(Serialize)]
struct GraphEntry {
    id: String,
    connected: bool,
    /// `None` when the vanishing test was skipped.
    vanishing: Option<bool>,
    graph: GraphJson,
}

fn vanishing(spec: &ParticleSpec, g: &GraphClass, budget: u64) -> Result<Option<bool>> {
    match stabilizer_signs(&CosetRep::from_graph(spec, g)?, budget) {
        Ok(s) => Ok(Some(s == StabilizerSigns::Mixed)),
        Err(luinv::Error::Budget(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn cmd_graphs(cli: &Cli, spec: &str, degree: usize, connected: bool, nonvanishing: bool, dot: Option<&Path>, json: bool) -> Result<()> {
    let spec = parse_spec(spec)?;
    let classes = enumerate(&spec.line_sums(), degree, cli.budget_graph)?;
    let testable = spec.is_row_or_column();
    if !testable {
        eprintln!("note: vanishing test skipped, it needs single-row or single-column types");
    }
    let mut entries = Vec::new();
    let mut skipped = 0;
    for g in classes {
        if connected && !g.is_connected() {
            continue;
        }
        let v = if testable { vanishing(&spec, &g, cli.budget_coset)? } else { None };
        if testable && v.is_none() {
            skipped += 1;
        }
        if nonvanishing && v != Some(false) {
            if v.is_none() {
                return Err(luinv::Error::Budget(format!(
                    "cannot filter nonvanishing classes: the stabilizer scan for {} exceeds --budget-coset {}",
                    g.id(),
                    cli.budget_coset
                ))
                .into());
            }
            continue;
        }
        entries.push(GraphEntry { id: g.id(), connected: g.is_connected(), vanishing: v, graph: g.to_json() });
        if let Some(dir) = dot {
            fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
            let path = dir.join(format!("{:03}.dot", entries.len()));
            fs::write(&path, g.to_dot()).map_err(|e| io_err(&path, e))?;
        }
    }
    if skipped > 0 {
        eprintln!(
            "note: vanishing test skipped for {skipped} classes: stabilizer scan exceeds --budget-coset {}",
            cli.budget_coset
        );
    }
    if json {
        let text = serde_json::to_string_pretty(&entries).map_err(|e| CliError::Io(e.to_string()))?;
        return write_stdout(&(text + "\n"));
    }
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut s = String::from("id\tconnected\tvanishing\n");
    for e in &entries {
        let v = match e.vanishing {
            Some(b) => yes_no(b),
            None => "unknown",
        };
        s.push_str(&format!("{}\t{}\t{v}\n", e.id, yes_no(e.connected)));
    }
    let n_conn = entries.iter().filter(|e| e.connected).count();
    let n_van = entries.iter().filter(|e| e.vanishing == Some(true)).count();
    s.push_str(&format!("# {} classes, {n_conn} connected, {n_van} vanishing\n", entries.len()));
    write_stdout(&s)
}

fn cmd_eval(cli: &Cli, spec: &str, state: &Path, degree: Option<usize>, ids: &[String]) -> Result<()> {
    let spec = parse_spec(spec)?;
    let text = fs::read_to_string(state).map_err(|e| io_err(state, e))?;
    let file: StateFile =
        serde_json::from_str(&text).map_err(|e| luinv::Error::Parse(format!("{}: {e}", state.display())))?;
    let (psi, graph_spec): (StateTensor, ParticleSpec) = match file.load()? {
        LoadedState::Pure(psi) => {
            if spec != file.spec {
                return Err(luinv::Error::Shape(format!("state file holds {}, not {spec}", file.spec)).into());
            }
            (psi, spec)
        }
        LoadedState::Mixed(rho) => {
            let mixed = mixed_spec(&file.spec);
            if spec != file.spec && spec != mixed {
                return Err(luinv::Error::Shape(format!("density file holds {}, not {spec}", file.spec)).into());
            }
            (purify(&rho, density_rank(&rho).max(1))?, mixed)
        }
    };
    if psi.norm() == 0.0 {
        eprintln!("warning: the state is zero after symmetrization; every invariant is 0");
    }
    let lines = graph_spec.line_sums();
    let graphs = match degree {
        Some(m) => enumerate(&lines, m, cli.budget_graph)?,
        None => ids.iter().map(|id| GraphClass::from_id(&lines, id)).collect::<luinv::Result<_>>()?,
    };
    let mut records = Vec::with_capacity(graphs.len());
    for g in &graphs {
        let v = evaluate(g, &psi, cli.budget_contract)?;
        records.push(EvalRecord { graph_id: g.id(), value_re: v.re, value_im: v.im });
    }
    let text = serde_json::to_string_pretty(&records).map_err(|e| CliError::Io(e.to_string()))?;
    write_stdout(&(text + "\n"))
}

fn cmd_verify(level: &str, out: Option<&Path>) -> Result<()> {
    let level: Level = level.parse()?;
    let report = verify::run(level);
    for c in &report.checks {
        eprintln!("{} {} ({:.3} s): {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.runtime_s, c.detail);
    }
    let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Io(e.to_string()))? + "\n";
    if let Some(path) = out {
        fs::write(path, &text).map_err(|e| io_err(path, e))?;
    }
    write_stdout(&text)?;
    if report.passed {
        Ok(())
    } else {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        Err(CliError::VerifyFailed(failed.join(", ")))
    }
}

fn run(cli: &Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Dims { spec, max_degree } => write_stdout(&csv("d", &stable_dims(&parse_spec(spec)?, *max_degree))),
        Command::FreeGens { spec, max_degree } => {
            write_stdout(&csv("a", &free_gen_counts(&parse_spec(spec)?, *max_degree)?))
        }
        Command::Graphs { spec, degree, connected, nonvanishing, dot, json } => {
            cmd_graphs(cli, spec, *degree, *connected, *nonvanishing, dot.as_deref(), *json)
        }
        Command::Eval { spec, state, degree, graph } => cmd_eval(cli, spec, state, *degree, graph),
        Command::Verify { level, out } => cmd_verify(level, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("luinv: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
