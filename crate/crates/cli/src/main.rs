use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use lossy_ds::generators::{
    gen_barabasi_albert, gen_gnm, gen_gnp, gen_random_regular, gen_watts_strogatz,
};
use lossy_ds::harness::{invariant_checks, run_directory, run_pipeline, EvalOptions};
use lossy_ds::io::{
    format_aggregate_block, read_graph, write_edge_list, write_experiment_csv, GraphFormat,
};
use lossy_ds::{
    aggregate, approximate, exact_min, ApproximatorId, Error, Graph, RbInstance, Result,
};

#[derive(Parser)]
#[command(
    name = "lossyds",
    version,
    about = "Lossy preprocessing for dominating set"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random graph as an edge list
    Gen(GenArgs),
    /// Solve one graph
    Solve(SolveArgs),
    /// Run AA/LA (and EX) on every graph in a directory
    Exp(ExpArgs),
    /// Run the invariant suite on one graph
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Gnp,
    Gnm,
    Ws,
    Dreg,
    Ba,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Aa,
    La,
    Exact,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Approx {
    Greedy,
    Degeneracy,
}

impl From<Approx> for ApproximatorId {
    fn from(a: Approx) -> Self {
        match a {
            Approx::Greedy => ApproximatorId::GreedyCover,
            Approx::Degeneracy => ApproximatorId::DegeneracyGuided,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Mtx,
}

impl From<Format> for GraphFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Edgelist => GraphFormat::EdgeList,
            Format::Mtx => GraphFormat::MatrixMarket,
        }
    }
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long)]
    n: usize,
    /// Expected average degree (gnp, gnm)
    #[arg(long)]
    avg_deg: Option<f64>,
    /// Lattice degree (ws) or regular degree (dreg)
    #[arg(long)]
    d: Option<usize>,
    /// Rewiring probability (ws)
    #[arg(long)]
    p: Option<f64>,
    /// Edges per new vertex (ba)
    #[arg(long)]
    attach: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    /// Input format; guessed from the extension when omitted
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(clap::Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "la")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "greedy")]
    approx: Approx,
    /// Exact solver budget in seconds
    #[arg(long, default_value_t = 30.0)]
    time_limit: f64,
    /// Check the lossy rule's witness map after it runs
    #[arg(long)]
    verify_psi: bool,
    /// Write the solution, one vertex per line
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ExpArgs {
    #[arg(long)]
    dir: PathBuf,
    /// CSV output path
    #[arg(long, alias = "out")]
    csv: PathBuf,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, value_enum, default_value = "greedy")]
    approx: Approx,
    /// Exact solver budget in seconds per instance
    #[arg(long, default_value_t = 30.0)]
    time_limit: f64,
    /// Skip the exact solver; EX is reported as `--`
    #[arg(long)]
    no_exact: bool,
    #[arg(long)]
    verify_psi: bool,
    /// Keep Matrix Market files with more than 20 entries per row
    #[arg(long)]
    allow_dense: bool,
    /// Label of the aggregate row; defaults to the directory name
    #[arg(long)]
    category: Option<String>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "greedy")]
    approx: Approx,
}

fn time_limit(secs: f64) -> Result<Duration> {
    if !(secs > 0.0 && secs.is_finite()) {
        return Err(Error::Input(format!(
            "--time-limit must be positive, got {secs}"
        )));
    }
    Ok(Duration::from_secs_f64(secs))
}

fn load(input: &InputArgs) -> Result<Graph> {
    let parsed = read_graph(&input.input, input.format.map(Into::into))?;
    if parsed.duplicates + parsed.self_loops > 0 {
        log::warn!(
            "{}: dropped {} duplicate edges and {} self-loops",
            input.input.display(),
            parsed.duplicates,
            parsed.self_loops
        );
    }
    if parsed.too_dense {
        log::warn!("{}: more than 20 entries per row", input.input.display());
    }
    Ok(parsed.graph)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io {
            path: p.to_path_buf(),
            source: e,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn require<T>(value: Option<T>, flag: &str, model: &str) -> Result<T> {
    value.ok_or_else(|| Error::Input(format!("model {model} needs --{flag}")))
}

fn cmd_gen(args: &GenArgs) -> Result<()> {
    let g = match args.model {
        Model::Gnp => gen_gnp(args.n, require(args.avg_deg, "avg-deg", "gnp")?, args.seed)?,
        Model::Gnm => gen_gnm(args.n, require(args.avg_deg, "avg-deg", "gnm")?, args.seed)?,
        Model::Ws => gen_watts_strogatz(
            args.n,
            require(args.d, "d", "ws")?,
            require(args.p, "p", "ws")?,
            args.seed,
        )?,
        Model::Dreg => gen_random_regular(args.n, require(args.d, "d", "dreg")?, args.seed)?,
        Model::Ba => gen_barabasi_albert(args.n, require(args.attach, "attach", "ba")?, args.seed)?,
    };
    write_output(args.out.as_deref(), &write_edge_list(&g))
}

fn vertex_line(s: &[usize]) -> String {
    let mut line = s
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    line.push('\n');
    line
}

fn cmd_solve(args: &SolveArgs) -> Result<()> {
    let g = load(&args.input)?;
    let approx = args.approx.into();
    let (label, solution) = match args.mode {
        Mode::Aa => ("AA", run_pipeline(&g, false, approx, false)?.solution),
        Mode::La => (
            "LA",
            run_pipeline(&g, true, approx, args.verify_psi)?.solution,
        ),
        Mode::Greedy => ("GREEDY", approximate(&RbInstance::all_blue(&g), approx)),
        Mode::Exact => {
            let res = exact_min(&RbInstance::all_blue(&g), time_limit(args.time_limit)?);
            println!(
                "EX={} proven={} lower_bound={}",
                res.solution.len(),
                res.proven_optimal,
                res.lower_bound
            );
            print!("{}", vertex_line(&res.solution));
            if let Some(out) = &args.out {
                write_solution(out, &res.solution)?;
            }
            return Ok(());
        }
    };
    if !RbInstance::all_blue(&g).is_valid_solution(&solution) {
        return Err(Error::Invariant(format!(
            "{label} solution is not dominating"
        )));
    }
    println!("{label}={}", solution.len());
    print!("{}", vertex_line(&solution));
    if let Some(out) = &args.out {
        write_solution(out, &solution)?;
    }
    Ok(())
}

fn write_solution(path: &Path, s: &[usize]) -> Result<()> {
    let text: String = s.iter().map(|v| format!("{v}\n")).collect();
    write_output(Some(path), &text)
}

fn cmd_exp(args: &ExpArgs) -> Result<()> {
    let opts = EvalOptions {
        approx: args.approx.into(),
        time_limit: if args.no_exact {
            None
        } else {
            Some(time_limit(args.time_limit)?)
        },
        verify_psi: args.verify_psi,
    };
    let run = run_directory(
        &args.dir,
        args.format.map(Into::into),
        args.allow_dense,
        &opts,
    )?;
    for (path, reason) in &run.skipped {
        eprintln!("skipped {}: {reason}", path.display());
    }
    let category = args.category.clone().unwrap_or_else(|| {
        args.dir
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or("all")
            .to_string()
    });
    let stats = if run.reports.is_empty() {
        Vec::new()
    } else {
        vec![aggregate(&run.reports, &category)?]
    };
    write_experiment_csv(&run.reports, &stats, &args.csv)?;
    let aa_total: f64 = run.reports.iter().map(|r| r.aa_secs).sum();
    let la_total: f64 = run.reports.iter().map(|r| r.la_secs).sum();
    eprintln!(
        "{} instances, AA {:.3}s, LA {:.3}s",
        run.reports.len(),
        aa_total,
        la_total
    );
    print!("{}", format_aggregate_block(&stats));
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<()> {
    let g = load(&args.input)?;
    let checks = invariant_checks(&g, args.approx.into());
    let mut failed = Vec::new();
    for c in &checks {
        println!(
            "{} {} {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
        if !c.passed {
            failed.push(c.name);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::Invariant(format!(
            "failed checks: {}",
            failed.join(", ")
        )))
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Exp(a) => cmd_exp(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Invariant(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
