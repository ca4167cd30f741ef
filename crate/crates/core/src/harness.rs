//! The two experiment pipelines and their aggregation.
//!
//! * AA: isolated rule once, pendant rule exhaustively, drop-in approximator,
//!   lift.
//! * LA: the same, with the lossy rule applied once before the approximator.
//!
//! Both start from the all-blue instance of the input graph.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use crate::approx::{approximate, ApproximatorId};
use crate::error::{Error, Result};
use crate::exact::exact_min;
use crate::graph::{Graph, Vertex};
use crate::instance::RbInstance;
use crate::io::{read_graph, GraphFormat};
use crate::reductions::{reduce, ReductionOptions, ReductionTrace};

/// Time budget for the exact solver when none is given.
pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(30);

/// Everything a pipeline run produced.
#[derive(Debug, Clone)]
pub struct PipelineRun {
    /// Lifted solution of the input graph, sorted.
    pub solution: Vec<Vertex>,
    /// Solution the approximator returned for the reduced instance.
    pub reduced_solution: Vec<Vertex>,
    /// Blue vertices left after the reductions.
    pub reduced_blue: Vec<Vertex>,
    pub trace: ReductionTrace,
    pub elapsed: Duration,
}

pub fn run_pipeline(
    g: &Graph,
    lossy: bool,
    approx: ApproximatorId,
    verify_psi: bool,
) -> Result<PipelineRun> {
    let start = Instant::now();
    let mut inst = RbInstance::all_blue(g);
    let trace = reduce(&mut inst, ReductionOptions { lossy, verify_psi })?;
    let reduced_solution = approximate(&inst, approx);
    let solution = trace.lift(&reduced_solution);
    Ok(PipelineRun {
        solution,
        reduced_solution,
        reduced_blue: inst.blue_vertices().collect(),
        trace,
        elapsed: start.elapsed(),
    })
}

/// AA pipeline: exact rules only.
pub fn run_exp_aa(g: &Graph, approx: ApproximatorId) -> Vec<Vertex> {
    run_pipeline(g, false, approx, false)
        .expect("reductions without witness checks cannot fail")
        .solution
}

/// LA pipeline: exact rules, then the lossy rule once.
pub fn run_exp_la(g: &Graph, approx: ApproximatorId) -> Vec<Vertex> {
    run_pipeline(g, true, approx, false)
        .expect("reductions without witness checks cannot fail")
        .solution
}

/// `(aa - la) * 100 / ex`, or `None` when LA is not strictly better.
pub fn improvement_pct(aa: usize, la: usize, ex: usize) -> Result<Option<f64>> {
    if ex == 0 {
        return Err(Error::input("improvement needs EX >= 1"));
    }
    if aa <= la {
        return Ok(None);
    }
    Ok(Some((aa - la) as f64 * 100.0 / ex as f64))
}

/// Exact-solver value for a report row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExValue {
    pub value: usize,
    /// False when the solver ran out of time and `value` is its incumbent.
    pub proven: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub ex: Option<ExValue>,
    pub aa: usize,
    pub la: usize,
    pub aa_secs: f64,
    pub la_secs: f64,
}

impl RunReport {
    pub fn improved(&self) -> bool {
        self.la < self.aa
    }

    /// Present exactly when EX is known and LA beats AA.
    pub fn imprv(&self) -> Option<f64> {
        let ex = self.ex?;
        improvement_pct(self.aa, self.la, ex.value).ok().flatten()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateStats {
    pub category: String,
    pub count: usize,
    /// Share of instances with LA < AA, in percent.
    pub pct_improved: f64,
    /// Mean improvement over improved instances that have an EX value.
    pub avg_imprv: Option<f64>,
}

pub fn aggregate(reports: &[RunReport], category: &str) -> Result<AggregateStats> {
    if reports.is_empty() {
        return Err(Error::input(format!("no reports in category '{category}'")));
    }
    let improved = reports.iter().filter(|r| r.improved()).count();
    let imprv: Vec<f64> = reports.iter().filter_map(RunReport::imprv).collect();
    let avg_imprv = (!imprv.is_empty()).then(|| imprv.iter().sum::<f64>() / imprv.len() as f64);
    Ok(AggregateStats {
        category: category.to_string(),
        count: reports.len(),
        pct_improved: improved as f64 * 100.0 / reports.len() as f64,
        avg_imprv,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct EvalOptions {
    pub approx: ApproximatorId,
    /// Budget for the exact solver; `None` skips it and leaves EX empty.
    pub time_limit: Option<Duration>,
    pub verify_psi: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            approx: ApproximatorId::GreedyCover,
            time_limit: Some(DEFAULT_TIME_LIMIT),
            verify_psi: false,
        }
    }
}

/// Runs both pipelines (and the exact solver if requested) on one graph.
pub fn evaluate(id: &str, g: &Graph, opts: &EvalOptions) -> Result<RunReport> {
    let aa = run_pipeline(g, false, opts.approx, false)?;
    let la = run_pipeline(g, true, opts.approx, opts.verify_psi)?;
    for (name, run) in [("AA", &aa), ("LA", &la)] {
        if !RbInstance::all_blue(g).is_valid_solution(&run.solution) {
            return Err(Error::Invariant(format!(
                "{name} solution for '{id}' does not dominate the graph"
            )));
        }
    }
    let ex = opts.time_limit.map(|budget| {
        let res = exact_min(&RbInstance::all_blue(g), budget);
        ExValue {
            value: res.solution.len(),
            proven: res.proven_optimal,
        }
    });
    log::info!(
        "{id}: n={} m={} aa={} la={} ex={:?} ({:.3}s / {:.3}s)",
        g.n(),
        g.m(),
        aa.solution.len(),
        la.solution.len(),
        ex,
        aa.elapsed.as_secs_f64(),
        la.elapsed.as_secs_f64()
    );
    Ok(RunReport {
        id: id.to_string(),
        n: g.n(),
        m: g.m(),
        ex,
        aa: aa.solution.len(),
        la: la.solution.len(),
        aa_secs: aa.elapsed.as_secs_f64(),
        la_secs: la.elapsed.as_secs_f64(),
    })
}

/// Graph files in `dir`, sorted by file name. Hidden files are skipped.
pub fn list_instances(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let path = entry.path();
        let hidden = path
            .file_name()
            .and_then(|n| n.to_str())
            .is_some_and(|n| n.starts_with('.'));
        if path.is_file() && !hidden {
            paths.push(path);
        }
    }
    paths.sort();
    Ok(paths)
}

/// Outcome of [`run_directory`].
#[derive(Debug, Clone, Default)]
pub struct DirectoryRun {
    pub reports: Vec<RunReport>,
    /// Files left out, with the reason.
    pub skipped: Vec<(PathBuf, String)>,
}

/// Evaluates every graph file in `dir` in file-name order. Matrix Market
/// files over the density limit are skipped unless `allow_dense` is set.
pub fn run_directory(
    dir: &Path,
    format: Option<GraphFormat>,
    allow_dense: bool,
    opts: &EvalOptions,
) -> Result<DirectoryRun> {
    let mut out = DirectoryRun::default();
    for path in list_instances(dir)? {
        let parsed = read_graph(&path, format)?;
        if parsed.too_dense && !allow_dense {
            log::warn!("{}: more than 20 entries per row, skipped", path.display());
            out.skipped
                .push((path, "more than 20 stored entries per row".to_string()));
            continue;
        }
        let id = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("?")
            .to_string();
        out.reports.push(evaluate(&id, &parsed.graph, opts)?);
    }
    Ok(out)
}

/// One named invariant check and whether it held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

/// Largest graph on which [`invariant_checks`] also compares against brute
/// force optima.
pub const VERIFY_BRUTE_FORCE_MAX_N: usize = 20;

/// Runs the invariant suite on one graph: graph structure, lift validity of
/// both pipelines, the lossy witness, the lower-bound witness, and on small
/// graphs the approximation bounds against exact optima.
pub fn invariant_checks(g: &Graph, approx: ApproximatorId) -> Vec<Check> {
    let mut checks = Vec::new();
    checks.push(match g.check_invariants() {
        Ok(()) => Check::new("graph-structure", true, format!("n={} m={}", g.n(), g.m())),
        Err(e) => Check::new("graph-structure", false, e),
    });
    let (_, d) = g.degeneracy_order();
    checks.push(Check::new(
        "degeneracy-edge-bound",
        g.m() <= d * g.n(),
        format!("m={} d={d}", g.m()),
    ));

    let original = RbInstance::all_blue(g);
    let aa = run_pipeline(g, false, approx, false).expect("no witness checks requested");
    checks.push(Check::new(
        "aa-valid",
        original.is_valid_solution(&aa.solution),
        format!("|AA|={}", aa.solution.len()),
    ));

    let la = match run_pipeline(g, true, approx, true) {
        Ok(run) => {
            checks.push(Check::new("psi-properties", true, ""));
            run
        }
        Err(e) => {
            checks.push(Check::new("psi-properties", false, e.to_string()));
            run_pipeline(g, true, approx, false).expect("no witness checks requested")
        }
    };
    checks.push(Check::new(
        "la-valid",
        original.is_valid_solution(&la.solution),
        format!("|LA|={}", la.solution.len()),
    ));

    let x_size = la.trace.lossy_record().map_or(0, |r| r.add_set.len());
    let mut reduced_blue = vec![false; g.n()];
    for &v in &la.reduced_blue {
        reduced_blue[v] = true;
    }
    let images_blue = la
        .trace
        .lossy_record()
        .and_then(|r| r.psi.as_ref())
        .is_none_or(|psi| psi.images().all(|z| reduced_blue[z]));
    checks.push(Check::new(
        "images-stay-blue",
        images_blue,
        "every image is blue in the reduced instance",
    ));
    checks.push(Check::new(
        "x-below-reduced-solution",
        x_size <= la.reduced_solution.len(),
        format!("|X|={x_size} |S'|={}", la.reduced_solution.len()),
    ));

    if g.n() <= VERIFY_BRUTE_FORCE_MAX_N {
        checks.extend(ratio_checks(g, &aa, &la));
    }
    checks
}

fn ratio_checks(g: &Graph, aa: &PipelineRun, la: &PipelineRun) -> Vec<Check> {
    use crate::exact::brute_force_min;

    let opt = brute_force_min(&RbInstance::all_blue(g)).unwrap().len();
    let aa_reduced = RbInstance::with_blue(g, aa.reduced_blue.iter().copied());
    let la_reduced = RbInstance::with_blue(g, la.reduced_blue.iter().copied());
    let opt_aa = brute_force_min(&aa_reduced).unwrap().len();
    let opt_la = brute_force_min(&la_reduced).unwrap().len();
    let x_size = la.trace.lossy_record().map_or(0, |r| r.add_set.len());

    // lifted / opt <= max(s' / opt', 1)  <=>  lifted * opt' <= max(s', opt') * opt
    let s_aa = aa.reduced_solution.len();
    let strict = if opt_aa == 0 {
        s_aa > 0 || aa.solution.len() <= opt
    } else {
        aa.solution.len() * opt_aa <= s_aa.max(opt_aa) * opt
    };
    // lifted / opt <= 2 * s' / opt'
    let s_la = la.reduced_solution.len();
    let lossy = if opt_la == 0 {
        s_la > 0 || la.solution.len() <= opt
    } else {
        la.solution.len() * opt_la <= 2 * s_la * opt
    };
    vec![
        Check::new(
            "aa-strict-ratio",
            strict,
            format!(
                "|AA|={} OPT={opt} |S'|={s_aa} OPT'={opt_aa}",
                aa.solution.len()
            ),
        ),
        Check::new(
            "la-2-ratio",
            lossy,
            format!(
                "|LA|={} OPT={opt} |S'|={s_la} OPT'={opt_la}",
                la.solution.len()
            ),
        ),
        Check::new(
            "x-below-reduced-opt",
            x_size <= opt_la,
            format!("|X|={x_size} OPT'={opt_la}"),
        ),
    ]
}
