use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use warmstart_bench::experiment::{csv_string, ExperimentConfig, PredictorKind};
use warmstart_bench::format::{
    parse_instance, parse_prediction, parse_preflow, write_instance, write_prediction,
    write_preflow, ParsedInstance,
};
use warmstart_bench::{run_experiment, verify};
use warmstart_core::matching::{repair_matching_duals, solve_mwbm, solve_mwpm, MatchingError};
use warmstart_core::predict::{gen_drift_family, FamilyKind, Instance};
use warmstart_core::pushrelabel::{hl_push_relabel, WarmStart};
use warmstart_core::reductions::{
    reduce_01flow_to_dcs, reduce_dcs_to_matching, reduce_sp_to_matching, run_reduction_pipeline,
    DcsInstance, DcsReduction, Flow01Instance, Flow01Reduction, LearnedReduction, ReductionError,
    SpReduction,
};
use warmstart_core::spaths::{
    apsp_with_prediction, diameter_of, round_re_duals, sssp_with_dual, SpathError,
};
use warmstart_core::{BipartiteInstance, DualVector, FlowNetwork, OpCounters};

#[derive(Parser)]
#[command(
    name = "warmstart",
    version,
    about = "Exact graph solvers warm-started from predictions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Instance file.
    #[arg(long)]
    input: PathBuf,
    /// Prediction file (`h` lines, or `f` lines for maxflow).
    #[arg(long)]
    prediction: Option<PathBuf>,
}

#[derive(Args)]
struct Family {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 16)]
    n: usize,
    #[arg(long, default_value_t = 12)]
    steps: usize,
    #[arg(long, default_value_t = 1)]
    sigma: i64,
    #[arg(long, env = "WARMSTART_SEED", default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Matching,
    Sp,
    Flow,
}

impl From<Kind> for FamilyKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Matching => FamilyKind::Matching,
            Kind::Sp => FamilyKind::Sp,
            Kind::Flow => FamilyKind::Flow,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Predictor {
    None,
    Batch,
    Online,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    Sp,
    Dcs,
    Flow01,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Auto,
    BruteForce,
    BellmanFord,
    EdmondsKarp,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum-cost perfect matching of a `bipartite` instance.
    SolveMatching(Input),
    /// Minimum-cost perfect b-matching of a `bmatch` instance.
    SolveBmatching(Input),
    /// Round a predicted potential to a feasible one on an `sp` instance.
    RoundDuals(Input),
    /// Distances from one vertex of an `sp` instance.
    Sssp {
        #[command(flatten)]
        input: Input,
        /// 1-based source vertex.
        #[arg(long, default_value_t = 1)]
        source: usize,
    },
    /// All-pairs distances of an `sp` instance.
    Apsp(Input),
    /// Largest distance between two distinct vertices of an `sp` instance.
    Diameter(Input),
    /// Solve through a reduction to matching.
    Reduce {
        #[arg(value_enum)]
        kind: ReduceKind,
        #[command(flatten)]
        input: Input,
        /// Flow value for `flow01`.
        #[arg(long)]
        value: Option<i64>,
        /// Also write the target matching instance here.
        #[arg(long)]
        emit_target: Option<PathBuf>,
    },
    /// Maximum flow of a `max` instance by push-relabel.
    Maxflow(Input),
    /// Write a drifting instance family, one file per step.
    Gen {
        #[command(flatten)]
        family: Family,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the drift experiment and write CSV.
    Bench {
        #[command(flatten)]
        family: Family,
        /// Predictors to run next to the cold start; repeatable.
        #[arg(long, value_enum)]
        predictor: Vec<Predictor>,
        /// Training steps for the batch predictor (default: --steps).
        #[arg(long)]
        train: Option<usize>,
        /// CSV path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall-clock nanoseconds per solve.
        #[arg(long)]
        timing: bool,
    },
    /// Compare the solver with an exhaustive or classical oracle.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Oracle::Auto)]
        oracle: Oracle,
    },
}

/// Failure classes, mapped to exit codes 1 and 2.
enum Failure {
    /// The instance has no solution (exit 1).
    NoSolution(String),
    /// Bad input, configuration or I/O (exit 2).
    Usage(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::NoSolution(msg)) => {
            eprintln!("no solution: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> anyhow::Result<ParsedInstance> {
    parse_instance(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_dual(path: Option<&PathBuf>, dim: usize) -> anyhow::Result<DualVector> {
    match path {
        Some(p) => {
            parse_prediction(&read(p)?, dim).with_context(|| format!("parsing {}", p.display()))
        }
        None => Ok(DualVector::zeros(dim)),
    }
}

fn wrong_kind(expected: &str, got: &ParsedInstance) -> Failure {
    Failure::Usage(anyhow::anyhow!(
        "expected a '{expected}' instance, got '{}'",
        got.kind()
    ))
}

fn print_counters(out: &mut impl Write, c: &OpCounters) -> io::Result<()> {
    let fields = [
        ("first_match_size", c.first_match_size),
        ("while_iterations", c.while_iterations),
        ("dijkstra_calls", c.dijkstra_calls),
        ("ff_augmentations", c.ff_augmentations),
        ("round_iterations", c.round_iterations),
        ("bellman_ford_passes", c.bellman_ford_passes),
        ("relabels", c.relabels),
        ("saturating_pushes", c.saturating_pushes),
        ("nonsaturating_pushes", c.nonsaturating_pushes),
    ];
    for (k, v) in fields {
        writeln!(out, "c {k} {v}")?;
    }
    Ok(())
}

fn matching_failure(e: MatchingError) -> Failure {
    match e {
        MatchingError::NoPerfectMatching | MatchingError::NoPerfectBMatching => {
            Failure::NoSolution(e.to_string())
        }
        other => other.into(),
    }
}

fn spath_failure(e: SpathError) -> Failure {
    match e {
        SpathError::NegativeCycle { ref arcs } => {
            let ids: Vec<String> = arcs.iter().map(|a| (a + 1).to_string()).collect();
            Failure::NoSolution(format!("negative cycle through arcs {}", ids.join(" ")))
        }
        SpathError::Disconnected { .. } => Failure::NoSolution(e.to_string()),
        other => other.into(),
    }
}

fn reduction_failure(e: ReductionError) -> Failure {
    match e {
        ReductionError::NegativeCycle
        | ReductionError::NoCompleteDcs
        | ReductionError::NoFlowOfValue { .. } => Failure::NoSolution(e.to_string()),
        ReductionError::Matching(m) => matching_failure(m),
        other => other.into(),
    }
}

fn print_matching(
    out: &mut impl Write,
    g: &BipartiteInstance,
    r: &warmstart_core::matching::MatchingResult,
) -> io::Result<()> {
    writeln!(out, "s {}", r.total_cost)?;
    for &e in &r.matched_edges {
        let ed = g.edges()[e];
        writeln!(out, "m {} {}", ed.left + 1, ed.right + 1)?;
    }
    out.write_all(write_prediction(&r.final_duals).as_bytes())?;
    print_counters(out, &r.counters)
}

fn run(cmd: Command) -> Outcome {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cmd {
        Command::SolveMatching(io) => {
            let inst = load(&io.input)?;
            let ParsedInstance::Bipartite(g) = &inst else {
                return Err(wrong_kind("bipartite", &inst));
            };
            let pred = load_dual(io.prediction.as_ref(), g.n_vertices())?;
            let start = repair_matching_duals(g, &pred).map_err(matching_failure)?;
            let r = solve_mwpm(g, &start).map_err(matching_failure)?;
            print_matching(&mut out, g, &r)?;
        }
        Command::SolveBmatching(io) => {
            let inst = load(&io.input)?;
            let ParsedInstance::BMatch(g) = &inst else {
                return Err(wrong_kind("bmatch", &inst));
            };
            let pred = load_dual(io.prediction.as_ref(), g.n_vertices())?;
            let start = repair_matching_duals(g, &pred).map_err(matching_failure)?;
            let r = solve_mwbm(g, &start).map_err(matching_failure)?;
            print_matching(&mut out, g, &r)?;
        }
        Command::RoundDuals(io) => {
            let inst = load(&io.input)?;
            let ParsedInstance::Sp(g) = &inst else {
                return Err(wrong_kind("sp", &inst));
            };
            let pred = load_dual(io.prediction.as_ref(), g.n())?;
            let r = round_re_duals(g, &pred).map_err(spath_failure)?;
            out.write_all(write_prediction(&r.dual).as_bytes())?;
            print_counters(&mut out, &r.counters)?;
        }
        Command::Sssp { input, source } => {
            let inst = load(&input.input)?;
            let ParsedInstance::Sp(g) = &inst else {
                return Err(wrong_kind("sp", &inst));
            };
            if source == 0 || source > g.n() {
                return Err(Failure::Usage(anyhow::anyhow!(
                    "source {source} is outside 1..={}",
                    g.n()
                )));
            }
            let pred = load_dual(input.prediction.as_ref(), g.n())?;
            let r = round_re_duals(g, &pred).map_err(spath_failure)?;
            let dist = sssp_with_dual(g, source - 1, &r.dual).map_err(spath_failure)?;
            for (v, d) in dist.iter().enumerate() {
                match d {
                    Some(d) => writeln!(out, "d {} {}", v + 1, d)?,
                    None => writeln!(out, "d {} inf", v + 1)?,
                }
            }
            print_counters(&mut out, &r.counters)?;
        }
        Command::Apsp(io) => {
            let inst = load(&io.input)?;
            let ParsedInstance::Sp(g) = &inst else {
                return Err(wrong_kind("sp", &inst));
            };
            let pred = load_dual(io.prediction.as_ref(), g.n())?;
            let r = apsp_with_prediction(g, &pred).map_err(spath_failure)?;
            for row in &r.table {
                let cells: Vec<String> = row
                    .iter()
                    .map(|d| d.map_or_else(|| "inf".to_string(), |x| x.to_string()))
                    .collect();
                writeln!(out, "{}", cells.join(" "))?;
            }
            print_counters(&mut out, &r.counters)?;
        }
        Command::Diameter(io) => {
            let inst = load(&io.input)?;
            let ParsedInstance::Sp(g) = &inst else {
                return Err(wrong_kind("sp", &inst));
            };
            let pred = load_dual(io.prediction.as_ref(), g.n())?;
            let r = apsp_with_prediction(g, &pred).map_err(spath_failure)?;
            writeln!(out, "{}", diameter_of(&r.table).map_err(spath_failure)?)?;
        }
        Command::Reduce {
            kind,
            input,
            value,
            emit_target,
        } => reduce(&mut out, kind, &input, value, emit_target.as_deref())?,
        Command::Maxflow(io) => {
            let inst = load(&io.input)?;
            let ParsedInstance::MaxFlow(g) = &inst else {
                return Err(wrong_kind("max", &inst));
            };
            let warm = match &io.prediction {
                Some(p) => WarmStart::Prediction(
                    parse_preflow(&read(p)?, g)
                        .with_context(|| format!("parsing {}", p.display()))?,
                ),
                None => WarmStart::Cold,
            };
            let r = hl_push_relabel(g, warm)?;
            writeln!(out, "s {}", r.value)?;
            out.write_all(write_preflow(g, &r.flow.flow).as_bytes())?;
            let cut: Vec<String> = (0..g.n())
                .filter(|&v| r.source_side[v])
                .map(|v| (v + 1).to_string())
                .collect();
            writeln!(out, "c cut {}", cut.join(" "))?;
            print_counters(&mut out, &r.counters)?;
        }
        Command::Gen { family, out: dir } => {
            let fam = gen_drift_family(
                family.kind.into(),
                family.n,
                family.steps,
                family.sigma,
                family.seed,
            )?;
            fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            for (k, inst) in fam.instances.iter().enumerate() {
                let parsed = match inst.clone() {
                    Instance::Matching(g) => ParsedInstance::Bipartite(g),
                    Instance::Sp(g) => ParsedInstance::Sp(g),
                    Instance::Flow(g) => ParsedInstance::MaxFlow(g),
                };
                let path = dir.join(format!("step-{:03}.txt", k + 1));
                fs::write(&path, write_instance(&parsed))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            writeln!(
                out,
                "c wrote {} instances to {}",
                fam.instances.len(),
                dir.display()
            )?;
        }
        Command::Bench {
            family,
            predictor,
            train,
            out: path,
            timing,
        } => {
            let mut cfg = ExperimentConfig::new(
                family.kind.into(),
                family.n,
                family.steps,
                family.sigma,
                family.seed,
            );
            cfg.train = train;
            cfg.timing = timing;
            if !predictor.is_empty() {
                let mut chosen = Vec::new();
                for p in predictor {
                    let k = match p {
                        Predictor::None => continue,
                        Predictor::Batch => PredictorKind::Batch,
                        Predictor::Online => PredictorKind::Online,
                    };
                    if !chosen.contains(&k) {
                        chosen.push(k);
                    }
                }
                cfg.predictors = chosen;
            }
            let csv = csv_string(&run_experiment(&cfg)?)?;
            match path {
                Some(p) => {
                    fs::write(&p, csv).with_context(|| format!("writing {}", p.display()))?
                }
                None => out.write_all(csv.as_bytes())?,
            }
        }
        Command::Verify { input, oracle } => {
            let inst = load(&input)?;
            let fits = match oracle {
                Oracle::Auto => true,
                Oracle::BruteForce => matches!(
                    inst,
                    ParsedInstance::Bipartite(_) | ParsedInstance::BMatch(_)
                ),
                Oracle::BellmanFord => matches!(inst, ParsedInstance::Sp(_)),
                Oracle::EdmondsKarp => matches!(inst, ParsedInstance::MaxFlow(_)),
            };
            if !fits {
                return Err(Failure::Usage(anyhow::anyhow!(
                    "the requested oracle does not apply to a '{}' instance",
                    inst.kind()
                )));
            }
            let report = verify(&inst)?;
            writeln!(out, "{report}")?;
            if !report.agree {
                return Err(Failure::NoSolution("solver and oracle disagree".into()));
            }
        }
    }
    Ok(())
}

fn reduce(
    out: &mut impl Write,
    kind: ReduceKind,
    io: &Input,
    value: Option<i64>,
    emit: Option<&Path>,
) -> Outcome {
    let inst = load(&io.input)?;
    let emit_target = |target: &BipartiteInstance| -> anyhow::Result<()> {
        if let Some(path) = emit {
            let text = write_instance(&ParsedInstance::Bipartite(target.clone()));
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    };
    match kind {
        ReduceKind::Sp => {
            let ParsedInstance::Sp(g) = &inst else {
                return Err(wrong_kind("sp", &inst));
            };
            let red = reduce_sp_to_matching(g).map_err(reduction_failure)?;
            emit_target(red.target())?;
            let pi = load_dual(io.prediction.as_ref(), g.n())?;
            let r = run_reduction_pipeline::<SpReduction, _, _>(
                g,
                |_| red.dual_from_potential(&pi),
                solve_mwpm,
            )
            .map_err(reduction_failure)?;
            out.write_all(write_prediction(&r.solution).as_bytes())?;
            print_counters(out, &r.counters)?;
        }
        ReduceKind::Dcs => {
            let ParsedInstance::BMatch(g) = &inst else {
                return Err(wrong_kind("bmatch", &inst));
            };
            // Costs are the weights to maximise; demands are the degree bounds.
            let src = DcsInstance::new(
                g.n_left(),
                g.n_right(),
                g.edges().iter().map(|e| (e.left, e.right, e.cost)),
                g.demands()
                    .expect("bmatch instances carry demands")
                    .to_vec(),
            )
            .map_err(reduction_failure)?;
            let red = reduce_dcs_to_matching(&src).map_err(reduction_failure)?;
            emit_target(red.target())?;
            let r = run_reduction_pipeline::<DcsReduction, _, _>(
                &src,
                |h| DualVector::zeros(h.n_vertices()),
                solve_mwpm,
            )
            .map_err(reduction_failure)?;
            writeln!(out, "s {}", r.solution.weight)?;
            for &e in &r.solution.edges {
                let (l, rr, _) = src.edges()[e];
                writeln!(out, "m {} {}", l + 1, rr + 1)?;
            }
            print_counters(out, &r.counters)?;
        }
        ReduceKind::Flow01 => {
            let ParsedInstance::MaxFlow(net) = &inst else {
                return Err(wrong_kind("max", &inst));
            };
            let Some(value) = value else {
                return Err(Failure::Usage(anyhow::anyhow!("flow01 needs --value")));
            };
            let red = reduce_01flow_to_dcs(net, value).map_err(reduction_failure)?;
            emit_target(red.target())?;
            let src = Flow01Instance {
                net: FlowNetwork::clone(net),
                value,
            };
            let r = run_reduction_pipeline::<Flow01Reduction, _, _>(
                &src,
                |h| DualVector::zeros(h.n_vertices()),
                solve_mwpm,
            )
            .map_err(reduction_failure)?;
            writeln!(out, "s {}", r.solution.cost)?;
            out.write_all(write_preflow(net, &r.solution.flow.flow).as_bytes())?;
            print_counters(out, &r.counters)?;
        }
    }
    Ok(())
}
