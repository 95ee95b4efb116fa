//! Drift experiment: solve every step of a drifting family cold and from
//! each predictor, and emit one CSV row per (step, predictor).

use std::io::Write;
use std::time::Instant;

use thiserror::Error;
use warmstart_core::matching::{repair_matching_duals, solve_mwpm, MatchingError};
use warmstart_core::predict::{
    batch_median_predictor, excess_dual, gen_drift_family, measure_error, online_predictor,
    FamilyKind, Instance, PredictError,
};
use warmstart_core::pushrelabel::{hl_push_relabel, PushRelabelError, WarmStart};
use warmstart_core::reductions::{
    reduce_sp_to_matching, run_reduction_pipeline, ReductionError, SpReduction,
};
use warmstart_core::spaths::{round_re_duals, sssp_with_dual, SpathError};
use warmstart_core::{DualVector, OpCounters};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PredictorKind {
    Batch,
    Online,
}

impl PredictorKind {
    pub fn name(self) -> &'static str {
        match self {
            PredictorKind::Batch => "batch",
            PredictorKind::Online => "online",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub kind: FamilyKind,
    pub n: usize,
    /// Test steps.
    pub steps: usize,
    pub sigma: i64,
    pub seed: u64,
    /// Steps generated ahead of the test steps to train the batch predictor;
    /// `None` means as many as there are test steps.
    pub train: Option<usize>,
    pub predictors: Vec<PredictorKind>,
    /// Record wall-clock time per solve. Off by default so the CSV is
    /// reproducible byte for byte.
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(kind: FamilyKind, n: usize, steps: usize, sigma: i64, seed: u64) -> Self {
        Self {
            kind,
            n,
            steps,
            sigma,
            seed,
            train: None,
            predictors: vec![PredictorKind::Batch, PredictorKind::Online],
            timing: false,
        }
    }
}

/// One CSV row. Column order is the field order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunRecord {
    pub instance_id: String,
    pub kind: String,
    pub n: usize,
    pub m: usize,
    /// `"none"` for the cold start.
    pub predictor_name: String,
    pub l0: Option<u64>,
    pub l1: Option<u64>,
    pub linf: Option<u64>,
    pub first_match_size: u64,
    pub while_iterations: u64,
    pub ff_augmentations: u64,
    pub round_iterations: u64,
    pub relabels: u64,
    pub saturating_pushes: u64,
    pub nonsaturating_pushes: u64,
    pub objective: i64,
    pub wall_time_ns: Option<u128>,
    /// `sum(optimal) - sum(predicted)`; empty on cold rows.
    pub excess_dual: Option<i64>,
}

pub const CSV_HEADER: [&str; 18] = [
    "instance_id",
    "kind",
    "n",
    "m",
    "predictor_name",
    "l0",
    "l1",
    "linf",
    "first_match_size",
    "while_iterations",
    "ff_augmentations",
    "round_iterations",
    "relabels",
    "saturating_pushes",
    "nonsaturating_pushes",
    "objective",
    "wall_time_ns",
    "excess_dual",
];

impl RunRecord {
    fn fields(&self) -> [String; 18] {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map_or_else(String::new, T::to_string)
        }
        [
            self.instance_id.clone(),
            self.kind.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.predictor_name.clone(),
            opt(&self.l0),
            opt(&self.l1),
            opt(&self.linf),
            self.first_match_size.to_string(),
            self.while_iterations.to_string(),
            self.ff_augmentations.to_string(),
            self.round_iterations.to_string(),
            self.relabels.to_string(),
            self.saturating_pushes.to_string(),
            self.nonsaturating_pushes.to_string(),
            self.objective.to_string(),
            opt(&self.wall_time_ns),
            opt(&self.excess_dual),
        ]
    }
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Predict(#[from] PredictError),
    #[error("{instance}: {source}")]
    Matching {
        instance: String,
        source: MatchingError,
    },
    #[error("{instance}: {source}")]
    Reduction {
        instance: String,
        source: ReductionError,
    },
    #[error("{instance}: {source}")]
    Spaths {
        instance: String,
        source: SpathError,
    },
    #[error("{instance}: {source}")]
    PushRelabel {
        instance: String,
        source: PushRelabelError,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Outcome of one solve, before it becomes a row.
struct Solve {
    counters: OpCounters,
    objective: i64,
    /// The vector predictors learn: duals, potentials or arc flows.
    optimum: Vec<i64>,
    /// The prediction after repair, compared against the cold optimum.
    start: Vec<i64>,
    nanos: u128,
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>, ExperimentError> {
    let train = cfg.train.unwrap_or(cfg.steps);
    let fam = gen_drift_family(cfg.kind, cfg.n, train + cfg.steps, cfg.sigma, cfg.seed)?;
    let (training, test) = fam.instances.split_at(train);

    let batch = if cfg.predictors.contains(&PredictorKind::Batch) {
        let mut optima = Vec::with_capacity(training.len());
        for (k, inst) in training.iter().enumerate() {
            let id = format!(
                "{}-s{}-seed{}-train{}",
                cfg.kind.name(),
                cfg.sigma,
                cfg.seed,
                k + 1
            );
            optima.push(DualVector(solve(inst, None, &id, false)?.optimum));
        }
        Some(batch_median_predictor(&optima)?)
    } else {
        None
    };

    let mut rows = Vec::new();
    let mut previous: Option<DualVector> = None;
    for (k, inst) in test.iter().enumerate() {
        let id = format!(
            "{}-s{}-seed{}-t{}",
            cfg.kind.name(),
            cfg.sigma,
            cfg.seed,
            k + 1
        );
        let (n, m) = shape(inst);
        let cold = solve(inst, None, &id, cfg.timing)?;
        let row = |name: &str, s: &Solve, err: Option<(u64, u64, u64, i64)>| RunRecord {
            instance_id: id.clone(),
            kind: cfg.kind.name().to_string(),
            n,
            m,
            predictor_name: name.to_string(),
            l0: err.map(|e| e.0),
            l1: err.map(|e| e.1),
            linf: err.map(|e| e.2),
            first_match_size: s.counters.first_match_size,
            while_iterations: s.counters.while_iterations,
            ff_augmentations: s.counters.ff_augmentations,
            round_iterations: s.counters.round_iterations,
            relabels: s.counters.relabels,
            saturating_pushes: s.counters.saturating_pushes,
            nonsaturating_pushes: s.counters.nonsaturating_pushes,
            objective: s.objective,
            wall_time_ns: cfg.timing.then_some(s.nanos),
            excess_dual: err.map(|e| e.3),
        };
        rows.push(row("none", &cold, None));
        for &p in &cfg.predictors {
            let pred = match p {
                PredictorKind::Batch => batch.clone().expect("trained above"),
                PredictorKind::Online => online_predictor(previous.as_ref(), cold.optimum.len()),
            };
            let warm = solve(inst, Some(&pred), &id, cfg.timing)?;
            let e = measure_error(&warm.start, &cold.optimum, None)?;
            let excess = excess_dual(&cold.optimum, &warm.start);
            rows.push(row(p.name(), &warm, Some((e.l0, e.l1, e.linf, excess))));
        }
        previous = Some(DualVector(cold.optimum));
    }
    Ok(rows)
}

fn shape(inst: &Instance) -> (usize, usize) {
    match inst {
        Instance::Matching(g) => (g.n_left(), g.edges().len()),
        Instance::Sp(g) => (g.n(), g.m()),
        Instance::Flow(g) => (g.n(), g.m()),
    }
}

fn solve(
    inst: &Instance,
    pred: Option<&DualVector>,
    id: &str,
    timing: bool,
) -> Result<Solve, ExperimentError> {
    let clock = timing.then(Instant::now);
    let mut out = match inst {
        Instance::Matching(g) => {
            let zero = DualVector::zeros(g.n_vertices());
            let start = repair_matching_duals(g, pred.unwrap_or(&zero)).map_err(|source| {
                ExperimentError::Matching {
                    instance: id.to_string(),
                    source,
                }
            })?;
            let r = solve_mwpm(g, &start).map_err(|source| ExperimentError::Matching {
                instance: id.to_string(),
                source,
            })?;
            Solve {
                counters: r.counters,
                objective: r.total_cost,
                optimum: r.final_duals.0,
                start: start.0,
                nanos: 0,
            }
        }
        Instance::Sp(g) => {
            let zero = DualVector::zeros(g.n());
            let pi = pred.unwrap_or(&zero);
            let reduction = |source| ExperimentError::Reduction {
                instance: id.to_string(),
                source,
            };
            let red = reduce_sp_to_matching(g).map_err(reduction)?;
            let out = run_reduction_pipeline::<SpReduction, _, _>(
                g,
                |_| red.dual_from_potential(pi),
                solve_mwpm,
            )
            .map_err(reduction)?;
            let spaths = |source| ExperimentError::Spaths {
                instance: id.to_string(),
                source,
            };
            let rounded = round_re_duals(g, pi).map_err(spaths)?;
            let dist = sssp_with_dual(g, 0, &out.solution).map_err(spaths)?;
            let mut counters = out.counters;
            counters.round_iterations = rounded.counters.round_iterations;
            Solve {
                counters,
                objective: dist.iter().flatten().sum(),
                optimum: out.solution.0,
                start: red.potential_from(&out.start_dual).0,
                nanos: 0,
            }
        }
        Instance::Flow(g) => {
            let warm = match pred {
                Some(p) => WarmStart::Prediction(p.0.clone()),
                None => WarmStart::Cold,
            };
            let r = hl_push_relabel(g, warm).map_err(|source| ExperimentError::PushRelabel {
                instance: id.to_string(),
                source,
            })?;
            Solve {
                counters: r.counters,
                objective: r.value,
                optimum: r.flow.flow,
                start: pred.map_or_else(|| vec![0; g.m()], |p| p.0.clone()),
                nanos: 0,
            }
        }
    };
    if let Some(t) = clock {
        out.nanos = t.elapsed().as_nanos();
    }
    Ok(out)
}

pub fn write_csv<W: Write>(rows: &[RunRecord], out: W) -> Result<(), ExperimentError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(r.fields())?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn csv_string(rows: &[RunRecord]) -> Result<String, ExperimentError> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}
