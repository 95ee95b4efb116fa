use std::collections::HashSet;

use super::PredictError;
use crate::graphcore::{
    bellman_ford_potential, BipartiteInstance, DirectedLengthGraph, FlowNetwork,
};
use crate::rng::SplitMix64;

/// Attempts per step before an sp family gives up on avoiding negative cycles.
const SP_RETRIES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Matching,
    Sp,
    Flow,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Matching => "matching",
            FamilyKind::Sp => "sp",
            FamilyKind::Flow => "flow",
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = PredictError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "matching" => Ok(FamilyKind::Matching),
            "sp" => Ok(FamilyKind::Sp),
            "flow" => Ok(FamilyKind::Flow),
            other => Err(PredictError::InvalidParams(format!(
                "unknown family kind {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Matching(BipartiteInstance),
    Sp(DirectedLengthGraph),
    Flow(FlowNetwork),
}

/// A base instance and `steps` drifted copies of it. Topology never changes;
/// only weights (or capacities) move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFamily {
    pub kind: FamilyKind,
    pub n: usize,
    pub sigma: i64,
    pub seed: u64,
    pub instances: Vec<Instance>,
}

/// Seeded drifting family.
///
/// Step 1 is the base instance. Each later step adds an independent uniform
/// draw from `-sigma..=sigma` to every weight's running offset, so weights
/// follow a bounded-increment random walk from the base.
///
/// * matching: complete `n x n`, base costs in `0..=50`, clamped at 0.
/// * sp: about `3n` distinct arcs with lengths `w + p_v - p_u`, `w` in
///   `0..=10`, `p` in `0..=5`. A step whose draw creates a negative cycle
///   is redrawn.
/// * flow: `s = 0`, `t = n - 1`, the path `0 -> 1 -> .. -> n-1` plus about
///   `3n` random arcs, capacities in `1..=20`, clamped at 0.
pub fn gen_drift_family(
    kind: FamilyKind,
    n: usize,
    steps: usize,
    sigma: i64,
    seed: u64,
) -> Result<InstanceFamily, PredictError> {
    if n < 2 || steps < 1 || sigma < 0 {
        return Err(PredictError::InvalidParams(format!(
            "need n >= 2, steps >= 1, sigma >= 0; got n={n}, steps={steps}, sigma={sigma}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let instances = match kind {
        FamilyKind::Matching => matching_family(&mut rng, n, steps, sigma),
        FamilyKind::Sp => sp_family(&mut rng, n, steps, sigma)?,
        FamilyKind::Flow => flow_family(&mut rng, n, steps, sigma),
    };
    Ok(InstanceFamily {
        kind,
        n,
        sigma,
        seed,
        instances,
    })
}

fn step_noise(rng: &mut SplitMix64, walk: &[i64], sigma: i64) -> Vec<i64> {
    walk.iter().map(|w| w + rng.range(-sigma, sigma)).collect()
}

fn matching_family(rng: &mut SplitMix64, n: usize, steps: usize, sigma: i64) -> Vec<Instance> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let base: Vec<i64> = pairs.iter().map(|_| rng.range(0, 50)).collect();
    let mut walk = vec![0i64; base.len()];
    let mut out = Vec::with_capacity(steps);
    for step in 0..steps {
        if step > 0 {
            walk = step_noise(rng, &walk, sigma);
        }
        let edges = pairs
            .iter()
            .zip(base.iter().zip(&walk))
            .map(|(&(i, j), (b, w))| (i, j, (b + w).max(0)));
        out.push(Instance::Matching(
            BipartiteInstance::new(n, n, edges).expect("generated costs are in range"),
        ));
    }
    out
}

fn random_pairs(
    rng: &mut SplitMix64,
    n: usize,
    count: usize,
    mut taken: HashSet<(usize, usize)>,
) -> Vec<(usize, usize)> {
    let count = count.min(n * (n - 1) - taken.len());
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let u = rng.below(n);
        let v = rng.below(n);
        if u != v && taken.insert((u, v)) {
            out.push((u, v));
        }
    }
    out
}

fn sp_family(
    rng: &mut SplitMix64,
    n: usize,
    steps: usize,
    sigma: i64,
) -> Result<Vec<Instance>, PredictError> {
    let pairs = random_pairs(rng, n, 3 * n, HashSet::new());
    let p: Vec<i64> = (0..n).map(|_| rng.range(0, 5)).collect();
    let base: Vec<i64> = pairs
        .iter()
        .map(|&(u, v)| rng.range(0, 10) + p[v] - p[u])
        .collect();
    let build = |walk: &[i64]| {
        DirectedLengthGraph::new(
            n,
            pairs
                .iter()
                .zip(base.iter().zip(walk))
                .map(|(&(u, v), (b, w))| (u, v, b + w)),
        )
        .expect("generated lengths are in range")
    };
    let mut walk = vec![0i64; base.len()];
    let mut out = Vec::with_capacity(steps);
    out.push(Instance::Sp(build(&walk)));
    for step in 1..steps {
        let mut accepted = None;
        for _ in 0..SP_RETRIES {
            let next = step_noise(rng, &walk, sigma);
            let g = build(&next);
            if !bellman_ford_potential(&g).is_negative_cycle() {
                accepted = Some((next, g));
                break;
            }
        }
        let (next, g) = accepted.ok_or(PredictError::GenerationFailed {
            step: step + 1,
            attempts: SP_RETRIES,
        })?;
        walk = next;
        out.push(Instance::Sp(g));
    }
    Ok(out)
}

fn flow_family(rng: &mut SplitMix64, n: usize, steps: usize, sigma: i64) -> Vec<Instance> {
    let mut pairs: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    let extra = random_pairs(rng, n, 3 * n, pairs.iter().copied().collect());
    pairs.extend(extra);
    let base: Vec<i64> = pairs.iter().map(|_| rng.range(1, 20)).collect();
    let mut walk = vec![0i64; base.len()];
    let mut out = Vec::with_capacity(steps);
    for step in 0..steps {
        if step > 0 {
            walk = step_noise(rng, &walk, sigma);
        }
        let arcs = pairs
            .iter()
            .zip(base.iter().zip(&walk))
            .map(|(&(u, v), (b, w))| (u, v, (b + w).max(0), 0));
        out.push(Instance::Flow(
            FlowNetwork::new(n, arcs, 0, n - 1).expect("generated capacities are in range"),
        ));
    }
    out
}
