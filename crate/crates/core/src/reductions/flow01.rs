use super::dcs::{reduce_dcs_to_matching, DcsInstance, DcsReduction};
use super::{LearnedReduction, ReductionError};
use crate::graphcore::{BipartiteInstance, FlowNetwork, FlowState};
use crate::matching::MatchingResult;

/// A unit-capacity network and the flow value asked for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow01Instance {
    pub net: FlowNetwork,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow01Solution {
    pub flow: FlowState,
    pub cost: i64,
}

/// Min-cost 0-1 flow as a complete DCS, itself solved as a matching.
///
/// Vertex `i` splits into `i1` (left) and `i2` (right) joined by
/// `mindeg(i)` zero-weight copies; arc `(j, k)` with cost `a` becomes edge
/// `(j1, k2)` of weight `-a`. Bounds are `mindeg(i)` on both copies except
/// `u(s1) = mindeg(s) + v` and `u(t2) = mindeg(t) + v`, which force `v`
/// units out of `s` and into `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow01Reduction {
    instance: Flow01Instance,
    dcs: DcsReduction,
}

impl Flow01Reduction {
    pub fn dcs(&self) -> &DcsReduction {
        &self.dcs
    }

    /// DCS edge id of source arc `a`. Arc edges come first, in arc order.
    pub fn dcs_edge(&self, arc: usize) -> usize {
        arc
    }
}

impl LearnedReduction for Flow01Reduction {
    type Source = Flow01Instance;
    type Solution = Flow01Solution;

    fn reduce(source: &Flow01Instance) -> Result<Self, ReductionError> {
        reduce_01flow_to_dcs(&source.net, source.value)
    }

    fn target(&self) -> &BipartiteInstance {
        self.dcs.target()
    }

    fn pull_back(&self, solved: &MatchingResult) -> Result<Flow01Solution, ReductionError> {
        let chosen = self.dcs.pull_back(solved)?;
        let net = &self.instance.net;
        let mut flow = FlowState::zero(net);
        for e in chosen.edges {
            if e < net.m() {
                flow.flow[e] = 1;
            }
        }
        let cost = net
            .arcs()
            .iter()
            .zip(&flow.flow)
            .map(|(a, f)| a.cost * f)
            .sum();
        Ok(Flow01Solution { flow, cost })
    }

    fn no_solution(&self) -> ReductionError {
        ReductionError::NoFlowOfValue {
            value: self.instance.value,
        }
    }
}

pub fn reduce_01flow_to_dcs(
    net: &FlowNetwork,
    value: i64,
) -> Result<Flow01Reduction, ReductionError> {
    for (arc, a) in net.arcs().iter().enumerate() {
        if a.cap != 1 {
            return Err(ReductionError::NotUnitCapacity { arc, cap: a.cap });
        }
    }
    let n = net.n();
    let (s, t) = (net.source(), net.sink());
    let mut indeg = vec![0i64; n];
    let mut outdeg = vec![0i64; n];
    for a in net.arcs() {
        outdeg[a.from] += 1;
        indeg[a.to] += 1;
    }
    if value < 0 || value > outdeg[s].min(indeg[t]) {
        return Err(ReductionError::NoFlowOfValue { value });
    }
    let mindeg: Vec<i64> = (0..n).map(|i| indeg[i].min(outdeg[i])).collect();

    let mut edges: Vec<(usize, usize, i64)> =
        net.arcs().iter().map(|a| (a.from, a.to, -a.cost)).collect();
    for (i, &k) in mindeg.iter().enumerate() {
        edges.extend(std::iter::repeat_n((i, i, 0), k as usize));
    }
    let mut upper: Vec<i64> = mindeg.clone();
    upper.extend(&mindeg);
    upper[s] += value;
    upper[n + t] += value;
    let dcs = DcsInstance::new(n, n, edges, upper)?;
    Ok(Flow01Reduction {
        instance: Flow01Instance {
            net: net.clone(),
            value,
        },
        dcs: reduce_dcs_to_matching(&dcs).map_err(|e| match e {
            ReductionError::NoCompleteDcs => ReductionError::NoFlowOfValue { value },
            other => other,
        })?,
    })
}
