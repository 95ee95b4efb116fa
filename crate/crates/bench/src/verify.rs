//! Cross-checks a solver answer against an independent oracle.

use thiserror::Error;
use warmstart_core::graphcore::edmonds_karp_oracle;
use warmstart_core::matching::{solve_mwbm, solve_mwpm, MatchingError};
use warmstart_core::oracle::{bellman_ford_table, brute_force_mwbm, brute_force_mwpm};
use warmstart_core::pushrelabel::{hl_push_relabel, PushRelabelError, WarmStart};
use warmstart_core::spaths::{apsp_with_prediction, SpathError};
use warmstart_core::DualVector;

use crate::format::ParsedInstance;

/// Largest side the permutation oracle will enumerate.
pub const MAX_BRUTE_FORCE_SIDE: usize = 8;
/// Largest number of multiplicity combinations the b-matching oracle tries.
pub const MAX_BMATCH_COMBINATIONS: u128 = 1_000_000;
/// Largest graph the all-pairs Bellman-Ford table is built for.
pub const MAX_BELLMAN_FORD_VERTICES: usize = 400;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("instance exceeds the oracle budget: {0}")]
    OracleTooLarge(String),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Spaths(#[from] SpathError),
    #[error(transparent)]
    PushRelabel(#[from] PushRelabelError),
}

/// What was compared and whether the two sides agree. `None` stands for
/// "no solution" (no perfect matching, negative cycle).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub oracle: &'static str,
    pub solver: Option<i64>,
    pub expected: Option<i64>,
    pub agree: bool,
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |v: Option<i64>| v.map_or_else(|| "none".to_string(), |x| x.to_string());
        write!(
            f,
            "{}: solver {} oracle {} -> {}",
            self.oracle,
            show(self.solver),
            show(self.expected),
            if self.agree { "agree" } else { "DISAGREE" }
        )
    }
}

fn report(oracle: &'static str, solver: Option<i64>, expected: Option<i64>) -> VerifyReport {
    VerifyReport {
        oracle,
        solver,
        expected,
        agree: solver == expected,
    }
}

/// Solves `inst` with the fast solver and with the oracle for its kind.
///
/// * bipartite: optimal cost vs permutation brute force;
/// * bmatch: optimal cost vs multiplicity enumeration;
/// * sp: sum of all finite pairwise distances vs per-source Bellman-Ford
///   (a negative cycle must be reported by both);
/// * max: push-relabel flow value vs Edmonds-Karp.
pub fn verify(inst: &ParsedInstance) -> Result<VerifyReport, VerifyError> {
    match inst {
        ParsedInstance::Bipartite(g) => {
            if g.n_left().max(g.n_right()) > MAX_BRUTE_FORCE_SIDE {
                return Err(VerifyError::OracleTooLarge(format!(
                    "permutation oracle handles at most {MAX_BRUTE_FORCE_SIDE} vertices per side"
                )));
            }
            let solver = match solve_mwpm(g, &DualVector::zeros(g.n_vertices())) {
                Ok(r) => Some(r.total_cost),
                Err(MatchingError::NoPerfectMatching | MatchingError::Unbalanced { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            Ok(report(
                "permutation brute force",
                solver,
                brute_force_mwpm(g),
            ))
        }
        ParsedInstance::BMatch(g) => {
            let combos = g.edges().iter().try_fold(1u128, |acc, e| {
                let k = g.demand(e.left).min(g.demand(g.right_id(e.right))) as u128 + 1;
                acc.checked_mul(k).filter(|&c| c <= MAX_BMATCH_COMBINATIONS)
            });
            if combos.is_none() {
                return Err(VerifyError::OracleTooLarge(format!(
                    "more than {MAX_BMATCH_COMBINATIONS} multiplicity combinations"
                )));
            }
            let solver = match solve_mwbm(g, &DualVector::zeros(g.n_vertices())) {
                Ok(r) => Some(r.total_cost),
                Err(MatchingError::NoPerfectBMatching) => None,
                Err(e) => return Err(e.into()),
            };
            Ok(report(
                "b-matching enumeration",
                solver,
                brute_force_mwbm(g),
            ))
        }
        ParsedInstance::Sp(g) => {
            if g.n() > MAX_BELLMAN_FORD_VERTICES {
                return Err(VerifyError::OracleTooLarge(format!(
                    "all-pairs Bellman-Ford is limited to {MAX_BELLMAN_FORD_VERTICES} vertices"
                )));
            }
            let total = |t: &[Vec<Option<i64>>]| t.iter().flatten().flatten().sum::<i64>();
            let solver = match apsp_with_prediction(g, &DualVector::zeros(g.n())) {
                Ok(a) => Some(total(&a.table)),
                Err(SpathError::NegativeCycle { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let expected = bellman_ford_table(g).map(|t| total(&t));
            Ok(report("Bellman-Ford", solver, expected))
        }
        ParsedInstance::MaxFlow(g) => {
            let r = hl_push_relabel(g, WarmStart::Cold)?;
            Ok(report(
                "Edmonds-Karp",
                Some(r.value),
                Some(edmonds_karp_oracle(g).value),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_instance;
    use warmstart_core::BipartiteInstance;

    #[test]
    fn small_matching_agrees() {
        let inst = parse_instance("p bipartite 3 3 9\ne 1 1 4\ne 1 2 1\ne 1 3 3\ne 2 1 2\ne 2 2 0\ne 2 3 5\ne 3 1 3\ne 3 2 2\ne 3 3 2").unwrap();
        let r = verify(&inst).unwrap();
        assert!(r.agree);
        assert_eq!(r.expected, Some(5));
    }

    #[test]
    fn maxflow_agrees() {
        let inst =
            parse_instance("p max 4 5 1 4\na 1 2 3\na 1 3 2\na 2 3 1\na 2 4 1\na 3 4 4").unwrap();
        let r = verify(&inst).unwrap();
        assert!(r.agree);
        assert_eq!(r.solver, Some(4));
    }

    #[test]
    fn big_matching_is_refused() {
        let g = BipartiteInstance::new(20, 20, (0..20).map(|i| (i, i, 1))).unwrap();
        assert!(matches!(
            verify(&ParsedInstance::Bipartite(g)),
            Err(VerifyError::OracleTooLarge(_))
        ));
    }

    #[test]
    fn negative_cycle_on_both_sides() {
        let inst = parse_instance("p sp 2 2\na 1 2 -1\na 2 1 0").unwrap();
        let r = verify(&inst).unwrap();
        assert_eq!((r.solver, r.expected, r.agree), (None, None, true));
    }
}
