//! Predictors, prediction-error norms and drifting instance families.
//!
//! The batch predictor is the coordinate-wise median of past optimal duals,
//! which minimises the summed ℓ1 distance to them. The online predictor
//! simply replays the previous optimum.

mod family;

pub use family::{gen_drift_family, FamilyKind, Instance, InstanceFamily};

use thiserror::Error;

use crate::graphcore::DualVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PredictError {
    #[error("training set is empty")]
    EmptyTrainingSet,
    #[error("vector has dimension {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("could not generate step {step} after {attempts} attempts")]
    GenerationFailed { step: usize, attempts: usize },
}

/// Coordinate-wise lower median of the samples.
pub fn batch_median_predictor(samples: &[DualVector]) -> Result<DualVector, PredictError> {
    let first = samples.first().ok_or(PredictError::EmptyTrainingSet)?;
    let dim = first.len();
    if let Some(bad) = samples.iter().find(|s| s.len() != dim) {
        return Err(PredictError::DimensionMismatch {
            got: bad.len(),
            expected: dim,
        });
    }
    let mut column = Vec::with_capacity(samples.len());
    let out = (0..dim)
        .map(|i| {
            column.clear();
            column.extend(samples.iter().map(|s| s[i]));
            column.sort_unstable();
            column[(column.len() - 1) / 2]
        })
        .collect();
    Ok(DualVector(out))
}

/// The previous optimum, or zeros when there is none yet.
pub fn online_predictor(previous: Option<&DualVector>, dim: usize) -> DualVector {
    previous.cloned().unwrap_or_else(|| DualVector::zeros(dim))
}

/// Distances between a prediction and an optimum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ErrorReport {
    pub l0: u64,
    pub l1: u64,
    pub linf: u64,
    /// Demand-weighted ℓ0 and ℓ1, when demands are given.
    pub l_b0: Option<u64>,
    pub l_b1: Option<u64>,
}

pub fn measure_error(
    predicted: &[i64],
    optimal: &[i64],
    demands: Option<&[i64]>,
) -> Result<ErrorReport, PredictError> {
    for got in [Some(predicted.len()), demands.map(<[i64]>::len)]
        .into_iter()
        .flatten()
    {
        if got != optimal.len() {
            return Err(PredictError::DimensionMismatch {
                got,
                expected: optimal.len(),
            });
        }
    }
    let mut r = ErrorReport::default();
    let mut b0 = 0u64;
    let mut b1 = 0u64;
    for (i, (p, o)) in predicted.iter().zip(optimal).enumerate() {
        let d = (p - o).unsigned_abs();
        let b = demands.map_or(1, |b| b[i] as u64);
        if d > 0 {
            r.l0 += 1;
            b0 += b;
        }
        r.l1 += d;
        r.linf = r.linf.max(d);
        b1 += b * d;
    }
    if demands.is_some() {
        r.l_b0 = Some(b0);
        r.l_b1 = Some(b1);
    }
    Ok(r)
}

/// `sum(optimal) - sum(predicted)`, signed.
pub fn excess_dual(optimal: &[i64], predicted: &[i64]) -> i64 {
    optimal.iter().sum::<i64>() - predicted.iter().sum::<i64>()
}

/// `(d M / eps)^2 (d ln d + ln(1 / delta))` with every hidden constant set
/// to 1. An order-of-magnitude guide, not a guarantee.
// The negated comparisons also reject NaN.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn sample_complexity_bound(
    d: usize,
    m: f64,
    eps: f64,
    delta: f64,
) -> Result<f64, PredictError> {
    if d == 0 || !(m > 0.0) || !(eps > 0.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(PredictError::InvalidParams(format!(
            "need d >= 1, M > 0, eps > 0, 0 < delta < 1; got d={d}, M={m}, eps={eps}, delta={delta}"
        )));
    }
    let d = d as f64;
    Ok((d * m / eps).powi(2) * (d * d.ln() + (1.0 / delta).ln()))
}

/// [`sample_complexity_bound`] rounded up to a whole number of samples.
/// Values within 1e-9 of an integer are not bumped by float noise.
pub fn sample_complexity_estimate(
    d: usize,
    m: f64,
    eps: f64,
    delta: f64,
) -> Result<u64, PredictError> {
    let x = sample_complexity_bound(d, m, eps, delta)?;
    Ok((x - 1e-9).ceil().max(0.0) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_basics() {
        let one = DualVector(vec![3, -1]);
        assert_eq!(
            batch_median_predictor(std::slice::from_ref(&one)).unwrap(),
            one
        );
        let s = [
            DualVector(vec![9]),
            DualVector(vec![1]),
            DualVector(vec![5]),
        ];
        assert_eq!(batch_median_predictor(&s).unwrap().0, vec![5]);
        let even = [DualVector(vec![1]), DualVector(vec![4])];
        assert_eq!(batch_median_predictor(&even).unwrap().0, vec![1]);
    }

    #[test]
    fn median_errors() {
        assert_eq!(
            batch_median_predictor(&[]),
            Err(PredictError::EmptyTrainingSet)
        );
        let s = [DualVector(vec![1]), DualVector(vec![1, 2])];
        assert!(matches!(
            batch_median_predictor(&s),
            Err(PredictError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn online_passes_through() {
        let prev = DualVector(vec![3, -1]);
        assert_eq!(online_predictor(Some(&prev), 2), prev);
        assert_eq!(online_predictor(None, 2).0, vec![0, 0]);
    }

    #[test]
    fn norms() {
        let r = measure_error(&[0, 0], &[0, 0], None).unwrap();
        assert_eq!(r, ErrorReport::default());
        let r = measure_error(&[1, 4], &[3, 4], None).unwrap();
        assert_eq!((r.l0, r.l1, r.linf), (1, 2, 2));
        assert_eq!(r.l_b1, None);
        let r = measure_error(&[1, 4], &[3, 4], Some(&[2, 3])).unwrap();
        assert_eq!(r.l_b1, Some(4));
        assert_eq!(r.l_b0, Some(2));
    }

    #[test]
    fn excess() {
        assert_eq!(excess_dual(&[3, 4], &[1, 1]), 5);
        assert_eq!(excess_dual(&[0], &[2]), -2);
    }

    #[test]
    fn sample_complexity_values() {
        assert_eq!(
            sample_complexity_estimate(1, 1.0, 1.0, (-1.0f64).exp()).unwrap(),
            1
        );
        let a = sample_complexity_bound(3, 1.0, 0.5, 0.1).unwrap();
        let b = sample_complexity_bound(3, 2.0, 0.5, 0.1).unwrap();
        assert!((b / a - 4.0).abs() < 1e-12);
        // 144 * (2 ln 2 + ln 10) = 531.19...
        assert_eq!(sample_complexity_estimate(2, 3.0, 0.5, 0.1).unwrap(), 532);
        assert!(sample_complexity_estimate(2, 3.0, 0.0, 0.1).is_err());
        assert!(sample_complexity_estimate(2, 3.0, 0.5, 1.0).is_err());
    }
}
