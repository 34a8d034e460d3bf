//! Fiber-cone invariants and criteria, written against [`IdealCalculus`].
//!
//! [`FiberCone`] holds everything that depends on `I` alone. A
//! [`ReductionPair`] adds a verified minimal reduction `J` and evaluates the
//! criteria that need it.
//!
//! [`IdealCalculus`]: crate::calculus::IdealCalculus

mod fiber;
mod pair;
mod report;
mod stabilize;

use thiserror::Error;

use crate::artinian::{Field, TruncatedLocalRing};
use crate::calculus::CalcError;

pub use fiber::{
    FiberCone, G1Report, MixedTable, MultreesReport, Numerator, SuperficialReport,
    SuperficialVariant,
};
pub use pair::{
    Classification, CmReport, CriterionCheck, GorboundReport, GorensteinReason, GorensteinReport,
    Multiplicity, ReductionPair, SallySuite, VvReport, WReport,
};
pub use report::FiberReport;
pub use stabilize::{StabilizationPolicy, Stabilized};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvError {
    #[error(transparent)]
    Calc(#[from] CalcError),
    #[error("{what} did not stabilize for n <= {n_max}")]
    StabilizationFailed { what: String, n_max: usize },
    #[error("J is not a reduction of I: {0}")]
    NotAReduction(String),
    #[error("J I^n != I^(n+1) for every n <= {0}")]
    NotAReductionWithin(usize),
    #[error("I is not a Sally ideal for J")]
    NotSally,
    #[error("degrees ({i}, {j}) do not sum to the dimension {d}")]
    BadDegrees { i: usize, j: usize, d: usize },
    #[error("expected {expected} elements, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("bad stabilization policy: {0}")]
    BadPolicy(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl InvError {
    /// Short machine-readable name.
    pub fn kind(&self) -> &'static str {
        match self {
            InvError::Calc(e) => match e {
                CalcError::MixedParents => "MixedParents",
                CalcError::MixedRings => "MixedRings",
                CalcError::ZeroIdeal => "ZeroIdeal",
                CalcError::NotContained => "NotContained",
                CalcError::ExponentNotInSemigroup(_) => "ExponentNotInSemigroup",
                CalcError::UnitGenerator => "UnitGenerator",
                CalcError::BadParameters(_) => "BadParameters",
                CalcError::PrecisionExhausted { .. } => "PrecisionExhausted",
                CalcError::BudgetExceeded { .. } => "BudgetExceeded",
            },
            InvError::StabilizationFailed { .. } => "StabilizationFailed",
            InvError::NotAReduction(_) => "NotAReduction",
            InvError::NotAReductionWithin(_) => "NotAReductionWithin",
            InvError::NotSally => "NotSally",
            InvError::BadDegrees { .. } => "BadDegrees",
            InvError::DimensionMismatch { .. } => "DimensionMismatch",
            InvError::BadPolicy(_) => "BadPolicy",
            InvError::Unsupported(_) => "Unsupported",
            InvError::Inconsistent(_) => "Inconsistent",
        }
    }

    pub fn is_precision_exhausted(&self) -> bool {
        matches!(self, InvError::Calc(e) if e.is_precision_exhausted())
    }
}

/// Runs an invariant computation on `ring`, doubling the truncation whenever
/// precision runs out, at most `budget` times.
pub fn with_precision<F: Field, T>(
    ring: &TruncatedLocalRing<F>,
    budget: u32,
    mut job: impl FnMut(&TruncatedLocalRing<F>) -> Result<T, InvError>,
) -> Result<(T, TruncatedLocalRing<F>), InvError> {
    let mut current = ring.clone();
    let mut doublings = 0;
    loop {
        match job(&current) {
            Ok(v) => return Ok((v, current)),
            Err(e) if e.is_precision_exhausted() => {
                if doublings == budget {
                    return Err(CalcError::BudgetExceeded {
                        doublings,
                        truncation: current.truncation(),
                    }
                    .into());
                }
                doublings += 1;
                current = current.with_truncation(2 * current.truncation())?;
            }
            Err(e) => return Err(e),
        }
    }
}

/// `C(n, k)` for integer `n`, zero when `k < 0` or `n < k` with `n >= 0`.
pub(crate) fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Backward difference `Δ^k f(n) = Σ (-1)^i C(k,i) f(n-i)`.
pub(crate) fn backward_difference(
    k: usize,
    n: usize,
    mut f: impl FnMut(usize) -> Result<i64, InvError>,
) -> Result<i64, InvError> {
    let mut acc = 0i64;
    for i in 0..=k {
        let v = if i <= n { f(n - i)? } else { 0 };
        let c = binom(k as i64, i as i64);
        acc += if i % 2 == 0 { c * v } else { -c * v };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(3, 0), 1);
        assert_eq!(binom(2, 3), 0);
        assert_eq!(binom(4, -1), 0);
    }

    #[test]
    fn differences_of_polynomials() {
        // Δ^2 of n^2 is 2
        let sq = |n: usize| Ok((n * n) as i64);
        assert_eq!(backward_difference(2, 5, sq).unwrap(), 2);
        assert_eq!(backward_difference(3, 5, sq).unwrap(), 0);
        // values below zero count as zero
        assert_eq!(backward_difference(1, 0, |_| Ok(1)).unwrap(), 1);
    }
}
