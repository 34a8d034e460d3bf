//! The ideal-arithmetic interface shared by the semigroup-ring and the
//! truncated power-series backends.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalcError {
    #[error("ideals belong to different semigroup rings")]
    MixedParents,
    #[error("ideals belong to different local rings")]
    MixedRings,
    #[error("operation undefined for the zero ideal")]
    ZeroIdeal,
    #[error("second ideal is not contained in the first")]
    NotContained,
    #[error("exponent {0} is not in the semigroup")]
    ExponentNotInSemigroup(u32),
    #[error("generator has a nonzero constant term")]
    UnitGenerator,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error(
        "precision exhausted: order {ord:?} exceeds certified bound at truncation {truncation}"
    )]
    PrecisionExhausted {
        ord: Option<usize>,
        truncation: usize,
    },
    #[error("precision budget exceeded after {doublings} doublings (truncation {truncation})")]
    BudgetExceeded { doublings: u32, truncation: usize },
}

impl CalcError {
    pub fn is_precision_exhausted(&self) -> bool {
        matches!(self, CalcError::PrecisionExhausted { .. })
    }
}

/// Exact arithmetic of m-primary ideals in a Cohen-Macaulay local ring.
///
/// Every length reported through this trait is a length in the local ring
/// itself, never an artifact of a finite representation.
pub trait IdealCalculus: Sync {
    type Ideal: Clone + fmt::Debug + Send + Sync;
    type Element: Clone + fmt::Debug + Send + Sync;

    /// Krull dimension `d` of the ring.
    fn dimension(&self) -> usize;

    fn unit_ideal(&self) -> Self::Ideal;

    fn maximal_ideal(&self) -> Self::Ideal;

    fn sum(&self, a: &Self::Ideal, b: &Self::Ideal) -> Result<Self::Ideal, CalcError>;

    fn product(&self, a: &Self::Ideal, b: &Self::Ideal) -> Result<Self::Ideal, CalcError>;

    fn power(&self, a: &Self::Ideal, n: usize) -> Result<Self::Ideal, CalcError> {
        let mut acc = self.unit_ideal();
        for _ in 0..n {
            acc = self.product(&acc, a)?;
        }
        Ok(acc)
    }

    /// `(a : b)`.
    fn colon(&self, a: &Self::Ideal, b: &Self::Ideal) -> Result<Self::Ideal, CalcError>;

    fn intersect(&self, a: &Self::Ideal, b: &Self::Ideal) -> Result<Self::Ideal, CalcError>;

    /// `a ⊆ b`.
    fn subset(&self, a: &Self::Ideal, b: &Self::Ideal) -> Result<bool, CalcError>;

    fn equals(&self, a: &Self::Ideal, b: &Self::Ideal) -> Result<bool, CalcError>;

    /// `ℓ(a/b)`, requires `b ⊆ a`.
    fn length_quotient(&self, a: &Self::Ideal, b: &Self::Ideal) -> Result<usize, CalcError>;

    /// `ℓ(R/a)`.
    fn colength(&self, a: &Self::Ideal) -> Result<usize, CalcError>;

    /// Minimal number of generators.
    fn mu(&self, a: &Self::Ideal) -> Result<usize, CalcError>;

    fn minimal_generators(&self, a: &Self::Ideal) -> Result<Vec<Self::Element>, CalcError>;

    fn contains(&self, a: &Self::Ideal, e: &Self::Element) -> Result<bool, CalcError>;

    /// Some element of `a` outside `b`, if there is one.
    fn witness(&self, a: &Self::Ideal, b: &Self::Ideal)
        -> Result<Option<Self::Element>, CalcError>;

    /// `Σ e_k K_k`. The sum must be m-primary even when single terms are not.
    fn scaled_sum(&self, terms: &[(Self::Element, &Self::Ideal)])
        -> Result<Self::Ideal, CalcError>;

    fn render(&self, e: &Self::Element) -> String;
}
