//! Fiber-cone invariants of m-primary ideals in Cohen-Macaulay local rings.
//!
//! Two exact backends implement [`IdealCalculus`]: monomial ideals of a
//! numerical semigroup ring ([`sgpideal`]) and m-primary ideals of a power
//! series ring ([`artinian`]). The [`invariants`] layer is written against
//! the trait only.

pub mod artinian;
pub mod calculus;
pub mod exec;
pub mod invariants;
pub mod numsgp;
pub mod sgpideal;

pub use calculus::{CalcError, IdealCalculus};
pub use exec::Exec;
pub use numsgp::{NumericalSemigroup, SemigroupError};
pub use sgpideal::{SemigroupIdeal, SemigroupRing};
