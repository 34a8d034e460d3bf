//! The power-series rings `k[[x_1..x_d]]`, computed exactly for m-primary
//! ideals through finite truncations.

pub mod field;
pub mod linalg;
pub mod monomial;
pub mod poly;
mod ring;

pub use field::{Field, PrimeField, Rationals};
pub use poly::Poly;
pub use ring::{
    ensure_precision, run_with_precision, ArtIdeal, TruncatedLocalRing, DEFAULT_BUDGET,
    DEFAULT_GUARD,
};
