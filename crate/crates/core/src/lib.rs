//! Exact symbolic computation for covering quantum sl2 and the odd nilHecke algebra.
//!
//! The crate is organised by algebraic object:
//!
//! - [`scalars`]: the ground ring `Z[q, q^-1, pi]/(pi^2-1)`, (q, pi)-integers and truncated q-series.
//! - [`skewpoly`]: skew polynomials, the symmetric group action and odd divided differences.
//! - [`onh`]: the odd nilHecke algebra, its normal form and graded dimensions.
//! - [`cyclotomic`]: cyclotomic quotients by brute force and the weight modules `V^Lambda`.
//! - [`udot`]: the idempotented covering algebra in its canonical basis, involutions and forms.
//! - [`bubbles`]: the bubble algebra, fake bubbles and 2-hom graded dimension enumeration.
//! - [`parse`]: text parsers for scalars, polynomials, words and canonical elements.
//! - [`verify`]: the invariant suite run by `oddsl2 verify all`.
//! - [`cli`]: the command-line front end (also used by the `oddsl2` binary).

pub mod bubbles;
pub mod cli;
pub mod cyclotomic;
mod error;
mod linalg;
pub mod onh;
pub mod parse;
pub mod perm;
pub mod scalars;
pub mod skewpoly;
pub mod udot;
pub mod verify;

pub use error::{Error, Result};
pub use scalars::{CoveringScalar, TruncatedSeries};

/// Default series cutoff, overridable with `ODDSL2_CUTOFF_DEFAULT`.
pub fn default_cutoff() -> i64 {
    std::env::var("ODDSL2_CUTOFF_DEFAULT")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(20)
}
