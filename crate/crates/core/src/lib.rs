//! Exact counting of relatively r-prime k-tuples.
//!
//! A k-tuple of integers is *relatively r-prime* when no prime `p` has `p^r`
//! dividing every coordinate. This crate counts such tuples in the box
//! `[-x, x]^k`, computes the generalized Jordan totient `J_k^r(n)` and its
//! partial sums, checks the closed polynomial identity linking the two, and
//! scans the error term against `(2x)^k / ζ(rk)`.
//!
//! Every count is an exact big integer. Quantities involving ζ, logarithms or
//! real roots are carried as outward-rounded [`Enclosure`]s.

pub mod arith;
mod error;
pub mod exec;
pub mod identities;
pub mod jordan;
pub mod lattice;
pub mod omega;
pub mod rows;

pub use rows::{read_csv, write_csv, ScanRow};

pub use arith::{
    binomial, faulhaber_sum, integer_root, iroot, parse_tolerance, zeta_value, BernoulliSeq,
    Decimal, Enclosure, MobiusTable, ZetaValue,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use jordan::TotientParams;
pub use lattice::{CountParams, CountRecord};
