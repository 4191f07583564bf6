//! Exact and rigorously enclosed arithmetic shared by every other module.

pub mod bernoulli;
pub mod decimal;
pub mod elementary;
pub mod interval;
pub mod mobius;
pub mod roots;
pub mod zeta;

pub use bernoulli::{binomial, faulhaber_sum, BernoulliSeq, FaulhaberPoly};
pub use decimal::{parse_tolerance, Decimal};
pub use elementary::{euler_gamma, ln_enclosure, root_enclosure, EULER_GAMMA};
pub use interval::Enclosure;
pub use mobius::MobiusTable;
pub use roots::{integer_root, iroot};
pub use zeta::{zeta_value, ZetaValue};
