//! Finite-range evidence for the error-term order: negativity of the
//! fractional-part sums at explicit witnesses, residuals of truncated Möbius
//! series against 1/ζ, and two-window non-decay ratios of normalized errors.
//!
//! None of this proves an Ω statement; it produces exact or rigorously
//! enclosed numbers that a finite scan can check.

pub mod frac;
pub mod residual;
pub mod scan;
pub mod witness;

pub use frac::{
    frac_sum, reciprocal_power_sum, truncated_frac_sum, FracMode, FracSumParams, FracSumValue,
    TruncatedSum,
};
pub use residual::{
    mertens_residual, mertens_residual_scan, proposition_residual, proposition_residual_scan,
    ResidualPoint, ResidualSummary,
};
pub use scan::{
    error_scan, error_scan_with, normalized_samples, omega_ratio_report, scan_points, OmegaRatio,
};
pub use witness::{
    lemma_check, witness_large, witness_small, Verdict, WitnessBranch, WitnessReport,
};
