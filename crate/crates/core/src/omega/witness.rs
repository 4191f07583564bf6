//! Explicit x at which `Σ_{d^r ≤ x} μ(d) d^{−rk} {x/d^r}` is negative.
//!
//! Two families:
//! * large branch (r ≥ 2, rk ≥ 4): every x ≥ 3^r with x ≡ 2^r − 1 (mod 2^r);
//! * small branch ((r, k) = (2, 1) or (3, 1)):
//!   `x = m² ∏_{3 ≤ p < 100} p^r` with m coprime to 2 and to those primes.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::frac::{truncated_frac_sum, FracSumParams};
use crate::error::{invalid, Result};

/// Odd primes below 100.
pub const SMALL_WITNESS_PRIMES: [u32; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Default head length for [`lemma_check`].
pub const DEFAULT_CUTOFF: u64 = 100;

/// First `count` integers `x ≥ 3^r` with `x ≡ 2^r − 1 (mod 2^r)`.
pub fn witness_large(r: u32, k: u32, count: usize) -> Result<Vec<u64>> {
    if r < 2 || r * k < 4 {
        return Err(invalid!(
            "large-x witnesses need r >= 2 and rk >= 4 (got r={r}, k={k}); for k = 1 and r in {{2, 3}} use the small-x witnesses"
        ));
    }
    let modulus = 1u64 << r;
    let start = 3u64.pow(r);
    let residue = modulus - 1;
    // smallest x ≥ start with x ≡ residue
    let first = start + (residue + modulus - start % modulus) % modulus;
    Ok((0..count as u64).map(|i| first + i * modulus).collect())
}

/// `m² ∏_{3 ≤ p < 100} p^r`.
pub fn witness_small(r: u32, m: &BigUint) -> Result<BigUint> {
    if !(r == 2 || r == 3) {
        return Err(invalid!(
            "small-x witnesses exist only for r in {{2, 3}} (k = 1), got r={r}; for rk >= 4 use the large-x witnesses"
        ));
    }
    let odd_primorial: BigUint = SMALL_WITNESS_PRIMES
        .iter()
        .map(|&p| BigUint::from(p))
        .product();
    if m.is_zero() || m.is_even() || !m.gcd(&odd_primorial).is_one() {
        return Err(invalid!(
            "m = {m} must be odd and coprime to every prime below 100"
        ));
    }
    Ok(m * m * odd_primorial.pow(r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The rigorous upper bound is below zero.
    Negative,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Negative => "negative",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Which witness construction (if any) a given (r, k) falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessBranch {
    Large,
    Small,
    None,
}

impl WitnessBranch {
    pub fn for_params(r: u32, k: u32) -> Self {
        if r >= 2 && r * k >= 4 {
            WitnessBranch::Large
        } else if k == 1 && (r == 2 || r == 3) {
            WitnessBranch::Small
        } else {
            WitnessBranch::None
        }
    }

    /// The bound the construction is claimed to achieve:
    /// `−2^{−(rk+1)} + 2^{−r(k+1)}` for the large branch, `−1/20` for the small one.
    pub fn reference_bound(self, r: u32, k: u32) -> Option<BigRational> {
        match self {
            WitnessBranch::Large => {
                let a = BigRational::new(BigInt::one(), BigInt::one() << (r * k + 1));
                let b = BigRational::new(BigInt::one(), BigInt::one() << (r * (k + 1)));
                Some(b - a)
            }
            WitnessBranch::Small => Some(BigRational::new((-1).into(), 20.into())),
            WitnessBranch::None => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub x: BigUint,
    pub r: u32,
    pub k: u32,
    pub cutoff: u64,
    /// Σ over d ≤ min(cutoff, ⌊x^{1/r}⌋), exact.
    pub finite_part: BigRational,
    /// Bound on |Σ over the remaining d|; zero when the head is the full sum.
    pub tail_bound: BigRational,
    pub upper_bound: BigRational,
    pub verdict: Verdict,
    pub branch: WitnessBranch,
    pub reference_bound: Option<BigRational>,
}

impl WitnessReport {
    /// Whether the head covered every d, so `finite_part` is the exact sum.
    pub fn is_exact(&self) -> bool {
        self.tail_bound.is_zero()
    }

    /// `upper_bound < reference_bound`, when a reference exists.
    pub fn meets_reference(&self) -> Option<bool> {
        self.reference_bound.as_ref().map(|b| self.upper_bound < *b)
    }
}

/// Evaluate `Σ_{d ≤ D} μ(d) d^{−rk} {x/d^r}` exactly and bound the rest.
pub fn lemma_check(x: &BigUint, r: u32, k: u32, cutoff: u64) -> Result<WitnessReport> {
    if r * k < 2 {
        return Err(invalid!(
            "the fractional-part sum needs rk >= 2, got r={r}, k={k}"
        ));
    }
    let params = FracSumParams::new(r, k, 1, x.clone())?;
    let t = truncated_frac_sum(&params, cutoff)?;
    let upper_bound = t.upper();
    let verdict = if upper_bound < BigRational::zero() {
        Verdict::Negative
    } else {
        Verdict::Inconclusive
    };
    let branch = WitnessBranch::for_params(r, k);
    Ok(WitnessReport {
        x: x.clone(),
        r,
        k,
        cutoff,
        finite_part: t.finite_part,
        tail_bound: t.tail_bound,
        upper_bound,
        verdict,
        branch,
        reference_bound: branch.reference_bound(r, k),
    })
}
