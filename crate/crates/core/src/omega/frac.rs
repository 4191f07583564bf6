//! Möbius-weighted sums of fractional parts,
//! `Σ_{d^r ≤ x} μ(d) d^{−rj} {x / d^r}^i`.
//!
//! Fractional parts are always `(x mod d^r) / d^r` with an exact big-integer
//! modulus; `x` may have hundreds of digits.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{integer_root, MobiusTable};
use crate::error::{invalid, resource, Result};

/// Largest ⌊x^{1/r}⌋ accepted by [`FracMode::Exact`].
pub const EXACT_MODE_LIMIT: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FracSumParams {
    pub r: u32,
    /// weight exponent block: terms carry d^{−rj}
    pub j: u32,
    /// power of the fractional part
    pub i: u32,
    pub x: BigUint,
}

impl FracSumParams {
    pub fn new(r: u32, j: u32, i: u32, x: impl Into<BigUint>) -> Result<Self> {
        if r == 0 {
            return Err(invalid!("power r must be at least 1"));
        }
        Ok(Self {
            r,
            j,
            i,
            x: x.into(),
        })
    }

    /// ⌊x^{1/r}⌋, the number of d in the full sum.
    pub fn full_bound(&self) -> BigUint {
        integer_root(&self.x, self.r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FracMode {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FracSumValue {
    Exact(BigRational),
    /// `value` is within `error` of the exact sum.
    Float {
        value: f64,
        error: f64,
    },
}

impl FracSumValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            FracSumValue::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            FracSumValue::Float { value, .. } => *value,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            FracSumValue::Exact(q) => Some(q),
            FracSumValue::Float { .. } => None,
        }
    }
}

/// Product of the primes up to `bound`: the lcm of all squarefree d ≤ bound.
fn primorial(bound: u64) -> BigUint {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut acc = BigUint::from(1u32);
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        acc *= p as u64;
        for m in (p * p..=n).step_by(p) {
            composite[m] = true;
        }
    }
    acc
}

/// Exact Σ_{d ≤ bound} μ(d) (x mod d^r)^i / d^{r(i+j)} over a common denominator.
fn exact_partial(p: &FracSumParams, bound: u64, table: &MobiusTable) -> BigRational {
    if bound == 0 {
        return BigRational::zero();
    }
    let e = p.r * (p.i + p.j);
    let common = primorial(bound).pow(e);
    let mut numer = BigInt::zero();
    for d in 1..=bound {
        let mu = table.mu(d);
        if mu == 0 {
            continue;
        }
        let dr = BigUint::from(d).pow(p.r);
        let rem = &p.x % &dr;
        let weight = &common / BigUint::from(d).pow(e);
        let term = BigInt::from(rem.pow(p.i) * weight);
        if mu > 0 {
            numer += term;
        } else {
            numer -= term;
        }
    }
    BigRational::new(numer, BigInt::from(common))
}

fn float_partial(p: &FracSumParams, bound: u64, table: &MobiusTable) -> (f64, f64) {
    let eps = f64::EPSILON;
    let mut acc = 0.0f64;
    let mut err = 0.0f64;
    let ops = f64::from(p.i + p.r * p.j + 3);
    for d in 1..=bound {
        let mu = table.mu(d);
        if mu == 0 {
            continue;
        }
        let dr = BigUint::from(d).pow(p.r);
        let rem = (&p.x % &dr).to_f64().unwrap_or(f64::NAN);
        let dr = dr.to_f64().unwrap_or(f64::INFINITY);
        let frac = rem / dr;
        let term = f64::from(mu) * frac.powi(p.i as i32) / (d as f64).powi((p.r * p.j) as i32);
        acc += term;
        // one rounding per multiply/divide in the term, one for the addition
        err += term.abs() * ops * eps + acc.abs() * eps;
    }
    (acc, err)
}

/// The full sum over all d ≤ ⌊x^{1/r}⌋.
pub fn frac_sum(p: &FracSumParams, table: &MobiusTable, mode: FracMode) -> Result<FracSumValue> {
    let bound = p
        .full_bound()
        .to_u64()
        .ok_or_else(|| resource!("x^(1/r) does not fit in 64 bits; use truncated_frac_sum"))?;
    table.ensure_covers(bound)?;
    match mode {
        FracMode::Exact => {
            if bound > EXACT_MODE_LIMIT {
                return Err(resource!(
                    "exact fractional-part sum over {bound} terms exceeds the limit {EXACT_MODE_LIMIT}; use float mode or truncated_frac_sum"
                ));
            }
            Ok(FracSumValue::Exact(exact_partial(p, bound, table)))
        }
        FracMode::Float => {
            let (value, error) = float_partial(p, bound, table);
            Ok(FracSumValue::Float { value, error })
        }
    }
}

/// Exact head over d ≤ cutoff plus a rigorous bound on the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSum {
    pub finite_part: BigRational,
    /// |Σ_{d > cutoff}| ≤ tail_bound; zero when the head already covers every d.
    pub tail_bound: BigRational,
    /// Number of d actually summed in the head.
    pub terms: u64,
}

impl TruncatedSum {
    pub fn upper(&self) -> BigRational {
        &self.finite_part + &self.tail_bound
    }

    pub fn lower(&self) -> BigRational {
        &self.finite_part - &self.tail_bound
    }
}

/// Head `d ≤ cutoff` exactly; tail bounded by Σ_{d>D} d^{−rj} ≤ D^{1−rj}/(rj−1).
pub fn truncated_frac_sum(p: &FracSumParams, cutoff: u64) -> Result<TruncatedSum> {
    let rj = p.r * p.j;
    if rj < 2 {
        return Err(invalid!("tail bound needs r*j >= 2, got {rj}"));
    }
    if cutoff < 2 {
        return Err(invalid!("cutoff must be at least 2"));
    }
    let full = p.full_bound();
    let terms = full.to_u64().map_or(cutoff, |b| b.min(cutoff));
    let table = MobiusTable::new(cutoff)?;
    let finite_part = exact_partial(p, terms, &table);
    let tail_bound = if full <= BigUint::from(cutoff) {
        BigRational::zero()
    } else {
        BigRational::new(
            1.into(),
            BigInt::from(cutoff).pow(rj - 1) * BigInt::from(rj - 1),
        )
    };
    Ok(TruncatedSum {
        finite_part,
        tail_bound,
        terms,
    })
}

/// Σ_{d ≤ ⌊x^{1/r}⌋} d^{−rj}: the trivial bound on |frac_sum| for any i.
pub fn reciprocal_power_sum(x: &BigUint, r: u32, j: u32) -> Result<BigRational> {
    let bound = integer_root(x, r)
        .to_u64()
        .ok_or_else(|| resource!("x^(1/r) does not fit in 64 bits"))?;
    let mut acc = BigRational::zero();
    for d in 1..=bound {
        acc += BigRational::new(1.into(), BigInt::from(d).pow(r * j));
    }
    Ok(acc)
}
