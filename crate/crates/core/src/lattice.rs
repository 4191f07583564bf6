//! `V_k^r(x)`: relatively r-prime k-tuples in the box `[-x, x]^k`.
//!
//! Zero coordinates are allowed. A tuple is excluded exactly when some prime
//! power `q^r` divides every coordinate, so the all-zero tuple is always
//! excluded and any tuple containing ±1 is always counted.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{ln_enclosure, root_enclosure, zeta_value, Enclosure, MobiusTable, ZetaValue};
use crate::error::{invalid, resource, Result};
use crate::exec::{self, Execution};
use crate::jordan::is_r_free;

/// Default cap on the number of tuples [`count_oracle`] may enumerate.
pub const DEFAULT_COUNT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CountParams {
    r: u32,
    k: u32,
    x: u64,
}

impl CountParams {
    pub fn new(r: u32, k: u32, x: u64) -> Result<Self> {
        if r == 0 {
            return Err(invalid!("power r must be at least 1"));
        }
        if k == 0 {
            return Err(invalid!("dimension k must be at least 1"));
        }
        Ok(Self { r, k, x })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    /// Number of terms in the Möbius sum: ⌊x^{1/r}⌋.
    pub fn sieve_bound(&self) -> u64 {
        crate::arith::iroot(self.x, self.r)
    }
}

/// Ground truth: enumerate `{-x, ..., x}^k` and test each tuple directly.
pub fn count_oracle(p: CountParams, budget: u64) -> Result<BigInt> {
    let side = 2 * p.x + 1;
    if side.checked_pow(p.k).is_none_or(|t| t > budget) {
        return Err(resource!(
            "{side}^{} tuples exceed the enumeration budget {budget}",
            p.k
        ));
    }
    // r-free-ness of every possible gcd, by trial division
    let r_free: Vec<bool> = (0..=p.x).map(|g| g != 0 && is_r_free(g, p.r)).collect();

    fn walk(depth: u32, k: u32, g: u64, x: u64, r_free: &[bool], count: &mut u64) {
        if depth == k {
            if r_free[g as usize] {
                *count += 1;
            }
            return;
        }
        // |v| for v in -x..=x: 0 once, every other magnitude twice
        walk(depth + 1, k, g, x, r_free, count);
        for v in 1..=x {
            let h = g.gcd(&v);
            walk(depth + 1, k, h, x, r_free, count);
            walk(depth + 1, k, h, x, r_free, count);
        }
    }

    let mut count = 0u64;
    walk(0, p.k, 0, p.x, &r_free, &mut count);
    Ok(BigInt::from(count))
}

/// Möbius-inversion count:
/// `Σ_{d ≤ ⌊x^{1/r}⌋} μ(d) (2⌊x/d^r⌋ + 1)^k − M(⌊x^{1/r}⌋)`.
///
/// Each d-term counts tuples whose coordinates are all multiples of `d^r`,
/// including the zero tuple; the Mertens correction removes those zero-tuple
/// contributions, which sum to `M(D)` rather than to the `[D = 0]` that exact
/// inclusion–exclusion needs.
pub fn count_fast(p: CountParams, table: &MobiusTable) -> Result<BigInt> {
    count_fast_with(p, table, Execution::default())
}

pub fn count_fast_with(p: CountParams, table: &MobiusTable, exec: Execution) -> Result<BigInt> {
    let bound = p.sieve_bound();
    if bound == 0 {
        return Ok(BigInt::zero());
    }
    table.ensure_covers(bound)?;
    let (r, k, x) = (p.r, p.k, p.x);
    let side_pow = u128::from(2 * x + 1).checked_pow(k);
    let small = side_pow
        .and_then(|v| v.checked_mul(u128::from(bound)))
        .is_some_and(|v| v < 1u128 << 126);
    let sum = if small {
        BigInt::from(exec::sum_range(exec, 1..=bound, 0i128, |d| {
            let mu = table.mu(d);
            if mu == 0 {
                return 0;
            }
            let side = i128::from(2 * (x / d.pow(r)) + 1);
            i128::from(mu) * side.pow(k)
        }))
    } else {
        exec::sum_range(exec, 1..=bound, BigInt::zero(), |d| {
            let mu = table.mu(d);
            if mu == 0 {
                return BigInt::zero();
            }
            let v = BigInt::from(2 * (x / d.pow(r)) + 1).pow(k);
            if mu > 0 {
                v
            } else {
                -v
            }
        })
    };
    Ok(sum - table.mertens(bound))
}

/// How |E| is normalized, following the three growth regimes of the error term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// x·log x, for (r, k) = (1, 2).
    XLogX,
    /// x^{1/r}, for r ≥ 2 and k = 1.
    Root(u32),
    /// x^{k−1} otherwise.
    Power(u32),
}

impl Normalization {
    pub fn for_params(r: u32, k: u32) -> Self {
        match (r, k) {
            (1, 2) => Normalization::XLogX,
            (r, 1) if r >= 2 => Normalization::Root(r),
            (_, k) => Normalization::Power(k - 1),
        }
    }

    /// The normalizer at `x`, or `None` where it vanishes (x = 0, or x = 1 for x·log x).
    pub fn enclosure(self, x: u64, digits: u32) -> Option<Enclosure> {
        let xb = BigUint::from(x);
        match self {
            Normalization::XLogX if x >= 2 => {
                let ln = ln_enclosure(&xb, digits);
                Some(ln.scale(&BigRational::from_integer(BigInt::from(x))))
            }
            Normalization::Root(r) if x >= 1 => Some(root_enclosure(&xb, r, digits)),
            Normalization::Power(e) if x >= 1 || e == 0 => {
                Some(Enclosure::from_integer(BigInt::from(x).pow(e), digits))
            }
            _ => None,
        }
    }
}

/// One row of a scan: exact count, main term and error as enclosures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRecord {
    pub params: CountParams,
    pub v: BigInt,
    /// (2x)^k / ζ(rk).
    pub main_term: Enclosure,
    /// V − main term.
    pub error: Enclosure,
    /// |error| over the regime's normalizer; absent where the normalizer is 0.
    pub normalized_error: Option<Enclosure>,
}

impl CountRecord {
    /// V / (2x+1)^k.
    pub fn density(&self) -> BigRational {
        let side = BigInt::from(2 * self.params.x + 1).pow(self.params.k);
        BigRational::new(self.v.clone(), side)
    }
}

/// Shared state for computing many records with the same (r, k): the sieve
/// and ζ(rk) are built once and only read afterwards.
#[derive(Debug, Clone)]
pub struct Counter {
    r: u32,
    k: u32,
    table: MobiusTable,
    zeta: ZetaValue,
    normalization: Normalization,
}

impl Counter {
    /// Prepare for every `x ≤ x_max`, with ζ(rk) enclosed to `tolerance`.
    pub fn new(r: u32, k: u32, x_max: u64, tolerance: &BigRational) -> Result<Self> {
        let probe = CountParams::new(r, k, x_max)?;
        let table = MobiusTable::new(probe.sieve_bound().max(1))?;
        let zeta = zeta_value(r * k, tolerance)?;
        Ok(Self {
            r,
            k,
            table,
            zeta,
            normalization: Normalization::for_params(r, k),
        })
    }

    pub fn zeta(&self) -> &ZetaValue {
        &self.zeta
    }

    pub fn table(&self) -> &MobiusTable {
        &self.table
    }

    pub fn params(&self, x: u64) -> Result<CountParams> {
        CountParams::new(self.r, self.k, x)
    }

    pub fn record(&self, x: u64) -> Result<CountRecord> {
        self.record_with(x, Execution::Sequential)
    }

    pub fn record_with(&self, x: u64, exec: Execution) -> Result<CountRecord> {
        let params = self.params(x)?;
        let v = count_fast_with(params, &self.table, exec)?;
        Ok(self.assemble(params, v))
    }

    fn assemble(&self, params: CountParams, v: BigInt) -> CountRecord {
        let digits = self.zeta.enclosure().digits();
        let scale = BigRational::from_integer(BigInt::from(2 * params.x).pow(params.k));
        let z = self.zeta.enclosure();
        let main_term = Enclosure::from_bounds(&(&scale / z.hi()), &(&scale / z.lo()), digits);
        let error = &Enclosure::from_integer(v.clone(), digits) - &main_term;
        let normalized_error = self
            .normalization
            .enclosure(params.x, digits)
            .map(|n| &error.abs() / &n);
        CountRecord {
            params,
            v,
            main_term,
            error,
            normalized_error,
        }
    }
}

/// One-off record; for many x with the same (r, k) build a [`Counter`].
pub fn count_record(p: CountParams, tolerance: &BigRational) -> Result<CountRecord> {
    Counter::new(p.r, p.k, p.x, tolerance)?.record(p.x)
}
