//! The closed polynomial identity expressing `V_k^r(x)` through partial sums
//! of Jordan totients:
//!
//! ```text
//! V_k^r(x) = ((2X + 1)^{k+1} − (2X − 1)^{k+1}) / (2(k + 1))
//! ```
//!
//! read umbrally: after expansion each monomial `X^j` (j ≥ 1) is replaced by
//! `j · Σ_{n ≤ x} J_{j−1}^r(n)` and `X^0` by 0.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{binomial, iroot, MobiusTable};
use crate::error::{invalid, violation, Result};
use crate::jordan::{jordan, partial_sum_bernoulli, TotientParams};
use crate::lattice::{count_fast, count_oracle, CountParams};

/// Coefficients `c_0 ..= c_{k+1}` of the closed form as a polynomial in X.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UmbralPolynomial {
    k: u32,
    coefficients: Vec<BigRational>,
}

impl UmbralPolynomial {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    /// Substitute `X^j ↦ values[j]`. `values` must have length `k + 2`.
    pub fn substitute(&self, values: &[BigInt]) -> BigRational {
        self.coefficients
            .iter()
            .zip(values)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c * BigRational::from_integer(v.clone()))
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

/// Binomial expansion of `((2X+1)^{k+1} − (2X−1)^{k+1}) / (2(k+1))`.
pub fn umbral_coefficients(k: u32) -> Result<UmbralPolynomial> {
    if k == 0 {
        return Err(invalid!("k must be at least 1"));
    }
    let n = u64::from(k) + 1;
    let denom = BigInt::from(2 * n);
    let coefficients = (0..=n)
        .map(|j| {
            // X^j coefficient: C(n, j) 2^j (1 − (−1)^{n−j})
            let plus = BigInt::from(binomial(n, j)) << j;
            let minus = if (n - j) % 2 == 0 {
                plus.clone()
            } else {
                -plus.clone()
            };
            BigRational::new(plus - minus, denom.clone())
        })
        .collect();
    Ok(UmbralPolynomial { k, coefficients })
}

/// What `X^0` is replaced by; the identity needs 0; 1 is kept as a negative control.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantTerm {
    Zero,
    One,
}

fn umbral_values(
    x: u64,
    r: u32,
    k: u32,
    constant: ConstantTerm,
    table: &MobiusTable,
) -> Result<Vec<BigInt>> {
    let mut values = Vec::with_capacity(k as usize + 2);
    values.push(match constant {
        ConstantTerm::Zero => BigInt::zero(),
        ConstantTerm::One => BigInt::one(),
    });
    for j in 1..=k + 1 {
        let sum = partial_sum_bernoulli(x, TotientParams::new(r, j)?, table)?;
        values.push(sum * j);
    }
    Ok(values)
}

/// `V_k^r(x)` through the umbral substitution.
pub fn umbral_eval(x: u64, r: u32, k: u32) -> Result<BigInt> {
    let table = MobiusTable::new(iroot(x, r).max(1))?;
    umbral_eval_with(x, r, k, ConstantTerm::Zero, &table)
}

pub fn umbral_eval_with(
    x: u64,
    r: u32,
    k: u32,
    constant: ConstantTerm,
    table: &MobiusTable,
) -> Result<BigInt> {
    let poly = umbral_coefficients(k)?;
    let values = umbral_values(x, r, k, constant, table)?;
    let v = poly.substitute(&values);
    if !v.is_integer() {
        return Err(violation!(
            "umbral evaluation at r={r} k={k} x={x} is not integral: {v}"
        ));
    }
    Ok(v.to_integer())
}

/// The intermediate combinatorial form, split by the number `i` of zero coordinates:
/// `Σ_{i<k} C(k,i) 2^{k−i} Σ_{n≤x} Σ_{j<k−i} (−1)^{k−i−1−j} C(k−i, j) J_j^r(n)`.
///
/// Only used to localize a mismatch between the identity and the count.
pub fn combinatorial_eval(x: u64, r: u32, k: u32) -> Result<BigInt> {
    if k == 0 {
        return Err(invalid!("k must be at least 1"));
    }
    // Σ_{n≤x} J_j^r(n) for j < k
    let mut sums = vec![BigInt::zero(); k as usize];
    for n in 1..=x {
        for (j, s) in sums.iter_mut().enumerate() {
            *s += jordan(n, TotientParams::new(r, j as u32)?)?;
        }
    }
    let k64 = u64::from(k);
    let mut total = BigInt::zero();
    for i in 0..k64 {
        let m = k64 - i;
        let mut inner = BigInt::zero();
        for j in 0..m {
            let term = BigInt::from(binomial(m, j)) * &sums[j as usize];
            if (m - 1 - j) % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        total += (BigInt::from(binomial(k64, i)) << m) * inner;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityVerdict {
    Equal,
    Mismatch {
        umbral: BigInt,
        fast: BigInt,
        oracle: Option<BigInt>,
        combinatorial: Option<BigInt>,
    },
}

impl IdentityVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, IdentityVerdict::Equal)
    }
}

/// Compare the umbral evaluation with `count_fast`, and with `count_oracle`
/// when the box fits in `oracle_budget`.
pub fn identity_check(r: u32, k: u32, x: u64, oracle_budget: u64) -> Result<IdentityVerdict> {
    let params = CountParams::new(r, k, x)?;
    let table = MobiusTable::new(params.sieve_bound().max(1))?;
    identity_check_with(params, &table, oracle_budget)
}

pub fn identity_check_with(
    params: CountParams,
    table: &MobiusTable,
    oracle_budget: u64,
) -> Result<IdentityVerdict> {
    let (r, k, x) = (params.r(), params.k(), params.x());
    let umbral = umbral_eval_with(x, r, k, ConstantTerm::Zero, table)?;
    let fast = count_fast(params, table)?;
    let oracle = count_oracle(params, oracle_budget).ok();
    let agrees = umbral == fast && oracle.as_ref().is_none_or(|o| *o == fast);
    if agrees {
        return Ok(IdentityVerdict::Equal);
    }
    let combinatorial = combinatorial_eval(x, r, k).ok();
    Ok(IdentityVerdict::Mismatch {
        umbral,
        fast,
        oracle,
        combinatorial,
    })
}
