//! Bernoulli numbers (B_1 = +1/2 convention) and Faulhaber power sums.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{violation, Result};

/// C(n, k) as a big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `B_0 .. B_{len-1}` as exact rationals, with B_1 = +1/2.
///
/// Every routine that needs Bernoulli numbers takes them from here so the
/// sign convention cannot drift between call sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliSeq {
    values: Vec<BigRational>,
}

impl BernoulliSeq {
    /// The first `count` Bernoulli numbers. `count == 0` yields an empty sequence.
    pub fn new(count: usize) -> Self {
        // B^-_m = -1/(m+1) Σ_{j<m} C(m+1, j) B^-_j
        let mut values: Vec<BigRational> = Vec::with_capacity(count);
        for m in 0..count {
            if m == 0 {
                values.push(BigRational::one());
                continue;
            }
            if m >= 3 && m % 2 == 1 {
                values.push(BigRational::zero());
                continue;
            }
            let mut acc = BigRational::zero();
            for (j, b) in values.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let c = BigInt::from(binomial(m as u64 + 1, j as u64));
                acc += b * BigRational::from_integer(c);
            }
            values.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        if count > 1 {
            values[1] = -values[1].clone();
        }
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, j: usize) -> &BigRational {
        &self.values[j]
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.values
    }
}

/// Σ_{m=1}^{M} m^e as a polynomial in M with integer coefficients over a
/// common denominator: `S_e(M) = (Σ_i coeffs[i] M^i) / denom`.
#[derive(Debug, Clone)]
pub struct FaulhaberPoly {
    exponent: u32,
    coeffs: Vec<BigInt>,
    denom: BigInt,
}

impl FaulhaberPoly {
    /// Built from S_e(M) = 1/(e+1) Σ_{j=0}^{e} C(e+1, j) B_j M^{e+1-j}.
    pub fn new(exponent: u32) -> Self {
        let e = exponent as usize;
        let bern = BernoulliSeq::new(e + 1);
        let scale = BigRational::from_integer(BigInt::from(e + 1));
        // rational coefficient of M^{e+1-j}
        let mut rational = vec![BigRational::zero(); e + 2];
        for j in 0..=e {
            let c = BigRational::from_integer(BigInt::from(binomial(e as u64 + 1, j as u64)));
            rational[e + 1 - j] = c * bern.get(j) / &scale;
        }
        let denom = rational
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let coeffs = rational
            .iter()
            .map(|q| q.numer() * (&denom / q.denom()))
            .collect();
        Self {
            exponent,
            coeffs,
            denom,
        }
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Evaluate at `m`; errors if the numerator is not divisible by the
    /// denominator, which can only happen with a wrong Bernoulli convention.
    pub fn eval(&self, m: &BigInt) -> Result<BigInt> {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * m + c;
        }
        let (q, rem) = acc.div_rem(&self.denom);
        if !rem.is_zero() {
            return Err(violation!(
                "Faulhaber sum for exponent {} at M = {} is not integral",
                self.exponent,
                m
            ));
        }
        Ok(q)
    }
}

/// Σ_{m=1}^{M} m^e, exactly, through the Bernoulli closed form.
pub fn faulhaber_sum(m: u64, e: u32) -> Result<BigInt> {
    FaulhaberPoly::new(e).eval(&BigInt::from(m))
}
