//! Generalized Jordan totient `J_k^r(n)` and its partial sums.
//!
//! `J_k^r(n)` counts the k-tuples in `[1, n]^k` that are relatively r-prime
//! jointly with `n`: no `d > 1` has `d^r` dividing `n` and every coordinate.
//! For `k = 0` it is the indicator of `n` being r-free.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{binomial, iroot, BernoulliSeq, FaulhaberPoly, MobiusTable};
use crate::error::{invalid, resource, violation, Result};
use crate::exec::{self, Execution};

/// Default cap on the number of tuples [`jordan_oracle`] may enumerate.
pub const DEFAULT_TOTIENT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TotientParams {
    r: u32,
    k: u32,
}

impl TotientParams {
    pub fn new(r: u32, k: u32) -> Result<Self> {
        if r == 0 {
            return Err(invalid!("power r must be at least 1"));
        }
        Ok(Self { r, k })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

/// Prime factorization by trial division, ascending primes.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Primes q with q^r | n.
fn r_power_primes(n: u64, r: u32) -> Vec<u64> {
    factorize(n)
        .into_iter()
        .filter(|&(_, e)| e >= r)
        .map(|(p, _)| p)
        .collect()
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        Err(invalid!("n must be at least 1"))
    } else {
        Ok(())
    }
}

/// Σ_{d^r | n} μ(d) (n / d^r)^k.
pub fn jordan_divisor_sum(n: u64, p: TotientParams) -> Result<BigInt> {
    check_n(n)?;
    let primes = r_power_primes(n, p.r);
    let mut total = BigInt::zero();
    // only squarefree d built from `primes` have μ(d) ≠ 0 and d^r | n
    for mask in 0u32..(1 << primes.len()) {
        let mut dr = 1u64;
        for (i, q) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                dr *= q.pow(p.r);
            }
        }
        let term = BigInt::from(n / dr).pow(p.k);
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// n^k ∏_{q^r | n} (1 − q^{−rk}), evaluated as an exact rational.
pub fn jordan_euler_product(n: u64, p: TotientParams) -> Result<BigInt> {
    check_n(n)?;
    let mut value = BigRational::from_integer(BigInt::from(n).pow(p.k));
    for q in r_power_primes(n, p.r) {
        let qrk = BigInt::from(q).pow(p.r * p.k);
        value *= BigRational::new(&qrk - 1, qrk);
    }
    if !value.is_integer() {
        return Err(violation!(
            "Euler product for J_{}^{}({n}) is not integral",
            p.k,
            p.r
        ));
    }
    Ok(value.to_integer())
}

/// `J_k^r(n)`, computed by both the divisor-sum and the Euler-product forms.
pub fn jordan(n: u64, p: TotientParams) -> Result<BigInt> {
    let by_divisors = jordan_divisor_sum(n, p)?;
    let by_product = jordan_euler_product(n, p)?;
    if by_divisors != by_product {
        return Err(violation!(
            "J_{}^{}({n}): divisor sum {by_divisors} != Euler product {by_product}",
            p.k,
            p.r
        ));
    }
    Ok(by_divisors)
}

/// `J_k^r(n)` by enumerating all of `[1, n]^k`.
pub fn jordan_oracle(n: u64, p: TotientParams, budget: u64) -> Result<BigInt> {
    check_n(n)?;
    if n.checked_pow(p.k).is_none_or(|t| t > budget) {
        return Err(resource!(
            "{n}^{} tuples exceed the enumeration budget {budget}",
            p.k
        ));
    }
    let prime_powers: Vec<u64> = r_power_primes(n, p.r).iter().map(|q| q.pow(p.r)).collect();
    let full: u64 = (1u64 << prime_powers.len()) - 1;
    // masks[v] = set of q^r (q^r | n) dividing v
    let masks: Vec<u64> = (0..=n)
        .map(|v| {
            prime_powers
                .iter()
                .enumerate()
                .filter(|(_, &qr)| v != 0 && v % qr == 0)
                .fold(0u64, |m, (i, _)| m | (1 << i))
        })
        .collect();

    fn walk(depth: u32, k: u32, mask: u64, masks: &[u64], count: &mut u64) {
        if depth == k {
            if mask == 0 {
                *count += 1;
            }
            return;
        }
        for m in &masks[1..] {
            walk(depth + 1, k, mask & m, masks, count);
        }
    }

    let mut count = 0u64;
    walk(0, p.k, full, &masks, &mut count);
    Ok(BigInt::from(count))
}

fn summand_params(p: TotientParams) -> Result<TotientParams> {
    if p.k == 0 {
        return Err(invalid!("partial sums need k >= 1 (they sum J_(k-1))"));
    }
    TotientParams::new(p.r, p.k - 1)
}

/// Σ_{n ≤ x} J_{k−1}^r(n) by a direct loop over `jordan`.
pub fn partial_sum_direct(x: u64, p: TotientParams) -> Result<BigInt> {
    let inner = summand_params(p)?;
    let mut total = BigInt::zero();
    for n in 1..=x {
        total += jordan(n, inner)?;
    }
    Ok(total)
}

/// Running values `Σ_{n ≤ x} J_{k−1}^r(n)` for `x = 0..=x_max`.
pub fn partial_sums_direct(x_max: u64, p: TotientParams) -> Result<Vec<BigInt>> {
    let inner = summand_params(p)?;
    let mut out = Vec::with_capacity(x_max as usize + 1);
    let mut total = BigInt::zero();
    out.push(total.clone());
    for n in 1..=x_max {
        total += jordan(n, inner)?;
        out.push(total.clone());
    }
    Ok(out)
}

/// S_t = Σ_{d ≤ ⌊x^{1/r}⌋} μ(d) ⌊x / d^r⌋^t.
pub(crate) fn mobius_power_sum(
    x: u64,
    r: u32,
    t: u32,
    table: &MobiusTable,
    exec: Execution,
) -> BigInt {
    let bound = iroot(x, r);
    // i128 is exact when bound · x^t stays below 2^126
    let small = u128::from(x)
        .checked_pow(t)
        .and_then(|v| v.checked_mul(u128::from(bound)))
        .is_some_and(|v| v < 1u128 << 126);
    if small {
        let s = exec::sum_range(exec, 1..=bound, 0i128, |d| {
            let mu = table.mu(d);
            if mu == 0 {
                return 0;
            }
            let q = i128::from(x / d.pow(r));
            i128::from(mu) * q.pow(t)
        });
        BigInt::from(s)
    } else {
        exec::sum_range(exec, 1..=bound, BigInt::zero(), |d| {
            let mu = table.mu(d);
            if mu == 0 {
                return BigInt::zero();
            }
            let q = BigInt::from(x / d.pow(r)).pow(t);
            if mu > 0 {
                q
            } else {
                -q
            }
        })
    }
}

/// Σ_{n ≤ x} J_{k−1}^r(n) through the Bernoulli expansion
/// `(1/k) Σ_{j<k} C(k, j) B_j Σ_{d^r ≤ x} μ(d) ⌊x/d^r⌋^{k−j}` (B_1 = +1/2).
pub fn partial_sum_bernoulli(x: u64, p: TotientParams, table: &MobiusTable) -> Result<BigInt> {
    partial_sum_bernoulli_with(x, p, table, Execution::default())
}

pub fn partial_sum_bernoulli_with(
    x: u64,
    p: TotientParams,
    table: &MobiusTable,
    exec: Execution,
) -> Result<BigInt> {
    summand_params(p)?;
    if x == 0 {
        return Ok(BigInt::zero());
    }
    table.ensure_covers(iroot(x, p.r))?;
    let k = p.k;
    let bern = BernoulliSeq::new(k as usize);
    let mut acc = BigRational::zero();
    for j in 0..k {
        let b = bern.get(j as usize);
        if b.is_zero() {
            continue;
        }
        let inner = mobius_power_sum(x, p.r, k - j, table, exec);
        let c = BigInt::from(binomial(u64::from(k), u64::from(j)));
        acc += b * BigRational::from_integer(c * inner);
    }
    acc /= BigRational::from_integer(BigInt::from(k));
    if !acc.is_integer() {
        return Err(violation!(
            "Bernoulli expansion of the J_{}^{} partial sum at x = {x} is not integral",
            k - 1,
            p.r
        ));
    }
    Ok(acc.to_integer())
}

/// Same sum as [`partial_sum_bernoulli`], grouped per d as
/// `Σ_d μ(d) · Σ_{m ≤ ⌊x/d^r⌋} m^{k−1}`.
pub fn partial_sum_faulhaber(x: u64, p: TotientParams, table: &MobiusTable) -> Result<BigInt> {
    summand_params(p)?;
    let bound = iroot(x, p.r);
    table.ensure_covers(bound)?;
    let poly = FaulhaberPoly::new(p.k - 1);
    let mut total = BigInt::zero();
    for d in 1..=bound {
        let mu = table.mu(d);
        if mu == 0 {
            continue;
        }
        let s = poly.eval(&BigInt::from(x / d.pow(p.r)))?;
        total += s * i32::from(mu);
    }
    Ok(total)
}

/// r-free indicator; equals `J_0^r(n)`.
pub fn is_r_free(n: u64, r: u32) -> bool {
    factorize(n).iter().all(|&(_, e)| e < r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::One;
    use proptest::prelude::*;

    fn tp(r: u32, k: u32) -> TotientParams {
        TotientParams::new(r, k).unwrap()
    }

    #[test]
    fn documented_values() {
        assert_eq!(jordan(6, tp(1, 1)).unwrap(), BigInt::from(2));
        assert_eq!(jordan(4, tp(2, 2)).unwrap(), BigInt::from(15));
        assert_eq!(jordan(12, tp(2, 0)).unwrap(), BigInt::zero());
        assert_eq!(jordan(10, tp(2, 0)).unwrap(), BigInt::one());
        assert_eq!(
            jordan_oracle(6, tp(1, 1), DEFAULT_TOTIENT_BUDGET).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            jordan_oracle(4, tp(2, 2), DEFAULT_TOTIENT_BUDGET).unwrap(),
            BigInt::from(15)
        );
        for r in 1..4 {
            for k in 1..4 {
                assert_eq!(jordan(1, tp(r, k)).unwrap(), BigInt::one());
                assert_eq!(jordan_oracle(1, tp(r, k), 10).unwrap(), BigInt::one());
            }
        }
    }

    #[test]
    fn euler_phi_special_case() {
        // J_1^1 = φ
        let phi = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (i, &v) in phi.iter().enumerate() {
            assert_eq!(jordan(i as u64 + 1, tp(1, 1)).unwrap(), BigInt::from(v));
        }
    }

    #[test]
    fn errors() {
        assert!(TotientParams::new(0, 1).is_err());
        assert!(jordan(0, tp(1, 1)).is_err());
        assert!(matches!(
            jordan_oracle(100, tp(1, 4), 1000),
            Err(crate::Error::ResourceLimit(_))
        ));
        assert!(partial_sum_direct(5, tp(1, 0)).is_err());
        let table = MobiusTable::new(2).unwrap();
        assert!(matches!(
            partial_sum_bernoulli(100, tp(1, 2), &table),
            Err(crate::Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn forms_agree_on_grid() {
        for r in 1..=4 {
            for k in 0..=4 {
                for n in 1..=10_000u64 {
                    let p = tp(r, k);
                    assert_eq!(
                        jordan_divisor_sum(n, p).unwrap(),
                        jordan_euler_product(n, p).unwrap(),
                        "n={n} r={r} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn oracle_agrees_on_budgeted_range() {
        for r in 1..=3 {
            for n in 1..=200 {
                for k in 0..=2 {
                    let p = tp(r, k);
                    assert_eq!(
                        jordan(n, p).unwrap(),
                        jordan_oracle(n, p, DEFAULT_TOTIENT_BUDGET).unwrap()
                    );
                }
            }
            for n in 1..=40 {
                let p = tp(r, 3);
                assert_eq!(
                    jordan(n, p).unwrap(),
                    jordan_oracle(n, p, DEFAULT_TOTIENT_BUDGET).unwrap()
                );
            }
        }
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(partial_sum_direct(10, tp(2, 1)).unwrap(), BigInt::from(7));
        assert_eq!(partial_sum_direct(5, tp(1, 2)).unwrap(), BigInt::from(10));
        assert_eq!(partial_sum_direct(0, tp(3, 3)).unwrap(), BigInt::zero());
        let table = MobiusTable::new(100).unwrap();
        assert_eq!(
            partial_sum_bernoulli(10, tp(2, 1), &table).unwrap(),
            BigInt::from(7)
        );
        assert_eq!(
            partial_sum_bernoulli(100, tp(1, 3), &table).unwrap(),
            partial_sum_direct(100, tp(1, 3)).unwrap()
        );
        for r in 1..=3 {
            for k in 1..=5 {
                assert_eq!(
                    partial_sum_bernoulli(1, tp(r, k), &table).unwrap(),
                    BigInt::one()
                );
                assert_eq!(
                    partial_sum_bernoulli(0, tp(r, k), &table).unwrap(),
                    BigInt::zero()
                );
            }
        }
    }

    #[test]
    fn expansion_routes_agree() {
        let table = MobiusTable::new(600).unwrap();
        for r in 1..=3 {
            for k in 1..=5 {
                let p = tp(r, k);
                let direct = partial_sums_direct(600, p).unwrap();
                for x in (0..=600u64).step_by(7) {
                    let b = partial_sum_bernoulli(x, p, &table).unwrap();
                    assert_eq!(b, direct[x as usize], "x={x} r={r} k={k}");
                    assert_eq!(partial_sum_faulhaber(x, p, &table).unwrap(), b);
                }
            }
        }
    }

    #[test]
    fn big_integer_path_matches_i128_path() {
        // x^t · bound overflows the i128 guard for large t
        let x = 1_000_000u64;
        let table = MobiusTable::new(1000).unwrap();
        for t in [1u32, 3, 6, 7] {
            let fast = mobius_power_sum(x, 2, t, &table, Execution::Sequential);
            let mut slow = BigInt::zero();
            for d in 1..=1000u64 {
                slow += BigInt::from(x / (d * d)).pow(t) * i32::from(table.mu(d));
            }
            assert_eq!(fast, slow, "t = {t}");
        }
    }

    proptest! {
        #[test]
        fn multiplicative(m in 1u64..3000, n in 1u64..3000, r in 1u32..4, k in 0u32..4) {
            prop_assume!(m.gcd(&n) == 1);
            let p = tp(r, k);
            prop_assert_eq!(jordan(m * n, p).unwrap(), jordan(m, p).unwrap() * jordan(n, p).unwrap());
        }
    }
}
