use crate::error::{invalid, Result};

/// Möbius values and Mertens prefix sums for `1..=limit`, from a linear sieve.
///
/// Index 0 is a placeholder (`mu[0] = 0`, `mertens[0] = 0`) so lookups use
/// the natural argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusTable {
    limit: u64,
    mu: Vec<i8>,
    mertens: Vec<i64>,
}

impl MobiusTable {
    pub fn new(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(invalid!("sieve limit must be at least 1"));
        }
        let n = usize::try_from(limit).map_err(|_| invalid!("sieve limit {limit} too large"))?;
        let mut mu = vec![0i8; n + 1];
        let mut composite = vec![false; n + 1];
        let mut primes: Vec<usize> = Vec::new();
        mu[1] = 1;
        for i in 2..=n {
            if !composite[i] {
                primes.push(i);
                mu[i] = -1;
            }
            for &p in &primes {
                let Some(ip) = i.checked_mul(p).filter(|&ip| ip <= n) else {
                    break;
                };
                composite[ip] = true;
                if i % p == 0 {
                    // p^2 | ip
                    mu[ip] = 0;
                    break;
                }
                mu[ip] = -mu[i];
            }
        }
        let mut mertens = vec![0i64; n + 1];
        let mut acc = 0i64;
        for i in 1..=n {
            acc += i64::from(mu[i]);
            mertens[i] = acc;
        }
        Ok(Self { limit, mu, mertens })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// μ(n). Panics if `n > limit`.
    #[inline]
    pub fn mu(&self, n: u64) -> i8 {
        self.mu[n as usize]
    }

    /// M(n) = Σ_{d≤n} μ(d), with M(0) = 0. Panics if `n > limit`.
    #[inline]
    pub fn mertens(&self, n: u64) -> i64 {
        self.mertens[n as usize]
    }

    /// Errors unless the table covers `1..=needed`.
    pub fn ensure_covers(&self, needed: u64) -> Result<()> {
        if needed > self.limit {
            Err(invalid!(
                "Möbius table limit {} is smaller than required {}",
                self.limit,
                needed
            ))
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mu_by_trial_division(mut n: u64) -> i8 {
        let mut sign = 1i8;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    }

    #[test]
    fn limit_one() {
        let t = MobiusTable::new(1).unwrap();
        assert_eq!(t.mu(1), 1);
        assert_eq!(t.mertens(1), 1);
    }

    #[test]
    fn first_six() {
        let t = MobiusTable::new(6).unwrap();
        let mu: Vec<i8> = (1..=6).map(|n| t.mu(n)).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1]);
        assert_eq!(t.mertens(6), -1);
    }

    #[test]
    fn zero_limit_rejected() {
        assert!(matches!(
            MobiusTable::new(0),
            Err(crate::Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn small_range_matches_trial_division() {
        let t = MobiusTable::new(5000).unwrap();
        for n in 1..=5000 {
            assert_eq!(t.mu(n), mu_by_trial_division(n), "n = {n}");
            if n >= 2 {
                assert_eq!(t.mertens(n) - t.mertens(n - 1), i64::from(t.mu(n)));
            }
        }
        // known value M(1000) = 2
        assert_eq!(t.mertens(1000), 2);
    }

    #[test]
    fn divisor_sums_vanish() {
        let t = MobiusTable::new(3000).unwrap();
        for n in 2..=3000u64 {
            let s: i64 = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| i64::from(t.mu(d)))
                .sum();
            assert_eq!(s, 0, "n = {n}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn million_table_spot_checks(n in 1u64..=1_000_000) {
            use std::sync::OnceLock;
            static TABLE: OnceLock<MobiusTable> = OnceLock::new();
            let t = TABLE.get_or_init(|| MobiusTable::new(1_000_000).unwrap());
            prop_assert_eq!(t.mu(n), mu_by_trial_division(n));
            let mut s = 0i64;
            let mut d = 1;
            while d * d <= n {
                if n % d == 0 {
                    s += i64::from(t.mu(d));
                    if d * d != n {
                        s += i64::from(t.mu(n / d));
                    }
                }
                d += 1;
            }
            prop_assert_eq!(s, i64::from(n == 1));
        }
    }
}
