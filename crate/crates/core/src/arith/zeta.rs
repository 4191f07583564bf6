//! ζ(s) for integer s ≥ 2 with a rigorous error radius.
//!
//! Euler–Maclaurin summation: the head Σ_{n<N} n^{-s} plus the integral,
//! half-endpoint and M Bernoulli correction terms are summed exactly; the
//! remainder is bounded by
//! `4 (s)_{2M} / (2π)^{2M} · N^{1-s-2M} / (s+2M-1)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bernoulli::BernoulliSeq;
use super::decimal::pow10;
use super::interval::Enclosure;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaValue {
    s: u32,
    enclosure: Enclosure,
    n_terms: u64,
    corrections: u32,
}

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rising factorial s(s+1)...(s+n-1).
fn rising(s: u32, n: u32) -> BigInt {
    (0..n).fold(BigInt::one(), |acc, i| acc * BigInt::from(s + i))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn remainder_bound(s: u32, n_terms: u64, corrections: u32) -> BigRational {
    let two_m = 2 * corrections;
    // 2π > 6.28
    let two_pi_lo = BigRational::new(BigInt::from(157), BigInt::from(25));
    let exp = s + two_m - 1;
    let num = BigRational::from_integer(rising(s, two_m) * 4);
    num / two_pi_lo.pow(two_m as i32)
        / BigRational::from_integer(BigInt::from(n_terms).pow(exp))
        / rat(u64::from(exp))
}

/// Smallest `d` with 10^{-d} ≤ tol / 100.
fn digits_for(tol: &BigRational) -> u32 {
    let target = tol / rat(100);
    let mut d = 0u32;
    while BigRational::new(BigInt::one(), pow10(d)) > target {
        d += 1;
    }
    d
}

impl ZetaValue {
    /// Evaluate with an explicit head length `n_terms` (N ≥ 1) and `corrections`
    /// Bernoulli terms, rounding outward to `digits` places.
    pub fn with_depth(s: u32, n_terms: u64, corrections: u32, digits: u32) -> Result<Self> {
        if s < 2 {
            return Err(invalid!(
                "zeta is only evaluated at integers s >= 2, got {s}"
            ));
        }
        if n_terms == 0 {
            return Err(invalid!("truncation depth must be positive"));
        }
        let bern = BernoulliSeq::new(2 * corrections as usize + 1);
        let mut sum = BigRational::zero();
        for n in 1..n_terms {
            sum += BigRational::new(BigInt::one(), BigInt::from(n).pow(s));
        }
        let big_n = rat(n_terms);
        let n_pow_s = big_n.pow(s as i32);
        sum += &big_n / &n_pow_s / rat(u64::from(s - 1));
        sum += BigRational::one() / (&n_pow_s * rat(2));
        for j in 1..=corrections {
            let b = bern.get(2 * j as usize);
            let coeff = b / BigRational::from_integer(factorial(2 * j))
                * BigRational::from_integer(rising(s, 2 * j - 1));
            sum += coeff / big_n.pow((s + 2 * j - 1) as i32);
        }
        let bound = remainder_bound(s, n_terms, corrections);
        let enclosure = Enclosure::from_bounds(&(&sum - &bound), &(&sum + &bound), digits);
        Ok(Self {
            s,
            enclosure,
            n_terms,
            corrections,
        })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn enclosure(&self) -> &Enclosure {
        &self.enclosure
    }

    pub fn value(&self) -> BigRational {
        self.enclosure.midpoint()
    }

    pub fn error_radius(&self) -> BigRational {
        self.enclosure.radius()
    }

    /// Head length N used for the evaluation.
    pub fn depth(&self) -> u64 {
        self.n_terms
    }

    pub fn corrections(&self) -> u32 {
        self.corrections
    }

    /// 1/ζ(s) as an enclosure.
    pub fn reciprocal(&self) -> Enclosure {
        self.enclosure.recip()
    }
}

/// ζ(s) with `error_radius ≤ tolerance`.
pub fn zeta_value(s: u32, tolerance: &BigRational) -> Result<ZetaValue> {
    if s < 2 {
        return Err(invalid!(
            "zeta is only evaluated at integers s >= 2, got {s}"
        ));
    }
    if *tolerance <= BigRational::zero() {
        return Err(invalid!("tolerance must be positive"));
    }
    let digits = digits_for(tolerance);
    let target = tolerance / rat(4);
    let mut n_terms = 10u64;
    loop {
        let mut prev: Option<BigRational> = None;
        for m in 1..=4 * digits + 8 {
            let b = remainder_bound(s, n_terms, m);
            if b <= target {
                let z = ZetaValue::with_depth(s, n_terms, m, digits)?;
                debug_assert!(z.error_radius() <= *tolerance);
                return Ok(z);
            }
            if prev.as_ref().is_some_and(|p| &b >= p) {
                break;
            }
            prev = Some(b);
        }
        n_terms *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol(places: u32) -> BigRational {
        BigRational::new(BigInt::one(), pow10(places))
    }

    /// π by Machin's formula on a fixed-point grid, as an independent oracle.
    fn pi_enclosure(places: u32) -> (BigRational, BigRational) {
        let g = places + 10;
        let scale = pow10(g);
        let arctan_inv = |x: u64| -> BigInt {
            let x2 = BigInt::from(x * x);
            let mut pow = &scale / BigInt::from(x);
            let mut sum = BigInt::zero();
            let mut k = 0u64;
            while !pow.is_zero() {
                let term = &pow / BigInt::from(2 * k + 1);
                if k.is_multiple_of(2) {
                    sum += term;
                } else {
                    sum -= term;
                }
                pow /= &x2;
                k += 1;
            }
            sum
        };
        let approx = (arctan_inv(5) * 4 - arctan_inv(239)) * 4;
        let slack = BigInt::from(1000);
        (
            BigRational::new(&approx - &slack, scale.clone()),
            BigRational::new(approx + slack, scale),
        )
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let z = zeta_value(2, &tol(30)).unwrap();
        assert!(z.error_radius() <= tol(30));
        let (lo, hi) = pi_enclosure(60);
        let six = rat(6);
        let lo = &lo * &lo / &six;
        let hi = &hi * &hi / &six;
        assert!(z
            .enclosure()
            .intersects(&Enclosure::from_bounds(&lo, &hi, 60)));
        assert!((z.enclosure().to_f64() - 1.6449340668482264).abs() < 1e-15);
    }

    #[test]
    fn zeta_three_is_apery() {
        let z = zeta_value(3, &tol(10)).unwrap();
        // 1.2020569031595942853997381615114... truncated, so ζ(3) ∈ [apery, apery + 10^-31]
        let apery = BigRational::new(
            "12020569031595942853997381615114".parse().unwrap(),
            pow10(31),
        );
        let apery_box = Enclosure::from_bounds(&apery, &(&apery + tol(31)), 31);
        assert!(z.enclosure().intersects(&apery_box));
        assert!(z.error_radius() <= tol(10));
        let z = zeta_value(3, &tol(28)).unwrap();
        assert!(z.enclosure().intersects(&apery_box));
    }

    #[test]
    fn zeta_four_is_pi_fourth_over_ninety() {
        let z = zeta_value(4, &tol(40)).unwrap();
        let (lo, hi) = pi_enclosure(70);
        let ninety = rat(90);
        let lo = lo.pow(4) / &ninety;
        let hi = hi.pow(4) / &ninety;
        assert!(z
            .enclosure()
            .intersects(&Enclosure::from_bounds(&lo, &hi, 70)));
        assert!(z.error_radius() <= tol(40));
    }

    #[test]
    fn invalid_arguments() {
        assert!(zeta_value(1, &tol(5)).is_err());
        assert!(zeta_value(0, &tol(5)).is_err());
        assert!(zeta_value(2, &BigRational::zero()).is_err());
        assert!(ZetaValue::with_depth(2, 0, 1, 10).is_err());
    }

    #[test]
    fn radius_shrinks_with_depth() {
        let mut prev: Option<BigRational> = None;
        for n in [5u64, 8, 12, 20, 35, 60] {
            let z = ZetaValue::with_depth(3, n, 3, 80).unwrap();
            if let Some(p) = &prev {
                assert!(z.error_radius() <= *p, "depth {n}");
            }
            prev = Some(z.error_radius());
        }
    }

    #[test]
    fn enclosures_at_different_depths_intersect() {
        for s in 2..=8 {
            let a = ZetaValue::with_depth(s, 4, 2, 40).unwrap();
            let b = ZetaValue::with_depth(s, 30, 6, 40).unwrap();
            let c = zeta_value(s, &tol(25)).unwrap();
            assert!(a.enclosure().intersects(b.enclosure()), "s = {s}");
            assert!(b.enclosure().intersects(c.enclosure()), "s = {s}");
        }
    }
}
