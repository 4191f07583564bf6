//! Outward-rounded decimal intervals.
//!
//! An [`Enclosure`] is a pair of decimal endpoints on a fixed grid of
//! `10^{-digits}`. Every operation computes exact rational endpoints and then
//! rounds the lower one down and the upper one up, so a value known to lie in
//! the operands always lies in the result.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::decimal::{pow10, Decimal};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: BigInt,
    hi: BigInt,
    digits: u32,
}

fn floor_scaled(q: &BigRational, digits: u32) -> BigInt {
    (q.numer() * pow10(digits)).div_floor(q.denom())
}

fn ceil_scaled(q: &BigRational, digits: u32) -> BigInt {
    -((-q.numer() * pow10(digits)).div_floor(q.denom()))
}

impl Enclosure {
    /// Smallest grid interval containing `[lo, hi]`. Panics if `lo > hi`.
    pub fn from_bounds(lo: &BigRational, hi: &BigRational, digits: u32) -> Self {
        assert!(lo <= hi, "enclosure bounds out of order");
        Self {
            lo: floor_scaled(lo, digits),
            hi: ceil_scaled(hi, digits),
            digits,
        }
    }

    pub fn from_rational(q: &BigRational, digits: u32) -> Self {
        Self::from_bounds(q, q, digits)
    }

    pub fn from_integer(n: BigInt, digits: u32) -> Self {
        let scaled = n * pow10(digits);
        Self {
            lo: scaled.clone(),
            hi: scaled,
            digits,
        }
    }

    /// Interval given directly as grid numerators.
    pub(crate) fn from_scaled(lo: BigInt, hi: BigInt, digits: u32) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi, digits }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn lo(&self) -> BigRational {
        BigRational::new(self.lo.clone(), pow10(self.digits))
    }

    pub fn hi(&self) -> BigRational {
        BigRational::new(self.hi.clone(), pow10(self.digits))
    }

    pub fn midpoint(&self) -> BigRational {
        BigRational::new(&self.lo + &self.hi, pow10(self.digits) * 2)
    }

    /// Half-width.
    pub fn radius(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, pow10(self.digits) * 2)
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo() <= q && q <= &self.hi()
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo() <= other.hi() && other.lo() <= self.hi()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            let top = (-&self.lo).max(self.hi.clone());
            Self::from_scaled(BigInt::zero(), top, self.digits)
        }
    }

    /// Rounded midpoint with `places` fractional digits.
    pub fn to_decimal(&self, places: u32) -> Decimal {
        Decimal::round_rational(&self.midpoint(), places)
    }

    pub fn to_f64(&self) -> f64 {
        let m = self.midpoint();
        m.to_f64().unwrap_or(f64::NAN)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let a = self.lo() * q;
        let b = self.hi() * q;
        match a.cmp(&b) {
            Ordering::Greater => Self::from_bounds(&b, &a, self.digits),
            _ => Self::from_bounds(&a, &b, self.digits),
        }
    }

    /// Multiply by an integer; exact on the grid, no rounding needed.
    pub fn scale_int(&self, n: &BigInt) -> Self {
        let (a, b) = (&self.lo * n, &self.hi * n);
        if a <= b {
            Self::from_scaled(a, b, self.digits)
        } else {
            Self::from_scaled(b, a, self.digits)
        }
    }

    /// 1/self. Panics if the interval contains zero.
    pub fn recip(&self) -> Self {
        assert!(
            !self.contains_zero(),
            "reciprocal of an interval containing 0"
        );
        let a = self.hi().recip();
        let b = self.lo().recip();
        Self::from_bounds(&a, &b, self.digits)
    }

    fn combine(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let digits = self.digits.max(other.digits);
        let (a0, a1, b0, b1) = (self.lo(), self.hi(), other.lo(), other.hi());
        let cands = [f(&a0, &b0), f(&a0, &b1), f(&a1, &b0), f(&a1, &b1)];
        let lo = cands.iter().min().expect("nonempty");
        let hi = cands.iter().max().expect("nonempty");
        Self::from_bounds(lo, hi, digits)
    }
}

impl Neg for &Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure::from_scaled(-&self.hi, -&self.lo, self.digits)
    }
}

impl Add for &Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: &Enclosure) -> Enclosure {
        if self.digits == rhs.digits {
            return Enclosure::from_scaled(&self.lo + &rhs.lo, &self.hi + &rhs.hi, self.digits);
        }
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub for &Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: &Enclosure) -> Enclosure {
        self + &(-rhs)
    }
}

impl Mul for &Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: &Enclosure) -> Enclosure {
        self.combine(rhs, |a, b| a * b)
    }
}

impl Div for &Enclosure {
    type Output = Enclosure;
    /// Panics if `rhs` contains zero.
    fn div(self, rhs: &Enclosure) -> Enclosure {
        assert!(!rhs.contains_zero(), "division by an interval containing 0");
        self.combine(rhs, |a, b| a / b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn outward_rounding() {
        let e = Enclosure::from_rational(&q(1, 3), 4);
        assert_eq!(e.lo(), q(3333, 10000));
        assert_eq!(e.hi(), q(3334, 10000));
        assert!(e.contains(&q(1, 3)));
        let n = Enclosure::from_rational(&q(-1, 3), 4);
        assert_eq!(n.lo(), q(-3334, 10000));
        assert_eq!(n.hi(), q(-3333, 10000));
    }

    #[test]
    fn arithmetic_contains_exact_results() {
        let a = Enclosure::from_rational(&q(1, 3), 10);
        let b = Enclosure::from_rational(&q(2, 7), 10);
        assert!((&a + &b).contains(&(q(1, 3) + q(2, 7))));
        assert!((&a - &b).contains(&(q(1, 3) - q(2, 7))));
        assert!((&a * &b).contains(&(q(2, 21))));
        assert!((&a / &b).contains(&(q(7, 6))));
        assert!(b.recip().contains(&q(7, 2)));
        assert!((-&a).contains(&q(-1, 3)));
        assert!(a.scale(&q(-3, 1)).contains(&q(-1, 1)));
        assert_eq!(a.scale_int(&BigInt::from(-3)), a.scale(&q(-3, 1)));
    }

    #[test]
    fn abs_straddling_zero() {
        let e = Enclosure::from_bounds(&q(-1, 2), &q(1, 4), 3);
        let a = e.abs();
        assert_eq!(a.lo(), q(0, 1));
        assert_eq!(a.hi(), q(1, 2));
        assert!(e.contains_zero());
    }

    #[test]
    #[should_panic]
    fn division_by_zero_interval_panics() {
        let z = Enclosure::from_bounds(&q(-1, 10), &q(1, 10), 3);
        let _ = &Enclosure::from_rational(&q(1, 1), 3) / &z;
    }
}
