//! Rigorous enclosures of the few irrational quantities the normalizations
//! need: natural logarithms, real r-th roots, and Euler's constant.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::decimal::pow10;
use super::interval::Enclosure;
use super::roots::integer_root;

/// Euler's constant γ to 50 decimal places.
pub const EULER_GAMMA: &str = "0.57721566490153286060651209008240243104215933593992";

/// γ as an enclosure of radius 10^{-50}.
pub fn euler_gamma() -> Enclosure {
    let mid: BigInt = EULER_GAMMA[2..].parse().expect("constant digits");
    Enclosure::from_scaled(&mid - 1, mid + 1, 50)
}

const GUARD_DIGITS: u32 = 10;

/// atanh(p/q) on the fixed-point grid 10^{-scale_digits}, as `(lo, hi)`
/// numerators. Requires `0 <= p/q <= 1/3`.
fn atanh_scaled(p: &BigInt, q: &BigInt, scale_digits: u32) -> (BigInt, BigInt) {
    debug_assert!(p * 3 <= *q);
    let scale = pow10(scale_digits);
    if p.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let p2 = p * p;
    let q2 = q * q;
    let mut pk = p.clone();
    let mut qk = q.clone();
    let mut lo = BigInt::zero();
    let mut terms = 0u64;
    let mut k = 0u64;
    loop {
        let odd = BigInt::from(2 * k + 1);
        let term = (&scale * &pk).div_floor(&(&qk * &odd));
        if term.is_zero() {
            break;
        }
        lo += term;
        terms += 1;
        k += 1;
        pk *= &p2;
        qk *= &q2;
    }
    // tail Σ_{i≥k} z^{2i+1}/(2i+1) ≤ z^{2k+1} / ((2k+1)(1 - z^2))
    let odd = BigInt::from(2 * k + 1);
    let tail_num = &scale * &pk * &q2;
    let tail_den = &qk * &odd * (&q2 - &p2);
    let tail = -((-tail_num).div_floor(&tail_den));
    let hi = &lo + BigInt::from(terms) + tail;
    (lo, hi)
}

/// ln(x) for `x >= 1`.
pub fn ln_enclosure(x: &BigUint, digits: u32) -> Enclosure {
    assert!(!x.is_zero(), "logarithm of zero");
    let g = digits + GUARD_DIGITS;
    let e = x.bits() - 1;
    let pow2 = BigInt::one() << e;
    let xi = BigInt::from(x.clone());
    let (ln2_lo, ln2_hi) = atanh_scaled(&BigInt::one(), &BigInt::from(3), g);
    let (z_lo, z_hi) = atanh_scaled(&(&xi - &pow2), &(&xi + &pow2), g);
    let eb = BigInt::from(e);
    let lo = (&eb * ln2_lo + z_lo) * 2;
    let hi = (&eb * ln2_hi + z_hi) * 2;
    let s = pow10(g);
    Enclosure::from_bounds(
        &BigRational::new(lo, s.clone()),
        &BigRational::new(hi, s),
        digits,
    )
}

/// x^{1/r} for a nonnegative integer `x`.
pub fn root_enclosure(x: &BigUint, r: u32, digits: u32) -> Enclosure {
    let shifted = x * BigUint::from(10u32).pow(r * digits);
    let t = integer_root(&shifted, r);
    let exact = t.pow(r) == shifted;
    let t = BigInt::from(t);
    let hi = if exact { t.clone() } else { &t + 1 };
    Enclosure::from_scaled(t, hi, digits)
}
