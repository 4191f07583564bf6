use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// ⌊x^{1/r}⌋ for arbitrary-precision `x`: the unique `t` with `t^r ≤ x < (t+1)^r`.
///
/// Panics if `r == 0`.
pub fn integer_root(x: &BigUint, r: u32) -> BigUint {
    assert!(r >= 1, "root index must be positive");
    if r == 1 || x.is_zero() || x.is_one() {
        return x.clone();
    }
    // Integer Newton iteration inside num-bigint; no floating point involved.
    x.nth_root(r)
}

/// ⌊x^{1/r}⌋ for machine integers, by exact integer search.
pub fn iroot(x: u64, r: u32) -> u64 {
    assert!(r >= 1, "root index must be positive");
    if r == 1 || x < 2 {
        return x;
    }
    if r >= 64 {
        return 1;
    }
    // bit-length bound: t < 2^{ceil(bits/r)}
    let bits = 64 - x.leading_zeros();
    let mut lo = 1u64;
    let mut hi = 1u64 << bits.div_ceil(r).min(63);
    // invariant: lo^r <= x < hi^r
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pow_le(mid, r, x) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn pow_le(base: u64, r: u32, x: u64) -> bool {
    base.checked_pow(r).is_some_and(|p| p <= x)
}

/// `iroot` through the big-integer path; used where `x` does not fit `u64`.
pub fn integer_root_u64(x: &BigUint, r: u32) -> Option<u64> {
    integer_root(x, r).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn documented_values() {
        assert_eq!(iroot(10, 2), 3);
        assert_eq!(iroot(26, 3), 2);
        assert_eq!(iroot(27, 3), 3);
        assert_eq!(iroot(1_000_000_000_000_000_000, 2), 1_000_000_000);
        assert_eq!(iroot(0, 5), 0);
        assert_eq!(iroot(u64::MAX, 2), 4_294_967_295);
        let big = BigUint::from(10u32).pow(18);
        assert_eq!(integer_root(&big, 2), BigUint::from(1_000_000_000u64));
    }

    proptest! {
        #[test]
        fn perfect_power_boundaries(t in 1u64..=1_000_000, r in 1u32..=5) {
            let x = BigUint::from(t).pow(r);
            prop_assert_eq!(integer_root(&x, r), BigUint::from(t));
            prop_assert_eq!(integer_root(&(&x - 1u32), r), BigUint::from(t - 1));
            if let Some(xs) = x.to_u64() {
                prop_assert_eq!(iroot(xs, r), t);
                prop_assert_eq!(iroot(xs - 1, r), t - 1);
            }
        }

        #[test]
        fn machine_and_big_paths_agree(x in any::<u64>(), r in 1u32..=7) {
            prop_assert_eq!(Some(iroot(x, r)), integer_root_u64(&BigUint::from(x), r));
        }
    }
}
