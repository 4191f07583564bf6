//! Residuals of truncated Möbius series against 1/ζ:
//!
//! * `Σ_{d ≤ x} μ(d)/d^s − 1/ζ(s)`, expected to be O(x^{1−s});
//! * `(Σ_{d^r ≤ x} μ(d) x^k/d^{rk} − x^k/ζ(rk)) / x^{1/r}`, expected bounded.
//!
//! Partial sums are accumulated on the decimal grid of the ζ enclosure with
//! each term rounded outward, so the scans stay rigorous without carrying
//! huge rational denominators.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::decimal::pow10;
use crate::arith::{root_enclosure, Enclosure, MobiusTable, ZetaValue};
use crate::error::{invalid, Result};

/// Running enclosure of Σ μ(d)/d^e on a fixed grid.
struct MobiusSeries {
    lo: BigInt,
    hi: BigInt,
    scale: BigInt,
    digits: u32,
    exponent: u32,
}

impl MobiusSeries {
    fn new(exponent: u32, digits: u32) -> Self {
        Self {
            lo: BigInt::zero(),
            hi: BigInt::zero(),
            scale: pow10(digits),
            digits,
            exponent,
        }
    }

    fn push(&mut self, d: u64, mu: i8) {
        if mu == 0 {
            return;
        }
        let den = BigInt::from(d).pow(self.exponent);
        let (floor, rem) = self.scale.div_rem(&den);
        let ceil = if rem.is_zero() {
            floor.clone()
        } else {
            &floor + 1
        };
        if mu > 0 {
            self.lo += floor;
            self.hi += ceil;
        } else {
            self.lo -= ceil;
            self.hi -= floor;
        }
    }

    fn enclosure(&self) -> Enclosure {
        Enclosure::from_scaled(self.lo.clone(), self.hi.clone(), self.digits)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualPoint {
    pub x: u64,
    pub residual: Enclosure,
    /// Residual times the expected decay rate's reciprocal.
    pub scaled: Enclosure,
}

/// Largest rigorous upper bound of |scaled| over a scan, and where it occurs.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualSummary {
    pub max_abs_scaled: BigRational,
    pub argmax: u64,
}

impl ResidualSummary {
    pub fn from_points(points: &[ResidualPoint]) -> Option<Self> {
        points
            .iter()
            .map(|p| (p.scaled.abs().hi(), p.x))
            .max_by(|a, b| a.0.cmp(&b.0))
            .map(|(max_abs_scaled, argmax)| Self {
                max_abs_scaled,
                argmax,
            })
    }

    pub fn max_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.max_abs_scaled).unwrap_or(f64::NAN)
    }
}

fn check_zeta(s: u32, z: &ZetaValue) -> Result<()> {
    if s < 2 {
        return Err(invalid!("s must be at least 2, got {s}"));
    }
    if z.s() != s {
        return Err(invalid!("zeta value is for s = {}, expected {s}", z.s()));
    }
    Ok(())
}

/// `Σ_{d ≤ x} μ(d)/d^s − 1/ζ(s)`.
pub fn mertens_residual(x: u64, s: u32, z: &ZetaValue) -> Result<Enclosure> {
    let table = MobiusTable::new(x.max(1))?;
    let points = mertens_residual_scan(x, s, z, &table)?;
    Ok(points
        .last()
        .map(|p| p.residual.clone())
        .unwrap_or_else(|| -&z.reciprocal()))
}

/// Residuals at every `1 ≤ x ≤ x_max`, with `scaled = residual · x^{s−1}`.
pub fn mertens_residual_scan(
    x_max: u64,
    s: u32,
    z: &ZetaValue,
    table: &MobiusTable,
) -> Result<Vec<ResidualPoint>> {
    check_zeta(s, z)?;
    table.ensure_covers(x_max)?;
    let digits = z.enclosure().digits();
    let inv = z.reciprocal();
    let mut series = MobiusSeries::new(s, digits);
    let mut out = Vec::with_capacity(x_max as usize);
    for x in 1..=x_max {
        series.push(x, table.mu(x));
        let residual = &series.enclosure() - &inv;
        let scaled = residual.scale_int(&BigInt::from(x).pow(s - 1));
        out.push(ResidualPoint {
            x,
            residual,
            scaled,
        });
    }
    Ok(out)
}

/// `(Σ_{d^r ≤ x} μ(d) x^k/d^{rk} − x^k/ζ(rk)) / x^{1/r}`.
pub fn proposition_residual(x: u64, k: u32, r: u32, z: &ZetaValue) -> Result<Enclosure> {
    if x == 0 {
        return Err(invalid!("x must be at least 1"));
    }
    let bound = crate::arith::iroot(x, r);
    let table = MobiusTable::new(bound.max(1))?;
    let points = proposition_residual_scan(x, k, r, z, &table)?;
    Ok(points.last().expect("x >= 1").scaled.clone())
}

/// Proposition residuals at every `1 ≤ x ≤ x_max`; `residual` is the
/// unnormalized difference and `scaled` the value divided by x^{1/r}.
pub fn proposition_residual_scan(
    x_max: u64,
    k: u32,
    r: u32,
    z: &ZetaValue,
    table: &MobiusTable,
) -> Result<Vec<ResidualPoint>> {
    if r == 0 || r * k < 2 {
        return Err(invalid!("need r >= 1 and rk >= 2, got r={r}, k={k}"));
    }
    check_zeta(r * k, z)?;
    table.ensure_covers(crate::arith::iroot(x_max, r))?;
    let digits = z.enclosure().digits();
    let inv = z.reciprocal();
    let mut series = MobiusSeries::new(r * k, digits);
    let mut next_d = 1u64;
    let mut out = Vec::with_capacity(x_max as usize);
    for x in 1..=x_max {
        while next_d.checked_pow(r).is_some_and(|p| p <= x) {
            series.push(next_d, table.mu(next_d));
            next_d += 1;
        }
        let diff = &series.enclosure() - &inv;
        let residual = diff.scale_int(&BigInt::from(x).pow(k));
        let root = root_enclosure(&BigUint::from(x), r, digits);
        let scaled = &residual / &root;
        out.push(ResidualPoint {
            x,
            residual,
            scaled,
        });
    }
    Ok(out)
}

/// Rigorous a-priori bound on the scaled Mertens residual: |Σ_{d>x} μ(d)/d^s| · x^{s−1} ≤ 1/(s−1).
pub fn mertens_scaled_bound(s: u32) -> BigRational {
    BigRational::new(1.into(), BigInt::from(s - 1))
}

#[cfg(test)]
fn abs_hi(e: &Enclosure) -> BigRational {
    use num_traits::Signed;
    let lo = e.lo().abs();
    let hi = e.hi().abs();
    lo.max(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_tolerance, zeta_value};

    fn zeta(s: u32) -> ZetaValue {
        zeta_value(s, &parse_tolerance("1e-30").unwrap()).unwrap()
    }

    #[test]
    fn single_term() {
        let r = mertens_residual(1, 2, &zeta(2)).unwrap();
        // 1 − 6/π²
        assert!((r.to_f64() - 0.39207289814597337).abs() < 1e-15);
        assert!(r.radius() < BigRational::new(1.into(), pow10(28)));
    }

    #[test]
    fn series_grid_matches_exact_rationals() {
        let z = zeta(3);
        let table = MobiusTable::new(60).unwrap();
        let pts = mertens_residual_scan(60, 3, &z, &table).unwrap();
        let mut exact = BigRational::zero();
        for (d, p) in (1..=60u64).zip(&pts) {
            exact += BigRational::new(table.mu(d).into(), BigInt::from(d).pow(3));
            let shifted = &p.residual + &z.reciprocal();
            assert!(shifted.contains(&exact), "d = {d}");
        }
    }

    #[test]
    fn scaled_mertens_respects_a_priori_bound() {
        let table = MobiusTable::new(20_000).unwrap();
        for s in 2..=4 {
            let pts = mertens_residual_scan(20_000, s, &zeta(s), &table).unwrap();
            let summary = ResidualSummary::from_points(&pts).unwrap();
            assert!(
                summary.max_abs_scaled
                    <= mertens_scaled_bound(s) + BigRational::new(1.into(), 1000.into())
            );
            // consecutive enclosures stay consistent with a single limit
            assert!(pts[9_999].residual.abs().hi() >= BigRational::zero());
        }
    }

    #[test]
    fn proposition_residual_at_ten() {
        // k=1, r=2, x=10: 10·(1 − 1/4 − 1/9) = 230/36
        let z = zeta(2);
        let got = proposition_residual(10, 1, 2, &z).unwrap();
        let expect = (230.0 / 36.0 - 10.0 * 6.0 / std::f64::consts::PI.powi(2)) / 10f64.sqrt();
        assert!((got.to_f64() - expect).abs() < 1e-12);
    }

    #[test]
    fn perfect_power_jump_is_one_summand() {
        let z = zeta(4);
        let table = MobiusTable::new(100).unwrap();
        let pts = proposition_residual_scan(10_000, 2, 2, &z, &table).unwrap();
        for t in 2..100u64 {
            let x = t * t;
            let before = &pts[(x - 2) as usize];
            let at = &pts[(x - 1) as usize];
            // unnormalized jump: (x−1)^k·(S−1/ζ) vs x^k·(S + μ(t)/t^4 − 1/ζ)
            let jump = &at.residual
                - &before.residual.scale(&BigRational::new(
                    BigInt::from(x).pow(2),
                    BigInt::from(x - 1).pow(2),
                ));
            let term = BigRational::new(
                BigInt::from(table.mu(t)) * BigInt::from(x).pow(2),
                BigInt::from(t).pow(4),
            );
            assert!(
                jump.contains(&term)
                    || abs_hi(&(&jump - &Enclosure::from_rational(&term, 30)))
                        < BigRational::new(1.into(), pow10(20))
            );
        }
    }

    #[test]
    fn rejects_mismatched_zeta() {
        let table = MobiusTable::new(10).unwrap();
        assert!(mertens_residual_scan(10, 3, &zeta(2), &table).is_err());
        assert!(proposition_residual_scan(10, 1, 1, &zeta(2), &table).is_err());
        assert!(proposition_residual(0, 2, 1, &zeta(2)).is_err());
    }
}
