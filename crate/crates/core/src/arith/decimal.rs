use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error};

/// A decimal with a fixed number of fractional digits: `mantissa · 10^{-places}`.
///
/// `Display` and `FromStr` round-trip exactly; no scientific notation is
/// ever produced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Decimal {
    mantissa: BigInt,
    places: u32,
}

pub(crate) fn pow10(n: u32) -> BigInt {
    BigInt::from(10u32).pow(n)
}

impl Decimal {
    pub fn new(mantissa: BigInt, places: u32) -> Self {
        Self { mantissa, places }
    }

    /// Nearest decimal with `places` fractional digits (ties away from zero).
    pub fn round_rational(q: &BigRational, places: u32) -> Self {
        let scaled = q * BigRational::from_integer(pow10(places));
        let twice: BigInt = scaled.numer() * 2;
        let den = scaled.denom() * 2;
        // round(n/d) = floor((2n + d) / 2d) for positives, mirrored for negatives
        let mantissa = if twice.is_negative() {
            -((-twice + scaled.denom()).div_floor(&den))
        } else {
            (twice + scaled.denom()).div_floor(&den)
        };
        Self { mantissa, places }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn places(&self) -> u32 {
        self.places
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mantissa.clone(), pow10(self.places))
    }

    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mantissa.magnitude().to_string();
        let sign = if self.mantissa.sign() == Sign::Minus {
            "-"
        } else {
            ""
        };
        let places = self.places as usize;
        if places == 0 {
            return write!(f, "{sign}{digits}");
        }
        let padded = if digits.len() <= places {
            format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int, frac) = padded.split_at(padded.len() - places);
        write!(f, "{sign}{int}.{frac}")
    }
}

impl FromStr for Decimal {
    type Err = Error;

    /// Accepts plain decimals (`-12.50`) and exponent forms (`1e-30`, `2.5E3`);
    /// exponent forms are normalized to the minimal number of places.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (body, exp) = match s.find(['e', 'E']) {
            Some(i) => {
                let e: i64 = s[i + 1..]
                    .parse()
                    .map_err(|_| invalid!("bad exponent in decimal {s:?}"))?;
                (&s[..i], e)
            }
            None => (s, 0),
        };
        let (neg, body) = match body.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, body.strip_prefix('+').unwrap_or(body)),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty()
            || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
        {
            return Err(invalid!("not a decimal number: {s:?}"));
        }
        let mut mantissa: BigInt = format!("{int}{frac}")
            .parse()
            .map_err(|_| invalid!("not a decimal number: {s:?}"))?;
        if neg {
            mantissa = -mantissa;
        }
        let mut places = frac.len() as i64 - exp;
        if places < 0 {
            mantissa *= pow10((-places) as u32);
            places = 0;
        }
        let places = u32::try_from(places).map_err(|_| invalid!("exponent out of range: {s:?}"))?;
        Ok(Self { mantissa, places })
    }
}

impl From<Decimal> for String {
    fn from(d: Decimal) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for Decimal {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

/// Parse a positive tolerance such as `1e-30` into an exact rational.
pub fn parse_tolerance(s: &str) -> Result<BigRational, Error> {
    let q = s.parse::<Decimal>()?.to_rational();
    if q <= BigRational::zero() {
        return Err(invalid!("tolerance must be positive, got {s}"));
    }
    Ok(q)
}
