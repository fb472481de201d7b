//! Arbitrary-precision rationals.
//!
//! `Rat` is `num_rational::BigRational`, which is kept in lowest terms with a
//! positive denominator by construction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // very large numerators/denominators: fall back to a scaled quotient
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Parses `"3/16"`, `"-0.1875"`, `"1.5e-3"` or `"7"` into an exact rational.
///
/// Decimal input never passes through a binary float.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let err = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg}: {s:?}"),
    };
    if s.is_empty() {
        return Err(err("empty number"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rat(n)?;
        let d = parse_rat(d)?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| err("bad exponent"))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err("invalid digit"));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rat::from_integer(digits.parse::<BigInt>().unwrap_or_else(|_| BigInt::zero()));
    let scale = exponent - frac_part.len() as i32;
    let ten = Rat::from_integer(BigInt::from(10));
    let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Least common multiple of the denominators in `values`.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Renders `num/den`, or just `num` for integers.
pub fn rat_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rat("0.1875").unwrap(), rat(3, 16));
        assert_eq!(parse_rat("-2.5").unwrap(), rat(-5, 2));
        assert_eq!(parse_rat("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_rat("3/16").unwrap(), rat(3, 16));
        assert_eq!(parse_rat(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("12").unwrap(), rat_int(12));
        assert!(parse_rat("abc").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn zero_is_canonical() {
        let z = rat(0, 7);
        assert_eq!(z.numer(), &BigInt::zero());
        assert_eq!(z.denom(), &BigInt::one());
        assert_eq!(rat(2, -4), rat(-1, 2));
    }
}
