// SPDX-License-Identifier: Apache-2.0

//! Exact rational parameters parsed from decimal strings.

use crate::error::{Error, Result};

pub type Rational = num_rational::Ratio<i64>;

/// Parses `"0.5"`, `"1/2"`, `"3"` or `"-0.125"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a decimal or fraction: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: i64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 17 {
        return Err(bad());
    }
    let scale = 10i64.pow(frac.len() as u32);
    let int_v: i64 = if int.is_empty() {
        0
    } else {
        int.parse().map_err(|_| bad())?
    };
    let frac_v: i64 = if frac.is_empty() {
        0
    } else {
        frac.parse().map_err(|_| bad())?
    };
    let num = int_v
        .checked_mul(scale)
        .and_then(|v| v.checked_add(frac_v))
        .ok_or_else(bad)?;
    Ok(Rational::new(if neg { -num } else { num }, scale))
}

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// floor(r) as an integer.
pub fn floor(r: Rational) -> i64 {
    r.floor().to_integer()
}

/// ceil(r) as an integer.
pub fn ceil(r: Rational) -> i64 {
    r.ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exactly() {
        assert_eq!(parse_rational("0.5").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("1/2").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("0.11").unwrap(), Rational::new(11, 100));
        assert_eq!(parse_rational("3").unwrap(), Rational::from_integer(3));
        assert_eq!(parse_rational("-.25").unwrap(), Rational::new(-1, 4));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational(".").is_err());
        assert_eq!(floor(Rational::new(15, 2)), 7);
        assert_eq!(ceil(Rational::new(15, 2)), 8);
    }
}
