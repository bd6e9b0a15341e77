use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Parse `p/q`, an integer or a plain decimal such as `0.125` into an exact
/// positive rational.
pub fn parse_x(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let v = if s.contains('/') {
        BigRational::from_str(s).map_err(|e| format!("cannot parse '{s}' as p/q: {e}"))?
    } else {
        parse_decimal(s)?
    };
    if !v.is_positive() {
        return Err(format!("x must be positive, got {s}"));
    }
    Ok(v)
}

fn parse_decimal(s: &str) -> Result<BigRational, String> {
    let bad = || format!("cannot parse '{s}' as a decimal or p/q");
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num = if digits.is_empty() {
        BigInt::zero()
    } else {
        BigInt::from_str(&digits).map_err(|_| bad())?
    };
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let v = BigRational::new(num, den);
    Ok(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn forms() {
        assert_eq!(parse_x("1/2").unwrap(), r(1, 2));
        assert_eq!(parse_x("0.5").unwrap(), r(1, 2));
        assert_eq!(parse_x("2").unwrap(), r(2, 1));
        assert_eq!(parse_x("1.40").unwrap(), r(7, 5));
        assert_eq!(parse_x(".25").unwrap(), r(1, 4));
        assert_eq!(parse_x("14/10").unwrap(), r(7, 5));
    }

    #[test]
    fn rejects() {
        for s in ["0", "-1/2", "abc", "1/0", "", ".", "1e3", "0.0"] {
            assert!(parse_x(s).is_err(), "{s}");
        }
    }
}
