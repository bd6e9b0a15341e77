//! Multi-precision floating-point helpers on top of `astro-float`.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};

pub const DEFAULT_DIGITS: usize = 60;
const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision plus the constant cache it needs.
pub struct HpContext {
    digits: usize,
    bits: usize,
    cc: Consts,
}

impl std::fmt::Debug for HpContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HpContext")
            .field("digits", &self.digits)
            .finish()
    }
}

fn numerical(e: astro_float::Error) -> Error {
    Error::Numerical(format!("multi-precision arithmetic: {e:?}"))
}

impl HpContext {
    /// A context carrying at least `digits` decimal digits plus guard bits.
    pub fn new(digits: usize) -> Result<Self> {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
        let cc = Consts::new().map_err(numerical)?;
        Ok(HpContext { digits, bits, cc })
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn int(&mut self, v: &BigInt) -> BigFloat {
        BigFloat::parse(&v.to_string(), Radix::Dec, self.bits, RM, &mut self.cc)
    }

    pub fn f64(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.bits)
    }

    pub fn rational(&mut self, v: &BigRational) -> BigFloat {
        let n = self.int(v.numer());
        let d = self.int(v.denom());
        n.div(&d, self.bits, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.bits, RM, &mut self.cc)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.bits, RM, &mut self.cc)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.bits, RM)
    }

    /// Natural logarithm of a positive exact rational.
    pub fn ln_rational(&mut self, v: &BigRational) -> Result<BigFloat> {
        if !v.is_positive() {
            return Err(Error::Argument(format!("logarithm of non-positive {v}")));
        }
        let r = self.rational(v);
        Ok(self.ln(&r))
    }

    /// Decimal rendering with `sig` significant digits, rounded half to even.
    pub fn format(&mut self, v: &BigFloat, sig: usize) -> Result<String> {
        if v.is_nan() || v.is_inf() {
            return Err(Error::Numerical("cannot format a non-finite value".into()));
        }
        if v.is_zero() {
            return Ok("0".into());
        }
        let (sign, digits, exp) = v
            .convert_to_radix(Radix::Dec, RM, &mut self.cc)
            .map_err(numerical)?;
        let (digits, exp) = round_half_even(&digits, exp as i64, sig.max(1));
        let mut s = String::new();
        if sign == Sign::Neg {
            s.push('-');
        }
        s.push_str(&place_point(&digits, exp));
        Ok(s)
    }

    pub fn complex(&mut self, re: &BigRational, im: &BigRational) -> HpComplex {
        HpComplex {
            re: self.rational(re),
            im: self.rational(im),
        }
    }

    pub fn complex_f64(&self, z: num_complex::Complex64) -> HpComplex {
        HpComplex {
            re: self.f64(z.re),
            im: self.f64(z.im),
        }
    }

    pub fn cadd(&self, a: &HpComplex, b: &HpComplex) -> HpComplex {
        HpComplex {
            re: self.add(&a.re, &b.re),
            im: self.add(&a.im, &b.im),
        }
    }

    pub fn cmul(&self, a: &HpComplex, b: &HpComplex) -> HpComplex {
        HpComplex {
            re: self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im)),
            im: self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re)),
        }
    }

    pub fn cscale(&self, a: &HpComplex, c: &BigFloat) -> HpComplex {
        HpComplex {
            re: self.mul(&a.re, c),
            im: self.mul(&a.im, c),
        }
    }

    pub fn cinv(&self, a: &HpComplex) -> HpComplex {
        let n = self.add(&self.mul(&a.re, &a.re), &self.mul(&a.im, &a.im));
        HpComplex {
            re: self.div(&a.re, &n),
            im: self.div(&a.im, &n).neg(),
        }
    }

    pub fn to_complex(&mut self, a: &HpComplex) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.to_f64(&a.re), self.to_f64(&a.im))
    }

    pub fn to_f64(&mut self, v: &BigFloat) -> f64 {
        self.format(v, 20)
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(f64::NAN)
    }
}

/// A complex number as a pair of multi-precision floats.
#[derive(Clone, Debug)]
pub struct HpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

/// `0.d₁d₂… × 10^exp` rounded to `sig` digits. Returns the new digits and exponent.
fn round_half_even(digits: &[u8], exp: i64, sig: usize) -> (Vec<u8>, i64) {
    let first = digits.iter().position(|&d| d != 0).unwrap_or(digits.len());
    let digits = &digits[first..];
    let exp = exp - first as i64;
    if digits.len() <= sig {
        let mut d = digits.to_vec();
        while d.last() == Some(&0) && d.len() > 1 {
            d.pop();
        }
        return (d, exp);
    }
    let mut kept = digits[..sig].to_vec();
    let next = digits[sig];
    let rest_zero = digits[sig + 1..].iter().all(|&d| d == 0);
    let round_up = next > 5 || (next == 5 && (!rest_zero || kept[sig - 1] % 2 == 1));
    let mut exp = exp;
    if round_up {
        let mut i = sig;
        loop {
            if i == 0 {
                kept.insert(0, 1);
                kept.pop();
                exp += 1;
                break;
            }
            i -= 1;
            if kept[i] == 9 {
                kept[i] = 0;
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    while kept.last() == Some(&0) && kept.len() > 1 {
        kept.pop();
    }
    (kept, exp)
}

/// Plain positional notation for `0.digits × 10^exp`.
fn place_point(digits: &[u8], exp: i64) -> String {
    let ds: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
    let n = ds.len() as i64;
    if exp <= 0 {
        format!("0.{}{}", "0".repeat((-exp) as usize), ds)
    } else if exp >= n {
        format!("{}{}", ds, "0".repeat((exp - n) as usize))
    } else {
        format!("{}.{}", &ds[..exp as usize], &ds[exp as usize..])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn logarithm_of_a_known_ratio() {
        let mut hp = HpContext::new(60).unwrap();
        let v = hp.ln_rational(&rat(132, 121)).unwrap();
        let s = hp.format(&v, 40).unwrap();
        assert_eq!(s, "0.08701137698962976616776590187374954097678");
        assert!((hp.to_f64(&v) - (132f64 / 121.0).ln()).abs() < 1e-16);
        assert!(hp.ln_rational(&rat(0, 1)).is_err());
    }

    #[test]
    fn half_even_rounding() {
        assert_eq!(round_half_even(&[1, 2, 5], 1, 2), (vec![1, 2], 1));
        assert_eq!(round_half_even(&[1, 3, 5], 1, 2), (vec![1, 4], 1));
        assert_eq!(round_half_even(&[1, 2, 5, 1], 1, 2), (vec![1, 3], 1));
        assert_eq!(round_half_even(&[9, 9, 9], 0, 2), (vec![1], 1));
        assert_eq!(place_point(&[1, 5], 1), "1.5");
        assert_eq!(place_point(&[1, 5], -2), "0.0015");
        assert_eq!(place_point(&[1, 5], 4), "1500");
    }

    #[test]
    fn pi_to_many_digits() {
        let mut hp = HpContext::new(60).unwrap();
        let pi = hp.pi();
        assert_eq!(
            hp.format(&pi, 50).unwrap(),
            "3.1415926535897932384626433832795028841971693993751"
        );
    }
}
