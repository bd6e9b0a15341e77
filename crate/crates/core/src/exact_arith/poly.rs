//! Dense univariate polynomials with big-integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial in one variable `x`; `coeffs[k]` multiplies `x^k`.
///
/// Trailing zeros are always stripped, so the zero polynomial has no
/// coefficients and equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = IntPolynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        // Horner on the numerator with the denominator powers folded in
        let (p, q) = (x.numer(), x.denom());
        let d = match self.degree() {
            None => return BigRational::zero(),
            Some(d) => d,
        };
        let mut num = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            num = num * p + c * &qpow;
            qpow *= q;
        }
        BigRational::new(num, num_traits::pow(q.clone(), d))
    }

    /// Gcd of the coefficients, signed like the leading coefficient.
    pub fn content(&self) -> BigInt {
        let g = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        match self.leading() {
            Some(l) if l.is_negative() => -g,
            _ => g,
        }
    }

    /// Exact quotient `self / d`; fails when `d` does not divide `self` over `Z[x]`.
    pub fn div_exact(&self, d: &IntPolynomial) -> Result<IntPolynomial> {
        let (q, r) = self.div_rem_integral(d)?;
        if !r.is_zero() {
            return Err(Error::NotDivisible(format!("({self}) / ({d})")));
        }
        Ok(q)
    }

    fn div_rem_integral(&self, d: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::SingularInput("polynomial division by zero".into()))?;
        let lead = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((IntPolynomial::zero(), IntPolynomial::zero()));
        };
        if sd < dd {
            return Ok((IntPolynomial::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!("({self}) / ({d})")));
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((IntPolynomial::new(quot), IntPolynomial::new(rem)))
    }

    pub fn div_exact_int(&self, c: &BigInt) -> Result<IntPolynomial> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!("({self}) / {c}")));
            }
            out.push(q);
        }
        Ok(IntPolynomial::new(out))
    }
}

impl Zero for IntPolynomial {
    fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for IntPolynomial {
    fn one() -> Self {
        Self::from_i64(&[1])
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, o: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, o: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, o: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || o.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, o: IntPolynomial) -> IntPolynomial {
                (&self).$m(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 if show_mag => write!(f, "*x")?,
                1 => write!(f, "x")?,
                _ if show_mag => write!(f, "*x^{k}")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(
            p(&[2, 2, 3, 2, 2]).to_string(),
            "2*x^4 + 2*x^3 + 3*x^2 + 2*x + 2"
        );
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn rational_evaluation() {
        let f = p(&[1, 0, 1]);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.eval(&half), BigRational::new(5.into(), 4.into()));
        assert_eq!(IntPolynomial::zero().eval(&half), BigRational::zero());
    }

    #[test]
    fn exact_division_detects_remainders() {
        let f = p(&[1, 0, 1]);
        let g = p(&[1, -1, 1]);
        let prod = &f * &g;
        assert_eq!(prod.div_exact(&g).unwrap(), f);
        assert!(f.div_exact(&g).is_err());
        assert!(p(&[2, 4]).div_exact_int(&BigInt::from(2)).is_ok());
        assert!(p(&[2, 3]).div_exact_int(&BigInt::from(2)).is_err());
    }

    proptest! {
        #[test]
        fn ring_laws(a in prop::collection::vec(-9i64..9, 0..5),
                     b in prop::collection::vec(-9i64..9, 0..5),
                     c in prop::collection::vec(-9i64..9, 0..5),
                     x in -5i64..5) {
            let (a, b, c) = (p(&a), p(&b), p(&c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            let xv = BigInt::from(x);
            prop_assert_eq!((&a * &b).eval_int(&xv), a.eval_int(&xv) * b.eval_int(&xv));
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
            }
        }
    }
}
