//! Elements of the cyclotomic field `Q(ω)`, `ω = e^{2πi/3}`.
//!
//! A value is stored as `re + om·ω` with rational parts. Plain rationals are
//! the `om = 0` slice, which is all the spin-chain side ever produces.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    re: BigRational,
    om: BigRational,
}

impl ExactScalar {
    pub fn new(re: BigRational, om: BigRational) -> Self {
        ExactScalar { re, om }
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactScalar {
            re: r,
            om: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    /// The primitive cube root of unity `ω`.
    pub fn omega() -> Self {
        ExactScalar {
            re: BigRational::zero(),
            om: BigRational::one(),
        }
    }

    /// `e^{iπ/3} = -ω² = 1 + ω`, a square root of `ω`.
    pub fn sqrt_omega() -> Self {
        ExactScalar {
            re: BigRational::one(),
            om: BigRational::one(),
        }
    }

    pub fn re_part(&self) -> &BigRational {
        &self.re
    }

    pub fn omega_part(&self) -> &BigRational {
        &self.om
    }

    pub fn is_rational(&self) -> bool {
        self.om.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.re)
    }

    /// Complex conjugation, `ω ↦ ω² = -1 - ω`.
    pub fn conj(&self) -> Self {
        ExactScalar {
            re: &self.re - &self.om,
            om: -&self.om,
        }
    }

    /// Field norm `(a + bω)(a + bω̄) = a² - ab + b²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re - &self.re * &self.om + &self.om * &self.om
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::SingularInput("inverse of zero".into()));
        }
        let c = self.conj();
        Ok(ExactScalar {
            re: c.re / &n,
            om: c.om / n,
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = ExactScalar::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    pub fn to_complex(&self) -> Complex64 {
        let re = self.re.to_f64().unwrap_or(f64::NAN);
        let om = self.om.to_f64().unwrap_or(f64::NAN);
        Complex64::new(re - 0.5 * om, om * 3f64.sqrt() / 2.0)
    }

    /// `|value|` as a double, computed from the exact norm.
    pub fn abs_f64(&self) -> f64 {
        let n = self.norm();
        // norms overflow f64 long before the modulus does, so rescale by an even power of two
        let shift = n.numer().bits() as i64 - n.denom().bits() as i64;
        let k = (shift / 2) * 2;
        if k.abs() < 900 {
            return n.to_f64().unwrap_or(f64::NAN).sqrt();
        }
        let scale = BigRational::from_integer(BigInt::one() << k.unsigned_abs() as usize);
        let reduced = if k > 0 { n / scale } else { n * scale };
        reduced.to_f64().unwrap_or(f64::NAN).sqrt() * 2f64.powi((k / 2) as i32)
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar {
            re: BigRational::zero(),
            om: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.om.is_zero()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar::from_rational(BigRational::one())
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: &self.re + &o.re,
            om: &self.om + &o.om,
        }
    }
}

impl Sub<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: &self.re - &o.re,
            om: &self.om - &o.om,
        }
    }
}

impl Mul<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        // (a + bω)(c + dω) = ac + (ad + bc)ω + bd ω², ω² = -1 - ω
        let bd = &self.om * &o.om;
        ExactScalar {
            re: &self.re * &o.re - &bd,
            om: &self.re * &o.om + &self.om * &o.re - bd,
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            re: -&self.re,
            om: -&self.om,
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            re: -self.re,
            om: -self.om,
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: ExactScalar) -> ExactScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, o: &ExactScalar) -> ExactScalar {
                (&self).$m(o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Div for &ExactScalar {
    type Output = ExactScalar;
    /// Panics on division by zero, like the rational types it wraps.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &ExactScalar) -> ExactScalar {
        self * &o.inv().expect("division by zero in Q(ω)")
    }
}

impl Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, o: ExactScalar) -> ExactScalar {
        &self / &o
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, o: &ExactScalar) {
        self.re += &o.re;
        self.om += &o.om;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, o: &ExactScalar) {
        self.re -= &o.re;
        self.om -= &o.om;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, o: &ExactScalar) {
        *self = &*self * o;
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.om.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}ω", self.om);
        }
        let sign = if self.om.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}ω", self.re, sign, self.om.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(a: i64, b: i64) -> ExactScalar {
        ExactScalar::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
        )
    }

    #[test]
    fn omega_is_a_cube_root_of_unity() {
        let w = ExactScalar::omega();
        assert_eq!(w.pow(3).unwrap(), ExactScalar::one());
        assert_eq!(&(&w * &w) + &w, -ExactScalar::one());
        let t = ExactScalar::sqrt_omega();
        assert_eq!(&t * &t, w);
        assert_eq!(t.pow(6).unwrap(), ExactScalar::one());
    }

    #[test]
    fn conjugation_matches_complex_embedding() {
        let v = s(3, -7);
        let c = v.conj().to_complex();
        let z = v.to_complex().conj();
        assert!((c - z).norm() < 1e-12);
        assert_eq!(v.conj(), s(10, 7));
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert!(ExactScalar::zero().inv().is_err());
    }

    #[test]
    fn abs_handles_huge_values() {
        let big = ExactScalar::from_bigint(BigInt::from(10).pow(400));
        let a = big.abs_f64();
        assert!(a.is_infinite() || a > 1e300);
        let small = ExactScalar::from_rational(BigRational::new(1.into(), BigInt::from(10).pow(3)));
        assert!((small.abs_f64() - 1e-3).abs() < 1e-15);
        assert!((s(1, 1).abs_f64() - 1.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn field_axioms(a in -20i64..20, b in -20i64..20, c in -20i64..20,
                        d in -20i64..20, e in -20i64..20, f in -20i64..20) {
            let (x, y, z) = (s(a, b), s(c, d), s(e, f));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), ExactScalar::one());
            }
        }

        #[test]
        fn norm_is_nonnegative_and_multiplicative(a in -50i64..50, b in -50i64..50,
                                                   c in -50i64..50, d in -50i64..50) {
            let (x, y) = (s(a, b), s(c, d));
            prop_assert!(!x.norm().is_negative());
            prop_assert_eq!(ExactScalar::from_rational(x.norm()), &x * &x.conj());
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }
    }
}
