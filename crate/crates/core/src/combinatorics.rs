//! Enumeration numbers of symmetry classes of alternating sign matrices and
//! plane partitions, and binomials with the zero-outside-range convention.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{arg, Error, Result};

/// A nonnegative count.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EnumNumber(BigInt);

impl EnumNumber {
    fn checked(v: BigInt) -> Result<Self> {
        if v.is_negative() {
            return Err(Error::Consistency(format!("negative count {v}")));
        }
        Ok(EnumNumber(v))
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn into_inner(self) -> BigInt {
        self.0
    }
}

impl fmt::Display for EnumNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `0!, 1!, …, n!`.
fn factorials(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    for k in 1..=n {
        let next = &out[k - 1] * BigInt::from(k);
        out.push(next);
    }
    out
}

fn exact_quotient(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::NotDivisible(format!("{what}: {num} / {den}")));
    }
    Ok(q)
}

/// Binomial coefficient; zero when `k < 0` or `k > n`.
pub fn binom(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return arg(format!("binomial with negative top index {n}"));
    }
    if k < 0 || k > n {
        return Ok(BigInt::zero());
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Ok(acc)
}

/// Vertically symmetric ASMs of odd size `2k+1`.
pub fn a_v(size: usize) -> Result<EnumNumber> {
    if size.is_multiple_of(2) {
        return arg(format!("A_V needs an odd size, got {size}"));
    }
    let k = size / 2;
    let f = factorials(6 * k.max(1));
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for i in 1..=k {
        num *= &f[6 * i - 2] * &f[2 * i - 1];
        den *= &f[4 * i - 2] * &f[4 * i - 1];
    }
    let prod = exact_quotient(&num, &den, "A_V product")?;
    let v = exact_quotient(&prod, &(BigInt::one() << k), "A_V power of two")?;
    EnumNumber::checked(v)
}

/// Cyclically symmetric transpose-complement plane partitions in a cube of even size `2k`.
pub fn n_8(size: usize) -> Result<EnumNumber> {
    if size % 2 == 1 || size == 0 {
        return arg(format!("N_8 needs an even size >= 2, got {size}"));
    }
    let k = size / 2;
    let f = factorials(6 * k);
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for i in 0..k {
        num *= BigInt::from(3 * i + 1) * &f[6 * i] * &f[2 * i];
        den *= &f[4 * i] * &f[4 * i + 1];
    }
    EnumNumber::checked(exact_quotient(&num, &den, "N_8 product")?)
}

/// `A_V(N+1)` for even `N`, `N_8(N+1)` for odd `N`.
pub fn gamma(n: usize) -> EnumNumber {
    let r = if n.is_multiple_of(2) {
        a_v(n + 1)
    } else {
        n_8(n + 1)
    };
    r.expect("parity matches by construction")
}

/// The power of three in the homogeneous character value.
pub fn nu(n: usize) -> u64 {
    let h = (n / 2) as u64;
    if n.is_multiple_of(2) {
        h * h.saturating_sub(1)
    } else {
        h * h
    }
}

/// Off-diagonally symmetric ASMs of size `2n` whose first-row `1` is in column `i`.
pub fn a_o(size: usize, i: usize) -> Result<EnumNumber> {
    if size % 2 == 1 || size < 2 {
        return arg(format!("A_O needs an even size >= 2, got {size}"));
    }
    if i < 1 || i > size {
        return arg(format!("A_O column {i} outside 1..={size}"));
    }
    if i == 1 {
        return Ok(EnumNumber(BigInt::zero()));
    }
    let n = size / 2;
    let f = factorials(4 * n);
    let mut sum = BigRational::zero();
    for k in 1..i {
        let num = &f[2 * n + k - 2] * &f[4 * n - k - 1];
        let den = &f[4 * n - 2] * &f[k - 1] * &f[2 * n - k];
        let term = BigRational::new(num, den);
        if (i + k - 1).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let total = sum * BigRational::from_integer(a_v(2 * n - 1)?.into_inner());
    if !total.is_integer() {
        return Err(Error::NotDivisible(format!("A_O({size},{i}) = {total}")));
    }
    EnumNumber::checked(total.to_integer())
}
