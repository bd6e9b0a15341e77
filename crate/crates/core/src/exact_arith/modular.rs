//! Word-size prime fields, Chinese remaindering and rational reconstruction.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below `2^62`, largest first.
pub fn large_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(512);
        let mut c = (1u64 << 62) - 1;
        while out.len() < 512 {
            if is_prime_u64(c) {
                out.push(c);
            }
            c -= 2;
        }
        out
    })
}

/// Arithmetic modulo an odd prime below `2^62` in Montgomery form.
///
/// Values handed to [`PrimeField::mul`] must already be in Montgomery form;
/// addition and subtraction work on either representation.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
    neg_inv: u64,
    r2: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(
            p % 2 == 1 && p < 1 << 62,
            "modulus must be odd and below 2^62"
        );
        // Newton iteration for p⁻¹ mod 2⁶⁴
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = mul_mod(r, r, p);
        PrimeField {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn from_bigint(&self, a: &BigInt) -> u64 {
        self.to_mont(reduce(a, self.p))
    }

    /// Inverse of a nonzero Montgomery-form value, returned in Montgomery form.
    pub fn inv(&self, a: u64) -> u64 {
        self.to_mont(inv_mod(self.from_mont(a), self.p))
    }
}

pub fn reduce(a: &BigInt, p: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(p));
    r.iter_u64_digits().next().unwrap_or(0)
}

/// Running Chinese-remainder accumulator for a vector of residues.
#[derive(Clone, Debug)]
pub struct CrtVector {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl CrtVector {
    pub fn new(len: usize) -> Self {
        CrtVector {
            modulus: BigInt::one(),
            values: vec![BigInt::zero(); len],
        }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Fold in residues modulo a new prime `p` coprime to the current modulus.
    pub fn push(&mut self, residues: &[u64], p: u64) {
        assert_eq!(residues.len(), self.values.len());
        let pb = BigInt::from(p);
        let m_mod_p = reduce(&self.modulus, p);
        let m_inv = inv_mod(m_mod_p, p);
        for (v, &r) in self.values.iter_mut().zip(residues) {
            // v' = v + M·((r − v)·M⁻¹ mod p)
            let vp = reduce(v, p);
            let diff = (r + p - vp) % p;
            let k = mul_mod(diff, m_inv, p);
            *v += &self.modulus * BigInt::from(k);
        }
        self.modulus *= pb;
    }
}

/// The unique `a/b` with `|a|, b ≤ √(m/2)` congruent to `u` modulo `m`, if any.
pub fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1usize).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    let (num, den) = if t1.sign() == Sign::Minus {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    Some(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime_and_distinct() {
        let ps = large_primes();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| p < 1 << 62 && p > 1 << 61));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn montgomery_matches_plain_arithmetic() {
        let p = large_primes()[3];
        let f = PrimeField::new(p);
        let (a, b) = (p - 12345, 987_654_321_987u64);
        let prod = f.from_mont(f.mul(f.to_mont(a), f.to_mont(b)));
        assert_eq!(prod, mul_mod(a, b, p));
        let ia = f.inv(f.to_mont(a));
        assert_eq!(f.from_mont(f.mul(ia, f.to_mont(a))), 1);
        assert_eq!(f.from_mont(f.sub(f.to_mont(3), f.to_mont(5))), p - 2);
        assert_eq!(f.from_bigint(&BigInt::from(-1)), f.to_mont(p - 1));
    }

    #[test]
    fn crt_and_reconstruction_round_trip() {
        let target = BigRational::new(BigInt::from(-123456789), BigInt::from(987654321));
        let mut crt = CrtVector::new(1);
        for &p in &large_primes()[..2] {
            let num = reduce(target.numer(), p);
            let den = reduce(target.denom(), p);
            crt.push(&[mul_mod(num, inv_mod(den, p), p)], p);
        }
        let back = rational_reconstruct(&crt.values()[0], crt.modulus()).unwrap();
        assert_eq!(back, target);
    }
}
