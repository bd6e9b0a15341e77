//! Symplectic characters `χ_N` of the double-staircase partition
//! `λ_i = ⌊(N−i)/2⌋`.
//!
//! The Weyl ratio is only usable at generic points. Anything with repeated
//! arguments, in particular `χ_N(1,…,1,z)`, goes through the binomial
//! determinants in the surrogate variable `x`, which are related to `z` by a
//! Möbius map over `Q(ω)`.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{gamma, nu};
use crate::error::{Error, Result};
use crate::exact_arith::{
    complex_det, field_det, laurent_det, poly_det, ExactScalar, IntPolynomial, MultiLaurent,
};
use crate::exec::Execution;
use crate::hp::{HpComplex, HpContext};
use crate::overlap_fidelity::{
    binomial_det_at, binomial_matrix, determinant_shape, DeterminantKind,
};

/// Largest `N` for which `χ_N(1,…,1,z)` is expanded as a Laurent polynomial in `z`.
pub const MAX_LAURENT_N: usize = 81;

/// The partition data `λ`, `δ` and `μ = λ + δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterSpec {
    pub n: usize,
    pub lambda: Vec<i32>,
    pub delta: Vec<i32>,
    pub mu: Vec<i32>,
}

impl CharacterSpec {
    pub fn new(n: usize) -> Self {
        let lambda: Vec<i32> = (1..=n).map(|i| ((n - i) / 2) as i32).collect();
        let delta: Vec<i32> = (1..=n).map(|i| (n - i + 1) as i32).collect();
        let mu = lambda.iter().zip(&delta).map(|(l, d)| l + d).collect();
        CharacterSpec {
            n,
            lambda,
            delta,
            mu,
        }
    }

    /// Highest power of any single variable, `⌈N/2⌉ − 1`.
    pub fn top_degree(&self) -> i32 {
        self.n.div_ceil(2) as i32 - 1
    }
}

fn check_generic<T, F>(zs: &[T], is_zero: F) -> Result<()>
where
    F: Fn(&T, &T, bool) -> bool,
{
    for (i, a) in zs.iter().enumerate() {
        if is_zero(a, a, true) {
            return Err(Error::SingularInput(format!(
                "argument {} is 0 or ±1",
                i + 1
            )));
        }
        for b in &zs[i + 1..] {
            if is_zero(a, b, false) {
                return Err(Error::SingularInput(
                    "arguments coincide up to inversion".into(),
                ));
            }
        }
    }
    Ok(())
}

/// `χ_N(z₁,…,z_N)` as the Weyl ratio, exactly over `Q(ω)`.
pub fn chi_ratio(zs: &[ExactScalar]) -> Result<ExactScalar> {
    check_generic(zs, |a, b, same| {
        if same {
            a.is_zero() || (a * a).is_one()
        } else {
            a == b || (a * b).is_one()
        }
    })?;
    let spec = CharacterSpec::new(zs.len());
    let inv: Vec<ExactScalar> = zs.iter().map(|z| z.inv()).collect::<Result<_>>()?;
    let build = |pows: &[i32]| -> Result<Vec<Vec<ExactScalar>>> {
        pows.iter()
            .map(|&p| {
                zs.iter()
                    .zip(&inv)
                    .map(|(z, zi)| Ok(&z.pow(p as i64)? - &zi.pow(p as i64)?))
                    .collect()
            })
            .collect()
    };
    let num = field_det(build(&spec.mu)?)?;
    let den = field_det(build(&spec.delta)?)?;
    Ok(&num * &den.inv()?)
}

/// Floating-point Weyl ratio.
pub fn chi_ratio_complex(zs: &[Complex64]) -> Result<Complex64> {
    let tiny = 1e-12;
    check_generic(zs, |a, b, same| {
        if same {
            a.norm() < tiny || (a * a - 1.0).norm() < tiny
        } else {
            (a - b).norm() < tiny || (a * b - 1.0).norm() < tiny
        }
    })?;
    let spec = CharacterSpec::new(zs.len());
    let build = |pows: &[i32]| -> Vec<Vec<Complex64>> {
        pows.iter()
            .map(|&p| zs.iter().map(|z| z.powi(p) - z.powi(-p)).collect())
            .collect()
    };
    Ok(complex_det(build(&spec.mu)) / complex_det(build(&spec.delta)))
}

/// `χ_N` as a Laurent polynomial in `N` variables. Practical for `N ≤ 6`.
pub fn chi_symbolic(n: usize) -> Result<MultiLaurent> {
    if n == 0 {
        return Ok(MultiLaurent::one(0));
    }
    let spec = CharacterSpec::new(n);
    let build = |pows: &[i32]| -> Result<Vec<Vec<MultiLaurent>>> {
        pows.iter()
            .map(|&p| {
                (0..n)
                    .map(|j| Ok(MultiLaurent::var_pow(n, j, p) - MultiLaurent::var_pow(n, j, -p)))
                    .collect()
            })
            .collect()
    };
    let num = laurent_det(build(&spec.mu)?, n)?;
    let den = laurent_det(build(&spec.delta)?, n)?;
    num.exact_div(&den)
}

/// `χ_N(1,…,1,z)` as a function of `x`:
/// `3^{power_of_three} · det(x) / (1 − x + x²)^{denom_power}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializedCharacter {
    pub n: usize,
    pub power_of_three: u64,
    pub det: IntPolynomial,
    pub denom_power: u32,
}

fn specialized_shape(n: usize) -> (DeterminantKind, usize) {
    if n % 2 == 1 {
        (DeterminantKind::EvenEven, n / 2)
    } else {
        (DeterminantKind::Mixed, (n / 2).saturating_sub(1))
    }
}

fn three_pow(e: u64) -> BigInt {
    num_traits::pow(BigInt::from(3), e as usize)
}

fn x_quadratic<T>(x: &T) -> T
where
    T: Clone
        + One
        + std::ops::Sub<Output = T>
        + std::ops::Add<Output = T>
        + std::ops::Mul<Output = T>,
{
    T::one() - x.clone() + x.clone() * x.clone()
}

impl SpecializedCharacter {
    pub fn at(&self, x: &BigRational) -> Result<BigRational> {
        let d = x_quadratic(x);
        let den = num_traits::pow(d, self.denom_power as usize);
        let pref = BigRational::from_integer(three_pow(self.power_of_three));
        Ok(pref * self.det.eval(x) / den)
    }

    /// Value at a point of `Q(ω)`; fails at the zeros of `1 − x + x²`.
    pub fn at_scalar(&self, x: &ExactScalar) -> Result<ExactScalar> {
        let mut acc = ExactScalar::zero();
        for c in self.det.coeffs().iter().rev() {
            acc = &(&acc * x) + &ExactScalar::from_bigint(c.clone());
        }
        let d = &(&ExactScalar::one() - x) + &(x * x);
        let den = d.pow(self.denom_power as i64)?;
        Ok(&(&acc * &ExactScalar::from_bigint(three_pow(self.power_of_three))) * &den.inv()?)
    }

    /// Human-readable rational function of `x`.
    pub fn display(&self) -> String {
        let pref = three_pow(self.power_of_three);
        match self.denom_power {
            0 => format!("{pref} * ({})", self.det),
            1 => format!("{pref} * ({}) / (x^2 - x + 1)", self.det),
            k => format!("{pref} * ({}) / (x^2 - x + 1)^{k}", self.det),
        }
    }
}

/// The symbolic specialized character.
pub fn chi_specialized(n: usize) -> Result<SpecializedCharacter> {
    if n == 0 {
        return Err(Error::Argument("specialized character needs N >= 1".into()));
    }
    let (kind, k) = specialized_shape(n);
    Ok(SpecializedCharacter {
        n,
        power_of_three: nu(n),
        det: poly_det(&binomial_matrix(kind, k)),
        denom_power: k as u32,
    })
}

/// `χ_N(1,…,1,z)` at rational `x`, through one integer determinant.
pub fn chi_specialized_at(n: usize, x: &BigRational, exec: Execution) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Argument("specialized character needs N >= 1".into()));
    }
    let (kind, k) = specialized_shape(n);
    let det = binomial_det_at(kind, k, x, exec)?;
    let den = num_traits::pow(x_quadratic(x), k);
    Ok(BigRational::from_integer(three_pow(nu(n))) * det / den)
}

/// `χ_N(1,…,1) = 3^{ν_N}·γ_N`.
pub fn chi_homogeneous(n: usize) -> BigInt {
    three_pow(nu(n)) * gamma(n).into_inner()
}

fn omega_pole(x: &ExactScalar) -> bool {
    (x + &ExactScalar::omega()).is_zero()
}

/// `z = (qx + 1)/(q + x)` with `q = ω`.
pub fn z_from_x(x: &ExactScalar) -> Result<ExactScalar> {
    if omega_pole(x) {
        return Err(Error::Argument("x = -q is a pole of the z map".into()));
    }
    let q = ExactScalar::omega();
    let num = &(&q * x) + &ExactScalar::one();
    Ok(&num * &(&q + x).inv()?)
}

/// `x = (1 − qz)/(z − q)`, inverse of [`z_from_x`].
pub fn x_from_z(z: &ExactScalar) -> Result<ExactScalar> {
    let q = ExactScalar::omega();
    let den = z - &q;
    if den.is_zero() {
        return Err(Error::Argument("z = q is a pole of the x map".into()));
    }
    Ok(&(&ExactScalar::one() - &(&q * z)) * &den.inv()?)
}

fn omega_c() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
}

pub fn z_from_x_complex(x: Complex64) -> Result<Complex64> {
    let q = omega_c();
    if (q + x).norm() < 1e-300 {
        return Err(Error::Argument("x = -q is a pole of the z map".into()));
    }
    Ok((q * x + 1.0) / (q + x))
}

pub fn x_from_z_complex(z: Complex64) -> Result<Complex64> {
    let q = omega_c();
    if (z - q).norm() < 1e-300 {
        return Err(Error::Argument("z = q is a pole of the x map".into()));
    }
    Ok((1.0 - q * z) / (z - q))
}

/// `χ_N(1,…,1,z)` as a Laurent polynomial in the single variable `z`.
///
/// Substituting `x = (1−qz)/(z−q)` and `1−x+x² = −3qz/(z−q)²` clears every
/// denominator. The result is certified to have rational integer coefficients
/// and to be invariant under `z → 1/z`.
pub fn chi_in_z(n: usize) -> Result<MultiLaurent> {
    if n > MAX_LAURENT_N {
        return Err(Error::Unsupported(format!(
            "Laurent expansion limited to N <= {MAX_LAURENT_N}"
        )));
    }
    let sc = chi_specialized(n)?;
    let k = sc.denom_power;
    if sc.det.degree().unwrap_or(0) > 2 * k as usize {
        return Err(Error::Consistency(format!(
            "determinant degree exceeds {} for N = {n}",
            2 * k
        )));
    }
    let q = ExactScalar::omega();
    let z = MultiLaurent::var(1, 0);
    let one_minus = &MultiLaurent::one(1) - &z.scale(&q);
    let z_minus = &z - &MultiLaurent::constant(1, q.clone());
    let mut acc = MultiLaurent::zero(1);
    let mut lp = MultiLaurent::one(1);
    for i in 0..=2 * k {
        let c = sc.det.coeff(i as usize);
        if !c.is_zero() {
            let term = &lp * &z_minus.pow(2 * k - i);
            acc = &acc + &term.scale(&ExactScalar::from_bigint(c));
        }
        lp = &lp * &one_minus;
    }
    // divide by (−3q z)^k and restore 3^{ν}
    let c = (&ExactScalar::from_int(-3) * &q).pow(-(k as i64))?;
    let c = &c * &ExactScalar::from_bigint(three_pow(sc.power_of_three));
    let out = acc
        .scale(&c)
        .shift(&crate::exact_arith::Monomial::from_exps(vec![-(k as i32)]));
    for (e, v) in out.terms() {
        let integral = v.as_rational().is_some_and(|r| r.is_integer());
        if !integral {
            return Err(Error::Consistency(format!(
                "coefficient of z^{} is {v}, not an integer",
                e[0]
            )));
        }
    }
    if out.invert_var(0) != out {
        return Err(Error::Consistency(format!(
            "χ_{n}(1,…,1,z) is not symmetric under z → 1/z"
        )));
    }
    Ok(out)
}

/// Integer coefficients `(lowest exponent, c_lo, …, c_hi)` of a one-variable Laurent polynomial.
pub fn integer_coefficients(p: &MultiLaurent) -> (i32, Vec<BigInt>) {
    let Some((lo, hi)) = p.degree_range(0) else {
        return (0, vec![]);
    };
    let coeffs = (lo..=hi)
        .map(|k| {
            p.coeff(&[k])
                .as_rational()
                .map(|r| r.to_integer())
                .expect("certified integral")
        })
        .collect();
    (lo, coeffs)
}

/// Where a normalized character was evaluated.
#[derive(Debug, Clone, PartialEq)]
pub enum CharacterPoint {
    /// Through the surrogate `x`; `z` lies on the unit circle.
    X(BigRational),
    Z(Complex64),
}

/// `𝔛_N = χ_N(1,…,1,z)/χ_N(1,…,1)`.
#[derive(Debug, Clone)]
pub struct NormalizedCharacter {
    pub n: usize,
    pub point: CharacterPoint,
    /// Exact value, available at rational `x`.
    pub exact: Option<BigRational>,
    pub value: HpComplex,
}

impl NormalizedCharacter {
    pub fn to_complex(&self, hp: &mut HpContext) -> Complex64 {
        hp.to_complex(&self.value)
    }
}

/// Exact `𝔛_N` at rational `x`.
pub fn normalized_chi_at_x(n: usize, x: &BigRational, exec: Execution) -> Result<BigRational> {
    let v = chi_specialized_at(n, x, exec)?;
    Ok(v / BigRational::from_integer(chi_homogeneous(n)))
}

/// `𝔛_N` at rational `x`, exact and at the context's precision.
pub fn normalized_chi_x(
    n: usize,
    x: &BigRational,
    hp: &mut HpContext,
) -> Result<NormalizedCharacter> {
    let v = normalized_chi_at_x(n, x, Execution::Sequential)?;
    let value = hp.complex(&v, &BigRational::zero());
    Ok(NormalizedCharacter {
        n,
        point: CharacterPoint::X(x.clone()),
        exact: Some(v),
        value,
    })
}

/// Evaluate an integer Laurent polynomial at a complex point in high precision.
pub fn eval_laurent_hp(p: &MultiLaurent, z: &HpComplex, hp: &mut HpContext) -> HpComplex {
    let (lo, coeffs) = integer_coefficients(p);
    let zero = HpComplex {
        re: hp.int(&BigInt::zero()),
        im: hp.int(&BigInt::zero()),
    };
    let mut acc = zero.clone();
    for c in coeffs.iter().rev() {
        acc = hp.cmul(&acc, z);
        let cf = hp.int(c);
        acc.re = hp.add(&acc.re, &cf);
    }
    let zp = if lo < 0 { hp.cinv(z) } else { z.clone() };
    for _ in 0..lo.unsigned_abs() {
        acc = hp.cmul(&acc, &zp);
    }
    acc
}

/// `𝔛_N` at an arbitrary complex `z` through the Laurent expansion.
pub fn normalized_chi(n: usize, z: Complex64, hp: &mut HpContext) -> Result<NormalizedCharacter> {
    if z.norm() == 0.0 || !z.is_finite() {
        return Err(Error::Argument(format!(
            "z = {z} is not a finite nonzero point"
        )));
    }
    let p = chi_in_z(n)?;
    let zh = hp.complex_f64(z);
    let v = eval_laurent_hp(&p, &zh, hp);
    let h = hp.int(&chi_homogeneous(n));
    let value = HpComplex {
        re: hp.div(&v.re, &h),
        im: hp.div(&v.im, &h),
    };
    Ok(NormalizedCharacter {
        n,
        point: CharacterPoint::Z(z),
        exact: None,
        value,
    })
}

/// Residual of the reduction relation for `z_j = q·z_i`, with the other
/// arguments drawn from `sample`.
///
/// `χ_N(…z_i…qz_i…) = ∏_{k≠i,j} z_k⁻¹(z_k − q²z_i)(z_k − q z_i⁻¹) · χ_{N−2}(rest)`.
pub fn reduction_residual_exact(zs: &[ExactScalar], i: usize, j: usize) -> Result<ExactScalar> {
    let n = zs.len();
    if n < 2 || i == j || i >= n || j >= n {
        return Err(Error::Argument("reduction needs two distinct slots".into()));
    }
    let q = ExactScalar::omega();
    let q2 = &q * &q;
    let mut full = zs.to_vec();
    full[j] = &q * &zs[i];
    let zi_inv = zs[i].inv()?;
    let mut pref = ExactScalar::one();
    let mut rest = Vec::with_capacity(n - 2);
    for (k, zk) in full.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        let f = &(zk - &(&q2 * &zs[i])) * &(zk - &(&q * &zi_inv));
        pref = &(&pref * &f) * &zk.inv()?;
        rest.push(zk.clone());
    }
    let lhs = chi_ratio(&full)?;
    let rhs = if rest.is_empty() {
        ExactScalar::one()
    } else {
        chi_ratio(&rest)?
    };
    Ok(&lhs - &(&pref * &rhs))
}

/// Floating version of [`reduction_residual_exact`], relative to the larger side.
pub fn reduction_residual_complex(zs: &[Complex64], i: usize, j: usize) -> Result<f64> {
    let n = zs.len();
    if n < 2 || i == j || i >= n || j >= n {
        return Err(Error::Argument("reduction needs two distinct slots".into()));
    }
    let q = omega_c();
    let mut full = zs.to_vec();
    full[j] = q * zs[i];
    let mut pref = Complex64::new(1.0, 0.0);
    let mut rest = Vec::new();
    for (k, &zk) in full.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        pref *= (zk - q * q * zs[i]) * (zk - q / zs[i]) / zk;
        rest.push(zk);
    }
    let lhs = chi_ratio_complex(&full)?;
    let rhs = pref
        * if rest.is_empty() {
            Complex64::new(1.0, 0.0)
        } else {
            chi_ratio_complex(&rest)?
        };
    Ok((lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1e-300))
}

/// Random points on an annulus around the unit circle, well away from `±1`.
pub fn random_points(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let r = rng.gen_range(0.6..1.6);
            let th = rng.gen_range(0.2..(std::f64::consts::PI - 0.2));
            Complex64::from_polar(r, th)
        })
        .collect()
}

/// Random small elements of `Q(ω)`.
pub fn random_scalars(n: usize, rng: &mut ChaCha8Rng) -> Vec<ExactScalar> {
    (0..n)
        .map(|_| {
            let a = rng.gen_range(-9i64..=9);
            let b = rng.gen_range(1i64..=9);
            let d = rng.gen_range(1i64..=7);
            ExactScalar::new(
                BigRational::new(a.into(), d.into()),
                BigRational::new(b.into(), d.into()),
            )
        })
        .collect()
}

/// Largest reduction residual over `samples` random points, exact and floating.
#[derive(Debug, Clone)]
pub struct ReductionReport {
    pub n: usize,
    pub samples: usize,
    pub exact_all_zero: bool,
    pub max_float_residual: f64,
}

pub fn check_chi_reduction(n: usize, samples: usize, seed: u64) -> Result<ReductionReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 32);
    let mut exact_all_zero = true;
    let mut max_float: f64 = 0.0;
    let mut done = 0;
    while done < samples {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let zs = random_scalars(n, &mut rng);
        // a draw can land on a degenerate configuration; redraw in that case
        match reduction_residual_exact(&zs, i, j) {
            Ok(r) => exact_all_zero &= r.is_zero(),
            Err(Error::SingularInput(_)) => continue,
            Err(e) => return Err(e),
        }
        let zc = random_points(n, &mut rng);
        match reduction_residual_complex(&zc, i, j) {
            Ok(r) => max_float = max_float.max(r),
            Err(Error::SingularInput(_)) => continue,
            Err(e) => return Err(e),
        }
        done += 1;
    }
    Ok(ReductionReport {
        n,
        samples,
        exact_all_zero,
        max_float_residual: max_float,
    })
}

/// Relative residual of `z_i^{−(n̄−1)}χ_N − χ_{N−1}(others)` at `|z_i| = magnitude`.
pub fn check_chi_leading(n: usize, i: usize, magnitude: f64, seed: u64) -> Result<f64> {
    if n < 2 || i >= n {
        return Err(Error::Argument(
            "leading-term check needs N >= 2 and a valid slot".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zs = random_points(n, &mut rng);
    zs[i] = Complex64::from_polar(magnitude, rng.gen_range(0.3..1.3));
    let top = CharacterSpec::new(n).top_degree();
    let lhs = chi_ratio_complex(&zs)? * zs[i].powi(-top);
    let others: Vec<Complex64> = zs
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i)
        .map(|(_, z)| *z)
        .collect();
    let rhs = chi_ratio_complex(&others)?;
    Ok((lhs - rhs).norm() / rhs.norm())
}

/// Symbolic leading coefficient: the coefficient of `z_i^{n̄−1}` equals
/// `χ_{N−1}` of the other variables, and the degree width is `2(n̄−1)`.
pub fn check_chi_leading_symbolic(n: usize, i: usize) -> Result<bool> {
    let chi = chi_symbolic(n)?;
    let top = CharacterSpec::new(n).top_degree();
    let lead = chi.coefficient_in(i, top);
    let lower = chi_symbolic(n - 1)?;
    let mut embedded = MultiLaurent::zero(n);
    for (e, c) in lower.terms() {
        let mut ne = e.clone();
        ne.insert(i, 0);
        embedded = &embedded + &MultiLaurent::term(n, ne, c.clone());
    }
    Ok(lead == embedded && chi.degree_width(i) == 2 * top as u32 && chi.is_centred(i))
}

/// The overlap `O_{N₁,N₂}` rebuilt from characters:
/// `γ_{N₁}·γ_{N₂}·(1−x+x²)^{⌊N/2⌋}·χ_{N+1}(1,…,1,z)/3^{ν_{N+1}}`.
pub fn overlap_via_characters(
    n1: usize,
    n2: usize,
    x: &BigRational,
    exec: Execution,
) -> Result<BigRational> {
    if determinant_shape(n1, n2).is_none() {
        return Err(Error::IllDefined(n1, n2));
    }
    let n = n1 + n2;
    let g1 = BigRational::new(chi_homogeneous(n1), three_pow(nu(n1)));
    let g2 = BigRational::new(chi_homogeneous(n2), three_pow(nu(n2)));
    let spec = chi_specialized_at(n + 1, x, exec)?;
    let pw = num_traits::pow(x_quadratic(x), n / 2);
    Ok(g1 * g2 * pw * spec / BigRational::from_integer(three_pow(nu(n + 1))))
}

/// High-precision `ln 𝔛_N` at rational `x`.
pub fn ln_normalized_chi(n: usize, x: &BigRational, hp: &mut HpContext) -> Result<BigFloat> {
    let v = normalized_chi_at_x(n, x, Execution::Sequential)?;
    hp.ln_rational(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;
    use crate::overlap_fidelity::overlap_determinant_poly;
    use proptest::prelude::*;

    fn s(a: i64, b: i64) -> ExactScalar {
        ExactScalar::from_ratio(a, b)
    }

    #[test]
    fn partition_data() {
        let c = CharacterSpec::new(5);
        assert_eq!(c.lambda, vec![2, 1, 1, 0, 0]);
        assert_eq!(c.mu, vec![7, 5, 4, 2, 1]);
        assert_eq!(CharacterSpec::new(4).mu, vec![5, 4, 2, 1]);
        assert!(c.mu.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn small_ratios() {
        assert_eq!(chi_ratio(&[s(3, 2)]).unwrap(), ExactScalar::one());
        let zs = [s(2, 1), s(5, 3), s(-7, 2)];
        let want = zs
            .iter()
            .fold(ExactScalar::zero(), |a, z| &(&a + z) + &z.inv().unwrap());
        assert_eq!(chi_ratio(&zs).unwrap(), want);
        assert!(matches!(
            chi_ratio(&[s(2, 1), s(1, 2)]),
            Err(Error::SingularInput(_))
        ));
        assert!(matches!(
            chi_ratio(&[s(1, 1)]),
            Err(Error::SingularInput(_))
        ));
    }

    #[test]
    fn symbolic_matches_ratio() {
        let chi3 = chi_symbolic(3).unwrap();
        let want = (0..3).fold(MultiLaurent::zero(3), |a, i| {
            &(&a + &MultiLaurent::var(3, i)) + &MultiLaurent::var_pow(3, i, -1)
        });
        assert_eq!(chi3, want);
        let chi5 = chi_symbolic(5).unwrap();
        let zs = [s(2, 1), s(5, 3), s(-7, 2), s(3, 11), s(4, 9)];
        assert_eq!(chi5.evaluate(&zs).unwrap(), chi_ratio(&zs).unwrap());
        assert_eq!(chi5.degree_width(2), 4);
    }

    #[test]
    fn leading_coefficient() {
        for n in 2..=5 {
            assert!(check_chi_leading_symbolic(n, 0).unwrap(), "N = {n}");
        }
        assert!(check_chi_leading(3, 1, 1e6, 7).unwrap() < 1e-5);
        assert!(check_chi_leading(2, 0, 1e6, 7).unwrap() < 1e-12);
    }

    #[test]
    fn reduction_relation() {
        let zs = [s(2, 1), s(0, 1), s(5, 3)];
        assert!(reduction_residual_exact(&zs, 0, 1).unwrap().is_zero());
        let r = check_chi_reduction(6, 5, 1).unwrap();
        assert!(r.exact_all_zero && r.max_float_residual < 1e-10, "{r:?}");
        let two = check_chi_reduction(2, 5, 2).unwrap();
        assert!(two.exact_all_zero);
    }

    #[test]
    fn specialized_examples() {
        let c1 = chi_specialized(1).unwrap();
        assert_eq!(c1.at(&rat(5, 7)).unwrap(), rat(1, 1));
        let c3 = chi_specialized(3).unwrap();
        let x = rat(2, 5);
        let want = rat(3, 1) * (&x * &x + rat(1, 1)) / (&x * &x - &x + rat(1, 1));
        assert_eq!(c3.at(&x).unwrap(), want);
        assert_eq!(
            chi_specialized_at(3, &x, Execution::Sequential).unwrap(),
            want
        );
        assert_eq!(chi_homogeneous(4), BigInt::from(27));
        assert_eq!(chi_homogeneous(1), BigInt::one());
        for n in 1..=12 {
            assert_eq!(
                chi_specialized(n).unwrap().at(&rat(1, 1)).unwrap(),
                BigRational::from_integer(chi_homogeneous(n))
            );
        }
    }

    #[test]
    fn z_expansion_is_the_character() {
        // χ_N(1,…,1,z) from the Laurent form equals the symbolic character at ones
        for n in 1..=5 {
            let p = chi_in_z(n).unwrap();
            let sym = chi_symbolic(n).unwrap();
            let mut v = sym;
            for k in 0..n - 1 {
                v = v.substitute(k, &MultiLaurent::one(n)).unwrap();
            }
            let (lo, cz) = integer_coefficients(&p);
            for (off, c) in cz.iter().enumerate() {
                let mut e = vec![0; n];
                e[n - 1] = lo + off as i32;
                assert_eq!(v.coeff(&e), ExactScalar::from_bigint(c.clone()), "N = {n}");
            }
        }
        assert_eq!(
            integer_coefficients(&chi_in_z(3).unwrap()).1,
            vec![1.into(), 4.into(), 1.into()]
        );
    }

    #[test]
    fn z_and_x_routes_agree() {
        for n in [3usize, 6, 9] {
            let sc = chi_specialized(n).unwrap();
            let p = chi_in_z(n).unwrap();
            for x in [s(1, 2), s(7, 5), ExactScalar::new(rat(1, 3), rat(2, 1))] {
                let z = z_from_x(&x).unwrap();
                assert_eq!(p.evaluate(&[z]).unwrap(), sc.at_scalar(&x).unwrap());
            }
        }
    }

    #[test]
    fn moebius_maps() {
        assert_eq!(z_from_x(&ExactScalar::one()).unwrap(), ExactScalar::one());
        assert!(z_from_x(&-ExactScalar::omega()).is_err());
        assert!(x_from_z(&ExactScalar::omega()).is_err());
        let z = z_from_x_complex(Complex64::new(2.0, 0.0)).unwrap();
        assert!((z.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn normalized_at_one() {
        let mut hp = HpContext::new(40).unwrap();
        for n in 1..=20 {
            assert!(normalized_chi_at_x(n, &rat(1, 1), Execution::Sequential)
                .unwrap()
                .is_one());
        }
        let v = normalized_chi(7, Complex64::new(1.0, 0.0), &mut hp).unwrap();
        assert!((v.to_complex(&mut hp) - 1.0).norm() < 1e-30);
        let w = normalized_chi(
            3,
            z_from_x_complex(Complex64::new(2.0, 0.0)).unwrap(),
            &mut hp,
        )
        .unwrap();
        // (x²+1)/(2(x²−x+1)) at x = 2
        assert!((w.to_complex(&mut hp) - 5.0 / 6.0).norm() < 1e-14);
        let z = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        for n in [10, 30, 50] {
            let c = normalized_chi(n, z, &mut hp).unwrap().to_complex(&mut hp);
            assert!(c.norm().is_finite() && c.norm() > 0.0);
        }
    }

    #[test]
    fn coalescing_points_approach_homogeneous_value() {
        let n = 4;
        let h = BigRational::from_integer(chi_homogeneous(n));
        let err = |eps: BigRational| {
            let zs: Vec<ExactScalar> = (1..=n as i64)
                .map(|k| ExactScalar::from_rational(BigRational::one() + &eps * rat(k, 1)))
                .collect();
            chi_ratio(&zs).unwrap().as_rational().unwrap().clone() - &h
        };
        let e1 = err(rat(1, 1000));
        let e2 = err(rat(1, 2000));
        // the gradient vanishes at the symmetric point, so the error is quadratic
        let rich = (rat(4, 1) * &e2 - &e1) / rat(3, 1);
        use num_traits::Signed;
        assert!(rich.abs() < e2.abs() / rat(100, 1));
    }

    #[test]
    fn overlap_assembly() {
        for n in 0..=10usize {
            for n1 in 0..=n {
                let n2 = n - n1;
                if n1 % 2 == 1 && n2 % 2 == 1 {
                    continue;
                }
                let poly = overlap_determinant_poly(n1, n2);
                for x in [rat(1, 3), rat(2, 1)] {
                    assert_eq!(
                        overlap_via_characters(n1, n2, &x, Execution::Sequential).unwrap(),
                        poly.at(&x),
                        "({n1},{n2})"
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn ratio_symmetries(a in 1i64..9, b in 1i64..9, c in -9i64..-1, d in 2i64..9) {
            let zs = [s(1, a + 10), ExactScalar::new(rat(a, 1), rat(b, 1)), s(c, 1), s(d, 1)];
            let v = chi_ratio(&zs).unwrap();
            let swapped = [zs[2].clone(), zs[0].clone(), zs[3].clone(), zs[1].clone()];
            prop_assert_eq!(chi_ratio(&swapped).unwrap(), v.clone());
            let mut inv = zs.clone();
            inv[1] = inv[1].inv().unwrap();
            prop_assert_eq!(chi_ratio(&inv).unwrap(), v);
        }

        #[test]
        fn round_trip_moebius(p in 1i64..1000, q in 1i64..1000) {
            let x = s(p, q);
            prop_assert_eq!(x_from_z(&z_from_x(&x).unwrap()).unwrap(), x);
        }
    }
}
