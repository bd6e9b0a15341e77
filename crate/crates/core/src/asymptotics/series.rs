use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{arg, Error, Result};

/// Boundary parameter in its three equivalent forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryParam {
    pub x: f64,
    /// `r ∈ (0, 2)` with `x = sin(π(r+1)/3)/sin(πr/3)`.
    pub r: f64,
    /// `θ = 2π(1 − r)/3`.
    pub theta: f64,
    /// `z = e^{iθ}`.
    #[serde(skip)]
    pub z: Complex64,
}

/// `x(r) = sin(π(r+1)/3)/sin(πr/3)`.
pub fn x_of_r(r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 2.0) {
        return arg(format!("r = {r} is outside (0, 2)"));
    }
    Ok((PI * (r + 1.0) / 3.0).sin() / (PI * r / 3.0).sin())
}

/// Inverse of [`x_of_r`].
///
/// `x = 1/2 + (√3/2)·cot(πr/3)` inverts in closed form; the result is then
/// checked against the forward map and against strict monotonicity.
pub fn r_from_x(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return arg(format!("x = {x} must be a positive finite number"));
    }
    let half_root3 = 3f64.sqrt() / 2.0;
    let r = 3.0 / PI * half_root3.atan2(x - 0.5);
    let back = x_of_r(r)?;
    if (back - x).abs() > 1e-14 * x.max(1.0) {
        return Err(Error::Numerical(format!(
            "r(x) round trip failed: x = {x}, x(r) = {back}"
        )));
    }
    let d = 1e-7 * r.min(2.0 - r);
    if r - d > 0.0 && r + d < 2.0 && x_of_r(r - d)? <= x_of_r(r + d)? {
        return Err(Error::Numerical(format!(
            "x(r) is not decreasing near r = {r}"
        )));
    }
    Ok(r)
}

impl BoundaryParam {
    pub fn from_x(x: f64) -> Result<Self> {
        Self::build(x, r_from_x(x)?)
    }

    pub fn from_r(r: f64) -> Result<Self> {
        Self::build(x_of_r(r)?, r)
    }

    fn build(x: f64, r: f64) -> Result<Self> {
        let theta = 2.0 * PI * (1.0 - r) / 3.0;
        Ok(BoundaryParam {
            x,
            r,
            theta,
            z: Complex64::from_polar(1.0, theta),
        })
    }
}

/// Below this distance from `r = 1` the amplitude `D` uses its limit.
pub const D_SWITCH: f64 = 1e-6;

/// `K = 8√(π/3)/(3Γ(1/3))`, the amplitude at `r = 1`.
pub fn amplitude_at_one() -> f64 {
    8.0 * (PI / 3.0).sqrt() / (3.0 * statrs::function::gamma::gamma(1.0 / 3.0))
}

/// Coefficients of the large-`N` series at fixed `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticCoeffs {
    pub r: f64,
    pub d: f64,
    /// 1/N coefficient for even sub-chains.
    pub e: f64,
    /// 1/N coefficient for odd sub-chains.
    pub e_bar: f64,
    pub tau2: f64,
    pub tau2_bar: f64,
    pub k: f64,
}

pub fn coeffs(r: f64) -> Result<AsymptoticCoeffs> {
    if !(r > 0.0 && r < 2.0) {
        return arg(format!("r = {r} is outside (0, 2)"));
    }
    let u = r - 1.0;
    let s2 = (PI * u / 2.0).sin().powi(2);
    let k = amplitude_at_one();
    let d = if u.abs() < D_SWITCH {
        k
    } else {
        2.0 / statrs::function::gamma::gamma(1.0 / 3.0)
            * (PI / 3.0).sqrt()
            * (2.0 * PI * u / 3.0).sin()
            / (PI * u / 2.0).sin()
    };
    Ok(AsymptoticCoeffs {
        r,
        d,
        e: 13.0 - 14.0 * s2,
        e_bar: 11.0 - 10.0 * s2,
        tau2: 5.0 / 36.0 * s2,
        tau2_bar: -7.0 / 36.0 * s2,
        k,
    })
}

/// Where to truncate the series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    /// Only `(1/6)·ln N`.
    Log,
    /// Through the `O(1)` term.
    Constant,
    /// Through the `1/N` term.
    InverseN,
}

/// Parity class of a bipartition, with the larger formula family first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairParity {
    EvenEven,
    EvenOdd,
    OddEven,
}

impl PairParity {
    pub fn of(n1: usize, n2: usize) -> Result<Self> {
        match (n1 % 2, n2 % 2) {
            (0, 0) => Ok(PairParity::EvenEven),
            (0, 1) => Ok(PairParity::EvenOdd),
            (1, 0) => Ok(PairParity::OddEven),
            _ => Err(Error::IllDefined(n1, n2)),
        }
    }
}

/// The `ξ`-dependent `O(1)` profile, without the constant `−ln D`.
pub fn xi_profile(parity: PairParity, xi: f64) -> f64 {
    match parity {
        PairParity::EvenEven => (xi * (1.0 - xi)).ln() / 6.0,
        PairParity::EvenOdd => (xi / (1.0 - xi)).ln() / 6.0,
        PairParity::OddEven => ((1.0 - xi) / xi).ln() / 6.0,
    }
}

/// Coefficient of `1/N`.
pub fn inverse_n_coefficient(parity: PairParity, xi: f64, c: &AsymptoticCoeffs) -> f64 {
    let even_odd = |t: f64| (c.e / t + c.e_bar * (1.0 - 1.0 / (1.0 - t))) / 72.0;
    match parity {
        PairParity::EvenEven => c.e / 72.0 * (1.0 / xi + 1.0 / (1.0 - xi) - 1.0),
        PairParity::EvenOdd => even_odd(xi),
        PairParity::OddEven => even_odd(1.0 - xi),
    }
}

/// Truncated large-`N` series of the fidelity at a real `x > 0`.
pub fn lbf_asymptotic(n1: usize, n2: usize, x: f64, order: Order) -> Result<f64> {
    let parity = PairParity::of(n1, n2)?;
    if n1 == 0 || n2 == 0 {
        return arg(format!("the series needs N1, N2 >= 1, got ({n1}, {n2})"));
    }
    let c = coeffs(r_from_x(x)?)?;
    let n = (n1 + n2) as f64;
    let xi = n1 as f64 / n;
    let mut f = n.ln() / 6.0;
    if order >= Order::Constant {
        f += xi_profile(parity, xi) - c.d.ln();
    }
    if order >= Order::InverseN {
        f += inverse_n_coefficient(parity, xi, &c) / n;
    }
    Ok(f)
}

/// `sin(u)/u`, equal to 1 at 0.
fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        1.0 - u * u / 6.0 + u.powi(4) / 120.0
    } else {
        u.sin() / u
    }
}

/// Leading large-`N` behaviour of the normalized character on the unit circle,
/// in its real half-angle form:
/// `3sin(θ/2)/(2sin(3θ/4)cos(θ/2)) · ((4/9)sin²(3θ/4)/sin²(θ/2))^N`.
pub fn gp_prefactor(theta: f64, n: usize) -> Result<f64> {
    let (pre, base) = gp_parts(theta)?;
    Ok(pre * base.powi(n as i32))
}

/// `ln` of [`gp_prefactor`], safe for large `N`.
pub fn ln_gp_prefactor(theta: f64, n: usize) -> Result<f64> {
    let (pre, base) = gp_parts(theta)?;
    if pre <= 0.0 {
        return Err(Error::SingularInput(format!(
            "prefactor is not positive at θ = {theta}"
        )));
    }
    Ok(pre.ln() + n as f64 * base.ln())
}

fn gp_parts(theta: f64) -> Result<(f64, f64)> {
    let s3 = sinc(3.0 * theta / 4.0);
    let c = (theta / 2.0).cos();
    if s3.abs() < 1e-300 || c.abs() < 1e-15 {
        return Err(Error::SingularInput(format!(
            "prefactor is singular at θ = {theta}"
        )));
    }
    // sin(θ/2)/sin(3θ/4) = (2/3)·sinc(θ/2)/sinc(3θ/4)
    let ratio = 2.0 / 3.0 * sinc(theta / 2.0) / s3;
    Ok((1.5 * ratio / c, 4.0 / 9.0 / (ratio * ratio)))
}

/// The same prefactor from the complex `z`-form with principal branches:
/// `3z^{3/4}(z−1)/((z^{3/2}−1)(z+1)) · ((4/9)(z^{3/2}−1)²/(z^{1/2}(z−1)²))^N`.
pub fn gp_prefactor_complex(theta: f64, n: usize) -> Result<Complex64> {
    let z = Complex64::from_polar(1.0, theta);
    let one = Complex64::new(1.0, 0.0);
    let z32 = z.powf(1.5);
    let den = (z32 - one) * (z + one);
    if den.norm() < 1e-15 || (z - one).norm() < 1e-15 {
        return Err(Error::SingularInput(format!(
            "complex prefactor is singular at θ = {theta}"
        )));
    }
    let pre = 3.0 * z.powf(0.75) * (z - one) / den;
    let base = 4.0 / 9.0 * (z32 - one).powi(2) / (z.powf(0.5) * (z - one).powi(2));
    Ok(pre * base.powi(n as i32))
}

/// `E₀ = −(3N−1)/4 − (1−x)²/(2x)` split into bulk, boundary and `1/N` parts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyExpansion {
    pub bulk: f64,
    pub boundary: f64,
    /// `Δ₀ − c/24`, which multiplies `πν_F/N`.
    pub finite_size: f64,
}

pub const CENTRAL_CHARGE: f64 = 1.0;
pub const GROUND_WEIGHT: f64 = 1.0 / 24.0;

/// Bulk and boundary energies as exact rationals.
pub fn energy_expansion_exact(x: &BigRational) -> Result<(BigRational, BigRational)> {
    if *x <= BigRational::zero() {
        return arg("x must be positive");
    }
    let two = BigRational::from_integer(2.into());
    let bulk = BigRational::new((-3).into(), 4.into());
    let boundary =
        (&two - x) * (&two - BigRational::one() / x) / BigRational::from_integer(4.into());
    Ok((bulk, boundary))
}

pub fn energy_expansion(x: f64) -> Result<EnergyExpansion> {
    if x.is_nan() || x <= 0.0 {
        return arg("x must be positive");
    }
    Ok(EnergyExpansion {
        bulk: -0.75,
        boundary: (2.0 - x) * (2.0 - 1.0 / x) / 4.0,
        finite_size: GROUND_WEIGHT - CENTRAL_CHARGE / 24.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parameter_map() {
        assert!((r_from_x(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((r_from_x(2.0).unwrap() - 0.5).abs() < 1e-14);
        assert!((r_from_x(0.5).unwrap() - 1.5).abs() < 1e-14);
        assert!(x_of_r(1e-4).unwrap() > 1e3);
        assert!(x_of_r(1.999).unwrap() < 1e-2);
        assert!(r_from_x(0.0).is_err() && r_from_x(-1.0).is_err());
        for k in 1..200 {
            let r = k as f64 / 100.0;
            let back = r_from_x(x_of_r(r).unwrap()).unwrap();
            assert!((back - r).abs() < 1e-12, "r = {r}");
        }
    }

    #[test]
    fn coefficients_at_special_points() {
        let c = coeffs(1.0).unwrap();
        assert_eq!((c.e, c.e_bar, c.tau2, c.tau2_bar), (13.0, 11.0, 0.0, 0.0));
        assert_eq!(c.d, c.k);
        let near = coeffs(1.0 + 2e-6).unwrap();
        assert!((near.d - c.k).abs() < 1e-10);
        let h = coeffs(0.5).unwrap();
        assert!((h.tau2 - 5.0 / 72.0).abs() < 1e-15);
        assert!((h.tau2_bar + 7.0 / 72.0).abs() < 1e-15);
        assert!(coeffs(0.0).is_err() && coeffs(2.0).is_err());
    }

    #[test]
    fn series_examples() {
        let c = coeffs(r_from_x(0.7).unwrap()).unwrap();
        let f = lbf_asymptotic(50, 50, 0.7, Order::Constant).unwrap();
        let want = 100f64.ln() / 6.0 + 0.25f64.ln() / 6.0 - c.d.ln();
        assert!((f - want).abs() < 1e-14);
        assert_eq!(
            lbf_asymptotic(3, 5, 1.0, Order::Log),
            Err(Error::IllDefined(3, 5))
        );
        assert!(lbf_asymptotic(0, 4, 1.0, Order::Log).is_err());
        // odd-even is even-odd reflected
        let a = lbf_asymptotic(7, 30, 2.0, Order::InverseN).unwrap();
        let b = lbf_asymptotic(30, 7, 2.0, Order::InverseN).unwrap();
        assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn supersymmetric_point() {
        // at x = 1 the 1/N coefficients are 13/72 and 11/72 and D = K
        let k = amplitude_at_one();
        for (n1, n2) in [(10, 30), (12, 7), (40, 40)] {
            let n = (n1 + n2) as f64;
            let xi = n1 as f64 / n;
            let want = if n2 % 2 == 0 {
                n.ln() / 6.0 + (xi * (1.0 - xi)).ln() / 6.0 - k.ln()
                    + 13.0 / 72.0 * (1.0 / xi + 1.0 / (1.0 - xi) - 1.0) / n
            } else {
                n.ln() / 6.0 + (xi / (1.0 - xi)).ln() / 6.0 - k.ln()
                    + (13.0 / xi + 11.0 * (1.0 - 1.0 / (1.0 - xi))) / 72.0 / n
            };
            let got = lbf_asymptotic(n1, n2, 1.0, Order::InverseN).unwrap();
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn prefactor_forms() {
        assert!((gp_prefactor(0.0, 40).unwrap() - 1.0).abs() < 1e-15);
        for k in -12..=12 {
            let theta = k as f64 * 0.05;
            for n in [0, 1, 5, 30] {
                let a = gp_prefactor(theta, n).unwrap();
                if theta == 0.0 {
                    continue;
                }
                let b = gp_prefactor_complex(theta, n).unwrap();
                assert!(
                    (b - a).norm() < 1e-12 * a.abs().max(1.0),
                    "θ = {theta}, N = {n}"
                );
            }
        }
        assert!(gp_prefactor(std::f64::consts::PI, 3).is_err());
        let z = Complex64::from_polar(1.0, 0.4);
        let lhs = (z.powf(1.5) - 1.0).powi(2) / z.powf(1.5);
        assert!((lhs - Complex64::new(-4.0 * (0.3f64).sin().powi(2), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn energy_split_is_exact() {
        use crate::exact_arith::rat;
        for x in [rat(1, 3), rat(1, 2), rat(1, 1), rat(2, 1), rat(7, 5)] {
            let (bulk, bndr) = energy_expansion_exact(&x).unwrap();
            for n in 1..10i64 {
                let nn = BigRational::from_integer(n.into());
                let e0 = crate::spin_chain::ground_energy(n as usize, &x).unwrap();
                assert_eq!(&nn * &bulk + &bndr, e0);
            }
        }
        assert_eq!(energy_expansion(0.3).unwrap().finite_size, 0.0);
    }

    proptest! {
        #[test]
        fn difference_of_inverse_n_coefficients(r in 0.01f64..1.99) {
            let c = coeffs(r).unwrap();
            let s2 = (PI * (r - 1.0) / 2.0).sin().powi(2);
            prop_assert!((c.e - c.e_bar - (2.0 - 4.0 * s2)).abs() < 1e-12);
        }

        #[test]
        fn x_is_decreasing(a in 0.01f64..1.98, d in 0.001f64..0.01) {
            prop_assert!(x_of_r(a).unwrap() > x_of_r(a + d).unwrap());
        }
    }
}
