use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::characters::{chi_in_z, eval_laurent_hp, integer_coefficients};
use crate::error::{arg, Result};
use crate::exact_arith::MultiLaurent;
use crate::hp::HpContext;

/// `θ²f + c·(1+z³)/(1−z³)·θf + m·f = 0` with `θ = z d/dz`; returns `(c, m)`.
///
/// For `N = 2n`: `c = 3(2n−1)`, `m = (3n−1)(3n−2)`.
/// For `N = 2n+1`: `c = 6n`, `m = (3n+1)(3n−1)`.
pub fn ode_coefficients(sites: usize) -> (i64, i64) {
    let n = (sites / 2) as i64;
    if sites.is_multiple_of(2) {
        (3 * (2 * n - 1), (3 * n - 1) * (3 * n - 2))
    } else {
        (6 * n, (3 * n + 1) * (3 * n - 1))
    }
}

/// Dense integer Laurent polynomial `Σ c_k z^{lo+k}`.
#[derive(Clone, Debug, PartialEq)]
struct Dense {
    lo: i64,
    c: Vec<BigInt>,
}

impl Dense {
    fn from_terms(terms: &[(i64, i64)]) -> Self {
        let lo = terms.iter().map(|t| t.0).min().unwrap_or(0);
        let hi = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut c = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for &(e, v) in terms {
            c[(e - lo) as usize] += v;
        }
        Dense { lo, c }
    }

    fn mul(&self, o: &Dense) -> Dense {
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Dense {
            lo: self.lo + o.lo,
            c,
        }
    }

    fn add(&self, o: &Dense) -> Dense {
        let lo = self.lo.min(o.lo);
        let hi = (self.lo + self.c.len() as i64).max(o.lo + o.c.len() as i64);
        let mut c = vec![BigInt::zero(); (hi - lo) as usize];
        for (p, off) in [(self, self.lo - lo), (o, o.lo - lo)] {
            for (i, v) in p.c.iter().enumerate() {
                c[i + off as usize] += v;
            }
        }
        Dense { lo, c }
    }

    fn scale(&self, k: i64) -> Dense {
        Dense {
            lo: self.lo,
            c: self.c.iter().map(|v| v * k).collect(),
        }
    }

    fn theta(&self) -> Dense {
        Dense {
            lo: self.lo,
            c: self
                .c
                .iter()
                .enumerate()
                .map(|(i, v)| v * (self.lo + i as i64))
                .collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }
}

/// `z^{-N}(z−1)^{2N−1}(z+1)` times the integer Laurent form of `χ_N(1,…,1,z)`.
fn ode_function(sites: usize) -> Result<Dense> {
    let (lo, coeffs) = integer_coefficients(&chi_in_z(sites)?);
    let mut f = Dense {
        lo: lo as i64,
        c: coeffs,
    };
    let z_minus_one = Dense::from_terms(&[(0, -1), (1, 1)]);
    for _ in 0..2 * sites - 1 {
        f = f.mul(&z_minus_one);
    }
    f = f.mul(&Dense::from_terms(&[(0, 1), (1, 1)]));
    f.lo -= sites as i64;
    Ok(f)
}

/// The ODE multiplied through by `1 − z³` holds identically in `z`.
pub fn check_ode_exact(sites: usize) -> Result<bool> {
    if sites == 0 {
        return arg("the ODE needs N >= 1");
    }
    let f = ode_function(sites)?;
    let (c, m) = ode_coefficients(sites);
    let one_minus = Dense::from_terms(&[(0, 1), (3, -1)]);
    let one_plus = Dense::from_terms(&[(0, 1), (3, 1)]);
    let tf = f.theta();
    let lhs = one_minus
        .mul(&tf.theta())
        .add(&one_plus.mul(&tf).scale(c))
        .add(&one_minus.mul(&f).scale(m));
    Ok(lhs.is_zero())
}

/// Finite-difference residual of the ODE at one point.
#[derive(Debug, Clone, Serialize)]
pub struct OdeResidual {
    pub sites: usize,
    pub z: [f64; 2],
    pub step: f64,
    /// `|θ²f + c(1+z³)/(1−z³)θf + mf|` over the largest of the three terms.
    pub relative: f64,
}

/// Builds `f_N` from the normalized character and applies central differences.
pub fn check_ode(sites: usize, z: Complex64, h: f64, hp: &mut HpContext) -> Result<OdeResidual> {
    if sites == 0 {
        return arg("the ODE needs N >= 1");
    }
    if z.norm() < 1e-8 || (Complex64::one() - z.powi(3)).norm() < 1e-8 {
        return arg(format!("z = {z} is on the singular set of the ODE"));
    }
    if h.is_nan() || h <= 0.0 || h > 0.1 * z.norm() {
        return arg(format!("step h = {h} must be small and positive"));
    }
    let chi: MultiLaurent = chi_in_z(sites)?;
    let norm = hp.int(&crate::characters::chi_homogeneous(sites));
    let one = hp.int(&BigInt::one());
    let inv_norm = hp.div(&one, &norm);
    let n = sites as i32;
    let mut f = |w: Complex64| -> Complex64 {
        let v = eval_laurent_hp(&chi, &hp.complex_f64(w), hp);
        let v = hp.cscale(&v, &inv_norm);
        let x = hp.to_complex(&v);
        x * w.powi(-n) * (w - 1.0).powi(2 * n - 1) * (w + 1.0)
    };
    // fourth-order central stencils
    let (fm2, fm, f0, fp, fp2) = (f(z - 2.0 * h), f(z - h), f(z), f(z + h), f(z + 2.0 * h));
    let d1 = (fm2 - fp2 + 8.0 * (fp - fm)) / (12.0 * h);
    let d2 = (16.0 * (fp + fm) - fp2 - fm2 - 30.0 * f0) / (12.0 * h * h);
    let theta1 = z * d1;
    let theta2 = z * d1 + z * z * d2;
    let (c, m) = ode_coefficients(sites);
    let z3 = z.powi(3);
    let terms = [
        theta2,
        c as f64 * (1.0 + z3) / (1.0 - z3) * theta1,
        m as f64 * f0,
    ];
    let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
    let sum: Complex64 = terms.iter().sum();
    Ok(OdeResidual {
        sites,
        z: [z.re, z.im],
        step: h,
        relative: if scale == 0.0 {
            0.0
        } else {
            sum.norm() / scale
        },
    })
}

/// Ten points off `{0} ∪ {z³ = 1}`, on and off the unit circle.
pub fn ode_sample_points() -> Vec<Complex64> {
    let pi = std::f64::consts::PI;
    vec![
        Complex64::new(0.7, 0.0),
        Complex64::new(0.5, 0.1),
        Complex64::from_polar(1.0, pi / 3.0),
        Complex64::from_polar(0.9, pi / 4.0),
        Complex64::new(1.3, 0.4),
        Complex64::new(-0.6, 0.2),
        Complex64::new(0.2, 0.9),
        Complex64::from_polar(1.0, 2.0 * pi / 5.0),
        Complex64::new(-1.2, -0.5),
        Complex64::new(0.8, -0.3),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_table() {
        assert_eq!(ode_coefficients(1), (0, -1));
        assert_eq!(ode_coefficients(2), (3, 2));
        assert_eq!(ode_coefficients(5), (12, 35));
    }

    #[test]
    fn exact_identity_small() {
        for n in 1..=14 {
            assert!(check_ode_exact(n).unwrap(), "N = {n}");
        }
    }

    #[test]
    fn wrong_coefficient_is_detected() {
        // f₃ does not solve the even-N equation
        let f = ode_function(3).unwrap();
        let (c, m) = ode_coefficients(4);
        let one_minus = Dense::from_terms(&[(0, 1), (3, -1)]);
        let one_plus = Dense::from_terms(&[(0, 1), (3, 1)]);
        let tf = f.theta();
        let lhs = one_minus
            .mul(&tf.theta())
            .add(&one_plus.mul(&tf).scale(c))
            .add(&one_minus.mul(&f).scale(m));
        assert!(!lhs.is_zero());
    }

    #[test]
    fn finite_difference_examples() {
        let mut hp = HpContext::new(40).unwrap();
        assert!(
            check_ode(1, Complex64::new(0.7, 0.0), 1e-4, &mut hp)
                .unwrap()
                .relative
                < 1e-6
        );
        assert!(
            check_ode(2, Complex64::new(0.5, 0.1), 1e-4, &mut hp)
                .unwrap()
                .relative
                < 1e-4
        );
        let on_circle = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        assert!(check_ode(6, on_circle, 1e-4, &mut hp).unwrap().relative < 1e-4);
        assert!(check_ode(4, Complex64::new(1.0, 0.0), 1e-4, &mut hp).is_err());
    }
}
