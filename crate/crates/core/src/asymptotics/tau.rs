use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::series::{coeffs, ln_gp_prefactor, BoundaryParam};
use crate::characters::normalized_chi_at_x;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hp::HpContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Least-squares fit `R_N ≈ a√N + τ + c/N` with `R_N = (𝔛_N/prefactor − 1)·N`.
#[derive(Debug, Clone, Serialize)]
pub struct TauFit {
    pub parity: Parity,
    pub r: f64,
    pub sizes: Vec<usize>,
    pub scaled_remainders: Vec<f64>,
    /// Coefficient of `√N`; the expansion has none.
    pub sqrt_coeff: f64,
    pub tau: f64,
    pub inverse_coeff: f64,
    /// Closed-form value for this parity class.
    pub expected: f64,
    pub max_fit_residual: f64,
}

impl TauFit {
    pub fn relative_error(&self) -> f64 {
        if self.expected == 0.0 {
            self.tau.abs()
        } else {
            ((self.tau - self.expected) / self.expected).abs()
        }
    }
}

/// Sizes of one parity class between `n_max/2` and `n_max` in steps of 10.
pub fn fit_sizes(parity: Parity, n_max: usize) -> Vec<usize> {
    let want = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let mut start = n_max / 2;
    if start % 2 != want {
        start += 1;
    }
    (start..=n_max).step_by(10).collect()
}

/// Fit the `1/N` coefficient of the normalized character at rational `x`.
pub fn estimate_tau(
    parity: Parity,
    x: &BigRational,
    n_max: usize,
    digits: usize,
    exec: Execution,
) -> Result<TauFit> {
    let xf = x
        .to_f64()
        .ok_or_else(|| Error::Argument(format!("x = {x} is not representable")))?;
    let p = BoundaryParam::from_x(xf)?;
    let sizes = fit_sizes(parity, n_max);
    if sizes.len() < 4 {
        return Err(Error::Argument(format!(
            "n_max = {n_max} leaves fewer than four sizes"
        )));
    }
    let values = exec.map(sizes.clone(), |n| -> Result<f64> {
        let chi = normalized_chi_at_x(n, x, Execution::Sequential)?;
        let mut hp = HpContext::new(digits)?;
        let ln_chi = hp.ln_rational(&chi)?;
        let ln_chi = hp.to_f64(&ln_chi);
        let d = ln_chi - ln_gp_prefactor(p.theta, n)?;
        Ok(d.exp_m1() * n as f64)
    });
    let values: Vec<f64> = values.into_iter().collect::<Result<_>>()?;

    let m = sizes.len();
    let a = DMatrix::from_fn(m, 3, |i, j| {
        let n = sizes[i] as f64;
        [n.sqrt(), 1.0, 1.0 / n][j]
    });
    let b = DVector::from_vec(values.clone());
    let sol = a
        .clone()
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::Numerical(format!("fit failed ({e}); R_N = {values:?}")))?;
    if sol.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical(format!(
            "fit did not converge; R_N = {values:?}"
        )));
    }
    let resid = (&a * &sol - &b).amax();
    let c = coeffs(p.r)?;
    Ok(TauFit {
        parity,
        r: p.r,
        sizes,
        scaled_remainders: values,
        sqrt_coeff: sol[0],
        tau: sol[1],
        inverse_coeff: sol[2],
        expected: match parity {
            Parity::Even => c.tau2,
            Parity::Odd => c.tau2_bar,
        },
        max_fit_residual: resid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn sizes() {
        assert_eq!(fit_sizes(Parity::Even, 200).len(), 11);
        assert_eq!(
            fit_sizes(Parity::Odd, 200),
            (101..=191).step_by(10).collect::<Vec<_>>()
        );
    }

    #[test]
    fn vanishes_at_one() {
        let f = estimate_tau(Parity::Even, &rat(1, 1), 60, 40, Execution::Parallel).unwrap();
        assert!(f.scaled_remainders.iter().all(|v| v.abs() < 1e-12));
        assert!(f.tau.abs() < 1e-10 && f.expected.abs() < 1e-20);
    }

    #[test]
    fn moderate_sizes_approach_closed_form() {
        for parity in [Parity::Even, Parity::Odd] {
            let f = estimate_tau(parity, &rat(2, 1), 80, 40, Execution::Parallel).unwrap();
            assert!(f.relative_error() < 0.05, "{f:?}");
            assert!(f.sqrt_coeff.abs() < 1e-3, "{f:?}");
        }
    }
}
