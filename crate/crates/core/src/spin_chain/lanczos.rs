use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::build_hamiltonian;
use crate::error::{arg, Error, Result};

/// Floating-point lowest eigenpair of the sector Hamiltonian.
#[derive(Clone, Debug)]
pub struct FloatGroundState {
    pub energy: f64,
    /// Normalised so that the base component is `1`.
    pub vector: Vec<f64>,
    pub residual_norm: f64,
    pub restarts: usize,
}

const KRYLOV: usize = 40;
const MAX_RESTARTS: usize = 200;
const MAX_SITES: usize = 22;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = dot(v, v).sqrt();
    v.iter_mut().for_each(|c| *c /= n);
    n
}

/// Restarted Lanczos with full reorthogonalisation inside each cycle.
///
/// Only a cross-check; the exact kernel is the reference for every exact claim.
pub fn ground_state_float(sites: usize, x: &BigRational, tol: f64) -> Result<FloatGroundState> {
    if sites > MAX_SITES {
        return arg(format!("floating ground state limited to N <= {MAX_SITES}"));
    }
    let h = build_hamiltonian(sites, x)?;
    let dim = h.dim();
    let diag = h.diagonal_f64();
    let base = h.basis().base_index();
    if dim == 1 {
        return Ok(FloatGroundState {
            energy: diag[0],
            vector: vec![1.0],
            residual_norm: 0.0,
            restarts: 0,
        });
    }
    let m = KRYLOV.min(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(sites as u64);
    // a positive start vector overlaps the Perron ground state
    let mut start: Vec<f64> = (0..dim).map(|_| 0.5 + rng.gen::<f64>()).collect();
    normalize(&mut start);
    let mut w = vec![0.0; dim];
    for restart in 0..MAX_RESTARTS {
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m);
        let mut alpha = Vec::with_capacity(m);
        let mut beta: Vec<f64> = Vec::with_capacity(m);
        basis.push(start.clone());
        for j in 0..m {
            h.apply_f64(&diag, &basis[j], &mut w);
            let a = dot(&w, &basis[j]);
            alpha.push(a);
            for b in &basis {
                let c = dot(&w, b);
                w.iter_mut().zip(b).for_each(|(wi, bi)| *wi -= c * bi);
            }
            if j + 1 == m {
                break;
            }
            let nb = dot(&w, &w).sqrt();
            if nb < 1e-14 {
                break;
            }
            beta.push(nb);
            basis.push(w.iter().map(|c| c / nb).collect());
        }
        let k = alpha.len();
        let mut t = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alpha[i];
            if i + 1 < k {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let (imin, &theta) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        let y = eig.eigenvectors.column(imin);
        let mut ritz = vec![0.0; dim];
        for (i, b) in basis.iter().enumerate() {
            ritz.iter_mut().zip(b).for_each(|(r, bi)| *r += y[i] * bi);
        }
        normalize(&mut ritz);
        h.apply_f64(&diag, &ritz, &mut w);
        let res = w
            .iter()
            .zip(&ritz)
            .map(|(a, b)| (a - theta * b).powi(2))
            .sum::<f64>()
            .sqrt();
        if res < tol {
            let scale = ritz[base];
            ritz.iter_mut().for_each(|c| *c /= scale);
            return Ok(FloatGroundState {
                energy: theta,
                vector: ritz,
                residual_norm: res,
                restarts: restart,
            });
        }
        start = ritz;
    }
    Err(Error::Numerical(format!(
        "Lanczos did not converge for N = {sites} after {MAX_RESTARTS} restarts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;
    use crate::spin_chain::ground_energy;
    use num_traits::ToPrimitive;

    #[test]
    fn energy_matches_closed_form() {
        let x = rat(1, 2);
        let gs = ground_state_float(14, &x, 1e-9).unwrap();
        let e0 = ground_energy(14, &x).unwrap().to_f64().unwrap();
        assert!(
            ((gs.energy - e0) / e0).abs() < 1e-10,
            "{} vs {e0}",
            gs.energy
        );
    }

    #[test]
    fn two_sites_direction() {
        let gs = ground_state_float(2, &rat(2, 1), 1e-12).unwrap();
        assert!((gs.vector[0] - 2.0).abs() < 1e-10 && (gs.vector[1] - 1.0).abs() < 1e-12);
        let one = ground_state_float(1, &rat(3, 1), 1e-12).unwrap();
        assert_eq!(one.vector, vec![1.0]);
    }
}
