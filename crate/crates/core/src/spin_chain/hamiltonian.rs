use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::SectorBasis;
use crate::error::{arg, Result};
use crate::exact_arith::rat;

/// The XXZ Hamiltonian at `Δ = -1/2` restricted to one sector.
///
/// Off-diagonal entries are all `-1` and stored as an edge list of the hopping
/// graph; the diagonal holds the `σᶻσᶻ` and boundary-field terms.
#[derive(Clone, Debug)]
pub struct SectorHamiltonian {
    basis: SectorBasis,
    x: BigRational,
    diag: Vec<BigRational>,
    hops: Vec<(usize, usize)>,
}

/// Boundary fields `(p, p̄)` at parameter `x`.
pub fn boundary_fields(x: &BigRational) -> (BigRational, BigRational) {
    let quarter = rat(1, 4);
    let half = rat(1, 2);
    let p = &quarter - &half * x;
    let pbar = &quarter - &half / x;
    (p, pbar)
}

fn check_x(x: &BigRational) -> Result<()> {
    if !x.is_positive() {
        return arg(format!("boundary parameter x must be positive, got {x}"));
    }
    Ok(())
}

pub fn build_hamiltonian(sites: usize, x: &BigRational) -> Result<SectorHamiltonian> {
    check_x(x)?;
    if sites == 0 {
        return arg("chain needs at least one site");
    }
    let basis = SectorBasis::new(sites);
    let (p, pbar) = boundary_fields(x);
    let quarter = rat(1, 4);
    let sz = |w: u64, k: usize| if basis.is_down(w, k) { -1i64 } else { 1 };
    let mut diag = Vec::with_capacity(basis.len());
    let mut hops = Vec::new();
    for (i, &w) in basis.states().iter().enumerate() {
        let bonds: i64 = (1..sites).map(|k| sz(w, k) * sz(w, k + 1)).sum();
        let mut d = &quarter * BigRational::from_integer(bonds.into());
        if sites == 1 {
            d += (&p + &pbar) * BigRational::from_integer(sz(w, 1).into());
        } else {
            d += &p * BigRational::from_integer(sz(w, 1).into());
            d += &pbar * BigRational::from_integer(sz(w, sites).into());
        }
        diag.push(d);
        for k in 1..sites {
            if basis.is_down(w, k) != basis.is_down(w, k + 1) {
                let shift = sites - k - 1;
                let flipped = w ^ (0b11 << shift);
                let j = basis.index_of(flipped).expect("hop stays in the sector");
                if i < j {
                    hops.push((i, j));
                }
            }
        }
    }
    Ok(SectorHamiltonian {
        basis,
        x: x.clone(),
        diag,
        hops,
    })
}

/// `-(3N-1)/4 - (1-x)²/(2x)`.
pub fn ground_energy(sites: usize, x: &BigRational) -> Result<BigRational> {
    check_x(x)?;
    let one = BigRational::one();
    let d = &one - x;
    Ok(-rat(3 * sites as i64 - 1, 4) - &d * &d / (x * BigRational::from_integer(2.into())))
}

impl SectorHamiltonian {
    pub fn basis(&self) -> &SectorBasis {
        &self.basis
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diagonal(&self) -> &[BigRational] {
        &self.diag
    }

    /// Pairs `i < j` with `H[i][j] = H[j][i] = -1`.
    pub fn hops(&self) -> &[(usize, usize)] {
        &self.hops
    }

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = self.diag.iter().zip(v).map(|(d, c)| d * c).collect();
        for &(i, j) in &self.hops {
            out[i] -= &v[j];
            out[j] -= &v[i];
        }
        out
    }

    pub fn apply_f64(&self, diag: &[f64], v: &[f64], out: &mut [f64]) {
        for ((o, d), c) in out.iter_mut().zip(diag).zip(v) {
            *o = d * c;
        }
        for &(i, j) in &self.hops {
            out[i] -= v[j];
            out[j] -= v[i];
        }
    }

    pub fn diagonal_f64(&self) -> Vec<f64> {
        self.diag
            .iter()
            .map(|d| d.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// `s·(H − E)` with the smallest positive integer `s` clearing all denominators.
    ///
    /// Returns the integer diagonal, the integer off-diagonal value and `s`.
    pub fn shifted_integer_form(&self, e: &BigRational) -> (Vec<BigInt>, BigInt, BigInt) {
        let s = self
            .diag
            .iter()
            .map(|d| (d - e).denom().clone())
            .fold(BigInt::one(), |acc, den| {
                num_integer::Integer::lcm(&acc, &den)
            });
        let sr = BigRational::from_integer(s.clone());
        let diag = self
            .diag
            .iter()
            .map(|d| {
                let v = (d - e) * &sr;
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        (diag, -s.clone(), s)
    }

    /// Whether the hopping graph connects every basis state.
    pub fn is_connected(&self) -> bool {
        let n = self.dim();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &self.hops {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}
