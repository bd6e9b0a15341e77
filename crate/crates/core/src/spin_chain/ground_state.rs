use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{build_hamiltonian, ground_energy, SectorBasis, SectorHamiltonian};
use crate::error::{Error, Result};
use crate::exact_arith::modular::{large_primes, rational_reconstruct, PrimeField};
use crate::exec::Execution;

/// Exact ground state normalised so that the `↓…↓↑…↑` component is `1`.
#[derive(Clone, Debug)]
pub struct GroundStateVector {
    pub basis: SectorBasis,
    pub x: BigRational,
    pub energy: BigRational,
    pub components: Vec<BigRational>,
}

impl GroundStateVector {
    pub fn sites(&self) -> usize {
        self.basis.sites()
    }

    pub fn component(&self, word: u64) -> Option<&BigRational> {
        self.basis.index_of(word).map(|i| &self.components[i])
    }

    pub fn all_positive(&self) -> bool {
        self.components.iter().all(Signed::is_positive)
    }

    /// `(H − E₀)v`, identically zero for a valid state.
    pub fn residual(&self, h: &SectorHamiltonian) -> Vec<BigRational> {
        let hv = h.apply(&self.components);
        hv.into_iter()
            .zip(&self.components)
            .map(|(a, c)| a - &self.energy * c)
            .collect()
    }
}

/// LU factors of a dense matrix over `F_p`, Montgomery form, row-major.
struct ModLu {
    field: PrimeField,
    n: usize,
    lu: Vec<u64>,
    perm: Vec<usize>,
}

impl ModLu {
    /// `None` when the matrix is singular modulo `p`.
    fn factor(field: PrimeField, n: usize, mut a: Vec<u64>, exec: Execution) -> Option<ModLu> {
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let piv = (k..n).find(|&r| a[r * n + k] != 0)?;
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                }
                perm.swap(k, piv);
            }
            let inv = field.inv(a[k * n + k]);
            let (head, tail) = a.split_at_mut((k + 1) * n);
            let pivot_row = &head[k * n..];
            exec.for_each_row(tail, n, |_, row| {
                if row[k] == 0 {
                    return;
                }
                let f = field.mul(row[k], inv);
                row[k] = f;
                for j in k + 1..n {
                    row[j] = field.sub(row[j], field.mul(f, pivot_row[j]));
                }
            });
        }
        Some(ModLu {
            field,
            n,
            lu: a,
            perm,
        })
    }

    fn solve(&self, b: &[u64]) -> Vec<u64> {
        let (f, n) = (&self.field, self.n);
        let mut y: Vec<u64> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 0..n {
            let row = &self.lu[i * n..i * n + i];
            let mut acc = y[i];
            for (l, yj) in row.iter().zip(&y[..i]) {
                acc = f.sub(acc, f.mul(*l, *yj));
            }
            y[i] = acc;
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n..(i + 1) * n];
            let mut acc = y[i];
            for j in i + 1..n {
                acc = f.sub(acc, f.mul(row[j], y[j]));
            }
            y[i] = f.mul(acc, f.inv(row[i]));
        }
        y
    }
}

/// Sparse integer matrix `s·(H − E₀)` restricted to rows/columns other than the base state.
struct ReducedSystem {
    keep: Vec<usize>,
    diag: Vec<BigInt>,
    off: BigInt,
    /// Neighbours inside the reduced index set.
    adj: Vec<Vec<usize>>,
    rhs: Vec<BigInt>,
}

impl ReducedSystem {
    fn new(h: &SectorHamiltonian, e0: &BigRational, base: usize) -> Self {
        let (diag_all, off, _) = h.shifted_integer_form(e0);
        let dim = h.dim();
        let mut pos = vec![usize::MAX; dim];
        let keep: Vec<usize> = (0..dim).filter(|&i| i != base).collect();
        for (k, &i) in keep.iter().enumerate() {
            pos[i] = k;
        }
        let mut adj = vec![Vec::new(); keep.len()];
        let mut rhs = vec![BigInt::zero(); keep.len()];
        for &(i, j) in h.hops() {
            match (pos[i], pos[j]) {
                (usize::MAX, b) | (b, usize::MAX) => rhs[b] = -off.clone(),
                (a, b) => {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        let diag = keep.iter().map(|&i| diag_all[i].clone()).collect();
        ReducedSystem {
            keep,
            diag,
            off,
            adj,
            rhs,
        }
    }

    fn len(&self) -> usize {
        self.keep.len()
    }

    fn dense_mod(&self, f: &PrimeField) -> Vec<u64> {
        let n = self.len();
        let mut a = vec![0u64; n * n];
        let off = f.from_bigint(&self.off);
        for i in 0..n {
            a[i * n + i] = f.from_bigint(&self.diag[i]);
            for &j in &self.adj[i] {
                a[i * n + j] = off;
            }
        }
        a
    }

    fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.len())
            .map(|i| {
                let mut acc = &self.diag[i] * &v[i];
                for &j in &self.adj[i] {
                    acc += &self.off * &v[j];
                }
                acc
            })
            .collect()
    }
}

/// Dixon lifting: `y ≡ A⁻¹b (mod p^k)`, reconstructed as rationals once stable.
fn lift_and_reconstruct(
    sys: &ReducedSystem,
    lu: &ModLu,
    max_steps: usize,
) -> Option<Vec<BigRational>> {
    let f = &lu.field;
    let p = BigInt::from(f.modulus());
    let n = sys.len();
    let mut b = sys.rhs.clone();
    let mut y = vec![BigInt::zero(); n];
    let mut pk = BigInt::one();
    let mut next_try = 2;
    for step in 1..=max_steps {
        let bm: Vec<u64> = b.iter().map(|v| f.from_bigint(v)).collect();
        let xm: Vec<BigInt> = lu
            .solve(&bm)
            .into_iter()
            .map(|v| BigInt::from(f.from_mont(v)))
            .collect();
        let ax = sys.apply(&xm);
        for i in 0..n {
            y[i] += &pk * &xm[i];
            let (q, r) = (&b[i] - &ax[i]).div_rem(&p);
            debug_assert!(r.is_zero());
            b[i] = q;
        }
        pk *= &p;
        if b.iter().all(Zero::is_zero) {
            // the solution is an integer vector already reached exactly
            return Some(y.into_iter().map(BigRational::from_integer).collect());
        }
        if step >= next_try {
            next_try = step + step / 4 + 1;
            let rec: Option<Vec<BigRational>> =
                y.iter().map(|v| rational_reconstruct(v, &pk)).collect();
            if let Some(v) = rec {
                if verify_reduced(sys, &v) {
                    return Some(v);
                }
            }
        }
    }
    None
}

fn verify_reduced(sys: &ReducedSystem, v: &[BigRational]) -> bool {
    let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: Vec<BigInt> = v
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let av = sys.apply(&scaled);
    av.iter().zip(&sys.rhs).all(|(a, r)| *a == r * &den)
}

fn rank_mod(h: &SectorHamiltonian, e0: &BigRational, f: &PrimeField) -> usize {
    let (diag, off, _) = h.shifted_integer_form(e0);
    let n = h.dim();
    let mut a = vec![0u64; n * n];
    let offm = f.from_bigint(&off);
    for i in 0..n {
        a[i * n + i] = f.from_bigint(&diag[i]);
    }
    for &(i, j) in h.hops() {
        a[i * n + j] = offm;
        a[j * n + i] = offm;
    }
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..n).find(|&r| a[r * n + col] != 0) else {
            continue;
        };
        for j in 0..n {
            a.swap(rank * n + j, piv * n + j);
        }
        let inv = f.inv(a[rank * n + col]);
        for r in rank + 1..n {
            let v = a[r * n + col];
            if v == 0 {
                continue;
            }
            let m = f.mul(v, inv);
            for j in col..n {
                a[r * n + j] = f.sub(a[r * n + j], f.mul(m, a[rank * n + j]));
            }
        }
        rank += 1;
    }
    rank
}

/// The exact ground state at rational `x`.
///
/// The kernel of `H − E₀` is found by fixing the base component to `1` and
/// solving the remaining system by one LU factorisation modulo a large prime,
/// p-adic lifting and rational reconstruction. A nonsingular reduced system
/// means rank `dim − 1`; together with the exact check `(H − E₀)v = 0` this
/// certifies a one-dimensional kernel.
pub fn ground_state(sites: usize, x: &BigRational) -> Result<GroundStateVector> {
    ground_state_with(sites, x, Execution::default())
}

pub fn ground_state_with(
    sites: usize,
    x: &BigRational,
    exec: Execution,
) -> Result<GroundStateVector> {
    let h = build_hamiltonian(sites, x)?;
    let e0 = ground_energy(sites, x)?;
    let basis = h.basis().clone();
    let dim = h.dim();
    let base = basis.base_index();
    let mut components = vec![BigRational::zero(); dim];
    components[base] = BigRational::one();
    if dim > 1 {
        let sys = ReducedSystem::new(&h, &e0, base);
        let mut solved = None;
        for &p in large_primes().iter().take(4) {
            let field = PrimeField::new(p);
            let Some(lu) = ModLu::factor(field, sys.len(), sys.dense_mod(&field), exec) else {
                continue;
            };
            // each lifting step gains ~62 bits; 4000 steps is far beyond any in-scope size
            solved = Some(lift_and_reconstruct(&sys, &lu, 4000).ok_or_else(|| {
                Error::Numerical(format!("lifting did not stabilise for N = {sites}"))
            })?);
            break;
        }
        let Some(v) = solved else {
            let f = PrimeField::new(large_primes()[0]);
            let rank = rank_mod(&h, &e0, &f);
            return Err(match rank {
                r if r == dim => Error::NotEigenvalue(sites),
                r if r + 1 < dim => Error::Degenerate {
                    sites,
                    dim: dim - r,
                },
                _ => Error::Consistency(format!("base component vanishes for N = {sites}")),
            });
        };
        for (k, &i) in sys.keep.iter().enumerate() {
            components[i] = v[k].clone();
        }
    }
    let gs = GroundStateVector {
        basis,
        x: x.clone(),
        energy: e0,
        components,
    };
    if gs.residual(&h).iter().any(|r| !r.is_zero()) {
        if dim == 1 {
            return Err(Error::NotEigenvalue(sites));
        }
        return Err(Error::Consistency(format!(
            "(H - E0)v != 0 for N = {sites}"
        )));
    }
    Ok(gs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn two_sites_by_hand() {
        for x in [rat(1, 3), rat(2, 1), rat(7, 5)] {
            let gs = ground_state(2, &x).unwrap();
            assert_eq!(gs.components, vec![x.clone(), BigRational::one()]);
        }
        let one = ground_state(1, &rat(3, 7)).unwrap();
        assert_eq!(one.components, vec![BigRational::one()]);
    }

    #[test]
    fn small_chains_are_positive_and_exact() {
        for n in 3..=8 {
            for x in [rat(1, 2), rat(1, 1), rat(7, 5)] {
                let gs = ground_state(n, &x).unwrap();
                let h = build_hamiltonian(n, &x).unwrap();
                assert!(gs.residual(&h).iter().all(Zero::is_zero));
                assert!(gs.all_positive(), "N = {n}, x = {x}");
                assert!(gs.components[gs.basis.base_index()].is_one());
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let x = rat(2, 3);
        let a = ground_state_with(9, &x, Execution::Sequential).unwrap();
        let b = ground_state_with(9, &x, Execution::Parallel).unwrap();
        assert_eq!(a.components, b.components);
    }

    #[test]
    fn wrong_energy_has_full_rank() {
        let x = rat(1, 1);
        let h = build_hamiltonian(4, &x).unwrap();
        let f = PrimeField::new(large_primes()[0]);
        let e0 = ground_energy(4, &x).unwrap();
        assert_eq!(rank_mod(&h, &e0, &f), h.dim() - 1);
        assert_eq!(rank_mod(&h, &(e0 + rat(1, 3)), &f), h.dim());
    }
}
