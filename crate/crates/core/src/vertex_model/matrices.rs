use super::state::{StateVector, Word};
use super::{br, inverse, mono, q_pow, times, Identity, BETA, NVARS};
use crate::exact_arith::{Monomial, MultiLaurent};

/// `Ř(w)` with weights cleared of the common denominator `[q/w]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    /// `[qw]`
    pub a: MultiLaurent,
    /// `[w]`
    pub b: MultiLaurent,
    /// `[q]`
    pub c: MultiLaurent,
    /// `[q/w]`
    pub den: MultiLaurent,
}

pub fn r_matrix(w: &Monomial) -> RMatrix {
    RMatrix {
        a: br(&times(&q_pow(1), w)),
        b: br(w),
        c: br(&q_pow(1)),
        den: br(&times(&q_pow(1), &inverse(w))),
    }
}

impl RMatrix {
    /// Cleared entry in the basis `↑↑, ↑↓, ↓↑, ↓↓`.
    pub fn entry(&self, row: usize, col: usize) -> MultiLaurent {
        match (row, col) {
            (0, 0) | (3, 3) => self.a.clone(),
            (1, 1) | (2, 2) => self.c.clone(),
            (1, 2) | (2, 1) => self.b.clone(),
            _ => MultiLaurent::zero(self.a.nvars()),
        }
    }

    /// Cleared action on sites `k, k+1` (0-based).
    pub fn apply(&self, v: &StateVector, k: usize) -> StateVector {
        let shift = v.sites() - k - 2;
        let mut out = StateVector::zero(v.sites(), v.nvars());
        for (w, c) in v.components() {
            let pair = ((w >> shift) & 0b11) as usize;
            let rest = w & !(0b11 << shift);
            for row in 0..4 {
                let e = self.entry(row, pair);
                if !e.is_empty() {
                    out.add_to(rest | ((row as Word) << shift), &(&e * c));
                }
            }
        }
        out
    }
}

/// `K(z; β) = diag(1, [βz]/[β/z])`, cleared to `diag([β/z], [βz])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMatrix {
    pub num: MultiLaurent,
    pub den: MultiLaurent,
}

pub fn k_matrix(z: &Monomial, beta: &Monomial) -> KMatrix {
    KMatrix {
        num: br(&times(beta, z)),
        den: br(&times(beta, &inverse(z))),
    }
}

impl KMatrix {
    pub fn apply(&self, v: &StateVector, k: usize) -> StateVector {
        let mut out = StateVector::zero(v.sites(), v.nvars());
        for (w, c) in v.components() {
            let f = if v.is_down(w, k) {
                &self.num
            } else {
                &self.den
            };
            out.add_to(w, &(f * c));
        }
        out
    }
}

fn for_all_basis<F>(sites: usize, mut f: F) -> usize
where
    F: FnMut(&StateVector) -> StateVector,
{
    (0..1u32 << sites)
        .map(|w| f(&StateVector::basis(sites, NVARS, w)).term_count())
        .sum()
}

fn zv(k: usize) -> Monomial {
    mono(&[(super::z(k), 1)])
}

/// `Ř₁₂(z/w)Ř₂₃(z)Ř₁₂(w) = Ř₂₃(w)Ř₁₂(z)Ř₂₃(z/w)` on every basis vector of `V³`.
pub fn verify_yang_baxter() -> Identity {
    let (z, w) = (zv(0), zv(1));
    let zw = times(&z, &inverse(&w));
    let (r_zw, r_z, r_w) = (r_matrix(&zw), r_matrix(&z), r_matrix(&w));
    let n = for_all_basis(3, |e| {
        let lhs = r_zw.apply(&r_z.apply(&r_w.apply(e, 0), 1), 0);
        let rhs = r_w.apply(&r_z.apply(&r_zw.apply(e, 1), 0), 1);
        lhs.minus(&rhs)
    });
    Identity::new("Yang-Baxter equation", n)
}

/// `Ř₁₂(z/w)K₁(z)Ř₁₂(zw)K₁(w) = K₁(w)Ř₁₂(zw)K₁(z)Ř₁₂(z/w)`.
pub fn verify_boundary_yang_baxter() -> Identity {
    let (z, w, b) = (zv(0), zv(1), mono(&[(BETA, 1)]));
    let r_ratio = r_matrix(&times(&z, &inverse(&w)));
    let r_prod = r_matrix(&times(&z, &w));
    let (kz, kw) = (k_matrix(&z, &b), k_matrix(&w, &b));
    let n = for_all_basis(2, |e| {
        let lhs = r_ratio.apply(&kz.apply(&r_prod.apply(&kw.apply(e, 0), 0), 0), 0);
        let rhs = kw.apply(&r_prod.apply(&kz.apply(&r_ratio.apply(e, 0), 0), 0), 0);
        lhs.minus(&rhs)
    });
    Identity::new("boundary Yang-Baxter equation", n)
}

/// `Ř(z⁻¹)Ř(z) = 1`, i.e. the cleared product is `[qz][q/z]·1`.
pub fn verify_unitarity() -> Identity {
    let z = zv(0);
    let (r, ri) = (r_matrix(&z), r_matrix(&inverse(&z)));
    let norm = &r.den * &ri.den;
    let n = for_all_basis(2, |e| ri.apply(&r.apply(e, 0), 0).minus(&e.scale(&norm)));
    Identity::new("R-matrix unitarity", n)
}

/// `K(z)K(z⁻¹) = 1`.
pub fn verify_k_inversion() -> Identity {
    let (z, b) = (zv(0), mono(&[(BETA, 1)]));
    let (k, ki) = (k_matrix(&z, &b), k_matrix(&inverse(&z), &b));
    let n = for_all_basis(1, |e| {
        let norm = &k.den * &ki.den;
        ki.apply(&k.apply(e, 0), 0).minus(&e.scale(&norm))
    });
    let at_one = k_matrix(&mono(&[]), &b);
    let trivial = (&at_one.num - &at_one.den).len();
    Identity::new("K-matrix inversion", n + trivial)
}

/// `Ř(1)` is the identity.
pub fn verify_r_at_one() -> Identity {
    let r = r_matrix(&mono(&[]));
    let n = for_all_basis(2, |e| r.apply(e, 0).minus(&e.scale(&r.den)));
    Identity::new("R(1) = 1", n)
}

/// `Ř(q⁻¹)|s⟩ = (2[q]/[q²])|s⟩`.
pub fn verify_singlet_eigenvalue() -> Identity {
    let r = r_matrix(&q_pow(-1));
    let s = StateVector::singlet(NVARS);
    // the cleared denominator [q/q⁻¹] is [q²]
    let want = s.scale(&(&br(&q_pow(1)) + &br(&q_pow(1))));
    Identity::new(
        "R(1/q) on the singlet",
        r.apply(&s, 0).minus(&want).term_count(),
    )
}
