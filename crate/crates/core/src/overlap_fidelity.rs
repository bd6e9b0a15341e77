//! Bipartite overlaps `⟨ψ_N|(|ψ_{N₁}⟩ ⊗ |ψ_{N₂}⟩)` and the logarithmic
//! bipartite fidelity.
//!
//! Two independent routes give the overlap: direct contraction of exact
//! ground states, and closed-form binomial determinants in `x`.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::combinatorics::{binom, gamma};
use crate::error::{Error, Result};
use crate::exact_arith::{int_det, poly_det, IntPolynomial};
use crate::exec::Execution;
use crate::hp::HpContext;
use crate::spin_chain::{ground_state_with, GroundStateVector};

/// Which of the two binomial determinants applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DeterminantKind {
    /// Both halves even.
    EvenEven,
    /// Exactly one half odd.
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Route {
    Contraction,
    Determinant,
}

/// `(kind, n)` for a bipartition, `None` when both halves are odd.
pub fn determinant_shape(n1: usize, n2: usize) -> Option<(DeterminantKind, usize)> {
    let n = (n1 + n2) / 2;
    match (n1 % 2, n2 % 2) {
        (0, 0) => Some((DeterminantKind::EvenEven, n)),
        (1, 1) => None,
        _ => Some((DeterminantKind::Mixed, n)),
    }
}

/// Integer pair `(b_sq, b_lin)` with entry `(x−1)²·b_sq + x·b_lin` at 1-based `(i, j)`.
fn entry_binomials(kind: DeterminantKind, i: i64, j: i64) -> (BigInt, BigInt) {
    let r = match kind {
        DeterminantKind::EvenEven => (binom(i + j - 2, 2 * j - i - 1), binom(i + j, 2 * j - i)),
        DeterminantKind::Mixed => (binom(i + j - 1, 2 * j - i), binom(i + j + 1, 2 * j - i + 1)),
    };
    (r.0.expect("top index >= 0"), r.1.expect("top index >= 0"))
}

/// The `n × n` binomial matrix as polynomials in `x`.
pub fn binomial_matrix(kind: DeterminantKind, n: usize) -> Vec<Vec<IntPolynomial>> {
    let sq = IntPolynomial::from_i64(&[1, -2, 1]);
    let lin = IntPolynomial::x();
    (1..=n as i64)
        .map(|i| {
            (1..=n as i64)
                .map(|j| {
                    let (a, b) = entry_binomials(kind, i, j);
                    &sq.scale(&a) + &lin.scale(&b)
                })
                .collect()
        })
        .collect()
}

/// Overlap as an exact polynomial in `x`, with the combinatorial prefactor included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapPolynomial {
    pub n1: usize,
    pub n2: usize,
    pub poly: IntPolynomial,
    /// Set for odd-odd bipartitions, where the overlap vanishes identically.
    pub vanishes: bool,
}

impl OverlapPolynomial {
    pub fn at(&self, x: &BigRational) -> BigRational {
        self.poly.eval(x)
    }
}

pub fn overlap_determinant_poly(n1: usize, n2: usize) -> OverlapPolynomial {
    let Some((kind, n)) = determinant_shape(n1, n2) else {
        return OverlapPolynomial {
            n1,
            n2,
            poly: IntPolynomial::zero(),
            vanishes: true,
        };
    };
    let pref = gamma(n1).into_inner() * gamma(n2).into_inner();
    let det = poly_det(&binomial_matrix(kind, n));
    OverlapPolynomial {
        n1,
        n2,
        poly: det.scale(&pref),
        vanishes: false,
    }
}

/// Determinant value at rational `x = p/q` via an integer matrix scaled by `q²`.
pub fn overlap_determinant_at(
    n1: usize,
    n2: usize,
    x: &BigRational,
    exec: Execution,
) -> Result<BigRational> {
    check_x(x)?;
    let Some((kind, n)) = determinant_shape(n1, n2) else {
        return Ok(BigRational::zero());
    };
    let pref = gamma(n1).into_inner() * gamma(n2).into_inner();
    Ok(binomial_det_at(kind, n, x, exec)? * BigRational::from_integer(pref))
}

/// The bare `n × n` binomial determinant at rational `x`.
pub fn binomial_det_at(
    kind: DeterminantKind,
    n: usize,
    x: &BigRational,
    exec: Execution,
) -> Result<BigRational> {
    let (p, q) = (x.numer(), x.denom());
    let pm = p - q;
    let (sq, lin) = (&pm * &pm, p * q);
    let m: Vec<Vec<BigInt>> = (1..=n as i64)
        .map(|i| {
            (1..=n as i64)
                .map(|j| {
                    let (a, b) = entry_binomials(kind, i, j);
                    &sq * a + &lin * b
                })
                .collect()
        })
        .collect();
    let det = int_det(m, exec)?;
    let den = num_traits::pow(q.clone(), 2 * n);
    Ok(BigRational::new(det, den))
}

fn check_x(x: &BigRational) -> Result<()> {
    if !x.is_positive() {
        return Err(Error::Argument(format!("x must be positive, got {x}")));
    }
    Ok(())
}

/// Contract already computed ground states; `None` halves stand for zero sites.
pub fn contract(
    full: &GroundStateVector,
    left: Option<&GroundStateVector>,
    right: Option<&GroundStateVector>,
) -> BigRational {
    let one = vec![BigRational::one()];
    let (lw, lc, ls): (Vec<u64>, &[BigRational], usize) = match left {
        Some(g) => (g.basis.states().to_vec(), &g.components, g.sites()),
        None => (vec![0], &one, 0),
    };
    let (rw, rc, rs): (Vec<u64>, &[BigRational], usize) = match right {
        Some(g) => (g.basis.states().to_vec(), &g.components, g.sites()),
        None => (vec![0], &one, 0),
    };
    assert_eq!(ls + rs, full.sites());
    let mut acc = BigRational::zero();
    for (a, ca) in lw.iter().zip(lc) {
        for (b, cb) in rw.iter().zip(rc) {
            let word = (a << rs) | b;
            if let Some(c) = full.component(word) {
                acc += c * ca * cb;
            }
        }
    }
    acc
}

/// The overlap by contracting exact ground states.
pub fn overlap_contract(
    n1: usize,
    n2: usize,
    x: &BigRational,
    exec: Execution,
) -> Result<BigRational> {
    check_x(x)?;
    if n1 + n2 == 0 {
        return Ok(BigRational::one());
    }
    if n1 % 2 == 1 && n2 % 2 == 1 {
        return Ok(BigRational::zero());
    }
    let full = ground_state_with(n1 + n2, x, exec)?;
    if n1 == 0 || n2 == 0 {
        return Ok(full.components.iter().map(|c| c * c).sum());
    }
    let left = ground_state_with(n1, x, exec)?;
    let right = ground_state_with(n2, x, exec)?;
    Ok(contract(&full, Some(&left), Some(&right)))
}

pub fn overlap(
    n1: usize,
    n2: usize,
    x: &BigRational,
    route: Route,
    exec: Execution,
) -> Result<BigRational> {
    match route {
        Route::Contraction => overlap_contract(n1, n2, x, exec),
        Route::Determinant => overlap_determinant_at(n1, n2, x, exec),
    }
}

/// `O_{N₁,N₂}² / (O_{N₁,0}·O_{N₂,0}·O_{N,0})` from the four overlaps.
pub fn fidelity_ratio(
    o12: &BigRational,
    o1: &BigRational,
    o2: &BigRational,
    o: &BigRational,
) -> BigRational {
    o12 * o12 / (o1 * o2 * o)
}

#[derive(Debug, Clone)]
pub struct FidelityValue {
    pub n1: usize,
    pub n2: usize,
    pub x: BigRational,
    pub overlap: BigRational,
    /// Exact argument of the logarithm.
    pub ratio: BigRational,
    pub value: BigFloat,
}

impl FidelityValue {
    pub fn to_f64(&self, hp: &mut HpContext) -> f64 {
        hp.to_f64(&self.value)
    }
}

/// The four overlaps entering the fidelity, for either route.
pub fn fidelity_overlaps(
    n1: usize,
    n2: usize,
    x: &BigRational,
    route: Route,
    exec: Execution,
) -> Result<[BigRational; 4]> {
    if n1 % 2 == 1 && n2 % 2 == 1 {
        return Err(Error::IllDefined(n1, n2));
    }
    let o12 = overlap(n1, n2, x, route, exec)?;
    let o1 = overlap(n1, 0, x, route, exec)?;
    let o2 = overlap(n2, 0, x, route, exec)?;
    let o = overlap(n1 + n2, 0, x, route, exec)?;
    Ok([o12, o1, o2, o])
}

/// `F = −ln(O_{N₁,N₂}² / (O_{N₁,0}·O_{N₂,0}·O_{N,0}))` at the context's precision.
pub fn lbf(
    n1: usize,
    n2: usize,
    x: &BigRational,
    route: Route,
    hp: &mut HpContext,
) -> Result<FidelityValue> {
    check_x(x)?;
    let [o12, o1, o2, o] = fidelity_overlaps(n1, n2, x, route, Execution::Sequential)?;
    let ratio = fidelity_ratio(&o12, &o1, &o2, &o);
    let ln = hp.ln_rational(&ratio)?;
    Ok(FidelityValue {
        n1,
        n2,
        x: x.clone(),
        overlap: o12,
        ratio,
        value: ln.neg(),
    })
}

/// Fidelities for many bipartitions in parallel; output order follows the input.
pub fn lbf_sweep(
    pairs: &[(usize, usize)],
    x: &BigRational,
    route: Route,
    digits: usize,
    exec: Execution,
) -> Result<Vec<FidelityValue>> {
    let out = exec.map(pairs.to_vec(), |(n1, n2)| {
        let mut hp = HpContext::new(digits)?;
        lbf(n1, n2, x, route, &mut hp)
    });
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn small_determinants_by_hand() {
        assert_eq!(overlap_determinant_poly(2, 0).poly, p(&[1, 0, 1]));
        assert_eq!(overlap_determinant_poly(2, 1).poly, p(&[1, 1, 1]));
        assert_eq!(overlap_determinant_poly(2, 2).poly, p(&[2, 2, 3, 2, 2]));
        assert_eq!(overlap_determinant_poly(0, 0).poly, p(&[1]));
        let odd = overlap_determinant_poly(1, 1);
        assert!(odd.vanishes && odd.poly.is_zero());
    }

    #[test]
    fn integer_route_matches_polynomial_route() {
        for (n1, n2) in [(2, 2), (4, 3), (6, 0), (5, 0), (3, 8)] {
            let poly = overlap_determinant_poly(n1, n2);
            for x in [rat(1, 3), rat(7, 5), rat(2, 1)] {
                let v = overlap_determinant_at(n1, n2, &x, Execution::Sequential).unwrap();
                assert_eq!(v, poly.at(&x), "({n1},{n2}) at {x}");
            }
        }
    }

    #[test]
    fn contraction_small_cases() {
        let x = rat(3, 2);
        let e = Execution::Sequential;
        assert_eq!(overlap_contract(0, 0, &x, e).unwrap(), BigRational::one());
        assert!(overlap_contract(1, 1, &x, e).unwrap().is_zero());
        assert_eq!(
            overlap_contract(2, 0, &x, e).unwrap(),
            &x * &x + BigRational::one()
        );
    }

    #[test]
    fn fidelity_at_two_plus_two() {
        let mut hp = HpContext::new(60).unwrap();
        let f = lbf(2, 2, &rat(1, 1), Route::Determinant, &mut hp).unwrap();
        assert_eq!(f.ratio, rat(121, 132));
        let want = hp.ln_rational(&rat(132, 121)).unwrap();
        assert_eq!(
            hp.format(&f.value, 50).unwrap(),
            hp.format(&want, 50).unwrap()
        );
        let zero = lbf(6, 0, &rat(1, 2), Route::Determinant, &mut hp).unwrap();
        assert!(zero.ratio.is_one());
        assert!(matches!(
            lbf(1, 3, &rat(1, 1), Route::Determinant, &mut hp),
            Err(Error::IllDefined(1, 3))
        ));
    }
}
