//! Determinants: fraction-free Bareiss over integral domains, Gaussian
//! elimination over `Q(ω)` and partial-pivot LU in complex doubles.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ExactScalar, IntPolynomial, MultiLaurent};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// A commutative ring without zero divisors in which exact quotients can be computed.
pub trait IntegralDomain: Clone + PartialEq + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_el(&self) -> bool;
    fn mul_el(&self, o: &Self) -> Self;
    fn sub_el(&self, o: &Self) -> Self;
    fn neg_el(&self) -> Self;
    /// `self / d`, assumed exact.
    fn div_exact_el(&self, d: &Self) -> Result<Self>;
}

impl IntegralDomain for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_el(&self) -> bool {
        self.is_zero()
    }
    fn mul_el(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_el(&self, o: &Self) -> Self {
        self - o
    }
    fn neg_el(&self) -> Self {
        -self
    }
    fn div_exact_el(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible(format!("{self} / {d}")))
        }
    }
}

impl IntegralDomain for IntPolynomial {
    fn zero_like(&self) -> Self {
        IntPolynomial::zero()
    }
    fn one_like(&self) -> Self {
        IntPolynomial::one()
    }
    fn is_zero_el(&self) -> bool {
        self.is_zero()
    }
    fn mul_el(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_el(&self, o: &Self) -> Self {
        self - o
    }
    fn neg_el(&self) -> Self {
        -self
    }
    fn div_exact_el(&self, d: &Self) -> Result<Self> {
        self.div_exact(d)
    }
}

impl IntegralDomain for MultiLaurent {
    fn zero_like(&self) -> Self {
        MultiLaurent::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        MultiLaurent::one(self.nvars())
    }
    fn is_zero_el(&self) -> bool {
        self.is_empty()
    }
    fn mul_el(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_el(&self, o: &Self) -> Self {
        self - o
    }
    fn neg_el(&self) -> Self {
        -self
    }
    fn div_exact_el(&self, d: &Self) -> Result<Self> {
        self.exact_div(d)
    }
}

fn check_square<T>(m: &[Vec<T>]) -> Result<()> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Argument("determinant of a non-square matrix".into()));
    }
    Ok(())
}

/// Bareiss determinant. `one` is returned for the empty matrix.
///
/// Each step divides by the previous pivot, which is exact in any integral
/// domain. A zero pivot is replaced by a row swap; no candidate means the
/// determinant vanishes.
pub fn bareiss_det<T: IntegralDomain>(mut m: Vec<Vec<T>>, one: T, exec: Execution) -> Result<T> {
    check_square(&m)?;
    let n = m.len();
    let mut prev = one.clone();
    let mut negate = false;
    for k in 0..n {
        if m[k][k].is_zero_el() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero_el()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(one.zero_like()),
            }
        }
        if k + 1 == n {
            break;
        }
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = &pivot_row[k];
        let prev_ref = &prev;
        let err = std::sync::Mutex::new(None);
        exec.for_each_mut(tail, |_, row| {
            let lead = row[k].clone();
            for j in k + 1..n {
                let v = pivot.mul_el(&row[j]).sub_el(&lead.mul_el(&pivot_row[j]));
                match v.div_exact_el(prev_ref) {
                    Ok(q) => row[j] = q,
                    Err(e) => {
                        *err.lock().unwrap() = Some(e);
                        return;
                    }
                }
            }
            row[k] = lead.zero_like();
        });
        if let Some(e) = err.into_inner().unwrap() {
            return Err(e);
        }
        prev = m[k][k].clone();
    }
    let det = if n == 0 { one } else { m[n - 1][n - 1].clone() };
    Ok(if negate { det.neg_el() } else { det })
}

pub fn int_det(m: Vec<Vec<BigInt>>, exec: Execution) -> Result<BigInt> {
    bareiss_det(m, BigInt::one(), exec)
}

/// Determinant of a matrix of integer polynomials.
pub fn poly_det(m: &[Vec<IntPolynomial>]) -> IntPolynomial {
    bareiss_det(m.to_vec(), IntPolynomial::one(), Execution::Sequential)
        .expect("Bareiss quotients are exact over Z[x]")
}

pub fn laurent_det(m: Vec<Vec<MultiLaurent>>, nvars: usize) -> Result<MultiLaurent> {
    bareiss_det(m, MultiLaurent::one(nvars), Execution::Sequential)
}

/// Gaussian elimination over `Q(ω)`.
#[allow(clippy::needless_range_loop)]
pub fn field_det(mut m: Vec<Vec<ExactScalar>>) -> Result<ExactScalar> {
    check_square(&m)?;
    let n = m.len();
    let mut det = ExactScalar::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Ok(ExactScalar::zero());
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let inv = m[k][k].inv()?;
        det = &det * &m[k][k];
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let f = &m[r][k] * &inv;
            for j in k + 1..n {
                let d = &f * &m[k][j];
                m[r][j] -= &d;
            }
        }
    }
    Ok(det)
}

/// Partial-pivot LU determinant in complex doubles.
#[allow(clippy::needless_range_loop)]
pub fn complex_det(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&a, &b| m[a][k].norm().total_cmp(&m[b][k].norm()))
            .unwrap();
        if m[p][k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= m[k][k];
        for r in k + 1..n {
            let f = m[r][k] / m[k][k];
            for j in k + 1..n {
                let d = f * m[k][j];
                m[r][j] -= d;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn cofactor<T: IntegralDomain + std::ops::Add<Output = T>>(m: &[Vec<T>], one: &T) -> T {
        let n = m.len();
        if n == 0 {
            return one.clone();
        }
        let mut acc = one.zero_like();
        for j in 0..n {
            let minor: Vec<Vec<T>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let t = m[0][j].mul_el(&cofactor(&minor, one));
            acc = if j % 2 == 0 { acc + t } else { acc.sub_el(&t) };
        }
        acc
    }

    #[test]
    fn small_polynomial_determinants() {
        assert_eq!(poly_det(&[vec![p(&[2])]]), p(&[2]));
        let m = vec![
            vec![p(&[1, 0, 1]), p(&[0, 1])],
            vec![p(&[0, 1]), p(&[2, 2, 2])],
        ];
        assert_eq!(poly_det(&m), p(&[2, 2, 3, 2, 2]));
        let id = vec![vec![p(&[1]), p(&[])], vec![p(&[]), p(&[1])]];
        assert_eq!(poly_det(&id), p(&[1]));
        assert_eq!(poly_det(&[]), p(&[1]));
    }

    #[test]
    fn zero_pivots_are_handled() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(0)],
        ];
        assert_eq!(int_det(m, Execution::Sequential).unwrap(), BigInt::from(-1));
        let sing = vec![vec![BigInt::from(0); 2]; 2];
        assert!(int_det(sing, Execution::Parallel).unwrap().is_zero());
    }

    #[test]
    fn field_and_complex_routes_agree() {
        let w = ExactScalar::omega();
        let m = vec![
            vec![ExactScalar::from_int(2), w.clone()],
            vec![&w * &w, ExactScalar::from_int(5)],
        ];
        let exact = field_det(m.clone()).unwrap();
        assert_eq!(exact, ExactScalar::from_int(9));
        let cm = m
            .iter()
            .map(|r| r.iter().map(ExactScalar::to_complex).collect())
            .collect();
        assert!((complex_det(cm) - exact.to_complex()).norm() < 1e-12);
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(
            n in 0usize..=5,
            raw in prop::collection::vec(prop::collection::vec(-3i64..=3, 0..=4), 25),
        ) {
            let m: Vec<Vec<IntPolynomial>> =
                (0..n).map(|i| (0..n).map(|j| p(&raw[i * 5 + j])).collect()).collect();
            let want = cofactor(&m, &IntPolynomial::one());
            prop_assert_eq!(poly_det(&m), want.clone());
            let par = bareiss_det(m, IntPolynomial::one(), Execution::Parallel).unwrap();
            prop_assert_eq!(par, want);
        }
    }
}
