//! Exact arithmetic substrate: `Q(ω)` scalars, integer polynomials,
//! multivariate Laurent polynomials and determinants.

mod det;
mod laurent;
pub mod modular;
mod poly;
mod scalar;

pub use det::{
    bareiss_det, complex_det, field_det, int_det, laurent_det, poly_det, IntegralDomain,
};
pub use laurent::{Exponents, Monomial, MultiLaurent};
pub use poly::IntPolynomial;
pub use scalar::ExactScalar;

use num_bigint::BigInt;
use num_rational::BigRational;

/// `num/den` as a big rational.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
