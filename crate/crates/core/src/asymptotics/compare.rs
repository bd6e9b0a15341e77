use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::series::{lbf_asymptotic, Order};
use crate::error::{arg, Error, Result};
use crate::exec::Execution;
use crate::hp::HpContext;
use crate::overlap_fidelity::{lbf_sweep, FidelityValue, Route};

/// One bipartition of the sweep.
#[derive(Debug, Clone)]
pub struct ComparisonRow {
    pub n: usize,
    pub n1: usize,
    pub n2: usize,
    pub xi: f64,
    pub exact: FidelityValue,
    pub f_exact: f64,
    pub f_asymp: f64,
    pub diff: f64,
}

impl ComparisonRow {
    /// Both sub-chains have at least two sites.
    pub fn is_interior(&self) -> bool {
        self.n1 >= 2 && self.n2 >= 2
    }
}

/// Even `N₁` from 2 up to `N − 2` (even `N`) or `N − 1` (odd `N`).
pub fn sweep_pairs(n: usize) -> Vec<(usize, usize)> {
    let top = if n.is_multiple_of(2) {
        n.saturating_sub(2)
    } else {
        n.saturating_sub(1)
    };
    (2..=top).step_by(2).map(|n1| (n1, n - n1)).collect()
}

/// Exact fidelity by the determinant route against the series through `1/N`.
pub fn compare_fig1(
    n: usize,
    x: &BigRational,
    digits: usize,
    exec: Execution,
) -> Result<Vec<ComparisonRow>> {
    if n < 4 {
        return arg(format!("the sweep needs N >= 4, got {n}"));
    }
    let xf = x
        .to_f64()
        .ok_or_else(|| Error::Argument(format!("x = {x} is not representable")))?;
    let pairs = sweep_pairs(n);
    let exact = lbf_sweep(&pairs, x, Route::Determinant, digits, exec)?;
    let mut hp = HpContext::new(digits)?;
    exact
        .into_iter()
        .map(|v| {
            let f_exact = v.to_f64(&mut hp);
            let f_asymp = lbf_asymptotic(v.n1, v.n2, xf, Order::InverseN)?;
            Ok(ComparisonRow {
                n,
                n1: v.n1,
                n2: v.n2,
                xi: v.n1 as f64 / n as f64,
                f_exact,
                f_asymp,
                diff: f_exact - f_asymp,
                exact: v,
            })
        })
        .collect()
}

/// Largest `|diff|`, optionally over interior rows only.
pub fn max_abs_diff(rows: &[ComparisonRow], interior_only: bool) -> f64 {
    rows.iter()
        .filter(|r| !interior_only || r.is_interior())
        .map(|r| r.diff.abs())
        .fold(0.0, f64::max)
}

/// Summary of a sweep.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonSummary {
    pub n: usize,
    pub rows: usize,
    pub max_diff: f64,
    pub max_diff_interior: f64,
}

pub fn summarize(n: usize, rows: &[ComparisonRow]) -> ComparisonSummary {
    ComparisonSummary {
        n,
        rows: rows.len(),
        max_diff: max_abs_diff(rows, false),
        max_diff_interior: max_abs_diff(rows, true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn sweep_sizes() {
        assert_eq!(sweep_pairs(72).len(), 35);
        assert_eq!(sweep_pairs(73).len(), 36);
        assert_eq!(sweep_pairs(8), vec![(2, 6), (4, 4), (6, 2)]);
    }

    #[test]
    fn small_sweep_is_ordered_and_close() {
        let rows = compare_fig1(24, &rat(1, 2), 40, Execution::Parallel).unwrap();
        assert!(rows.windows(2).all(|w| w[0].n1 < w[1].n1));
        assert!(max_abs_diff(&rows, true) < 0.05);
        let seq = compare_fig1(24, &rat(1, 2), 40, Execution::Sequential).unwrap();
        assert!(rows
            .iter()
            .zip(&seq)
            .all(|(a, b)| a.exact.ratio == b.exact.ratio));
    }
}
