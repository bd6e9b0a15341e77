use serde::Serialize;

use super::series::{PairParity, CENTRAL_CHARGE, GROUND_WEIGHT};
use crate::error::{arg, Result};

/// U(1) charges of the four boundary fields of a free boson with `c = 1`.
///
/// Fields 1 and 3 sit at the ends of the two legs, field 2 at the tip of the
/// slit and field 4 at the end of the trunk (a bra).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CftCharges {
    pub alpha: [f64; 4],
    pub central_charge: f64,
}

impl CftCharges {
    /// Rejects charges that violate neutrality `Σαᵢ = 0`.
    pub fn new(alpha: [f64; 4]) -> Result<Self> {
        let s: f64 = alpha.iter().sum();
        if s.abs() > 1e-12 {
            return arg(format!("charges {alpha:?} are not neutral (sum {s})"));
        }
        Ok(CftCharges {
            alpha,
            central_charge: CENTRAL_CHARGE,
        })
    }

    /// Charges for the parity class of `(N₁, N₂)`.
    pub fn for_parity(parity: PairParity) -> Self {
        let a = 1.0 / (2.0 * 3f64.sqrt());
        let alpha = match parity {
            PairParity::EvenEven => [a, -a, a, -a],
            PairParity::EvenOdd => [a, -a, -a, a],
            // the legs swap roles
            PairParity::OddEven => [-a, -a, a, a],
        };
        CftCharges {
            alpha,
            central_charge: CENTRAL_CHARGE,
        }
    }

    /// `Δᵢ = αᵢ²/2`.
    pub fn weights(&self) -> [f64; 4] {
        self.alpha.map(|a| a * a / 2.0)
    }

    /// Prefactor of `ln N`: `c/8 + Δ₂`.
    pub fn log_coefficient(&self) -> f64 {
        self.central_charge / 8.0 + self.weights()[1]
    }

    /// Whether the leg and trunk fields carry the ground-state weight `1/24`.
    pub fn matches_ground_state(&self) -> bool {
        let w = self.weights();
        [w[0], w[2], w[3]]
            .iter()
            .all(|v| (v - GROUND_WEIGHT).abs() < 1e-15)
    }
}

fn check_xi(xi: f64) -> Result<()> {
    if !(xi > 0.0 && xi < 1.0) {
        return arg(format!("ξ = {xi} is outside (0, 1)"));
    }
    Ok(())
}

/// The `O(1)` function `f(ξ)`, with additive constant `constant`.
pub fn cft_f(xi: f64, charges: &CftCharges, constant: f64) -> Result<f64> {
    check_xi(xi)?;
    let [a1, a2, a3, a4] = charges.alpha;
    let leg_one = (2.0 * xi - 1.0 + 2.0 / xi) / 24.0 + (1.0 - 1.0 / xi) * a1 * a1
        - a2 * a2 / 2.0
        - 2.0 * a2 * a3
        - a3 * a3
        + (1.0 - xi) * a4 * a4;
    let leg_two = (1.0 - 2.0 * xi + 2.0 / (1.0 - xi)) / 24.0 + (1.0 - 1.0 / (1.0 - xi)) * a3 * a3
        - a2 * a2 / 2.0
        - 2.0 * a2 * a1
        - a1 * a1
        + xi * a4 * a4;
    Ok(leg_one * (1.0 - xi).ln() + leg_two * xi.ln() + constant)
}

/// The coefficient `g(ξ)` of `N⁻¹ln N`, with extrapolation length `length`.
pub fn cft_g(xi: f64, charges: &CftCharges, length: f64) -> Result<f64> {
    check_xi(xi)?;
    let [a1, _, a3, a4] = charges.alpha;
    let t = 1.0 / 12.0;
    Ok(length * 0.5 * (a4 * a4 - t + (t - a1 * a1) / xi + (t - a3 * a3) / (1.0 - xi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::series::xi_profile;

    fn grid() -> impl Iterator<Item = f64> {
        (1..100).map(|k| k as f64 / 100.0)
    }

    #[test]
    fn profiles_match_up_to_constant() {
        for parity in [
            PairParity::EvenEven,
            PairParity::EvenOdd,
            PairParity::OddEven,
        ] {
            let ch = CftCharges::for_parity(parity);
            assert!(CftCharges::new(ch.alpha).is_ok());
            assert!(ch.matches_ground_state());
            assert!((ch.log_coefficient() - 1.0 / 6.0).abs() < 1e-15);
            let d: Vec<f64> = grid()
                .map(|xi| cft_f(xi, &ch, 0.0).unwrap() - xi_profile(parity, xi))
                .collect();
            let spread = d.iter().cloned().fold(f64::MIN, f64::max)
                - d.iter().cloned().fold(f64::MAX, f64::min);
            assert!(spread < 1e-12, "{parity:?}: {spread}");
            assert!(grid().all(|xi| cft_g(xi, &ch, 1.0).unwrap().abs() < 1e-13));
        }
    }

    #[test]
    fn constraints() {
        assert!(CftCharges::new([0.1, 0.1, 0.0, 0.0]).is_err());
        let ch = CftCharges::for_parity(PairParity::EvenEven);
        assert!(cft_f(0.0, &ch, 0.0).is_err() && cft_g(1.0, &ch, 1.0).is_err());
        // other charges give a profile that is not a shifted copy
        let other = CftCharges::new([0.3, -0.1, -0.1, -0.1]).unwrap();
        let a = cft_f(0.2, &other, 0.0).unwrap() - xi_profile(PairParity::EvenEven, 0.2);
        let b = cft_f(0.6, &other, 0.0).unwrap() - xi_profile(PairParity::EvenEven, 0.6);
        assert!((a - b).abs() > 1e-3);
        assert!(cft_g(0.3, &other, 1.0).unwrap().abs() > 1e-3);
    }
}
