//! Pointer measurements, joint outcome probabilities, spin moments, and
//! the CHSH combination for bosonic states and ensembles.
//!
//! The readout model is sign binning of the X quadrature: a laboratory's
//! macroscopic record is + when its pointer mode sits at positive X and −
//! at negative X. Two estimators are provided:
//!
//! * [`pointer_probabilities`] — integrate the joint X-marginal Husimi
//!   distribution over sign quadrants. Fully general, but each Gaussian
//!   branch leaks erfc(√2·α)-scale mass across X = 0, so "exactly zero"
//!   probabilities come out at the 1e−5 scale for α = 3.
//! * [`branch_probabilities`] — weights from the exact coherent-branch
//!   decomposition. Only defined for states inside the ±branch span, but
//!   zero means zero to solver precision; use it for no-go claims of the
//!   form "this outcome never occurs".
//!
//! [`spin_moment`] applies the measurement-setting rotations itself (the
//! caller hands it the (z,z)-basis state), so a setting pair fully
//! specifies a measurement.

use serde::Serialize;

use crate::dynamics::{measure_setting_y, Basis, Lab, SettingPair};
use crate::error::{CatwigError, Result};
use crate::fock::StateLike;
use crate::husimi::{default_grid, q_marginal_xx, GridSpec, QGrid};
use crate::states::pointer_branch_coefficients;

/// The four setting pairs of the CHSH combination, in the conventional
/// order (z,z), (z,y), (y,z), (y,y).
pub const CHSH_SETTINGS: [SettingPair; 4] = [
    SettingPair::ZZ,
    SettingPair::ZY,
    SettingPair::YZ,
    SettingPair::YY,
];

/// Probability mass closer to X = 0 than this is split half-half between
/// the + and − outcomes (symmetric tie-break; immaterial for separated
/// branches).
pub const SIGN_TIE_BAND: f64 = 1e-12;

/// Joint two-outcome probability table, indexed `p[sign_a][sign_b]` with
/// index 0 = + and 1 = −.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutcomeTable {
    pub p: [[f64; 2]; 2],
}

impl OutcomeTable {
    /// Validating constructor: entries may only be negative by numerical
    /// dust (≥ −1e−12) and must sum to 1 within 1e−9.
    pub fn new(p: [[f64; 2]; 2]) -> Result<Self> {
        let mut sum = 0.0;
        for row in &p {
            for &v in row {
                if v < -1e-12 {
                    return Err(CatwigError::InvalidArg(format!(
                        "negative outcome probability {v:.3e}"
                    )));
                }
                sum += v;
            }
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(CatwigError::InvalidArg(format!(
                "outcome probabilities sum to {sum:.12}, not 1"
            )));
        }
        Ok(OutcomeTable { p })
    }

    /// The correlation moment `P(++) + P(−−) − P(+−) − P(−+)`.
    pub fn moment(&self) -> f64 {
        self.p[0][0] + self.p[1][1] - self.p[0][1] - self.p[1][0]
    }
}

// ---------------------------------------------------------------------------
// Quadrant estimator
// ---------------------------------------------------------------------------

/// Split an X-marginal grid's mass into the four sign quadrants.
fn quadrant_bin(grid: &QGrid) -> Result<OutcomeTable> {
    let xa = grid.axes[0].grid.points();
    let xb = grid.axes[1].grid.points();
    let weights = |g: &GridSpec| -> Vec<f64> {
        let h = g.step();
        (0..g.n)
            .map(|i| if i == 0 || i == g.n - 1 { 0.5 * h } else { h })
            .collect()
    };
    let wa = weights(&grid.axes[0].grid);
    let wb = weights(&grid.axes[1].grid);
    // share[s] of a coordinate: (weight on +, weight on −).
    let share = |x: f64| -> [f64; 2] {
        if x > SIGN_TIE_BAND {
            [1.0, 0.0]
        } else if x < -SIGN_TIE_BAND {
            [0.0, 1.0]
        } else {
            [0.5, 0.5]
        }
    };
    let mut p = [[0.0f64; 2]; 2];
    for (i, &x1) in xa.iter().enumerate() {
        let sa = share(x1);
        for (j, &x2) in xb.iter().enumerate() {
            let sb = share(x2);
            let mass = grid.values[i * xb.len() + j] * wa[i] * wb[j];
            for (a, &fa) in sa.iter().enumerate() {
                for (b, &fb) in sb.iter().enumerate() {
                    p[a][b] += mass * fa * fb;
                }
            }
        }
    }
    let total: f64 = p.iter().flatten().sum();
    if total <= 0.0 {
        return Err(CatwigError::GridTooCoarse {
            detail: "no probability mass on the quadrature grid".into(),
        });
    }
    for row in &mut p {
        for v in row.iter_mut() {
            *v /= total;
        }
    }
    OutcomeTable::new(p)
}

/// Joint sign-outcome probabilities by quadrant integration of the
/// two kept modes' X-marginal Husimi distribution.
pub fn pointer_probabilities<S: StateLike>(
    state: &S,
    modes: (usize, usize),
    grid: (GridSpec, GridSpec),
) -> Result<OutcomeTable> {
    let marginal = q_marginal_xx(state, modes, grid, None)?;
    quadrant_bin(&marginal)
}

/// A default quadrature grid wide enough for every mode of the state:
/// ±(r+6) with r estimated from the largest mean occupation.
pub fn default_pointer_grid<S: StateLike>(state: &S) -> Result<GridSpec> {
    let mut occ: f64 = 0.0;
    for (_, psi) in state.pure_components() {
        for mode in 0..psi.space().n_modes() {
            occ = occ.max(psi.mean_occupation(mode)?);
        }
    }
    Ok(default_grid(occ.sqrt()))
}

// ---------------------------------------------------------------------------
// Branch estimator
// ---------------------------------------------------------------------------

/// Joint sign-outcome probabilities from the exact coherent-branch
/// decomposition: `p[i][j] ∝ Σ_components w·|c_ij|²`.
///
/// Restricted to two-mode states inside the span of the four ±branches;
/// zero-probability outcomes vanish to solver precision instead of the
/// quadrant estimator's erfc-scale leakage.
pub fn branch_probabilities<S: StateLike>(
    state: &S,
    alpha: f64,
    beta: f64,
) -> Result<OutcomeTable> {
    let mut p = [[0.0f64; 2]; 2];
    for (w, psi) in state.pure_components() {
        let c = pointer_branch_coefficients(psi, alpha, beta)?;
        for i in 0..2 {
            for j in 0..2 {
                p[i][j] += w * c[i][j].norm_sqr();
            }
        }
    }
    let total: f64 = p.iter().flatten().sum();
    for row in &mut p {
        for v in row.iter_mut() {
            *v /= total;
        }
    }
    OutcomeTable::new(p)
}

// ---------------------------------------------------------------------------
// Moments and CHSH
// ---------------------------------------------------------------------------

/// The correlation moment for a setting pair, measured on the (z,z)-basis
/// state: applies the required y-setting rotations to the first two modes,
/// quadrant-bins the joint X-marginal, and returns the moment. Ensemble
/// moments are the weighted component sums.
pub fn spin_moment<S: StateLike>(state: &S, pair: SettingPair) -> Result<f64> {
    let grid = default_pointer_grid(state)?;
    let mut total = 0.0;
    for (w, psi) in state.pure_components() {
        let mut rotated = psi.clone();
        if pair.a == Basis::Y {
            rotated = measure_setting_y(&rotated, Lab::A)?;
        }
        if pair.b == Basis::Y {
            rotated = measure_setting_y(&rotated, Lab::B)?;
        }
        let table = pointer_probabilities(&rotated, (0, 1), (grid, grid))?;
        total += w * table.moment();
    }
    assert!(
        (-1.0 - 1e-9..=1.0 + 1e-9).contains(&total),
        "moment {total} escaped [−1, 1]"
    );
    Ok(total)
}

/// All four CHSH moments, in [`CHSH_SETTINGS`] order (zz, zy, yz, yy).
pub fn bell_moments<S: StateLike>(state: &S) -> Result<[f64; 4]> {
    let mut m = [0.0; 4];
    for (v, pair) in m.iter_mut().zip(CHSH_SETTINGS) {
        *v = spin_moment(state, pair)?;
    }
    Ok(m)
}

/// |S| for the CHSH combination `m₁ + m₂ + m₃ − m₄` over the four given
/// setting pairs (pass [`CHSH_SETTINGS`] for the conventional order).
///
/// The magnitude is returned because the inequality bounds |S|; the signed
/// sum is recoverable from [`bell_moments`].
pub fn chsh<S: StateLike>(state: &S, settings: &[SettingPair; 4]) -> Result<f64> {
    let mut m = [0.0; 4];
    for (v, pair) in m.iter_mut().zip(settings) {
        *v = spin_moment(state, *pair)?;
    }
    Ok((m[0] + m[1] + m[2] - m[3]).abs())
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{kerr_evolve, KerrParams};
    use crate::fock::{coherent_product, FockVector, ModeSpace};
    use crate::states::{fr_mixture, fr_state, wf_state, FrVariant, MixtureKind};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use num_complex::Complex64;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn vacuum_bins_into_equal_quarters() {
        let space = ModeSpace::new(2, 16).unwrap();
        let vac = FockVector::vacuum(space);
        let g = default_grid(0.0);
        let table = pointer_probabilities(&vac, (0, 1), (g, g)).unwrap();
        for row in &table.p {
            for &v in row {
                assert_abs_diff_eq!(v, 0.25, epsilon = 1e-9);
            }
        }
        assert_abs_diff_eq!(table.moment(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn fr_zz_probabilities_by_both_estimators() {
        let fr = fr_state(FrVariant::Zz, 3.0, 3.0, None).unwrap();
        let g = default_grid(3.0);
        let quadrant = pointer_probabilities(&fr.state, (0, 1), (g, g)).unwrap();
        // Quadrant binning: the three live branches at 1/3, the empty one
        // filled only by cross-branch Gaussian leakage (erfc scale).
        assert!(quadrant.p[0][0] < 2e-5, "leakage {}", quadrant.p[0][0]);
        for (i, j) in [(0, 1), (1, 0), (1, 1)] {
            assert_abs_diff_eq!(quadrant.p[i][j], 1.0 / 3.0, epsilon = 1e-3);
        }
        // Branch projection: the empty branch is zero to solver precision.
        let branch = branch_probabilities(&fr.state, 3.0, 3.0).unwrap();
        assert!(branch.p[0][0] < 1e-12, "residual {}", branch.p[0][0]);
        for (i, j) in [(0, 1), (1, 0), (1, 1)] {
            assert_relative_eq!(branch.p[i][j], 1.0 / 3.0, max_relative = 1e-9);
        }
    }

    #[test]
    fn estimators_agree_within_the_leakage_bound() {
        for variant in [FrVariant::Zz, FrVariant::Yz, FrVariant::Yy] {
            let fr = fr_state(variant, 3.0, 3.0, None).unwrap();
            let g = default_grid(3.0);
            let quad = pointer_probabilities(&fr.state, (0, 1), (g, g)).unwrap();
            let branch = branch_probabilities(&fr.state, 3.0, 3.0).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    let d = (quad.p[i][j] - branch.p[i][j]).abs();
                    assert!(d < 2e-3, "{variant:?} entry ({i},{j}) differs by {d}");
                }
            }
        }
    }

    #[test]
    fn fr_moments_and_chsh_reach_seven_thirds() {
        let fr = fr_state(FrVariant::Zz, 3.0, 3.0, None).unwrap();
        let m = bell_moments(&fr.state).unwrap();
        let expected = [-1.0 / 3.0, -2.0 / 3.0, -2.0 / 3.0, 2.0 / 3.0];
        for (got, want) in m.iter().zip(expected) {
            assert_abs_diff_eq!(*got, want, epsilon = 2e-3);
        }
        let s = chsh(&fr.state, &CHSH_SETTINGS).unwrap();
        assert_abs_diff_eq!(s, 7.0 / 3.0, epsilon = 5e-3);
    }

    #[test]
    fn wf_moments_and_chsh_reach_tsirelson() {
        let theta = FRAC_PI_4;
        let wf = wf_state(theta, 3.0, SettingPair::ZZ).unwrap();
        let m = bell_moments(&wf.state).unwrap();
        let expected = [-theta.cos(), -theta.sin(), -theta.sin(), theta.cos()];
        for (got, want) in m.iter().zip(expected) {
            assert_abs_diff_eq!(*got, want, epsilon = 2e-3);
        }
        let s = chsh(&wf.state, &CHSH_SETTINGS).unwrap();
        assert_abs_diff_eq!(s, 2.0 * std::f64::consts::SQRT_2, epsilon = 5e-3);
    }

    #[test]
    fn ensemble_moments_are_linear() {
        let mix = fr_mixture(MixtureKind::MixB, 3.0, 3.0).unwrap();
        for pair in [SettingPair::ZZ, SettingPair::YZ] {
            let whole = spin_moment(&mix, pair).unwrap();
            let mut parts = 0.0;
            for (w, comp) in mix.components() {
                parts += w * spin_moment(comp, pair).unwrap();
            }
            assert_abs_diff_eq!(whole, parts, epsilon = 1e-12);
        }
    }

    #[test]
    fn coherent_mixtures_respect_the_lhv_ceiling() {
        let mix = fr_mixture(MixtureKind::Zz, 3.0, 3.0).unwrap();
        let s = chsh(&mix, &CHSH_SETTINGS).unwrap();
        assert!(s <= 2.0 + 2e-3, "mixture CHSH {s}");
        // The full z mixture keeps only the zz correlation: |S| = 1/3.
        assert_abs_diff_eq!(s, 1.0 / 3.0, epsilon = 5e-3);
    }

    #[test]
    fn y_setting_eigenstates_read_out_deterministically() {
        // The state the y-rotation maps onto |+3⟩ (resp. |−3⟩) is a cat;
        // measuring it in the y setting must give a near-unit moment.
        let space = ModeSpace::new(2, 40).unwrap();
        let back = KerrParams { omega: 1.0, t: std::f64::consts::FRAC_PI_2 };
        let plus_plus = {
            let pp =
                coherent_product(space, &[Complex64::new(3.0, 0.0), Complex64::new(3.0, 0.0)])
                    .unwrap();
            let s = kerr_evolve(&pp, 0, back).unwrap();
            kerr_evolve(&s, 1, back).unwrap()
        };
        let m = spin_moment(&plus_plus, SettingPair::YY).unwrap();
        assert!(m > 1.0 - 1e-4, "moment {m}");

        let plus_minus = {
            let pm =
                coherent_product(space, &[Complex64::new(3.0, 0.0), Complex64::new(-3.0, 0.0)])
                    .unwrap();
            let s = kerr_evolve(&pm, 0, back).unwrap();
            kerr_evolve(&s, 1, back).unwrap()
        };
        let m = spin_moment(&plus_minus, SettingPair::YY).unwrap();
        assert!(m < -1.0 + 1e-4, "moment {m}");
    }

    #[test]
    fn meter_extended_states_keep_their_system_moments() {
        let fr = fr_state(FrVariant::ZzMeters, 3.0, 3.0, Some(3.0)).unwrap();
        let m = spin_moment(&fr.state, SettingPair::ZZ).unwrap();
        assert_abs_diff_eq!(m, -1.0 / 3.0, epsilon = 2e-3);
    }

    #[test]
    fn outcome_tables_are_validated() {
        assert!(OutcomeTable::new([[0.5, 0.5], [-0.1, 0.1]]).is_err());
        assert!(OutcomeTable::new([[0.3, 0.3], [0.3, 0.3]]).is_err());
        let t = OutcomeTable::new([[0.25, 0.25], [0.25, 0.25]]).unwrap();
        assert_eq!(t.moment(), 0.0);
    }
}
