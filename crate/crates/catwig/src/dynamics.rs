//! Measurement-setting dynamics.
//!
//! The measurement settings of the cat experiments are not abstract basis
//! choices: they are real unitary evolutions under a Kerr nonlinearity
//! H = ħΩn̂², applied to one laboratory's mode before its pointer (sign of
//! X̂) is read. This module implements
//!
//! * [`kerr_evolve`] — U(t) = e^{−iΩn̂²t} on one mode, the workhorse;
//! * [`measure_setting_y`] — the specific rotation (Ωt = −π/2 ≡ 3π/2) that
//!   converts a later X̂-sign readout from a z measurement into a y one;
//! * [`qubit_meter_couple`] — the σ_z ⊗ n̂ meter coupling of the exact
//!   two-level model, for cross-checking the branch-tagging picture.
//!
//! Only the product Ωt is physically meaningful here (no absolute timescale
//! enters any result), and phases are reduced mod 2π before use so that the
//! t = 2π/Ω revival is exactly the identity.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, TAU};

use crate::error::{CatwigError, Result};
use crate::fock::{inner_product, FockVector};
use crate::qubit::QubitRegister;

// ---------------------------------------------------------------------------
// Labs and measurement settings
// ---------------------------------------------------------------------------

/// The two laboratories; lab A owns mode 0 and lab B mode 1 in every
/// multi-mode state of this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lab {
    A,
    B,
}

impl Lab {
    /// The mode index this lab's system occupies.
    pub fn mode(self) -> usize {
        match self {
            Lab::A => 0,
            Lab::B => 1,
        }
    }
}

/// A measurement setting: which macroscopic spin component the pointer
/// readout reveals. `Z` needs no rotation; `Y` requires the Kerr rotation
/// [`measure_setting_y`] first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Z,
    Y,
}

/// A pair of settings, one per lab.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SettingPair {
    pub a: Basis,
    pub b: Basis,
}

impl SettingPair {
    pub const ZZ: SettingPair = SettingPair { a: Basis::Z, b: Basis::Z };
    pub const ZY: SettingPair = SettingPair { a: Basis::Z, b: Basis::Y };
    pub const YZ: SettingPair = SettingPair { a: Basis::Y, b: Basis::Z };
    pub const YY: SettingPair = SettingPair { a: Basis::Y, b: Basis::Y };

    pub fn new(a: Basis, b: Basis) -> Self {
        SettingPair { a, b }
    }
}

// ---------------------------------------------------------------------------
// Kerr evolution
// ---------------------------------------------------------------------------

/// Parameters of a Kerr evolution U(t) = e^{−iΩn̂²t}.
///
/// `t` may be negative; −π/(2Ω) and +3π/(2Ω) label the same unitary because
/// the phase e^{−iΩn²t} is 2π/Ω-periodic in t on integer occupations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KerrParams {
    /// Nonlinearity strength (rad/s); 1 in all headline scenarios.
    pub omega: f64,
    /// Signed evolution time (s).
    pub t: f64,
}

impl KerrParams {
    /// The accumulated phase angle Ωt, reduced to [0, 2π).
    pub fn reduced_phase(&self) -> f64 {
        (self.omega * self.t).rem_euclid(TAU)
    }

    /// Duration that turns a coherent state into the two-component cat:
    /// U(π/2Ω)|α⟩ = e^{−iπ/4}(|α⟩ + i|−α⟩)/√2.
    pub fn cat_generation(omega: f64) -> Self {
        KerrParams { omega, t: FRAC_PI_2 / omega }
    }

    /// Duration of the y-setting rotation, the inverse of cat generation:
    /// Ωt = −π/2 ≡ 3π/2.
    pub fn y_setting(omega: f64) -> Self {
        KerrParams { omega, t: -FRAC_PI_2 / omega }
    }
}

/// Evolve one mode under the Kerr Hamiltonian: the amplitude at occupation n
/// of `mode` is multiplied by e^{−iΩtn²}. Norm is preserved exactly (the
/// phases are unit modulus by construction), and Ωt ≡ 0 (mod 2π) is the
/// exact identity.
pub fn kerr_evolve(state: &FockVector, mode: usize, p: KerrParams) -> Result<FockVector> {
    let space = state.space();
    if mode >= space.n_modes() {
        return Err(CatwigError::InvalidArg(format!(
            "mode {mode} out of range (space has {} modes)",
            space.n_modes()
        )));
    }
    let phi = p.reduced_phase();
    if phi == 0.0 {
        return Ok(state.clone());
    }
    // Per-occupation phase table, each angle reduced mod 2π before the
    // trig call to keep accuracy at large n².
    let phases: Vec<Complex64> = (0..space.cutoff())
        .map(|n| Complex64::from_polar(1.0, -(phi * (n * n) as f64).rem_euclid(TAU)))
        .collect();
    let stride = space.stride(mode);
    let cutoff = space.cutoff();
    let mut amps = state.amplitudes().to_vec();
    for (idx, a) in amps.iter_mut().enumerate() {
        *a *= phases[idx / stride % cutoff];
    }
    FockVector::from_amplitudes(space, amps)
}

/// Apply the y-setting rotation (Kerr with Ωt = −π/2 ≡ 3π/2) to a lab's
/// mode. On coherent pointer branches it acts as
/// |±α⟩ ↦ e^{iπ/4}(|±α⟩ − i|∓α⟩)/√2,
/// which is exactly the inverse of the cat-generation map.
pub fn measure_setting_y(state: &FockVector, lab: Lab) -> Result<FockVector> {
    kerr_evolve(state, lab.mode(), KerrParams::y_setting(1.0))
}

// ---------------------------------------------------------------------------
// Qubit-meter coupling (exact two-level model)
// ---------------------------------------------------------------------------

/// Joint state of one qubit and one bosonic meter mode after a coupling,
/// stored as the two unnormalized meter branches:
/// |ψ⟩ = |↑⟩ ⊗ up + |↓⟩ ⊗ down (spin amplitudes folded into the branches).
#[derive(Debug, Clone)]
pub struct SpinMeterState {
    up: FockVector,
    down: FockVector,
}

impl SpinMeterState {
    /// Unnormalized meter branch accompanying |↑⟩.
    pub fn up_branch(&self) -> &FockVector {
        &self.up
    }

    /// Unnormalized meter branch accompanying |↓⟩.
    pub fn down_branch(&self) -> &FockVector {
        &self.down
    }

    /// Probability of finding the qubit up (branch weight).
    pub fn probability_up(&self) -> f64 {
        let u = self.up.norm();
        let d = self.down.norm();
        u * u / (u * u + d * d)
    }

    /// Overlap ⟨up|down⟩ of the **normalized** meter branches — 0 means the
    /// meter perfectly distinguishes the spin, 1 means it recorded nothing.
    pub fn meter_overlap(&self) -> Result<Complex64> {
        let (u, d) = (self.up.norm(), self.down.norm());
        if u < 1e-12 || d < 1e-12 {
            return Err(CatwigError::ZeroNorm(u.min(d)));
        }
        Ok(inner_product(&self.up, &self.down)? / (u * d))
    }
}

/// Couple a single qubit to a coherent meter via H = ħG σ_z ⊗ n̂ for a
/// dimensionless duration `g_t` = Gt:
///
/// c|↑⟩|γ₀⟩ + d|↓⟩|γ₀⟩ ⟶ c|↑⟩|γ₀e^{−iGt}⟩ + d|↓⟩|γ₀e^{+iGt}⟩.
///
/// The evolution is applied exactly as the diagonal phase e^{∓iGt·n} on the
/// meter's Fock amplitudes (which *is* the coherent-label rotation — no
/// approximation); at Gt = π/2 the branches land on ∓iγ₀, realizing a sign
/// readout, and at Gt = π they re-coincide at −γ₀.
///
/// `gamma0` documents the intended meter preparation: the call verifies the
/// supplied meter really is |γ₀⟩ (fidelity ≥ 1 − 1e−10) so downstream
/// branch labels γ₀e^{∓iGt} are trustworthy.
pub fn qubit_meter_couple(
    qubit: &QubitRegister,
    meter: &FockVector,
    g_t: f64,
    gamma0: Complex64,
) -> Result<SpinMeterState> {
    if qubit.n_qubits() != 1 {
        return Err(CatwigError::InvalidArg(format!(
            "meter coupling takes a single qubit, got {} qubits",
            qubit.n_qubits()
        )));
    }
    if meter.space().n_modes() != 1 {
        return Err(CatwigError::InvalidArg(format!(
            "meter must be a single mode, got {} modes",
            meter.space().n_modes()
        )));
    }
    let reference = crate::fock::coherent_state(meter.space(), 0, gamma0)?;
    let fidelity = inner_product(&reference, meter)?.norm_sqr()
        / (meter.norm() * meter.norm()).max(1e-300);
    if fidelity < 1.0 - 1e-10 {
        return Err(CatwigError::InvalidArg(format!(
            "meter is not the declared coherent state γ₀ (fidelity {fidelity:.6})"
        )));
    }
    let (c, d) = (qubit.amplitudes()[0], qubit.amplitudes()[1]);
    let rotate = |sign: f64| -> Result<FockVector> {
        let amps: Vec<Complex64> = meter
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(n, a)| a * Complex64::from_polar(1.0, sign * g_t * n as f64))
            .collect();
        FockVector::from_amplitudes(meter.space(), amps)
    };
    let up = rotate(-1.0)?; // e^{−iGt n̂} on the σ_z = +1 branch
    let down = rotate(1.0)?;
    let scale = |state: &FockVector, w: Complex64| -> Result<FockVector> {
        let amps = state.amplitudes().iter().map(|a| a * w).collect();
        FockVector::from_amplitudes(state.space(), amps)
    };
    Ok(SpinMeterState { up: scale(&up, c)?, down: scale(&down, d)? })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
