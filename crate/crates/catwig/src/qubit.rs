//! Exact two-level (qubit) backend.
//!
//! Everything the bosonic simulator measures has a finite-dimensional twin:
//! the cat branches |±α⟩ become |↑⟩/|↓⟩, the Kerr setting rotations become
//! Pauli-basis changes, and collective "macroscopic" observables act on the
//! all-up/all-down logical span of many-qubit registers. This module
//! provides those twins exactly (no truncation, no quadrature), so the
//! bosonic results can be cross-checked against closed-form spin algebra.
//!
//! Conventions: computational |0⟩ ≡ |↑⟩ (σ_z eigenvalue +1), |1⟩ ≡ |↓⟩;
//! registers are big-endian (qubit 0 is the most significant bit).

use num_complex::Complex64;

use crate::error::{CatwigError, Result};

/// Largest register size (2²⁰ amplitudes ≈ 16 MiB).
pub const MAX_QUBITS: usize = 20;

// ---------------------------------------------------------------------------
// Registers and gates
// ---------------------------------------------------------------------------

/// Dense state vector of `n` qubits.
#[derive(Debug, Clone)]
pub struct QubitRegister {
    n: usize,
    amps: Vec<Complex64>,
}

impl QubitRegister {
    /// The all-zeros basis state |0…0⟩ = |↑…↑⟩.
    pub fn new_zero(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(CatwigError::InvalidArg(format!(
                "register size {n} out of range 1…{MAX_QUBITS}"
            )));
        }
        let mut amps = vec![Complex64::ZERO; 1 << n];
        amps[0] = Complex64::ONE;
        Ok(QubitRegister { n, amps })
    }

    /// Build a register from raw amplitudes (length must be 2ⁿ).
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(CatwigError::InvalidArg(format!(
                "register size {n} out of range 1…{MAX_QUBITS}"
            )));
        }
        if amps.len() != 1 << n {
            return Err(CatwigError::SpaceMismatch(format!(
                "amplitude vector has length {}, register dimension is {}",
                amps.len(),
                1usize << n
            )));
        }
        Ok(QubitRegister { n, amps })
    }

    /// Number of qubits.
    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// Read-only amplitudes (big-endian computational basis).
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn require_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(CatwigError::InvalidArg(format!(
                "qubit {q} out of range (register has {} qubits)",
                self.n
            )));
        }
        Ok(())
    }

    /// Apply a single-qubit operator (2×2 matrix, row-major) to qubit `q`.
    pub fn apply_one(&mut self, q: usize, m: [[Complex64; 2]; 2]) -> Result<()> {
        self.require_qubit(q)?;
        let stride = 1usize << (self.n - 1 - q);
        let dim = self.amps.len();
        let mut idx = 0;
        while idx < dim {
            for offset in idx..idx + stride {
                let a0 = self.amps[offset];
                let a1 = self.amps[offset + stride];
                self.amps[offset] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[offset + stride] = m[1][0] * a0 + m[1][1] * a1;
            }
            idx += 2 * stride;
        }
        Ok(())
    }

    /// Hadamard gate on qubit `q`.
    pub fn apply_hadamard(&mut self, q: usize) -> Result<()> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let h = Complex64::new(h, 0.0);
        self.apply_one(q, [[h, h], [h, -h]])
    }

    /// Phase gate diag(1, e^{iφ}) on qubit `q`.
    pub fn apply_phase(&mut self, q: usize, phi: f64) -> Result<()> {
        let e = Complex64::from_polar(1.0, phi);
        self.apply_one(q, [[Complex64::ONE, Complex64::ZERO], [Complex64::ZERO, e]])
    }

    /// Controlled-NOT with the given control and target qubits.
    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.require_qubit(control)?;
        self.require_qubit(target)?;
        if control == target {
            return Err(CatwigError::InvalidArg("CNOT control equals target".into()));
        }
        let cbit = 1usize << (self.n - 1 - control);
        let tbit = 1usize << (self.n - 1 - target);
        for idx in 0..self.amps.len() {
            // Swap each |c=1, t=0⟩ amplitude with its |c=1, t=1⟩ partner once.
            if idx & cbit != 0 && idx & tbit == 0 {
                self.amps.swap(idx, idx | tbit);
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Spin operators and moments
// ---------------------------------------------------------------------------

/// A Pauli axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinAxis {
    X,
    Y,
    Z,
}

impl SpinAxis {
    /// The (Hermitian) Pauli matrix: σ_x = \[\[0,1\],\[1,0\]\],
    /// σ_y = \[\[0,−i\],\[i,0\]\], σ_z = diag(1,−1).
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let zero = Complex64::ZERO;
        let one = Complex64::ONE;
        let i = Complex64::I;
        match self {
            SpinAxis::X => [[zero, one], [one, zero]],
            SpinAxis::Y => [[zero, -i], [i, zero]],
            SpinAxis::Z => [[one, zero], [zero, -one]],
        }
    }
}

/// Expectation value ⟨ψ| Πₖ σ_{axisₖ}(qubitₖ) |ψ⟩ of a product of Pauli
/// operators on distinct qubits. The product is Hermitian, so the value is
/// real; the state need not be normalized (the value is divided by ‖ψ‖²).
pub fn pauli_expectation(reg: &QubitRegister, ops: &[(usize, SpinAxis)]) -> Result<f64> {
    for (k, (q, _)) in ops.iter().enumerate() {
        if ops[..k].iter().any(|(q2, _)| q2 == q) {
            return Err(CatwigError::InvalidArg(format!(
                "qubit {q} appears twice in a Pauli product"
            )));
        }
    }
    let mut transformed = reg.clone();
    for &(q, axis) in ops {
        transformed.apply_one(q, axis.matrix())?;
    }
    let mut dot = Complex64::ZERO;
    let mut norm_sqr = 0.0;
    for (a, b) in reg.amps.iter().zip(&transformed.amps) {
        dot += a.conj() * b;
        norm_sqr += a.norm_sqr();
    }
    debug_assert!(dot.im.abs() < 1e-10);
    Ok(dot.re / norm_sqr)
}

/// CHSH combination |E(a₁b₁) + E(a₁b₂) + E(a₂b₁) − E(a₂b₂)| for a two-qubit
/// register, with settings a = (a₁, a₂) on qubit 0 and b = (b₁, b₂) on
/// qubit 1. Any local hidden-variable model obeys |S| ≤ 2.
pub fn qubit_chsh(
    reg: &QubitRegister,
    a: (SpinAxis, SpinAxis),
    b: (SpinAxis, SpinAxis),
) -> Result<f64> {
    if reg.n != 2 {
        return Err(CatwigError::InvalidArg(format!(
            "CHSH needs a 2-qubit register, got {} qubits",
            reg.n
        )));
    }
    let e = |ax: SpinAxis, bx: SpinAxis| pauli_expectation(reg, &[(0, ax), (1, bx)]);
    Ok((e(a.0, b.0)? + e(a.0, b.1)? + e(a.1, b.0)? - e(a.1, b.1)?).abs())
}

// ---------------------------------------------------------------------------
// Two-qubit reference states
// ---------------------------------------------------------------------------

/// The two phase variants of the entangled two-qubit state
/// |ψ_±⟩ = −sin(θ/2)·(|↑↑⟩ ∓ |↓↓⟩)/√2 + ε_±·cos(θ/2)·(|↑↓ ⟩+|↓↑⟩)/√2,
/// with ε₊ = 1 and ε₋ = i.
///
/// `Minus` is the qubit image of the rotated two-mode cat state (its
/// correlations live in the z/y plane); `Plus` is the real-amplitude twin
/// whose correlations live in the z/x plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruknerVariant {
    Plus,
    Minus,
}

/// Build |ψ_±⟩ (see [`BruknerVariant`]). Both variants give
/// ⟨σ_zσ_z⟩ = −cos θ and a maximal CHSH value |S| = 2√2 at θ = π/4:
/// `Minus` with settings (z, y) on both sides, `Plus` with (z, x).
pub fn brukner_state(theta: f64, variant: BruknerVariant) -> QubitRegister {
    let s = (theta / 2.0).sin();
    let cc = (theta / 2.0).cos();
    let eps = match variant {
        BruknerVariant::Plus => Complex64::ONE,
        BruknerVariant::Minus => Complex64::I,
    };
    let sign = match variant {
        BruknerVariant::Plus => -1.0, // |φ⁻⟩ = (|↑↑⟩ − |↓↓⟩)/√2
        BruknerVariant::Minus => 1.0, // |φ⁺⟩ = (|↑↑⟩ + |↓↓⟩)/√2
    };
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let amps = vec![
        Complex64::new(-s * r, 0.0),        // |↑↑⟩
        eps * Complex64::new(cc * r, 0.0),  // |↑↓⟩
        eps * Complex64::new(cc * r, 0.0),  // |↓↑⟩
        Complex64::new(-s * r * sign, 0.0), // |↓↓⟩ carries ∓ of (|↑↑⟩ ∓ |↓↓⟩)
    ];
    QubitRegister { n: 2, amps }
}

/// Product basis a microscopic two-qubit state can be expressed in: each
/// side is either the σ_z eigenbasis (`z`) or the σ_x eigenbasis (`x`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrBasis {
    /// Both sides in the z basis.
    Zz,
    /// Side A in the x basis, side B in the z basis.
    Xz,
    /// Side A in the z basis, side B in the x basis.
    Zx,
    /// Both sides in the x basis.
    Xx,
}

/// The microscopic extended-Wigner's-friend (Frauchiger-Renner) two-qubit
/// state (|↑↓⟩ + |↓↑⟩ + |↓↓⟩)/√3, expressed in the requested product basis.
///
/// The returned register's computational indices refer to the basis of
/// `basis`: on an x side, bit 0 means |⇑_x⟩ = (|↑⟩+|↓⟩)/√2 and bit 1 means
/// |⇓_x⟩ = (|↑⟩−|↓⟩)/√2. Expressed this way the paradox reads off directly:
///
/// * `Xz`: the |⇓_x, ↓⟩ amplitude vanishes — side A's x-outcome ⇓ certifies
///   side B is not ↓;
/// * `Zx`: the |↓, ⇑_x⟩ amplitude is √(2/3);
/// * `Xx`: the |⇓_x, ⇓_x⟩ probability is 1/12, which is nonzero even though
///   chaining the single-sided certainties would forbid it.
pub fn fr_microscopic(basis: FrBasis) -> QubitRegister {
    let w = Complex64::new(1.0 / 3.0f64.sqrt(), 0.0);
    let amps = vec![Complex64::ZERO, w, w, w]; // (|↑↓⟩ + |↓↑⟩ + |↓↓⟩)/√3
    let mut reg = QubitRegister { n: 2, amps };
    // Coefficients in the x basis are ⟨±_x|ψ⟩ per side, i.e. one Hadamard.
    match basis {
        FrBasis::Zz => {}
        FrBasis::Xz => reg.apply_hadamard(0).unwrap(),
        FrBasis::Zx => reg.apply_hadamard(1).unwrap(),
        FrBasis::Xx => {
            reg.apply_hadamard(0).unwrap();
            reg.apply_hadamard(1).unwrap();
        }
    }
    reg
}

/// Phase twin of [`fr_microscopic`] with an i on the |↓↓⟩ branch:
/// (|↑↓⟩ + |↓↑⟩ + i|↓↓⟩)/√3.
///
/// This is the exact qubit image of the bosonic two-mode pointer state,
/// whose branch superposition carries the same i; the phase moves the
/// paradox correlations from the z/x plane to the z/y plane, e.g.
/// ⟨σ_yσ_z⟩ = ⟨σ_zσ_y⟩ = −2/3 and ⟨σ_yσ_y⟩ = 2/3.
pub fn fr_microscopic_y_analog() -> QubitRegister {
    let w = Complex64::new(1.0 / 3.0f64.sqrt(), 0.0);
    let amps = vec![Complex64::ZERO, w, w, Complex64::I * w];
    QubitRegister { n: 2, amps }
}

// ---------------------------------------------------------------------------
// Macroscopic (many-qubit) expansion
// ---------------------------------------------------------------------------

/// Qubit counts of the two labs in a bipartite many-qubit register; lab A
/// holds qubits 0 … n_a−1, lab B the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabPartition {
    pub n_a: usize,
    pub n_b: usize,
}

/// N-qubit entangled chain (|0…0⟩ + e^{iφ}|1…1⟩)/√2, built gate by gate:
/// Hadamard on qubit 0, a CNOT chain to copy the branch, and a phase gate.
pub fn ghz_build(n: usize, phi: f64) -> Result<QubitRegister> {
    if n < 2 {
        return Err(CatwigError::InvalidArg("entangled chain needs ≥ 2 qubits".into()));
    }
    let mut reg = QubitRegister::new_zero(n)?;
    reg.apply_hadamard(0)?;
    for q in 1..n {
        reg.apply_cnot(q - 1, q)?;
    }
    reg.apply_phase(n - 1, phi)?;
    Ok(reg)
}

/// Redundantly encode a two-qubit state across two labs:
/// Σ aᵢⱼ |i⟩|j⟩ ↦ Σ aᵢⱼ |i…i⟩_{n_a} |j…j⟩_{n_b}.
///
/// This is the qubit cartoon of a macroscopic pointer: each branch is copied
/// into n identical spins, so branch distinguishability grows with n while
/// the logical amplitudes are untouched.
pub fn expand_macro(two_qubit: &QubitRegister, part: LabPartition) -> Result<QubitRegister> {
    if two_qubit.n != 2 {
        return Err(CatwigError::InvalidArg(format!(
            "expand_macro needs a 2-qubit register, got {} qubits",
            two_qubit.n
        )));
    }
    if part.n_a == 0 || part.n_b == 0 {
        return Err(CatwigError::InvalidArg("both labs need at least one qubit".into()));
    }
    let n = part.n_a + part.n_b;
    if n > MAX_QUBITS {
        return Err(CatwigError::InvalidArg(format!(
            "expanded register would have {n} qubits (max {MAX_QUBITS})"
        )));
    }
    let mut amps = vec![Complex64::ZERO; 1 << n];
    let ones_a = (1usize << part.n_a) - 1;
    let ones_b = (1usize << part.n_b) - 1;
    for (idx, &a) in two_qubit.amps.iter().enumerate() {
        let (i, j) = (idx >> 1, idx & 1);
        let block = (if i == 1 { ones_a } else { 0 }) << part.n_b
            | (if j == 1 { ones_b } else { 0 });
        amps[block] = a;
    }
    QubitRegister::from_amplitudes(n, amps)
}

/// Collective two-lab spin moment ⟨P (σ_a ⊗ σ_b)_logical P⟩.
///
/// Each lab's logical qubit lives on span{|↑…↑⟩, |↓…↓⟩}; P projects onto
/// the four joint logical states, the Pauli pair acts on the logical
/// amplitudes, and states produced by [`expand_macro`] or [`ghz_build`] lie
/// entirely inside the span (the projection is then lossless).
pub fn qubit_moments(
    reg: &QubitRegister,
    part: LabPartition,
    pair: (SpinAxis, SpinAxis),
) -> Result<f64> {
    if part.n_a + part.n_b != reg.n {
        return Err(CatwigError::SpaceMismatch(format!(
            "partition {}+{} does not cover the {}-qubit register",
            part.n_a, part.n_b, reg.n
        )));
    }
    // Extract the four logical amplitudes a_ij = ⟨(i…i)(j…j)|ψ⟩.
    let ones_a = (1usize << part.n_a) - 1;
    let ones_b = (1usize << part.n_b) - 1;
    let mut logical = QubitRegister::new_zero(2)?;
    for i in 0..2usize {
        for j in 0..2usize {
            let block = (if i == 1 { ones_a } else { 0 }) << part.n_b
                | (if j == 1 { ones_b } else { 0 });
            logical.amps[(i << 1) | j] = reg.amps[block];
        }
    }
    // Sandwiched (unnormalized-projection) expectation.
    let mut transformed = logical.clone();
    transformed.apply_one(0, pair.0.matrix())?;
    transformed.apply_one(1, pair.1.matrix())?;
    let dot: Complex64 = logical
        .amps
        .iter()
        .zip(&transformed.amps)
        .map(|(a, b)| a.conj() * b)
        .sum();
    debug_assert!(dot.im.abs() < 1e-10);
    Ok(dot.re)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn gates_preserve_norm_and_compose() {
        let mut reg = QubitRegister::new_zero(3).unwrap();
        reg.apply_hadamard(0).unwrap();
        reg.apply_cnot(0, 1).unwrap();
        reg.apply_cnot(1, 2).unwrap();
        assert_relative_eq!(reg.norm(), 1.0, max_relative = 1e-14);
        // (|000⟩ + |111⟩)/√2
        assert_abs_diff_eq!(reg.amplitudes()[0].re, 1.0 / SQRT2, epsilon = 1e-14);
        assert_abs_diff_eq!(reg.amplitudes()[7].re, 1.0 / SQRT2, epsilon = 1e-14);
        // Hadamard is an involution.
        let mut again = reg.clone();
        again.apply_hadamard(2).unwrap();
        again.apply_hadamard(2).unwrap();
        for (a, b) in again.amplitudes().iter().zip(reg.amplitudes()) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn minus_variant_moments_follow_the_z_y_plane() {
        // ⟨σzσz⟩ = −cos θ, ⟨σzσy⟩ = ⟨σyσz⟩ = −sin θ, ⟨σyσy⟩ = cos θ.
        for theta in [0.3, std::f64::consts::FRAC_PI_4, 1.2] {
            let psi = brukner_state(theta, BruknerVariant::Minus);
            let e = |a, b| pauli_expectation(&psi, &[(0, a), (1, b)]).unwrap();
            assert_abs_diff_eq!(e(SpinAxis::Z, SpinAxis::Z), -theta.cos(), epsilon = 1e-12);
            assert_abs_diff_eq!(e(SpinAxis::Z, SpinAxis::Y), -theta.sin(), epsilon = 1e-12);
            assert_abs_diff_eq!(e(SpinAxis::Y, SpinAxis::Z), -theta.sin(), epsilon = 1e-12);
            assert_abs_diff_eq!(e(SpinAxis::Y, SpinAxis::Y), theta.cos(), epsilon = 1e-12);
        }
    }

    #[test]
    fn plus_variant_moments_follow_the_z_x_plane() {
        let theta = 0.9;
        let psi = brukner_state(theta, BruknerVariant::Plus);
        let e = |a, b| pauli_expectation(&psi, &[(0, a), (1, b)]).unwrap();
        assert_abs_diff_eq!(e(SpinAxis::Z, SpinAxis::Z), -theta.cos(), epsilon = 1e-12);
        assert_abs_diff_eq!(e(SpinAxis::Z, SpinAxis::X), -theta.sin(), epsilon = 1e-12);
        assert_abs_diff_eq!(e(SpinAxis::X, SpinAxis::Z), -theta.sin(), epsilon = 1e-12);
        assert_abs_diff_eq!(e(SpinAxis::X, SpinAxis::X), theta.cos(), epsilon = 1e-12);
        // The y-plane correlation is absent for the real-amplitude variant.
        assert_abs_diff_eq!(e(SpinAxis::Y, SpinAxis::Z), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn chsh_is_maximal_at_quarter_pi() {
        let psi = brukner_state(std::f64::consts::FRAC_PI_4, BruknerVariant::Minus);
        let s = qubit_chsh(&psi, (SpinAxis::Z, SpinAxis::Y), (SpinAxis::Z, SpinAxis::Y)).unwrap();
        assert_relative_eq!(s, 2.0 * SQRT2, max_relative = 1e-12);
        let plus = brukner_state(std::f64::consts::FRAC_PI_4, BruknerVariant::Plus);
        let s = qubit_chsh(&plus, (SpinAxis::Z, SpinAxis::X), (SpinAxis::Z, SpinAxis::X)).unwrap();
        assert_relative_eq!(s, 2.0 * SQRT2, max_relative = 1e-12);
    }

    #[test]
    fn microscopic_state_reproduces_the_paradox_numbers() {
        let psi = fr_microscopic(FrBasis::Zz);
        let e = |a, b| pauli_expectation(&psi, &[(0, a), (1, b)]).unwrap();
        assert_abs_diff_eq!(e(SpinAxis::Z, SpinAxis::Z), -1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e(SpinAxis::X, SpinAxis::Z), -2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e(SpinAxis::Z, SpinAxis::X), -2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e(SpinAxis::X, SpinAxis::X), 2.0 / 3.0, epsilon = 1e-12);
        let s = qubit_chsh(&psi, (SpinAxis::Z, SpinAxis::X), (SpinAxis::Z, SpinAxis::X)).unwrap();
        assert_relative_eq!(s, 7.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn microscopic_basis_rewrites_expose_the_certainty_chain() {
        // A's ⇓_x forbids B's ↓ …
        let xz = fr_microscopic(FrBasis::Xz);
        assert_abs_diff_eq!(xz.amplitudes()[0b11].norm(), 0.0, epsilon = 1e-14);
        // … B's ⇑_x carries amplitude √(2/3) on A's ↓ …
        let zx = fr_microscopic(FrBasis::Zx);
        assert_abs_diff_eq!(zx.amplitudes()[0b10].norm(), (2.0f64 / 3.0).sqrt(), epsilon = 1e-14);
        // … yet the joint (⇓_x, ⇓_x) outcome has probability 1/12.
        let xx = fr_microscopic(FrBasis::Xx);
        assert_abs_diff_eq!(xx.amplitudes()[0b11].norm_sqr(), 1.0 / 12.0, epsilon = 1e-14);
    }

    #[test]
    fn y_analog_moves_the_correlations_to_the_y_plane() {
        let psi = fr_microscopic_y_analog();
        let e = |a, b| pauli_expectation(&psi, &[(0, a), (1, b)]).unwrap();
        assert_abs_diff_eq!(e(SpinAxis::Z, SpinAxis::Z), -1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e(SpinAxis::Y, SpinAxis::Z), -2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e(SpinAxis::Z, SpinAxis::Y), -2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e(SpinAxis::Y, SpinAxis::Y), 2.0 / 3.0, epsilon = 1e-12);
        let s = qubit_chsh(&psi, (SpinAxis::Z, SpinAxis::Y), (SpinAxis::Z, SpinAxis::Y)).unwrap();
        assert_relative_eq!(s, 7.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn expanded_registers_keep_their_logical_moments() {
        let theta = std::f64::consts::FRAC_PI_4;
        let small = brukner_state(theta, BruknerVariant::Minus);
        let part = LabPartition { n_a: 4, n_b: 3 };
        let big = expand_macro(&small, part).unwrap();
        assert_relative_eq!(big.norm(), 1.0, max_relative = 1e-14);
        for (a, b) in [
            (SpinAxis::Z, SpinAxis::Z),
            (SpinAxis::Z, SpinAxis::Y),
            (SpinAxis::Y, SpinAxis::Z),
            (SpinAxis::Y, SpinAxis::Y),
        ] {
            let logical = qubit_moments(&big, part, (a, b)).unwrap();
            let direct = pauli_expectation(&small, &[(0, a), (1, b)]).unwrap();
            assert_abs_diff_eq!(logical, direct, epsilon = 1e-12);
        }
    }

    #[test]
    fn entangled_chain_has_the_expected_logical_correlations() {
        let n = 8;
        let phi = 0.7;
        let ghz = ghz_build(n, phi).unwrap();
        let part = LabPartition { n_a: 4, n_b: 4 };
        // Logical amplitudes (1/√2)(|0_L 0_L⟩ + e^{iφ}|1_L 1_L⟩):
        // ⟨σxσx⟩_L = cos φ, ⟨σxσy⟩_L = sin φ, ⟨σyσy⟩_L = −cos φ.
        assert_abs_diff_eq!(
            qubit_moments(&ghz, part, (SpinAxis::X, SpinAxis::X)).unwrap(),
            phi.cos(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            qubit_moments(&ghz, part, (SpinAxis::X, SpinAxis::Y)).unwrap(),
            phi.sin(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            qubit_moments(&ghz, part, (SpinAxis::Y, SpinAxis::Y)).unwrap(),
            -phi.cos(),
            epsilon = 1e-12
        );
        // z correlations are phase-blind.
        assert_abs_diff_eq!(
            qubit_moments(&ghz, part, (SpinAxis::Z, SpinAxis::Z)).unwrap(),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn pauli_products_reject_repeated_qubits() {
        let psi = fr_microscopic(FrBasis::Zz);
        assert!(pauli_expectation(&psi, &[(0, SpinAxis::Z), (0, SpinAxis::X)]).is_err());
    }
}
