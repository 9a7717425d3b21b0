//! The entangled cat-state families of the two-laboratory experiments.
//!
//! Two families are provided, both built on coherent pointer branches
//! |±α⟩ ⊗ |±β⟩ whose X̂-sign plays the role of a macroscopic spin-z record:
//!
//! * [`wf_state`] — the two-parameter Bell-Wigner family
//!   A(|α⟩|α⟩ + |−α⟩|−α⟩) + B(|α⟩|−α⟩ + |−α⟩|α⟩) with
//!   A = −sin(θ/2)/√2 and B = (i/√2)cos(θ/2), plus its Kerr-rotated
//!   versions for mixed measurement settings;
//! * [`fr_state`] — the three-branch extended-Wigner's-friend state
//!   (1/√3)(|α⟩|−β⟩ + |−α⟩|β⟩ + i|−α⟩|−β⟩), its rotated versions, and
//!   meter/friend-extended variants where each laboratory's record is
//!   copied into additional coherent tag modes.
//!
//! Mixed-basis variants are always produced by applying the *dynamics*
//! (the y-setting Kerr rotation) to the (z,z) state — the closed forms the
//! rotations imply are frozen in this module's tests.
//!
//! [`fr_mixture`] builds the pointer mixtures the weak-macroscopic-realism
//! analysis compares against, and [`attach_meters`] implements measurement
//! as branch-tagging: each z-branch acquires a meter factor |±γ⟩.

use num_complex::Complex64;

use crate::dynamics::{measure_setting_y, Basis, Lab, SettingPair};
use crate::error::{CatwigError, Result};
use crate::fock::{
    coherent_product, inner_product, recommended_cutoff, superpose, FockVector, ModeSpace,
    WeightedEnsemble, DEFAULT_CUTOFF,
};

/// Branch separations below this leave the ±amplitude pointer states
/// macroscopically indistinct (⟨α|−α⟩ = e^{−2α²} > 3e−4): constructors
/// still work but raise their `degenerate_branches` flag.
pub const DISTINCTNESS_THRESHOLD: f64 = 2.0;

// ---------------------------------------------------------------------------
// Bell-Wigner (two-branch) family
// ---------------------------------------------------------------------------

/// An entangled two-mode cat state of the Bell-Wigner family, together with
/// its construction metadata.
#[derive(Debug, Clone)]
pub struct WFState {
    /// Entanglement angle θ.
    pub theta: f64,
    /// Pointer amplitude (both labs use ±α).
    pub alpha: f64,
    /// Which measurement settings the state has been rotated into.
    pub bases: SettingPair,
    /// The two-mode state vector (mode 0 = lab A, mode 1 = lab B).
    pub state: FockVector,
    /// Norm of the defining superposition before renormalization; differs
    /// from 1 only by branch-overlap corrections of order e^{−2α²}.
    pub pre_norm: f64,
    /// True when α is below [`DISTINCTNESS_THRESHOLD`].
    pub degenerate_branches: bool,
}

/// Build the Bell-Wigner state for the requested settings at the default
/// cutoff (40, raised automatically if α needs more).
pub fn wf_state(theta: f64, alpha: f64, bases: SettingPair) -> Result<WFState> {
    wf_state_with_cutoff(theta, alpha, bases, DEFAULT_CUTOFF.max(recommended_cutoff(alpha)))
}

/// [`wf_state`] with an explicit Fock cutoff.
pub fn wf_state_with_cutoff(
    theta: f64,
    alpha: f64,
    bases: SettingPair,
    cutoff: usize,
) -> Result<WFState> {
    let space = ModeSpace::new(2, cutoff)?;
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let a_coeff = Complex64::new(-s / std::f64::consts::SQRT_2, 0.0);
    let b_coeff = Complex64::new(0.0, c / std::f64::consts::SQRT_2);
    let p = alpha;
    let uu = coherent_product(space, &[cc(p), cc(p)])?;
    let dd = coherent_product(space, &[cc(-p), cc(-p)])?;
    let ud = coherent_product(space, &[cc(p), cc(-p)])?;
    let du = coherent_product(space, &[cc(-p), cc(p)])?;
    let (zz, pre_norm) = superpose(&[
        (a_coeff, &uu),
        (a_coeff, &dd),
        (b_coeff, &ud),
        (b_coeff, &du),
    ])?;
    let state = rotate_into(&zz, bases)?;
    Ok(WFState {
        theta,
        alpha,
        bases,
        state,
        pre_norm,
        degenerate_branches: alpha.abs() < DISTINCTNESS_THRESHOLD,
    })
}

fn cc(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Apply the y-setting rotation to whichever labs the setting pair marks.
fn rotate_into(zz: &FockVector, bases: SettingPair) -> Result<FockVector> {
    let mut state = zz.clone();
    if bases.a == Basis::Y {
        state = measure_setting_y(&state, Lab::A)?;
    }
    if bases.b == Basis::Y {
        state = measure_setting_y(&state, Lab::B)?;
    }
    Ok(state)
}

// ---------------------------------------------------------------------------
// Extended-Wigner's-friend (three-branch) family
// ---------------------------------------------------------------------------

/// Variants of the three-branch friend state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrVariant {
    /// The bare two-mode (z,z) state.
    Zz,
    /// y-rotation applied to lab A.
    Yz,
    /// y-rotation applied to lab B.
    Zy,
    /// y-rotation applied to both labs.
    Yy,
    /// (z,z) with a coherent meter tag per lab: 4 modes (A, B, Aₘ, Bₘ).
    ZzMeters,
    /// (z,z) with meter *and* friend tags per lab: 6 modes
    /// (A, B, Aₘ, Bₘ, F_A, F_B). Needs a reduced cutoff — see [`fr_state`].
    ZzMetersFriends,
}

impl FrVariant {
    fn needs_gamma(self) -> bool {
        matches!(self, FrVariant::ZzMeters | FrVariant::ZzMetersFriends)
    }

    fn n_modes(self) -> usize {
        match self {
            FrVariant::Zz | FrVariant::Yz | FrVariant::Zy | FrVariant::Yy => 2,
            FrVariant::ZzMeters => 4,
            FrVariant::ZzMetersFriends => 6,
        }
    }
}

/// An extended-Wigner's-friend state plus construction metadata.
#[derive(Debug, Clone)]
pub struct FRState {
    pub variant: FrVariant,
    /// Lab A pointer amplitude.
    pub alpha: f64,
    /// Lab B pointer amplitude.
    pub beta: f64,
    /// Meter tag amplitude (meter variants only).
    pub gamma: Option<f64>,
    /// The state vector (2, 4, or 6 modes depending on the variant).
    pub state: FockVector,
    /// Norm of the defining superposition before renormalization.
    pub pre_norm: f64,
    /// True when min(α, β) is below [`DISTINCTNESS_THRESHOLD`].
    pub degenerate_branches: bool,
}

/// Build a friend state at the default cutoff (40, raised if the amplitudes
/// need more).
///
/// The 6-mode `ZzMetersFriends` variant cannot fit the default cutoff under
/// the amplitude-count cap (40⁶ ≈ 4·10⁹); construct it through
/// [`fr_state_with_cutoff`] with a reduced cutoff and correspondingly small
/// amplitudes.
pub fn fr_state(
    variant: FrVariant,
    alpha: f64,
    beta: f64,
    gamma: Option<f64>,
) -> Result<FRState> {
    let max_amp = alpha.abs().max(beta.abs()).max(gamma.map_or(0.0, f64::abs));
    fr_state_with_cutoff(variant, alpha, beta, gamma, DEFAULT_CUTOFF.max(recommended_cutoff(max_amp)))
}

/// [`fr_state`] with an explicit Fock cutoff.
pub fn fr_state_with_cutoff(
    variant: FrVariant,
    alpha: f64,
    beta: f64,
    gamma: Option<f64>,
    cutoff: usize,
) -> Result<FRState> {
    if variant.needs_gamma() && gamma.is_none() {
        return Err(CatwigError::InvalidArg(
            "meter variants need a meter amplitude γ".into(),
        ));
    }
    let space = ModeSpace::new(variant.n_modes(), cutoff)?;
    let g = gamma.unwrap_or(0.0);
    // The three z-branches as per-mode amplitude rows; sign of each tag
    // follows the sign of its lab's system branch.
    let branch = |sa: f64, sb: f64| -> Vec<Complex64> {
        let mut row = vec![cc(sa * alpha), cc(sb * beta)];
        match variant {
            FrVariant::ZzMeters => row.extend([cc(sa * g), cc(sb * g)]),
            FrVariant::ZzMetersFriends => {
                row.extend([cc(sa * g), cc(sb * g), cc(sa * g), cc(sb * g)])
            }
            _ => {}
        }
        row
    };
    let t1 = coherent_product(space, &branch(1.0, -1.0))?;
    let t2 = coherent_product(space, &branch(-1.0, 1.0))?;
    let t3 = coherent_product(space, &branch(-1.0, -1.0))?;
    let w = cc(1.0 / 3.0f64.sqrt());
    let (zz, pre_norm) =
        superpose(&[(w, &t1), (w, &t2), (Complex64::I * w, &t3)])?;
    let state = match variant {
        FrVariant::Zz | FrVariant::ZzMeters | FrVariant::ZzMetersFriends => zz,
        FrVariant::Yz => measure_setting_y(&zz, Lab::A)?,
        FrVariant::Zy => measure_setting_y(&zz, Lab::B)?,
        FrVariant::Yy => {
            measure_setting_y(&measure_setting_y(&zz, Lab::A)?, Lab::B)?
        }
    };
    Ok(FRState {
        variant,
        alpha,
        beta,
        gamma,
        state,
        pre_norm,
        degenerate_branches: alpha.abs().min(beta.abs()) < DISTINCTNESS_THRESHOLD,
    })
}

// ---------------------------------------------------------------------------
// Pointer mixtures
// ---------------------------------------------------------------------------

/// Which pointer mixture to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixtureKind {
    /// Full z-basis mixture: equal thirds of the three coherent branches.
    Zz,
    /// Partial mixture keeping lab B's branch coherence:
    /// (1/3)|α,−β⟩⟨·| + (2/3)|−α⟩⟨−α| ⊗ cat_B, with
    /// cat_B ∝ |β⟩ + i|−β⟩. (Lab A's record is read out, B's is not.)
    MixA,
    /// Mirror image keeping lab A's coherence:
    /// (1/3)|−α,β⟩⟨·| + (2/3)cat_A ⊗ |−β⟩⟨−β|, cat_A ∝ |α⟩ + i|−α⟩.
    MixB,
}

/// Build a pointer mixture of the friend state at the default cutoff.
pub fn fr_mixture(kind: MixtureKind, alpha: f64, beta: f64) -> Result<WeightedEnsemble> {
    let max_amp = alpha.abs().max(beta.abs());
    fr_mixture_with_cutoff(kind, alpha, beta, DEFAULT_CUTOFF.max(recommended_cutoff(max_amp)))
}

/// [`fr_mixture`] with an explicit Fock cutoff.
pub fn fr_mixture_with_cutoff(
    kind: MixtureKind,
    alpha: f64,
    beta: f64,
    cutoff: usize,
) -> Result<WeightedEnsemble> {
    if alpha.abs() < 0.5 || beta.abs() < 0.5 {
        return Err(CatwigError::DegenerateBranches { alpha: alpha.abs().min(beta.abs()) });
    }
    let space = ModeSpace::new(2, cutoff)?;
    let third = 1.0 / 3.0;
    match kind {
        MixtureKind::Zz => {
            let c1 = coherent_product(space, &[cc(alpha), cc(-beta)])?;
            let c2 = coherent_product(space, &[cc(-alpha), cc(beta)])?;
            let c3 = coherent_product(space, &[cc(-alpha), cc(-beta)])?;
            WeightedEnsemble::new(vec![(third, c1), (third, c2), (third, c3)])
        }
        MixtureKind::MixA => {
            // Grouping by lab A's record: + branch is |α,−β⟩; the − branch
            // keeps B coherent, (|β⟩ + i|−β⟩)/√2 up to overlap corrections.
            let plus = coherent_product(space, &[cc(alpha), cc(-beta)])?;
            let t1 = coherent_product(space, &[cc(-alpha), cc(beta)])?;
            let t2 = coherent_product(space, &[cc(-alpha), cc(-beta)])?;
            let (minus_cat, _) = superpose(&[(cc(1.0), &t1), (Complex64::I, &t2)])?;
            WeightedEnsemble::new(vec![(third, plus), (2.0 * third, minus_cat)])
        }
        MixtureKind::MixB => {
            let plus = coherent_product(space, &[cc(-alpha), cc(beta)])?;
            let t1 = coherent_product(space, &[cc(alpha), cc(-beta)])?;
            let t2 = coherent_product(space, &[cc(-alpha), cc(-beta)])?;
            let (minus_cat, _) = superpose(&[(cc(1.0), &t1), (Complex64::I, &t2)])?;
            WeightedEnsemble::new(vec![(third, plus), (2.0 * third, minus_cat)])
        }
    }
}

// ---------------------------------------------------------------------------
// Branch projection
// ---------------------------------------------------------------------------

/// Coefficients of a two-mode state in the (non-orthogonal) pointer-branch
/// basis {|s_Aα⟩ ⊗ |s_Bβ⟩ : s ∈ {+,−}}: returns c\[i\]\[j\] with i, j = 0 for
/// the + branch and 1 for the − branch, obtained by solving the 4×4 Gram
/// system exactly.
///
/// Unlike raw overlaps ⟨branch|ψ⟩ (contaminated at order e^{−2α²} by the
/// neighboring branches), these coefficients vanish to machine precision on
/// absent branches — they are the right tool for "this outcome has zero
/// probability" claims.
///
/// Errors: [`CatwigError::DegenerateBranches`] when ±α (or ±β) coincide too
/// closely for the Gram system to be solvable; [`CatwigError::InvalidArg`]
/// when the state has a component outside the branch span.
pub fn pointer_branch_coefficients(
    state: &FockVector,
    alpha: f64,
    beta: f64,
) -> Result<[[Complex64; 2]; 2]> {
    let space = state.space();
    if space.n_modes() != 2 {
        return Err(CatwigError::SpaceMismatch(format!(
            "branch projection needs a 2-mode state, got {} modes",
            space.n_modes()
        )));
    }
    // Per-mode Gram factors from the coherent overlap law (real amplitudes):
    // ⟨+a|−a⟩ = e^{−2a²}.
    let gram1 = |a: f64| -> [[f64; 2]; 2] {
        let g = (-2.0 * a * a).exp();
        [[1.0, g], [g, 1.0]]
    };
    let ga = gram1(alpha);
    let gb = gram1(beta);
    if 1.0 - ga[0][1] < 1e-6 || 1.0 - gb[0][1] < 1e-6 {
        return Err(CatwigError::DegenerateBranches { alpha: alpha.abs().min(beta.abs()) });
    }
    // Branch products and their overlaps with the state.
    let signs = [1.0, -1.0];
    let mut branches = Vec::with_capacity(4);
    let mut v = [Complex64::ZERO; 4];
    for (k, (i, j)) in (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).enumerate() {
        let b = coherent_product(space, &[cc(signs[i] * alpha), cc(signs[j] * beta)])?;
        v[k] = inner_product(&b, state)?;
        branches.push(b);
    }
    let mut g = [[Complex64::ZERO; 4]; 4];
    for (k, (i, j)) in (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).enumerate() {
        for (l, (i2, j2)) in (0..2).flat_map(|i2| (0..2).map(move |j2| (i2, j2))).enumerate() {
            g[k][l] = Complex64::new(ga[i][i2] * gb[j][j2], 0.0);
        }
    }
    let coeffs = solve4(&g, &v)?;
    // Residual: how much of the state lies outside span{branches}.
    let norm_sqr: f64 = state.amplitudes().iter().map(|a| a.norm_sqr()).sum();
    let mut proj = Complex64::ZERO; // ⟨ψ|Σ c_k b_k⟩
    let mut span = Complex64::ZERO; // ⟨Σ c b|Σ c b⟩
    for k in 0..4 {
        proj += v[k].conj() * coeffs[k];
        for l in 0..4 {
            span += coeffs[k].conj() * g[k][l] * coeffs[l];
        }
    }
    let residual_sqr = (norm_sqr - 2.0 * proj.re + span.re).max(0.0);
    if residual_sqr > 1e-10 * norm_sqr {
        return Err(CatwigError::InvalidArg(format!(
            "state is not a pointer-branch superposition (out-of-span fraction {:.3e})",
            residual_sqr / norm_sqr
        )));
    }
    Ok([[coeffs[0], coeffs[1]], [coeffs[2], coeffs[3]]])
}

/// Solve a 4×4 complex system by Gaussian elimination with partial
/// pivoting. The Gram matrices here are well-conditioned once the branch
/// distinctness guard has passed.
fn solve4(a: &[[Complex64; 4]; 4], b: &[Complex64; 4]) -> Result<[Complex64; 4]> {
    let mut m = *a;
    let mut rhs = *b;
    for col in 0..4 {
        let (pivot_row, pivot_mag) = (col..4)
            .map(|r| (r, m[r][col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if pivot_mag < 1e-12 {
            return Err(CatwigError::DegenerateBranches { alpha: 0.0 });
        }
        m.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        for r in col + 1..4 {
            let f = m[r][col] / m[col][col];
            let pivot_row_vals = m[col];
            for (c2, entry) in m[r].iter_mut().enumerate().skip(col) {
                *entry -= f * pivot_row_vals[c2];
            }
            let sub = f * rhs[col];
            rhs[r] -= sub;
        }
    }
    let mut x = [Complex64::ZERO; 4];
    for row in (0..4).rev() {
        let mut acc = rhs[row];
        for c2 in row + 1..4 {
            acc -= m[row][c2] * x[c2];
        }
        x[row] = acc / m[row][row];
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// Meter attachment
// ---------------------------------------------------------------------------

/// Which laboratories acquire a meter tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeterLabs {
    A,
    B,
    Both,
}

/// Measurement as branch-tagging: decompose a two-mode pointer state into
/// its four coherent branches and give each lab's branch a meter factor
/// |+γ⟩ or |−γ⟩ matching the branch sign. Meter modes are appended after
/// the system modes (lab A's meter first when both are tagged).
///
/// For macroscopically distinct branches this equals the meter-coupling
/// Hamiltonian evolution up to O(e^{−2α²}); the exact Hamiltonian path is
/// available in [`crate::dynamics::qubit_meter_couple`] for the two-level
/// model.
pub fn attach_meters(
    state: &FockVector,
    alpha: f64,
    beta: f64,
    gamma: f64,
    labs: MeterLabs,
) -> Result<FockVector> {
    let coeffs = pointer_branch_coefficients(state, alpha, beta)?;
    let cutoff = state.space().cutoff();
    let n_meters = match labs {
        MeterLabs::A | MeterLabs::B => 1,
        MeterLabs::Both => 2,
    };
    let space = ModeSpace::new(2 + n_meters, cutoff)?;
    let signs = [1.0, -1.0];
    let mut terms = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            if coeffs[i][j].norm() < 1e-14 {
                continue;
            }
            let mut amps = vec![cc(signs[i] * alpha), cc(signs[j] * beta)];
            match labs {
                MeterLabs::A => amps.push(cc(signs[i] * gamma)),
                MeterLabs::B => amps.push(cc(signs[j] * gamma)),
                MeterLabs::Both => {
                    amps.push(cc(signs[i] * gamma));
                    amps.push(cc(signs[j] * gamma));
                }
            }
            terms.push((coeffs[i][j], coherent_product(space, &amps)?));
        }
    }
    let term_refs: Vec<(Complex64, &FockVector)> =
        terms.iter().map(|(c, s)| (*c, s)).collect();
    let (tagged, _) = superpose(&term_refs)?;
    Ok(tagged)
}

/// Componentwise [`attach_meters`] over a mixture (weights unchanged):
/// measuring a classical mixture tags each component independently.
pub fn attach_meters_ensemble(
    ensemble: &WeightedEnsemble,
    alpha: f64,
    beta: f64,
    gamma: f64,
    labs: MeterLabs,
) -> Result<WeightedEnsemble> {
    ensemble.map_components(|state| attach_meters(state, alpha, beta, gamma, labs))
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
