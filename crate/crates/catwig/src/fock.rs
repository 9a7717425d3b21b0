//! Truncated multi-mode Fock space: the numerical bedrock of the crate.
//!
//! Every bosonic state is a dense amplitude vector over `n_modes` harmonic
//! modes, each truncated to `cutoff` Fock levels (occupations 0 … cutoff−1).
//! Indexing is row-major with **mode 0 slowest**: the flat index of the
//! occupation tuple (n₀, n₁, …) is Σₘ nₘ · cutoffⁿ⁻¹⁻ᵐ.
//!
//! Conventions used throughout:
//!
//! * Coherent state |α⟩ = e^{−|α|²/2} Σₙ αⁿ/√n! |n⟩, so that
//!   ⟨β|α⟩ = exp(−|α|²/2 − |β|²/2 + β̄α).
//! * Quadratures X̂ = (â + â†)/2, P̂ = (â − â†)/2i, so a coherent state sits
//!   at (X, P) = (Re α, Im α) and the phase-space label is α = X + iP.
//! * Inner products are conjugate-linear in the **first** argument.

use num_complex::Complex64;

use crate::error::{CatwigError, Result};

// ---------------------------------------------------------------------------
// Constants
// ---------------------------------------------------------------------------

/// Default per-mode Fock cutoff. Comfortably holds coherent amplitudes up to
/// |α| ≈ 3.5 (occupation tail below 1e−10); all headline scenarios use α = 3.
pub const DEFAULT_CUTOFF: usize = 40;

/// Hard cap on the total amplitude count of a mode space (≈ 1 GiB of
/// complex doubles). Requests beyond this are refused rather than thrashed.
pub const DIMENSION_CAP: u64 = 1 << 26;

/// Superpositions whose pre-normalization norm falls below this are treated
/// as numerically zero (complete destructive interference).
pub const ZERO_NORM_TOL: f64 = 1e-8;

/// Cap on the number of product terms a decomposition may emit.
pub const RANK_CAP: usize = 64;

/// Relative residual tolerance for the product-term decomposition.
const DECOMP_TOL_REL: f64 = 1e-13;

// ---------------------------------------------------------------------------
// Mode space
// ---------------------------------------------------------------------------

/// Descriptor of a truncated Fock space: mode count and shared per-mode cutoff.
///
/// The struct is `Copy` and deliberately opaque; construct with
/// [`ModeSpace::new`], which enforces the dimension cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeSpace {
    n_modes: usize,
    cutoff: usize,
}

impl ModeSpace {
    /// Create a space of `n_modes` modes, each truncated to `cutoff` levels
    /// (occupations 0 … cutoff−1).
    ///
    /// Errors with [`CatwigError::DimensionOverflow`] if cutoffⁿ exceeds the
    /// amplitude cap, and with [`CatwigError::InvalidArg`] on empty shapes.
    pub fn new(n_modes: usize, cutoff: usize) -> Result<Self> {
        if n_modes == 0 || cutoff == 0 {
            return Err(CatwigError::InvalidArg(
                "mode space needs at least one mode and one Fock level".into(),
            ));
        }
        let mut dim: u128 = 1;
        for _ in 0..n_modes {
            dim *= cutoff as u128;
            if dim > DIMENSION_CAP as u128 {
                return Err(CatwigError::DimensionOverflow { dim, cap: DIMENSION_CAP });
            }
        }
        Ok(ModeSpace { n_modes, cutoff })
    }

    /// Number of modes.
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Retained Fock levels per mode (occupations run 0 … cutoff−1).
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Total amplitude count cutoffⁿ.
    pub fn dim(&self) -> usize {
        self.cutoff.pow(self.n_modes as u32)
    }

    /// Flat-index stride of one occupation step in `mode`.
    pub fn stride(&self, mode: usize) -> usize {
        debug_assert!(mode < self.n_modes);
        self.cutoff.pow((self.n_modes - 1 - mode) as u32)
    }

    /// Occupation of `mode` encoded in the flat index.
    pub fn occupation(&self, index: usize, mode: usize) -> usize {
        index / self.stride(mode) % self.cutoff
    }

    /// Flat index of an occupation tuple.
    pub fn index_of(&self, occupations: &[usize]) -> Result<usize> {
        if occupations.len() != self.n_modes {
            return Err(CatwigError::SpaceMismatch(format!(
                "occupation tuple has {} entries, space has {} modes",
                occupations.len(),
                self.n_modes
            )));
        }
        let mut idx = 0usize;
        for &n in occupations {
            if n >= self.cutoff {
                return Err(CatwigError::InvalidArg(format!(
                    "occupation {n} out of range (cutoff {})",
                    self.cutoff
                )));
            }
            idx = idx * self.cutoff + n;
        }
        Ok(idx)
    }

    fn require_same(&self, other: &ModeSpace) -> Result<()> {
        if self != other {
            return Err(CatwigError::SpaceMismatch(format!(
                "{}×{} levels vs {}×{} levels",
                self.n_modes, self.cutoff, other.n_modes, other.cutoff
            )));
        }
        Ok(())
    }

    fn require_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.n_modes {
            return Err(CatwigError::InvalidArg(format!(
                "mode {mode} out of range (space has {} modes)",
                self.n_modes
            )));
        }
        Ok(())
    }
}

/// Smallest cutoff recommended for coherent amplitudes up to `max_amp`:
/// ⌈a² + 6a + 10⌉ keeps the Poisson occupation tail below ~1e−10.
pub fn recommended_cutoff(max_amp: f64) -> usize {
    let a = max_amp.abs();
    (a * a + 6.0 * a + 10.0).ceil() as usize
}

/// Largest coherent amplitude a cutoff supports: inverse of the precondition
/// |α|² + 6|α| + 6 ≤ cutoff enforced by [`coherent_state`].
pub fn max_supported_amp(cutoff: usize) -> f64 {
    // Positive root of a² + 6a + (6 − cutoff) = 0.
    (-6.0 + (36.0 - 4.0 * (6.0 - cutoff as f64)).sqrt()) / 2.0
}

// ---------------------------------------------------------------------------
// Fock vectors
// ---------------------------------------------------------------------------

/// A pure state: dense complex amplitudes over a [`ModeSpace`].
#[derive(Debug, Clone)]
pub struct FockVector {
    pub(crate) space: ModeSpace,
    pub(crate) amps: Vec<Complex64>,
}

impl FockVector {
    /// The vacuum |0…0⟩.
    pub fn vacuum(space: ModeSpace) -> Self {
        let mut amps = vec![Complex64::ZERO; space.dim()];
        amps[0] = Complex64::ONE;
        FockVector { space, amps }
    }

    /// Build a state from raw amplitudes (length must equal `space.dim()`).
    /// The vector is **not** normalized automatically.
    pub fn from_amplitudes(space: ModeSpace, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != space.dim() {
            return Err(CatwigError::SpaceMismatch(format!(
                "amplitude vector has length {}, space dimension is {}",
                amps.len(),
                space.dim()
            )));
        }
        Ok(FockVector { space, amps })
    }

    /// The underlying mode space.
    pub fn space(&self) -> ModeSpace {
        self.space
    }

    /// Read-only view of the amplitudes (row-major, mode 0 slowest).
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Euclidean norm ‖ψ‖.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Rescale to unit norm. Errors with [`CatwigError::ZeroNorm`] if the
    /// norm is numerically zero.
    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm();
        if n < ZERO_NORM_TOL {
            return Err(CatwigError::ZeroNorm(n));
        }
        let inv = 1.0 / n;
        for a in &mut self.amps {
            *a *= inv;
        }
        Ok(())
    }

    /// Mean occupation ⟨n̂ₘ⟩ of one mode.
    pub fn mean_occupation(&self, mode: usize) -> Result<f64> {
        self.space.require_mode(mode)?;
        let norm_sqr: f64 = self.amps.iter().map(|a| a.norm_sqr()).sum();
        let mut acc = 0.0;
        for (idx, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p > 0.0 {
                acc += p * self.space.occupation(idx, mode) as f64;
            }
        }
        Ok(acc / norm_sqr)
    }

    /// Mean quadrature ⟨X̂ₘ⟩ = Re ⟨âₘ⟩ with X̂ = (â + â†)/2.
    ///
    /// A coherent state |α⟩ returns Re α, matching the phase-space axes of
    /// the Husimi functions in [`crate::husimi`].
    pub fn mean_x(&self, mode: usize) -> Result<f64> {
        self.space.require_mode(mode)?;
        let norm_sqr: f64 = self.amps.iter().map(|a| a.norm_sqr()).sum();
        let stride = self.space.stride(mode);
        let cutoff = self.space.cutoff;
        let mut a_mean = Complex64::ZERO;
        // ⟨â⟩ = Σ ψ̄(…, n−1, …) √n ψ(…, n, …)
        for (idx, amp) in self.amps.iter().enumerate() {
            let n = idx / stride % cutoff;
            if n >= 1 {
                a_mean += self.amps[idx - stride].conj() * amp * (n as f64).sqrt();
            }
        }
        Ok((a_mean / norm_sqr).re)
    }

    /// Probability mass sitting on the top two Fock levels of **any** mode —
    /// a cheap a-posteriori truncation diagnostic (should be ≲ 1e−10 for
    /// well-chosen cutoffs).
    pub fn truncation_leak(&self) -> f64 {
        let cutoff = self.space.cutoff;
        if cutoff <= 2 {
            return self.amps.iter().map(|a| a.norm_sqr()).sum();
        }
        let mut leak = 0.0;
        for (idx, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p == 0.0 {
                continue;
            }
            for mode in 0..self.space.n_modes {
                if self.space.occupation(idx, mode) >= cutoff - 2 {
                    leak += p;
                    break;
                }
            }
        }
        leak
    }
}

// ---------------------------------------------------------------------------
// State construction
// ---------------------------------------------------------------------------

/// Normalized coherent coefficients cₙ = e^{−|α|²/2} αⁿ/√n!, computed by the
/// overflow-free recurrence cₙ = cₙ₋₁ · α/√n.
fn coherent_coefficients(alpha: Complex64, cutoff: usize) -> Vec<Complex64> {
    let mut coeffs = Vec::with_capacity(cutoff);
    let mut c = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    coeffs.push(c);
    for n in 1..cutoff {
        c *= alpha / (n as f64).sqrt();
        coeffs.push(c);
    }
    coeffs
}

pub(crate) fn check_amp_fits(alpha: Complex64, cutoff: usize) -> Result<()> {
    let a = alpha.norm();
    if a * a + 6.0 * a + 6.0 > cutoff as f64 {
        return Err(CatwigError::Truncation {
            amp: a,
            required: recommended_cutoff(a),
            cutoff,
        });
    }
    Ok(())
}

/// Coherent state |α⟩ in `mode`, vacuum in every other mode.
///
/// Precondition: |α|² + 6|α| + 6 ≤ cutoff (occupation tail below ~1e−10),
/// otherwise [`CatwigError::Truncation`].
pub fn coherent_state(space: ModeSpace, mode: usize, alpha: Complex64) -> Result<FockVector> {
    space.require_mode(mode)?;
    check_amp_fits(alpha, space.cutoff)?;
    let mut alphas = vec![Complex64::ZERO; space.n_modes];
    alphas[mode] = alpha;
    coherent_product(space, &alphas)
}

/// Product of coherent states |α₀⟩ ⊗ |α₁⟩ ⊗ … (one amplitude per mode).
pub fn coherent_product(space: ModeSpace, alphas: &[Complex64]) -> Result<FockVector> {
    if alphas.len() != space.n_modes {
        return Err(CatwigError::SpaceMismatch(format!(
            "{} coherent amplitudes for a {}-mode space",
            alphas.len(),
            space.n_modes
        )));
    }
    for &a in alphas {
        check_amp_fits(a, space.cutoff)?;
    }
    // Iterated Kronecker product, mode 0 outermost.
    let mut amps = vec![Complex64::ONE];
    for &alpha in alphas {
        let factor = coherent_coefficients(alpha, space.cutoff);
        let mut next = Vec::with_capacity(amps.len() * factor.len());
        for &a in &amps {
            for &f in &factor {
                next.push(a * f);
            }
        }
        amps = next;
    }
    Ok(FockVector { space, amps })
}

/// Fock basis state |n₀, n₁, …⟩.
pub fn fock_basis_state(space: ModeSpace, occupations: &[usize]) -> Result<FockVector> {
    let idx = space.index_of(occupations)?;
    let mut amps = vec![Complex64::ZERO; space.dim()];
    amps[idx] = Complex64::ONE;
    Ok(FockVector { space, amps })
}

/// Inner product ⟨a|b⟩, conjugate-linear in the **first** argument.
pub fn inner_product(a: &FockVector, b: &FockVector) -> Result<Complex64> {
    a.space.require_same(&b.space)?;
    Ok(a
        .amps
        .iter()
        .zip(&b.amps)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Tensor product a ⊗ b. The factors must share a cutoff; the result lives in
/// the concatenated space (modes of `a` first).
pub fn tensor(a: &FockVector, b: &FockVector) -> Result<FockVector> {
    if a.space.cutoff != b.space.cutoff {
        return Err(CatwigError::SpaceMismatch(format!(
            "tensor factors have cutoffs {} and {}",
            a.space.cutoff, b.space.cutoff
        )));
    }
    let space = ModeSpace::new(a.space.n_modes + b.space.n_modes, a.space.cutoff)?;
    let mut amps = Vec::with_capacity(a.amps.len() * b.amps.len());
    for &x in &a.amps {
        for &y in &b.amps {
            amps.push(x * y);
        }
    }
    Ok(FockVector { space, amps })
}

/// Normalized superposition Σ cᵢ |ψᵢ⟩ / ‖·‖.
///
/// Returns the normalized state together with the **pre-normalization norm**
/// ‖Σ cᵢ ψᵢ‖ — the physically meaningful interference datum (e.g. √2-related
/// factors for cat states). Errors with [`CatwigError::ZeroNorm`] when the
/// superposition destructively cancels.
pub fn superpose(terms: &[(Complex64, &FockVector)]) -> Result<(FockVector, f64)> {
    let (_, first) = terms
        .first()
        .ok_or_else(|| CatwigError::InvalidArg("superpose needs at least one term".into()))?;
    let space = first.space;
    let mut amps = vec![Complex64::ZERO; space.dim()];
    for (coeff, state) in terms {
        space.require_same(&state.space)?;
        for (acc, &a) in amps.iter_mut().zip(&state.amps) {
            *acc += coeff * a;
        }
    }
    let mut out = FockVector { space, amps };
    let pre_norm = out.norm();
    out.normalize()?;
    Ok((out, pre_norm))
}

// ---------------------------------------------------------------------------
// Weighted ensembles (classical mixtures of pure states)
// ---------------------------------------------------------------------------

/// A classical mixture Σ wᵢ |ψᵢ⟩⟨ψᵢ| kept as its list of pure components.
///
/// Every observable computed in this crate (probabilities, Husimi values,
/// spin moments) is linear in the density operator, so mixtures never need a
/// materialized density matrix — the weighted sum over components is exact.
#[derive(Debug, Clone)]
pub struct WeightedEnsemble {
    space: ModeSpace,
    components: Vec<(f64, FockVector)>,
}

impl WeightedEnsemble {
    /// Build a mixture from `(weight, state)` pairs. Weights must be positive
    /// and sum to 1 within 1e−6; all states must share one space.
    pub fn new(components: Vec<(f64, FockVector)>) -> Result<Self> {
        let space = components
            .first()
            .ok_or_else(|| CatwigError::InvalidArg("ensemble needs at least one component".into()))?
            .1
            .space;
        let mut total = 0.0;
        for (w, state) in &components {
            space.require_same(&state.space)?;
            if *w <= 0.0 {
                return Err(CatwigError::InvalidArg(format!(
                    "ensemble weight {w} must be positive"
                )));
            }
            total += w;
        }
        if (total - 1.0).abs() > 1e-6 {
            return Err(CatwigError::InvalidArg(format!(
                "ensemble weights sum to {total}, expected 1"
            )));
        }
        Ok(WeightedEnsemble { space, components })
    }

    /// The shared mode space.
    pub fn space(&self) -> ModeSpace {
        self.space
    }

    /// The `(weight, state)` components.
    pub fn components(&self) -> &[(f64, FockVector)] {
        &self.components
    }

    /// Apply a pure-state map to every component (weights unchanged).
    pub fn map_components<F>(&self, mut f: F) -> Result<WeightedEnsemble>
    where
        F: FnMut(&FockVector) -> Result<FockVector>,
    {
        let mut components = Vec::with_capacity(self.components.len());
        for (w, state) in &self.components {
            components.push((*w, f(state)?));
        }
        WeightedEnsemble::new(components)
    }
}

/// Anything that behaves as a density operator given as pure components:
/// pure states (one component, weight 1) and weighted ensembles.
///
/// Measurement and Husimi routines are generic over this trait, so every
/// statistic is available for mixtures at no extra code.
pub trait StateLike {
    /// Mode space of the state.
    fn space(&self) -> ModeSpace;
    /// Pure components as `(weight, state)`; weights sum to 1.
    fn pure_components(&self) -> Vec<(f64, &FockVector)>;
}

impl StateLike for FockVector {
    fn space(&self) -> ModeSpace {
        self.space
    }
    fn pure_components(&self) -> Vec<(f64, &FockVector)> {
        vec![(1.0, self)]
    }
}

impl StateLike for WeightedEnsemble {
    fn space(&self) -> ModeSpace {
        self.space
    }
    fn pure_components(&self) -> Vec<(f64, &FockVector)> {
        self.components.iter().map(|(w, s)| (*w, s)).collect()
    }
}

// ---------------------------------------------------------------------------
// Product-term decomposition
// ---------------------------------------------------------------------------

/// A state written as a short sum of mode-product terms:
/// ψ = Σᵣ cᵣ · f⁽ʳ⁾₀ ⊗ f⁽ʳ⁾₁ ⊗ …, with every factor vector unit-normalized.
///
/// The cat/pointer states in this crate are exactly low-rank (a handful of
/// coherent-like factors per mode), which reduces 2m-dimensional phase-space
/// integrals to per-mode one-dimensional sums — the workhorse behind the
/// Husimi marginal grids.
#[derive(Debug, Clone)]
pub struct ProductTerms {
    space: ModeSpace,
    /// Term coefficients cᵣ.
    coeffs: Vec<Complex64>,
    /// factors[r][m] = unit-normalized factor vector of term r in mode m
    /// (length = cutoff).
    factors: Vec<Vec<Vec<Complex64>>>,
}

impl ProductTerms {
    /// Mode space of the decomposed state.
    pub fn space(&self) -> ModeSpace {
        self.space
    }

    /// Number of product terms.
    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    /// Term coefficients.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Factor vector of term `r` in mode `m`.
    pub fn factor(&self, r: usize, m: usize) -> &[Complex64] {
        &self.factors[r][m]
    }

    /// Rebuild the dense amplitude vector (testing / verification aid).
    pub fn reconstruct(&self) -> FockVector {
        let dim = self.space.dim();
        let mut amps = vec![Complex64::ZERO; dim];
        for (r, &c) in self.coeffs.iter().enumerate() {
            // Iterated Kronecker product of this term's factors.
            let mut term = vec![c];
            for m in 0..self.space.n_modes() {
                let factor = &self.factors[r][m];
                let mut next = Vec::with_capacity(term.len() * factor.len());
                for &a in &term {
                    for &f in factor {
                        next.push(a * f);
                    }
                }
                term = next;
            }
            for (acc, t) in amps.iter_mut().zip(term) {
                *acc += t;
            }
        }
        FockVector { space: self.space, amps }
    }
}

/// Decompose a state into a short sum of mode-product terms.
///
/// Uses recursive cross approximation with complete pivoting: the amplitude
/// tensor is split as (mode 0) × (rest), greedily peeled into rank-1 outer
/// products until the residual falls below `1e−13 ×` the largest amplitude,
/// and the procedure recurses on the remaining modes. Exact (to roundoff)
/// for states that truly are short product sums; errors with
/// [`CatwigError::RankOverflow`] after [`RANK_CAP`] terms otherwise.
pub fn product_terms(state: &FockVector) -> Result<ProductTerms> {
    let space = state.space;
    let max_abs = state
        .amps
        .iter()
        .map(|a| a.norm())
        .fold(0.0f64, f64::max);
    let mut out = ProductTerms { space, coeffs: Vec::new(), factors: Vec::new() };
    if max_abs == 0.0 {
        return Ok(out); // zero state: empty sum
    }
    let tol = DECOMP_TOL_REL * max_abs;
    let mut prefix = Vec::new();
    decompose_recursive(&state.amps, space.n_modes(), space.cutoff(), tol, Complex64::ONE, &mut prefix, &mut out)?;
    Ok(out)
}

/// Recursive worker: `tensor` holds an `n_modes`-mode block (row-major,
/// first mode slowest); `prefix` collects the factor vectors of already
/// peeled modes; `coeff` the accumulated coefficient.
fn decompose_recursive(
    tensor: &[Complex64],
    n_modes: usize,
    cutoff: usize,
    tol: f64,
    coeff: Complex64,
    prefix: &mut Vec<Vec<Complex64>>,
    out: &mut ProductTerms,
) -> Result<()> {
    if n_modes == 1 {
        let norm = tensor.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm <= tol {
            return Ok(()); // negligible leaf
        }
        if out.coeffs.len() >= RANK_CAP {
            return Err(CatwigError::RankOverflow { cap: RANK_CAP });
        }
        let inv = 1.0 / norm;
        let mut factors = prefix.clone();
        factors.push(tensor.iter().map(|a| a * inv).collect());
        out.coeffs.push(coeff * norm);
        out.factors.push(factors);
        return Ok(());
    }

    // View as a cutoff × rest_dim matrix and peel rank-1 cross terms.
    let rest_dim = tensor.len() / cutoff;
    let mut residual = tensor.to_vec();
    for _ in 0..RANK_CAP {
        // Complete pivoting: largest remaining entry.
        let (mut pivot_idx, mut pivot_abs) = (0usize, 0.0f64);
        for (idx, a) in residual.iter().enumerate() {
            let m = a.norm();
            if m > pivot_abs {
                pivot_abs = m;
                pivot_idx = idx;
            }
        }
        if pivot_abs <= tol {
            break;
        }
        let (pi, pj) = (pivot_idx / rest_dim, pivot_idx % rest_dim);
        let pivot = residual[pivot_idx];
        // Cross term: u = column pj over mode 0, v = row pi over the rest.
        let u: Vec<Complex64> = (0..cutoff).map(|i| residual[i * rest_dim + pj]).collect();
        let v: Vec<Complex64> =
            residual[pi * rest_dim..(pi + 1) * rest_dim].iter().map(|a| a / pivot).collect();
        for i in 0..cutoff {
            let ui = u[i];
            if ui == Complex64::ZERO {
                continue;
            }
            let row = &mut residual[i * rest_dim..(i + 1) * rest_dim];
            for (r, vj) in row.iter_mut().zip(&v) {
                *r -= ui * vj;
            }
        }
        // Normalize the mode-0 factor and recurse on the remaining modes.
        let u_norm = u.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let inv = 1.0 / u_norm;
        prefix.push(u.iter().map(|a| a * inv).collect());
        decompose_recursive(&v, n_modes - 1, cutoff, tol / u_norm.max(1.0), coeff * u_norm, prefix, out)?;
        prefix.pop();
    }
    // Verify the residual actually converged (otherwise the state exceeds
    // the rank cap along this split).
    let worst = residual.iter().map(|a| a.norm()).fold(0.0f64, f64::max);
    if worst > tol {
        return Err(CatwigError::RankOverflow { cap: RANK_CAP });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
