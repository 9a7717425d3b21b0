//! Husimi Q functions and their X-quadrature marginals.
//!
//! Conventions: X̂ = (â+â†)/2, P̂ = (â−â†)/2i, so a coherent state |α₀⟩
//! sits at the phase-space point (Re α₀, Im α₀) and
//! Q(α₀,…) = (1/π^m)|⟨α₀,…|ψ⟩|² integrates to 1 with measure ∏ dX dP.
//! The X-marginal of |α₀⟩ is the unit-width Gaussian e^{−(X−Re α₀)²}/√π.
//!
//! Marginals over a pair of kept modes are computed by one general code
//! path: a low-rank product decomposition of the state, numeric trapezoid
//! integration over the kept modes' P quadratures, and exact Gram factors
//! for every traced mode (the coherent resolution of identity turns a
//! traced phase plane into an inner product). Closed Gaussian forms are
//! reserved for this module's test oracles.

use num_complex::Complex64;
use std::fmt::Write as _;

use crate::dynamics::{kerr_evolve, KerrParams};
use crate::error::{CatwigError, Result};
use crate::fock::{
    check_amp_fits, coherent_product, inner_product, product_terms, ProductTerms, StateLike,
};

/// Numeric P-integration window used by the marginals: the integrand's P
/// width is ~1 around branch centers that all supported amplitudes keep
/// within this window, so the ±6 margin leaves sub-1e−9 tail mass.
pub const P_WINDOW: GridSpec = GridSpec { min: -6.0, max: 6.0, n: 241 };

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

/// A uniform 1-D sampling grid.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        let g = GridSpec { min, max, n };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite()) || self.max <= self.min || self.n < 2 {
            return Err(CatwigError::InvalidArg(format!(
                "grid needs finite min < max and n ≥ 2, got {}:{}:{}",
                self.min, self.max, self.n
            )));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.n - 1) as f64
    }

    pub fn points(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.n).map(|i| self.min + h * i as f64).collect()
    }

    /// Trapezoid quadrature weights (step size folded in).
    pub fn weights(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.n)
            .map(|i| if i == 0 || i == self.n - 1 { 0.5 * h } else { h })
            .collect()
    }
}

impl std::str::FromStr for GridSpec {
    type Err = CatwigError;

    /// Parse the `min:max:n` form used by command-line flags.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(CatwigError::InvalidArg(format!(
                "grid must be min:max:n, got {s:?}"
            )));
        }
        let min: f64 = parts[0]
            .parse()
            .map_err(|_| CatwigError::InvalidArg(format!("bad grid min {:?}", parts[0])))?;
        let max: f64 = parts[1]
            .parse()
            .map_err(|_| CatwigError::InvalidArg(format!("bad grid max {:?}", parts[1])))?;
        let n: usize = parts[2]
            .parse()
            .map_err(|_| CatwigError::InvalidArg(format!("bad grid count {:?}", parts[2])))?;
        GridSpec::new(min, max, n)
    }
}

/// The default X grid for pointer amplitude `amp`: ±(|amp|+6), 801 points.
pub fn default_grid(amp: f64) -> GridSpec {
    let r = amp.abs() + 6.0;
    GridSpec { min: -r, max: r, n: 801 }
}

/// A labeled grid axis of a sampled Q function.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub label: String,
    pub grid: GridSpec,
}

/// What a [`QGrid`] samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QGridKind {
    /// The full Q over every mode's (X, P) plane.
    Full,
    /// The (X_A, X_B) marginal, P quadratures integrated out.
    MarginalXx,
}

/// A sampled Husimi function (full or marginal) over a rectangular grid,
/// with axis metadata and a free-text descriptor of what produced it.
#[derive(Debug, Clone)]
pub struct QGrid {
    pub kind: QGridKind,
    pub axes: Vec<Axis>,
    /// Row-major flat values; the first axis varies slowest.
    pub values: Vec<f64>,
    /// State descriptor plus evolution times, for self-describing output.
    pub provenance: String,
}

impl QGrid {
    /// Value at the given per-axis indices.
    pub fn value_at(&self, idx: &[usize]) -> f64 {
        assert_eq!(idx.len(), self.axes.len(), "index rank mismatch");
        let mut flat = 0;
        for (i, axis) in idx.iter().zip(&self.axes) {
            assert!(*i < axis.grid.n, "index out of range");
            flat = flat * axis.grid.n + i;
        }
        self.values[flat]
    }

    /// Smallest sampled value (useful as a positivity check).
    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Trapezoid integral over all axes.
    pub fn integral(&self) -> f64 {
        let weight_tables: Vec<Vec<f64>> = self.axes.iter().map(|a| a.grid.weights()).collect();
        let mut total = 0.0;
        let mut idx = vec![0usize; self.axes.len()];
        for &v in &self.values {
            let mut w = v;
            for (i, table) in idx.iter().zip(&weight_tables) {
                w *= table[*i];
            }
            total += w;
            // Odometer increment, last axis fastest.
            for ax in (0..idx.len()).rev() {
                idx[ax] += 1;
                if idx[ax] < self.axes[ax].grid.n {
                    break;
                }
                idx[ax] = 0;
            }
        }
        total
    }

    /// Serialize a marginal grid as CSV: a `# axes:` header carrying the
    /// grid metadata, a column-name line, then one `x_a,x_b,q` row per
    /// point.
    pub fn to_csv(&self) -> Result<String> {
        if self.kind != QGridKind::MarginalXx || self.axes.len() != 2 {
            return Err(CatwigError::InvalidArg(
                "CSV export is defined for X-X marginal grids".into(),
            ));
        }
        let (a, b) = (&self.axes[0], &self.axes[1]);
        let mut out = String::with_capacity(self.values.len() * 40);
        let _ = writeln!(
            out,
            "# axes: {}[{},{},{}] {}[{},{},{}]",
            a.label, a.grid.min, a.grid.max, a.grid.n, b.label, b.grid.min, b.grid.max, b.grid.n
        );
        out.push_str("x_a,x_b,q\n");
        let xa = a.grid.points();
        let xb = b.grid.points();
        for (i, &x1) in xa.iter().enumerate() {
            for (j, &x2) in xb.iter().enumerate() {
                let _ = writeln!(out, "{x1:.9},{x2:.9},{:.12e}", self.values[i * xb.len() + j]);
            }
        }
        Ok(out)
    }
}

/// Compare two grids sampled on identical axes: returns
/// (sup-norm, cell-volume-weighted L1) of the pointwise difference.
pub fn q_distance(g1: &QGrid, g2: &QGrid) -> Result<(f64, f64)> {
    if g1.kind != g2.kind || g1.axes.len() != g2.axes.len() {
        return Err(CatwigError::AxisMismatch(
            "grids have different kinds or ranks".into(),
        ));
    }
    for (a, b) in g1.axes.iter().zip(&g2.axes) {
        let same = a.label == b.label
            && (a.grid.min - b.grid.min).abs() < 1e-12
            && (a.grid.max - b.grid.max).abs() < 1e-12
            && a.grid.n == b.grid.n;
        if !same {
            return Err(CatwigError::AxisMismatch(format!(
                "axis {:?} differs from {:?}",
                a.label, b.label
            )));
        }
    }
    let weight_tables: Vec<Vec<f64>> = g1.axes.iter().map(|a| a.grid.weights()).collect();
    let mut sup = 0.0f64;
    let mut l1 = 0.0f64;
    let mut idx = vec![0usize; g1.axes.len()];
    for (&v1, &v2) in g1.values.iter().zip(&g2.values) {
        let d = (v1 - v2).abs();
        sup = sup.max(d);
        let mut w = d;
        for (i, table) in idx.iter().zip(&weight_tables) {
            w *= table[*i];
        }
        l1 += w;
        for ax in (0..idx.len()).rev() {
            idx[ax] += 1;
            if idx[ax] < g1.axes[ax].grid.n {
                break;
            }
            idx[ax] = 0;
        }
    }
    Ok((sup, l1))
}

// ---------------------------------------------------------------------------
// Pointwise Q
// ---------------------------------------------------------------------------

/// Q at a single phase point (one complex label X+iP per mode):
/// (1/π^m)|⟨labels|ψ⟩|², weighted over ensemble components.
///
/// Errors with a truncation report when a label lies outside the range the
/// state's cutoff can support, because there the truncated evaluation no
/// longer reflects the untruncated state.
pub fn q_value<S: StateLike>(state: &S, point: &[Complex64]) -> Result<f64> {
    let space = state.space();
    if point.len() != space.n_modes() {
        return Err(CatwigError::SpaceMismatch(format!(
            "phase point has {} coordinates for {} modes",
            point.len(),
            space.n_modes()
        )));
    }
    for &z in point {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(CatwigError::InvalidArg("non-finite phase point".into()));
        }
        check_amp_fits(z, space.cutoff())?;
    }
    let probe = coherent_product(space, point)?;
    let inv_pi_m = std::f64::consts::PI.powi(-(space.n_modes() as i32));
    let mut total = 0.0;
    for (w, psi) in state.pure_components() {
        total += w * inner_product(&probe, psi)?.norm_sqr() * inv_pi_m;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Shared low-rank evaluation machinery
// ---------------------------------------------------------------------------

/// 1/√n! table (indexed by n), used to turn Fock amplitudes into the
/// polynomial coefficients of ⟨X+iP|·⟩.
fn inv_sqrt_factorials(cutoff: usize) -> Vec<f64> {
    let mut v = Vec::with_capacity(cutoff);
    let mut acc = 1.0f64;
    v.push(1.0);
    for n in 1..cutoff {
        acc /= (n as f64).sqrt();
        v.push(acc);
    }
    v
}

/// ⟨z|f⟩ for a single-mode factor `f` with pre-scaled coefficients
/// h_n = f_n/√n!: Horner evaluation of Σ h_n z̄ⁿ times the Gaussian weight.
fn coherent_row(h: &[Complex64], z: Complex64) -> Complex64 {
    let zc = z.conj();
    let mut acc = Complex64::ZERO;
    for &c in h.iter().rev() {
        acc = acc * zc + c;
    }
    acc * (-0.5 * z.norm_sqr()).exp()
}

/// Per-term polynomial coefficients for one mode: h[r][n] = f_{r,n}/√n!.
fn scaled_factors(terms: &ProductTerms, mode: usize) -> Vec<Vec<Complex64>> {
    let inv = inv_sqrt_factorials(terms.space().cutoff());
    (0..terms.rank())
        .map(|r| {
            terms
                .factor(r, mode)
                .iter()
                .zip(&inv)
                .map(|(f, s)| f * s)
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Full-Q lattice
// ---------------------------------------------------------------------------

/// Sample the full two-mode Q on an (X_A, P_A, X_B, P_B) lattice.
///
/// The state is decomposed into product terms once, so the cost per lattice
/// point is O(rank) after an O(axis × rank × cutoff) table build.
pub fn q_xp_lattice<S: StateLike>(state: &S, axes: &[GridSpec; 4]) -> Result<QGrid> {
    let space = state.space();
    if space.n_modes() != 2 {
        return Err(CatwigError::SpaceMismatch(format!(
            "full-Q lattice is two-mode (got {} modes)",
            space.n_modes()
        )));
    }
    for g in axes {
        g.validate()?;
    }
    let labels = ["X_A", "P_A", "X_B", "P_B"];
    let n_a = axes[0].n * axes[1].n;
    let n_b = axes[2].n * axes[3].n;
    let mut values = vec![0.0f64; n_a * n_b];
    let inv_pi2 = 1.0 / (std::f64::consts::PI * std::f64::consts::PI);

    for (w, psi) in state.pure_components() {
        let terms = product_terms(psi)?;
        let rank = terms.rank();
        // u-tables over each mode's phase plane.
        let mut tables = [Vec::new(), Vec::new()];
        for (mode, table) in tables.iter_mut().enumerate() {
            let h = scaled_factors(&terms, mode);
            let xs = axes[2 * mode].points();
            let ps = axes[2 * mode + 1].points();
            let mut t = vec![Complex64::ZERO; rank * xs.len() * ps.len()];
            for (r, hr) in h.iter().enumerate() {
                for (i, &x) in xs.iter().enumerate() {
                    for (j, &p) in ps.iter().enumerate() {
                        t[(r * xs.len() + i) * ps.len() + j] =
                            coherent_row(hr, Complex64::new(x, p));
                    }
                }
            }
            *table = t;
        }
        // Accumulate |Σ_r c_r u_A[r] u_B[r]|².
        let coeffs = terms.coeffs();
        let mut partial = vec![Complex64::ZERO; rank];
        for ia in 0..n_a {
            for (r, p) in partial.iter_mut().enumerate() {
                *p = coeffs[r] * tables[0][r * n_a + ia];
            }
            let row = &mut values[ia * n_b..(ia + 1) * n_b];
            for (ib, v) in row.iter_mut().enumerate() {
                let mut amp = Complex64::ZERO;
                for (r, p) in partial.iter().enumerate() {
                    amp += p * tables[1][r * n_b + ib];
                }
                *v += w * amp.norm_sqr() * inv_pi2;
            }
        }
    }

    Ok(QGrid {
        kind: QGridKind::Full,
        axes: labels
            .iter()
            .zip(axes)
            .map(|(l, g)| Axis { label: (*l).into(), grid: *g })
            .collect(),
        values,
        provenance: format!("full Q lattice, {} modes, cutoff {}", 2, space.cutoff()),
    })
}

// ---------------------------------------------------------------------------
// X-X marginal
// ---------------------------------------------------------------------------

/// The (X_A, X_B) marginal of the Q function over two kept modes, every
/// other mode traced out exactly.
///
/// `evolution = Some((t_a, t_b))` applies the measurement-setting Kerr
/// dynamics (unit Ω; pass Ω·t for other rates) to the kept modes before
/// integration, so setting sweeps don't need intermediate state copies.
///
/// The kept modes' P quadratures are integrated by trapezoid over
/// [`P_WINDOW`]; the result is normalization-checked and an under-resolved
/// or under-covering grid is rejected.
pub fn q_marginal_xx<S: StateLike>(
    state: &S,
    modes: (usize, usize),
    grids: (GridSpec, GridSpec),
    evolution: Option<(f64, f64)>,
) -> Result<QGrid> {
    let space = state.space();
    let m = space.n_modes();
    if modes.0 >= m || modes.1 >= m || modes.0 == modes.1 {
        return Err(CatwigError::SpaceMismatch(format!(
            "marginal modes {:?} invalid for {} modes",
            modes, m
        )));
    }
    grids.0.validate()?;
    grids.1.validate()?;

    let p_pts = P_WINDOW.points();
    let p_wts = P_WINDOW.weights();
    let xa = grids.0.points();
    let xb = grids.1.points();
    let mut values = vec![0.0f64; xa.len() * xb.len()];
    let inv_pi2 = 1.0 / (std::f64::consts::PI * std::f64::consts::PI);
    let mut expected_mass = 0.0;

    for (w, psi) in state.pure_components() {
        let norm = psi.norm();
        expected_mass += w * norm * norm;
        let evolved;
        let component = match evolution {
            None => psi,
            Some((t_a, t_b)) => {
                let step_a = kerr_evolve(psi, modes.0, KerrParams { omega: 1.0, t: t_a })?;
                evolved = kerr_evolve(&step_a, modes.1, KerrParams { omega: 1.0, t: t_b })?;
                &evolved
            }
        };
        let terms = product_terms(component)?;
        let rank = terms.rank();

        // F tables per kept mode: F[x][r][s] = ∫dP u_r(X+iP) conj(u_s(X+iP)).
        let f_table = |mode: usize, xs: &[f64]| -> Vec<Complex64> {
            let h = scaled_factors(&terms, mode);
            let mut table = vec![Complex64::ZERO; xs.len() * rank * rank];
            let mut u = vec![Complex64::ZERO; rank];
            for (ix, &x) in xs.iter().enumerate() {
                let cell = &mut table[ix * rank * rank..(ix + 1) * rank * rank];
                for (&p, &wp) in p_pts.iter().zip(&p_wts) {
                    let z = Complex64::new(x, p);
                    for (ur, hr) in u.iter_mut().zip(&h) {
                        *ur = coherent_row(hr, z);
                    }
                    for r in 0..rank {
                        for s in 0..rank {
                            cell[r * rank + s] += wp * u[r] * u[s].conj();
                        }
                    }
                }
            }
            table
        };
        let fa = f_table(modes.0, &xa);
        let fb = f_table(modes.1, &xb);

        // Exact Gram factor over every traced mode.
        let mut gram = vec![Complex64::ZERO; rank * rank];
        for r in 0..rank {
            for s in 0..rank {
                let mut g = terms.coeffs()[r] * terms.coeffs()[s].conj();
                for mode in 0..m {
                    if mode == modes.0 || mode == modes.1 {
                        continue;
                    }
                    let fr = terms.factor(r, mode);
                    let fs = terms.factor(s, mode);
                    let mut ip = Complex64::ZERO; // ⟨f_s|f_r⟩
                    for (a, b) in fs.iter().zip(fr) {
                        ip += a.conj() * b;
                    }
                    g *= ip;
                }
                gram[r * rank + s] = g;
            }
        }

        for (i, _) in xa.iter().enumerate() {
            let ca = &fa[i * rank * rank..(i + 1) * rank * rank];
            let row = &mut values[i * xb.len()..(i + 1) * xb.len()];
            for (j, v) in row.iter_mut().enumerate() {
                let cb = &fb[j * rank * rank..(j + 1) * rank * rank];
                let mut acc = 0.0;
                for r in 0..rank {
                    for s in 0..rank {
                        acc += (gram[r * rank + s] * ca[r * rank + s] * cb[r * rank + s]).re;
                    }
                }
                *v += w * acc * inv_pi2;
            }
        }
    }

    let grid = QGrid {
        kind: QGridKind::MarginalXx,
        axes: vec![
            Axis { label: "X_A".into(), grid: grids.0 },
            Axis { label: "X_B".into(), grid: grids.1 },
        ],
        values,
        provenance: match evolution {
            None => format!("marginal-XX modes=({},{})", modes.0, modes.1),
            Some((ta, tb)) => format!(
                "marginal-XX modes=({},{}) evolution t=({ta},{tb})",
                modes.0, modes.1
            ),
        },
    };
    let mass = grid.integral();
    if (mass - expected_mass).abs() > 1e-3 {
        return Err(CatwigError::GridTooCoarse {
            detail: format!(
                "marginal integrates to {mass:.6} (expected {expected_mass:.6}); \
                 the grid is under-resolved or does not cover the state"
            ),
        });
    }
    Ok(grid)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
