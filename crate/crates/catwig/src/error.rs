//! Error type shared by every module of the crate.
//!
//! All fallible operations return [`Result`]. The variants are grouped by how
//! the command-line driver maps them onto process exit codes:
//!
//! * usage / configuration problems → exit code 2,
//! * violated numeric preconditions (truncation, degenerate branches,
//!   too-coarse grids, …) → exit code 3,
//! * I/O failures → exit code 4.

use thiserror::Error;

/// Crate-wide error enumeration.
#[derive(Debug, Error)]
pub enum CatwigError {
    /// A coherent amplitude is too large for the requested Fock cutoff: the
    /// Poisson occupation tail would spill past the last retained level.
    #[error(
        "coherent amplitude |α| = {amp:.3} needs cutoff ≥ {required} (requested {cutoff}): \
         |α|² + 6|α| + 6 must not exceed the cutoff"
    )]
    Truncation {
        /// Magnitude of the offending coherent amplitude.
        amp: f64,
        /// Smallest admissible cutoff for that amplitude.
        required: usize,
        /// Cutoff that was actually requested.
        cutoff: usize,
    },

    /// Two states (or a state and an operation) disagree about the underlying
    /// mode space (mode count or per-mode cutoff).
    #[error("mode-space mismatch: {0}")]
    SpaceMismatch(String),

    /// The requested tensor space would exceed the amplitude-count cap.
    #[error("state dimension {dim} exceeds the supported maximum {cap}")]
    DimensionOverflow { dim: u128, cap: u64 },

    /// A superposition cancelled (or a projection annihilated) the state:
    /// the resulting norm is too small to renormalize meaningfully.
    #[error("state norm {0:.3e} is numerically zero; refusing to renormalize")]
    ZeroNorm(f64),

    /// Branch amplitudes ±α are not macroscopically distinct enough for the
    /// requested operation (e.g. a pointer-basis mixture with overlapping
    /// components).
    #[error(
        "branch separation |α| = {alpha:.3} is too small: ±α branches overlap \
         non-negligibly and pointer-basis decomposition is ill-conditioned"
    )]
    DegenerateBranches { alpha: f64 },

    /// A quadrature grid failed its self-consistency check (the distribution
    /// does not integrate to 1 within tolerance on the supplied grid).
    #[error("grid too coarse or too narrow: {detail}")]
    GridTooCoarse { detail: String },

    /// Two grids that must share axes do not.
    #[error("axis mismatch: {0}")]
    AxisMismatch(String),

    /// Product-term decomposition exceeded its rank cap; the state is not
    /// (numerically) a short sum of mode products.
    #[error("product decomposition exceeded the rank cap {cap}")]
    RankOverflow { cap: usize },

    /// A caller-supplied argument is structurally invalid (bad range string,
    /// unknown scenario name, negative count, …).
    #[error("invalid argument: {0}")]
    InvalidArg(String),

    /// A configuration file was present but unusable.
    #[error("configuration error: {0}")]
    Config(String),

    /// Underlying I/O failure.
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, CatwigError>;

impl CatwigError {
    /// Process exit code the command-line driver uses for this error.
    ///
    /// `2` = usage/config error, `3` = violated numeric precondition,
    /// `4` = I/O error. (`0` is success and never produced here.)
    pub fn exit_code(&self) -> i32 {
        match self {
            CatwigError::InvalidArg(_) | CatwigError::Config(_) => 2,
            CatwigError::Io(_) => 4,
            _ => 3,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_partition_the_variants() {
        assert_eq!(CatwigError::InvalidArg("x".into()).exit_code(), 2);
        assert_eq!(CatwigError::Config("x".into()).exit_code(), 2);
        assert_eq!(
            CatwigError::Io(std::io::Error::other("x")).exit_code(),
            4
        );
        assert_eq!(
            CatwigError::Truncation { amp: 9.0, required: 100, cutoff: 40 }.exit_code(),
            3
        );
        assert_eq!(CatwigError::ZeroNorm(1e-20).exit_code(), 3);
        assert_eq!(CatwigError::DegenerateBranches { alpha: 0.1 }.exit_code(), 3);
        assert_eq!(
            CatwigError::GridTooCoarse { detail: "d".into() }.exit_code(),
            3
        );
    }

    #[test]
    fn messages_name_the_offending_quantities() {
        let err = CatwigError::Truncation { amp: 5.0, required: 62, cutoff: 40 };
        let msg = err.to_string();
        assert!(msg.contains("5.0"));
        assert!(msg.contains("62"));
        assert!(msg.contains("40"));
    }
}
