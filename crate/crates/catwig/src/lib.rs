//! Truncated-Fock simulator for macroscopic (cat-state) Wigner's-friend
//! experiments.
//!
//! Two laboratories each hold a bosonic mode whose measurement pointer is a
//! pair of macroscopically distinct coherent states |±α⟩. Measurement
//! settings are chosen by reversible Kerr evolution, outcomes are read off
//! by the sign of the X quadrature, and every headline quantity — Bell-CHSH
//! violations, Frauchiger-Renner joint probabilities, Husimi Q functions and
//! their marginals, meter records, and macroscopic-realism no-go tables —
//! is computed numerically in truncated Fock space and checked against an
//! exact two-qubit backend.
//!
//! # Modules
//!
//! - [`fock`] — mode spaces, coherent states, inner products, tensor
//!   products, superpositions, ensembles, low-rank product decomposition.
//! - [`dynamics`] — Kerr measurement-setting unitaries and meter coupling.
//! - [`states`] — the two-branch (Bell) and three-branch
//!   (Frauchiger-Renner) laboratory states, their rotated variants, partial
//!   mixtures, and meter attachment.
//! - [`husimi`] — Husimi Q functions on phase-space grids, X-quadrature
//!   marginals, grid CSV serialization, and distribution distances.
//! - [`measurement`] — pointer (sign-binning) probabilities, branch
//!   weights, correlation moments, and the CHSH combination.
//! - [`qubit`] — the exact 2-level backend: dense state-vector registers,
//!   Bell states, CNOT-chain entangled states, macro-qubit expansion.
//! - [`hv`] — hidden-variable analyses: the 16-row deterministic-realism
//!   table and its no-go verdict, deterministic-strategy CHSH ceilings, and
//!   the weak-macroscopic-realism check suite.
//! - [`cli`] — the `catwig` binary: deterministic CSV/JSON artifacts for
//!   every capability.
//!
//! # Examples (run with `cargo run --release --example <name>`)
//!
//! | Example | Shows |
//! |---|---|
//! | `kerr_cat` | Kerr evolution turning |α⟩ into a cat and back |
//! | `bell_wigner_chsh` | CHSH violation 2√2 with macroscopic pointers |
//! | `fr_paradox` | the Frauchiger-Renner probability table and S = 7/3 |
//! | `husimi_grid` | full Q function and its X-marginal, with CSV output |
//! | `meter_readout` | meter modes recording the pointer branches |
//! | `dmr_no_go` | the 16-row deterministic-realism table and its contradiction |
//! | `wmr_sweep` | marginal (in)distinguishability under setting rotations |
//! | `ghz_macro_qubits` | exact macro-qubit (spin-chain) backend cross-checks |
//!
//! # Conventions
//!
//! Quadratures are X = (a + a†)/2, P = (a − a†)/2i, so |α⟩ for real α > 0
//! peaks at X = α with unit-variance Gaussian marginal e^{−(X−α)²}/√π.
//! The Q function is Q(λ₁, …) = |⟨λ₁, …|ψ⟩|²/πᵐ and integrates to 1 over
//! ∏ dXᵢ dPᵢ. Outcome `+` is the X > 0 half-plane. Kerr evolution applies
//! phase e^{−iΩt n²} to Fock level n; only the product Ωt matters.

pub mod cli;
pub mod error;
pub mod fock;
pub mod dynamics;
pub mod qubit;
pub mod husimi;
pub mod hv;
pub mod measurement;
pub mod states;

pub use error::{CatwigError, Result};
