//! Bell test between two macroscopic pointer modes.
//!
//! Two labs each hold a field mode whose pointer states |±α⟩ are
//! macroscopically distinct. The two-branch entangled family
//!
//!   |ψ(θ)⟩ ∝ −sin(θ/2)(|α,α⟩ + |−α,−α⟩)/√2 + i cos(θ/2)(|α,−α⟩ + |−α,α⟩)/√2
//!
//! violates the CHSH inequality with |S| = 2(cos θ + sin θ), reaching the
//! quantum maximum 2√2 at θ = π/4 — with measurement settings chosen by
//! local Kerr evolution and outcomes read off by the sign of a quadrature.
//! The exact two-qubit computation provides the analytic reference.
//!
//! Run with: cargo run --release --example bell_wigner_chsh

use catwig::dynamics::SettingPair;
use catwig::measurement::{bell_moments, chsh, CHSH_SETTINGS};
use catwig::qubit::{brukner_state, qubit_chsh, BruknerVariant, SpinAxis};
use std::f64::consts::FRAC_PI_4;

fn main() -> catwig::Result<()> {
    let (theta, alpha) = (FRAC_PI_4, 3.0);

    let wf = catwig::states::wf_state(theta, alpha, SettingPair::ZZ)?;
    println!(
        "two-branch entangled state: θ = π/4, α = {alpha}, branches {}",
        if wf.degenerate_branches { "NOT distinct" } else { "macroscopically distinct" }
    );

    let m = bell_moments(&wf.state)?;
    let expected = [-theta.cos(), -theta.sin(), -theta.sin(), theta.cos()];
    println!("\n  settings   moment       analytic");
    for (pair, (got, want)) in ["zz", "zy", "yz", "yy"].iter().zip(m.iter().zip(expected)) {
        println!("  {pair}         {got:+.6}    {want:+.6}");
    }

    let s = chsh(&wf.state, &CHSH_SETTINGS)?;
    println!("\n|S| = |⟨zz⟩ + ⟨zy⟩ + ⟨yz⟩ − ⟨yy⟩| = {s:.6}");
    println!("quantum maximum 2√2 = {:.6}", 2.0 * 2.0_f64.sqrt());
    println!("local-hidden-variable bound = 2");

    // Exact microscopic reference: the same family on two qubits.
    let qubit = brukner_state(theta, BruknerVariant::Minus);
    let s_qubit = qubit_chsh(
        &qubit,
        (SpinAxis::Z, SpinAxis::Y),
        (SpinAxis::Z, SpinAxis::Y),
    )?;
    println!("\nexact two-qubit backend: |S| = {s_qubit:.12}");
    println!("bosonic − qubit difference: {:+.3e}", s - s_qubit);
    Ok(())
}
