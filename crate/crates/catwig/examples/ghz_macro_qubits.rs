//! Macroscopic qubits from entangled spin chains: the exact backend.
//!
//! Instead of field modes, each lab's pointer can be a register of n spins
//! with the logical states |↑…↑⟩ and |↓…↓⟩. A Hadamard plus a CNOT chain
//! builds the n-spin entangled (GHZ) state, redundant encoding expands a
//! two-qubit entangled state into two such macro-pointers, and collective
//! logical spin observables reproduce the two-qubit Bell violation exactly —
//! branch distinguishability grows with n while the logical algebra is
//! untouched.
//!
//! Run with: cargo run --example ghz_macro_qubits

use catwig::qubit::{
    brukner_state, expand_macro, fr_microscopic, ghz_build, qubit_chsh, qubit_moments,
    BruknerVariant, FrBasis, LabPartition, SpinAxis,
};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

fn main() -> catwig::Result<()> {
    // --- GHZ construction by gates ---------------------------------------
    let ghz = ghz_build(3, 0.0)?;
    println!("3-spin chain, φ = 0: amplitudes on |000⟩ and |111⟩:");
    println!(
        "  {:.6}  …  {:.6}   (1/√2 = {:.6})",
        ghz.amplitudes()[0].re,
        ghz.amplitudes()[7].re,
        0.5_f64.sqrt()
    );
    let ghz5 = ghz_build(5, FRAC_PI_2)?;
    let last = ghz5.amplitudes()[31];
    println!(
        "5-spin chain, φ = π/2: all-down amplitude = {:.6} + {:.6}i (i/√2 expected)",
        last.re, last.im
    );

    // --- Macro-qubit Bell test -------------------------------------------
    let theta = FRAC_PI_4;
    let micro = brukner_state(theta, BruknerVariant::Minus);
    let s_micro = qubit_chsh(&micro, (SpinAxis::Z, SpinAxis::Y), (SpinAxis::Z, SpinAxis::Y))?;
    println!("\ntwo-qubit CHSH at θ = π/4: |S| = {s_micro:.12}");

    let part = LabPartition { n_a: 3, n_b: 3 };
    let macro_state = expand_macro(&micro, part)?;
    println!(
        "expanded to {} + {} spins per lab ({} amplitudes)",
        part.n_a,
        part.n_b,
        macro_state.amplitudes().len()
    );
    let mut s_macro = 0.0;
    for (sign, (a, b)) in [
        (1.0, (SpinAxis::Z, SpinAxis::Z)),
        (1.0, (SpinAxis::Z, SpinAxis::Y)),
        (1.0, (SpinAxis::Y, SpinAxis::Z)),
        (-1.0, (SpinAxis::Y, SpinAxis::Y)),
    ] {
        let m = qubit_moments(&macro_state, part, (a, b))?;
        println!("  collective ⟨σ_{a:?} σ_{b:?}⟩ = {m:+.12}");
        s_macro += sign * m;
    }
    println!("macro-qubit |S| = {:.12} (2√2 = {:.12})", s_macro.abs(), 2.0 * 2.0_f64.sqrt());
    println!("difference vs two-qubit backend: {:.3e}", (s_macro.abs() - s_micro).abs());

    // --- Microscopic three-branch state in all bases ----------------------
    println!("\nmicroscopic three-branch state probabilities:");
    let xx = fr_microscopic(FrBasis::Xx);
    println!(
        "  both labs rotated: P(−,−) = {:.12} (1/12 = {:.12})",
        xx.amplitudes()[3].norm_sqr(),
        1.0 / 12.0
    );
    let xz = fr_microscopic(FrBasis::Xz);
    println!(
        "  one lab rotated:   P(−,−) = {:.3e} (exactly zero)",
        xz.amplitudes()[3].norm_sqr()
    );
    Ok(())
}
