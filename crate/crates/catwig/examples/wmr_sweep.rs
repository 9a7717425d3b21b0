//! Weak macroscopic realism: what the pointer marginals can and cannot see.
//!
//! Weak macroscopic realism (wMR) assigns a definite pointer value only to
//! the measurement actually prepared, not to counterfactual settings. It is
//! consistent with quantum statistics wherever only one lab rotates its
//! setting: the X-marginals of the rotated three-branch state are then
//! identical (to numerical precision) to those of a mixture that keeps no
//! coherence between the other lab's pointer branches. Only when BOTH labs
//! rotate does the coherence become visible and the marginals diverge.
//!
//! Run with: cargo run --release --example wmr_sweep

use catwig::hv::wmr_model_check;

fn main() -> catwig::Result<()> {
    let alpha = 3.0;
    // Sweep of rotation phases from 0 to the y-setting value 3π/2.
    let sweep: Vec<f64> = (0..5)
        .map(|i| 1.5 * std::f64::consts::PI * i as f64 / 4.0)
        .collect();

    println!("checking pointer-marginal (in)distinguishability at α = {alpha}");
    println!("sweep: {:?}\n", sweep.iter().map(|t| format!("{t:.3}")).collect::<Vec<_>>());

    let report = wmr_model_check(alpha, &sweep)?;
    for check in &report.checks {
        println!(
            "  [{}] {:<42} {:>10.3e}  ({} {:.0e})",
            if check.pass { "pass" } else { "FAIL" },
            check.name,
            check.measured,
            check.comparison,
            check.tolerance,
        );
    }
    println!(
        "\noverall: {}",
        if report.all_pass() { "all checks pass" } else { "some checks FAILED" }
    );
    println!("\nreading:");
    println!("  • un-rotated marginals and single-rotation marginals match the");
    println!("    decohered mixtures — no X-quadrature experiment on one rotated");
    println!("    lab can falsify wMR;");
    println!("  • the double rotation produces an O(0.1) divergence — the");
    println!("    interference the mixtures lack — so the quantum state is not");
    println!("    equivalent to any branch mixture.");
    Ok(())
}
