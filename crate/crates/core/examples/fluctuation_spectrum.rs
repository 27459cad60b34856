//! Drift spectrum of the linearized atom and V12 against sideband frequency.

use sgc_entanglement::atom::build_generator;
use sgc_entanglement::experiments::run_spectrum;
use sgc_entanglement::fluctuation::linearize;
use sgc_entanglement::steady::solve_steady_state;
use sgc_entanglement::SystemParams;

fn main() -> sgc_entanglement::Result<()> {
    let p = SystemParams { delta1: -1.0, rate_unit: 1e4, ..Default::default() };
    let g = build_generator(&p)?;
    let s = solve_steady_state(&g)?;
    let lin = linearize(&p, &g, &s);
    lin.check_regular()?;
    println!("slowest drift rate: {:.3e}", -lin.max_real_eigenvalue());
    println!("{:>8} {:>12} {:>12}", "omega", "V12", "[a,a+] err");
    let omegas: Vec<f64> = (0..=10).map(|k| 0.2 * k as f64).collect();
    for row in run_spectrum(&p, &omegas, 200)? {
        println!(
            "{:>8.2} {:>12.6} {:>12.2e}",
            row.omega,
            row.v12.unwrap_or(f64::NAN),
            row.commutator_error.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
