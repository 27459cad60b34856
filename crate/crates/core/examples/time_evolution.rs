//! Brute-force relaxation from the lower-level mixture compared with the
//! null-space steady state.

use sgc_entanglement::atom::build_generator;
use sgc_entanglement::oracle::time_evolve;
use sgc_entanglement::steady::{solve_steady_state, unpolarized_lower_mixture};
use sgc_entanglement::SystemParams;

fn main() -> sgc_entanglement::Result<()> {
    let p = SystemParams { gamma0: 0.05, ..Default::default() };
    let g = build_generator(&p)?;
    let target = solve_steady_state(&g)?.density_matrix();
    let dt = 0.05 / g.superoperator().norm();
    let run = time_evolve(&g, &unpolarized_lower_mixture(), 400.0, dt)?;
    for (t, rho) in run.times.iter().zip(&run.states).step_by(10) {
        let pops: Vec<String> = (0..4).map(|k| format!("{:.5}", rho[(k, k)].re)).collect();
        println!("t = {t:>7.2}  pops [{}]  |rho - rho_ss| = {:.2e}", pops.join(", "), (rho - target).norm());
    }
    println!("final residual |L rho| = {:.2e}", run.final_residual);
    Ok(())
}
