//! Steady state and absorption at the default (calibrated) parameters.
//!
//! cargo run --example steady_state -- [delta1]

use sgc_entanglement::atom::build_generator;
use sgc_entanglement::steady::{observables, solve_steady_state};
use sgc_entanglement::SystemParams;

fn main() -> sgc_entanglement::Result<()> {
    let mut p = SystemParams::default();
    if let Some(d) = std::env::args().nth(1) {
        p.delta1 = d.parse().expect("delta1 must be a number");
    }
    let state = solve_steady_state(&build_generator(&p)?)?;
    let obs = observables(&state, &p);
    println!("delta1 = {}  (midpoint {})", p.delta1, p.midpoint_detuning());
    println!("method = {}, residual = {:.2e}", state.method, state.residual);
    for (k, pop) in obs.populations.iter().enumerate() {
        println!("  <sigma{0}{0}> = {pop:.6}", k + 1);
    }
    println!("alpha1 = {:?} 1/m, alpha2 = {:?} 1/m", obs.alpha1, obs.alpha2);
    Ok(())
}
