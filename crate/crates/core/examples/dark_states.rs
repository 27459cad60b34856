//! Mixing angles and dark states of the dressed atom.

use sgc_entanglement::atom::dark_state_analysis;
use sgc_entanglement::{SystemParams, C64};

fn fmt(v: &nalgebra::Vector4<C64>) -> String {
    let parts: Vec<String> = v.iter().map(|z| format!("{:+.4}", z.re)).collect();
    format!("({})", parts.join(", "))
}

fn main() -> sgc_entanglement::Result<()> {
    for (a1, a2) in [(1.0, 1.0), (2.0, 0.5), (0.0, 1.0)] {
        let p = SystemParams { a1_mean: a1, a2_mean: a2, ..Default::default() };
        let d = dark_state_analysis(&p)?;
        println!("<a1> = {a1}, <a2> = {a2}: theta = {:.4}, phi = {:.4}", d.theta, d.phi);
        println!("  phi0 = {}", fmt(&d.phi0));
        println!("  phi1 = {}", fmt(&d.phi1));
        println!("  interference residuals = {:?}", d.interference_residuals);
    }
    match dark_state_analysis(&SystemParams { a1_mean: 0.0, a2_mean: 0.0, ..Default::default() }) {
        Err(e) => println!("no drive: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
