//! Runs the cross-validation battery at the defaults and at a strongly
//! misaligned, detuned point.

use sgc_entanglement::oracle::cross_validate;
use sgc_entanglement::SystemParams;

fn main() -> sgc_entanglement::Result<()> {
    let points = [
        SystemParams::default(),
        SystemParams {
            p1: 0.3,
            p2: -0.6,
            delta1: 2.2,
            gamma0: 0.2,
            gamma_phi: 0.05,
            rate_unit: 1e3,
            ..Default::default()
        },
    ];
    for p in points {
        let report = cross_validate(&p)?;
        println!("p1 = {}, p2 = {}, delta1 = {}: passed = {}", p.p1, p.p2, p.delta1, report.passed);
        for c in &report.checks {
            println!("  {:<32} {:.2e} (tol {:.0e})", c.name, c.residual, c.tolerance);
        }
    }
    Ok(())
}
