//! V12 at the midpoint detuning as the optical depth grows.
//!
//! The optical depth scales with `rate_unit`, the value of gamma1 in s^-1.

use sgc_entanglement::experiments::evaluate_point;
use sgc_entanglement::SystemParams;

fn main() -> sgc_entanglement::Result<()> {
    println!("{:>10} {:>12} {:>12} {:>12}", "rate_unit", "chi*L", "V12", "[a,a+] err");
    for rate_unit in [1.0, 1e2, 1e3, 1e4, 1e5, 1e6] {
        let p = SystemParams { delta1: -1.0, rate_unit, ..Default::default() };
        let point = evaluate_point(&p, 0.0, 400)?;
        let cov = point.covariance.expect("regular response at the midpoint");
        println!(
            "{rate_unit:>10.0e} {:>12.3e} {:>12.6} {:>12.2e}",
            p.chi().0 * p.length,
            point.duan.unwrap().v12,
            cov.commutator_error()
        );
    }
    Ok(())
}
