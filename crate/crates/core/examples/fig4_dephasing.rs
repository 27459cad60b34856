//! Dephasing sweep at the midpoint detuning.
//!
//! Writes CSV and SVG into `target/examples-out/`.

use std::path::Path;

use sgc_entanglement::experiments::{fig4, run_sweep};
use sgc_entanglement::io::{emit_plots, write_sweep_csv};
use sgc_entanglement::SystemParams;

fn main() -> sgc_entanglement::Result<()> {
    let result = run_sweep(&fig4(&SystemParams::default()))?;
    let out = Path::new("target/examples-out");
    std::fs::create_dir_all(out)?;
    write_sweep_csv(&result, &out.join(format!("{}.csv", result.spec.name)))?;
    emit_plots(&result, out)?;
    let step = (result.rows.len() / 10).max(1);
    println!("{:>12} {:>12} {:>10} {:>10} {:>12}", result.spec.axis.name(), "V12", "pop1", "pop2", "alpha1");
    for r in result.rows.iter().step_by(step) {
        let pops = r.populations.unwrap_or([f64::NAN; 4]);
        println!(
            "{:>12.5} {:>12.6} {:>10.5} {:>10.5} {:>12.4e}{}",
            r.x,
            r.v12.unwrap_or(f64::NAN),
            pops[0],
            pops[1],
            r.alpha1.unwrap_or(f64::NAN),
            r.error.as_deref().map(|e| format!("  ({e})")).unwrap_or_default()
        );
    }
    Ok(())
}
