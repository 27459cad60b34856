//! Parses a run configuration, prints its canonical form and runs the sweep
//! it selects.

use sgc_entanglement::experiments::run_sweep;
use sgc_entanglement::io::{parse_config, print_config};

const CONFIG: &str = "\
[params]
p1 = 0.9
p2 = 0.9

[run]
sweep = custom
slabs = 100

[sweep]
axis = delta1
start = -3
stop = 1
points = 9
";

fn main() -> sgc_entanglement::Result<()> {
    let cfg = parse_config(CONFIG)?;
    print!("{}", print_config(&cfg));
    let result = run_sweep(&cfg.sweep_spec()?)?;
    println!();
    for r in &result.rows {
        println!(
            "delta1 = {:>6.2}  V12 = {:.6}  pop2 = {:.5}",
            r.x,
            r.v12.unwrap_or(f64::NAN),
            r.populations.unwrap()[1]
        );
    }
    Ok(())
}
