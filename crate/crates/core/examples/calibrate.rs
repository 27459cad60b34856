//! Fits the coupling g to the midpoint population of level 2.

use sgc_entanglement::experiments::{calibrate_coupling, CALIBRATION_TARGET};
use sgc_entanglement::params::CALIBRATED_G;
use sgc_entanglement::SystemParams;

fn main() -> sgc_entanglement::Result<()> {
    let c = calibrate_coupling(&SystemParams::default())?;
    println!("target <sigma22> = {CALIBRATION_TARGET}");
    println!("g = {:?} after {} steps (pop1 = {:.6}, pop2 = {:.6})", c.g, c.iterations, c.pop1, c.pop2);
    println!("frozen CALIBRATED_G = {CALIBRATED_G:?}");
    Ok(())
}
