//! CSV and JSON persistence of sweep and spectrum tables.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::experiments::{SpectrumRow, SweepResult};
use crate::io::config::PARAM_KEYS;
use crate::params::SystemParams;

fn cell(x: Option<f64>) -> String {
    x.map(|v| format!("{v:?}")).unwrap_or_default()
}

fn param_comments(out: &mut impl Write, params: &SystemParams) -> Result<()> {
    let value = serde_json::to_value(params)?;
    for key in PARAM_KEYS {
        writeln!(out, "# {key} = {:?}", value[key].as_f64().unwrap_or(f64::NAN))?;
    }
    Ok(())
}

pub fn sweep_header(result: &SweepResult) -> Vec<String> {
    let axis = result.spec.axis;
    let mut h = vec![format!("{} [{}]", axis.name(), axis.unit()), "gamma13 [gamma1]".into()];
    for name in ["v12", "du2", "dv2", "pop1", "pop2", "pop3", "pop4"] {
        h.push(format!("{name} [1]"));
    }
    h.extend(["alpha1 [1/m]", "alpha2 [1/m]", "method", "validated", "error"].map(String::from));
    h
}

/// Writes `#`-prefixed provenance lines, a unit-labelled header and one
/// record per grid point. Failed points keep their axis value and carry the
/// message in the `error` column.
pub fn write_sweep_csv(result: &SweepResult, path: &Path) -> Result<()> {
    let mut file = BufWriter::new(File::create(path)?);
    let spec = &result.spec;
    writeln!(file, "# sweep = {}", spec.name)?;
    writeln!(file, "# version = {}", result.version)?;
    writeln!(file, "# omega = {:?}", spec.omega)?;
    writeln!(file, "# slabs = {}", spec.slabs)?;
    for s in &spec.scalings {
        writeln!(file, "# {} = {:?} * {}", s.target.name(), s.coefficient, spec.axis.name())?;
    }
    param_comments(&mut file, &spec.base)?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(sweep_header(result))?;
    for r in &result.rows {
        let pops = r.populations.map(|p| p.map(Some)).unwrap_or([None; 4]);
        let mut rec = vec![format!("{:?}", r.x), format!("{:?}", r.gamma13), cell(r.v12), cell(r.du2), cell(r.dv2)];
        rec.extend(pops.iter().map(|p| cell(*p)));
        rec.push(cell(r.alpha1));
        rec.push(cell(r.alpha2));
        rec.push(r.method.map(|m| m.to_string()).unwrap_or_default());
        rec.push(r.validated.map(|v| v.to_string()).unwrap_or_default());
        rec.push(r.error.clone().unwrap_or_default());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_spectrum_csv(rows: &[SpectrumRow], params: &SystemParams, path: &Path) -> Result<()> {
    let mut file = BufWriter::new(File::create(path)?);
    param_comments(&mut file, params)?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(["omega [gamma1]", "v12 [1]", "du2 [1]", "dv2 [1]", "commutator_error [1]", "error"])?;
    for r in rows {
        w.write_record([
            format!("{:?}", r.omega),
            cell(r.v12),
            cell(r.du2),
            cell(r.dv2),
            cell(r.commutator_error),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Two-column `quantity,value` table.
pub fn write_pairs_csv(pairs: &[(String, String)], params: &SystemParams, path: &Path) -> Result<()> {
    let mut file = BufWriter::new(File::create(path)?);
    param_comments(&mut file, params)?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(["quantity", "value"])?;
    for (k, v) in pairs {
        w.write_record([k, v])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut file = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut file, value)?;
    writeln!(file)?;
    file.flush()?;
    Ok(())
}
