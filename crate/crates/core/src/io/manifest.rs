//! Machine-readable record of a completed run.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::io::config::{print_config, RunConfig};
use crate::oracle::ValidationReport;
use crate::params::{SystemParams, CALIBRATED_G};
use crate::steady::SteadyStateOptions;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    /// Resolved configuration in canonical text form.
    pub config: String,
    pub params: SystemParams,
    pub tolerances: SteadyStateOptions,
    pub slabs: usize,
    pub calibrated_g: f64,
    pub timings: Vec<StageTiming>,
    pub validation: Option<ValidationReport>,
    pub created_unix: u64,
}

pub fn run_manifest(
    config: &RunConfig,
    command: &str,
    timings: Vec<StageTiming>,
    validation: Option<ValidationReport>,
) -> RunManifest {
    RunManifest {
        command: command.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: print_config(config),
        params: config.params,
        tolerances: config.tolerances,
        slabs: config.slabs,
        calibrated_g: CALIBRATED_G,
        timings,
        validation,
        created_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::config::parse_config;

    #[test]
    fn identical_runs_differ_only_in_time() {
        let c = parse_config("[tolerances]\nresidual_tol = 5e-14\n").unwrap();
        let mut a = run_manifest(&c, "steady", vec![], None);
        let mut b = run_manifest(&c, "steady", vec![], None);
        a.created_unix = 0;
        b.created_unix = 0;
        assert_eq!(a, b);
        assert!(a.config.contains("residual_tol = 5e-14"));
        assert_eq!(a.tolerances.residual_tol, 5e-14);
    }
}
