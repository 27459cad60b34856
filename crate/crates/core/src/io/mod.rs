//! Configuration files, result tables, SVG plots and run manifests.

pub mod config;
pub mod manifest;
pub mod plot;
pub mod results;

pub use config::{parse_config, print_config, Command, Format, RunConfig, SweepSelector};
pub use manifest::{run_manifest, RunManifest, StageTiming};
pub use plot::{emit_plots, line_plot, Series};
pub use results::{write_json, write_pairs_csv, write_spectrum_csv, write_sweep_csv};
