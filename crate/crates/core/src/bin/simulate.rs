//! Command-line front end.
//!
//! `simulate <command> --config <path> --out <dir> [--format csv|json] [--svg] [--slabs N] [--omega W]`
//!
//! Worker threads come from `SIMULATE_WORKERS` (default: all cores). Exit
//! status is 0 on success, 2 when the config or a validation battery fails
//! and 1 for any other error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use sgc_entanglement::atom::dark_state_analysis;
use sgc_entanglement::experiments::{calibrate_coupling, evaluate_point_with, run_spectrum, run_sweep};
use sgc_entanglement::io::{
    emit_plots, parse_config, run_manifest, write_json, write_pairs_csv, write_spectrum_csv, write_sweep_csv, Command,
    Format, RunConfig, StageTiming, SweepSelector,
};
use sgc_entanglement::Error;

#[derive(Parser)]
#[command(name = "simulate", version, about = "Double-Lambda entanglement simulator")]
struct Cli {
    command: Command,
    /// Sectioned key = value config; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Also write SVG plots (sweep only).
    #[arg(long)]
    svg: bool,
    #[arg(long)]
    slabs: Option<usize>,
    /// Sideband frequency in units of gamma1; repeat for a spectrum.
    #[arg(long, allow_hyphen_values = true)]
    omega: Vec<f64>,
    #[arg(long, value_enum)]
    sweep: Option<SweepSelector>,
}

enum Outcome {
    Ok,
    ValidationFailed,
}

fn resolve(cli: &Cli) -> Result<RunConfig, Error> {
    let text = match &cli.config {
        Some(p) => std::fs::read_to_string(p)?,
        None => String::new(),
    };
    let mut cfg = parse_config(&text)?;
    cfg.command = Some(cli.command);
    if let Some(o) = &cli.out {
        cfg.out = Some(o.clone());
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    cfg.svg |= cli.svg;
    if let Some(n) = cli.slabs {
        if n == 0 {
            return Err(Error::InvalidParam { name: "slabs", reason: "must be at least 1".into() });
        }
        cfg.slabs = n;
    }
    if !cli.omega.is_empty() {
        cfg.omega = cli.omega.clone();
    }
    if let Some(s) = cli.sweep {
        cfg.sweep = s;
    }
    Ok(cfg)
}

fn ext(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn run(cfg: &RunConfig, command: Command) -> Result<Outcome, Error> {
    let out = cfg.out.clone().unwrap_or_else(|| PathBuf::from("results"));
    std::fs::create_dir_all(&out)?;
    let mut timings = Vec::new();
    let mut validation = None;
    let mut outcome = Outcome::Ok;
    let start = Instant::now();
    let mut timed =
        |stage: &str, t: Instant| timings.push(StageTiming { stage: stage.into(), seconds: t.elapsed().as_secs_f64() });
    let p = &cfg.params;

    match command {
        Command::Steady => {
            let point = evaluate_point_with(p, cfg.omega[0], cfg.slabs, &cfg.tolerances)?;
            timed("steady", start);
            let path = out.join(format!("steady.{}", ext(cfg.format)));
            match cfg.format {
                Format::Json => write_json(&point, &path)?,
                Format::Csv => {
                    let o = &point.observables;
                    let mut pairs = vec![("method".to_string(), point.method.to_string())];
                    for (k, v) in o.populations.iter().enumerate() {
                        pairs.push((format!("pop{}", k + 1), format!("{v:?}")));
                    }
                    pairs.push(("alpha1 [1/m]".into(), o.alpha1.map(|a| format!("{a:?}")).unwrap_or_default()));
                    pairs.push(("alpha2 [1/m]".into(), o.alpha2.map(|a| format!("{a:?}")).unwrap_or_default()));
                    pairs.push(("v12".into(), point.duan.map(|d| format!("{:?}", d.v12)).unwrap_or_default()));
                    if let Ok(d) = dark_state_analysis(p) {
                        pairs.push(("theta [rad]".into(), format!("{:?}", d.theta)));
                        pairs.push(("phi [rad]".into(), format!("{:?}", d.phi)));
                    }
                    write_pairs_csv(&pairs, p, &path)?;
                }
            }
            println!("wrote {}", path.display());
        }
        Command::Spectrum => {
            let rows = run_spectrum(p, &cfg.omega, cfg.slabs)?;
            timed("spectrum", start);
            let path = out.join(format!("spectrum.{}", ext(cfg.format)));
            match cfg.format {
                Format::Json => write_json(&rows, &path)?,
                Format::Csv => write_spectrum_csv(&rows, p, &path)?,
            }
            println!("wrote {}", path.display());
        }
        Command::Sweep => {
            let spec = cfg.sweep_spec()?;
            let result = run_sweep(&spec)?;
            timed("sweep", start);
            let path = out.join(format!("{}.{}", spec.name, ext(cfg.format)));
            match cfg.format {
                Format::Json => write_json(&result, &path)?,
                Format::Csv => write_sweep_csv(&result, &path)?,
            }
            println!("wrote {}", path.display());
            if cfg.svg {
                for f in emit_plots(&result, &out)? {
                    println!("wrote {}", f.display());
                }
            }
            let failed = result.rows.iter().filter(|r| r.error.is_some()).count();
            if failed > 0 {
                eprintln!("{failed} of {} points failed; see the error column", result.rows.len());
            }
        }
        Command::Validate => {
            let report = sgc_entanglement::oracle::cross_validate(p)?;
            timed("validate", start);
            for c in &report.checks {
                println!(
                    "{} {:<32} residual {:.3e} (tol {:.0e}){}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.residual,
                    c.tolerance,
                    c.detail.as_deref().map(|d| format!("  {d}")).unwrap_or_default()
                );
            }
            if !report.passed {
                outcome = Outcome::ValidationFailed;
            }
            write_json(&report, &out.join("validation.json"))?;
            validation = Some(report);
        }
        Command::Calibrate => {
            let c = calibrate_coupling(p)?;
            timed("calibrate", start);
            println!("g = {:?}  (pop1 = {:.6}, pop2 = {:.6}, {} bisection steps)", c.g, c.pop1, c.pop2, c.iterations);
            write_json(&c, &out.join("calibration.json"))?;
        }
    }
    let manifest = run_manifest(cfg, &format!("{command:?}").to_lowercase(), timings, validation);
    write_json(&manifest, &out.join("manifest.json"))?;
    Ok(outcome)
}

fn init_workers() -> Result<(), String> {
    let Ok(v) = std::env::var("SIMULATE_WORKERS") else { return Ok(()) };
    let n: usize = v.parse().map_err(|_| format!("SIMULATE_WORKERS must be a positive integer, got `{v}`"))?;
    if n == 0 {
        return Err("SIMULATE_WORKERS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn is_validation(e: &Error) -> bool {
    matches!(e, Error::Config { .. } | Error::InvalidParam { .. } | Error::InvalidSweep(_))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_workers() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let cfg = match resolve(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if is_validation(&e) { 2 } else { 1 });
        }
    };
    match run(&cfg, cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ValidationFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_validation(&e) { 2 } else { 1 })
        }
    }
}
