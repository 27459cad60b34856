//! Parameter sweeps for the detuning, alignment, drive-amplitude and
//! dephasing scans, plus the one-off calibration of the coupling constant.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atom::build_generator;
use crate::entanglement::{duan_v12, DuanResult};
use crate::error::{Error, Result};
use crate::fluctuation::linearize;
use crate::oracle::cross_validate;
use crate::params::SystemParams;
use crate::propagation::{
    input_covariance, propagate_covariance, transfer_matrix, FieldCovariance, InputState, DEFAULT_SLABS,
};
use crate::steady::{observables, solve_steady_state_with, Observables, SolveMethod, SteadyStateOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepAxis {
    Delta1,
    /// Common mean amplitude ⟨a₁⟩ = ⟨a₂⟩.
    Amplitude,
    Gamma0,
    /// Common alignment p₁ = p₂.
    #[serde(rename = "p")]
    Alignment,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Delta1 => "delta1",
            SweepAxis::Amplitude => "amplitude",
            SweepAxis::Gamma0 => "gamma0",
            SweepAxis::Alignment => "p",
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            SweepAxis::Delta1 | SweepAxis::Gamma0 => "gamma1",
            SweepAxis::Amplitude | SweepAxis::Alignment => "1",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [SweepAxis::Delta1, SweepAxis::Amplitude, SweepAxis::Gamma0, SweepAxis::Alignment]
            .into_iter()
            .find(|a| a.name() == s)
    }

    fn set(self, p: &mut SystemParams, x: f64) {
        match self {
            SweepAxis::Delta1 => p.delta1 = x,
            SweepAxis::Amplitude => (p.a1_mean, p.a2_mean) = (x, x),
            SweepAxis::Gamma0 => p.gamma0 = x,
            SweepAxis::Alignment => (p.p1, p.p2) = (x, x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScaledParam {
    N0,
    Gamma0,
}

impl ScaledParam {
    pub fn name(self) -> &'static str {
        match self {
            ScaledParam::N0 => "n0",
            ScaledParam::Gamma0 => "gamma0",
        }
    }
}

/// `target = coefficient × axis value` at every grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scaling {
    pub target: ScaledParam,
    pub coefficient: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub name: String,
    pub base: SystemParams,
    pub axis: SweepAxis,
    pub grid: Vec<f64>,
    pub scalings: Vec<Scaling>,
    pub omega: f64,
    pub slabs: usize,
    /// Run the validation battery on every n-th grid point.
    pub validate_every: Option<usize>,
    pub steady: SteadyStateOptions,
}

impl SweepSpec {
    pub fn new(name: &str, base: SystemParams, axis: SweepAxis, grid: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            base,
            axis,
            grid,
            scalings: Vec::new(),
            omega: 0.0,
            slabs: DEFAULT_SLABS,
            validate_every: None,
            steady: SteadyStateOptions::default(),
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::InvalidSweep("grid is empty".into()));
        }
        if self.grid.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidSweep("grid contains a non-finite value".into()));
        }
        let up = self.grid.windows(2).all(|w| w[1] > w[0]);
        let down = self.grid.windows(2).all(|w| w[1] < w[0]);
        if !(up || down) {
            return Err(Error::InvalidSweep("grid must be strictly monotone".into()));
        }
        for s in &self.scalings {
            if s.target == ScaledParam::Gamma0 && self.axis == SweepAxis::Gamma0 {
                return Err(Error::InvalidSweep("gamma0 cannot be scaled while it is the swept axis".into()));
            }
            if !s.coefficient.is_finite() {
                return Err(Error::InvalidSweep(format!("non-finite coefficient for {}", s.target.name())));
            }
        }
        if self.slabs == 0 {
            return Err(Error::InvalidSweep("slabs must be at least 1".into()));
        }
        Ok(())
    }

    /// Parameters at one axis value with every scaling rule applied.
    pub fn params_at(&self, x: f64) -> SystemParams {
        let mut p = self.base;
        self.axis.set(&mut p, x);
        for s in &self.scalings {
            let v = s.coefficient * x;
            match s.target {
                ScaledParam::N0 => p.n0 = v,
                ScaledParam::Gamma0 => p.gamma0 = v,
            }
        }
        p
    }
}

pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..points).map(|k| start + (stop - start) * k as f64 / (points - 1) as f64).collect(),
    }
}

pub fn logspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    linspace(start.ln(), stop.ln(), points).into_iter().map(f64::exp).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    pub params: SystemParams,
    pub omega: f64,
    pub method: SolveMethod,
    pub residual: f64,
    pub observables: Observables,
    pub duan: Option<DuanResult>,
    pub covariance: Option<FieldCovariance>,
    /// Why the fluctuation stage produced no V₁₂.
    pub fluctuation_error: Option<String>,
    pub warning: Option<String>,
}

pub fn evaluate_point(params: &SystemParams, omega: f64, slabs: usize) -> Result<PointResult> {
    evaluate_point_with(params, omega, slabs, &SteadyStateOptions::default())
}

/// Steady state, linearization, propagation of vacuum input and the Duan sum
/// at one parameter point. Only invalid parameters and steady-state failures
/// are errors; a refused fluctuation stage is recorded in the result.
pub fn evaluate_point_with(
    params: &SystemParams,
    omega: f64,
    slabs: usize,
    steady: &SteadyStateOptions,
) -> Result<PointResult> {
    params.validate()?;
    let generator = build_generator(params)?;
    let state = solve_steady_state_with(&generator, steady)?;
    let mut point = PointResult {
        params: *params,
        omega,
        method: state.method,
        residual: state.residual,
        observables: observables(&state, params),
        duan: None,
        covariance: None,
        fluctuation_error: None,
        warning: None,
    };
    let lin = linearize(params, &generator, &state);
    match transfer_matrix(&lin, params, omega, slabs) {
        Ok(setup) => {
            let out = propagate_covariance(&setup, &input_covariance(InputState::Vacuum)?);
            point.duan = Some(duan_v12(&out.covariance));
            point.covariance = Some(out.covariance);
            point.warning = out.warning;
        }
        Err(e) => point.fluctuation_error = Some(e.to_string()),
    }
    Ok(point)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub x: f64,
    /// 2γ₀ + γ_φ at this point.
    pub gamma13: f64,
    pub v12: Option<f64>,
    pub du2: Option<f64>,
    pub dv2: Option<f64>,
    pub populations: Option<[f64; 4]>,
    pub alpha1: Option<f64>,
    pub alpha2: Option<f64>,
    pub method: Option<SolveMethod>,
    /// Outcome of the validation battery when this point was sampled.
    pub validated: Option<bool>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    pub version: String,
}

impl SweepResult {
    pub fn column(&self, f: impl Fn(&SweepRow) -> Option<f64>) -> Vec<Option<f64>> {
        self.rows.iter().map(f).collect()
    }
}

fn row_at(spec: &SweepSpec, index: usize, x: f64) -> SweepRow {
    let params = spec.params_at(x);
    let mut row = SweepRow {
        x,
        gamma13: params.gamma13(),
        v12: None,
        du2: None,
        dv2: None,
        populations: None,
        alpha1: None,
        alpha2: None,
        method: None,
        validated: None,
        error: None,
    };
    match evaluate_point_with(&params, spec.omega, spec.slabs, &spec.steady) {
        Ok(point) => {
            row.populations = Some(point.observables.populations);
            row.alpha1 = point.observables.alpha1;
            row.alpha2 = point.observables.alpha2;
            row.method = Some(point.method);
            if let Some(d) = point.duan {
                (row.v12, row.du2, row.dv2) = (Some(d.v12), Some(d.du2), Some(d.dv2));
            }
            row.error = point.fluctuation_error;
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    if let Some(every) = spec.validate_every.filter(|&n| n > 0) {
        if index.is_multiple_of(every) {
            row.validated = Some(cross_validate(&params).map(|r| r.passed).unwrap_or(false));
        }
    }
    row
}

/// Evaluates every grid point, in parallel on the current rayon pool, and
/// returns rows in grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.check()?;
    let rows = spec.grid.par_iter().enumerate().map(|(i, &x)| row_at(spec, i, x)).collect();
    Ok(SweepResult { spec: spec.clone(), rows, version: env!("CARGO_PKG_VERSION").into() })
}

fn require_axis(spec: &SweepSpec, allowed: &[SweepAxis]) -> Result<()> {
    if allowed.contains(&spec.axis) {
        Ok(())
    } else {
        Err(Error::InvalidSweep(format!("axis {} not supported by this sweep", spec.axis.name())))
    }
}

pub fn run_detuning_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    require_axis(spec, &[SweepAxis::Delta1, SweepAxis::Alignment])?;
    run_sweep(spec)
}

pub fn run_amplitude_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    require_axis(spec, &[SweepAxis::Amplitude])?;
    run_sweep(spec)
}

pub fn run_dephasing_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    require_axis(spec, &[SweepAxis::Gamma0])?;
    run_sweep(spec)
}

pub fn run_alignment_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    require_axis(spec, &[SweepAxis::Alignment])?;
    if spec.grid.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::InvalidSweep("alignment grid must lie in [0, 1]".into()));
    }
    run_sweep(spec)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub omega: f64,
    pub v12: Option<f64>,
    pub du2: Option<f64>,
    pub dv2: Option<f64>,
    pub commutator_error: Option<f64>,
    pub error: Option<String>,
}

/// V₁₂ at each sideband frequency for one parameter set.
pub fn run_spectrum(params: &SystemParams, omegas: &[f64], slabs: usize) -> Result<Vec<SpectrumRow>> {
    params.validate()?;
    Ok(omegas
        .par_iter()
        .map(|&omega| {
            let mut row = SpectrumRow { omega, v12: None, du2: None, dv2: None, commutator_error: None, error: None };
            match evaluate_point(params, omega, slabs) {
                Ok(point) => {
                    if let (Some(d), Some(c)) = (point.duan, point.covariance) {
                        (row.v12, row.du2, row.dv2) = (Some(d.v12), Some(d.du2), Some(d.dv2));
                        row.commutator_error = Some(c.commutator_error());
                    }
                    row.error = point.fluctuation_error;
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect())
}

pub const FIGURE_POINTS: usize = 201;

fn at_midpoint(base: &SystemParams) -> SystemParams {
    SystemParams { delta1: base.midpoint_detuning(), ..*base }
}

/// V₁₂ and populations against Δ₁ ∈ [−4, 4].
pub fn fig2(base: &SystemParams) -> SweepSpec {
    SweepSpec::new("fig2", *base, SweepAxis::Delta1, linspace(-4.0, 4.0, FIGURE_POINTS))
}

/// V₁₂ against p = p₁ = p₂ ∈ [0, 1] at the midpoint detuning.
pub fn fig2_inset(base: &SystemParams) -> SweepSpec {
    SweepSpec::new("fig2-inset", at_midpoint(base), SweepAxis::Alignment, linspace(0.0, 1.0, 21))
}

/// V₁₂ against ⟨a⟩ ∈ [0.05, 10] with n = n₀⟨a⟩ and γ₀ = 0.001⟨a⟩.
pub fn fig3(base: &SystemParams) -> SweepSpec {
    let mut spec = SweepSpec::new("fig3", at_midpoint(base), SweepAxis::Amplitude, linspace(0.05, 10.0, FIGURE_POINTS));
    spec.scalings = vec![
        Scaling { target: ScaledParam::N0, coefficient: base.n0 },
        Scaling { target: ScaledParam::Gamma0, coefficient: 0.001 },
    ];
    spec
}

/// Absorption against ⟨a⟩ ∈ [0.05, 10] with density and exchange rate held
/// at their base values.
pub fn fig3b(base: &SystemParams) -> SweepSpec {
    SweepSpec::new("fig3b", at_midpoint(base), SweepAxis::Amplitude, linspace(0.05, 10.0, FIGURE_POINTS))
}

/// V₁₂ and absorption against γ₀ at the midpoint: γ₀ = 0 followed by a
/// log grid up to 0.5, so γ₁₃ spans [0, 1].
pub fn fig4(base: &SystemParams) -> SweepSpec {
    let mut grid = vec![0.0];
    grid.extend(logspace(1e-5, 0.5, FIGURE_POINTS - 1));
    SweepSpec::new("fig4", at_midpoint(base), SweepAxis::Gamma0, grid)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub g: f64,
    pub pop1: f64,
    pub pop2: f64,
    pub iterations: usize,
}

/// Target population of level 2 at the midpoint detuning.
pub const CALIBRATION_TARGET: f64 = 0.064;

/// Bisects g so that ⟨σ₂₂⟩ at the midpoint equals [`CALIBRATION_TARGET`].
pub fn calibrate_coupling(base: &SystemParams) -> Result<Calibration> {
    let mid = at_midpoint(base);
    let pops = |g: f64| -> Result<[f64; 4]> {
        let p = SystemParams { g, ..mid };
        let s = crate::steady::solve_steady_state(&build_generator(&p)?)?;
        Ok(s.populations())
    };
    let (mut lo, mut hi) = (0.01, 2.0);
    let f = |g: f64| pops(g).map(|p| p[1] - CALIBRATION_TARGET);
    if f(lo)? > 0.0 || f(hi)? < 0.0 {
        return Err(Error::InvalidSweep("target population not bracketed by g in [0.01, 2]".into()));
    }
    let mut iterations = 0;
    while hi - lo > 1e-12 && iterations < 100 {
        let mid_g = 0.5 * (lo + hi);
        if f(mid_g)? < 0.0 {
            lo = mid_g;
        } else {
            hi = mid_g;
        }
        iterations += 1;
    }
    let g = 0.5 * (lo + hi);
    let p = pops(g)?;
    Ok(Calibration { g, pop1: p[0], pop2: p[1], iterations })
}
