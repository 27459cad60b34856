use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    #[error("mixing angles undefined: both mean field amplitudes are zero")]
    AnglesUndefined,

    #[error("steady-state integration did not converge (residual {residual:.3e} after {doublings} doublings)")]
    SteadyStateNotConverged { residual: f64, doublings: usize },

    #[error("drift matrix is singular on the traceless subspace (eigenvalue {eigenvalue:.3e})")]
    SingularDrift { eigenvalue: crate::C64 },

    #[error("atomic response near-singular at omega = {omega}: condition number {condition:.3e}, closest drift eigenvalue {eigenvalue:.3e}")]
    NearSingularResponse { omega: f64, condition: f64, eigenvalue: crate::C64 },

    #[error("drift matrix is unstable (max real eigenvalue {max_real:.3e})")]
    UnstableDrift { max_real: f64 },

    #[error("time step too large: dt*|L| = {product:.3e} must stay below 0.1")]
    StepTooLarge { product: f64 },

    #[error(
        "positivity violated at t = {time}: min eigenvalue {min_eigenvalue:.3e}; reduce dt below {suggested_dt:.3e}"
    )]
    PositivityViolation { time: f64, min_eigenvalue: f64, suggested_dt: f64 },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("plot: {0}")]
    Plot(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
