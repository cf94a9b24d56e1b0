//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Unified error type for lattice construction, eigensolves, transmission
/// solves, Monte Carlo sweeps and spectrum analysis.
#[derive(Debug, Error)]
pub enum Error {
    /// A vector length does not match the lattice it belongs to.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A 1-based site index fell outside the lattice.
    #[error("site {site} out of range for a bath with {n_sites} sites")]
    SiteOutOfRange { site: usize, n_sites: usize },

    /// An input matrix or vector contained NaN or infinity.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    /// A constructor or operation received an invalid parameter value.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Edge states were requested for a trivial-phase bath.
    #[error("edge states require the topological phase (j1 < j2); they disappear for the trivial phase")]
    TrivialPhase,

    /// Localization length is only defined for the topological phase.
    #[error("localization length requires j2 > j1 > 0")]
    NotTopological,

    /// Transmission needs distinct input and output coupler sites.
    #[error("transmission requires at least 2 sites (input and output couplers are distinct sites)")]
    UnsupportedSize,

    /// The coupled-mode matrix is numerically singular even under the
    /// dense partial-pivot fallback (lossless resonance with kappa = gamma = 0).
    #[error("coupled-mode system is numerically singular")]
    SingularSystem,

    /// A sweep was asked to run on an empty detuning grid.
    #[error("detuning grid is empty")]
    EmptyGrid,

    /// A Monte Carlo realization stayed singular through every retry.
    #[error("realization {realization} at eta = {eta} remained singular after {attempts} fresh draws")]
    SweepAborted {
        eta: f64,
        realization: usize,
        attempts: usize,
    },

    /// The sweep configuration mixes incompatible modes.
    #[error("invalid sweep configuration: {0}")]
    Config(String),

    /// Too few samples above the amplitude floor for a decay fit.
    #[error("localization fit needs at least {needed} points above the amplitude floor, found {got}")]
    FitInsufficientPoints { needed: usize, got: usize },

    /// The fitted profile does not decay (slope ~ 0 would overflow xi).
    #[error("amplitude profile does not decay; localization length would overflow")]
    FitNonDecaying,

    /// Simplex search hit its iteration cap; best-so-far parameters attached.
    #[error("parameter fit did not converge after {iterations} iterations (best residual {best_residual:e})")]
    FitDidNotConverge {
        iterations: usize,
        best_residual: f64,
        /// Best parameters found, ordered (j1, j2, kappa, gamma, omega0).
        best_params: [f64; 5],
    },

    /// A degenerate input made the fit objective meaningless.
    #[error("fit input is degenerate: {0}")]
    FitDegenerateInput(&'static str),

    /// A statistic was requested on too small an ensemble.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Band-gap extraction saw an odd mode count or mid-gap modes.
    #[error("mode list is odd-sized or includes mid-gap modes; exclude the two mid-gap modes first")]
    MidGapModes,

    /// A data file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
