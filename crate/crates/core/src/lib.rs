//! Pseudo-spectral machinery for Newton-Nash convex integration on 2D
//! active scalar equations.
//!
//! The crate builds, at desk scale, one full stage of the iterative
//! construction for the momentum form of an active scalar equation: Fourier
//! multiplier operators and their classification, the anti-divergence
//! operator adapted to the multiplier, the algebraic stress decomposition,
//! Newton correctors with full stress bookkeeping, the oscillatory Nash
//! perturbation with its microlocal split, and diagnostics (Hamiltonian,
//! system residuals, inductive bound reports).
//!
//! Everything lives on the square torus `[0, 2*pi)^2` and is represented by
//! truncated Fourier coefficients; see [`spectral`] for the substrate.

pub mod algebra;
pub mod calculus_ops;
pub mod config;
pub mod diagnostics;
pub mod driver;
pub mod multiplier;
pub mod nash;
pub mod newton;
pub mod profiles;
pub mod snapshot;
pub mod spectral;
pub mod transport;

use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone)]
pub enum Error {
    /// Bad build-time configuration (grid size, parse errors, ranges).
    Config(String),
    /// An operation precondition was violated (zero mean, parity, ...).
    Precondition(String),
    /// The grid cannot hold a requested frequency band.
    Resolution(String),
    /// Parameter schedule violates a feasibility constraint.
    Infeasible(String),
    /// Stress decomposition failed (amplitudes lost positivity).
    Decomposition(String),
    /// A transport/flow solve was asked outside its stability window.
    Stability(String),
    /// Construction refused (exceptional multiplier class).
    Exceptional(String),
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Config(m) => write!(f, "configuration error: {m}"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::Resolution(m) => write!(f, "resolution error: {m}"),
            Error::Infeasible(m) => write!(f, "infeasible parameters: {m}"),
            Error::Decomposition(m) => write!(f, "decomposition failure: {m}"),
            Error::Stability(m) => write!(f, "stability error: {m}"),
            Error::Exceptional(m) => write!(f, "exceptional multiplier: {m}"),
            Error::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Quintic smoothstep on [0,1]: 0 at 0, 1 at 1, two vanishing derivatives
/// at both ends. All frozen bump profiles in the crate are built from it.
pub fn smoothstep(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        t * t * t * (10.0 + t * (-15.0 + 6.0 * t))
    }
}

/// Radial cutoff profile: 1 for r <= r0, 0 for r >= r1, smoothstep between.
pub fn radial_cutoff(r: f64, r0: f64, r1: f64) -> f64 {
    debug_assert!(r1 > r0);
    smoothstep((r1 - r) / (r1 - r0))
}
