//! Spectral theory of random tridiagonal Toeplitz matrices.
//!
//! * [`closedform`]: exact finite-order spectra and exact per-realization
//!   limits of the extreme singular values / eigenvalue moduli.
//! * [`oracle`]: brute-force spectra of assembled matrices (Jacobi, Sturm
//!   bisection, characteristic-polynomial residuals).
//! * [`quadrature`]: adaptive Gauss–Kronrod integration.
//! * [`analytic`]: limit laws, singularity constants and condition-number
//!   distributions for Rademacher, Cauchy and Gaussian entries.
//! * [`montecarlo`]: seeded, thread-count-independent simulation and
//!   Kolmogorov–Smirnov comparison against the limit laws.
//!
//! The matrix and quadrature code is generic over [`Scalar`] (`f32` or
//! `f64`); the aliases below fix it to one precision.

pub mod analytic;
pub mod closedform;
pub mod domain;
pub mod error;
pub mod montecarlo;
pub mod oracle;
pub mod quadrature;
pub mod scalar;

pub use domain::{
    condition_number, Assignment, ConditionNumber, EntryDistribution, EntryLaw, Horizon,
    RealizedTriple, SpectralExtremes, SpectralKind,
};
pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Triple64 = RealizedTriple<f64>;
pub type Triple32 = RealizedTriple<f32>;
pub type Extremes64 = SpectralExtremes<f64>;
pub type Extremes32 = SpectralExtremes<f32>;
pub type Kappa64 = ConditionNumber<f64>;
pub type Kappa32 = ConditionNumber<f32>;
pub type Quadrature64 = quadrature::QuadratureResult<f64>;
pub type Quadrature32 = quadrature::QuadratureResult<f32>;
pub type Toeplitz64 = oracle::TridiagonalToeplitzMatrix<f64>;
pub type Toeplitz32 = oracle::TridiagonalToeplitzMatrix<f32>;
pub type DenseSymmetric64 = oracle::DenseSymmetricMatrix<f64>;
pub type DenseSymmetric32 = oracle::DenseSymmetricMatrix<f32>;
