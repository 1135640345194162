//! Adaptive detection of dim maneuvering targets that migrate between two
//! adjacent range cells during the coherent pulse train.
//!
//! The library simulates a radar/sonar array observing two neighbouring range
//! cells over `N_p` pulses. A moving target occupies the first cell for `l`
//! pulses and the second cell for the following `h` pulses; both indices are
//! unknown. Six adaptive detectors (TSA-1/2, M-TSA-1/2, OSA-1/2) estimate
//! `(l, h)` with BIC-based selection rules and integrate the matched-filter
//! energy of the selected pulses, alongside three reference detectors (GAMF,
//! GASD, clairvoyant).
//!
//! Module layout:
//!
//! * [`linalg`] — dense complex Hermitian kernels (Cholesky, solves, log-det).
//! * [`scene`] — scenario synthesis: steering, covariance, migration schedule,
//!   Swerling-II data generation.
//! * [`stats`] — sufficient statistics: per-pulse energies, scatter matrices,
//!   amplitude and covariance MLEs, BIC penalties.
//! * [`select`] — the three `(l, h)` selection rules.
//! * [`detect`] — the nine detector statistics.
//! * [`mc`] — deterministic parallel Monte Carlo: threshold calibration,
//!   Pd/MVMP curves, benchmarking.
//! * [`reference`] — definition-literal reference implementations backing the
//!   self-test and the oracle test suites.
//! * [`config`] / [`runner`] — run configuration files and the command
//!   implementations behind the CLI.

pub mod config;
pub mod detect;
pub mod error;
pub mod linalg;
pub mod mc;
pub mod reference;
pub mod runner;
pub mod scene;
pub mod select;
pub mod selftest;
pub mod stats;

pub use error::{Error, Result};
pub use num_complex::Complex64;
