//! Dynamics and information measures for a superconducting charge qubit
//! coupled to a single quantized cavity mode.
//!
//! The library is organized around two independent evolution routes that
//! must agree:
//!
//! - [`propagator`]: the closed-form propagator of the detuned
//!   Jaynes–Cummings interaction, block-diagonal in excitation sectors.
//! - [`oracle`]: exact evolution by Hermitian eigendecomposition of the
//!   truncated Hamiltonian, used as ground truth for the closed form.
//!
//! On top of the state produced by either route, [`measures`] evaluates
//! Wigner–Yanase skew information, concurrence (generalized pure-state and
//! Wootters forms), purity, and entropy. [`sweep`] drives parameter sweeps
//! over (detuning, capacitance ratio, photon number), locates extrema of
//! the skew-information trace, and writes CSV bundles plus gnuplot scripts.
//! [`model`] maps raw Cooper-pair-box circuit parameters to the effective
//! quantities the propagator consumes.
//!
//! Parameter points are independent work items; with the `parallel` feature
//! (on by default) sweeps fan out over a rayon pool, with an identical
//! sequential fallback when the feature is disabled.

pub mod density;
pub mod error;
pub mod measures;
pub mod model;
pub mod operators;
pub mod oracle;
pub mod propagator;
pub mod state;
pub mod sweep;
pub mod validation;

pub use error::{Error, Result};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Dense complex matrix used throughout.
pub type CMatrix = DMatrix<Complex64>;
/// Dense complex vector used throughout.
pub type CVector = DVector<Complex64>;

/// Largest entry magnitude of `m - m†`.
pub(crate) fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Largest entry magnitude of `a - b`.
pub(crate) fn max_entry_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
