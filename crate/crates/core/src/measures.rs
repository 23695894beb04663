//! Information measures: Wigner–Yanase skew information, concurrence,
//! purity, and entropy of the reduced qubit state.
//!
//! The headline quantity is the skew information obtained from the
//! concurrence, `S_I = 1 + C²`, which ranges over \[1,2\] along every
//! trajectory of the evolved initial state. The raw Pauli variance sums
//! and the Wigner–Yanase sum over the qubit Paulis are reported as
//! diagnostic columns; the field side is summarized by purity/entropy
//! only, since a spin-½ operator triple is undefined on its three-level
//! support.

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::operators::{pauli_x, pauli_y, pauli_z, Observable};
use crate::state::QubitFockState;

/// Wigner–Yanase skew information `Tr(ρH²) - Tr(√ρ·H·√ρ·H)`.
///
/// Zero when `[ρ, H] = 0`; equals the variance of `H` when `ρ` is pure.
/// Rounding noise below zero is clamped.
pub fn skew_information_wy(rho: &DensityMatrix, observable: &Observable) -> Result<f64> {
    if rho.dim() != observable.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), observable.dim()));
    }
    let h = observable.matrix();
    let sqrt_rho = rho.psd_sqrt()?;
    let second_moment = (rho.entries() * (h * h)).trace().re;
    let sqrt_h = &sqrt_rho * h;
    let cross = (&sqrt_h * &sqrt_h).trace().re;
    Ok((second_moment - cross).max(0.0))
}

/// Wigner–Yanase skew information of the reduced qubit state summed over
/// the three Pauli observables.
pub fn wy_sum_qubit(state: &QubitFockState) -> Result<f64> {
    let rho = state.reduced_qubit()?;
    let mut total = 0.0;
    for pauli in [pauli_x(), pauli_y(), pauli_z()] {
        total += skew_information_wy(&rho, &Observable::new(pauli)?)?;
    }
    Ok(total)
}

/// Concurrence of a pure qubit⊗field state,
/// `C = √(2(1 - Tr ρ_q²)) = 2√(det ρ_q)`.
///
/// Evaluated through the Gram determinant of the two field-space rows,
/// `det ρ_q = Σ_{k<l} |u_k v_l - u_l v_k|²` (Lagrange identity), which is
/// non-negative by construction and exactly zero on product states whose
/// amplitude supports do not overlap pairwise.
pub fn concurrence_pure(state: &QubitFockState) -> Result<f64> {
    let dev = (state.norm() - 1.0).abs();
    if dev > crate::state::NORM_TOL {
        return Err(Error::NotNormalized(dev));
    }
    let n = state.cutoff();
    let amps = state.amplitudes();
    let mut det = 0.0f64;
    for k in 0..n {
        let (u_k, v_k) = (amps[k], amps[n + k]);
        for l in k + 1..n {
            let (u_l, v_l) = (amps[l], amps[n + l]);
            det += (u_k * v_l - u_l * v_k).norm_sqr();
        }
    }
    Ok((2.0 * det.sqrt()).min(1.0))
}

/// Wootters concurrence of a two-qubit density matrix.
///
/// With the spin-flipped state `ρ̃ = (σ_y⊗σ_y)·ρ*·(σ_y⊗σ_y)`, the
/// descending square roots `λ_i` of the eigenvalues of `ρρ̃` are the
/// singular values of `X = √ρ·(σ_y⊗σ_y)·√ρ*` (since `XX† = √ρ·ρ̃·√ρ`),
/// which sidesteps the square-then-root noise amplification on
/// rank-deficient inputs. `C = max{0, λ₁ - λ₂ - λ₃ - λ₄}`.
pub fn concurrence_wootters(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::InvalidDimension(format!(
            "Wootters concurrence needs a 4x4 density matrix, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    let yy = pauli_y().kronecker(&pauli_y());
    let sqrt_rho = rho.psd_sqrt()?;
    let sqrt_rho_conj = sqrt_rho.map(|z| z.conj());
    let x = &sqrt_rho * yy * sqrt_rho_conj;
    let mut roots: Vec<f64> = x.singular_values().iter().copied().collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    let c = roots[0] - roots[1] - roots[2] - roots[3];
    Ok(c.clamp(0.0, 1.0))
}

/// Skew information from the concurrence, `S_I = 1 + C²`.
pub fn skew_from_concurrence(concurrence: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&concurrence) {
        return Err(Error::InvalidParameter(format!(
            "concurrence must lie in [0,1], got {concurrence}"
        )));
    }
    Ok(1.0 + concurrence * concurrence)
}

/// Sum of Pauli variances of the reduced qubit state,
/// `Σ_i Δσ_i² = 3 - |r|²` with `r` the Bloch vector.
///
/// Ranges over \[2,3\]; equals `2 + C²` for pure joint states.
pub fn variance_sum_qubit(state: &QubitFockState) -> Result<f64> {
    let rho = state.reduced_qubit()?;
    let mut total = 0.0;
    for pauli in [pauli_x(), pauli_y(), pauli_z()] {
        let (_, variance) =
            crate::density::expectation_and_variance(&rho, &Observable::new(pauli)?)?;
        total += variance;
    }
    Ok(total)
}

/// Purity `Tr ρ_q²` and base-2 von Neumann entropy of the reduced qubit.
pub fn diagnostics(state: &QubitFockState) -> Result<(f64, f64)> {
    let rho = state.reduced_qubit()?;
    Ok((rho.purity(), rho.entropy()))
}

/// All measures of one evolved state.
#[derive(Debug, Clone, Copy)]
pub struct MeasureReport {
    /// `S_I = 1 + C²`, the headline trace quantity, in \[1,2\].
    pub skew_information: f64,
    /// Wigner–Yanase sum over the qubit Paulis.
    pub wy_sum: f64,
    /// Pauli variance sum, in \[2,3\].
    pub variance_sum: f64,
    /// Pure-state concurrence, in \[0,1\].
    pub concurrence: f64,
    /// `Tr ρ_q²`, in \[½,1\].
    pub purity: f64,
    /// Base-2 entropy of the reduced qubit, in \[0,1\].
    pub entropy: f64,
}

/// Evaluate every measure on a pure joint state.
pub fn measure_report(state: &QubitFockState) -> Result<MeasureReport> {
    let concurrence = concurrence_pure(state)?;
    let (purity, entropy) = diagnostics(state)?;
    Ok(MeasureReport {
        skew_information: skew_from_concurrence(concurrence)?,
        wy_sum: wy_sum_qubit(state)?,
        variance_sum: variance_sum_qubit(state)?,
        concurrence,
        purity,
        entropy,
    })
}
