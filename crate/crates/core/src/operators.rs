//! Ladder and Pauli operators on the truncated qubit⊗Fock space.
//!
//! Conventions: the Fock space is truncated to photon numbers `0..cutoff`,
//! so `a†` annihilates the top level `|cutoff-1⟩`. Pauli matrices act on
//! the qubit with `σ_z|e⟩ = +|e⟩` and basis order (e, g).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::{hermiticity_deviation, CMatrix};

/// Annihilation operator on the truncated Fock space: `a|k⟩ = √k |k-1⟩`.
pub fn annihilation(cutoff: usize) -> Result<CMatrix> {
    if cutoff == 0 {
        return Err(Error::InvalidDimension(
            "Fock cutoff must be at least 1".into(),
        ));
    }
    let mut a = CMatrix::zeros(cutoff, cutoff);
    for k in 1..cutoff {
        a[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
    }
    Ok(a)
}

/// Creation operator: `a†|k⟩ = √(k+1) |k+1⟩`, truncated at the top level.
pub fn creation(cutoff: usize) -> Result<CMatrix> {
    Ok(annihilation(cutoff)?.adjoint())
}

/// Pauli `σ_x` in the (e, g) basis.
pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::ZERO,
            Complex64::ONE,
            Complex64::ONE,
            Complex64::ZERO,
        ],
    )
}

/// Pauli `σ_y` in the (e, g) basis.
pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::ZERO,
            -Complex64::I,
            Complex64::I,
            Complex64::ZERO,
        ],
    )
}

/// Pauli `σ_z` in the (e, g) basis: `σ_z|e⟩ = +|e⟩`, `σ_z|g⟩ = -|g⟩`.
pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::ONE,
            Complex64::ZERO,
            Complex64::ZERO,
            -Complex64::ONE,
        ],
    )
}

/// Identity matrix of the given dimension.
pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// Total excitation number `a†a + |e⟩⟨e|` on the 2N-dimensional joint
/// space, diagonal in the fixed basis ordering: `|e,k⟩ ↦ k+1`, `|g,k⟩ ↦ k`.
pub fn excitation_number(cutoff: usize) -> CMatrix {
    let mut m = CMatrix::zeros(2 * cutoff, 2 * cutoff);
    for k in 0..cutoff {
        m[(k, k)] = Complex64::new((k + 1) as f64, 0.0);
        m[(cutoff + k, cutoff + k)] = Complex64::new(k as f64, 0.0);
    }
    m
}

/// The operator set built by [`build_operators`].
pub struct OperatorSet {
    /// `a` on the truncated Fock space (cutoff × cutoff).
    pub annihilation: CMatrix,
    /// `a†` on the truncated Fock space.
    pub creation: CMatrix,
    /// 2×2 Pauli operators on the qubit.
    pub sigma_x: CMatrix,
    pub sigma_y: CMatrix,
    pub sigma_z: CMatrix,
    /// Identity on the Fock space.
    pub identity: CMatrix,
}

/// Build the ladder and Pauli operators for a Fock cutoff of `cutoff` levels.
pub fn build_operators(cutoff: usize) -> Result<OperatorSet> {
    Ok(OperatorSet {
        annihilation: annihilation(cutoff)?,
        creation: creation(cutoff)?,
        sigma_x: pauli_x(),
        sigma_y: pauli_y(),
        sigma_z: pauli_z(),
        identity: identity(cutoff),
    })
}

/// A self-adjoint operator, validated Hermitian on construction.
#[derive(Debug, Clone)]
pub struct Observable {
    matrix: CMatrix,
}

impl Observable {
    /// Hermiticity tolerance for construction.
    pub const HERMITICITY_TOL: f64 = 1e-12;

    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch(matrix.nrows(), matrix.ncols()));
        }
        let dev = hermiticity_deviation(&matrix);
        if dev > Self::HERMITICITY_TOL {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
}
