//! Pure states of the qubit⊗Fock system and their reduced density matrices.
//!
//! Basis ordering is fixed as (e,0), (e,1), …, (e,N-1), (g,0), …, (g,N-1)
//! so that the closed-form propagator and the eigendecomposition oracle
//! agree on indexing bit for bit.

use num_complex::Complex64;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::{CMatrix, CVector};

/// Norm deviation beyond which a state is rejected as unnormalized.
pub const NORM_TOL: f64 = 1e-9;

/// Qubit level, `Excited` listed first in the basis ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitLevel {
    Excited,
    Ground,
}

/// Pure state of the qubit⊗Fock system on a truncated Fock space.
#[derive(Debug, Clone)]
pub struct QubitFockState {
    cutoff: usize,
    amplitudes: CVector,
}

impl QubitFockState {
    /// Wrap an amplitude vector of length `2 * cutoff`.
    ///
    /// The vector must be normalized within [`NORM_TOL`].
    pub fn new(cutoff: usize, amplitudes: CVector) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::InvalidDimension(
                "Fock cutoff must be at least 1".into(),
            ));
        }
        if amplitudes.len() != 2 * cutoff {
            return Err(Error::DimensionMismatch(amplitudes.len(), 2 * cutoff));
        }
        let state = Self { cutoff, amplitudes };
        let dev = (state.norm() - 1.0).abs();
        if dev > NORM_TOL {
            return Err(Error::NotNormalized(dev));
        }
        Ok(state)
    }

    /// The superposition `(|e,n⟩ + |g,n⟩)/√2` on a space with the given cutoff.
    pub fn initial_superposition(n: usize, cutoff: usize) -> Result<Self> {
        if cutoff < n + 2 {
            return Err(Error::CutoffTooSmall {
                cutoff,
                photon_number: n,
            });
        }
        let mut amplitudes = CVector::zeros(2 * cutoff);
        let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amplitudes[n] = a;
        amplitudes[cutoff + n] = a;
        Ok(Self { cutoff, amplitudes })
    }

    /// Basis state `|level, k⟩`.
    pub fn basis_state(level: QubitLevel, k: usize, cutoff: usize) -> Result<Self> {
        if k >= cutoff {
            return Err(Error::InvalidDimension(format!(
                "photon number {k} outside cutoff {cutoff}"
            )));
        }
        let mut amplitudes = CVector::zeros(2 * cutoff);
        amplitudes[Self::index(level, k, cutoff)] = Complex64::ONE;
        Ok(Self { cutoff, amplitudes })
    }

    /// Flat index of `|level, k⟩` in the fixed basis ordering.
    pub fn index(level: QubitLevel, k: usize, cutoff: usize) -> usize {
        match level {
            QubitLevel::Excited => k,
            QubitLevel::Ground => cutoff + k,
        }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn amplitude(&self, level: QubitLevel, k: usize) -> Complex64 {
        self.amplitudes[Self::index(level, k, self.cutoff)]
    }

    /// Euclidean norm of the amplitude vector.
    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.cutoff != other.cutoff {
            return Err(Error::DimensionMismatch(self.cutoff, other.cutoff));
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    fn check_normalized(&self) -> Result<()> {
        let dev = (self.norm() - 1.0).abs();
        if dev > NORM_TOL {
            return Err(Error::NotNormalized(dev));
        }
        Ok(())
    }

    /// Reduced qubit state: `ρ_q[i][j] = Σ_k amp(i,k)·conj(amp(j,k))`.
    pub fn reduced_qubit(&self) -> Result<DensityMatrix> {
        self.check_normalized()?;
        let n = self.cutoff;
        let mut rho = CMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let mut sum = Complex64::ZERO;
                for k in 0..n {
                    sum += self.amplitudes[i * n + k] * self.amplitudes[j * n + k].conj();
                }
                rho[(i, j)] = sum;
            }
        }
        normalize_trace(&mut rho);
        DensityMatrix::new(rho)
    }

    /// Reduced field state: `ρ_f[k][l] = Σ_i amp(i,k)·conj(amp(i,l))`.
    pub fn reduced_field(&self) -> Result<DensityMatrix> {
        self.check_normalized()?;
        let n = self.cutoff;
        let mut rho = CMatrix::zeros(n, n);
        for k in 0..n {
            for l in 0..n {
                let mut sum = Complex64::ZERO;
                for i in 0..2 {
                    sum += self.amplitudes[i * n + k] * self.amplitudes[i * n + l].conj();
                }
                rho[(k, l)] = sum;
            }
        }
        normalize_trace(&mut rho);
        DensityMatrix::new(rho)
    }
}

/// Divide by the real trace so the result carries unit trace to rounding.
fn normalize_trace(rho: &mut CMatrix) {
    let trace = rho.trace().re;
    if trace > 0.0 {
        *rho /= Complex64::new(trace, 0.0);
    }
}
