//! Density matrices: validation, PSD square root, expectations, entropy.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operators::Observable;
use crate::{hermiticity_deviation, CMatrix};

/// Hermiticity tolerance for density-matrix validation.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Unit-trace tolerance.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues above this floor are treated as numerical-noise zeros;
/// anything below it is a genuinely invalid (non-PSD) input.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;
/// Relative cutoff below which an eigenvalue counts as an exact zero when
/// taking the matrix square root. √λ amplifies eigen-solver noise near
/// zero (√1e-16 = 1e-8), so rank deficiencies must be truncated, not
/// rounded through.
pub const SQRT_RELATIVE_ZERO: f64 = 1e-12;

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns `(eigenvalues, eigenvectors)` with real eigenvalues and the
/// eigenvectors as matrix columns, so `m = V diag(λ) V†`.
pub(crate) fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = nalgebra::linalg::SymmetricEigen::new(m.clone());
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

/// Hermitian, unit-trace, positive semi-definite matrix.
///
/// All three invariants are checked on construction; operations that
/// produce density matrices internally (partial traces) route through the
/// same validation.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(Error::InvalidDimension(format!(
                "density matrix must be square and non-empty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let herm = hermiticity_deviation(&entries);
        if herm > HERMITICITY_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let trace = entries.trace();
        let trace_dev = (trace - Complex64::ONE).norm();
        if trace_dev > TRACE_TOL {
            return Err(Error::InvalidTrace(trace_dev));
        }
        let (eigenvalues, _) = hermitian_eigen(&entries);
        let min_eig = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        if min_eig < EIGENVALUE_FLOOR {
            return Err(Error::NotPositiveSemidefinite(min_eig));
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// Real eigenvalues (unsorted), with numerical-noise negatives clamped to 0.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let (mut eigenvalues, _) = hermitian_eigen(&self.entries);
        for v in &mut eigenvalues {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        eigenvalues
    }

    /// Principal square root `√ρ` via Hermitian eigendecomposition.
    ///
    /// Eigenvalues in `[EIGENVALUE_FLOOR, 0)` are clamped to zero and
    /// anything more negative is a non-PSD error; positive eigenvalues
    /// below `SQRT_RELATIVE_ZERO` of the largest are likewise truncated
    /// to zero. The result satisfies `√ρ·√ρ = ρ` to ~1e-10 in the
    /// max-entry norm.
    pub fn psd_sqrt(&self) -> Result<CMatrix> {
        let (eigenvalues, vectors) = hermitian_eigen(&self.entries);
        let largest = eigenvalues.iter().copied().fold(0.0, f64::max);
        let zero_cutoff = largest * SQRT_RELATIVE_ZERO;
        let n = self.dim();
        let mut scaled = vectors.clone();
        for (j, &lambda) in eigenvalues.iter().enumerate() {
            if lambda < EIGENVALUE_FLOOR {
                return Err(Error::NotPositiveSemidefinite(lambda));
            }
            let root = if lambda <= zero_cutoff {
                0.0
            } else {
                lambda.sqrt()
            };
            for i in 0..n {
                scaled[(i, j)] *= root;
            }
        }
        Ok(&scaled * vectors.adjoint())
    }

    /// `Tr(ρ²)`, real by Hermiticity.
    pub fn purity(&self) -> f64 {
        (&self.entries * &self.entries).trace().re
    }

    /// Von Neumann entropy `-Σ λ log₂ λ` with `0·log 0 := 0`.
    pub fn entropy(&self) -> f64 {
        self.eigenvalues()
            .iter()
            .filter(|&&l| l > 0.0)
            .map(|&l| -l * l.log2())
            .sum()
    }
}

/// Mean `Tr(ρA)` and variance `Tr(ρA²) - mean²` of an observable.
///
/// The variance is clamped at zero: values in `(-1e-10, 0)` are rounding
/// noise from the subtraction.
pub fn expectation_and_variance(rho: &DensityMatrix, observable: &Observable) -> Result<(f64, f64)> {
    if rho.dim() != observable.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), observable.dim()));
    }
    let a = observable.matrix();
    let mean = (rho.entries() * a).trace().re;
    let second_moment = (rho.entries() * (a * a)).trace().re;
    let variance = second_moment - mean * mean;
    Ok((mean, variance.max(0.0)))
}
