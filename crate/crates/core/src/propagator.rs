//! Closed-form time evolution under the detuned Jaynes–Cummings
//! interaction, in the frame `H = Ω(Δσ_z + σ₊a + σ₋a†)`.
//!
//! The propagator is block-diagonal in excitation sectors
//! `{|e,m⟩, |g,m+1⟩}`; the ground vacuum `|g,0⟩` is dark and only picks up
//! the detuning phase. Each sector block is the 2×2 rotation
//!
//! ```text
//!   [ C_k - iΔS_k      -i√k·S_k     ]        k = m + 1,
//!   [ -i√k·S_k          C_k + iΔS_k ]        C_k = cos(ΩT√(Δ²+k)),
//! ```
//!
//! with `S_k = sin(ΩT√(Δ²+k))/√(Δ²+k)` (sinc limit `ΩT` at `√(Δ²+k) = 0`),
//! which makes every block exactly unitary. On the truncated space the
//! matrix built here coincides with the exponential `exp(-iHT)` of the
//! truncated Hamiltonian, including the uncoupled top level `|e,N-1⟩`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{QubitFockState, QubitLevel};
use crate::{CMatrix, CVector};

/// Margin added to the initial photon number when choosing the Fock
/// cutoff. The dynamics populates n±1 only; the margin guards the
/// oracle exponential against truncation leakage.
pub const CUTOFF_MARGIN: usize = 5;

/// Default Fock cutoff for dynamics starting from photon number `n`.
pub fn default_cutoff(n: usize) -> usize {
    n + CUTOFF_MARGIN
}

/// `(C_m, S_m)` at level `m`: `C_m = cos(ΩT√(Δ²+m))` and
/// `S_m = sin(ΩT√(Δ²+m))/√(Δ²+m)`, with `S_m → ΩT` as `√(Δ²+m) → 0`.
pub fn rabi_coefficients(level: usize, delta: f64, omega: f64, t: f64) -> (f64, f64) {
    let r = (delta * delta + level as f64).sqrt();
    if r == 0.0 {
        return (1.0, omega * t);
    }
    let phase = omega * t * r;
    (phase.cos(), phase.sin() / r)
}

/// Per-level coefficients of the block propagator at fixed (Δ, Ω, T).
#[derive(Debug, Clone)]
pub struct PropagatorCoefficients {
    delta: f64,
    omega: f64,
    t: f64,
    cutoff: usize,
    /// `C_m` and `S_m` for levels `0..=cutoff`.
    c: Vec<f64>,
    s: Vec<f64>,
}

impl PropagatorCoefficients {
    pub fn new(delta: f64, omega: f64, t: f64, cutoff: usize) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::InvalidDimension(format!(
                "propagator needs a Fock cutoff of at least 2, got {cutoff}"
            )));
        }
        let mut c = Vec::with_capacity(cutoff + 1);
        let mut s = Vec::with_capacity(cutoff + 1);
        for level in 0..=cutoff {
            let (cm, sm) = rabi_coefficients(level, delta, omega, t);
            c.push(cm);
            s.push(sm);
        }
        Ok(Self {
            delta,
            omega,
            t,
            cutoff,
            c,
            s,
        })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn c(&self, level: usize) -> f64 {
        self.c[level]
    }

    pub fn s(&self, level: usize) -> f64 {
        self.s[level]
    }

    /// `⟨e,m|U|e,m⟩`. For `m < cutoff-1` this is `C_{m+1} - iΔS_{m+1}`;
    /// the top level is uncoupled under truncation and evolves with the
    /// bare detuning phase `C_0 - iΔS_0 = e^{-iΩΔT}`.
    pub fn excited_diagonal(&self, m: usize) -> Complex64 {
        if m + 1 < self.cutoff {
            Complex64::new(self.c[m + 1], -self.delta * self.s[m + 1])
        } else {
            Complex64::new(self.c[0], -self.delta * self.s[0])
        }
    }

    /// `⟨g,m|U|g,m⟩ = C_m + iΔS_m`; at `m = 0` this is the dark-state
    /// phase `e^{+iΩΔT}`.
    pub fn ground_diagonal(&self, m: usize) -> Complex64 {
        Complex64::new(self.c[m], self.delta * self.s[m])
    }

    /// Excitation-exchange coefficient
    /// `⟨g,m+1|U|e,m⟩ = ⟨e,m|U|g,m+1⟩ = -i√(m+1)·S_{m+1}`.
    pub fn exchange(&self, m: usize) -> Complex64 {
        Complex64::new(0.0, -((m + 1) as f64).sqrt() * self.s[m + 1])
    }

    /// Assemble the full `2N×2N` unitary in the fixed basis ordering.
    pub fn matrix(&self) -> CMatrix {
        let n = self.cutoff;
        let mut u = CMatrix::zeros(2 * n, 2 * n);
        for m in 0..n - 1 {
            let ie = QubitFockState::index(QubitLevel::Excited, m, n);
            let ig = QubitFockState::index(QubitLevel::Ground, m + 1, n);
            u[(ie, ie)] = self.excited_diagonal(m);
            u[(ig, ig)] = self.ground_diagonal(m + 1);
            u[(ie, ig)] = self.exchange(m);
            u[(ig, ie)] = self.exchange(m);
        }
        let dark = QubitFockState::index(QubitLevel::Ground, 0, n);
        u[(dark, dark)] = self.ground_diagonal(0);
        let top = QubitFockState::index(QubitLevel::Excited, n - 1, n);
        u[(top, top)] = self.excited_diagonal(n - 1);
        u
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn time(&self) -> f64 {
        self.t
    }
}

/// Closed-form propagator matrix on the `2N`-dimensional truncated space.
pub fn propagator_matrix(delta: f64, omega: f64, t: f64, cutoff: usize) -> Result<CMatrix> {
    Ok(PropagatorCoefficients::new(delta, omega, t, cutoff)?.matrix())
}

/// The four amplitudes of the evolved initial state
/// `(|e,n⟩ + |g,n⟩)/√2 → A₁|e,n⟩ + A₂|g,n+1⟩ + A₃|e,n-1⟩ + A₄|g,n⟩`.
#[derive(Debug, Clone, Copy)]
pub struct EvolvedAmplitudes {
    /// Coefficient of `|e,n⟩`.
    pub a1: Complex64,
    /// Coefficient of `|g,n+1⟩`, proportional to `√(n+1)·S_{n+1}`.
    pub a2: Complex64,
    /// Coefficient of `|e,n-1⟩`, proportional to `√n·S_n`; identically
    /// zero for n = 0.
    pub a3: Complex64,
    /// Coefficient of `|g,n⟩`.
    pub a4: Complex64,
    /// Base photon number n.
    pub photon_number: usize,
}

impl EvolvedAmplitudes {
    /// `Σ|A_i|²`, equal to 1 up to rounding.
    pub fn total_probability(&self) -> f64 {
        self.a1.norm_sqr() + self.a2.norm_sqr() + self.a3.norm_sqr() + self.a4.norm_sqr()
    }
}

/// Evolve `(|e,n⟩ + |g,n⟩)/√2` for scaled time `t` with the default cutoff.
pub fn evolve_initial(
    n: usize,
    delta: f64,
    omega: f64,
    t: f64,
) -> Result<(EvolvedAmplitudes, QubitFockState)> {
    evolve_initial_with_cutoff(n, delta, omega, t, default_cutoff(n))
}

/// Evolve `(|e,n⟩ + |g,n⟩)/√2` on a space truncated at `cutoff` levels.
pub fn evolve_initial_with_cutoff(
    n: usize,
    delta: f64,
    omega: f64,
    t: f64,
    cutoff: usize,
) -> Result<(EvolvedAmplitudes, QubitFockState)> {
    if cutoff < n + 2 {
        return Err(Error::CutoffTooSmall {
            cutoff,
            photon_number: n,
        });
    }
    let coeff = PropagatorCoefficients::new(delta, omega, t, cutoff)?;
    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);

    let a1 = coeff.excited_diagonal(n) * inv_sqrt2;
    let a2 = coeff.exchange(n) * inv_sqrt2;
    // The |e,n-1⟩ branch is structurally absent for n = 0.
    let a3 = if n == 0 {
        Complex64::ZERO
    } else {
        coeff.exchange(n - 1) * inv_sqrt2
    };
    let a4 = coeff.ground_diagonal(n) * inv_sqrt2;

    let mut amplitudes = CVector::zeros(2 * cutoff);
    amplitudes[QubitFockState::index(QubitLevel::Excited, n, cutoff)] = a1;
    amplitudes[QubitFockState::index(QubitLevel::Ground, n + 1, cutoff)] = a2;
    if n > 0 {
        amplitudes[QubitFockState::index(QubitLevel::Excited, n - 1, cutoff)] = a3;
    }
    amplitudes[QubitFockState::index(QubitLevel::Ground, n, cutoff)] = a4;

    let state = QubitFockState::new(cutoff, amplitudes)?;
    Ok((
        EvolvedAmplitudes {
            a1,
            a2,
            a3,
            a4,
            photon_number: n,
        },
        state,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::max_entry_diff;
    use crate::operators::excitation_number;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn unitarity_deviation(u: &CMatrix) -> f64 {
        let identity = CMatrix::identity(u.nrows(), u.ncols());
        max_entry_diff(&(u.adjoint() * u), &identity)
    }

    #[test]
    fn coefficients_at_time_zero() {
        for level in [0usize, 1, 4] {
            for delta in [0.0, 0.3, 0.9] {
                let (c, s) = rabi_coefficients(level, delta, 0.4, 0.0);
                assert_eq!(c, 1.0);
                assert_eq!(s, 0.0);
            }
        }
    }

    #[test]
    fn coefficients_at_quarter_period() {
        // Δ=0, m=1: argument ΩT and unit denominator.
        let omega = 0.4;
        let t = FRAC_PI_2 / omega;
        let (c, s) = rabi_coefficients(1, 0.0, omega, t);
        assert_abs_diff_eq!(c, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn coefficients_resonant_vacuum_limit() {
        let (c, s) = rabi_coefficients(0, 0.0, 0.4, 7.0);
        assert_eq!(c, 1.0);
        assert_abs_diff_eq!(s, 2.8, epsilon = 1e-15);
    }

    #[test]
    fn propagator_at_time_zero_is_identity() {
        let u = propagator_matrix(0.3, 0.4, 0.0, 6).unwrap();
        let identity = CMatrix::identity(12, 12);
        assert_eq!(max_entry_diff(&u, &identity), 0.0);
    }

    #[test]
    fn excited_vacuum_swaps_to_ground_one_photon() {
        // Δ=0, ΩT = π/2: |e,0⟩ → -i|g,1⟩.
        let omega = 0.4;
        let u = propagator_matrix(0.0, omega, FRAC_PI_2 / omega, 4).unwrap();
        let ie = QubitFockState::index(QubitLevel::Excited, 0, 4);
        let ig = QubitFockState::index(QubitLevel::Ground, 1, 4);
        assert_abs_diff_eq!(u[(ie, ie)].norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!((u[(ig, ie)] + Complex64::I).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn unitary_for_generic_parameters() {
        for (delta, omega, t, cutoff) in [
            (0.0, 0.4, 7.0, 6),
            (0.3, 0.4, 13.7, 8),
            (0.9, 0.5, 25.0, 12),
            (1.7, 0.31, 42.0, 5),
        ] {
            let u = propagator_matrix(delta, omega, t, cutoff).unwrap();
            assert!(
                unitarity_deviation(&u) < 1e-12,
                "U†U deviates for Δ={delta}, Ω={omega}, T={t}"
            );
        }
    }

    #[test]
    fn sector_blocks_are_unitary() {
        let coeff = PropagatorCoefficients::new(0.9, 0.4, 11.3, 9).unwrap();
        for m in 0..8 {
            let b1 = coeff.excited_diagonal(m);
            let b4 = coeff.ground_diagonal(m + 1);
            let ex = coeff.exchange(m);
            // Columns of the 2×2 block must be orthonormal.
            assert_abs_diff_eq!(b1.norm_sqr() + ex.norm_sqr(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(b4.norm_sqr() + ex.norm_sqr(), 1.0, epsilon = 1e-12);
            let cross = b1.conj() * ex + ex.conj() * b4;
            assert_abs_diff_eq!(cross.norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn block_diagonal_in_excitation_sectors() {
        // Non-zero entries only where row and column share a sector:
        // {|e,m⟩, |g,m+1⟩}, the dark |g,0⟩, and the truncated top |e,N-1⟩.
        let cutoff = 6;
        let u = propagator_matrix(0.7, 0.4, 9.3, cutoff).unwrap();
        let sector = |idx: usize| -> usize {
            // Excitation number labels the sector.
            if idx < cutoff {
                idx + 1
            } else {
                idx - cutoff
            }
        };
        for i in 0..2 * cutoff {
            for j in 0..2 * cutoff {
                if sector(i) != sector(j) {
                    assert_eq!(
                        u[(i, j)],
                        Complex64::ZERO,
                        "coupling between sectors {} and {}",
                        sector(i),
                        sector(j)
                    );
                }
            }
        }
    }

    #[test]
    fn commutes_with_excitation_number() {
        let u = propagator_matrix(0.9, 0.4, 17.0, 7).unwrap();
        let n_exc = excitation_number(7);
        let comm = &u * &n_exc - &n_exc * &u;
        assert!(max_entry_diff(&comm, &CMatrix::zeros(14, 14)) < 1e-10);
    }

    #[test]
    fn evolved_amplitudes_at_time_zero() {
        let (amps, _) = evolve_initial(3, 0.3, 0.4, 0.0).unwrap();
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(amps.a1, Complex64::new(inv_sqrt2, 0.0));
        assert_eq!(amps.a4, Complex64::new(inv_sqrt2, 0.0));
        assert_eq!(amps.a2, Complex64::ZERO);
        assert_eq!(amps.a3, Complex64::ZERO);
    }

    #[test]
    fn vacuum_start_never_populates_lower_branch() {
        for t in [0.0, 1.3, 7.0, 19.4] {
            let (amps, _) = evolve_initial(0, 0.3, 0.4, t).unwrap();
            assert_eq!(amps.a3, Complex64::ZERO);
        }
    }

    #[test]
    fn amplitudes_stay_normalized() {
        for (n, delta, t) in [(0usize, 0.0, 5.0), (1, 0.3, 7.0), (8, 0.9, 25.0)] {
            let (amps, state) = evolve_initial(n, delta, 0.4, t).unwrap();
            assert_abs_diff_eq!(amps.total_probability(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(state.norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn evolved_state_matches_matrix_action() {
        let (n, delta, omega, t) = (2usize, 0.3, 0.4, 9.1);
        let cutoff = default_cutoff(n);
        let (_, state) = evolve_initial(n, delta, omega, t).unwrap();
        let u = propagator_matrix(delta, omega, t, cutoff).unwrap();
        let psi0 = QubitFockState::initial_superposition(n, cutoff).unwrap();
        let direct = &u * psi0.amplitudes();
        for i in 0..2 * cutoff {
            assert_abs_diff_eq!((state.amplitudes()[i] - direct[i]).norm(), 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn resonant_vacuum_returns_at_full_period() {
        let omega = 0.4;
        let t = 2.0 * PI / omega;
        let (_, state) = evolve_initial(0, 0.0, omega, t).unwrap();
        let psi0 = QubitFockState::initial_superposition(0, default_cutoff(0)).unwrap();
        let fidelity = state.inner(&psi0).unwrap().norm_sqr();
        assert!(fidelity >= 1.0 - 1e-10);
    }

    #[test]
    fn cutoff_errors() {
        assert!(matches!(
            evolve_initial_with_cutoff(3, 0.0, 0.4, 1.0, 4),
            Err(Error::CutoffTooSmall { .. })
        ));
        assert!(matches!(
            propagator_matrix(0.0, 0.4, 1.0, 1),
            Err(Error::InvalidDimension(_))
        ));
    }
}
