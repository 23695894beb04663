//! Cooper-pair-box circuit parameters and the effective quantities that
//! drive the propagator.
//!
//! The dynamics is parameterized by four dimensionless knobs: the scaled
//! detuning Δ = δ/(2g), the capacitance ratio γ = C_j/C_g with Rabi scale
//! Ω(γ) = √γ/(1+γ), the photon number n, and the scaled time T. The
//! physical-parameter path (charging/Josephson energies, gate charge) is
//! provided for completeness and regime warnings; its constant and
//! dispersive contributions are already absorbed by the closed-form
//! propagator and are reported, not re-injected.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Raw circuit parameters of a Cooper pair box coupled to a cavity.
///
/// Units: energies in a common energy unit (ħ = 1), capacitances in a
/// common capacitance unit, frequencies in the same inverse-time unit as
/// the coupling strength.
#[derive(Debug, Clone, Copy)]
pub struct CPBParameters {
    /// Charging energy E_c.
    pub charging_energy: f64,
    /// Josephson coupling energy E_j.
    pub josephson_energy: f64,
    /// Dimensionless gate charge n_g.
    pub gate_charge: f64,
    /// Junction capacitance C_j.
    pub junction_capacitance: f64,
    /// Gate capacitance C_g.
    pub gate_capacitance: f64,
    /// Cavity frequency ω.
    pub cavity_frequency: f64,
    /// Bare qubit–cavity detuning δ.
    pub detuning: f64,
    /// Qubit–cavity coupling strength g.
    pub coupling: f64,
}

/// Charge-regime warning threshold: the two-level reduction assumes the
/// Josephson energy is much smaller than the charging energy.
pub const REGIME_RATIO: f64 = 0.2;

impl CPBParameters {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("charging energy", self.charging_energy),
            ("junction capacitance", self.junction_capacitance),
            ("gate capacitance", self.gate_capacitance),
            ("cavity frequency", self.cavity_frequency),
            ("coupling strength", self.coupling),
        ] {
            if value.is_nan() || value <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {value}"
                )));
            }
        }
        if !self.josephson_energy.is_finite() || self.josephson_energy < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Josephson energy must be finite and non-negative, got {}",
                self.josephson_energy
            )));
        }
        Ok(())
    }

    /// Charge-regime warning, `None` when E_j/E_c is comfortably small.
    pub fn regime_warning(&self) -> Option<String> {
        let ratio = self.josephson_energy / self.charging_energy;
        (ratio > REGIME_RATIO).then(|| {
            format!(
                "E_j/E_c = {ratio:.3} exceeds {REGIME_RATIO}; \
                 the two-level charge-basis reduction assumes E_j << E_c"
            )
        })
    }

    /// Derive all effective quantities.
    pub fn effective(&self) -> Result<EffectiveParameters> {
        self.validate()?;
        let gamma = self.junction_capacitance / self.gate_capacitance;
        Ok(EffectiveParameters {
            transition_frequency: transition_frequency(self),
            mixing_angle: mixing_angle(self),
            gate_offset: 1.0 - self.gate_charge,
            capacitance_ratio: gamma,
            rabi_scale: effective_rabi(gamma)?,
            scaled_detuning: scaled_detuning(self.detuning, self.coupling)?,
        })
    }
}

/// Effective quantities derived from [`CPBParameters`].
#[derive(Debug, Clone, Copy)]
pub struct EffectiveParameters {
    /// Qubit transition frequency ω_c.
    pub transition_frequency: f64,
    /// Mixing angle θ (radians).
    pub mixing_angle: f64,
    /// μ = 1 - n_g.
    pub gate_offset: f64,
    /// γ = C_j/C_g.
    pub capacitance_ratio: f64,
    /// Ω(γ) = √γ/(1+γ).
    pub rabi_scale: f64,
    /// Δ = δ/(2g).
    pub scaled_detuning: f64,
}

/// Qubit transition frequency `ω_c = √(E_j² + 16 E_c² (2n_g - 1)²)`.
///
/// Minimized exactly at the charge-degeneracy point n_g = ½, where it
/// equals the Josephson energy.
pub fn transition_frequency(p: &CPBParameters) -> f64 {
    let charge_term = 4.0 * p.charging_energy * (2.0 * p.gate_charge - 1.0);
    p.josephson_energy.hypot(charge_term)
}

/// Mixing angle `θ = -arctan(E_j / (E_c (2n_g - 1)))`.
///
/// At the degeneracy point n_g = ½ the argument diverges; the limit
/// convention `θ = -sign(E_j)·π/2` is returned (0 when E_j = 0).
pub fn mixing_angle(p: &CPBParameters) -> f64 {
    let denom = p.charging_energy * (2.0 * p.gate_charge - 1.0);
    if denom == 0.0 {
        if p.josephson_energy == 0.0 {
            return 0.0;
        }
        return -p.josephson_energy.signum() * FRAC_PI_2;
    }
    -(p.josephson_energy / denom).atan()
}

/// Effective Rabi scale `Ω(γ) = √γ/(1+γ)`, maximal (½) at γ = 1.
pub fn effective_rabi(gamma: f64) -> Result<f64> {
    if gamma.is_nan() || gamma <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "capacitance ratio must be positive, got {gamma}"
        )));
    }
    Ok(gamma.sqrt() / (1.0 + gamma))
}

/// Scaled detuning `Δ = δ/(2g)`.
pub fn scaled_detuning(delta: f64, coupling: f64) -> Result<f64> {
    if coupling.is_nan() || coupling <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "coupling strength must be positive, got {coupling}"
        )));
    }
    Ok(delta / (2.0 * coupling))
}
