//! Validation suites: oracle equivalence over the reference parameter
//! grid, randomized invariant checks, and measure identities.
//!
//! The same runners back the CLI `validate` subcommand and the
//! acceptance test suite, so the thresholds here are the single source
//! of truth for both.

use num_complex::Complex64;

use crate::density::DensityMatrix;
use crate::error::Result;
use crate::max_entry_diff;
use crate::measures::{
    concurrence_pure, concurrence_wootters, measure_report, skew_information_wy,
};
use crate::operators::{excitation_number, Observable};
use crate::oracle::closed_vs_oracle_deviation;
use crate::propagator::{evolve_initial, propagator_matrix};
use crate::state::{QubitFockState, QubitLevel};
use crate::{CMatrix, CVector};

/// Reference parameter grid: photon numbers, scaled detunings, ratios.
pub const GRID_PHOTON_NUMBERS: [usize; 5] = [0, 1, 2, 5, 8];
pub const GRID_DELTAS: [f64; 3] = [0.0, 0.3, 0.9];
pub const GRID_GAMMAS: [f64; 6] = [0.25, 1.0 / 6.0, 0.125, 4.0, 6.0, 8.0];

/// Time grid for the oracle-equivalence sweep.
pub const ORACLE_TIME_POINTS: usize = 500;
pub const ORACLE_T_MAX: f64 = 25.0;

/// Thresholds.
pub const ORACLE_DEVIATION_TOL: f64 = 1e-9;
pub const UNITARITY_TOL: f64 = 1e-12;
pub const NORM_TOL: f64 = 1e-12;
pub const EXCITATION_TOL: f64 = 1e-10;
pub const MEASURE_IDENTITY_TOL: f64 = 1e-10;

/// Randomized-draw count for the invariant suite.
pub const PROPERTY_DRAWS: usize = 1000;
/// Fixed seed so validation runs are reproducible.
pub const PROPERTY_SEED: u64 = 0x5eed_cafe;

/// One named check with its worst observed value and threshold.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    fn from_worst(name: &'static str, worst: f64, tol: f64, at: &str) -> Self {
        CheckReport {
            name,
            passed: worst <= tol,
            detail: format!("worst {worst:.3e} (tolerance {tol:.0e}) at {at}"),
        }
    }
}

/// The (n, Δ, γ) tuples of the reference grid, in deterministic order.
pub fn grid_tuples() -> Vec<(usize, f64, f64)> {
    let mut tuples = Vec::new();
    for &n in &GRID_PHOTON_NUMBERS {
        for &delta in &GRID_DELTAS {
            for &gamma in &GRID_GAMMAS {
                tuples.push((n, delta, gamma));
            }
        }
    }
    tuples
}

fn oracle_time_grid() -> Vec<f64> {
    (0..ORACLE_TIME_POINTS)
        .map(|i| ORACLE_T_MAX * i as f64 / (ORACLE_TIME_POINTS - 1) as f64)
        .collect()
}

#[cfg(feature = "parallel")]
fn map_tuples<U: Send, F>(tuples: &[(usize, f64, f64)], f: F) -> Result<Vec<U>>
where
    F: Fn(&(usize, f64, f64)) -> Result<U> + Sync + Send,
{
    use rayon::prelude::*;
    tuples.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_tuples<U, F>(tuples: &[(usize, f64, f64)], f: F) -> Result<Vec<U>>
where
    F: Fn(&(usize, f64, f64)) -> Result<U>,
{
    tuples.iter().map(f).collect()
}

/// Max phase-aligned closed-form/oracle deviation over the whole grid.
///
/// Returns the worst deviation and the tuple where it occurred.
pub fn oracle_equivalence_worst() -> Result<(f64, String)> {
    let tuples = grid_tuples();
    let grid = oracle_time_grid();
    let deviations = map_tuples(&tuples, |&(n, delta, gamma)| {
        let omega = crate::model::effective_rabi(gamma)?;
        let dev = closed_vs_oracle_deviation(n, delta, omega, &grid)?;
        Ok((dev, n, delta, gamma))
    })?;
    let worst = deviations
        .into_iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .expect("grid is non-empty");
    Ok((
        worst.0,
        format!("n={}, delta={}, gamma={}", worst.1, worst.2, worst.3),
    ))
}

/// Check 1: oracle equivalence over the full grid.
pub fn oracle_equivalence_check() -> Result<CheckReport> {
    let (worst, at) = oracle_equivalence_worst()?;
    Ok(CheckReport::from_worst(
        "oracle equivalence",
        worst,
        ORACLE_DEVIATION_TOL,
        &at,
    ))
}

/// A deterministic xorshift-style generator for the invariant draws.
///
/// Kept dependency-free so the library surface does not pull a RNG crate;
/// splitmix64 is more than uniform enough for stress sampling.
pub struct DrawSource {
    state: u64,
}

impl DrawSource {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn usize_in(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        lo + (self.next_u64() as usize) % (hi_inclusive - lo + 1)
    }
}

/// Summary of the randomized invariant suite.
#[derive(Debug, Clone)]
pub struct InvariantSummary {
    pub draws: usize,
    pub worst_unitarity: f64,
    pub worst_norm: f64,
    pub worst_excitation: f64,
    pub skew_in_range: bool,
    pub initial_skew_exact: bool,
}

/// Randomized invariants: unitarity, norm preservation, excitation
/// conservation, skew-information range, and exactness at T=0.
pub fn invariant_suite(draws: usize, seed: u64) -> Result<InvariantSummary> {
    let mut rng = DrawSource::new(seed);
    let mut worst_unitarity = 0.0f64;
    let mut worst_norm = 0.0f64;
    let mut worst_excitation = 0.0f64;
    let mut skew_in_range = true;
    let mut initial_skew_exact = true;

    for _ in 0..draws {
        let delta = rng.in_range(0.0, 2.0);
        let omega = rng.in_range(1e-3, 0.5);
        let t = rng.in_range(0.0, 50.0);
        let cutoff = rng.usize_in(2, 12);

        let u = propagator_matrix(delta, omega, t, cutoff)?;
        let identity = CMatrix::identity(2 * cutoff, 2 * cutoff);
        worst_unitarity = worst_unitarity.max(max_entry_diff(&(u.adjoint() * &u), &identity));

        let n_exc = excitation_number(cutoff);
        let comm = &u * &n_exc - &n_exc * &u;
        let comm_dev = comm.iter().map(|z| z.norm()).fold(0.0, f64::max);
        worst_excitation = worst_excitation.max(comm_dev);

        let n = rng.usize_in(0, cutoff - 2);
        let (amps, state) = crate::propagator::evolve_initial_with_cutoff(
            n, delta, omega, t, cutoff,
        )?;
        worst_norm = worst_norm
            .max((state.norm() - 1.0).abs())
            .max((amps.total_probability() - 1.0).abs());

        let report = measure_report(&state)?;
        if !(1.0..=2.0).contains(&report.skew_information) {
            skew_in_range = false;
        }
        let at_zero = crate::sweep::ParameterPoint::new(delta, rng.in_range(0.05, 8.0), n)
            .skew_information_at(0.0)?;
        if at_zero != 1.0 {
            initial_skew_exact = false;
        }
    }

    Ok(InvariantSummary {
        draws,
        worst_unitarity,
        worst_norm,
        worst_excitation,
        skew_in_range,
        initial_skew_exact,
    })
}

/// Checks 2a–2e: the randomized invariant suite as named reports.
pub fn invariant_checks(draws: usize, seed: u64) -> Result<Vec<CheckReport>> {
    let s = invariant_suite(draws, seed)?;
    let at = format!("{} random draws", s.draws);
    Ok(vec![
        CheckReport::from_worst("unitarity", s.worst_unitarity, UNITARITY_TOL, &at),
        CheckReport::from_worst("norm preservation", s.worst_norm, NORM_TOL, &at),
        CheckReport::from_worst(
            "excitation conservation",
            s.worst_excitation,
            EXCITATION_TOL,
            &at,
        ),
        CheckReport {
            name: "skew information in [1,2]",
            passed: s.skew_in_range,
            detail: at.clone(),
        },
        CheckReport {
            name: "skew information exactly 1 at T=0",
            passed: s.initial_skew_exact,
            detail: at,
        },
    ])
}

/// Summary of the measure-identity suite.
#[derive(Debug, Clone)]
pub struct MeasureIdentitySummary {
    pub states_checked: usize,
    pub worst_purity_identity: f64,
    pub worst_variance_identity: f64,
    pub worst_wy_pure: f64,
    pub worst_wy_commuting: f64,
    pub worst_wootters_agreement: f64,
}

/// Measure identities over evolved states across the reference grid:
/// `C² = 2(1 - Tr ρ_q²)`, `variance_sum = 2 + C²`, WY = variance on pure
/// inputs, WY = 0 on commuting pairs, and Wootters agreement with the
/// generalized concurrence on every n=0 trajectory.
pub fn measure_identity_suite(times_per_tuple: usize) -> Result<MeasureIdentitySummary> {
    let tuples = grid_tuples();
    let mut states_checked = 0usize;
    let mut worst_purity = 0.0f64;
    let mut worst_variance = 0.0f64;
    let mut worst_wootters = 0.0f64;

    let results = map_tuples(&tuples, |&(n, delta, gamma)| {
        let omega = crate::model::effective_rabi(gamma)?;
        let mut local = (0.0f64, 0.0f64, 0.0f64, 0usize);
        for i in 0..times_per_tuple {
            let t = ORACLE_T_MAX * i as f64 / (times_per_tuple - 1) as f64;
            let (_, state) = evolve_initial(n, delta, omega, t)?;
            let c = concurrence_pure(&state)?;
            let purity = state.reduced_qubit()?.purity();
            local.0 = local.0.max((c * c - 2.0 * (1.0 - purity)).abs());
            let vsum = crate::measures::variance_sum_qubit(&state)?;
            local.1 = local.1.max((vsum - (2.0 + c * c)).abs());
            if n == 0 {
                let wootters = wootters_on_two_level_support(&state)?;
                local.2 = local.2.max((wootters - c).abs());
            }
            local.3 += 1;
        }
        Ok(local)
    })?;
    for (purity_dev, variance_dev, wootters_dev, count) in results {
        worst_purity = worst_purity.max(purity_dev);
        worst_variance = worst_variance.max(variance_dev);
        worst_wootters = worst_wootters.max(wootters_dev);
        states_checked += count;
    }

    // WY = variance on pure inputs; WY = 0 on commuting (diagonal) pairs.
    let mut rng = DrawSource::new(PROPERTY_SEED ^ 0xa5a5);
    let mut worst_wy_pure = 0.0f64;
    let mut worst_wy_commuting = 0.0f64;
    for _ in 0..200 {
        let dim = rng.usize_in(2, 4);
        let rho = random_pure_density(dim, &mut rng)?;
        let obs = random_observable(dim, &mut rng)?;
        let wy = skew_information_wy(&rho, &obs)?;
        let (_, variance) = crate::density::expectation_and_variance(&rho, &obs)?;
        worst_wy_pure = worst_wy_pure.max((wy - variance).abs());

        let diag_rho = random_diagonal_density(dim, &mut rng)?;
        let diag_obs = random_diagonal_observable(dim, &mut rng)?;
        worst_wy_commuting = worst_wy_commuting.max(skew_information_wy(&diag_rho, &diag_obs)?);
    }

    Ok(MeasureIdentitySummary {
        states_checked,
        worst_purity_identity: worst_purity,
        worst_variance_identity: worst_variance,
        worst_wy_pure,
        worst_wy_commuting,
        worst_wootters_agreement: worst_wootters,
    })
}

/// Checks 3a–3e: measure identities as named reports.
pub fn measure_identity_checks(times_per_tuple: usize) -> Result<Vec<CheckReport>> {
    let s = measure_identity_suite(times_per_tuple)?;
    let at = format!("{} evolved states", s.states_checked);
    Ok(vec![
        CheckReport::from_worst(
            "concurrence-purity identity",
            s.worst_purity_identity,
            MEASURE_IDENTITY_TOL,
            &at,
        ),
        CheckReport::from_worst(
            "variance-sum identity",
            s.worst_variance_identity,
            MEASURE_IDENTITY_TOL,
            &at,
        ),
        CheckReport::from_worst(
            "WY equals variance on pure states",
            s.worst_wy_pure,
            MEASURE_IDENTITY_TOL,
            "200 random pure states",
        ),
        CheckReport::from_worst(
            "WY vanishes on commuting pairs",
            s.worst_wy_commuting,
            MEASURE_IDENTITY_TOL,
            "200 random diagonal pairs",
        ),
        CheckReport::from_worst(
            "Wootters agrees with generalized concurrence",
            s.worst_wootters_agreement,
            MEASURE_IDENTITY_TOL,
            "all n=0 trajectories",
        ),
    ])
}

/// Wootters concurrence of an n=0 trajectory state via the explicit 4×4
/// joint density matrix on the two-level field support {|0⟩, |1⟩}.
pub fn wootters_on_two_level_support(state: &QubitFockState) -> Result<f64> {
    let cutoff = state.cutoff();
    // The n=0 dynamics populates field levels 0 and 1 only.
    let mut psi = CMatrix::zeros(4, 1);
    psi[(0, 0)] = state.amplitude(QubitLevel::Excited, 0);
    psi[(1, 0)] = state.amplitude(QubitLevel::Excited, 1);
    psi[(2, 0)] = state.amplitude(QubitLevel::Ground, 0);
    psi[(3, 0)] = state.amplitude(QubitLevel::Ground, 1);
    for k in 2..cutoff {
        debug_assert!(state.amplitude(QubitLevel::Excited, k).norm() < 1e-14);
        debug_assert!(state.amplitude(QubitLevel::Ground, k).norm() < 1e-14);
    }
    let rho = DensityMatrix::new(&psi * psi.adjoint())?;
    concurrence_wootters(&rho)
}

fn random_pure_density(dim: usize, rng: &mut DrawSource) -> Result<DensityMatrix> {
    let mut psi = CVector::zeros(dim);
    for a in psi.iter_mut() {
        *a = Complex64::new(rng.in_range(-1.0, 1.0), rng.in_range(-1.0, 1.0));
    }
    let norm = psi.norm();
    psi *= Complex64::new(1.0 / norm, 0.0);
    let mat = &psi * psi.adjoint();
    DensityMatrix::new(mat)
}

fn random_diagonal_density(dim: usize, rng: &mut DrawSource) -> Result<DensityMatrix> {
    let mut weights: Vec<f64> = (0..dim).map(|_| rng.in_range(0.01, 1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let mut m = CMatrix::zeros(dim, dim);
    for (i, w) in weights.iter().enumerate() {
        m[(i, i)] = Complex64::new(*w, 0.0);
    }
    DensityMatrix::new(m)
}

fn random_observable(dim: usize, rng: &mut DrawSource) -> Result<Observable> {
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = Complex64::new(rng.in_range(-2.0, 2.0), 0.0);
        for j in i + 1..dim {
            let z = Complex64::new(rng.in_range(-1.0, 1.0), rng.in_range(-1.0, 1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    Observable::new(m)
}

fn random_diagonal_observable(dim: usize, rng: &mut DrawSource) -> Result<Observable> {
    let mut m = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = Complex64::new(rng.in_range(-2.0, 2.0), 0.0);
    }
    Observable::new(m)
}

/// Run every validation check: oracle equivalence, randomized invariants,
/// and measure identities.
pub fn run_all() -> Result<Vec<CheckReport>> {
    let mut checks = vec![oracle_equivalence_check()?];
    checks.extend(invariant_checks(PROPERTY_DRAWS, PROPERTY_SEED)?);
    checks.extend(measure_identity_checks(50)?);
    Ok(checks)
}
