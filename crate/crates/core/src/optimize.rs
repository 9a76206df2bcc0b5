//! Variational minimization of the atomic energy over the orbital exponents.
//!
//! The simplex works on `ln α, ln β, ln γ`, so every trial point has positive
//! exponents. Each start is polished by a second, smaller simplex from its
//! end point, and a few seeded multiplicative perturbations of the initial
//! guess serve as independent restarts.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::atom::energy_with;
use crate::basis::Exponents;
use crate::error::{Error, Result};
use crate::integrals::PShellModel;
use crate::nelder_mead::{self, Settings};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerOptions {
    /// Hartree.
    pub energy_tolerance: f64,
    /// Relative, applied to the log-exponents.
    pub parameter_tolerance: f64,
    pub max_evaluations: usize,
    pub restarts: usize,
    /// Seed for the restart perturbations.
    pub seed: u64,
    #[serde(default)]
    pub p_shell: PShellModel,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            energy_tolerance: 1e-10,
            parameter_tolerance: 1e-8,
            max_evaluations: 10_000,
            restarts: 3,
            seed: 42,
            p_shell: PShellModel::Exact,
        }
    }
}

impl OptimizerOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.energy_tolerance > 0.0) || !(self.parameter_tolerance > 0.0) {
            return Err(Error::InvalidOption("tolerances must be strictly positive".into()));
        }
        if self.max_evaluations == 0 {
            return Err(Error::InvalidOption("max evaluations must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomResult {
    pub z: u32,
    pub exponents: Exponents,
    pub energy: f64,
    pub converged: bool,
    /// Energy evaluations over all starts.
    pub evaluations: usize,
    pub wall_time_s: f64,
    pub initial_energy: f64,
    /// Largest `|∂E/∂exponent|` by central differences at the optimum.
    pub max_gradient: f64,
    /// Largest relative exponent difference between any converged start and the best.
    pub restart_spread: f64,
    pub restarts_agree: bool,
}

/// Relative spread above which restarts are reported as disagreeing.
pub const RESTART_AGREEMENT: f64 = 1e-4;
/// Relative step of the stationarity check.
pub const GRADIENT_STEP: f64 = 1e-5;

const SIMPLEX_STEP: f64 = 0.05;
const POLISH_STEP: f64 = 0.005;

/// Screening-rule starting exponents.
pub fn initial_guess(z: u32) -> Result<Exponents> {
    if !(2..=10).contains(&z) {
        return Err(Error::AtomicNumber(z));
    }
    let zf = f64::from(z);
    let alpha = zf - 0.3;
    let beta = ((zf - 2.0 - 0.85) / 2.0).max(0.5);
    match z {
        2 => Exponents::helium_like(alpha),
        3 | 4 => Exponents::with_2s(alpha, beta),
        _ => Exponents::with_2p(alpha, beta, beta),
    }
}

/// Central-difference gradient of the energy with respect to each exponent.
pub fn energy_gradient(
    z: u32,
    exps: &Exponents,
    rel_step: f64,
    model: PShellModel,
) -> Result<Vec<f64>> {
    let x = exps.to_vec();
    (0..x.len())
        .map(|i| {
            let h = rel_step * x[i];
            let mut plus = x.clone();
            let mut minus = x.clone();
            plus[i] += h;
            minus[i] -= h;
            let ep = energy_with(z, &Exponents::from_slice(&plus)?, model)?;
            let em = energy_with(z, &Exponents::from_slice(&minus)?, model)?;
            Ok((ep - em) / (2.0 * h))
        })
        .collect()
}

struct Start {
    x: Vec<f64>,
    energy: f64,
    converged: bool,
}

fn run_start(z: u32, log_guess: &[f64], opts: &OptimizerOptions, evals: &mut usize) -> Start {
    let objective = |x: &[f64]| {
        let values: Vec<f64> = x.iter().map(|v| v.exp()).collect();
        match Exponents::from_slice(&values).and_then(|e| energy_with(z, &e, opts.p_shell)) {
            Ok(e) => e,
            Err(_) => f64::INFINITY,
        }
    };
    let mut settings = Settings {
        f_tol: opts.energy_tolerance,
        x_tol: opts.parameter_tolerance,
        max_evals: opts.max_evaluations.saturating_sub(*evals),
        step: SIMPLEX_STEP,
    };
    let first = nelder_mead::minimize(objective, log_guess, settings);
    *evals += first.evals;
    settings.step = POLISH_STEP;
    settings.max_evals = opts.max_evaluations.saturating_sub(*evals);
    let polish = nelder_mead::minimize(objective, &first.x, settings);
    *evals += polish.evals;
    let best = if polish.f <= first.f { polish.clone() } else { first };
    Start { x: best.x, energy: best.f, converged: polish.converged }
}

/// Minimizes `E(α, β, γ)` for atom `z` starting from `guess`.
///
/// Non-convergence is not an error: the best point found is returned with
/// `converged == false`.
pub fn minimize(z: u32, guess: &Exponents, opts: &OptimizerOptions) -> Result<AtomResult> {
    opts.validate()?;
    guess.check_for(z)?;
    let started = Instant::now();
    let initial_energy = energy_with(z, guess, opts.p_shell)?;
    let log_guess: Vec<f64> = guess.to_vec().iter().map(|v| v.ln()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ u64::from(z));
    let mut evals = 0;
    let mut starts = vec![run_start(z, &log_guess, opts, &mut evals)];
    for _ in 0..opts.restarts {
        let perturbed: Vec<f64> =
            log_guess.iter().map(|v| v + rng.gen_range(0.7f64..=1.4).ln()).collect();
        starts.push(run_start(z, &perturbed, opts, &mut evals));
    }

    let best = starts
        .iter()
        .min_by(|a, b| a.energy.total_cmp(&b.energy))
        .expect("at least one start");
    let exponents = Exponents::from_slice(&best.x.iter().map(|v| v.exp()).collect::<Vec<_>>())?;
    let restart_spread = starts
        .iter()
        .filter(|s| s.converged)
        .flat_map(|s| s.x.iter().zip(&best.x).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max);
    let gradient = energy_gradient(z, &exponents, GRADIENT_STEP, opts.p_shell)?;

    Ok(AtomResult {
        z,
        exponents,
        energy: best.energy,
        converged: best.converged,
        evaluations: evals,
        wall_time_s: started.elapsed().as_secs_f64(),
        initial_energy,
        max_gradient: gradient.iter().fold(0.0, |m, g| m.max(g.abs())),
        restart_spread,
        restarts_agree: restart_spread <= RESTART_AGREEMENT,
    })
}

/// Energy at each grid point, in order.
pub fn scan(z: u32, grid: &[Exponents]) -> Result<Vec<(Exponents, f64)>> {
    scan_with(z, grid, PShellModel::Exact)
}

pub fn scan_with(z: u32, grid: &[Exponents], model: PShellModel) -> Result<Vec<(Exponents, f64)>> {
    grid.iter().map(|e| Ok((*e, energy_with(z, e, model)?))).collect()
}
