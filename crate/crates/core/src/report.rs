//! Drivers behind the command-line tool: optimize a set of atoms, compare them
//! with the reference table, and differential-test the closed-form integrals.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atom::energy_split_with;
use crate::basis::{Exponents, Shell};
use crate::error::{Error, Result};
use crate::integrals::{core, coulomb, exchange, CoulombPair, ExchangePair, PShellModel};
use crate::optimize::{initial_guess, minimize, OptimizerOptions};
use crate::oracle::{oracle_core, oracle_coulomb, oracle_exchange};
use crate::reference::{reference_row, ReferenceRow};

pub const ALL_Z: [u32; 9] = [2, 3, 4, 5, 6, 7, 8, 9, 10];

/// The published accuracy claim relative to best Hartree-Fock, in percent.
pub const CLAIMED_GAP_PCT: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunOptions {
    pub optimizer: OptimizerOptions,
    /// Include per-atom wall time. Off by default so output is reproducible.
    pub record_timing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub version: String,
    pub seed: u64,
    pub energy_tolerance: f64,
    pub parameter_tolerance: f64,
    pub max_evaluations: usize,
    pub restarts: usize,
    pub p_shell: PShellModel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub z: u32,
    pub symbol: String,
    pub configuration: String,
    pub alpha: f64,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub energy: f64,
    pub kinetic: f64,
    pub potential: f64,
    /// `(2T + V) / |E|`.
    pub virial_ratio: f64,
    pub converged: bool,
    pub evaluations: usize,
    pub max_gradient: f64,
    pub restart_spread: f64,
    pub restarts_agree: bool,
    pub wall_time_s: Option<f64>,
    pub reference: ReferenceRow,
    /// `E − E_paper`.
    pub delta_paper: f64,
    /// `E − E_bestHF`.
    pub delta_best_hf: f64,
    /// `E − E_exact`.
    pub delta_exact: f64,
    /// `|E − E_bestHF| / |E_bestHF|` in percent.
    pub gap_best_hf_pct: f64,
    /// Same gap for the published energy.
    pub paper_gap_best_hf_pct: f64,
    pub paper_within_claim: bool,
    /// Published row violates `E_exact ≤ E_bestHF < E_calc`.
    pub best_hf_anomaly: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub metadata: Metadata,
    pub rows: Vec<ReportRow>,
}

fn optimize_one(z: u32, opts: &RunOptions) -> Result<ReportRow> {
    let reference = reference_row(z)?.clone();
    let result = minimize(z, &initial_guess(z)?, &opts.optimizer)?;
    let split = energy_split_with(z, &result.exponents, opts.optimizer.p_shell)?;
    let e = result.energy;
    let paper_gap = reference.gap_to_best_hf() * 100.0;
    Ok(ReportRow {
        z,
        symbol: reference.symbol.clone(),
        configuration: reference.configuration.clone(),
        alpha: result.exponents.alpha,
        beta: result.exponents.beta,
        gamma: result.exponents.gamma,
        energy: e,
        kinetic: split.kinetic,
        potential: split.potential,
        virial_ratio: split.virial_ratio(),
        converged: result.converged,
        evaluations: result.evaluations,
        max_gradient: result.max_gradient,
        restart_spread: result.restart_spread,
        restarts_agree: result.restarts_agree,
        wall_time_s: opts.record_timing.then_some(result.wall_time_s),
        delta_paper: e - reference.e_calc,
        delta_best_hf: e - reference.e_best_hf,
        delta_exact: e - reference.e_exact,
        gap_best_hf_pct: ((e - reference.e_best_hf) / reference.e_best_hf).abs() * 100.0,
        paper_gap_best_hf_pct: paper_gap,
        paper_within_claim: paper_gap <= CLAIMED_GAP_PCT,
        best_hf_anomaly: reference.best_hf_anomaly(),
        reference,
    })
}

/// Optimizes each requested atom; rows come back sorted by Z.
pub fn run(zs: &[u32], opts: &RunOptions) -> Result<RunReport> {
    opts.optimizer.validate()?;
    if zs.is_empty() {
        return Err(Error::InvalidOption("no atoms selected".into()));
    }
    if let Some(&bad) = zs.iter().find(|z| !(2..=10).contains(*z)) {
        return Err(Error::AtomicNumber(bad));
    }
    let mut zs = zs.to_vec();
    zs.sort_unstable();
    zs.dedup();
    let rows = zs.par_iter().map(|&z| optimize_one(z, opts)).collect::<Result<Vec<_>>>()?;
    let o = &opts.optimizer;
    Ok(RunReport {
        metadata: Metadata {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: o.seed,
            energy_tolerance: o.energy_tolerance,
            parameter_tolerance: o.parameter_tolerance,
            max_evaluations: o.max_evaluations,
            restarts: o.restarts,
            p_shell: o.p_shell,
        },
        rows,
    })
}

/// Six significant figures, as in the published table.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn opt_sig6(x: Option<f64>) -> String {
    x.map(sig6).unwrap_or_default()
}

pub const CSV_HEADER: &str = "Z,symbol,configuration,alpha,beta,gamma,E_calc,E_paper,E_bestHF,E_exact";
pub const PLOT_HEADER: &str = "Z,E_calc,E_bestHF,E_exact";

impl RunReport {
    pub fn all_converged(&self) -> bool {
        self.rows.iter().all(|r| r.converged)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Report(e.to_string()))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let p = &r.reference;
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.z,
                r.symbol,
                r.configuration,
                sig6(r.alpha),
                opt_sig6(r.beta),
                opt_sig6(r.gamma),
                sig6(r.energy),
                p.e_calc,
                p.e_best_hf,
                p.e_exact
            );
        }
        out
    }

    /// `Z, E_calc, E_bestHF, E_exact`, formatted exactly as in [`Self::to_csv`].
    pub fn plot_data(&self) -> String {
        let mut out = String::from(PLOT_HEADER);
        out.push('\n');
        for r in &self.rows {
            let p = &r.reference;
            let _ = writeln!(out, "{},{},{},{}", r.z, sig6(r.energy), p.e_best_hf, p.e_exact);
        }
        out
    }

    /// Optimized exponents and energies with convergence diagnostics.
    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>3} {:<3} {:<22} {:>9} {:>9} {:>9} {:>12} {:>10} {:>9} {}",
            "Z", "sym", "configuration", "alpha", "beta", "gamma", "E", "(2T+V)/|E|", "max|dE|", "status"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>3} {:<3} {:<22} {:>9} {:>9} {:>9} {:>12} {:>10.1e} {:>9.1e} {}",
                r.z,
                r.symbol,
                r.configuration,
                sig6(r.alpha),
                opt_sig6(r.beta),
                opt_sig6(r.gamma),
                sig6(r.energy),
                r.virial_ratio,
                r.max_gradient,
                status(r)
            );
        }
        let _ = writeln!(out, "p-shell model: {}, seed: {}", self.metadata.p_shell.name(), self.metadata.seed);
        if self.rows.iter().any(|r| r.wall_time_s.is_some()) {
            let total: f64 = self.rows.iter().filter_map(|r| r.wall_time_s).sum();
            let _ = writeln!(out, "optimizer wall time: {total:.3} s");
        }
        out
    }

    /// Computed energies against the published columns.
    pub fn comparison_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>3} {:<3} {:>12} {:>12} {:>12} {:>12} {:>10} {:>8} {:>8} {}",
            "Z", "sym", "E", "E_paper", "E_bestHF", "E_exact", "E-E_paper", "gap%", "paper%", "note"
        );
        for r in &self.rows {
            let p = &r.reference;
            let note = if r.best_hf_anomaly {
                "best-HF entry not below E_paper"
            } else if r.paper_within_claim {
                "within 1%"
            } else {
                "outside 1%"
            };
            let _ = writeln!(
                out,
                "{:>3} {:<3} {:>12} {:>12} {:>12} {:>12} {:>10.2e} {:>8.3} {:>8.3} {}",
                r.z,
                r.symbol,
                sig6(r.energy),
                p.e_calc,
                p.e_best_hf,
                p.e_exact,
                r.delta_paper,
                r.gap_best_hf_pct,
                r.paper_gap_best_hf_pct,
                note
            );
        }
        let within = self.rows.iter().filter(|r| r.paper_within_claim).count();
        let _ = writeln!(
            out,
            "published energies within {CLAIMED_GAP_PCT}% of best H-F: {within}/{}",
            self.rows.len()
        );
        let _ = writeln!(out, "p-shell model: {}", self.metadata.p_shell.name());
        out
    }
}

fn status(r: &ReportRow) -> &'static str {
    match (r.converged, r.restarts_agree) {
        (true, true) => "ok",
        (true, false) => "restarts disagree",
        (false, _) => "NOT CONVERGED",
    }
}

/// Serializes a report for the `compare` command.
pub fn compare(report: &RunReport, format: Format) -> String {
    match format {
        Format::Text => report.comparison_text(),
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    }
}

/// Relative agreement required between closed forms and the oracle.
pub const VERIFY_TOLERANCE: f64 = 1e-7;
/// Exponent sampling range for `verify`.
pub const VERIFY_RANGE: (f64, f64) = (0.2, 12.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyEntry {
    pub integral: String,
    pub max_rel_deviation: f64,
    /// `[alpha, beta, gamma, Z]` of the worst sample.
    pub worst_case: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub entries: Vec<VerifyEntry>,
    /// Oracle failures, one line per case.
    pub errors: Vec<String>,
}

impl VerifyReport {
    pub fn max_deviation(&self) -> f64 {
        self.entries.iter().map(|e| e.max_rel_deviation).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.max_deviation() <= self.tolerance
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "closed form vs quadrature: {} samples, seed {}, exponents in [{}, {}]",
            self.samples, self.seed, VERIFY_RANGE.0, VERIFY_RANGE.1
        )?;
        for e in &self.entries {
            let [a, b, g, z] = e.worst_case;
            writeln!(
                f,
                "  {:<14} max rel dev {:.3e}  (alpha={a:.6}, beta={b:.6}, gamma={g:.6}, Z={z})",
                e.integral, e.max_rel_deviation
            )?;
        }
        for err in &self.errors {
            writeln!(f, "  error: {err}")?;
        }
        writeln!(
            f,
            "{}: max deviation {:.3e} (tolerance {:.0e})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.max_deviation(),
            self.tolerance
        )
    }
}

fn rel_dev(closed: f64, oracle: f64) -> f64 {
    (closed - oracle).abs() / oracle.abs()
}

/// Deviations for one sample, in the order of [`verify_labels`].
fn verify_sample(exps: &Exponents, z: u32) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(17);
    for shell in [Shell::S1, Shell::S2, Shell::P2] {
        let c = core(shell, exps, z)?;
        let o = oracle_core(shell, exps, z)?;
        out.push(rel_dev(c.kinetic, o.kinetic));
        out.push(rel_dev(c.potential, o.potential));
    }
    for p in CoulombPair::ALL {
        out.push(rel_dev(coulomb(p, exps)?, oracle_coulomb(p, exps)?));
    }
    for p in ExchangePair::ALL {
        out.push(rel_dev(exchange(p, exps)?, oracle_exchange(p, exps)?));
    }
    Ok(out)
}

fn verify_labels() -> Vec<String> {
    let mut labels = Vec::new();
    for shell in [Shell::S1, Shell::S2, Shell::P2] {
        labels.push(format!("T_{}", shell.label()));
        labels.push(format!("V_{}", shell.label()));
    }
    labels.extend(CoulombPair::ALL.iter().map(|p| p.name().to_string()));
    labels.extend(ExchangePair::ALL.iter().map(|p| p.name().to_string()));
    labels
}

/// Seeded exponent tuples and nuclear charges used by [`verify`].
pub fn verify_samples(samples: usize, seed: u64) -> Vec<(Exponents, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = VERIFY_RANGE;
    (0..samples)
        .map(|_| {
            let a = rng.gen_range(lo..=hi);
            let b = rng.gen_range(lo..=hi);
            let g = rng.gen_range(lo..=hi);
            let z = rng.gen_range(1..=10u32);
            (Exponents::with_2p(a, b, g).expect("sampled inside the domain"), z)
        })
        .collect()
}

/// Compares every closed-form integral with the quadrature oracle.
pub fn verify(samples: usize, seed: u64) -> Result<VerifyReport> {
    if samples == 0 {
        return Err(Error::InvalidOption("verify needs at least one sample".into()));
    }
    let cases = verify_samples(samples, seed);
    let results: Vec<Result<Vec<f64>>> = cases.par_iter().map(|(e, z)| verify_sample(e, *z)).collect();
    let labels = verify_labels();
    let mut entries: Vec<VerifyEntry> = labels
        .into_iter()
        .map(|integral| VerifyEntry { integral, max_rel_deviation: 0.0, worst_case: [0.0; 4] })
        .collect();
    let mut errors = Vec::new();
    for ((exps, z), result) in cases.iter().zip(results) {
        let case = [exps.alpha, exps.beta.unwrap_or(0.0), exps.gamma.unwrap_or(0.0), f64::from(*z)];
        match result {
            Ok(devs) => {
                for (entry, dev) in entries.iter_mut().zip(devs) {
                    // NaN must register as a failure.
                    if !(dev <= entry.max_rel_deviation) {
                        entry.max_rel_deviation = if dev.is_nan() { f64::INFINITY } else { dev };
                        entry.worst_case = case;
                    }
                }
            }
            Err(e) => errors.push(format!("{case:?}: {e}")),
        }
    }
    Ok(VerifyReport { samples, seed, tolerance: VERIFY_TOLERANCE, entries, errors })
}
