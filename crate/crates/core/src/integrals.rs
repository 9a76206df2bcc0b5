//! Closed-form core, Coulomb and exchange integrals over the Slater basis.
//!
//! Every radial function here is a finite sum of `c · rⁿ · e^{-ζr}` terms, so
//! all one- and two-electron radial integrals reduce to finite sums of
//! factorials over powers of the exponents. Two-electron integrals are split
//! into the ordered regions `r₂ < r₁` and `r₁ < r₂`; in each region the inner
//! integral runs to infinity, which keeps every summand positive.
//!
//! Angular factors for real orbitals:
//!
//! | pair                 | Coulomb            | exchange     |
//! |----------------------|--------------------|--------------|
//! | s–s                  | F⁰                 | G⁰           |
//! | s–p                  | F⁰                 | G¹ / 3       |
//! | p–p (same orbital)   | F⁰ + 4/25 F²       | none         |
//! | p–p′ (distinct)      | F⁰ − 2/25 F²       | 3/25 F²      |

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::basis::{radial_part, Exponents, RadialFunction, Shell};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CoulombPair {
    J1s1s,
    J2s2s,
    J1s2s,
    J1s2p,
    J2s2p,
    /// Both electrons in the same real p orbital.
    J2p2pSame,
    /// Electrons in two distinct real p orbitals.
    J2p2pDiff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExchangePair {
    K1s2s,
    K1s2p,
    K2s2p,
    K2p2pDiff,
}

impl CoulombPair {
    pub const ALL: [CoulombPair; 7] = [
        CoulombPair::J1s1s,
        CoulombPair::J2s2s,
        CoulombPair::J1s2s,
        CoulombPair::J1s2p,
        CoulombPair::J2s2p,
        CoulombPair::J2p2pSame,
        CoulombPair::J2p2pDiff,
    ];

    pub fn shells(self) -> (Shell, Shell) {
        match self {
            CoulombPair::J1s1s => (Shell::S1, Shell::S1),
            CoulombPair::J2s2s => (Shell::S2, Shell::S2),
            CoulombPair::J1s2s => (Shell::S1, Shell::S2),
            CoulombPair::J1s2p => (Shell::S1, Shell::P2),
            CoulombPair::J2s2p => (Shell::S2, Shell::P2),
            CoulombPair::J2p2pSame | CoulombPair::J2p2pDiff => (Shell::P2, Shell::P2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CoulombPair::J1s1s => "J_1s1s",
            CoulombPair::J2s2s => "J_2s2s",
            CoulombPair::J1s2s => "J_1s2s",
            CoulombPair::J1s2p => "J_1s2p",
            CoulombPair::J2s2p => "J_2s2p",
            CoulombPair::J2p2pSame => "J_2p2p_same",
            CoulombPair::J2p2pDiff => "J_2p2p_diff",
        }
    }

    /// `(k, coefficient)` pairs multiplying `Fᵏ`.
    fn multipoles(self) -> &'static [(u32, f64)] {
        match self {
            CoulombPair::J2p2pSame => &[(0, 1.0), (2, 4.0 / 25.0)],
            CoulombPair::J2p2pDiff => &[(0, 1.0), (2, -2.0 / 25.0)],
            _ => &[(0, 1.0)],
        }
    }
}

impl ExchangePair {
    pub const ALL: [ExchangePair; 4] = [
        ExchangePair::K1s2s,
        ExchangePair::K1s2p,
        ExchangePair::K2s2p,
        ExchangePair::K2p2pDiff,
    ];

    pub fn shells(self) -> (Shell, Shell) {
        match self {
            ExchangePair::K1s2s => (Shell::S1, Shell::S2),
            ExchangePair::K1s2p => (Shell::S1, Shell::P2),
            ExchangePair::K2s2p => (Shell::S2, Shell::P2),
            ExchangePair::K2p2pDiff => (Shell::P2, Shell::P2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ExchangePair::K1s2s => "K_1s2s",
            ExchangePair::K1s2p => "K_1s2p",
            ExchangePair::K2s2p => "K_2s2p",
            ExchangePair::K2p2pDiff => "K_2p2p_diff",
        }
    }

    /// `(k, coefficient)` pairs multiplying `Gᵏ`.
    fn multipoles(self) -> &'static [(u32, f64)] {
        match self {
            ExchangePair::K1s2s => &[(0, 1.0)],
            ExchangePair::K1s2p | ExchangePair::K2s2p => &[(1, 1.0 / 3.0)],
            ExchangePair::K2p2pDiff => &[(2, 3.0 / 25.0)],
        }
    }
}

/// How the p–p repulsion integrals are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PShellModel {
    /// Full multipole expansion (`l = 0` and `l = 2`).
    #[default]
    Exact,
    /// Only the `l = 0` multipole for p–p pairs: `J_same = J_diff = F⁰`,
    /// `K_2p2p′ = 0`. This is the functional behind the published exponent
    /// table for C through Ne.
    Monopole,
}

impl PShellModel {
    pub fn name(self) -> &'static str {
        match self {
            PShellModel::Exact => "exact",
            PShellModel::Monopole => "monopole",
        }
    }
}

impl std::str::FromStr for PShellModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(PShellModel::Exact),
            "monopole" => Ok(PShellModel::Monopole),
            other => Err(Error::InvalidOption(format!("unknown p-shell model `{other}`"))),
        }
    }
}

/// One term of the energy functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Term {
    Core(Shell),
    Coulomb(CoulombPair),
    Exchange(ExchangePair),
}

impl Term {
    pub fn name(self) -> String {
        match self {
            Term::Core(s) => format!("H_{}", s.label()),
            Term::Coulomb(p) => p.name().to_string(),
            Term::Exchange(p) => p.name().to_string(),
        }
    }
}

/// Single `c · rⁿ · e^{-ζr}` term.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Monomial {
    coef: f64,
    power: i32,
    decay: f64,
}

/// Finite sum of exponential monomials.
#[derive(Debug, Clone, PartialEq, Default)]
struct ExpPoly(Vec<Monomial>);

fn factorial(n: i32) -> f64 {
    debug_assert!(n >= 0);
    (1..=n).fold(1.0, |acc, k| acc * f64::from(k))
}

impl ExpPoly {
    fn from_radial(f: &RadialFunction) -> Self {
        let m = |coef, power, decay| Monomial { coef, power, decay };
        match *f {
            RadialFunction::OneS { norm, alpha } => ExpPoly(vec![m(norm, 0, alpha)]),
            RadialFunction::TwoS { norm, node, beta } => {
                ExpPoly(vec![m(norm, 0, beta), m(-norm * node, 1, beta)])
            }
            RadialFunction::TwoP { norm, gamma } => ExpPoly(vec![m(norm, 1, gamma)]),
        }
    }

    fn mul(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = Vec::with_capacity(self.0.len() * other.0.len());
        for a in &self.0 {
            for b in &other.0 {
                out.push(Monomial {
                    coef: a.coef * b.coef,
                    power: a.power + b.power,
                    decay: a.decay + b.decay,
                });
            }
        }
        ExpPoly(out)
    }

    /// Multiplies by `rᵏ`.
    fn times_power(&self, k: i32) -> ExpPoly {
        ExpPoly(self.0.iter().map(|t| Monomial { power: t.power + k, ..*t }).collect())
    }

    fn derivative(&self) -> ExpPoly {
        let mut out = Vec::with_capacity(2 * self.0.len());
        for t in &self.0 {
            if t.power > 0 {
                out.push(Monomial { coef: t.coef * f64::from(t.power), power: t.power - 1, ..*t });
            }
            out.push(Monomial { coef: -t.coef * t.decay, ..*t });
        }
        ExpPoly(out)
    }

    /// `∫₀^∞` of the sum.
    fn integral(&self) -> f64 {
        self.0
            .iter()
            .map(|t| {
                debug_assert!(t.power >= 0, "non-integrable power {}", t.power);
                t.coef * factorial(t.power) / t.decay.powi(t.power + 1)
            })
            .sum()
    }
}

/// `∫₀^∞ r^m e^{-ηr} ∫_r^∞ tⁿ e^{-ζt} dt dr` for `m, n ≥ 0`.
fn tail_moment(m: i32, eta: f64, n: i32, zeta: f64) -> f64 {
    debug_assert!(m >= 0 && n >= 0);
    let total = eta + zeta;
    let n_fact = factorial(n);
    (0..=n)
        .map(|j| {
            n_fact / (factorial(j) * zeta.powi(n - j + 1)) * factorial(m + j) / total.powi(m + j + 1)
        })
        .sum()
}

/// `∬ ρ₁(r₁) ρ₂(r₂) r_<ᵏ / r_>ᵏ⁺¹ dr₁ dr₂` for densities that already carry `r²`.
fn two_region(k: i32, rho1: &ExpPoly, rho2: &ExpPoly) -> f64 {
    let region = |outer: &ExpPoly, inner: &ExpPoly| -> f64 {
        // Outer coordinate is the lesser radius.
        let outer = outer.times_power(k);
        let inner = inner.times_power(-(k + 1));
        let mut sum = 0.0;
        for g in &outer.0 {
            for f in &inner.0 {
                sum += g.coef * f.coef * tail_moment(g.power, g.decay, f.power, f.decay);
            }
        }
        sum
    };
    region(rho2, rho1) + region(rho1, rho2)
}

fn radial_poly(shell: Shell, exps: &Exponents) -> Result<ExpPoly> {
    Ok(ExpPoly::from_radial(&radial_part(shell, exps)?))
}

/// Slater–Condon `Fᵏ(a, b)`.
fn slater_f(k: u32, a: Shell, b: Shell, exps: &Exponents) -> Result<f64> {
    let ra = radial_poly(a, exps)?;
    let rb = radial_poly(b, exps)?;
    let rho_a = ra.mul(&ra).times_power(2);
    let rho_b = rb.mul(&rb).times_power(2);
    Ok(two_region(k as i32, &rho_a, &rho_b))
}

/// Slater–Condon `Gᵏ(a, b)`.
fn slater_g(k: u32, a: Shell, b: Shell, exps: &Exponents) -> Result<f64> {
    let ra = radial_poly(a, exps)?;
    let rb = radial_poly(b, exps)?;
    let rho = ra.mul(&rb).times_power(2);
    Ok(two_region(k as i32, &rho, &rho))
}

/// Kinetic and nuclear-attraction parts of a core integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoreIntegral {
    pub kinetic: f64,
    pub potential: f64,
}

impl CoreIntegral {
    pub fn total(&self) -> f64 {
        self.kinetic + self.potential
    }
}

pub fn core(shell: Shell, exps: &Exponents, z: u32) -> Result<CoreIntegral> {
    if z == 0 {
        return Err(Error::NuclearCharge(z));
    }
    core_unchecked(shell, exps, f64::from(z))
}

/// Core integral with an arbitrary nonnegative nuclear charge.
pub(crate) fn core_unchecked(shell: Shell, exps: &Exponents, z: f64) -> Result<CoreIntegral> {
    let r = radial_poly(shell, exps)?;
    let dr = r.derivative();
    let l = f64::from(shell.angular_momentum());
    // T = ½∫ R'² r² dr + ½ l(l+1) ∫ R² dr
    let mut kinetic = 0.5 * dr.mul(&dr).times_power(2).integral();
    if l > 0.0 {
        kinetic += 0.5 * l * (l + 1.0) * r.mul(&r).integral();
    }
    let potential = -z * r.mul(&r).times_power(1).integral();
    Ok(CoreIntegral { kinetic, potential })
}

pub fn coulomb(pair: CoulombPair, exps: &Exponents) -> Result<f64> {
    let (a, b) = pair.shells();
    pair.multipoles()
        .iter()
        .map(|&(k, c)| Ok(c * slater_f(k, a, b, exps)?))
        .sum()
}

/// Spatial exchange integral; spin selection is left to the caller.
pub fn exchange(pair: ExchangePair, exps: &Exponents) -> Result<f64> {
    let (a, b) = pair.shells();
    pair.multipoles()
        .iter()
        .map(|&(k, c)| Ok(c * slater_g(k, a, b, exps)?))
        .sum()
}

pub fn coulomb_with(pair: CoulombPair, exps: &Exponents, model: PShellModel) -> Result<f64> {
    match (model, pair) {
        (PShellModel::Monopole, CoulombPair::J2p2pSame | CoulombPair::J2p2pDiff) => {
            slater_f(0, Shell::P2, Shell::P2, exps)
        }
        _ => coulomb(pair, exps),
    }
}

pub fn exchange_with(pair: ExchangePair, exps: &Exponents, model: PShellModel) -> Result<f64> {
    match (model, pair) {
        (PShellModel::Monopole, ExchangePair::K2p2pDiff) => {
            exps.gamma()?;
            Ok(0.0)
        }
        _ => exchange(pair, exps),
    }
}

/// Coulomb integral with the two orbital roles given explicitly.
pub fn coulomb_between(first: Shell, second: Shell, exps: &Exponents) -> Result<f64> {
    if first == Shell::P2 && second == Shell::P2 {
        return coulomb(CoulombPair::J2p2pSame, exps);
    }
    slater_f(0, first, second, exps)
}

/// Evaluated integrals for every term an atom's energy needs.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct IntegralSet {
    pub core: BTreeMap<Shell, CoreIntegral>,
    pub coulomb: BTreeMap<CoulombPair, f64>,
    pub exchange: BTreeMap<ExchangePair, f64>,
}

impl IntegralSet {
    /// Evaluates exactly the given terms.
    pub fn for_terms(
        terms: impl IntoIterator<Item = Term>,
        exps: &Exponents,
        z: u32,
        model: PShellModel,
    ) -> Result<Self> {
        let mut set = IntegralSet::default();
        for term in terms {
            match term {
                Term::Core(s) => {
                    set.core.insert(s, core(s, exps, z)?);
                }
                Term::Coulomb(p) => {
                    set.coulomb.insert(p, coulomb_with(p, exps, model)?);
                }
                Term::Exchange(p) => {
                    set.exchange.insert(p, exchange_with(p, exps, model)?);
                }
            }
        }
        Ok(set)
    }

    pub fn get(&self, term: Term) -> Option<f64> {
        match term {
            Term::Core(s) => self.core.get(&s).map(CoreIntegral::total),
            Term::Coulomb(p) => self.coulomb.get(&p).copied(),
            Term::Exchange(p) => self.exchange.get(&p).copied(),
        }
    }

    pub fn len(&self) -> usize {
        self.core.len() + self.coulomb.len() + self.exchange.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// All integrals needed by the ground-state energy of atomic number `z`.
pub fn integral_set(exps: &Exponents, z: u32) -> Result<IntegralSet> {
    integral_set_with(exps, z, PShellModel::Exact)
}

pub fn integral_set_with(exps: &Exponents, z: u32, model: PShellModel) -> Result<IntegralSet> {
    exps.check_for(z)?;
    let counts = crate::atom::pair_counts(&crate::atom::configuration(z)?);
    IntegralSet::for_terms(counts.terms(), exps, z, model)
}
