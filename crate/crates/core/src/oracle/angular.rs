//! Angular weights of the multipole expansion, integrated by brute force.
//!
//! For orbitals `a` (electron 1) and `b` (electron 2) with real angular factors
//! `Y_a`, `Y_b`, the Coulomb weight of order `l` is
//! `∬ Y_a(Ω₁)² Y_b(Ω₂)² P_l(cos Θ₁₂) dΩ₁ dΩ₂` and the exchange weight is
//! `∬ Y_a(Ω₁)Y_b(Ω₁) Y_a(Ω₂)Y_b(Ω₂) P_l(cos Θ₁₂) dΩ₁ dΩ₂`. Both spheres use
//! Gauss–Legendre in `cos θ` times a uniform grid in `φ`, which is exact for
//! the low-degree polynomials on the sphere that appear here.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use super::quad::gauss_legendre;
use crate::basis::OrbitalKind;
use crate::integrals::{CoulombPair, ExchangePair};

const THETA_ORDER: usize = 16;
const PHI_ORDER: usize = 32;
/// Highest multipole order evaluated.
pub const MAX_ORDER: u32 = 4;
/// Weights below this are selection-rule zeros.
const ZERO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairId {
    Coulomb(CoulombPair),
    Exchange(ExchangePair),
}

impl PairId {
    pub fn all() -> impl Iterator<Item = PairId> {
        CoulombPair::ALL
            .into_iter()
            .map(PairId::Coulomb)
            .chain(ExchangePair::ALL.into_iter().map(PairId::Exchange))
    }

    /// Concrete real orbitals standing for the pair.
    fn orbitals(self) -> (OrbitalKind, OrbitalKind) {
        use OrbitalKind::*;
        match self {
            PairId::Coulomb(p) => match p {
                CoulombPair::J1s1s => (S1, S1),
                CoulombPair::J2s2s => (S2, S2),
                CoulombPair::J1s2s => (S1, S2),
                CoulombPair::J1s2p => (S1, P2z),
                CoulombPair::J2s2p => (S2, P2z),
                CoulombPair::J2p2pSame => (P2z, P2z),
                CoulombPair::J2p2pDiff => (P2x, P2z),
            },
            PairId::Exchange(p) => match p {
                ExchangePair::K1s2s => (S1, S2),
                ExchangePair::K1s2p => (S1, P2z),
                ExchangePair::K2s2p => (S2, P2z),
                ExchangePair::K2p2pDiff => (P2x, P2z),
            },
        }
    }
}

struct SpherePoint {
    theta: f64,
    phi: f64,
    weight: f64,
    unit: [f64; 3],
}

fn sphere_grid() -> &'static [SpherePoint] {
    static GRID: OnceLock<Vec<SpherePoint>> = OnceLock::new();
    GRID.get_or_init(|| {
        let (nodes, weights) = gauss_legendre(THETA_ORDER);
        let dphi = 2.0 * PI / PHI_ORDER as f64;
        let mut pts = Vec::with_capacity(THETA_ORDER * PHI_ORDER);
        for (x, w) in nodes.iter().zip(&weights) {
            let theta = x.acos();
            let s = theta.sin();
            for j in 0..PHI_ORDER {
                let phi = (j as f64 + 0.5) * dphi;
                pts.push(SpherePoint {
                    theta,
                    phi,
                    weight: w * dphi,
                    unit: [s * phi.cos(), s * phi.sin(), *x],
                });
            }
        }
        pts
    })
}

/// `P_0(x) ..= P_MAX_ORDER(x)` by the three-term recurrence.
fn legendre_all(x: f64) -> [f64; MAX_ORDER as usize + 1] {
    let mut p = [0.0; MAX_ORDER as usize + 1];
    p[0] = 1.0;
    p[1] = x;
    for l in 2..=MAX_ORDER as usize {
        let lf = l as f64;
        p[l] = ((2.0 * lf - 1.0) * x * p[l - 1] - (lf - 1.0) * p[l - 2]) / lf;
    }
    p
}

fn compute(pair: PairId) -> [f64; MAX_ORDER as usize + 1] {
    let (a, b) = pair.orbitals();
    let grid = sphere_grid();
    let (first, second): (Vec<f64>, Vec<f64>) = grid
        .iter()
        .map(|p| {
            let ya = a.angular(p.theta, p.phi);
            let yb = b.angular(p.theta, p.phi);
            match pair {
                PairId::Coulomb(_) => (p.weight * ya * ya, p.weight * yb * yb),
                PairId::Exchange(_) => (p.weight * ya * yb, p.weight * ya * yb),
            }
        })
        .unzip();
    let mut out = [0.0; MAX_ORDER as usize + 1];
    for (p1, w1) in grid.iter().zip(&first) {
        if *w1 == 0.0 {
            continue;
        }
        let mut inner = [0.0; MAX_ORDER as usize + 1];
        for (p2, w2) in grid.iter().zip(&second) {
            let cos12 = p1.unit[0] * p2.unit[0] + p1.unit[1] * p2.unit[1] + p1.unit[2] * p2.unit[2];
            for (acc, p) in inner.iter_mut().zip(legendre_all(cos12)) {
                *acc += w2 * p;
            }
        }
        for (o, acc) in out.iter_mut().zip(inner) {
            *o += w1 * acc;
        }
    }
    out
}

fn table() -> &'static BTreeMap<PairId, [f64; MAX_ORDER as usize + 1]> {
    static TABLE: OnceLock<BTreeMap<PairId, [f64; MAX_ORDER as usize + 1]>> = OnceLock::new();
    TABLE.get_or_init(|| PairId::all().map(|p| (p, compute(p))).collect())
}

/// Raw numerically integrated weight of order `l` (including selection-rule zeros).
pub fn angular_coefficient(pair: PairId, l: u32) -> f64 {
    assert!(l <= MAX_ORDER, "multipole order {l} above {MAX_ORDER}");
    table()[&pair][l as usize]
}

/// Nonzero `(l, weight)` entries for the pair.
pub fn angular_coefficients(pair: PairId) -> Vec<(u32, f64)> {
    table()[&pair]
        .iter()
        .enumerate()
        .filter(|(_, c)| c.abs() > ZERO)
        .map(|(l, &c)| (l as u32, c))
        .collect()
}

/// `∫ Y_a Y_b dΩ` on the sphere grid.
pub fn sphere_overlap(a: OrbitalKind, b: OrbitalKind) -> f64 {
    sphere_grid().iter().map(|p| p.weight * a.angular(p.theta, p.phi) * b.angular(p.theta, p.phi)).sum()
}
