//! Numerical reference values for every integral in [`crate::integrals`].
//!
//! Nothing here shares code with the closed-form engine beyond the orbital
//! definitions in [`crate::basis`]. Two-electron integrals use the multipole
//! expansion of `1/r₁₂`: radial parts by nested adaptive quadrature over the
//! ordered regions `r₂ < r₁` and `r₂ > r₁`, angular weights by brute-force
//! product quadrature of `P_l(cos Θ₁₂)` over both spheres.
//!
//! These routines are slow (milliseconds per integral) and are only used by
//! tests and the `verify` command.

pub mod angular;
pub mod quad;

pub use angular::{angular_coefficient, angular_coefficients, sphere_overlap, PairId};
pub use quad::{QuadResult, Tolerance};

use crate::basis::{radial_part, Exponents, OrbitalKind, RadialFunction, Shell};
use crate::error::Result;
use crate::integrals::{CoreIntegral, CoulombPair, ExchangePair};

/// Tail of every density is below ~e⁻⁸⁰ past `40 / min exponent`.
const CUTOFF_FACTOR: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleTolerance {
    pub outer: Tolerance,
    pub inner: Tolerance,
}

impl Default for OracleTolerance {
    fn default() -> Self {
        Self {
            outer: Tolerance { abs: 1e-13, rel: 1e-12 },
            inner: Tolerance { abs: 1e-16, rel: 1e-14 },
        }
    }
}

impl OracleTolerance {
    pub fn halved(self) -> Self {
        Self { outer: self.outer.halved(), inner: self.inner.halved() }
    }
}

/// Sorted panel boundaries on `[lo, hi]` refined around the length scales `1/decay`.
fn breakpoints(lo: f64, hi: f64, decays: &[f64]) -> Vec<f64> {
    let mut pts = vec![lo, hi];
    for d in decays {
        for m in [0.25, 1.0, 3.0, 8.0, 20.0] {
            let x = m / d;
            if x > lo && x < hi {
                pts.push(x);
            }
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1e-300));
    pts
}

/// `∬ ρ₁(r₁) ρ₂(r₂) r_<ˡ / r_>ˡ⁺¹ dr₁ dr₂`, with `r₁` as the outer variable.
fn two_region<A, B>(l: u32, rho1: A, rho2: B, decays: &[f64], tol: OracleTolerance) -> Result<QuadResult>
where
    A: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    let cutoff = CUTOFF_FACTOR / decays.iter().cloned().fold(f64::INFINITY, f64::min);
    let l = l as i32;
    let outer = |r1: f64| -> Result<f64> {
        let below = quad::integrate(
            |r2| rho2(r2) * r2.powi(l),
            &breakpoints(0.0, r1, decays),
            tol.inner,
        )?;
        let above = quad::integrate(
            |r2| rho2(r2) / r2.powi(l + 1),
            &breakpoints(r1, cutoff, decays),
            tol.inner,
        )?;
        Ok(rho1(r1) * (below.value / r1.powi(l + 1) + above.value * r1.powi(l)))
    };
    quad::try_integrate(outer, &breakpoints(0.0, cutoff, decays), tol.outer)
}

fn pair_decays(a: &RadialFunction, b: &RadialFunction) -> [f64; 3] {
    [2.0 * a.decay(), 2.0 * b.decay(), a.decay() + b.decay()]
}

/// Direct radial integral `Fˡ(a, b)` over the densities `a²r²` and `b²r²`.
pub fn radial_fk(l: u32, a: &RadialFunction, b: &RadialFunction) -> Result<QuadResult> {
    radial_fk_with(l, a, b, OracleTolerance::default())
}

pub fn radial_fk_with(
    l: u32,
    a: &RadialFunction,
    b: &RadialFunction,
    tol: OracleTolerance,
) -> Result<QuadResult> {
    two_region(
        l,
        |r| (a.value(r) * r).powi(2),
        |r| (b.value(r) * r).powi(2),
        &pair_decays(a, b),
        tol,
    )
}

/// Exchange radial integral `Gˡ(a, b)` over the overlap density `a·b·r²`.
pub fn radial_gk(l: u32, a: &RadialFunction, b: &RadialFunction) -> Result<QuadResult> {
    radial_gk_with(l, a, b, OracleTolerance::default())
}

pub fn radial_gk_with(
    l: u32,
    a: &RadialFunction,
    b: &RadialFunction,
    tol: OracleTolerance,
) -> Result<QuadResult> {
    let rho = |r: f64| a.value(r) * b.value(r) * r * r;
    two_region(l, rho, rho, &pair_decays(a, b), tol)
}

/// `R'' + 2R'/r − l(l+1)R/r²`, differentiated by hand for each shell.
fn radial_laplacian(f: &RadialFunction, r: f64) -> f64 {
    match *f {
        RadialFunction::OneS { norm, alpha } => {
            // R' = −αR, R'' = α²R
            norm * (-alpha * r).exp() * (alpha * alpha - 2.0 * alpha / r)
        }
        RadialFunction::TwoS { norm, node, beta } => {
            let e = norm * (-beta * r).exp();
            let d1 = e * (-node - beta + beta * node * r);
            let d2 = e * (2.0 * beta * node + beta * beta - beta * beta * node * r);
            d2 + 2.0 * d1 / r
        }
        RadialFunction::TwoP { norm, gamma } => {
            let e = norm * (-gamma * r).exp();
            let value = e * r;
            let d1 = e * (1.0 - gamma * r);
            let d2 = e * (gamma * gamma * r - 2.0 * gamma);
            d2 + 2.0 * d1 / r - 2.0 * value / (r * r)
        }
    }
}

/// `⟨ψ| −½∇² − Z/r |ψ⟩` by radial quadrature, split into kinetic and potential parts.
pub fn oracle_core(shell: Shell, exps: &Exponents, z: u32) -> Result<CoreIntegral> {
    let f = radial_part(shell, exps)?;
    let cutoff = CUTOFF_FACTOR / f.decay();
    let pts = breakpoints(0.0, cutoff, &[2.0 * f.decay()]);
    let tol = OracleTolerance::default().inner;
    let kinetic = quad::integrate(|r| -0.5 * f.value(r) * radial_laplacian(&f, r) * r * r, &pts, tol)?;
    let z = f64::from(z);
    let potential = quad::integrate(|r| -z * f.value(r).powi(2) * r, &pts, tol)?;
    Ok(CoreIntegral { kinetic: kinetic.value, potential: potential.value })
}

pub fn oracle_coulomb(pair: CoulombPair, exps: &Exponents) -> Result<f64> {
    let (a, b) = pair.shells();
    let (fa, fb) = (radial_part(a, exps)?, radial_part(b, exps)?);
    let mut sum = 0.0;
    for (l, c) in angular_coefficients(PairId::Coulomb(pair)) {
        sum += c * radial_fk(l, &fa, &fb)?.value;
    }
    Ok(sum)
}

pub fn oracle_exchange(pair: ExchangePair, exps: &Exponents) -> Result<f64> {
    let (a, b) = pair.shells();
    let (fa, fb) = (radial_part(a, exps)?, radial_part(b, exps)?);
    let mut sum = 0.0;
    for (l, c) in angular_coefficients(PairId::Exchange(pair)) {
        sum += c * radial_gk(l, &fa, &fb)?.value;
    }
    Ok(sum)
}

/// `⟨ψ_a|ψ_b⟩` as radial overlap times angular overlap.
pub fn oracle_overlap(a: OrbitalKind, b: OrbitalKind, exps: &Exponents) -> Result<f64> {
    let (fa, fb) = (radial_part(a.shell(), exps)?, radial_part(b.shell(), exps)?);
    let cutoff = CUTOFF_FACTOR / fa.decay().min(fb.decay());
    let radial = quad::integrate(
        |r| fa.value(r) * fb.value(r) * r * r,
        &breakpoints(0.0, cutoff, &pair_decays(&fa, &fb)),
        OracleTolerance::default().inner,
    )?;
    Ok(radial.value * sphere_overlap(a, b))
}
