//! Single-zeta Slater-type orbitals for the first two shells.
//!
//! The 1s function carries exponent `alpha`, the 2s function exponent `beta`
//! (orthogonalized against the 1s, so it also depends on `alpha`), and the
//! three real 2p functions share exponent `gamma`.
//!
//! Every orbital factors into a radial function `R(r)` normalized as
//! `∫ R² r² dr = 1` and a real angular factor normalized over the unit sphere.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest exponent accepted anywhere in the crate (inverse bohr).
pub const MAX_EXPONENT: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Exponents {
    pub alpha: f64,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
}

fn check(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value <= MAX_EXPONENT {
        Ok(value)
    } else {
        Err(Error::ExponentOutOfDomain { name, value })
    }
}

impl Exponents {
    pub fn new(alpha: f64, beta: Option<f64>, gamma: Option<f64>) -> Result<Self> {
        check("alpha", alpha)?;
        if let Some(b) = beta {
            check("beta", b)?;
        }
        if let Some(g) = gamma {
            check("gamma", g)?;
        }
        if gamma.is_some() && beta.is_none() {
            return Err(Error::MissingExponent { name: "beta", what: "a 2p exponent" });
        }
        Ok(Self { alpha, beta, gamma })
    }

    pub fn helium_like(alpha: f64) -> Result<Self> {
        Self::new(alpha, None, None)
    }

    pub fn with_2s(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, Some(beta), None)
    }

    pub fn with_2p(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        Self::new(alpha, Some(beta), Some(gamma))
    }

    /// Builds exponents from a packed `[alpha, beta?, gamma?]` slice.
    pub fn from_slice(values: &[f64]) -> Result<Self> {
        match *values {
            [a] => Self::helium_like(a),
            [a, b] => Self::with_2s(a, b),
            [a, b, g] => Self::with_2p(a, b, g),
            _ => Err(Error::InvalidOption(format!(
                "expected 1 to 3 exponents, got {}",
                values.len()
            ))),
        }
    }

    pub fn to_vec(&self) -> Vec<f64> {
        std::iter::once(self.alpha).chain(self.beta).chain(self.gamma).collect()
    }

    pub fn len(&self) -> usize {
        1 + usize::from(self.beta.is_some()) + usize::from(self.gamma.is_some())
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Multiplies every exponent by `s` (a uniform coordinate scaling).
    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(self.alpha * s, self.beta.map(|b| b * s), self.gamma.map(|g| g * s))
    }

    pub fn beta(&self) -> Result<f64> {
        self.beta.ok_or(Error::MissingExponent { name: "beta", what: "the 2s orbital" })
    }

    pub fn gamma(&self) -> Result<f64> {
        self.gamma.ok_or(Error::MissingExponent { name: "gamma", what: "the 2p orbitals" })
    }

    /// Checks that exactly the exponents needed by atomic number `z` are present.
    pub fn check_for(&self, z: u32) -> Result<()> {
        let (needs_beta, needs_gamma) = match z {
            2 => (false, false),
            3 | 4 => (true, false),
            5..=10 => (true, true),
            _ => return Err(Error::AtomicNumber(z)),
        };
        if needs_beta && self.beta.is_none() {
            return Err(Error::MissingExponent { name: "beta", what: "this atom" });
        }
        if needs_gamma && self.gamma.is_none() {
            return Err(Error::MissingExponent { name: "gamma", what: "this atom" });
        }
        if self.beta.is_some() != needs_beta || self.gamma.is_some() != needs_gamma {
            return Err(Error::PresenceMismatch { z });
        }
        Ok(())
    }
}

/// Radial shell shared by one or more orbitals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Shell {
    S1,
    S2,
    P2,
}

impl Shell {
    pub fn angular_momentum(self) -> u32 {
        match self {
            Shell::S1 | Shell::S2 => 0,
            Shell::P2 => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Shell::S1 => "1s",
            Shell::S2 => "2s",
            Shell::P2 => "2p",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OrbitalKind {
    S1,
    S2,
    P2x,
    P2y,
    P2z,
}

impl OrbitalKind {
    pub const ALL: [OrbitalKind; 5] =
        [OrbitalKind::S1, OrbitalKind::S2, OrbitalKind::P2x, OrbitalKind::P2y, OrbitalKind::P2z];
    pub const P: [OrbitalKind; 3] = [OrbitalKind::P2x, OrbitalKind::P2y, OrbitalKind::P2z];

    pub fn shell(self) -> Shell {
        match self {
            OrbitalKind::S1 => Shell::S1,
            OrbitalKind::S2 => Shell::S2,
            OrbitalKind::P2x | OrbitalKind::P2y | OrbitalKind::P2z => Shell::P2,
        }
    }

    /// Real angular factor, normalized to one over the unit sphere.
    pub fn angular(self, theta: f64, phi: f64) -> f64 {
        let s = (1.0 / (4.0 * PI)).sqrt();
        let p = (3.0 / (4.0 * PI)).sqrt();
        match self {
            OrbitalKind::S1 | OrbitalKind::S2 => s,
            OrbitalKind::P2x => p * theta.sin() * phi.cos(),
            OrbitalKind::P2y => p * theta.sin() * phi.sin(),
            OrbitalKind::P2z => p * theta.cos(),
        }
    }
}

/// Normalized radial factor of one shell at fixed exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialFunction {
    /// `norm · e^{-alpha r}`
    OneS { norm: f64, alpha: f64 },
    /// `norm · (1 − node r) · e^{-beta r}` with `node = (alpha + beta)/3`
    TwoS { norm: f64, node: f64, beta: f64 },
    /// `norm · r · e^{-gamma r}`
    TwoP { norm: f64, gamma: f64 },
}

impl RadialFunction {
    pub fn value(&self, r: f64) -> f64 {
        match *self {
            RadialFunction::OneS { norm, alpha } => norm * (-alpha * r).exp(),
            RadialFunction::TwoS { norm, node, beta } => norm * (1.0 - node * r) * (-beta * r).exp(),
            RadialFunction::TwoP { norm, gamma } => norm * r * (-gamma * r).exp(),
        }
    }

    pub fn shell(&self) -> Shell {
        match self {
            RadialFunction::OneS { .. } => Shell::S1,
            RadialFunction::TwoS { .. } => Shell::S2,
            RadialFunction::TwoP { .. } => Shell::P2,
        }
    }

    pub fn angular_momentum(&self) -> u32 {
        self.shell().angular_momentum()
    }

    /// Exponential decay rate of the function.
    pub fn decay(&self) -> f64 {
        match *self {
            RadialFunction::OneS { alpha, .. } => alpha,
            RadialFunction::TwoS { beta, .. } => beta,
            RadialFunction::TwoP { gamma, .. } => gamma,
        }
    }
}

/// Denominator `α² − αβ + β²` of the 2s normalization. Positive for all
/// positive `α`, `β` since it equals `(α − β/2)² + 3β²/4`.
pub fn two_s_denominator(alpha: f64, beta: f64) -> f64 {
    alpha * alpha - alpha * beta + beta * beta
}

pub fn radial_part(shell: Shell, exps: &Exponents) -> Result<RadialFunction> {
    check("alpha", exps.alpha)?;
    Ok(match shell {
        Shell::S1 => {
            let a = exps.alpha;
            RadialFunction::OneS { norm: 2.0 * a.powf(1.5), alpha: a }
        }
        Shell::S2 => {
            let (a, b) = (exps.alpha, check("beta", exps.beta()?)?);
            // sqrt(4π) · sqrt(3β⁵ / (π(α² − αβ + β²)))
            let norm = (12.0 * b.powi(5) / two_s_denominator(a, b)).sqrt();
            RadialFunction::TwoS { norm, node: (a + b) / 3.0, beta: b }
        }
        Shell::P2 => {
            let g = check("gamma", exps.gamma()?)?;
            RadialFunction::TwoP { norm: 2.0 * g.powf(2.5) / 3f64.sqrt(), gamma: g }
        }
    })
}

/// Amplitude of orbital `kind` at the spherical point `(r, theta, phi)`.
pub fn evaluate(kind: OrbitalKind, exps: &Exponents, r: f64, theta: f64, phi: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::InvalidOption(format!("radius must be nonnegative, got {r}")));
    }
    Ok(radial_part(kind.shell(), exps)?.value(r) * kind.angular(theta, phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_s_at_origin() {
        let e = Exponents::helium_like(1.0).unwrap();
        let v = evaluate(OrbitalKind::S1, &e, 0.0, 0.3, 1.1).unwrap();
        assert!((v - 1.0 / PI.sqrt()).abs() < 1e-15);
        assert!((v - 0.564190).abs() < 1e-6);
    }

    #[test]
    fn p_vanishes_at_origin() {
        let e = Exponents::with_2p(3.0, 1.0, 2.7).unwrap();
        for kind in OrbitalKind::P {
            assert_eq!(evaluate(kind, &e, 0.0, 0.4, 0.9).unwrap(), 0.0);
        }
    }

    #[test]
    fn two_s_radial_node() {
        let e = Exponents::with_2s(1.0, 1.0).unwrap();
        let v = evaluate(OrbitalKind::S2, &e, 1.5, 0.0, 0.0).unwrap();
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn one_s_radial_normalization_constant() {
        let e = Exponents::helium_like(1.7).unwrap();
        let r = radial_part(Shell::S1, &e).unwrap();
        assert!((r.value(0.0) - 2.0 * 1.7f64.powf(1.5)).abs() < 1e-14);
    }

    #[test]
    fn radial_times_angular_matches_closed_orbital_forms() {
        let e = Exponents::with_2p(2.2, 0.9, 1.3).unwrap();
        let (r, th, ph) = (0.8f64, 0.7f64, 2.1f64);
        let (a, b, g) = (2.2f64, 0.9f64, 1.3f64);
        let s2 = (3.0 * b.powi(5) / (PI * (a * a - a * b + b * b))).sqrt()
            * (1.0 - (a + b) / 3.0 * r)
            * (-b * r).exp();
        let pz = g.powf(2.5) / PI.sqrt() * r * (-g * r).exp() * th.cos();
        let px = g.powf(2.5) / PI.sqrt() * r * (-g * r).exp() * th.sin() * ph.cos();
        assert!((evaluate(OrbitalKind::S2, &e, r, th, ph).unwrap() - s2).abs() < 1e-14);
        assert!((evaluate(OrbitalKind::P2z, &e, r, th, ph).unwrap() - pz).abs() < 1e-14);
        assert!((evaluate(OrbitalKind::P2x, &e, r, th, ph).unwrap() - px).abs() < 1e-14);
    }

    #[test]
    fn missing_exponents_are_errors() {
        let he = Exponents::helium_like(1.6875).unwrap();
        assert!(matches!(
            evaluate(OrbitalKind::S2, &he, 1.0, 0.0, 0.0),
            Err(Error::MissingExponent { name: "beta", .. })
        ));
        assert!(matches!(
            radial_part(Shell::P2, &Exponents::with_2s(3.0, 1.0).unwrap()),
            Err(Error::MissingExponent { name: "gamma", .. })
        ));
    }

    #[test]
    fn domain_is_enforced() {
        assert!(Exponents::helium_like(0.0).is_err());
        assert!(Exponents::helium_like(-1.0).is_err());
        assert!(Exponents::helium_like(50.0).is_ok());
        assert!(Exponents::helium_like(50.1).is_err());
        assert!(Exponents::with_2s(1.0, f64::NAN).is_err());
        assert!(Exponents::new(1.0, None, Some(1.0)).is_err());
    }

    #[test]
    fn presence_pattern_follows_z() {
        let he = Exponents::helium_like(1.7).unwrap();
        let li = Exponents::with_2s(2.7, 0.8).unwrap();
        let c = Exponents::with_2p(5.7, 2.0, 1.5).unwrap();
        assert!(he.check_for(2).is_ok());
        assert!(li.check_for(3).is_ok() && li.check_for(4).is_ok());
        assert!(c.check_for(6).is_ok());
        assert!(matches!(li.check_for(6), Err(Error::MissingExponent { name: "gamma", .. })));
        assert!(matches!(c.check_for(3), Err(Error::PresenceMismatch { z: 3 })));
        assert!(matches!(he.check_for(11), Err(Error::AtomicNumber(11))));
    }

    #[test]
    fn packing_round_trips() {
        let c = Exponents::with_2p(5.7, 2.0, 1.5).unwrap();
        assert_eq!(Exponents::from_slice(&c.to_vec()).unwrap(), c);
        assert_eq!(c.len(), 3);
        assert!(Exponents::from_slice(&[]).is_err());
    }

    proptest::proptest! {
        #[test]
        fn two_s_denominator_is_positive(a in 1e-3f64..50.0, b in 1e-3f64..50.0) {
            proptest::prop_assert!(two_s_denominator(a, b) > 0.0);
        }
    }
}
