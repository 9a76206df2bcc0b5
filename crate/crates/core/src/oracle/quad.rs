//! Globally adaptive Gauss–Legendre quadrature.
//!
//! Each panel is integrated with a 12-point rule on the whole panel and on its
//! two halves; the halves' sum is kept and the difference is the panel's error
//! estimate. The panel with the largest estimate is bisected until the summed
//! error falls below `max(abs, rel · ∫|f|)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const ORDER: usize = 12;
const MAX_PANELS: usize = 4000;

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(ORDER))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn halved(self) -> Self {
        Self { abs: self.abs / 2.0, rel: self.rel / 2.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// (∫f, ∫|f|) with the fixed rule.
fn fixed<F: FnMut(f64) -> Result<f64>>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)> {
    let (nodes, weights) = rule();
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let (mut sum, mut sum_abs) = (0.0, 0.0);
    for (x, w) in nodes.iter().zip(weights) {
        let v = f(mid + half * x)?;
        sum += w * v;
        sum_abs += w * v.abs();
    }
    Ok((sum * half, sum_abs * half))
}

struct Panel {
    a: f64,
    b: f64,
    left: (f64, f64),
    right: (f64, f64),
    error: f64,
}

impl Panel {
    fn value(&self) -> f64 {
        self.left.0 + self.right.0
    }
    fn abs_value(&self) -> f64 {
        self.left.1 + self.right.1
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn make_panel<F: FnMut(f64) -> Result<f64>>(
    f: &mut F,
    a: f64,
    b: f64,
    whole: (f64, f64),
) -> Result<Panel> {
    let m = 0.5 * (a + b);
    let left = fixed(f, a, m)?;
    let right = fixed(f, m, b)?;
    let error = (left.0 + right.0 - whole.0).abs();
    Ok(Panel { a, b, left, right, error })
}

/// Integrates `f` over `[points[0], points[last]]`, starting from the panels
/// delimited by the sorted `points`.
pub fn try_integrate<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    points: &[f64],
    tol: Tolerance,
) -> Result<QuadResult> {
    debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        let whole = fixed(&mut f, w[0], w[1])?;
        heap.push(make_panel(&mut f, w[0], w[1], whole)?);
        evaluations += 3 * ORDER;
    }
    loop {
        let (value, abs_value, error) = heap
            .iter()
            .fold((0.0, 0.0, 0.0), |acc, p| (acc.0 + p.value(), acc.1 + p.abs_value(), acc.2 + p.error));
        if !abs_value.is_finite() {
            return Err(Error::Quadrature { a: points[0], b: points[points.len() - 1], value, error });
        }
        if error <= tol.abs.max(tol.rel * abs_value) {
            return Ok(QuadResult { value, error, evaluations });
        }
        if heap.len() >= MAX_PANELS {
            return Err(Error::Quadrature { a: points[0], b: points[points.len() - 1], value, error });
        }
        let worst = heap.pop().expect("at least one panel");
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b || worst.b - worst.a < 1e-14 * worst.b.abs() {
            return Err(Error::Quadrature { a: worst.a, b: worst.b, value, error });
        }
        heap.push(make_panel(&mut f, worst.a, m, worst.left)?);
        heap.push(make_panel(&mut f, m, worst.b, worst.right)?);
        evaluations += 4 * ORDER;
    }
}

pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, points: &[f64], tol: Tolerance) -> Result<QuadResult> {
    try_integrate(|x| Ok(f(x)), points, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TIGHT: Tolerance = Tolerance { abs: 1e-15, rel: 1e-13 };

    #[test]
    fn nodes_and_weights() {
        let (x, w) = gauss_legendre(12);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // Exact for x^22.
        let moment: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(22)).sum();
        assert!((moment - 2.0 / 23.0).abs() < 1e-14);
        let (x3, _) = gauss_legendre(3);
        assert!((x3[2] - (0.6f64).sqrt()).abs() < 1e-15);
        assert_eq!(x3[1], 0.0);
    }

    #[test]
    fn exponential_moments() {
        // ∫₀^∞ r⁴ e^{-3r} dr = 24 / 3⁵
        let q = integrate(|r| r.powi(4) * (-3.0 * r).exp(), &[0.0, 1.0, 5.0, 40.0], TIGHT).unwrap();
        assert!((q.value - 24.0 / 243.0).abs() < 1e-14);
        assert!(q.error < 1e-13);
    }

    #[test]
    fn sign_changing_integrand_with_zero_integral() {
        let q = integrate(|x| (x * std::f64::consts::PI).sin(), &[-1.0, 1.0], TIGHT).unwrap();
        assert!(q.value.abs() < 1e-14);
    }

    #[test]
    fn nonconvergence_reported() {
        let err = integrate(|x| 1.0 / x, &[0.0, 1.0], Tolerance { abs: 0.0, rel: 1e-12 });
        assert!(matches!(err, Err(Error::Quadrature { .. })), "{err:?}");
    }
}
