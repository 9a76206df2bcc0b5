//! Plain Nelder–Mead simplex minimizer.

/// Termination thresholds.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Settings {
    /// Spread of function values across the simplex.
    pub f_tol: f64,
    /// Largest coordinate distance from the best vertex.
    pub x_tol: f64,
    pub max_evals: usize,
    /// Edge length of the initial axis-aligned simplex, per coordinate.
    pub step: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct Outcome {
    pub x: Vec<f64>,
    pub f: f64,
    pub evals: usize,
    pub converged: bool,
    /// Best value after each iteration.
    #[cfg_attr(not(test), allow(dead_code))]
    pub trace: Vec<f64>,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

fn combine(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    // a + t (b − a)
    a.iter().zip(b).map(|(a, b)| a + t * (b - a)).collect()
}

pub(crate) fn minimize<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], s: Settings) -> Outcome {
    let n = x0.len();
    let mut evals = 0;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), eval(x0, &mut evals)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += s.step;
        let v = eval(&x, &mut evals);
        simplex.push((x, v));
    }

    let mut trace = Vec::new();
    let mut converged = false;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        trace.push(simplex[0].1);
        let spread = simplex[n].1 - simplex[0].1;
        let size = simplex[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if spread <= s.f_tol && size <= s.x_tol {
            converged = true;
            break;
        }
        if evals >= s.max_evals {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let reflected = combine(&centroid, &worst.0, -REFLECT);
        let fr = eval(&reflected, &mut evals);

        if fr < simplex[0].1 {
            let expanded = combine(&centroid, &worst.0, -EXPAND);
            let fe = eval(&expanded, &mut evals);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }
        let (target, ft) = if fr < worst.1 {
            // outside contraction
            let c = combine(&centroid, &reflected, CONTRACT);
            let fc = eval(&c, &mut evals);
            (c, fc)
        } else {
            let c = combine(&centroid, &worst.0, CONTRACT);
            let fc = eval(&c, &mut evals);
            (c, fc)
        };
        if ft < fr.min(worst.1) {
            simplex[n] = (target, ft);
            continue;
        }
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x = combine(&best, &vertex.0, SHRINK);
            let v = eval(&x, &mut evals);
            *vertex = (x, v);
        }
    }
    let (x, f) = simplex.swap_remove(0);
    Outcome { x, f, evals, converged, trace }
}
