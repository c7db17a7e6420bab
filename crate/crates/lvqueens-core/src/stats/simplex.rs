//! Small derivative-free Nelder–Mead minimizer for the likelihood fits.
//!
//! Standard coefficients (reflection 1, expansion 2, contraction 0.5,
//! shrink 0.5). The fitters optimize in log-parameter space, so the domain
//! is all of R^n and no constraint handling is needed here.

/// Stopping parameters for [`minimize`].
#[derive(Debug, Clone)]
pub struct SimplexOptions {
    pub max_iterations: usize,
    /// Relative spread of objective values across the simplex.
    pub tol_fun: f64,
    /// Relative spread of vertex coordinates.
    pub tol_x: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            max_iterations: 400,
            tol_fun: 1e-10,
            tol_x: 1e-9,
        }
    }
}

/// Result of a minimization run.
#[derive(Debug, Clone)]
pub struct SimplexOutcome {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    /// False when the iteration cap was hit before both tolerances held.
    pub converged: bool,
}

/// Minimizes `f` starting from `x0`. Non-finite objective values are treated
/// as +infinity, so the simplex walks away from overflow regions on its own.
pub fn minimize<F: Fn(&[f64]) -> f64>(f: F, x0: &[f64], options: &SimplexOptions) -> SimplexOutcome {
    let dim = x0.len();
    assert!(dim > 0, "cannot minimize over zero dimensions");
    let eval = |x: &[f64]| -> f64 {
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };

    // Initial simplex: x0 plus one vertex per axis, nudged 5% (or a small
    // absolute step where the coordinate is zero).
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), eval(x0)));
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] += if v[i] != 0.0 { 0.05 * v[i].abs() } else { 0.00025 };
        let fv = eval(&v);
        simplex.push((v, fv));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < options.max_iterations {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("objective values are comparable"));

        let f_best = simplex[0].1;
        let f_worst = simplex[dim].1;
        let f_spread = f_worst - f_best;
        let x_spread = (0..dim)
            .map(|i| {
                let lo = simplex.iter().map(|(v, _)| v[i]).fold(f64::INFINITY, f64::min);
                let hi = simplex.iter().map(|(v, _)| v[i]).fold(f64::NEG_INFINITY, f64::max);
                hi - lo
            })
            .fold(0.0, f64::max);
        let x_scale = simplex[0].0.iter().fold(1.0, |acc: f64, &c| acc.max(c.abs()));
        if f_spread <= options.tol_fun * (1.0 + f_best.abs()) && x_spread <= options.tol_x * x_scale
        {
            converged = true;
            break;
        }
        iterations += 1;

        // Centroid of all vertices except the worst.
        let mut centroid = vec![0.0; dim];
        for (v, _) in &simplex[..dim] {
            for (c, &vi) in centroid.iter_mut().zip(v) {
                *c += vi;
            }
        }
        for c in &mut centroid {
            *c /= dim as f64;
        }

        let worst = simplex[dim].0.clone();
        let f_second = simplex[dim - 1].1;
        let reflect: Vec<f64> = centroid
            .iter()
            .zip(&worst)
            .map(|(&c, &w)| c + (c - w))
            .collect();
        let f_reflect = eval(&reflect);

        if f_reflect < f_best {
            // Promising direction: try going twice as far.
            let expand: Vec<f64> = centroid
                .iter()
                .zip(&worst)
                .map(|(&c, &w)| c + 2.0 * (c - w))
                .collect();
            let f_expand = eval(&expand);
            simplex[dim] = if f_expand < f_reflect {
                (expand, f_expand)
            } else {
                (reflect, f_reflect)
            };
        } else if f_reflect < f_second {
            simplex[dim] = (reflect, f_reflect);
        } else {
            // Contract toward the centroid, outside or inside depending on
            // whether reflection improved on the worst vertex.
            let toward = if f_reflect < f_worst { &reflect } else { &worst };
            let contract: Vec<f64> = centroid
                .iter()
                .zip(toward)
                .map(|(&c, &t)| c + 0.5 * (t - c))
                .collect();
            let f_contract = eval(&contract);
            if f_contract < f_reflect.min(f_worst) {
                simplex[dim] = (contract, f_contract);
            } else {
                // Shrink everything toward the best vertex.
                let best = simplex[0].0.clone();
                for (v, fv) in &mut simplex[1..] {
                    for (vi, &bi) in v.iter_mut().zip(&best) {
                        *vi = bi + 0.5 * (*vi - bi);
                    }
                    *fv = eval(v);
                }
            }
        }
    }

    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("objective values are comparable"));
    let (x, fx) = simplex.swap_remove(0);
    SimplexOutcome {
        x,
        fx,
        iterations,
        converged,
    }
}
