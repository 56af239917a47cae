//! Derivative-free minimization: Nelder-Mead simplex descent with restarts,
//! and a multi-start driver.

/// Settings for a single Nelder-Mead run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadConfig {
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
    pub max_iterations: usize,
    /// Stop when the spread of objective values over the simplex drops below this.
    pub f_tol: f64,
    /// Stop when the simplex diameter drops below this.
    pub x_tol: f64,
    /// Number of times the simplex is rebuilt around the current best point.
    pub restarts: usize,
}

impl Default for NelderMeadConfig {
    fn default() -> Self {
        Self {
            initial_step: 0.5,
            max_iterations: 4000,
            f_tol: 1e-16,
            x_tol: 1e-12,
            restarts: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

fn simplex_run<F: Fn(&[f64]) -> f64>(
    f: &F,
    x0: &[f64],
    step: f64,
    cfg: &NelderMeadConfig,
) -> Minimum {
    let dim = x0.len();
    let mut points: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    points.push(x0.to_vec());
    for i in 0..dim {
        let mut p = x0.to_vec();
        p[i] += step;
        points.push(p);
    }
    let mut values: Vec<f64> = points.iter().map(|p| sanitize(f(p))).collect();
    let mut iterations = 0;
    let mut converged = false;

    while iterations < cfg.max_iterations {
        iterations += 1;
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        points = order.iter().map(|&i| points[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = values[dim] - values[0];
        let diameter = points[1..]
            .iter()
            .map(|p| dist(p, &points[0]))
            .fold(0.0, f64::max);
        if spread.abs() <= cfg.f_tol || diameter <= cfg.x_tol {
            converged = true;
            break;
        }

        let mut centroid = vec![0.0; dim];
        for p in &points[..dim] {
            for (c, v) in centroid.iter_mut().zip(p) {
                *c += v / dim as f64;
            }
        }
        let worst = points[dim].clone();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(REFLECT);
        let fr = sanitize(f(&reflected));
        if fr < values[0] {
            let expanded = along(EXPAND);
            let fe = sanitize(f(&expanded));
            if fe < fr {
                points[dim] = expanded;
                values[dim] = fe;
            } else {
                points[dim] = reflected;
                values[dim] = fr;
            }
            continue;
        }
        if fr < values[dim - 1] {
            points[dim] = reflected;
            values[dim] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[dim] {
            let p = along(CONTRACT * REFLECT);
            let v = sanitize(f(&p));
            (p, v)
        } else {
            let p = along(-CONTRACT);
            let v = sanitize(f(&p));
            (p, v)
        };
        if fc < values[dim].min(fr) {
            points[dim] = contracted;
            values[dim] = fc;
            continue;
        }
        let best = points[0].clone();
        for i in 1..=dim {
            for (x, b) in points[i].iter_mut().zip(&best) {
                *x = b + SHRINK * (*x - b);
            }
            values[i] = sanitize(f(&points[i]));
        }
    }

    let (best, &value) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("simplex is non-empty");
    Minimum {
        x: points[best].clone(),
        value,
        iterations,
        converged,
    }
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Nelder-Mead from `x0`, rebuilding the simplex around the incumbent
/// `cfg.restarts` times with a shrinking step.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(f: &F, x0: &[f64], cfg: &NelderMeadConfig) -> Minimum {
    assert!(!x0.is_empty(), "cannot minimize over zero parameters");
    let mut best = simplex_run(f, x0, cfg.initial_step, cfg);
    let mut step = cfg.initial_step;
    for _ in 0..cfg.restarts {
        step *= 0.1;
        let next = simplex_run(f, &best.x, step.max(1e-9), cfg);
        let iterations = best.iterations + next.iterations;
        if next.value < best.value {
            best = Minimum {
                iterations,
                ..next
            };
        } else {
            best.iterations = iterations;
            best.converged &= next.converged;
        }
    }
    best
}

/// Runs Nelder-Mead from every start and returns the index and result of the
/// lowest minimum; ties go to the earliest start.
pub fn multi_start<F: Fn(&[f64]) -> f64>(
    f: &F,
    starts: &[Vec<f64>],
    cfg: &NelderMeadConfig,
) -> Option<(usize, Minimum)> {
    let mut best: Option<(usize, Minimum)> = None;
    for (i, x0) in starts.iter().enumerate() {
        let m = nelder_mead(f, x0, cfg);
        let better = match &best {
            None => true,
            Some((_, b)) => m.value < b.value,
        };
        if better {
            best = Some((i, m));
        }
    }
    best
}
