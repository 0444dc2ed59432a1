use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::max_clique;
use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};

const MAX_POWER_ITERATIONS: usize = 1_000_000;

/// Combinatorial budget for [`local_density`].
pub const LOCAL_DENSITY_BUDGET: u128 = 10_000_000;

fn adjacency_times(g: &Graph, x: &[f64], out: &mut [f64]) {
    for (v, o) in out.iter_mut().enumerate() {
        *o = Bits(g.neighbors(v)).map(|u| x[u]).sum();
    }
}

/// `2 Σ_{uv ∈ E} x_u x_v`.
fn quadratic_form(g: &Graph, x: &[f64]) -> f64 {
    g.edges().iter().map(|&(u, v)| 2.0 * x[u] * x[v]).sum()
}

/// Largest adjacency eigenvalue by power iteration on `A + I`.
///
/// The shift makes the Perron root strictly dominant in absolute value even
/// for bipartite graphs. Iteration stops when successive Rayleigh quotients
/// differ by less than `tol`.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    if g.size() == 0 {
        return Ok(0.0);
    }
    let n = g.order();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut ax = vec![0.0; n];
    let mut prev = f64::NEG_INFINITY;
    for _ in 0..MAX_POWER_ITERATIONS {
        adjacency_times(g, &x, &mut ax);
        let rayleigh: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        if (rayleigh - prev).abs() < tol {
            return Ok(rayleigh);
        }
        prev = rayleigh;
        let mut norm = 0.0;
        for (xi, ai) in x.iter_mut().zip(&ax) {
            *xi += ai;
            norm += *xi * *xi;
        }
        let norm = norm.sqrt();
        x.iter_mut().for_each(|xi| *xi /= norm);
    }
    Ok(prev)
}

/// Settings for [`p_spectral_radius`].
#[derive(Clone, Debug)]
pub struct PSpectralOptions {
    /// Random nonnegative starts tried in addition to the uniform start.
    pub restarts: usize,
    /// An ascent stops once one accepted step gains less than this.
    pub tol: f64,
    pub seed: u64,
    pub max_steps: usize,
}

impl Default for PSpectralOptions {
    fn default() -> Self {
        PSpectralOptions {
            restarts: 8,
            tol: 1e-13,
            seed: 0,
            max_steps: 200_000,
        }
    }
}

fn normalize_p(x: &mut [f64], p: f64) -> bool {
    let norm = x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p);
    if !(norm > 0.0) || !norm.is_finite() {
        return false;
    }
    x.iter_mut().for_each(|v| *v /= norm);
    true
}

fn ascend(g: &Graph, p: f64, mut x: Vec<f64>, opts: &PSpectralOptions) -> f64 {
    if !normalize_p(&mut x, p) {
        return 0.0;
    }
    let n = g.order();
    let mut value = quadratic_form(g, &x);
    let mut step = 1.0 / g.max_degree().max(1) as f64;
    let mut grad = vec![0.0; n];
    let mut trial = vec![0.0; n];
    for _ in 0..opts.max_steps {
        adjacency_times(g, &x, &mut grad);
        if p > 1.0 {
            // shifted fixed-point step: stationary points satisfy
            // (Ax)_i = λ x_i^{p-1}, so x ↦ (Ax + x^{p-1})^{1/(p-1)} fixes them
            for i in 0..n {
                trial[i] = (grad[i] + x[i].powf(p - 1.0)).powf(1.0 / (p - 1.0));
            }
            if normalize_p(&mut trial, p) {
                let candidate = quadratic_form(g, &trial);
                if candidate > value {
                    let gain = candidate - value;
                    std::mem::swap(&mut x, &mut trial);
                    value = candidate;
                    if gain < opts.tol {
                        break;
                    }
                    continue;
                }
            }
        }
        for i in 0..n {
            // ascent step on 2x'Ax, clamped to the nonnegative orthant
            trial[i] = (x[i] + step * 2.0 * grad[i]).max(0.0);
        }
        if !normalize_p(&mut trial, p) {
            step /= 2.0;
            continue;
        }
        let candidate = quadratic_form(g, &trial);
        if candidate >= value {
            let gain = candidate - value;
            std::mem::swap(&mut x, &mut trial);
            value = candidate;
            if gain < opts.tol {
                break;
            }
            step = (step * 1.5).min(1e6);
        } else {
            step /= 2.0;
            if step < 1e-15 {
                break;
            }
        }
    }
    value
}

/// Lower bound on `max { 2 Σ_{uv∈E} x_u x_v : ‖x‖_p = 1 }` by projected
/// gradient ascent from the uniform vector and `restarts` random
/// nonnegative starts. Exact for `p = 1` and up to tolerance for `p = 2`.
pub fn p_spectral_radius(g: &Graph, p: f64, opts: &PSpectralOptions) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::domain(format!("p must be >= 1, got {p}")));
    }
    if g.size() == 0 {
        return Ok(0.0);
    }
    if p == 1.0 {
        // Motzkin–Straus: the simplex maximum is 1 - 1/ω
        let omega = max_clique(g).len() as f64;
        return Ok(1.0 - 1.0 / omega);
    }
    let n = g.order();
    let mut best = ascend(g, p, vec![1.0; n], opts);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.restarts {
        let start: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..1.0)).collect();
        best = best.max(ascend(g, p, start, opts));
    }
    Ok(best)
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Fewest edges spanned by any `⌈αn⌉` vertices.
pub fn local_density(g: &Graph, alpha: f64) -> Result<u64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    let n = g.order();
    // tolerate representation error so that e.g. 0.6 · 5 gives 3
    let m = (alpha * n as f64 - 1e-9).ceil().max(0.0) as usize;
    if m == 0 {
        return Err(Error::domain(format!("⌈{alpha} · {n}⌉ = 0 vertices")));
    }
    if binomial(n, m) > LOCAL_DENSITY_BUDGET {
        return Err(Error::size(format!("C({n},{m}) subsets exceed the local density budget")));
    }
    // low-degree vertices first so good subsets are found early
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));

    fn go(g: &Graph, order: &[usize], from: usize, chosen: u64, left: usize, edges: u64, best: &mut u64) {
        if edges >= *best {
            return;
        }
        if left == 0 {
            *best = edges;
            return;
        }
        if order.len() - from < left {
            return;
        }
        for i in from..=order.len() - left {
            let v = order[i];
            let added = (g.neighbors(v) & chosen).count_ones() as u64;
            go(g, order, i + 1, chosen | (1u64 << v), left - 1, edges + added, best);
        }
    }
    let mut best = u64::MAX;
    go(g, &order, 0, 0, m, 0, &mut best);
    Ok(best)
}
