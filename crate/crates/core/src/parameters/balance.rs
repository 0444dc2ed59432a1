//! Finite-size evidence for the balancedness conditions on a parameter.
//!
//! Increments of `h` under single edits are divided by the expected power of
//! `n`. An `O(·)` condition passes when every per-size maximum stays below
//! `band` times the fitted constant; a `Θ(·)` condition passes when every
//! normalised increment is positive and within a factor `band` of the fitted
//! constant (the geometric mean). Passing is evidence, never proof.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{evaluate, ParameterSpec};
use crate::constructions::{complete_multipartite, MultipartiteSpec};
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

#[derive(Clone, Debug)]
pub struct BalanceOptions {
    pub band: f64,
    pub samples_per_size: usize,
    pub seed: u64,
    /// Minimum part fraction for the multipartite hosts; defaults to
    /// `3 / (4(k-1))`.
    pub c: Option<f64>,
}

impl Default for BalanceOptions {
    fn default() -> Self {
        BalanceOptions {
            band: 8.0,
            samples_per_size: 6,
            seed: 0,
            c: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Sample {
    pub n: usize,
    /// graph6 of the graph before the edit.
    pub base: String,
    pub edit: String,
    pub increment: f64,
    pub normalized: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyCheck {
    pub property: &'static str,
    pub bound: &'static str,
    pub exponent: f64,
    pub fitted_constant: f64,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub pass: bool,
    pub samples: Vec<Sample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BalanceReport {
    pub spec: ParameterSpec,
    pub a: f64,
    pub k: usize,
    pub c: f64,
    pub band: f64,
    pub sizes: Vec<usize>,
    pub seed: u64,
    pub properties: Vec<PropertyCheck>,
    pub pass: bool,
    pub evidence_only: bool,
}

fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(0.5) {
                g.link(i, j);
            }
        }
    }
    if g.size() == n * (n - 1) / 2 {
        g.unlink(0, 1);
    }
    Ok(g)
}

/// Random part sizes, each at least `⌈cn⌉`, summing to `n`.
fn random_parts(n: usize, parts: usize, c: f64, rng: &mut ChaCha8Rng) -> Result<Vec<usize>> {
    let floor = ((c * n as f64) - 1e-9).ceil().max(1.0) as usize;
    if floor * parts > n {
        return Err(Error::domain(format!(
            "{parts} parts of size >= {floor} do not fit in {n} vertices"
        )));
    }
    let mut sizes = vec![floor; parts];
    for _ in 0..n - floor * parts {
        let i = rng.gen_range(0..parts);
        sizes[i] += 1;
    }
    sizes.sort_unstable();
    Ok(sizes)
}

fn diff(spec: &ParameterSpec, after: &Graph, before: &Graph) -> Result<f64> {
    Ok(evaluate(spec, after)?.sub(&evaluate(spec, before)?).to_f64())
}

fn judge(property: &'static str, theta: bool, exponent: f64, band: f64, samples: Vec<Sample>) -> PropertyCheck {
    let bound = if theta { "Theta" } else { "O" };
    let mut sizes: Vec<usize> = samples.iter().map(|s| s.n).collect();
    sizes.dedup();
    let (fitted, pass) = if theta {
        let values: Vec<f64> = samples.iter().map(|s| s.normalized).collect();
        if values.iter().any(|&v| !(v > 0.0)) {
            (0.0, false)
        } else {
            let c = (values.iter().map(|v| v.ln()).sum::<f64>() / values.len() as f64).exp();
            (c, values.iter().all(|&v| v >= c / band && v <= c * band))
        }
    } else {
        let maxima: Vec<f64> = sizes
            .iter()
            .map(|&n| {
                samples
                    .iter()
                    .filter(|s| s.n == n)
                    .map(|s| s.normalized.abs())
                    .fold(0.0, f64::max)
            })
            .collect();
        let positive: Vec<f64> = maxima.iter().copied().filter(|&m| m > 0.0).collect();
        if positive.is_empty() {
            (0.0, true)
        } else {
            let c = (positive.iter().map(|v| v.ln()).sum::<f64>() / positive.len() as f64).exp();
            (c, maxima.iter().all(|&m| m <= c * band))
        }
    };
    let ratio = |v: f64| if fitted > 0.0 { v / fitted } else { 0.0 };
    let min_ratio = samples.iter().map(|s| ratio(s.normalized)).fold(f64::INFINITY, f64::min);
    let max_ratio = samples.iter().map(|s| ratio(s.normalized)).fold(f64::NEG_INFINITY, f64::max);
    PropertyCheck {
        property,
        bound,
        exponent,
        fitted_constant: fitted,
        min_ratio: if samples.is_empty() { 0.0 } else { min_ratio },
        max_ratio: if samples.is_empty() { 0.0 } else { max_ratio },
        pass,
        samples,
    }
}

/// Samples the four balancedness conditions for `spec` with exponent `a`
/// and part count `k - 1`, across the given sizes.
pub fn check_balanced(
    spec: &ParameterSpec,
    a: f64,
    k: usize,
    sizes: &[usize],
    opts: &BalanceOptions,
) -> Result<BalanceReport> {
    spec.validate()?;
    if sizes.len() < 3 {
        return Err(Error::domain("at least three sizes are needed to judge a trend"));
    }
    if k < 2 {
        return Err(Error::domain("k must be at least 2"));
    }
    if let Some(&n) = sizes.iter().find(|&&n| n < 2 || n >= MAX_VERTICES) {
        return Err(Error::Capacity(format!("size {n} outside 2..{MAX_VERTICES}")));
    }
    let parts = k - 1;
    let c = opts.c.unwrap_or(0.75 / parts as f64);
    if !(c > 0.0 && c <= 1.0 / parts as f64) {
        return Err(Error::domain(format!("c must lie in (0, 1/(k-1)], got {c}")));
    }
    if !(opts.band >= 1.0) {
        return Err(Error::domain("band must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut pa, mut pb, mut pce, mut pcv, mut pd) = (vec![], vec![], vec![], vec![], vec![]);
    for &n in sizes {
        let nf = n as f64;
        let (na, na1) = (nf.powf(a), nf.powf(a + 1.0));
        for _ in 0..opts.samples_per_size {
            // (a) and (b) on arbitrary graphs
            let g = random_graph(n, &mut rng)?;
            let non_edges = g.complement().edges();
            let &(u, v) = non_edges.choose(&mut rng).expect("random graph keeps a non-edge");
            let inc = diff(spec, &g.add_edge(u, v)?, &g)?;
            pa.push(Sample {
                n,
                base: g.to_graph6(),
                edit: format!("add {u}-{v}"),
                increment: inc,
                normalized: inc / na,
            });
            let w = rng.gen_range(0..n);
            let inc = diff(spec, &g.duplicate_vertex(w)?, &g)?;
            pb.push(Sample {
                n,
                base: g.to_graph6(),
                edit: format!("duplicate {w}"),
                increment: inc,
                normalized: inc / na1,
            });

            // (c) and (d) on complete (k-1)-partite graphs with large parts
            let sizes_here = random_parts(n, parts, c, &mut rng)?;
            let spec_mp = MultipartiteSpec::new(sizes_here.clone())?;
            let t = complete_multipartite(&spec_mp)?;
            let ranges = spec_mp.ranges();
            let roomy: Vec<_> = ranges.iter().filter(|r| r.len() >= 2).collect();
            if let Some(r) = roomy.choose(&mut rng) {
                let mut inside: Vec<usize> = (*r).clone().collect();
                inside.shuffle(&mut rng);
                let (x, y) = (inside[0].min(inside[1]), inside[0].max(inside[1]));
                let inc = diff(spec, &t.add_edge(x, y)?, &t)?;
                pce.push(Sample {
                    n,
                    base: t.to_graph6(),
                    edit: format!("add {x}-{y}"),
                    increment: inc,
                    normalized: inc / na,
                });
            }
            let w = rng.gen_range(0..n);
            let inc = diff(spec, &t.duplicate_vertex(w)?, &t)?;
            pcv.push(Sample {
                n,
                base: t.to_graph6(),
                edit: format!("duplicate {w}"),
                increment: inc,
                normalized: inc / na1,
            });
            let mut edges = t.edges();
            if !edges.is_empty() {
                edges.shuffle(&mut rng);
                let x = rng.gen_range(1..=n.min(edges.len()));
                let mut h = t.clone();
                for &(p, q) in &edges[..x] {
                    h.unlink(p, q);
                }
                let dec = -diff(spec, &h, &t)?;
                pd.push(Sample {
                    n,
                    base: t.to_graph6(),
                    edit: format!("delete {x} edges"),
                    increment: -dec,
                    normalized: dec / (x as f64 * na),
                });
            }
        }
    }
    let band = opts.band;
    let mut properties = vec![
        judge("a", false, a, band, pa),
        judge("b", false, a + 1.0, band, pb),
        judge("c:edge", true, a, band, pce),
        judge("c:vertex", true, a + 1.0, band, pcv),
    ];
    if !pd.is_empty() {
        properties.push(judge("d", true, a, band, pd));
    }
    let pass = properties.iter().all(|p| p.pass);
    Ok(BalanceReport {
        spec: spec.clone(),
        a,
        k,
        c,
        band,
        sizes: sizes.to_vec(),
        seed: opts.seed,
        properties,
        pass,
        evidence_only: true,
    })
}
