//! Exhaustive isomorph-free searches over small graphs.
//!
//! Graphs are generated by canonical augmentation: every class on `k + 1`
//! vertices is produced from exactly one class on `k` vertices, namely the
//! one obtained by deleting the vertex that the canonical labelling puts
//! last. A subgraph-closed predicate can therefore discard a class and its
//! whole subtree at once.

mod chi;
mod lemma;

pub use chi::{abstract_chi, edge_critical_check, sigma_partition, ChiBound, ChiInterval, EdgeCriticalReport, SigmaReport};
pub use lemma::{verify_rainbow_lemma, RainbowLemmaReport};

use std::cmp::Ordering;
use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, canonical_labeling, same_orbit};
use crate::constructions::MultipartiteSpec;
use crate::embed::{automorphism_count, contains_subgraph, count_copies};
use crate::error::{Error, Result};
use crate::graph::{bit, Graph, VertexSet};
use crate::parameters::{evaluate, ParameterSpec, Value};
use crate::structures::PartitionOracle;

/// Largest order generated internally.
pub const ENUMERATION_MAX_VERTICES: usize = 10;
/// Largest order accepted by [`stability_distance`].
pub const STABILITY_MAX_VERTICES: usize = 12;
/// Largest order accepted by [`count_labeled_free`].
pub const LABELED_COUNT_MAX_VERTICES: usize = 7;
/// Floating-point values this close count as ties.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Search settings shared by the exhaustive operations.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SearchOptions {
    pub workers: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { workers: 1, seed: 0 }
    }
}

pub(crate) fn with_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Err(Error::domain("at least one worker is required"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Invariant(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(job))
}

/// Canonical representatives of all one-vertex extensions of `parent`
/// whose canonical parent is `parent`.
fn children(parent: &Graph) -> Result<Vec<Graph>> {
    let k = parent.order();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0..bit(k) {
        let child = parent.with_vertex(mask)?;
        let labeling = canonical_labeling(&child);
        let last = labeling.order[k];
        if last != k && !same_orbit(&child, k, last) {
            continue;
        }
        if seen.insert(labeling.graph.clone()) {
            out.push(labeling.graph);
        }
    }
    Ok(out)
}

/// Output of [`enumerate_graphs`].
#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Canonical representatives, sorted.
    pub graphs: Vec<Graph>,
    /// Classes generated across all levels, kept or not.
    pub classes_searched: u64,
    /// Classes rejected by the predicate (their subtrees are never built).
    pub pruned: u64,
}

/// One canonical representative per isomorphism class of `n`-vertex graphs
/// satisfying `keep`. `keep` must be closed under deleting vertices (it is
/// applied at every level).
pub fn enumerate_graphs<P>(n: usize, keep: P, workers: usize) -> Result<Enumeration>
where
    P: Fn(&Graph) -> Result<bool> + Sync,
{
    if n > ENUMERATION_MAX_VERTICES {
        return Err(Error::size(format!(
            "enumeration is limited to {ENUMERATION_MAX_VERTICES} vertices; supply a graph stream for n = {n}"
        )));
    }
    with_pool(workers, || {
        let root = Graph::empty(0)?;
        let mut stats = Enumeration {
            graphs: Vec::new(),
            classes_searched: 1,
            pruned: 0,
        };
        let mut level = if keep(&root)? {
            vec![root]
        } else {
            stats.pruned = 1;
            Vec::new()
        };
        for _ in 0..n {
            let batches: Vec<(Vec<Graph>, u64, u64)> = level
                .par_iter()
                .map(|p| -> Result<_> {
                    let kids = children(p)?;
                    let generated = kids.len() as u64;
                    let mut kept = Vec::with_capacity(kids.len());
                    for c in kids {
                        if keep(&c)? {
                            kept.push(c);
                        }
                    }
                    let dropped = generated - kept.len() as u64;
                    Ok((kept, generated, dropped))
                })
                .collect::<Result<_>>()?;
            level = Vec::new();
            for (kept, generated, dropped) in batches {
                level.extend(kept);
                stats.classes_searched += generated;
                stats.pruned += dropped;
            }
            level.sort_unstable();
        }
        stats.graphs = level;
        Ok(stats)
    })?
}

/// Every isomorphism class on `n` vertices.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(enumerate_graphs(n, |_| Ok(true), 1)?.graphs)
}

/// Exact value of `max { h(G) : G ∈ A, |V(G)| = n }` with all maximisers.
#[derive(Clone, Debug, Serialize)]
pub struct ExtremalReport {
    pub n: usize,
    pub oracle: String,
    pub spec: ParameterSpec,
    /// `None` when no `n`-vertex graph belongs to the class.
    pub value: Option<Value>,
    /// Canonical graph6 of every maximiser, sorted.
    pub witnesses: Vec<String>,
    pub classes_searched: u64,
    pub members: u64,
    pub pruned: u64,
    pub wall_ms: u64,
    pub seed: u64,
}

impl ExtremalReport {
    /// Assembles a report, re-checking that every witness is a member and
    /// attains `value`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n: usize,
        oracle: &PartitionOracle,
        spec: &ParameterSpec,
        value: Option<Value>,
        witnesses: &[Graph],
        classes_searched: u64,
        members: u64,
        pruned: u64,
        wall_ms: u64,
        seed: u64,
    ) -> Result<Self> {
        if value.is_none() != witnesses.is_empty() {
            return Err(Error::Invariant("a value needs at least one witness".into()));
        }
        for w in witnesses {
            if w.order() != n || oracle.membership(w)?.is_none() {
                return Err(Error::Invariant(format!("witness {w} is not an {n}-vertex member")));
            }
            let v = evaluate(spec, w)?;
            if v.compare(value.as_ref().expect("checked above"), TIE_TOLERANCE) != Ordering::Equal {
                return Err(Error::Invariant(format!("witness {w} evaluates to {v}, not the maximum")));
            }
        }
        let mut witnesses: Vec<String> = witnesses.iter().map(|w| canonical_form(w).to_graph6()).collect();
        witnesses.sort();
        witnesses.dedup();
        Ok(ExtremalReport {
            n,
            oracle: oracle.description().to_string(),
            spec: spec.clone(),
            value,
            witnesses,
            classes_searched,
            members,
            pruned,
            wall_ms,
            seed,
        })
    }
}

/// Members of `A` on `n` vertices: enumerated internally, or taken from
/// `graphs` (deduplicated up to isomorphism) when given.
fn members(
    n: usize,
    oracle: &PartitionOracle,
    graphs: Option<&[Graph]>,
    workers: usize,
) -> Result<(Vec<Graph>, u64, u64)> {
    match graphs {
        Some(list) => {
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for g in list {
                if g.order() != n {
                    return Err(Error::domain(format!("supplied graph {g} does not have {n} vertices")));
                }
                let c = canonical_form(g);
                if seen.insert(c.clone()) && oracle.contains(&c)? {
                    out.push(c);
                }
            }
            let searched = seen.len() as u64;
            Ok((out, searched, 0))
        }
        None if oracle.is_monotone() => {
            let e = enumerate_graphs(n, |g| oracle.contains(g), workers)?;
            Ok((e.graphs, e.classes_searched, e.pruned))
        }
        None => {
            let e = enumerate_graphs(n, |_| Ok(true), workers)?;
            let keep: Vec<bool> = with_pool(workers, || {
                e.graphs.par_iter().map(|g| oracle.contains(g)).collect::<Result<Vec<_>>>()
            })??;
            let out = e.graphs.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect();
            Ok((out, e.classes_searched, 0))
        }
    }
}

/// `g(n, (A, h))` with every maximiser up to isomorphism.
pub fn extremal(
    n: usize,
    oracle: &PartitionOracle,
    spec: &ParameterSpec,
    graphs: Option<&[Graph]>,
    opts: &SearchOptions,
) -> Result<ExtremalReport> {
    spec.validate()?;
    let start = Instant::now();
    let (members, searched, pruned) = members(n, oracle, graphs, opts.workers)?;
    let values: Vec<Value> = with_pool(opts.workers, || {
        members.par_iter().map(|g| evaluate(spec, g)).collect::<Result<Vec<_>>>()
    })??;
    let best = values
        .iter()
        .max_by(|a, b| a.compare(b, 0.0))
        .cloned();
    let witnesses: Vec<Graph> = match &best {
        Some(b) => members
            .iter()
            .zip(&values)
            .filter(|(_, v)| v.compare(b, TIE_TOLERANCE) == Ordering::Equal)
            .map(|(g, _)| g.clone())
            .collect(),
        None => Vec::new(),
    };
    ExtremalReport::new(
        n,
        oracle,
        spec,
        best,
        &witnesses,
        searched,
        members.len() as u64,
        pruned,
        start.elapsed().as_millis() as u64,
        opts.seed,
    )
}

/// Fewest copies of a pattern among graphs meeting a parameter threshold.
#[derive(Clone, Debug, Serialize)]
pub struct SupersatReport {
    pub n: usize,
    pub pattern: String,
    pub spec: ParameterSpec,
    pub threshold: Value,
    /// `None` when no `n`-vertex graph reaches the threshold.
    pub min_copies: Option<u64>,
    /// Canonical graph6 of the graphs attaining the minimum, sorted.
    pub witnesses: Vec<String>,
    /// Isomorphism classes meeting the threshold.
    pub candidates: u64,
}

/// `min { copies of F in G : |V(G)| = n, h(G) >= threshold }`.
pub fn supersaturation_min(
    n: usize,
    pattern: &Graph,
    spec: &ParameterSpec,
    threshold: &Value,
    workers: usize,
) -> Result<SupersatReport> {
    spec.validate()?;
    let all = enumerate_graphs(n, |_| Ok(true), workers)?.graphs;
    let scored: Vec<Option<u64>> = with_pool(workers, || {
        all.par_iter()
            .map(|g| -> Result<Option<u64>> {
                let v = evaluate(spec, g)?;
                Ok((v.compare(threshold, TIE_TOLERANCE) != Ordering::Less).then(|| count_copies(pattern, g)))
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let min_copies = scored.iter().flatten().copied().min();
    let witnesses = all
        .iter()
        .zip(&scored)
        .filter(|(_, c)| c.is_some() && **c == min_copies)
        .map(|(g, _)| g.to_graph6())
        .collect();
    Ok(SupersatReport {
        n,
        pattern: pattern.to_graph6(),
        spec: spec.clone(),
        threshold: threshold.clone(),
        min_copies,
        witnesses,
        candidates: scored.iter().flatten().count() as u64,
    })
}

/// Closest complete multipartite graph with at most `k1` parts.
#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub graph: String,
    pub k1: usize,
    /// Edges added plus edges deleted.
    pub distance: usize,
    pub blocks: Vec<VertexSet>,
    pub spec: MultipartiteSpec,
}

/// Minimum of `|E(G) Δ E(T)|` over complete multipartite `T` on `V(G)`
/// with at most `k1` nonempty parts.
pub fn stability_distance(g: &Graph, k1: usize) -> Result<StabilityReport> {
    let n = g.order();
    if n == 0 {
        return Err(Error::domain("stability distance needs at least one vertex"));
    }
    if k1 == 0 {
        return Err(Error::domain("at least one part is required"));
    }
    if n > STABILITY_MAX_VERTICES {
        return Err(Error::size(format!("stability distance is limited to {STABILITY_MAX_VERTICES} vertices")));
    }
    struct State<'a> {
        g: &'a Graph,
        k1: usize,
        blocks: Vec<u64>,
        best: usize,
        best_blocks: Vec<u64>,
    }
    fn go(s: &mut State<'_>, v: usize, cost: usize) {
        if cost >= s.best {
            return;
        }
        if v == s.g.order() {
            s.best = cost;
            s.best_blocks = s.blocks.clone();
            return;
        }
        let nbrs = s.g.neighbors(v);
        let placed = s.blocks.iter().fold(0u64, |a, b| a | b);
        // restricted growth: a new block only after all current ones
        let open = s.blocks.len();
        for b in 0..(open + 1).min(s.k1) {
            let same = if b < open { s.blocks[b] } else { 0 };
            // edges inside the block are deleted, non-edges across are added
            let delta = (nbrs & same).count_ones() + (!nbrs & placed & !same).count_ones();
            if b == open {
                s.blocks.push(0);
            }
            s.blocks[b] |= bit(v);
            go(s, v + 1, cost + delta as usize);
            s.blocks[b] &= !bit(v);
            if b == open {
                s.blocks.pop();
            }
        }
    }
    let mut s = State {
        g,
        k1,
        blocks: Vec::new(),
        best: usize::MAX,
        best_blocks: Vec::new(),
    };
    go(&mut s, 0, 0);
    let mut parts: Vec<usize> = s.best_blocks.iter().map(|b| b.count_ones() as usize).collect();
    parts.sort_unstable();
    Ok(StabilityReport {
        graph: g.to_graph6(),
        k1,
        distance: s.best,
        blocks: s.best_blocks.iter().map(|&b| VertexSet(b)).collect(),
        spec: MultipartiteSpec::new(parts)?,
    })
}

/// Number of labelled `F`-free graphs on `{0, .., n-1}`.
pub fn count_labeled_free(n: usize, pattern: &Graph, workers: usize) -> Result<u128> {
    if n > LABELED_COUNT_MAX_VERTICES {
        return Err(Error::size(format!("labelled counting is limited to {LABELED_COUNT_MAX_VERTICES} vertices")));
    }
    let free = enumerate_graphs(n, |g| Ok(contains_subgraph(pattern, g, false).is_none()), workers)?;
    let factorial: u128 = (1..=n as u128).product();
    Ok(free
        .graphs
        .iter()
        .map(|g| factorial / automorphism_count(g) as u128)
        .sum())
}
