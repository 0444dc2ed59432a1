//! Named extremal graphs: complete multipartite graphs, Turán graphs and
//! their variants, plus a few small test graphs.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

/// Part sizes of a complete multipartite graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MultipartiteSpec {
    parts: Vec<usize>,
}

impl MultipartiteSpec {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::domain("a multipartite spec needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(Error::domain("parts must be nonempty"));
        }
        let total: usize = parts.iter().sum();
        if total > MAX_VERTICES {
            return Err(Error::Capacity(format!("{total} vertices in {parts:?}")));
        }
        Ok(MultipartiteSpec { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn order(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn smallest_part(&self) -> usize {
        *self.parts.iter().min().expect("nonempty")
    }

    /// Vertex ranges of the parts, in labelling order.
    pub fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.parts
            .iter()
            .map(|&s| {
                let r = start..start + s;
                start += s;
                r
            })
            .collect()
    }

    /// Edge count `C(n,2) - Σ C(s_i,2)`.
    pub fn edge_count(&self) -> usize {
        let n = self.order();
        n * n.saturating_sub(1) / 2 - self.parts.iter().map(|&s| s * (s - 1) / 2).sum::<usize>()
    }
}

impl fmt::Display for MultipartiteSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "K[{}]", s.join(","))
    }
}

/// Part sizes of `T(n, k)`, smallest first.
pub fn turan_parts(n: usize, k: usize) -> Result<Vec<usize>> {
    if k == 0 {
        return Err(Error::domain("T(n,k) needs k >= 1"));
    }
    if n > MAX_VERTICES {
        return Err(Error::Capacity(format!("T({n},{k})")));
    }
    let (q, r) = (n / k, n % k);
    Ok((0..k).map(|i| if i < k - r { q } else { q + 1 }).filter(|&s| s > 0).collect())
}

/// Complete multipartite graph; parts occupy consecutive vertex ranges.
pub fn complete_multipartite(spec: &MultipartiteSpec) -> Result<Graph> {
    let n = spec.order();
    let mut g = Graph::empty(n)?;
    let ranges = spec.ranges();
    for (i, a) in ranges.iter().enumerate() {
        for b in &ranges[i + 1..] {
            for u in a.clone() {
                for v in b.clone() {
                    g.link(u, v);
                }
            }
        }
    }
    Ok(g)
}

/// Turán graph `T(n,k)`: complete `k`-partite with parts of size `⌊n/k⌋` or
/// `⌈n/k⌉`. When `k >= n` this is `K_n`.
pub fn turan(n: usize, k: usize) -> Result<Graph> {
    let parts = turan_parts(n, k)?;
    if parts.is_empty() {
        return Graph::empty(0);
    }
    complete_multipartite(&MultipartiteSpec::new(parts)?)
}

/// `K_k(n) = T(nk, k)`.
pub fn balanced_blowup(k: usize, n: usize) -> Result<Graph> {
    if k * n > MAX_VERTICES {
        return Err(Error::Capacity(format!("K_{k}({n}) has {} vertices", k * n)));
    }
    turan(n * k, k)
}

/// `T(n, k1, t)`: `t` universal vertices (labelled last) over `T(n - t, k1)`.
pub fn turan_with_dominating(n: usize, k1: usize, t: usize) -> Result<Graph> {
    if t >= n {
        return Err(Error::domain(format!("need t < n, got t = {t}, n = {n}")));
    }
    if k1 == 0 {
        return Err(Error::domain("need at least one part"));
    }
    let base = turan(n - t, k1)?;
    let mut g = Graph::empty(n)?;
    for (u, v) in base.edges() {
        g.link(u, v);
    }
    for d in n - t..n {
        for v in 0..n {
            if v != d {
                g.link(v, d);
            }
        }
    }
    Ok(g)
}

/// `T⁺(n, k1)`: `T(n, k1)` plus the edge between the first two vertices of
/// part 0 (a smallest part).
pub fn turan_plus(n: usize, k1: usize) -> Result<Graph> {
    let parts = turan_parts(n, k1)?;
    match parts.first() {
        Some(&s) if s >= 2 && parts.len() == k1 => {}
        _ => {
            return Err(Error::domain(format!(
                "T({n},{k1}) has a part of size < 2; no edge fits inside it"
            )))
        }
    }
    turan(n, k1)?.add_edge(0, 1)
}

pub fn complete(n: usize) -> Result<Graph> {
    Ok(Graph::empty(n)?.complement())
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::domain("cycles need at least 3 vertices"));
    }
    let mut g = Graph::empty(n)?;
    for i in 0..n {
        g.link(i, (i + 1) % n);
    }
    Ok(g)
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for i in 1..n {
        g.link(i - 1, i);
    }
    Ok(g)
}

/// `K_{1,leaves}` with the centre at vertex 0.
pub fn star(leaves: usize) -> Result<Graph> {
    let mut g = Graph::empty(leaves + 1)?;
    for v in 1..=leaves {
        g.link(0, v);
    }
    Ok(g)
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    let edges: Vec<_> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
    Graph::from_edges(10, &edges).expect("petersen graph is valid")
}

/// A named construction as written on the command line:
/// `turan:n,k`, `kpartite:a,b,..`, `turan+:n,k`, `turan_dom:n,k,t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Turan { n: usize, k: usize },
    Multipartite(MultipartiteSpec),
    TuranPlus { n: usize, k: usize },
    TuranDominating { n: usize, k: usize, t: usize },
}

impl Construction {
    pub fn build(&self) -> Result<Graph> {
        match self {
            Construction::Turan { n, k } => turan(*n, *k),
            Construction::Multipartite(spec) => complete_multipartite(spec),
            Construction::TuranPlus { n, k } => turan_plus(*n, *k),
            Construction::TuranDominating { n, k, t } => turan_with_dominating(*n, *k, *t),
        }
    }
}

fn parse_numbers(s: &str, what: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::syntax(format!("bad number {x:?} in {what}")))
        })
        .collect()
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| Error::syntax(format!("construction {s:?} lacks ':'")))?;
        let nums = parse_numbers(args, s)?;
        let arity = |k: usize| -> Result<()> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::syntax(format!("{name} takes {k} numbers, got {s:?}")))
            }
        };
        match name {
            "turan" => {
                arity(2)?;
                Ok(Construction::Turan { n: nums[0], k: nums[1] })
            }
            "turan+" => {
                arity(2)?;
                Ok(Construction::TuranPlus { n: nums[0], k: nums[1] })
            }
            "turan_dom" => {
                arity(3)?;
                Ok(Construction::TuranDominating {
                    n: nums[0],
                    k: nums[1],
                    t: nums[2],
                })
            }
            "kpartite" => Ok(Construction::Multipartite(MultipartiteSpec::new(nums)?)),
            _ => Err(Error::syntax(format!("unknown construction {name:?}"))),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Turan { n, k } => write!(f, "turan:{n},{k}"),
            Construction::TuranPlus { n, k } => write!(f, "turan+:{n},{k}"),
            Construction::TuranDominating { n, k, t } => write!(f, "turan_dom:{n},{k},{t}"),
            Construction::Multipartite(spec) => {
                let s: Vec<String> = spec.parts().iter().map(|p| p.to_string()).collect();
                write!(f, "kpartite:{}", s.join(","))
            }
        }
    }
}
