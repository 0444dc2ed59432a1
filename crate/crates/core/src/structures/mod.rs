//! Graphs carrying one extra structure (an edge order, a vertex order, a
//! cyclic vertex order or an edge colouring), structured containment,
//! restriction, copy counting and rainbow detection.
//!
//! Containment is subgraph-style: an embedding maps pattern edges to host
//! edges, and the structure restricted to the image must agree with the
//! pattern's. Orders are compared relatively, so only the induced order on
//! the image matters. Cyclic orders are compared up to rotation only.

mod oracle;

pub use oracle::{parse_pattern_file, OracleKind, PartitionOracle, Witness, DEFAULT_NODE_BUDGET};

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::embed::{Matcher, UNMAPPED};
use crate::error::{Error, Result};
use crate::graph::{Edge, Embedding, Graph, VertexSet};

/// Colour of every edge, keyed by `(u, v)` with `u < v`.
pub type EdgeColoring = BTreeMap<Edge, u32>;

/// Pattern size limit for [`count_structured_copies`].
pub const COPY_PATTERN_MAX_VERTICES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureKind {
    EdgeOrder,
    VertexOrder,
    CyclicOrder,
    EdgeColoring,
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureKind::EdgeOrder => "edgeorder",
            StructureKind::VertexOrder => "vertexorder",
            StructureKind::CyclicOrder => "cyclic",
            StructureKind::EdgeColoring => "coloring",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtraStructure {
    /// Edges listed by increasing rank.
    EdgeOrder(Vec<Edge>),
    /// Vertices listed by increasing position.
    VertexOrder(Vec<usize>),
    /// Vertices listed around the circle, starting anywhere.
    CyclicOrder(Vec<usize>),
    EdgeColoring(EdgeColoring),
}

fn normalize(e: Edge) -> Edge {
    (e.0.min(e.1), e.0.max(e.1))
}

impl ExtraStructure {
    pub fn kind(&self) -> StructureKind {
        match self {
            ExtraStructure::EdgeOrder(_) => StructureKind::EdgeOrder,
            ExtraStructure::VertexOrder(_) => StructureKind::VertexOrder,
            ExtraStructure::CyclicOrder(_) => StructureKind::CyclicOrder,
            ExtraStructure::EdgeColoring(_) => StructureKind::EdgeColoring,
        }
    }

    /// The same structure transported along the vertex map `f`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> ExtraStructure {
        let edge = |&(u, v): &Edge| normalize((f(u), f(v)));
        match self {
            ExtraStructure::EdgeOrder(es) => ExtraStructure::EdgeOrder(es.iter().map(edge).collect()),
            ExtraStructure::VertexOrder(vs) => ExtraStructure::VertexOrder(vs.iter().map(|&v| f(v)).collect()),
            ExtraStructure::CyclicOrder(vs) => ExtraStructure::CyclicOrder(vs.iter().map(|&v| f(v)).collect()),
            ExtraStructure::EdgeColoring(c) => {
                ExtraStructure::EdgeColoring(c.iter().map(|(e, &col)| (edge(e), col)).collect())
            }
        }
    }

    /// Line used in pattern files, e.g. `edgeorder: 0-1,1-2`.
    pub fn to_line(&self) -> String {
        let join = |vs: &[usize]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        match self {
            ExtraStructure::EdgeOrder(es) => format!(
                "edgeorder: {}",
                es.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(",")
            ),
            ExtraStructure::VertexOrder(vs) => format!("vertexorder: {}", join(vs)),
            ExtraStructure::CyclicOrder(vs) => format!("cyclic: {}", join(vs)),
            ExtraStructure::EdgeColoring(c) => format!(
                "coloring: {}",
                c.iter().map(|((u, v), col)| format!("{u}-{v}:{col}")).collect::<Vec<_>>().join(",")
            ),
        }
    }
}

impl Serialize for ExtraStructure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Triples<'a>(&'a EdgeColoring);
        impl Serialize for Triples<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for (&(u, v), &c) in self.0 {
                    seq.serialize_element(&(u, v, c))?;
                }
                seq.end()
            }
        }
        let mut map = s.serialize_map(Some(1))?;
        let key = self.kind().to_string();
        match self {
            ExtraStructure::EdgeOrder(es) => map.serialize_entry(&key, es)?,
            ExtraStructure::VertexOrder(vs) | ExtraStructure::CyclicOrder(vs) => map.serialize_entry(&key, vs)?,
            ExtraStructure::EdgeColoring(c) => map.serialize_entry(&key, &Triples(c))?,
        }
        map.end()
    }
}

/// A graph together with one extra structure whose domain matches it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructuredGraph {
    graph: Graph,
    structure: ExtraStructure,
}

fn check_permutation(n: usize, vs: &[usize], what: &str) -> Result<()> {
    let mut seen = vec![false; n];
    if vs.len() != n {
        return Err(Error::domain(format!("{what} lists {} vertices, graph has {n}", vs.len())));
    }
    for &v in vs {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::domain(format!("{what} is not a permutation of 0..{n}")));
        }
    }
    Ok(())
}

fn check_edge_domain<'a>(g: &Graph, edges: impl Iterator<Item = &'a Edge>, what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for &(u, v) in edges {
        if u >= v || !g.has_edge(u, v) {
            return Err(Error::domain(format!("{what} mentions {u}-{v}, which is not an edge")));
        }
        if !seen.insert((u, v)) {
            return Err(Error::domain(format!("{what} repeats edge {u}-{v}")));
        }
    }
    if seen.len() != g.size() {
        return Err(Error::domain(format!("{what} covers {} of {} edges", seen.len(), g.size())));
    }
    Ok(())
}

impl StructuredGraph {
    pub fn new(graph: Graph, structure: ExtraStructure) -> Result<Self> {
        let structure = match structure {
            ExtraStructure::EdgeOrder(es) => {
                let es: Vec<Edge> = es.into_iter().map(normalize).collect();
                check_edge_domain(&graph, es.iter(), "edge order")?;
                ExtraStructure::EdgeOrder(es)
            }
            ExtraStructure::VertexOrder(vs) => {
                check_permutation(graph.order(), &vs, "vertex order")?;
                ExtraStructure::VertexOrder(vs)
            }
            ExtraStructure::CyclicOrder(vs) => {
                check_permutation(graph.order(), &vs, "cyclic order")?;
                ExtraStructure::CyclicOrder(vs)
            }
            ExtraStructure::EdgeColoring(c) => {
                let c: EdgeColoring = c.into_iter().map(|(e, col)| (normalize(e), col)).collect();
                check_edge_domain(&graph, c.keys(), "edge colouring")?;
                ExtraStructure::EdgeColoring(c)
            }
        };
        Ok(StructuredGraph { graph, structure })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn structure(&self) -> &ExtraStructure {
        &self.structure
    }

    pub fn kind(&self) -> StructureKind {
        self.structure.kind()
    }

    /// Transport along the permutation `f` (vertex `v` becomes `f(v)`).
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> StructuredGraph {
        let n = self.graph.order();
        let mut inverse = vec![0; n];
        for v in 0..n {
            inverse[f(v)] = v;
        }
        StructuredGraph {
            graph: self.graph.permuted(&inverse),
            structure: self.structure.relabel(f),
        }
    }

    /// Pattern-file block: graph6 line then structure line.
    pub fn to_pattern_text(&self) -> String {
        format!("{}\n{}", self.graph.to_graph6(), self.structure.to_line())
    }
}

impl Serialize for StructuredGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("graph", &self.graph.to_graph6())?;
        map.serialize_entry("structure", &self.structure)?;
        map.end()
    }
}

/// Structure in lookup-table form for the matcher.
pub(crate) enum Compiled {
    /// `table[u * n + v]` holds the label plus one, or 0 for non-edges.
    /// Order labels compare by `<`, colour labels only by equality.
    Edges { n: usize, table: Vec<u32>, ordered: bool },
    Vertices { pos: Vec<usize>, seq: Vec<usize>, cyclic: bool },
}

impl Compiled {
    pub(crate) fn edge_table(n: usize, labels: impl Iterator<Item = (Edge, u32)>, ordered: bool) -> Compiled {
        let mut table = vec![0u32; n * n];
        for ((u, v), l) in labels {
            table[u * n + v] = l + 1;
            table[v * n + u] = l + 1;
        }
        Compiled::Edges { n, table, ordered }
    }

    pub(crate) fn vertex_seq(seq: Vec<usize>, cyclic: bool) -> Compiled {
        let mut pos = vec![usize::MAX; seq.len()];
        for (i, &v) in seq.iter().enumerate() {
            pos[v] = i;
        }
        Compiled::Vertices { pos, seq, cyclic }
    }

    fn new(sg: &StructuredGraph) -> Compiled {
        let n = sg.graph.order();
        match &sg.structure {
            ExtraStructure::EdgeOrder(es) => Compiled::edge_table(n, es.iter().enumerate().map(|(i, &e)| (e, i as u32)), true),
            ExtraStructure::EdgeColoring(c) => Compiled::edge_table(n, c.iter().map(|(&e, &l)| (e, l)), false),
            ExtraStructure::VertexOrder(vs) => Compiled::vertex_seq(vs.clone(), false),
            ExtraStructure::CyclicOrder(vs) => Compiled::vertex_seq(vs.clone(), true),
        }
    }
}

fn relation(ordered: bool, a: u32, b: u32) -> std::cmp::Ordering {
    if ordered {
        a.cmp(&b)
    } else if a == b {
        std::cmp::Ordering::Equal
    } else {
        std::cmp::Ordering::Less
    }
}

/// Number of cyclic descents of `s`; a sequence of distinct values is a
/// rotation of a sorted one iff this is at most 1.
fn cyclic_descents(s: &[usize]) -> usize {
    (0..s.len()).filter(|&i| s[i] > s[(i + 1) % s.len()]).count()
}

/// Runs the matcher with the structure checks of `pc`/`hc` added to the
/// acceptance hook.
pub(crate) fn find_structured<V>(
    pattern: &Graph,
    pc: &Compiled,
    host: &Graph,
    hc: &Compiled,
    induced: bool,
    visit: &mut V,
) -> ControlFlow<()>
where
    V: FnMut(&[usize]) -> ControlFlow<()>,
{
    let pedges = pattern.edges();
    let mut scratch: Vec<usize> = Vec::with_capacity(pattern.order());
    let mut accept = |map: &[usize], u: usize| -> bool {
        match (pc, hc) {
            (
                Compiled::Edges { n: pn, table: pt, ordered },
                Compiled::Edges { n: hn, table: ht, .. },
            ) => {
                let label = |(a, b): Edge| (pt[a * pn + b], ht[map[a] * hn + map[b]]);
                for &e in pedges.iter().filter(|&&(a, b)| a == u || b == u) {
                    if map[e.0] == UNMAPPED || map[e.1] == UNMAPPED {
                        continue;
                    }
                    let (pe, he) = label(e);
                    for &f in &pedges {
                        if f == e || map[f.0] == UNMAPPED || map[f.1] == UNMAPPED {
                            continue;
                        }
                        let (pf, hf) = label(f);
                        if relation(*ordered, pe, pf) != relation(*ordered, he, hf) {
                            return false;
                        }
                    }
                }
                true
            }
            (
                Compiled::Vertices { pos: pp, seq, cyclic },
                Compiled::Vertices { pos: hp, .. },
            ) => {
                if *cyclic {
                    scratch.clear();
                    scratch.extend(seq.iter().filter(|&&v| map[v] != UNMAPPED).map(|&v| hp[map[v]]));
                    cyclic_descents(&scratch) <= 1
                } else {
                    (0..map.len())
                        .filter(|&w| w != u && map[w] != UNMAPPED)
                        .all(|w| (pp[u] < pp[w]) == (hp[map[u]] < hp[map[w]]))
                }
            }
            _ => false,
        }
    };
    Matcher::new(pattern, host, induced).run(&mut accept, visit)
}

fn same_kind(a: &StructuredGraph, b: &StructuredGraph) -> Result<()> {
    if a.kind() != b.kind() {
        return Err(Error::domain(format!("structure kinds differ: {} vs {}", a.kind(), b.kind())));
    }
    Ok(())
}

/// First structure-respecting embedding of `pattern` into `host`.
pub fn contains_structured(pattern: &StructuredGraph, host: &StructuredGraph) -> Result<Option<Embedding>> {
    same_kind(pattern, host)?;
    let mut found = None;
    let _ = find_structured(
        &pattern.graph,
        &Compiled::new(pattern),
        &host.graph,
        &Compiled::new(host),
        false,
        &mut |m| {
            found = Some(Embedding(m.to_vec()));
            ControlFlow::Break(())
        },
    );
    Ok(found)
}

/// Induced structured subgraph on `set`, vertices relabelled by increasing
/// index; ranks are compressed and cyclic sequences keep their circular
/// order.
pub fn restrict_structured(host: &StructuredGraph, set: VertexSet) -> Result<StructuredGraph> {
    let graph = host.graph.restriction(set)?;
    let mut new_index = vec![usize::MAX; host.graph.order()];
    for (i, v) in set.iter().enumerate() {
        new_index[v] = i;
    }
    let keep = |v: &usize| set.contains(*v);
    let keep_edge = |&(u, v): &Edge| set.contains(u) && set.contains(v);
    let structure = match &host.structure {
        ExtraStructure::EdgeOrder(es) => ExtraStructure::EdgeOrder(es.iter().copied().filter(keep_edge).collect()),
        ExtraStructure::VertexOrder(vs) => ExtraStructure::VertexOrder(vs.iter().copied().filter(keep).collect()),
        ExtraStructure::CyclicOrder(vs) => ExtraStructure::CyclicOrder(vs.iter().copied().filter(keep).collect()),
        ExtraStructure::EdgeColoring(c) => {
            ExtraStructure::EdgeColoring(c.iter().filter(|(e, _)| keep_edge(e)).map(|(&e, &l)| (e, l)).collect())
        }
    }
    .relabel(|v| new_index[v]);
    Ok(StructuredGraph { graph, structure })
}

/// Number of vertex sets `U` whose restriction is isomorphic to `pattern`
/// as a structured graph.
pub fn count_structured_copies(pattern: &StructuredGraph, host: &StructuredGraph) -> Result<u64> {
    same_kind(pattern, host)?;
    if pattern.graph.order() > COPY_PATTERN_MAX_VERTICES {
        return Err(Error::size(format!(
            "pattern has {} vertices, limit is {COPY_PATTERN_MAX_VERTICES}",
            pattern.graph.order()
        )));
    }
    let mut images = HashSet::new();
    let _ = find_structured(
        &pattern.graph,
        &Compiled::new(pattern),
        &host.graph,
        &Compiled::new(host),
        true,
        &mut |m| {
            images.insert(m.iter().fold(0u64, |acc, &x| acc | (1u64 << x)));
            ControlFlow::Continue(())
        },
    );
    Ok(images.len() as u64)
}

/// True iff edges sharing an endpoint always get different colours.
pub fn is_proper_edge_coloring(g: &Graph, coloring: &EdgeColoring) -> Result<bool> {
    check_edge_domain(g, coloring.keys(), "edge colouring")?;
    for v in 0..g.order() {
        let mut seen = HashSet::new();
        for u in crate::graph::Bits(g.neighbors(v)) {
            if !seen.insert(coloring[&normalize((u, v))]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Embeds `pattern` into the coloured edges of `host` with pairwise
/// distinct colours. `colors` is an edge table as in [`Compiled::Edges`];
/// `host` must contain only coloured edges.
pub(crate) fn find_rainbow(pattern: &Graph, host: &Graph, colors: &[u32]) -> Option<Vec<usize>> {
    let hn = host.order();
    let pedges = pattern.edges();
    let mut used: Vec<u32> = Vec::with_capacity(pedges.len());
    let mut accept = |map: &[usize], _u: usize| -> bool {
        used.clear();
        for &(a, b) in &pedges {
            if map[a] != UNMAPPED && map[b] != UNMAPPED {
                let c = colors[map[a] * hn + map[b]];
                if used.contains(&c) {
                    return false;
                }
                used.push(c);
            }
        }
        true
    };
    let mut found = None;
    let _ = Matcher::new(pattern, host, false).run(&mut accept, &mut |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// An embedding of `f` whose image edges carry pairwise distinct colours.
pub fn has_rainbow_copy(host: &Graph, coloring: &EdgeColoring, f: &Graph) -> Result<Option<Embedding>> {
    check_edge_domain(host, coloring.keys(), "edge colouring")?;
    let palette: HashSet<u32> = coloring.values().copied().collect();
    if palette.len() < f.size() {
        return Ok(None);
    }
    let table = match Compiled::edge_table(host.order(), coloring.iter().map(|(&e, &c)| (e, c)), false) {
        Compiled::Edges { table, .. } => table,
        Compiled::Vertices { .. } => unreachable!(),
    };
    Ok(find_rainbow(f, host, &table).map(Embedding))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, cycle, path, star};
    use proptest::prelude::*;

    fn eo(g: Graph, edges: &[Edge]) -> StructuredGraph {
        StructuredGraph::new(g, ExtraStructure::EdgeOrder(edges.to_vec())).unwrap()
    }

    fn monotone_p4() -> StructuredGraph {
        eo(path(4).unwrap(), &[(0, 1), (1, 2), (2, 3)])
    }

    fn c4_ranked(ranks: [u32; 4]) -> StructuredGraph {
        // edges of C_4 around the cycle: 0-1, 1-2, 2-3, 3-0
        let around = [(0, 1), (1, 2), (2, 3), (0, 3)];
        let mut by_rank: Vec<(u32, Edge)> = ranks.iter().copied().zip(around).collect();
        by_rank.sort();
        eo(cycle(4).unwrap(), &by_rank.iter().map(|&(_, e)| e).collect::<Vec<_>>())
    }

    /// Literal structured isomorphism by trying every bijection.
    fn brute_iso(a: &StructuredGraph, b: &StructuredGraph) -> bool {
        let n = a.graph().order();
        if n != b.graph().order() || a.graph().size() != b.graph().size() {
            return false;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let moved = a.relabel(|v| perm[v]);
            if moved.graph() == b.graph() && equivalent(moved.structure(), b.structure()) {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }

    fn equivalent(x: &ExtraStructure, y: &ExtraStructure) -> bool {
        match (x, y) {
            (ExtraStructure::CyclicOrder(a), ExtraStructure::CyclicOrder(b)) => {
                a.is_empty() && b.is_empty() || (0..a.len()).any(|r| (0..a.len()).all(|i| a[(i + r) % a.len()] == b[i]))
            }
            (ExtraStructure::EdgeColoring(a), ExtraStructure::EdgeColoring(b)) => {
                a.keys().eq(b.keys())
                    && a.iter().all(|(e, c)| a.iter().all(|(f, d)| (c == d) == (b[e] == b[f])))
            }
            _ => x == y,
        }
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return false;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    fn brute_count(pattern: &StructuredGraph, host: &StructuredGraph) -> u64 {
        let (k, n) = (pattern.graph().order(), host.graph().order());
        (0u64..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .filter(|&s| brute_iso(pattern, &restrict_structured(host, VertexSet(s)).unwrap()))
            .count() as u64
    }

    #[test]
    fn edge_order_containment_examples() {
        assert!(contains_structured(&monotone_p4(), &c4_ranked([1, 2, 3, 4])).unwrap().is_some());
        assert!(contains_structured(&monotone_p4(), &c4_ranked([1, 3, 2, 4])).unwrap().is_none());
    }

    #[test]
    fn vertex_order_and_cyclic_examples() {
        let k2 = StructuredGraph::new(complete(2).unwrap(), ExtraStructure::VertexOrder(vec![0, 1])).unwrap();
        let host = StructuredGraph::new(path(4).unwrap(), ExtraStructure::VertexOrder(vec![2, 0, 3, 1])).unwrap();
        assert!(contains_structured(&k2, &host).unwrap().is_some());
        // a cyclically ordered path a-b-c with a,b,c consecutive on the circle
        let p3 = StructuredGraph::new(path(3).unwrap(), ExtraStructure::CyclicOrder(vec![0, 1, 2])).unwrap();
        let rotated = StructuredGraph::new(path(3).unwrap(), ExtraStructure::CyclicOrder(vec![1, 2, 0])).unwrap();
        let reflected = StructuredGraph::new(path(3).unwrap(), ExtraStructure::CyclicOrder(vec![2, 1, 0])).unwrap();
        assert!(contains_structured(&p3, &rotated).unwrap().is_some());
        // P3 is symmetric, so the reflection is realised by the automorphism 0<->2
        assert!(contains_structured(&p3, &reflected).unwrap().is_some());
        let star3 = StructuredGraph::new(star(3).unwrap(), ExtraStructure::CyclicOrder(vec![0, 1, 2, 3])).unwrap();
        let k4 = StructuredGraph::new(complete(4).unwrap(), ExtraStructure::CyclicOrder(vec![3, 2, 1, 0])).unwrap();
        assert!(contains_structured(&star3, &k4).unwrap().is_some());
    }

    #[test]
    fn cyclic_is_rotation_only() {
        // a triangle with a pendant edge; b is the mirror image of a
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let a = StructuredGraph::new(g.clone(), ExtraStructure::CyclicOrder(vec![0, 3, 1, 2])).unwrap();
        let b = StructuredGraph::new(g.clone(), ExtraStructure::CyclicOrder(vec![0, 2, 1, 3])).unwrap();
        let c = StructuredGraph::new(g, ExtraStructure::CyclicOrder(vec![1, 2, 0, 3])).unwrap();
        assert!(contains_structured(&a, &b).unwrap().is_none());
        assert!(!brute_iso(&a, &b));
        assert!(contains_structured(&a, &c).unwrap().is_some());
        assert!(brute_iso(&a, &c));
    }

    #[test]
    fn kind_mismatch_and_bad_structures() {
        let k2 = StructuredGraph::new(complete(2).unwrap(), ExtraStructure::VertexOrder(vec![0, 1])).unwrap();
        assert!(contains_structured(&k2, &monotone_p4()).is_err());
        assert!(StructuredGraph::new(path(3).unwrap(), ExtraStructure::EdgeOrder(vec![(0, 1)])).is_err());
        assert!(StructuredGraph::new(path(3).unwrap(), ExtraStructure::EdgeOrder(vec![(0, 1), (0, 2)])).is_err());
        assert!(StructuredGraph::new(path(3).unwrap(), ExtraStructure::VertexOrder(vec![0, 0, 1])).is_err());
        assert!(StructuredGraph::new(path(3).unwrap(), ExtraStructure::EdgeOrder(vec![(2, 1), (1, 0)])).is_ok());
    }

    #[test]
    fn restriction_examples() {
        let c4 = c4_ranked([1, 2, 3, 4]);
        let r = restrict_structured(&c4, VertexSet(0b0111)).unwrap();
        assert_eq!(r.graph(), &path(3).unwrap());
        assert_eq!(r.structure(), &ExtraStructure::EdgeOrder(vec![(0, 1), (1, 2)]));
        assert_eq!(restrict_structured(&c4, VertexSet::all(4)).unwrap(), c4);
        let p3 = StructuredGraph::new(path(3).unwrap(), ExtraStructure::VertexOrder(vec![2, 1, 0])).unwrap();
        let ends = restrict_structured(&p3, VertexSet(0b101)).unwrap();
        assert_eq!(ends.graph().size(), 0);
        assert_eq!(ends.structure(), &ExtraStructure::VertexOrder(vec![1, 0]));
        assert!(restrict_structured(&p3, VertexSet(0b1000)).is_err());
    }

    #[test]
    fn copy_count_examples() {
        let k2 = StructuredGraph::new(complete(2).unwrap(), ExtraStructure::VertexOrder(vec![0, 1])).unwrap();
        let k3 = StructuredGraph::new(complete(3).unwrap(), ExtraStructure::VertexOrder(vec![0, 1, 2])).unwrap();
        assert_eq!(count_structured_copies(&k2, &k3).unwrap(), 3);
        let mono = eo(path(3).unwrap(), &[(0, 1), (1, 2)]);
        let s3 = eo(star(3).unwrap(), &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(count_structured_copies(&mono, &s3).unwrap(), 3);
        assert_eq!(count_structured_copies(&k3, &k2).unwrap(), 0);
        assert_eq!(brute_count(&mono, &s3), 3);
    }

    #[test]
    fn proper_colorings() {
        let c4 = cycle(4).unwrap();
        let alt: EdgeColoring = [((0, 1), 0), ((1, 2), 1), ((2, 3), 0), ((0, 3), 1)].into();
        assert!(is_proper_edge_coloring(&c4, &alt).unwrap());
        let k3 = complete(3).unwrap();
        let two: EdgeColoring = [((0, 1), 0), ((1, 2), 1), ((0, 2), 0)].into();
        let three: EdgeColoring = [((0, 1), 0), ((1, 2), 1), ((0, 2), 2)].into();
        assert!(!is_proper_edge_coloring(&k3, &two).unwrap());
        assert!(is_proper_edge_coloring(&k3, &three).unwrap());
        let partial: EdgeColoring = [((0, 1), 0)].into();
        assert!(is_proper_edge_coloring(&k3, &partial).is_err());

        assert!(has_rainbow_copy(&k3, &three, &k3).unwrap().is_some());
        assert!(has_rainbow_copy(&c4, &alt, &path(4).unwrap()).unwrap().is_none());
        assert!(has_rainbow_copy(&c4, &alt, &path(3).unwrap()).unwrap().is_some());
    }

    fn arb_ordered_host(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>, Vec<u32>)> {
        (1..=max_n).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
                proptest::collection::vec(0u32..4, n * (n - 1) / 2),
            )
                .prop_map(move |(bits, order, colors)| {
                    let mut g = Graph::empty(n).unwrap();
                    let mut k = 0;
                    for j in 1..n {
                        for i in 0..j {
                            if bits[k] {
                                g.link(i, j);
                            }
                            k += 1;
                        }
                    }
                    (g, order, colors)
                })
        })
    }

    fn structures_of(g: &Graph, order: &[usize], colors: &[u32]) -> Vec<StructuredGraph> {
        let mut edges = g.edges();
        // edge ranks follow the vertex order's pairwise sums to vary the ranking
        edges.sort_by_key(|&(u, v)| (order[u] * 7 + order[v] * 3) % 11 * 100 + u * 10 + v);
        let coloring: EdgeColoring = g.edges().into_iter().enumerate().map(|(i, e)| (e, colors[i % colors.len().max(1)])).collect();
        vec![
            StructuredGraph::new(g.clone(), ExtraStructure::EdgeOrder(edges)).unwrap(),
            StructuredGraph::new(g.clone(), ExtraStructure::VertexOrder(order.to_vec())).unwrap(),
            StructuredGraph::new(g.clone(), ExtraStructure::CyclicOrder(order.to_vec())).unwrap(),
            StructuredGraph::new(g.clone(), ExtraStructure::EdgeColoring(coloring)).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn copy_count_matches_subset_enumeration((g, order, colors) in arb_ordered_host(6), k in 1usize..4, pick in any::<u64>()) {
            prop_assume!(k <= g.order());
            for host in structures_of(&g, &order, &colors) {
                // a pattern cut out of the host itself
                let subsets: Vec<u64> = (0u64..1 << g.order()).filter(|s| s.count_ones() as usize == k).collect();
                let set = VertexSet(subsets[(pick % subsets.len() as u64) as usize]);
                let pattern = restrict_structured(&host, set).unwrap();
                let fast = count_structured_copies(&pattern, &host).unwrap();
                prop_assert_eq!(fast, brute_count(&pattern, &host));
                prop_assert!(fast >= 1);
            }
        }

        #[test]
        fn copy_count_invariant_under_relabelling((g, order, colors) in arb_ordered_host(6), k in 1usize..4) {
            prop_assume!(k <= g.order());
            let n = g.order();
            for host in structures_of(&g, &order, &colors) {
                let pattern = restrict_structured(&host, VertexSet((1u64 << k) - 1)).unwrap();
                let moved = host.relabel(|v| (v + 1) % n);
                prop_assert_eq!(count_structured_copies(&pattern, &host).unwrap(), count_structured_copies(&pattern, &moved).unwrap());
            }
        }

        #[test]
        fn containment_is_transitive((g, order, colors) in arb_ordered_host(6), a in any::<u64>(), b in any::<u64>()) {
            let n = g.order();
            for c in structures_of(&g, &order, &colors) {
                let mid_set = VertexSet(a & ((1u64 << n) - 1));
                let mid = restrict_structured(&c, mid_set).unwrap();
                let small = restrict_structured(&mid, VertexSet(b & ((1u64 << mid.graph().order()) - 1))).unwrap();
                prop_assert!(contains_structured(&small, &mid).unwrap().is_some());
                prop_assert!(contains_structured(&mid, &c).unwrap().is_some());
                prop_assert!(contains_structured(&small, &c).unwrap().is_some());
            }
        }

        #[test]
        fn restriction_keeps_proper_colorings((g, _order, _colors) in arb_ordered_host(6), s in any::<u64>()) {
            // greedy proper colouring of the host
            let mut coloring = EdgeColoring::new();
            for (u, v) in g.edges() {
                let c = (0u32..).find(|&c| coloring.iter().all(|(&(x, y), &d)| d != c || (x != u && x != v && y != u && y != v))).unwrap();
                coloring.insert((u, v), c);
            }
            prop_assert!(is_proper_edge_coloring(&g, &coloring).unwrap());
            let host = StructuredGraph::new(g.clone(), ExtraStructure::EdgeColoring(coloring)).unwrap();
            let r = restrict_structured(&host, VertexSet(s & ((1u64 << g.order()) - 1))).unwrap();
            let ExtraStructure::EdgeColoring(c) = r.structure() else { unreachable!() };
            prop_assert!(is_proper_edge_coloring(r.graph(), c).unwrap());
        }
    }
}
