//! Membership oracles for graph classes defined by forbidden patterns.
//!
//! A graph belongs to a structured class when some choice of extra
//! structure on it avoids every forbidden structured pattern; the oracle
//! searches for such a choice and returns it as the witness. Answers are
//! memoised by canonical form.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use serde::{Serialize, Serializer};

use super::{find_rainbow, find_structured, Compiled, EdgeColoring, ExtraStructure, StructureKind, StructuredGraph};
use crate::canon::canonical_labeling;
use crate::embed::contains_subgraph;
use crate::error::{Error, Result};
use crate::graph::{bit, Bits, Edge, Graph};

/// Default number of search nodes a single structured or rainbow membership
/// query may visit.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// Larger graphs skip the memo: canonical labelling would cost more than
/// it saves.
const MEMO_MAX_VERTICES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleKind {
    ForbiddenSubgraph(Vec<Graph>),
    ForbiddenInduced(Vec<Graph>),
    ForbiddenStructured { kind: StructureKind, patterns: Vec<StructuredGraph> },
    RainbowForbidden(Graph),
}

/// Evidence that a graph is a member: nothing for plain forbidden-pattern
/// classes, a pattern-free structure otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Plain,
    Structure(ExtraStructure),
}

impl Witness {
    fn relabel(&self, f: impl Fn(usize) -> usize) -> Witness {
        match self {
            Witness::Plain => Witness::Plain,
            Witness::Structure(s) => Witness::Structure(s.relabel(f)),
        }
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Witness::Plain => s.serialize_str("member"),
            Witness::Structure(x) => x.serialize(s),
        }
    }
}

type Answer = Result<Option<Witness>>;

/// Decision procedure for `G ∈ A`.
#[derive(Debug)]
pub struct PartitionOracle {
    kind: OracleKind,
    description: String,
    node_budget: u64,
    memo: Mutex<HashMap<Graph, Answer>>,
    queries: AtomicU64,
}

fn g6_list(gs: &[Graph]) -> String {
    gs.iter().map(|g| g.to_graph6()).collect::<Vec<_>>().join(",")
}

impl PartitionOracle {
    pub fn new(kind: OracleKind) -> Result<Self> {
        let description = match &kind {
            OracleKind::ForbiddenSubgraph(ps) => format!("forbid:{}", g6_list(ps)),
            OracleKind::ForbiddenInduced(ps) => format!("forbid-induced:{}", g6_list(ps)),
            OracleKind::ForbiddenStructured { kind, patterns } => format!(
                "forbid-{kind}:{}",
                patterns
                    .iter()
                    .map(|p| p.to_pattern_text().replace('\n', " "))
                    .collect::<Vec<_>>()
                    .join(";")
            ),
            OracleKind::RainbowForbidden(f) => format!("rainbow:{}", f.to_graph6()),
        };
        Self::with_description(kind, description)
    }

    fn with_description(kind: OracleKind, description: String) -> Result<Self> {
        match &kind {
            OracleKind::ForbiddenSubgraph(ps) | OracleKind::ForbiddenInduced(ps) => {
                if ps.iter().any(|p| p.order() == 0) {
                    return Err(Error::domain("forbidden patterns must have at least one vertex"));
                }
            }
            OracleKind::ForbiddenStructured { kind, patterns } => {
                if *kind == StructureKind::EdgeColoring {
                    return Err(Error::domain("coloured patterns are only supported through rainbow:"));
                }
                if patterns.iter().any(|p| p.kind() != *kind) {
                    return Err(Error::domain(format!("all patterns must carry a {kind} structure")));
                }
                if patterns.iter().any(|p| p.graph().order() == 0) {
                    return Err(Error::domain("forbidden patterns must have at least one vertex"));
                }
            }
            OracleKind::RainbowForbidden(f) => {
                if f.order() == 0 {
                    return Err(Error::domain("forbidden pattern must have at least one vertex"));
                }
            }
        }
        Ok(PartitionOracle {
            kind,
            description,
            node_budget: DEFAULT_NODE_BUDGET,
            memo: Mutex::new(HashMap::new()),
            queries: AtomicU64::new(0),
        })
    }

    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    /// Parses `forbid:<g6>[,..]`, `forbid-induced:<g6>[,..]`,
    /// `forbid-eo:<file>` or `rainbow:<g6>`. An empty list forbids nothing.
    pub fn parse(spec: &str) -> Result<Self> {
        let (head, body) = spec
            .split_once(':')
            .ok_or_else(|| Error::syntax(format!("oracle `{spec}` lacks a `kind:` prefix")))?;
        let graphs = |body: &str| -> Result<Vec<Graph>> {
            body.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| Graph::from_graph6(t).map_err(|e| Error::syntax(format!("pattern `{t}`: {e}"))))
                .collect()
        };
        let kind = match head {
            "forbid" => OracleKind::ForbiddenSubgraph(graphs(body)?),
            "forbid-induced" => OracleKind::ForbiddenInduced(graphs(body)?),
            "rainbow" => {
                let mut gs = graphs(body)?;
                if gs.len() != 1 {
                    return Err(Error::syntax(format!("rainbow: takes exactly one pattern, got `{body}`")));
                }
                OracleKind::RainbowForbidden(gs.remove(0))
            }
            "forbid-eo" => {
                let text = std::fs::read_to_string(body)
                    .map_err(|e| Error::syntax(format!("cannot read pattern file `{body}`: {e}")))?;
                let patterns = parse_pattern_file(&text)?;
                let kind = patterns.first().map_or(StructureKind::EdgeOrder, |p| p.kind());
                OracleKind::ForbiddenStructured { kind, patterns }
            }
            other => return Err(Error::syntax(format!("unknown oracle kind `{other}`"))),
        };
        Self::with_description(kind, spec.to_string())
    }

    pub fn kind(&self) -> &OracleKind {
        &self.kind
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Closed under taking subgraphs. Induced-forbidden classes are only
    /// closed under induced subgraphs.
    pub fn is_monotone(&self) -> bool {
        !matches!(self.kind, OracleKind::ForbiddenInduced(_))
    }

    /// Number of membership queries answered so far, memoised or not.
    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    /// `Some(witness)` iff `g ∈ A`.
    pub fn membership(&self, g: &Graph) -> Result<Option<Witness>> {
        self.queries.fetch_add(1, Ordering::Relaxed);
        if g.order() > MEMO_MAX_VERTICES {
            return self.decide(g);
        }
        let labeling = canonical_labeling(g);
        let cached = self.memo.lock().expect("memo lock").get(&labeling.graph).cloned();
        let answer = match cached {
            Some(a) => a,
            None => {
                let computed = self.decide(&labeling.graph);
                // first writer wins so that concurrent callers agree
                self.memo
                    .lock()
                    .expect("memo lock")
                    .entry(labeling.graph.clone())
                    .or_insert(computed)
                    .clone()
            }
        };
        // canonical vertex i is vertex order[i] of g
        Ok(answer?.map(|w| w.relabel(|i| labeling.order[i])))
    }

    pub fn contains(&self, g: &Graph) -> Result<bool> {
        Ok(self.membership(g)?.is_some())
    }

    fn decide(&self, g: &Graph) -> Answer {
        match &self.kind {
            OracleKind::ForbiddenSubgraph(ps) => {
                Ok((!ps.iter().any(|p| contains_subgraph(p, g, false).is_some())).then_some(Witness::Plain))
            }
            OracleKind::ForbiddenInduced(ps) => {
                Ok((!ps.iter().any(|p| contains_subgraph(p, g, true).is_some())).then_some(Witness::Plain))
            }
            OracleKind::RainbowForbidden(f) => {
                if contains_subgraph(f, g, false).is_none() {
                    return Ok(Some(Witness::Structure(ExtraStructure::EdgeColoring(greedy_coloring(g)))));
                }
                RainbowSearch::new(g, f, self.node_budget).run()
            }
            OracleKind::ForbiddenStructured { kind, patterns } => {
                if !patterns.iter().any(|p| contains_subgraph(p.graph(), g, false).is_some()) {
                    let n = g.order();
                    let trivial = match kind {
                        StructureKind::EdgeOrder => ExtraStructure::EdgeOrder(g.edges()),
                        StructureKind::VertexOrder => ExtraStructure::VertexOrder((0..n).collect()),
                        _ => ExtraStructure::CyclicOrder((0..n).collect()),
                    };
                    return Ok(Some(Witness::Structure(trivial)));
                }
                OrderSearch::new(g, *kind, patterns, self.node_budget).run()
            }
        }
    }
}

/// Proper colouring giving each edge the least colour unused at both ends.
fn greedy_coloring(g: &Graph) -> EdgeColoring {
    let mut used = vec![0u128; g.order()];
    let mut out = EdgeColoring::new();
    for (u, v) in g.edges() {
        let c = (!(used[u] | used[v])).trailing_zeros();
        used[u] |= 1 << c;
        used[v] |= 1 << c;
        out.insert((u, v), c);
    }
    out
}

fn budget_error(budget: u64) -> Error {
    Error::Budget(format!("membership search exceeded {budget} nodes"))
}

/// Backtracking over proper edge colourings with first-use colour
/// canonicity, pruned as soon as the coloured part holds a rainbow `F`.
struct RainbowSearch<'a> {
    f: &'a Graph,
    n: usize,
    edges: Vec<Edge>,
    colored: Graph,
    table: Vec<u32>,
    /// Colours already present at each vertex.
    at: Vec<u128>,
    nodes: u64,
    budget: u64,
}

impl<'a> RainbowSearch<'a> {
    fn new(g: &Graph, f: &'a Graph, budget: u64) -> Self {
        let n = g.order();
        // a copy of F first, then vertices with most placed neighbours, so
        // that the coloured graph closes copies of F as early as possible
        let mut order: Vec<usize> = contains_subgraph(f, g, false).map(|e| e.0).unwrap_or_default();
        let mut placed = order.iter().fold(0u64, |m, &v| m | bit(v));
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| placed & bit(v) == 0)
                .max_by_key(|&v| ((g.neighbors(v) & placed).count_ones(), std::cmp::Reverse(v)))
                .expect("unplaced vertex remains");
            order.push(next);
            placed |= bit(next);
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges = g.edges();
        edges.sort_by_key(|&(u, v)| (pos[u].max(pos[v]), pos[u].min(pos[v])));
        RainbowSearch {
            f,
            n,
            edges,
            colored: Graph::empty(n).expect("same order as input"),
            table: vec![0; n * n],
            at: vec![0; n],
            nodes: 0,
            budget,
        }
    }

    fn run(mut self) -> Answer {
        if self.edges.len() > 128 {
            return Err(Error::size("rainbow membership supports at most 128 edges"));
        }
        if self.go(0, 0)? {
            let coloring = self.edges.iter().map(|&(u, v)| ((u, v), self.table[u * self.n + v] - 1)).collect();
            Ok(Some(Witness::Structure(ExtraStructure::EdgeColoring(coloring))))
        } else {
            Ok(None)
        }
    }

    fn go(&mut self, idx: usize, palette: u32) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(budget_error(self.budget));
        }
        if idx == self.edges.len() {
            return Ok(true);
        }
        let (u, v) = self.edges[idx];
        let blocked = self.at[u] | self.at[v];
        let top = (palette + 1).min(self.edges.len() as u32);
        for c in 0..top {
            if blocked & (1u128 << c) != 0 {
                continue;
            }
            self.table[u * self.n + v] = c + 1;
            self.table[v * self.n + u] = c + 1;
            self.colored.link(u, v);
            self.at[u] |= 1 << c;
            self.at[v] |= 1 << c;
            let ok = find_rainbow(self.f, &self.colored, &self.table).is_none() && self.go(idx + 1, palette.max(c + 1))?;
            if ok {
                return Ok(true);
            }
            self.at[u] &= !(1 << c);
            self.at[v] &= !(1 << c);
            self.colored.unlink(u, v);
            self.table[u * self.n + v] = 0;
            self.table[v * self.n + u] = 0;
        }
        Ok(false)
    }
}

/// Backtracking over edge rankings, vertex orders or cyclic orders, one
/// rank or position at a time, pruned when a pattern appears inside the
/// part fixed so far (later ranks and positions cannot change it).
struct OrderSearch<'a> {
    g: &'a Graph,
    kind: StructureKind,
    patterns: Vec<(&'a Graph, Compiled)>,
    edges: Vec<Edge>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl<'a> OrderSearch<'a> {
    fn new(g: &'a Graph, kind: StructureKind, patterns: &'a [StructuredGraph], budget: u64) -> Self {
        let patterns = patterns
            .iter()
            .filter(|p| p.graph().order() <= g.order())
            .map(|p| (p.graph(), Compiled::new(p)))
            .collect();
        OrderSearch {
            g,
            kind,
            patterns,
            edges: g.edges(),
            chosen: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    fn run(mut self) -> Answer {
        let found = match self.kind {
            StructureKind::EdgeOrder => self.rank_edges(0)?,
            StructureKind::CyclicOrder if self.g.order() > 0 => {
                // rotations are equivalent, so vertex 0 may open the circle
                self.chosen.push(0);
                self.place_vertices()?
            }
            _ => self.place_vertices()?,
        };
        if !found {
            return Ok(None);
        }
        let structure = match self.kind {
            StructureKind::EdgeOrder => ExtraStructure::EdgeOrder(self.chosen.iter().map(|&i| self.edges[i]).collect()),
            StructureKind::VertexOrder => ExtraStructure::VertexOrder(self.chosen),
            _ => ExtraStructure::CyclicOrder(self.chosen),
        };
        Ok(Some(Witness::Structure(structure)))
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(budget_error(self.budget));
        }
        Ok(())
    }

    fn edge_prefix_is_free(&self) -> bool {
        let n = self.g.order();
        let mut ranked = Graph::empty(n).expect("same order as input");
        for &i in &self.chosen {
            let (u, v) = self.edges[i];
            ranked.link(u, v);
        }
        let hc = Compiled::edge_table(
            n,
            self.chosen.iter().enumerate().map(|(r, &i)| (self.edges[i], r as u32)),
            true,
        );
        self.patterns
            .iter()
            .all(|(pg, pc)| find_structured(pg, pc, &ranked, &hc, false, &mut |_| std::ops::ControlFlow::Break(())).is_continue())
    }

    fn rank_edges(&mut self, used: u128) -> Result<bool> {
        self.tick()?;
        if self.chosen.len() == self.edges.len() {
            return Ok(true);
        }
        for i in 0..self.edges.len() {
            if used & (1u128 << i) != 0 {
                continue;
            }
            self.chosen.push(i);
            if self.edge_prefix_is_free() && self.rank_edges(used | 1u128 << i)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }

    fn vertex_prefix_is_free(&self) -> bool {
        let placed = self.g.permuted(&self.chosen);
        let hc = Compiled::vertex_seq((0..self.chosen.len()).collect(), self.kind == StructureKind::CyclicOrder);
        self.patterns
            .iter()
            .all(|(pg, pc)| find_structured(pg, pc, &placed, &hc, false, &mut |_| std::ops::ControlFlow::Break(())).is_continue())
    }

    fn place_vertices(&mut self) -> Result<bool> {
        self.tick()?;
        let n = self.g.order();
        if self.chosen.len() == n {
            return Ok(true);
        }
        let placed = self.chosen.iter().fold(0u64, |m, &v| m | bit(v));
        for v in Bits(!placed & crate::graph::low_mask(n)) {
            self.chosen.push(v);
            if self.vertex_prefix_is_free() && self.place_vertices()? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

/// Reads structured patterns: each pattern is a graph6 line followed by one
/// of `edgeorder: u-v,...`, `vertexorder: v,...` or `cyclic: v,...`. Blank
/// lines and lines starting with `#` are ignored.
pub fn parse_pattern_file(text: &str) -> Result<Vec<StructuredGraph>> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if lines.len() % 2 != 0 {
        let (no, _) = lines[lines.len() - 1];
        return Err(Error::syntax(format!("line {no}: graph without a structure line")));
    }
    let mut out = Vec::new();
    let mut kind = None;
    for pair in lines.chunks(2) {
        let (gno, gline) = pair[0];
        let (sno, sline) = pair[1];
        let graph = Graph::from_graph6(gline).map_err(|e| Error::syntax(format!("line {gno}: {e}")))?;
        let bad = |what: &str| Error::syntax(format!("line {sno}: {what}"));
        let (head, body) = sline.split_once(':').ok_or_else(|| bad("expected `kind: ...`"))?;
        let items: Vec<&str> = body.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
        let vertex = |t: &str| t.parse::<usize>().map_err(|_| bad(&format!("bad vertex `{t}`")));
        let structure = match head.trim() {
            "edgeorder" => ExtraStructure::EdgeOrder(
                items
                    .iter()
                    .map(|t| {
                        let (a, b) = t.split_once('-').ok_or_else(|| bad(&format!("bad edge `{t}`")))?;
                        Ok((vertex(a.trim())?, vertex(b.trim())?))
                    })
                    .collect::<Result<_>>()?,
            ),
            "vertexorder" => ExtraStructure::VertexOrder(items.iter().map(|t| vertex(t)).collect::<Result<_>>()?),
            "cyclic" => ExtraStructure::CyclicOrder(items.iter().map(|t| vertex(t)).collect::<Result<_>>()?),
            other => return Err(bad(&format!("unknown structure `{other}`"))),
        };
        if *kind.get_or_insert(structure.kind()) != structure.kind() {
            return Err(bad("all patterns in a file must have the same structure kind"));
        }
        out.push(StructuredGraph::new(graph, structure).map_err(|e| bad(&e.to_string()))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, cycle, path};
    use crate::structures::{contains_structured, is_proper_edge_coloring, restrict_structured};
    use crate::graph::VertexSet;

    fn monotone_p4() -> StructuredGraph {
        StructuredGraph::new(path(4).unwrap(), ExtraStructure::EdgeOrder(vec![(0, 1), (1, 2), (2, 3)])).unwrap()
    }

    fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<Edge> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        (0u64..1 << pairs.len()).map(move |mask| {
            let es: Vec<Edge> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, &es).unwrap()
        })
    }

    fn witness_is_valid(oracle: &PartitionOracle, g: &Graph, w: &Witness) -> bool {
        match (oracle.kind(), w) {
            (OracleKind::RainbowForbidden(f), Witness::Structure(ExtraStructure::EdgeColoring(c))) => {
                is_proper_edge_coloring(g, c).unwrap() && super::super::has_rainbow_copy(g, c, f).unwrap().is_none()
            }
            (OracleKind::ForbiddenStructured { patterns, .. }, Witness::Structure(s)) => {
                let host = StructuredGraph::new(g.clone(), s.clone()).unwrap();
                patterns.iter().all(|p| contains_structured(p, &host).unwrap().is_none())
            }
            (_, Witness::Plain) => true,
            _ => false,
        }
    }

    #[test]
    fn rainbow_triangle_examples() {
        let o = PartitionOracle::parse("rainbow:Bw").unwrap();
        assert!(o.membership(&complete(3).unwrap()).unwrap().is_none());
        let c5 = cycle(5).unwrap();
        let w = o.membership(&c5).unwrap().unwrap();
        assert!(witness_is_valid(&o, &c5, &w));
        assert!(o.is_monotone());
    }

    #[test]
    fn rainbow_path_needs_search() {
        // C_4 alternately coloured has no rainbow P_4, so C_4 is a member
        let o = PartitionOracle::new(OracleKind::RainbowForbidden(path(4).unwrap())).unwrap();
        let c4 = cycle(4).unwrap();
        let w = o.membership(&c4).unwrap().unwrap();
        assert!(witness_is_valid(&o, &c4, &w));
        // K_4 has a 1-factorisation of 3 colours; any P_4 then uses 2 or 3 colours
        let k4 = complete(4).unwrap();
        let answer = o.membership(&k4).unwrap();
        if let Some(w) = &answer {
            assert!(witness_is_valid(&o, &k4, w));
        }
    }

    #[test]
    fn monotone_path_in_c4() {
        let o = PartitionOracle::new(OracleKind::ForbiddenStructured {
            kind: StructureKind::EdgeOrder,
            patterns: vec![monotone_p4()],
        })
        .unwrap();
        let c4 = cycle(4).unwrap();
        let w = o.membership(&c4).unwrap().unwrap();
        assert!(witness_is_valid(&o, &c4, &w));
        // the only rankings avoiding a monotone P_4 alternate around the cycle
        let Witness::Structure(ExtraStructure::EdgeOrder(es)) = w else { panic!() };
        let rank = |e: Edge| es.iter().position(|&x| x == e).unwrap();
        let around = [(0, 1), (1, 2), (2, 3), (0, 3)];
        for i in 0..4 {
            let (a, b, c) = (rank(around[i]), rank(around[(i + 1) % 4]), rank(around[(i + 2) % 4]));
            assert!(!(a < b && b < c) && !(a > b && b > c));
        }
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let o = PartitionOracle::new(OracleKind::RainbowForbidden(path(4).unwrap()))
            .unwrap()
            .with_node_budget(3);
        assert!(matches!(o.membership(&complete(5).unwrap()), Err(Error::Budget(_))));
    }

    #[test]
    fn rainbow_triangle_is_triangle_freeness() {
        let o = PartitionOracle::parse("rainbow:Bw").unwrap();
        let k3 = complete(3).unwrap();
        for n in 0..=5 {
            for g in all_graphs(n) {
                let member = o.membership(&g).unwrap();
                assert_eq!(member.is_some(), contains_subgraph(&k3, &g, false).is_none(), "{g}");
                if let Some(w) = member {
                    assert!(witness_is_valid(&o, &g, &w));
                }
            }
        }
    }

    #[test]
    fn structured_membership_is_downward_closed() {
        let o = PartitionOracle::new(OracleKind::ForbiddenStructured {
            kind: StructureKind::EdgeOrder,
            patterns: vec![monotone_p4()],
        })
        .unwrap();
        let vo = PartitionOracle::new(OracleKind::ForbiddenStructured {
            kind: StructureKind::VertexOrder,
            patterns: vec![StructuredGraph::new(path(3).unwrap(), ExtraStructure::VertexOrder(vec![0, 1, 2])).unwrap()],
        })
        .unwrap();
        for oracle in [&o, &vo] {
            for n in 0..=5 {
                for g in all_graphs(n) {
                    let Some(w) = oracle.membership(&g).unwrap() else { continue };
                    assert!(witness_is_valid(oracle, &g, &w), "{g}");
                    // restricting the witness certifies every subgraph
                    let host = StructuredGraph::new(g.clone(), match &w {
                        Witness::Structure(s) => s.clone(),
                        Witness::Plain => unreachable!(),
                    })
                    .unwrap();
                    for (u, v) in g.edges() {
                        let h = g.remove_edge(u, v).unwrap();
                        assert!(oracle.membership(&h).unwrap().is_some(), "{h} under {g}");
                    }
                    if n > 0 {
                        let r = restrict_structured(&host, VertexSet::all(n - 1)).unwrap();
                        assert!(oracle.membership(r.graph()).unwrap().is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn answers_are_canonical_form_invariant() {
        let o = PartitionOracle::parse("forbid-induced:Bg").unwrap();
        assert!(!o.is_monotone());
        // induced P_3 is absent exactly from disjoint unions of cliques
        let g = Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap();
        let h = g.permuted(&[4, 2, 0, 3, 1]);
        assert!(o.contains(&g).unwrap());
        assert!(o.contains(&h).unwrap());
        assert!(!o.contains(&path(3).unwrap()).unwrap());
        assert_eq!(o.queries(), 3);
    }

    #[test]
    fn spec_parsing() {
        assert!(PartitionOracle::parse("forbid:").unwrap().contains(&complete(6).unwrap()).unwrap());
        assert!(!PartitionOracle::parse("forbid:Bw,C~").unwrap().contains(&complete(3).unwrap()).unwrap());
        assert_eq!(PartitionOracle::parse("rainbow:Bw").unwrap().description(), "rainbow:Bw");
        for bad in ["Bw", "forbid:Dll", "rainbow:", "rainbow:Bw,Bw", "color:Bw", "forbid-eo:/nonexistent/file"] {
            assert!(matches!(PartitionOracle::parse(bad), Err(Error::Syntax(_))), "{bad}");
        }
        assert!(PartitionOracle::new(OracleKind::ForbiddenSubgraph(vec![Graph::empty(0).unwrap()])).is_err());
    }

    #[test]
    fn pattern_files() {
        let text = format!("# monotone path\n{}\nedgeorder: 0-1,1-2,2-3\n\nBw\nedgeorder: 0-1, 1-2, 0-2\n", path(4).unwrap());
        let ps = parse_pattern_file(&text).unwrap();
        assert_eq!(ps[0], monotone_p4());
        assert_eq!(ps.len(), 2);
        assert_eq!(parse_pattern_file(&ps[0].to_pattern_text()).unwrap()[0], ps[0]);
        assert!(parse_pattern_file("Bw\n").is_err());
        assert!(parse_pattern_file("Bw\nedgeorder: 0-1,1-2\n").is_err());
        assert!(parse_pattern_file("Bw\nedgeorder: 0-1,1-2,0-2\nA_\nvertexorder: 0,1\n").is_err());
        assert!(parse_pattern_file("Bw\nshuffle: 0,1,2\n").is_err());
        let cyc = parse_pattern_file("Bw\ncyclic: 2,0,1").unwrap();
        assert_eq!(cyc[0].kind(), StructureKind::CyclicOrder);
    }
}
