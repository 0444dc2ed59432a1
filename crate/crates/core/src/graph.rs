//! Small simple undirected graphs stored as one 64-bit neighbourhood row per
//! vertex, together with the graph6 codec and the elementary edits used by
//! the rest of the crate.

use std::fmt;

use crate::error::{Error, Result};

/// Hard vertex cap: a neighbourhood always fits in one machine word.
pub const MAX_VERTICES: usize = 64;

/// An unordered vertex pair, always stored with the smaller endpoint first.
pub type Edge = (usize, usize);

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// A subset of the vertex set of some graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet(0)
    }

    /// The set `{0, .., n-1}`.
    pub fn all(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & bit(v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= bit(v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> Bits {
        Bits(self.0)
    }
}

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// Witness for a containment claim: `map[i]` is the host image of pattern
/// vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Embedding(pub Vec<usize>);

impl Embedding {
    pub fn image(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }

    /// Checks that this is an injective, edge-preserving map from `pattern`
    /// into `host` (and non-edge-preserving as well when `induced`).
    pub fn is_valid(&self, pattern: &Graph, host: &Graph, induced: bool) -> bool {
        let map = &self.0;
        if map.len() != pattern.order() || map.iter().any(|&x| x >= host.order()) {
            return false;
        }
        if self.image().len() != map.len() {
            return false;
        }
        for u in 0..map.len() {
            for v in u + 1..map.len() {
                let pe = pattern.has_edge(u, v);
                let he = host.has_edge(map[u], map[v]);
                if (pe && !he) || (induced && !pe && he) {
                    return false;
                }
            }
        }
        true
    }
}

/// A simple undirected graph on at most 64 vertices.
///
/// Row `v` of `adj` has bit `u` set iff `uv` is an edge. Rows are symmetric,
/// loop-free and carry no bits at positions `>= n`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity(format!(
                "{n} vertices requested, at most {MAX_VERTICES} supported"
            )));
        }
        Ok(Graph { adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::domain(format!("invalid edge {u}-{v} for {n} vertices")));
            }
            g.link(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw rows, validating every representation invariant.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(Error::Capacity(format!("{n} rows")));
        }
        let mask = low_mask(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::domain(format!("row {v} has bits beyond vertex {n}")));
            }
            if row & bit(v) != 0 {
                return Err(Error::domain(format!("loop at vertex {v}")));
            }
            for u in Bits(row) {
                if rows[u] & bit(v) == 0 {
                    return Err(Error::domain(format!("asymmetric pair {v}-{u}")));
                }
            }
        }
        Ok(Graph { adj: rows })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.adj[u] & bit(v) != 0
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::all(self.order())
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges in lexicographic order `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.order() {
            for v in Bits(self.adj[u] & !low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub(crate) fn link(&mut self, u: usize, v: usize) {
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub(crate) fn unlink(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(Error::domain(format!("pair {u}-{v} out of range for {n} vertices")));
        }
        if u == v {
            return Err(Error::domain(format!("loop at vertex {u}")));
        }
        Ok(())
    }

    /// `G + uv`; the pair must currently be a non-edge.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return Err(Error::domain(format!("{u}-{v} is already an edge")));
        }
        let mut g = self.clone();
        g.link(u, v);
        Ok(g)
    }

    /// `G - uv`; the pair must currently be an edge.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Err(Error::domain(format!("{u}-{v} is not an edge")));
        }
        let mut g = self.clone();
        g.unlink(u, v);
        Ok(g)
    }

    /// Adds a new vertex `n` with the same neighbourhood as `v` (so the copy
    /// is not adjacent to `v`).
    pub fn duplicate_vertex(&self, v: usize) -> Result<Graph> {
        let n = self.order();
        if v >= n {
            return Err(Error::domain(format!("vertex {v} out of range for {n} vertices")));
        }
        if n == MAX_VERTICES {
            return Err(Error::Capacity("cannot add a 65th vertex".into()));
        }
        let mut g = self.clone();
        g.adj.push(0);
        for u in Bits(self.adj[v]) {
            g.link(u, n);
        }
        Ok(g)
    }

    /// Induced subgraph on `set`, relabelled by increasing original index.
    pub fn restriction(&self, set: VertexSet) -> Result<Graph> {
        if set.0 & !low_mask(self.order()) != 0 {
            return Err(Error::domain(format!(
                "vertex set {:#x} not contained in {} vertices",
                set.0,
                self.order()
            )));
        }
        let keep: Vec<usize> = set.iter().collect();
        Ok(self.permuted(&keep))
    }

    /// Graph on `order.len()` vertices whose vertex `i` is `order[i]` of
    /// `self`. With a full permutation this relabels; with a shorter list of
    /// distinct vertices it takes the induced subgraph in that order.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj = vec![0u64; order.len()];
        for (i, &v) in order.iter().enumerate() {
            let mut row = 0u64;
            for u in Bits(self.adj[v]) {
                if pos[u] != usize::MAX {
                    row |= bit(pos[u]);
                }
            }
            adj[i] = row;
        }
        Graph { adj }
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let mask = low_mask(n);
        Graph {
            adj: (0..n).map(|v| !self.adj[v] & mask & !bit(v)).collect(),
        }
    }

    /// Adds a vertex joined to exactly the vertices in `nbrs`.
    pub fn with_vertex(&self, nbrs: u64) -> Result<Graph> {
        let n = self.order();
        if n == MAX_VERTICES {
            return Err(Error::Capacity("cannot add a 65th vertex".into()));
        }
        if nbrs & !low_mask(n) != 0 {
            return Err(Error::domain("neighbourhood outside the vertex set"));
        }
        let mut g = self.clone();
        g.adj.push(0);
        for u in Bits(nbrs) {
            g.link(u, n);
        }
        Ok(g)
    }

    /// Decodes one graph6 line (an optional trailing newline is accepted).
    pub fn from_graph6(text: &str) -> Result<Graph> {
        let line = text.strip_suffix('\n').unwrap_or(text);
        let line = line.strip_suffix('\r').unwrap_or(line);
        let bytes = line.as_bytes();
        let parse_err = |offset: usize, reason: &str| Error::Parse {
            offset,
            reason: reason.to_string(),
        };
        for (i, &b) in bytes.iter().enumerate() {
            if !(63..=126).contains(&b) {
                return Err(parse_err(i, "byte outside the printable range 63..=126"));
            }
        }
        let sixes: Vec<u8> = bytes.iter().map(|b| b - 63).collect();
        let (n, header) = match sixes.first() {
            None => return Err(parse_err(0, "empty input")),
            Some(&x) if x < 63 => (x as usize, 1),
            Some(_) => {
                if sixes.len() < 4 {
                    return Err(parse_err(sixes.len(), "truncated size header"));
                }
                if sixes[1] == 63 {
                    if sixes.len() < 8 {
                        return Err(parse_err(sixes.len(), "truncated size header"));
                    }
                    let n = sixes[2..8].iter().fold(0usize, |acc, &x| (acc << 6) | x as usize);
                    (n, 8)
                } else {
                    let n = sixes[1..4].iter().fold(0usize, |acc, &x| (acc << 6) | x as usize);
                    (n, 4)
                }
            }
        };
        if n > MAX_VERTICES {
            return Err(parse_err(0, &format!("{n} vertices exceeds the 64-vertex cap")));
        }
        let nbits = n * n.saturating_sub(1) / 2;
        let nbytes = nbits.div_ceil(6);
        let body = &sixes[header..];
        if body.len() < nbytes {
            return Err(parse_err(bytes.len(), "truncated adjacency data"));
        }
        if body.len() > nbytes {
            return Err(parse_err(header + nbytes, "trailing bytes after adjacency data"));
        }
        let mut g = Graph::empty(n)?;
        let mut k = 0usize;
        for j in 1..n {
            for i in 0..j {
                if (body[k / 6] >> (5 - k % 6)) & 1 == 1 {
                    g.link(i, j);
                }
                k += 1;
            }
        }
        if nbits % 6 != 0 {
            let pad = 6 - nbits % 6;
            if body[nbytes - 1] & ((1u8 << pad) - 1) != 0 {
                return Err(parse_err(header + nbytes - 1, "nonzero padding bits"));
            }
        }
        Ok(g)
    }

    /// graph6 encoding (no trailing newline).
    pub fn to_graph6(&self) -> String {
        let n = self.order();
        let mut out: Vec<u8> = Vec::new();
        if n < 63 {
            out.push(n as u8 + 63);
        } else {
            out.push(126);
            out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].iter().map(|&x| x as u8 + 63));
        }
        let mut acc = 0u8;
        let mut nacc = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | self.has_edge(i, j) as u8;
                nacc += 1;
                if nacc == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    nacc = 0;
                }
            }
        }
        if nacc > 0 {
            out.push((acc << (6 - nacc)) + 63);
        }
        String::from_utf8(out).expect("graph6 output is ASCII")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.to_graph6())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

/// Parses a newline-separated graph6 stream, skipping blank lines and an
/// optional `>>graph6<<` header.
pub fn parse_graph6_stream(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    let mut offset = 0usize;
    for line in text.split('\n') {
        let trimmed = line.trim_end_matches('\r');
        let body = trimmed.strip_prefix(">>graph6<<").unwrap_or(trimmed);
        if !body.is_empty() {
            out.push(Graph::from_graph6(body).map_err(|e| match e {
                Error::Parse { offset: o, reason } => Error::Parse {
                    offset: offset + (trimmed.len() - body.len()) + o,
                    reason,
                },
                other => other,
            })?);
        }
        offset += line.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<Edge> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn graph6_known_strings() {
        let k2 = Graph::from_graph6("A_").unwrap();
        assert_eq!(k2.order(), 2);
        assert_eq!(k2.edges(), vec![(0, 1)]);
        assert_eq!(k2.to_graph6(), "A_");

        let g = Graph::from_graph6("D?{").unwrap();
        assert_eq!(g.order(), 5);
        // vertex 4 joined to 0..3
        assert_eq!(g.edges(), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(g.to_graph6(), "D?{");

        assert_eq!(Graph::from_graph6("Bw").unwrap().size(), 3);
        assert_eq!(Graph::empty(0).unwrap().to_graph6(), "?");
        assert_eq!(Graph::from_graph6("?").unwrap().order(), 0);
    }

    #[test]
    fn graph6_rejects_bad_input() {
        assert!(matches!(Graph::from_graph6("Dll"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(Graph::from_graph6("A_x"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(Graph::from_graph6("D?"), Err(Error::Parse { .. })));
        assert!(matches!(Graph::from_graph6("A "), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(Graph::from_graph6(""), Err(Error::Parse { offset: 0, .. })));
        // 65 vertices in the long header form
        assert!(matches!(Graph::from_graph6("~?AA"), Err(Error::Parse { .. })));
    }

    #[test]
    fn graph6_long_header_round_trip() {
        let mut g = Graph::empty(64).unwrap();
        for v in 1..64 {
            g.link(0, v);
        }
        let s = g.to_graph6();
        assert!(s.starts_with('~'));
        assert_eq!(Graph::from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn stream_parsing_tracks_offsets() {
        let gs = parse_graph6_stream(">>graph6<<A_\nBw\n\n").unwrap();
        assert_eq!(gs.len(), 2);
        match parse_graph6_stream("A_\nDll\n") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn restriction_examples() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let r = k4.restriction(VertexSet(0b11)).unwrap();
        assert_eq!(r.order(), 2);
        assert_eq!(r.size(), 1);

        let c5 = cycle(5);
        let p = c5.restriction(VertexSet(0b111)).unwrap();
        assert_eq!(p.edges(), vec![(0, 1), (1, 2)]);

        assert_eq!(c5.restriction(c5.vertices()).unwrap(), c5);
        assert!(c5.restriction(VertexSet(1 << 7)).is_err());
    }

    #[test]
    fn edits() {
        let e2 = Graph::empty(2).unwrap();
        let k2 = e2.add_edge(0, 1).unwrap();
        assert_eq!(k2.size(), 1);
        assert_eq!(k2.remove_edge(0, 1).unwrap(), e2);

        let k3 = Graph::from_graph6("Bw").unwrap();
        assert!(k3.add_edge(0, 1).is_err());
        assert!(k3.add_edge(1, 1).is_err());

        let p3 = k2.duplicate_vertex(0).unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);

        let d = k3.duplicate_vertex(0).unwrap();
        assert_eq!(d.edges(), vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);

        let full = Graph::empty(64).unwrap();
        assert!(matches!(full.duplicate_vertex(0), Err(Error::Capacity(_))));
    }

    #[test]
    fn from_rows_validates() {
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
        assert!(Graph::from_rows(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_rows(vec![0b01]).is_err());
        assert!(Graph::from_rows(vec![0b100, 0b000]).is_err());
    }
}
