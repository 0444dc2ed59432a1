//! Backtracking subgraph matching with neighbourhood-mask pruning.
//!
//! Every containment question in the crate (plain, induced, structured,
//! rainbow) runs through [`Matcher`]; callers refine it with a per-step
//! acceptance hook and a visitor for complete embeddings.

use std::ops::ControlFlow;

use crate::graph::{bit, Bits, Embedding, Graph};

pub(crate) const UNMAPPED: usize = usize::MAX;

/// Precomputed placement order for one pattern.
pub(crate) struct Matcher<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    induced: bool,
    order: Vec<usize>,
    /// For position `d`, the pattern vertices placed before `d`.
    placed_before: Vec<u64>,
}

impl<'a> Matcher<'a> {
    pub(crate) fn new(pattern: &'a Graph, host: &'a Graph, induced: bool) -> Self {
        let order = placement_order(pattern);
        let mut placed_before = Vec::with_capacity(order.len());
        let mut acc = 0u64;
        for &u in &order {
            placed_before.push(acc);
            acc |= bit(u);
        }
        Matcher {
            pattern,
            host,
            induced,
            order,
            placed_before,
        }
    }

    /// Runs the search. `accept(map, u)` is called after pattern vertex `u`
    /// has been mapped (with `map[u]` set) and may veto the extension;
    /// `visit` sees every complete embedding and may stop the search.
    pub(crate) fn run<A, V>(&self, accept: &mut A, visit: &mut V) -> ControlFlow<()>
    where
        A: FnMut(&[usize], usize) -> bool,
        V: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let k = self.pattern.order();
        if k > self.host.order() {
            return ControlFlow::Continue(());
        }
        let mut map = vec![UNMAPPED; k];
        self.extend(0, 0, &mut map, accept, visit)
    }

    fn extend<A, V>(
        &self,
        depth: usize,
        used: u64,
        map: &mut [usize],
        accept: &mut A,
        visit: &mut V,
    ) -> ControlFlow<()>
    where
        A: FnMut(&[usize], usize) -> bool,
        V: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            return visit(map);
        }
        let u = self.order[depth];
        let before = self.placed_before[depth];
        let pnbrs = self.pattern.neighbors(u);
        let mut cand = self.host.vertices().0 & !used;
        for w in Bits(before & pnbrs) {
            cand &= self.host.neighbors(map[w]);
        }
        if self.induced {
            for w in Bits(before & !pnbrs) {
                cand &= !self.host.neighbors(map[w]);
            }
        }
        let need = self.pattern.degree(u);
        for x in Bits(cand) {
            if self.host.degree(x) < need {
                continue;
            }
            map[u] = x;
            if accept(map, u) {
                self.extend(depth + 1, used | bit(x), map, accept, visit)?;
            }
        }
        map[u] = UNMAPPED;
        ControlFlow::Continue(())
    }
}

/// Connectivity-first order: each next vertex has the most already-placed
/// neighbours, ties broken by degree then index.
fn placement_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    for _ in 0..n {
        let best = (0..n)
            .filter(|&v| placed & bit(v) == 0)
            .max_by_key(|&v| {
                (
                    (g.neighbors(v) & placed).count_ones(),
                    g.degree(v),
                    std::cmp::Reverse(v),
                )
            })
            .expect("unplaced vertex remains");
        order.push(best);
        placed |= bit(best);
    }
    order
}

/// First embedding of `pattern` into `host`, if any.
pub fn contains_subgraph(pattern: &Graph, host: &Graph, induced: bool) -> Option<Embedding> {
    let mut found = None;
    let _ = Matcher::new(pattern, host, induced).run(&mut |_, _| true, &mut |m| {
        found = Some(Embedding(m.to_vec()));
        ControlFlow::Break(())
    });
    found
}

/// Number of injective edge-preserving maps from `pattern` into `host`.
pub fn count_embeddings(pattern: &Graph, host: &Graph, induced: bool) -> u64 {
    let mut count = 0u64;
    let _ = Matcher::new(pattern, host, induced).run(&mut |_, _| true, &mut |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// Order of the automorphism group.
pub fn automorphism_count(g: &Graph) -> u64 {
    count_embeddings(g, g, true)
}

/// Number of (unlabelled) subgraphs of `host` isomorphic to `pattern`.
pub fn count_copies(pattern: &Graph, host: &Graph) -> u64 {
    count_embeddings(pattern, host, false) / automorphism_count(pattern)
}
