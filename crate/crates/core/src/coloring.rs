//! Exact vertex colouring: chromatic number, the smallest-colour-class
//! invariant σ, and colour-critical edges.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, Bits, Edge, Graph, VertexSet};

/// Largest graph accepted by the exact chromatic number routine.
pub const CHROMATIC_MAX_VERTICES: usize = 16;
/// Largest graph accepted by [`sigma`].
pub const SIGMA_MAX_VERTICES: usize = 12;

/// A partition of the vertex set into independent classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProperColoring {
    classes: Vec<VertexSet>,
}

impl ProperColoring {
    /// Builds a colouring from a colour per vertex, validating properness.
    /// Colour ids are compacted to `0..k` in order of first use.
    pub fn from_assignment(g: &Graph, colors: &[usize]) -> Result<Self> {
        if colors.len() != g.order() {
            return Err(Error::domain("one colour per vertex required"));
        }
        let mut ids: Vec<usize> = Vec::new();
        let mut classes: Vec<VertexSet> = Vec::new();
        for (v, &c) in colors.iter().enumerate() {
            let idx = match ids.iter().position(|&x| x == c) {
                Some(i) => i,
                None => {
                    ids.push(c);
                    classes.push(VertexSet::empty());
                    ids.len() - 1
                }
            };
            classes[idx].insert(v);
        }
        let col = ProperColoring { classes };
        if !col.is_proper(g) {
            return Err(Error::domain("colouring is not proper"));
        }
        Ok(col)
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn num_colors(&self) -> usize {
        self.classes.len()
    }

    pub fn smallest_class(&self) -> usize {
        self.classes.iter().map(|c| c.len()).min().unwrap_or(0)
    }

    pub fn color_of(&self, v: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(v))
    }

    fn is_proper(&self, g: &Graph) -> bool {
        let mut seen = 0u64;
        for c in &self.classes {
            if c.is_empty() || c.0 & seen != 0 {
                return false;
            }
            seen |= c.0;
            if c.iter().any(|v| g.neighbors(v) & c.0 != 0) {
                return false;
            }
        }
        seen == g.vertices().0
    }
}

fn check_size(g: &Graph, cap: usize, what: &str) -> Result<()> {
    if g.order() > cap {
        return Err(Error::size(format!(
            "{what} is exact only up to {cap} vertices, got {}",
            g.order()
        )));
    }
    Ok(())
}

/// Vertices of a maximum clique.
pub fn max_clique(g: &Graph) -> VertexSet {
    fn grow(g: &Graph, current: u64, mut cand: u64, best: &mut u64) {
        if cand == 0 {
            if current.count_ones() > best.count_ones() {
                *best = current;
            }
            return;
        }
        while cand != 0 {
            if current.count_ones() + cand.count_ones() <= best.count_ones() {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= !bit(v);
            grow(g, current | bit(v), cand & g.neighbors(v), best);
        }
        if current.count_ones() > best.count_ones() {
            *best = current;
        }
    }
    let mut best = 0u64;
    grow(g, 0, g.vertices().0, &mut best);
    VertexSet(best)
}

/// DSATUR greedy colouring; an upper bound on χ.
fn dsatur(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut color = vec![usize::MAX; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| {
                let mut used = 0u64;
                for u in Bits(g.neighbors(v)) {
                    if color[u] != usize::MAX {
                        used |= bit(color[u]);
                    }
                }
                (used.count_ones(), g.degree(v), std::cmp::Reverse(v))
            })
            .expect("uncoloured vertex");
        let mut used = 0u64;
        for u in Bits(g.neighbors(v)) {
            if color[u] != usize::MAX {
                used |= bit(color[u]);
            }
        }
        color[v] = (!used).trailing_zeros() as usize;
    }
    color
}

/// Backtracking k-colouring with first-use symmetry breaking.
fn k_coloring(g: &Graph, k: usize, seed_clique: VertexSet) -> Option<Vec<usize>> {
    let n = g.order();
    // clique vertices first, each pinned to its own colour
    let mut order: Vec<usize> = seed_clique.iter().collect();
    let mut rest: Vec<usize> = (0..n).filter(|&v| !seed_clique.contains(v)).collect();
    rest.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order.extend(rest);
    let mut classes = vec![0u64; k];
    let mut color = vec![usize::MAX; n];
    let pinned = seed_clique.len();
    for (i, &v) in order.iter().take(pinned).enumerate() {
        classes[i] |= bit(v);
        color[v] = i;
    }
    fn go(
        g: &Graph,
        order: &[usize],
        idx: usize,
        used: usize,
        classes: &mut [u64],
        color: &mut [usize],
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        let limit = (used + 1).min(classes.len());
        for c in 0..limit {
            if classes[c] & g.neighbors(v) == 0 {
                classes[c] |= bit(v);
                color[v] = c;
                if go(g, order, idx + 1, used.max(c + 1), classes, color) {
                    return true;
                }
                classes[c] &= !bit(v);
                color[v] = usize::MAX;
            }
        }
        false
    }
    if go(g, &order, pinned, pinned, &mut classes, &mut color) {
        Some(color)
    } else {
        None
    }
}

/// An optimal proper colouring (exact, at most 16 vertices).
pub fn optimal_coloring(g: &Graph) -> Result<ProperColoring> {
    check_size(g, CHROMATIC_MAX_VERTICES, "chromatic number")?;
    if g.order() == 0 {
        return Ok(ProperColoring { classes: Vec::new() });
    }
    let clique = max_clique(g);
    let greedy = dsatur(g);
    let upper = greedy.iter().max().map_or(0, |&c| c + 1);
    for k in clique.len()..upper {
        if let Some(colors) = k_coloring(g, k, clique) {
            return ProperColoring::from_assignment(g, &colors);
        }
    }
    ProperColoring::from_assignment(g, &greedy)
}

/// χ(G); zero for the graph with no vertices.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    Ok(optimal_coloring(g)?.num_colors())
}

/// σ(F) with a witness colouring: the least possible size of the smallest
/// class over proper χ(F)-colourings.
pub fn sigma_with_witness(f: &Graph) -> Result<(usize, ProperColoring)> {
    check_size(f, SIGMA_MAX_VERTICES, "sigma")?;
    if f.order() == 0 {
        return Err(Error::domain("sigma needs at least one vertex"));
    }
    let k = chromatic_number(f)?;
    let n = f.order();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(f.degree(v)), v));

    struct State<'a> {
        g: &'a Graph,
        order: Vec<usize>,
        classes: Vec<u64>,
        color: Vec<usize>,
        best: usize,
        best_color: Vec<usize>,
    }
    fn go(s: &mut State<'_>, idx: usize, used: usize) {
        if s.best == 1 {
            return;
        }
        let k = s.classes.len();
        if used == k && s.classes.iter().all(|c| c.count_ones() as usize >= s.best) {
            return;
        }
        if idx == s.order.len() {
            if used == k {
                let smallest = s.classes.iter().map(|c| c.count_ones() as usize).min().unwrap_or(0);
                if smallest < s.best {
                    s.best = smallest;
                    s.best_color = s.color.clone();
                }
            }
            return;
        }
        // every still-unused colour needs at least one of the remaining vertices
        if k - used > s.order.len() - idx {
            return;
        }
        let v = s.order[idx];
        for c in 0..(used + 1).min(k) {
            if s.classes[c] & s.g.neighbors(v) == 0 {
                s.classes[c] |= bit(v);
                s.color[v] = c;
                go(s, idx + 1, used.max(c + 1));
                s.classes[c] &= !bit(v);
            }
        }
    }
    let mut state = State {
        g: f,
        order,
        classes: vec![0; k],
        color: vec![usize::MAX; n],
        best: usize::MAX,
        best_color: Vec::new(),
    };
    go(&mut state, 0, 0);
    let witness = ProperColoring::from_assignment(f, &state.best_color)?;
    Ok((state.best, witness))
}

pub fn sigma(f: &Graph) -> Result<usize> {
    Ok(sigma_with_witness(f)?.0)
}

/// σ of a family: the least σ among members of minimum chromatic number.
pub fn sigma_family(family: &[Graph]) -> Result<usize> {
    if family.is_empty() {
        return Err(Error::domain("sigma of an empty family"));
    }
    let chis: Vec<usize> = family.iter().map(chromatic_number).collect::<Result<_>>()?;
    let k = *chis.iter().min().expect("nonempty");
    let mut best = usize::MAX;
    for (f, &c) in family.iter().zip(&chis) {
        if c == k {
            best = best.min(sigma(f)?);
        }
    }
    Ok(best)
}

/// First edge (lexicographic) whose deletion lowers the chromatic number.
pub fn color_critical_edge(f: &Graph) -> Result<Option<Edge>> {
    let chi = chromatic_number(f)?;
    for (u, v) in f.edges() {
        if chromatic_number(&f.remove_edge(u, v)?)? + 1 == chi {
            return Ok(Some((u, v)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, complete_multipartite, cycle, petersen, MultipartiteSpec};
    use proptest::prelude::*;

    /// Minimum over all assignments of at most n colours.
    fn brute_chi(g: &Graph) -> usize {
        let n = g.order();
        if n == 0 {
            return 0;
        }
        for k in 1..=n {
            let mut a = vec![0usize; n];
            loop {
                let ok = g.edges().iter().all(|&(u, v)| a[u] != a[v]);
                if ok {
                    return k;
                }
                let mut i = 0;
                while i < n {
                    a[i] += 1;
                    if a[i] < k {
                        break;
                    }
                    a[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        n
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&complete(4).unwrap()).unwrap(), 4);
        assert_eq!(chromatic_number(&cycle(5).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&petersen()).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::empty(0).unwrap()).unwrap(), 0);
        assert_eq!(chromatic_number(&Graph::empty(3).unwrap()).unwrap(), 1);
        assert!(matches!(chromatic_number(&Graph::empty(17).unwrap()), Err(Error::Size(_))));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&complete(4).unwrap()).unwrap(), 1);
        assert_eq!(sigma(&cycle(5).unwrap()).unwrap(), 1);
        let oct = complete_multipartite(&MultipartiteSpec::new(vec![2, 2, 2]).unwrap()).unwrap();
        assert_eq!(sigma(&oct).unwrap(), 2);
        assert!(sigma(&Graph::empty(0).unwrap()).is_err());
        assert!(matches!(sigma(&Graph::empty(13).unwrap()), Err(Error::Size(_))));
    }

    #[test]
    fn sigma_of_multipartite_is_smallest_part() {
        for parts in [vec![1, 3], vec![2, 3, 4], vec![3, 3], vec![2, 2, 2, 3], vec![4, 5]] {
            let g = complete_multipartite(&MultipartiteSpec::new(parts.clone()).unwrap()).unwrap();
            assert_eq!(sigma(&g).unwrap(), *parts.iter().min().unwrap(), "{parts:?}");
        }
    }

    #[test]
    fn family_examples() {
        let k3 = complete(3).unwrap();
        let k4 = complete(4).unwrap();
        assert_eq!(sigma_family(&[k3, k4]).unwrap(), 1);
        let oct = complete_multipartite(&MultipartiteSpec::new(vec![2, 2, 2]).unwrap()).unwrap();
        assert_eq!(sigma_family(&[cycle(5).unwrap(), oct.clone()]).unwrap(), 1);
        assert_eq!(sigma_family(&[oct]).unwrap(), 2);
        assert_eq!(sigma_family(&[complete(2).unwrap()]).unwrap(), 1);
        assert!(sigma_family(&[]).is_err());
    }

    #[test]
    fn critical_edges() {
        let k3 = complete(3).unwrap();
        assert!(color_critical_edge(&k3).unwrap().is_some());
        let c5 = cycle(5).unwrap();
        let e = color_critical_edge(&c5).unwrap().unwrap();
        assert_eq!(chromatic_number(&c5.remove_edge(e.0, e.1).unwrap()).unwrap(), 2);
        let k33 = complete_multipartite(&MultipartiteSpec::new(vec![3, 3]).unwrap()).unwrap();
        assert_eq!(color_critical_edge(&k33).unwrap(), None);
        // the octahedron has no colour-critical edge
        let oct = complete_multipartite(&MultipartiteSpec::new(vec![2, 2, 2]).unwrap()).unwrap();
        assert_eq!(color_critical_edge(&oct).unwrap(), None);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
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
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn chromatic_matches_brute_force(g in arb_graph(7)) {
            prop_assert_eq!(chromatic_number(&g).unwrap(), brute_chi(&g));
        }

        #[test]
        fn sigma_bounded_by_average_class(g in arb_graph(8)) {
            prop_assume!(g.order() > 0);
            let (s, w) = sigma_with_witness(&g).unwrap();
            let chi = chromatic_number(&g).unwrap();
            prop_assert!(s <= g.order() / chi);
            prop_assert_eq!(w.num_colors(), chi);
            prop_assert_eq!(w.smallest_class(), s);
        }

        #[test]
        fn critical_edge_drops_chi(g in arb_graph(7)) {
            if let Some((u, v)) = color_critical_edge(&g).unwrap() {
                let chi = chromatic_number(&g).unwrap();
                prop_assert_eq!(chromatic_number(&g.remove_edge(u, v).unwrap()).unwrap() + 1, chi);
            }
        }
    }
}
