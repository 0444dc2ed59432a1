//! Canonical labelling by colour refinement plus individualisation.
//!
//! The search tree branches on every vertex of the first non-singleton cell
//! of an equitable partition. Each leaf gives a relabelled graph; the
//! canonical form is the smallest of them. Automorphisms discovered at equal
//! leaves prune sibling branches that lie in the same orbit of the
//! pointwise stabiliser of the current prefix.

use crate::graph::Graph;

/// Result of canonical labelling: `graph == input.permuted(&order)`.
#[derive(Clone, Debug)]
pub struct Labeling {
    pub graph: Graph,
    pub order: Vec<usize>,
}

type Cells = Vec<Vec<usize>>;

fn refine(g: &Graph, cells: &mut Cells) {
    loop {
        let masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &v| m | (1u64 << v)))
            .collect();
        let mut next: Cells = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, usize)> = cell
                .iter()
                .map(|&v| {
                    let row = g.neighbors(v);
                    (masks.iter().map(|m| (row & m).count_ones() as u8).collect(), v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let changed = next.len() != cells.len();
        *cells = next;
        if !changed {
            return;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Graph, Vec<usize>)>,
    /// Automorphisms as images: `aut[v]` is the image of `v`.
    auts: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn node(&mut self, mut cells: Cells, prefix: &mut Vec<usize>) {
        refine(self.g, &mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(cells.iter().map(|c| c[0]).collect());
            return;
        };
        let candidates = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &candidates {
            if !tried.is_empty() && self.in_tried_orbit(v, &tried, prefix) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&x| x != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            prefix.push(v);
            self.node(child, prefix);
            prefix.pop();
            tried.push(v);
        }
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let pg = self.g.permuted(&order);
        match &self.best {
            None => self.best = Some((pg, order)),
            Some((best, best_order)) => {
                if pg < *best {
                    self.best = Some((pg, order));
                } else if pg == *best {
                    let mut aut = vec![0; order.len()];
                    for (i, &v) in best_order.iter().enumerate() {
                        aut[v] = order[i];
                    }
                    if aut.iter().enumerate().any(|(i, &x)| i != x) {
                        self.auts.push(aut);
                    }
                }
            }
        }
    }

    /// Is `v` in the orbit of a tried vertex under the group generated by the
    /// known automorphisms that fix every prefix vertex?
    fn in_tried_orbit(&self, v: usize, tried: &[usize], prefix: &[usize]) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for aut in &self.auts {
            if prefix.iter().any(|&x| aut[x] != x) {
                continue;
            }
            any = true;
            for (x, &y) in aut.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == root)
    }
}

/// Canonical labelling respecting an initial vertex colouring: vertices with
/// smaller colour values come first, and only colour-preserving relabellings
/// are considered.
pub fn canonical_labeling_colored(g: &Graph, colors: &[usize]) -> Labeling {
    let n = g.order();
    assert_eq!(colors.len(), n, "one colour per vertex");
    if n == 0 {
        return Labeling {
            graph: g.clone(),
            order: Vec::new(),
        };
    }
    let mut values: Vec<usize> = colors.to_vec();
    values.sort_unstable();
    values.dedup();
    let cells: Cells = values
        .iter()
        .map(|&c| (0..n).filter(|&v| colors[v] == c).collect())
        .collect();
    let mut search = Search {
        g,
        best: None,
        auts: Vec::new(),
    };
    search.node(cells, &mut Vec::new());
    let (graph, order) = search.best.expect("search tree has at least one leaf");
    Labeling { graph, order }
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    canonical_labeling_colored(g, &vec![0; g.order()])
}

/// Isomorphism-invariant representative: equal outputs iff isomorphic inputs.
pub fn canonical_form(g: &Graph) -> Graph {
    canonical_labeling(g).graph
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.size() == b.size() && canonical_form(a) == canonical_form(b)
}

/// True iff some automorphism of `g` maps `v` to `w`.
pub fn same_orbit(g: &Graph, v: usize, w: usize) -> bool {
    if v == w {
        return true;
    }
    if g.degree(v) != g.degree(w) {
        return false;
    }
    let mark = |x: usize| -> Vec<usize> { (0..g.order()).map(|u| usize::from(u != x)).collect() };
    canonical_labeling_colored(g, &mark(v)).graph == canonical_labeling_colored(g, &mark(w)).graph
}

/// Degree sequence sorted ascending; a cheap isomorphism invariant.
pub fn degree_sequence(g: &Graph) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable();
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_multipartite, cycle, path, petersen, star, MultipartiteSpec};
    use proptest::prelude::*;

    fn shuffled(g: &Graph, seed: u64) -> Graph {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut rng);
        g.permuted(&perm)
    }

    #[test]
    fn relabelled_cycles_agree() {
        let c5 = cycle(5).unwrap();
        for seed in 0..20 {
            assert_eq!(canonical_form(&shuffled(&c5, seed)), canonical_form(&c5));
        }
    }

    #[test]
    fn bipartite_part_swap() {
        let a = complete_multipartite(&MultipartiteSpec::new(vec![2, 3]).unwrap()).unwrap();
        let b = a.permuted(&[2, 3, 4, 0, 1]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn path_and_star_differ() {
        let p4 = path(4).unwrap();
        let s = star(3).unwrap();
        assert_ne!(degree_sequence(&p4), degree_sequence(&s));
        assert_ne!(canonical_form(&p4), canonical_form(&s));
    }

    #[test]
    fn symmetric_graphs_finish_quickly() {
        let p = petersen();
        for seed in 0..5 {
            assert_eq!(canonical_form(&shuffled(&p, seed)), canonical_form(&p));
        }
        let e = Graph::empty(16).unwrap();
        assert_eq!(canonical_form(&e), e);
        let k = e.complement();
        assert_eq!(canonical_form(&k), k);
    }

    #[test]
    fn orbits() {
        let p4 = path(4).unwrap();
        assert!(same_orbit(&p4, 0, 3));
        assert!(same_orbit(&p4, 1, 2));
        assert!(!same_orbit(&p4, 0, 1));
        let p = petersen();
        assert!((1..10).all(|v| same_orbit(&p, 0, v)));
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
        #[test]
        fn invariant_under_relabelling(g in arb_graph(6), perm in Just(()).prop_flat_map(|_| proptest::collection::vec(any::<u64>(), 1)) ) {
            let h = shuffled(&g, perm[0]);
            prop_assert_eq!(canonical_form(&g), canonical_form(&h));
            let lab = canonical_labeling(&g);
            prop_assert_eq!(g.permuted(&lab.order), lab.graph);
        }

        #[test]
        fn distinguishes_non_isomorphic(a in arb_graph(5), b in arb_graph(5)) {
            let same = canonical_form(&a) == canonical_form(&b);
            let brute = a.order() == b.order() && {
                let n = a.order();
                let mut perm: Vec<usize> = (0..n).collect();
                let mut found = false;
                permutations(&mut perm, 0, &mut |p| { if a.permuted(p) == b { found = true; } });
                found
            };
            prop_assert_eq!(same, brute);
        }
    }

    fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permutations(p, k + 1, f);
            p.swap(k, i);
        }
    }
}
