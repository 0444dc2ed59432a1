//! Sampling check of the rainbow embedding lemma: every proper edge
//! colouring of `K_{t,n,...,n}` (with `k = χ(F)` parts and `t = σ(F)`)
//! should contain a rainbow copy of `F` once `n` is large enough.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coloring::sigma_with_witness;
use crate::constructions::{complete_multipartite, MultipartiteSpec};
use crate::error::{Error, Result};
use crate::graph::{Bits, Edge, Graph};
use crate::structures::find_rainbow;

/// Attempts at a given palette size before the palette grows by one.
const ATTEMPTS_PER_PALETTE: usize = 100;

#[derive(Clone, Debug, Serialize)]
pub struct RainbowLemmaReport {
    pub pattern: String,
    pub k: usize,
    pub t: usize,
    pub n: usize,
    pub host: MultipartiteSpec,
    pub samples: usize,
    pub seed: u64,
    /// Colourings in which the exhaustive search found a rainbow copy.
    pub rainbow_found: usize,
    /// Colourings in which the class-by-class greedy embedding succeeded.
    pub greedy_found: usize,
    /// Colourings on which both methods gave the same answer.
    pub agreement: usize,
    pub palette_min: usize,
    pub palette_max: usize,
    /// Failed colouring attempts that were restarted.
    pub restarts: usize,
}

/// Random proper colouring: edges in random order, each taking a random
/// colour still free at both ends. Restarts on a dead end; the palette
/// grows after repeated failures (it never needs more than `2Δ - 1`).
fn random_proper_coloring(g: &Graph, palette: usize, rng: &mut ChaCha8Rng, restarts: &mut usize) -> (Vec<u32>, usize) {
    let n = g.order();
    let mut edges: Vec<Edge> = g.edges();
    let mut palette = palette.max(1);
    let mut attempts = 0;
    loop {
        edges.shuffle(rng);
        let mut table = vec![0u32; n * n];
        let mut at = vec![0u128; n];
        let mut ok = true;
        for &(u, v) in &edges {
            let free: Vec<u32> = (0..palette as u32).filter(|&c| (at[u] | at[v]) & (1 << c) == 0).collect();
            let Some(&c) = free.choose(rng) else {
                ok = false;
                break;
            };
            at[u] |= 1 << c;
            at[v] |= 1 << c;
            table[u * n + v] = c + 1;
            table[v * n + u] = c + 1;
        }
        if ok {
            return (table, palette);
        }
        *restarts += 1;
        attempts += 1;
        if attempts % ATTEMPTS_PER_PALETTE == 0 {
            palette += 1;
        }
    }
}

/// The embedding from the lemma's proof: the smallest colour class `Y_1`
/// of `F` goes onto the part of size `t`, then each further class `Y_i` is
/// placed into part `X_i`. A host vertex stays available only while none of
/// its edges to already embedded vertices carries a used colour, so every
/// new edge gets a fresh colour. Each class is placed by a local search
/// that keeps enough available vertices in every later part; earlier
/// classes are never revisited.
fn greedy_embedding(f: &Graph, classes: &[Vec<usize>], parts: &[std::ops::Range<usize>], table: &[u32], hn: usize) -> bool {
    struct State<'a> {
        f: &'a Graph,
        classes: &'a [Vec<usize>],
        parts: &'a [std::ops::Range<usize>],
        table: &'a [u32],
        hn: usize,
        map: Vec<usize>,
        embedded: Vec<usize>,
        used: Vec<u32>,
    }
    impl State<'_> {
        fn colour(&self, a: usize, b: usize) -> u32 {
            self.table[a * self.hn + b]
        }

        fn available(&self, x: usize) -> bool {
            !self.embedded.contains(&x) && self.embedded.iter().all(|&u| !self.used.contains(&self.colour(u, x)))
        }

        fn later_parts_viable(&self, class: usize) -> bool {
            (class + 1..self.classes.len())
                .all(|j| self.parts[j].clone().filter(|&v| self.available(v)).count() >= self.classes[j].len())
        }

        fn place(&mut self, class: usize, idx: usize) -> bool {
            if idx == self.classes[class].len() {
                return self.later_parts_viable(class);
            }
            let y = self.classes[class][idx];
            for x in self.parts[class].clone() {
                if !self.available(x) {
                    continue;
                }
                let fresh: Vec<u32> = Bits(self.f.neighbors(y))
                    .filter(|&w| self.map[w] != usize::MAX)
                    .map(|w| self.colour(x, self.map[w]))
                    .collect();
                let mut sorted = fresh.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != fresh.len() {
                    continue;
                }
                let mark = self.used.len();
                self.used.extend(fresh);
                self.map[y] = x;
                self.embedded.push(x);
                if self.place(class, idx + 1) {
                    return true;
                }
                self.embedded.pop();
                self.map[y] = usize::MAX;
                self.used.truncate(mark);
            }
            false
        }
    }
    let mut s = State {
        f,
        classes,
        parts,
        table,
        hn,
        map: vec![usize::MAX; f.order()],
        embedded: Vec::new(),
        used: Vec::new(),
    };
    for (&y, x) in classes[0].iter().zip(parts[0].clone()) {
        s.map[y] = x;
        s.embedded.push(x);
    }
    (1..classes.len()).all(|i| s.place(i, 0))
}

/// Every proper `k`-colouring of `f` (up to renaming colours) whose
/// smallest class has size `t`, each as a list of class orders: the first
/// class has size `t` and the rest follow in every possible order.
fn admissible_class_orders(f: &Graph, k: usize, t: usize) -> Vec<Vec<Vec<usize>>> {
    fn colourings(f: &Graph, k: usize, v: usize, used: usize, colour: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if v == f.order() {
            if used == k {
                out.push(colour.clone());
            }
            return;
        }
        for c in 0..(used + 1).min(k) {
            if Bits(f.neighbors(v)).filter(|&w| w < v).all(|w| colour[w] != c) {
                colour.push(c);
                colourings(f, k, v + 1, used.max(c + 1), colour, out);
                colour.pop();
            }
        }
    }
    fn permutations(items: Vec<Vec<usize>>) -> Vec<Vec<Vec<usize>>> {
        if items.len() <= 1 {
            return vec![items];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.clone();
            let head = rest.remove(i);
            for mut tail in permutations(rest) {
                tail.insert(0, head.clone());
                out.push(tail);
            }
        }
        out
    }
    let mut all = Vec::new();
    colourings(f, k, 0, 0, &mut Vec::new(), &mut all);
    let mut out = Vec::new();
    for colour in all {
        let classes: Vec<Vec<usize>> = (0..k).map(|c| (0..f.order()).filter(|&v| colour[v] == c).collect()).collect();
        if classes.iter().map(Vec::len).min() != Some(t) {
            continue;
        }
        for first in (0..k).filter(|&i| classes[i].len() == t) {
            let mut rest = classes.clone();
            let head = rest.remove(first);
            for mut tail in permutations(rest) {
                tail.insert(0, head.clone());
                out.push(tail);
            }
        }
    }
    out
}

/// Samples proper colourings of `K_{t,n,...,n}` and looks for rainbow
/// copies of `F` both exhaustively and with the proof's greedy embedding.
/// The greedy embedding is tried for every admissible choice of colour
/// classes and class order; within one choice it never backtracks into an
/// earlier class.
pub fn verify_rainbow_lemma(f: &Graph, n: usize, samples: usize, seed: u64) -> Result<RainbowLemmaReport> {
    if f.size() == 0 {
        return Err(Error::domain("the pattern needs at least one edge"));
    }
    if n == 0 {
        return Err(Error::domain("parts must be nonempty"));
    }
    let (t, coloring) = sigma_with_witness(f)?;
    let k = coloring.num_colors();
    let class_orders = admissible_class_orders(f, k, t);
    let mut parts = vec![t];
    parts.extend(std::iter::repeat(n).take(k - 1));
    let host_spec = MultipartiteSpec::new(parts)?;
    let host = complete_multipartite(&host_spec)?;
    if host.size() > 128 {
        return Err(Error::Capacity(format!("{host_spec} has more than 128 edges")));
    }
    let ranges = host_spec.ranges();
    let hn = host.order();
    let delta = host.max_degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RainbowLemmaReport {
        pattern: f.to_graph6(),
        k,
        t,
        n,
        host: host_spec.clone(),
        samples,
        seed,
        rainbow_found: 0,
        greedy_found: 0,
        agreement: 0,
        palette_min: usize::MAX,
        palette_max: 0,
        restarts: 0,
    };
    for _ in 0..samples {
        let palette = rng.gen_range(delta..=2 * delta - 1);
        let (table, used_palette) = random_proper_coloring(&host, palette, &mut rng, &mut report.restarts);
        report.palette_min = report.palette_min.min(used_palette);
        report.palette_max = report.palette_max.max(used_palette);
        let exhaustive = find_rainbow(f, &host, &table).is_some();
        let greedy = class_orders.iter().any(|classes| {
            classes.iter().zip(&ranges).all(|(c, r)| c.len() <= r.len())
                && greedy_embedding(f, classes, &ranges, &table, hn)
        });
        report.rainbow_found += usize::from(exhaustive);
        report.greedy_found += usize::from(greedy);
        report.agreement += usize::from(exhaustive == greedy);
        if greedy && !exhaustive {
            return Err(Error::Invariant("greedy embedding found a copy the exhaustive search missed".into()));
        }
    }
    if samples == 0 {
        report.palette_min = 0;
    }
    Ok(report)
}
