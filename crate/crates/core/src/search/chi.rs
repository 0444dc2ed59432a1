use serde::{Serialize, Serializer};

use crate::constructions::{complete_multipartite, turan, turan_plus, MultipartiteSpec};
use crate::error::{Error, Result};
use crate::graph::MAX_VERTICES;
use crate::structures::PartitionOracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiBound {
    Finite(usize),
    /// No bound found within the budget.
    Infinite,
}

impl Serialize for ChiBound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ChiBound::Finite(k) => s.serialize_u64(*k as u64),
            ChiBound::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Evidence interval for the abstract chromatic number.
#[derive(Clone, Debug, Serialize)]
pub struct ChiInterval {
    pub k_lo: ChiBound,
    pub k_hi: ChiBound,
    /// Complete `(k_lo - 1)`-partite specs confirmed as members.
    pub lower_witnesses: Vec<MultipartiteSpec>,
    /// The first complete multipartite spec that failed at `k_lo` parts.
    pub lower_failure: Option<MultipartiteSpec>,
    /// `T(m, k_hi)` found outside the class, as `(m, k_hi)`.
    pub upper_witness: Option<(usize, usize)>,
    /// Specs whose membership query hit a limit.
    pub unknown: Vec<String>,
    pub n_max: usize,
    pub m_max: usize,
    pub evidence_only: bool,
}

impl ChiInterval {
    /// True iff `k_lo <= k <= k_hi`; an infinite lower end contains no
    /// finite `k`.
    pub fn contains(&self, k: usize) -> bool {
        let above = matches!(self.k_lo, ChiBound::Finite(lo) if lo <= k);
        let below = match self.k_hi {
            ChiBound::Finite(hi) => k <= hi,
            ChiBound::Infinite => true,
        };
        above && below
    }
}

/// Partitions of totals up to `max_total` into exactly `parts` positive
/// parts, nondecreasing, ordered by total then lexicographically.
fn specs_with_parts(parts: usize, max_total: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, min: usize, max_part: usize, remaining: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for p in min..=max_part.min(left) {
            if p * remaining > left {
                break;
            }
            cur.push(p);
            go(left - p, p, max_part, remaining - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_total, 1, max_part, parts, &mut Vec::new(), &mut out);
    out.sort_by_key(|s| (s.iter().sum::<usize>(), s.clone()));
    out
}

enum Verdict {
    Member,
    Outside,
    Unknown,
}

fn verdict(oracle: &PartitionOracle, spec: &MultipartiteSpec, unknown: &mut Vec<String>) -> Result<Verdict> {
    let g = complete_multipartite(spec)?;
    match oracle.contains(&g) {
        Ok(true) => Ok(Verdict::Member),
        Ok(false) => Ok(Verdict::Outside),
        Err(e) if e.is_limit() => {
            unknown.push(format!("{spec}: {e}"));
            Ok(Verdict::Unknown)
        }
        Err(e) => Err(e),
    }
}

/// Evidence interval `[k_lo, k_hi]` for the abstract chromatic number of
/// the class `A`.
///
/// `k_lo` is the largest `k` such that every complete `(k-1)`-partite graph
/// on at most `n_max` vertices is a member. `k_hi` is the least `k` such
/// that some `T(m, k)` with parts of size at most `m_max` is not a member.
pub fn abstract_chi(oracle: &PartitionOracle, n_max: usize, m_max: usize) -> Result<ChiInterval> {
    if n_max == 0 || m_max == 0 {
        return Err(Error::domain("n_max and m_max must be positive"));
    }
    if n_max > MAX_VERTICES {
        return Err(Error::Capacity(format!("n_max = {n_max} exceeds {MAX_VERTICES} vertices")));
    }
    let mut unknown = Vec::new();

    let mut k_lo = ChiBound::Infinite;
    let mut lower_witnesses = Vec::new();
    let mut lower_failure = None;
    'parts: for j in 1..=n_max {
        let mut confirmed = Vec::new();
        for parts in specs_with_parts(j, n_max, n_max) {
            let spec = MultipartiteSpec::new(parts)?;
            match verdict(oracle, &spec, &mut unknown)? {
                Verdict::Member => confirmed.push(spec),
                Verdict::Outside | Verdict::Unknown => {
                    k_lo = ChiBound::Finite(j);
                    lower_failure = Some(spec);
                    break 'parts;
                }
            }
        }
        lower_witnesses = confirmed;
    }

    let mut k_hi = ChiBound::Infinite;
    let mut upper_witness = None;
    'k: for k in 1..=n_max + 1 {
        for m in k..=(k * m_max).min(MAX_VERTICES) {
            let g = turan(m, k)?;
            match oracle.contains(&g) {
                Ok(true) => {}
                Ok(false) => {
                    k_hi = ChiBound::Finite(k);
                    upper_witness = Some((m, k));
                    break 'k;
                }
                Err(e) if e.is_limit() => unknown.push(format!("T({m},{k}): {e}")),
                Err(e) => return Err(e),
            }
        }
    }

    Ok(ChiInterval {
        k_lo,
        k_hi,
        lower_witnesses,
        lower_failure,
        upper_witness,
        unknown,
        n_max,
        m_max,
        evidence_only: true,
    })
}

/// Budget-limited `σ(A, F)` for a class of abstract chromatic number `k`.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaReport {
    pub k: usize,
    pub part_cap: usize,
    /// `None` means no failing spec exists with parts up to the cap.
    pub value: Option<usize>,
    pub witness: Option<MultipartiteSpec>,
    pub tested: usize,
    pub unknown: Vec<String>,
    /// Non-members certify "no member contains T" only for monotone classes.
    pub monotone: bool,
    pub budget_limited: bool,
}

/// Smallest `σ(T) = min part` over complete `k`-partite `T` with parts at
/// most `part_cap` that are not in `A`.
pub fn sigma_partition(oracle: &PartitionOracle, k: usize, part_cap: usize) -> Result<SigmaReport> {
    if k < 2 {
        return Err(Error::domain("k must be at least 2"));
    }
    if part_cap == 0 {
        return Err(Error::domain("part cap must be positive"));
    }
    if k * part_cap > MAX_VERTICES {
        return Err(Error::Capacity(format!("{k} parts of size {part_cap} exceed {MAX_VERTICES} vertices")));
    }
    let mut specs = specs_with_parts(k, k * part_cap, part_cap);
    specs.sort_by_key(|s| (s[0], s.iter().sum::<usize>(), s.clone()));
    let mut unknown = Vec::new();
    let mut tested = 0;
    for parts in specs {
        let spec = MultipartiteSpec::new(parts)?;
        tested += 1;
        if let Verdict::Outside = verdict(oracle, &spec, &mut unknown)? {
            return Ok(SigmaReport {
                k,
                part_cap,
                value: Some(spec.smallest_part()),
                witness: Some(spec),
                tested,
                unknown,
                monotone: oracle.is_monotone(),
                budget_limited: true,
            });
        }
    }
    Ok(SigmaReport {
        k,
        part_cap,
        value: None,
        witness: None,
        tested,
        unknown,
        monotone: oracle.is_monotone(),
        budget_limited: true,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeCriticalCase {
    pub n: usize,
    /// graph6 of `T⁺(n, k-1)`.
    pub graph: String,
    /// `None` when the membership query hit a limit.
    pub member: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeCriticalReport {
    pub k: usize,
    pub cases: Vec<EdgeCriticalCase>,
    pub chi: ChiInterval,
    pub chi_consistent: bool,
    pub monotone: bool,
    pub edge_critical: bool,
}

/// Checks that `T⁺(n, k-1) ∉ A` for every `n` in `ns` and that the
/// abstract chromatic number evidence is consistent with `k`.
pub fn edge_critical_check(oracle: &PartitionOracle, k: usize, ns: &[usize]) -> Result<EdgeCriticalReport> {
    if k < 2 {
        return Err(Error::domain("k must be at least 2"));
    }
    if ns.is_empty() {
        return Err(Error::domain("empty range of n"));
    }
    let mut cases = Vec::new();
    for &n in ns {
        let g = turan_plus(n, k - 1)?;
        let member = match oracle.contains(&g) {
            Ok(m) => Some(m),
            Err(e) if e.is_limit() => None,
            Err(e) => return Err(e),
        };
        cases.push(EdgeCriticalCase {
            n,
            graph: g.to_graph6(),
            member,
        });
    }
    let n_max = *ns.iter().max().expect("nonempty");
    let chi = abstract_chi(oracle, n_max, n_max)?;
    let chi_consistent = chi.contains(k);
    let edge_critical = chi_consistent && cases.iter().all(|c| c.member == Some(false));
    Ok(EdgeCriticalReport {
        k,
        cases,
        chi,
        chi_consistent,
        monotone: oracle.is_monotone(),
        edge_critical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::chromatic_number;
    use crate::constructions::{complete, cycle};
    use crate::search::all_graphs;

    fn forbid(g: &crate::Graph) -> PartitionOracle {
        PartitionOracle::parse(&format!("forbid:{g}")).unwrap()
    }

    #[test]
    fn spec_lists() {
        assert_eq!(specs_with_parts(2, 4, 4), vec![vec![1, 1], vec![1, 2], vec![1, 3], vec![2, 2]]);
        assert_eq!(specs_with_parts(3, 2, 2), Vec::<Vec<usize>>::new());
        assert_eq!(specs_with_parts(2, 6, 2), vec![vec![1, 1], vec![1, 2], vec![2, 2]]);
    }

    #[test]
    fn chi_examples() {
        let rainbow = PartitionOracle::parse("rainbow:Bw").unwrap();
        let r = abstract_chi(&rainbow, 8, 6).unwrap();
        assert_eq!((r.k_lo, r.k_hi), (ChiBound::Finite(3), ChiBound::Finite(3)));
        assert_eq!(r.upper_witness, Some((3, 3)));
        let k4 = abstract_chi(&forbid(&complete(4).unwrap()), 8, 6).unwrap();
        assert_eq!((k4.k_lo, k4.k_hi), (ChiBound::Finite(4), ChiBound::Finite(4)));
        let free = abstract_chi(&PartitionOracle::parse("forbid:").unwrap(), 8, 6).unwrap();
        assert_eq!((free.k_lo, free.k_hi), (ChiBound::Infinite, ChiBound::Infinite));
        assert!(!free.contains(100));
    }

    #[test]
    fn chi_matches_chromatic_number_for_small_connected_patterns() {
        for n in 1..=4 {
            for f in all_graphs(n).unwrap() {
                if crate::canon::degree_sequence(&f).first() == Some(&0) && n > 1 {
                    continue;
                }
                let chi = chromatic_number(&f).unwrap();
                let r = abstract_chi(&forbid(&f), 8, 6).unwrap();
                assert_eq!((r.k_lo, r.k_hi), (ChiBound::Finite(chi), ChiBound::Finite(chi)), "{f}");
            }
        }
    }

    #[test]
    fn interval_membership() {
        let mk = |lo, hi| ChiInterval {
            k_lo: lo,
            k_hi: hi,
            lower_witnesses: vec![],
            lower_failure: None,
            upper_witness: None,
            unknown: vec![],
            n_max: 1,
            m_max: 1,
            evidence_only: true,
        };
        let i = mk(ChiBound::Finite(2), ChiBound::Finite(4));
        assert!(!i.contains(1) && i.contains(2) && i.contains(4) && !i.contains(5));
        let j = mk(ChiBound::Finite(3), ChiBound::Infinite);
        assert!(!j.contains(2) && j.contains(3) && j.contains(50));
    }

    #[test]
    fn sigma_partition_examples() {
        let rainbow = PartitionOracle::parse("rainbow:Bw").unwrap();
        let r = sigma_partition(&rainbow, 3, 3).unwrap();
        assert_eq!(r.value, Some(1));
        assert_eq!(r.witness.unwrap().parts(), &[1, 1, 1]);
        assert_eq!(sigma_partition(&forbid(&complete(4).unwrap()), 4, 3).unwrap().value, Some(1));
        // K_{2,2,2} is the smallest tripartite graph containing a copy of itself
        let oct = complete_multipartite(&MultipartiteSpec::new(vec![2, 2, 2]).unwrap()).unwrap();
        assert_eq!(sigma_partition(&forbid(&oct), 3, 3).unwrap().value, Some(2));
        // every complete bipartite graph with a part of size 1 is a star
        let r = sigma_partition(&PartitionOracle::parse(&format!("forbid-induced:{}", cycle(4).unwrap())).unwrap(), 2, 3).unwrap();
        assert_eq!(r.value, Some(2));
        assert!(!r.monotone);
        let none = sigma_partition(&PartitionOracle::parse("forbid:").unwrap(), 2, 3).unwrap();
        assert_eq!(none.value, None);
        assert_eq!(none.tested, 6);
        assert!(sigma_partition(&rainbow, 1, 3).is_err());
    }

    #[test]
    fn edge_critical_examples() {
        let ns: Vec<usize> = (4..=8).collect();
        let rainbow = PartitionOracle::parse("rainbow:Bw").unwrap();
        assert!(edge_critical_check(&rainbow, 3, &ns).unwrap().edge_critical);
        let c5 = edge_critical_check(&forbid(&cycle(5).unwrap()), 3, &[6, 7, 8, 9]).unwrap();
        assert!(c5.edge_critical, "{c5:#?}");
        let k4 = edge_critical_check(&forbid(&complete(4).unwrap()), 3, &ns).unwrap();
        assert!(!k4.edge_critical);
        assert!(k4.cases.iter().all(|c| c.member == Some(true)));
    }
}
