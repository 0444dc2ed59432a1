//! Graph parameters `h(G)` that Turán-type functions maximise, with a small
//! textual syntax for naming them.
//!
//! Counting parameters are evaluated in exact rational arithmetic; spectral
//! ones in floating point.

mod balance;
mod spectral;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::embed::count_copies;
use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};

pub use balance::{check_balanced, BalanceOptions, BalanceReport, PropertyCheck, Sample};
pub use spectral::{local_density, p_spectral_radius, spectral_radius, PSpectralOptions};

pub type Rational = Ratio<i128>;

/// Largest pattern accepted by [`ParameterSpec::SubgraphCount`].
pub const COUNT_PATTERN_MAX_VERTICES: usize = 10;

/// Tolerance used by spectral parameters inside [`evaluate`].
pub const SPECTRAL_TOL: f64 = 1e-12;

/// Value of a graph parameter.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Approx(f64),
}

impl Value {
    pub fn int(x: i128) -> Self {
        Value::Exact(Rational::from_integer(x))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            Value::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            _ => Value::Approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn sub(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a - b),
            _ => Value::Approx(self.to_f64() - other.to_f64()),
        }
    }

    pub fn scale(&self, c: Rational) -> Value {
        match self {
            Value::Exact(a) => Value::Exact(a * c),
            Value::Approx(x) => Value::Approx(x * (*c.numer() as f64 / *c.denom() as f64)),
        }
    }

    /// Total comparison; floating values closer than `tol` (relative to the
    /// larger magnitude, floored at 1) compare equal.
    pub fn compare(&self, other: &Value, tol: f64) -> Ordering {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a.cmp(b),
            _ => {
                let (x, y) = (self.to_f64(), other.to_f64());
                if (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0) {
                    Ordering::Equal
                } else {
                    x.partial_cmp(&y).unwrap_or(Ordering::Equal)
                }
            }
        }
    }

    pub fn parse(s: &str) -> Result<Value> {
        if let Ok(r) = parse_rational(s) {
            return Ok(Value::Exact(r));
        }
        s.trim()
            .parse::<f64>()
            .map(Value::Approx)
            .map_err(|_| Error::syntax(format!("not a number: {s:?}")))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Value::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Value::Approx(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Exact(r) if r.is_integer() && i64::try_from(*r.numer()).is_ok() => {
                s.serialize_i64(*r.numer() as i64)
            }
            Value::Exact(_) => s.serialize_str(&self.to_string()),
            Value::Approx(x) => s.serialize_f64(*x),
        }
    }
}

/// Parses `"3"`, `"2.75"` or `"7/2"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::syntax(format!("not an exact number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| bad())?;
        let q: i128 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if frac.len() > 18 {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num: i128 = digits.parse().map_err(|_| bad())?;
    let den = 10i128.pow(frac.len() as u32);
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// One monomial `coef · x^px · y^py`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coef: Rational,
    pub px: u32,
    pub py: u32,
}

/// Bivariate polynomial with nonnegative coefficients, applied to the
/// endpoint degrees of each edge. Evaluation is symmetrised:
/// `(f(a,b) + f(b,a)) / 2`, so the edge orientation never matters.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    fn raw(&self, x: i128, y: i128) -> Rational {
        self.terms
            .iter()
            .map(|t| t.coef * Rational::from_integer(x.pow(t.px) * y.pow(t.py)))
            .sum()
    }

    pub fn eval_symmetric(&self, a: usize, b: usize) -> Rational {
        let (a, b) = (a as i128, b as i128);
        (self.raw(a, b) + self.raw(b, a)) / Rational::from_integer(2)
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for raw in s.split('+') {
            let raw = raw.trim();
            if raw.is_empty() {
                return Err(Error::syntax(format!("empty term in polynomial {s:?}")));
            }
            let mut term = Term {
                coef: Rational::from_integer(1),
                px: 0,
                py: 0,
            };
            for factor in raw.split('*') {
                let factor = factor.trim();
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b.trim(),
                        e.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::syntax(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                match base {
                    "x" => term.px += exp,
                    "y" => term.py += exp,
                    _ => {
                        let c = parse_rational(base)?;
                        if c < Rational::from_integer(0) {
                            return Err(Error::syntax("polynomial coefficients must be nonnegative"));
                        }
                        term.coef *= Rational::from_integer(1) * pow_rational(c, exp);
                    }
                }
            }
            if term.px + term.py > 8 {
                return Err(Error::syntax(format!("degree of {raw:?} exceeds 8")));
            }
            terms.push(term);
        }
        Ok(Polynomial { terms })
    }
}

fn pow_rational(c: Rational, e: u32) -> Rational {
    (0..e).fold(Rational::from_integer(1), |acc, _| acc * c)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut factors = Vec::new();
                if t.coef != Rational::from_integer(1) || (t.px == 0 && t.py == 0) {
                    factors.push(format_rational(&t.coef));
                }
                for (name, p) in [("x", t.px), ("y", t.py)] {
                    match p {
                        0 => {}
                        1 => factors.push(name.to_string()),
                        _ => factors.push(format!("{name}^{p}")),
                    }
                }
                factors.join("*")
            })
            .collect();
        f.write_str(&parts.join("+"))
    }
}

/// A Turán-type graph parameter.
#[derive(Clone, Debug, PartialEq)]
pub enum ParameterSpec {
    Edges,
    /// Number of `t`-cliques.
    CliqueCount(usize),
    /// Number of unlabelled copies of a pattern.
    SubgraphCount(Graph),
    /// `Σ_v d(v)^r`.
    DegreePowerSum(f64),
    /// `Σ_{uv ∈ E} f(d(u), d(v))`.
    TopologicalIndex(Polynomial),
    SpectralRadius,
    PSpectralRadius(f64),
    /// Fewest edges spanned by `⌈αn⌉` vertices.
    LocalDensity(f64),
    Scale(Rational, Box<ParameterSpec>),
    Sum(Vec<ParameterSpec>),
}

impl ParameterSpec {
    /// Checks every numeric range restriction.
    pub fn validate(&self) -> Result<()> {
        match self {
            ParameterSpec::CliqueCount(t) if *t == 0 => Err(Error::domain("clique size must be >= 1")),
            ParameterSpec::SubgraphCount(h) if h.order() > COUNT_PATTERN_MAX_VERTICES => Err(Error::size(
                format!("count patterns are limited to {COUNT_PATTERN_MAX_VERTICES} vertices"),
            )),
            ParameterSpec::SubgraphCount(h) if h.order() == 0 => {
                Err(Error::domain("count pattern must have a vertex"))
            }
            ParameterSpec::DegreePowerSum(r) if !(r.is_finite() && *r >= 1.0) => {
                Err(Error::domain("degree power must be a real >= 1"))
            }
            ParameterSpec::PSpectralRadius(p) if !(p.is_finite() && *p >= 1.0) => {
                Err(Error::domain("p must be a real >= 1"))
            }
            ParameterSpec::LocalDensity(a) if !(*a > 0.0 && *a <= 1.0) => {
                Err(Error::domain("alpha must lie in (0, 1]"))
            }
            ParameterSpec::Scale(c, inner) => {
                if *c < Rational::from_integer(0) {
                    return Err(Error::domain("scale factor must be nonnegative"));
                }
                inner.validate()
            }
            ParameterSpec::Sum(items) => {
                if items.is_empty() {
                    return Err(Error::domain("sum of nothing"));
                }
                items.iter().try_for_each(|s| s.validate())
            }
            _ => Ok(()),
        }
    }

    /// True when the value is computed in exact arithmetic.
    pub fn is_exact(&self) -> bool {
        match self {
            ParameterSpec::SpectralRadius | ParameterSpec::PSpectralRadius(_) => false,
            ParameterSpec::DegreePowerSum(r) => r.fract() == 0.0 && *r <= 16.0,
            ParameterSpec::Scale(_, inner) => inner.is_exact(),
            ParameterSpec::Sum(items) => items.iter().all(|s| s.is_exact()),
            _ => true,
        }
    }
}

/// Number of `t`-cliques.
pub fn clique_count(g: &Graph, t: usize) -> u64 {
    fn go(g: &Graph, cand: u64, need: usize) -> u64 {
        if need == 0 {
            return 1;
        }
        if (cand.count_ones() as usize) < need {
            return 0;
        }
        let mut total = 0;
        let mut rest = cand;
        for v in Bits(cand) {
            rest &= !(1u64 << v);
            total += go(g, rest & g.neighbors(v), need - 1);
        }
        total
    }
    go(g, g.vertices().0, t)
}

/// `h(G)` for the given parameter.
pub fn evaluate(spec: &ParameterSpec, g: &Graph) -> Result<Value> {
    spec.validate()?;
    eval_inner(spec, g)
}

fn eval_inner(spec: &ParameterSpec, g: &Graph) -> Result<Value> {
    Ok(match spec {
        ParameterSpec::Edges => Value::int(g.size() as i128),
        ParameterSpec::CliqueCount(t) => Value::int(clique_count(g, *t) as i128),
        ParameterSpec::SubgraphCount(h) => Value::int(count_copies(h, g) as i128),
        ParameterSpec::DegreePowerSum(r) => {
            if spec.is_exact() {
                let e = *r as u32;
                Value::int(g.degrees().iter().map(|&d| (d as i128).pow(e)).sum())
            } else {
                Value::Approx(g.degrees().iter().map(|&d| (d as f64).powf(*r)).sum())
            }
        }
        ParameterSpec::TopologicalIndex(poly) => Value::Exact(
            g.edges()
                .iter()
                .map(|&(u, v)| poly.eval_symmetric(g.degree(u), g.degree(v)))
                .sum(),
        ),
        ParameterSpec::SpectralRadius => Value::Approx(spectral_radius(g, SPECTRAL_TOL)?),
        ParameterSpec::PSpectralRadius(p) => {
            Value::Approx(p_spectral_radius(g, *p, &PSpectralOptions::default())?)
        }
        ParameterSpec::LocalDensity(alpha) => Value::int(local_density(g, *alpha)? as i128),
        ParameterSpec::Scale(c, inner) => eval_inner(inner, g)?.scale(*c),
        ParameterSpec::Sum(items) => {
            let mut acc = Value::int(0);
            for s in items {
                acc = acc.add(&eval_inner(s, g)?);
            }
            acc
        }
    })
}

fn fmt_real(x: f64) -> String {
    format!("{x:?}")
}

impl fmt::Display for ParameterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParameterSpec::Edges => f.write_str("edges"),
            ParameterSpec::CliqueCount(t) => write!(f, "kt:{t}"),
            ParameterSpec::SubgraphCount(h) => write!(f, "count:{}", h.to_graph6()),
            ParameterSpec::DegreePowerSum(r) => write!(f, "degpow:{}", fmt_real(*r)),
            ParameterSpec::TopologicalIndex(p) => write!(f, "topo:{p}"),
            ParameterSpec::SpectralRadius => f.write_str("spectral"),
            ParameterSpec::PSpectralRadius(p) => write!(f, "pspectral:{}", fmt_real(*p)),
            ParameterSpec::LocalDensity(a) => write!(f, "local:{}", fmt_real(*a)),
            ParameterSpec::Scale(c, inner) => write!(f, "scale:{}({inner})", format_rational(c)),
            ParameterSpec::Sum(items) => {
                let parts: Vec<String> = items.iter().map(|s| s.to_string()).collect();
                write!(f, "sum({})", parts.join(","))
            }
        }
    }
}

impl Serialize for ParameterSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Splits on commas that are not nested inside parentheses.
fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::syntax(format!("unbalanced ')' in {s:?}")));
                }
            }
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::syntax(format!("unbalanced '(' in {s:?}")));
    }
    out.push(&s[start..]);
    Ok(out)
}

fn parse_real(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::syntax(format!("{what}: bad number {s:?}")))
}

impl FromStr for ParameterSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let spec = if let Some(body) = s.strip_prefix("sum(") {
            let inner = body
                .strip_suffix(')')
                .ok_or_else(|| Error::syntax(format!("sum(...) not closed in {s:?}")))?;
            let items = split_top_level(inner)?
                .into_iter()
                .map(str::parse)
                .collect::<Result<Vec<ParameterSpec>>>()?;
            ParameterSpec::Sum(items)
        } else if let Some(body) = s.strip_prefix("scale:") {
            let open = body
                .find('(')
                .ok_or_else(|| Error::syntax(format!("scale:c(...) expected, got {s:?}")))?;
            let inner = body[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::syntax(format!("scale:c(...) not closed in {s:?}")))?;
            ParameterSpec::Scale(parse_rational(&body[..open])?, Box::new(inner.parse()?))
        } else {
            let (name, arg) = match s.split_once(':') {
                Some((n, a)) => (n, Some(a)),
                None => (s, None),
            };
            let need = |what: &str| {
                arg.ok_or_else(|| Error::syntax(format!("{what} needs an argument: {s:?}")))
            };
            match (name, arg) {
                ("edges", None) => ParameterSpec::Edges,
                ("spectral", None) => ParameterSpec::SpectralRadius,
                ("kt", _) => ParameterSpec::CliqueCount(
                    need("kt")?
                        .trim()
                        .parse()
                        .map_err(|_| Error::syntax(format!("kt: bad clique size in {s:?}")))?,
                ),
                ("count", _) => ParameterSpec::SubgraphCount(Graph::from_graph6(need("count")?)?),
                ("degpow", _) => ParameterSpec::DegreePowerSum(parse_real(need("degpow")?, "degpow")?),
                ("topo", _) => ParameterSpec::TopologicalIndex(need("topo")?.parse()?),
                ("pspectral", _) => ParameterSpec::PSpectralRadius(parse_real(need("pspectral")?, "pspectral")?),
                ("local", _) => ParameterSpec::LocalDensity(parse_real(need("local")?, "local")?),
                _ => return Err(Error::syntax(format!("unknown parameter {s:?}"))),
            }
        };
        spec.validate().map_err(|e| match e {
            Error::Domain(m) => Error::Syntax(m),
            other => other,
        })?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, complete_multipartite, cycle, turan, MultipartiteSpec};
    use proptest::prelude::*;

    fn kpart(p: &[usize]) -> Graph {
        complete_multipartite(&MultipartiteSpec::new(p.to_vec()).unwrap()).unwrap()
    }

    fn exact(v: i128) -> Value {
        Value::int(v)
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate(&ParameterSpec::Edges, &turan(5, 2).unwrap()).unwrap(), exact(6));
        assert_eq!(
            evaluate(&ParameterSpec::DegreePowerSum(2.0), &kpart(&[2, 3])).unwrap(),
            exact(30)
        );
        assert_eq!(evaluate(&ParameterSpec::CliqueCount(3), &kpart(&[3, 3])).unwrap(), exact(0));
        assert_eq!(evaluate(&ParameterSpec::CliqueCount(3), &complete(5).unwrap()).unwrap(), exact(10));
        assert_eq!(
            evaluate(&ParameterSpec::SubgraphCount(cycle(4).unwrap()), &complete(4).unwrap()).unwrap(),
            exact(3)
        );
    }

    #[test]
    fn topological_indices() {
        let g = kpart(&[2, 3]);
        let one: Polynomial = "1".parse().unwrap();
        assert_eq!(
            evaluate(&ParameterSpec::TopologicalIndex(one), &g).unwrap(),
            exact(g.size() as i128)
        );
        // second Zagreb index of K_{2,3}: 6 edges with degree product 6
        let m2: Polynomial = "x*y".parse().unwrap();
        assert_eq!(evaluate(&ParameterSpec::TopologicalIndex(m2), &g).unwrap(), exact(36));
        // asymmetric input is symmetrised: x over 6 edges with degrees (3,2)
        let px: Polynomial = "x".parse().unwrap();
        assert_eq!(
            evaluate(&ParameterSpec::TopologicalIndex(px), &g).unwrap(),
            Value::Exact(Rational::new(30, 2))
        );
        let half: Polynomial = "0.5*x^2+0.5*y^2".parse().unwrap();
        assert_eq!(half.to_string(), "1/2*x^2+1/2*y^2");
    }

    #[test]
    fn combinators() {
        let g = complete(4).unwrap();
        let s: ParameterSpec = "sum(edges,scale:2(kt:3))".parse().unwrap();
        assert_eq!(evaluate(&s, &g).unwrap(), exact(6 + 8));
        let mixed: ParameterSpec = "sum(edges,spectral)".parse().unwrap();
        let v = evaluate(&mixed, &g).unwrap();
        assert!(!v.is_exact());
        assert!((v.to_f64() - 9.0).abs() < 1e-9);
        let half: ParameterSpec = "scale:1/2(edges)".parse().unwrap();
        assert_eq!(evaluate(&half, &cycle(5).unwrap()).unwrap(), Value::Exact(Rational::new(5, 2)));
    }

    #[test]
    fn spec_syntax_round_trips() {
        for s in [
            "edges",
            "kt:3",
            "count:Bw",
            "degpow:2.0",
            "topo:x*y",
            "spectral",
            "pspectral:1.5",
            "local:0.6",
            "sum(edges,kt:3)",
            "scale:3(edges)",
            "sum(scale:1/2(degpow:2.0),sum(edges,spectral))",
        ] {
            let spec: ParameterSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        for bad in ["edge", "kt:", "degpow:0.5", "local:0", "local:1.5", "pspectral:0.9", "sum(edges", "count:!!", "topo:x-y", "kt:0"] {
            assert!(bad.parse::<ParameterSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn local_density_errors_on_zero_size() {
        let g = Graph::empty(3).unwrap();
        // ⌈0.1 · 0⌉ = 0 on the null graph
        assert!(evaluate(&ParameterSpec::LocalDensity(0.1), &Graph::empty(0).unwrap()).is_err());
        assert_eq!(evaluate(&ParameterSpec::LocalDensity(0.5), &g).unwrap(), exact(0));
    }

    #[test]
    fn value_formatting() {
        assert_eq!(Value::parse("10").unwrap(), exact(10));
        assert_eq!(Value::parse("2.5").unwrap(), Value::Exact(Rational::new(5, 2)));
        assert_eq!(Value::parse("1e-3").unwrap(), Value::Approx(1e-3));
        assert!(Value::parse("ten").is_err());
        assert_eq!(Value::Exact(Rational::new(13, 2)).to_string(), "13/2");
        assert_eq!(
            Value::Approx(1.0).compare(&Value::Approx(1.0 + 1e-12), 1e-9),
            Ordering::Equal
        );
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
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
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn degree_identities(g in arb_graph(9)) {
            let e = evaluate(&ParameterSpec::Edges, &g).unwrap();
            prop_assert_eq!(e.clone(), exact(g.degrees().iter().sum::<usize>() as i128 / 2));
            prop_assert_eq!(evaluate(&ParameterSpec::DegreePowerSum(1.0), &g).unwrap(), e.scale(Rational::from_integer(2)));
            prop_assert_eq!(evaluate(&ParameterSpec::TopologicalIndex("1".parse().unwrap()), &g).unwrap(), e.clone());
            prop_assert_eq!(evaluate(&ParameterSpec::LocalDensity(1.0), &g).unwrap(), e);
        }

        #[test]
        fn monotone_under_edge_addition(g in arb_graph(7), pick in any::<u32>()) {
            let non_edges: Vec<(usize, usize)> = g.complement().edges();
            prop_assume!(!non_edges.is_empty());
            let (u, v) = non_edges[pick as usize % non_edges.len()];
            let h = g.add_edge(u, v).unwrap();
            for s in ["edges", "kt:3", "count:Bo", "degpow:2.0", "degpow:1.5", "topo:x*y+1", "spectral", "pspectral:2.0", "local:0.6"] {
                let spec: ParameterSpec = s.parse().unwrap();
                let before = evaluate(&spec, &g).unwrap();
                let after = evaluate(&spec, &h).unwrap();
                prop_assert!(after.to_f64() >= before.to_f64() - 1e-6, "{} decreased: {} -> {}", s, before, after);
            }
        }
    }
}
