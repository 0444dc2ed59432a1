use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value as Json};

use ess_core::coloring::{chromatic_number, color_critical_edge, optimal_coloring, sigma_family, sigma_with_witness};
use ess_core::constructions::Construction;
use ess_core::graph::parse_graph6_stream;
use ess_core::parameters::{check_balanced, evaluate, BalanceOptions, ParameterSpec, Value};
use ess_core::search::{
    abstract_chi, count_labeled_free, edge_critical_check, extremal, sigma_partition, stability_distance,
    supersaturation_min, verify_rainbow_lemma, SearchOptions,
};
use ess_core::structures::{PartitionOracle, DEFAULT_NODE_BUDGET};
use ess_core::{Error, Graph};

/// Exact small-n search and verification for Turán-type extremal problems.
#[derive(Parser, Debug)]
#[command(name = "ess", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    config: RunConfig,

    /// Worker threads for the search module.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Build a named construction or decode a graph6 string.
    Construct,
    /// Evaluate a parameter on --graph or every graph in --graphs.
    Param,
    /// Abstract chromatic number interval of a class.
    Chi,
    /// Chromatic number, an optimal colouring and a colour-critical edge.
    Chromatic,
    /// σ of a graph, or of the family in --graphs.
    Sigma,
    /// Smallest part of a complete k-partite graph outside the class.
    SigmaPartition,
    /// Extremal value and all maximisers.
    Extremal,
    /// Fewest copies of a pattern above a parameter threshold.
    Supersat,
    /// Edit distance to the nearest complete multipartite graph.
    Stability,
    /// Sampled balancedness conditions of a parameter.
    Balanced,
    /// Edge-criticality of a class via T⁺(n, k-1).
    EdgeCritical,
    /// Rainbow embedding lemma sampled on random proper colourings.
    RainbowLemma,
    /// Number of labelled graphs avoiding a pattern.
    CountFree,
    /// Membership of graphs in a class, with witnesses.
    Membership,
}

impl Command {
    fn uses_oracle(self) -> bool {
        matches!(
            self,
            Command::Chi | Command::SigmaPartition | Command::Extremal | Command::EdgeCritical | Command::Membership
        )
    }
}

/// Everything that determines a report, echoed into it.
#[derive(Args, Debug, Clone, Serialize)]
struct RunConfig {
    #[arg(short = 'n', long = "n", global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    nmax: Option<usize>,
    #[arg(long, global = true)]
    mmax: Option<usize>,
    #[arg(long = "part-cap", global = true)]
    part_cap: Option<usize>,
    /// Comma-separated graph6 patterns forbidden as subgraphs.
    #[arg(long, global = true)]
    forbid: Option<String>,
    /// Comma-separated graph6 patterns forbidden as induced subgraphs.
    #[arg(long = "forbid-induced", global = true)]
    forbid_induced: Option<String>,
    /// Structured pattern file.
    #[arg(long = "forbid-eo", value_name = "FILE", global = true)]
    forbid_eo: Option<String>,
    #[arg(long, value_name = "SPEC", global = true)]
    oracle: Option<String>,
    #[arg(long, value_name = "SPEC", global = true)]
    param: Option<String>,
    /// File of graph6 lines, `-` for stdin.
    #[arg(long, value_name = "FILE", global = true)]
    graphs: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Inclusive range `A..B`.
    #[arg(long, value_name = "A..B", global = true)]
    range: Option<String>,
    /// graph6 string or construction such as `turan:7,3`.
    #[arg(long, global = true)]
    graph: Option<String>,
    #[arg(short = 'k', global = true)]
    k: Option<usize>,
    #[arg(short = 'a', global = true)]
    a: Option<f64>,
    /// Threshold for supersat.
    #[arg(long, global = true)]
    min: Option<String>,
    /// Comma-separated sizes for balanced.
    #[arg(long, value_delimiter = ',', global = true)]
    sizes: Option<Vec<usize>>,
    /// Minimum part fraction for balanced.
    #[arg(short = 'c', global = true)]
    c: Option<f64>,
    #[arg(long, global = true)]
    band: Option<f64>,
    /// Node budget for structured and rainbow membership searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Core(Error::Invariant(_)) => 4,
            Failure::Core(e) if e.is_limit() => 3,
            Failure::Core(_) => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Outcome<T> {
    v.clone().ok_or_else(|| usage(format!("missing required flag {flag}")))
}

/// A graph6 string, or a construction when the text has a `name:` prefix.
fn load_graph(text: &str) -> Outcome<Graph> {
    if text.contains(':') {
        Ok(Construction::from_str(text)?.build()?)
    } else {
        Ok(Graph::from_graph6(text)?)
    }
}

fn load_graphs(path: &str) -> Outcome<Vec<Graph>> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| usage(format!("cannot read {path}: {e}")))?;
    Ok(parse_graph6_stream(&text)?)
}

fn parse_range(s: &str) -> Outcome<Vec<usize>> {
    let bad = || usage(format!("bad range {s:?}, expected A..B"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

impl RunConfig {
    /// The one oracle named by --oracle, --forbid, --forbid-induced or
    /// --forbid-eo.
    fn oracle_spec(&self) -> Outcome<String> {
        let given: Vec<String> = [
            self.oracle.clone(),
            self.forbid.as_ref().map(|s| format!("forbid:{s}")),
            self.forbid_induced.as_ref().map(|s| format!("forbid-induced:{s}")),
            self.forbid_eo.as_ref().map(|s| format!("forbid-eo:{s}")),
        ]
        .into_iter()
        .flatten()
        .collect();
        match given.len() {
            1 => Ok(given.into_iter().next().expect("one element")),
            0 => Err(usage("an oracle is required: --oracle, --forbid, --forbid-induced or --forbid-eo")),
            _ => Err(usage("give only one of --oracle, --forbid, --forbid-induced, --forbid-eo")),
        }
    }

    fn oracle(&self) -> Outcome<PartitionOracle> {
        let o = PartitionOracle::parse(&self.oracle_spec()?)?;
        Ok(o.with_node_budget(self.budget.unwrap_or(DEFAULT_NODE_BUDGET)))
    }

    /// The single pattern given with --forbid or --graph.
    fn pattern(&self) -> Outcome<Graph> {
        match (&self.forbid, &self.graph) {
            (Some(f), None) if !f.contains(',') => Ok(Graph::from_graph6(f.trim())?),
            (None, Some(g)) => load_graph(g),
            _ => Err(usage("give exactly one pattern with --forbid or --graph")),
        }
    }

    fn param(&self) -> Outcome<ParameterSpec> {
        Ok(need(&self.param, "--param")?.parse()?)
    }

    fn sizes(&self) -> Outcome<Vec<usize>> {
        match (&self.n, &self.range) {
            (Some(n), None) => Ok(vec![*n]),
            (None, Some(r)) => parse_range(r),
            _ => Err(usage("give exactly one of -n and --range")),
        }
    }

    fn target_graphs(&self) -> Outcome<Vec<Graph>> {
        match (&self.graph, &self.graphs) {
            (Some(g), None) => Ok(vec![load_graph(g)?]),
            (None, Some(path)) => load_graphs(path),
            _ => Err(usage("give exactly one of --graph and --graphs")),
        }
    }
}

fn to_json<T: Serialize>(x: &T) -> Outcome<Json> {
    serde_json::to_value(x).map_err(|e| Failure::Core(Error::Invariant(format!("serialisation failed: {e}"))))
}

fn run(cmd: Command, cfg: &mut RunConfig, workers: usize) -> Outcome<Json> {
    let opts = SearchOptions { workers, seed: cfg.seed };
    match cmd {
        Command::Construct => {
            let g = load_graph(&need(&cfg.graph, "--graph")?)?;
            Ok(json!({
                "graph": g.to_graph6(),
                "order": g.order(),
                "size": g.size(),
                "degrees": g.degrees(),
            }))
        }
        Command::Param => {
            let spec = cfg.param()?;
            let rows = cfg
                .target_graphs()?
                .iter()
                .map(|g| Ok(json!({ "graph": g.to_graph6(), "value": to_json(&evaluate(&spec, g)?)? })))
                .collect::<Outcome<Vec<_>>>()?;
            Ok(json!({ "param": spec.to_string(), "values": rows }))
        }
        Command::Chi => {
            let nmax = *cfg.nmax.get_or_insert(8);
            let mmax = *cfg.mmax.get_or_insert(6);
            to_json(&abstract_chi(&cfg.oracle()?, nmax, mmax)?)
        }
        Command::Chromatic => {
            let g = load_graph(&need(&cfg.graph, "--graph")?)?;
            let chi = chromatic_number(&g)?;
            let coloring = optimal_coloring(&g)?;
            let critical = color_critical_edge(&g)?;
            Ok(json!({
                "graph": g.to_graph6(),
                "chromatic_number": chi,
                "coloring": to_json(&coloring)?,
                "critical_edge": critical.map(|(u, v)| [u, v]),
            }))
        }
        Command::Sigma => match (&cfg.graph, &cfg.graphs) {
            (Some(text), None) => {
                let g = load_graph(text)?;
                let (value, witness) = sigma_with_witness(&g)?;
                Ok(json!({
                    "graph": g.to_graph6(),
                    "chromatic_number": witness.num_colors(),
                    "sigma": value,
                    "coloring": to_json(&witness)?,
                }))
            }
            (None, Some(path)) => {
                let family = load_graphs(path)?;
                let value = sigma_family(&family)?;
                let graphs: Vec<String> = family.iter().map(|g| g.to_graph6()).collect();
                Ok(json!({ "graphs": graphs, "sigma": value }))
            }
            _ => Err(usage("give exactly one of --graph and --graphs")),
        },
        Command::SigmaPartition => {
            let k = need(&cfg.k, "-k")?;
            let cap = need(&cfg.part_cap, "--part-cap")?;
            to_json(&sigma_partition(&cfg.oracle()?, k, cap)?)
        }
        Command::Extremal => {
            let oracle = cfg.oracle()?;
            let spec = cfg.param()?;
            let supplied = cfg.graphs.as_deref().map(load_graphs).transpose()?;
            let reports = cfg
                .sizes()?
                .into_iter()
                .map(|n| {
                    let list = supplied
                        .as_ref()
                        .map(|all| all.iter().filter(|g| g.order() == n).cloned().collect::<Vec<_>>());
                    to_json(&extremal(n, &oracle, &spec, list.as_deref(), &opts)?)
                })
                .collect::<Outcome<Vec<_>>>()?;
            Ok(if cfg.range.is_some() { Json::Array(reports) } else { reports.into_iter().next().expect("one size") })
        }
        Command::Supersat => {
            let n = need(&cfg.n, "-n")?;
            let threshold = Value::parse(&need(&cfg.min, "--min")?)?;
            to_json(&supersaturation_min(n, &cfg.pattern()?, &cfg.param()?, &threshold, workers)?)
        }
        Command::Stability => {
            let k = need(&cfg.k, "-k")?;
            let rows = cfg
                .target_graphs()?
                .iter()
                .map(|g| to_json(&stability_distance(g, k)?))
                .collect::<Outcome<Vec<_>>>()?;
            Ok(if cfg.graph.is_some() { rows.into_iter().next().expect("one graph") } else { Json::Array(rows) })
        }
        Command::Balanced => {
            let spec = cfg.param()?;
            let a = need(&cfg.a, "-a")?;
            let k = need(&cfg.k, "-k")?;
            let sizes = need(&cfg.sizes, "--sizes")?;
            let defaults = BalanceOptions::default();
            let opts = BalanceOptions {
                band: *cfg.band.get_or_insert(defaults.band),
                samples_per_size: *cfg.samples.get_or_insert(defaults.samples_per_size),
                seed: cfg.seed,
                c: cfg.c,
            };
            to_json(&check_balanced(&spec, a, k, &sizes, &opts)?)
        }
        Command::EdgeCritical => {
            let k = need(&cfg.k, "-k")?;
            let ns = parse_range(&need(&cfg.range, "--range")?)?;
            to_json(&edge_critical_check(&cfg.oracle()?, k, &ns)?)
        }
        Command::RainbowLemma => {
            let f = load_graph(&need(&cfg.graph, "--graph")?)?;
            let n = need(&cfg.n, "-n")?;
            let samples = *cfg.samples.get_or_insert(100);
            to_json(&verify_rainbow_lemma(&f, n, samples, cfg.seed)?)
        }
        Command::CountFree => {
            let n = need(&cfg.n, "-n")?;
            let f = cfg.pattern()?;
            let count = count_labeled_free(n, &f, workers)?;
            let count = u64::try_from(count).map_err(|_| Failure::Core(Error::Capacity("count exceeds u64".into())))?;
            Ok(json!({ "n": n, "pattern": f.to_graph6(), "count": count }))
        }
        Command::Membership => {
            let oracle = cfg.oracle()?;
            let rows = cfg
                .target_graphs()?
                .iter()
                .map(|g| {
                    let w = oracle.membership(g)?;
                    Ok(json!({
                        "graph": g.to_graph6(),
                        "member": w.is_some(),
                        "witness": to_json(&w)?,
                    }))
                })
                .collect::<Outcome<Vec<_>>>()?;
            Ok(json!({ "oracle": oracle.description(), "results": rows }))
        }
    }
}

/// Timing lives in `runtime`; nested copies would break reproducibility.
fn strip_timing(v: &mut Json) {
    match v {
        Json::Object(map) => {
            map.remove("wall_ms");
            map.values_mut().for_each(strip_timing);
        }
        Json::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let Cli {
        command,
        mut config,
        workers,
        out,
    } = cli;
    if workers == 0 {
        eprintln!("error: --workers must be at least 1");
        return ExitCode::from(2);
    }
    if command.uses_oracle() {
        config.budget.get_or_insert(DEFAULT_NODE_BUDGET);
    }
    let start = Instant::now();
    let mut result = match run(command, &mut config, workers) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    strip_timing(&mut result);
    let mut config_json = serde_json::to_value(&config).expect("config serialises");
    config_json["subcommand"] = serde_json::to_value(command).expect("command serialises");
    let report = json!({
        "config": config_json,
        "result": result,
        "runtime": { "wall_ms": start.elapsed().as_millis() as u64, "workers": workers },
    });
    let text = serde_json::to_string_pretty(&report).expect("report serialises") + "\n";
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
