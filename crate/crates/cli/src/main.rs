mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rado_core::audit::{self, GFreeMode, Verdict};
use rado_core::constructions;
use rado_core::embed::{self, EmbedConfig};
use rado_core::graph::named_graph;
use rado_core::largeness::{self, FamilyDescriptor, WeightFunction};
use rado_core::vertex_set::parse_host;
use rado_core::{
    graph6, mc, types, EdgeOracle, EdgeProbability, Error, FiniteGraph, TypeMask, VertexSet,
};
use serde::Serialize;
use serde_json::{json, Value};

use output::CsvRow;

const EXIT_USAGE: u8 = 1;
const EXIT_NEGATIVE: u8 = 2;
const EXIT_EXHAUSTED: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "rado",
    version,
    about = "Finite prefixes of a seeded random graph on the positive integers"
)]
struct Cli {
    /// Run seed, decimal or 0x-prefixed hex.
    #[arg(long, global = true, env = "RADO_SEED", default_value = "0", value_parser = parse_seed)]
    seed: u64,

    /// Largest vertex of the materialized prefix.
    #[arg(long, global = true, default_value_t = 100_000)]
    prefix_bound: u64,

    /// Edge probability as a fraction `a/b`.
    #[arg(long, global = true, default_value = "1/2")]
    p: EdgeProbability,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Whether {u, v} is an edge.
    Edge(EdgeArgs),
    /// Neighbours of a vertex inside a host set.
    Adj(AdjArgs),
    /// Type of a vertex over a base, or all host vertices of a given type.
    Type(TypeArgs),
    /// Checks that every type over a base is witnessed below a bound.
    Extension(ExtensionArgs),
    /// Greedy embedding of a target graph into a host set.
    Embed(EmbedArgs),
    /// Searches a host for every graph of order up to k_max.
    AuditWeak(AuditWeakArgs),
    /// Searches a host for an induced copy of a pattern.
    Contains(ContainsArgs),
    /// Largest (or greedy maximal) pattern-free subset of a window.
    GfreeMax(GfreeMaxArgs),
    /// Pattern-free subsets of the windows [2^k, 2^{k+1}) against k*N.
    DyadicAudit(DyadicAuditArgs),
    /// Counting densities of a set at checkpoints.
    Density(DensityArgs),
    /// Weighted sum of a set.
    Sum(SumArgs),
    /// Longest run of consecutive integers in a set.
    Thick(SetArgs),
    /// Longest arithmetic progression in a set.
    Ap(SetArgs),
    /// Thick set with no edges.
    ConstructThick(ConstructThickArgs),
    /// Thick set inducing a copy of a target graph.
    ConstructThickCopy(ConstructThickCopyArgs),
    /// Member of a forcing family whose components stay finite.
    ConstructPi02(ConstructPi02Args),
    /// Density of vertices avoiding n types over disjoint k-sets.
    McDensity(McDensityArgs),
    /// Probability that a random graph has no induced copy of a pattern.
    McGfree(McGfreeArgs),
    /// Probability of a pattern-free subset of size ceil(N log2 n).
    McFn(McFnArgs),
    /// Samples a set with independent inclusion probability.
    SampleMup(SampleMupArgs),
    /// Frequency of one type over a base, with independence statistics.
    Typefreq(TypefreqArgs),
}

#[derive(Args, Debug, Serialize)]
struct EdgeArgs {
    #[arg(short = 'u')]
    u: u64,
    #[arg(short = 'v')]
    v: u64,
}

#[derive(Args, Debug, Serialize)]
struct AdjArgs {
    #[arg(short = 'u', long = "vertex")]
    vertex: u64,
    #[arg(long, default_value = "all")]
    host: String,
}

#[derive(Args, Debug, Serialize)]
struct TypeArgs {
    /// Base set, e.g. `1-8` or `2,5,9`.
    #[arg(long)]
    base: String,
    #[arg(long)]
    vertex: Option<u64>,
    /// 0/1 mask over the base; lists the host vertices of this type.
    #[arg(long, conflicts_with = "vertex")]
    mask: Option<String>,
    #[arg(long, default_value = "all")]
    host: String,
}

#[derive(Args, Debug, Serialize)]
struct ExtensionArgs {
    #[arg(long)]
    base: String,
    #[arg(long)]
    bound: u64,
}

#[derive(Args, Debug, Serialize)]
struct EmbedArgs {
    /// Named graph (K5, C5, P4, E50, petersen), `g6:<graph6>` or `file:PATH`.
    #[arg(long)]
    target: String,
    #[arg(long, default_value = "all")]
    host: String,
    #[arg(long, default_value_t = 64)]
    candidate_cap: usize,
    #[arg(long)]
    score_horizon: Option<usize>,
    /// Retry the previous step's other candidates on a dead end.
    #[arg(long)]
    backtrack: bool,
}

#[derive(Args, Debug, Serialize)]
struct AuditWeakArgs {
    #[arg(long, default_value = "all")]
    host: String,
    #[arg(long)]
    kmax: usize,
    #[arg(long, default_value_t = audit::DEFAULT_NODE_BUDGET)]
    budget: u64,
}

#[derive(Args, Debug, Serialize)]
struct ContainsArgs {
    #[arg(long, default_value = "all")]
    host: String,
    #[arg(long)]
    pattern: String,
    #[arg(long, default_value_t = audit::DEFAULT_NODE_BUDGET)]
    budget: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ModeArg {
    Exact,
    Greedy,
}

#[derive(Args, Debug, Serialize)]
struct GfreeMaxArgs {
    /// Window `a-b`, inclusive.
    #[arg(long)]
    window: String,
    #[arg(long)]
    pattern: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
}

#[derive(Args, Debug, Serialize)]
struct DyadicAuditArgs {
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    n_param: u64,
    /// Exponents, e.g. `1-10`.
    #[arg(long, default_value = "1-10")]
    k_range: String,
}

#[derive(Args, Debug, Serialize)]
struct DensityArgs {
    #[arg(long)]
    set: String,
    /// Comma list; defaults to powers of two up to the prefix bound.
    #[arg(long)]
    checkpoints: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct SumArgs {
    #[arg(long)]
    set: String,
    /// `reciprocal` or `power:<epsilon>`.
    #[arg(long, default_value = "reciprocal")]
    weight: String,
}

#[derive(Args, Debug, Serialize)]
struct SetArgs {
    #[arg(long)]
    set: String,
}

#[derive(Args, Debug, Serialize)]
struct ConstructThickArgs {
    #[arg(long)]
    blocks: usize,
}

#[derive(Args, Debug, Serialize)]
struct ConstructThickCopyArgs {
    #[arg(long)]
    target: String,
    #[arg(long)]
    blocks: usize,
}

#[derive(Args, Debug, Serialize)]
struct ConstructPi02Args {
    /// `substantial` or `power:<epsilon>`.
    #[arg(long, default_value = "substantial")]
    family: String,
    #[arg(long)]
    levels: usize,
}

#[derive(Args, Debug, Serialize)]
struct McDensityArgs {
    /// Seeds, e.g. `1-20`.
    #[arg(long, default_value = "1-20")]
    seeds: String,
    #[arg(short = 'k', long)]
    k: usize,
    #[arg(short = 'n', long)]
    n: usize,
    #[arg(long, default_value_t = 10_000)]
    pool: u64,
}

#[derive(Args, Debug, Serialize)]
struct McGfreeArgs {
    #[arg(long)]
    pattern: String,
    /// Graph orders, e.g. `3-6`.
    #[arg(short = 'n', long)]
    n: String,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Exponent constant of the envelope 2^(-c n^2).
    #[arg(short = 'c', long)]
    c: Option<f64>,
    /// Also print exact counts (n <= 6) without sampling.
    #[arg(long)]
    exact_only: bool,
}

#[derive(Args, Debug, Serialize)]
struct McFnArgs {
    #[arg(long)]
    pattern: String,
    #[arg(short = 'n', long)]
    n: String,
    #[arg(long)]
    n_param: u32,
    #[arg(long, default_value_t = 1_000)]
    trials: u64,
}

#[derive(Args, Debug, Serialize)]
struct SampleMupArgs {
    /// Inclusion probability, strictly between 0 and 1.
    #[arg(long)]
    mu_p: f64,
}

#[derive(Args, Debug, Serialize)]
struct TypefreqArgs {
    #[arg(long)]
    base: String,
    /// 0/1 mask over the base; defaults to all ones.
    #[arg(long)]
    mask: Option<String>,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16).map_err(|e| e.to_string()),
        None => s
            .parse()
            .map_err(|e: std::num::ParseIntError| e.to_string()),
    }
}

/// `a`, `a-b` and comma unions of those, kept in the given order.
fn parse_numbers(s: &str) -> Result<Vec<u64>, Error> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in s.split(',') {
        let bad = |what: &str| Error::Parse {
            offset,
            message: format!("{what} in {part:?}"),
        };
        let p = part.trim();
        match p.split_once('-') {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|_| bad("bad range start"))?;
                let b: u64 = b.trim().parse().map_err(|_| bad("bad range end"))?;
                if a > b {
                    return Err(bad("descending range"));
                }
                out.extend(a..=b);
            }
            None => out.push(p.parse().map_err(|_| bad("bad number"))?),
        }
        offset += part.len() + 1;
    }
    Ok(out)
}

fn parse_graph(spec: &str) -> Result<FiniteGraph, Error> {
    if let Some(g) = named_graph(spec) {
        return Ok(g);
    }
    if let Some(code) = spec.strip_prefix("g6:") {
        return graph6::decode(code);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_string(),
            source,
        })?;
        let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        return if first.starts_with(">>graph6<<")
            || first.split_whitespace().count() == 1 && first.parse::<usize>().is_err()
        {
            graph6::decode(first.trim())
        } else {
            FiniteGraph::from_edge_list(&text)
        };
    }
    Err(Error::Parse {
        offset: 0,
        message: format!("unknown graph {spec:?}; use a name like K5, g6:<code> or file:PATH"),
    })
}

fn parse_window(s: &str) -> Result<(u64, u64), Error> {
    let (a, b) = s.split_once('-').ok_or(Error::Parse {
        offset: 0,
        message: "expected a-b".into(),
    })?;
    let parse = |x: &str, off: usize| {
        x.trim().parse::<u64>().map_err(|_| Error::Parse {
            offset: off,
            message: format!("bad bound {x:?}"),
        })
    };
    Ok((parse(a, 0)?, parse(b, a.len() + 1)?))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

struct Report {
    value: Value,
    exit: u8,
    csv: Option<Vec<CsvRow>>,
}

impl Report {
    fn ok(value: Value) -> Self {
        Report {
            value,
            exit: 0,
            csv: None,
        }
    }

    fn with_exit(value: Value, exit: u8) -> Self {
        Report {
            value,
            exit,
            csv: None,
        }
    }
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let oracle = EdgeOracle::with_probability(cli.seed, cli.p);
    let n = cli.prefix_bound;
    let host = |spec: &str| parse_host(spec, n, cli.seed);
    let report = match &cli.command {
        Command::Edge(a) => Report::ok(json!({"u": a.u, "v": a.v, "edge": oracle.edge(a.u, a.v)?})),
        Command::Adj(a) => {
            let h = host(&a.host)?;
            let nbrs: VertexSet = h
                .iter()
                .filter(|&x| x != a.vertex && oracle.adjacent(a.vertex, x))
                .collect();
            Report::ok(json!({
                "vertex": a.vertex,
                "degree": nbrs.len(),
                "neighbors": nbrs.elements(),
            }))
        }
        Command::Type(a) => {
            let base = parse_numbers(&a.base)?;
            match (&a.mask, a.vertex) {
                (Some(mask), _) => {
                    let t = rado_core::TypeSpec::new(base, TypeMask::parse(mask)?)?;
                    let members = types::vertices_of_type(&oracle, &t, &host(&a.host)?);
                    Report::ok(
                        json!({"type": to_value(&t), "count": members.len(), "vertices": members.elements()}),
                    )
                }
                (None, Some(v)) => {
                    let t = types::type_of(&oracle, v, &base)?;
                    Report::ok(
                        json!({"vertex": v, "type": to_value(&t), "index": t.mask().index()}),
                    )
                }
                (None, None) => {
                    return Err(Error::Contract("type needs --vertex or --mask".into()))
                }
            }
        }
        Command::Extension(a) => {
            let base = VertexSet::from_unsorted(parse_numbers(&a.base)?)?;
            let r = types::extension_check(&oracle, &base, a.bound)?;
            let exit = if r.pass { 0 } else { EXIT_NEGATIVE };
            Report::with_exit(to_value(&r), exit)
        }
        Command::Embed(a) => {
            let target = parse_graph(&a.target)?;
            let cfg = EmbedConfig {
                candidate_cap: a.candidate_cap,
                score_horizon: a.score_horizon,
                fail_fast: !a.backtrack,
            };
            let e = embed::embed_target(&oracle, &target, &host(&a.host)?, &cfg)?;
            Report::ok(to_value(&e))
        }
        Command::AuditWeak(a) => {
            let r = audit::weak_universality(&oracle, &host(&a.host)?, a.kmax, a.budget)?;
            let exit = match r.verdict {
                Verdict::Pass => 0,
                Verdict::Fail => EXIT_NEGATIVE,
                Verdict::Inconclusive => EXIT_EXHAUSTED,
            };
            Report::with_exit(to_value(&r), exit)
        }
        Command::Contains(a) => {
            let pattern = parse_graph(&a.pattern)?;
            match audit::contains_induced(&oracle, &host(&a.host)?, &pattern, a.budget)? {
                Some(w) => Report::ok(json!({"status": "witnessed", "witness": to_value(&w)})),
                None => Report::with_exit(json!({"status": "absent"}), EXIT_NEGATIVE),
            }
        }
        Command::GfreeMax(a) => {
            let mode = match a.mode {
                ModeArg::Exact => GFreeMode::Exact,
                ModeArg::Greedy => GFreeMode::Greedy,
            };
            let r = audit::max_gfree_subset(
                &oracle,
                parse_window(&a.window)?,
                &parse_graph(&a.pattern)?,
                mode,
            )?;
            Report::ok(to_value(&r))
        }
        Command::DyadicAudit(a) => {
            let ks = parse_numbers(&a.k_range)?;
            let (lo, hi) = match (ks.first(), ks.last()) {
                (Some(&lo), Some(&hi)) if ks.windows(2).all(|w| w[1] == w[0] + 1) => {
                    (lo as u32, hi as u32)
                }
                _ => return Err(Error::Contract("k range must be a contiguous a-b".into())),
            };
            let r = audit::dyadic_audit(&oracle, &parse_graph(&a.pattern)?, a.n_param, lo..=hi)?;
            let exit = if r.violations > 0 { EXIT_NEGATIVE } else { 0 };
            Report::with_exit(to_value(&r), exit)
        }
        Command::Density(a) => {
            let s = host(&a.set)?;
            let checkpoints = match &a.checkpoints {
                Some(c) => parse_numbers(c)?,
                None => largeness::dyadic_checkpoints(s.prefix_bound()),
            };
            Report::ok(to_value(&largeness::density_profile(&s, &checkpoints)?))
        }
        Command::Sum(a) => {
            let s = host(&a.set)?;
            let w: WeightFunction = a.weight.parse()?;
            Report::ok(json!({
                "weight": w.to_string(),
                "size": s.len(),
                "sum": largeness::weighted_sum(&s, w),
            }))
        }
        Command::Thick(a) => Report::ok(to_value(&largeness::thickness(&host(&a.set)?))),
        Command::Ap(a) => Report::ok(to_value(&largeness::longest_ap(&host(&a.set)?)?)),
        Command::ConstructThick(a) => Report::ok(to_value(
            &constructions::construct_thick_edgeless(&oracle, a.blocks, n)?,
        )),
        Command::ConstructThickCopy(a) => {
            let target = parse_graph(&a.target)?;
            Report::ok(to_value(&constructions::construct_thick_copy(
                &oracle, &target, a.blocks, n,
            )?))
        }
        Command::ConstructPi02(a) => {
            let family: FamilyDescriptor = a.family.parse()?;
            Report::ok(to_value(&constructions::construct_pi02_member(
                &oracle, &family, a.levels, n,
            )?))
        }
        Command::McDensity(a) => {
            let seeds = parse_numbers(&a.seeds)?;
            let r = mc::mc_density_star(&seeds, a.k, a.n, a.pool)?;
            let row = CsvRow {
                n: a.n,
                estimate: r.mean,
                stderr: r.stderr,
                exact: Some(r.target),
                envelope: None,
            };
            Report {
                value: to_value(&r),
                exit: 0,
                csv: Some(vec![row]),
            }
        }
        Command::McGfree(a) => {
            let pattern = parse_graph(&a.pattern)?;
            let mut rows = Vec::new();
            let mut values = Vec::new();
            for n in parse_numbers(&a.n)? {
                let n = n as usize;
                if a.exact_only {
                    values.push(to_value(&mc::exact_gfree_count(&pattern, n)?));
                    continue;
                }
                let e = mc::mc_gfree_probability(&pattern, n, a.trials, cli.seed, a.c)?;
                let r = mc::McRow::from(&e);
                rows.push(CsvRow {
                    n: r.n,
                    estimate: r.estimate,
                    stderr: r.stderr,
                    exact: r.exact_if_available,
                    envelope: r.envelope,
                });
                values.push(to_value(&e));
            }
            Report {
                value: json!({"pattern": graph6::encode(&pattern), "rows": values}),
                exit: 0,
                csv: (!a.exact_only).then_some(rows),
            }
        }
        Command::McFn(a) => {
            let pattern = parse_graph(&a.pattern)?;
            let ns: Vec<usize> = parse_numbers(&a.n)?
                .into_iter()
                .map(|x| x as usize)
                .collect();
            let r = mc::mc_fn_bound(&pattern, &ns, a.n_param, a.trials, cli.seed)?;
            let rows = r
                .rows
                .iter()
                .map(|row| {
                    let m = mc::McRow::from(row);
                    CsvRow {
                        n: m.n,
                        estimate: m.estimate,
                        stderr: m.stderr,
                        exact: m.exact_if_available,
                        envelope: m.envelope,
                    }
                })
                .collect();
            Report {
                value: to_value(&r),
                exit: 0,
                csv: Some(rows),
            }
        }
        Command::SampleMup(a) => {
            let s = mc::sample_mu_p(a.mu_p, n, cli.seed)?;
            Report::ok(json!({"size": s.len(), "set": s.to_notation()}))
        }
        Command::Typefreq(a) => {
            let base = VertexSet::from_unsorted(parse_numbers(&a.base)?)?;
            let mask = match &a.mask {
                Some(m) => TypeMask::parse(m)?,
                None => TypeMask::ones(base.len()),
            };
            Report::ok(to_value(&mc::type_frequency_check(
                &oracle, &base, &mask, n,
            )?))
        }
    };
    Ok(report)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Edge(_) => "edge",
        Command::Adj(_) => "adj",
        Command::Type(_) => "type",
        Command::Extension(_) => "extension",
        Command::Embed(_) => "embed",
        Command::AuditWeak(_) => "audit-weak",
        Command::Contains(_) => "contains",
        Command::GfreeMax(_) => "gfree-max",
        Command::DyadicAudit(_) => "dyadic-audit",
        Command::Density(_) => "density",
        Command::Sum(_) => "sum",
        Command::Thick(_) => "thick",
        Command::Ap(_) => "ap",
        Command::ConstructThick(_) => "construct-thick",
        Command::ConstructThickCopy(_) => "construct-thick-copy",
        Command::ConstructPi02(_) => "construct-pi02",
        Command::McDensity(_) => "mc-density",
        Command::McGfree(_) => "mc-gfree",
        Command::McFn(_) => "mc-fn",
        Command::SampleMup(_) => "sample-mup",
        Command::Typefreq(_) => "typefreq",
    }
}

fn config(cli: &Cli) -> Value {
    let args = match &cli.command {
        Command::Edge(a) => to_value(a),
        Command::Adj(a) => to_value(a),
        Command::Type(a) => to_value(a),
        Command::Extension(a) => to_value(a),
        Command::Embed(a) => to_value(a),
        Command::AuditWeak(a) => to_value(a),
        Command::Contains(a) => to_value(a),
        Command::GfreeMax(a) => to_value(a),
        Command::DyadicAudit(a) => to_value(a),
        Command::Density(a) => to_value(a),
        Command::Sum(a) => to_value(a),
        Command::Thick(a) | Command::Ap(a) => to_value(a),
        Command::ConstructThick(a) => to_value(a),
        Command::ConstructThickCopy(a) => to_value(a),
        Command::ConstructPi02(a) => to_value(a),
        Command::McDensity(a) => to_value(a),
        Command::McGfree(a) => to_value(a),
        Command::McFn(a) => to_value(a),
        Command::SampleMup(a) => to_value(a),
        Command::Typefreq(a) => to_value(a),
    };
    json!({
        "prefix_bound": cli.prefix_bound,
        "edge_probability": cli.p.to_string(),
        "format": to_value(&cli.format),
        "args": args,
    })
}

fn emit(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = command_name(&cli.command);
    let cfg = config(&cli);
    let (text, code) = match run(&cli) {
        Ok(report) => {
            let text = match (cli.format, &report.csv) {
                (Format::Json, _) => output::envelope(cli.seed, name, &cfg, Ok(&report.value)),
                (Format::Csv, Some(rows)) => output::csv(cli.seed, name, &cfg, rows),
                (Format::Csv, None) => {
                    eprintln!("rado: {name} has no CSV form; use --format json");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            (text, report.exit)
        }
        Err(e) => {
            eprintln!("rado: {e}");
            let code = if e.is_exhaustion() {
                EXIT_EXHAUSTED
            } else {
                EXIT_USAGE
            };
            let body = json!({"kind": e.kind(), "message": e.to_string()});
            (output::envelope(cli.seed, name, &cfg, Err(&body)), code)
        }
    };
    if let Err(e) = emit(&cli, &text) {
        eprintln!("rado: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(code)
}
