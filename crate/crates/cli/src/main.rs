//! quasiforce: construct graph families from a seed, count homomorphisms
//! exactly, reproduce the parameter table, certify non-forcing pairs with
//! weight-function witnesses, sample graphs and test them for
//! quasirandomness.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use quasiforce_core::battery::quasirandom_battery;
use quasiforce_core::construct::{build_member, FamilyId};
use quasiforce_core::crossing::{crossing_search, CrossingConfig, Subject, WitnessJson};
use quasiforce_core::error::Error;
use quasiforce_core::forcing::{analyze_triple, disqualify_pair, render_triple_report};
use quasiforce_core::graph::{standard_graph, LabeledGraph, StandardKind};
use quasiforce_core::graph6::{parse_graph6, write_graph6};
use quasiforce_core::hom::{
    density, hom_count_with, rooted_profile, DensityJson, HomEngine,
};
use quasiforce_core::jensen::{jensen_audit, JensenInstance};
use quasiforce_core::params::graph_params;
use quasiforce_core::sampler::{sample_w_random, SampleConfig};
use quasiforce_core::table1::{inequality_suite, render_table, table1};
use quasiforce_core::value::{parse_rational, RationalJson};
use quasiforce_core::weighted::{
    weighted_density, TwoVertexWeights, WeightedGraph, WeightedGraphJson,
};

#[derive(Parser)]
#[command(
    name = "quasiforce",
    version,
    about = "Exact homomorphism counting and non-forcing witnesses for seed-derived graph families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
    Graph6,
}

#[derive(Args)]
struct OutputArgs {
    /// Output path; stdout when omitted
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Output format (graph outputs also accept dot and graph6)
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Build graphs: stock graphs, pendant extensions F^(k), doublings
    /// db_I(F), or members of the three seed-derived families
    Construct {
        #[command(subcommand)]
        what: ConstructCommand,
    },
    /// Exact parameters (n, m, max-cut b, (n-1)/m, b/m, connectivity)
    Params {
        /// Graph file (JSON or graph6)
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact homomorphism count of a pattern in a host
    Count {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        host: PathBuf,
        /// auto | enumeration | elimination
        #[arg(long, default_value = "auto")]
        engine: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Rooted profile: extension counts per placement of the given labels
    Profile {
        #[arg(long)]
        pattern: PathBuf,
        /// Comma-separated label list, e.g. 0 or 0,1
        #[arg(long)]
        labels: String,
        #[arg(long)]
        host: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Homomorphism density t and per-edge normalisation f in a host graph
    Density {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        host: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact density t and f in a weighted graph with loops
    Wdensity {
        #[arg(long)]
        pattern: PathBuf,
        #[command(flatten)]
        weights: WeightsArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The seven-row parameter table (n, m, b, (n-1)/m, b/m) of a seed,
    /// cross-checked against its closed forms, plus the strict inequality
    /// chains
    Table1 {
        #[arg(long)]
        seed_graph: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Test a pair for strict g1/g2 dominance; attaches a crossing witness
    /// when both inequalities hold
    Disqualify {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Search for a non-constant weight function with f(F1) = f(F2)
    Witness {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sample a random graph from a weighted graph with loops (seeded,
    /// reproducible)
    Sample {
        #[command(flatten)]
        weights: WeightsArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Quasirandomness battery: subset densities, adjacency spectrum, and
    /// the edge/4-cycle comparison
    Battery {
        /// Host graph (JSON or graph6)
        #[arg(long)]
        input: PathBuf,
        /// Target density p
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Audit one near-equality instance of Jensen's inequality
    Jensen {
        /// JSON instance: {"weights": ["1/2", ...], "values": [...],
        /// "target": "1", "power": 2, "delta": "3/10"}
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Full family analysis: table, three pair witnesses, a G(n, 1/2)
    /// control and a sampled witness demonstration
    Analyze {
        /// H1, H2 or H3
        #[arg(long)]
        family: String,
        #[arg(long)]
        seed_graph: PathBuf,
        /// Sample size for the sanity checks
        #[arg(long, default_value_t = 400)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// v, isolated-pair, e, cycle or complete, with canonical labellings
    Standard {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        size: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// F^(k): k new vertices labelled 1..k joined to the 0-labelled vertex
    Pendant {
        #[arg(long)]
        input: PathBuf,
        #[arg(short, long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// db_I(F): two copies glued along the labels in I
    Double {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated label set, e.g. 0,1
        #[arg(long)]
        over: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// A member of family H1, H2 or H3 over a seed graph
    Triple {
        #[arg(long)]
        family: String,
        #[arg(long)]
        seed_graph: PathBuf,
        /// Member index 0..2; all three when omitted
        #[arg(long)]
        member: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Far endpoint parameter x0 of the weight path, as a rational
    #[arg(long, default_value = "1/1000")]
    x0: String,
    /// Tolerance on |log f1 - log f2|
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct WeightsArgs {
    /// Weighted graph JSON ({"vertices": k, "weights": [[..]]}), or a
    /// witness report to reuse its weights
    #[arg(long, conflicts_with = "two_vertex")]
    weights: Option<PathBuf>,
    /// Two-vertex shorthand w00,w01,w11 (rationals)
    #[arg(long)]
    two_vertex: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NoCrossing
                | Error::ToleranceNotReached { .. }
                | Error::ParameterMismatch { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

/// QUASIFORCE_THREADS caps the internal parallelism of the profile engines.
fn init_threads() {
    if let Ok(v) = std::env::var("QUASIFORCE_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode, Error> {
    match cmd {
        Command::Construct { what } => run_construct(what),
        Command::Params { input, out } => {
            let g = load_graph(&input)?;
            let p = graph_params(&g)?;
            let report = ParamsReport {
                n: p.n,
                m: p.m,
                b: p.b,
                g1: p.g1.as_ref().map(RationalJson::from_rational),
                g2: p.g2.as_ref().map(RationalJson::from_rational),
                connected: p.connected,
                bipartite: p.bipartite,
            };
            let text = format!(
                "n = {}, m = {}, b = {}, g1 = {}, g2 = {}, connected = {}, bipartite = {}",
                report.n,
                report.m,
                report.b,
                p.g1.map(|r| r.to_string()).unwrap_or_else(|| "-".into()),
                p.g2.map(|r| r.to_string()).unwrap_or_else(|| "-".into()),
                report.connected,
                report.bipartite
            );
            emit_report(&out, &report, text)
        }
        Command::Count {
            pattern,
            host,
            engine,
            out,
        } => {
            let pattern_g = load_graph(&pattern)?;
            let host_g = load_graph(&host)?;
            let engine: HomEngine = engine.parse()?;
            let count = hom_count_with(engine, &pattern_g, &host_g)?;
            let report = CountReport {
                count: count.to_decimal(),
                pattern_n: pattern_g.n(),
                pattern_m: pattern_g.m(),
                host_n: host_g.n(),
            };
            let text = report.count.clone();
            emit_report(&out, &report, text)
        }
        Command::Profile {
            pattern,
            labels,
            host,
            out,
        } => {
            let pattern_g = load_graph(&pattern)?;
            let host_g = load_graph(&host)?;
            let labels = parse_labels(&labels)?;
            let profile = rooted_profile(&pattern_g, &labels, &host_g)?;
            let counts: BTreeMap<String, String> = profile
                .counts
                .iter()
                .map(|(a, c)| {
                    let key = a
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    (key, c.to_decimal())
                })
                .collect();
            let report = ProfileReport {
                labels: profile.labels.clone(),
                counts,
            };
            let text = report
                .counts
                .iter()
                .map(|(k, v)| format!("{k} -> {v}"))
                .collect::<Vec<_>>()
                .join("\n");
            emit_report(&out, &report, text)
        }
        Command::Density { pattern, host, out } => {
            let pattern_g = load_graph(&pattern)?;
            let host_g = load_graph(&host)?;
            let d = density(&pattern_g, &host_g)?;
            let report = d.to_json();
            let text = density_text(&report);
            emit_report(&out, &report, text)
        }
        Command::Wdensity {
            pattern,
            weights,
            out,
        } => {
            let pattern_g = load_graph(&pattern)?;
            let w = load_weights(&weights)?;
            let d = weighted_density(&pattern_g, &w)?;
            let report = WdensityReport {
                t: RationalJson::from_rational(&d.t),
                f: d.f,
                pattern_n: d.pattern_n,
                pattern_m: d.pattern_m,
            };
            let text = format!(
                "t = {}/{} ({}), f = {}",
                report.t.num,
                report.t.den,
                report.t.value,
                report.f.map(|f| f.to_string()).unwrap_or_else(|| "-".into())
            );
            emit_report(&out, &report, text)
        }
        Command::Table1 { seed_graph, out } => {
            let seed = load_graph(&seed_graph)?;
            let rows = table1(&seed)?;
            let checks = inequality_suite(&seed)?;
            let report = TableReport {
                rows: rows.iter().map(|r| r.to_json()).collect(),
                inequalities: checks,
            };
            let mut text = render_table(&rows);
            text.push('\n');
            for c in &report.inequalities {
                text.push_str(&format!(
                    "{:<40} {}\n",
                    c.name,
                    if c.holds { "holds" } else { "FAILS" }
                ));
            }
            emit_report(&out, &report, text)
        }
        Command::Disqualify {
            first,
            second,
            search,
            out,
        } => {
            let a = Subject::from_graph(stem(&first), load_graph(&first)?);
            let b = Subject::from_graph(stem(&second), load_graph(&second)?);
            let verdict = disqualify_pair(&a, &b, &search.config()?)?;
            let text = format!(
                "{{{}, {}}}: disqualified = {} ({})",
                verdict.first, verdict.second, verdict.disqualified, verdict.reason
            );
            emit_report(&out, &verdict, text)
        }
        Command::Witness {
            first,
            second,
            search,
            out,
        } => {
            let a = Subject::from_graph(stem(&first), load_graph(&first)?);
            let b = Subject::from_graph(stem(&second), load_graph(&second)?);
            let report = crossing_search(&a, &b, &search.config()?)?.to_json();
            let text = witness_text(&report);
            emit_report(&out, &report, text)
        }
        Command::Sample {
            weights,
            n,
            seed,
            out,
        } => {
            let source = load_weights(&weights)?;
            let sample = sample_w_random(&SampleConfig { n, seed, source })?;
            match out.format {
                Format::Graph6 => emit(&out.output, write_graph6(&sample.graph) + "\n"),
                Format::Dot => emit(&out.output, sample.graph.to_dot()),
                _ => {
                    let json = serde_json::to_string_pretty(&sample)? + "\n";
                    emit(&out.output, json)
                }
            }?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Battery {
            input,
            p,
            trials,
            seed,
            out,
        } => {
            let g = load_graph(&input)?;
            let report = quasirandom_battery(&g, p, trials, seed)?;
            let text = format!(
                "n = {}, p_hat = {:.6}, p1_max_dev = {:.6}, lambda1/n = {:.6}, lambda2_abs/n = {:.6}, t_c4 = {:.6}, c4_gap = {:.6}",
                report.n,
                report.p_hat,
                report.p1_max_dev,
                report.lambda1_over_n,
                report.lambda2_abs_over_n,
                report.t_c4,
                report.c4_gap
            );
            emit_report(&out, &report, text)
        }
        Command::Jensen { input, out } => {
            let raw = std::fs::read_to_string(&input)?;
            let parsed: JensenInput = serde_json::from_str(&raw)?;
            let audit = jensen_audit(&parsed.to_instance()?)?;
            let report = audit.to_json();
            let text = format!(
                "epsilon = {}, bad_weight = {}, premise_active = {}, verdict = {}",
                report.epsilon.value, report.bad_weight.value, report.premise_active, report.verdict
            );
            emit_report(&out, &report, text)?;
            if audit.consistent {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Analyze {
            family,
            seed_graph,
            n,
            seed,
            search,
            out,
        } => {
            let family: FamilyId = family.parse()?;
            let seed_g = load_graph(&seed_graph)?;
            let report = analyze_triple(family, &seed_g, n, seed, &search.config()?)?;
            let text = render_triple_report(&report);
            emit_report(&out, &report, text)?;
            if report.verified {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn run_construct(cmd: ConstructCommand) -> Result<ExitCode, Error> {
    match cmd {
        ConstructCommand::Standard { kind, size, out } => {
            let kind: StandardKind = kind.parse()?;
            let g = standard_graph(kind, size)?;
            emit_graph(&out, &g)
        }
        ConstructCommand::Pendant { input, k, out } => {
            let g = quasiforce_core::construct::pendant(&load_graph(&input)?, k)?;
            emit_graph(&out, &g)
        }
        ConstructCommand::Double { input, over, out } => {
            let labels = parse_labels(&over)?;
            let g = quasiforce_core::construct::double(
                &load_graph(&input)?,
                &labels.into_iter().collect(),
            )?;
            emit_graph(&out, &g)
        }
        ConstructCommand::Triple {
            family,
            seed_graph,
            member,
            out,
        } => {
            let family: FamilyId = family.parse()?;
            let seed = load_graph(&seed_graph)?;
            let kinds = family.members();
            match member {
                Some(i) => {
                    let kind = *kinds.get(i).ok_or_else(|| {
                        Error::InvalidParameter(format!("member index {i} out of range 0..2"))
                    })?;
                    let m = build_member(kind, &seed)?;
                    emit_graph(&out, &m.graph)
                }
                None => {
                    let members: Vec<MemberJson> = kinds
                        .iter()
                        .map(|&k| -> Result<MemberJson, Error> {
                            let m = build_member(k, &seed)?;
                            Ok(MemberJson {
                                name: m.name,
                                expr: m.expr.to_string(),
                                graph: m.graph,
                            })
                        })
                        .collect::<Result<_, _>>()?;
                    let report = TripleMembersJson {
                        family: family.name().into(),
                        members,
                    };
                    let text = report
                        .members
                        .iter()
                        .map(|m| format!("{}: n = {}, m = {}", m.name, m.graph.n(), m.graph.m()))
                        .collect::<Vec<_>>()
                        .join("\n");
                    emit_report(&out, &report, text)
                }
            }
        }
    }
}

impl SearchArgs {
    fn config(&self) -> Result<CrossingConfig, Error> {
        Ok(CrossingConfig {
            x0: parse_rational(&self.x0)?,
            tol: self.tol,
            ..CrossingConfig::default()
        })
    }
}

#[derive(Serialize)]
struct ParamsReport {
    n: usize,
    m: usize,
    b: usize,
    g1: Option<RationalJson>,
    g2: Option<RationalJson>,
    connected: bool,
    bipartite: bool,
}

#[derive(Serialize)]
struct CountReport {
    count: String,
    pattern_n: usize,
    pattern_m: usize,
    host_n: usize,
}

#[derive(Serialize)]
struct ProfileReport {
    labels: Vec<u32>,
    counts: BTreeMap<String, String>,
}

#[derive(Serialize)]
struct WdensityReport {
    t: RationalJson,
    f: Option<f64>,
    pattern_n: usize,
    pattern_m: usize,
}

#[derive(Serialize)]
struct TableReport {
    rows: Vec<quasiforce_core::table1::Table1RowJson>,
    inequalities: Vec<quasiforce_core::table1::InequalityCheck>,
}

#[derive(Serialize)]
struct MemberJson {
    name: String,
    expr: String,
    graph: LabeledGraph,
}

#[derive(Serialize)]
struct TripleMembersJson {
    family: String,
    members: Vec<MemberJson>,
}

/// Hand-authorable Jensen instance with rationals as strings.
#[derive(Deserialize)]
struct JensenInput {
    weights: Vec<String>,
    values: Vec<String>,
    target: String,
    power: u32,
    delta: String,
}

impl JensenInput {
    fn to_instance(&self) -> Result<JensenInstance, Error> {
        Ok(JensenInstance {
            weights: self
                .weights
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_, _>>()?,
            values: self
                .values
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<_, _>>()?,
            target: parse_rational(&self.target)?,
            power: self.power,
            delta: parse_rational(&self.delta)?,
        })
    }
}

/// Weighted-graph input with rationals as strings.
#[derive(Deserialize)]
struct WeightsInput {
    vertices: usize,
    weights: Vec<Vec<String>>,
}

fn density_text(d: &DensityJson) -> String {
    format!(
        "hom = {}, t = {}/{} ({}), f = {}",
        d.hom,
        d.t.num,
        d.t.den,
        d.t.value,
        d.f.map(|f| f.to_string()).unwrap_or_else(|| "-".into())
    )
}

fn witness_text(w: &WitnessJson) -> String {
    format!(
        "witness for {{{}, {}}}: common f = {:.6}, |log f1 - log f2| = {:.3e}, diagonal distance = {:.4}, path = {:?}",
        w.first, w.second, w.common_f, w.log_gap, w.diagonal_distance, w.path
    )
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn parse_labels(s: &str) -> Result<Vec<u32>, Error> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidParameter(format!("bad label {part:?}")))
        })
        .collect()
}

/// Wrapper shape shared by sampler output: the graph sits under "graph".
#[derive(Deserialize)]
struct WrappedGraph {
    graph: LabeledGraph,
}

/// Graph files are JSON (a graph object, or any report carrying one under a
/// "graph" key) or a single graph6 line. A leading '{' suggests JSON but
/// does not decide it: graph6 encodes 60 vertices as '{' too, so fall back
/// to graph6 when JSON parsing fails.
fn load_graph(path: &Path) -> Result<LabeledGraph, Error> {
    let raw = std::fs::read_to_string(path)?;
    if raw.trim_start().starts_with('{') {
        match serde_json::from_str::<LabeledGraph>(&raw) {
            Ok(g) => return Ok(g),
            Err(json_err) => {
                if let Ok(wrapped) = serde_json::from_str::<WrappedGraph>(&raw) {
                    return Ok(wrapped.graph);
                }
                return parse_graph6(raw.trim()).map_err(|_| Error::Json(json_err));
            }
        }
    }
    parse_graph6(raw.trim())
}

fn load_weights(args: &WeightsArgs) -> Result<WeightedGraph, Error> {
    if let Some(spec) = &args.two_vertex {
        return TwoVertexWeights::parse(spec)?.to_weighted_graph();
    }
    let path = args.weights.as_ref().ok_or_else(|| {
        Error::InvalidParameter("provide --weights FILE or --two-vertex w00,w01,w11".into())
    })?;
    let raw = std::fs::read_to_string(path)?;
    if let Ok(witness) = serde_json::from_str::<WitnessJson>(&raw) {
        return witness.weights.to_weighted_graph();
    }
    if let Ok(json) = serde_json::from_str::<WeightedGraphJson>(&raw) {
        return json.to_weighted_graph();
    }
    let simple: WeightsInput = serde_json::from_str(&raw)?;
    let mut entries = Vec::with_capacity(simple.vertices * simple.vertices);
    for row in &simple.weights {
        for cell in row {
            entries.push(parse_rational(cell)?);
        }
    }
    WeightedGraph::new(simple.vertices, entries)
}

fn emit_graph(out: &OutputArgs, g: &LabeledGraph) -> Result<ExitCode, Error> {
    let content = match out.format {
        Format::Json | Format::Text => serde_json::to_string_pretty(g)? + "\n",
        Format::Dot => g.to_dot(),
        Format::Graph6 => write_graph6(g) + "\n",
    };
    emit(&out.output, content)?;
    Ok(ExitCode::SUCCESS)
}

fn emit_report<T: Serialize>(out: &OutputArgs, report: &T, text: String) -> Result<ExitCode, Error> {
    let content = match out.format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Text => {
            let mut t = text;
            if !t.ends_with('\n') {
                t.push('\n');
            }
            t
        }
        Format::Dot | Format::Graph6 => {
            return Err(Error::InvalidParameter(
                "dot/graph6 formats only apply to graph outputs".into(),
            ))
        }
    };
    emit(&out.output, content)?;
    Ok(ExitCode::SUCCESS)
}

fn emit(output: &Option<PathBuf>, content: String) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}
