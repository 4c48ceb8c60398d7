use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use critgraph::bounds::BoundsRecord;
use critgraph::coloring::{self, Certificate, Coloring};
use critgraph::constructions::{self, Seed};
use critgraph::grotzsch;
use critgraph::potential;
use critgraph::search::{min_edges_search, SearchOptions};
use critgraph::structure;
use critgraph::{parse_any, write_graph6, Graph, Vertex, VertexSet};

const SCHEMA: u64 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "critgraph",
    version,
    about = "Workbench for sparse 4-critical graphs"
)]
struct Cli {
    /// Seed for every randomised step
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Wall-clock limit for the command, in seconds
    #[arg(long, global = true)]
    budget: Option<f64>,
    /// Worker threads (0 = one per core); CRITGRAPH_WORKERS takes precedence
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write the JSON report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// graph6 or DIMACS file, `-` for stdin, or one of K4, W5, E8
    #[arg(long = "in")]
    input: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find a proper k-colouring
    Color {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Certify k-criticality, or check an existing certificate
    CriticalCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 4)]
        k: usize,
        /// certificate JSON to verify instead of computing one
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Potential of a set, or the minimum potential
    Potential {
        #[command(flatten)]
        input: Input,
        /// comma-separated vertex set; omit to minimise
        #[arg(long)]
        set: Option<String>,
        #[arg(long, default_value_t = 1)]
        min_size: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Build the gadget replacing a 3-coloured subset by a triangle
    YGadget {
        #[command(flatten)]
        input: Input,
        /// comma-separated vertex set R
        #[arg(long)]
        set: String,
        /// colours of R in increasing vertex order; sampled when omitted
        #[arg(long)]
        phi: Option<String>,
    },
    /// Hajós join of two graphs
    Hajos {
        #[arg(long)]
        g1: String,
        /// edge of g1 as `x,y`
        #[arg(long)]
        e1: String,
        #[arg(long)]
        g2: String,
        /// edge of g2 as `u,v`
        #[arg(long)]
        e2: String,
        /// also certify k-criticality of the result
        #[arg(long)]
        certify: Option<usize>,
    },
    /// A 4-critical graph with the fewest known edges
    GenerateExtremal {
        #[arg(long)]
        n: usize,
    },
    /// Exhaustive minimum edge count of 4-critical graphs
    SearchMinEdges {
        #[arg(long)]
        n: usize,
        /// allow n = 9
        #[arg(long)]
        stretch: bool,
    },
    /// Closed-form bounds on the edge count of k-critical graphs
    Bounds {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        n: i64,
        /// tabulate n..=n_to
        #[arg(long)]
        n_to: Option<i64>,
    },
    /// Structural report (low-potential sets, K4-e, degree-3 patterns)
    Analyze {
        #[command(flatten)]
        input: Input,
    },
    /// Degree-3 discharging charges and the 10/3 bound
    Discharge {
        #[command(flatten)]
        input: Input,
    },
    /// 3-colour a triangle-free planar graph by 4-face reduction
    Grotzsch {
        #[command(flatten)]
        input: Input,
        /// include every identification step
        #[arg(long)]
        emit_trace: bool,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum MethodArg {
    Auto,
    Brute,
    Flow,
}

#[derive(Debug)]
enum Failure {
    /// well-formed request with no answer (exit 1)
    Domain(anyhow::Error),
    /// unreadable or malformed input (exit 2)
    Input(anyhow::Error),
}

type Outcome = Result<Value, Failure>;

fn domain<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Domain(e.into())
}

fn input_err<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Input(e.into())
}

fn load_graph(spec: &str) -> Result<Graph, Failure> {
    let text = if spec == "-" {
        std::io::read_to_string(std::io::stdin())
            .context("reading stdin")
            .map_err(input_err)?
    } else if Path::new(spec).exists() {
        fs::read_to_string(spec)
            .with_context(|| format!("reading {spec}"))
            .map_err(input_err)?
    } else if let Ok(seed) = spec.parse::<Seed>() {
        return Ok(constructions::seed(seed));
    } else {
        return Err(input_err(anyhow!("no such file: {spec}")));
    };
    parse_any(&text)
        .with_context(|| format!("parsing {spec}"))
        .map_err(input_err)
}

fn parse_list(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(|c: char| c == ',' || c == '-' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .with_context(|| format!("bad number `{t}`"))
                .map_err(input_err)
        })
        .collect()
}

fn parse_set(g: &Graph, s: &str) -> Result<VertexSet, Failure> {
    let raw = parse_list(s)?;
    if let Some(&v) = raw.iter().find(|&&v| v >= g.n()) {
        return Err(domain(anyhow!("vertex {v} out of range for n = {}", g.n())));
    }
    Ok(raw.into_iter().collect())
}

fn parse_edge(s: &str) -> Result<(Vertex, Vertex), Failure> {
    match parse_list(s)?.as_slice() {
        &[u, v] => Ok((u, v)),
        _ => Err(input_err(anyhow!("edge must be two vertices, got `{s}`"))),
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialise")
}

fn coloring_map(c: &Coloring) -> Value {
    let map: Map<String, Value> = c
        .colors()
        .iter()
        .enumerate()
        .map(|(v, &col)| (v.to_string(), json!(col)))
        .collect();
    Value::Object(map)
}

fn graph_summary(g: &Graph) -> Value {
    json!({ "graph6": write_graph6(g), "n": g.n(), "m": g.m() })
}

fn run(cmd: Command, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match cmd {
        Command::Color { input, k } => {
            let g = load_graph(&input.input)?;
            let found =
                coloring::find_coloring(&g, k, &Coloring::empty(g.n(), k)).map_err(domain)?;
            json!({
                "graph": graph_summary(&g),
                "k": k,
                "colorable": found.is_some(),
                "coloring": found.as_ref().map(coloring_map),
            })
        }
        Command::CriticalCheck {
            input,
            k,
            certificate,
        } => {
            let g = load_graph(&input.input)?;
            match certificate {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))
                        .map_err(input_err)?;
                    let cert: Certificate = serde_json::from_str(&text)
                        .with_context(|| format!("parsing {}", path.display()))
                        .map_err(input_err)?;
                    json!({
                        "graph": graph_summary(&g),
                        "k": cert.k,
                        "certificate_valid": coloring::verify_certificate(&g, &cert),
                    })
                }
                None => {
                    let cert = coloring::is_k_critical(&g, k);
                    json!({
                        "graph": graph_summary(&g),
                        "k": k,
                        "critical": cert.is_some(),
                        "certificate": cert.as_ref().map(to_value),
                    })
                }
            }
        }
        Command::Potential {
            input,
            set,
            min_size,
            method,
        } => {
            let g = load_graph(&input.input)?;
            match set {
                Some(s) => {
                    let r = parse_set(&g, &s)?;
                    let rho = potential::potential(&g, r).map_err(domain)?;
                    json!({ "graph": graph_summary(&g), "R": r, "rho": rho })
                }
                None => {
                    let report = match method {
                        MethodArg::Brute => potential::min_potential_brute(&g, min_size),
                        MethodArg::Flow => potential::min_potential_flow(&g, min_size),
                        MethodArg::Auto if g.n() <= potential::BRUTE_MAX_VERTICES => {
                            potential::min_potential_brute(&g, min_size)
                        }
                        MethodArg::Auto => potential::min_potential_flow(&g, min_size),
                    }
                    .map_err(domain)?;
                    json!({ "graph": graph_summary(&g), "report": report })
                }
            }
        }
        Command::YGadget { input, set, phi } => {
            let g = load_graph(&input.input)?;
            let r = parse_set(&g, &set)?;
            let phi = match phi {
                Some(p) => {
                    let cols = parse_list(&p)?;
                    if cols.len() != r.len() {
                        return Err(domain(anyhow!(
                            "phi lists {} colours for {} vertices",
                            cols.len(),
                            r.len()
                        )));
                    }
                    let mut c = Coloring::empty(g.n(), 3);
                    for (v, col) in r.iter().zip(cols) {
                        let col = u8::try_from(col)
                            .map_err(|_| domain(anyhow!("colour {col} too large")))?;
                        c.set(v, col);
                    }
                    c
                }
                None => potential::sample_subset_colorings(&g, r, 50, &mut rng)
                    .into_iter()
                    .next()
                    .ok_or_else(|| domain(anyhow!("G[R] is not 3-colourable")))?,
            };
            let y = potential::build_y(&g, r, &phi).map_err(domain)?;
            json!({
                "gadget": y,
                "chromatic_number": coloring::chromatic_number(&y.result),
            })
        }
        Command::Hajos {
            g1,
            e1,
            g2,
            e2,
            certify,
        } => {
            let (a, b) = (load_graph(&g1)?, load_graph(&g2)?);
            let joined = constructions::hajos_join(&a, parse_edge(&e1)?, &b, parse_edge(&e2)?)
                .map_err(domain)?;
            let mut out = json!({ "graph": graph_summary(&joined) });
            if let Some(k) = certify {
                let cert = coloring::is_k_critical(&joined, k);
                out["critical"] = json!(cert.is_some());
                out["certificate"] = json!(cert.as_ref().map(to_value));
            }
            out
        }
        Command::GenerateExtremal { n } => {
            let g = constructions::extremal_4critical(n).map_err(domain)?;
            let cert = coloring::is_k_critical(&g, 4)
                .ok_or_else(|| domain(anyhow!("construction failed to certify")))?;
            json!({
                "graph": graph_summary(&g),
                "F": critgraph::bounds::four_critical_bound(n as i64),
                "certificate_valid": coloring::verify_certificate(&g, &cert),
                "certificate": cert,
            })
        }
        Command::SearchMinEdges { n, stretch } => {
            let report = min_edges_search(n, SearchOptions { stretch }).map_err(domain)?;
            to_value(&report)
        }
        Command::Bounds { k, n, n_to } => {
            let hi = n_to.unwrap_or(n);
            if hi < n {
                return Err(domain(anyhow!("--n-to {hi} is below --n {n}")));
            }
            let records = (n..=hi)
                .map(|n| BoundsRecord::new(k, n))
                .collect::<Result<Vec<_>, _>>()
                .map_err(domain)?;
            if n_to.is_some() {
                json!({ "records": records })
            } else {
                to_value(&records[0])
            }
        }
        Command::Analyze { input } => {
            let g = load_graph(&input.input)?;
            let report = structure::analyze_structure(&g);
            report
                .audit(&g)
                .map_err(|e| domain(anyhow!("self-audit failed: {e}")))?;
            json!({
                "graph": graph_summary(&g),
                "report": report,
                "matches_counterexample_profile": report.matches_counterexample_profile(),
            })
        }
        Command::Discharge { input } => {
            let g = load_graph(&input.input)?;
            json!({
                "graph": graph_summary(&g),
                "charges": structure::run_discharging(&g),
                "bound": structure::check_discharging_bound(&g),
            })
        }
        Command::Grotzsch { input, emit_trace } => {
            let g = load_graph(&input.input)?;
            let (c, trace) = grotzsch::grotzsch_color_traced(&g).map_err(domain)?;
            let mut out = json!({
                "graph": graph_summary(&g),
                "verified": grotzsch::verify_coloring(&g, &c),
                "coloring": coloring_map(&c),
            });
            if emit_trace {
                out["trace"] = to_value(&trace);
            }
            out
        }
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Color { .. } => "color",
        Command::CriticalCheck { .. } => "critical-check",
        Command::Potential { .. } => "potential",
        Command::YGadget { .. } => "y-gadget",
        Command::Hajos { .. } => "hajos",
        Command::GenerateExtremal { .. } => "generate-extremal",
        Command::SearchMinEdges { .. } => "search-min-edges",
        Command::Bounds { .. } => "bounds",
        Command::Analyze { .. } => "analyze",
        Command::Discharge { .. } => "discharge",
        Command::Grotzsch { .. } => "grotzsch",
    }
}

fn workers(flag: Option<usize>) -> anyhow::Result<usize> {
    match std::env::var("CRITGRAPH_WORKERS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .with_context(|| format!("CRITGRAPH_WORKERS must be a number, got `{v}`")),
        _ => Ok(flag.unwrap_or(0)),
    }
}

fn fail(f: Failure) -> ExitCode {
    let (code, e) = match f {
        Failure::Domain(e) => (1, e),
        Failure::Input(e) => (2, e),
    };
    eprintln!("error: {e:#}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = match workers(cli.workers) {
        Ok(t) => t,
        Err(e) => return fail(Failure::Input(e)),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => return fail(Failure::Input(e.into())),
    };
    let name = command_name(&cli.command);
    let seed = cli.seed;
    let command = cli.command;

    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(pool.install(|| run(command, seed)));
    });
    let outcome = match cli.budget {
        Some(secs) if secs.is_finite() && secs >= 0.0 => {
            match rx.recv_timeout(Duration::from_secs_f64(secs)) {
                Ok(o) => o,
                Err(_) => Err(Failure::Domain(anyhow!("budget of {secs} s exhausted"))),
            }
        }
        Some(secs) => Err(Failure::Input(anyhow!("invalid budget {secs}"))),
        None => rx.recv().expect("worker thread reports"),
    };
    let body = match outcome {
        Ok(v) => v,
        Err(f) => return fail(f),
    };

    let mut doc = Map::new();
    doc.insert("schema".into(), json!(SCHEMA));
    doc.insert("command".into(), json!(name));
    match body {
        Value::Object(fields) => doc.extend(fields),
        other => {
            doc.insert("result".into(), other);
        }
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
    text.push('\n');
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                return fail(Failure::Input(anyhow!("writing {}: {e}", path.display())));
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
