//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Every threshold is fixed here.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use critgraph::bounds::{
    ceil, dirac_lower, four_critical_bound, gallai_exact, sparsity_bound, Rational,
};
use critgraph::canon::canonical_label;
use critgraph::coloring::{
    critical_subgraph, find_coloring, is_colorable, is_k_critical, verify_certificate, Certificate,
    Coloring,
};
use critgraph::constructions::{extremal_4critical, hajos_join, seed, Seed};
use critgraph::grotzsch::{grotzsch_color, verify_coloring};
use critgraph::potential::{
    build_y, min_potential_brute, min_potential_flow, potential, sample_subset_colorings,
};
use critgraph::random::{gnp, sparse_degree3_graph, triangle_free_planar};
use critgraph::search::{min_edges_search, SearchOptions};
use critgraph::structure::{check_discharging_bound, run_discharging, DischargeVerdict};
use critgraph::{parse_graph6, Graph, VertexSet};

const EXTREMAL_RANGE: std::ops::RangeInclusive<usize> = 6..=15;
const EXTREMAL_TIME_LIMIT: Duration = Duration::from_secs(60);
const SEARCH_N8_TIME_LIMIT: Duration = Duration::from_secs(600);
const SEARCH_EXPECTED: [(usize, Option<usize>); 5] = [
    (4, Some(6)),
    (5, None),
    (6, Some(10)),
    (7, Some(11)),
    (8, Some(13)),
];
const POTENTIAL_GRAPHS: usize = 200;
const POTENTIAL_MAX_N: usize = 14;
const CLAIM7_MIN_GRAPHS: usize = 20;
const CLAIM7_PAIRS_PER_GRAPH: usize = 10;
const HIGH_POTENTIAL_GRAPHS: usize = 500;
const HIGH_POTENTIAL_MAX_N: usize = 12;
const GROTZSCH_GRAPHS: usize = 100;
const GROTZSCH_MAX_N: usize = 60;
const GROTZSCH_TIME_LIMIT: Duration = Duration::from_secs(1);
const DISCHARGE_CORPUS: usize = 200;
const FORMULA_K: std::ops::RangeInclusive<i64> = 4..=8;
const FORMULA_MAX_N: i64 = 60;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every 4-critical graph the suite builds, keyed by canonical label.
fn critical_corpus() -> Vec<Graph> {
    let mut out: BTreeMap<String, Graph> = BTreeMap::new();
    let mut add = |g: Graph| {
        if g.n() <= 16 {
            out.entry(canonical_label(&g).as_str().to_string())
                .or_insert(g);
        } else {
            out.insert(format!("big-{}-{}", g.n(), g.m()), g);
        }
    };
    for n in (4..=22).filter(|&n| n != 5) {
        add(extremal_4critical(n).unwrap());
    }
    for s in [Seed::K4, Seed::W5, Seed::E8] {
        add(seed(s));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let bases = [seed(Seed::K4), seed(Seed::W5), seed(Seed::E8)];
    for _ in 0..30 {
        let a = &bases[rng.gen_range(0..3)];
        let b = &bases[rng.gen_range(0..3)];
        let ea: Vec<_> = a.edges().collect();
        let eb: Vec<_> = b.edges().collect();
        let (x, y) = ea[rng.gen_range(0..ea.len())];
        let (u, v) = eb[rng.gen_range(0..eb.len())];
        let (x, y) = if rng.gen_bool(0.5) { (x, y) } else { (y, x) };
        add(hajos_join(a, (x, y), b, (u, v)).unwrap());
    }
    let mut found = 0;
    while found < 12 {
        let n = rng.gen_range(8..=12);
        let p = rng.gen_range(0.3..0.5);
        let g = gnp(&mut rng, n, p);
        if let Some((h, _)) = critical_subgraph(&g, 4) {
            // drop isolated leftovers, if any
            let (h, _) = h.induced_subgraph((0..h.n()).filter(|&v| h.degree(v) > 0).collect());
            // K4 is already in the corpus
            if h.n() > 4 {
                add(h);
                found += 1;
            }
        }
    }
    out.into_values().collect()
}

fn criterion_1() -> Check {
    let exe = env!("CARGO_BIN_EXE_critgraph");
    let start = Instant::now();
    for n in EXTREMAL_RANGE {
        let out = Command::new(exe)
            .args(["generate-extremal", "--n", &n.to_string()])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            format!("n={n}: exit {:?}", out.status.code())
        })?;
        let doc: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        let g = parse_graph6(doc["graph"]["graph6"].as_str().unwrap_or_default())
            .map_err(|e| e.to_string())?;
        let cert: Certificate =
            serde_json::from_value(doc["certificate"].clone()).map_err(|e| e.to_string())?;
        let f = four_critical_bound(n as i64) as usize;
        ensure(g.n() == n && g.m() == f, || {
            format!("n={n}: {} edges, F={f}", g.m())
        })?;
        ensure(verify_certificate(&g, &cert), || {
            format!("n={n}: certificate rejected")
        })?;
    }
    let t = start.elapsed();
    ensure(t < EXTREMAL_TIME_LIMIT, || format!("took {t:?}"))?;
    Ok(format!("n=6..15 certified with F(4,n) edges in {:.2?}", t))
}

fn criterion_2() -> Check {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    pool.install(|| {
        let mut notes = Vec::new();
        for (n, expected) in SEARCH_EXPECTED {
            let start = Instant::now();
            let r = min_edges_search(n, SearchOptions::default()).map_err(|e| e.to_string())?;
            let t = start.elapsed();
            ensure(r.min_edges_found == expected, || {
                format!("n={n}: got {:?}", r.min_edges_found)
            })?;
            if let Some(m) = expected {
                ensure(m as i64 == sparsity_bound(4, n as i64).unwrap(), || {
                    format!("n={n}: {m} != F")
                })?;
                for g in r.witness_graphs() {
                    let cert = is_k_critical(&g, 4).ok_or("witness not critical")?;
                    ensure(verify_certificate(&g, &cert), || {
                        format!("n={n}: witness certificate")
                    })?;
                }
            }
            if n == 8 {
                ensure(t < SEARCH_N8_TIME_LIMIT, || format!("n=8 took {t:?}"))?;
            }
            notes.push(format!(
                "{n}:{}",
                expected.map_or("none".into(), |m| m.to_string())
            ));
        }
        Ok(format!("single worker, f4 = [{}]", notes.join(" ")))
    })
}

fn criterion_3() -> Check {
    let corpus = critical_corpus();
    for g in &corpus {
        ensure(is_k_critical(g, 4).is_some(), || {
            format!("{g:?} not critical")
        })?;
        let rho = potential(g, g.vertices()).unwrap();
        ensure(rho <= 2, || format!("rho(V)={rho} for {g:?}"))?;
        let bound = four_critical_bound(g.n() as i64);
        ensure(g.m() as i64 >= bound, || {
            format!("{} < {bound} edges", g.m())
        })?;
    }
    Ok(format!(
        "{} certified 4-critical graphs, all rho(V) <= 2",
        corpus.len()
    ))
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..POTENTIAL_GRAPHS {
        let n = rng.gen_range(2..=POTENTIAL_MAX_N);
        let p = rng.gen_range(0.05..0.9);
        let g = gnp(&mut rng, n, p);
        for min_size in [1, 2] {
            let b = min_potential_brute(&g, min_size).map_err(|e| e.to_string())?;
            let f = min_potential_flow(&g, min_size).map_err(|e| e.to_string())?;
            ensure(b.rho == f.rho, || {
                format!("graph {i}: brute {} vs flow {}", b.rho, f.rho)
            })?;
            ensure(potential(&g, f.set).unwrap() == f.rho, || {
                format!("graph {i}: bad witness")
            })?;
        }
    }
    Ok(format!(
        "{POTENTIAL_GRAPHS} graphs (n <= {POTENTIAL_MAX_N}), min sizes 1 and 2, zero discrepancies"
    ))
}

fn criterion_5() -> Check {
    let corpus = critical_corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut graphs = 0;
    let mut pairs = 0;
    for g in corpus.iter().filter(|g| g.n() <= 16) {
        let mut done = 0;
        let mut attempts = 0;
        while done < CLAIM7_PAIRS_PER_GRAPH && attempts < 1000 {
            attempts += 1;
            let r: VertexSet = (0..g.n()).filter(|_| rng.gen_bool(0.5)).collect();
            if r.is_empty() || r == g.vertices() {
                continue;
            }
            let phis = sample_subset_colorings(g, r, 50, &mut rng);
            ensure(!phis.is_empty(), || {
                format!("G[R] not 3-colourable in {g:?}")
            })?;
            let phi = &phis[rng.gen_range(0..phis.len())];
            let y = build_y(g, r, phi).map_err(|e| e.to_string())?;
            ensure(!is_colorable(&y.result, 3), || {
                format!("Y is 3-colourable for {g:?}, R={r:?}")
            })?;
            done += 1;
        }
        ensure(done == CLAIM7_PAIRS_PER_GRAPH, || {
            format!("only {done} pairs for {g:?}")
        })?;
        graphs += 1;
        pairs += done;
    }
    ensure(graphs >= CLAIM7_MIN_GRAPHS, || {
        format!("only {graphs} graphs")
    })?;
    Ok(format!(
        "{graphs} graphs, {pairs} (R, phi) pairs, chi(Y) >= 4 throughout"
    ))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut qualified = 0;
    let mut drawn = 0;
    while qualified < HIGH_POTENTIAL_GRAPHS {
        drawn += 1;
        ensure(drawn < 100 * HIGH_POTENTIAL_GRAPHS, || {
            "corpus too thin".into()
        })?;
        let n = rng.gen_range(1..=HIGH_POTENTIAL_MAX_N);
        let p = rng.gen_range(0.1..0.6);
        let g = gnp(&mut rng, n, p);
        if min_potential_brute(&g, 1).unwrap().rho < 3 {
            continue;
        }
        qualified += 1;
        let c = find_coloring(&g, 3, &Coloring::empty(n, 3)).unwrap();
        ensure(c.is_some_and(|c| c.is_proper_total(&g)), || {
            format!("no 3-colouring of {g:?}")
        })?;
    }
    Ok(format!(
        "{qualified} graphs with P >= 3 (of {drawn} drawn), all 3-coloured"
    ))
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut slowest = Duration::ZERO;
    for i in 0..GROTZSCH_GRAPHS {
        let n = rng.gen_range(4..=GROTZSCH_MAX_N);
        let g = triangle_free_planar(&mut rng, n);
        let start = Instant::now();
        let c = grotzsch_color(&g).map_err(|e| format!("graph {i}: {e}"))?;
        let t = start.elapsed();
        slowest = slowest.max(t);
        ensure(verify_coloring(&g, &c), || {
            format!("graph {i}: improper colouring")
        })?;
        ensure(t < GROTZSCH_TIME_LIMIT, || {
            format!("graph {i} (n={n}) took {t:?}")
        })?;
    }
    Ok(format!(
        "{GROTZSCH_GRAPHS} graphs (n <= {GROTZSCH_MAX_N}), slowest {slowest:.2?}"
    ))
}

fn criterion_8() -> Check {
    let r = |a, b| Rational::new(a, b);
    let k34 = Graph::complete_bipartite(3, 4);
    let sheet = run_discharging(&k34);
    for v in 0..7 {
        let want = if k34.degree(v) == 3 {
            r(7, 2)
        } else {
            r(10, 3)
        };
        ensure(sheet.final_charge[v] == want, || {
            format!("K3,4 vertex {v}: {}", sheet.final_charge[v])
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut suite: Vec<Graph> = critical_corpus();
    for _ in 0..100 {
        let n = rng.gen_range(1..=30);
        let p = rng.gen_range(0.0..1.0);
        suite.push(gnp(&mut rng, n, p));
    }
    let mut min_seen: Option<Rational> = None;
    for _ in 0..DISCHARGE_CORPUS {
        let hubs = rng.gen_range(5..15);
        let leaves = rng.gen_range(0..40);
        let g = sparse_degree3_graph(&mut rng, hubs, leaves);
        match check_discharging_bound(&g) {
            DischargeVerdict::Holds { min_charge, .. } => {
                min_seen = Some(min_seen.map_or(min_charge, |m| m.min(min_charge)));
            }
            other => return Err(format!("corpus graph: {other:?}")),
        }
        suite.push(g);
    }
    for g in &suite {
        let s = run_discharging(g);
        ensure(s.total == r(2 * g.m() as i64, 1), || {
            format!("charge not conserved on {g:?}")
        })?;
    }
    let min_seen = min_seen.unwrap();
    ensure(min_seen >= r(10, 3), || format!("min charge {min_seen}"))?;
    Ok(format!(
        "conservation on {} graphs; corpus min charge {min_seen}; K3,4 = 7/2 and 10/3",
        suite.len()
    ))
}

fn criterion_9() -> Check {
    for n in [6, 7] {
        let (g, f) = (gallai_exact(4, n).unwrap(), sparsity_bound(4, n).unwrap());
        ensure(g == f, || format!("gallai_exact(4,{n})={g} != F={f}"))?;
    }
    let mut dirac_failures = Vec::new();
    let mut checked = 0;
    for k in FORMULA_K {
        for n in k + 2..=FORMULA_MAX_N {
            let f = sparsity_bound(k, n).unwrap();
            if let Ok(exact) = gallai_exact(k, n) {
                ensure(exact >= f, || {
                    format!("gallai_exact({k},{n})={exact} < F={f}")
                })?;
            }
            let d = ceil(dirac_lower(k, n).unwrap());
            if f < d {
                dirac_failures.push(format!("({k},{n}): F={f} < {d}"));
            }
            checked += 1;
        }
    }
    ensure(dirac_failures.is_empty(), || {
        format!(
            "F(k,n) >= ceil(dirac_lower) fails at {}",
            dirac_failures.join(", ")
        )
    })?;
    Ok(format!("{checked} (k, n) pairs consistent"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("extremal graphs meet the edge bound", criterion_1),
        ("exhaustive minimum edge counts", criterion_2),
        ("critical graphs have rho(V) <= 2", criterion_3),
        ("flow and brute-force potential agree", criterion_4),
        ("Y gadgets of critical graphs are 4-chromatic", criterion_5),
        ("potential >= 3 implies 3-colourable", criterion_6),
        ("triangle-free planar 3-colouring", criterion_7),
        ("discharging", criterion_8),
        ("formula consistency", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}) [{t:.2?}]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}) [{t:.2?}]: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
