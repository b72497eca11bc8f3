//! One test per acceptance criterion. Each prints a PASS/FAIL line
//! (visible with `--nocapture`) before asserting.

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use tripaths::generate::generate_connected_graphs;
use tripaths::graph6::{parse_graph6, to_graph6};
use tripaths::scan::sample_triples;
use tripaths::subdivision::{check_size_bound, PropositionVerifier, VerifyBudget};
use tripaths::{enumerate_all_simple_paths_oracle, enumerate_longest_paths, Graph, Path, PathTriple};

fn report(id: u32, name: &str, pass: bool, detail: String) {
    println!("{} [{id}] {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id} ({name}) failed: {detail}");
}

fn corpus(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(|n| generate_connected_graphs(n).unwrap()).collect()
}

fn run_scan(jobs: usize) -> (Option<i32>, Vec<u8>, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_tripaths"))
        .args(["scan", "--n", "7", "--checks", "all", "--jobs", &jobs.to_string()])
        .output()
        .unwrap();
    (out.status.code(), out.stdout, start.elapsed())
}

/// Every triple of longest paths in each graph, in canonical order.
fn all_triples(g: &Graph) -> Vec<PathTriple> {
    let l = enumerate_longest_paths(g, usize::MAX);
    let ps = l.paths();
    sample_triples(ps.len(), usize::MAX)
        .into_iter()
        .map(|[a, b, c]| PathTriple::new(g, [ps[a].clone(), ps[b].clone(), ps[c].clone()]).unwrap())
        .collect()
}

#[test]
fn c1_exhaustive_scan_up_to_seven_vertices() {
    let (code, stdout, elapsed) = run_scan(1);
    let v: Value = serde_json::from_slice(&stdout).unwrap();
    let s = &v["summary"];
    let graphs = s["graphs"].as_u64().unwrap();
    let violations = s["conjecture_violations"].as_u64().unwrap() + s["proven_violations"].as_u64().unwrap();
    let shortcut = s["by_status"]["shortcut"].as_u64().unwrap();
    let vacuous = s["by_status"]["vacuous"].as_u64().unwrap();
    let pass = code == Some(0)
        && graphs == 1 + 1 + 2 + 6 + 21 + 112 + 853
        && violations == 0
        && shortcut + vacuous == graphs
        && elapsed <= Duration::from_secs(600);
    report(
        1,
        "scan --n 7 --checks all",
        pass,
        format!(
            "exit {code:?}, {graphs} graphs ({shortcut} shortcut, {vacuous} vacuous), {violations} violations, {:.1}s",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn c2_pruned_enumeration_matches_oracle() {
    let graphs = corpus(6);
    let mut mismatches = 0;
    for g in &graphs {
        let all = enumerate_all_simple_paths_oracle(g);
        let max = all.iter().map(Path::len).max().unwrap();
        let expect: Vec<Path> = all.into_iter().filter(|p| p.len() == max).collect();
        let got = enumerate_longest_paths(g, usize::MAX);
        if got.length() != max || got.paths() != expect.as_slice() || got.is_truncated() {
            mismatches += 1;
        }
    }
    report(
        2,
        "longest-path enumeration equals oracle",
        graphs.len() == 143 && mismatches == 0,
        format!("{} graphs, {mismatches} discrepancies", graphs.len()),
    );
}

#[test]
fn c3_subdivision_scales_f() {
    let budget = VerifyBudget { max_vertices: usize::MAX, ..VerifyBudget::default() };
    let (mut instances, mut failures, mut searches) = (0, 0, 0);
    let mut slowest = Duration::ZERO;
    for g in corpus(5) {
        let triples = all_triples(&g);
        if triples.is_empty() {
            continue;
        }
        let mut verifier = PropositionVerifier::new(&g, budget).unwrap();
        for tr in &triples {
            for t in [1, 2] {
                let r = verifier.verify(tr, t).unwrap();
                instances += 1;
                if !r.holds() {
                    failures += 1;
                }
            }
        }
        searches += verifier.searches();
        slowest = slowest.max(verifier.slowest_search());
    }
    report(
        3,
        "subdivision proposition, n <= 5, t in {1,2}",
        failures == 0 && instances > 0 && slowest <= Duration::from_secs(60),
        format!(
            "{instances} instances over {searches} distinct G^t, {failures} failures, slowest search {:.3}s",
            slowest.as_secs_f64()
        ),
    );
}

#[test]
fn c4_generator_counts() {
    let counts: Vec<usize> = (1..=7).map(|n| generate_connected_graphs(n).unwrap().len()).collect();
    report(4, "connected graph counts n = 1..7", counts == [1, 1, 2, 6, 21, 112, 853], format!("{counts:?}"));
}

#[test]
fn c5_graph6_round_trip() {
    let graphs = corpus(7);
    let mut bad = 0;
    for g in &graphs {
        let s = to_graph6(g).unwrap();
        if parse_graph6(s.as_bytes()).unwrap() != *g || to_graph6(&parse_graph6(s.as_bytes()).unwrap()).unwrap() != s {
            bad += 1;
        }
    }
    let vectors = [
        ("Bg", Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap()),
        ("B?", Graph::empty(3).unwrap()),
        ("A_", Graph::from_edge_list(2, &[(0, 1)]).unwrap()),
    ];
    let vectors_ok = vectors
        .iter()
        .all(|(s, g)| parse_graph6(s.as_bytes()).unwrap() == *g && to_graph6(g).unwrap() == *s);
    report(
        5,
        "graph6 round trip",
        bad == 0 && vectors_ok,
        format!("{} graphs, {bad} mismatches, hand vectors {}", graphs.len(), if vectors_ok { "ok" } else { "wrong" }),
    );
}

#[test]
fn c6_size_bounds() {
    let (mut checked, mut failures) = (0, 0);
    for g in corpus(5) {
        for tr in all_triples(&g) {
            for t in 0..=2 {
                let r = check_size_bound(&g, &tr, t).unwrap();
                checked += 1;
                if !r.holds() {
                    failures += 1;
                }
            }
        }
    }
    report(
        6,
        "restricted instance size bounds, t in {0,1,2}",
        checked > 0 && failures == 0,
        format!("{checked} instances, {failures} failures"),
    );
}

#[test]
fn c7_reports_independent_of_jobs() {
    let (c1, one, _) = run_scan(1);
    let (c8, eight, _) = run_scan(8);
    report(
        7,
        "byte-identical JSON for --jobs 1 and --jobs 8",
        c1 == Some(0) && c8 == Some(0) && !one.is_empty() && one == eight,
        format!("{} vs {} bytes, identical: {}", one.len(), eight.len(), one == eight),
    );
}
