//! Scan orchestration: corpus ingestion, per-graph analysis with the
//! common-vertex shortcut, triple iteration, and deterministic aggregation.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::time::Duration;

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::checks::{ClaimContext, ClaimId, ClaimKind, ClaimVerdict, Status, Witness, HYPOTRACEABLE_DEFAULT_LIMIT};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::generate::{generate_connected_graphs_with, DEFAULT_GENERATED_VERTICES, MAX_GENERATED_VERTICES};
use crate::graph::Graph;
use crate::graph6::{parse_graph6_lines, to_graph6};
use crate::path::Path;
use crate::search::{enumerate_longest_paths_with, LongestPathSet, DEFAULT_PATH_CAP};
use crate::subdivision::{check_size_bound, verify_proposition, PropositionReport, SizeBoundReport, VerifyBudget};
use crate::triple::{CrossingConvention, PathTriple, TripleAnalysis};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_TRIPLE_CAP: u64 = 1_000_000;
pub const DEFAULT_PAIR_CAP: u64 = 50_000_000;
pub const DEFAULT_SAMPLE: usize = 64;
/// Counterexamples kept per graph; the tallies still count all of them.
pub const MAX_COUNTEREXAMPLES_PER_GRAPH: usize = 16;
/// Triples handed to one task when a graph's triples are partitioned.
const TRIPLE_CHUNK: u64 = 4096;

/// Where the graphs come from.
#[derive(Clone, Debug)]
pub enum Source {
    /// All connected graphs on `1..=n` vertices.
    Generate { n: usize },
    Graph6File(PathBuf),
    EdgeListFile(PathBuf),
    Graphs(Vec<Graph>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", content = "k", rename_all = "snake_case")]
pub enum TripleMode {
    /// Every triple, up to the configured triple cap.
    All,
    /// The first `k` triples in canonical order.
    Capped(u64),
    /// Skip iteration whenever the longest paths share a vertex, checking
    /// only an evenly spaced sample; otherwise behave like `All`.
    #[default]
    ShortcutFirst,
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub source: Source,
    pub triple_mode: TripleMode,
    pub checks: BTreeSet<ClaimId>,
    /// Cap on `|L(G)|` per graph.
    pub cap: usize,
    /// Ceiling on triples examined per graph in `All` and fallback mode.
    pub triple_cap: u64,
    /// Ceiling on path pairs examined per graph.
    pub pair_cap: u64,
    /// Triples examined per graph on the shortcut path.
    pub sample: usize,
    /// Subdivision parameters; empty disables the subdivision checks.
    pub t_values: Vec<usize>,
    pub jobs: usize,
    pub convention: CrossingConvention,
    /// Permits generation at `n = 8`.
    pub allow_large: bool,
    pub verify_budget: VerifyBudget,
    pub hypotraceable_limit: Duration,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            source: Source::Graphs(Vec::new()),
            triple_mode: TripleMode::default(),
            checks: ClaimId::ALL.into_iter().collect(),
            cap: DEFAULT_PATH_CAP,
            triple_cap: DEFAULT_TRIPLE_CAP,
            pair_cap: DEFAULT_PAIR_CAP,
            sample: DEFAULT_SAMPLE,
            t_values: Vec::new(),
            jobs: 1,
            convention: CrossingConvention::default(),
            allow_large: false,
            verify_budget: VerifyBudget::default(),
            hypotraceable_limit: HYPOTRACEABLE_DEFAULT_LIMIT,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.cap == 0 || self.triple_cap == 0 || self.pair_cap == 0 || self.sample == 0 {
            return Err(Error::Config("caps and sample size must be at least 1".into()));
        }
        if self.triple_mode == TripleMode::Capped(0) {
            return Err(Error::Config("triple cap must be at least 1".into()));
        }
        if let Source::Generate { n } = self.source {
            let max = if self.allow_large { MAX_GENERATED_VERTICES } else { DEFAULT_GENERATED_VERTICES };
            if n == 0 || n > max {
                let hint = if n <= MAX_GENERATED_VERTICES && !self.allow_large { " (n = 8 needs --allow-n8)" } else { "" };
                return Err(Error::Config(format!("generation supports 1 <= n <= {max}, got {n}{hint}")));
            }
        }
        Ok(())
    }

    fn enabled(&self, c: ClaimId) -> bool {
        self.checks.contains(&c)
    }

    fn analysis_options(&self) -> AnalyzeOptions {
        AnalyzeOptions {
            cap: self.cap,
            checks: self.checks.clone(),
            t_values: self.t_values.clone(),
            convention: self.convention,
            verify_budget: self.verify_budget,
            hypotraceable_limit: self.hypotraceable_limit,
            max_triples: self.sample,
            pair_cap: self.pair_cap,
        }
    }
}

/// Reads the configured source. Generated graphs come out sorted by order
/// and canonical code, which is also graph6 order.
pub fn load_graphs(source: &Source, exec: Exec) -> Result<Vec<Graph>> {
    match source {
        Source::Generate { n } => {
            let mut out = Vec::new();
            for k in 1..=*n {
                out.extend(generate_connected_graphs_with(k, exec)?);
            }
            Ok(out)
        }
        Source::Graph6File(p) => parse_graph6_lines(&read(p)?),
        Source::EdgeListFile(p) => Ok(vec![Graph::parse_edge_list(&read(p)?)?]),
        Source::Graphs(gs) => Ok(gs.clone()),
    }
}

fn read(p: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
}

/// Verdict counts for one claim.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub holds: u64,
    pub violated: u64,
    pub vacuous: u64,
    pub skipped_truncated: u64,
    pub skipped_budget: u64,
}

impl Tally {
    pub fn record(&mut self, s: Status, count: u64) {
        let slot = match s {
            Status::Holds => &mut self.holds,
            Status::Violated => &mut self.violated,
            Status::Vacuous => &mut self.vacuous,
            Status::SkippedTruncated => &mut self.skipped_truncated,
            Status::SkippedBudget => &mut self.skipped_budget,
        };
        *slot += count;
    }

    pub fn merge(&mut self, o: &Tally) {
        self.holds += o.holds;
        self.violated += o.violated;
        self.vacuous += o.vacuous;
        self.skipped_truncated += o.skipped_truncated;
        self.skipped_budget += o.skipped_budget;
    }
}

pub type Tallies = BTreeMap<ClaimId, Tally>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphStatus {
    /// Every triple was examined.
    Exhaustive,
    /// The longest paths share a vertex; only a sample was examined.
    Shortcut,
    /// Triple iteration stopped at a cap.
    Capped,
    /// Fewer than three longest paths.
    Vacuous,
    /// `L(G)` exceeded the enumeration cap.
    SkippedTruncated,
    Disconnected,
}

impl GraphStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphStatus::Exhaustive => "exhaustive",
            GraphStatus::Shortcut => "shortcut",
            GraphStatus::Capped => "capped",
            GraphStatus::Vacuous => "vacuous",
            GraphStatus::SkippedTruncated => "skipped_truncated",
            GraphStatus::Disconnected => "disconnected",
        }
    }
}

/// A violated verdict together with the graph it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub graph6: Option<String>,
    pub claim: ClaimId,
    pub kind: ClaimKind,
    pub description: &'static str,
    pub witness: Option<Witness>,
}

impl Counterexample {
    fn from_verdict(graph6: &Option<String>, v: ClaimVerdict) -> Self {
        Counterexample {
            graph6: graph6.clone(),
            claim: v.claim,
            kind: v.claim.kind(),
            description: v.claim.description(),
            witness: v.witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphRecord {
    pub graph6: Option<String>,
    pub n: usize,
    pub m: usize,
    pub status: GraphStatus,
    /// `l(G)`; absent for disconnected input.
    pub longest_length: Option<usize>,
    pub longest_count: usize,
    pub truncated: bool,
    pub gallai_size: Option<usize>,
    pub pairs_total: u64,
    pub pairs_examined: u64,
    pub triples_total: u64,
    pub triples_examined: u64,
    /// Triples certified by the shared-vertex shortcut without iteration.
    pub triples_shortcut: u64,
    /// Triples neither examined nor covered by the shortcut.
    pub triples_skipped: u64,
    pub max_f: Option<u32>,
    pub min_t: Option<usize>,
    pub tallies: Tallies,
    pub violations: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub graphs: u64,
    pub by_status: BTreeMap<GraphStatus, u64>,
    pub triples_examined: u64,
    pub triples_shortcut: u64,
    pub triples_skipped: u64,
    pub conjecture_violations: u64,
    pub proven_violations: u64,
    /// Vacuous verdicts summed over all claims.
    pub vacuous: u64,
    pub max_f: Option<u32>,
    pub tallies: Tallies,
    /// Set when a pair of disjoint longest paths stopped the scan.
    pub aborted: bool,
}

/// Echo of the settings that determine the report's content. Parallelism
/// and wall time are left out so reports compare byte for byte.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub source: String,
    pub triple_mode: TripleMode,
    pub checks: Vec<ClaimId>,
    pub cap: usize,
    pub triple_cap: u64,
    pub pair_cap: u64,
    pub sample: usize,
    pub t_values: Vec<usize>,
    pub convention: CrossingConvention,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub schema_version: u32,
    pub config: ConfigEcho,
    pub summary: ScanSummary,
    pub graphs: Vec<GraphRecord>,
    pub counterexamples: Vec<Counterexample>,
}

impl ScanReport {
    pub fn empty(config: &ScanConfig) -> Self {
        ScanReport {
            schema_version: SCHEMA_VERSION,
            config: echo(config),
            summary: ScanSummary::default(),
            graphs: Vec::new(),
            counterexamples: Vec::new(),
        }
    }

    /// Appends a violation as if a scan had produced it.
    #[doc(hidden)]
    pub fn inject_violation(&mut self, claim: ClaimId, witness: Witness) {
        let v = ClaimVerdict::new(claim, Status::Violated, Some(witness));
        self.summary.tallies.entry(claim).or_default().record(Status::Violated, 1);
        match claim.kind() {
            ClaimKind::Conjecture => self.summary.conjecture_violations += 1,
            ClaimKind::Proven => self.summary.proven_violations += 1,
            ClaimKind::Observation => {}
        }
        let g6 = v.witness.as_ref().and_then(|w| w.graph6.clone());
        self.counterexamples.push(Counterexample::from_verdict(&g6, v));
    }

    pub fn violation_count(&self) -> u64 {
        self.summary.conjecture_violations + self.summary.proven_violations
    }

    /// 0 without violations, 3 if any proved statement fails, else 2.
    pub fn exit_code(&self) -> i32 {
        if self.summary.proven_violations > 0 {
            3
        } else if self.summary.conjecture_violations > 0 {
            2
        } else {
            0
        }
    }
}

fn echo(c: &ScanConfig) -> ConfigEcho {
    let source = match &c.source {
        Source::Generate { n } => format!("generate:{n}"),
        Source::Graph6File(p) => format!("graph6:{}", p.display()),
        Source::EdgeListFile(p) => format!("edge_list:{}", p.display()),
        Source::Graphs(g) => format!("graphs:{}", g.len()),
    };
    ConfigEcho {
        source,
        triple_mode: c.triple_mode,
        checks: c.checks.iter().copied().collect(),
        cap: c.cap,
        triple_cap: c.triple_cap,
        pair_cap: c.pair_cap,
        sample: c.sample,
        t_values: c.t_values.clone(),
        convention: c.convention,
    }
}

/// `C(n, 3)` and `C(n, 2)` without overflow for any path-set size.
fn choose3(n: u64) -> u64 {
    if n < 3 {
        0
    } else {
        (n as u128 * (n - 1) as u128 * (n - 2) as u128 / 6) as u64
    }
}

fn choose2(n: u64) -> u64 {
    if n < 2 {
        0
    } else {
        (n as u128 * (n - 1) as u128 / 2) as u64
    }
}

/// The `rank`-th 3-subset of `0..n` in lexicographic order.
pub fn unrank_triple(n: usize, mut rank: u64) -> [usize; 3] {
    let mut a = 0;
    while rank >= choose2((n - 1 - a) as u64) {
        rank -= choose2((n - 1 - a) as u64);
        a += 1;
    }
    let mut b = a + 1;
    while rank >= (n - 1 - b) as u64 {
        rank -= (n - 1 - b) as u64;
        b += 1;
    }
    [a, b, b + 1 + rank as usize]
}

fn next_triple(n: usize, [a, b, c]: [usize; 3]) -> [usize; 3] {
    if c + 1 < n {
        [a, b, c + 1]
    } else if b + 2 < n {
        [a, b + 1, b + 2]
    } else {
        [a + 1, a + 2, a + 3]
    }
}

/// Ranks examined: a lexicographic prefix, or `k` evenly spaced ranks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Selection {
    Prefix(u64),
    Spaced { k: u64, total: u64 },
}

impl Selection {
    fn count(self) -> u64 {
        match self {
            Selection::Prefix(k) | Selection::Spaced { k, .. } => k,
        }
    }

    /// Index triples for positions `from..to` of the selection.
    fn triples(self, n: usize, from: u64, to: u64) -> Vec<[usize; 3]> {
        match self {
            Selection::Prefix(_) => {
                let mut out = Vec::with_capacity((to - from) as usize);
                if from < to {
                    let mut cur = unrank_triple(n, from);
                    out.push(cur);
                    for _ in from + 1..to {
                        cur = next_triple(n, cur);
                        out.push(cur);
                    }
                }
                out
            }
            Selection::Spaced { k, total } => (from..to)
                .map(|i| unrank_triple(n, (i as u128 * total as u128 / k as u128) as u64))
                .collect(),
        }
    }
}

/// Evenly spaced sample of `k` index triples over `L(G)` of size `n`, or
/// all of them when there are at most `k`.
pub fn sample_triples(n: usize, k: usize) -> Vec<[usize; 3]> {
    let total = choose3(n as u64);
    let sel = if total <= k as u64 {
        Selection::Prefix(total)
    } else {
        Selection::Spaced { k: k as u64, total }
    };
    sel.triples(n, 0, sel.count())
}

/// Partial results over a slice of triples, merged in rank order.
#[derive(Default)]
struct TripleAcc {
    examined: u64,
    tallies: Tallies,
    max_f: Option<u32>,
    min_t: Option<usize>,
    counterexamples: Vec<Counterexample>,
    violations: u64,
}

impl TripleAcc {
    fn verdict(&mut self, graph6: &Option<String>, v: ClaimVerdict, count: u64) {
        self.tallies.entry(v.claim).or_default().record(v.status, count);
        if v.is_violation() {
            self.violations += count;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES_PER_GRAPH {
                self.counterexamples.push(Counterexample::from_verdict(graph6, v));
            }
        }
    }

    fn merge(&mut self, o: TripleAcc) {
        self.examined += o.examined;
        for (c, t) in &o.tallies {
            self.tallies.entry(*c).or_default().merge(t);
        }
        self.max_f = self.max_f.max(o.max_f);
        self.min_t = match (self.min_t, o.min_t) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.violations += o.violations;
        let room = MAX_COUNTEREXAMPLES_PER_GRAPH.saturating_sub(self.counterexamples.len());
        self.counterexamples.extend(o.counterexamples.into_iter().take(room));
    }
}

/// Shared per-graph state for triple-level work.
struct GraphWork<'a> {
    ctx: ClaimContext<'a>,
    graph6: Option<String>,
    checks: &'a BTreeSet<ClaimId>,
    t_values: &'a [usize],
    budget: VerifyBudget,
}

impl GraphWork<'_> {
    fn triple(&self, idx: [usize; 3]) -> PathTriple {
        let ps = self.ctx.longest().paths();
        PathTriple::new_unchecked(idx.map(|i| ps[i].clone()))
    }

    fn run(&self, idx: [usize; 3], acc: &mut TripleAcc) -> Result<TripleRecord> {
        let triple = self.triple(idx);
        let (a, verdicts) = self.ctx.triple_unchecked(&triple)?;
        acc.examined += 1;
        acc.max_f = acc.max_f.max(Some(a.f));
        acc.min_t = Some(acc.min_t.map_or(a.t_min(), |m| m.min(a.t_min())));
        let mut kept = Vec::new();
        for v in verdicts.into_iter().filter(|v| self.checks.contains(&v.claim)) {
            kept.push(v.clone());
            acc.verdict(&self.graph6, v, 1);
        }
        let mut subdivision = Vec::new();
        for &t in self.t_values {
            let rec = self.subdivision(&triple, t)?;
            if let Some(p) = &rec.proposition {
                let mut w = self.ctx.witness();
                w.paths = triple.paths().to_vec();
                let w = w.value("t", t).value("base_f", p.base_f).value("lifted_length", p.lifted_length);
                acc.verdict(&self.graph6, ClaimVerdict::new(ClaimId::Subdivision, p.status, Some(w)), 1);
            }
            if let Some(s) = &rec.size_bound {
                let status = if s.holds() { Status::Holds } else { Status::Violated };
                let mut w = self.ctx.witness();
                w.paths = triple.paths().to_vec();
                let w = w
                    .value("t", t)
                    .value("n0", s.n0)
                    .value("edges", s.edges)
                    .value("vertices", s.vertices);
                acc.verdict(&self.graph6, ClaimVerdict::new(ClaimId::SizeBound, status, Some(w)), 1);
            }
            subdivision.push(rec);
        }
        Ok(TripleRecord { index: idx, paths: triple.paths().to_vec(), analysis: a, verdicts: kept, subdivision })
    }

    fn subdivision(&self, triple: &PathTriple, t: usize) -> Result<SubdivisionRecord> {
        let proposition = if self.checks.contains(&ClaimId::Subdivision) {
            Some(verify_proposition(self.ctx.graph(), triple, t, self.budget)?)
        } else {
            None
        };
        let size_bound = if self.checks.contains(&ClaimId::SizeBound) {
            Some(check_size_bound(self.ctx.graph(), triple, t)?)
        } else {
            None
        };
        Ok(SubdivisionRecord { t, proposition, size_bound })
    }

    /// Examines the selected triples, partitioning them across tasks when
    /// there are many.
    fn run_selection(&self, sel: Selection, exec: Exec) -> Result<TripleAcc> {
        let n = self.ctx.longest().len();
        let total = sel.count();
        let chunks = total.div_ceil(TRIPLE_CHUNK);
        let exec = if chunks > 1 { exec } else { Exec::Sequential };
        let parts = exec.map_range(chunks as usize, |c| -> Result<TripleAcc> {
            let from = c as u64 * TRIPLE_CHUNK;
            let to = (from + TRIPLE_CHUNK).min(total);
            let mut acc = TripleAcc::default();
            for idx in sel.triples(n, from, to) {
                self.run(idx, &mut acc)?;
            }
            Ok(acc)
        });
        let mut acc = TripleAcc::default();
        for p in parts {
            acc.merge(p?);
        }
        Ok(acc)
    }
}

/// Checks that every pair among the first `limit` pairs intersects.
fn check_pairs(ctx: &ClaimContext<'_>, limit: u64, acc: &mut TripleAcc, graph6: &Option<String>) -> u64 {
    let ps = ctx.longest().paths();
    let mut examined = 0u64;
    let mut held = 0u64;
    'outer: for i in 0..ps.len() {
        let si = ps[i].vertex_set();
        for pj in &ps[i + 1..] {
            if examined == limit {
                break 'outer;
            }
            examined += 1;
            if si.intersects(pj.vertex_set()) {
                held += 1;
            } else {
                acc.verdict(graph6, ctx.prop1_unchecked(&ps[i], pj), 1);
            }
        }
    }
    acc.tallies.entry(ClaimId::Prop1).or_default().record(Status::Holds, held);
    examined
}

fn scan_graph(g: &Graph, config: &ScanConfig, exec: Exec) -> Result<(GraphRecord, Vec<Counterexample>)> {
    let graph6 = to_graph6(g).ok();
    let mut rec = GraphRecord {
        graph6: graph6.clone(),
        n: g.n(),
        m: g.edge_count(),
        status: GraphStatus::Disconnected,
        longest_length: None,
        longest_count: 0,
        truncated: false,
        gallai_size: None,
        pairs_total: 0,
        pairs_examined: 0,
        triples_total: 0,
        triples_examined: 0,
        triples_shortcut: 0,
        triples_skipped: 0,
        max_f: None,
        min_t: None,
        tallies: Tallies::new(),
        violations: 0,
    };
    if !g.is_connected() {
        return Ok((rec, Vec::new()));
    }
    let longest = enumerate_longest_paths_with(g, config.cap, exec);
    let count = longest.len() as u64;
    rec.longest_length = Some(longest.length());
    rec.longest_count = longest.len();
    rec.truncated = longest.is_truncated();
    let ctx = ClaimContext::from_parts(g, longest).with_convention(config.convention);
    let mut acc = TripleAcc::default();

    if rec.truncated {
        rec.status = GraphStatus::SkippedTruncated;
        for &c in &config.checks {
            acc.tallies.entry(c).or_default().record(Status::SkippedTruncated, 1);
        }
        return Ok(finish(rec, acc));
    }

    let gallai = ctx.gallai_vertex_set()?;
    rec.gallai_size = Some(gallai.len());
    if config.enabled(ClaimId::GallaiVertex) {
        acc.verdict(&graph6, ctx.check_gallai_vertex(), 1);
    }
    if config.enabled(ClaimId::Hypotraceable) {
        acc.verdict(&graph6, ctx.check_hypotraceable(config.hypotraceable_limit), 1);
    }
    rec.pairs_total = choose2(count);
    if config.enabled(ClaimId::Prop1) {
        if count < 2 {
            acc.verdict(&graph6, ClaimVerdict::new(ClaimId::Prop1, Status::Vacuous, None), 1);
        } else {
            rec.pairs_examined = check_pairs(&ctx, config.pair_cap, &mut acc, &graph6);
        }
    }

    rec.triples_total = choose3(count);
    let triple_checks: Vec<ClaimId> = config
        .checks
        .iter()
        .copied()
        .filter(|c| {
            c.is_triple_claim()
                || (!config.t_values.is_empty() && matches!(c, ClaimId::Subdivision | ClaimId::SizeBound))
        })
        .collect();
    if count < 3 {
        rec.status = GraphStatus::Vacuous;
        for &c in &triple_checks {
            acc.tallies.entry(c).or_default().record(Status::Vacuous, 1);
        }
        return Ok(finish(rec, acc));
    }
    if triple_checks.is_empty() {
        rec.status = GraphStatus::Capped;
        rec.triples_skipped = rec.triples_total;
        return Ok(finish(rec, acc));
    }

    let work = GraphWork {
        ctx,
        graph6: graph6.clone(),
        checks: &config.checks,
        t_values: &config.t_values,
        budget: config.verify_budget,
    };
    let total = rec.triples_total;
    let shortcut = config.triple_mode == TripleMode::ShortcutFirst && !gallai.is_empty();
    let sel = if shortcut {
        rec.status = GraphStatus::Shortcut;
        if total <= config.sample as u64 {
            Selection::Prefix(total)
        } else {
            Selection::Spaced { k: config.sample as u64, total }
        }
    } else {
        let limit = match config.triple_mode {
            TripleMode::Capped(k) => k,
            _ => config.triple_cap,
        };
        rec.status = if total <= limit { GraphStatus::Exhaustive } else { GraphStatus::Capped };
        Selection::Prefix(total.min(limit))
    };
    acc.merge(work.run_selection(sel, exec)?);
    rec.triples_examined = acc.examined;
    if shortcut {
        rec.triples_shortcut = total - acc.examined;
    } else {
        rec.triples_skipped = total - acc.examined;
    }
    Ok(finish(rec, acc))
}

fn finish(mut rec: GraphRecord, acc: TripleAcc) -> (GraphRecord, Vec<Counterexample>) {
    rec.tallies = acc.tallies;
    rec.max_f = acc.max_f;
    rec.min_t = acc.min_t;
    rec.violations = acc.violations;
    (rec, acc.counterexamples)
}

/// Runs a scan. Graphs are processed concurrently when `jobs > 1` and the
/// results are merged in graph6 order, so the report does not depend on
/// the degree of parallelism.
pub fn scan(config: &ScanConfig) -> Result<ScanReport> {
    config.validate()?;
    let exec = Exec::from_jobs(config.jobs);
    exec.install(config.jobs, || scan_in_pool(config, exec))
}

fn scan_in_pool(config: &ScanConfig, exec: Exec) -> Result<ScanReport> {
    let graphs = load_graphs(&config.source, exec)?;
    let mut order: Vec<usize> = (0..graphs.len()).collect();
    let keys: Vec<Option<String>> = graphs.iter().map(|g| to_graph6(g).ok()).collect();
    // graphs without a graph6 form (over 62 vertices) go last, in input order
    order.sort_by(|&a, &b| match (&keys[a], &keys[b]) {
        (Some(x), Some(y)) => x.cmp(y),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    });
    let inner = if graphs.len() > 1 { Exec::Sequential } else { exec };
    let results = exec.map(&order, |&i| scan_graph(&graphs[i], config, inner));

    let mut report = ScanReport::empty(config);
    for r in results {
        let (rec, cex) = r?;
        let s = &mut report.summary;
        s.graphs += 1;
        *s.by_status.entry(rec.status).or_default() += 1;
        s.triples_examined += rec.triples_examined;
        s.triples_shortcut += rec.triples_shortcut;
        s.triples_skipped += rec.triples_skipped;
        s.max_f = s.max_f.max(rec.max_f);
        for (c, t) in &rec.tallies {
            s.tallies.entry(*c).or_default().merge(t);
            s.vacuous += t.vacuous;
            match c.kind() {
                ClaimKind::Conjecture => s.conjecture_violations += t.violated,
                ClaimKind::Proven => s.proven_violations += t.violated,
                ClaimKind::Observation => {}
            }
        }
        let disjoint = rec.tallies.get(&ClaimId::Prop1).is_some_and(|t| t.violated > 0);
        report.graphs.push(rec);
        report.counterexamples.extend(cex);
        if disjoint {
            report.summary.aborted = true;
            break;
        }
    }
    Ok(report)
}

/// Settings for [`analyze_one`].
#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub cap: usize,
    pub checks: BTreeSet<ClaimId>,
    pub t_values: Vec<usize>,
    pub convention: CrossingConvention,
    pub verify_budget: VerifyBudget,
    pub hypotraceable_limit: Duration,
    /// Triples analyzed; beyond this an evenly spaced sample is taken.
    pub max_triples: usize,
    pub pair_cap: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        let mut o = ScanConfig::default().analysis_options();
        o.max_triples = 1000;
        o
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubdivisionRecord {
    pub t: usize,
    pub proposition: Option<PropositionReport>,
    pub size_bound: Option<SizeBoundReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleRecord {
    /// Positions in the sorted longest-path list.
    pub index: [usize; 3],
    pub paths: Vec<Path>,
    pub analysis: TripleAnalysis,
    pub verdicts: Vec<ClaimVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subdivision: Vec<SubdivisionRecord>,
}

/// Full single-graph report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphAnalysis {
    pub schema_version: u32,
    pub graph6: Option<String>,
    pub n: usize,
    pub m: usize,
    pub status: GraphStatus,
    pub longest_length: usize,
    pub longest_paths: Vec<Path>,
    pub truncated: bool,
    pub gallai_set: Option<VertexSet>,
    /// Graph-level verdicts; for two-path intersection, one verdict per
    /// disjoint pair or a single `holds`.
    pub verdicts: Vec<ClaimVerdict>,
    pub triples_total: u64,
    pub triples: Vec<TripleRecord>,
    pub tallies: Tallies,
}

impl GraphAnalysis {
    pub fn exit_code(&self) -> i32 {
        let kinds = self
            .verdicts
            .iter()
            .chain(self.triples.iter().flat_map(|t| &t.verdicts))
            .filter(|v| v.is_violation())
            .map(|v| v.claim.kind());
        let mut code = 0;
        for k in kinds {
            code = code.max(if k == ClaimKind::Proven { 3 } else { 2 });
        }
        for t in &self.triples {
            for s in &t.subdivision {
                let bad = s.proposition.as_ref().is_some_and(|p| p.status == Status::Violated)
                    || s.size_bound.as_ref().is_some_and(|b| !b.holds());
                if bad {
                    code = 3;
                }
            }
        }
        code
    }
}

/// Analyzes one connected graph in depth: every longest path, every triple
/// (or an evenly spaced sample of `max_triples`), and all enabled checks.
pub fn analyze_one(g: &Graph, options: &AnalyzeOptions) -> Result<GraphAnalysis> {
    let ctx = ClaimContext::new(g, options.cap)?.with_convention(options.convention);
    let longest: &LongestPathSet = ctx.longest();
    let graph6 = to_graph6(g).ok();
    let count = longest.len();
    let mut out = GraphAnalysis {
        schema_version: SCHEMA_VERSION,
        graph6: graph6.clone(),
        n: g.n(),
        m: g.edge_count(),
        status: GraphStatus::Exhaustive,
        longest_length: longest.length(),
        longest_paths: longest.paths().to_vec(),
        truncated: longest.is_truncated(),
        gallai_set: ctx.gallai_vertex_set().ok(),
        verdicts: Vec::new(),
        triples_total: choose3(count as u64),
        triples: Vec::new(),
        tallies: Tallies::new(),
    };
    let on = |c| options.checks.contains(&c);
    if out.truncated {
        out.status = GraphStatus::SkippedTruncated;
    }
    if on(ClaimId::GallaiVertex) {
        out.verdicts.push(ctx.check_gallai_vertex());
    }
    if on(ClaimId::Hypotraceable) {
        out.verdicts.push(ctx.check_hypotraceable(options.hypotraceable_limit));
    }
    let mut acc = TripleAcc::default();
    if on(ClaimId::Prop1) {
        if count < 2 {
            out.verdicts.push(ClaimVerdict::new(ClaimId::Prop1, Status::Vacuous, None));
        } else {
            check_pairs(&ctx, options.pair_cap, &mut acc, &graph6);
            let disjoint: Vec<ClaimVerdict> = acc
                .counterexamples
                .iter()
                .filter(|c| c.claim == ClaimId::Prop1)
                .map(|c| ClaimVerdict::new(ClaimId::Prop1, Status::Violated, c.witness.clone()))
                .collect();
            if disjoint.is_empty() {
                out.verdicts.push(ClaimVerdict::new(ClaimId::Prop1, Status::Holds, None));
            }
            out.verdicts.extend(disjoint);
        }
    }
    if count < 3 {
        out.status = GraphStatus::Vacuous;
    } else if !out.truncated {
        let idx = sample_triples(count, options.max_triples);
        if (idx.len() as u64) < out.triples_total {
            out.status = GraphStatus::Capped;
        }
        let work = GraphWork {
            ctx: ctx.clone(),
            graph6,
            checks: &options.checks,
            t_values: &options.t_values,
            budget: options.verify_budget,
        };
        for i in idx {
            out.triples.push(work.run(i, &mut acc)?);
        }
    }
    out.tallies = acc.tallies;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn config(graphs: Vec<Graph>) -> ScanConfig {
        ScanConfig { source: Source::Graphs(graphs), ..ScanConfig::default() }
    }

    #[test]
    fn unranking_matches_lexicographic_order() {
        for n in 3..9 {
            let mut expect = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        expect.push([a, b, c]);
                    }
                }
            }
            assert_eq!(expect.len() as u64, choose3(n as u64));
            for (r, t) in expect.iter().enumerate() {
                assert_eq!(unrank_triple(n, r as u64), *t);
            }
            let sel = Selection::Prefix(expect.len() as u64);
            assert_eq!(sel.triples(n, 0, sel.count()), expect);
            if expect.len() >= 5 {
                assert_eq!(sel.triples(n, 3, 5), expect[3..5].to_vec());
            }
        }
        assert_eq!(choose3(2520), 2_663_993_640);
    }

    #[test]
    fn spaced_samples_are_distinct_and_sorted() {
        let s = sample_triples(40, 100);
        assert_eq!(s.len(), 100);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(s[0], [0, 1, 2]);
        assert_eq!(sample_triples(5, 100).len(), 10);
    }

    #[test]
    fn empty_scan() {
        let r = scan(&config(vec![])).unwrap();
        assert_eq!(r.summary.graphs, 0);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn single_edge_is_vacuous() {
        let r = scan(&config(vec![named::path(2)])).unwrap();
        assert_eq!(r.graphs.len(), 1);
        assert_eq!(r.graphs[0].status, GraphStatus::Vacuous);
        assert_eq!(r.graphs[0].longest_count, 1);
        assert_eq!(r.graphs[0].graph6.as_deref(), Some("A_"));
    }

    #[test]
    fn star_takes_the_shortcut() {
        let r = scan(&config(vec![named::star(3)])).unwrap();
        let g = &r.graphs[0];
        assert_eq!(g.status, GraphStatus::Shortcut);
        assert_eq!((g.triples_total, g.triples_examined, g.gallai_size), (1, 1, Some(1)));
        assert_eq!(g.max_f, Some(0));
        assert_eq!(g.min_t, Some(1));
        assert_eq!(g.tallies[&ClaimId::Lemma23].holds, 1);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn all_mode_iterates_every_triple() {
        let mut c = config(vec![named::cycle(5)]);
        c.triple_mode = TripleMode::All;
        let r = scan(&c).unwrap();
        assert_eq!(r.graphs[0].status, GraphStatus::Exhaustive);
        assert_eq!(r.graphs[0].triples_examined, 10);
        assert_eq!(r.graphs[0].tallies[&ClaimId::ConjZ].holds, 10);
        assert_eq!(r.graphs[0].tallies[&ClaimId::Prop1].holds, 10);

        c.triple_mode = TripleMode::Capped(4);
        let r = scan(&c).unwrap();
        assert_eq!(r.graphs[0].status, GraphStatus::Capped);
        assert_eq!((r.graphs[0].triples_examined, r.graphs[0].triples_skipped), (4, 6));
    }

    #[test]
    fn truncated_enumeration_is_skipped() {
        let mut c = config(vec![named::complete(5)]);
        c.cap = 3;
        let r = scan(&c).unwrap();
        assert_eq!(r.graphs[0].status, GraphStatus::SkippedTruncated);
        assert_eq!(r.summary.tallies[&ClaimId::ConjZ].skipped_truncated, 1);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn records_sorted_by_graph6() {
        let r = scan(&config(vec![named::cycle(5), named::path(2), named::star(3)])).unwrap();
        let keys: Vec<_> = r.graphs.iter().map(|g| g.graph6.clone().unwrap()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn disconnected_graphs_are_reported() {
        let g = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        let r = scan(&config(vec![g.clone()])).unwrap();
        assert_eq!(r.graphs[0].status, GraphStatus::Disconnected);
        assert_eq!(analyze_one(&g, &AnalyzeOptions::default()).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn injected_violations_set_the_exit_code() {
        let mut r = ScanReport::empty(&config(vec![]));
        r.inject_violation(ClaimId::Conj4, Witness::default());
        assert_eq!(r.exit_code(), 2);
        r.inject_violation(ClaimId::Thm1, Witness::default());
        assert_eq!(r.exit_code(), 3);
        assert_eq!(r.counterexamples.len(), 2);
    }

    #[test]
    fn config_validation() {
        let mut c = config(vec![]);
        c.source = Source::Generate { n: 8 };
        assert!(matches!(scan(&c), Err(Error::Config(_))));
        c.source = Source::Generate { n: 0 };
        assert!(c.validate().is_err());
        c.source = Source::Generate { n: 3 };
        c.cap = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn analyze_star_cycle_and_path() {
        let o = AnalyzeOptions::default();
        let a = analyze_one(&named::star(3), &o).unwrap();
        assert_eq!((a.longest_length, a.longest_paths.len(), a.triples.len()), (2, 3, 1));
        assert_eq!(a.triples[0].analysis.f, 0);
        assert_eq!(a.triples[0].analysis.t_counts, [1, 1, 1]);
        assert_eq!(a.gallai_set.unwrap().to_vec(), vec![0]);

        let a = analyze_one(&named::cycle(5), &o).unwrap();
        assert_eq!((a.longest_length, a.longest_paths.len(), a.triples.len()), (4, 5, 10));
        assert!(a.triples.iter().all(|t| t.analysis.f == 0));
        assert_eq!(a.exit_code(), 0);

        let a = analyze_one(&named::path(3), &o).unwrap();
        assert_eq!(a.status, GraphStatus::Vacuous);
    }

    #[test]
    fn analyze_with_subdivision() {
        let o = AnalyzeOptions { t_values: vec![1], ..AnalyzeOptions::default() };
        let a = analyze_one(&named::star(3), &o).unwrap();
        let s = &a.triples[0].subdivision[0];
        assert!(s.proposition.as_ref().unwrap().holds());
        assert!(s.size_bound.as_ref().unwrap().holds());
        assert_eq!(a.tallies[&ClaimId::Subdivision].holds, 1);
    }
}
