//! Predicate checks for the statements about longest-path triples.
//!
//! Every inequality is evaluated in exact integer arithmetic with the
//! denominators cleared (`13 f <= n + 6` rather than `f <= (n + 6) / 13`).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::to_graph6;
use crate::path::Path;
use crate::search::{self, enumerate_longest_paths, LongestPathSet};
use crate::triple::{CrossingConvention, PathTriple, TripleAnalysis};

/// Largest order accepted by [`is_hypotraceable`].
pub const HYPOTRACEABLE_MAX_VERTICES: usize = 34;
pub const HYPOTRACEABLE_DEFAULT_LIMIT: Duration = Duration::from_secs(60);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimId {
    /// Any two longest paths of a connected graph intersect.
    Prop1,
    /// Any three longest paths of a connected graph share a vertex.
    ConjZ,
    /// `f > 0` implies `2n >= 3l + Σ|X| + 3`.
    Lemma21,
    /// `|X(P)| >= t(P) (f - 1)` for each path.
    Lemma22,
    /// Some `t(P) = 1` implies `f = 0`.
    Lemma23,
    /// `13 f <= n + 6`.
    Thm1,
    /// `t_min = 2` implies `26 f <= 2n + 9`.
    Case1Bound,
    /// `t_min >= 3` implies `27 f <= 2n + 12`.
    Case2Bound,
    /// Some `t(P) = 2` implies `f = 0`.
    Conj4,
    /// Proof-internal: `f >= 1` and `t_min >= 2` imply `l >= 6f - 2`.
    LengthBound,
    /// Some vertex lies on every longest path.
    GallaiVertex,
    /// Hypotraceable graphs have no vertex common to all longest paths.
    Hypotraceable,
    /// Lifted paths stay longest in `G^t` and `f` scales by `t + 1`.
    Subdivision,
    /// `|E(H)| <= 3(n0 - 1)` and `|V(G^t)| <= n0 + 3(n0 + 1)t + 6`.
    SizeBound,
}

/// How a violation is interpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    /// Proved statement: a violation means a bug in this crate.
    Proven,
    /// Open conjecture: a violation is a counterexample.
    Conjecture,
    /// Recorded property with known exceptions; never a violation.
    Observation,
}

impl ClaimId {
    pub const ALL: [ClaimId; 14] = [
        ClaimId::Prop1,
        ClaimId::ConjZ,
        ClaimId::Lemma21,
        ClaimId::Lemma22,
        ClaimId::Lemma23,
        ClaimId::Thm1,
        ClaimId::Case1Bound,
        ClaimId::Case2Bound,
        ClaimId::Conj4,
        ClaimId::LengthBound,
        ClaimId::GallaiVertex,
        ClaimId::Hypotraceable,
        ClaimId::Subdivision,
        ClaimId::SizeBound,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Prop1 => "prop1",
            ClaimId::ConjZ => "conj_z",
            ClaimId::Lemma21 => "lemma21",
            ClaimId::Lemma22 => "lemma22",
            ClaimId::Lemma23 => "lemma23",
            ClaimId::Thm1 => "thm1",
            ClaimId::Case1Bound => "case1_bound",
            ClaimId::Case2Bound => "case2_bound",
            ClaimId::Conj4 => "conj4",
            ClaimId::LengthBound => "length_bound",
            ClaimId::GallaiVertex => "gallai_vertex",
            ClaimId::Hypotraceable => "hypotraceable",
            ClaimId::Subdivision => "subdivision",
            ClaimId::SizeBound => "size_bound",
        }
    }

    pub fn kind(self) -> ClaimKind {
        match self {
            ClaimId::ConjZ | ClaimId::Conj4 => ClaimKind::Conjecture,
            ClaimId::GallaiVertex => ClaimKind::Observation,
            _ => ClaimKind::Proven,
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ClaimId::Prop1 => "two longest paths intersect",
            ClaimId::ConjZ => "three longest paths share a vertex (f = 0)",
            ClaimId::Lemma21 => "f > 0 => 2n >= 3l + sum|X| + 3",
            ClaimId::Lemma22 => "|X(P)| >= t(P)(f - 1)",
            ClaimId::Lemma23 => "some t(P) = 1 => f = 0",
            ClaimId::Thm1 => "13f <= n + 6",
            ClaimId::Case1Bound => "t_min = 2 => 26f <= 2n + 9",
            ClaimId::Case2Bound => "t_min >= 3 => 27f <= 2n + 12",
            ClaimId::Conj4 => "some t(P) = 2 => f = 0",
            ClaimId::LengthBound => "proof-internal check: f >= 1, t_min >= 2 => l >= 6f - 2",
            ClaimId::GallaiVertex => "some vertex lies on every longest path",
            ClaimId::Hypotraceable => "hypotraceable => no vertex on every longest path",
            ClaimId::Subdivision => "P^t longest in G^t and f(G^t, P^t) = (t + 1) f(G, P)",
            ClaimId::SizeBound => "|E(H)| <= 3(n0 - 1) and |V(G^t)| <= n0 + 3(n0 + 1)t + 6",
        }
    }

    /// Claims evaluated by [`evaluate_triple_claims`].
    pub fn is_triple_claim(self) -> bool {
        !matches!(
            self,
            ClaimId::Prop1
                | ClaimId::GallaiVertex
                | ClaimId::Hypotraceable
                | ClaimId::Subdivision
                | ClaimId::SizeBound
        )
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown claim id {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Violated,
    /// The premise did not apply.
    Vacuous,
    /// `L(G)` exceeded the enumeration cap; no claim is made.
    SkippedTruncated,
    /// An exact search exceeded its size or time budget.
    SkippedBudget,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Violated => "violated",
            Status::Vacuous => "vacuous",
            Status::SkippedTruncated => "skipped_truncated",
            Status::SkippedBudget => "skipped_budget",
        }
    }
}

/// Evidence attached to a verdict. Violations always carry enough to
/// replay the check: the graph, the paths, and the computed quantities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub paths: Vec<Path>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<VertexSet>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, i64>,
}

impl Witness {
    pub fn value(mut self, key: &str, v: impl TryInto<i64>) -> Self {
        self.values.insert(key.to_string(), v.try_into().unwrap_or(i64::MAX));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimVerdict {
    pub claim: ClaimId,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl ClaimVerdict {
    pub fn new(claim: ClaimId, status: Status, witness: Option<Witness>) -> Self {
        ClaimVerdict { claim, status, witness }
    }

    fn judged(claim: ClaimId, ok: bool, witness: Witness) -> Self {
        let status = if ok { Status::Holds } else { Status::Violated };
        ClaimVerdict::new(claim, status, Some(witness))
    }

    fn vacuous(claim: ClaimId) -> Self {
        ClaimVerdict::new(claim, Status::Vacuous, None)
    }

    pub fn is_violation(&self) -> bool {
        self.status == Status::Violated && self.claim.kind() != ClaimKind::Observation
    }
}

/// The triple-level claims, evaluated from precomputed quantities only.
/// `n` is the order of the graph and `l` its longest-path length.
pub fn evaluate_triple_claims(n: usize, l: usize, a: &TripleAnalysis) -> Vec<ClaimVerdict> {
    let (n, l, f) = (n as i64, l as i64, a.f as i64);
    let t = a.t_counts.map(|x| x as i64);
    let x = a.x_sizes.map(|x| x as i64);
    let t_min = *t.iter().min().unwrap();
    let x_total: i64 = x.iter().sum();
    let base = || {
        Witness { vertices: Some(a.witnesses), ..Witness::default() }
            .value("n", n)
            .value("l", l)
            .value("f", f)
            .value("t_min", t_min)
    };
    let mut out = Vec::with_capacity(9);

    out.push(ClaimVerdict::judged(ClaimId::ConjZ, f == 0, base()));

    out.push(if f == 0 {
        ClaimVerdict::vacuous(ClaimId::Lemma21)
    } else {
        ClaimVerdict::judged(
            ClaimId::Lemma21,
            2 * n >= 3 * l + x_total + 3,
            base().value("sum_x", x_total),
        )
    });

    let lemma22 = (0..3).all(|i| x[i] >= t[i] * (f - 1));
    let mut w = base();
    for i in 0..3 {
        w = w.value(&format!("x{}", i + 1), x[i]).value(&format!("t{}", i + 1), t[i]);
    }
    out.push(ClaimVerdict::judged(ClaimId::Lemma22, lemma22, w));

    out.push(if t.contains(&1) {
        ClaimVerdict::judged(ClaimId::Lemma23, f == 0, base())
    } else {
        ClaimVerdict::vacuous(ClaimId::Lemma23)
    });

    out.push(ClaimVerdict::judged(ClaimId::Thm1, 13 * f <= n + 6, base()));

    out.push(if t_min == 2 {
        ClaimVerdict::judged(ClaimId::Case1Bound, 26 * f <= 2 * n + 9, base())
    } else {
        ClaimVerdict::vacuous(ClaimId::Case1Bound)
    });
    out.push(if t_min >= 3 {
        ClaimVerdict::judged(ClaimId::Case2Bound, 27 * f <= 2 * n + 12, base())
    } else {
        ClaimVerdict::vacuous(ClaimId::Case2Bound)
    });

    out.push(if t.contains(&2) {
        ClaimVerdict::judged(ClaimId::Conj4, f == 0, base())
    } else {
        ClaimVerdict::vacuous(ClaimId::Conj4)
    });

    out.push(if f >= 1 && t_min >= 2 {
        ClaimVerdict::judged(ClaimId::LengthBound, l >= 6 * f - 2, base())
    } else {
        ClaimVerdict::vacuous(ClaimId::LengthBound)
    });

    out
}

/// A connected graph together with its longest-path set; the checks below
/// validate their path arguments against it.
#[derive(Clone, Debug)]
pub struct ClaimContext<'g> {
    graph: &'g Graph,
    longest: LongestPathSet,
    graph6: Option<String>,
    convention: CrossingConvention,
}

impl<'g> ClaimContext<'g> {
    pub fn new(graph: &'g Graph, cap: usize) -> Result<Self> {
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(Self::from_parts(graph, enumerate_longest_paths(graph, cap)))
    }

    pub fn from_parts(graph: &'g Graph, longest: LongestPathSet) -> Self {
        ClaimContext { graph, longest, graph6: to_graph6(graph).ok(), convention: CrossingConvention::default() }
    }

    pub fn with_convention(mut self, convention: CrossingConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn longest(&self) -> &LongestPathSet {
        &self.longest
    }

    pub fn convention(&self) -> CrossingConvention {
        self.convention
    }

    pub fn witness(&self) -> Witness {
        Witness { graph6: self.graph6.clone(), ..Witness::default() }
    }

    /// Fails unless `p` is a longest path of the graph.
    pub fn ensure_longest(&self, p: &Path) -> Result<()> {
        let order = self.longest.length() + 1;
        let member = if self.longest.is_truncated() {
            p.is_path_of(self.graph) && p.order() == order
        } else {
            self.longest.contains(p)
        };
        if member {
            Ok(())
        } else {
            Err(Error::NotLongest(p.vertices().to_vec(), order))
        }
    }

    pub fn check_prop1(&self, p1: &Path, p2: &Path) -> Result<ClaimVerdict> {
        self.ensure_longest(p1)?;
        self.ensure_longest(p2)?;
        Ok(self.prop1_unchecked(p1, p2))
    }

    pub(crate) fn prop1_unchecked(&self, p1: &Path, p2: &Path) -> ClaimVerdict {
        let common = p1.vertex_set().intersection(p2.vertex_set());
        let mut w = self.witness();
        w.vertices = Some(common);
        if common.is_empty() {
            w.paths = vec![p1.clone(), p2.clone()];
        }
        ClaimVerdict::judged(ClaimId::Prop1, !common.is_empty(), w)
    }

    /// Analyzes a longest-path triple and evaluates every triple claim.
    pub fn check_triple(&self, triple: &PathTriple) -> Result<(TripleAnalysis, Vec<ClaimVerdict>)> {
        for p in triple.paths() {
            self.ensure_longest(p)?;
        }
        self.triple_unchecked(triple)
    }

    pub(crate) fn triple_unchecked(&self, triple: &PathTriple) -> Result<(TripleAnalysis, Vec<ClaimVerdict>)> {
        let a = triple.analyze(self.graph, self.convention)?;
        debug_assert_eq!(a.f == 0, !a.common.is_empty());
        let mut verdicts = evaluate_triple_claims(self.graph.n(), self.longest.length(), &a);
        for v in verdicts.iter_mut().filter(|v| v.status == Status::Violated) {
            let w = v.witness.get_or_insert_with(Witness::default);
            w.graph6 = self.graph6.clone();
            w.paths = triple.paths().to_vec();
        }
        Ok((a, verdicts))
    }

    fn one(&self, triple: &PathTriple, claim: ClaimId) -> Result<ClaimVerdict> {
        let (_, verdicts) = self.check_triple(triple)?;
        Ok(verdicts.into_iter().find(|v| v.claim == claim).expect("every triple claim is evaluated"))
    }

    pub fn check_conjecture_z(&self, t: &PathTriple) -> Result<ClaimVerdict> {
        self.one(t, ClaimId::ConjZ)
    }

    pub fn check_lemma21(&self, t: &PathTriple) -> Result<ClaimVerdict> {
        self.one(t, ClaimId::Lemma21)
    }

    pub fn check_lemma22(&self, t: &PathTriple) -> Result<ClaimVerdict> {
        self.one(t, ClaimId::Lemma22)
    }

    pub fn check_lemma23(&self, t: &PathTriple) -> Result<ClaimVerdict> {
        self.one(t, ClaimId::Lemma23)
    }

    pub fn check_theorem1(&self, t: &PathTriple) -> Result<ClaimVerdict> {
        self.one(t, ClaimId::Thm1)
    }

    /// Case 1 and Case 2 verdicts; at most one of them is non-vacuous.
    pub fn check_case_bounds(&self, t: &PathTriple) -> Result<[ClaimVerdict; 2]> {
        Ok([self.one(t, ClaimId::Case1Bound)?, self.one(t, ClaimId::Case2Bound)?])
    }

    pub fn check_conjecture4(&self, t: &PathTriple) -> Result<ClaimVerdict> {
        self.one(t, ClaimId::Conj4)
    }

    pub fn check_length_bound(&self, t: &PathTriple) -> Result<ClaimVerdict> {
        self.one(t, ClaimId::LengthBound)
    }

    pub fn gallai_vertex_set(&self) -> Result<VertexSet> {
        if self.longest.is_truncated() {
            return Err(Error::Truncated(self.longest.len()));
        }
        Ok(self.longest.common_vertices())
    }

    pub fn check_gallai_vertex(&self) -> ClaimVerdict {
        match self.gallai_vertex_set() {
            Ok(set) => {
                let mut w = self.witness();
                w.vertices = Some(set);
                ClaimVerdict::judged(ClaimId::GallaiVertex, !set.is_empty(), w)
            }
            Err(_) => ClaimVerdict::new(ClaimId::GallaiVertex, Status::SkippedTruncated, None),
        }
    }

    pub fn check_hypotraceable(&self, limit: Duration) -> ClaimVerdict {
        match is_hypotraceable_within(self.graph, limit) {
            Ok(false) => ClaimVerdict::vacuous(ClaimId::Hypotraceable),
            Ok(true) => match self.gallai_vertex_set() {
                Ok(set) => {
                    let mut w = self.witness();
                    w.vertices = Some(set);
                    ClaimVerdict::judged(ClaimId::Hypotraceable, set.is_empty(), w)
                }
                Err(_) => ClaimVerdict::new(ClaimId::Hypotraceable, Status::SkippedTruncated, None),
            },
            Err(_) => ClaimVerdict::new(ClaimId::Hypotraceable, Status::SkippedBudget, None),
        }
    }
}

pub fn check_prop1(g: &Graph, p1: &Path, p2: &Path) -> Result<ClaimVerdict> {
    ClaimContext::new(g, search::DEFAULT_PATH_CAP)?.check_prop1(p1, p2)
}

pub fn check_conjecture_z(g: &Graph, t: &PathTriple) -> Result<ClaimVerdict> {
    ClaimContext::new(g, search::DEFAULT_PATH_CAP)?.check_conjecture_z(t)
}

pub fn check_lemma21(g: &Graph, t: &PathTriple) -> Result<ClaimVerdict> {
    ClaimContext::new(g, search::DEFAULT_PATH_CAP)?.check_lemma21(t)
}

pub fn check_lemma22(g: &Graph, t: &PathTriple) -> Result<ClaimVerdict> {
    ClaimContext::new(g, search::DEFAULT_PATH_CAP)?.check_lemma22(t)
}

pub fn check_lemma23(g: &Graph, t: &PathTriple) -> Result<ClaimVerdict> {
    ClaimContext::new(g, search::DEFAULT_PATH_CAP)?.check_lemma23(t)
}

pub fn check_theorem1(g: &Graph, t: &PathTriple) -> Result<ClaimVerdict> {
    ClaimContext::new(g, search::DEFAULT_PATH_CAP)?.check_theorem1(t)
}

pub fn check_case_bounds(g: &Graph, t: &PathTriple) -> Result<[ClaimVerdict; 2]> {
    ClaimContext::new(g, search::DEFAULT_PATH_CAP)?.check_case_bounds(t)
}

pub fn check_conjecture4(g: &Graph, t: &PathTriple) -> Result<ClaimVerdict> {
    ClaimContext::new(g, search::DEFAULT_PATH_CAP)?.check_conjecture4(t)
}

/// Intersection of all longest paths of a connected graph.
pub fn gallai_vertex_set(g: &Graph) -> Result<VertexSet> {
    ClaimContext::new(g, search::DEFAULT_PATH_CAP)?.gallai_vertex_set()
}

/// No Hamiltonian path, while every vertex-deleted subgraph has one.
pub fn is_hypotraceable(g: &Graph) -> Result<bool> {
    is_hypotraceable_within(g, HYPOTRACEABLE_DEFAULT_LIMIT)
}

pub fn is_hypotraceable_within(g: &Graph, limit: Duration) -> Result<bool> {
    if g.n() > HYPOTRACEABLE_MAX_VERTICES {
        return Err(Error::Budget(format!(
            "hypotraceability is checked exactly only up to {HYPOTRACEABLE_MAX_VERTICES} vertices"
        )));
    }
    let start = std::time::Instant::now();
    let remaining = || limit.checked_sub(start.elapsed()).ok_or(Error::Timeout(limit));
    if g.n() == 1 || search::has_hamiltonian_path_within(g, remaining()?)? {
        return Ok(false);
    }
    for v in 0..g.n() {
        if !search::has_hamiltonian_path_within(&g.remove_vertex(v)?, remaining()?)? {
            return Ok(false);
        }
    }
    Ok(true)
}
