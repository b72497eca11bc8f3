//! Pendant extension and uniform edge subdivision of a graph carrying a
//! triple of longest paths.
//!
//! `G'` adds one new leaf at every distinct end vertex of the three paths
//! and extends each path through the leaves at both of its ends. `G^t`
//! replaces every edge of `G'` by a path with `t` interior vertices, and the
//! extended paths are lifted edge by edge. Under this construction the
//! lifted paths stay longest and the distance-sum minimum scales by `t + 1`.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::checks::{ClaimContext, Status};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Graph;
use crate::path::Path;
use crate::search::{enumerate_longest_paths_within, LongestPathSet, DEFAULT_PATH_CAP};
use crate::triple::PathTriple;

pub const DEFAULT_MAX_SUBDIVIDED_VERTICES: usize = 60;
pub const DEFAULT_VERIFY_LIMIT: Duration = Duration::from_secs(120);

/// Where a vertex of `G^t` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// Vertex of the base graph `G` (same id).
    Original { vertex: usize },
    /// Leaf attached to `anchor`, an end vertex of some base path.
    Pendant { anchor: usize },
    /// Interior vertex `position` (1-based, counted from the smaller
    /// endpoint) of the subdivided edge `edge` of `G'`.
    Subdivision { edge: (usize, usize), position: usize },
}

/// `G'` together with the extended paths `P'`.
#[derive(Clone, Debug)]
pub struct PendantExtension {
    pub base_n: usize,
    pub graph: Graph,
    pub triple: PathTriple,
    /// Path end vertex -> its new leaf.
    pub pendants: BTreeMap<usize, usize>,
}

/// Adds one leaf per distinct end vertex of the three paths. Leaves get ids
/// `n, n+1, ...` in increasing order of their anchors.
pub fn attach_pendants(g: &Graph, triple: &PathTriple) -> Result<PendantExtension> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if triple.paths().iter().any(|p| p.order() < 2) {
        return Err(Error::DegeneratePath);
    }
    let anchors: VertexSet = triple
        .paths()
        .iter()
        .flat_map(|p| {
            let (a, b) = p.ends();
            [a, b]
        })
        .collect();
    let n = g.n();
    let pendants: BTreeMap<usize, usize> = anchors.iter().enumerate().map(|(i, a)| (a, n + i)).collect();

    let mut edges = g.edges();
    edges.extend(pendants.iter().map(|(&a, &leaf)| (a, leaf)));
    let graph = Graph::from_edge_list(n + pendants.len(), &edges)?;

    let lift = |p: &Path| {
        let (a, b) = p.ends();
        let mut seq = Vec::with_capacity(p.order() + 2);
        seq.push(pendants[&a]);
        seq.extend_from_slice(p.vertices());
        seq.push(pendants[&b]);
        Path::from_distinct(seq)
    };
    let [a, b, c] = triple.paths();
    let triple = PathTriple::new_unchecked([lift(a), lift(b), lift(c)]);
    Ok(PendantExtension { base_n: n, graph, triple, pendants })
}

/// `G^t` with vertex provenance and the lifted paths `P^t`.
#[derive(Clone, Debug)]
pub struct SubdividedInstance {
    pub extension: PendantExtension,
    pub t: usize,
    pub graph: Graph,
    pub provenance: Vec<Provenance>,
    pub lifted: PathTriple,
}

impl SubdividedInstance {
    pub fn is_original(&self, v: usize) -> bool {
        matches!(self.provenance.get(v), Some(Provenance::Original { .. }))
    }
}

/// Replaces every edge of `ext.graph` by a path with `t` interior vertices.
/// Vertices of `G'` keep their ids; interior vertices follow in order of
/// sorted edge, then position.
pub fn subdivide(ext: &PendantExtension, t: usize) -> SubdividedInstance {
    let gp = &ext.graph;
    let base = gp.n();
    let edge_list = gp.edges();
    let interior = |k: usize, pos: usize| base + k * t + pos - 1;
    let index: BTreeMap<(usize, usize), usize> = edge_list.iter().enumerate().map(|(k, &e)| (e, k)).collect();

    let mut edges = Vec::with_capacity(edge_list.len() * (t + 1));
    let mut provenance: Vec<Provenance> = (0..base)
        .map(|v| {
            if v < ext.base_n {
                Provenance::Original { vertex: v }
            } else {
                let anchor = *ext.pendants.iter().find(|(_, &leaf)| leaf == v).unwrap().0;
                Provenance::Pendant { anchor }
            }
        })
        .collect();
    for (k, &(u, v)) in edge_list.iter().enumerate() {
        let mut prev = u;
        for pos in 1..=t {
            let w = interior(k, pos);
            provenance.push(Provenance::Subdivision { edge: (u, v), position: pos });
            edges.push((prev, w));
            prev = w;
        }
        edges.push((prev, v));
    }
    let graph = Graph::from_edge_list(base + edge_list.len() * t, &edges)
        .expect("subdivision stays within the vertex limit checked by the caller");

    let lift = |p: &Path| {
        let mut seq = Vec::with_capacity(p.len() * (t + 1) + 1);
        seq.push(p.vertices()[0]);
        for w in p.vertices().windows(2) {
            let (a, b) = (w[0], w[1]);
            let k = index[&(a.min(b), a.max(b))];
            if a < b {
                seq.extend((1..=t).map(|pos| interior(k, pos)));
            } else {
                seq.extend((1..=t).rev().map(|pos| interior(k, pos)));
            }
            seq.push(b);
        }
        Path::from_distinct(seq)
    };
    let [a, b, c] = ext.triple.paths();
    let lifted = PathTriple::new_unchecked([lift(a), lift(b), lift(c)]);
    SubdividedInstance { extension: ext.clone(), t, graph, provenance, lifted }
}

/// Builds `G^t` directly from the base graph and triple.
pub fn build_instance(g: &Graph, triple: &PathTriple, t: usize) -> Result<SubdividedInstance> {
    let ext = attach_pendants(g, triple)?;
    let n_t = ext.graph.n() + t * ext.graph.edge_count();
    if n_t > crate::MAX_VERTICES {
        return Err(Error::TooManyVertices(n_t));
    }
    Ok(subdivide(&ext, t))
}

/// Budget for [`verify_proposition`].
#[derive(Clone, Copy, Debug)]
pub struct VerifyBudget {
    pub max_vertices: usize,
    pub time_limit: Duration,
    pub path_cap: usize,
}

impl Default for VerifyBudget {
    fn default() -> Self {
        VerifyBudget {
            max_vertices: DEFAULT_MAX_SUBDIVIDED_VERTICES,
            time_limit: DEFAULT_VERIFY_LIMIT,
            path_cap: DEFAULT_PATH_CAP,
        }
    }
}

/// Outcome of checking the scaling statement on one `(G, P, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    pub t: usize,
    pub status: Status,
    pub base_length: usize,
    pub base_f: u32,
    pub vertices: usize,
    pub edges: usize,
    /// `l(G^t)` from exact search; `None` when skipped.
    pub length: Option<usize>,
    /// `(t + 1) (l(G) + 2)`.
    pub lifted_length: usize,
    /// Whether each lifted path is a member of `L(G^t)`.
    pub lifted_longest: [bool; 3],
    pub f: Option<u32>,
    pub expected_f: u32,
    pub witnesses: Option<VertexSet>,
    pub original_witness: bool,
}

impl PropositionReport {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

/// Checks by exhaustive search on `G^t` that the lifted paths are longest,
/// that `f(G^t, P^t) = (t + 1) f(G, P)`, and that some minimizer of the
/// distance sum on `G^t` is a vertex of `G`.
pub fn verify_proposition(
    g: &Graph,
    triple: &PathTriple,
    t: usize,
    budget: VerifyBudget,
) -> Result<PropositionReport> {
    PropositionVerifier::new(g, budget)?.verify(triple, t)
}

/// Verifies many triples of one graph. `G'` and hence `G^t` depend only on
/// the set of path end vertices, so the search on `G^t` is shared between
/// triples with the same ends.
pub struct PropositionVerifier<'g> {
    ctx: ClaimContext<'g>,
    budget: VerifyBudget,
    searches: HashMap<(VertexSet, usize), Option<LongestPathSet>>,
    slowest: Duration,
}

impl<'g> PropositionVerifier<'g> {
    pub fn new(g: &'g Graph, budget: VerifyBudget) -> Result<Self> {
        Ok(PropositionVerifier {
            ctx: ClaimContext::new(g, budget.path_cap)?,
            budget,
            searches: HashMap::new(),
            slowest: Duration::ZERO,
        })
    }

    /// Longest single search on some `G^t` so far.
    pub fn slowest_search(&self) -> Duration {
        self.slowest
    }

    /// Distinct `G^t` searched so far.
    pub fn searches(&self) -> usize {
        self.searches.len()
    }

    pub fn verify(&mut self, triple: &PathTriple, t: usize) -> Result<PropositionReport> {
        let g = self.ctx.graph();
        for p in triple.paths() {
            self.ctx.ensure_longest(p)?;
        }
        let (base_f, _) = triple.f_value(g)?;
        let base_length = self.ctx.longest().length();
        let ext = attach_pendants(g, triple)?;
        let vertices = ext.graph.n() + t * ext.graph.edge_count();
        let edges = (t + 1) * ext.graph.edge_count();
        let mut report = PropositionReport {
            t,
            status: Status::SkippedBudget,
            base_length,
            base_f,
            vertices,
            edges,
            length: None,
            lifted_length: (t + 1) * (base_length + 2),
            lifted_longest: [false; 3],
            f: None,
            expected_f: (t as u32 + 1) * base_f,
            witnesses: None,
            original_witness: false,
        };
        if vertices > self.budget.max_vertices.min(crate::MAX_VERTICES) {
            return Ok(report);
        }
        let inst = subdivide(&ext, t);
        let key: VertexSet = ext.pendants.keys().copied().collect();
        let longest = match self.searches.entry((key, t)) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => {
                let start = Instant::now();
                let found = match enumerate_longest_paths_within(
                    &inst.graph,
                    self.budget.path_cap,
                    Exec::Sequential,
                    self.budget.time_limit,
                ) {
                    Ok(l) => Some(l),
                    Err(Error::Timeout(_)) => None,
                    Err(e) => return Err(e),
                };
                self.slowest = self.slowest.max(start.elapsed());
                e.insert(found)
            }
        };
        let Some(longest) = longest.as_ref() else {
            return Ok(report);
        };
        report.length = Some(longest.length());
        for (i, p) in inst.lifted.paths().iter().enumerate() {
            report.lifted_longest[i] = if longest.is_truncated() {
                p.is_path_of(&inst.graph) && p.len() == longest.length()
            } else {
                longest.contains(p)
            };
        }
        let (f, witnesses) = inst.lifted.f_value(&inst.graph)?;
        report.f = Some(f);
        report.witnesses = Some(witnesses);
        report.original_witness = witnesses.iter().any(|v| inst.is_original(v));
        let ok = report.lifted_longest.iter().all(|&b| b)
            && longest.length() == report.lifted_length
            && f == report.expected_f
            && report.original_witness;
        report.status = if ok { Status::Holds } else { Status::Violated };
        Ok(report)
    }
}

/// The union of the three paths as a graph, relabelled densely.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub graph: Graph,
    /// New id -> id in the original graph.
    pub original: Vec<usize>,
    pub triple: PathTriple,
}

pub fn restrict_to_triple(g: &Graph, triple: &PathTriple) -> Result<Restriction> {
    let union = triple
        .paths()
        .iter()
        .fold(VertexSet::new(), |acc, p| acc.union(p.vertex_set()));
    let original = union.to_vec();
    let mut new_id = vec![usize::MAX; g.n()];
    for (i, &v) in original.iter().enumerate() {
        new_id[v] = i;
    }
    let relabel = |p: &Path| Path::from_distinct(p.vertices().iter().map(|&v| new_id[v]).collect());
    let edges: Vec<(usize, usize)> = triple
        .paths()
        .iter()
        .flat_map(|p| p.vertices().windows(2).map(|w| (new_id[w[0]], new_id[w[1]])).collect::<Vec<_>>())
        .collect();
    let graph = Graph::from_edge_list(original.len(), &edges)?;
    let [a, b, c] = triple.paths();
    let triple = PathTriple::new(&graph, [relabel(a), relabel(b), relabel(c)])?;
    Ok(Restriction { graph, original, triple })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeBoundReport {
    pub t: usize,
    pub n0: usize,
    pub edges: usize,
    /// `3 (n0 - 1)`.
    pub edge_bound: usize,
    pub vertices: usize,
    /// `n0 + 3 (n0 + 1) t + 6`.
    pub vertex_bound: usize,
}

impl SizeBoundReport {
    pub fn holds(&self) -> bool {
        self.edges <= self.edge_bound && self.vertices <= self.vertex_bound
    }
}

/// Restricts to the union of the triple, builds `G^t` from it, and compares
/// both sizes with their bounds in `n0 = |V(H)|`.
pub fn check_size_bound(g: &Graph, triple: &PathTriple, t: usize) -> Result<SizeBoundReport> {
    let r = restrict_to_triple(g, triple)?;
    let ext = attach_pendants(&r.graph, &r.triple)?;
    let n0 = r.graph.n();
    Ok(SizeBoundReport {
        t,
        n0,
        edges: r.graph.edge_count(),
        edge_bound: 3 * (n0 - 1),
        vertices: ext.graph.n() + t * ext.graph.edge_count(),
        vertex_bound: n0 + 3 * (n0 + 1) * t + 6,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::search::{enumerate_longest_paths, longest_path_length};

    fn star_triple() -> (Graph, PathTriple) {
        let g = named::star(3);
        let l = enumerate_longest_paths(&g, 10);
        let t = PathTriple::new(&g, [l.paths()[0].clone(), l.paths()[1].clone(), l.paths()[2].clone()]).unwrap();
        (g, t)
    }

    fn isomorphic_spider(g: &Graph) -> bool {
        // S(2,2,2): one vertex of degree 3, three of degree 2, three leaves, connected, tree
        let mut degs: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        degs.sort();
        g.is_connected() && g.edge_count() == g.n() - 1 && degs == vec![1, 1, 1, 2, 2, 2, 3]
    }

    #[test]
    fn star_pendants_make_a_spider() {
        let (g, t) = star_triple();
        let ext = attach_pendants(&g, &t).unwrap();
        assert_eq!(ext.pendants.len(), 3);
        assert_eq!((ext.graph.n(), ext.graph.edge_count()), (7, 6));
        assert!(isomorphic_spider(&ext.graph));
        for p in ext.triple.paths() {
            assert_eq!(p.order(), 5);
            assert!(p.is_path_of(&ext.graph));
        }
    }

    #[test]
    fn pendant_counts_follow_distinct_ends() {
        // three paths 0..3 sharing both ends 0 and 3 in K4
        let g = named::complete(4);
        let t = PathTriple::from_vertices(&g, [vec![0, 1, 2, 3], vec![0, 2, 1, 3], vec![0, 1, 3]]).unwrap();
        assert_eq!(attach_pendants(&g, &t).unwrap().pendants.len(), 2);

        let g = named::path(8);
        let t = PathTriple::from_vertices(&g, [vec![0, 1], vec![2, 3, 4], vec![5, 6, 7]]).unwrap();
        assert_eq!(attach_pendants(&g, &t).unwrap().pendants.len(), 6);

        let t = PathTriple::from_vertices(&g, [vec![0], vec![2, 3, 4], vec![5, 6, 7]]).unwrap();
        assert_eq!(attach_pendants(&g, &t).unwrap_err(), Error::DegeneratePath);
    }

    #[test]
    fn subdivision_arithmetic() {
        let (g, t) = star_triple();
        let ext = attach_pendants(&g, &t).unwrap();
        let inst = subdivide(&ext, 1);
        assert_eq!((inst.graph.n(), inst.graph.edge_count()), (13, 12));
        for p in inst.lifted.paths() {
            assert_eq!(p.order(), 9);
            assert!(p.is_path_of(&inst.graph));
        }
        let zero = subdivide(&ext, 0);
        assert_eq!(zero.graph, ext.graph);
        assert_eq!(zero.lifted, ext.triple);
        for t in 0..4 {
            let inst = subdivide(&ext, t);
            assert_eq!(inst.graph.n(), 7 + 6 * t);
            assert_eq!(inst.graph.edge_count(), 6 * (t + 1));
            assert_eq!(inst.provenance.len(), inst.graph.n());
            for p in inst.lifted.paths() {
                assert_eq!(p.order(), (t + 1) * 4 + 1);
            }
        }
    }

    #[test]
    fn single_edge_subdivided_twice_is_a_path() {
        let g = named::path(2);
        let ext = PendantExtension {
            base_n: 2,
            graph: g.clone(),
            triple: PathTriple::new_unchecked([
                Path::new(&g, vec![0, 1]).unwrap(),
                Path::new(&g, vec![0]).unwrap(),
                Path::new(&g, vec![1]).unwrap(),
            ]),
            pendants: BTreeMap::new(),
        };
        let inst = subdivide(&ext, 2);
        assert_eq!(inst.graph.n(), 4);
        assert_eq!(longest_path_length(&inst.graph), 3);
        assert_eq!(inst.lifted.paths()[0].vertices(), &[0, 2, 3, 1]);
        assert_eq!(
            inst.provenance[3],
            Provenance::Subdivision { edge: (0, 1), position: 2 }
        );
    }

    #[test]
    fn proposition_on_the_star() {
        let (g, t) = star_triple();
        for (t_sub, len) in [(0, 4), (1, 8), (2, 12)] {
            let r = verify_proposition(&g, &t, t_sub, VerifyBudget::default()).unwrap();
            assert!(r.holds(), "{r:?}");
            assert_eq!(r.length, Some(len));
            assert_eq!(r.f, Some(0));
            assert!(r.witnesses.unwrap().contains(0));
        }
    }

    #[test]
    fn proposition_budget_and_preconditions() {
        let (g, t) = star_triple();
        let tight = VerifyBudget { max_vertices: 10, ..VerifyBudget::default() };
        assert_eq!(verify_proposition(&g, &t, 1, tight).unwrap().status, Status::SkippedBudget);

        let c = named::cycle(5);
        let short = PathTriple::from_vertices(&c, [vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        assert!(matches!(
            verify_proposition(&c, &short, 1, VerifyBudget::default()),
            Err(Error::NotLongest(..))
        ));
    }

    #[test]
    fn restriction_of_star_and_cycle() {
        let (g, t) = star_triple();
        let r = restrict_to_triple(&g, &t).unwrap();
        assert_eq!(r.graph, g);

        let c = named::cycle(5);
        let l = enumerate_longest_paths(&c, 10);
        // H keeps exactly the edges used by some path
        let tr = PathTriple::new(&c, [l.paths()[0].clone(), l.paths()[1].clone(), l.paths()[2].clone()]).unwrap();
        let r = restrict_to_triple(&c, &tr).unwrap();
        let union: std::collections::BTreeSet<(usize, usize)> = tr
            .paths()
            .iter()
            .flat_map(|p| p.vertices().windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect::<Vec<_>>())
            .collect();
        assert_eq!(r.graph.edge_count(), union.len());
        assert!(r.graph.is_connected());
    }

    #[test]
    fn size_bounds() {
        let (g, t) = star_triple();
        let r = check_size_bound(&g, &t, 1).unwrap();
        assert_eq!((r.n0, r.vertices, r.vertex_bound), (4, 13, 25));
        assert!(r.holds());
        let r = check_size_bound(&g, &t, 0).unwrap();
        assert_eq!(r.vertices, 7);
        assert!(r.holds());
    }
}
