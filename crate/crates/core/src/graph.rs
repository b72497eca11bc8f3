//! Undirected simple graphs on dense vertex ids `0..n`.

use std::fmt;

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// Immutable undirected simple graph with per-vertex adjacency bitsets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse to one.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut adj = vec![VertexSet::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n, adj })
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        Self::from_edge_list(n, &[])
    }

    pub(crate) fn from_adjacency(adj: Vec<VertexSet>) -> Self {
        debug_assert!(!adj.is_empty());
        debug_assert!(adj.iter().enumerate().all(|(v, s)| !s.contains(v)));
        Graph { n: adj.len(), adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Vertices reachable from `start` without entering `blocked`.
    /// `start` itself is included even if blocked.
    pub fn reachable_avoiding(&self, start: usize, blocked: &VertexSet) -> VertexSet {
        let allowed = self.vertices().difference(blocked);
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::new();
            for v in frontier.iter() {
                next = next.union(&self.adj[v]);
            }
            frontier = next.intersection(&allowed).difference(&seen);
            seen = seen.union(&frontier);
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.reachable_avoiding(0, &VertexSet::new()).len() == self.n
    }

    /// Graph with one extra edge; `None` if the edge is invalid or present.
    pub fn with_edge(&self, u: usize, v: usize) -> Option<Graph> {
        if u >= self.n || v >= self.n || u == v || self.has_edge(u, v) {
            return None;
        }
        let mut g = self.clone();
        g.adj[u].insert(v);
        g.adj[v].insert(u);
        Some(g)
    }

    /// `G - v`, with the remaining vertices relabelled densely in order.
    pub fn remove_vertex(&self, v: usize) -> Result<Graph> {
        if self.n == 1 {
            return Err(Error::EmptyGraph);
        }
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        Ok(self.induced(&keep))
    }

    /// Induced subgraph on `keep` (in the given order, relabelled `0..keep.len()`).
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&u| index[u] != usize::MAX)
                    .map(|u| index[u])
                    .collect()
            })
            .collect();
        Graph::from_adjacency(adj)
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![VertexSet::new(); self.n];
        for (u, v) in self.edges() {
            adj[perm[u]].insert(perm[v]);
            adj[perm[v]].insert(perm[u]);
        }
        Graph::from_adjacency(adj)
    }

    /// Multi-source BFS: distance from every vertex to the nearest source.
    pub fn distances_from_set(&self, sources: &VertexSet) -> Result<DistanceVector> {
        if sources.is_empty() {
            return Err(Error::EmptySourceSet);
        }
        if sources.last().is_some_and(|v| v >= self.n) {
            return Err(Error::VertexOutOfRange { u: sources.last().unwrap(), v: 0, n: self.n });
        }
        let mut dist = vec![None; self.n];
        let mut seen = *sources;
        let mut frontier = *sources;
        let mut d = 0u32;
        while !frontier.is_empty() {
            let mut next = VertexSet::new();
            for v in frontier.iter() {
                dist[v] = Some(d);
                next = next.union(&self.adj[v]);
            }
            frontier = next.difference(&seen);
            seen = seen.union(&frontier);
            d += 1;
        }
        Ok(DistanceVector { dist, sources: *sources })
    }

    /// Parses the edge-list text format: a header line `n m` followed by `m`
    /// lines `u v` (0-based). Blank lines and `#` comments are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::EdgeList("missing header".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        for line in lines.by_ref().take(m) {
            edges.push(parse_pair(line)?);
        }
        if edges.len() != m {
            return Err(Error::EdgeList(format!("header promises {m} edges, found {}", edges.len())));
        }
        if let Some(extra) = lines.next() {
            return Err(Error::EdgeList(format!("unexpected trailing line {extra:?}")));
        }
        Graph::from_edge_list(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::EdgeList(format!("expected two integers, got {line:?}"))),
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Per-vertex distance to a source set; `None` marks unreachable vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceVector {
    dist: Vec<Option<u32>>,
    sources: VertexSet,
}

impl DistanceVector {
    pub fn get(&self, v: usize) -> Option<u32> {
        self.dist[v]
    }

    pub fn sources(&self) -> &VertexSet {
        &self.sources
    }

    pub fn as_slice(&self) -> &[Option<u32>] {
        &self.dist
    }
}

/// Small named graphs used across tests, examples and benches.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edge_list(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    /// K_{1,k} with center 0.
    pub fn star(k: usize) -> Graph {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Graph::from_edge_list(k + 1, &edges).unwrap()
    }

    /// Spider with `legs` legs of `len` edges each, center 0. Leg `i` uses
    /// vertices `1 + i*len ..= (i+1)*len`, ordered outward.
    pub fn spider(legs: usize, len: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..legs {
            let base = 1 + i * len;
            edges.push((0, base));
            for j in 1..len {
                edges.push((base + j - 1, base + j));
            }
        }
        Graph::from_edge_list(1 + legs * len, &edges).unwrap()
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edge_list(10, &edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn construction_examples() {
        let p3 = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(Graph::from_edge_list(1, &[]).unwrap().n(), 1);
        let dup = Graph::from_edge_list(4, &[(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(dup.edges(), vec![(0, 1)]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::from_edge_list(0, &[]), Err(Error::EmptyGraph));
        assert!(matches!(Graph::from_edge_list(3, &[(0, 3)]), Err(Error::VertexOutOfRange { .. })));
        assert_eq!(Graph::from_edge_list(3, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::from_edge_list(300, &[]), Err(Error::TooManyVertices(300)));
    }

    #[test]
    fn connectivity() {
        assert!(path(3).is_connected());
        assert!(!Graph::empty(2).unwrap().is_connected());
        assert!(star(3).is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
    }

    #[test]
    fn cycle_distances() {
        let c5 = cycle(5);
        let d = c5.distances_from_set(&VertexSet::singleton(0)).unwrap();
        assert_eq!(d.as_slice(), &[Some(0), Some(1), Some(2), Some(2), Some(1)]);
        let d = c5.distances_from_set(&[0, 2].into_iter().collect()).unwrap();
        assert_eq!(d.as_slice(), &[Some(0), Some(1), Some(0), Some(1), Some(1)]);
        let d = Graph::empty(2).unwrap().distances_from_set(&VertexSet::singleton(0)).unwrap();
        assert_eq!(d.as_slice(), &[Some(0), None]);
        assert_eq!(c5.distances_from_set(&VertexSet::new()), Err(Error::EmptySourceSet));
    }

    #[test]
    fn edge_list_text() {
        let g = Graph::parse_edge_list("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g, path(3));
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert!(Graph::parse_edge_list("3 2\n0 1\n").is_err());
        assert!(Graph::parse_edge_list("3 1\n0 x\n").is_err());
        assert!(Graph::parse_edge_list("").is_err());
    }

    #[test]
    fn vertex_removal_relabels() {
        let g = path(4).remove_vertex(1).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), vec![(1, 2)]);
    }

    #[test]
    fn petersen_is_cubic() {
        let g = petersen();
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert_eq!(g.edge_count(), 15);
    }
}
