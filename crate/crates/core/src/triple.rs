//! Quantities attached to a triple of paths `{P1, P2, P3}` in a graph.
//!
//! * `f`: the minimum over vertices `v` of `d(v, V(P1)) + d(v, V(P2)) + d(v, V(P3))`,
//!   with the set of minimizers as witnesses.
//! * exclusive vertices of `Pi`: vertices on `Pi` and on neither other path.
//! * crossing count of `Pi`: the number of contiguous subpaths `Q` of `Pi`
//!   meeting `V(Pj)` in exactly one end and `V(Pk)` in exactly the other.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{DistanceVector, Graph};
use crate::path::Path;

/// Whether a single vertex lying on both other paths counts as a crossing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingConvention {
    /// Single-vertex subpaths count (a one-vertex path meets `X` and `Y`
    /// in its only vertex).
    #[default]
    Inclusive,
    /// Only subpaths with at least two vertices count.
    Strict,
}

/// Three pairwise distinct paths of one graph. Index order is the order
/// given at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PathTriple {
    paths: [Path; 3],
}

impl PathTriple {
    pub fn new(g: &Graph, paths: [Path; 3]) -> Result<PathTriple> {
        if let Some(p) = paths.iter().find(|p| !p.is_path_of(g)) {
            return Err(Error::InvalidPath(format!("{p:?} is not a path of the graph")));
        }
        if paths[0] == paths[1] || paths[0] == paths[2] || paths[1] == paths[2] {
            return Err(Error::DuplicatePath);
        }
        Ok(PathTriple { paths })
    }

    /// Builds a triple from raw vertex sequences.
    pub fn from_vertices(g: &Graph, seqs: [Vec<usize>; 3]) -> Result<PathTriple> {
        let [a, b, c] = seqs;
        Self::new(g, [Path::new(g, a)?, Path::new(g, b)?, Path::new(g, c)?])
    }

    pub(crate) fn new_unchecked(paths: [Path; 3]) -> PathTriple {
        PathTriple { paths }
    }

    pub fn paths(&self) -> &[Path; 3] {
        &self.paths
    }

    pub fn path(&self, which: usize) -> Result<&Path> {
        self.paths.get(which).ok_or(Error::PathIndex(which))
    }

    fn others(which: usize) -> (usize, usize) {
        match which {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        }
    }

    /// `V(P1) ∩ V(P2) ∩ V(P3)`.
    pub fn common_vertices(&self) -> VertexSet {
        let [a, b, c] = &self.paths;
        a.vertex_set().intersection(b.vertex_set()).intersection(c.vertex_set())
    }

    pub fn pairwise_intersection(&self, i: usize, j: usize) -> Result<VertexSet> {
        if i == j {
            return Err(Error::SameIndex(i));
        }
        Ok(self.path(i)?.vertex_set().intersection(self.path(j)?.vertex_set()))
    }

    /// Vertices of path `which` lying on neither of the other two.
    pub fn exclusive_vertices(&self, which: usize) -> Result<VertexSet> {
        let p = self.path(which)?;
        let (j, k) = Self::others(which);
        let elsewhere = self.paths[j].vertex_set().union(self.paths[k].vertex_set());
        Ok(p.vertex_set().difference(&elsewhere))
    }

    /// Number of `V(Pj)`-`V(Pk)` paths on path `which`, `{j, k}` being the
    /// other two indices. Each contiguous segment `P[a..=b]` is counted at
    /// most once.
    pub fn t_count(&self, which: usize, convention: CrossingConvention) -> Result<usize> {
        let p = self.path(which)?.vertices();
        let (j, k) = Self::others(which);
        let x = self.paths[j].vertex_set();
        let y = self.paths[k].vertex_set();
        let mut count = 0;
        for a in 0..p.len() {
            let (mut in_x, mut in_y) = (0, 0);
            for b in a..p.len() {
                in_x += x.contains(p[b]) as usize;
                in_y += y.contains(p[b]) as usize;
                if in_x > 1 || in_y > 1 {
                    break;
                }
                if in_x == 1 && in_y == 1 {
                    let (s, e) = (p[a], p[b]);
                    let crosses = (x.contains(s) && y.contains(e)) || (y.contains(s) && x.contains(e));
                    if crosses && (a < b || convention == CrossingConvention::Inclusive) {
                        count += 1;
                    }
                }
            }
        }
        Ok(count)
    }

    fn distance_vectors(&self, g: &Graph) -> Result<[DistanceVector; 3]> {
        let [a, b, c] = &self.paths;
        Ok([
            g.distances_from_set(a.vertex_set())?,
            g.distances_from_set(b.vertex_set())?,
            g.distances_from_set(c.vertex_set())?,
        ])
    }

    /// `Σ_i d(v, V(Pi))`.
    pub fn distance_sum(&self, g: &Graph, v: usize) -> Result<u32> {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { u: v, v, n: g.n() });
        }
        let dv = self.distance_vectors(g)?;
        dv.iter().map(|d| d.get(v).ok_or(Error::Disconnected)).sum()
    }

    /// `f` and the full set of vertices attaining it.
    pub fn f_value(&self, g: &Graph) -> Result<(u32, VertexSet)> {
        let dv = self.distance_vectors(g)?;
        let mut best = u32::MAX;
        let mut witnesses = VertexSet::new();
        for v in 0..g.n() {
            let mut sum = 0;
            for d in &dv {
                sum += d.get(v).ok_or(Error::Disconnected)?;
            }
            if sum < best {
                best = sum;
                witnesses = VertexSet::singleton(v);
            } else if sum == best {
                witnesses.insert(v);
            }
        }
        Ok((best, witnesses))
    }

    pub fn analyze(&self, g: &Graph, convention: CrossingConvention) -> Result<TripleAnalysis> {
        let (f, witnesses) = self.f_value(g)?;
        let mut x_sizes = [0; 3];
        let mut t_counts = [0; 3];
        for i in 0..3 {
            x_sizes[i] = self.exclusive_vertices(i)?.len();
            t_counts[i] = self.t_count(i, convention)?;
        }
        Ok(TripleAnalysis {
            f,
            witnesses,
            x_sizes,
            t_counts,
            pairwise: [
                self.pairwise_intersection(0, 1)?,
                self.pairwise_intersection(0, 2)?,
                self.pairwise_intersection(1, 2)?,
            ],
            common: self.common_vertices(),
            convention,
        })
    }
}

/// Everything computed for one triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleAnalysis {
    pub f: u32,
    pub witnesses: VertexSet,
    pub x_sizes: [usize; 3],
    pub t_counts: [usize; 3],
    /// `P1∩P2`, `P1∩P3`, `P2∩P3`.
    pub pairwise: [VertexSet; 3],
    pub common: VertexSet,
    pub convention: CrossingConvention,
}

impl TripleAnalysis {
    pub fn t_min(&self) -> usize {
        *self.t_counts.iter().min().unwrap()
    }

    pub fn x_total(&self) -> usize {
        self.x_sizes.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::search::enumerate_longest_paths;

    fn longest_triple(g: &Graph, idx: [usize; 3]) -> PathTriple {
        let l = enumerate_longest_paths(g, 1000);
        PathTriple::new(g, idx.map(|i| l.paths()[i].clone())).unwrap()
    }

    #[test]
    fn star_triple() {
        let g = named::star(3);
        let t = longest_triple(&g, [0, 1, 2]);
        assert_eq!(t.distance_sum(&g, 0).unwrap(), 0);
        assert_eq!(t.distance_sum(&g, 1).unwrap(), 1);
        let (f, w) = t.f_value(&g).unwrap();
        assert_eq!((f, w.to_vec()), (0, vec![0]));
        // paths are [1,0,2], [1,0,3], [2,0,3]
        for i in 0..3 {
            assert!(t.exclusive_vertices(i).unwrap().is_empty());
            assert_eq!(t.t_count(i, CrossingConvention::Inclusive).unwrap(), 1);
            assert_eq!(t.t_count(i, CrossingConvention::Strict).unwrap(), 0);
        }
        assert_eq!(t.pairwise_intersection(0, 1).unwrap().to_vec(), vec![0, 1]);
    }

    #[test]
    fn cycle_triples() {
        let g = named::cycle(5);
        let t = longest_triple(&g, [0, 2, 4]);
        let (f, w) = t.f_value(&g).unwrap();
        assert_eq!((f, w.len()), (0, 5));
        for i in 0..3 {
            assert!(t.exclusive_vertices(i).unwrap().is_empty());
            assert_eq!(t.t_count(i, CrossingConvention::Inclusive).unwrap(), 5);
        }
        assert_eq!(t.pairwise_intersection(1, 2).unwrap().len(), 5);
    }

    #[test]
    fn spider_has_single_crossings() {
        let g = named::spider(3, 2);
        let t = longest_triple(&g, [0, 1, 2]);
        for i in 0..3 {
            assert_eq!(t.t_count(i, CrossingConvention::Inclusive).unwrap(), 1);
        }
    }

    #[test]
    fn disjoint_paths_are_fully_exclusive() {
        let g = named::path(9);
        let t = PathTriple::from_vertices(&g, [vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).unwrap();
        for i in 0..3 {
            assert_eq!(t.exclusive_vertices(i).unwrap(), *t.paths()[i].vertex_set());
        }
        // sums along the line: 0..=8 -> 9,7,5,4,4,4,5,7,9
        let (f, w) = t.f_value(&g).unwrap();
        assert_eq!((f, w.to_vec()), (4, vec![3, 4, 5]));
        // the middle path never touches the outer two
        assert_eq!(t.t_count(1, CrossingConvention::Inclusive).unwrap(), 0);
    }

    #[test]
    fn errors() {
        let g = named::cycle(5);
        let t = longest_triple(&g, [0, 1, 2]);
        assert_eq!(t.exclusive_vertices(3), Err(Error::PathIndex(3)));
        assert_eq!(t.t_count(7, CrossingConvention::Inclusive), Err(Error::PathIndex(7)));
        assert_eq!(t.pairwise_intersection(1, 1), Err(Error::SameIndex(1)));
        let p = t.paths()[0].clone();
        assert_eq!(PathTriple::new(&g, [p.clone(), p, t.paths()[1].clone()]), Err(Error::DuplicatePath));

        let split = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        let t = PathTriple::from_vertices(&split, [vec![0], vec![1], vec![2, 3]]).unwrap();
        assert_eq!(t.f_value(&split), Err(Error::Disconnected));
    }
}
