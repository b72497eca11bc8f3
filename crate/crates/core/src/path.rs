use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A simple path, stored in canonical orientation: the vertex sequence is
/// lexicographically no greater than its reversal. A path and its reversal
/// are the same value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Path {
    vertices: Vec<usize>,
    set: VertexSet,
}

impl Path {
    /// Validates `vertices` as a simple path of `g` and canonicalizes it.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Path> {
        if vertices.is_empty() {
            return Err(Error::InvalidPath("no vertices".into()));
        }
        let mut set = VertexSet::new();
        for &v in &vertices {
            if v >= g.n() {
                return Err(Error::InvalidPath(format!("vertex {v} outside 0..{}", g.n())));
            }
            if set.contains(v) {
                return Err(Error::InvalidPath(format!("vertex {v} repeated")));
            }
            set.insert(v);
        }
        if let Some(w) = vertices.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            return Err(Error::InvalidPath(format!("{} and {} are not adjacent", w[0], w[1])));
        }
        Ok(Path::from_distinct(vertices))
    }

    /// Canonicalizes a sequence already known to be a simple path.
    pub(crate) fn from_distinct(mut vertices: Vec<usize>) -> Path {
        // Distinct vertices: comparing the two ends decides the orientation.
        if vertices.len() > 1 && vertices[0] > vertices[vertices.len() - 1] {
            vertices.reverse();
        }
        let set = vertices.iter().copied().collect();
        Path { vertices, set }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> &VertexSet {
        &self.set
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// Paths always have at least one vertex.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ends(&self) -> (usize, usize) {
        (self.vertices[0], self.vertices[self.vertices.len() - 1])
    }

    pub fn contains(&self, v: usize) -> bool {
        self.set.contains(v)
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        if !self.set.contains(v) {
            return None;
        }
        self.vertices.iter().position(|&x| x == v)
    }

    /// The segment of this path between `u` and `v` inclusive (`uPv`).
    pub fn subpath(&self, u: usize, v: usize) -> Result<Path> {
        let i = self.position(u).ok_or(Error::NotOnPath(u))?;
        let j = self.position(v).ok_or(Error::NotOnPath(v))?;
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        Ok(Path::from_distinct(self.vertices[lo..=hi].to_vec()))
    }

    /// Whether every consecutive pair is an edge of `g`.
    pub fn is_path_of(&self, g: &Graph) -> bool {
        self.vertices.iter().all(|&v| v < g.n())
            && self.vertices.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices.cmp(&other.vertices)
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.vertices)
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.vertices.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn canonical_orientation() {
        let g = named::path(4);
        let p = Path::new(&g, vec![3, 2, 1, 0]).unwrap();
        assert_eq!(p.vertices(), &[0, 1, 2, 3]);
        assert_eq!(p, Path::new(&g, vec![0, 1, 2, 3]).unwrap());
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn invalid_paths() {
        let g = named::path(4);
        assert!(Path::new(&g, vec![]).is_err());
        assert!(Path::new(&g, vec![0, 2]).is_err());
        assert!(Path::new(&g, vec![0, 1, 0]).is_err());
        assert!(Path::new(&g, vec![4]).is_err());
    }

    #[test]
    fn subpath_examples() {
        let g = named::path(4);
        let p = Path::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(p.subpath(1, 3).unwrap().vertices(), &[1, 2, 3]);
        assert_eq!(p.subpath(3, 0).unwrap().vertices(), &[0, 1, 2, 3]);
        let q = Path::new(&g, vec![0, 1, 2]).unwrap();
        assert_eq!(q.subpath(1, 1).unwrap().vertices(), &[1]);
        assert_eq!(q.subpath(1, 3), Err(Error::NotOnPath(3)));
    }
}
