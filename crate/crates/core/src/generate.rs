//! Isomorphism-free generation of small connected graphs.
//!
//! The canonical form of a graph is the relabelling whose upper-triangle bit
//! string (graph6 order: `(0,1), (0,2), (1,2), (0,3), ...`) is
//! lexicographically smallest over all vertex permutations. In that order
//! the bits of column `j` depend only on the first `j + 1` chosen vertices,
//! so permutations are built one position at a time and a branch is cut as
//! soon as its column prefix exceeds the best string found so far.
//!
//! Every connected graph on `n` vertices has a non-cut vertex, so all of
//! them arise by joining a new vertex to a nonempty subset of some connected
//! graph on `n - 1` vertices.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Graph;

/// Largest order [`canonical_code`] accepts (the bit string fits a `u64`).
pub const MAX_CANONICAL_VERTICES: usize = 11;
/// Largest order accepted by [`generate_connected_graphs`].
pub const MAX_GENERATED_VERTICES: usize = 8;
/// Largest order generated without an explicit opt-in.
pub const DEFAULT_GENERATED_VERTICES: usize = 7;

struct Canonizer<'g> {
    g: &'g Graph,
    n: usize,
    order: [usize; MAX_CANONICAL_VERTICES],
    cols: [u16; MAX_CANONICAL_VERTICES],
    used: u16,
    best_cols: Option<[u16; MAX_CANONICAL_VERTICES]>,
    best_order: [usize; MAX_CANONICAL_VERTICES],
}

impl Canonizer<'_> {
    /// Whether `cols[1..=depth]` is lexicographically greater than the
    /// incumbent's prefix.
    fn beaten(&self, depth: usize) -> bool {
        match &self.best_cols {
            None => false,
            Some(best) => self.cols[1..=depth] > best[1..=depth],
        }
    }

    fn search(&mut self, depth: usize) {
        if depth == self.n {
            if self.best_cols.is_none_or(|b| self.cols[..self.n] < b[..self.n]) {
                self.best_cols = Some(self.cols);
                self.best_order = self.order;
            }
            return;
        }
        for w in 0..self.n {
            if self.used & (1 << w) != 0 {
                continue;
            }
            let mut col = 0u16;
            for i in 0..depth {
                col = col << 1 | self.g.has_edge(self.order[i], w) as u16;
            }
            self.cols[depth] = col;
            if self.beaten(depth) {
                continue;
            }
            self.order[depth] = w;
            self.used |= 1 << w;
            self.search(depth + 1);
            self.used &= !(1 << w);
        }
    }
}

fn canonize(g: &Graph) -> Result<(u64, Vec<usize>)> {
    let n = g.n();
    if n > MAX_CANONICAL_VERTICES {
        return Err(Error::Config(format!(
            "canonical forms are computed for at most {MAX_CANONICAL_VERTICES} vertices"
        )));
    }
    let mut c = Canonizer {
        g,
        n,
        order: [0; MAX_CANONICAL_VERTICES],
        cols: [0; MAX_CANONICAL_VERTICES],
        used: 0,
        best_cols: None,
        best_order: [0; MAX_CANONICAL_VERTICES],
    };
    c.search(0);
    let cols = c.best_cols.expect("at least one permutation");
    let code = (1..n).fold(0u64, |acc, j| acc << j | cols[j] as u64);
    Ok((code, c.best_order[..n].to_vec()))
}

/// The minimal upper-triangle bit string, packed most significant bit first.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    canonize(g).map(|(code, _)| code)
}

/// The relabelling of `g` that realises [`canonical_code`].
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let (_, order) = canonize(g)?;
    let mut perm = vec![0; g.n()];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    Ok(g.permuted(&perm))
}

/// Whether `g` is already its own canonical form.
pub fn is_canonical(g: &Graph) -> Result<bool> {
    Ok(&canonical_form(g)? == g)
}

/// One canonical representative per isomorphism class of connected graphs
/// on `n` vertices, sorted by canonical bit string.
pub fn generate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    generate_connected_graphs_with(n, Exec::Sequential)
}

pub fn generate_connected_graphs_with(n: usize, exec: Exec) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_GENERATED_VERTICES {
        return Err(Error::Config(format!(
            "graph generation supports 1 <= n <= {MAX_GENERATED_VERTICES}, got {n}"
        )));
    }
    let mut layer = vec![Graph::empty(1)?];
    for k in 2..=n {
        let parents = layer;
        let children: Vec<Vec<(u64, Graph)>> = exec.map(&parents, |h| {
            let mut edges = h.edges();
            let base = edges.len();
            (1u32..1 << (k - 1))
                .map(|subset| {
                    edges.truncate(base);
                    edges.extend((0..k - 1).filter(|i| subset & (1 << i) != 0).map(|i| (i, k - 1)));
                    let g = Graph::from_edge_list(k, &edges).expect("valid by construction");
                    let form = canonical_form(&g).expect("k is within the canonical limit");
                    (canonical_code(&form).expect("same size"), form)
                })
                .collect()
        });
        let mut seen = HashSet::new();
        let mut next: Vec<(u64, Graph)> = children
            .into_iter()
            .flatten()
            .filter(|(code, _)| seen.insert(*code))
            .collect();
        next.sort_by_key(|(code, _)| *code);
        layer = next.into_iter().map(|(_, g)| g).collect();
    }
    Ok(layer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| generate_connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn out_of_range() {
        assert!(generate_connected_graphs(0).is_err());
        assert!(generate_connected_graphs(9).is_err());
        assert!(canonical_code(&Graph::empty(12).unwrap()).is_err());
    }

    #[test]
    fn canonical_form_is_a_relabelling_invariant() {
        let g = named::petersen().induced(&[0, 1, 2, 3, 4, 5, 6, 7]);
        let code = canonical_code(&g).unwrap();
        let perm = [3, 7, 0, 5, 1, 6, 2, 4];
        assert_eq!(canonical_code(&g.permuted(&perm)).unwrap(), code);
        let form = canonical_form(&g).unwrap();
        assert!(is_canonical(&form).unwrap());
        assert_eq!(canonical_code(&form).unwrap(), code);
    }

    #[test]
    fn minimal_string_puts_edges_last() {
        // P3: best labelling has the middle vertex last: (0,1)=0, (0,2)=1, (1,2)=1
        assert_eq!(canonical_code(&named::path(3)).unwrap(), 0b011);
        assert_eq!(canonical_code(&named::complete(4)).unwrap(), 0b111111);
    }
}
