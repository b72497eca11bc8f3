//! Exact longest-path search.
//!
//! Both phases are depth-first extensions from every start vertex. The
//! only prune is the reachability bound: a partial path of length `len`
//! whose head can still reach `r` unused vertices can grow to at most
//! `len + r`. When collecting, a path is emitted only from its smaller end
//! vertex, so every undirected path appears exactly once and in canonical
//! orientation.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Graph;
use crate::path::Path;

/// Default ceiling on the number of canonical longest paths collected.
pub const DEFAULT_PATH_CAP: usize = 100_000;

const DEADLINE_CHECK_INTERVAL: u64 = 1 << 12;

/// `L(G)` together with `l(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongestPathSet {
    length: usize,
    paths: Vec<Path>,
    truncated: bool,
}

impl LongestPathSet {
    /// Edge count of every member.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Members in sorted canonical order.
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// Set when more than `cap` longest paths exist; `paths` then holds
    /// the first `cap` in sorted order.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.paths.binary_search(p).is_ok()
    }

    /// Intersection of the vertex sets of all members.
    pub fn common_vertices(&self) -> VertexSet {
        let mut it = self.paths.iter();
        let first = it.next().map(|p| *p.vertex_set()).unwrap_or_default();
        it.fold(first, |acc, p| acc.intersection(p.vertex_set()))
    }
}

/// Wall-clock ceiling for a search, polled every few thousand nodes.
#[derive(Clone, Copy, Debug)]
struct Deadline {
    at: Option<Instant>,
    limit: Duration,
}

impl Deadline {
    fn none() -> Self {
        Deadline { at: None, limit: Duration::MAX }
    }

    fn after(limit: Duration) -> Self {
        Deadline { at: Instant::now().checked_add(limit), limit }
    }
}

struct Dfs<'g> {
    g: &'g Graph,
    deadline: Deadline,
    nodes: u64,
}

impl<'g> Dfs<'g> {
    fn new(g: &'g Graph, deadline: Deadline) -> Self {
        Dfs { g, deadline, nodes: 0 }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(DEADLINE_CHECK_INTERVAL) {
            if let Some(at) = self.deadline.at {
                if Instant::now() >= at {
                    return Err(Error::Timeout(self.deadline.limit));
                }
            }
        }
        Ok(())
    }

    /// Raises `best` to the longest path length starting with the partial
    /// path ending at `head`. Stops early once `best` reaches `ceiling`.
    fn maximize(
        &mut self,
        head: usize,
        used: VertexSet,
        len: usize,
        best: &AtomicUsize,
        ceiling: usize,
    ) -> Result<()> {
        self.tick()?;
        if len > best.load(Ordering::Relaxed) {
            best.fetch_max(len, Ordering::Relaxed);
        }
        let incumbent = best.load(Ordering::Relaxed);
        if incumbent >= ceiling {
            return Ok(());
        }
        let reach = self.g.reachable_avoiding(head, &used);
        if len + reach.len() - 1 <= incumbent {
            return Ok(());
        }
        for w in self.g.neighbors(head).difference(&used).iter() {
            let mut next = used;
            next.insert(w);
            self.maximize(w, next, len + 1, best, ceiling)?;
        }
        Ok(())
    }

    /// Appends every path of exactly `target` edges that starts with
    /// `stack` and ends at a vertex larger than `stack[0]`. Returns true
    /// once `out` holds `limit` paths.
    fn collect(
        &mut self,
        stack: &mut Vec<usize>,
        used: VertexSet,
        target: usize,
        limit: usize,
        out: &mut Vec<Path>,
    ) -> Result<bool> {
        self.tick()?;
        let start = stack[0];
        let head = stack[stack.len() - 1];
        let len = stack.len() - 1;
        if len == target {
            if target == 0 || head > start {
                out.push(Path::from_distinct(stack.clone()));
            }
            return Ok(out.len() >= limit);
        }
        let mut reach = self.g.reachable_avoiding(head, &used);
        reach.remove(head);
        if len + reach.len() < target || reach.last().is_none_or(|m| m < start) {
            return Ok(false);
        }
        for w in self.g.neighbors(head).difference(&used).iter() {
            let mut next = used;
            next.insert(w);
            stack.push(w);
            let done = self.collect(stack, next, target, limit, out)?;
            stack.pop();
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn length_with(g: &Graph, exec: Exec, deadline: Deadline, ceiling: usize) -> Result<usize> {
    let best = AtomicUsize::new(0);
    let ceiling = ceiling.min(g.n() - 1);
    let results = exec.map_range(g.n(), |s| {
        if best.load(Ordering::Relaxed) >= ceiling {
            return Ok(());
        }
        Dfs::new(g, deadline).maximize(s, VertexSet::singleton(s), 0, &best, ceiling)
    });
    results.into_iter().collect::<Result<()>>()?;
    Ok(best.into_inner())
}

/// `l(G)`: the maximum edge count of a simple path. Disconnected graphs
/// take the maximum over components.
pub fn longest_path_length(g: &Graph) -> usize {
    longest_path_length_with(g, Exec::Sequential)
}

pub fn longest_path_length_with(g: &Graph, exec: Exec) -> usize {
    length_with(g, exec, Deadline::none(), usize::MAX).expect("no deadline set")
}

/// Like [`longest_path_length_with`], failing once `limit` wall-clock time
/// has elapsed.
pub fn longest_path_length_within(g: &Graph, exec: Exec, limit: Duration) -> Result<usize> {
    length_with(g, exec, Deadline::after(limit), usize::MAX)
}

fn enumerate_with(g: &Graph, cap: usize, exec: Exec, deadline: Deadline) -> Result<LongestPathSet> {
    let cap = cap.max(1);
    let limit = cap.saturating_add(1);
    let length = length_with(g, exec, deadline, usize::MAX)?;
    let per_start = |s: usize, limit: usize| -> Result<Vec<Path>> {
        let mut out = Vec::new();
        let mut stack = vec![s];
        Dfs::new(g, deadline).collect(&mut stack, VertexSet::singleton(s), length, limit, &mut out)?;
        Ok(out)
    };

    let mut paths = Vec::new();
    if exec.is_parallel() {
        for chunk in exec.map_range(g.n(), |s| per_start(s, limit)) {
            paths.extend(chunk?);
        }
    } else {
        for s in 0..g.n() {
            paths.extend(per_start(s, limit - paths.len())?);
            if paths.len() > cap {
                break;
            }
        }
    }
    let truncated = paths.len() > cap;
    paths.truncate(cap);
    debug_assert!(paths.windows(2).all(|w| w[0] < w[1]));
    Ok(LongestPathSet { length, paths, truncated })
}

/// `L(G)`: every longest path, canonical and sorted, up to `cap` of them.
pub fn enumerate_longest_paths(g: &Graph, cap: usize) -> LongestPathSet {
    enumerate_longest_paths_with(g, cap, Exec::Sequential)
}

pub fn enumerate_longest_paths_with(g: &Graph, cap: usize, exec: Exec) -> LongestPathSet {
    enumerate_with(g, cap, exec, Deadline::none()).expect("no deadline set")
}

pub fn enumerate_longest_paths_within(
    g: &Graph,
    cap: usize,
    exec: Exec,
    limit: Duration,
) -> Result<LongestPathSet> {
    enumerate_with(g, cap, exec, Deadline::after(limit))
}

/// Every simple path of `g`, single vertices included, found by unpruned
/// depth-first search and deduplicated through a set. Independent of the
/// pruned search; meant for small graphs.
pub fn enumerate_all_simple_paths_oracle(g: &Graph) -> Vec<Path> {
    fn walk(g: &Graph, stack: &mut Vec<usize>, seen: &mut BTreeSet<Path>) {
        seen.insert(Path::from_distinct(stack.clone()));
        let head = *stack.last().unwrap();
        for w in 0..g.n() {
            if g.has_edge(head, w) && !stack.contains(&w) {
                stack.push(w);
                walk(g, stack, seen);
                stack.pop();
            }
        }
    }
    let mut seen = BTreeSet::new();
    for s in 0..g.n() {
        walk(g, &mut vec![s], &mut seen);
    }
    seen.into_iter().collect()
}

/// Whether `l(G) = n - 1`.
pub fn has_hamiltonian_path(g: &Graph) -> bool {
    hamiltonian_with(g, Deadline::none()).expect("no deadline set")
}

pub fn has_hamiltonian_path_within(g: &Graph, limit: Duration) -> Result<bool> {
    hamiltonian_with(g, Deadline::after(limit))
}

fn hamiltonian_with(g: &Graph, deadline: Deadline) -> Result<bool> {
    let n = g.n();
    if n == 1 {
        return Ok(true);
    }
    let leaves = (0..n).filter(|&v| g.degree(v) == 1).count();
    if !g.is_connected() || leaves > 2 {
        return Ok(false);
    }
    Ok(length_with(g, Exec::Sequential, deadline, n - 1)? == n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn lists(set: &LongestPathSet) -> Vec<Vec<usize>> {
        set.paths().iter().map(|p| p.vertices().to_vec()).collect()
    }

    #[test]
    fn lengths() {
        for n in 1..8 {
            assert_eq!(longest_path_length(&named::path(n)), n - 1);
        }
        assert_eq!(longest_path_length(&named::cycle(5)), 4);
        assert_eq!(longest_path_length(&named::petersen()), 9);
        assert_eq!(longest_path_length(&Graph::empty(3).unwrap()), 0);
        let two_parts = Graph::from_edge_list(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        assert_eq!(longest_path_length(&two_parts), 2);
    }

    #[test]
    fn small_enumerations() {
        let s = enumerate_longest_paths(&named::path(3), 10);
        assert_eq!((s.length(), lists(&s)), (2, vec![vec![0, 1, 2]]));

        let s = enumerate_longest_paths(&named::star(3), 10);
        assert_eq!(lists(&s), vec![vec![1, 0, 2], vec![1, 0, 3], vec![2, 0, 3]]);

        let s = enumerate_longest_paths(&named::cycle(5), 10);
        assert_eq!(s.length(), 4);
        assert_eq!(s.len(), 5);
        assert!(!s.is_truncated());

        let s = enumerate_longest_paths(&Graph::empty(2).unwrap(), 10);
        assert_eq!(lists(&s), vec![vec![0], vec![1]]);
    }

    #[test]
    fn complete_graph_counts() {
        // n!/2 Hamiltonian paths
        assert_eq!(enumerate_longest_paths(&named::complete(5), DEFAULT_PATH_CAP).len(), 60);
        assert_eq!(enumerate_longest_paths(&named::complete(7), DEFAULT_PATH_CAP).len(), 2520);
    }

    #[test]
    fn cap_truncates_to_sorted_prefix() {
        let g = named::complete(5);
        let full = enumerate_longest_paths(&g, DEFAULT_PATH_CAP);
        for exec in [Exec::Sequential, Exec::Parallel] {
            let capped = enumerate_longest_paths_with(&g, 7, exec);
            assert!(capped.is_truncated());
            assert_eq!(capped.paths(), &full.paths()[..7]);
        }
        let exact = enumerate_longest_paths(&g, 60);
        assert!(!exact.is_truncated());
    }

    #[test]
    fn oracle_small_cases() {
        assert_eq!(enumerate_all_simple_paths_oracle(&named::path(3)).len(), 6);
        assert_eq!(enumerate_all_simple_paths_oracle(&named::path(2)).len(), 3);
        assert_eq!(enumerate_all_simple_paths_oracle(&named::complete(3)).len(), 9);
    }

    #[test]
    fn hamiltonian_paths() {
        assert!(has_hamiltonian_path(&named::cycle(5)));
        assert!(!has_hamiltonian_path(&named::star(3)));
        assert!(has_hamiltonian_path(&named::petersen()));
        assert!(has_hamiltonian_path(&Graph::empty(1).unwrap()));
        assert!(!has_hamiltonian_path(&Graph::empty(2).unwrap()));
    }

    #[test]
    fn deadline_expires() {
        let g = named::complete(12);
        let r = enumerate_longest_paths_within(&g, usize::MAX, Exec::Sequential, Duration::ZERO);
        assert!(matches!(r, Err(Error::Timeout(_))));
    }
}
