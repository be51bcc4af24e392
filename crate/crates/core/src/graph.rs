//! Undirected simple graphs and the tree queries used throughout the crate.

use std::collections::VecDeque;

use crate::{Error, Result};

/// Largest order accepted by the exhaustive matching search on non-trees.
pub const MATCHING_ORACLE_LIMIT: usize = 16;

/// An undirected simple graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted, so every iteration over a vertex's
/// neighborhood is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from 0-indexed edges. Loops, duplicate edges and
    /// out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidVertex { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            list.push((a, b));
            adj[a].push(b);
            adj[b].push(a);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!("duplicate edge {{{}, {}}}", w[0].0, w[0].1)));
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(Graph { adj, edges: list })
    }

    /// Builds a graph from 1-indexed edges, as they appear in graph files.
    pub fn from_one_indexed(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut converted = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == 0 || v == 0 {
                return Err(Error::InvalidGraph("vertex label 0 in 1-indexed input".into()));
            }
            converted.push((u - 1, v - 1));
        }
        Graph::new(n, converted)
    }

    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edges: Vec::new() }
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    /// The star `K_{1,m}` with center `0` and leaves `1..=m`.
    pub fn star(m: usize) -> Self {
        Graph::new(m + 1, (1..=m).map(|i| (0, i))).expect("star edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph edges are valid")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!("cycle needs at least 3 vertices, got {n}")));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Decodes a Prüfer sequence over `0..seq.len() + 2` into a labeled tree.
    pub fn from_prufer(seq: &[usize]) -> Result<Self> {
        let n = seq.len() + 2;
        if let Some(&bad) = seq.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidVertex { vertex: bad, n });
        }
        let mut degree = vec![1usize; n];
        for &v in seq {
            degree[v] += 1;
        }
        let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
            (0..n).filter(|&v| degree[v] == 1).map(std::cmp::Reverse).collect();
        let mut edges = Vec::with_capacity(n - 1);
        for &v in seq {
            let std::cmp::Reverse(leaf) = leaves.pop().expect("a leaf always exists");
            edges.push((leaf, v));
            degree[v] -= 1;
            if degree[v] == 1 {
                leaves.push(std::cmp::Reverse(v));
            }
        }
        let std::cmp::Reverse(a) = leaves.pop().expect("two vertices remain");
        let std::cmp::Reverse(b) = leaves.pop().expect("two vertices remain");
        edges.push((a, b));
        Graph::new(n, edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Degree-1 vertices in ascending order.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn is_regular(&self) -> bool {
        self.adj.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    /// Hop distances from `src`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return false;
        }
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Connected with exactly `n - 1` edges. The empty graph is not a tree.
    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.edge_count() == self.n() - 1 && self.is_connected()
    }

    pub(crate) fn require_tree(&self) -> Result<()> {
        if self.is_tree() {
            Ok(())
        } else {
            Err(Error::NotATree)
        }
    }

    /// The unique simple path from `u` to `v` in a tree, endpoints included.
    pub fn tree_path(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        self.require_tree()?;
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.path_unchecked(u, v))
    }

    pub(crate) fn path_unchecked(&self, u: usize, v: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        parent[v] = v;
        queue.push_back(v);
        while let Some(x) = queue.pop_front() {
            if x == u {
                break;
            }
            for &w in &self.adj[x] {
                if parent[w] == usize::MAX {
                    parent[w] = x;
                    queue.push_back(w);
                }
            }
        }
        // walking parents from u leads back to v
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            cur = parent[cur];
            path.push(cur);
        }
        path
    }

    /// Distances from `c` to every leaf of the tree, as a multiset.
    pub fn leaf_distance_multiset(&self, c: usize) -> Result<LeafDistanceMultiset> {
        self.require_tree()?;
        self.check_vertex(c)?;
        let dist = self.bfs_distances(c);
        let entries = self.leaves().into_iter().map(|l| dist[l].unwrap()).collect();
        Ok(LeafDistanceMultiset::new(entries))
    }

    /// Subgraph induced by `vertices` (any order). Returns the subgraph with
    /// vertices relabeled `0..k` in the order given.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| index[a] != usize::MAX && index[b] != usize::MAX)
            .map(|&(a, b)| (index[a], index[b]));
        Graph::new(vertices.len(), edges)
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        let mut a = vec![vec![0.0; n]; n];
        for &(u, v) in &self.edges {
            a[u][v] = 1.0;
            a[v][u] = 1.0;
        }
        a
    }

    /// Maximum matching size. Exact on trees by rooted dynamic programming;
    /// on other graphs by exhaustive search up to [`MATCHING_ORACLE_LIMIT`].
    pub fn maximum_matching(&self) -> Result<Matching> {
        let size = if self.is_tree() {
            self.tree_matching_size()
        } else if self.n() <= MATCHING_ORACLE_LIMIT {
            self.exhaustive_matching_size()
        } else {
            return Err(Error::SizeLimit {
                what: "exhaustive matching on non-trees",
                n: self.n(),
                limit: MATCHING_ORACLE_LIMIT,
            });
        };
        Ok(Matching { size, perfect: 2 * size == self.n() })
    }

    /// Rooted DP at vertex 0: `free[v]` is the best matching of the subtree
    /// with `v` unmatched, `best[v]` the best overall.
    fn tree_matching_size(&self) -> usize {
        let n = self.n();
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![usize::MAX; n];
        let mut stack = vec![0];
        parent[0] = 0;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    stack.push(w);
                }
            }
        }
        let mut free = vec![0usize; n];
        let mut best = vec![0usize; n];
        for &v in order.iter().rev() {
            let children = || self.adj[v].iter().copied().filter(|&c| c != 0 && parent[c] == v);
            let f: usize = children().map(|c| best[c]).sum();
            // best[c] <= free[c] + 1 always holds
            let gain = children().map(|c| free[c] + 1 - best[c]).max().unwrap_or(0);
            free[v] = f;
            best[v] = f + gain;
        }
        best[0]
    }

    /// Bitmask DP over vertex subsets.
    fn exhaustive_matching_size(&self) -> usize {
        let n = self.n();
        let full = (1usize << n) - 1;
        let mut memo = vec![u8::MAX; 1 << n];
        fn go(g: &Graph, mask: usize, memo: &mut [u8]) -> u8 {
            if mask == 0 {
                return 0;
            }
            if memo[mask] != u8::MAX {
                return memo[mask];
            }
            let v = mask.trailing_zeros() as usize;
            let rest = mask & !(1 << v);
            let mut best = go(g, rest, memo);
            for &w in g.neighbors(v) {
                if rest & (1 << w) != 0 {
                    best = best.max(1 + go(g, rest & !(1 << w), memo));
                }
            }
            memo[mask] = best;
            best
        }
        go(self, full, &mut memo) as usize
    }
}

/// Result of a maximum matching computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Matching {
    pub size: usize,
    pub perfect: bool,
}

/// Multiset of leaf distances, stored sorted so equality is multiset equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeafDistanceMultiset(Vec<usize>);

impl LeafDistanceMultiset {
    pub fn new(mut entries: Vec<usize>) -> Self {
        entries.sort_unstable();
        LeafDistanceMultiset(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    /// Oracle: maximum matching by scanning every edge subset.
    fn matching_by_edge_subsets(g: &Graph) -> usize {
        let m = g.edge_count();
        let mut best = 0;
        for mask in 0u32..(1 << m) {
            let mut used = vec![false; g.n()];
            let mut ok = true;
            for (i, &(u, v)) in g.edges().iter().enumerate() {
                if mask & (1 << i) != 0 {
                    if used[u] || used[v] {
                        ok = false;
                        break;
                    }
                    used[u] = true;
                    used[v] = true;
                }
            }
            if ok {
                best = best.max(mask.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn tree_recognition() {
        assert!(asymmetric7().is_tree());
        assert!(Graph::empty(1).is_tree());
        assert!(!Graph::complete(3).is_tree());
        assert!(!Graph::empty(0).is_tree());
        assert!(!Graph::empty(2).is_tree());
        assert!(!frucht().is_tree());
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(matches!(Graph::new(3, [(0, 0)]), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::new(3, [(0, 1), (1, 0)]), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::new(3, [(0, 3)]), Err(Error::InvalidVertex { .. })));
    }

    #[test]
    fn paths_in_figure_trees() {
        let to_one = |p: Vec<usize>| p.into_iter().map(|v| v + 1).collect::<Vec<_>>();
        assert_eq!(to_one(binary7().tree_path(3, 6).unwrap()), vec![4, 2, 1, 3, 7]);
        assert_eq!(to_one(tree10().tree_path(8, 9).unwrap()), vec![9, 5, 2, 6, 10]);
        assert_eq!(binary7().tree_path(4, 4).unwrap(), vec![4]);
        assert!(matches!(frucht().tree_path(0, 1), Err(Error::NotATree)));
    }

    #[test]
    fn leaf_distances() {
        assert_eq!(tree10().leaf_distance_multiset(0).unwrap().entries(), &[2, 2, 3, 3]);
        assert_eq!(Graph::path(2).leaf_distance_multiset(0).unwrap().entries(), &[0, 1]);
        // v2 reaches leaves 4, 5 directly and 6, 7 through 1 and 3
        assert_eq!(binary7().leaf_distance_multiset(1).unwrap().entries(), &[1, 1, 3, 3]);
    }

    #[test]
    fn matching_fixtures() {
        let m = binary7().maximum_matching().unwrap();
        assert_eq!((m.size, m.perfect), (2, false));
        assert_eq!(matching_by_edge_subsets(&binary7()), 2);
        let m = Graph::path(4).maximum_matching().unwrap();
        assert_eq!((m.size, m.perfect), (2, true));
        assert_eq!(matching_by_edge_subsets(&Graph::path(4)), 2);
        assert_eq!(Graph::star(3).maximum_matching().unwrap().size, 1);
        // Frucht graph has a perfect matching (cubic, bridgeless)
        assert_eq!(frucht().maximum_matching().unwrap().size, 6);
        assert!(matches!(Graph::cycle(17).unwrap().maximum_matching(), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn matching_dp_agrees_with_edge_subset_oracle() {
        // every labeled tree on up to 7 vertices, plus all Prüfer codes of order 8 with stride
        for n in 2..=8usize {
            let total = n.pow((n - 2) as u32);
            let stride = if n == 8 { 97 } else { 1 };
            for code in (0..total).step_by(stride) {
                let mut seq = Vec::with_capacity(n - 2);
                let mut c = code;
                for _ in 0..n - 2 {
                    seq.push(c % n);
                    c /= n;
                }
                let t = Graph::from_prufer(&seq).unwrap();
                assert!(t.is_tree());
                assert_eq!(t.maximum_matching().unwrap().size, matching_by_edge_subsets(&t), "{seq:?}");
            }
        }
    }

    #[test]
    fn prufer_decoding() {
        // standard textbook example: 0-indexed code [3,3,3,4] gives the tree
        // with edges 0-3, 1-3, 2-3, 3-4, 4-5
        let t = Graph::from_prufer(&[3, 3, 3, 4]).unwrap();
        assert_eq!(t.edges(), &[(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(Graph::from_prufer(&[]).unwrap().edges(), &[(0, 1)]);
    }

    #[test]
    fn induced_subgraph_relabels_in_given_order() {
        let g = binary7();
        let sub = g.induced_subgraph(&[1, 0, 2]).unwrap();
        assert_eq!(sub.edges(), &[(0, 1), (1, 2)]);
    }
}
