//! Rooted canonical forms of trees, tree automorphism groups, and
//! enumeration of unlabeled trees.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;

use super::automorphism::AutomorphismGroup;
use super::permutation::Permutation;
use super::pruning::pruning_sequence;
use crate::{Graph, Result};

/// Tree rooted at its center: one root, or two roots for a bicentral tree
/// (each owning the half on its side of the central edge).
struct Rooted {
    roots: Vec<usize>,
    children: Vec<Vec<usize>>,
    /// Shape label; equal labels mean isomorphic rooted subtrees.
    label: Vec<usize>,
}

impl Rooted {
    fn new(g: &Graph) -> Result<Self> {
        let trace = pruning_sequence(g)?;
        let roots = trace.survivors().to_vec();
        let n = g.n();
        let mut children = vec![Vec::new(); n];
        let mut visited = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for &r in &roots {
            visited[r] = true;
        }
        let mut queue: std::collections::VecDeque<usize> = roots.iter().copied().collect();
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in g.neighbors(u) {
                if !visited[w] {
                    visited[w] = true;
                    children[u].push(w);
                    queue.push_back(w);
                }
            }
        }
        let mut dict: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut label = vec![0; n];
        for &v in order.iter().rev() {
            let mut key: Vec<usize> = children[v].iter().map(|&c| label[c]).collect();
            key.sort_unstable();
            let next = dict.len();
            label[v] = *dict.entry(key).or_insert(next);
        }
        for ch in &mut children {
            ch.sort_by_key(|&c| (label[c], c));
        }
        Ok(Rooted { roots, children, label })
    }

    /// Writes into `images` the isomorphism of the subtree at `x` onto the
    /// subtree at `y`, matching children in (label, id) order.
    fn map_subtree(&self, x: usize, y: usize, images: &mut [usize]) {
        let mut stack = vec![(x, y)];
        while let Some((a, b)) = stack.pop() {
            images[a] = b;
            stack.extend(self.children[a].iter().copied().zip(self.children[b].iter().copied()));
        }
    }

    fn swap(&self, n: usize, x: usize, y: usize) -> Permutation {
        let mut images: Vec<usize> = (0..n).collect();
        self.map_subtree(x, y, &mut images);
        self.map_subtree(y, x, &mut images);
        Permutation::from_images(images).expect("subtree swap is a bijection")
    }

    fn encode(&self, v: usize, out: &mut String) {
        let mut parts: Vec<String> = self.children[v]
            .iter()
            .map(|&c| {
                let mut s = String::new();
                self.encode(c, &mut s);
                s
            })
            .collect();
        parts.sort_unstable();
        out.push('(');
        for p in parts {
            out.push_str(&p);
        }
        out.push(')');
    }
}

/// Automorphism group of a tree. The order is the product, over all
/// vertices, of the factorials of the multiplicities of isomorphic child
/// subtrees, doubled when the two halves of a bicentral tree are isomorphic.
/// Generators swap adjacent isomorphic siblings.
pub(crate) fn tree_automorphism_group(g: &Graph) -> Result<AutomorphismGroup> {
    let rooted = Rooted::new(g)?;
    let n = g.n();
    let mut order = BigUint::from(1u32);
    let mut generators = Vec::new();
    for v in 0..n {
        let ch = &rooted.children[v];
        let mut run = 1u32;
        for i in 1..=ch.len() {
            if i < ch.len() && rooted.label[ch[i]] == rooted.label[ch[i - 1]] {
                generators.push(rooted.swap(n, ch[i - 1], ch[i]));
                run += 1;
            } else {
                for k in 2..=run {
                    order *= BigUint::from(k);
                }
                run = 1;
            }
        }
    }
    if let [a, b] = rooted.roots[..] {
        if rooted.label[a] == rooted.label[b] {
            order *= BigUint::from(2u32);
            generators.push(rooted.swap(n, a, b));
        }
    }
    Ok(AutomorphismGroup { n, generators, order })
}

/// A string that is equal for two trees exactly when they are isomorphic.
pub fn tree_canonical_form(g: &Graph) -> Result<String> {
    let rooted = Rooted::new(g)?;
    let mut halves: Vec<String> = rooted
        .roots
        .iter()
        .map(|&r| {
            let mut s = String::new();
            rooted.encode(r, &mut s);
            s
        })
        .collect();
    halves.sort_unstable();
    Ok(halves.join("-"))
}

/// One representative of every isomorphism class of trees on `n` vertices,
/// found by decoding all `n^(n-2)` Prüfer sequences and deduplicating by
/// canonical form. Ordered by canonical form.
pub fn unlabeled_trees(n: usize) -> Vec<Graph> {
    match n {
        0 => return Vec::new(),
        1 => return vec![Graph::empty(1)],
        _ => {}
    }
    let len = n - 2;
    let mut seen: BTreeMap<String, Graph> = BTreeMap::new();
    let mut seq = vec![0usize; len];
    loop {
        let t = Graph::from_prufer(&seq).expect("valid Prüfer sequence");
        let key = tree_canonical_form(&t).expect("decoded sequence is a tree");
        seen.entry(key).or_insert(t);
        // odometer increment
        let mut i = 0;
        while i < len {
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == len {
            break;
        }
    }
    seen.into_values().collect()
}

/// Same classes as [`unlabeled_trees`], grown by attaching a leaf to every
/// vertex of every tree one size smaller. Much cheaper for larger `n`.
pub fn unlabeled_trees_by_extension(n: usize) -> Vec<Graph> {
    if n <= 1 {
        return unlabeled_trees(n);
    }
    let mut level = unlabeled_trees(1);
    for size in 2..=n {
        let mut next: BTreeMap<String, Graph> = BTreeMap::new();
        for t in &level {
            for v in 0..t.n() {
                let edges = t.edges().iter().copied().chain([(v, size - 1)]);
                let grown = Graph::new(size, edges).expect("leaf attachment keeps a tree");
                let key = tree_canonical_form(&grown).expect("tree");
                next.entry(key).or_insert(grown);
            }
        }
        level = next.into_values().collect();
    }
    level
}
