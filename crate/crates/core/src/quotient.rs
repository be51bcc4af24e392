//! Quotient networks of balanced colorings.

use serde::Serialize;

use crate::balanced::require_balanced;
use crate::{Coloring, Error, Graph, Result};

/// Class-level multidigraph: `mult[c][d]` is the number of neighbors in
/// class `d` of any vertex of class `c`. Classes follow the coloring's
/// canonical numbering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientNetwork {
    pub mult: Vec<Vec<usize>>,
    pub class_members: Vec<Vec<usize>>,
}

impl QuotientNetwork {
    pub fn k(&self) -> usize {
        self.mult.len()
    }

    /// Arrows from `c` to `d` (parallel arrows counted).
    pub fn multiplicity(&self, c: usize, d: usize) -> usize {
        self.mult[c][d]
    }
}

fn row(g: &Graph, col: &Coloring, v: usize) -> Vec<usize> {
    let mut r = vec![0; col.num_classes()];
    for &w in g.neighbors(v) {
        r[col.class_of(w)] += 1;
    }
    r
}

/// Quotient of `g` by a balanced coloring. Rows are computed from every
/// member of each class and required to agree.
pub fn quotient_network(g: &Graph, col: &Coloring) -> Result<QuotientNetwork> {
    col.check_len(g.n())?;
    let class_members = col.classes();
    let mut mult = Vec::with_capacity(class_members.len());
    for class in &class_members {
        let first = row(g, col, class[0]);
        if class[1..].iter().any(|&v| row(g, col, v) != first) {
            return Err(Error::NotBalanced);
        }
        mult.push(first);
    }
    Ok(QuotientNetwork { mult, class_members })
}

/// Simple graph on the classes with an edge `{c, d}` whenever the quotient
/// has arrows both ways between them. Loops and one-way arrows are dropped.
pub fn undirected_simplification(q: &QuotientNetwork) -> Graph {
    let k = q.k();
    let edges =
        (0..k).flat_map(|c| (c + 1..k).map(move |d| (c, d))).filter(|&(c, d)| q.mult[c][d] >= 1 && q.mult[d][c] >= 1);
    Graph::new(k, edges).expect("pairs are distinct and in range")
}

/// The simplified quotient of a balanced tree coloring is a tree, and every
/// class holding a leaf of `g` is a leaf of it (or its only vertex).
pub fn check_quotient_tree_law(g: &Graph, col: &Coloring) -> Result<bool> {
    g.require_tree()?;
    require_balanced(g, col)?;
    let q = quotient_network(g, col)?;
    let s = undirected_simplification(&q);
    if !s.is_tree() {
        return Ok(false);
    }
    let leaf_classes_ok = g.leaves().iter().all(|&l| {
        let c = col.class_of(l);
        s.degree(c) == 1 || s.n() == 1
    });
    Ok(leaf_classes_ok)
}

/// Every directed cycle of the quotient of a balanced tree coloring is a
/// loop or a 2-cycle. Arrows between classes always come in both
/// directions, so this amounts to the simplification being acyclic.
pub fn check_quotient_cycles(g: &Graph, col: &Coloring) -> Result<bool> {
    g.require_tree()?;
    require_balanced(g, col)?;
    let q = quotient_network(g, col)?;
    let k = q.k();
    let one_way = (0..k).any(|c| (0..k).any(|d| (q.mult[c][d] == 0) != (q.mult[d][c] == 0)));
    if one_way {
        return Ok(false);
    }
    let s = undirected_simplification(&q);
    // acyclic iff each connected component has one fewer edge than vertices
    let mut comp = vec![usize::MAX; k];
    let mut components = 0;
    for start in 0..k {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = components;
        while let Some(u) = stack.pop() {
            for &w in s.neighbors(u) {
                if comp[w] == usize::MAX {
                    comp[w] = components;
                    stack.push(w);
                }
            }
        }
        components += 1;
    }
    Ok(s.edge_count() + components == k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balanced::enumerate_balanced;
    use crate::graph::fixtures::*;
    use crate::symmetry::unlabeled_trees;

    fn col(n: usize, classes: &[&[usize]]) -> Coloring {
        let cl: Vec<Vec<usize>> = classes.iter().map(|c| c.iter().map(|v| v - 1).collect()).collect();
        Coloring::from_classes(n, &cl).unwrap()
    }

    #[test]
    fn ten_vertex_quotient() {
        let c = col(10, &[&[1, 2], &[3, 4, 5, 6], &[7, 8, 9, 10]]);
        let q = quotient_network(&tree10(), &c).unwrap();
        assert_eq!(q.mult, vec![vec![1, 2, 0], vec![1, 0, 1], vec![0, 1, 0]]);
        let s = undirected_simplification(&q);
        assert_eq!(s.edges(), &[(0, 1), (1, 2)]);
        assert!(check_quotient_tree_law(&tree10(), &c).unwrap());
        assert!(check_quotient_cycles(&tree10(), &c).unwrap());
    }

    #[test]
    fn binary_and_discrete_quotients() {
        let c = col(7, &[&[1], &[2, 3], &[4, 5, 6, 7]]);
        let q = quotient_network(&binary7(), &c).unwrap();
        assert_eq!(q.mult, vec![vec![0, 2, 0], vec![1, 0, 2], vec![0, 1, 0]]);
        assert!(undirected_simplification(&q).is_tree());

        let g = asymmetric7();
        let q = quotient_network(&g, &Coloring::discrete(7)).unwrap();
        let adj: Vec<Vec<usize>> =
            g.adjacency_matrix().iter().map(|r| r.iter().map(|&x| x as usize).collect()).collect();
        assert_eq!(q.mult, adj);
        assert!(check_quotient_tree_law(&g, &Coloring::discrete(7)).unwrap());
    }

    #[test]
    fn frucht_total_synchrony() {
        let q = quotient_network(&frucht(), &Coloring::uniform(12)).unwrap();
        assert_eq!(q.mult, vec![vec![3]]);
        let s = undirected_simplification(&q);
        assert_eq!((s.n(), s.edge_count()), (1, 0));
    }

    #[test]
    fn unbalanced_is_rejected() {
        let c = col(10, &[&[1], &[2], &[3, 4, 5, 6], &[7, 8, 9, 10]]);
        assert!(matches!(quotient_network(&tree10(), &c), Err(Error::NotBalanced)));
    }

    #[test]
    fn row_sums_are_degrees_on_small_trees() {
        for n in 1..=8 {
            for t in unlabeled_trees(n) {
                for c in enumerate_balanced(&t, 12).unwrap() {
                    let q = quotient_network(&t, &c).unwrap();
                    for (k, members) in q.class_members.iter().enumerate() {
                        let sum: usize = q.mult[k].iter().sum();
                        assert!(members.iter().all(|&v| t.degree(v) == sum));
                    }
                    assert!(check_quotient_tree_law(&t, &c).unwrap());
                    assert!(check_quotient_cycles(&t, &c).unwrap());
                }
            }
        }
    }
}
