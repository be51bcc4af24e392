//! Iterated leaf removal.

use crate::balanced::require_balanced;
use crate::{Coloring, Error, Graph, Result};

/// Layers of leaves stripped from a tree until one or two vertices remain.
///
/// `layers[i]` is the leaf set of the i-th pruned tree; `survivors` is the
/// vertex set of the final tree (`K_1` or `K_2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PruningTrace {
    layers: Vec<Vec<usize>>,
    survivors: Vec<usize>,
    level: Vec<usize>,
}

impl PruningTrace {
    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn survivors(&self) -> &[usize] {
        &self.survivors
    }

    /// Number of pruning steps, so trees are indexed `0..=steps()`.
    pub fn steps(&self) -> usize {
        self.layers.len()
    }

    /// Index of the layer containing `v`, or `steps()` for survivors.
    pub fn level(&self, v: usize) -> usize {
        self.level[v]
    }

    /// Vertex set of the i-th pruned tree, ascending.
    pub fn vertices_at(&self, i: usize) -> Result<Vec<usize>> {
        if i > self.steps() {
            return Err(Error::IndexOutOfRange { index: i, max: self.steps() });
        }
        Ok((0..self.level.len()).filter(|&v| self.level[v] >= i).collect())
    }
}

pub fn pruning_sequence(g: &Graph) -> Result<PruningTrace> {
    g.require_tree()?;
    let n = g.n();
    let mut degree = g.degrees();
    let mut level = vec![usize::MAX; n];
    let mut remaining = n;
    let mut layers = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    while remaining > 2 {
        let step = layers.len();
        for &v in &current {
            level[v] = step;
        }
        remaining -= current.len();
        let mut next = Vec::new();
        for &v in &current {
            for &w in g.neighbors(v) {
                if level[w] == usize::MAX {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        next.sort_unstable();
        layers.push(std::mem::take(&mut current));
        current = next;
    }
    let steps = layers.len();
    let survivors: Vec<usize> = (0..n).filter(|&v| level[v] == usize::MAX).collect();
    for &v in &survivors {
        level[v] = steps;
    }
    Ok(PruningTrace { layers, survivors, level })
}

/// Restriction of a balanced coloring to the vertices of the i-th pruned
/// tree. Returns those vertices (ascending) and the canonical restricted
/// coloring indexed by position in that list.
pub fn restrict_coloring(g: &Graph, col: &Coloring, trace: &PruningTrace, i: usize) -> Result<(Vec<usize>, Coloring)> {
    require_balanced(g, col)?;
    let vertices = trace.vertices_at(i)?;
    let restricted = col.restrict(&vertices);
    Ok((vertices, restricted))
}

/// Every class of a balanced tree coloring consists of leaves of a single
/// pruned tree, i.e. lies inside one layer or inside the survivors.
pub fn check_classes_within_layers(g: &Graph, col: &Coloring) -> Result<bool> {
    g.require_tree()?;
    require_balanced(g, col)?;
    let trace = pruning_sequence(g)?;
    Ok(col.classes().iter().all(|class| {
        let l = trace.level(class[0]);
        class.iter().all(|&v| trace.level(v) == l)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balanced::is_balanced;
    use crate::graph::fixtures::*;

    fn one_based(vs: &[usize]) -> Vec<usize> {
        vs.iter().map(|v| v + 1).collect()
    }

    #[test]
    fn ten_vertex_tree_layers() {
        let t = pruning_sequence(&tree10()).unwrap();
        assert_eq!(t.layers().len(), 2);
        assert_eq!(one_based(&t.layers()[0]), vec![7, 8, 9, 10]);
        assert_eq!(one_based(&t.layers()[1]), vec![3, 4, 5, 6]);
        assert_eq!(one_based(t.survivors()), vec![1, 2]);
    }

    #[test]
    fn path_and_edge() {
        let t = pruning_sequence(&Graph::path(5)).unwrap();
        assert_eq!(one_based(&t.layers()[0]), vec![1, 5]);
        assert_eq!(one_based(&t.layers()[1]), vec![2, 4]);
        assert_eq!(one_based(t.survivors()), vec![3]);

        let t = pruning_sequence(&Graph::path(2)).unwrap();
        assert!(t.layers().is_empty());
        assert_eq!(t.survivors(), &[0, 1]);

        let t = pruning_sequence(&Graph::empty(1)).unwrap();
        assert_eq!(t.survivors(), &[0]);
        assert!(matches!(pruning_sequence(&frucht()), Err(Error::NotATree)));
    }

    #[test]
    fn restriction_examples() {
        let g = tree10();
        let col = Coloring::from_classes(10, &[vec![0, 1], vec![2, 3, 4, 5], vec![6, 7, 8, 9]]).unwrap();
        let trace = pruning_sequence(&g).unwrap();
        let (vs, r) = restrict_coloring(&g, &col, &trace, 1).unwrap();
        assert_eq!(vs, (0..6).collect::<Vec<_>>());
        assert_eq!(r.classes(), vec![vec![0, 1], vec![2, 3, 4, 5]]);
        let (_, r0) = restrict_coloring(&g, &col, &trace, 0).unwrap();
        assert_eq!(r0, col);
        assert!(matches!(restrict_coloring(&g, &col, &trace, 3), Err(Error::IndexOutOfRange { index: 3, max: 2 })));

        let g = binary7();
        let col = Coloring::from_classes(7, &[vec![0], vec![1, 2], vec![3, 4, 5, 6]]).unwrap();
        let trace = pruning_sequence(&g).unwrap();
        let (vs, r) = restrict_coloring(&g, &col, &trace, 1).unwrap();
        assert_eq!(vs, vec![0, 1, 2]);
        assert_eq!(r.classes(), vec![vec![0], vec![1, 2]]);
        let sub = g.induced_subgraph(&vs).unwrap();
        assert!(is_balanced(&sub, &r).unwrap().balanced);
    }

    #[test]
    fn restriction_requires_balance() {
        let g = tree10();
        let bad = Coloring::from_classes(10, &[vec![0], vec![1], vec![2, 3, 4, 5], vec![6, 7, 8, 9]]).unwrap();
        let trace = pruning_sequence(&g).unwrap();
        assert!(matches!(restrict_coloring(&g, &bad, &trace, 1), Err(Error::NotBalanced)));
    }
}
