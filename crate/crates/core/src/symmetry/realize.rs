//! Realizing balanced colorings as orbit partitions of automorphisms.

use serde::Serialize;

use super::automorphism::{class_preserving_orbits, GENERAL_GROUP_LIMIT};
use super::permutation::Permutation;
use super::pruning::pruning_sequence;
use crate::balanced::require_balanced;
use crate::{Coloring, Error, Graph, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassificationKind {
    /// The discrete coloring.
    Trivial,
    /// Orbit partition of some group of automorphisms.
    FixedPoint,
    /// Balanced but not the orbit partition of any automorphism group.
    Exotic,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub kind: ClassificationKind,
    /// For trees, one automorphism whose cycles are exactly the classes.
    pub realizer: Option<Permutation>,
    /// For general graphs, orbits of the class-preserving automorphisms.
    pub group_orbits: Option<Coloring>,
}

/// Builds one automorphism of the tree `g` whose cyclic group has `col` as
/// its orbit partition.
///
/// Works outward from the center. Survivors of the pruning are fixed or
/// swapped. Each class in a lower layer hangs off a single parent class
/// whose cycle is already known; with parents `p_1 .. p_q` taken along that
/// cycle from its smallest member and `c_{j,1} < .. < c_{j,a}` the children
/// of `p_j` in the class, the new cycle is
/// `c_{1,1} c_{2,1} .. c_{q,1} c_{1,2} .. c_{q,a}`.
pub fn realize_tree_coloring(g: &Graph, col: &Coloring) -> Result<Permutation> {
    g.require_tree()?;
    require_balanced(g, col)?;
    let n = g.n();
    let trace = pruning_sequence(g)?;
    let mut images: Vec<usize> = (0..n).collect();

    if let [a, b] = trace.survivors()[..] {
        if col.class_of(a) == col.class_of(b) {
            images[a] = b;
            images[b] = a;
        }
    }

    let classes = col.classes();
    let parent = |v: usize| {
        let l = trace.level(v);
        g.neighbors(v).iter().copied().find(|&w| trace.level(w) > l)
    };
    for i in (0..trace.steps()).rev() {
        for class in classes.iter().filter(|k| trace.level(k[0]) == i) {
            let mut parents = Vec::with_capacity(class.len());
            for &v in class {
                parents.push(parent(v).ok_or_else(|| Error::Construction(format!("vertex {v} has no parent")))?);
            }
            let pclass = col.class_of(parents[0]);
            if parents.iter().any(|&p| col.class_of(p) != pclass) {
                return Err(Error::Construction(format!("class {class:?} has parents in several classes")));
            }
            let start = classes[pclass][0];
            let mut cycle_order = vec![start];
            let mut p = images[start];
            while p != start {
                cycle_order.push(p);
                p = images[p];
            }
            let blocks: Vec<Vec<usize>> = cycle_order
                .iter()
                .map(|&p| class.iter().copied().filter(|&v| parent(v) == Some(p)).collect())
                .collect();
            let a = blocks[0].len();
            if blocks.iter().any(|b| b.len() != a) || a * blocks.len() != class.len() {
                return Err(Error::Construction(format!("class {class:?} is not spread evenly over its parents")));
            }
            let order: Vec<usize> = (0..a).flat_map(|k| blocks.iter().map(move |b| b[k])).collect();
            for (j, &v) in order.iter().enumerate() {
                images[v] = order[(j + 1) % order.len()];
            }
        }
    }

    let phi = Permutation::from_images(images)?;
    if !phi.is_automorphism_of(g) {
        return Err(Error::Construction(format!("{phi} is not an automorphism")));
    }
    if phi.orbit_coloring() != *col {
        return Err(Error::Construction(format!("orbits of {phi} differ from the coloring")));
    }
    Ok(phi)
}

/// Decides whether a balanced coloring is trivial, a fixed-point coloring,
/// or exotic. Trees get a realizer; other graphs (at most
/// [`GENERAL_GROUP_LIMIT`] vertices) are compared with the orbits of their
/// class-preserving automorphisms.
pub fn classify_coloring(g: &Graph, col: &Coloring) -> Result<Classification> {
    require_balanced(g, col)?;
    if col.is_discrete() {
        return Ok(Classification { kind: ClassificationKind::Trivial, realizer: None, group_orbits: None });
    }
    if g.is_tree() {
        let phi = realize_tree_coloring(g, col)?;
        return Ok(Classification { kind: ClassificationKind::FixedPoint, realizer: Some(phi), group_orbits: None });
    }
    if g.n() > GENERAL_GROUP_LIMIT {
        return Err(Error::SizeLimit { what: "classification on a non-tree", n: g.n(), limit: GENERAL_GROUP_LIMIT });
    }
    let orbits = class_preserving_orbits(g, col)?;
    let kind = if orbits == *col { ClassificationKind::FixedPoint } else { ClassificationKind::Exotic };
    Ok(Classification { kind, realizer: None, group_orbits: Some(orbits) })
}

/// Two adjacent vertices of one class form the whole class and are the two
/// survivors of the pruning. Vacuously true when no class contains an edge.
pub fn check_adjacent_class_law(g: &Graph, col: &Coloring) -> Result<bool> {
    g.require_tree()?;
    require_balanced(g, col)?;
    let trace = pruning_sequence(g)?;
    let classes = col.classes();
    for &(c, d) in g.edges() {
        if col.class_of(c) != col.class_of(d) {
            continue;
        }
        let pair = [c.min(d), c.max(d)];
        if classes[col.class_of(c)] != pair || trace.survivors() != pair {
            return Ok(false);
        }
    }
    Ok(true)
}
