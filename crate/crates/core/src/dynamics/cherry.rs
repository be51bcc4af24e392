use serde::Serialize;

use crate::{Coloring, Error, Graph, Result};

/// `m >= 2` leaves hanging off a common center.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cherry {
    pub center: usize,
    /// Ascending.
    pub leaves: Vec<usize>,
}

impl Cherry {
    pub fn new(g: &Graph, center: usize, mut leaves: Vec<usize>) -> Result<Self> {
        g.check_vertex(center)?;
        leaves.sort_unstable();
        leaves.dedup();
        if leaves.len() < 2 {
            return Err(Error::InvalidPack(format!("cherry at {center} needs at least two leaves")));
        }
        for &l in &leaves {
            g.check_vertex(l)?;
            if g.degree(l) != 1 || !g.has_edge(l, center) {
                return Err(Error::InvalidPack(format!("{l} is not a leaf adjacent to {center}")));
            }
        }
        Ok(Cherry { center, leaves })
    }

    pub fn m(&self) -> usize {
        self.leaves.len()
    }
}

/// Cherries with pairwise disjoint leaf sets. Centers may repeat.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CherryPack {
    cherries: Vec<Cherry>,
}

impl CherryPack {
    pub fn new(n: usize, cherries: Vec<Cherry>) -> Result<Self> {
        let mut used = vec![false; n];
        for c in &cherries {
            for &l in &c.leaves {
                if l >= n {
                    return Err(Error::InvalidVertex { vertex: l, n });
                }
                if used[l] {
                    return Err(Error::InvalidPack(format!("leaf {l} belongs to two cherries")));
                }
                used[l] = true;
            }
        }
        Ok(CherryPack { cherries })
    }

    /// All maximal cherries of `g`.
    pub fn all(g: &Graph) -> Self {
        CherryPack { cherries: find_cherries(g) }
    }

    pub fn cherries(&self) -> &[Cherry] {
        &self.cherries
    }

    pub fn is_empty(&self) -> bool {
        self.cherries.is_empty()
    }

    /// Leaves of each cherry merged into one class, all else singletons.
    pub fn coloring(&self, n: usize) -> Coloring {
        let mut label: Vec<usize> = (0..n).collect();
        for c in &self.cherries {
            for &l in &c.leaves {
                label[l] = c.leaves[0];
            }
        }
        Coloring::new(&label)
    }

    /// Largest `|x_l1 - x_li|` over all cherries.
    pub fn deviation(&self, x: &[f64]) -> f64 {
        self.cherries
            .iter()
            .flat_map(|c| c.leaves[1..].iter().map(move |&l| super::coordinate_gap(x[c.leaves[0]], x[l])))
            .fold(0.0, f64::max)
    }
}

/// For each vertex with at least two pendant neighbors, the cherry of all
/// of them. Sorted by center.
pub fn find_cherries(g: &Graph) -> Vec<Cherry> {
    (0..g.n())
        .filter_map(|w| {
            let leaves: Vec<usize> = g.neighbors(w).iter().copied().filter(|&v| g.degree(v) == 1).collect();
            (leaves.len() >= 2).then_some(Cherry { center: w, leaves })
        })
        .collect()
}

/// Orthogonal bases of the synchrony subspace of a pack and of its
/// complement.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    /// Indicator vectors of the merged leaf sets and unit vectors of the
    /// remaining coordinates.
    pub delta: Vec<Vec<f64>>,
    /// `e_l1 - e_li` for every cherry and every `i >= 2`.
    pub w: Vec<Vec<f64>>,
}

pub fn cherry_subspace_basis(g: &Graph, pack: &CherryPack) -> Result<SubspaceBasis> {
    let n = g.n();
    for c in pack.cherries() {
        Cherry::new(g, c.center, c.leaves.clone())?;
    }
    let unit = |i: usize| {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        e
    };
    let delta = pack
        .coloring(n)
        .classes()
        .into_iter()
        .map(|class| {
            let mut e = vec![0.0; n];
            for v in class {
                e[v] = 1.0;
            }
            e
        })
        .collect();
    let w = pack
        .cherries()
        .iter()
        .flat_map(|c| {
            c.leaves[1..].iter().map(move |&l| {
                let mut e = unit(c.leaves[0]);
                e[l] = -1.0;
                e
            })
        })
        .collect();
    Ok(SubspaceBasis { delta, w })
}
