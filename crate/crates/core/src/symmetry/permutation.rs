use std::fmt;

use crate::{Coloring, Error, Graph, Result};

/// A bijection on `0..n`, stored by images.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut moved = vec![false; n];
        for cycle in cycles {
            for (i, &v) in cycle.iter().enumerate() {
                if v >= n || moved[v] {
                    return Err(Error::InvalidPermutation(format!("bad cycle {cycle:?}")));
                }
                moved[v] = true;
                images[v] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Permutation(inv)
    }

    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        self.len() == g.n() && g.edges().iter().all(|&(u, v)| g.has_edge(self.0[u], self.0[v]))
    }

    /// Nontrivial cycles, each starting at its smallest element, ordered by
    /// that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.0[start];
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.0[v];
            }
            out.push(cycle);
        }
        out
    }

    /// Orbit partition of the cyclic group generated by this permutation.
    pub fn orbit_coloring(&self) -> Coloring {
        let mut label: Vec<usize> = (0..self.len()).collect();
        for cycle in self.cycles() {
            for &v in &cycle {
                label[v] = cycle[0];
            }
        }
        Coloring::new(&label)
    }

    /// Cycle notation such as `(1 2)(3 5 4 6)`; `()` for the identity.
    pub fn cycle_notation(&self, one_indexed: bool) -> String {
        let off = usize::from(one_indexed);
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(|v| (v + off).to_string()).collect();
                format!("({})", body.join(" "))
            })
            .collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self.cycle_notation(false))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation(false))
    }
}

/// Orbit partition of the group generated by `generators` on `0..n`.
pub fn orbit_partition(n: usize, generators: &[Permutation]) -> Coloring {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in generators {
        for v in 0..n {
            let (a, b) = (find(&mut parent, v), find(&mut parent, g.apply(v)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    Coloring::new(&roots)
}
