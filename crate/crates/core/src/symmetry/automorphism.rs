//! Automorphism groups.
//!
//! General graphs use individualization-refinement backtracking over a
//! stabilizer chain: at each level the orbit of the first vertex of a
//! non-singleton cell is computed by searching for automorphisms that fix the
//! previous base points and move it, and the group order is the product of
//! those orbit lengths. Trees use rooted canonical forms instead
//! (see [`super::tree`]).

use num_bigint::BigUint;

use super::permutation::{orbit_partition, Permutation};
use super::tree;
use crate::refine::{normalize, refine, refine_jointly};
use crate::{Coloring, Error, Graph, Result};

/// Order limit for full automorphism group computation on non-trees.
pub const GENERAL_GROUP_LIMIT: usize = 16;

/// Generators and exact order of an automorphism group.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub n: usize,
    pub generators: Vec<Permutation>,
    pub order: BigUint,
}

impl AutomorphismGroup {
    pub fn is_asymmetric(&self) -> bool {
        self.order == BigUint::from(1u32)
    }

    pub fn orbits(&self) -> Coloring {
        orbit_partition(self.n, &self.generators)
    }

    /// Order as `u64` if it fits.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }
}

/// `Aut(g)`: canonical-form method on trees (any order), backtracking on
/// other graphs up to [`GENERAL_GROUP_LIMIT`] vertices.
pub fn automorphism_group(g: &Graph) -> Result<AutomorphismGroup> {
    if g.is_tree() {
        return tree::tree_automorphism_group(g);
    }
    if g.n() > GENERAL_GROUP_LIMIT {
        return Err(Error::SizeLimit {
            what: "automorphism group of a non-tree",
            n: g.n(),
            limit: GENERAL_GROUP_LIMIT,
        });
    }
    Ok(backtrack_group(g, &vec![0; g.n()]))
}

/// Group of automorphisms preserving every class of `col`, by backtracking.
/// No size guard; callers apply their own.
pub fn backtrack_group(g: &Graph, col: &[usize]) -> AutomorphismGroup {
    let mut generators = Vec::new();
    let mut order = BigUint::from(1u32);
    stabilizer_chain(g, col, |level_orbit, found| {
        order *= BigUint::from(level_orbit);
        generators.extend(found);
        true
    });
    AutomorphismGroup { n: g.n(), generators, order }
}

/// Some non-identity automorphism, if one exists. Stops at the first find,
/// so asymmetric graphs whose refinement is discrete are settled at once.
pub fn find_nontrivial_automorphism(g: &Graph) -> Option<Permutation> {
    let mut witness = None;
    stabilizer_chain(g, &vec![0; g.n()], |_, found| {
        if let Some(p) = found.into_iter().next() {
            witness = Some(p);
            return false;
        }
        true
    });
    witness
}

/// Walks the stabilizer chain of the colored graph. For every base point,
/// calls `visit(orbit_len, generators_found)`; stops early when `visit`
/// returns `false`.
fn stabilizer_chain<F>(g: &Graph, col: &[usize], mut visit: F)
where
    F: FnMut(usize, Vec<Permutation>) -> bool,
{
    let n = g.n();
    let mut base_colors = refine(g, col);
    loop {
        let Some(b) = first_nonsingleton(&base_colors) else { return };
        let cell: Vec<usize> = (0..n).filter(|&v| base_colors[v] == base_colors[b]).collect();
        let mut in_orbit = vec![false; n];
        in_orbit[b] = true;
        let mut found: Vec<Permutation> = Vec::new();
        for &v in &cell {
            if in_orbit[v] {
                continue;
            }
            let a = individualize(&base_colors, b);
            let c = individualize(&base_colors, v);
            if let Some(p) = extend(g, a, c) {
                found.push(p);
                // close the orbit under everything found at this level
                let mut frontier: Vec<usize> = (0..n).filter(|&x| in_orbit[x]).collect();
                while let Some(x) = frontier.pop() {
                    for q in &found {
                        let y = q.apply(x);
                        if !in_orbit[y] {
                            in_orbit[y] = true;
                            frontier.push(y);
                        }
                    }
                }
            }
        }
        let orbit_len = in_orbit.iter().filter(|&&x| x).count();
        if !visit(orbit_len, found) {
            return;
        }
        base_colors = refine(g, &individualize(&base_colors, b));
    }
}

fn first_nonsingleton(colors: &[usize]) -> Option<usize> {
    let k = colors.iter().max().map_or(0, |m| m + 1);
    let mut count = vec![0usize; k];
    for &c in colors {
        count[c] += 1;
    }
    (0..colors.len()).find(|&v| count[colors[v]] > 1)
}

/// Gives `v` a fresh color. Both sides of a search individualize with the
/// same fresh id so their names stay comparable.
fn individualize(colors: &[usize], v: usize) -> Vec<usize> {
    let mut out = colors.to_vec();
    out[v] = colors.iter().max().map_or(0, |m| m + 1);
    out
}

/// Looks for an automorphism mapping coloring `a` onto coloring `b`
/// color by color.
fn extend(g: &Graph, a: Vec<usize>, b: Vec<usize>) -> Option<Permutation> {
    let mut pair = [a, b];
    if !refine_jointly(g, &mut pair) {
        return None;
    }
    let [a, b] = pair;
    match first_nonsingleton(&a) {
        None => {
            let k = a.len();
            let mut images = vec![0; k];
            let mut by_color = vec![usize::MAX; k];
            for v in 0..k {
                by_color[b[v]] = v;
            }
            for u in 0..k {
                images[u] = by_color[a[u]];
            }
            let p = Permutation::from_images(images).ok()?;
            p.is_automorphism_of(g).then_some(p)
        }
        Some(u) => {
            for v in (0..b.len()).filter(|&v| b[v] == a[u]) {
                if let Some(p) = extend(g, individualize(&a, u), individualize(&b, v)) {
                    return Some(p);
                }
            }
            None
        }
    }
}

/// Orbit partition of the group of automorphisms that map every class of
/// `col` to itself.
pub fn class_preserving_orbits(g: &Graph, col: &Coloring) -> Result<Coloring> {
    col.check_len(g.n())?;
    if g.n() > GENERAL_GROUP_LIMIT && !g.is_tree() {
        return Err(Error::SizeLimit {
            what: "class-preserving automorphism search",
            n: g.n(),
            limit: GENERAL_GROUP_LIMIT,
        });
    }
    let group = backtrack_group(g, &normalize(col.assignment()));
    Ok(group.orbits())
}
