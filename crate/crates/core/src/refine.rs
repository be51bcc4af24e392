//! Color refinement to the coarsest equitable partition.
//!
//! Colors are renamed after every round by the rank of their signature
//! `(old color, sorted neighbor colors)` among all signatures seen. The
//! resulting names depend only on the isomorphism type of the colored graph,
//! which is what lets two colorings of the same graph be refined side by side
//! and compared class by class.

use std::collections::BTreeMap;

use crate::Graph;

type Signature = (usize, Vec<usize>);

fn signatures(g: &Graph, colors: &[usize]) -> Vec<Signature> {
    (0..g.n())
        .map(|v| {
            let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
            nb.sort_unstable();
            (colors[v], nb)
        })
        .collect()
}

fn class_count(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |m| m + 1)
}

/// Renames arbitrary color labels to `0..k` by rank.
pub(crate) fn normalize(colors: &[usize]) -> Vec<usize> {
    let mut sorted: Vec<usize> = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    colors.iter().map(|c| sorted.binary_search(c).unwrap()).collect()
}

/// Refines every coloring in `colorings` simultaneously, using a shared
/// signature dictionary per round. Returns `false` as soon as the colorings
/// stop having identical color histograms, i.e. no color-preserving
/// isomorphism between them can exist.
///
/// Input colors must already share a common naming (for example both
/// produced by [`normalize`] on equal histograms).
pub(crate) fn refine_jointly(g: &Graph, colorings: &mut [Vec<usize>]) -> bool {
    if !same_histograms(colorings) {
        return false;
    }
    loop {
        let before = colorings.first().map_or(0, |c| class_count(c));
        let sigs: Vec<Vec<Signature>> = colorings.iter().map(|c| signatures(g, c)).collect();
        let mut dict: BTreeMap<&Signature, usize> = BTreeMap::new();
        for s in sigs.iter().flatten() {
            dict.insert(s, 0);
        }
        for (i, slot) in dict.values_mut().enumerate() {
            *slot = i;
        }
        for (col, sig) in colorings.iter_mut().zip(&sigs) {
            for (c, s) in col.iter_mut().zip(sig) {
                *c = dict[s];
            }
        }
        if !same_histograms(colorings) {
            return false;
        }
        let after = colorings.first().map_or(0, |c| class_count(c));
        if after == before {
            return true;
        }
    }
}

/// Coarsest equitable partition refining `initial`, with canonical names.
pub(crate) fn refine(g: &Graph, initial: &[usize]) -> Vec<usize> {
    let mut cols = [normalize(initial)];
    refine_jointly(g, &mut cols);
    let [c] = cols;
    c
}

fn same_histograms(colorings: &[Vec<usize>]) -> bool {
    let hist = |c: &[usize]| {
        let mut h = vec![0usize; class_count(c)];
        for &x in c {
            h[x] += 1;
        }
        h
    };
    let mut it = colorings.iter();
    let Some(first) = it.next() else { return true };
    let h0 = hist(first);
    it.all(|c| hist(c) == h0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn degree_partition_of_binary_tree_is_stable() {
        let g = binary7();
        let c = refine(&g, &[0; 7]);
        assert_eq!(class_count(&c), 3);
        assert_eq!(c[1], c[2]);
        assert_eq!(c[3], c[6]);
        assert_ne!(c[0], c[1]);
    }

    #[test]
    fn regular_graph_stays_uniform() {
        let c = refine(&frucht(), &[0; 12]);
        assert!(c.iter().all(|&x| x == 0));
    }

    #[test]
    fn joint_refinement_detects_incompatible_individualizations() {
        // individualize an end of P_4 versus an interior vertex
        let g = Graph::path(4);
        let mut cols = [vec![1, 0, 0, 0], vec![0, 1, 0, 0]];
        // histograms match, but refinement separates them
        assert!(!refine_jointly(&g, &mut cols));
        let mut cols = [vec![1, 0, 0, 0], vec![0, 0, 0, 1]];
        assert!(refine_jointly(&g, &mut cols));
    }
}
