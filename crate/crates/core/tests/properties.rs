//! Property tests over random labeled trees, through the public API only.

use proptest::prelude::*;
use treesync_core::balanced::{coarsest_balanced, enumerate_balanced, is_balanced};
use treesync_core::dynamics::{integrate, polydiagonal_deviation};
use treesync_core::spectral::{alpha_multiplicity_bound, eigenvalues, jacobian, observed_alpha_multiplicity};
use treesync_core::symmetry::{automorphism_group, classify_coloring, pruning_sequence, tree_canonical_form};
use treesync_core::{CouplingParams, FieldSpec, Graph, Permutation};

fn tree(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| proptest::collection::vec(0..n, n - 2))
        .prop_map(|seq| Graph::from_prufer(&seq).unwrap())
}

fn relabeled(g: &Graph, perm: &[usize]) -> Graph {
    Graph::new(g.n(), g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coarsest_equals_automorphism_orbits(g in tree(40)) {
        let coarsest = coarsest_balanced(&g);
        prop_assert!(is_balanced(&g, &coarsest).unwrap().balanced);
        prop_assert_eq!(automorphism_group(&g).unwrap().orbits(), coarsest);
    }

    #[test]
    fn coarsest_is_realized(g in tree(40)) {
        let col = coarsest_balanced(&g);
        let c = classify_coloring(&g, &col).unwrap();
        if let Some(phi) = c.realizer {
            prop_assert!(phi.is_automorphism_of(&g));
            prop_assert_eq!(phi.orbit_coloring(), col);
        } else {
            prop_assert!(col.is_discrete());
        }
    }

    #[test]
    fn enumerated_colorings_refine_the_coarsest(g in tree(9)) {
        let coarsest = coarsest_balanced(&g);
        let all = enumerate_balanced(&g, 12).unwrap();
        prop_assert!(all.contains(&coarsest));
        for col in &all {
            prop_assert!(col.refines(&coarsest));
        }
    }

    #[test]
    fn canonical_form_ignores_labels(g in tree(20), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = relabeled(&g, &perm);
        prop_assert_eq!(tree_canonical_form(&g).unwrap(), tree_canonical_form(&h).unwrap());
        prop_assert_eq!(automorphism_group(&g).unwrap().order, automorphism_group(&h).unwrap().order);
        prop_assert!(Permutation::from_images(perm).is_ok());
    }

    #[test]
    fn pruning_ends_in_one_or_two_vertices(g in tree(40)) {
        let trace = pruning_sequence(&g).unwrap();
        prop_assert!(matches!(trace.survivors().len(), 1 | 2));
        let layered: usize = trace.layers().iter().map(Vec::len).sum();
        prop_assert_eq!(layered + trace.survivors().len(), g.n());
    }

    #[test]
    fn spectrum_sums_to_trace(g in tree(20), alpha in -2.0..2.0f64, b1 in -2.0..2.0f64, b2 in -2.0..2.0f64) {
        let mut beta: Vec<(usize, f64)> = g.degrees().into_iter().map(|d| (d, b2 / d as f64)).collect();
        beta.push((1, b1));
        let p = CouplingParams::new(alpha, beta);
        let j = jacobian(&g, &p).unwrap().matrix;
        let spec = eigenvalues(&j).unwrap();
        prop_assert!((spec.sum().re - j.trace()).abs() < 1e-8 * (1.0 + j.trace().abs()));
        let bound = alpha_multiplicity_bound(&g).unwrap().bound;
        prop_assert!(observed_alpha_multiplicity(&g, &p, 1e-7).unwrap() >= bound);
    }

    #[test]
    fn coarsest_polydiagonal_is_invariant(g in tree(16), v in proptest::collection::vec(-1.0..1.0f64, 16)) {
        let col = coarsest_balanced(&g);
        let x0: Vec<f64> = col.assignment().iter().map(|&c| v[c]).collect();
        let tr = integrate(&g, &FieldSpec::contracting_leaf(1.0), &x0, 2.0, 1e-2).unwrap();
        for x in &tr.states {
            prop_assert!(polydiagonal_deviation(&col, x).unwrap() < 1e-12);
        }
    }
}
