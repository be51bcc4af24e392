//! Leaf pruning, automorphism groups, and realization of balanced colorings
//! as fixed-point colorings.

mod automorphism;
mod permutation;
mod pruning;
mod realize;
mod tree;

pub use automorphism::{
    automorphism_group, backtrack_group, class_preserving_orbits, find_nontrivial_automorphism, AutomorphismGroup,
    GENERAL_GROUP_LIMIT,
};
pub use permutation::{orbit_partition, Permutation};
pub use pruning::{check_classes_within_layers, pruning_sequence, restrict_coloring, PruningTrace};
pub use realize::{
    check_adjacent_class_law, classify_coloring, realize_tree_coloring, Classification, ClassificationKind,
};
pub use tree::{tree_canonical_form, unlabeled_trees, unlabeled_trees_by_extension};
