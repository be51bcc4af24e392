//! Balanced colorings: verification, the coarsest balanced partition,
//! exhaustive enumeration, and checkers for the structural laws that
//! balanced colorings of trees obey.
//!
//! With one cell type and one undirected edge type, a coloring is balanced
//! exactly when any two vertices of the same color see the same multiset of
//! neighbor colors.

use std::fmt;

use crate::{refine, Error, Graph, Result};

/// Default order limit for [`enumerate_balanced`].
pub const DEFAULT_ENUMERATION_LIMIT: usize = 12;

/// A partition of the vertex set, stored as a per-vertex class index in
/// canonical form: classes are numbered by first occurrence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    assignment: Vec<usize>,
    classes: usize,
}

impl Coloring {
    /// Canonicalizes arbitrary labels.
    pub fn new<L: Eq + std::hash::Hash + Clone>(labels: &[L]) -> Self {
        let mut seen = std::collections::HashMap::new();
        let assignment = labels
            .iter()
            .map(|l| {
                let next = seen.len();
                *seen.entry(l.clone()).or_insert(next)
            })
            .collect();
        Coloring { assignment, classes: seen.len() }
    }

    /// Builds a coloring from explicit classes that must partition `0..n`.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (i, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidColoring(format!("class {i} is empty")));
            }
            for &v in class {
                if v >= n {
                    return Err(Error::InvalidVertex { vertex: v, n });
                }
                if labels[v] != usize::MAX {
                    return Err(Error::InvalidColoring(format!("vertex {v} appears twice")));
                }
                labels[v] = i;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidColoring(format!("vertex {v} is not covered")));
        }
        Ok(Coloring::new(&labels))
    }

    pub fn discrete(n: usize) -> Self {
        Coloring { assignment: (0..n).collect(), classes: n }
    }

    pub fn uniform(n: usize) -> Self {
        Coloring { assignment: vec![0; n], classes: usize::from(n > 0) }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    #[inline]
    pub fn class_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Members of every class, each sorted ascending; classes in canonical order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.classes];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn is_discrete(&self) -> bool {
        self.classes == self.assignment.len()
    }

    /// Every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Coloring) -> bool {
        if self.len() != coarser.len() {
            return false;
        }
        let mut image = vec![usize::MAX; self.classes];
        self.assignment.iter().zip(&coarser.assignment).all(|(&a, &b)| {
            if image[a] == usize::MAX {
                image[a] = b;
            }
            image[a] == b
        })
    }

    /// Restriction to `vertices`, re-canonicalized in the order given.
    pub fn restrict(&self, vertices: &[usize]) -> Coloring {
        let labels: Vec<usize> = vertices.iter().map(|&v| self.assignment[v]).collect();
        Coloring::new(&labels)
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: n, got: self.len() })
        }
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coloring{:?}", self.classes())
    }
}

/// Outcome of [`is_balanced`]. A witness is present exactly when the
/// coloring is not balanced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceCertificate {
    pub balanced: bool,
    pub witness: Option<BalanceWitness>,
}

/// Two same-class vertices whose neighbor-color multisets differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceWitness {
    pub c: usize,
    pub d: usize,
    pub c_neighbor_colors: Vec<usize>,
    pub d_neighbor_colors: Vec<usize>,
}

fn neighbor_colors(g: &Graph, col: &Coloring, v: usize) -> Vec<usize> {
    let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| col.class_of(w)).collect();
    nb.sort_unstable();
    nb
}

pub fn is_balanced(g: &Graph, col: &Coloring) -> Result<BalanceCertificate> {
    col.check_len(g.n())?;
    for class in col.classes() {
        let first = class[0];
        let reference = neighbor_colors(g, col, first);
        for &d in &class[1..] {
            let other = neighbor_colors(g, col, d);
            if other != reference {
                return Ok(BalanceCertificate {
                    balanced: false,
                    witness: Some(BalanceWitness {
                        c: first,
                        d,
                        c_neighbor_colors: reference,
                        d_neighbor_colors: other,
                    }),
                });
            }
        }
    }
    Ok(BalanceCertificate { balanced: true, witness: None })
}

pub(crate) fn require_balanced(g: &Graph, col: &Coloring) -> Result<()> {
    if is_balanced(g, col)?.balanced {
        Ok(())
    } else {
        Err(Error::NotBalanced)
    }
}

/// The coarsest balanced partition, by refinement from the degree partition.
pub fn coarsest_balanced(g: &Graph) -> Coloring {
    let refined = refine::refine(g, &g.degrees());
    Coloring::new(&refined)
}

/// Every balanced coloring of `g`, discrete first: sorted by descending class
/// count, then lexicographically by assignment vector.
///
/// Colorings are enumerated as restricted growth strings. A vertex may only
/// join a class whose members share its degree, and once all neighbors of a
/// vertex are colored its neighbor-color signature is compared against the
/// other completed members of its class.
pub fn enumerate_balanced(g: &Graph, max_n: usize) -> Result<Vec<Coloring>> {
    let n = g.n();
    if n > max_n {
        return Err(Error::SizeLimit { what: "balanced coloring enumeration", n, limit: max_n });
    }
    if n == 0 {
        return Ok(vec![Coloring::discrete(0)]);
    }
    // completes_at[k] lists the vertices whose closed neighborhood is fully
    // colored once vertex k is assigned
    let mut completes_at = vec![Vec::new(); n];
    for v in 0..n {
        let last = g.neighbors(v).iter().copied().chain([v]).max().unwrap();
        completes_at[last].push(v);
    }
    let mut search = Enumeration {
        g,
        completes_at,
        assignment: vec![0; n],
        class_degree: Vec::new(),
        reference: Vec::new(),
        found: Vec::new(),
    };
    search.assign(0);
    let mut found: Vec<Coloring> = search.found.into_iter().map(|a| Coloring::new(&a)).collect();
    found.sort_by(|a, b| b.num_classes().cmp(&a.num_classes()).then_with(|| a.assignment.cmp(&b.assignment)));
    Ok(found)
}

struct Enumeration<'g> {
    g: &'g Graph,
    completes_at: Vec<Vec<usize>>,
    assignment: Vec<usize>,
    class_degree: Vec<usize>,
    /// Signature of the first completed member of each class.
    reference: Vec<Option<Vec<usize>>>,
    found: Vec<Vec<usize>>,
}

impl Enumeration<'_> {
    fn assign(&mut self, k: usize) {
        let n = self.g.n();
        if k == n {
            self.found.push(self.assignment.clone());
            return;
        }
        let deg = self.g.degree(k);
        let open = self.class_degree.len();
        for c in 0..=open {
            if c < open && self.class_degree[c] != deg {
                continue;
            }
            if c == open {
                self.class_degree.push(deg);
                self.reference.push(None);
            }
            self.assignment[k] = c;
            let mut touched = Vec::new();
            if self.check_completed(k, &mut touched) {
                self.assign(k + 1);
            }
            for cls in touched {
                self.reference[cls] = None;
            }
            if c == open {
                self.class_degree.pop();
                self.reference.pop();
            }
        }
    }

    /// Checks vertices completed by assigning `k`; records classes whose
    /// reference signature was set here so they can be undone.
    fn check_completed(&mut self, k: usize, touched: &mut Vec<usize>) -> bool {
        for i in 0..self.completes_at[k].len() {
            let v = self.completes_at[k][i];
            let mut sig: Vec<usize> = self.g.neighbors(v).iter().map(|&w| self.assignment[w]).collect();
            sig.sort_unstable();
            let cls = self.assignment[v];
            match &self.reference[cls] {
                Some(r) if *r != sig => return false,
                Some(_) => {}
                None => {
                    self.reference[cls] = Some(sig);
                    touched.push(cls);
                }
            }
        }
        true
    }
}

/// Whether the tree path between same-class vertices `u` and `v` reads the
/// same colors forwards and backwards.
pub fn check_reflected(g: &Graph, col: &Coloring, u: usize, v: usize) -> Result<bool> {
    col.check_len(g.n())?;
    let path = g.tree_path(u, v)?;
    if col.class_of(u) != col.class_of(v) {
        return Err(Error::NotSameClass(u, v));
    }
    let k = path.len() - 1;
    Ok((0..=k).all(|i| col.class_of(path[i]) == col.class_of(path[k - i])))
}

fn same_class_pairs(col: &Coloring) -> impl Iterator<Item = (usize, usize)> + '_ {
    col.classes().into_iter().flat_map(|class| {
        let pairs: Vec<(usize, usize)> =
            class.iter().enumerate().flat_map(|(i, &c)| class[i + 1..].iter().map(move |&d| (c, d))).collect();
        pairs
    })
}

fn tree_and_balanced(g: &Graph, col: &Coloring) -> Result<()> {
    g.require_tree()?;
    require_balanced(g, col)
}

/// Same-class vertices of a balanced tree coloring have equal leaf-distance
/// multisets.
pub fn check_leaf_multiset_law(g: &Graph, col: &Coloring) -> Result<bool> {
    tree_and_balanced(g, col)?;
    let multisets: Vec<_> = (0..g.n()).map(|v| g.leaf_distance_multiset(v)).collect::<Result<_>>()?;
    Ok(same_class_pairs(col).all(|(c, d)| multisets[c] == multisets[d]))
}

/// Every same-class pair of a balanced tree coloring is joined by a
/// reflected path.
pub fn check_reflection_law(g: &Graph, col: &Coloring) -> Result<bool> {
    tree_and_balanced(g, col)?;
    for (c, d) in same_class_pairs(col) {
        if !check_reflected(g, col, c, d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No interior vertex of the path between two same-class vertices shares
/// their class.
pub fn check_no_interior_same_class(g: &Graph, col: &Coloring) -> Result<bool> {
    tree_and_balanced(g, col)?;
    Ok(same_class_pairs(col).all(|(c, d)| {
        let path = g.path_unchecked(c, d);
        path[1..path.len() - 1].iter().all(|&w| col.class_of(w) != col.class_of(c))
    }))
}

/// A non-discrete balanced tree coloring puts at least two leaves in one class.
pub fn check_shared_leaf_class(g: &Graph, col: &Coloring) -> Result<bool> {
    tree_and_balanced(g, col)?;
    if col.is_discrete() {
        return Ok(true);
    }
    let mut seen = vec![false; col.num_classes()];
    for l in g.leaves() {
        let c = col.class_of(l);
        if seen[c] {
            return Ok(true);
        }
        seen[c] = true;
    }
    Ok(false)
}

/// Same-class vertices have equal degree. Holds for every balanced coloring
/// of every graph.
pub fn check_degree_compatibility(g: &Graph, col: &Coloring) -> Result<bool> {
    col.check_len(g.n())?;
    Ok(same_class_pairs(col).all(|(c, d)| g.degree(c) == g.degree(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn classes1(n: usize, classes: &[&[usize]]) -> Coloring {
        let cl: Vec<Vec<usize>> = classes.iter().map(|c| c.iter().map(|v| v - 1).collect()).collect();
        Coloring::from_classes(n, &cl).unwrap()
    }

    /// Oracle: all set partitions of 0..n as restricted growth strings.
    pub(crate) fn all_partitions(n: usize) -> Vec<Coloring> {
        fn go(k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Coloring>) {
            if k == n {
                out.push(Coloring::new(cur));
                return;
            }
            let max = cur.iter().copied().max().map_or(0, |m| m + 1);
            for c in 0..=max {
                cur.push(c);
                go(k + 1, n, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(0, n, &mut Vec::new(), &mut out);
        out
    }

    fn brute_force_balanced(g: &Graph) -> Vec<Coloring> {
        let mut v: Vec<Coloring> =
            all_partitions(g.n()).into_iter().filter(|p| is_balanced(g, p).unwrap().balanced).collect();
        v.sort_by(|a, b| b.num_classes().cmp(&a.num_classes()).then_with(|| a.assignment.cmp(&b.assignment)));
        v
    }

    #[test]
    fn canonical_form() {
        let c = Coloring::new(&["b", "a", "b", "c"]);
        assert_eq!(c.assignment(), &[0, 1, 0, 2]);
        assert_eq!(c.num_classes(), 3);
        assert!(Coloring::from_classes(3, &[vec![0], vec![0, 1, 2]]).is_err());
        assert!(Coloring::from_classes(3, &[vec![0], vec![1]]).is_err());
    }

    #[test]
    fn frucht_figure_colorings_are_balanced() {
        let g = frucht();
        let two = classes1(12, &[&[5, 6, 7, 10], &[1, 2, 3, 4, 8, 9, 11, 12]]);
        let three = classes1(12, &[&[1, 4, 9, 11], &[2, 3, 8, 12], &[5, 6, 7, 10]]);
        assert!(is_balanced(&g, &two).unwrap().balanced);
        assert!(is_balanced(&g, &three).unwrap().balanced);
    }

    #[test]
    fn ten_vertex_tree_colorings() {
        let g = tree10();
        let good = classes1(10, &[&[1, 2], &[3, 4, 5, 6], &[7, 8, 9, 10]]);
        let cert = is_balanced(&g, &good).unwrap();
        assert!(cert.balanced && cert.witness.is_none());

        let bad = classes1(10, &[&[1], &[2], &[3, 4, 5, 6], &[7, 8, 9, 10]]);
        let cert = is_balanced(&g, &bad).unwrap();
        assert!(!cert.balanced);
        let w = cert.witness.unwrap();
        assert_eq!((w.c, w.d), (2, 4)); // v3 and v5
        assert_ne!(w.c_neighbor_colors, w.d_neighbor_colors);
    }

    #[test]
    fn discrete_is_always_balanced_and_length_is_checked() {
        assert!(is_balanced(&frucht(), &Coloring::discrete(12)).unwrap().balanced);
        assert!(matches!(
            is_balanced(&frucht(), &Coloring::discrete(3)),
            Err(Error::LengthMismatch { expected: 12, got: 3 })
        ));
    }

    #[test]
    fn coarsest_examples() {
        assert!(coarsest_balanced(&asymmetric7()).is_discrete());
        assert_eq!(coarsest_balanced(&frucht()).num_classes(), 1);
        assert_eq!(coarsest_balanced(&binary7()), classes1(7, &[&[1], &[2, 3], &[4, 5, 6, 7]]));
    }

    #[test]
    fn enumeration_examples() {
        let p5 = enumerate_balanced(&Graph::path(5), 12).unwrap();
        assert_eq!(p5, vec![Coloring::discrete(5), classes1(5, &[&[1, 5], &[2, 4], &[3]])]);
        let p3 = enumerate_balanced(&Graph::path(3), 12).unwrap();
        assert_eq!(p3, vec![Coloring::discrete(3), classes1(3, &[&[1, 3], &[2]])]);
        assert_eq!(enumerate_balanced(&asymmetric7(), 12).unwrap(), vec![Coloring::discrete(7)]);
        assert_eq!(enumerate_balanced(&Graph::path(2), 12).unwrap(), vec![Coloring::discrete(2), Coloring::uniform(2)]);
        assert!(matches!(enumerate_balanced(&Graph::path(13), 12), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let graphs = [
            Graph::path(5),
            binary7(),
            asymmetric7(),
            Graph::cycle(6).unwrap(),
            Graph::complete(4),
            Graph::star(4),
            Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (0, 3), (4, 5)]).unwrap(),
        ];
        for g in &graphs {
            assert_eq!(enumerate_balanced(g, 12).unwrap(), brute_force_balanced(g), "{g:?}");
        }
    }

    #[test]
    fn frucht_enumeration_contains_figure_colorings() {
        let g = frucht();
        let all = enumerate_balanced(&g, 12).unwrap();
        let two = classes1(12, &[&[5, 6, 7, 10], &[1, 2, 3, 4, 8, 9, 11, 12]]);
        let three = classes1(12, &[&[1, 4, 9, 11], &[2, 3, 8, 12], &[5, 6, 7, 10]]);
        assert!(all.contains(&two));
        assert!(all.contains(&three));
        assert!(all.contains(&Coloring::uniform(12)));
        let top = coarsest_balanced(&g);
        assert!(all.iter().all(|p| p.refines(&top)));
    }

    #[test]
    fn reflection_examples() {
        let g = tree10();
        let good = classes1(10, &[&[1, 2], &[3, 4, 5, 6], &[7, 8, 9, 10]]);
        assert!(check_reflected(&g, &good, 6, 8).unwrap());
        assert!(check_reflected(&g, &good, 3, 3).unwrap());
        let adhoc = classes1(10, &[&[7, 9], &[3], &[5], &[1], &[2], &[4], &[6], &[8], &[10]]);
        assert!(!check_reflected(&g, &adhoc, 6, 8).unwrap());
        assert!(matches!(check_reflected(&g, &good, 0, 2), Err(Error::NotSameClass(0, 2))));
    }

    #[test]
    fn leaf_multiset_law_examples() {
        let g = tree10();
        let good = classes1(10, &[&[1, 2], &[3, 4, 5, 6], &[7, 8, 9, 10]]);
        assert!(check_leaf_multiset_law(&g, &good).unwrap());
        assert!(check_leaf_multiset_law(&g, &Coloring::discrete(10)).unwrap());
        let bad = classes1(10, &[&[1], &[2], &[3, 4, 5, 6], &[7, 8, 9, 10]]);
        assert!(matches!(check_leaf_multiset_law(&g, &bad), Err(Error::NotBalanced)));
    }

    #[test]
    fn total_synchrony_is_balanced_iff_regular() {
        for g in [frucht(), binary7(), Graph::cycle(5).unwrap(), Graph::path(4), Graph::complete(5)] {
            let uniform = Coloring::uniform(g.n());
            assert_eq!(is_balanced(&g, &uniform).unwrap().balanced, g.is_regular());
        }
    }

    #[test]
    fn refines_relation() {
        let fine = classes1(4, &[&[1], &[2], &[3, 4]]);
        let coarse = classes1(4, &[&[1, 2], &[3, 4]]);
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(Coloring::discrete(4).refines(&Coloring::uniform(4)));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn small_graph() -> impl Strategy<Value = Graph> {
        (1usize..=8).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
                let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e);
                Graph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn coarsest_is_balanced_and_on_top(g in small_graph()) {
            let top = coarsest_balanced(&g);
            prop_assert!(is_balanced(&g, &top).unwrap().balanced);
            for p in enumerate_balanced(&g, 12).unwrap() {
                prop_assert!(p.refines(&top));
                prop_assert!(check_degree_compatibility(&g, &p).unwrap());
            }
        }

        #[test]
        fn uniform_balanced_iff_regular(g in small_graph()) {
            prop_assert_eq!(is_balanced(&g, &Coloring::uniform(g.n())).unwrap().balanced, g.is_regular());
        }
    }
}
