//! Admissible vector fields.
//!
//! A field assigns to each degree `d` a component `F_d(own, neighbors)`.
//! Neighbor values are sorted ascending before every evaluation, so any
//! closure yields a field that is symmetric in its neighbors and identical
//! on cells of equal degree.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::spectral::CouplingParams;
use crate::{Error, Graph, Result};

pub type Component = Arc<dyn Fn(f64, &[f64]) -> f64 + Send + Sync>;
pub type Partial = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Tolerance of the randomized neighbor-permutation test.
pub const ADMISSIBILITY_TOLERANCE: f64 = 1e-12;

#[derive(Clone)]
pub struct FieldSpec {
    name: String,
    components: BTreeMap<usize, Component>,
    fallback: Option<Component>,
    leaf_partial: Option<Partial>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("name", &self.name)
            .field("degrees", &self.components.keys().collect::<Vec<_>>())
            .field("fallback", &self.fallback.is_some())
            .finish()
    }
}

impl FieldSpec {
    pub fn new(name: impl Into<String>) -> Self {
        FieldSpec { name: name.into(), components: BTreeMap::new(), fallback: None, leaf_partial: None }
    }

    pub fn with_component<F>(mut self, degree: usize, f: F) -> Self
    where
        F: Fn(f64, &[f64]) -> f64 + Send + Sync + 'static,
    {
        self.components.insert(degree, Arc::new(f));
        self
    }

    /// Component used for every degree without its own entry.
    pub fn with_fallback<F>(mut self, f: F) -> Self
    where
        F: Fn(f64, &[f64]) -> f64 + Send + Sync + 'static,
    {
        self.fallback = Some(Arc::new(f));
        self
    }

    /// Closed form of `d h / d own` for the leaf coupling `h = F_1`.
    pub fn with_leaf_partial<F>(mut self, f: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        self.leaf_partial = Some(Arc::new(f));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn component(&self, degree: usize) -> Result<&Component> {
        self.components.get(&degree).or(self.fallback.as_ref()).ok_or(Error::MissingDegree(degree))
    }

    pub fn covers(&self, g: &Graph) -> Result<()> {
        for d in g.degrees() {
            self.component(d)?;
        }
        Ok(())
    }

    /// Leaf coupling `h(own, center)`.
    pub fn h(&self, own: f64, center: f64) -> Result<f64> {
        Ok(self.component(1)?(own, &[center]))
    }

    pub fn analytic_leaf_partial(&self) -> Option<&Partial> {
        self.leaf_partial.as_ref()
    }

    /// `F_d(o, N) = alpha o + beta_d sum(N)`. Its Jacobian at any point is
    /// the linearization `D A + alpha I`.
    pub fn linear(p: &CouplingParams) -> Self {
        let alpha = p.alpha;
        let mut f = FieldSpec::new("linear").with_component(0, move |o, _| alpha * o);
        for (&d, &b) in &p.beta {
            f = f.with_component(d, move |o, nb| alpha * o + b * nb.iter().sum::<f64>());
        }
        f.with_leaf_partial(move |_, _| alpha)
    }

    /// The nonlinear field on the order-7 binary tree (root of degree 2,
    /// inner vertices of degree 3, leaves):
    /// `F_2(o, N) = o (sum N)^2`, `F_3(o, N) = o tanh(sum N^2)`,
    /// `F_1(o, c) = -o (1 + exp(-c^2))`.
    pub fn example_nonlinear() -> Self {
        FieldSpec::new("example-nonlinear")
            .with_component(1, |o, nb| -o * (1.0 + (-nb[0] * nb[0]).exp()))
            .with_component(2, |o, nb| {
                let s: f64 = nb.iter().sum();
                o * s * s
            })
            .with_component(3, |o, nb| o * nb.iter().map(|x| x * x).sum::<f64>().tanh())
            .with_leaf_partial(|_, c| -1.0 - (-c * c).exp())
    }

    /// Works on every tree: `F_1(o, c) = -kappa o (1 + exp(-c^2))`, whose
    /// own-partial is below `-kappa` everywhere, and `F_d(o, N) =
    /// -o + tanh(sum N)` for other degrees.
    pub fn contracting_leaf(kappa: f64) -> Self {
        FieldSpec::new(format!("contracting-leaf(kappa={kappa})"))
            .with_component(1, move |o, nb| -kappa * o * (1.0 + (-nb[0] * nb[0]).exp()))
            .with_fallback(|o, nb| -o + nb.iter().sum::<f64>().tanh())
            .with_leaf_partial(move |_, c| -kappa * (1.0 + (-c * c).exp()))
    }

    pub fn zero() -> Self {
        FieldSpec::new("zero").with_fallback(|_, _| 0.0).with_leaf_partial(|_, _| 0.0)
    }
}

/// Field with its components resolved per vertex, ready for repeated
/// evaluation.
pub(crate) struct Prepared<'a> {
    g: &'a Graph,
    comps: Vec<&'a Component>,
    buf: Vec<f64>,
}

impl<'a> Prepared<'a> {
    pub(crate) fn new(g: &'a Graph, f: &'a FieldSpec) -> Result<Self> {
        let comps = (0..g.n()).map(|v| f.component(g.degree(v))).collect::<Result<Vec<_>>>()?;
        Ok(Prepared { g, comps, buf: Vec::new() })
    }

    pub(crate) fn eval(&mut self, x: &[f64], out: &mut [f64]) {
        for (c, slot) in out.iter_mut().enumerate() {
            self.buf.clear();
            self.buf.extend(self.g.neighbors(c).iter().map(|&w| x[w]));
            self.buf.sort_by(f64::total_cmp);
            *slot = (self.comps[c])(x[c], &self.buf);
        }
    }
}

/// `f(x)`: component `c` is `F_deg(c)(x_c, {x_v : v ~ c})`.
pub fn evaluate_field(g: &Graph, f: &FieldSpec, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), got: x.len() });
    }
    let mut p = Prepared::new(g, f)?;
    let mut out = vec![0.0; g.n()];
    p.eval(x, &mut out);
    Ok(out)
}

/// Feeds each component random arguments in random neighbor orders,
/// bypassing the sorting done by [`evaluate_field`], and fails when the
/// output moves by more than [`ADMISSIBILITY_TOLERANCE`].
pub fn check_admissibility<R: Rng>(f: &FieldSpec, degrees: &[usize], trials: usize, rng: &mut R) -> Result<()> {
    for &d in degrees {
        let comp = f.component(d)?;
        if d < 2 {
            continue;
        }
        for _ in 0..trials {
            let own: f64 = rng.random_range(-2.0..2.0);
            let mut nb: Vec<f64> = (0..d).map(|_| rng.random_range(-2.0..2.0)).collect();
            let base = comp(own, &nb);
            nb.shuffle(rng);
            let change = (comp(own, &nb) - base).abs();
            if change > ADMISSIBILITY_TOLERANCE * base.abs().max(1.0) || change.is_nan() {
                return Err(Error::NotAdmissible { degree: d, change });
            }
        }
    }
    Ok(())
}

/// `d h / d own` at `(a, b)` by central differences with step
/// `1e-6 max(1, |a|)`.
pub fn leaf_partial_fd(f: &FieldSpec, a: f64, b: f64) -> Result<f64> {
    let h = f.component(1)?;
    let s = 1e-6 * a.abs().max(1.0);
    Ok((h(a + s, &[b]) - h(a - s, &[b])) / (2.0 * s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::spectral::jacobian;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn example_field_at_ones() {
        let g = binary7();
        let v = evaluate_field(&g, &FieldSpec::example_nonlinear(), &[1.0; 7]).unwrap();
        assert_eq!(v[0], 4.0);
        assert!((v[1] - 3f64.tanh()).abs() < 1e-15);
        assert!((v[3] + 1.0 + (-1f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn linear_field_is_its_jacobian() {
        let g = tree10();
        let p = CouplingParams::new(0.3, [(1, -1.5), (2, 0.7), (3, 2.0)]);
        let m = jacobian(&g, &p).unwrap().matrix;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x: Vec<f64> = (0..10).map(|_| rng.random_range(-3.0..3.0)).collect();
            let a = evaluate_field(&g, &FieldSpec::linear(&p), &x).unwrap();
            let b = m.mul_vec(&x).unwrap();
            for (u, v) in a.iter().zip(&b) {
                assert!((u - v).abs() < 1e-12);
            }
        }
        assert!(evaluate_field(&g, &FieldSpec::linear(&p), &[0.0; 10]).unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn missing_degree() {
        let g = Graph::star(4);
        let err = evaluate_field(&g, &FieldSpec::example_nonlinear(), &[0.0; 5]).unwrap_err();
        assert!(matches!(err, Error::MissingDegree(4)));
    }

    #[test]
    fn admissibility_detection() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for f in [FieldSpec::example_nonlinear(), FieldSpec::contracting_leaf(2.0), FieldSpec::zero()] {
            check_admissibility(&f, &[1, 2, 3], 100, &mut rng).unwrap();
        }
        let skewed = FieldSpec::new("skewed").with_component(2, |_, nb| nb[0] - 2.0 * nb[1]);
        assert!(matches!(check_admissibility(&skewed, &[2], 100, &mut rng), Err(Error::NotAdmissible { .. })));
    }

    #[test]
    fn leaf_partials_agree() {
        for f in [FieldSpec::example_nonlinear(), FieldSpec::contracting_leaf(1.5)] {
            let exact = f.analytic_leaf_partial().unwrap();
            for (a, b) in [(0.0, 0.3), (2.0, -1.0), (-5.0, 0.01), (40.0, 3.0)] {
                let fd = leaf_partial_fd(&f, a, b).unwrap();
                assert!((fd - exact(a, b)).abs() < 1e-8 * exact(a, b).abs().max(1.0), "{a} {b}");
            }
        }
    }

    #[test]
    fn equivariance_under_automorphisms() {
        let g = tree10();
        let phi =
            crate::symmetry::Permutation::from_cycles(10, &[vec![0, 1], vec![2, 4, 3, 5], vec![6, 8, 7, 9]]).unwrap();
        assert!(phi.is_automorphism_of(&g));
        let f = FieldSpec::contracting_leaf(1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x: Vec<f64> = (0..10).map(|_| rng.random_range(-2.0..2.0)).collect();
        // (sigma x)_v = x_{sigma^-1 v}
        let mut sx = vec![0.0; 10];
        for v in 0..10 {
            sx[phi.apply(v)] = x[v];
        }
        let fx = evaluate_field(&g, &f, &x).unwrap();
        let fsx = evaluate_field(&g, &f, &sx).unwrap();
        for v in 0..10 {
            assert!((fsx[phi.apply(v)] - fx[v]).abs() < 1e-12);
        }
    }
}
