//! Finite-difference Jacobians and the cherry eigenvalue check.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cherry::CherryPack;
use super::field::{check_admissibility, leaf_partial_fd, FieldSpec, Prepared};
use crate::spectral::{eigenvalues, Matrix};
use crate::{Error, Graph, Result};

/// Largest pack deviation accepted for a point on the synchrony subspace.
pub const SUBSPACE_TOLERANCE: f64 = 1e-10;
const RESIDUAL_TOLERANCE: f64 = 1e-6;
const PARTIAL_RELATIVE_TOLERANCE: f64 = 1e-5;
const MULTIPLICITY_TOLERANCE: f64 = 1e-6;
const ADMISSIBILITY_TRIALS: usize = 100;

/// `d f` at `x` by central differences, column `j` stepping
/// `1e-6 max(1, |x_j|)`.
pub fn finite_difference_jacobian(g: &Graph, f: &FieldSpec, x: &[f64]) -> Result<Matrix> {
    let n = g.n();
    if x.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: x.len() });
    }
    let mut field = Prepared::new(g, f)?;
    let mut m = Matrix::zeros(n, n);
    let (mut plus, mut minus) = (vec![0.0; n], vec![0.0; n]);
    let mut y = x.to_vec();
    for j in 0..n {
        let s = 1e-6 * x[j].abs().max(1.0);
        y[j] = x[j] + s;
        field.eval(&y, &mut plus);
        y[j] = x[j] - s;
        field.eval(&y, &mut minus);
        y[j] = x[j];
        for i in 0..n {
            m[(i, j)] = (plus[i] - minus[i]) / (2.0 * s);
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct CherryEigenReport {
    pub center: usize,
    pub leaves: Vec<usize>,
    /// Rayleigh quotients of the Jacobian on `e_l1 - e_li`, one per `i >= 2`.
    pub rayleigh: Vec<f64>,
    /// Largest `|J u - lambda u|` over those directions.
    pub max_residual: f64,
    /// `d h / d own` at `(omega_l1, omega_center)`.
    pub leaf_partial: f64,
    /// Eigenvalues of the Jacobian within `1e-6` of `leaf_partial`.
    pub multiplicity: usize,
    pub required_multiplicity: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobianReport {
    pub cherries: Vec<CherryEigenReport>,
    pub passed: bool,
}

/// At a point of the pack's synchrony subspace, checks that each
/// `e_l1 - e_li` is an eigenvector of the Jacobian with eigenvalue
/// `d h / d own (omega_l1, omega_center)` and that this eigenvalue has
/// multiplicity at least `m - 1` for an `m`-cherry.
pub fn cherry_jacobian_check(g: &Graph, f: &FieldSpec, pack: &CherryPack, omega: &[f64]) -> Result<JacobianReport> {
    if omega.len() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), got: omega.len() });
    }
    let dev = pack.deviation(omega);
    if dev > SUBSPACE_TOLERANCE {
        return Err(Error::NotOnSubspace(dev));
    }
    let mut degrees = g.degrees();
    degrees.sort_unstable();
    degrees.dedup();
    check_admissibility(f, &degrees, ADMISSIBILITY_TRIALS, &mut ChaCha8Rng::seed_from_u64(0))?;

    let j = finite_difference_jacobian(g, f, omega)?;
    let spec = eigenvalues(&j)?.with_tolerance(MULTIPLICITY_TOLERANCE);
    let n = g.n();
    let mut reports = Vec::new();
    for c in pack.cherries() {
        let l1 = c.leaves[0];
        let partial = leaf_partial_fd(f, omega[l1], omega[c.center])?;
        let mut rayleigh = Vec::new();
        let mut max_residual: f64 = 0.0;
        for &li in &c.leaves[1..] {
            let mut u = vec![0.0; n];
            u[l1] = 1.0;
            u[li] = -1.0;
            let ju = j.mul_vec(&u)?;
            let lambda = (ju[l1] - ju[li]) / 2.0;
            let residual = (0..n).map(|k| (ju[k] - lambda * u[k]).abs()).fold(0.0, f64::max);
            rayleigh.push(lambda);
            max_residual = max_residual.max(residual);
        }
        let multiplicity = spec.multiplicity_of(Complex64::new(partial, 0.0));
        let close = rayleigh
            .iter()
            .all(|&l| (l - partial).abs() <= PARTIAL_RELATIVE_TOLERANCE * partial.abs().max(f64::MIN_POSITIVE));
        let required = c.m() - 1;
        let passed = close && max_residual < RESIDUAL_TOLERANCE && multiplicity >= required;
        reports.push(CherryEigenReport {
            center: c.center,
            leaves: c.leaves.clone(),
            rayleigh,
            max_residual,
            leaf_partial: partial,
            multiplicity,
            required_multiplicity: required,
            passed,
        });
    }
    let passed = reports.iter().all(|r| r.passed);
    Ok(JacobianReport { cherries: reports, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Cherry;
    use crate::graph::fixtures::*;
    use crate::spectral::{jacobian, CouplingParams};

    #[test]
    fn example_field_eigenvalue() {
        let g = binary7();
        let pack = CherryPack::new(7, vec![Cherry::new(&g, 1, vec![3, 4]).unwrap()]).unwrap();
        let omega = [0.8, 0.3, -0.4, 1.1, 1.1, 0.2, -0.6];
        let r = cherry_jacobian_check(&g, &FieldSpec::example_nonlinear(), &pack, &omega).unwrap();
        let want = -(1.0 + (-0.09f64).exp());
        assert!(r.passed, "{r:?}");
        assert!((r.cherries[0].rayleigh[0] - want).abs() <= 1e-5 * want.abs());
    }

    #[test]
    fn linear_field_gives_alpha() {
        let g = binary7();
        let p = CouplingParams::new(-0.4, [(1, 1.0), (2, 1.0), (3, 2.0)]);
        let r = cherry_jacobian_check(&g, &FieldSpec::linear(&p), &CherryPack::all(&g), &[0.0; 7]).unwrap();
        assert!(r.passed);
        assert!(r.cherries.iter().all(|c| (c.rayleigh[0] + 0.4).abs() < 1e-8 && c.multiplicity >= 2));

        let star = Graph::star(3);
        let p = CouplingParams::uniform(&star, 0.7, 1.0);
        let r = cherry_jacobian_check(&star, &FieldSpec::linear(&p), &CherryPack::all(&star), &[0.0; 4]).unwrap();
        assert!(r.passed);
        assert!(r.cherries[0].multiplicity >= 2);
    }

    #[test]
    fn finite_differences_match_linearization() {
        let g = tree10();
        let p = CouplingParams::new(0.2, [(1, -1.0), (2, 0.5), (3, 1.5)]);
        let fd = finite_difference_jacobian(&g, &FieldSpec::linear(&p), &[0.3; 10]).unwrap();
        assert!(fd.max_abs_diff(&jacobian(&g, &p).unwrap().matrix) < 1e-6);
    }

    #[test]
    fn off_subspace_is_rejected() {
        let g = binary7();
        let omega = [0.0, 0.3, 0.0, 1.0, 1.5, 0.0, 0.0];
        let err = cherry_jacobian_check(&g, &FieldSpec::example_nonlinear(), &CherryPack::all(&g), &omega);
        assert!(matches!(err, Err(Error::NotOnSubspace(_))));
    }
}
