//! Linearizations of admissible fields at an equilibrium and their spectra.
//!
//! With one-dimensional cells sharing the internal coefficient `alpha` and
//! coupling coefficient `beta_d` for cells of degree `d`, the Jacobian is
//! `D A + alpha I` where `D = diag(beta_deg(v))` and `A` is the adjacency
//! matrix.

mod linalg;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

pub use linalg::{
    det_shifted, eigenvalues, jacobi_eigenvalues, Cluster, Matrix, Spectrum, CLUSTER_TOLERANCE, EIGEN_SIZE_LIMIT,
};

use crate::{Error, Graph, Result};

/// `alpha` and the per-degree coupling coefficients `beta`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CouplingParams {
    pub alpha: f64,
    pub beta: BTreeMap<usize, f64>,
}

impl CouplingParams {
    pub fn new(alpha: f64, beta: impl IntoIterator<Item = (usize, f64)>) -> Self {
        CouplingParams { alpha, beta: beta.into_iter().collect() }
    }

    /// The same `beta` for every degree of `g`.
    pub fn uniform(g: &Graph, alpha: f64, beta: f64) -> Self {
        CouplingParams::new(alpha, g.degrees().into_iter().map(|d| (d, beta)))
    }

    pub fn beta_for(&self, degree: usize) -> Result<f64> {
        self.beta.get(&degree).copied().ok_or(Error::MissingBeta(degree))
    }

    /// Every `beta` attached to a degree present in `g` is strictly positive.
    pub fn all_positive_on(&self, g: &Graph) -> Result<bool> {
        for d in g.degrees() {
            if self.beta_for(d)? <= 0.0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn diagonal(&self, g: &Graph) -> Result<Vec<f64>> {
        (0..g.n())
            .map(|v| match g.degree(v) {
                // isolated vertices have no coupling term
                0 => Ok(self.beta.get(&0).copied().unwrap_or(0.0)),
                d => self.beta_for(d),
            })
            .collect()
    }
}

/// Jacobian at an equilibrium, with a flag recording whether the network
/// was a tree (the setting the formula is stated for).
#[derive(Clone, Debug)]
pub struct Linearization {
    pub matrix: Matrix,
    pub is_tree: bool,
}

/// `D A + alpha I`: entry `(c, c)` is `alpha`, entry `(c, v)` is
/// `beta_deg(c)` when `v ~ c`.
pub fn jacobian(g: &Graph, p: &CouplingParams) -> Result<Linearization> {
    let mut m = da_matrix(g, p)?;
    for i in 0..g.n() {
        m[(i, i)] += p.alpha;
    }
    Ok(Linearization { matrix: m, is_tree: g.is_tree() })
}

/// `D A`.
pub fn da_matrix(g: &Graph, p: &CouplingParams) -> Result<Matrix> {
    let d = p.diagonal(g)?;
    let mut m = Matrix::zeros(g.n(), g.n());
    for c in 0..g.n() {
        for &v in g.neighbors(c) {
            m[(c, v)] = d[c];
        }
    }
    Ok(m)
}

/// Lower bound on the multiplicity of `alpha` in the spectrum of the
/// Jacobian of a tree: `n - 2 nu`, where `nu` is the matching number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaBound {
    pub bound: usize,
    pub matching_size: usize,
    pub perfect_matching: bool,
}

pub fn alpha_multiplicity_bound(g: &Graph) -> Result<AlphaBound> {
    g.require_tree()?;
    let m = g.maximum_matching()?;
    Ok(AlphaBound { bound: g.n().saturating_sub(2 * m.size), matching_size: m.size, perfect_matching: m.perfect })
}

/// Number of eigenvalues of the Jacobian within `tol` of `alpha`.
pub fn observed_alpha_multiplicity(g: &Graph, p: &CouplingParams, tol: f64) -> Result<usize> {
    let spec = eigenvalues(&jacobian(g, p)?.matrix)?.with_tolerance(tol);
    Ok(spec.multiplicity_of(Complex64::new(p.alpha, 0.0)))
}

/// Pairs every eigenvalue `l` of `D A` with a distinct eigenvalue within
/// `tol` of `-l`. Trees are bipartite, so this always succeeds.
pub fn check_spectrum_symmetry(g: &Graph, p: &CouplingParams) -> Result<bool> {
    g.require_tree()?;
    let spec = eigenvalues(&da_matrix(g, p)?)?;
    Ok(is_symmetric_about_zero(&spec.eigenvalues, spec.tolerance))
}

fn is_symmetric_about_zero(values: &[Complex64], tol: f64) -> bool {
    let mut used = vec![false; values.len()];
    for &l in values {
        let best = (0..values.len())
            .filter(|&j| !used[j])
            .min_by(|&i, &j| (values[i] + l).norm().total_cmp(&(values[j] + l).norm()));
        match best {
            Some(j) if (values[j] + l).norm() <= tol * l.norm().max(1.0) => used[j] = true,
            _ => return false,
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeylMode {
    /// All `beta > 0`: `D A` is similar to the symmetric `D^1/2 A D^1/2`,
    /// so the spectrum is real and lies between its extreme eigenvalues.
    RealCase,
    /// Otherwise the real parts lie between the extreme eigenvalues of the
    /// Hermitian part `(D A + A D) / 2`.
    HermitianPartCase,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylBounds {
    pub lower: f64,
    pub upper: f64,
    pub mode: WeylMode,
    /// Every eigenvalue of the Jacobian honors the bounds (and is real in
    /// the real case).
    pub contained: bool,
    pub max_abs_imag: f64,
}

/// Absolute slack when testing containment of computed eigenvalues.
const CONTAINMENT_SLACK: f64 = 1e-8;

pub fn weyl_bounds(g: &Graph, p: &CouplingParams) -> Result<WeylBounds> {
    g.require_tree()?;
    let n = g.n();
    let d = p.diagonal(g)?;
    let positive = p.all_positive_on(g)?;
    let mut s = Matrix::zeros(n, n);
    for c in 0..n {
        for &v in g.neighbors(c) {
            s[(c, v)] = if positive { (d[c] * d[v]).sqrt() } else { 0.5 * (d[c] + d[v]) };
        }
    }
    let sym = jacobi_eigenvalues(&s)?;
    let (lo, hi) = match (sym.first(), sym.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => (0.0, 0.0),
    };
    let (lower, upper) = (p.alpha + lo, p.alpha + hi);
    let spec = eigenvalues(&jacobian(g, p)?.matrix)?;
    let slack = |x: f64| CONTAINMENT_SLACK * x.abs().max(1.0);
    let in_range = spec.eigenvalues.iter().all(|z| z.re >= lower - slack(lower) && z.re <= upper + slack(upper));
    let max_abs_imag = spec.max_abs_imag();
    let mode = if positive { WeylMode::RealCase } else { WeylMode::HermitianPartCase };
    let contained = in_range && (!positive || max_abs_imag < CONTAINMENT_SLACK);
    Ok(WeylBounds { lower, upper, mode, contained, max_abs_imag })
}
