//! Admissible dynamics on tree networks: cherries and their synchrony
//! subspaces, vector fields, integration, and decay toward synchrony.

mod cherry;
mod field;
mod integrate;
mod jacobian;
mod lyapunov;

pub use cherry::{cherry_subspace_basis, find_cherries, Cherry, CherryPack, SubspaceBasis};
pub use field::{
    check_admissibility, evaluate_field, leaf_partial_fd, Component, FieldSpec, Partial, ADMISSIBILITY_TOLERANCE,
};
pub use integrate::{integrate, integrate_with, IntegrationOptions, Trajectory};
pub use jacobian::{
    cherry_jacobian_check, finite_difference_jacobian, CherryEigenReport, JacobianReport, SUBSPACE_TOLERANCE,
};
pub use lyapunov::{
    fitted_log_rate, lyapunov_decay_test, lyapunov_value, spot_check_leaf_partial, DecayOptions, DecayReport,
};

use rand::Rng;

use crate::{Coloring, Result};

/// `|a - b|`, but zero when the values are identical (including two equal
/// infinities) and infinite when either is `NaN`.
pub(crate) fn coordinate_gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else if a.is_nan() || b.is_nan() {
        f64::INFINITY
    } else {
        (a - b).abs()
    }
}

/// Largest gap between two coordinates of the same class.
pub fn polydiagonal_deviation(col: &Coloring, x: &[f64]) -> Result<f64> {
    col.check_len(x.len())?;
    let mut first = vec![None; col.num_classes()];
    let mut worst: f64 = 0.0;
    for (v, &xv) in x.iter().enumerate() {
        match first[col.class_of(v)] {
            None => first[col.class_of(v)] = Some(xv),
            Some(x0) => worst = worst.max(coordinate_gap(x0, xv)),
        }
    }
    Ok(worst)
}

/// A point of the polydiagonal of `col`: one uniform value in
/// `[-radius, radius)` per class.
pub fn random_polydiagonal_point<R: Rng>(col: &Coloring, radius: f64, rng: &mut R) -> Vec<f64> {
    let values: Vec<f64> = (0..col.num_classes()).map(|_| rng.random_range(-radius..radius)).collect();
    col.assignment().iter().map(|&c| values[c]).collect()
}
