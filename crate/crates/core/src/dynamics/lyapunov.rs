//! Exponential decay of the distance to a cherry synchrony subspace.
//!
//! `V(x) = sum over cherries, sum over i >= 2 of (x_l1 - x_li)^2 / 2`.
//! When the leaf coupling satisfies `d h / d own < N < 0` everywhere,
//! `V(t) <= V(0) exp(2 N t)` along every trajectory.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cherry::CherryPack;
use super::field::{leaf_partial_fd, FieldSpec};
use super::integrate::{integrate_with, IntegrationOptions};
use crate::{Error, Graph, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayOptions {
    pub t_end: f64,
    pub dt: f64,
    /// Relative slack in `V(t) <= V(0) exp(2 N t) (1 + tolerance)`.
    pub tolerance: f64,
    /// Random points at which `d h / d own < N` is spot-checked.
    pub spot_checks: usize,
    pub seed: u64,
}

impl DecayOptions {
    pub fn new(t_end: f64, dt: f64) -> Self {
        DecayOptions { t_end, dt, tolerance: 1e-6, spot_checks: 1000, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayReport {
    pub times: Vec<f64>,
    pub v: Vec<f64>,
    /// `2 N`.
    pub bound_rate: f64,
    /// Least-squares slope of `ln V` against `t` over samples with `V > 0`.
    pub fitted_rate: Option<f64>,
    pub tolerance: f64,
    /// Largest `V(t) / (V(0) exp(2 N t))` seen.
    pub max_ratio: f64,
    /// `(t, V(t))` of the first sample breaking the bound.
    pub first_violation: Option<(f64, f64)>,
    pub passed: bool,
}

/// `V(x)` for the pack.
pub fn lyapunov_value(pack: &CherryPack, x: &[f64]) -> f64 {
    pack.cherries()
        .iter()
        .flat_map(|c| c.leaves[1..].iter().map(move |&l| (c.leaves[0], l)))
        .map(|(a, b)| {
            let d = super::coordinate_gap(x[a], x[b]);
            0.5 * d * d
        })
        .sum()
}

/// Least-squares slope of `ln v` against `t`, skipping zero samples.
pub fn fitted_log_rate(times: &[f64], v: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        times.iter().zip(v).filter(|(_, &y)| y > 0.0 && y.is_finite()).map(|(&t, &y)| (t, y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let tm = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let ym = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - tm) * (p.0 - tm)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - tm) * (p.1 - ym)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Spot-checks `d h / d own <= N` (up to a relative `1e-6`, since terms
/// like `exp(-b^2)` underflow to zero) at random points of the plane with
/// radii 1, 10 and 100.
pub fn spot_check_leaf_partial(f: &FieldSpec, n_bound: f64, samples: usize, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let slack = 1e-6 * n_bound.abs().max(1.0);
    for i in 0..samples {
        let r = [1.0, 10.0, 100.0][i % 3];
        let (a, b) = (rng.random_range(-r..r), rng.random_range(-r..r));
        let value = match f.analytic_leaf_partial() {
            Some(p) => p(a, b),
            None => leaf_partial_fd(f, a, b)?,
        };
        if value.is_nan() || value > n_bound + slack {
            return Err(Error::PartialViolation { a, b, value, bound: n_bound });
        }
    }
    Ok(())
}

/// Integrates from `x0` and checks `V(t) <= V(0) exp(2 N t) (1 + tol)` at
/// every step. Coordinates outside the pack may overflow to infinity; the
/// pack's leaves must stay finite.
pub fn lyapunov_decay_test(
    g: &Graph,
    f: &FieldSpec,
    pack: &CherryPack,
    x0: &[f64],
    n_bound: f64,
    opts: &DecayOptions,
) -> Result<DecayReport> {
    if n_bound.is_nan() || n_bound >= 0.0 {
        return Err(Error::InvalidArgument(format!("rate bound must be negative, got {n_bound}")));
    }
    if pack.is_empty() {
        return Err(Error::InvalidPack("empty pack".into()));
    }
    for c in pack.cherries() {
        super::Cherry::new(g, c.center, c.leaves.clone())?;
    }
    spot_check_leaf_partial(f, n_bound, opts.spot_checks, opts.seed)?;

    let int_opts = IntegrationOptions { t_end: opts.t_end, dt: opts.dt, sample_every: 1, allow_infinite: true };
    let tr = integrate_with(g, f, x0, &int_opts)?;
    let mut v = Vec::with_capacity(tr.len());
    for (t, x) in tr.times.iter().zip(&tr.states) {
        let leaves_finite = pack.cherries().iter().flat_map(|c| &c.leaves).all(|&l| x[l].is_finite());
        if !leaves_finite {
            return Err(Error::NonFiniteState { t: *t });
        }
        v.push(lyapunov_value(pack, x));
    }
    let v0 = v[0];
    let bound_rate = 2.0 * n_bound;
    let mut max_ratio: f64 = 0.0;
    let mut first_violation = None;
    for (&t, &vt) in tr.times.iter().zip(&v) {
        let bound = v0 * (bound_rate * t).exp();
        if bound > 0.0 {
            max_ratio = max_ratio.max(vt / bound);
        }
        if vt > bound * (1.0 + opts.tolerance) && first_violation.is_none() {
            first_violation = Some((t, vt));
        }
    }
    let fitted_rate = fitted_log_rate(&tr.times, &v);
    let passed = first_violation.is_none();
    let report = DecayReport {
        times: tr.times,
        v,
        bound_rate,
        fitted_rate,
        tolerance: opts.tolerance,
        max_ratio,
        first_violation,
        passed,
    };
    if passed {
        Ok(report)
    } else {
        Err(Error::RateViolation(Box::new(report)))
    }
}
