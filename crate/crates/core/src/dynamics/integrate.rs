//! Classical fourth-order Runge-Kutta with a fixed step.

use std::io::{self, Write};

use super::field::{FieldSpec, Prepared};
use crate::{Error, Graph, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegrationOptions {
    pub t_end: f64,
    /// Requested step. The actual step divides `t_end` evenly and is at
    /// most this.
    pub dt: f64,
    /// Keep every k-th state (the final state is always kept).
    pub sample_every: usize,
    /// Accept coordinates that overflow to `±inf`. `NaN` is still an error.
    pub allow_infinite: bool,
}

impl IntegrationOptions {
    pub fn new(t_end: f64, dt: f64) -> Self {
        IntegrationOptions { t_end, dt, sample_every: 1, allow_infinite: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub dt: f64,
    pub method: &'static str,
}

impl Trajectory {
    pub fn final_state(&self) -> &[f64] {
        self.states.last().expect("a trajectory holds at least the initial state")
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Header `t,x0,...,x{n-1}` and one row per sample.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        let n = self.states.first().map_or(0, Vec::len);
        let header: Vec<String> = std::iter::once("t".to_string()).chain((0..n).map(|i| format!("x{i}"))).collect();
        writeln!(w, "{}", header.join(","))?;
        for (t, x) in self.times.iter().zip(&self.states) {
            write!(w, "{t}")?;
            for v in x {
                write!(w, ",{v}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV is ASCII")
    }
}

/// Integrates `x' = f(x)` from `x0` over `[0, t_end]`, keeping every step.
pub fn integrate(g: &Graph, f: &FieldSpec, x0: &[f64], t_end: f64, dt: f64) -> Result<Trajectory> {
    integrate_with(g, f, x0, &IntegrationOptions::new(t_end, dt))
}

pub fn integrate_with(g: &Graph, f: &FieldSpec, x0: &[f64], opts: &IntegrationOptions) -> Result<Trajectory> {
    let n = g.n();
    if x0.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: x0.len() });
    }
    if !(opts.dt > 0.0 && opts.dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {}", opts.dt)));
    }
    if !(opts.t_end >= 0.0 && opts.t_end.is_finite()) {
        return Err(Error::InvalidArgument(format!("end time must be non-negative, got {}", opts.t_end)));
    }
    if opts.sample_every == 0 {
        return Err(Error::InvalidArgument("sample interval must be positive".into()));
    }
    let mut field = Prepared::new(g, f)?;
    let steps = (opts.t_end / opts.dt - 1e-9).ceil().max(0.0) as usize;
    let h = if steps == 0 { 0.0 } else { opts.t_end / steps as f64 };

    let check = |x: &[f64], t: f64| -> Result<()> {
        let bad = x.iter().any(|v| v.is_nan() || (!opts.allow_infinite && v.is_infinite()));
        if bad {
            Err(Error::NonFiniteState { t })
        } else {
            Ok(())
        }
    };
    check(x0, 0.0)?;

    let mut x = x0.to_vec();
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) =
        (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    let mut times = vec![0.0];
    let mut states = vec![x.clone()];
    for step in 1..=steps {
        field.eval(&x, &mut k1);
        for i in 0..n {
            tmp[i] = x[i] + 0.5 * h * k1[i];
        }
        field.eval(&tmp, &mut k2);
        for i in 0..n {
            tmp[i] = x[i] + 0.5 * h * k2[i];
        }
        field.eval(&tmp, &mut k3);
        for i in 0..n {
            tmp[i] = x[i] + h * k3[i];
        }
        field.eval(&tmp, &mut k4);
        for i in 0..n {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let t = step as f64 * h;
        check(&x, t)?;
        if step % opts.sample_every == 0 || step == steps {
            times.push(t);
            states.push(x.clone());
        }
    }
    Ok(Trajectory { times, states, dt: h, method: "rk4" })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::spectral::CouplingParams;

    #[test]
    fn eigenvector_grows_exponentially() {
        // e4 - e5 is an eigenvector of the linearization with eigenvalue alpha
        let g = binary7();
        let p = CouplingParams::new(-0.7, [(1, 1.0), (2, 0.5), (3, 2.0)]);
        let x0 = [0.0, 0.0, 0.0, 1.0, -1.0, 0.0, 0.0];
        let tr = integrate(&g, &FieldSpec::linear(&p), &x0, 1.0, 1e-3).unwrap();
        let scale = (-0.7f64).exp();
        for (got, want) in tr.final_state().iter().zip(x0) {
            assert!((got - scale * want).abs() <= 1e-6 * scale);
        }
        // P_2 with all-ones start: eigenvalue alpha + beta
        let p = CouplingParams::new(0.5, [(1, 0.25)]);
        let tr = integrate(&Graph::path(2), &FieldSpec::linear(&p), &[1.0, 1.0], 1.0, 1e-3).unwrap();
        assert!((tr.final_state()[0] - 0.75f64.exp()).abs() < 1e-6 * 0.75f64.exp());
    }

    #[test]
    fn zero_field_is_constant() {
        let g = tree10();
        let x0: Vec<f64> = (0..10).map(|i| i as f64 * 0.1).collect();
        let tr = integrate(&g, &FieldSpec::zero(), &x0, 2.0, 0.1).unwrap();
        assert_eq!(tr.len(), 21);
        assert!(tr.states.iter().all(|s| *s == x0));
    }

    #[test]
    fn fourth_order_convergence() {
        let p = CouplingParams::new(0.0, [(1, 1.0)]);
        let f = FieldSpec::linear(&p);
        let g = Graph::path(2);
        let exact = 1f64.exp();
        let err = |dt: f64| (integrate(&g, &f, &[1.0, 1.0], 1.0, dt).unwrap().final_state()[0] - exact).abs();
        let ratio = err(0.1) / err(0.05);
        assert!((12.0..=20.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn blow_up_is_reported() {
        let g = Graph::path(2);
        let f = FieldSpec::new("square").with_component(1, |o, _| o * o);
        let err = integrate(&g, &f, &[1.0, 1.0], 2.0, 1e-2).unwrap_err();
        assert!(matches!(err, Error::NonFiniteState { .. }));
    }

    #[test]
    fn csv_layout() {
        let tr = integrate(&Graph::path(2), &FieldSpec::zero(), &[1.0, 2.0], 0.5, 0.25).unwrap();
        assert_eq!(tr.to_csv(), "t,x0,x1\n0,1,2\n0.25,1,2\n0.5,1,2\n");
    }

    #[test]
    fn rejects_bad_steps() {
        let g = Graph::path(2);
        assert!(integrate(&g, &FieldSpec::zero(), &[0.0, 0.0], 1.0, 0.0).is_err());
        assert!(integrate(&g, &FieldSpec::zero(), &[0.0, 0.0], -1.0, 0.1).is_err());
        assert!(integrate(&g, &FieldSpec::zero(), &[0.0], 1.0, 0.1).is_err());
    }
}
