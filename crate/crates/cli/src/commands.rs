//! One function per verb. Each returns a JSON report with 1-indexed
//! vertex ids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use treesync_core::balanced::{coarsest_balanced, enumerate_balanced};
use treesync_core::dynamics::{
    find_cherries, integrate_with, lyapunov_decay_test, polydiagonal_deviation, random_polydiagonal_point,
    DecayOptions, DecayReport, IntegrationOptions,
};
use treesync_core::quotient::{check_quotient_tree_law, quotient_network, undirected_simplification};
use treesync_core::spectral::{
    alpha_multiplicity_bound, check_spectrum_symmetry, eigenvalues, jacobian, observed_alpha_multiplicity, weyl_bounds,
    CouplingParams,
};
use treesync_core::symmetry::{
    automorphism_group, check_classes_within_layers, classify_coloring, find_nontrivial_automorphism, pruning_sequence,
    restrict_coloring, AutomorphismGroup, Classification,
};
use treesync_core::{Coloring, Error, Graph};

use crate::args::{parse_field, parse_pack, parse_vector};
use crate::error::Result;

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

pub(crate) fn classes_json(col: &Coloring) -> Vec<Vec<usize>> {
    col.classes().iter().map(|c| one_based(c)).collect()
}

fn order_json(grp: &AutomorphismGroup) -> Value {
    match grp.order_u64() {
        Some(o) => json!(o),
        None => json!(grp.order.to_string()),
    }
}

pub(crate) fn classification_json(c: &Classification) -> Value {
    json!({
        "kind": c.kind,
        "realizer": c.realizer.as_ref().map(|p| p.cycle_notation(true)),
        "group_orbits": c.group_orbits.as_ref().map(classes_json),
    })
}

pub fn analyze(g: &Graph) -> Result<Value> {
    let mut r = json!({
        "n": g.n(),
        "m": g.edge_count(),
        "is_tree": g.is_tree(),
        "degrees": g.degrees(),
        "leaves": one_based(&g.leaves()),
    });
    match automorphism_group(g) {
        Ok(grp) => {
            r["aut_order"] = order_json(&grp);
            r["is_asymmetric"] = json!(grp.is_asymmetric());
            r["aut_generators"] = json!(grp.generators.iter().map(|p| p.cycle_notation(true)).collect::<Vec<_>>());
        }
        Err(e @ Error::SizeLimit { .. }) => {
            r["aut_order"] = Value::Null;
            r["aut_error"] = json!(e.to_string());
            r["is_asymmetric"] = json!(find_nontrivial_automorphism(g).is_none());
        }
        Err(e) => return Err(e.into()),
    }
    let coarsest = coarsest_balanced(g);
    r["coarsest_balanced"] = json!(classes_json(&coarsest));
    r["coarsest_num_classes"] = json!(coarsest.num_classes());
    match classify_coloring(g, &coarsest) {
        Ok(c) => r["classification"] = classification_json(&c),
        Err(e @ Error::SizeLimit { .. }) => {
            r["classification"] = Value::Null;
            r["classification_error"] = json!(e.to_string());
        }
        Err(e) => return Err(e.into()),
    }
    r["cherries"] = json!(find_cherries(g)
        .iter()
        .map(|c| json!({"center": c.center + 1, "leaves": one_based(&c.leaves)}))
        .collect::<Vec<_>>());
    r["matching"] = match g.maximum_matching() {
        Ok(m) => json!(m),
        Err(_) => Value::Null,
    };
    Ok(r)
}

pub fn colorings(g: &Graph, max_n: usize) -> Result<Value> {
    let all = enumerate_balanced(g, max_n)?;
    let items = all
        .iter()
        .map(|col| {
            let c = classify_coloring(g, col)?;
            let mut item = classification_json(&c);
            item["classes"] = json!(classes_json(col));
            item["num_classes"] = json!(col.num_classes());
            Ok(item)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({"n": g.n(), "count": items.len(), "colorings": items}))
}

pub fn quotient(g: &Graph, col: Option<Coloring>) -> Result<Value> {
    let col = col.unwrap_or_else(|| coarsest_balanced(g));
    let q = quotient_network(g, &col)?;
    let s = undirected_simplification(&q);
    let mut r = json!({
        "classes": classes_json(&col),
        "mult": q.mult,
        "simplified_edges": s.edges().iter().map(|&(a, b)| [a + 1, b + 1]).collect::<Vec<_>>(),
        "simplified_is_tree": s.is_tree(),
    });
    if g.is_tree() {
        r["quotient_tree_law"] = json!(check_quotient_tree_law(g, &col)?);
    }
    Ok(r)
}

pub fn prune(g: &Graph, col: Option<Coloring>) -> Result<Value> {
    let trace = pruning_sequence(g)?;
    let mut r = json!({
        "steps": trace.steps(),
        "layers": trace.layers().iter().map(|l| one_based(l)).collect::<Vec<_>>(),
        "survivors": one_based(trace.survivors()),
    });
    if let Some(col) = col {
        r["classes_within_layers"] = json!(check_classes_within_layers(g, &col)?);
        let mut restrictions = Vec::new();
        for i in 0..=trace.steps() {
            let (vs, rc) = restrict_coloring(g, &col, &trace, i)?;
            let classes: Vec<Vec<usize>> =
                rc.classes().iter().map(|c| c.iter().map(|&k| vs[k] + 1).collect()).collect();
            restrictions.push(json!({"level": i, "vertices": one_based(&vs), "classes": classes}));
        }
        r["restrictions"] = json!(restrictions);
    }
    Ok(r)
}

pub fn spectrum(g: &Graph, p: &CouplingParams) -> Result<Value> {
    let bound = alpha_multiplicity_bound(g)?;
    let spec = eigenvalues(&jacobian(g, p)?.matrix)?;
    let weyl = weyl_bounds(g, p)?;
    Ok(json!({
        "n": g.n(),
        "alpha": p.alpha,
        "beta": p.beta,
        "eigenvalues": spec.eigenvalues.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        "clusters": spec.clusters().iter().map(|c| json!({"re": c.value.re, "im": c.value.im, "multiplicity": c.multiplicity})).collect::<Vec<_>>(),
        "alpha_multiplicity": {
            "observed": observed_alpha_multiplicity(g, p, spec.tolerance)?,
            "bound": bound.bound,
            "matching_size": bound.matching_size,
            "perfect_matching": bound.perfect_matching,
        },
        "spectrum_symmetric": check_spectrum_symmetry(g, p)?,
        "weyl": weyl,
        "cluster_tolerance": spec.tolerance,
    }))
}

/// Inputs to [`simulate`], still in their command-line form.
#[derive(Clone, Debug)]
pub struct SimulateArgs {
    pub field: String,
    pub x0: Option<String>,
    pub radius: f64,
    pub t_end: f64,
    pub dt: f64,
    pub pack: Option<String>,
    pub rate_bound: Option<f64>,
    pub coloring: Option<Coloring>,
    pub tolerance: f64,
    pub seed: u64,
}

/// Outcome of a simulation: the report, the trajectory as CSV, and whether
/// a decay verdict failed.
pub struct Simulation {
    pub report: Value,
    pub csv: String,
    pub failed: bool,
}

const MAX_REPORTED_SAMPLES: usize = 200;

fn decay_json(report: &DecayReport) -> Value {
    let stride = (report.times.len() / MAX_REPORTED_SAMPLES).max(1);
    let samples: Vec<[f64; 2]> = report
        .times
        .iter()
        .zip(&report.v)
        .enumerate()
        .filter(|(i, _)| i % stride == 0 || *i + 1 == report.times.len())
        .map(|(_, (&t, &v))| [t, v])
        .collect();
    json!({
        "verdict": if report.passed { "PASS" } else { "FAIL" },
        "bound_rate": report.bound_rate,
        "fitted_rate": report.fitted_rate,
        "max_ratio": report.max_ratio,
        "tolerance": report.tolerance,
        "first_violation": report.first_violation,
        "v_initial": report.v.first(),
        "v_final": report.v.last(),
        "samples": samples,
    })
}

pub fn simulate(g: &Graph, a: &SimulateArgs) -> Result<Simulation> {
    let f = parse_field(&a.field)?;
    f.covers(g)?;
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let x0 = match (&a.x0, &a.coloring) {
        (Some(s), _) => parse_vector(s, n)?,
        (None, Some(col)) => random_polydiagonal_point(col, a.radius, &mut rng),
        (None, None) => (0..n).map(|_| rng.random_range(-a.radius..a.radius)).collect(),
    };
    let pack = a.pack.as_deref().map(|s| parse_pack(s, g)).transpose()?;
    let opts = IntegrationOptions { allow_infinite: pack.is_some(), ..IntegrationOptions::new(a.t_end, a.dt) };
    let tr = integrate_with(g, &f, &x0, &opts)?;

    let mut report = json!({
        "field": f.name(),
        "n": n,
        "t_end": a.t_end,
        "dt": tr.dt,
        "steps": tr.len() - 1,
        "x0": x0,
        "final_state": tr.final_state(),
    });
    let mut failed = false;
    if let Some(col) = &a.coloring {
        let mut worst: f64 = 0.0;
        for x in &tr.states {
            worst = worst.max(polydiagonal_deviation(col, x)?);
        }
        report["polydiagonal"] = json!({"classes": classes_json(col), "max_deviation": worst});
    }
    if let Some(pack) = &pack {
        report["pack"] = json!(pack
            .cherries()
            .iter()
            .map(|c| json!({"center": c.center + 1, "leaves": one_based(&c.leaves)}))
            .collect::<Vec<_>>());
        if let Some(nb) = a.rate_bound {
            let opts = DecayOptions { tolerance: a.tolerance, seed: a.seed, ..DecayOptions::new(a.t_end, a.dt) };
            let decay = match lyapunov_decay_test(g, &f, pack, &x0, nb, &opts) {
                Ok(r) => r,
                Err(Error::RateViolation(r)) => *r,
                Err(e) => return Err(e.into()),
            };
            failed = !decay.passed;
            report["decay"] = decay_json(&decay);
        }
    }
    Ok(Simulation { report, csv: tr.to_csv(), failed })
}
