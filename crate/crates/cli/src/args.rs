//! Parsers for the small value languages used on the command line. All
//! vertex ids are 1-indexed.

use treesync_core::spectral::CouplingParams;
use treesync_core::{Cherry, CherryPack, Coloring, FieldSpec, Graph};

use crate::error::{CliError, Result};

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn vertex(s: &str, n: usize) -> Result<usize> {
    let v: usize = s.trim().parse().map_err(|_| config(format!("not a vertex id: {s:?}")))?;
    if v == 0 || v > n {
        return Err(config(format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

/// `"1,2;3,4,5,6"`: classes separated by `;`, members by `,`. Vertices not
/// listed become singletons.
pub fn parse_coloring(s: &str, n: usize) -> Result<Coloring> {
    let mut label: Vec<usize> = (0..n).map(|v| n + v).collect();
    let mut listed = vec![false; n];
    for (k, class) in s.split(';').filter(|c| !c.trim().is_empty()).enumerate() {
        for item in class.split(',') {
            let v = vertex(item, n)?;
            if std::mem::replace(&mut listed[v], true) {
                return Err(config(format!("vertex {} listed twice", v + 1)));
            }
            label[v] = k;
        }
    }
    Ok(Coloring::new(&label))
}

/// `"3=2"`: coupling coefficient 2 for degree 3.
pub fn parse_beta(s: &str) -> std::result::Result<(usize, f64), String> {
    let (d, b) = s.split_once('=').ok_or_else(|| format!("expected DEGREE=VALUE, got {s:?}"))?;
    let d = d.trim().parse().map_err(|_| format!("bad degree in {s:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad value in {s:?}"))?;
    Ok((d, b))
}

fn key_values(s: &str) -> Result<Vec<(String, f64)>> {
    s.split(',')
        .filter(|kv| !kv.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| config(format!("expected key=value, got {kv:?}")))?;
            let v = v.trim().parse().map_err(|_| config(format!("bad number in {kv:?}")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

/// `linear:alpha=A,beta1=B1,beta2=B2,...`, `example-nonlinear`,
/// `contracting-leaf:kappa=K`, or `zero`.
pub fn parse_field(s: &str) -> Result<FieldSpec> {
    let (name, params) = s.split_once(':').unwrap_or((s, ""));
    let kv = key_values(params)?;
    match name {
        "linear" => {
            let mut alpha = 0.0;
            let mut beta = Vec::new();
            for (k, v) in kv {
                if k == "alpha" {
                    alpha = v;
                } else if let Some(d) = k.strip_prefix("beta").and_then(|d| d.parse::<usize>().ok()) {
                    beta.push((d, v));
                } else {
                    return Err(config(format!("unknown linear field parameter {k:?}")));
                }
            }
            Ok(FieldSpec::linear(&CouplingParams::new(alpha, beta)))
        }
        "example-nonlinear" | "zero" if !kv.is_empty() => Err(config(format!("field {name} takes no parameters"))),
        "example-nonlinear" => Ok(FieldSpec::example_nonlinear()),
        "zero" => Ok(FieldSpec::zero()),
        "contracting-leaf" => {
            let mut kappa = 1.0;
            for (k, v) in kv {
                match k.as_str() {
                    "kappa" => kappa = v,
                    _ => return Err(config(format!("unknown contracting-leaf parameter {k:?}"))),
                }
            }
            if kappa.is_nan() || kappa <= 0.0 {
                return Err(config("kappa must be positive"));
            }
            Ok(FieldSpec::contracting_leaf(kappa))
        }
        _ => Err(config(format!("unknown field {name:?}"))),
    }
}

/// `"2:4,5;3:6,7"` (center:leaves, cherries separated by `;`) or `"all"`.
pub fn parse_pack(s: &str, g: &Graph) -> Result<CherryPack> {
    if s.trim() == "all" {
        return Ok(CherryPack::all(g));
    }
    let n = g.n();
    let mut cherries = Vec::new();
    for item in s.split(';').filter(|c| !c.trim().is_empty()) {
        let (center, leaves) =
            item.split_once(':').ok_or_else(|| config(format!("expected CENTER:LEAF,LEAF in {item:?}")))?;
        let center = vertex(center, n)?;
        let leaves = leaves.split(',').map(|l| vertex(l, n)).collect::<Result<Vec<_>>>()?;
        cherries.push(Cherry::new(g, center, leaves)?);
    }
    Ok(CherryPack::new(n, cherries)?)
}

/// Comma-separated coordinates.
pub fn parse_vector(s: &str, n: usize) -> Result<Vec<f64>> {
    let x = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| config(format!("bad coordinate {v:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if x.len() != n {
        return Err(config(format!("expected {n} coordinates, got {}", x.len())));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use treesync_core::dynamics::evaluate_field;

    #[test]
    fn colorings() {
        let c = parse_coloring("1,2;3,4,5,6;7,8,9,10", 10).unwrap();
        assert_eq!(c.num_classes(), 3);
        let c = parse_coloring("1,5;2,4", 5).unwrap();
        assert_eq!(c.classes(), vec![vec![0, 4], vec![1, 3], vec![2]]);
        assert!(parse_coloring("1,1", 3).is_err());
        assert!(parse_coloring("0", 3).is_err());
    }

    #[test]
    fn fields() {
        let g = Graph::path(3);
        let f = parse_field("linear:alpha=1,beta1=2,beta2=3").unwrap();
        assert_eq!(evaluate_field(&g, &f, &[1.0, 1.0, 1.0]).unwrap(), vec![3.0, 7.0, 3.0]);
        assert!(parse_field("contracting-leaf:kappa=2").is_ok());
        assert!(parse_field("contracting-leaf:kappa=-2").is_err());
        assert!(parse_field("linear:gamma=1").is_err());
        assert!(parse_field("nope").is_err());
        assert_eq!(parse_beta("3=-2.5").unwrap(), (3, -2.5));
    }

    #[test]
    fn packs() {
        let g = Graph::from_one_indexed(7, &[(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)]).unwrap();
        let p = parse_pack("2:4,5;3:6,7", &g).unwrap();
        assert_eq!(p, CherryPack::all(&g));
        assert!(parse_pack("2:4,6", &g).is_err());
        assert_eq!(parse_vector("1, 2,3", 3).unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(parse_vector("1,2", 3).is_err());
    }
}
