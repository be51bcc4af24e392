//! Randomized studies over Erdős–Rényi graphs and uniform random trees.
//!
//! Trial `i` draws from `ChaCha8Rng::seed_from_u64(seed ^ i)`, so results do
//! not depend on scheduling and trials run in parallel.

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use treesync_core::balanced::{coarsest_balanced, enumerate_balanced};
use treesync_core::dynamics::find_cherries;
use treesync_core::symmetry::{
    automorphism_group, classify_coloring, find_nontrivial_automorphism, ClassificationKind,
};
use treesync_core::{Coloring, Graph};

use crate::commands::classes_json;
use crate::error::{CliError, Result};
use crate::generate::{erdos_renyi, random_tree};
use crate::graphfile::write_graph;

/// Trees up to this order get every balanced coloring classified.
pub const FULL_ENUMERATION_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum StudyMode {
    ErAsymmetric,
    RandomTree,
}

#[derive(Clone, Debug)]
pub struct StudyConfig {
    pub mode: StudyMode,
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub p_min: f64,
    pub p_max: f64,
    pub seed: u64,
    /// Largest order for which balanced colorings are enumerated.
    pub max_n: usize,
    /// Rejection-sampling budget per trial in `er-asymmetric` mode.
    pub max_attempts: usize,
    /// Where counterexample graphs are written; created on first use.
    pub dump_dir: Option<PathBuf>,
}

impl StudyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(CliError::Config("count must be positive".into()));
        }
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(CliError::Config(format!("need 1 <= n_min <= n_max, got {}..{}", self.n_min, self.n_max)));
        }
        if !(0.0 < self.p_min && self.p_min <= self.p_max && self.p_max < 1.0) {
            return Err(CliError::Config(format!("need 0 < p_min <= p_max < 1, got {}..{}", self.p_min, self.p_max)));
        }
        if self.max_attempts == 0 {
            return Err(CliError::Config("max_attempts must be positive".into()));
        }
        Ok(())
    }

    fn trial_rng(&self, trial: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ trial as u64)
    }

    fn draw_n(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.random_range(self.n_min..=self.n_max)
    }
}

/// A graph that contradicts the expected outcome of a study.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub n: usize,
    pub p: Option<f64>,
    pub classes: Vec<Vec<usize>>,
    pub file: Option<String>,
    #[serde(skip)]
    graph: Graph,
}

pub fn run_study(cfg: &StudyConfig) -> Result<Value> {
    cfg.validate()?;
    let mut report = match cfg.mode {
        StudyMode::ErAsymmetric => er_study(cfg)?,
        StudyMode::RandomTree => tree_study(cfg)?,
    };
    report["mode"] = json!(cfg.mode);
    report["count"] = json!(cfg.count);
    report["seed"] = json!(cfg.seed);
    report["n_range"] = json!([cfg.n_min, cfg.n_max]);
    Ok(report)
}

fn dump(cfg: &StudyConfig, prefix: &str, cxs: &mut [Counterexample]) -> Result<()> {
    let Some(dir) = &cfg.dump_dir else { return Ok(()) };
    if cxs.is_empty() {
        return Ok(());
    }
    std::fs::create_dir_all(dir)?;
    for cx in cxs {
        let path = dir.join(format!("{prefix}_trial{}.txt", cx.trial));
        std::fs::write(&path, write_graph(&cx.graph))?;
        cx.file = Some(path.display().to_string());
    }
    Ok(())
}

enum ErTrial {
    Accepted { attempts: usize, counterexample: Option<Counterexample> },
    Exhausted,
}

fn er_trial(cfg: &StudyConfig, trial: usize) -> ErTrial {
    let mut rng = cfg.trial_rng(trial);
    let n = cfg.draw_n(&mut rng);
    let p = rng.random_range(cfg.p_min..=cfg.p_max);
    for attempt in 1..=cfg.max_attempts {
        let g = erdos_renyi(n, p, &mut rng);
        if !g.is_connected() || find_nontrivial_automorphism(&g).is_some() {
            continue;
        }
        let col = coarsest_balanced(&g);
        let counterexample = (!col.is_discrete()).then(|| Counterexample {
            trial,
            n,
            p: Some(p),
            classes: classes_json(&col),
            file: None,
            graph: g,
        });
        return ErTrial::Accepted { attempts: attempt, counterexample };
    }
    ErTrial::Exhausted
}

fn er_study(cfg: &StudyConfig) -> Result<Value> {
    let trials: Vec<ErTrial> = (0..cfg.count).into_par_iter().map(|i| er_trial(cfg, i)).collect();
    let mut accepted = 0;
    let mut attempts = 0;
    let mut exhausted = Vec::new();
    let mut cxs = Vec::new();
    for (i, t) in trials.into_iter().enumerate() {
        match t {
            ErTrial::Accepted { attempts: a, counterexample } => {
                accepted += 1;
                attempts += a;
                cxs.extend(counterexample);
            }
            ErTrial::Exhausted => exhausted.push(i),
        }
    }
    dump(cfg, "er", &mut cxs)?;
    Ok(json!({
        "p_range": [cfg.p_min, cfg.p_max],
        "accepted": accepted,
        "exhausted_trials": exhausted,
        "mean_attempts": if accepted > 0 { attempts as f64 / accepted as f64 } else { 0.0 },
        "nontrivial_balanced_count": cxs.len(),
        "counterexamples": cxs,
    }))
}

struct TreeTrial {
    asymmetric: bool,
    has_cherry: bool,
    colorings_checked: usize,
    exotic: Option<Counterexample>,
}

fn tree_trial(cfg: &StudyConfig, trial: usize) -> Result<TreeTrial> {
    let mut rng = cfg.trial_rng(trial);
    let n = cfg.draw_n(&mut rng);
    let g = random_tree(n, &mut rng);
    let asymmetric = automorphism_group(&g)?.is_asymmetric();
    let has_cherry = !find_cherries(&g).is_empty();
    let colorings: Vec<Coloring> = if n <= FULL_ENUMERATION_LIMIT.min(cfg.max_n) {
        enumerate_balanced(&g, cfg.max_n)?
    } else {
        vec![coarsest_balanced(&g)]
    };
    let mut exotic = None;
    for col in &colorings {
        if classify_coloring(&g, col)?.kind == ClassificationKind::Exotic {
            exotic = Some(Counterexample { trial, n, p: None, classes: classes_json(col), file: None, graph: g });
            break;
        }
    }
    Ok(TreeTrial { asymmetric, has_cherry, colorings_checked: colorings.len(), exotic })
}

fn tree_study(cfg: &StudyConfig) -> Result<Value> {
    let trials = (0..cfg.count).into_par_iter().map(|i| tree_trial(cfg, i)).collect::<Result<Vec<_>>>()?;
    let asymmetric = trials.iter().filter(|t| t.asymmetric).count();
    let cherries = trials.iter().filter(|t| t.has_cherry).count();
    let checked: usize = trials.iter().map(|t| t.colorings_checked).sum();
    let mut cxs: Vec<Counterexample> = trials.into_iter().filter_map(|t| t.exotic).collect();
    dump(cfg, "tree", &mut cxs)?;
    let k = cfg.count as f64;
    Ok(json!({
        "asymmetric_count": asymmetric,
        "asymmetric_fraction": asymmetric as f64 / k,
        "cherry_count": cherries,
        "cherry_fraction": cherries as f64 / k,
        "colorings_checked": checked,
        "exotic_count": cxs.len(),
        "counterexamples": cxs,
    }))
}
