//! The verification battery: every registered family runs through the grid
//! estimators, the patch search and the tangent zoom, and a fixed set of
//! finite-scale flags is evaluated on the results.
//!
//! Each [`Flag`] carries its own predicate text and observed value, so a
//! report can be read without this source. Flags with `asserted = false` are
//! informational and never affect the exit code.

use std::collections::BTreeMap;
use std::path::PathBuf;

use patchscope_core::grid::{
    assouad_estimate_with, auto_pairs_base, box_estimate, scale_range, tangent_zoom, GridSpec,
};
use patchscope_core::io::read_point_set;
use patchscope_core::numtheory::{gen_set, Family};
use patchscope_core::patch::{best_patch_defect, contains_patch_exact, Bound, Strategy};
use patchscope_core::{Error, Point, PointSet, Scalar};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Name of the family read from `user_file`.
pub const USER_FAMILY: &str = "user";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BatteryConfig {
    /// Largest patch size in the epsilon table; the table starts at 2.
    pub kmax: usize,
    pub strategy: Strategy,
    /// Ball lattice spacing for the tangent zoom.
    pub resolution: Scalar,
    pub min_ratio: u64,
    /// Cap on the number of scale levels per family.
    pub max_levels: i32,
    /// Registry of built-in families, keyed by report name.
    pub families: BTreeMap<String, Family>,
    pub user_file: Option<PathBuf>,
    pub thresholds: Thresholds,
}

/// Thresholds frozen from a reference run at the default configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    pub cantor_assouad_max: f64,
    /// Smallest acceptable `epsilon(3)` on the Cantor family.
    pub cantor_eps3_floor: Scalar,
    pub union_box_slope_max: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { cantor_assouad_max: 0.75, cantor_eps3_floor: Scalar::ratio(1, 243), union_box_slope_max: 0.2 }
    }
}

impl Default for BatteryConfig {
    fn default() -> Self {
        let families = [
            ("full_grid", Family::FullGrid { depth: 8, dim: 1 }),
            ("cantor", Family::Cantor { depth: 6 }),
            ("e_p", Family::EP { p: 2, n: 40 }),
            ("union_patches", Family::UnionPatches { base: 4, count: 8, dim: 1 }),
            ("primes", Family::Primes { n: 1000 }),
            ("prime_powers", Family::PrimePowers { m: 2, n: 300 }),
            ("squares", Family::Squares { n: 80 }),
        ];
        BatteryConfig {
            kmax: 5,
            strategy: Strategy::Anchored,
            resolution: Scalar::ratio(1, 64),
            min_ratio: patchscope_core::grid::DEFAULT_MIN_RATIO,
            max_levels: 12,
            families: families.into_iter().map(|(n, f)| (n.to_string(), f)).collect(),
            user_file: None,
            thresholds: Thresholds::default(),
        }
    }
}

impl BatteryConfig {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    /// Resolves `all` or a comma-separated list into registry names.
    pub fn select(&self, spec: &str) -> Result<Vec<String>, Error> {
        let mut names: Vec<String> = if spec.trim() == "all" {
            let mut all: Vec<String> = self.families.keys().cloned().collect();
            if self.user_file.is_some() {
                all.push(USER_FAMILY.to_string());
            }
            all
        } else {
            spec.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
        };
        for n in &names {
            let known = self.families.contains_key(n) || (n == USER_FAMILY && self.user_file.is_some());
            if !known {
                return Err(Error::InvalidParameter(format!("unknown family {n:?}")));
            }
        }
        names.sort();
        names.dedup();
        if names.is_empty() {
            return Err(Error::InvalidParameter("no families selected".into()));
        }
        Ok(names)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Flag {
    pub name: String,
    pub predicate: String,
    pub observed: String,
    pub passed: bool,
    pub asserted: bool,
}

impl Flag {
    fn new(name: &str, predicate: String, observed: String, passed: bool, asserted: bool) -> Self {
        Flag { name: name.to_string(), predicate, observed, passed, asserted }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactWitness {
    pub t: Point,
    pub delta: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpsilonEntry {
    pub k: usize,
    pub epsilon: Scalar,
    pub decimal: f64,
    pub t: Point,
    pub delta: Scalar,
    pub bound: Bound,
    /// Independent exact search for a size-`k` patch.
    pub exact: Option<ExactWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyRow {
    pub name: String,
    pub family: String,
    pub points: usize,
    pub dim: usize,
    pub scale_base: u32,
    pub assouad_estimate: f64,
    pub assouad_coarse: Scalar,
    pub assouad_fine: Scalar,
    pub box_finest_scale: Scalar,
    pub box_slope: f64,
    pub epsilon: Vec<EpsilonEntry>,
    pub tangent_defect: Scalar,
    pub tangent_decimal: f64,
    pub tangent_discretization: Scalar,
    pub flags: Vec<Flag>,
}

impl FamilyRow {
    fn eps(&self, k: usize) -> Option<&Scalar> {
        self.epsilon.iter().find(|e| e.k == k).map(|e| &e.epsilon)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BatteryReport {
    pub config: BatteryConfig,
    /// Sorted by name.
    pub families: Vec<FamilyRow>,
    pub global_flags: Vec<Flag>,
    /// All asserted flags passed.
    pub passed: bool,
}

impl BatteryReport {
    pub fn flags(&self) -> impl Iterator<Item = (&str, &Flag)> {
        let rows = self.families.iter().flat_map(|r| r.flags.iter().map(move |f| (r.name.as_str(), f)));
        rows.chain(self.global_flags.iter().map(|f| ("*", f)))
    }

    pub fn failed_assertions(&self) -> usize {
        self.flags().filter(|(_, f)| f.asserted && !f.passed).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Grid base aligned with the family's self-similar structure.
fn scale_base(family: Option<&Family>) -> u32 {
    match family {
        Some(Family::Cantor { .. }) => 3,
        Some(Family::UnionPatches { base, .. }) => *base,
        _ => 2,
    }
}

fn load(name: &str, config: &BatteryConfig) -> Result<(PointSet, Option<Family>), Error> {
    if name == USER_FAMILY {
        let path = config.user_file.as_ref().expect("checked in select");
        return Ok((read_point_set(path)?, None));
    }
    let family = config.families[name].clone();
    Ok((gen_set(&family)?, Some(family)))
}

fn evaluate(name: &str, config: &BatteryConfig) -> Result<FamilyRow, Error> {
    let (set, family) = load(name, config)?;
    if set.len() < 2 {
        return Err(Error::Singleton);
    }
    let base = scale_base(family.as_ref());
    let pairs = auto_pairs_base(&set, base, config.max_levels);
    let dim = assouad_estimate_with(&set, &pairs, config.min_ratio)?;
    let best = dim.best();

    let (top, bottom) = scale_range(&set, base, config.max_levels);
    let b = Scalar::from(base as u64);
    // from base^top down to the smallest-gap level, coarsest first
    let scales: Vec<Scalar> = (bottom..=top).rev().map(|e| b.pow(e)).collect();
    let boxes = box_estimate(&set, &scales)?;

    let grid = GridSpec::new(*set.space(), best.coarse.clone())?;
    let zoom = tangent_zoom(&set, &grid, &best.witness, &config.resolution)?;

    let mut epsilon = Vec::new();
    for k in 2..=config.kmax {
        let r = best_patch_defect(&set, k, config.strategy)?;
        let exact = contains_patch_exact(&set, k)?.map(|p| ExactWitness { t: p.t().clone(), delta: p.delta().clone() });
        epsilon.push(EpsilonEntry {
            k,
            decimal: r.epsilon.to_f64(),
            epsilon: r.epsilon,
            t: r.t,
            delta: r.delta,
            bound: r.bound,
            exact,
        });
    }

    let mut row = FamilyRow {
        name: name.to_string(),
        family: family.as_ref().map_or_else(|| set.label().unwrap_or(USER_FAMILY).to_string(), |f| f.to_string()),
        points: set.len(),
        dim: set.dim(),
        scale_base: base,
        assouad_estimate: dim.estimate,
        assouad_coarse: best.coarse.clone(),
        assouad_fine: best.fine.clone(),
        box_finest_scale: scales.last().expect("two scales").clone(),
        box_slope: boxes.finest_slope(),
        epsilon,
        tangent_decimal: zoom.defect.to_f64(),
        tangent_defect: zoom.defect,
        tangent_discretization: zoom.discretization,
        flags: Vec::new(),
    };
    row.flags = family_flags(&row, family.as_ref(), config);
    Ok(row)
}

fn family_flags(row: &FamilyRow, family: Option<&Family>, config: &BatteryConfig) -> Vec<Flag> {
    let th = &config.thresholds;
    let mut flags = Vec::new();

    let mismatched: Vec<usize> =
        row.epsilon.iter().filter(|e| e.epsilon.is_zero() != e.exact.is_some()).map(|e| e.k).collect();
    flags.push(Flag::new(
        "exact_consistency",
        "epsilon(k) == 0 exactly when the exact search finds a size-k patch".into(),
        format!("mismatched k: {mismatched:?}"),
        mismatched.is_empty(),
        true,
    ));

    let nonzero_upto = |limit: usize| -> Vec<usize> {
        row.epsilon.iter().filter(|e| e.k <= limit && !e.epsilon.is_zero()).map(|e| e.k).collect()
    };
    match family {
        Some(Family::FullGrid { dim, .. }) => {
            flags.push(Flag::new(
                "assouad_saturated",
                format!("assouad_estimate == {dim}"),
                row.assouad_estimate.to_string(),
                row.assouad_estimate == *dim as f64,
                true,
            ));
            let bad = nonzero_upto(config.kmax);
            flags.push(Flag::new(
                "patches_exact",
                format!("epsilon(k) == 0 for 2 <= k <= {}", config.kmax),
                format!("nonzero k: {bad:?}"),
                bad.is_empty(),
                true,
            ));
            flags.push(Flag::new(
                "tangent_within_resolution",
                format!("tangent_defect <= {}", row.tangent_discretization),
                row.tangent_defect.to_string(),
                row.tangent_defect <= row.tangent_discretization,
                true,
            ));
        }
        Some(Family::UnionPatches { count, .. }) => {
            let limit = config.kmax.min(*count as usize);
            let bad = nonzero_upto(limit);
            flags.push(Flag::new(
                "patches_exact",
                format!("epsilon(k) == 0 for 2 <= k <= {limit}"),
                format!("nonzero k: {bad:?}"),
                bad.is_empty(),
                true,
            ));
            flags.push(Flag::new(
                "box_slope_small",
                format!("box slope at scale {} <= {}", row.box_finest_scale, th.union_box_slope_max),
                row.box_slope.to_string(),
                row.box_slope <= th.union_box_slope_max,
                true,
            ));
        }
        Some(Family::Cantor { .. }) => {
            flags.push(Flag::new(
                "assouad_below",
                format!("assouad_estimate <= {}", th.cantor_assouad_max),
                row.assouad_estimate.to_string(),
                row.assouad_estimate <= th.cantor_assouad_max,
                true,
            ));
            if let Some(e3) = row.eps(3) {
                flags.push(Flag::new(
                    "eps3_floor",
                    format!("epsilon(3) >= {}", th.cantor_eps3_floor),
                    e3.to_string(),
                    *e3 >= th.cantor_eps3_floor,
                    true,
                ));
            }
        }
        _ => {}
    }
    flags
}

/// Families ordered by Assouad estimate should be ordered the same way by
/// `-epsilon(kmax)`. Informational only.
fn coherence(rows: &[FamilyRow], kmax: usize) -> Option<Flag> {
    let mut violations = Vec::new();
    for a in rows {
        for b in rows {
            let (Some(ea), Some(eb)) = (a.eps(kmax), b.eps(kmax)) else {
                continue;
            };
            if a.assouad_estimate < b.assouad_estimate && ea < eb {
                violations.push(format!("{}<{}", a.name, b.name));
            }
        }
    }
    (kmax >= 2).then(|| {
        Flag::new(
            "directional_coherence",
            format!("assouad(a) < assouad(b) implies epsilon_a({kmax}) >= epsilon_b({kmax})"),
            format!("violations: {violations:?}"),
            violations.is_empty(),
            false,
        )
    })
}

/// Runs the selected families in parallel; rows are ordered by name.
pub fn run_battery(names: &[String], config: &BatteryConfig) -> Result<BatteryReport, Error> {
    if config.kmax < 2 {
        return Err(Error::InvalidParameter(format!("kmax must be at least 2, got {}", config.kmax)));
    }
    let mut families = names.par_iter().map(|n| evaluate(n, config)).collect::<Result<Vec<_>, _>>()?;
    families.sort_by(|a, b| a.name.cmp(&b.name));
    let global_flags: Vec<Flag> = coherence(&families, config.kmax).into_iter().collect();
    let mut report = BatteryReport { config: config.clone(), families, global_flags, passed: true };
    report.passed = report.failed_assertions() == 0;
    Ok(report)
}
