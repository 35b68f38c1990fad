//! The acceptance criteria as runnable checks with a machine-readable report.
//!
//! Each criterion reports a measured value against its tolerance. Gating
//! criteria fail when the tolerance is exceeded. Report-only criteria warn
//! instead, and fail only when the measurement is beyond ten times the
//! tolerance.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::combinatorics::{build_cell_complex, classify, enumerate_types, DEFAULT_TOL};
use crate::conformal::field::{solve_on_grid, FieldSummary};
use crate::conformal::{build_quad, HarmonicField};
use crate::hyperbolic::{CirclePoint, DiskPoint, MobiusMap};
use crate::linkage::probes::probe_conjectures;
use crate::linkage::requirements::{check_requirements, continuity_probe, random_disk_point};
use crate::linkage::evaluate;
use crate::springborn::{brute_force_center, normalize, DEFAULT_MAX_ITER, DEFAULT_TOL as SPRINGBORN_TOL};
use crate::tiling::{cell_label_permutation, generate_tiling, Generator, TilingBound};
use crate::Error;

/// Reference value of the conformal modulus of `Q`.
pub const REFERENCE_MODULUS: f64 = 0.892_810_29;

/// Grid resolutions of the modulus refinement pair.
pub const MODULUS_RESOLUTIONS: (usize, usize) = (80, 160);

/// Control points sampled for the recipe invariants.
pub const RECIPE_SAMPLES: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// A report-only criterion outside its tolerance but within ten times it.
    Warn,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CriterionResult {
    pub name: String,
    pub status: Status,
    pub gating: bool,
    pub measured: f64,
    pub tolerance: f64,
    pub detail: serde_json::Value,
}

impl CriterionResult {
    /// A gating criterion that passes when `measured ≤ tolerance` and `extra` holds.
    fn gating(name: &str, measured: f64, tolerance: f64, extra: bool, detail: serde_json::Value) -> Self {
        let ok = measured <= tolerance && extra;
        CriterionResult {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            gating: true,
            measured,
            tolerance,
            detail,
        }
    }

    fn report_only(name: &str, measured: f64, tolerance: f64, detail: serde_json::Value) -> Self {
        let status = if measured <= tolerance {
            Status::Pass
        } else if measured <= 10.0 * tolerance {
            Status::Warn
        } else {
            Status::Fail
        };
        CriterionResult { name: name.to_string(), status, gating: false, measured, tolerance, detail }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// One line of the form `PASS name: measured ≤ tolerance`.
    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
        };
        let kind = if self.gating { "" } else { " (report-only)" };
        format!("{tag} {}{kind}: measured {:.3e}, tolerance {:.1e}", self.name, self.measured, self.tolerance)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub seed: u64,
    pub field: FieldSummary,
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failing(&self) -> Vec<&str> {
        self.criteria.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect()
    }
}

/// Modulus at a refinement pair: within 1e-3 of the reference, monotone
/// approach, at most 200k triangles and two minutes.
pub fn modulus_criterion() -> Result<CriterionResult, Error> {
    let start = Instant::now();
    let q = build_quad();
    let (n0, n1) = MODULUS_RESOLUTIONS;
    let coarse = solve_on_grid(&q, n0, 0.0)?;
    let fine = solve_on_grid(&q, n1, 0.0)?;
    let seconds = start.elapsed().as_secs_f64();
    let (m0, m1) = (coarse.modulus(), fine.modulus());
    let error = (m1 - REFERENCE_MODULUS).abs();
    let monotone = (m1 - REFERENCE_MODULUS).abs() < (m0 - REFERENCE_MODULUS).abs() && m0 > m1;
    let triangles = fine.mesh().triangles().len();
    let extrapolated = (4.0 * m1 - m0) / 3.0;
    Ok(CriterionResult::gating(
        "modulus",
        error,
        1e-3,
        monotone && triangles <= 200_000 && seconds <= 120.0,
        json!({
            "coarse": {"resolution": n0, "modulus": m0},
            "fine": {"resolution": n1, "modulus": m1, "triangles": triangles},
            "richardson": extrapolated,
            "reference": REFERENCE_MODULUS,
            "monotone": monotone,
            "seconds": seconds,
        }),
    ))
}

/// 24/60/30 types, Euler characteristic −6 and genus 4 in under a second.
pub fn cell_complex_criterion() -> CriterionResult {
    let start = Instant::now();
    let types = enumerate_types();
    let count = |d| types.iter().filter(|t| t.degeneracy == d).count();
    let counts = (count(0), count(1), count(2));
    let report = build_cell_complex().report();
    let seconds = start.elapsed().as_secs_f64();
    let ok = counts == (24, 60, 30)
        && report.euler_characteristic == -6
        && report.genus == 4
        && report.orientable
        && report.closed_surface;
    CriterionResult::gating(
        "cell-complex",
        seconds,
        1.0,
        ok,
        json!({"types": [counts.0, counts.1, counts.2], "complex": report, "seconds": seconds}),
    )
}

/// The six defining relations of the reflection group, checked pointwise.
pub fn group_relations_criterion(seed: u64) -> CriterionResult {
    let s = Generator::S.map();
    let r0 = Generator::R(0).map();
    let r1 = Generator::R(1).map();
    let pow = |m: MobiusMap, k: usize| (1..k).fold(m, |acc, _| acc * m);
    let relations: [(&str, MobiusMap); 6] = [
        ("s^2", s * s),
        ("r0^2", r0 * r0),
        ("r1^2", r1 * r1),
        ("(s r0)^2", pow(s * r0, 2)),
        ("(s r1)^4", pow(s * r1, 4)),
        ("(r0 r1)^5", pow(r0 * r1, 5)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<DiskPoint> = (0..100).map(|_| random_disk_point(&mut rng, 0.95)).collect();
    let mut worst = serde_json::Map::new();
    let mut max: f64 = 0.0;
    for (name, m) in &relations {
        let d = points.iter().map(|p| (m.apply(p.z()) - p.z()).norm()).fold(0.0, f64::max);
        worst.insert(name.to_string(), json!(d));
        max = max.max(d);
    }
    CriterionResult::gating("group-relations", max, 1e-10, true, json!({"points": 100, "maxDisplacement": worst}))
}

/// Edge lengths, closure and Springborn convergence over random control points.
pub fn recipe_invariants_criterion(field: &HarmonicField, samples: usize, seed: u64) -> Result<CriterionResult, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x007e_c19e);
    let points: Vec<DiskPoint> = (0..samples).map(|_| random_disk_point(&mut rng, 0.9)).collect();
    let stats = points
        .par_iter()
        .map(|&p| {
            let t = evaluate(p, field)?;
            let edge = t.linkage.edge_lengths().iter().map(|l| (l - 1.0).abs()).fold(0.0, f64::max);
            Ok((edge, t.linkage.closure_defect(), t.springborn_residual, t.springborn_iterations))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let edge = stats.iter().map(|s| s.0).fold(0.0, f64::max);
    let closure = stats.iter().map(|s| s.1).fold(0.0, f64::max);
    let residual = stats.iter().map(|s| s.2).fold(0.0, f64::max);
    let iterations = stats.iter().map(|s| s.3).max().unwrap_or(0);
    // Edge and closure share the 1e-9 bar; the residual has its own.
    let measured = edge.max(closure);
    Ok(CriterionResult::gating(
        "recipe-invariants",
        measured,
        1e-9,
        residual <= SPRINGBORN_TOL && iterations <= DEFAULT_MAX_ITER,
        json!({
            "samples": samples,
            "maxEdgeError": edge,
            "maxClosure": closure,
            "maxSpringbornResidual": residual,
            "maxSpringbornIterations": iterations,
        }),
    ))
}

/// Equivariance and rotation identities to 1e-4, and the regular pentagon at 0.
pub fn requirement_suite_criterion(field: &HarmonicField, samples: usize, seed: u64) -> Result<CriterionResult, Error> {
    let rep = check_requirements(field, samples, seed)?;
    Ok(CriterionResult::gating(
        "requirement-suite",
        rep.max_deviation,
        1e-4,
        rep.regular_at_origin <= 1e-9,
        serde_json::to_value(&rep).expect("serializable report"),
    ))
}

/// Points on tiling edges are degenerate in the predicted pair; tiling vertices
/// are doubly degenerate.
pub fn degeneracy_criterion(field: &HarmonicField, seed: u64) -> Result<CriterionResult, Error> {
    let tiling = generate_tiling(TilingBound::Radius(0.9))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xde9e);
    let inner: Vec<(usize, usize, usize)> = (0..tiling.edges().len())
        .filter_map(|e| match tiling.edge_faces(e) {
            (Some(a), Some(b)) => Some((e, a, b)),
            _ => None,
        })
        .collect();
    let samples: Vec<(DiskPoint, (u8, u8))> = (0..1000)
        .map(|_| {
            let (e, a, b) = inner[rng.gen_range(0..inner.len())];
            let (p, q) = tiling.edge_endpoints(e);
            let z = crate::hyperbolic::geodesic_lerp(p.z(), q.z(), rng.gen_range(0.05..0.95));
            let pa = cell_label_permutation(&tiling.faces()[a].word);
            let pb = cell_label_permutation(&tiling.faces()[b].word);
            let diff: Vec<u8> = (0..5u8).filter(|&i| pa[i as usize] != pb[i as usize]).collect();
            (DiskPoint::new(z).expect("edge point inside the disk"), (diff[0], diff[1]))
        })
        .collect();
    let edge_failures = samples
        .par_iter()
        .map(|&(p, pair)| {
            let t = evaluate(p, field)?;
            let ok = classify(&t.juzu, DEFAULT_TOL).is_ok_and(|ty| ty.degeneracy >= 1 && ty.pairs().contains(&pair));
            Ok(usize::from(!ok))
        })
        .collect::<Result<Vec<_>, Error>>()?
        .into_iter()
        .sum::<usize>();
    let vertices: Vec<DiskPoint> = tiling.vertices().iter().map(|v| v.center).collect();
    let chosen: Vec<DiskPoint> = (0..100).map(|_| vertices[rng.gen_range(0..vertices.len())]).collect();
    let vertex_failures = chosen
        .par_iter()
        .map(|&p| {
            let t = evaluate(p, field)?;
            let ok = classify(&t.juzu, DEFAULT_TOL).is_ok_and(|ty| ty.degeneracy == 2);
            Ok(usize::from(!ok))
        })
        .collect::<Result<Vec<_>, Error>>()?
        .into_iter()
        .sum::<usize>();
    Ok(CriterionResult::gating(
        "degeneracy-placement",
        (edge_failures + vertex_failures) as f64,
        0.0,
        true,
        json!({
            "edgePoints": samples.len(),
            "edgeFailures": edge_failures,
            "vertexPoints": chosen.len(),
            "vertexFailures": vertex_failures,
            "classifyTolerance": DEFAULT_TOL,
        }),
    ))
}

/// Vertex displacement per 1e-3 step along 20 paths through cell boundaries.
pub fn continuity_criterion(field: &HarmonicField, seed: u64) -> Result<CriterionResult, Error> {
    let tiling = generate_tiling(TilingBound::Radius(0.95))?;
    let rep = continuity_probe(field, &tiling, 20, 1e-3, seed)?;
    Ok(CriterionResult::gating(
        "continuity",
        rep.max_displacement,
        1e-2,
        rep.boundary_crossings >= rep.paths,
        serde_json::to_value(&rep).expect("serializable report"),
    ))
}

/// The summed coordinate over a radius-0.6 grid and the 72° turn loop.
pub fn conjecture_criteria(field: &HarmonicField) -> Result<[CriterionResult; 2], Error> {
    let rep = probe_conjectures(field, 0.6, 13)?;
    let detail = serde_json::to_value(&rep).expect("serializable report");
    Ok([
        CriterionResult::report_only("conjecture-sum", rep.max_abs_sum, 5e-4, detail.clone()),
        CriterionResult::report_only("conjecture-turn", rep.turn_angle_error, 1e-3, detail),
    ])
}

/// Five random circle points with no three packed into a short arc.
fn admissible_points(rng: &mut impl Rng) -> [CirclePoint; 5] {
    loop {
        let mut a: [f64; 5] = std::array::from_fn(|_| rng.gen::<f64>() * std::f64::consts::TAU);
        a.sort_by(f64::total_cmp);
        let spread_ok = (0..5).all(|i| {
            let j = (i + 2) % 5;
            (a[j] - a[i]).rem_euclid(std::f64::consts::TAU) > 0.3
        });
        if spread_ok {
            return a.map(CirclePoint::from_angle);
        }
    }
}

/// Newton's center agrees with a brute-force grid search on 100 inputs.
pub fn springborn_oracle_criterion(seed: u64) -> Result<CriterionResult, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5991);
    let inputs: Vec<[CirclePoint; 5]> = (0..100).map(|_| admissible_points(&mut rng)).collect();
    let diffs = inputs
        .par_iter()
        .map(|p| {
            let newton = normalize(p, SPRINGBORN_TOL, DEFAULT_MAX_ITER)?;
            Ok((newton.c - brute_force_center(p, 1e-5)).norm())
        })
        .collect::<Result<Vec<f64>, Error>>()?;
    let max = diffs.iter().copied().fold(0.0, f64::max);
    Ok(CriterionResult::gating("springborn-oracle", max, 1e-4, true, json!({"inputs": inputs.len(), "finalGrid": 1e-5})))
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub recipe_samples: usize,
    pub requirement_samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, recipe_samples: RECIPE_SAMPLES, requirement_samples: 100 }
    }
}

/// Runs every criterion against `field`.
pub fn verify_all(field: &HarmonicField, opts: &VerifyOptions) -> Result<VerifyReport, Error> {
    let mut criteria = vec![
        modulus_criterion()?,
        cell_complex_criterion(),
        group_relations_criterion(opts.seed),
        recipe_invariants_criterion(field, opts.recipe_samples, opts.seed)?,
        requirement_suite_criterion(field, opts.requirement_samples, opts.seed)?,
        degeneracy_criterion(field, opts.seed)?,
        continuity_criterion(field, opts.seed)?,
    ];
    criteria.extend(conjecture_criteria(field)?);
    criteria.push(springborn_oracle_criterion(opts.seed)?);
    let passed = criteria.iter().all(CriterionResult::passed);
    Ok(VerifyReport { seed: opts.seed, field: field.summary(), criteria, passed })
}
