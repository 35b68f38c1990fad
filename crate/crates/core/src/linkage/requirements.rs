//! Symmetry requirements of the parameterization, checked on random samples.
//!
//! * `s`: `Ψ(s p)` is `Ψ(p)` with entries 2 and 3 exchanged.
//! * `r_k`: `Ψ(r_k p)_j = r̃_k(Ψ(p)_{2k−j})` with `r̃_k(z) = −ω^{2k}·conj(z)`.
//! * rotation: `Ψ_k(p) = Ψ_0(p·ω^{2k})·Ψ_k(0)/Ψ_0(0)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::conformal::HarmonicField;
use crate::hyperbolic::{geodesic_lerp, omega, CirclePoint, DiskPoint, MobiusMap, C64};
use crate::combinatorics::Juzu;
use crate::tiling::{base_pentagon, generate_tiling, Generator, Tiling, TilingBound};
use crate::Error;

use super::recipe::{evaluate, juzu_at};

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ContinuityReport {
    pub paths: usize,
    pub step: f64,
    pub steps_per_path: usize,
    /// Largest vertex displacement between consecutive samples.
    pub max_displacement: f64,
    pub boundary_crossings: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RequirementReport {
    pub samples: usize,
    pub seed: u64,
    pub identity: f64,
    pub s: f64,
    pub r: [f64; 5],
    pub rotation: f64,
    /// Largest deviation of `evaluate(0)` from the regular pentagon.
    pub regular_at_origin: f64,
    pub continuity: ContinuityReport,
    /// Maximum over the equivariance and rotation deviations.
    pub max_deviation: f64,
}

fn deviation(a: &[C64; 5], b: &[C64; 5]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn act(g: Generator, j: &[C64; 5]) -> [C64; 5] {
    let juzu = Juzu::from_points_unchecked(j.map(|z| CirclePoint::new(z).expect("unit")));
    g.act_on_juzu(&juzu).points().map(|p| p.u())
}

/// Uniform random point of the disk of Euclidean radius `r`.
pub fn random_disk_point(rng: &mut impl Rng, r: f64) -> DiskPoint {
    let rho = r * rng.gen::<f64>().sqrt();
    let theta = rng.gen::<f64>() * std::f64::consts::TAU;
    DiskPoint::from_polar(rho, theta).expect("radius below one")
}

pub fn check_requirements(field: &HarmonicField, samples: usize, seed: u64) -> Result<RequirementReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let psi0 = juzu_at(DiskPoint::ORIGIN, field)?;
    let (mut identity, mut s, mut r, mut rotation) = (0.0f64, 0.0f64, [0.0f64; 5], 0.0f64);
    for _ in 0..samples {
        let p = random_disk_point(&mut rng, 0.9);
        let base = juzu_at(p, field)?;
        identity = identity.max(deviation(&juzu_at(p, field)?, &base));
        let sp = Generator::S.map().apply_disk(p);
        s = s.max(deviation(&juzu_at(sp, field)?, &act(Generator::S, &base)));
        for k in 0..5u8 {
            let g = Generator::R(k);
            let rp = g.map().apply_disk(p);
            r[k as usize] = r[k as usize].max(deviation(&juzu_at(rp, field)?, &act(g, &base)));
        }
        for k in 0..5 {
            let rotated = juzu_at(p.rotated(omega(2 * k as i64)), field)?;
            let predicted = rotated[0] * psi0[k] / psi0[0];
            rotation = rotation.max((base[k] - predicted).norm());
        }
    }
    let origin = evaluate(DiskPoint::ORIGIN, field)?;
    let regular_at_origin = (0..5)
        .map(|k| (origin.linkage.edges[k].u() - omega(k as i64)).norm())
        .fold(0.0, f64::max);
    let tiling = generate_tiling(TilingBound::Radius(0.95))?;
    let continuity = continuity_probe(field, &tiling, 20, 1e-3, seed)?;
    let max_deviation = [identity, s, rotation].into_iter().chain(r).fold(0.0, f64::max);
    Ok(RequirementReport { samples, seed, identity, s, r, rotation, regular_at_origin, continuity, max_deviation })
}

/// Walks short geodesic segments through random edges of the central block of
/// faces (see [`Tiling::central_block`]) and records the largest per-step vertex
/// displacement. `step` is the hyperbolic distance between consecutive samples.
pub fn continuity_probe(
    field: &HarmonicField,
    tiling: &Tiling,
    paths: usize,
    step: f64,
    seed: u64,
) -> Result<ContinuityReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0de);
    let v = base_pentagon();
    let block = tiling.central_block();
    let central: Vec<usize> = (0..tiling.edges().len())
        .filter(|&e| {
            let (a, b) = tiling.edge_faces(e);
            [a, b].into_iter().flatten().any(|f| block.contains(&f))
        })
        .collect();
    let half_len = 0.05;
    let steps = (2.0 * half_len / step).round().max(1.0) as usize;
    let mut max_displacement: f64 = 0.0;
    let mut crossings = 0;
    for _ in 0..paths {
        let e = &tiling.edges()[central[rng.gen_range(0..central.len())]];
        let on_edge = e.transform.apply(geodesic_lerp(v[2].z(), v[3].z(), rng.gen_range(0.15..0.85)));
        let dir = C64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU);
        let through = MobiusMap::translation_to(on_edge);
        let mut prev: Option<[C64; 5]> = None;
        let mut prev_type = None;
        for i in 0..=steps {
            let d = -half_len + 2.0 * half_len * i as f64 / steps as f64;
            let p = DiskPoint::new(through.apply(dir * (d / 2.0).tanh()))?;
            let t = evaluate(p, field)?;
            if let Some(pv) = prev {
                let d = pv.iter().zip(&t.linkage.vertices).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                max_displacement = max_displacement.max(d);
            }
            if prev_type.is_some() && prev_type != t.linkage.type_index {
                crossings += 1;
            }
            prev_type = t.linkage.type_index;
            prev = Some(t.linkage.vertices);
        }
    }
    Ok(ContinuityReport { paths, step: 2.0 * half_len / steps as f64, steps_per_path: steps, max_displacement, boundary_crossings: crossings })
}
