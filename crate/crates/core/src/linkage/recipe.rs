//! The five-step recipe.
//!
//! 1. Rotate the control point: `q_k = q·ω^k`.
//! 2. Sample the harmonic coordinate: `ψ_k = ψ(q_k)`.
//! 3. Build unit vectors: label `m` takes `v_m = ω^m·e^{iαψ_{2m}}` (indices mod 5),
//!    so the juzu is `Ψ_m = −i·v_m`.
//! 4. Normalize by the Möbius map moving the barycenter of the `v_m` to 0.
//! 5. Chain the normalized vectors from `p_0 = 0`.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{classify, Juzu, DEFAULT_TOL};
use crate::conformal::fold::psi_with_fold;
use crate::conformal::HarmonicField;
use crate::hyperbolic::{cis, omega, CirclePoint, DiskPoint, ALPHA, C64};
use crate::springborn::{normalize, DEFAULT_MAX_ITER, DEFAULT_TOL as SPRINGBORN_TOL};
use crate::Error;

use super::Linkage;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RecipeTrace {
    pub source: DiskPoint,
    pub q: [DiskPoint; 5],
    pub psi: [f64; 5],
    /// `Ψ_m = −i·v_m` before normalization.
    pub juzu: Juzu,
    pub raw_vectors: [CirclePoint; 5],
    pub mobius_param: C64,
    pub springborn_iterations: usize,
    pub springborn_residual: f64,
    pub fold_reflections: [u32; 5],
    pub linkage: Linkage,
}

/// Samples of `ψ` at the five rotated control points, with their fold depths.
type Samples = ([DiskPoint; 5], [f64; 5], [u32; 5]);

fn samples(q: DiskPoint, field: &HarmonicField) -> Result<Samples, Error> {
    let qs: [DiskPoint; 5] = std::array::from_fn(|k| q.rotated(omega(k as i64)));
    let mut psi = [0.0; 5];
    let mut refl = [0; 5];
    for k in 0..5 {
        let (v, f) = psi_with_fold(qs[k], field)?;
        psi[k] = v;
        refl[k] = f.reflections;
    }
    Ok((qs, psi, refl))
}

fn juzu_from_samples(psi: &[f64; 5]) -> [C64; 5] {
    std::array::from_fn(|m| -C64::i() * omega(m as i64) * cis(ALPHA * psi[(2 * m) % 5]))
}

/// The juzu `Ψ(q)` as raw complex numbers.
pub fn juzu_at(q: DiskPoint, field: &HarmonicField) -> Result<[C64; 5], Error> {
    let (_, psi, _) = samples(q, field)?;
    Ok(juzu_from_samples(&psi))
}

pub fn evaluate(q: DiskPoint, field: &HarmonicField) -> Result<RecipeTrace, Error> {
    let (qs, psi, fold_reflections) = samples(q, field)?;
    let psi_juzu = juzu_from_samples(&psi);
    let juzu = Juzu::from_points_unchecked(psi_juzu.map(|z| CirclePoint::new(z).expect("unit vector")));
    let raw_vectors = juzu.edge_vectors();
    let norm = normalize(&raw_vectors, SPRINGBORN_TOL, DEFAULT_MAX_ITER)?;
    let mut linkage = Linkage::from_edges(norm.normalized, Some(q));
    // Coincidences are exact in Ψ; the Möbius normalization only rescales angles.
    linkage.type_index = classify(&juzu, DEFAULT_TOL).ok().map(|t| t.index);
    Ok(RecipeTrace {
        source: q,
        q: qs,
        psi,
        juzu,
        raw_vectors,
        mobius_param: norm.c,
        springborn_iterations: norm.iterations,
        springborn_residual: norm.residual,
        fold_reflections,
        linkage,
    })
}
