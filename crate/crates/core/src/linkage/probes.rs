//! Numerical probes of conjectured properties of `ψ`. Report-only.

use serde::Serialize;

use crate::conformal::fold::psi;
use crate::conformal::HarmonicField;
use crate::hyperbolic::{omega, DiskPoint, C64};
use crate::Error;

use super::paths::PathPreset;
use super::recipe::evaluate;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConjectureReport {
    pub grid_radius: f64,
    pub grid_count: usize,
    pub points: usize,
    /// `Σ_k ψ(q·ω^k)` at the origin.
    pub sum_at_origin: f64,
    /// Largest `|Σ_k ψ(q·ω^k)|` over the grid.
    pub max_abs_sum: f64,
    /// Largest directional derivative of `Σ_k ψ_k` (the summed angular velocity
    /// of the edge vectors per unit control-point speed).
    pub max_momentum: f64,
    /// Ratio of singular values of the Jacobian of `q ↦ (ψ(q_0), …, ψ(q_4))`.
    pub conformality_at_origin: f64,
    pub conformality_min: f64,
    pub conformality_max: f64,
    /// Rotation between the first and last pentagon of the zero-momentum-turn path.
    pub turn_angle: f64,
    pub turn_angle_error: f64,
}

fn sum_psi(q: C64, field: &HarmonicField) -> Result<f64, Error> {
    let mut s = 0.0;
    for k in 0..5 {
        s += psi(DiskPoint::new(q * omega(k))?, field)?;
    }
    Ok(s)
}

fn singular_ratio(q: C64, field: &HarmonicField, h: f64) -> Result<f64, Error> {
    let mut cols = [[0.0; 5]; 2];
    for (d, dir) in [C64::new(h, 0.0), C64::new(0.0, h)].into_iter().enumerate() {
        for (k, col) in cols[d].iter_mut().enumerate() {
            let a = psi(DiskPoint::new((q + dir) * omega(k as i64))?, field)?;
            let b = psi(DiskPoint::new((q - dir) * omega(k as i64))?, field)?;
            *col = (a - b) / (2.0 * h);
        }
    }
    let dot = |x: &[f64; 5], y: &[f64; 5]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let (a, b, c) = (dot(&cols[0], &cols[0]), dot(&cols[0], &cols[1]), dot(&cols[1], &cols[1]));
    let mean = (a + c) / 2.0;
    let disc = (((a - c) / 2.0).powi(2) + b * b).sqrt();
    let (hi, lo) = (mean + disc, (mean - disc).max(0.0));
    Ok(if lo > 0.0 { (hi / lo).sqrt() } else { f64::INFINITY })
}

/// Rotation angle taking pentagon `a` to pentagon `b` up to a cyclic relabeling,
/// and the largest per-edge deviation from that angle.
pub fn relative_rotation(a: &[C64; 5], b: &[C64; 5]) -> (f64, f64) {
    (0..5)
        .map(|shift| {
            let turns: Vec<f64> = (0..5).map(|m| (b[m] * a[(m + 5 - shift) % 5].conj()).arg()).collect();
            let mean = turns.iter().map(|t| C64::from_polar(1.0, *t)).sum::<C64>().arg();
            let spread = turns
                .iter()
                .map(|t| (C64::from_polar(1.0, *t) * C64::from_polar(1.0, -mean)).arg().abs())
                .fold(0.0, f64::max);
            (mean, spread)
        })
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .expect("five shifts")
}

pub fn probe_conjectures(field: &HarmonicField, grid_radius: f64, grid_count: usize) -> Result<ConjectureReport, Error> {
    let h = 1e-4;
    let n = grid_count.max(2);
    let (mut points, mut max_abs_sum, mut max_momentum) = (0, 0.0f64, 0.0f64);
    let (mut cmin, mut cmax) = (f64::INFINITY, 0.0f64);
    for i in 0..n {
        for j in 0..n {
            let x = -grid_radius + 2.0 * grid_radius * i as f64 / (n - 1) as f64;
            let y = -grid_radius + 2.0 * grid_radius * j as f64 / (n - 1) as f64;
            let q = C64::new(x, y);
            if q.norm() > grid_radius {
                continue;
            }
            points += 1;
            max_abs_sum = max_abs_sum.max(sum_psi(q, field)?.abs());
            for dir in [C64::new(h, 0.0), C64::new(0.0, h)] {
                let d = (sum_psi(q + dir, field)? - sum_psi(q - dir, field)?) / (2.0 * h);
                max_momentum = max_momentum.max(d.abs());
            }
            let r = singular_ratio(q, field, h)?;
            cmin = cmin.min(r);
            cmax = cmax.max(r);
        }
    }
    let start = evaluate(PathPreset::ZeroMomentumTurn.at(0.0), field)?;
    let end = evaluate(PathPreset::ZeroMomentumTurn.at(1.0), field)?;
    let (turn_angle, spread) = relative_rotation(
        &start.linkage.edges.map(|e| e.u()),
        &end.linkage.edges.map(|e| e.u()),
    );
    let target = 72f64.to_radians();
    Ok(ConjectureReport {
        grid_radius,
        grid_count,
        points,
        sum_at_origin: sum_psi(C64::new(0.0, 0.0), field)?,
        max_abs_sum,
        max_momentum,
        conformality_at_origin: singular_ratio(C64::new(0.0, 0.0), field, h)?,
        conformality_min: cmin,
        conformality_max: cmax,
        turn_angle,
        turn_angle_error: (turn_angle - target).abs() + spread,
    })
}
