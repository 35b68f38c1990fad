//! Reduction of disk points into `Q` by reflections in its sides, tracking the
//! Schwarz-reflection rule for `ψ`.
//!
//! Reflecting across a side where `ψ = k` sends `ψ` to `2k − ψ`; reflecting across a
//! free side leaves it unchanged. After folding, `ψ(p) = sign·u(folded) + offset`.

use serde::{Deserialize, Serialize};

use crate::hyperbolic::{DiskPoint, C64};

use super::field::HarmonicField;
use super::quad::{QuadDomain, SideKind};
use super::FieldError;

pub const MAX_REFLECTIONS: u32 = 1024;

/// Points this close (Euclidean) to a side count as lying on it.
pub const BOUNDARY_TOL: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldResult {
    pub folded: DiskPoint,
    pub sign: i8,
    pub offset: i64,
    pub reflections: u32,
    /// Sides reflected in, in the order applied.
    pub word: Vec<u8>,
}

impl FoldResult {
    /// Applies the recorded reflections in reverse to recover the original point.
    pub fn unfold(&self, q: &QuadDomain) -> C64 {
        self.word
            .iter()
            .rev()
            .fold(self.folded.z(), |z, &i| q.side_reflection(i as usize).apply(z))
    }

    /// `ψ` at the original point given the value of `u` at the folded point.
    pub fn apply(&self, u: f64) -> f64 {
        self.sign as f64 * u + self.offset as f64
    }
}

pub fn fold(p: DiskPoint, q: &QuadDomain) -> Result<FoldResult, FieldError> {
    fold_with_order(p, q, [0, 1, 2, 3])
}

/// Folds, testing the sides in the given priority order at each step.
pub fn fold_with_order(p: DiskPoint, q: &QuadDomain, order: [usize; 4]) -> Result<FoldResult, FieldError> {
    let reference: [f64; 4] = std::array::from_fn(|i| q.sides()[i].side(q.center().z()));
    let mut z = p.z();
    let mut sign: i8 = 1;
    let mut offset: i64 = 0;
    let mut word = Vec::new();
    loop {
        let outside = |i: usize| {
            let g = &q.sides()[i];
            g.side(z) * reference[i] < 0.0 && g.euclidean_distance(z) > BOUNDARY_TOL
        };
        let Some(i) = order.into_iter().find(|&i| outside(i)) else {
            break;
        };
        if word.len() as u32 >= MAX_REFLECTIONS {
            return Err(FieldError::FoldLimit { reflections: MAX_REFLECTIONS });
        }
        z = q.side_reflection(i).apply(z);
        match q.side_kind(i) {
            SideKind::Zero => sign = -sign,
            SideKind::One => {
                offset += 2 * sign as i64;
                sign = -sign;
            }
            SideKind::Free => {}
        }
        word.push(i as u8);
    }
    let folded = DiskPoint::new(z).unwrap_or(p);
    Ok(FoldResult { folded, sign, offset, reflections: word.len() as u32, word })
}

pub fn psi(p: DiskPoint, field: &HarmonicField) -> Result<f64, FieldError> {
    psi_with_fold(p, field).map(|(v, _)| v)
}

pub fn psi_with_fold(p: DiskPoint, field: &HarmonicField) -> Result<(f64, FoldResult), FieldError> {
    let f = fold(p, field.quad())?;
    Ok((f.apply(field.interpolate(f.folded.z())), f))
}
