//! Named control-point paths and path files.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::hyperbolic::{geodesic_lerp, DiskPoint, MobiusMap, C64};
use crate::tiling::{base_edge_midpoint, base_vertex, Generator};

#[derive(Debug, Error)]
pub enum PathError {
    #[error("unknown path preset {0:?} (expected edge-crossing, vertex-loop or zero-momentum-turn)")]
    UnknownPreset(String),
    #[error("cannot read path file: {0}")]
    Io(#[from] std::io::Error),
    #[error("path file is not a JSON list of [x, y] points inside the disk: {0}")]
    Parse(String),
    #[error("a path needs at least one point")]
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathPreset {
    /// Straight across the bottom side of the central pentagon.
    EdgeCrossing,
    /// A small loop around a pentagon vertex.
    VertexLoop,
    /// Along the circle `|q| = 0.5` through −144°. The end point is the start
    /// rotated by `ω^{−2}`, which yields the same pentagon turned by +72°.
    ZeroMomentumTurn,
}

/// Start angle of [`PathPreset::ZeroMomentumTurn`].
pub const TURN_START_ANGLE: f64 = 0.3;
pub const TURN_RADIUS: f64 = 0.5;

impl PathPreset {
    pub const ALL: [PathPreset; 3] = [PathPreset::EdgeCrossing, PathPreset::VertexLoop, PathPreset::ZeroMomentumTurn];

    pub fn name(self) -> &'static str {
        match self {
            PathPreset::EdgeCrossing => "edge-crossing",
            PathPreset::VertexLoop => "vertex-loop",
            PathPreset::ZeroMomentumTurn => "zero-momentum-turn",
        }
    }

    /// The point at parameter `t ∈ [0, 1]`.
    pub fn at(self, t: f64) -> DiskPoint {
        let z = match self {
            PathPreset::EdgeCrossing => {
                let inside = base_edge_midpoint().z() * 0.5 + C64::new(0.04, 0.0);
                let outside = Generator::S.map().apply(inside);
                geodesic_lerp(inside, outside, t)
            }
            PathPreset::VertexLoop => {
                let r = (0.15f64 / 2.0).tanh();
                MobiusMap::translation_to(base_vertex().z()).apply(C64::from_polar(r, 2.0 * PI * t + 0.1))
            }
            PathPreset::ZeroMomentumTurn => C64::from_polar(TURN_RADIUS, TURN_START_ANGLE - 0.8 * PI * t),
        };
        DiskPoint::new(z).expect("preset paths stay inside the disk")
    }

    pub fn sample(self, frames: usize) -> Vec<DiskPoint> {
        if frames <= 1 {
            return vec![self.at(0.0)];
        }
        (0..frames).map(|i| self.at(i as f64 / (frames - 1) as f64)).collect()
    }
}

impl fmt::Display for PathPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PathPreset {
    type Err = PathError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PathPreset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| PathError::UnknownPreset(s.to_string()))
    }
}

/// Parses a JSON array of `[x, y]` points.
pub fn parse_path(text: &str) -> Result<Vec<DiskPoint>, PathError> {
    let pts: Vec<DiskPoint> = serde_json::from_str(text).map_err(|e| PathError::Parse(e.to_string()))?;
    if pts.is_empty() {
        return Err(PathError::Empty);
    }
    Ok(pts)
}

pub fn load_path_file(path: &Path) -> Result<Vec<DiskPoint>, PathError> {
    parse_path(&std::fs::read_to_string(path)?)
}

/// Resamples a polyline to `frames` points evenly spaced in arc length.
pub fn resample(points: &[DiskPoint], frames: usize) -> Vec<DiskPoint> {
    if points.len() < 2 || frames <= 1 {
        return points.iter().take(frames.max(1)).copied().collect();
    }
    let seg: Vec<f64> = points.windows(2).map(|w| (w[1].z() - w[0].z()).norm()).collect();
    let total: f64 = seg.iter().sum();
    if total == 0.0 {
        return vec![points[0]; frames];
    }
    (0..frames)
        .map(|i| {
            let mut target = total * i as f64 / (frames - 1) as f64;
            for (k, &len) in seg.iter().enumerate() {
                if target <= len || k == seg.len() - 1 {
                    let t = if len > 0.0 { (target / len).min(1.0) } else { 0.0 };
                    let z = points[k].z() + (points[k + 1].z() - points[k].z()) * t;
                    return DiskPoint::new(z).expect("convex combination of disk points");
                }
                target -= len;
            }
            unreachable!("segments are non-empty")
        })
        .collect()
}
