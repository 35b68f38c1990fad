//! The harmonic coordinate `ψ`: a mixed boundary-value problem on the quadrilateral
//! `Q`, extended to the whole disk by Schwarz reflection.

pub mod fem;
pub mod field;
pub mod fold;
pub mod mesh;
pub mod quad;

use thiserror::Error;

use crate::hyperbolic::C64;

pub use field::{solve_field, HarmonicField, CACHE_VERSION, DEFAULT_MESH_SIZE};
pub use fold::{fold, psi, FoldResult, MAX_REFLECTIONS};
pub use quad::{build_quad, build_quad_real_axis_placement, QuadDomain, SideKind};

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("mesh size must be a positive finite number, got {0}")]
    InvalidMeshSize(f64),
    #[error("mesh resolution {resolution} exceeds the supported maximum {max}")]
    MeshTooLarge { resolution: usize, max: usize },
    #[error("mesh generation produced a degenerate triangle near {near}")]
    MeshGeneration { near: C64 },
    #[error("linear solver stopped after {iterations} iterations at relative residual {residual:e}")]
    SolverFailed { iterations: usize, residual: f64 },
    #[error("folding did not reach Q within {reflections} reflections")]
    FoldLimit { reflections: u32 },
    #[error("field cache I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("not a field cache file")]
    BadMagic,
    #[error("field cache version mismatch: file has {found}, expected {expected}")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("field cache geometry hash {found:016x} does not match {expected:016x}")]
    GeometryMismatch { found: u64, expected: u64 },
    #[error("malformed field cache: {0}")]
    Format(String),
}
