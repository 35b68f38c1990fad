//! Hyperbolic parameterization of the moduli space of equilateral pentagons.
//!
//! A point of the Poincaré disk is turned into an equilateral pentagon so that the
//! (5,4)-tiling of the disk maps onto the combinatorial cell structure of the
//! moduli space. The pieces:
//!
//! * [`hyperbolic`]: disk points, geodesics, Möbius maps.
//! * [`tiling`]: the (5,4)-tiling, its reflection group and label permutations.
//! * [`combinatorics`]: the 114 combinatorial types and the genus-4 cell complex.
//! * [`springborn`]: Möbius normalization of five circle points.
//! * [`conformal`]: the harmonic coordinate `ψ` on the quadrilateral `Q`.
//! * [`linkage`]: the recipe from control point to pentagon, with checks and probes.
//! * [`render`]: deterministic SVG and JSON output.
//! * [`verify`]: the acceptance criteria as runnable checks.

pub mod combinatorics;
pub mod conformal;
pub mod hyperbolic;
pub mod linkage;
pub mod render;
pub mod springborn;
pub mod tiling;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Geometry(#[from] hyperbolic::GeometryError),
    #[error(transparent)]
    Tiling(#[from] tiling::TilingError),
    #[error(transparent)]
    Combinatorics(#[from] combinatorics::CombinatoricsError),
    #[error(transparent)]
    Springborn(#[from] springborn::SpringbornError),
    #[error(transparent)]
    Field(#[from] conformal::FieldError),
    #[error(transparent)]
    Linkage(#[from] linkage::LinkageError),
    #[error(transparent)]
    Path(#[from] linkage::paths::PathError),
    #[error(transparent)]
    Render(#[from] render::RenderError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
