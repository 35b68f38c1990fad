//! The discrete harmonic function `u` on `Q` and its on-disk cache.
//!
//! Cache layout (all integers and floats little-endian):
//!
//! | bytes        | content                                   |
//! |--------------|-------------------------------------------|
//! | 8            | magic `PMFIELD\0`                         |
//! | 4            | format version (`u32`)                    |
//! | 8            | geometry hash (`u64`)                     |
//! | 8            | mesh size (`f64`)                         |
//! | 4            | grid resolution `n` (`u32`)               |
//! | 8            | modulus (`f64`)                           |
//! | 4            | vertex count `V = (n+1)²` (`u32`)         |
//! | 4            | triangle count `T = 2n²` (`u32`)          |
//! | 16·V         | vertex coordinates (`f64` re, `f64` im)   |
//! | 12·T         | triangle vertex indices (`u32` × 3)       |
//! | 8·V          | nodal values (`f64`)                      |

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::Serialize;

use crate::hyperbolic::C64;

use super::fem::{assemble_stiffness, solve_dirichlet, SolveStats};
use super::mesh::{resolution_for, CoonsMesh};
use super::quad::QuadDomain;
use super::FieldError;

pub const CACHE_MAGIC: &[u8; 8] = b"PMFIELD\0";
pub const CACHE_VERSION: u32 = 1;

/// Default target element size (Euclidean, in disk coordinates).
pub const DEFAULT_MESH_SIZE: f64 = 0.005;

const SOLVER_TOL: f64 = 1e-13;

#[derive(Clone, Debug)]
pub struct HarmonicField {
    quad: QuadDomain,
    mesh: CoonsMesh,
    values: Vec<f64>,
    modulus: f64,
    mesh_size: f64,
    stats: SolveStats,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FieldSummary {
    pub modulus: f64,
    pub mesh_size: f64,
    pub resolution: usize,
    pub vertices: usize,
    pub triangles: usize,
    pub solver_iterations: usize,
    pub solver_residual: f64,
    pub geometry_hash: String,
}

pub fn solve_field(q: &QuadDomain, mesh_size: f64) -> Result<HarmonicField, FieldError> {
    let n = resolution_for(q, mesh_size)?;
    solve_on_grid(q, n, mesh_size)
}

/// Solves on an explicit `n × n` grid.
pub fn solve_on_grid(q: &QuadDomain, n: usize, mesh_size: f64) -> Result<HarmonicField, FieldError> {
    let mesh = CoonsMesh::build(q, n)?;
    let k = assemble_stiffness(mesh.vertices(), mesh.triangles());
    let mut fixed = vec![None; mesh.vertices().len()];
    for i in 0..=n {
        fixed[mesh.index(i, 0)] = Some(0.0);
        fixed[mesh.index(i, n)] = Some(1.0);
    }
    let max_iter = 50 * (n + 1) * 4 + 1000;
    let (values, stats) = solve_dirichlet(&k, &fixed, SOLVER_TOL, max_iter)
        .map_err(|s| FieldError::SolverFailed { iterations: s.iterations, residual: s.relative_residual })?;
    let modulus = k.quadratic_form(&values);
    Ok(HarmonicField { quad: q.clone(), mesh, values, modulus, mesh_size, stats })
}

impl HarmonicField {
    pub fn quad(&self) -> &QuadDomain {
        &self.quad
    }

    pub fn mesh(&self) -> &CoonsMesh {
        &self.mesh
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Dirichlet energy of the discrete solution.
    pub fn modulus(&self) -> f64 {
        self.modulus
    }

    pub fn mesh_size(&self) -> f64 {
        self.mesh_size
    }

    pub fn solver_stats(&self) -> SolveStats {
        self.stats
    }

    pub fn summary(&self) -> FieldSummary {
        FieldSummary {
            modulus: self.modulus,
            mesh_size: self.mesh_size,
            resolution: self.mesh.resolution(),
            vertices: self.mesh.vertices().len(),
            triangles: self.mesh.triangles().len(),
            solver_iterations: self.stats.iterations,
            solver_residual: self.stats.relative_residual,
            geometry_hash: format!("{:016x}", self.quad.geometry_hash()),
        }
    }

    /// Piecewise-linear interpolant of the nodal values at a point of `Q`.
    pub fn interpolate_raw(&self, z: C64) -> f64 {
        let (s, t) = self.mesh.invert(&self.quad, z);
        self.mesh.interpolate_param(&self.values, s, t)
    }

    /// The interpolant averaged with its half-turn image, `(u(z) + 1 − u(R z))/2`,
    /// so that `u ∘ R = 1 − u` holds exactly.
    pub fn interpolate(&self, z: C64) -> f64 {
        let w = self.quad.half_turn().apply(z);
        0.5 * (self.interpolate_raw(z) + 1.0 - self.interpolate_raw(w))
    }

    pub fn save(&self, path: &Path) -> Result<(), FieldError> {
        let mut buf = Vec::with_capacity(64 + self.values.len() * 40);
        buf.extend_from_slice(CACHE_MAGIC);
        buf.extend_from_slice(&CACHE_VERSION.to_le_bytes());
        buf.extend_from_slice(&self.quad.geometry_hash().to_le_bytes());
        buf.extend_from_slice(&self.mesh_size.to_le_bytes());
        buf.extend_from_slice(&(self.mesh.resolution() as u32).to_le_bytes());
        buf.extend_from_slice(&self.modulus.to_le_bytes());
        buf.extend_from_slice(&(self.mesh.vertices().len() as u32).to_le_bytes());
        buf.extend_from_slice(&(self.mesh.triangles().len() as u32).to_le_bytes());
        for v in self.mesh.vertices() {
            buf.extend_from_slice(&v.re.to_le_bytes());
            buf.extend_from_slice(&v.im.to_le_bytes());
        }
        for t in self.mesh.triangles() {
            for k in t {
                buf.extend_from_slice(&k.to_le_bytes());
            }
        }
        for v in &self.values {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        let mut f = fs::File::create(path)?;
        f.write_all(&buf)?;
        Ok(())
    }

    /// Loads a cache written by [`HarmonicField::save`] for the quadrilateral `q`.
    pub fn load(path: &Path, q: &QuadDomain) -> Result<HarmonicField, FieldError> {
        let mut bytes = Vec::new();
        fs::File::open(path)?.read_to_end(&mut bytes)?;
        Self::from_bytes(&bytes, q)
    }

    pub fn from_bytes(bytes: &[u8], q: &QuadDomain) -> Result<HarmonicField, FieldError> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(8)? != CACHE_MAGIC {
            return Err(FieldError::BadMagic);
        }
        let version = r.u32()?;
        if version != CACHE_VERSION {
            return Err(FieldError::VersionMismatch { found: version, expected: CACHE_VERSION });
        }
        let hash = r.u64()?;
        if hash != q.geometry_hash() {
            return Err(FieldError::GeometryMismatch { found: hash, expected: q.geometry_hash() });
        }
        let mesh_size = r.f64()?;
        let n = r.u32()? as usize;
        let modulus = r.f64()?;
        let nv = r.u32()? as usize;
        let nt = r.u32()? as usize;
        if nv != (n + 1) * (n + 1) || nt != 2 * n * n {
            return Err(FieldError::Format(format!("counts {nv}/{nt} do not fit resolution {n}")));
        }
        let mut vertices = Vec::with_capacity(nv);
        for _ in 0..nv {
            vertices.push(C64::new(r.f64()?, r.f64()?));
        }
        let mut triangles = Vec::with_capacity(nt);
        for _ in 0..nt {
            let t = [r.u32()?, r.u32()?, r.u32()?];
            if t.iter().any(|&k| k as usize >= nv) {
                return Err(FieldError::Format("triangle index out of range".into()));
            }
            triangles.push(t);
        }
        let mut values = Vec::with_capacity(nv);
        for _ in 0..nv {
            let v = r.f64()?;
            if !v.is_finite() {
                return Err(FieldError::Format("non-finite nodal value".into()));
            }
            values.push(v);
        }
        if r.pos != bytes.len() {
            return Err(FieldError::Format("trailing bytes".into()));
        }
        let mesh = CoonsMesh::from_parts(q, n, vertices, triangles)?;
        let stats = SolveStats { iterations: 0, relative_residual: f64::NAN };
        Ok(HarmonicField { quad: q.clone(), mesh, values, modulus, mesh_size, stats })
    }

    /// JSON mirror of the cache contents, for inspection.
    pub fn to_debug_json(&self) -> serde_json::Value {
        serde_json::json!({
            "formatVersion": CACHE_VERSION,
            "geometryHash": format!("{:016x}", self.quad.geometry_hash()),
            "meshSize": self.mesh_size,
            "resolution": self.mesh.resolution(),
            "modulus": self.modulus,
            "vertices": self.mesh.vertices().iter().map(|v| [v.re, v.im]).collect::<Vec<_>>(),
            "triangles": self.mesh.triangles(),
            "values": self.values,
        })
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], FieldError> {
        let end = self.pos + n;
        if end > self.bytes.len() {
            return Err(FieldError::Format("file is truncated".into()));
        }
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32, FieldError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn u64(&mut self) -> Result<u64, FieldError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }

    fn f64(&mut self) -> Result<f64, FieldError> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }
}
