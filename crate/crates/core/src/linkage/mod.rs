//! From a control point in the disk to an equilateral pentagon.

pub mod paths;
pub mod probes;
pub mod recipe;
pub mod requirements;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{classify, Juzu, DEFAULT_TOL};
use crate::hyperbolic::{CirclePoint, DiskPoint, C64};

pub use paths::PathPreset;
pub use probes::{probe_conjectures, ConjectureReport};
pub use recipe::{evaluate, juzu_at, RecipeTrace};
pub use requirements::{check_requirements, RequirementReport};

/// Tolerance on edge lengths for a valid linkage.
pub const EDGE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinkageError {
    #[error("edge {edge} has length {length}, expected 1")]
    NotEquilateral { edge: usize, length: f64 },
}

/// Five plane points with unit distances between cyclically consecutive ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Linkage {
    pub vertices: [C64; 5],
    pub edges: [CirclePoint; 5],
    pub source_point: Option<DiskPoint>,
    pub type_index: Option<usize>,
}

impl Linkage {
    pub fn from_vertices(vertices: [C64; 5], source_point: Option<DiskPoint>) -> Result<Linkage, LinkageError> {
        let mut edges = [CirclePoint::from_angle(0.0); 5];
        for k in 0..5 {
            let d = vertices[(k + 1) % 5] - vertices[k];
            let length = d.norm();
            if (length - 1.0).abs() > EDGE_TOL {
                return Err(LinkageError::NotEquilateral { edge: k, length });
            }
            edges[k] = CirclePoint::new(d).expect("unit length vector");
        }
        let mut l = Linkage { vertices, edges, source_point, type_index: None };
        l.type_index = classify(&l.juzu(), DEFAULT_TOL).ok().map(|t| t.index);
        Ok(l)
    }

    /// Places `p_0 = 0` and `p_{k+1} = p_k + v_k`.
    pub fn from_edges(edges: [CirclePoint; 5], source_point: Option<DiskPoint>) -> Linkage {
        let mut vertices = [C64::new(0.0, 0.0); 5];
        for k in 1..5 {
            vertices[k] = vertices[k - 1] + edges[k - 1].u();
        }
        let mut l = Linkage { vertices, edges, source_point, type_index: None };
        l.type_index = classify(&l.juzu(), DEFAULT_TOL).ok().map(|t| t.index);
        l
    }

    pub fn juzu(&self) -> Juzu {
        Juzu::from_edge_vectors(&self.edges)
    }

    pub fn edge_lengths(&self) -> [f64; 5] {
        std::array::from_fn(|k| (self.vertices[(k + 1) % 5] - self.vertices[k]).norm())
    }

    /// `|Σ v_k|`.
    pub fn closure_defect(&self) -> f64 {
        self.edges.iter().map(|e| e.u()).sum::<C64>().norm()
    }
}

/// Wire format shared by the command line and the service.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub source: [f64; 2],
    pub psi: [f64; 5],
    pub vectors: [[f64; 2]; 5],
    pub vertices: [[f64; 2]; 5],
    #[serde(rename = "type")]
    pub type_index: Option<usize>,
}

impl From<&RecipeTrace> for Frame {
    fn from(t: &RecipeTrace) -> Frame {
        let l = &t.linkage;
        Frame {
            source: [t.source.z().re, t.source.z().im],
            psi: t.psi,
            vectors: l.edges.map(|e| [e.u().re, e.u().im]),
            vertices: l.vertices.map(|v| [v.re, v.im]),
            type_index: l.type_index,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::ALPHA;

    #[test]
    fn regular_from_edges() {
        let edges = std::array::from_fn(|k| CirclePoint::from_angle(ALPHA * k as f64));
        let l = Linkage::from_edges(edges, None);
        assert!(l.closure_defect() < 1e-15);
        for len in l.edge_lengths() {
            assert!((len - 1.0).abs() < 1e-15);
        }
        assert_eq!(l.type_index, Some(0));
        let again = Linkage::from_vertices(l.vertices, None).unwrap();
        for k in 0..5 {
            assert!((again.edges[k].u() - l.edges[k].u()).norm() < 1e-15);
        }
    }

    #[test]
    fn rejects_unequal_edges() {
        let v = [C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 1.0), C64::new(0.0, 1.0), C64::new(0.0, 0.5)];
        assert!(matches!(Linkage::from_vertices(v, None), Err(LinkageError::NotEquilateral { edge: 3, .. })));
    }

    #[test]
    fn frame_schema() {
        let edges = std::array::from_fn(|k| CirclePoint::from_angle(ALPHA * k as f64));
        let l = Linkage::from_edges(edges, None);
        let f = Frame {
            source: [0.0, 0.0],
            psi: [0.0; 5],
            vectors: l.edges.map(|e| [e.u().re, e.u().im]),
            vertices: l.vertices.map(|v| [v.re, v.im]),
            type_index: l.type_index,
        };
        let v = serde_json::to_value(&f).unwrap();
        for key in ["source", "psi", "vectors", "vertices", "type"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let back: Frame = serde_json::from_value(v).unwrap();
        assert_eq!(back, f);
    }
}
