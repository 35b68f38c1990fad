//! End-to-end checks through the public API: field, recipe, tiling, cache.

use std::sync::OnceLock;

use pentamap_core::combinatorics::{classify, DEFAULT_TOL};
use pentamap_core::conformal::field::solve_on_grid;
use pentamap_core::conformal::{build_quad, HarmonicField};
use pentamap_core::hyperbolic::{omega, DiskPoint};
use pentamap_core::linkage::{evaluate, Frame};
use pentamap_core::tiling::{base_edge_midpoint, base_pentagon, generate_tiling, predicted_face_type, TilingBound};

fn field() -> &'static HarmonicField {
    static F: OnceLock<HarmonicField> = OnceLock::new();
    F.get_or_init(|| solve_on_grid(&build_quad(), 48, 0.015).unwrap())
}

#[test]
fn origin_gives_the_regular_pentagon() {
    let t = evaluate(DiskPoint::ORIGIN, field()).unwrap();
    for k in 0..5 {
        assert!((t.linkage.edges[k].u() - omega(k as i64)).norm() < 1e-12);
    }
    assert!(t.linkage.closure_defect() < 1e-12);
    assert_eq!(t.linkage.type_index, Some(0));
}

#[test]
fn edge_midpoint_pairs_labels_two_and_three() {
    let t = evaluate(base_edge_midpoint(), field()).unwrap();
    let ty = classify(&t.juzu, DEFAULT_TOL).unwrap();
    assert_eq!(ty.degeneracy, 1);
    assert_eq!(ty.pairs(), vec![(2, 3)]);
}

#[test]
fn pentagon_vertices_give_two_pairs_never_a_triple() {
    for v in base_pentagon() {
        let t = evaluate(v, field()).unwrap();
        let ty = classify(&t.juzu, DEFAULT_TOL).unwrap();
        assert_eq!(ty.degeneracy, 2);
        assert_eq!(ty.pairs().len(), 2);
    }
}

#[test]
fn face_interiors_carry_the_predicted_type() {
    let tiling = generate_tiling(TilingBound::Radius(0.9)).unwrap();
    for f in tiling.faces() {
        // A point off the face's symmetry axes, inside the face.
        let p = DiskPoint::new(f.transform.apply(base_pentagon()[0].z() * 0.3 + base_pentagon()[1].z() * 0.1)).unwrap();
        let t = evaluate(p, field()).unwrap();
        let got = classify(&t.juzu, DEFAULT_TOL).unwrap();
        assert_eq!(got.index, predicted_face_type(&f.word).index, "face {}", f.word);
        assert_eq!(got.degeneracy, 0);
    }
}

#[test]
fn cached_field_reproduces_evaluations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("field.bin");
    field().save(&path).unwrap();
    let loaded = HarmonicField::load(&path, &build_quad()).unwrap();
    for p in [(0.1, 0.2), (-0.5, 0.3), (0.7, -0.6)] {
        let p = DiskPoint::from_xy(p.0, p.1).unwrap();
        let a = Frame::from(&evaluate(p, field()).unwrap());
        let b = Frame::from(&evaluate(p, &loaded).unwrap());
        assert_eq!(a, b);
    }
}

#[test]
fn frame_schema() {
    let t = evaluate(DiskPoint::from_xy(0.2, -0.1).unwrap(), field()).unwrap();
    let v = serde_json::to_value(Frame::from(&t)).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys.len(), 5);
    for k in ["source", "psi", "vectors", "vertices", "type"] {
        assert!(keys.contains(&k));
    }
}

#[test]
fn central_block_has_one_face_per_open_cell() {
    let tiling = generate_tiling(TilingBound::Radius(0.95)).unwrap();
    let block = tiling.central_block();
    assert_eq!(block.len(), 24);
    assert_eq!(block[0], 0);
    let mut types: Vec<usize> = block.iter().map(|&f| predicted_face_type(&tiling.faces()[f].word).index).collect();
    types.sort();
    assert_eq!(types, (0..24).collect::<Vec<_>>());
    // Too small a disk misses some cells.
    assert!(generate_tiling(TilingBound::Radius(0.9)).unwrap().central_block().len() < 24);
}
