//! The quadrilateral `Q` obtained by cutting the central pentagon along its
//! symmetry axis and regluing the halves.
//!
//! The left half of the central pentagon has corners `A0` (top vertex), `B1`, `B2`
//! and `M` (midpoint of the bottom side). Gluing it to its image under the half
//! turn about the midpoint `N` of `B1B2` yields `Q` with corners
//! `M, A0, R(M), R(A0)` and corner angles 90°, 45°, 90°, 45°. Side 0 (`M → A0`)
//! lies on the imaginary axis and carries `u = 0`; side 2 is its half-turn image
//! and carries `u = 1`; sides 1 and 3 lie on pentagon sides and are free.

use std::f64::consts::PI;

use sha2::{Digest, Sha256};

use crate::hyperbolic::{
    geodesic_lerp, hyperbolic_midpoint, intersection_angle, DiskPoint, Geodesic, MobiusMap, C64,
};
use crate::tiling::{base_edge_midpoint, base_pentagon};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideKind {
    /// `u = 0`.
    Zero,
    /// `u = 1`.
    One,
    /// Natural boundary condition.
    Free,
}

#[derive(Clone, Debug)]
pub struct QuadDomain {
    corners: [DiskPoint; 4],
    sides: [Geodesic; 4],
    reflections: [MobiusMap; 4],
    center: DiskPoint,
    half_turn: MobiusMap,
}

pub const SIDE_KINDS: [SideKind; 4] = [SideKind::Zero, SideKind::Free, SideKind::One, SideKind::Free];

pub fn build_quad() -> QuadDomain {
    let v = base_pentagon();
    let (a0, b1, b2) = (v[0].z(), v[1].z(), v[2].z());
    let m = base_edge_midpoint().z();
    let n = hyperbolic_midpoint(b1, b2);
    let r = MobiusMap::half_turn(n);
    let corners = [m, a0, r.apply(m), r.apply(a0)];
    QuadDomain::from_corners(corners.map(|z| DiskPoint::new(z).expect("inside disk")))
}

/// The same quadrilateral moved so that one pentagon side lies on the real axis.
pub fn build_quad_real_axis_placement() -> QuadDomain {
    let q = build_quad();
    q.transformed(&MobiusMap::disk_automorphism(base_edge_midpoint().z()))
}

impl QuadDomain {
    /// Corners in boundary order; side `i` runs from corner `i` to corner `i+1`.
    /// Corner 0 must be the 90° corner where the `u = 0` side meets a free side.
    pub fn from_corners(corners: [DiskPoint; 4]) -> QuadDomain {
        let sides: [Geodesic; 4] = std::array::from_fn(|i| {
            Geodesic::through(corners[i].z(), corners[(i + 1) % 4].z()).expect("distinct corners")
        });
        let reflections = sides.map(|g| g.reflection());
        let center = hyperbolic_midpoint(corners[0].z(), corners[2].z());
        QuadDomain {
            corners,
            sides,
            reflections,
            center: DiskPoint::new(center).expect("inside disk"),
            half_turn: MobiusMap::half_turn(center),
        }
    }

    /// Image of the quadrilateral under a disk isometry.
    pub fn transformed(&self, m: &MobiusMap) -> QuadDomain {
        QuadDomain::from_corners(self.corners.map(|c| m.apply_disk(c)))
    }

    pub fn corners(&self) -> &[DiskPoint; 4] {
        &self.corners
    }

    pub fn sides(&self) -> &[Geodesic; 4] {
        &self.sides
    }

    pub fn side_reflection(&self, i: usize) -> &MobiusMap {
        &self.reflections[i]
    }

    pub fn side_kind(&self, i: usize) -> SideKind {
        SIDE_KINDS[i]
    }

    /// Fixed point of the half turn exchanging the two Dirichlet sides.
    pub fn center(&self) -> DiskPoint {
        self.center
    }

    pub fn half_turn(&self) -> &MobiusMap {
        &self.half_turn
    }

    /// Interior angles at the corners, in radians.
    pub fn corner_angles(&self) -> [f64; 4] {
        std::array::from_fn(|i| {
            let prev = &self.sides[(i + 3) % 4];
            let next = &self.sides[i];
            let z = self.corners[i].z();
            let a = intersection_angle(prev, next, z);
            // The acute/obtuse ambiguity of line angles: decide from the boundary
            // directions at the corner.
            let t_in = geodesic_lerp(z, self.corners[(i + 3) % 4].z(), 1e-6) - z;
            let t_out = geodesic_lerp(z, self.corners[(i + 1) % 4].z(), 1e-6) - z;
            let inner = (t_out / t_in).arg().abs();
            if inner > PI / 2.0 {
                PI - a
            } else {
                a
            }
        })
    }

    /// Hyperbolic area by Gauss–Bonnet: `2π − Σ angles`.
    pub fn area(&self) -> f64 {
        2.0 * PI - self.corner_angles().iter().sum::<f64>()
    }

    /// Whether `z` lies on the inner side of every supporting line, up to `tol`
    /// in Euclidean distance.
    pub fn contains(&self, z: C64, tol: f64) -> bool {
        self.sides.iter().all(|g| {
            let inside = g.side(z) * g.side(self.center.z()) >= 0.0;
            inside || g.euclidean_distance(z) <= tol
        })
    }

    /// Euclidean distance from `z` to the closed quadrilateral, zero inside.
    pub fn distance_outside(&self, z: C64) -> f64 {
        self.sides
            .iter()
            .filter(|g| g.side(z) * g.side(self.center.z()) < 0.0)
            .map(|g| g.euclidean_distance(z))
            .fold(0.0, f64::max)
    }

    /// Transfinite (Coons) parametrization of `Q` over the unit square. `t = 0` is
    /// side 0 and `t = 1` side 2; `s` runs from the free side 3 to the free side 1.
    pub fn coons(&self, s: f64, t: f64) -> C64 {
        let [c0, c1, c2, c3] = self.corners.map(|c| c.z());
        let bottom = geodesic_lerp(c0, c1, s);
        let top = geodesic_lerp(c3, c2, s);
        let left = geodesic_lerp(c0, c3, t);
        let right = geodesic_lerp(c1, c2, t);
        bottom * (1.0 - t) + top * t + left * (1.0 - s) + right * s
            - (c0 * ((1.0 - s) * (1.0 - t)) + c1 * (s * (1.0 - t)) + c3 * ((1.0 - s) * t) + c2 * (s * t))
    }

    /// 64-bit digest of the corner coordinates.
    pub fn geometry_hash(&self) -> u64 {
        let mut h = Sha256::new();
        for c in &self.corners {
            h.update(c.z().re.to_le_bytes());
            h.update(c.z().im.to_le_bytes());
        }
        let digest = h.finalize();
        u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
    }
}
