//! Poincaré disk primitives: points, geodesics and (anti-)Möbius maps.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type C64 = Complex64;

/// Angle between consecutive central mirrors of the pentagon, 2π/5.
pub const ALPHA: f64 = 2.0 * PI / 5.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("point {re}+{im}i is not inside the open unit disk")]
    OutsideDisk { re: f64, im: f64 },
    #[error("point is not finite")]
    NotFinite,
    #[error("cannot place the zero vector on the unit circle")]
    ZeroVector,
    #[error("degenerate Möbius matrix (determinant {0:e})")]
    DegenerateMap(f64),
    #[error("geodesic through coincident points")]
    CoincidentPoints,
}

/// Unit complex number `e^{iθ}`.
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// `e^{ikα}`, the k-th fifth root of unity.
pub fn omega(k: i64) -> C64 {
    cis(ALPHA * k.rem_euclid(5) as f64)
}

/// A point of the open unit disk.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct DiskPoint(C64);

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint(C64::new(0.0, 0.0));

    pub fn new(z: C64) -> Result<Self, GeometryError> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(GeometryError::NotFinite);
        }
        if z.norm_sqr() >= 1.0 {
            return Err(GeometryError::OutsideDisk { re: z.re, im: z.im });
        }
        Ok(DiskPoint(z))
    }

    pub fn from_xy(x: f64, y: f64) -> Result<Self, GeometryError> {
        Self::new(C64::new(x, y))
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self, GeometryError> {
        Self::new(C64::from_polar(r, theta))
    }

    pub fn z(self) -> C64 {
        self.0
    }

    pub fn norm(self) -> f64 {
        self.0.norm()
    }

    /// Multiplication by a unit complex number (a rotation about the origin).
    pub fn rotated(self, unit: C64) -> DiskPoint {
        DiskPoint(self.0 * unit)
    }
}

impl TryFrom<[f64; 2]> for DiskPoint {
    type Error = GeometryError;
    fn try_from(v: [f64; 2]) -> Result<Self, Self::Error> {
        DiskPoint::from_xy(v[0], v[1])
    }
}

impl From<DiskPoint> for [f64; 2] {
    fn from(p: DiskPoint) -> Self {
        [p.0.re, p.0.im]
    }
}

impl fmt::Display for DiskPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0.re, self.0.im)
    }
}

/// A point of the unit circle, renormalized on construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct CirclePoint(C64);

impl CirclePoint {
    pub fn new(u: C64) -> Result<Self, GeometryError> {
        let n = u.norm();
        if !n.is_finite() {
            return Err(GeometryError::NotFinite);
        }
        if n == 0.0 {
            return Err(GeometryError::ZeroVector);
        }
        Ok(CirclePoint(u / n))
    }

    pub fn from_angle(theta: f64) -> Self {
        CirclePoint(cis(theta))
    }

    pub fn u(self) -> C64 {
        self.0
    }

    pub fn angle(self) -> f64 {
        self.0.arg()
    }

    pub fn rotated(self, unit: C64) -> CirclePoint {
        CirclePoint::new(self.0 * unit).expect("rotation of a unit vector")
    }
}

impl TryFrom<[f64; 2]> for CirclePoint {
    type Error = GeometryError;
    fn try_from(v: [f64; 2]) -> Result<Self, Self::Error> {
        CirclePoint::new(C64::new(v[0], v[1]))
    }
}

impl From<CirclePoint> for [f64; 2] {
    fn from(p: CirclePoint) -> Self {
        [p.0.re, p.0.im]
    }
}

/// `z ↦ (a·w + b)/(c·w + d)` with `w = z` or `w = conj(z)`.
///
/// The matrix is kept at determinant 1. Composition follows the flag algebra
/// of the extended Möbius group: `f∘g` has matrix `M_f · (conj(M_g) if f conjugates
/// else M_g)` and is conjugating iff exactly one of `f`, `g` is.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusMap {
    a: C64,
    b: C64,
    c: C64,
    d: C64,
    conjugating: bool,
}

impl MobiusMap {
    pub fn new(a: C64, b: C64, c: C64, d: C64, conjugating: bool) -> Result<Self, GeometryError> {
        let det = a * d - b * c;
        let n = det.norm();
        if !n.is_finite() || n <= 1e-300 {
            return Err(GeometryError::DegenerateMap(n));
        }
        let s = det.sqrt();
        Ok(MobiusMap {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
            conjugating,
        })
    }

    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        MobiusMap { a: one, b: zero, c: zero, d: one, conjugating: false }
    }

    /// `μ_c(z) = (z − c)/(1 − conj(c)·z)`, sending `c` to the origin.
    pub fn disk_automorphism(c: C64) -> Self {
        Self::new(C64::new(1.0, 0.0), -c, -c.conj(), C64::new(1.0, 0.0), false)
            .expect("|c| < 1 gives det 1 - |c|^2 > 0")
    }

    /// Inverse of [`MobiusMap::disk_automorphism`]: sends the origin to `c`.
    pub fn translation_to(c: C64) -> Self {
        Self::disk_automorphism(-c)
    }

    pub fn rotation(theta: f64) -> Self {
        let h = cis(theta / 2.0);
        MobiusMap {
            a: h,
            b: C64::new(0.0, 0.0),
            c: C64::new(0.0, 0.0),
            d: h.conj(),
            conjugating: false,
        }
    }

    /// `z ↦ −e^{iθ}·conj(z)`: the mirror in the diameter at angle `(θ + π)/2`.
    pub fn central_mirror(theta: f64) -> Self {
        let e = -cis(theta);
        let h = e.sqrt();
        MobiusMap {
            a: h,
            b: C64::new(0.0, 0.0),
            c: C64::new(0.0, 0.0),
            d: h.conj(),
            conjugating: true,
        }
    }

    /// The central reflection `r_k(z) = −e^{ikα}·conj(z)`, or the juzu
    /// reflection `r̃_k(z) = −e^{2ikα}·conj(z)` when `doubled` is set.
    pub fn central_reflection(k: u8, doubled: bool) -> Self {
        assert!(k < 5, "central reflection index {k} out of range 0..4");
        let m = if doubled { 2 * k as i64 } else { k as i64 };
        Self::central_mirror(ALPHA * m as f64)
    }

    /// The 180° rotation about `center`.
    pub fn half_turn(center: C64) -> Self {
        let t = Self::translation_to(center);
        t * Self::rotation(PI) * t.inverse()
    }

    pub fn is_conjugating(&self) -> bool {
        self.conjugating
    }

    pub fn matrix(&self) -> [C64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn apply(&self, z: C64) -> C64 {
        let w = if self.conjugating { z.conj() } else { z };
        let den = self.c * w + self.d;
        debug_assert!(den.norm() > 0.0, "Möbius denominator vanished");
        (self.a * w + self.b) / den
    }

    pub fn apply_disk(&self, p: DiskPoint) -> DiskPoint {
        let z = self.apply(p.z());
        // Roundoff can push images of points very close to the boundary out.
        if z.norm_sqr() >= 1.0 {
            DiskPoint(z / (z.norm() * (1.0 + f64::EPSILON)))
        } else {
            DiskPoint(z)
        }
    }

    pub fn apply_circle(&self, p: CirclePoint) -> CirclePoint {
        CirclePoint::new(self.apply(p.u())).expect("disk maps keep the circle away from zero")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        let [a2, b2, c2, d2] = if self.conjugating {
            [other.a.conj(), other.b.conj(), other.c.conj(), other.d.conj()]
        } else {
            other.matrix()
        };
        let a = self.a * a2 + self.b * c2;
        let b = self.a * b2 + self.b * d2;
        let c = self.c * a2 + self.d * c2;
        let d = self.c * b2 + self.d * d2;
        MobiusMap::new(a, b, c, d, self.conjugating ^ other.conjugating)
            .expect("product of unimodular matrices is unimodular")
    }

    pub fn inverse(&self) -> MobiusMap {
        // Adjugate of a det-1 matrix.
        let (a, b, c, d) = (self.d, -self.b, -self.c, self.a);
        if self.conjugating {
            MobiusMap { a: a.conj(), b: b.conj(), c: c.conj(), d: d.conj(), conjugating: true }
        } else {
            MobiusMap { a, b, c, d, conjugating: false }
        }
    }

    /// Matrix equality up to the sign ambiguity of `PSL(2, C)`.
    pub fn approx_eq(&self, other: &MobiusMap, tol: f64) -> bool {
        if self.conjugating != other.conjugating {
            return false;
        }
        let close = |s: f64| {
            (self.a - other.a * s).norm() <= tol
                && (self.b - other.b * s).norm() <= tol
                && (self.c - other.c * s).norm() <= tol
                && (self.d - other.d * s).norm() <= tol
        };
        close(1.0) || close(-1.0)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&MobiusMap::identity(), tol)
    }
}

impl Mul for MobiusMap {
    type Output = MobiusMap;
    fn mul(self, rhs: MobiusMap) -> MobiusMap {
        self.compose(&rhs)
    }
}

/// A hyperbolic line of the Poincaré disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Geodesic {
    /// Circular arc orthogonal to the unit circle: `|center|² = radius² + 1`.
    Arc { center: C64, radius: f64 },
    /// Diameter through the origin with unit `direction`.
    Diameter { direction: C64 },
}

impl Geodesic {
    /// The hyperbolic line through two distinct disk points.
    pub fn through(p: C64, q: C64) -> Result<Geodesic, GeometryError> {
        if (p - q).norm() < 1e-15 {
            return Err(GeometryError::CoincidentPoints);
        }
        // Collinear with the origin: a diameter.
        let cross = p.re * q.im - p.im * q.re;
        let scale = p.norm().max(q.norm());
        if cross.abs() <= 1e-14 * scale * scale {
            let d = if p.norm() >= q.norm() { p } else { q };
            return Ok(Geodesic::Diameter { direction: d / d.norm() });
        }
        // The circle through p orthogonal to the unit circle also passes
        // through the inverse point 1/conj(p); solve for its center c from
        // |c|² − 2 Re(conj(c) z) + |z|² = r² = |c|² − 1 at z = p, q.
        // => Re(conj(c) z) = (|z|² + 1)/2.
        let rp = (p.norm_sqr() + 1.0) / 2.0;
        let rq = (q.norm_sqr() + 1.0) / 2.0;
        let det = p.re * q.im - p.im * q.re;
        let cx = (rp * q.im - rq * p.im) / det;
        let cy = (p.re * rq - q.re * rp) / det;
        let center = C64::new(cx, cy);
        let radius = (center.norm_sqr() - 1.0).sqrt();
        Ok(Geodesic::Arc { center, radius })
    }

    /// Reflection (circle inversion, or Euclidean mirror for a diameter).
    pub fn reflection(&self) -> MobiusMap {
        match *self {
            Geodesic::Arc { center, .. } => {
                // z ↦ C + r²/conj(z − C) = (C·z̄ − 1)/(z̄ − C̄) using |C|² − r² = 1.
                MobiusMap::new(center, C64::new(-1.0, 0.0), C64::new(1.0, 0.0), -center.conj(), true)
                    .expect("orthogonal circle inversion is non-degenerate")
            }
            Geodesic::Diameter { direction } => {
                MobiusMap::central_mirror((-(direction * direction)).arg())
            }
        }
    }

    pub fn reflect(&self, p: DiskPoint) -> DiskPoint {
        match *self {
            Geodesic::Arc { center, radius } => {
                let z = p.z();
                let w = center + radius * radius / (z - center).conj();
                DiskPoint::new(w).unwrap_or_else(|_| self.reflection().apply_disk(p))
            }
            Geodesic::Diameter { direction } => DiskPoint(direction * direction * p.z().conj()),
        }
    }

    /// Signed side indicator: zero on the line, opposite signs on the two sides.
    ///
    /// For an arc this is the power of the point with respect to the supporting circle
    /// (negative inside the circle).
    pub fn side(&self, z: C64) -> f64 {
        match *self {
            Geodesic::Arc { center, radius } => (z - center).norm_sqr() - radius * radius,
            Geodesic::Diameter { direction } => direction.re * z.im - direction.im * z.re,
        }
    }

    /// Euclidean distance from `z` to the supporting circle or line.
    pub fn euclidean_distance(&self, z: C64) -> f64 {
        match *self {
            Geodesic::Arc { center, radius } => ((z - center).norm() - radius).abs(),
            Geodesic::Diameter { .. } => self.side(z).abs(),
        }
    }

    /// Unit tangent at a point on the line (orientation is arbitrary but fixed).
    pub fn tangent_at(&self, z: C64) -> C64 {
        match *self {
            Geodesic::Arc { center, .. } => {
                let t = C64::i() * (z - center);
                t / t.norm()
            }
            Geodesic::Diameter { direction } => direction,
        }
    }

    /// `|center|² − radius² − 1` for arcs; zero for diameters.
    pub fn orthogonality_defect(&self) -> f64 {
        match *self {
            Geodesic::Arc { center, radius } => center.norm_sqr() - radius * radius - 1.0,
            Geodesic::Diameter { .. } => 0.0,
        }
    }
}

/// Angle in `[0, π/2]` between two geodesics meeting at `z`.
pub fn intersection_angle(g: &Geodesic, h: &Geodesic, z: C64) -> f64 {
    let t1 = g.tangent_at(z);
    let t2 = h.tangent_at(z);
    let cos = (t1.re * t2.re + t1.im * t2.im).abs().min(1.0);
    cos.acos()
}

/// Poincaré-metric distance `2·artanh(|p − q|/|1 − conj(p)·q|)`.
pub fn hyperbolic_distance(p: DiskPoint, q: DiskPoint) -> f64 {
    let (p, q) = (p.z(), q.z());
    let num = (p - q).norm();
    let den = (C64::new(1.0, 0.0) - p.conj() * q).norm();
    let x = (num / den).min(1.0 - f64::EPSILON);
    2.0 * x.atanh()
}

pub fn reflect_in_geodesic(g: &Geodesic, p: DiskPoint) -> DiskPoint {
    g.reflect(p)
}

/// Point at fraction `t` of the hyperbolic segment from `p` to `q`.
pub fn geodesic_lerp(p: C64, q: C64, t: f64) -> C64 {
    let w = (q - p) / (C64::new(1.0, 0.0) - p.conj() * q);
    let r = w.norm();
    if r == 0.0 {
        return p;
    }
    let s = (t * r.atanh()).tanh();
    let x = w * (s / r);
    (x + p) / (C64::new(1.0, 0.0) + p.conj() * x)
}

/// Hyperbolic midpoint of `p` and `q`.
pub fn hyperbolic_midpoint(p: C64, q: C64) -> C64 {
    geodesic_lerp(p, q, 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn identity_fixes_points() {
        let z = c(0.3, 0.1);
        assert!(close(MobiusMap::identity().apply(z), z, 1e-15));
    }

    #[test]
    fn r0_negates_conjugate() {
        let r0 = MobiusMap::central_reflection(0, false);
        assert!(close(r0.apply(c(0.5, 0.0)), c(-0.5, 0.0), 1e-15));
        assert!(close(r0.apply(c(0.2, 0.3)), c(-0.2, 0.3), 1e-15));
        assert!(r0.is_conjugating());
    }

    #[test]
    fn disk_automorphism_sends_c_to_origin() {
        let mu = MobiusMap::disk_automorphism(c(0.4, 0.0));
        assert!(close(mu.apply(c(0.4, 0.0)), c(0.0, 0.0), 1e-15));
        // (z − c)/(1 − c̄ z) at z = 0 is −c.
        assert!(close(mu.apply(c(0.0, 0.0)), c(-0.4, 0.0), 1e-15));
    }

    #[test]
    fn doubled_reflection_agrees_at_k0() {
        let a = MobiusMap::central_reflection(0, false);
        let b = MobiusMap::central_reflection(0, true);
        assert!(a.approx_eq(&b, 1e-15));
    }

    #[test]
    fn central_reflections_are_involutions() {
        let z = c(0.2, 0.3);
        for k in 0..5 {
            for doubled in [false, true] {
                let r = MobiusMap::central_reflection(k, doubled);
                assert!(close(r.apply(r.apply(z)), z, 1e-12));
                assert!((r * r).is_identity(1e-12));
            }
        }
    }

    #[test]
    fn central_reflection_formula() {
        let z = c(0.17, -0.41);
        for k in 0..5u8 {
            let r = MobiusMap::central_reflection(k, false);
            let expect = -omega(k as i64) * z.conj();
            assert!(close(r.apply(z), expect, 1e-14));
            let rt = MobiusMap::central_reflection(k, true);
            let expect = -omega(2 * k as i64) * z.conj();
            assert!(close(rt.apply(z), expect, 1e-14));
        }
    }

    #[test]
    fn distance_examples() {
        let o = DiskPoint::ORIGIN;
        assert_eq!(hyperbolic_distance(o, o), 0.0);
        let p = DiskPoint::from_xy(0.5f64.tanh(), 0.0).unwrap();
        assert!((hyperbolic_distance(o, p) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn disk_point_rejects_boundary() {
        assert!(DiskPoint::from_xy(1.0, 0.0).is_err());
        assert!(DiskPoint::from_xy(0.6, 0.8).is_err());
        assert!(DiskPoint::from_xy(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn circle_point_renormalizes() {
        let u = CirclePoint::new(c(3.0, 4.0)).unwrap();
        assert!((u.u().norm() - 1.0).abs() <= 1e-15);
        assert!(CirclePoint::new(c(0.0, 0.0)).is_err());
    }

    #[test]
    fn inversion_of_origin() {
        // Circle with center 2 and radius √3 is orthogonal to the unit circle.
        // Inversion of 0: C + r²/conj(0 − C) = 2 + 3/(−2) = 1/2.
        let g = Geodesic::Arc { center: c(2.0, 0.0), radius: 3f64.sqrt() };
        let img = g.reflect(DiskPoint::ORIGIN);
        assert!(close(img.z(), c(0.5, 0.0), 1e-15));
        assert!(close(g.reflection().apply(c(0.0, 0.0)), c(0.5, 0.0), 1e-15));
    }

    #[test]
    fn geodesic_through_points_is_orthogonal() {
        let g = Geodesic::through(c(0.1, 0.4), c(-0.3, 0.2)).unwrap();
        assert!(g.orthogonality_defect().abs() < 1e-12);
        assert!(g.side(c(0.1, 0.4)).abs() < 1e-12);
        assert!(g.side(c(-0.3, 0.2)).abs() < 1e-12);
        let d = Geodesic::through(c(0.1, 0.1), c(-0.2, -0.2)).unwrap();
        assert!(matches!(d, Geodesic::Diameter { .. }));
    }

    #[test]
    fn reflection_fixes_line_and_is_involution() {
        let a = c(0.1, 0.4);
        let b = c(-0.3, 0.2);
        let g = Geodesic::through(a, b).unwrap();
        let on = DiskPoint::new(a).unwrap();
        assert!(close(g.reflect(on).z(), a, 1e-12));
        let p = DiskPoint::from_xy(0.05, -0.3).unwrap();
        assert!(close(g.reflect(g.reflect(p)).z(), p.z(), 1e-12));
        assert!(close(g.reflection().apply(p.z()), g.reflect(p).z(), 1e-12));
    }

    #[test]
    fn inverse_of_conjugating_map() {
        let m = MobiusMap::disk_automorphism(c(0.2, -0.1)) * MobiusMap::central_reflection(2, false);
        let z = c(0.3, 0.3);
        assert!(close(m.inverse().apply(m.apply(z)), z, 1e-13));
        assert!((m * m.inverse()).is_identity(1e-13));
    }

    #[test]
    fn half_turn_fixes_center() {
        let n = c(-0.2, 0.1);
        let h = MobiusMap::half_turn(n);
        assert!(close(h.apply(n), n, 1e-14));
        let z = c(0.3, -0.2);
        assert!(close(h.apply(h.apply(z)), z, 1e-13));
        let zd = DiskPoint::new(z).unwrap();
        let nd = DiskPoint::new(n).unwrap();
        let hd = h.apply_disk(zd);
        assert!((hyperbolic_distance(nd, zd) - hyperbolic_distance(nd, hd)).abs() < 1e-12);
    }

    #[test]
    fn geodesic_lerp_midpoint_is_equidistant() {
        let p = c(0.3, -0.5);
        let q = c(-0.6, 0.2);
        let m = hyperbolic_midpoint(p, q);
        let d = |a: C64, b: C64| {
            hyperbolic_distance(DiskPoint::new(a).unwrap(), DiskPoint::new(b).unwrap())
        };
        assert!((d(p, m) - d(m, q)).abs() < 1e-12);
        assert!((d(p, m) + d(m, q) - d(p, q)).abs() < 1e-12);
    }

    fn disk_point() -> impl Strategy<Value = C64> {
        (0.0..0.95f64, 0.0..(2.0 * PI)).prop_map(|(r, t)| C64::from_polar(r, t))
    }

    fn any_map() -> impl Strategy<Value = MobiusMap> {
        (disk_point(), 0.0..(2.0 * PI), any::<bool>()).prop_map(|(c, t, flip)| {
            let m = MobiusMap::disk_automorphism(c) * MobiusMap::rotation(t);
            if flip {
                m * MobiusMap::central_reflection(1, false)
            } else {
                m
            }
        })
    }

    proptest! {
        #[test]
        fn distance_is_isometry_invariant(p in disk_point(), q in disk_point(), m in any_map()) {
            let (p, q) = (DiskPoint::new(p).unwrap(), DiskPoint::new(q).unwrap());
            let d0 = hyperbolic_distance(p, q);
            let d1 = hyperbolic_distance(m.apply_disk(p), m.apply_disk(q));
            prop_assert!((d0 - d1).abs() <= 1e-8 * (1.0 + d0));
            prop_assert!((d0 - hyperbolic_distance(q, p)).abs() <= 1e-12 * (1.0 + d0));
        }

        #[test]
        fn composition_matches_pointwise(f in any_map(), g in any_map(), z in disk_point()) {
            let lhs = (f * g).apply(z);
            let rhs = f.apply(g.apply(z));
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
        }

        #[test]
        fn composition_is_associative(f in any_map(), g in any_map(), h in any_map(), z in disk_point()) {
            let a = ((f * g) * h).apply(z);
            let b = (f * (g * h)).apply(z);
            prop_assert!((a - b).norm() <= 1e-12);
        }

        #[test]
        fn maps_preserve_disk_and_circle(m in any_map(), t in 0.0..(2.0 * PI)) {
            let [a, b, cc, d] = m.matrix();
            prop_assert!(((a * d - b * cc).norm() - 1.0).abs() < 1e-12);
            for k in 0..8 {
                let u = cis(t + k as f64 * PI / 4.0);
                prop_assert!((m.apply(u).norm() - 1.0).abs() <= 1e-10);
                let z = u * 0.7;
                prop_assert!(m.apply(z).norm() < 1.0);
            }
        }

        #[test]
        fn two_conjugating_maps_compose_to_holomorphic(j in 0u8..5, k in 0u8..5) {
            let m = MobiusMap::central_reflection(j, false) * MobiusMap::central_reflection(k, true);
            prop_assert!(!m.is_conjugating());
        }
    }
}
