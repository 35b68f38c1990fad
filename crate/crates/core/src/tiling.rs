//! The (5,4)-tiling of the Poincaré disk generated by the (2,4,5) triangle group.
//!
//! The central pentagon has a vertex on the positive imaginary axis. The
//! generators are the central mirrors `r_k(z) = −e^{ikα}·conj(z)` and `s`,
//! the reflection in the line supporting the bottom side of the central
//! pentagon (the side whose midpoint lies on the negative imaginary axis).
//! `s`, `r_0`, `r_1` bound the triangle with angles π/2 (at the side midpoint),
//! π/4 (at the pentagon vertex on the ray at −54°) and π/5 (at the origin).

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{enumerate_types, relabel_type, CombinatorialType, Juzu};
use crate::hyperbolic::{hyperbolic_distance, omega, DiskPoint, Geodesic, MobiusMap, C64};

/// Hard cap on the number of generated faces.
pub const MAX_FACES: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TilingError {
    #[error("tiling bound must be positive")]
    InvalidBound,
    #[error("tiling bound too large: more than {cap} faces would be generated")]
    TooLarge { cap: usize },
    #[error("point {0} lies outside the generated region")]
    OutOfRange(DiskPoint),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    S,
    R(u8),
}

impl Generator {
    pub fn all() -> [Generator; 6] {
        [
            Generator::S,
            Generator::R(0),
            Generator::R(1),
            Generator::R(2),
            Generator::R(3),
            Generator::R(4),
        ]
    }

    pub fn map(self) -> MobiusMap {
        match self {
            Generator::S => *s_map(),
            Generator::R(k) => MobiusMap::central_reflection(k, false),
        }
    }

    /// Action on the exponent vector of a regular juzu (entry `j` is `−i·ω^{e_j}`).
    pub fn act_on_exponents(self, e: [u8; 5]) -> [u8; 5] {
        match self {
            Generator::S => {
                let mut out = e;
                out.swap(2, 3);
                out
            }
            Generator::R(k) => {
                let k = k as i64;
                std::array::from_fn(|j| {
                    let src = (2 * k - j as i64).rem_euclid(5) as usize;
                    (2 * k - e[src] as i64).rem_euclid(5) as u8
                })
            }
        }
    }

    /// The induced action on juzus: `s` swaps entries 2 and 3; `r_k` permutes the
    /// entries by `j ↦ 2k − j` and mirrors them in `r̃_k(z) = −e^{2ikα}·conj(z)`.
    pub fn act_on_juzu(self, juzu: &Juzu) -> Juzu {
        let p = juzu.points();
        match self {
            Generator::S => {
                let mut out = *p;
                out.swap(2, 3);
                Juzu::from_points_unchecked(out)
            }
            Generator::R(k) => {
                let mirror = MobiusMap::central_reflection(k, true);
                let k = k as i64;
                let out = std::array::from_fn(|j| {
                    let src = (2 * k - j as i64).rem_euclid(5) as usize;
                    mirror.apply_circle(p[src])
                });
                Juzu::from_points_unchecked(out)
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::S => write!(f, "s"),
            Generator::R(k) => write!(f, "r{k}"),
        }
    }
}

/// A group word `g_1 g_2 … g_n`, read as the map `g_1 ∘ g_2 ∘ … ∘ g_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn extended(&self, tail: &[Generator]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(tail);
        Word(v)
    }

    pub fn transform(&self) -> MobiusMap {
        self.0
            .iter()
            .fold(MobiusMap::identity(), |acc, g| acc * g.map())
    }

    /// Number of type-A (`s`) letters mod 2: the checkerboard color of a face.
    pub fn parity(&self) -> u8 {
        (self.0.iter().filter(|g| **g == Generator::S).count() % 2) as u8
    }

    /// Order by length, then lexicographically with `s < r0 < … < r4`.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    Face,
    Edge,
    Vertex,
}

#[derive(Clone, Debug)]
pub struct TileAddress {
    pub word: Word,
    pub transform: MobiusMap,
    pub kind: CellKind,
    pub center: DiskPoint,
}

impl TileAddress {
    pub fn parity(&self) -> u8 {
        self.word.parity()
    }
}

/// Euclidean radius of the central pentagon's vertices, `tanh(R/2)` with
/// `cosh R = cot(π/5)·cot(π/4)`.
pub fn vertex_radius() -> f64 {
    let r = (1.0 / (PI / 5.0).tan() / (PI / 4.0).tan()).acosh();
    (r / 2.0).tanh()
}

/// Euclidean radius of the central pentagon's side midpoints, `tanh(r/2)` with
/// `cosh r = cos(π/4)/sin(π/5)`.
pub fn midpoint_radius() -> f64 {
    let r = ((PI / 4.0).cos() / (PI / 5.0).sin()).acosh();
    (r / 2.0).tanh()
}

/// Vertices of the central right-angled pentagon, counterclockwise from the one
/// on the positive imaginary axis.
pub fn base_pentagon() -> [DiskPoint; 5] {
    let rv = vertex_radius();
    std::array::from_fn(|j| {
        DiskPoint::from_polar(rv, PI / 2.0 + 2.0 * PI * j as f64 / 5.0).expect("inside disk")
    })
}

/// Midpoint of the central pentagon's side supporting `s`.
pub fn base_edge_midpoint() -> DiskPoint {
    DiskPoint::from_xy(0.0, -midpoint_radius()).expect("inside disk")
}

/// The vertex where the mirrors of `s` and `r_1` meet (ray at −54°).
pub fn base_vertex() -> DiskPoint {
    DiskPoint::from_polar(vertex_radius(), -0.3 * PI).expect("inside disk")
}

fn s_map() -> &'static MobiusMap {
    static S: OnceLock<MobiusMap> = OnceLock::new();
    S.get_or_init(|| s_geodesic().reflection())
}

/// The line supporting the bottom side of the central pentagon.
pub fn s_geodesic() -> Geodesic {
    let v = base_pentagon();
    Geodesic::through(v[2].z(), v[3].z()).expect("distinct vertices")
}

/// Reflection in side `k` of the central pentagon: `s` for `k = 0`, else `r_k s r_k`.
/// Side `k` has its midpoint at angle `−90° + 72°·k`.
pub fn side_word(k: usize) -> Vec<Generator> {
    if k == 0 {
        vec![Generator::S]
    } else {
        vec![Generator::R(k as u8), Generator::S, Generator::R(k as u8)]
    }
}

/// Supporting line of side `k` (same indexing as [`side_word`]).
pub fn side_geodesic(k: usize) -> Geodesic {
    let v = base_pentagon();
    // Side k has midpoint at −90° + 72k; its endpoints are vertices at −126° + 72k and −54° + 72k,
    // which are base_pentagon indices (2 + k) and (3 + k).
    Geodesic::through(v[(2 + k) % 5].z(), v[(3 + k) % 5].z()).expect("distinct vertices")
}

fn central_sides() -> &'static [(Geodesic, MobiusMap); 5] {
    static SIDES: OnceLock<[(Geodesic, MobiusMap); 5]> = OnceLock::new();
    SIDES.get_or_init(|| {
        std::array::from_fn(|k| {
            let g = side_geodesic(k);
            (g, g.reflection())
        })
    })
}

/// Letters appended to a face word to reach the face across side `k`.
fn neighbor_tail(k: usize) -> Vec<Generator> {
    if k == 0 {
        vec![Generator::S]
    } else {
        vec![Generator::R(k as u8), Generator::S]
    }
}

/// Letters appended to a face word to address side `k` of that face.
fn edge_tail(k: usize) -> Vec<Generator> {
    if k == 0 {
        Vec::new()
    } else {
        vec![Generator::R(k as u8)]
    }
}

/// Letters appended to a face word to address its vertex at angle `−54° + 72°·j`.
fn vertex_tail(j: usize) -> Vec<Generator> {
    match j {
        0 => Vec::new(),
        4 => vec![Generator::R(0)],
        j => vec![Generator::R(j as u8 + 1)],
    }
}

/// Exact label permutation of a cell: entry `j` of the juzu at the cell's
/// reference point is `−i·ω^{τ(j)}`, where `τ` is returned.
pub fn cell_label_permutation(word: &Word) -> [u8; 5] {
    word.0
        .iter()
        .rev()
        .fold([0, 1, 2, 3, 4], |e, g| g.act_on_exponents(e))
}

/// Combinatorial type of the open face addressed by `word`. Label `j` sits where
/// label `τ(j)` sits in the central face, so the central type is relabeled by `τ⁻¹`.
pub fn predicted_face_type(word: &Word) -> &'static CombinatorialType {
    let tau = cell_label_permutation(word);
    let mut inverse = [0u8; 5];
    for (j, &t) in tau.iter().enumerate() {
        inverse[t as usize] = j as u8;
    }
    relabel_type(&enumerate_types()[0], inverse)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TilingBound {
    MaxWord(usize),
    /// Euclidean radius in the disk.
    Radius(f64),
}

/// Spatial hash for deduplicating points.
#[derive(Default, Clone, Debug)]
struct PointIndex {
    cells: HashMap<(i64, i64), Vec<usize>>,
}

const INDEX_STEP: f64 = 1e-7;
const MATCH_TOL: f64 = 1e-8;

impl PointIndex {
    fn key(z: C64) -> (i64, i64) {
        ((z.re / INDEX_STEP).floor() as i64, (z.im / INDEX_STEP).floor() as i64)
    }

    fn find(&self, z: C64, points: &[TileAddress]) -> Option<usize> {
        let (kx, ky) = Self::key(z);
        let mut best: Option<(f64, usize)> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.cells.get(&(kx + dx, ky + dy)) {
                    for &i in ids {
                        let d = (points[i].center.z() - z).norm();
                        if d <= MATCH_TOL && best.is_none_or(|(bd, _)| d < bd) {
                            best = Some((d, i));
                        }
                    }
                }
            }
        }
        best.map(|(_, i)| i)
    }

    fn insert(&mut self, z: C64, id: usize) {
        self.cells.entry(Self::key(z)).or_default().push(id);
    }
}

#[derive(Clone, Debug)]
pub struct Tiling {
    bound: TilingBound,
    faces: Vec<TileAddress>,
    edges: Vec<TileAddress>,
    vertices: Vec<TileAddress>,
    face_index: PointIndex,
    edge_index: PointIndex,
    vertex_index: PointIndex,
}

/// Which of the generated cells contains a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Location {
    /// Index into [`Tiling::faces`] of the containing face (smallest address on ties).
    pub face: usize,
    /// Barycentric triangle `0..10` of that face, counted counterclockwise from the
    /// triangle bounded by `s`, `r_0`, `r_1` in the face's own frame.
    pub triangle: u8,
    /// Lowest-dimensional cell whose closure contains the point.
    pub cell: CellRef,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellRef {
    pub kind: CellKind,
    pub index: usize,
}

#[derive(PartialEq, Eq)]
struct Pending {
    word: Word,
}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap is a max-heap; invert for shortlex-min first.
        other.word.shortlex_cmp(&self.word)
    }
}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Circumradius of a tile in hyperbolic length.
fn tile_circumradius() -> f64 {
    hyperbolic_distance(DiskPoint::ORIGIN, base_pentagon()[0])
}

pub fn generate_tiling(bound: TilingBound) -> Result<Tiling, TilingError> {
    let (max_word, radius) = match bound {
        TilingBound::MaxWord(n) => {
            if n == 0 {
                return Err(TilingError::InvalidBound);
            }
            (Some(n), None)
        }
        TilingBound::Radius(r) => {
            if r.is_nan() || r <= 0.0 {
                return Err(TilingError::InvalidBound);
            }
            if r >= 1.0 {
                return Err(TilingError::TooLarge { cap: MAX_FACES });
            }
            (None, Some(r))
        }
    };
    // Faces whose center lies within `radius` are all reachable through faces
    // whose center is within one tile diameter of the bounding disk.
    let explore = radius.map(|r| {
        let d = 2.0 * r.atanh();
        d + 2.0 * tile_circumradius() + 1e-9
    });

    let mut faces: Vec<TileAddress> = Vec::new();
    let mut face_index = PointIndex::default();
    let mut keep: Vec<bool> = Vec::new();
    let mut heap = BinaryHeap::new();
    heap.push(Pending { word: Word::empty() });

    while let Some(Pending { word }) = heap.pop() {
        if max_word.is_some_and(|n| word.len() > n) {
            continue;
        }
        let transform = word.transform();
        let center = transform.apply_disk(DiskPoint::ORIGIN);
        if let Some(limit) = explore {
            if hyperbolic_distance(DiskPoint::ORIGIN, center) > limit {
                continue;
            }
        }
        if face_index.find(center.z(), &faces).is_some() {
            continue;
        }
        if faces.len() >= MAX_FACES {
            return Err(TilingError::TooLarge { cap: MAX_FACES });
        }
        let id = faces.len();
        face_index.insert(center.z(), id);
        keep.push(radius.is_none_or(|r| center.norm() <= r));
        for k in 0..5 {
            heap.push(Pending { word: word.extended(&neighbor_tail(k)) });
        }
        faces.push(TileAddress { word, transform, kind: CellKind::Face, center });
    }

    // Drop exploration-only faces, keeping shortlex order.
    let mut kept: Vec<TileAddress> = faces
        .into_iter()
        .zip(keep)
        .filter_map(|(f, k)| k.then_some(f))
        .collect();
    kept.sort_by(|a, b| a.word.shortlex_cmp(&b.word));
    let mut face_index = PointIndex::default();
    for (i, f) in kept.iter().enumerate() {
        face_index.insert(f.center.z(), i);
    }

    let mid = base_edge_midpoint();
    let vtx = base_vertex();
    let mut edges: Vec<TileAddress> = Vec::new();
    let mut vertices: Vec<TileAddress> = Vec::new();
    let mut edge_index = PointIndex::default();
    let mut vertex_index = PointIndex::default();
    let within = |p: DiskPoint| radius.is_none_or(|r| p.norm() <= r);
    for f in &kept {
        for k in 0..5 {
            let tail = edge_tail(k);
            let transform = f.transform * Word(tail.clone()).transform();
            let center = transform.apply_disk(mid);
            if within(center) && edge_index.find(center.z(), &edges).is_none() {
                edge_index.insert(center.z(), edges.len());
                edges.push(TileAddress {
                    word: f.word.extended(&tail),
                    transform,
                    kind: CellKind::Edge,
                    center,
                });
            }
            let tail = vertex_tail(k);
            let transform = f.transform * Word(tail.clone()).transform();
            let center = transform.apply_disk(vtx);
            if within(center) && vertex_index.find(center.z(), &vertices).is_none() {
                vertex_index.insert(center.z(), vertices.len());
                vertices.push(TileAddress {
                    word: f.word.extended(&tail),
                    transform,
                    kind: CellKind::Vertex,
                    center,
                });
            }
        }
    }
    // First-found order is already shortlex by face, then by side index; that
    // can differ from shortlex of the cell's own word, so sort and reindex.
    let reindex = |cells: &mut Vec<TileAddress>| {
        cells.sort_by(|a, b| a.word.shortlex_cmp(&b.word));
        let mut idx = PointIndex::default();
        for (i, c) in cells.iter().enumerate() {
            idx.insert(c.center.z(), i);
        }
        idx
    };
    let edge_index = reindex(&mut edges);
    let vertex_index = reindex(&mut vertices);

    Ok(Tiling {
        bound,
        faces: kept,
        edges,
        vertices,
        face_index,
        edge_index,
        vertex_index,
    })
}

/// Tolerance (Euclidean, in the central frame) for boundary ties in [`Tiling::locate`].
pub const LOCATE_TOL: f64 = 1e-9;

impl Tiling {
    pub fn bound(&self) -> TilingBound {
        self.bound
    }

    pub fn faces(&self) -> &[TileAddress] {
        &self.faces
    }

    pub fn edges(&self) -> &[TileAddress] {
        &self.edges
    }

    pub fn vertices(&self) -> &[TileAddress] {
        &self.vertices
    }

    /// One face per open cell: the first face in shortlex order carrying each of
    /// the 24 non-degenerate types. Shorter if the tiling is too small
    /// (radius 0.95 suffices).
    pub fn central_block(&self) -> Vec<usize> {
        let mut seen = std::collections::BTreeSet::new();
        (0..self.faces.len())
            .filter(|&i| seen.insert(predicted_face_type(&self.faces[i].word).index))
            .collect()
    }

    pub fn find_face(&self, center: C64) -> Option<usize> {
        self.face_index.find(center, &self.faces)
    }

    pub fn find_edge(&self, midpoint: C64) -> Option<usize> {
        self.edge_index.find(midpoint, &self.edges)
    }

    pub fn find_vertex(&self, z: C64) -> Option<usize> {
        self.vertex_index.find(z, &self.vertices)
    }

    /// The two faces sharing an edge (by transform: `e(P)` and `e(s(P))`).
    pub fn edge_faces(&self, edge: usize) -> (Option<usize>, Option<usize>) {
        let e = &self.edges[edge];
        let a = self.find_face(e.transform.apply(C64::new(0.0, 0.0)));
        let b = self.find_face((e.transform * *s_map()).apply(C64::new(0.0, 0.0)));
        (a, b)
    }

    /// Endpoints of an edge in disk coordinates.
    pub fn edge_endpoints(&self, edge: usize) -> (DiskPoint, DiskPoint) {
        let e = &self.edges[edge];
        let v = base_pentagon();
        (e.transform.apply_disk(v[2]), e.transform.apply_disk(v[3]))
    }

    /// Faces around a vertex, as returned by the vertex's transform applied to the
    /// four faces meeting at the base vertex.
    pub fn vertex_faces(&self, vertex: usize) -> Vec<Option<usize>> {
        let t = self.vertices[vertex].transform;
        let e0 = central_sides()[0].1;
        let e1 = central_sides()[1].1;
        [MobiusMap::identity(), e0, e1, e0 * e1]
            .iter()
            .map(|m| self.find_face((t * *m).apply(C64::new(0.0, 0.0))))
            .collect()
    }

    pub fn locate(&self, p: DiskPoint) -> Result<Location, TilingError> {
        let sides = central_sides();
        // Fold p into the central pentagon: p = g(x) with x inside it.
        let mut g = MobiusMap::identity();
        let mut x = p.z();
        for _ in 0..4096 {
            let mut moved = false;
            for (geo, refl) in sides.iter() {
                if geo.side(x) * geo.side(C64::new(0.0, 0.0)) < 0.0 {
                    x = refl.apply(x);
                    g = g * *refl;
                    moved = true;
                    break;
                }
            }
            if !moved {
                break;
            }
        }
        // Candidate faces: the folded face plus those across any side or vertex
        // that x lies on.
        let mut candidates = vec![g];
        let near: Vec<usize> = (0..5)
            .filter(|&k| sides[k].0.euclidean_distance(x) <= LOCATE_TOL)
            .collect();
        for &k in &near {
            candidates.push(g * sides[k].1);
        }
        if near.len() >= 2 {
            for (i, &a) in near.iter().enumerate() {
                for &b in &near[i + 1..] {
                    candidates.push(g * sides[a].1 * sides[b].1);
                }
            }
        }
        let mut best: Option<usize> = None;
        for m in candidates {
            if let Some(id) = self.find_face(m.apply(C64::new(0.0, 0.0))) {
                best = match best {
                    Some(b) if self.faces[b].word.shortlex_cmp(&self.faces[id].word) != Ordering::Greater => Some(b),
                    _ => Some(id),
                };
            }
        }
        let face = best.ok_or(TilingError::OutOfRange(p))?;
        let local = self.faces[face].transform.inverse().apply(p.z());
        let triangle = barycentric_triangle(local);

        let cell = if near.len() >= 2 {
            let v = g.apply(nearest_vertex(x));
            self.find_vertex(v)
                .map(|index| CellRef { kind: CellKind::Vertex, index })
        } else if near.len() == 1 {
            let m = g.apply(side_midpoint(near[0]));
            self.find_edge(m).map(|index| CellRef { kind: CellKind::Edge, index })
        } else {
            None
        }
        .unwrap_or(CellRef { kind: CellKind::Face, index: face });

        Ok(Location { face, triangle, cell })
    }
}

fn side_midpoint(k: usize) -> C64 {
    omega(k as i64) * base_edge_midpoint().z()
}

fn nearest_vertex(x: C64) -> C64 {
    base_pentagon()
        .iter()
        .map(|v| v.z())
        .min_by(|a, b| (a - x).norm().total_cmp(&(b - x).norm()))
        .expect("five vertices")
}

/// Sector index `0..10` of a point in the central pentagon's frame.
fn barycentric_triangle(z: C64) -> u8 {
    if z.norm() <= LOCATE_TOL {
        return 0;
    }
    let deg = z.arg().to_degrees();
    let rel = (deg - 270.0).rem_euclid(360.0);
    ((rel / 36.0).floor() as u8).min(9)
}
