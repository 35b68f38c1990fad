//! Combinatorial types of equilateral pentagon linkages, read off from their juzus.
//!
//! A juzu is the configuration of the five rotated edge vectors `v_k^⊥ = −i·v_k` on
//! the unit circle. Its combinatorial type is the cyclic order of the labels with
//! coinciding labels grouped. Three labels can never coincide, so each type has
//! zero, one or two coincident pairs.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hyperbolic::{cis, CirclePoint, C64};
use crate::linkage::Linkage;

/// Default angular coincidence threshold, in radians.
pub const DEFAULT_TOL: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CombinatoricsError {
    #[error("labels {0:?} coincide; at most two labels may share a position")]
    ThreeCoincide(Vec<u8>),
    #[error("coincidence tolerance must be positive and below π/5, got {0}")]
    InvalidTolerance(f64),
}

/// Five labeled points on the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Juzu {
    points: [CirclePoint; 5],
}

impl Juzu {
    pub fn new(points: [CirclePoint; 5]) -> Result<Self, CombinatoricsError> {
        let j = Juzu { points };
        j.groups(DEFAULT_TOL)?;
        Ok(j)
    }

    /// Builds a juzu without checking for triple coincidences.
    pub fn from_points_unchecked(points: [CirclePoint; 5]) -> Self {
        Juzu { points }
    }

    pub fn from_angles(angles: [f64; 5]) -> Result<Self, CombinatoricsError> {
        Self::new(angles.map(CirclePoint::from_angle))
    }

    /// The juzu of a closed pentagon with edge vectors `v_k`.
    pub fn from_edge_vectors(v: &[CirclePoint; 5]) -> Self {
        Juzu { points: v.map(|p| p.rotated(-C64::i())) }
    }

    /// The juzu of the regular pentagon: label `k` at angle `−π/2 + 2πk/5`.
    pub fn regular() -> Self {
        Juzu { points: std::array::from_fn(|k| CirclePoint::from_angle(-PI / 2.0 + 2.0 * PI * k as f64 / 5.0)) }
    }

    pub fn points(&self) -> &[CirclePoint; 5] {
        &self.points
    }

    /// Edge vectors `v_k = i·juzu_k`.
    pub fn edge_vectors(&self) -> [CirclePoint; 5] {
        self.points.map(|p| p.rotated(C64::i()))
    }

    /// Returns the juzu with label `k` moved to label `sigma[k]`.
    pub fn relabeled(&self, sigma: [u8; 5]) -> Juzu {
        let mut out = self.points;
        for k in 0..5 {
            out[sigma[k] as usize] = self.points[k];
        }
        Juzu { points: out }
    }

    pub fn rotated(&self, unit: C64) -> Juzu {
        Juzu { points: self.points.map(|p| p.rotated(unit)) }
    }

    /// Smallest angular distance between two labels.
    pub fn angular_distance(&self, a: usize, b: usize) -> f64 {
        angle_between(self.points[a].u(), self.points[b].u())
    }

    /// Labels grouped by coincidence, in counterclockwise order starting anywhere.
    fn groups(&self, tol: f64) -> Result<Vec<Vec<u8>>, CombinatoricsError> {
        if !(tol > 0.0 && tol < PI / 5.0) {
            return Err(CombinatoricsError::InvalidTolerance(tol));
        }
        let mut order: Vec<(f64, u8)> = self
            .points
            .iter()
            .enumerate()
            .map(|(k, p)| (p.angle().rem_euclid(2.0 * PI), k as u8))
            .collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        // Gap after position i (to position i+1, cyclically).
        let gaps: Vec<bool> = (0..5)
            .map(|i| {
                let a = self.points[order[i].1 as usize].u();
                let b = self.points[order[(i + 1) % 5].1 as usize].u();
                angle_between(a, b) <= tol
            })
            .collect();
        if gaps.iter().all(|g| *g) {
            return Err(CombinatoricsError::ThreeCoincide(vec![0, 1, 2, 3, 4]));
        }
        // Start right after a separating gap so no group wraps around.
        let start = (0..5).find(|&i| !gaps[i]).map(|i| (i + 1) % 5).expect("a separating gap exists");
        let mut groups: Vec<Vec<u8>> = Vec::new();
        let mut current = Vec::new();
        for step in 0..5 {
            let i = (start + step) % 5;
            current.push(order[i].1);
            if !gaps[i] {
                groups.push(std::mem::take(&mut current));
            }
        }
        for g in &mut groups {
            g.sort_unstable();
            if g.len() >= 3 {
                return Err(CombinatoricsError::ThreeCoincide(g.clone()));
            }
        }
        Ok(groups)
    }
}

fn angle_between(a: C64, b: C64) -> f64 {
    (a * b.conj()).arg().abs()
}

/// A grouped cyclic label sequence in canonical form.
pub type CyclicOrder = Vec<Vec<u8>>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CombinatorialType {
    pub index: usize,
    pub degeneracy: u8,
    pub cyclic_order: CyclicOrder,
}

impl CombinatorialType {
    /// The coincident label pairs.
    pub fn pairs(&self) -> Vec<(u8, u8)> {
        self.cyclic_order
            .iter()
            .filter(|g| g.len() == 2)
            .map(|g| (g[0], g[1]))
            .collect()
    }
}

impl fmt::Display for CombinatorialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.cyclic_order.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if g.len() == 1 {
                write!(f, "{}", g[0])?;
            } else {
                write!(f, "{{{}{}}}", g[0], g[1])?;
            }
        }
        write!(f, ")")
    }
}

/// Sorts groups internally and picks the lexicographically least rotation.
pub fn canonical_form(groups: &[Vec<u8>]) -> CyclicOrder {
    let sorted: Vec<Vec<u8>> = groups
        .iter()
        .map(|g| {
            let mut g = g.clone();
            g.sort_unstable();
            g
        })
        .collect();
    (0..sorted.len())
        .map(|r| {
            let mut rot = sorted[r..].to_vec();
            rot.extend_from_slice(&sorted[..r]);
            rot
        })
        .min()
        .unwrap_or_default()
}

struct TypeTable {
    types: Vec<CombinatorialType>,
    lookup: HashMap<CyclicOrder, usize>,
}

fn permutations(items: &[u8]) -> Vec<Vec<u8>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

fn table() -> &'static TypeTable {
    static TABLE: OnceLock<TypeTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Merged position pairs (i, i+1); wrapping pairs are covered by the
        // rotated permutations.
        let merges: Vec<Vec<usize>> = {
            let mut m = vec![vec![]];
            for i in 0..4 {
                m.push(vec![i]);
                for j in i + 2..4 {
                    m.push(vec![i, j]);
                }
            }
            m
        };
        let mut all: BTreeSet<(u8, CyclicOrder)> = BTreeSet::new();
        for perm in permutations(&[0, 1, 2, 3, 4]) {
            for merge in &merges {
                let mut groups: Vec<Vec<u8>> = Vec::new();
                let mut pos = 0;
                while pos < 5 {
                    if merge.contains(&pos) {
                        groups.push(vec![perm[pos], perm[pos + 1]]);
                        pos += 2;
                    } else {
                        groups.push(vec![perm[pos]]);
                        pos += 1;
                    }
                }
                all.insert(((5 - groups.len()) as u8, canonical_form(&groups)));
            }
        }
        let types: Vec<CombinatorialType> = all
            .into_iter()
            .enumerate()
            .map(|(index, (degeneracy, cyclic_order))| CombinatorialType { index, degeneracy, cyclic_order })
            .collect();
        let lookup = types.iter().map(|t| (t.cyclic_order.clone(), t.index)).collect();
        TypeTable { types, lookup }
    })
}

/// All 114 types ordered by degeneracy, then canonical sequence.
pub fn enumerate_types() -> &'static [CombinatorialType] {
    &table().types
}

pub fn type_of_order(groups: &[Vec<u8>]) -> Option<&'static CombinatorialType> {
    let t = table();
    t.lookup.get(&canonical_form(groups)).map(|&i| &t.types[i])
}

pub fn classify(j: &Juzu, tol: f64) -> Result<&'static CombinatorialType, CombinatoricsError> {
    let groups = j.groups(tol)?;
    Ok(type_of_order(&groups).expect("every grouping with pairs only is tabulated"))
}

/// The type obtained by renaming label `k` to `sigma[k]`.
pub fn relabel_type(t: &CombinatorialType, sigma: [u8; 5]) -> &'static CombinatorialType {
    let groups: Vec<Vec<u8>> = t
        .cyclic_order
        .iter()
        .map(|g| g.iter().map(|&l| sigma[l as usize]).collect())
        .collect();
    type_of_order(&groups).expect("relabeling preserves the group structure")
}

/// Covering pairs `(lower, upper)`: `upper` arises from `lower` by moving one
/// coincident pair apart.
pub fn hasse_order() -> &'static [(usize, usize)] {
    static HASSE: OnceLock<Vec<(usize, usize)>> = OnceLock::new();
    HASSE.get_or_init(|| {
        let mut covers = BTreeSet::new();
        for t in enumerate_types() {
            for (gi, g) in t.cyclic_order.iter().enumerate() {
                if g.len() != 2 {
                    continue;
                }
                for split in [[g[0], g[1]], [g[1], g[0]]] {
                    let mut groups = t.cyclic_order.clone();
                    groups.splice(gi..=gi, split.iter().map(|&l| vec![l]));
                    let up = type_of_order(&groups).expect("split type exists");
                    covers.insert((t.index, up.index));
                }
            }
        }
        covers.into_iter().collect()
    })
}

pub fn types_above(index: usize) -> Vec<usize> {
    hasse_order().iter().filter(|(lo, _)| *lo == index).map(|(_, hi)| *hi).collect()
}

pub fn types_below(index: usize) -> Vec<usize> {
    hasse_order().iter().filter(|(_, hi)| *hi == index).map(|(lo, _)| *lo).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CellComplexCell {
    pub dim: u8,
    pub type_index: usize,
    /// Indices of incident cells by dimension (`neighbors[d]` lists `d`-cells).
    /// For a 2-cell the 1-cells are listed in boundary order.
    pub neighbors: [Vec<usize>; 3],
}

/// The genus-4 surface tiled by 24 pentagons; indices are per dimension.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellComplex {
    pub vertices: Vec<CellComplexCell>,
    pub edges: Vec<CellComplexCell>,
    pub faces: Vec<CellComplexCell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComplexReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub genus: i64,
    pub orientable: bool,
    pub connected: bool,
    pub closed_surface: bool,
}

pub fn build_cell_complex() -> CellComplex {
    let types = enumerate_types();
    let by_deg = |d: u8| -> Vec<usize> { types.iter().filter(|t| t.degeneracy == d).map(|t| t.index).collect() };
    let (f_types, e_types, v_types) = (by_deg(0), by_deg(1), by_deg(2));
    let pos = |list: &[usize], ty: usize| list.iter().position(|&x| x == ty).expect("type in list");

    let mut faces: Vec<CellComplexCell> = f_types
        .iter()
        .map(|&t| CellComplexCell { dim: 2, type_index: t, neighbors: Default::default() })
        .collect();
    let mut edges: Vec<CellComplexCell> = e_types
        .iter()
        .map(|&t| CellComplexCell { dim: 1, type_index: t, neighbors: Default::default() })
        .collect();
    let mut vertices: Vec<CellComplexCell> = v_types
        .iter()
        .map(|&t| CellComplexCell { dim: 0, type_index: t, neighbors: Default::default() })
        .collect();

    for e in edges.iter_mut() {
        e.neighbors[2] = types_above(e.type_index).iter().map(|&t| pos(&f_types, t)).collect();
        e.neighbors[0] = types_below(e.type_index).iter().map(|&t| pos(&v_types, t)).collect();
    }
    for v in vertices.iter_mut() {
        let ups = types_above(v.type_index);
        v.neighbors[1] = ups.iter().map(|&t| pos(&e_types, t)).collect();
        let mut fs: BTreeSet<usize> = BTreeSet::new();
        for &u in &ups {
            fs.extend(types_above(u).iter().map(|&t| pos(&f_types, t)));
        }
        v.neighbors[2] = fs.into_iter().collect();
    }
    for f in faces.iter_mut() {
        // Merging positions (i, i+1) of the 5-cycle gives side i; sides i and i+2
        // share the vertex merging both pairs, so the boundary runs i, i+2, i+4, …
        let seq: Vec<u8> = types[f.type_index].cyclic_order.iter().map(|g| g[0]).collect();
        let side = |i: usize| -> usize {
            let mut groups: Vec<Vec<u8>> = Vec::new();
            for p in 0..5 {
                if p == (i + 1) % 5 {
                    continue;
                }
                if p == i {
                    groups.push(vec![seq[i], seq[(i + 1) % 5]]);
                } else {
                    groups.push(vec![seq[p]]);
                }
            }
            pos(&e_types, type_of_order(&groups).expect("merged type").index)
        };
        f.neighbors[1] = (0..5).map(|k| side((2 * k) % 5)).collect();
        let mut vs = Vec::new();
        for k in 0..5 {
            let a = &edges[f.neighbors[1][k]].neighbors[0];
            let b = &edges[f.neighbors[1][(k + 1) % 5]].neighbors[0];
            vs.push(*a.iter().find(|x| b.contains(x)).expect("consecutive sides share a vertex"));
        }
        f.neighbors[0] = vs;
    }
    for v in vertices.iter_mut() {
        v.neighbors[0] = Vec::new();
    }
    for e in edges.iter_mut() {
        e.neighbors[1] = Vec::new();
    }
    CellComplex { vertices, edges, faces }
}

impl CellComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Consistent orientation of all faces: each edge is traversed in opposite
    /// directions by its two faces.
    pub fn is_orientable(&self) -> bool {
        let mut orient: Vec<Option<bool>> = vec![None; self.faces.len()];
        let directed = |f: usize, flip: bool| -> Vec<(usize, usize)> {
            let vs = &self.faces[f].neighbors[0];
            (0..5)
                .map(|k| {
                    let (a, b) = (vs[(k + 4) % 5], vs[k]);
                    if flip {
                        (b, a)
                    } else {
                        (a, b)
                    }
                })
                .collect()
        };
        for start in 0..self.faces.len() {
            if orient[start].is_some() {
                continue;
            }
            orient[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(f) = queue.pop_front() {
                let mine = directed(f, orient[f].expect("set"));
                for &e in &self.faces[f].neighbors[1] {
                    for &g in &self.edges[e].neighbors[2] {
                        if g == f {
                            continue;
                        }
                        let ends = &self.edges[e].neighbors[0];
                        let (a, b) = (ends[0], ends[1]);
                        let along = |dirs: &[(usize, usize)]| dirs.iter().find(|&&(x, y)| (x, y) == (a, b) || (x, y) == (b, a)).copied();
                        let m = along(&mine).expect("edge on boundary");
                        // g must run the shared edge the other way round.
                        let flip = along(&directed(g, false)) == Some(m);
                        match orient[g] {
                            None => {
                                orient[g] = Some(flip);
                                queue.push_back(g);
                            }
                            Some(o) if o != flip => return false,
                            _ => {}
                        }
                    }
                }
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        if self.faces.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.faces.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(f) = queue.pop_front() {
            for &e in &self.faces[f].neighbors[1] {
                for &g in &self.edges[e].neighbors[2] {
                    if !seen[g] {
                        seen[g] = true;
                        queue.push_back(g);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Every edge bounds two faces, every vertex meets four, every face has five sides,
    /// and the link of every vertex is a single 4-cycle.
    pub fn is_closed_surface(&self) -> bool {
        let edges_ok = self.edges.iter().all(|e| e.neighbors[2].len() == 2 && e.neighbors[0].len() == 2);
        let faces_ok = self.faces.iter().all(|f| {
            let mut s = f.neighbors[1].clone();
            s.sort_unstable();
            s.dedup();
            s.len() == 5 && f.neighbors[0].len() == 5
        });
        let vertices_ok = self.vertices.iter().all(|v| {
            if v.neighbors[2].len() != 4 || v.neighbors[1].len() != 4 {
                return false;
            }
            // Walk the link: faces around v connected through the edges at v.
            let mut visited = vec![v.neighbors[2][0]];
            let mut current = v.neighbors[2][0];
            let mut used = Vec::new();
            loop {
                let next = v.neighbors[1].iter().find_map(|&e| {
                    if used.contains(&e) || !self.edges[e].neighbors[2].contains(&current) {
                        return None;
                    }
                    Some((e, *self.edges[e].neighbors[2].iter().find(|&&g| g != current)?))
                });
                match next {
                    Some((e, g)) => {
                        used.push(e);
                        if g == visited[0] {
                            break;
                        }
                        if visited.contains(&g) {
                            return false;
                        }
                        visited.push(g);
                        current = g;
                    }
                    None => return false,
                }
            }
            visited.len() == 4 && used.len() == 4
        });
        edges_ok && faces_ok && vertices_ok
    }

    pub fn report(&self) -> ComplexReport {
        let chi = self.euler_characteristic();
        ComplexReport {
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            faces: self.faces.len(),
            euler_characteristic: chi,
            genus: (2 - chi) / 2,
            orientable: self.is_orientable(),
            connected: self.is_connected(),
            closed_surface: self.is_closed_surface(),
        }
    }
}

/// Realizes a linkage from the two free angles at `p_1` and `p_0`.
///
/// `p_0 = 0`, `p_1 = 1`, `p_2 = 1 + e^{iα}`, `p_4 = −e^{iβ}`; `p_3` is an intersection
/// of the unit circles about `p_2` and `p_4`, selected by `branch`. Returns `None`
/// when the circles do not meet or coincide.
pub fn naive_realize(alpha: f64, beta: f64, branch: u8) -> Option<Linkage> {
    let p0 = C64::new(0.0, 0.0);
    let p1 = C64::new(1.0, 0.0);
    let p2 = p1 + cis(alpha);
    let p4 = p0 - cis(beta);
    let d = (p4 - p2).norm();
    if !(1e-12..=2.0 + 1e-12).contains(&d) {
        return None;
    }
    let mid = (p2 + p4) / 2.0;
    let h = (1.0 - d * d / 4.0).max(0.0).sqrt();
    let normal = C64::i() * (p4 - p2) / d;
    let p3 = if branch == 0 { mid + normal * h } else { mid - normal * h };
    Linkage::from_vertices([p0, p1, p2, p3, p4], None).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn type_counts() {
        let types = enumerate_types();
        assert_eq!(types.len(), 114);
        let count = |d| types.iter().filter(|t| t.degeneracy == d).count();
        assert_eq!((count(0), count(1), count(2)), (24, 60, 30));
        assert_eq!(types[0].cyclic_order, vec![vec![0], vec![1], vec![2], vec![3], vec![4]]);
        for (i, t) in types.iter().enumerate() {
            assert_eq!(t.index, i);
            assert_eq!(canonical_form(&t.cyclic_order), t.cyclic_order);
        }
    }

    #[test]
    fn regular_juzu_is_type_zero() {
        let t = classify(&Juzu::regular(), DEFAULT_TOL).unwrap();
        assert_eq!(t.index, 0);
        assert_eq!(t.degeneracy, 0);
    }

    #[test]
    fn coincident_pair() {
        let mut a: [f64; 5] = std::array::from_fn(|k| -PI / 2.0 + 2.0 * PI * k as f64 / 5.0);
        a[3] = a[2];
        let t = classify(&Juzu::from_angles(a).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(t.degeneracy, 1);
        assert_eq!(t.pairs(), vec![(2, 3)]);
    }

    #[test]
    fn triple_rejected() {
        let a = [0.0, 0.0, 0.0, 2.0, 4.0];
        assert!(matches!(Juzu::from_angles(a), Err(CombinatoricsError::ThreeCoincide(_))));
        let j = Juzu::from_points_unchecked(a.map(CirclePoint::from_angle));
        assert_eq!(classify(&j, DEFAULT_TOL).unwrap_err(), CombinatoricsError::ThreeCoincide(vec![0, 1, 2]));
        // A pair straddling the angle cut is still a pair.
        let a = [-1e-9, 1e-9, 1.0, 2.5, 4.0];
        assert_eq!(classify(&Juzu::from_angles(a).unwrap(), DEFAULT_TOL).unwrap().pairs(), vec![(0, 1)]);
    }

    #[test]
    fn small_perturbation_keeps_type() {
        let base: [f64; 5] = [0.3, 1.7, 2.2, 4.0, 5.5];
        let t0 = classify(&Juzu::from_angles(base).unwrap(), DEFAULT_TOL).unwrap();
        let mut p = base;
        for (k, x) in p.iter_mut().enumerate() {
            *x += (k as f64 - 2.0) * DEFAULT_TOL / 40.0;
        }
        assert_eq!(classify(&Juzu::from_angles(p).unwrap(), DEFAULT_TOL).unwrap(), t0);
    }

    #[test]
    fn hasse_degrees() {
        for t in enumerate_types() {
            let above = types_above(t.index);
            let below = types_below(t.index);
            match t.degeneracy {
                0 => {
                    assert!(above.is_empty());
                    assert_eq!(below.len(), 5);
                }
                1 => {
                    assert_eq!(above.len(), 2);
                    assert_eq!(below.len(), 2);
                }
                _ => {
                    assert!(below.is_empty());
                    assert_eq!(above.len(), 4);
                    let mut top: BTreeSet<usize> = BTreeSet::new();
                    for a in above {
                        top.extend(types_above(a));
                    }
                    assert_eq!(top.len(), 4);
                }
            }
            for u in types_above(t.index) {
                assert_eq!(enumerate_types()[u].degeneracy + 1, t.degeneracy);
            }
        }
    }

    #[test]
    fn cell_complex_is_genus_four() {
        let c = build_cell_complex();
        let r = c.report();
        assert_eq!((r.vertices, r.edges, r.faces), (30, 60, 24));
        assert_eq!(r.euler_characteristic, -6);
        assert_eq!(r.genus, 4);
        assert!(r.orientable && r.connected && r.closed_surface);
    }

    #[test]
    fn face_boundaries_close_up() {
        let c = build_cell_complex();
        for f in &c.faces {
            for k in 0..5 {
                let e = &c.edges[f.neighbors[1][k]];
                let v = f.neighbors[0][k];
                let w = f.neighbors[0][(k + 4) % 5];
                assert!(e.neighbors[0].contains(&v));
                assert!(e.neighbors[0].contains(&w));
            }
        }
    }

    #[test]
    fn naive_realize_examples() {
        // Far apart: p2 = 2, p4 = −1.
        assert!(naive_realize(0.0, 0.0, 0).is_none());
        // |p2 − p4| = 2 exactly: the two branches coincide at the midpoint.
        let (a, b) = (0.0, (-0.25f64).acos());
        let l0 = naive_realize(a, b, 0).unwrap();
        let l1 = naive_realize(a, b, 1).unwrap();
        let mid = (l0.vertices[2] + l0.vertices[4]) / 2.0;
        assert!((l0.vertices[3] - l1.vertices[3]).norm() < 1e-7);
        assert!((l0.vertices[3] - mid).norm() < 1e-7);
        // Regular pentagon.
        let l = naive_realize(2.0 * PI / 5.0, 3.0 * PI / 5.0 - PI, 0).unwrap();
        for k in 0..5 {
            assert!(((l.vertices[(k + 1) % 5] - l.vertices[k]).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn naive_grid_reaches_all_open_cells() {
        let mut seen = BTreeSet::new();
        let n = 120;
        for i in 0..n {
            for j in 0..n {
                let a = 2.0 * PI * (i as f64 + 0.37) / n as f64;
                let b = 2.0 * PI * (j as f64 + 0.61) / n as f64;
                for branch in 0..2 {
                    if let Some(l) = naive_realize(a, b, branch) {
                        for k in 0..5 {
                            assert!(((l.vertices[(k + 1) % 5] - l.vertices[k]).norm() - 1.0).abs() < 1e-12);
                        }
                        let t = classify(&l.juzu(), DEFAULT_TOL).unwrap();
                        if t.degeneracy == 0 {
                            seen.insert(t.index);
                        }
                    }
                }
            }
        }
        assert_eq!(seen.len(), 24);
    }

    fn perm5() -> impl Strategy<Value = [u8; 5]> {
        Just(vec![0u8, 1, 2, 3, 4]).prop_shuffle().prop_map(|v| [v[0], v[1], v[2], v[3], v[4]])
    }

    proptest! {
        #[test]
        fn classify_is_rotation_invariant(angles in prop::array::uniform5(0.0..(2.0 * PI)), rot in 0.0..(2.0 * PI)) {
            let j = Juzu::from_points_unchecked(angles.map(CirclePoint::from_angle));
            let a = classify(&j, 1e-3);
            let b = classify(&j.rotated(cis(rot)), 1e-3);
            // Rotation may move a gap across the tolerance by roundoff only at exact ties.
            if let (Ok(a), Ok(b)) = (a, b) {
                prop_assert_eq!(a, b);
            }
        }

        #[test]
        fn classify_is_relabeling_equivariant(angles in prop::array::uniform5(0.0..(2.0 * PI)), sigma in perm5()) {
            let j = Juzu::from_points_unchecked(angles.map(CirclePoint::from_angle));
            if let Ok(t) = classify(&j, 1e-3) {
                let moved = classify(&j.relabeled(sigma), 1e-3).unwrap();
                prop_assert_eq!(moved, relabel_type(t, sigma));
            }
        }
    }
}
