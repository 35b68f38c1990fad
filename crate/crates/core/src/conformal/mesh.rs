//! Structured triangulation of `Q` through its Coons parametrization.

use crate::hyperbolic::C64;

use super::quad::QuadDomain;
use super::FieldError;

/// Largest supported grid resolution (cells per parameter direction).
pub const MAX_RESOLUTION: usize = 2000;

const SEED_GRID: usize = 16;

#[derive(Clone, Debug)]
pub struct CoonsMesh {
    n: usize,
    vertices: Vec<C64>,
    triangles: Vec<[u32; 3]>,
    /// Per cell: `true` splits along `(i,j)–(i+1,j+1)`, `false` along the other diagonal.
    main_diagonal: Vec<bool>,
    seeds: Vec<(f64, f64, C64)>,
}

/// Grid resolution for a target Euclidean element size.
pub fn resolution_for(q: &QuadDomain, mesh_size: f64) -> Result<usize, FieldError> {
    if !mesh_size.is_finite() || mesh_size <= 0.0 {
        return Err(FieldError::InvalidMeshSize(mesh_size));
    }
    let c = q.corners();
    let longest = (0..4)
        .map(|i| arc_length(q, i))
        .fold(0.0, f64::max)
        .max((c[0].z() - c[2].z()).norm());
    let n = (longest / mesh_size).ceil() as usize;
    if n > MAX_RESOLUTION {
        return Err(FieldError::MeshTooLarge { resolution: n, max: MAX_RESOLUTION });
    }
    Ok(n.max(2))
}

fn arc_length(q: &QuadDomain, side: usize) -> f64 {
    let pt = |x: f64| match side {
        0 => q.coons(x, 0.0),
        1 => q.coons(1.0, x),
        2 => q.coons(x, 1.0),
        _ => q.coons(0.0, x),
    };
    (0..64).map(|k| (pt((k + 1) as f64 / 64.0) - pt(k as f64 / 64.0)).norm()).sum()
}

impl CoonsMesh {
    pub fn build(q: &QuadDomain, n: usize) -> Result<CoonsMesh, FieldError> {
        if !(1..=MAX_RESOLUTION).contains(&n) {
            return Err(FieldError::MeshTooLarge { resolution: n, max: MAX_RESOLUTION });
        }
        let h = 1.0 / n as f64;
        let mut vertices = Vec::with_capacity((n + 1) * (n + 1));
        for i in 0..=n {
            for j in 0..=n {
                vertices.push(q.coons(i as f64 * h, j as f64 * h));
            }
        }
        let idx = |i: usize, j: usize| (i * (n + 1) + j) as u32;
        let mut triangles = Vec::with_capacity(2 * n * n);
        let mut main_diagonal = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
                let p = |k: u32| vertices[k as usize];
                // Delaunay choice: split along a–c unless the angles at b and d exceed π.
                let ang = |o: C64, x: C64, y: C64| ((x - o) / (y - o)).arg().abs();
                let main = ang(p(b), p(a), p(c)) + ang(p(d), p(a), p(c)) <= std::f64::consts::PI;
                if main {
                    triangles.push([a, b, c]);
                    triangles.push([a, c, d]);
                } else {
                    triangles.push([a, b, d]);
                    triangles.push([b, c, d]);
                }
                main_diagonal.push(main);
            }
        }
        for t in &triangles {
            let [a, b, c] = t.map(|k| vertices[k as usize]);
            let area = ((b - a).conj() * (c - a)).im;
            if area.is_nan() || area.abs() <= 1e-300 {
                return Err(FieldError::MeshGeneration { near: a });
            }
        }
        let m = SEED_GRID;
        let mut seeds = Vec::with_capacity((m + 1) * (m + 1));
        for i in 0..=m {
            for j in 0..=m {
                let (s, t) = (i as f64 / m as f64, j as f64 / m as f64);
                seeds.push((s, t, q.coons(s, t)));
            }
        }
        Ok(CoonsMesh { n, vertices, triangles, main_diagonal, seeds })
    }

    /// Rebuilds the mesh from stored triangles, checking that they match the grid.
    pub fn from_parts(q: &QuadDomain, n: usize, vertices: Vec<C64>, triangles: Vec<[u32; 3]>) -> Result<CoonsMesh, FieldError> {
        let mut mesh = CoonsMesh::build(q, n)?;
        if vertices.len() != mesh.vertices.len() || triangles.len() != mesh.triangles.len() {
            return Err(FieldError::Format("mesh size does not match the grid resolution".into()));
        }
        for cell in 0..n * n {
            let t = triangles[2 * cell];
            let (i, j) = (cell / n, cell % n);
            let a = (i * (n + 1) + j) as u32;
            let c = ((i + 1) * (n + 1) + j + 1) as u32;
            mesh.main_diagonal[cell] = t.contains(&a) && t.contains(&c);
        }
        for (k, (stored, fresh)) in vertices.iter().zip(&mesh.vertices).enumerate() {
            if (stored - fresh).norm() > 1e-12 {
                return Err(FieldError::Format(format!("vertex {k} does not match the geometry")));
            }
        }
        mesh.vertices = vertices;
        mesh.triangles = triangles;
        Ok(mesh)
    }

    pub fn resolution(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[C64] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * (self.n + 1) + j
    }

    /// Parameters `(s, t)` with `coons(s, t) = z`, clamped to the unit square.
    pub fn invert(&self, q: &QuadDomain, z: C64) -> (f64, f64) {
        let (mut s, mut t, _) = *self
            .seeds
            .iter()
            .min_by(|a, b| (a.2 - z).norm_sqr().total_cmp(&(b.2 - z).norm_sqr()))
            .expect("seed grid is non-empty");
        let mut r = q.coons(s, t) - z;
        let d = 1e-7;
        for _ in 0..60 {
            if r.norm() <= 1e-16 {
                break;
            }
            let xs = (q.coons(s + d, t) - q.coons(s - d, t)) / (2.0 * d);
            let xt = (q.coons(s, t + d) - q.coons(s, t - d)) / (2.0 * d);
            let det = xs.re * xt.im - xs.im * xt.re;
            if det.abs() < 1e-300 {
                break;
            }
            let ds = -(xt.im * r.re - xt.re * r.im) / det;
            let dt = -(-xs.im * r.re + xs.re * r.im) / det;
            let mut step = 1.0;
            let mut improved = false;
            for _ in 0..30 {
                let (s2, t2) = (s + step * ds, t + step * dt);
                let r2 = q.coons(s2, t2) - z;
                if r2.norm() < r.norm() {
                    s = s2;
                    t = t2;
                    r = r2;
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if !improved || (ds.abs() + dt.abs()) < 1e-16 {
                break;
            }
        }
        (s.clamp(0.0, 1.0), t.clamp(0.0, 1.0))
    }

    /// Piecewise-linear interpolation over the parameter-space triangles.
    pub fn interpolate_param(&self, values: &[f64], s: f64, t: f64) -> f64 {
        let n = self.n as f64;
        let (x, y) = (s * n, t * n);
        let i = (x.floor() as usize).min(self.n - 1);
        let j = (y.floor() as usize).min(self.n - 1);
        let (a, b) = (x - i as f64, y - j as f64);
        let ua = values[self.index(i, j)];
        let ub = values[self.index(i + 1, j)];
        let uc = values[self.index(i + 1, j + 1)];
        let ud = values[self.index(i, j + 1)];
        if self.main_diagonal[i * self.n + j] {
            if a >= b {
                ua + a * (ub - ua) + b * (uc - ub)
            } else {
                ua + b * (ud - ua) + a * (uc - ud)
            }
        } else if a + b <= 1.0 {
            ua + a * (ub - ua) + b * (ud - ua)
        } else {
            uc + (1.0 - a) * (ud - uc) + (1.0 - b) * (ub - uc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::quad::build_quad;

    #[test]
    fn resolution_validation() {
        let q = build_quad();
        assert!(matches!(resolution_for(&q, 0.0), Err(FieldError::InvalidMeshSize(_))));
        assert!(matches!(resolution_for(&q, -1.0), Err(FieldError::InvalidMeshSize(_))));
        assert!(matches!(resolution_for(&q, 1e-7), Err(FieldError::MeshTooLarge { .. })));
        assert_eq!(resolution_for(&q, 10.0).unwrap(), 2);
    }

    #[test]
    fn triangles_are_positively_oriented_and_cover_the_square() {
        let q = build_quad();
        let mesh = CoonsMesh::build(&q, 12).unwrap();
        assert_eq!(mesh.triangles().len(), 2 * 144);
        let v = mesh.vertices();
        let sign = |t: &[u32; 3]| {
            let [a, b, c] = t.map(|k| v[k as usize]);
            ((b - a).conj() * (c - a)).im.signum()
        };
        let s0 = sign(&mesh.triangles()[0]);
        assert!(mesh.triangles().iter().all(|t| sign(t) == s0));
    }

    #[test]
    fn inversion_round_trip() {
        let q = build_quad();
        let mesh = CoonsMesh::build(&q, 8).unwrap();
        for i in 0..=20 {
            for j in 0..=20 {
                let (s, t) = (i as f64 / 20.0, j as f64 / 20.0);
                let (s2, t2) = mesh.invert(&q, q.coons(s, t));
                assert!((s - s2).abs() < 1e-12 && (t - t2).abs() < 1e-12, "{s},{t} -> {s2},{t2}");
            }
        }
    }

    #[test]
    fn interpolation_is_exact_at_nodes_and_for_affine_data() {
        let q = build_quad();
        let n = 10;
        let mesh = CoonsMesh::build(&q, n).unwrap();
        let f = |s: f64, t: f64| 0.3 + 2.0 * s - 1.5 * t;
        let mut values = vec![0.0; (n + 1) * (n + 1)];
        for i in 0..=n {
            for j in 0..=n {
                values[mesh.index(i, j)] = f(i as f64 / n as f64, j as f64 / n as f64);
            }
        }
        for &(s, t) in &[(0.0, 0.0), (0.31, 0.77), (1.0, 1.0), (0.5, 0.0), (0.123, 0.999)] {
            assert!((mesh.interpolate_param(&values, s, t) - f(s, t)).abs() < 1e-13);
        }
    }
}
