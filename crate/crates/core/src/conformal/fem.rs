//! Linear finite elements for the Laplacian and a Jacobi-preconditioned CG solver.

use crate::hyperbolic::C64;

/// Compressed sparse row matrix.
#[derive(Clone, Debug, Default)]
pub struct Csr {
    pub row_ptr: Vec<usize>,
    pub cols: Vec<usize>,
    pub vals: Vec<f64>,
}

impl Csr {
    pub fn dim(&self) -> usize {
        self.row_ptr.len().saturating_sub(1)
    }

    pub fn mul(&self, x: &[f64], y: &mut [f64]) {
        for (r, out) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            *out = acc;
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|r| {
                (self.row_ptr[r]..self.row_ptr[r + 1])
                    .find(|&k| self.cols[k] == r)
                    .map_or(0.0, |k| self.vals[k])
            })
            .collect()
    }

    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let mut y = vec![0.0; self.dim()];
        self.mul(x, &mut y);
        x.iter().zip(&y).map(|(a, b)| a * b).sum()
    }
}

/// Element stiffness matrix of the P1 Laplacian on one triangle.
pub fn element_stiffness(p: [C64; 3]) -> [[f64; 3]; 3] {
    let b = [p[1].im - p[2].im, p[2].im - p[0].im, p[0].im - p[1].im];
    let c = [p[2].re - p[1].re, p[0].re - p[2].re, p[1].re - p[0].re];
    let area = 0.5 * (b[0] * c[1] - b[1] * c[0]);
    let scale = 1.0 / (4.0 * area.abs());
    let mut k = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            k[i][j] = (b[i] * b[j] + c[i] * c[j]) * scale;
        }
    }
    k
}

pub fn assemble_stiffness(vertices: &[C64], triangles: &[[u32; 3]]) -> Csr {
    let n = vertices.len();
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for t in triangles {
        let p = t.map(|k| vertices[k as usize]);
        let k = element_stiffness(p);
        for a in 0..3 {
            for b in 0..3 {
                rows[t[a] as usize].push((t[b] as usize, k[a][b]));
            }
        }
    }
    let mut csr = Csr { row_ptr: Vec::with_capacity(n + 1), ..Default::default() };
    csr.row_ptr.push(0);
    for mut row in rows {
        row.sort_by_key(|e| e.0);
        let mut last: Option<usize> = None;
        for (c, v) in row {
            if last == Some(c) {
                *csr.vals.last_mut().expect("entry exists") += v;
            } else {
                csr.cols.push(c);
                csr.vals.push(v);
                last = Some(c);
            }
        }
        csr.row_ptr.push(csr.cols.len());
    }
    csr
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveStats {
    pub iterations: usize,
    pub relative_residual: f64,
}

/// Solves `K u = 0` on the free nodes with `u` prescribed where `fixed` is `Some`.
/// Returns the full vector and solver statistics, or the statistics on failure.
pub fn solve_dirichlet(
    k: &Csr,
    fixed: &[Option<f64>],
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<f64>, SolveStats), SolveStats> {
    let n = k.dim();
    let free: Vec<usize> = (0..n).filter(|&i| fixed[i].is_none()).collect();
    let mut pos = vec![usize::MAX; n];
    for (p, &i) in free.iter().enumerate() {
        pos[i] = p;
    }
    // Reduced system A x = b on the free nodes.
    let mut a = Csr { row_ptr: vec![0], ..Default::default() };
    let mut b = vec![0.0; free.len()];
    for (p, &i) in free.iter().enumerate() {
        for e in k.row_ptr[i]..k.row_ptr[i + 1] {
            let j = k.cols[e];
            match fixed[j] {
                Some(v) => b[p] -= k.vals[e] * v,
                None => {
                    a.cols.push(pos[j]);
                    a.vals.push(k.vals[e]);
                }
            }
        }
        a.row_ptr.push(a.cols.len());
    }
    let (x, stats) = pcg(&a, &b, tol, max_iter)?;
    let mut u: Vec<f64> = fixed.iter().map(|v| v.unwrap_or(0.0)).collect();
    for (p, &i) in free.iter().enumerate() {
        u[i] = x[p];
    }
    Ok((u, stats))
}

/// Jacobi-preconditioned conjugate gradients from a zero initial guess.
pub fn pcg(a: &Csr, b: &[f64], tol: f64, max_iter: usize) -> Result<(Vec<f64>, SolveStats), SolveStats> {
    let n = b.len();
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
    let inv_diag: Vec<f64> = a.diagonal().iter().map(|d| 1.0 / d).collect();
    let b_norm = dot(b, b).sqrt();
    let mut x = vec![0.0; n];
    if b_norm == 0.0 {
        return Ok((x, SolveStats { iterations: 0, relative_residual: 0.0 }));
    }
    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(r, d)| r * d).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];
    let mut rel = 1.0;
    for it in 0..max_iter {
        a.mul(&p, &mut ap);
        let alpha = rz / dot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        rel = dot(&r, &r).sqrt() / b_norm;
        if rel <= tol {
            return Ok((x, SolveStats { iterations: it + 1, relative_residual: rel }));
        }
        for i in 0..n {
            z[i] = r[i] * inv_diag[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(SolveStats { iterations: max_iter, relative_residual: rel })
}
