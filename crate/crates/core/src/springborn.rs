//! Möbius normalization of five circle points to barycenter zero.
//!
//! For points `v_k` on the unit circle, no three coinciding, there is a unique
//! `c` in the open disk such that the images `μ_c(v_k) = (v_k − c)/(1 − conj(c)·v_k)`
//! sum to zero. It is the minimizer of
//! `E(c) = Σ_k log|1 − conj(c)·v_k|² − 5·log(1 − |c|²)`,
//! whose Wirtinger derivative is `∂E/∂conj(c) = −Σ_k μ_c(v_k)/(1 − |c|²)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hyperbolic::{CirclePoint, MobiusMap, C64};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 64;

/// Angular separation below which points count as coincident for the precondition.
pub const COINCIDENCE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpringbornError {
    #[error("three or more input points coincide (labels {0:?})")]
    ThreeCoincide(Vec<usize>),
    #[error("no convergence after {iterations} iterations: best c = {c}, residual {residual:e}")]
    NoConvergence { c: C64, residual: f64, iterations: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizationResult {
    pub c: C64,
    pub normalized: [CirclePoint; 5],
    /// `|Σ_k μ(v_k)| / 5` after normalization.
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalizeOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Post-rotate so that the first point lands on 1.
    pub fix_first: bool,
    /// Override the default initial guess.
    pub initial: Option<C64>,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        NormalizeOptions { tol: DEFAULT_TOL, max_iter: DEFAULT_MAX_ITER, fix_first: false, initial: None }
    }
}

/// `μ_c(z) = (z − c)/(1 − conj(c)·z)`.
pub fn mobius_center(c: C64, z: C64) -> C64 {
    (z - c) / (C64::new(1.0, 0.0) - c.conj() * z)
}

/// Energy and its gradient in the real coordinates `(Re c, Im c)`.
pub fn centroid_energy(c: C64, points: &[CirclePoint; 5]) -> (f64, [f64; 2]) {
    let s = 1.0 - c.norm_sqr();
    let mut e = -5.0 * s.ln();
    let mut sum = C64::new(0.0, 0.0);
    for p in points {
        let v = p.u();
        e += (C64::new(1.0, 0.0) - c.conj() * v).norm_sqr().ln();
        sum += mobius_center(c, v);
    }
    let g = -sum / s;
    (e, [2.0 * g.re, 2.0 * g.im])
}

fn hessian(c: C64, points: &[CirclePoint; 5]) -> [[f64; 2]; 2] {
    let s = 1.0 - c.norm_sqr();
    let a = 5.0 / (s * s);
    let mut b = C64::new(0.0, 0.0);
    for p in points {
        let v = p.u();
        let d = C64::new(1.0, 0.0) - c.conj() * v;
        b += c * c / (s * s) - v * v / (d * d);
    }
    [[2.0 * a + 2.0 * b.re, 2.0 * b.im], [2.0 * b.im, 2.0 * a - 2.0 * b.re]]
}

fn residual(c: C64, points: &[CirclePoint; 5]) -> f64 {
    points.iter().map(|p| mobius_center(c, p.u())).sum::<C64>().norm() / 5.0
}

fn check_precondition(points: &[CirclePoint; 5]) -> Result<(), SpringbornError> {
    for i in 0..5 {
        let close: Vec<usize> = (0..5)
            .filter(|&j| (points[i].u() * points[j].u().conj()).arg().abs() <= COINCIDENCE_TOL)
            .collect();
        if close.len() >= 3 {
            return Err(SpringbornError::ThreeCoincide(close));
        }
    }
    Ok(())
}

pub fn normalize(points: &[CirclePoint; 5], tol: f64, max_iter: usize) -> Result<NormalizationResult, SpringbornError> {
    normalize_with(points, NormalizeOptions { tol, max_iter, ..Default::default() })
}

pub fn normalize_with(points: &[CirclePoint; 5], opts: NormalizeOptions) -> Result<NormalizationResult, SpringbornError> {
    check_precondition(points)?;
    let mut c = opts.initial.unwrap_or_else(|| {
        let centroid = points.iter().map(|p| p.u()).sum::<C64>() / 5.0;
        let c0 = centroid * 0.5;
        if c0.norm() > 0.9 {
            c0 * (0.9 / c0.norm())
        } else {
            c0
        }
    });
    let mut res = residual(c, points);
    let mut iterations = 0;
    while res > opts.tol {
        if iterations >= opts.max_iter {
            return Err(SpringbornError::NoConvergence { c, residual: res, iterations });
        }
        iterations += 1;
        let (e, g) = centroid_energy(c, points);
        let h = hessian(c, points);
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        let newton = if h[0][0] > 0.0 && det > 0.0 {
            C64::new(-(h[1][1] * g[0] - h[0][1] * g[1]) / det, -(-h[1][0] * g[0] + h[0][0] * g[1]) / det)
        } else {
            let s = 1.0 - c.norm_sqr();
            C64::new(-g[0], -g[1]) * (s * s / 20.0)
        };
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let trial = c + newton * t;
            if trial.norm() < 1.0 {
                let (e_new, _) = centroid_energy(trial, points);
                let r_new = residual(trial, points);
                // Near the optimum E stalls at roundoff; the residual still guides.
                if e_new < e || r_new < res {
                    c = trial;
                    res = r_new;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            return Err(SpringbornError::NoConvergence { c, residual: res, iterations });
        }
    }
    let mut map = MobiusMap::disk_automorphism(c);
    if opts.fix_first {
        let first = mobius_center(c, points[0].u());
        map = MobiusMap::rotation(-first.arg()) * map;
    }
    let normalized = points.map(|p| map.apply_circle(p));
    let res = normalized.iter().map(|p| p.u()).sum::<C64>().norm() / 5.0;
    Ok(NormalizationResult { c, normalized, residual: res, iterations })
}

/// Minimizes `E` by successive 21×21 grid refinement until the grid step is at most
/// `final_step`. Used as an independent check of the Newton solver.
pub fn brute_force_center(points: &[CirclePoint; 5], final_step: f64) -> C64 {
    let energy = |c: C64| {
        if c.norm_sqr() >= 1.0 {
            f64::INFINITY
        } else {
            centroid_energy(c, points).0
        }
    };
    let mut center = C64::new(0.0, 0.0);
    let mut half = 1.0;
    loop {
        let step = half / 10.0;
        let mut best = (f64::INFINITY, center);
        for i in -10..=10 {
            for j in -10..=10 {
                let c = center + C64::new(i as f64 * step, j as f64 * step);
                let e = energy(c);
                if e < best.0 {
                    best = (e, c);
                }
            }
        }
        center = best.1;
        if step <= final_step {
            return center;
        }
        half = 2.0 * step;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::{cis, ALPHA};
    use proptest::prelude::*;

    fn roots() -> [CirclePoint; 5] {
        std::array::from_fn(|k| CirclePoint::from_angle(ALPHA * k as f64))
    }

    fn pts(angles: [f64; 5]) -> [CirclePoint; 5] {
        angles.map(CirclePoint::from_angle)
    }

    #[test]
    fn roots_of_unity_are_fixed() {
        let r = normalize(&roots(), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert!(r.c.norm() < 1e-15);
        assert_eq!(r.iterations, 0);
        for (a, b) in r.normalized.iter().zip(roots().iter()) {
            assert!((a.u() - b.u()).norm() < 1e-15);
        }
        let (_, g) = centroid_energy(C64::new(0.0, 0.0), &roots());
        assert!(g[0].abs() < 1e-15 && g[1].abs() < 1e-15);
    }

    #[test]
    fn round_trip_from_known_automorphism() {
        let d = C64::new(0.3, 0.2);
        let inv = MobiusMap::translation_to(d);
        let input = roots().map(|p| inv.apply_circle(p));
        let r = normalize(&input, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert!(r.residual <= 1e-12);
        assert!((r.c - d).norm() < 1e-10);
        let rot = r.normalized[0].u() * roots()[0].u().conj();
        for (a, b) in r.normalized.iter().zip(roots().iter()) {
            assert!((a.u() - b.u() * rot).norm() < 1e-10);
        }
    }

    #[test]
    fn coincident_pair_is_preserved() {
        let input = pts([0.0, 1.0, 2.5, 2.5, 4.5]);
        let r = normalize(&input, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert!(r.residual <= DEFAULT_TOL);
        assert!((r.normalized[2].u() - r.normalized[3].u()).norm() < 1e-14);
    }

    #[test]
    fn two_pairs_converge() {
        let input = pts([0.0, 0.0, 2.0, 2.0, 4.0]);
        let r = normalize(&input, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert!(r.residual <= DEFAULT_TOL);
    }

    #[test]
    fn triple_is_rejected() {
        let input = pts([1.0, 1.0, 1.0, 2.0, 4.0]);
        assert_eq!(
            normalize(&input, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap_err(),
            SpringbornError::ThreeCoincide(vec![0, 1, 2])
        );
    }

    #[test]
    fn iteration_cap_reports_best_iterate() {
        let input = pts([0.0, 0.1, 0.2, 0.3, 3.0]);
        match normalize(&input, DEFAULT_TOL, 1) {
            Err(SpringbornError::NoConvergence { iterations, residual, .. }) => {
                assert_eq!(iterations, 1);
                assert!(residual > 0.0);
            }
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn fix_first_variant() {
        let input = pts([0.4, 1.1, 2.9, 3.3, 5.0]);
        let r = normalize_with(&input, NormalizeOptions { fix_first: true, ..Default::default() }).unwrap();
        assert!((r.normalized[0].u() - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!(r.residual <= DEFAULT_TOL);
    }

    #[test]
    fn energy_blows_up_at_the_boundary() {
        let input = pts([0.4, 1.1, 2.9, 3.3, 5.0]);
        let dir = cis(0.7);
        let mut last = f64::NEG_INFINITY;
        for k in 0..20 {
            let r = 0.9 + 0.0999 * (1.0 - 0.5f64.powi(k));
            let (e, _) = centroid_energy(dir * r, &input);
            assert!(e > last);
            last = e;
        }
        assert!(last > 10.0);
    }

    #[test]
    fn brute_force_agrees() {
        let input = pts([0.4, 1.1, 2.9, 3.3, 5.0]);
        let r = normalize(&input, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let b = brute_force_center(&input, 1e-5);
        assert!((r.c - b).norm() < 1e-4);
    }

    fn admissible() -> impl Strategy<Value = [f64; 5]> {
        prop::array::uniform5(0.0..(2.0 * std::f64::consts::PI))
            .prop_filter("no near-triple", |a| {
                let mut s = a.to_vec();
                s.sort_by(f64::total_cmp);
                (0..5).all(|i| {
                    let gap1 = (s[(i + 1) % 5] - s[i]).rem_euclid(2.0 * std::f64::consts::PI);
                    let gap2 = (s[(i + 2) % 5] - s[(i + 1) % 5]).rem_euclid(2.0 * std::f64::consts::PI);
                    gap1 + gap2 > 0.05
                })
            })
    }

    proptest! {
        #[test]
        fn gradient_matches_finite_differences(a in admissible(), cr in 0.0..0.8f64, ct in 0.0..std::f64::consts::TAU) {
            let p = pts(a);
            let c = cis(ct) * cr;
            let h = 1e-6;
            let (_, g) = centroid_energy(c, &p);
            let fx = (centroid_energy(c + h, &p).0 - centroid_energy(c - h, &p).0) / (2.0 * h);
            let fy = (centroid_energy(c + C64::new(0.0, h), &p).0 - centroid_energy(c - C64::new(0.0, h), &p).0) / (2.0 * h);
            let scale = g[0].abs().max(g[1].abs()).max(1.0);
            prop_assert!((fx - g[0]).abs() <= 1e-6 * scale);
            prop_assert!((fy - g[1]).abs() <= 1e-6 * scale);
        }

        #[test]
        fn converges_with_small_residual(a in admissible()) {
            let r = normalize(&pts(a), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
            prop_assert!(r.residual <= DEFAULT_TOL);
            let sum: C64 = r.normalized.iter().map(|p| p.u()).sum();
            prop_assert!(sum.norm() <= 5.0 * DEFAULT_TOL);
            for q in &r.normalized {
                prop_assert!((q.u().norm() - 1.0).abs() <= 1e-12);
            }
        }

        #[test]
        fn mobius_equivariance(a in admissible(), dr in 0.0..0.7f64, dt in 0.0..std::f64::consts::TAU, rot in 0.0..std::f64::consts::TAU) {
            let p = pts(a);
            let nu = MobiusMap::rotation(rot) * MobiusMap::disk_automorphism(cis(dt) * dr);
            let moved = p.map(|x| nu.apply_circle(x));
            let r1 = normalize(&p, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
            let r2 = normalize(&moved, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
            let phase = r2.normalized[0].u() * r1.normalized[0].u().conj();
            for k in 0..5 {
                prop_assert!((r2.normalized[k].u() - r1.normalized[k].u() * phase).norm() <= 1e-9);
            }
        }

        #[test]
        fn unique_under_multistart(a in admissible(), seeds in prop::array::uniform16((0.0..0.95f64, 0.0..std::f64::consts::TAU))) {
            let p = pts(a);
            let base = normalize(&p, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
            for (r, t) in seeds {
                let opts = NormalizeOptions { initial: Some(cis(t) * r), max_iter: 200, ..Default::default() };
                let other = normalize_with(&p, opts).unwrap();
                prop_assert!((other.c - base.c).norm() <= 1e-9);
            }
        }

        #[test]
        fn deterministic(a in admissible()) {
            let r1 = normalize(&pts(a), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
            let r2 = normalize(&pts(a), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
            prop_assert_eq!(r1.c.re.to_bits(), r2.c.re.to_bits());
            prop_assert_eq!(r1.c.im.to_bits(), r2.c.im.to_bits());
        }
    }
}
