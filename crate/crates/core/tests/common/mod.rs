//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_traits::{Signed, Zero};
use rand::Rng;
use std::path::PathBuf;

use symconn::poly::UniPoly;
use symconn::rational::{q, qr, to_f64, Q};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn corpus() -> PathBuf {
    fixtures().join("corpus")
}

// ---------------------------------------------------------------- Sturm

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let nz: Vec<i8> = signs.filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign_of(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of distinct real roots by Sturm's theorem.
pub fn sturm_count(p: &UniPoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let r = seq[seq.len() - 2].rem(&seq[seq.len() - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    let c = p.coeffs();
    let lc = c.last().unwrap().abs();
    let bound = c.iter().map(|a| a.abs() / &lc).fold(Q::zero(), |m, v| if v > m { v } else { m }) + q(1);
    let at = |x: &Q| variations(seq.iter().map(|s| sign_of(&s.eval(x))));
    at(&-bound.clone()) - at(&bound)
}

/// Random integer polynomial of degree `1..=max_deg`, sometimes with a repeated factor.
pub fn random_poly(rng: &mut impl Rng, max_deg: usize) -> UniPoly {
    let deg = rng.gen_range(1..=max_deg);
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
    if c[deg] == 0 {
        c[deg] = 1;
    }
    let p = UniPoly::from_ints(&c);
    if deg + 2 <= max_deg && rng.gen_bool(0.3) {
        let f = UniPoly::from_ints(&[rng.gen_range(-3..=3), 1]);
        return &p * &(&f * &f);
    }
    p
}

// ---------------------------------------------------------------- fibers

pub fn power_sums(x: &[f64], d: usize) -> Vec<f64> {
    (1..=d).map(|j| x.iter().map(|v| v.powi(j as i32)).sum()).collect()
}

/// Newton projection of `y` onto `{p_j(y) = a_j, j <= d}` by minimum-norm steps.
pub fn project_to_fiber(mut y: Vec<f64>, a: &[f64]) -> Option<Vec<f64>> {
    let d = a.len();
    for _ in 0..60 {
        let r: Vec<f64> = power_sums(&y, d).iter().zip(a).map(|(p, t)| p - t).collect();
        if r.iter().all(|v| v.abs() < 1e-13) {
            return Some(y);
        }
        // J[j][i] = (j+1) y_i^j
        let jac: Vec<Vec<f64>> =
            (0..d).map(|j| y.iter().map(|v| (j + 1) as f64 * v.powi(j as i32)).collect()).collect();
        let mut g = vec![vec![0.0; d]; d];
        for (r1, row1) in jac.iter().enumerate() {
            for (r2, row2) in jac.iter().enumerate() {
                g[r1][r2] = row1.iter().zip(row2).map(|(u, v)| u * v).sum();
            }
        }
        let w = solve(g, r)?;
        for (i, yi) in y.iter_mut().enumerate() {
            *yi -= (0..d).map(|j| jac[j][i] * w[j]).sum::<f64>();
        }
        if y.iter().any(|v| !v.is_finite() || v.abs() > 1e6) {
            return None;
        }
    }
    None
}

fn solve(mut m: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        if m[p][c].abs() < 1e-14 {
            return None;
        }
        m.swap(c, p);
        b.swap(c, p);
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            let pivot = m[c].clone();
            for (dst, src) in m[r][c..n].iter_mut().zip(&pivot[c..n]) {
                *dst -= f * src;
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        x[r] = (b[r] - (r + 1..n).map(|k| m[r][k] * x[k]).sum::<f64>()) / m[r][r];
    }
    Some(x)
}

/// Smallest `p_{d+1}` seen over `samples` random points of the fiber through
/// the sorted `x`, restricted to the chamber.
pub fn sampled_fiber_min(x: &[Q], d: usize, samples: usize, rng: &mut impl Rng) -> f64 {
    let xf: Vec<f64> = x.iter().map(to_f64).collect();
    let a = power_sums(&xf, d);
    let spread = xf.iter().map(|v| v.abs()).fold(1.0, f64::max) * 1.5;
    let mut best = power_sums(&xf, d + 1)[d];
    for k in 0..samples {
        let y0: Vec<f64> = if k % 2 == 0 {
            (0..xf.len()).map(|_| rng.gen_range(-spread..spread)).collect()
        } else {
            xf.iter().map(|v| v + rng.gen_range(-0.3..0.3)).collect()
        };
        if let Some(mut y) = project_to_fiber(y0, &a) {
            y.sort_by(f64::total_cmp);
            best = best.min(power_sums(&y, d + 1)[d]);
        }
    }
    best
}

// ---------------------------------------------------------------- unions

/// A disc (or interval when `dim == 1`) with rational centre and radius.
#[derive(Clone, Debug)]
pub struct Ball {
    pub centre: Vec<Q>,
    pub radius: Q,
}

impl Ball {
    fn contains_f(&self, x: &[f64]) -> bool {
        let r = to_f64(&self.radius);
        let d2: f64 = self.centre.iter().zip(x).map(|(c, v)| (to_f64(c) - v).powi(2)).sum();
        d2 <= r * r
    }
}

/// `k` random balls in `[-2, 2]^dim`, kept away from tangency so the count is robust.
pub fn random_balls(rng: &mut impl Rng, dim: usize, k: usize) -> Vec<Ball> {
    loop {
        let balls: Vec<Ball> = (0..k)
            .map(|_| Ball {
                centre: (0..dim).map(|_| qr(rng.gen_range(-12..=12), 8)).collect(),
                radius: qr(rng.gen_range(2..=6), 8),
            })
            .collect();
        let ok = balls.iter().enumerate().all(|(i, a)| {
            balls[i + 1..].iter().all(|b| {
                let d: f64 = a
                    .centre
                    .iter()
                    .zip(&b.centre)
                    .map(|(u, v)| (to_f64(u) - to_f64(v)).powi(2))
                    .sum::<f64>()
                    .sqrt();
                let (ra, rb) = (to_f64(&a.radius), to_f64(&b.radius));
                (d - (ra + rb)).abs() > 0.2 && (d - (ra - rb).abs()).abs() > 0.2
            })
        });
        if ok {
            return balls;
        }
    }
}

/// Components of the union on a fine grid, by a flood fill written for the test.
pub fn union_components(balls: &[Ball], dim: usize) -> usize {
    let per = 400 / (dim * dim) * 2;
    let (lo, hi) = (-2.0, 2.0);
    let h = (hi - lo) / per as f64;
    let total = per.pow(dim as u32);
    let coords = |mut idx: usize| -> Vec<f64> {
        (0..dim)
            .map(|_| {
                let i = idx % per;
                idx /= per;
                lo + (i as f64 + 0.5) * h
            })
            .collect()
    };
    let inside: Vec<bool> = (0..total).map(|i| balls.iter().any(|b| b.contains_f(&coords(i)))).collect();
    let mut seen = vec![false; total];
    let mut count = 0;
    for start in 0..total {
        if !inside[start] || seen[start] {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(c) = stack.pop() {
            let mut stride = 1;
            for _ in 0..dim {
                let i = (c / stride) % per;
                let mut nb = Vec::new();
                if i > 0 {
                    nb.push(c - stride);
                }
                if i + 1 < per {
                    nb.push(c + stride);
                }
                for m in nb {
                    if inside[m] && !seen[m] {
                        seen[m] = true;
                        stack.push(m);
                    }
                }
                stride *= per;
            }
        }
    }
    count
}
