//! Fibers of the weighted Vandermonde map on chamber faces, and the canonical
//! minimizer of `p_{d+1}` on a fiber.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::algebraic::{real_roots, sign_at_loc, AlgebraicPoint, RealAlgebraic};
use crate::composition::{enumerate_compmax, Composition, Pattern};
use crate::error::{domain, Error, Result};
use crate::groebner::{identity, mat_mul, rank, trace, Matrix, Quotient};
use crate::poly::{MultiPoly, UniPoly};
use crate::rational::{q, Q};
use crate::sympoly::weighted_power_sum;

/// Rational univariate representation of the solutions of
/// `p_j^{(λ)}(z) = a_j`, `j = 1..d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroDimParametrization {
    pub lambda: Composition,
    /// Square-free, monic; its roots are the values of the separating form.
    pub q: UniPoly,
    pub q0: UniPoly,
    pub coords: Vec<UniPoly>,
}

impl ZeroDimParametrization {
    /// Number of distinct complex solutions.
    pub fn degree(&self) -> usize {
        self.q.degree().unwrap_or(0)
    }
}

/// Charpoly of `m` from the power traces `Tr(m^k)` by Newton's identities.
fn charpoly_from_traces(traces: &[Q], n: usize) -> UniPoly {
    // e_k = (1/k) Σ_{i=1..k} (-1)^{i-1} e_{k-i} s_i
    let mut e = vec![Q::one()];
    for k in 1..=n {
        let mut acc = Q::zero();
        for i in 1..=k {
            let term = &e[k - i] * &traces[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / q(k as i64));
    }
    // χ(T) = Σ_k (-1)^k e_k T^{n-k}
    let mut coeffs = vec![Q::zero(); n + 1];
    for (k, ek) in e.iter().enumerate() {
        coeffs[n - k] = if k % 2 == 0 { ek.clone() } else { -ek.clone() };
    }
    UniPoly::new(coeffs)
}

/// Horner shifts `H_j = Σ_{k>j} a_k T^{k-j-1}` of `q`, `j = 0..deg q - 1`.
fn horner_shifts(qp: &UniPoly) -> Vec<UniPoly> {
    let deg = qp.degree().unwrap_or(0);
    (0..deg)
        .map(|j| UniPoly::new((j + 1..=deg).map(|k| qp.coeff(k)).collect()))
        .collect()
}

/// Solve the structured power-sum system on the face `λ` exactly.
pub fn solve_face_system(lambda: &Composition, a: &[Q]) -> Result<ZeroDimParametrization> {
    let d = lambda.len();
    if a.len() != d {
        return Err(domain(format!(
            "face {lambda} has {d} block variables but the target has {} entries",
            a.len()
        )));
    }
    let weights: Vec<u32> = lambda.parts().iter().map(|&p| p as u32).collect();
    let gens: Vec<MultiPoly> = (1..=d)
        .map(|j| &weighted_power_sum(j as u32, &weights) - &MultiPoly::constant(d, a[j - 1].clone()))
        .collect();
    let quo = Quotient::new(&gens)?;
    let dim = quo.dim();
    if dim == 0 {
        return Ok(ZeroDimParametrization {
            lambda: lambda.clone(),
            q: UniPoly::one(),
            q0: UniPoly::one(),
            coords: vec![UniPoly::zero(); d],
        });
    }
    let mults: Vec<Matrix> = (0..d).map(|i| quo.mult_matrix(&MultiPoly::var(d, i))).collect();
    let hermite_rank = {
        let mut h = vec![vec![Q::zero(); dim]; dim];
        let prods = products(&quo, &mults, dim);
        for (i, row) in h.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = trace(&mat_mul(&prods[i], &prods[j]));
            }
        }
        rank(&h)
    };
    for c in 1..=(dim * dim + d) as i64 {
        // t = x_1 + c x_2 + c^2 x_3 + ...
        let mut mt = vec![vec![Q::zero(); dim]; dim];
        let mut w = Q::one();
        for m in &mults {
            for (r, row) in mt.iter_mut().enumerate() {
                for (s, v) in row.iter_mut().enumerate() {
                    *v += &w * &m[r][s];
                }
            }
            w *= q(c);
        }
        let mut powers = vec![identity(dim)];
        for _ in 1..dim {
            let next = mat_mul(powers.last().unwrap(), &mt);
            powers.push(next);
        }
        let mut traces: Vec<Q> = powers.iter().map(trace).collect();
        traces.push(trace(&mat_mul(powers.last().unwrap(), &mt)));
        let chi = charpoly_from_traces(&traces, dim);
        let qbar = chi.squarefree().monic();
        if qbar.degree().unwrap_or(0) != hermite_rank {
            continue;
        }
        let shifts = horner_shifts(&qbar);
        let delta = shifts.len();
        let rur = |m: &Matrix| -> UniPoly {
            (0..delta).fold(UniPoly::zero(), |acc, j| {
                let tr = trace(&mat_mul(m, &powers_get(&powers, &mt, j)));
                &acc + &shifts[j].scale(&tr)
            })
        };
        let q0 = rur(&identity(dim)).rem(&qbar);
        let coords = mults.iter().map(|m| rur(m).rem(&qbar)).collect();
        return Ok(ZeroDimParametrization { lambda: lambda.clone(), q: qbar, q0, coords });
    }
    Err(Error::Solver(format!("no separating linear form found on face {lambda}")))
}

fn powers_get(powers: &[Matrix], mt: &Matrix, j: usize) -> Matrix {
    if j < powers.len() {
        powers[j].clone()
    } else {
        mat_mul(&powers[powers.len() - 1], mt)
    }
}

/// Multiplication matrices of the standard monomials, used for the Hermite form.
fn products(quo: &Quotient, mults: &[Matrix], dim: usize) -> Vec<Matrix> {
    quo.basis
        .iter()
        .map(|mono| {
            mono.iter().enumerate().fold(identity(dim), |acc, (i, &e)| {
                (0..e).fold(acc, |acc2, _| mat_mul(&acc2, &mults[i]))
            })
        })
        .collect()
}

/// The real solutions with `z_1 <= ... <= z_d`, decided exactly.
pub fn ordered_real_solutions(param: &ZeroDimParametrization) -> Result<Vec<AlgebraicPoint>> {
    if param.q.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let rs = real_roots(&param.q)?;
    let diffs: Vec<UniPoly> = param.coords.windows(2).map(|w| &w[0] - &w[1]).collect();
    let mut out = Vec::new();
    for (loc, code) in rs.roots {
        let mut loc = loc;
        let s0 = sign_at_loc(&rs.qbar, &mut loc, &param.q0);
        // z_i <= z_{i+1} iff sign(q_i - q_{i+1}) * sign(q_0) <= 0
        if diffs.iter().all(|df| sign_at_loc(&rs.qbar, &mut loc, df) * s0 <= 0) {
            out.push(AlgebraicPoint {
                q: param.q.clone(),
                q0: param.q0.clone(),
                coords: param.coords.clone(),
                code,
            });
        }
    }
    Ok(out)
}

/// Canonical point of a fiber `V(a) ∩ W_c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalPoint {
    /// `n` coordinates, block-duplicated from the face solution.
    pub point: AlgebraicPoint,
    /// The alternate odd face the minimizer was found on.
    pub face: Composition,
}

/// `p_{d+1}` at a block point, as a comparable real number.
fn next_power_sum(pt: &AlgebraicPoint, lambda: &Composition, d: usize) -> Result<RealAlgebraic> {
    let (qbar, loc) = pt.locate()?;
    let e = (d + 1) as u32;
    let num = lambda
        .parts()
        .iter()
        .zip(&pt.coords)
        .fold(UniPoly::zero(), |acc, (&m, c)| &acc + &c.pow(e).scale(&q(m as i64)))
        .rem(&qbar);
    let den = pt.q0.pow(e).rem(&qbar);
    Ok(RealAlgebraic::new(qbar, loc, num, den))
}

/// The minimizer of `p_{d+1}` on `V(a) ∩ W_c ⊂ ℝⁿ`, or `None` when the fiber
/// misses the chamber.
pub fn min_canonical(a: &[Q], n: usize, pattern: Pattern) -> Result<Option<CanonicalPoint>> {
    let d = a.len();
    if d == 0 || d > n {
        return Err(domain(format!("target of length {d} needs 1 <= d <= n = {n}")));
    }
    let faces = enumerate_compmax(n, d, pattern)?;
    let per_face: Vec<Result<Vec<(Composition, AlgebraicPoint)>>> = faces
        .par_iter()
        .map(|lambda| {
            let param = solve_face_system(lambda, a)?;
            Ok(ordered_real_solutions(&param)?
                .into_iter()
                .map(|p| (lambda.clone(), p))
                .collect())
        })
        .collect();
    let mut candidates = Vec::new();
    for r in per_face {
        candidates.extend(r?);
    }
    let mut best: Option<(Composition, AlgebraicPoint, RealAlgebraic)> = None;
    for (lambda, pt) in candidates {
        let mut val = next_power_sum(&pt, &lambda, d)?;
        let better = match &mut best {
            None => true,
            Some((_, _, bv)) => val.compare(bv) == Ordering::Less,
        };
        if better {
            best = Some((lambda, pt, val));
        }
    }
    Ok(best.map(|(lambda, pt, _)| {
        let coords = lambda
            .embed(&pt.coords)
            .expect("face solution has one coordinate per block");
        CanonicalPoint {
            point: AlgebraicPoint { q: pt.q, q0: pt.q0, coords, code: pt.code },
            face: lambda,
        }
    }))
}

/// Exact `p_{d+1}` of a canonical point as a comparable real number.
pub fn canonical_value(c: &CanonicalPoint, d: usize) -> Result<RealAlgebraic> {
    let (qbar, loc) = c.point.locate()?;
    let e = (d + 1) as u32;
    let num = c
        .point
        .coords
        .iter()
        .fold(UniPoly::zero(), |acc, x| &acc + &x.pow(e))
        .rem(&qbar);
    let den = c.point.q0.pow(e).rem(&qbar);
    Ok(RealAlgebraic::new(qbar, loc, num, den))
}

/// Signs of `p_j(x) - a_j`, `j = 1..|a|`, at an algebraic point; all zero on the fiber.
pub fn fiber_residual_signs(pt: &AlgebraicPoint, a: &[Q]) -> Result<Vec<i8>> {
    let (qbar, mut loc) = pt.locate()?;
    let mut out = Vec::with_capacity(a.len());
    for (j, aj) in a.iter().enumerate() {
        let e = (j + 1) as u32;
        let den = pt.q0.pow(e).rem(&qbar);
        let num = pt.coords.iter().fold(UniPoly::zero(), |acc, x| &acc + &x.pow(e)).rem(&qbar);
        let diff = &num - &den.scale(aj);
        out.push(sign_at_loc(&qbar, &mut loc, &diff) * sign_at_loc(&qbar, &mut loc, &den));
    }
    Ok(out)
}
