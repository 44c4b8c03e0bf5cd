//! Symmetric constraint systems written in the power-sum basis, weighted power
//! sums, the Vandermonde map, and restriction to faces of the Weyl chamber.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::composition::Composition;
use crate::error::{domain, Result};
use crate::poly::{CompiledPoly, Monomial, MultiPoly};
use crate::rational::{format_rational, q, sign, Q};

/// `g(Z_1, ..., Z_d)` where `Z_j` stands for the power sum `p_j` (weight `j`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSumPoly {
    d: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl PowerSumPoly {
    pub fn new(d: usize, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Result<Self> {
        let mut map: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != d {
                return Err(domain(format!("exponent vector {e:?} should have {d} entries")));
            }
            let w = weighted_degree(&e);
            if w > d {
                return Err(domain(format!(
                    "term {e:?} has weighted degree {w}, above the bound {d}"
                )));
            }
            *map.entry(e).or_insert_with(Q::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(PowerSumPoly { d, terms: map })
    }

    pub fn constant(d: usize, c: Q) -> Self {
        PowerSumPoly::new(d, [(vec![0; d], c)]).unwrap()
    }

    /// The generator `Z_j` (1-based).
    pub fn generator(d: usize, j: usize) -> Result<Self> {
        if j == 0 || j > d {
            return Err(domain(format!("power sum Z_{j} outside 1..{d}")));
        }
        let mut e = vec![0; d];
        e[j - 1] = 1;
        PowerSumPoly::new(d, [(e, Q::one())])
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn weighted_degree(&self) -> usize {
        self.terms.keys().map(|e| weighted_degree(e)).max().unwrap_or(0)
    }

    /// Value at given power-sum values `(p_1, ..., p_d)`.
    pub fn eval(&self, p: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(p)
                    .fold(c.clone(), |acc, (&k, v)| acc * num_traits::pow(v.clone(), k as usize))
            })
            .fold(Q::zero(), |a, b| a + b)
    }

    pub fn compile(&self) -> CompiledPowerSum {
        assert!(self.d <= MAX_COMPILED_D, "at most {MAX_COMPILED_D} power sums supported");
        CompiledPowerSum {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (crate::rational::to_f64(c), e.clone()))
                .collect(),
        }
    }

    /// Substitute weighted power sums of the face `λ`: an `ℓ(λ)`-variate polynomial.
    pub fn restrict_to(&self, lambda: &Composition) -> MultiPoly {
        let weights: Vec<u32> = lambda.parts().iter().map(|&p| p as u32).collect();
        let images: Vec<MultiPoly> =
            (1..=self.d).map(|j| weighted_power_sum(j as u32, &weights)).collect();
        let as_multi = MultiPoly::from_terms(self.d, self.terms.iter().map(|(e, c)| (e.clone(), c.clone())));
        if self.d == 0 {
            return MultiPoly::constant(lambda.len(), self.eval(&[]));
        }
        as_multi.substitute(&images)
    }
}

fn weighted_degree(e: &[u32]) -> usize {
    e.iter().enumerate().map(|(j, &k)| (j + 1) * k as usize).sum()
}

impl fmt::Display for PowerSumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", format_rational(c))?;
            for (j, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*Z{}", j + 1)?,
                    _ => write!(f, "*Z{}^{p}", j + 1)?,
                }
            }
        }
        Ok(())
    }
}

const MAX_COMPILED_D: usize = 32;

/// Floating-point image of a [`PowerSumPoly`].
#[derive(Clone, Debug)]
pub struct CompiledPowerSum {
    d: usize,
    terms: Vec<(f64, Monomial)>,
}

impl CompiledPowerSum {
    pub fn d(&self) -> usize {
        self.d
    }

    /// Evaluate at the point `z` with block weights `w`.
    pub fn eval_weighted(&self, z: &[f64], w: &[f64]) -> f64 {
        let mut p = [0.0f64; MAX_COMPILED_D];
        let mut pows: Vec<f64> = w.to_vec();
        for slot in p.iter_mut().take(self.d) {
            let mut s = 0.0;
            for (k, zk) in z.iter().enumerate() {
                pows[k] *= zk;
                s += pows[k];
            }
            *slot = s;
        }
        self.terms
            .iter()
            .map(|(c, e)| {
                e.iter()
                    .enumerate()
                    .fold(*c, |acc, (j, &k)| if k == 0 { acc } else { acc * p[j].powi(k as i32) })
            })
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// `g >= 0`
    Ge,
    /// `g = 0`
    Eq,
    /// `g > 0`
    Gt,
}

impl Relation {
    pub fn holds(self, s: i8) -> bool {
        match self {
            Relation::Ge => s >= 0,
            Relation::Eq => s == 0,
            Relation::Gt => s > 0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Eq => "=",
            Relation::Gt => ">",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub g: PowerSumPoly,
    pub rel: Relation,
}

/// Axis-aligned box `[lo, hi]^n`; symmetric because every coordinate shares the bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundingBox {
    pub lo: Q,
    pub hi: Q,
}

impl BoundingBox {
    pub fn new(lo: Q, hi: Q) -> Result<Self> {
        if lo > hi {
            return Err(domain(format!(
                "empty bounding box [{}, {}]",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        Ok(BoundingBox { lo, hi })
    }

    /// Accepts per-coordinate bounds, which must agree across coordinates.
    pub fn from_vectors(lo: &[Q], hi: &[Q], n: usize) -> Result<Self> {
        if lo.len() != n || hi.len() != n {
            return Err(domain(format!("bounding box vectors must have {n} entries")));
        }
        if lo.iter().any(|v| v != &lo[0]) || hi.iter().any(|v| v != &hi[0]) {
            return Err(domain(
                "bounding box must be invariant under coordinate permutations (equal bounds in every coordinate)",
            ));
        }
        BoundingBox::new(lo[0].clone(), hi[0].clone())
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        x.iter().all(|v| v >= &self.lo && v <= &self.hi)
    }
}

/// A basic semi-algebraic symmetric set: a conjunction of power-sum constraints
/// inside a bounding box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricSystem {
    pub n: usize,
    pub d: usize,
    pub constraints: Vec<Constraint>,
    pub bbox: BoundingBox,
}

/// Outcome of evaluating a system at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub holds: bool,
    pub signs: Vec<i8>,
    pub in_box: bool,
}

impl SymmetricSystem {
    pub fn new(n: usize, d: usize, constraints: Vec<Constraint>, bbox: BoundingBox) -> Result<Self> {
        if d == 0 || d > n {
            return Err(domain(format!("degree bound d = {d} must satisfy 1 <= d <= n = {n}")));
        }
        if let Some(c) = constraints.iter().find(|c| c.g.d() > d) {
            return Err(domain(format!("constraint {} uses more than {d} power sums", c.g)));
        }
        let constraints = constraints
            .into_iter()
            .map(|c| Constraint { g: widen(&c.g, d), rel: c.rel })
            .collect();
        Ok(SymmetricSystem { n, d, constraints, bbox })
    }

    /// Constraint signs at `x`; `holds` ignores the box, which is reported separately.
    pub fn eval_membership(&self, x: &[Q]) -> Result<Membership> {
        if x.len() != self.n {
            return Err(domain(format!("point has {} coordinates, expected {}", x.len(), self.n)));
        }
        let p = vandermonde_map(x, self.d, None)?;
        let signs: Vec<i8> = self.constraints.iter().map(|c| sign(&c.g.eval(&p))).collect();
        let holds = self.constraints.iter().zip(&signs).all(|(c, &s)| c.rel.holds(s));
        Ok(Membership { holds, signs, in_box: self.bbox.contains(x) })
    }

    pub fn contains(&self, x: &[Q]) -> Result<bool> {
        let m = self.eval_membership(x)?;
        Ok(m.holds && m.in_box)
    }

    pub fn restrict(&self, lambda: &Composition) -> Result<FaceSystem> {
        if lambda.n() != self.n {
            return Err(domain(format!("face {lambda} is not a composition of {}", self.n)));
        }
        Ok(FaceSystem {
            lambda: lambda.clone(),
            n: self.n,
            constraints: self
                .constraints
                .iter()
                .map(|c| (c.g.restrict_to(lambda), c.rel))
                .collect(),
            bbox: self.bbox.clone(),
        })
    }
}

fn widen(g: &PowerSumPoly, d: usize) -> PowerSumPoly {
    if g.d() == d {
        return g.clone();
    }
    PowerSumPoly::new(
        d,
        g.terms().map(|(e, c)| {
            let mut e2 = e.clone();
            e2.resize(d, 0);
            (e2, c.clone())
        }),
    )
    .expect("widening keeps the weighted degree")
}

/// The restriction of a system to the face `W_c^λ`, in `ℓ(λ)` block variables.
#[derive(Clone, Debug)]
pub struct FaceSystem {
    pub lambda: Composition,
    pub n: usize,
    pub constraints: Vec<(MultiPoly, Relation)>,
    pub bbox: BoundingBox,
}

impl FaceSystem {
    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    /// Constraint signs at block coordinates `z` (chamber order not checked).
    pub fn signs(&self, z: &[Q]) -> Vec<i8> {
        self.constraints.iter().map(|(p, _)| sign(&p.eval(z))).collect()
    }

    pub fn satisfied(&self, z: &[Q]) -> bool {
        self.constraints.iter().all(|(p, r)| r.holds(sign(&p.eval(z))))
    }

    pub fn compiled(&self) -> Vec<(CompiledPoly, Relation)> {
        self.constraints.iter().map(|(p, r)| (p.compile(), *r)).collect()
    }
}

/// `Σ_i m_i X_i^j` in `m.len()` variables.
pub fn weighted_power_sum(j: u32, m: &[u32]) -> MultiPoly {
    let l = m.len();
    MultiPoly::from_terms(
        l,
        m.iter().enumerate().map(|(i, &w)| {
            let mut e = vec![0; l];
            e[i] = j;
            (e, q(w as i64))
        }),
    )
}

/// `(p_1^{(m)}(x), ..., p_d^{(m)}(x))`; unit weights when `m` is `None`.
pub fn vandermonde_map(x: &[Q], d: usize, m: Option<&[usize]>) -> Result<Vec<Q>> {
    if let Some(w) = m {
        if w.len() != x.len() {
            return Err(domain(format!(
                "weight vector has {} entries for {} coordinates",
                w.len(),
                x.len()
            )));
        }
    }
    let mut pows: Vec<Q> = match m {
        Some(w) => w.iter().map(|&k| q(k as i64)).collect(),
        None => vec![Q::one(); x.len()],
    };
    Ok((0..d)
        .map(|_| {
            pows.iter_mut().zip(x).for_each(|(p, v)| *p *= v);
            pows.iter().fold(Q::zero(), |a, b| a + b)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{qr, qvec};

    fn ball(n: usize) -> SymmetricSystem {
        let g = PowerSumPoly::new(2, [(vec![0, 0], q(1)), (vec![0, 1], q(-1))]).unwrap();
        SymmetricSystem::new(
            n,
            2,
            vec![Constraint { g, rel: Relation::Ge }],
            BoundingBox::new(q(-2), q(2)).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn weighted_sums() {
        let p = weighted_power_sum(2, &[2, 1]);
        assert_eq!(p.eval(&qvec(&[1, 3])), q(11));
        let p = weighted_power_sum(3, &[1, 2, 1]);
        assert_eq!(p.eval(&qvec(&[1, 1, 1])), q(4));
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde_map(&qvec(&[1, 1, 2]), 2, None).unwrap(), qvec(&[4, 6]));
        assert_eq!(vandermonde_map(&qvec(&[0, 0]), 3, Some(&[1, 4])).unwrap(), qvec(&[0, 0, 0]));
        assert_eq!(
            vandermonde_map(&[qr(-4, 5), qr(3, 5)], 2, None).unwrap(),
            vec![qr(-1, 5), q(1)]
        );
    }

    #[test]
    fn restriction_of_ball() {
        let sys = ball(3);
        let face = sys.restrict(&Composition::new(vec![2, 1]).unwrap()).unwrap();
        let mut expected = MultiPoly::constant(2, q(1));
        expected.add_term(vec![2, 0], q(-2));
        expected.add_term(vec![0, 2], q(-1));
        assert_eq!(face.constraints[0].0, expected);
        let full = sys.restrict(&Composition::ones(3)).unwrap();
        let x = vec![qr(1, 3), qr(-1, 2), q(0)];
        assert_eq!(full.signs(&x), sys.eval_membership(&x).unwrap().signs);
    }

    #[test]
    fn membership_examples() {
        let m = ball(3).eval_membership(&qvec(&[0, 0, 0])).unwrap();
        assert!(m.holds && m.in_box);
        assert_eq!(m.signs, vec![1]);

        let g = PowerSumPoly::new(2, [(vec![2, 0], q(1)), (vec![0, 0], q(-1))]).unwrap();
        let sys = SymmetricSystem::new(
            3,
            2,
            vec![Constraint { g, rel: Relation::Ge }],
            BoundingBox::new(q(-2), q(2)).unwrap(),
        )
        .unwrap();
        let m = sys.eval_membership(&[qr(1, 3), qr(1, 3), qr(1, 3)]).unwrap();
        assert!(m.holds);
        assert_eq!(m.signs, vec![0]);

        let g = PowerSumPoly::new(2, [(vec![0, 1], q(1)), (vec![0, 0], q(-1))]).unwrap();
        let circle = SymmetricSystem::new(
            2,
            2,
            vec![Constraint { g, rel: Relation::Eq }],
            BoundingBox::new(q(-2), q(2)).unwrap(),
        )
        .unwrap();
        assert!(circle.contains(&[qr(-4, 5), qr(3, 5)]).unwrap());
    }

    #[test]
    fn rejects_heavy_terms_and_bad_degree() {
        assert!(PowerSumPoly::new(2, [(vec![1, 1], q(1))]).is_err());
        assert!(PowerSumPoly::new(3, [(vec![1, 1, 0], q(1))]).is_ok());
        let b = BoundingBox::new(q(-1), q(1)).unwrap();
        assert!(SymmetricSystem::new(2, 3, vec![], b).is_err());
    }
}
