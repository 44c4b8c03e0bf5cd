//! Buchberger's algorithm in graded reverse lexicographic order and
//! multiplication matrices of zero-dimensional quotient rings.

use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};
use crate::rational::Q;

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(b: &[u32], a: &[u32]) -> Monomial {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

/// Polynomial with terms sorted by decreasing grevlex order.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Sorted {
    terms: Vec<(Monomial, Q)>,
}

impl Sorted {
    fn from_multi(p: &MultiPoly) -> Self {
        let mut terms: Vec<(Monomial, Q)> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|x, y| grevlex(&y.0, &x.0));
        Sorted { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn monic(mut self) -> Self {
        if let Some(lc) = self.terms.first().map(|t| t.1.clone()) {
            for t in &mut self.terms {
                t.1 /= &lc;
            }
        }
        self
    }

    /// `self - c * m * other`
    fn sub_scaled(&self, c: &Q, m: &[u32], other: &Sorted) -> Sorted {
        let shifted = other
            .terms
            .iter()
            .map(|(e, v)| (e.iter().zip(m).map(|(a, b)| a + b).collect::<Monomial>(), v * c));
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (e, v) = b.next().unwrap();
                    out.push((e, -v));
                }
                (Some(x), Some(y)) => match grevlex(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap()),
                    Ordering::Less => {
                        let (e, v) = b.next().unwrap();
                        out.push((e, -v));
                    }
                    Ordering::Equal => {
                        let (e, v) = a.next().unwrap();
                        let (_, w) = b.next().unwrap();
                        let s = v - w;
                        if !s.is_zero() {
                            out.push((e, s));
                        }
                    }
                },
            }
        }
        Sorted { terms: out }
    }

    fn to_multi(&self, nvars: usize) -> MultiPoly {
        MultiPoly::from_terms(nvars, self.terms.iter().cloned())
    }
}

/// Full reduction of `f` modulo monic `g`.
fn reduce(f: &Sorted, g: &[Sorted]) -> Sorted {
    let mut rest = f.clone();
    let mut out: Vec<(Monomial, Q)> = Vec::new();
    'outer: while !rest.is_zero() {
        let (lm, lc) = rest.terms[0].clone();
        for gi in g {
            if divides(gi.lm(), &lm) {
                let m = quotient(&lm, gi.lm());
                rest = rest.sub_scaled(&lc, &m, gi);
                continue 'outer;
            }
        }
        out.push(rest.terms.remove(0));
    }
    Sorted { terms: out }
}

fn s_poly(f: &Sorted, g: &Sorted) -> Sorted {
    let l = lcm(f.lm(), g.lm());
    let mf = quotient(&l, f.lm());
    let mg = quotient(&l, g.lm());
    let zero = Sorted { terms: Vec::new() };
    zero.sub_scaled(&-Q::one(), &mf, f).sub_scaled(&Q::one(), &mg, g)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    nvars: usize,
    basis: Vec<Sorted>,
}

impl GroebnerBasis {
    pub fn new(gens: &[MultiPoly]) -> Self {
        let nvars = gens.first().map_or(0, MultiPoly::nvars);
        let mut g: Vec<Sorted> = gens
            .iter()
            .map(Sorted::from_multi)
            .filter(|p| !p.is_zero())
            .map(Sorted::monic)
            .collect();
        let mut pairs: VecDeque<(usize, usize)> =
            (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        while let Some((i, j)) = pairs.pop_front() {
            let (a, b) = (g[i].lm(), g[j].lm());
            // coprime leading monomials reduce to zero
            if a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0) {
                continue;
            }
            let r = reduce(&s_poly(&g[i], &g[j]), &g);
            if !r.is_zero() {
                let r = r.monic();
                let k = g.len();
                g.push(r);
                pairs.extend((0..k).map(|i| (i, k)));
            }
        }
        // minimize and inter-reduce
        let mut minimal: Vec<Sorted> = Vec::new();
        for (k, p) in g.iter().enumerate() {
            let redundant = g.iter().enumerate().any(|(m, o)| {
                m != k && divides(o.lm(), p.lm()) && (o.lm() != p.lm() || m < k)
            });
            if !redundant {
                minimal.push(p.clone());
            }
        }
        let reduced: Vec<Sorted> = (0..minimal.len())
            .map(|k| {
                let others: Vec<Sorted> =
                    minimal.iter().enumerate().filter(|(m, _)| *m != k).map(|(_, p)| p.clone()).collect();
                let head = Sorted { terms: vec![minimal[k].terms[0].clone()] };
                let tail = Sorted { terms: minimal[k].terms[1..].to_vec() };
                let mut t = head.terms;
                t.extend(reduce(&tail, &others).terms);
                Sorted { terms: t }
            })
            .collect();
        GroebnerBasis { nvars, basis: reduced }
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|p| p.lm().iter().all(|&e| e == 0))
    }

    pub fn polys(&self) -> Vec<MultiPoly> {
        self.basis.iter().map(|p| p.to_multi(self.nvars)).collect()
    }

    /// Monomials outside the leading-term ideal; error when there are infinitely many.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let mut bound = vec![None; self.nvars];
        for p in &self.basis {
            let lm = p.lm();
            let nz: Vec<usize> = (0..self.nvars).filter(|&i| lm[i] > 0).collect();
            if nz.len() == 1 {
                let v = nz[0];
                bound[v] = Some(bound[v].map_or(lm[v], |b: u32| b.min(lm[v])));
            }
        }
        if bound.iter().any(Option::is_none) && !self.is_unit() {
            return Err(Error::Solver("the system is not zero-dimensional".into()));
        }
        if self.is_unit() {
            return Ok(Vec::new());
        }
        let mut seen: BTreeSet<Monomial> = BTreeSet::new();
        let mut queue = VecDeque::from([vec![0u32; self.nvars]]);
        while let Some(m) = queue.pop_front() {
            if seen.contains(&m) || self.basis.iter().any(|p| divides(p.lm(), &m)) {
                continue;
            }
            for i in 0..self.nvars {
                let mut next = m.clone();
                next[i] += 1;
                queue.push_back(next);
            }
            seen.insert(m);
        }
        let mut out: Vec<Monomial> = seen.into_iter().collect();
        out.sort_by(|a, b| grevlex(a, b));
        Ok(out)
    }

    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        reduce(&Sorted::from_multi(f), &self.basis).to_multi(self.nvars)
    }
}

/// Square matrix over the rationals, row-major.
pub type Matrix = Vec<Vec<Q>>;

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

pub fn trace(a: &Matrix) -> Q {
    (0..a.len()).fold(Q::zero(), |s, i| s + &a[i][i])
}

/// Rank by Gauss-Jordan elimination over the rationals.
pub fn rank(a: &Matrix) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        let row = m[r].clone();
        for (i, line) in m.iter_mut().enumerate() {
            if i != r && !line[c].is_zero() {
                let f = &line[c] / &pivot;
                for (dst, src) in line[c..cols].iter_mut().zip(&row[c..cols]) {
                    *dst -= &f * src;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// The quotient ring `Q[x]/I` for a zero-dimensional ideal.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub gb: GroebnerBasis,
    pub basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl Quotient {
    pub fn new(gens: &[MultiPoly]) -> Result<Self> {
        let gb = GroebnerBasis::new(gens);
        let basis = gb.standard_monomials()?;
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(Quotient { gb, basis, index })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of multiplication by `f`; column `j` holds `NF(f * b_j)`.
    pub fn mult_matrix(&self, f: &MultiPoly) -> Matrix {
        let n = self.dim();
        let nv = self.gb.nvars;
        let mut m = vec![vec![Q::zero(); n]; n];
        for (j, b) in self.basis.iter().enumerate() {
            let prod = f * &MultiPoly::monomial(b.clone(), Q::one());
            let nf = self.gb.normal_form(&prod);
            debug_assert_eq!(nf.nvars(), nv);
            for (e, c) in nf.terms() {
                m[self.index[e]][j] = c.clone();
            }
        }
        m
    }
}
