//! Real roots of univariate polynomials: isolation, Thom encodings, signs of
//! polynomials at roots, real univariate representations, and exact comparison
//! of real algebraic numbers.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

use crate::composition::Composition;
use crate::error::{domain, Error, Result};
use crate::poly::UniPoly;
use crate::rational::{q, qr, sign, to_decimal, Q};

/// Closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Q,
    pub hi: Q,
}

impl Interval {
    pub fn point(x: Q) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Q {
        (&self.lo + &self.hi) / q(2)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, x: &Q) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    /// Quotient; `None` if the divisor contains zero.
    fn div(&self, o: &Interval) -> Option<Interval> {
        if o.contains_zero() {
            return None;
        }
        let inv = Interval { lo: o.hi.recip(), hi: o.lo.recip() };
        Some(self.mul(&inv))
    }

    pub fn intersect(&self, o: &Interval) -> Option<Interval> {
        let lo = if self.lo > o.lo { &self.lo } else { &o.lo };
        let hi = if self.hi < o.hi { &self.hi } else { &o.hi };
        (lo <= hi).then(|| Interval { lo: lo.clone(), hi: hi.clone() })
    }
}

/// Interval Horner evaluation.
pub fn eval_interval(p: &UniPoly, x: &Interval) -> Interval {
    if x.lo == x.hi {
        return Interval::point(p.eval(&x.lo));
    }
    p.coeffs()
        .iter()
        .rev()
        .fold(Interval::point(Q::zero()), |acc, c| acc.mul(x).add(&Interval::point(c.clone())))
}

/// Where a root sits: exactly at a rational, or alone inside an open interval
/// whose endpoints are not roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootLoc {
    Exact(Q),
    Open(Q, Q),
}

impl RootLoc {
    pub fn interval(&self) -> Interval {
        match self {
            RootLoc::Exact(r) => Interval::point(r.clone()),
            RootLoc::Open(a, b) => Interval { lo: a.clone(), hi: b.clone() },
        }
    }

    pub fn width(&self) -> Q {
        self.interval().width()
    }
}

/// `p(x + c)` by repeated synthetic division.
fn taylor_shift(coeffs: &[Q], c: &Q) -> Vec<Q> {
    let mut a = coeffs.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &a[j + 1] * c;
            a[j] += t;
        }
    }
    a
}

/// Descartes bound for the roots of `p` in the open interval `(a, b)`.
fn descartes_bound(p: &UniPoly, a: &Q, b: &Q) -> usize {
    let width = b - a;
    // p(a + width * x), then x^n p(1/x), then shift by one
    let shifted = taylor_shift(p.coeffs(), a);
    let mut scale = Q::one();
    let scaled: Vec<Q> = shifted
        .into_iter()
        .map(|c| {
            let v = c * &scale;
            scale *= &width;
            v
        })
        .collect();
    let reversed: Vec<Q> = scaled.into_iter().rev().collect();
    let t = taylor_shift(&reversed, &Q::one());
    let mut variations = 0;
    let mut last = 0i8;
    for c in &t {
        let s = sign(c);
        if s != 0 {
            if last != 0 && s != last {
                variations += 1;
            }
            last = s;
        }
    }
    variations
}

/// Isolate the real roots of a square-free nonzero polynomial, in increasing order.
pub fn isolate_real_roots(p: &UniPoly) -> Vec<RootLoc> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    if p.degree() == Some(1) {
        return vec![RootLoc::Exact(-p.coeff(0) / p.coeff(1))];
    }
    let b = p.cauchy_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let v = descartes_bound(p, &lo, &hi);
        if v == 0 {
            continue;
        }
        if v == 1 && !p.eval(&lo).is_zero() && !p.eval(&hi).is_zero() {
            out.push(RootLoc::Open(lo, hi));
            continue;
        }
        let m = (&lo + &hi) / q(2);
        if p.eval(&m).is_zero() {
            out.push(RootLoc::Exact(m.clone()));
        }
        stack.push((lo, m.clone()));
        stack.push((m, hi));
    }
    out.sort_by(|x, y| x.interval().lo.cmp(&y.interval().lo));
    out
}

/// One bisection step on an isolating interval of a square-free `p`.
pub fn bisect(p: &UniPoly, loc: &RootLoc) -> RootLoc {
    match loc {
        RootLoc::Exact(_) => loc.clone(),
        RootLoc::Open(a, b) => {
            let m = (a + b) / q(2);
            let sm = sign(&p.eval(&m));
            if sm == 0 {
                RootLoc::Exact(m)
            } else if sign(&p.eval(a)) * sm < 0 {
                RootLoc::Open(a.clone(), m)
            } else {
                RootLoc::Open(m, b.clone())
            }
        }
    }
}

/// Bisect until the interval is at most `width` wide.
pub fn refine_loc(p: &UniPoly, loc: &RootLoc, width: &Q) -> RootLoc {
    let mut cur = loc.clone();
    while &cur.width() > width {
        cur = bisect(p, &cur);
    }
    cur
}

/// Sign of `f` at the root of square-free `qbar` isolated by `loc`; refines `loc`.
pub fn sign_at_loc(qbar: &UniPoly, loc: &mut RootLoc, f: &UniPoly) -> i8 {
    if f.is_zero() {
        return 0;
    }
    if let RootLoc::Open(a, b) = loc {
        let g = f.gcd(qbar);
        if g.degree().unwrap_or(0) > 0 && sign(&g.eval(a)) * sign(&g.eval(b)) < 0 {
            return 0;
        }
    }
    loop {
        match loc {
            RootLoc::Exact(r) => return sign(&f.eval(r)),
            RootLoc::Open(..) => {
                let iv = eval_interval(f, &loc.interval());
                if iv.lo.is_positive() {
                    return 1;
                }
                if iv.hi.is_negative() {
                    return -1;
                }
                *loc = bisect(qbar, loc);
            }
        }
    }
}

/// Signs of `q', q'', ..., q^(δ)` at one root; identifies the root among all
/// real roots of `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ThomCode(pub Vec<i8>);

impl fmt::Display for ThomCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", match s { 1 => '+', -1 => '-', _ => '0' })?;
        }
        write!(f, ")")
    }
}

/// Real roots of a polynomial with their locations and Thom codes.
#[derive(Clone, Debug)]
pub struct RootSet {
    /// Square-free part with the original leading sign.
    pub qbar: UniPoly,
    pub roots: Vec<(RootLoc, ThomCode)>,
}

pub fn real_roots(qpoly: &UniPoly) -> Result<RootSet> {
    if qpoly.is_zero() {
        return Err(domain("Thom encoding of the zero polynomial"));
    }
    let qbar = qpoly.squarefree();
    let mut derivs = Vec::new();
    let mut d = qbar.derivative();
    while !d.is_zero() {
        let next = d.derivative();
        derivs.push(d);
        d = next;
    }
    let roots = isolate_real_roots(&qbar)
        .into_iter()
        .map(|mut loc| {
            let code = derivs.iter().map(|dp| sign_at_loc(&qbar, &mut loc, dp)).collect();
            (loc, ThomCode(code))
        })
        .collect();
    Ok(RootSet { qbar, roots })
}

/// Thom codes of the distinct real roots, ordered by root value.
pub fn thom_encoding(qpoly: &UniPoly) -> Result<Vec<ThomCode>> {
    Ok(real_roots(qpoly)?.roots.into_iter().map(|(_, c)| c).collect())
}

/// Locate the root of `q` carrying `code`.
pub fn find_root(qpoly: &UniPoly, code: &ThomCode) -> Result<(UniPoly, RootLoc)> {
    let rs = real_roots(qpoly)?;
    rs.roots
        .into_iter()
        .find(|(_, c)| c == code)
        .map(|(loc, _)| (rs.qbar, loc))
        .ok_or_else(|| Error::InvalidCode { code: code.0.clone() })
}

/// Sign of `p` at the root of `q` with Thom code `code`.
pub fn sign_at_root(qpoly: &UniPoly, code: &ThomCode, p: &UniPoly) -> Result<i8> {
    let (qbar, mut loc) = find_root(qpoly, code)?;
    Ok(sign_at_loc(&qbar, &mut loc, p))
}

/// Resultant of two univariate polynomials, `lc(a)^deg(b) Π_{a(α)=0} b(α)`.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Q {
    if a.is_zero() || b.is_zero() {
        return Q::zero();
    }
    let m = a.degree().unwrap();
    let n = b.degree().unwrap();
    if n == 0 {
        return num_traits::pow(b.lc(), m);
    }
    if m == 0 {
        return num_traits::pow(a.lc(), n);
    }
    let r = a.rem(b);
    if r.is_zero() {
        return Q::zero();
    }
    let k = r.degree().unwrap();
    let s = if (m * n) % 2 == 1 { -Q::one() } else { Q::one() };
    s * num_traits::pow(b.lc(), m - k) * resultant(b, &r)
}

/// Newton interpolation through `(x_i, y_i)`.
fn interpolate(xs: &[Q], ys: &[Q]) -> UniPoly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = UniPoly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &UniPoly::linear_root(&xs[i])) + &UniPoly::constant(coef[i].clone());
    }
    p
}

/// A real number `num(ϑ) / den(ϑ)` where `ϑ` is one root of a square-free `qbar`.
#[derive(Clone, Debug)]
pub struct RealAlgebraic {
    qbar: UniPoly,
    loc: RootLoc,
    num: UniPoly,
    den: UniPoly,
}

impl RealAlgebraic {
    pub fn new(qbar: UniPoly, loc: RootLoc, num: UniPoly, den: UniPoly) -> Self {
        RealAlgebraic { qbar, loc, num, den }
    }

    pub fn rational(x: Q) -> Self {
        RealAlgebraic {
            qbar: UniPoly::x(),
            loc: RootLoc::Exact(Q::zero()),
            num: UniPoly::constant(x),
            den: UniPoly::one(),
        }
    }

    /// An enclosure of the value; refines the root until the denominator is sign-definite.
    pub fn interval(&mut self) -> Interval {
        loop {
            let iv = self.loc.interval();
            let n = eval_interval(&self.num, &iv);
            if let Some(v) = n.div(&eval_interval(&self.den, &iv)) {
                return v;
            }
            self.loc = bisect(&self.qbar, &self.loc);
        }
    }

    pub fn refine(&mut self) {
        self.loc = bisect(&self.qbar, &self.loc);
    }

    pub fn to_f64(&mut self) -> f64 {
        let tiny = qr(1, 1i64 << 60);
        while self.interval().width() > tiny && matches!(self.loc, RootLoc::Open(..)) {
            self.refine();
        }
        crate::rational::to_f64(&self.interval().mid())
    }

    fn is_exact(&self) -> bool {
        matches!(self.loc, RootLoc::Exact(_))
    }

    fn same_root(&self, o: &RealAlgebraic) -> bool {
        if self.qbar != o.qbar {
            return false;
        }
        match (&self.loc, &o.loc) {
            (RootLoc::Exact(r), RootLoc::Exact(s)) => r == s,
            (RootLoc::Exact(r), RootLoc::Open(a, b)) | (RootLoc::Open(a, b), RootLoc::Exact(r)) => {
                a < r && r < b
            }
            (RootLoc::Open(a, b), RootLoc::Open(c, d)) => a.max(c) < b.min(d),
        }
    }

    /// `Res_T(q̃, den·Y − num)` with `q̃` the monic factor of `qbar` on which `den` has no root.
    fn annihilator(&self) -> UniPoly {
        let g = self.qbar.gcd(&self.den);
        let qt = self.qbar.div_rem(&g).0.monic();
        let deg = qt.degree().unwrap_or(0);
        let xs: Vec<Q> = (0..=deg as i64).map(q).collect();
        let ys: Vec<Q> = xs
            .iter()
            .map(|y| resultant(&qt, &(&self.den.scale(y) - &self.num)))
            .collect();
        interpolate(&xs, &ys)
    }

    /// Shrink the value enclosure until it meets exactly one root of `p`.
    fn isolate_against(&mut self, p: &UniPoly) -> Interval {
        let mut locs = isolate_real_roots(p);
        loop {
            let iv = self.interval();
            let hits = locs.iter().filter(|l| l.interval().intersect(&iv).is_some()).count();
            if hits == 1 {
                return iv;
            }
            self.refine();
            locs = locs.iter().map(|l| bisect(p, l)).collect();
        }
    }

    fn exactly_equal(&mut self, o: &mut RealAlgebraic) -> bool {
        let p1 = self.annihilator().squarefree();
        let p2 = o.annihilator().squarefree();
        let g = p1.gcd(&p2);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let i1 = self.isolate_against(&p1);
        let i2 = o.isolate_against(&p2);
        let Some(j) = i1.intersect(&i2) else {
            return false;
        };
        if g.eval(&j.lo).is_zero() || g.eval(&j.hi).is_zero() {
            return true;
        }
        for loc in isolate_real_roots(&g) {
            let mut loc = loc;
            loop {
                let iv = loc.interval();
                if iv.hi <= j.lo || iv.lo >= j.hi {
                    break;
                }
                if j.lo <= iv.lo && iv.hi <= j.hi {
                    return true;
                }
                loc = bisect(&g, &loc);
            }
        }
        false
    }

    /// Exact comparison: interval refinement, with an algebraic equality test
    /// once both enclosures are narrower than `10^-30` and still overlap.
    pub fn compare(&mut self, o: &mut RealAlgebraic) -> Ordering {
        if self.same_root(o) {
            let diff = &(&self.num * &o.den) - &(&o.num * &self.den);
            let s = sign_at_loc(&self.qbar, &mut self.loc, &diff)
                * sign_at_loc(&self.qbar, &mut self.loc, &(&self.den * &o.den));
            return s.cmp(&0);
        }
        let tol = qr(1, 10).pow(30);
        let mut checked = false;
        loop {
            let a = self.interval();
            let b = o.interval();
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            if self.is_exact() && o.is_exact() {
                return a.lo.cmp(&b.lo);
            }
            if !checked && a.width() < tol && b.width() < tol {
                checked = true;
                if self.exactly_equal(o) {
                    return Ordering::Equal;
                }
            }
            self.refine();
            o.refine();
        }
    }
}

/// A point `(q_1(ϑ)/q_0(ϑ), ..., q_m(ϑ)/q_0(ϑ))` with `ϑ` the root of `q` selected by `code`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicPoint {
    pub q: UniPoly,
    pub q0: UniPoly,
    pub coords: Vec<UniPoly>,
    pub code: ThomCode,
}

/// Rational enclosures of every coordinate of an [`AlgebraicPoint`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedPoint {
    pub values: Vec<Q>,
    pub enclosures: Vec<Interval>,
}

impl RefinedPoint {
    pub fn max_width(&self) -> Q {
        self.enclosures.iter().map(Interval::width).max().unwrap_or_else(Q::zero)
    }
}

impl AlgebraicPoint {
    pub fn new(q: UniPoly, q0: UniPoly, coords: Vec<UniPoly>, code: ThomCode) -> Result<Self> {
        let (qbar, mut loc) = find_root(&q, &code)?;
        if sign_at_loc(&qbar, &mut loc, &q0) == 0 {
            return Err(domain("q0 vanishes at the selected root"));
        }
        Ok(AlgebraicPoint { q, q0, coords, code })
    }

    /// The point `x` itself, parametrized by the root `0` of `T`.
    pub fn lift_rational(x: &[Q]) -> Self {
        AlgebraicPoint {
            q: UniPoly::x(),
            q0: UniPoly::one(),
            coords: x.iter().map(|c| UniPoly::constant(c.clone())).collect(),
            code: ThomCode(vec![1]),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn locate(&self) -> Result<(UniPoly, RootLoc)> {
        find_root(&self.q, &self.code)
    }

    /// Exact coordinates when the parameter is rational.
    pub fn as_rational(&self) -> Result<Option<Vec<Q>>> {
        match self.locate()? {
            (_, RootLoc::Exact(t)) => {
                let d = self.q0.eval(&t);
                Ok(Some(self.coords.iter().map(|c| c.eval(&t) / &d).collect()))
            }
            _ => Ok(None),
        }
    }

    /// Certified enclosures of all coordinates, each at most `eps` wide.
    pub fn refine(&self, eps: &Q) -> Result<RefinedPoint> {
        if !eps.is_positive() {
            return Err(domain("refinement precision must be positive"));
        }
        let (qbar, mut loc) = self.locate()?;
        loop {
            let iv = loc.interval();
            let d = eval_interval(&self.q0, &iv);
            if !d.contains_zero() {
                let enclosures: Option<Vec<Interval>> =
                    self.coords.iter().map(|c| eval_interval(c, &iv).div(&d)).collect();
                if let Some(enc) = enclosures {
                    if enc.iter().all(|e| &e.width() <= eps) {
                        return Ok(RefinedPoint {
                            values: enc.iter().map(Interval::mid).collect(),
                            enclosures: enc,
                        });
                    }
                }
            }
            loc = bisect(&qbar, &loc);
        }
    }

    /// Coordinate `i` as a comparable real number.
    pub fn coordinate(&self, i: usize) -> Result<RealAlgebraic> {
        let (qbar, loc) = self.locate()?;
        Ok(RealAlgebraic::new(qbar, loc, self.coords[i].clone(), self.q0.clone()))
    }

    /// Exact order of coordinates `i` and `j`.
    pub fn compare_coords(&self, i: usize, j: usize) -> Result<Ordering> {
        let (qbar, mut loc) = self.locate()?;
        let s = sign_at_loc(&qbar, &mut loc, &(&self.coords[i] - &self.coords[j]))
            * sign_at_loc(&qbar, &mut loc, &self.q0);
        Ok(s.cmp(&0))
    }

    /// Block pattern of equal consecutive coordinates, decided exactly.
    pub fn multiplicity_composition(&self) -> Result<Composition> {
        if self.coords.is_empty() {
            return Err(domain("multiplicity composition of an empty point"));
        }
        let (qbar, mut loc) = self.locate()?;
        let mut parts = vec![1];
        for w in self.coords.windows(2) {
            if sign_at_loc(&qbar, &mut loc, &(&w[0] - &w[1])) == 0 {
                *parts.last_mut().unwrap() += 1;
            } else {
                parts.push(1);
            }
        }
        Composition::new(parts)
    }

    /// Decimal strings truncated to `digits` places, from enclosures of width `10^-(digits+2)`.
    pub fn decimal_preview(&self, digits: usize) -> Result<Vec<String>> {
        let eps = qr(1, 10).pow(digits as i32 + 2);
        Ok(self.refine(&eps)?.values.iter().map(|v| to_decimal(v, digits)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn sqrt_two_codes() {
        let codes = thom_encoding(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(codes, vec![ThomCode(vec![-1, 1]), ThomCode(vec![1, 1])]);
        assert!(thom_encoding(&p(&[1, 0, 1])).unwrap().is_empty());
        assert!(thom_encoding(&UniPoly::zero()).is_err());
    }

    #[test]
    fn cubic_codes_including_zero_root() {
        let codes = thom_encoding(&p(&[0, -3, 0, 1])).unwrap();
        assert_eq!(
            codes,
            vec![ThomCode(vec![1, -1, 1]), ThomCode(vec![-1, 0, 1]), ThomCode(vec![1, 1, 1])]
        );
    }

    #[test]
    fn signs_at_sqrt_two() {
        let q2 = p(&[-2, 0, 1]);
        assert_eq!(sign_at_root(&q2, &ThomCode(vec![1, 1]), &p(&[-1, 3])).unwrap(), 1);
        assert_eq!(sign_at_root(&q2, &ThomCode(vec![-1, 1]), &p(&[0, 2])).unwrap(), -1);
        assert_eq!(sign_at_root(&q2, &ThomCode(vec![1, 1]), &q2).unwrap(), 0);
        // shares the root sqrt 2 only
        let shared = &p(&[-2, 0, 1]) * &p(&[5, 1]);
        assert_eq!(sign_at_root(&q2, &ThomCode(vec![1, 1]), &shared).unwrap(), 0);
        assert!(matches!(
            sign_at_root(&q2, &ThomCode(vec![0, 1]), &q2),
            Err(Error::InvalidCode { .. })
        ));
    }

    #[test]
    fn repeated_roots_are_reduced() {
        let sq = &p(&[-1, 1]) * &p(&[-1, 1]);
        let rs = real_roots(&(&sq * &p(&[2, 1]))).unwrap();
        assert_eq!(rs.roots.len(), 2);
    }

    #[test]
    fn refine_textbook_point() {
        let pt = AlgebraicPoint::new(
            p(&[-2, 0, 1]),
            p(&[0, 2]),
            vec![p(&[0, 1]), p(&[-1, 3])],
            ThomCode(vec![1, 1]),
        )
        .unwrap();
        let r = pt.refine(&qr(1, 1000)).unwrap();
        assert!(r.max_width() <= qr(1, 1000));
        let truth = [0.5, 1.5 - 2f64.sqrt() / 4.0];
        for (v, t) in r.values.iter().zip(truth) {
            assert!((crate::rational::to_f64(v) - t).abs() < 1e-3);
        }
        assert_eq!(pt.decimal_preview(4).unwrap(), vec!["0.5000", "1.1464"]);
    }

    #[test]
    fn lifted_rationals_round_trip() {
        let x = vec![qr(-4, 5), qr(3, 5)];
        let pt = AlgebraicPoint::lift_rational(&x);
        assert_eq!(pt.as_rational().unwrap(), Some(x.clone()));
        let r = pt.refine(&qr(1, 10)).unwrap();
        assert_eq!(r.values, x);
        assert!(r.max_width().is_zero());
        let empty = AlgebraicPoint::lift_rational(&[]);
        assert_eq!(empty.refine(&qr(1, 2)).unwrap().values.len(), 0);
        assert!(pt.refine(&Q::zero()).is_err());
    }

    #[test]
    fn resultant_of_linear_factors() {
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-3, 1])), q(-2));
        // Res(T^2-2, T) = (sqrt2)(-sqrt2) = -2
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[0, 1])), q(-2));
    }

    #[test]
    fn compare_equal_values_from_different_parametrizations() {
        // sqrt(2) as root of T^2-2 and as (T^2)/T... via T^2 - 8 with value T/2
        let (qa, la) = find_root(&p(&[-2, 0, 1]), &ThomCode(vec![1, 1])).unwrap();
        let (qb, lb) = find_root(&p(&[-8, 0, 1]), &ThomCode(vec![1, 1])).unwrap();
        let mut a = RealAlgebraic::new(qa, la, p(&[0, 1]), UniPoly::one());
        let mut b = RealAlgebraic::new(qb, lb, p(&[0, 1]), p(&[2]));
        assert_eq!(a.compare(&mut b), Ordering::Equal);
        let mut c = RealAlgebraic::rational(qr(141, 100));
        assert_eq!(a.compare(&mut c), Ordering::Greater);
    }

    #[test]
    fn multiplicity_of_parametrized_point() {
        let pt = AlgebraicPoint::new(
            p(&[-3, 0, 1]),
            p(&[3]),
            vec![p(&[0, -2]), p(&[0, 1]), p(&[0, 1])],
            ThomCode(vec![1, 1]),
        )
        .unwrap();
        assert_eq!(pt.multiplicity_composition().unwrap(), Composition::new(vec![1, 2]).unwrap());
        assert_eq!(pt.compare_coords(0, 1).unwrap(), Ordering::Less);
        let _ = qvec(&[1]);
    }
}
