//! Regions: boxes in `ℝ^ℓ` carved out by a boolean formula over sign conditions.

use num_traits::{Signed, Zero};
use std::fmt;

use crate::composition::Composition;
use crate::poly::{CompiledPoly, MultiPoly};
use crate::rational::{format_rational, Q};
use crate::sympoly::{vandermonde_map, CompiledPowerSum, PowerSumPoly, Relation, SymmetricSystem};

/// A real function of the region coordinates.
#[derive(Clone, Debug)]
pub enum AtomFn {
    /// `g(p_1^{(w)}(z), ..., p_d^{(w)}(z))` with block weights `w`.
    PowerSum { g: PowerSumPoly, weights: Vec<u32> },
    Poly(MultiPoly),
    /// `z_hi - z_lo`
    Diff { lo: usize, hi: usize },
}

#[derive(Clone, Debug)]
pub struct Atom {
    pub f: AtomFn,
    pub rel: Relation,
    pub name: String,
}

impl Atom {
    pub fn value(&self, z: &[Q]) -> Q {
        match &self.f {
            AtomFn::PowerSum { g, weights } => {
                let w: Vec<usize> = weights.iter().map(|&k| k as usize).collect();
                let p = vandermonde_map(z, g.d(), Some(&w)).expect("weights match the dimension");
                g.eval(&p)
            }
            AtomFn::Poly(p) => p.eval(z),
            AtomFn::Diff { lo, hi } => &z[*hi] - &z[*lo],
        }
    }

    /// Relation test with every inequality relaxed by `slack`.
    pub fn holds_with_slack(&self, z: &[Q], slack: &Q) -> bool {
        let v = self.value(z);
        match self.rel {
            Relation::Eq => &v.abs() <= slack,
            Relation::Ge => v >= -slack.clone(),
            Relation::Gt => v > -slack.clone() || (slack.is_zero() && v > Q::zero()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pred {
    True,
    False,
    Atom(usize),
    And(Vec<Pred>),
    Or(Vec<Pred>),
    Not(Box<Pred>),
}

impl Pred {
    fn shift(&self, by: usize) -> Pred {
        match self {
            Pred::True => Pred::True,
            Pred::False => Pred::False,
            Pred::Atom(i) => Pred::Atom(i + by),
            Pred::And(v) => Pred::And(v.iter().map(|p| p.shift(by)).collect()),
            Pred::Or(v) => Pred::Or(v.iter().map(|p| p.shift(by)).collect()),
            Pred::Not(p) => Pred::Not(Box::new(p.shift(by))),
        }
    }

    pub fn eval(&self, atom: &mut impl FnMut(usize) -> bool) -> bool {
        match self {
            Pred::True => true,
            Pred::False => false,
            Pred::Atom(i) => atom(*i),
            Pred::And(v) => v.iter().all(|p| p.eval(atom)),
            Pred::Or(v) => v.iter().any(|p| p.eval(atom)),
            Pred::Not(p) => !p.eval(atom),
        }
    }
}

/// A subset of the box `[lo, hi]^dim`.
#[derive(Clone, Debug)]
pub struct Region {
    pub dim: usize,
    pub lo: Q,
    pub hi: Q,
    pub atoms: Vec<Atom>,
    pub pred: Pred,
    pub label: String,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} in [{}, {}]^{}",
            self.label,
            format_rational(&self.lo),
            format_rational(&self.hi),
            self.dim
        )
    }
}

impl Region {
    /// The whole box.
    pub fn new(dim: usize, lo: Q, hi: Q, label: impl Into<String>) -> Self {
        Region { dim, lo, hi, atoms: Vec::new(), pred: Pred::True, label: label.into() }
    }

    pub fn push_atom(&mut self, f: AtomFn, rel: Relation, name: impl Into<String>) -> Pred {
        self.atoms.push(Atom { f, rel, name: name.into() });
        Pred::Atom(self.atoms.len() - 1)
    }

    /// Conjoin a polynomial sign condition.
    pub fn with_poly(mut self, p: MultiPoly, rel: Relation) -> Self {
        let name = format!("{p} {} 0", rel.symbol());
        let a = self.push_atom(AtomFn::Poly(p), rel, name);
        self.pred = Pred::And(vec![self.pred, a]);
        self
    }

    /// `S ∩ W_c^λ` in block coordinates of `λ`.
    pub fn face(sys: &SymmetricSystem, lambda: &Composition) -> Self {
        let mut r = Region::new(
            lambda.len(),
            sys.bbox.lo.clone(),
            sys.bbox.hi.clone(),
            format!("S on face {lambda}"),
        );
        let own = r.chamber_and_constraints(sys, lambda, lambda);
        r.pred = own;
        r
    }

    /// The full set `S ⊂ ℝⁿ` without any chamber restriction.
    pub fn ambient(sys: &SymmetricSystem) -> Self {
        let mut r = Region::new(sys.n, sys.bbox.lo.clone(), sys.bbox.hi.clone(), "S");
        let weights = vec![1u32; sys.n];
        let parts: Vec<Pred> = sys
            .constraints
            .iter()
            .map(|c| {
                let name = format!("{} {} 0", c.g, c.rel.symbol());
                r.push_atom(AtomFn::PowerSum { g: c.g.clone(), weights: weights.clone() }, c.rel, name)
            })
            .collect();
        r.pred = Pred::And(parts);
        r
    }

    /// Predicate for `embed(μ, z) ∈ S ∩ W_c^target` where `μ` is this region's face.
    pub fn chamber_and_constraints(
        &mut self,
        sys: &SymmetricSystem,
        mu: &Composition,
        target: &Composition,
    ) -> Pred {
        let weights: Vec<u32> = mu.parts().iter().map(|&p| p as u32).collect();
        let mut parts = Vec::new();
        for k in 1..mu.len() {
            parts.push(self.push_atom(
                AtomFn::Diff { lo: k - 1, hi: k },
                Relation::Ge,
                format!("z{} <= z{}", k, k + 1),
            ));
        }
        // breaks of μ that the target face erases force equal neighbours
        let keep = target.breaks();
        let mut acc = 0;
        for (k, p) in mu.parts()[..mu.len() - 1].iter().enumerate() {
            acc += p;
            if !keep.contains(&acc) {
                parts.push(self.push_atom(
                    AtomFn::Diff { lo: k, hi: k + 1 },
                    Relation::Eq,
                    format!("z{} = z{}", k + 1, k + 2),
                ));
            }
        }
        for c in &sys.constraints {
            let name = format!("{} {} 0", c.g, c.rel.symbol());
            parts.push(self.push_atom(
                AtomFn::PowerSum { g: c.g.clone(), weights: weights.clone() },
                c.rel,
                name,
            ));
        }
        Pred::And(parts)
    }

    fn merged(&self, other: &Region) -> (Vec<Atom>, Pred) {
        assert_eq!(self.dim, other.dim, "regions of different dimension");
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        (atoms, other.pred.shift(self.atoms.len()))
    }

    pub fn and(&self, other: &Region) -> Region {
        let (atoms, p) = self.merged(other);
        Region {
            dim: self.dim,
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            atoms,
            pred: Pred::And(vec![self.pred.clone(), p]),
            label: format!("({}) and ({})", self.label, other.label),
        }
    }

    pub fn and_not(&self, other: &Region) -> Region {
        let (atoms, p) = self.merged(other);
        Region {
            dim: self.dim,
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            atoms,
            pred: Pred::And(vec![self.pred.clone(), Pred::Not(Box::new(p))]),
            label: format!("({}) minus ({})", self.label, other.label),
        }
    }

    pub fn or(&self, other: &Region) -> Region {
        let (atoms, p) = self.merged(other);
        Region {
            dim: self.dim,
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            atoms,
            pred: Pred::Or(vec![self.pred.clone(), p]),
            label: format!("({}) or ({})", self.label, other.label),
        }
    }

    pub fn in_box(&self, z: &[Q]) -> bool {
        z.iter().all(|v| v >= &self.lo && v <= &self.hi)
    }

    /// Membership at a rational point with inequalities relaxed by `slack`.
    pub fn contains_with_slack(&self, z: &[Q], slack: &Q) -> bool {
        z.len() == self.dim
            && self.in_box(z)
            && self.pred.eval(&mut |i| self.atoms[i].holds_with_slack(z, slack))
    }

    /// Names of the atoms failing at `z`, for diagnostics.
    pub fn violations(&self, z: &[Q], slack: &Q) -> Vec<String> {
        let mut out: Vec<String> = self
            .atoms
            .iter()
            .filter(|a| !a.holds_with_slack(z, slack))
            .map(|a| a.name.clone())
            .collect();
        if !self.in_box(z) {
            out.push(format!(
                "bounding box [{}, {}]",
                format_rational(&self.lo),
                format_rational(&self.hi)
            ));
        }
        if out.is_empty() {
            out.push(format!("formula of {}", self.label));
        }
        out
    }

    pub fn compile(&self) -> CompiledRegion {
        CompiledRegion {
            atoms: self
                .atoms
                .iter()
                .map(|a| {
                    let f = match &a.f {
                        AtomFn::PowerSum { g, weights } => CompiledFn::PowerSum(
                            g.compile(),
                            weights.iter().map(|&w| w as f64).collect(),
                        ),
                        AtomFn::Poly(p) => CompiledFn::Poly(p.compile()),
                        AtomFn::Diff { lo, hi } => CompiledFn::Diff(*lo, *hi),
                    };
                    (f, a.rel)
                })
                .collect(),
            pred: self.pred.clone(),
        }
    }

    /// A one-dimensional interval `[a, b]` inside the box, for tests and examples.
    pub fn interval(a: Q, b: Q, lo: Q, hi: Q) -> Region {
        let x = MultiPoly::var(1, 0);
        Region::new(1, lo, hi, "interval")
            .with_poly(&x - &MultiPoly::constant(1, a), Relation::Ge)
            .with_poly(&MultiPoly::constant(1, b) - &x, Relation::Ge)
    }

    /// Closed disc of radius `r` about `c` in the plane.
    pub fn disc(c: (Q, Q), r: Q, lo: Q, hi: Q) -> Region {
        let x = &MultiPoly::var(2, 0) - &MultiPoly::constant(2, c.0);
        let y = &MultiPoly::var(2, 1) - &MultiPoly::constant(2, c.1);
        let p = &MultiPoly::constant(2, &r * &r) - &(&(&x * &x) + &(&y * &y));
        Region::new(2, lo, hi, "disc").with_poly(p, Relation::Ge)
    }
}

#[derive(Clone, Debug)]
pub enum CompiledFn {
    PowerSum(CompiledPowerSum, Vec<f64>),
    Poly(CompiledPoly),
    Diff(usize, usize),
}

impl CompiledFn {
    pub fn eval(&self, z: &[f64]) -> f64 {
        match self {
            CompiledFn::PowerSum(g, w) => g.eval_weighted(z, w),
            CompiledFn::Poly(p) => p.eval(z),
            CompiledFn::Diff(lo, hi) => z[*hi] - z[*lo],
        }
    }
}

/// Floating-point form of a [`Region`] used for grid classification.
#[derive(Clone, Debug)]
pub struct CompiledRegion {
    pub atoms: Vec<(CompiledFn, Relation)>,
    pub pred: Pred,
}

