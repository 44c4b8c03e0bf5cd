//! The deciders: orbit connectivity through canonical points, reachability of
//! a chamber wall, and genuine connectivity as orbit connectivity plus walls.
//!
//! An [`Engine`] owns one system and caches the face graph, the canonical
//! points, and the wall-face samples, so repeated queries share the work.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::composition::{
    enumerate_compmax, minimal_adjacent_transpositions, Composition, Pattern, PermutationWord,
};
use crate::error::{Error, Result};
use crate::graph::{build_union_graph, FaceFamily, UnionGraph};
use crate::oracle::{ConnectivityOracle, GridOracle, OracleConfig, Region, Resolution};
use crate::rational::{format_rational, parse_rational, pow2_inv, Q};
use crate::sympoly::{vandermonde_map, SymmetricSystem};
use crate::vandermonde::{min_canonical, CanonicalPoint};

/// Width of the enclosures used to turn a canonical point into a grid query.
const LOCATE_BITS: u32 = 48;
const PREVIEW_DIGITS: usize = 12;

/// Which decider produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Query {
    Orbit,
    Wall,
    Full,
}

/// Where a query point went: its fiber, canonical point, and graph vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalTrace {
    pub input: Vec<String>,
    /// `ν(x)`
    pub target: Vec<String>,
    pub face: Composition,
    pub multiplicity: Composition,
    pub point: Vec<String>,
    pub vertex: usize,
    pub component: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallTrace {
    /// `i` for the wall `x_i = x_{i+1}`.
    pub wall: usize,
    pub reachable: bool,
    /// Faces `Res_i(λ)` that were sampled.
    pub faces: Vec<Composition>,
    pub samples: usize,
    pub witness: Option<Vec<String>>,
    pub witness_face: Option<Composition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub query: Query,
    pub x: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<String>>,
    /// Sorted `y` and the word sorting it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sorted_y: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<PermutationWord>,
    pub canonical: Vec<CanonicalTrace>,
    pub walls: Vec<WallTrace>,
    pub pattern: Pattern,
    pub faces: Vec<Composition>,
    pub graph_components: usize,
    /// The set is clipped to this box before any oracle call.
    pub bounding_box: (String, String),
    pub resolutions: Vec<(String, Resolution)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub connected: bool,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Default)]
pub struct EngineConfig {
    pub oracle: OracleConfig,
    pub pattern: Pattern,
}

pub struct Engine {
    sys: SymmetricSystem,
    oracle: Arc<dyn ConnectivityOracle>,
    pattern: Pattern,
    faces: Vec<Composition>,
    graph: Mutex<Option<Arc<UnionGraph>>>,
    canonical: Mutex<HashMap<Vec<Q>, Option<CanonicalPoint>>>,
    wall_samples: Mutex<HashMap<Composition, Arc<WallSamples>>>,
    traces: Mutex<HashMap<(Vec<Q>, bool), CanonicalTrace>>,
}

type WallOutcome = (WallTrace, Vec<(String, Resolution)>);

struct WallSamples {
    points: Vec<Vec<Q>>,
    resolution: Resolution,
}

fn show(x: &[Q]) -> Vec<String> {
    x.iter().map(format_rational).collect()
}

impl Engine {
    pub fn new(sys: SymmetricSystem, cfg: EngineConfig) -> Result<Self> {
        cfg.oracle.validate()?;
        Self::with_oracle(sys, Arc::new(GridOracle::new(cfg.oracle)), cfg.pattern)
    }

    pub fn with_oracle(
        sys: SymmetricSystem,
        oracle: Arc<dyn ConnectivityOracle>,
        pattern: Pattern,
    ) -> Result<Self> {
        let faces = enumerate_compmax(sys.n, sys.d, pattern)?;
        Ok(Engine {
            sys,
            oracle,
            pattern,
            faces,
            graph: Mutex::new(None),
            canonical: Mutex::new(HashMap::new()),
            wall_samples: Mutex::new(HashMap::new()),
            traces: Mutex::new(HashMap::new()),
        })
    }

    pub fn system(&self) -> &SymmetricSystem {
        &self.sys
    }

    /// The faces `CompMax(n, d)` spanning the orbit boundary.
    pub fn faces(&self) -> &[Composition] {
        &self.faces
    }

    /// Component graph of `S` over the faces, built on first use.
    pub fn graph(&self) -> Result<Arc<UnionGraph>> {
        let mut slot = self.graph.lock().expect("graph cache poisoned");
        if let Some(g) = slot.as_ref() {
            return Ok(Arc::clone(g));
        }
        let family = FaceFamily { sys: &self.sys, faces: self.faces.clone() };
        let g = Arc::new(build_union_graph(&family, self.oracle.as_ref())?);
        *slot = Some(Arc::clone(&g));
        Ok(g)
    }

    /// Cached minimizer of `p_{d+1}` on the fiber over `a`.
    pub fn min_canonical(&self, a: &[Q]) -> Result<Option<CanonicalPoint>> {
        if let Some(hit) = self.canonical.lock().expect("cache poisoned").get(a) {
            return Ok(hit.clone());
        }
        let c = min_canonical(a, self.sys.n, self.pattern)?;
        self.canonical.lock().expect("cache poisoned").insert(a.to_vec(), c.clone());
        Ok(c)
    }

    fn check_point(&self, x: &[Q], what: &str, sorted: bool) -> Result<()> {
        let m = self.sys.eval_membership(x)?;
        if !m.in_box {
            return Err(Error::Precondition(format!(
                "{what} = ({}) lies outside the bounding box [{}, {}]",
                show(x).join(", "),
                format_rational(&self.sys.bbox.lo),
                format_rational(&self.sys.bbox.hi)
            )));
        }
        if !m.holds {
            let failed: Vec<String> = self
                .sys
                .constraints
                .iter()
                .zip(&m.signs)
                .filter(|(c, &s)| !c.rel.holds(s))
                .map(|(c, _)| format!("{} {} 0", c.g, c.rel.symbol()))
                .collect();
            return Err(Error::Precondition(format!(
                "{what} = ({}) is not in S: violates {}",
                show(x).join(", "),
                failed.join("; ")
            )));
        }
        if sorted && x.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Precondition(format!(
                "{what} = ({}) is not in the chamber x_1 <= ... <= x_n; sort it first",
                show(x).join(", ")
            )));
        }
        Ok(())
    }

    /// Send a sorted point to its canonical point and graph vertex.
    fn trace(&self, x: &[Q], checked: bool) -> Result<CanonicalTrace> {
        let key = (x.to_vec(), checked);
        if let Some(hit) = self.traces.lock().expect("cache poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let t = self.trace_uncached(x, checked)?;
        self.traces.lock().expect("cache poisoned").insert(key, t.clone());
        Ok(t)
    }

    fn trace_uncached(&self, x: &[Q], checked: bool) -> Result<CanonicalTrace> {
        let a = vandermonde_map(x, self.sys.d, None)?;
        let c = self.min_canonical(&a)?.ok_or_else(|| {
            Error::Solver(format!("the fiber over ({}) misses the chamber", show(&a).join(", ")))
        })?;
        let home = self
            .faces
            .iter()
            .position(|f| *f == c.face)
            .expect("canonical faces come from CompMax");
        let refined = c.point.refine(&pow2_inv(LOCATE_BITS))?;
        let z = c.face.collapse(&refined.values);
        let g = self.graph()?;
        let vertex = if checked { g.locate_vertex(&z, home)? } else { g.locate_vertex_near(&z, home)? };
        Ok(CanonicalTrace {
            input: show(x),
            target: show(&a),
            multiplicity: c.point.multiplicity_composition()?,
            face: c.face.clone(),
            point: c.point.decimal_preview(PREVIEW_DIGITS)?,
            vertex,
            component: g.labels[vertex],
        })
    }

    fn certificate(&self, query: Query, x: &[Q]) -> Result<Certificate> {
        let g = self.graph()?;
        Ok(Certificate {
            query,
            x: show(x),
            y: None,
            sorted_y: None,
            word: None,
            canonical: Vec::new(),
            walls: Vec::new(),
            pattern: self.pattern,
            faces: self.faces.clone(),
            graph_components: g.component_count,
            bounding_box: (format_rational(&self.sys.bbox.lo), format_rational(&self.sys.bbox.hi)),
            resolutions: g.resolutions().to_vec(),
        })
    }

    /// Whether sorted feasible `x` and `y` lie in one component of `S ∩ W_c`.
    pub fn connectivity_symmetric_canonical(&self, x: &[Q], y: &[Q]) -> Result<Verdict> {
        self.check_point(x, "x", true)?;
        self.check_point(y, "y", true)?;
        let tx = self.trace(x, true)?;
        let ty = self.trace(y, true)?;
        let mut cert = self.certificate(Query::Orbit, x)?;
        cert.y = Some(show(y));
        let connected = tx.component == ty.component;
        cert.canonical = vec![tx, ty];
        Ok(Verdict { connected, certificate: cert })
    }

    /// Orbit connectivity of arbitrary feasible points: both are sorted first.
    pub fn check_orbit(&self, x: &[Q], y: &[Q]) -> Result<Verdict> {
        let (_, xs) = minimal_adjacent_transpositions(x);
        let (word, ys) = minimal_adjacent_transpositions(y);
        let mut v = self.connectivity_symmetric_canonical(&xs, &ys)?;
        v.certificate.sorted_y = Some(show(&ys));
        v.certificate.word = Some(word);
        Ok(v)
    }

    fn samples(&self, mu: &Composition) -> Result<Arc<WallSamples>> {
        if let Some(s) = self.wall_samples.lock().expect("cache poisoned").get(mu) {
            return Ok(Arc::clone(s));
        }
        let a = self.oracle.analyze(&Region::face(&self.sys, mu))?;
        let s = Arc::new(WallSamples {
            points: a.representatives().iter().map(|z| mu.embed(z)).collect::<Result<_>>()?,
            resolution: a.resolution(),
        });
        self.wall_samples.lock().expect("cache poisoned").insert(mu.clone(), Arc::clone(&s));
        Ok(s)
    }

    fn wall_trace(&self, x_component: usize, i: usize) -> Result<WallOutcome> {
        if i == 0 || i >= self.sys.n {
            return Err(Error::Domain(format!("wall index {i} outside 1..={}", self.sys.n - 1)));
        }
        let mut faces: Vec<Composition> = Vec::new();
        for lambda in &self.faces {
            let mu = lambda.res(i)?;
            if !faces.contains(&mu) {
                faces.push(mu);
            }
        }
        let mut trace = WallTrace {
            wall: i,
            reachable: false,
            faces: faces.clone(),
            samples: 0,
            witness: None,
            witness_face: None,
        };
        let mut resolutions = Vec::new();
        for mu in &faces {
            let s = self.samples(mu)?;
            resolutions.push((format!("wall {i} face {mu}"), s.resolution.clone()));
            for w in &s.points {
                trace.samples += 1;
                if trace.reachable {
                    continue;
                }
                if self.trace(w, false)?.component == x_component {
                    trace.reachable = true;
                    trace.witness = Some(show(w));
                    trace.witness_face = Some(mu.clone());
                }
            }
        }
        Ok((trace, resolutions))
    }

    /// Whether sorted feasible `x` connects inside `S ∩ W_c` to the wall `x_i = x_{i+1}`.
    pub fn connected_wall(&self, x: &[Q], i: usize) -> Result<Verdict> {
        self.check_point(x, "x", true)?;
        let tx = self.trace(x, true)?;
        let (wt, res) = self.wall_trace(tx.component, i)?;
        let mut cert = self.certificate(Query::Wall, x)?;
        cert.resolutions.extend(res);
        cert.canonical = vec![tx];
        let connected = wt.reachable;
        cert.walls = vec![wt];
        Ok(Verdict { connected, certificate: cert })
    }

    /// Whether sorted feasible `x` and feasible `y` lie in one component of `S`.
    pub fn connectivity_symmetric(&self, x: &[Q], y: &[Q]) -> Result<Verdict> {
        self.check_point(x, "x", true)?;
        self.check_point(y, "y", false)?;
        let (word, ys) = minimal_adjacent_transpositions(y);
        let tx = self.trace(x, true)?;
        let ty = self.trace(&ys, true)?;
        let mut cert = self.certificate(Query::Full, x)?;
        cert.y = Some(show(y));
        cert.sorted_y = Some(show(&ys));
        let mut connected = tx.component == ty.component;
        if connected {
            let walls: Vec<Result<WallOutcome>> =
                word.walls().par_iter().map(|&i| self.wall_trace(tx.component, i)).collect();
            for w in walls {
                let (wt, res) = w?;
                connected &= wt.reachable;
                cert.resolutions.extend(res);
                cert.walls.push(wt);
            }
        }
        cert.word = Some(word);
        cert.canonical = vec![tx, ty];
        Ok(Verdict { connected, certificate: cert })
    }

    /// Re-run the query a certificate records.
    pub fn replay(&self, cert: &Certificate) -> Result<bool> {
        let parse = |v: &[String]| -> Result<Vec<Q>> {
            v.iter()
                .enumerate()
                .map(|(k, s)| {
                    parse_rational(s).map_err(|message| Error::Parse {
                        location: format!("certificate coordinate {}", k + 1),
                        message,
                    })
                })
                .collect()
        };
        let x = parse(&cert.x)?;
        let y = cert.y.as_deref().map(parse).transpose()?;
        let missing = || Error::Precondition("certificate records no second point".into());
        Ok(match cert.query {
            Query::Orbit => self.connectivity_symmetric_canonical(&x, &y.ok_or_else(missing)?)?,
            Query::Full => self.connectivity_symmetric(&x, &y.ok_or_else(missing)?)?,
            Query::Wall => {
                let i = cert.walls.first().map(|w| w.wall).ok_or_else(missing)?;
                self.connected_wall(&x, i)?
            }
        }
        .connected)
    }
}

/// Sort `x` and move `y` by the same permutation; connectivity is unchanged
/// because `S` is symmetric.
pub fn auto_canonicalize(x: &[Q], y: &[Q]) -> Result<(Vec<Q>, Vec<Q>)> {
    if x.len() != y.len() {
        return Err(Error::Domain(format!("points of lengths {} and {}", x.len(), y.len())));
    }
    let (word, xs) = minimal_adjacent_transpositions(x);
    let mut ys = y.to_vec();
    word.apply(&mut ys);
    Ok((xs, ys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr, qvec};
    use crate::sympoly::{BoundingBox, Constraint, PowerSumPoly, Relation};

    fn poly(d: usize, terms: &[(&[u32], Q)]) -> PowerSumPoly {
        PowerSumPoly::new(d, terms.iter().map(|(e, c)| (e.to_vec(), c.clone()))).unwrap()
    }

    fn system(n: usize, d: usize, cons: Vec<(PowerSumPoly, Relation)>, r: i64) -> SymmetricSystem {
        let constraints = cons.into_iter().map(|(g, rel)| Constraint { g, rel }).collect();
        SymmetricSystem::new(n, d, constraints, BoundingBox::new(q(-r), q(r)).unwrap()).unwrap()
    }

    fn engine(sys: SymmetricSystem) -> Engine {
        Engine::new(sys, EngineConfig::default()).unwrap()
    }

    /// `{p_2 = 1, p_1^2 <= bound}` in the plane.
    fn circle(bound: Q) -> SymmetricSystem {
        system(
            2,
            2,
            vec![
                (poly(2, &[(&[0, 1], q(1)), (&[0, 0], q(-1))]), Relation::Eq),
                (poly(2, &[(&[2, 0], q(-1)), (&[0, 0], bound)]), Relation::Ge),
            ],
            2,
        )
    }

    #[test]
    fn ball_is_connected() {
        let e = engine(system(3, 2, vec![(poly(2, &[(&[0, 0], q(1)), (&[0, 1], q(-1))]), Relation::Ge)], 2));
        let v = e.connectivity_symmetric_canonical(&qvec(&[0, 0, 0]), &[qr(-1, 2), q(0), qr(1, 2)]).unwrap();
        assert!(v.connected);
        assert_eq!(v.certificate.canonical.len(), 2);
    }

    #[test]
    fn split_half_spaces() {
        let e = engine(system(3, 2, vec![(poly(2, &[(&[2, 0], q(1)), (&[0, 0], q(-1))]), Relation::Ge)], 2));
        let x = qvec(&[1, 1, 1]);
        let y = qvec(&[-1, -1, -1]);
        assert!(!e.connectivity_symmetric_canonical(&x, &y).unwrap().connected);
        assert!(e.connectivity_symmetric_canonical(&x, &x).unwrap().connected);
    }

    #[test]
    fn arcs_and_walls() {
        let x = vec![qr(-4, 5), qr(3, 5)];
        let y = vec![qr(3, 5), qr(-4, 5)];

        let narrow = engine(circle(qr(1, 2)));
        assert!(!narrow.connected_wall(&x, 1).unwrap().connected);
        let v = narrow.connectivity_symmetric(&x, &y).unwrap();
        assert!(!v.connected);
        assert_eq!(v.certificate.word.as_ref().unwrap().transpositions, vec![1]);
        assert!(narrow.check_orbit(&x, &y).unwrap().connected);

        let wide = engine(circle(q(3)));
        assert!(wide.connected_wall(&x, 1).unwrap().connected);
        assert!(wide.connectivity_symmetric(&x, &y).unwrap().connected);
        assert!(wide.connectivity_symmetric(&x, &x).unwrap().certificate.walls.is_empty());
    }

    #[test]
    fn preconditions() {
        let e = engine(circle(q(3)));
        let unsorted = vec![qr(3, 5), qr(-4, 5)];
        let err = e.connectivity_symmetric_canonical(&unsorted, &unsorted).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)), "{err}");
        let err = e.connectivity_symmetric(&qvec(&[0, 0]), &qvec(&[0, 0])).unwrap_err();
        assert!(err.to_string().contains("violates"), "{err}");
    }

    #[test]
    fn certificate_replays() {
        let e = engine(circle(qr(1, 2)));
        let v = e.connectivity_symmetric(&[qr(-4, 5), qr(3, 5)], &[qr(3, 5), qr(-4, 5)]).unwrap();
        assert_eq!(e.replay(&v.certificate).unwrap(), v.connected);
        let again = engine(circle(qr(1, 2)))
            .connectivity_symmetric(&[qr(-4, 5), qr(3, 5)], &[qr(3, 5), qr(-4, 5)])
            .unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), serde_json::to_string(&again).unwrap());
    }

    #[test]
    fn canonicalize_moves_both_points() {
        let (xs, ys) = auto_canonicalize(&qvec(&[3, 1, 2]), &qvec(&[30, 10, 20])).unwrap();
        assert_eq!(xs, qvec(&[1, 2, 3]));
        assert_eq!(ys, qvec(&[10, 20, 30]));
    }
}
