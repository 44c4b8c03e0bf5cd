//! Bipartite component graph of a family of sets: difference components on
//! side A, intersection components on side B, edges certified by the oracle.
//! Its connected components correspond to those of the union.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::oracle::region::Region;
use crate::oracle::{ConnectivityOracle, OracleError, RegionAnalysis, Resolution};
use crate::rational::{to_decimal, Q};
use crate::sympoly::SymmetricSystem;

/// A finite family of sets, each with its own coordinates.
pub trait SetFamily: Sync {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn set(&self, i: usize) -> Region;

    /// `S_i ∖ S_j` in the coordinates of `S_i`.
    fn difference(&self, i: usize, j: usize) -> Region;

    /// `S_i ∩ S_j` in coordinates of the pair.
    fn intersection(&self, i: usize, j: usize) -> Region;

    /// Map a point of the pair `(i, j)` into the coordinates of `S_target`.
    fn pair_to_set(&self, i: usize, j: usize, z: &[Q], target: usize) -> Vec<Q>;

    /// Ambient coordinates of a point of `S_i`.
    fn to_ambient(&self, i: usize, z: &[Q]) -> Vec<Q>;

    fn name(&self, i: usize) -> String;
}

/// The sets `S ∩ W_c^λ` for a list of faces, each in block coordinates.
pub struct FaceFamily<'a> {
    pub sys: &'a SymmetricSystem,
    pub faces: Vec<Composition>,
}

impl FaceFamily<'_> {
    fn join(&self, i: usize, j: usize) -> Composition {
        self.faces[i].join(&self.faces[j]).expect("faces of one system share n")
    }
}

impl SetFamily for FaceFamily<'_> {
    fn len(&self) -> usize {
        self.faces.len()
    }

    fn set(&self, i: usize) -> Region {
        Region::face(self.sys, &self.faces[i])
    }

    fn difference(&self, i: usize, j: usize) -> Region {
        let own = self.set(i);
        let mut other = Region::new(
            own.dim,
            own.lo.clone(),
            own.hi.clone(),
            format!("S on face {}", self.faces[j]),
        );
        other.pred = other.chamber_and_constraints(self.sys, &self.faces[i], &self.faces[j]);
        own.and_not(&other)
    }

    fn intersection(&self, i: usize, j: usize) -> Region {
        Region::face(self.sys, &self.join(i, j))
    }

    fn pair_to_set(&self, i: usize, j: usize, z: &[Q], target: usize) -> Vec<Q> {
        let x = self.join(i, j).embed(z).expect("point of the join face");
        self.faces[target].collapse(&x)
    }

    fn to_ambient(&self, i: usize, z: &[Q]) -> Vec<Q> {
        self.faces[i].embed(z).expect("point of the face")
    }

    fn name(&self, i: usize) -> String {
        self.faces[i].to_string()
    }
}

/// Sets sharing one coordinate system.
pub struct AmbientFamily {
    pub sets: Vec<Region>,
}

impl SetFamily for AmbientFamily {
    fn len(&self) -> usize {
        self.sets.len()
    }

    fn set(&self, i: usize) -> Region {
        self.sets[i].clone()
    }

    fn difference(&self, i: usize, j: usize) -> Region {
        self.sets[i].and_not(&self.sets[j])
    }

    fn intersection(&self, i: usize, j: usize) -> Region {
        self.sets[i].and(&self.sets[j])
    }

    fn pair_to_set(&self, _i: usize, _j: usize, z: &[Q], _target: usize) -> Vec<Q> {
        z.to_vec()
    }

    fn to_ambient(&self, _i: usize, z: &[Q]) -> Vec<Q> {
        z.to_vec()
    }

    fn name(&self, i: usize) -> String {
        format!("S{}", i + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentVertex {
    pub side: Side,
    /// `(i, j)`: the difference `S_i ∖ S_j` for A, the intersection for B.
    pub pair: (usize, usize),
    /// Representative in ambient coordinates.
    pub ambient: Vec<Q>,
    /// For every set containing the vertex: that set's index, the point in its
    /// coordinates, and the component of the set it lies in.
    pub homes: Vec<(usize, Vec<Q>, usize)>,
}

impl ComponentVertex {
    fn has_key(&self, set: usize, comp: usize) -> bool {
        self.homes.iter().any(|(s, _, c)| *s == set && *c == comp)
    }
}

pub struct UnionGraph {
    pub vertices: Vec<ComponentVertex>,
    pub edges: Vec<(usize, usize)>,
    pub labels: Vec<usize>,
    pub component_count: usize,
    analyses: Vec<Box<dyn RegionAnalysis>>,
    names: Vec<String>,
    resolutions: Vec<(String, Resolution)>,
}

impl std::fmt::Debug for UnionGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UnionGraph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edges)
            .field("labels", &self.labels)
            .finish()
    }
}

fn key_of(analysis: &dyn RegionAnalysis, z: &[Q]) -> std::result::Result<usize, OracleError> {
    analysis.nearest_component(z)
}

/// Build the component graph of a family, then label its components.
///
/// A-vertices sharing a set and a component of that set are merged, and so are
/// B-vertices; without the merge, a set touching no other set would contribute
/// one isolated vertex per pair it takes part in.
pub fn build_union_graph(family: &dyn SetFamily, oracle: &dyn ConnectivityOracle) -> Result<UnionGraph> {
    let k = family.len();
    let set_results: Vec<std::result::Result<Box<dyn RegionAnalysis>, OracleError>> =
        (0..k).into_par_iter().map(|i| oracle.analyze(&family.set(i))).collect();
    let mut analyses = Vec::with_capacity(k);
    for r in set_results {
        analyses.push(r?);
    }
    let mut resolutions: Vec<(String, Resolution)> =
        (0..k).map(|i| (format!("set {}", family.name(i)), analyses[i].resolution())).collect();

    let mut vertices: Vec<ComponentVertex> = Vec::new();
    let mut a_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();

    if k == 1 {
        for (c, z) in analyses[0].representatives().iter().enumerate() {
            a_index.insert((0, c), vertices.len());
            vertices.push(ComponentVertex {
                side: Side::A,
                pair: (0, 0),
                ambient: family.to_ambient(0, z),
                homes: vec![(0, z.clone(), c)],
            });
        }
    }

    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    type PairOut = (Vec<Vec<Q>>, Vec<Vec<Q>>, Vec<Vec<Q>>, Vec<(String, Resolution)>);
    let pair_results: Vec<std::result::Result<PairOut, OracleError>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let dij = oracle.analyze(&family.difference(i, j))?;
            let dji = oracle.analyze(&family.difference(j, i))?;
            let inter = oracle.analyze(&family.intersection(i, j))?;
            let res = vec![
                (format!("{} minus {}", family.name(i), family.name(j)), dij.resolution()),
                (format!("{} minus {}", family.name(j), family.name(i)), dji.resolution()),
                (format!("{} and {}", family.name(i), family.name(j)), inter.resolution()),
            ];
            Ok((
                dij.representatives().to_vec(),
                dji.representatives().to_vec(),
                inter.representatives().to_vec(),
                res,
            ))
        })
        .collect();

    let mut b_vertices: Vec<ComponentVertex> = Vec::new();
    for (&(i, j), r) in pairs.iter().zip(pair_results) {
        let (dij, dji, inter, res) = r?;
        resolutions.extend(res);
        for (home, other, reps) in [(i, j, dij), (j, i, dji)] {
            for z in reps {
                let c = key_of(analyses[home].as_ref(), &z)?;
                if a_index.contains_key(&(home, c)) {
                    continue;
                }
                a_index.insert((home, c), vertices.len());
                vertices.push(ComponentVertex {
                    side: Side::A,
                    pair: (home, other),
                    ambient: family.to_ambient(home, &z),
                    homes: vec![(home, z, c)],
                });
            }
        }
        for z in inter {
            let zi = family.pair_to_set(i, j, &z, i);
            let zj = family.pair_to_set(i, j, &z, j);
            let ci = key_of(analyses[i].as_ref(), &zi)?;
            let cj = key_of(analyses[j].as_ref(), &zj)?;
            b_vertices.push(ComponentVertex {
                side: Side::B,
                pair: (i, j),
                ambient: family.to_ambient(i, &zi),
                homes: vec![(i, zi, ci), (j, zj, cj)],
            });
        }
    }

    // merge B-vertices lying in one component of a common set
    let mut parent: Vec<usize> = (0..b_vertices.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (b, v) in b_vertices.iter().enumerate() {
        for (s, _, c) in &v.homes {
            match owner.get(&(*s, *c)) {
                Some(&o) => {
                    let (ra, rb) = (root(&mut parent, o), root(&mut parent, b));
                    if ra != rb {
                        parent[rb.max(ra)] = ra.min(rb);
                    }
                }
                None => {
                    owner.insert((*s, *c), b);
                }
            }
        }
    }
    let mut merged: BTreeMap<usize, ComponentVertex> = BTreeMap::new();
    for (b, v) in b_vertices.iter().enumerate() {
        let r = root(&mut parent, b);
        let v = v.clone();
        match merged.get_mut(&r) {
            None => {
                merged.insert(r, v);
            }
            Some(m) => {
                for h in v.homes {
                    if !m.has_key(h.0, h.2) {
                        m.homes.push(h);
                    }
                }
            }
        }
    }
    let first_b = vertices.len();
    vertices.extend(merged.into_values());

    let mut edges = Vec::new();
    for (w, v) in vertices.iter().enumerate().skip(first_b) {
        for &(s, _, c) in &v.homes {
            if let Some(&u) = a_index.get(&(s, c)) {
                edges.push((u, w));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();

    let (labels, component_count) = graph_components(vertices.len(), &edges);
    Ok(UnionGraph {
        vertices,
        edges,
        labels,
        component_count,
        analyses,
        names: (0..k).map(|i| family.name(i)).collect(),
        resolutions,
    })
}

/// Breadth-first labeling; labels are assigned in order of the smallest vertex.
pub fn graph_components(n: usize, edges: &[(usize, usize)]) -> (Vec<usize>, usize) {
    let mut adj = vec![Vec::new(); n];
    for &(u, w) in edges {
        adj[u].push(w);
        adj[w].push(u);
    }
    let mut labels = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if labels[s] != usize::MAX {
            continue;
        }
        labels[s] = count;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if labels[w] == usize::MAX {
                    labels[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (labels, count)
}

/// Serializable dump of a graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphReport {
    pub sets: Vec<String>,
    pub vertices: Vec<VertexReport>,
    pub edges: Vec<(usize, usize)>,
    pub component_count: usize,
    pub resolutions: Vec<(String, Resolution)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexReport {
    pub id: usize,
    pub side: Side,
    pub pair: (usize, usize),
    pub homes: Vec<usize>,
    pub representative: Vec<String>,
    pub component: usize,
}

impl UnionGraph {
    pub fn analysis(&self, set: usize) -> &dyn RegionAnalysis {
        self.analyses[set].as_ref()
    }

    pub fn set_count(&self) -> usize {
        self.analyses.len()
    }

    pub fn resolutions(&self) -> &[(String, Resolution)] {
        &self.resolutions
    }

    /// Vertex whose set `home` component contains `x` (given in the coordinates of `S_home`).
    /// A-vertices are preferred; B-vertices are the fallback.
    pub fn locate_vertex(&self, x: &[Q], home: usize) -> Result<usize> {
        self.locate_with(x, home, true)
    }

    /// As [`UnionGraph::locate_vertex`] but snapping `x` to the nearest feasible
    /// cell without checking membership first.
    pub fn locate_vertex_near(&self, x: &[Q], home: usize) -> Result<usize> {
        self.locate_with(x, home, false)
    }

    fn locate_with(&self, x: &[Q], home: usize, checked: bool) -> Result<usize> {
        let what = format!("({}) on set {}", crate::oracle::show_point(x), self.names[home]);
        let analysis = self.analyses[home].as_ref();
        let found = if checked { analysis.component_of(x) } else { analysis.nearest_component(x) };
        let c = found.map_err(|e| Error::LocateFailure {
            what: what.clone(),
            advice: format!("{e}"),
        })?;
        let hit = |side: Side| {
            self.vertices
                .iter()
                .position(|v| v.side == side && v.has_key(home, c))
        };
        hit(Side::A).or_else(|| hit(Side::B)).ok_or_else(|| Error::LocateFailure {
            what,
            advice: "its component produced no graph vertex; decrease --grid-h or raise --max-depth"
                .into(),
        })
    }

    pub fn report(&self, digits: usize) -> GraphReport {
        GraphReport {
            sets: self.names.clone(),
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, v)| VertexReport {
                    id,
                    side: v.side,
                    pair: v.pair,
                    homes: v.homes.iter().map(|h| h.0).collect(),
                    representative: v.ambient.iter().map(|c| to_decimal(c, digits)).collect(),
                    component: self.labels[id],
                })
                .collect(),
            edges: self.edges.clone(),
            component_count: self.component_count,
            resolutions: self.resolutions.clone(),
        }
    }
}
