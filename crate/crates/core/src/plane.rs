//! Combinatorial plane embeddings given by rotation systems.
//!
//! A rotation lists, for every live vertex, the cyclic order of its
//! neighbors. Faces are traced with the usual rule: the dart following
//! `u -> v` is `v -> w` where `w` comes right after `u` in the rotation at `v`.
//! Every connected component is embedded on its own and carries one
//! designated outer face; distinct components sit side by side, none nested
//! inside a face of another.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

pub type FaceId = usize;
/// A directed edge `tail -> head`.
pub type Dart = (Vertex, Vertex);
/// An undirected edge stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    graph: Graph,
    rotation: Vec<Vec<Vertex>>,
    succ: HashMap<Dart, Vertex>,
    faces: Vec<Vec<Dart>>,
    dart_face: HashMap<Dart, FaceId>,
    component: Vec<Option<usize>>,
    outer: Vec<Option<FaceId>>,
}

/// A closed disk of the plane bounded by a closed walk of the embedding.
///
/// A degenerate disk is a bare path: its boundary is the path itself and it
/// has no interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disk {
    /// Boundary walk. For a proper disk this is a simple cycle listed once
    /// (the first vertex is not repeated); for a degenerate disk, the path.
    pub boundary: Vec<Vertex>,
    pub boundary_edges: BTreeSet<Edge>,
    pub interior_vertices: VertexSet,
    pub interior_edges: BTreeSet<Edge>,
    pub interior_faces: BTreeSet<FaceId>,
    pub degenerate: bool,
}

impl Disk {
    pub fn boundary_vertices(&self) -> VertexSet {
        self.boundary.iter().copied().collect()
    }

    /// Boundary and interior vertices together.
    pub fn vertices(&self) -> VertexSet {
        let mut out = self.boundary_vertices();
        out.extend(self.interior_vertices.iter().copied());
        out
    }
}

/// Validates `rotation` against `g` and derives the faces. Fails with
/// [`Error::NotPlanar`] when some component violates Euler's formula.
pub fn build_plane_graph(g: Graph, rotation: Vec<Vec<Vertex>>) -> Result<PlaneGraph> {
    PlaneGraph::new(g, rotation)
}

impl PlaneGraph {
    pub fn new(g: Graph, rotation: Vec<Vec<Vertex>>) -> Result<PlaneGraph> {
        Self::build(g, rotation, &[])
    }

    /// Like [`PlaneGraph::new`], with explicit outer faces: each dart names the
    /// face on its left as the outer face of its component. At most one dart
    /// per component; components without one get the default choice.
    pub fn with_outer_darts(g: Graph, rotation: Vec<Vec<Vertex>>, outer: &[Dart]) -> Result<PlaneGraph> {
        for &(a, b) in outer {
            if !g.has_edge(a, b) {
                return Err(Error::InvalidEmbedding(format!("outer dart {a}->{b} is not an edge")));
            }
        }
        let comps = g.components();
        for comp in &comps {
            let hits = outer.iter().filter(|d| comp.binary_search(&d.0).is_ok()).count();
            if hits > 1 {
                return Err(Error::InvalidEmbedding(format!(
                    "component of vertex {} has {hits} outer darts",
                    comp[0]
                )));
            }
        }
        Self::build(g, rotation, outer)
    }

    /// `hints` are tried in order; the first dart found in a component picks
    /// its outer face and later ones for the same component are ignored.
    fn build(g: Graph, rotation: Vec<Vec<Vertex>>, hints: &[Dart]) -> Result<PlaneGraph> {
        if rotation.len() != g.capacity() {
            return Err(Error::InvalidEmbedding(format!(
                "rotation covers {} vertices, graph has {}",
                rotation.len(),
                g.capacity()
            )));
        }
        let mut succ = HashMap::with_capacity(2 * g.edge_count());
        for (v, rot) in rotation.iter().enumerate() {
            if !g.is_live(v) {
                if !rot.is_empty() {
                    return Err(Error::InvalidEmbedding(format!("deleted vertex {v} has a rotation")));
                }
                continue;
            }
            let listed: VertexSet = rot.iter().copied().collect();
            if listed.len() != rot.len() || &listed != g.adj(v) {
                return Err(Error::InvalidEmbedding(format!(
                    "rotation at {v} does not list its incident edges exactly once"
                )));
            }
            for (i, &u) in rot.iter().enumerate() {
                succ.insert((v, u), rot[(i + 1) % rot.len()]);
            }
        }

        let mut faces: Vec<Vec<Dart>> = Vec::new();
        let mut dart_face = HashMap::with_capacity(2 * g.edge_count());
        for u in g.vertices() {
            for &v in g.adj(u) {
                if dart_face.contains_key(&(u, v)) {
                    continue;
                }
                let id = faces.len();
                let mut walk = Vec::new();
                let mut d = (u, v);
                loop {
                    dart_face.insert(d, id);
                    walk.push(d);
                    let next = (d.1, succ[&(d.1, d.0)]);
                    if next == (u, v) {
                        break;
                    }
                    d = next;
                }
                faces.push(walk);
            }
        }

        let comps = g.components();
        let mut component = vec![None; g.capacity()];
        for (c, verts) in comps.iter().enumerate() {
            for &v in verts {
                component[v] = Some(c);
            }
        }
        let mut face_count = vec![0usize; comps.len()];
        for walk in &faces {
            face_count[component[walk[0].0].expect("live tail")] += 1;
        }
        let mut outer = vec![None; comps.len()];
        for (c, verts) in comps.iter().enumerate() {
            let n = verts.len() as i64;
            let m = verts.iter().map(|&v| g.adj(v).len()).sum::<usize>() as i64 / 2;
            if m == 0 {
                continue;
            }
            let f = face_count[c] as i64;
            if n - m + f != 2 {
                return Err(Error::NotPlanar(format!(
                    "component of vertex {}: n - m + f = {n} - {m} + {f} != 2",
                    verts[0]
                )));
            }
        }
        let mut hinted = vec![false; comps.len()];
        for d in hints {
            if let Some(&f) = dart_face.get(d) {
                let c = component[d.0].expect("live tail");
                if !hinted[c] {
                    outer[c] = Some(f);
                    hinted[c] = true;
                }
            }
        }
        // Default: the longest face, ties to the smallest face id.
        for (id, walk) in faces.iter().enumerate() {
            let c = component[walk[0].0].expect("live tail");
            if hinted[c] {
                continue;
            }
            match outer[c] {
                Some(cur) if faces[cur].len() >= walk.len() => {}
                _ => outer[c] = Some(id),
            }
        }
        Ok(PlaneGraph {
            graph: g,
            rotation,
            succ,
            faces,
            dart_face,
            component,
            outer,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_of(&self, d: Dart) -> Option<FaceId> {
        self.dart_face.get(&d).copied()
    }

    /// Vertices along a face, in walk order (repeats possible).
    pub fn face_walk(&self, f: FaceId) -> Vec<Vertex> {
        self.faces[f].iter().map(|d| d.0).collect()
    }

    /// The neighbor following `u` in the rotation at `v`.
    pub fn successor(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        self.succ.get(&(v, u)).copied()
    }

    pub fn component_of(&self, v: Vertex) -> Option<usize> {
        self.component.get(v).copied().flatten()
    }

    /// Outer face of the component containing `v`, if that component has edges.
    pub fn outer_face_of(&self, v: Vertex) -> Option<FaceId> {
        self.component_of(v).and_then(|c| self.outer[c])
    }

    /// Outer faces, one per component that has edges, in component order.
    pub fn outer_faces(&self) -> Vec<FaceId> {
        self.outer.iter().flatten().copied().collect()
    }

    /// The lexicographically smallest dart on face `f`.
    pub fn canonical_dart(&self, f: FaceId) -> Dart {
        *self.faces[f].iter().min().expect("faces are nonempty")
    }

    /// Euler's formula for every component with at least one edge.
    pub fn euler_holds(&self) -> bool {
        let comps = self.graph.components();
        comps.iter().all(|verts| {
            let n = verts.len() as i64;
            let m = verts.iter().map(|&v| self.graph.adj(v).len()).sum::<usize>() as i64 / 2;
            if m == 0 {
                return true;
            }
            let f = self
                .faces
                .iter()
                .filter(|w| verts.binary_search(&w[0].0).is_ok())
                .count() as i64;
            n - m + f == 2
        })
    }

    /// The closed disk bounded by two `u`–`v` paths of at most two edges.
    ///
    /// `q` may be given in either direction. When `p == q` the disk is the
    /// bare path. Otherwise the boundary is the cycle `p · reverse(q)` and the
    /// interior is the side of that cycle that does not contain the outer
    /// face of its component.
    pub fn disk_between(&self, p: &[Vertex], q: &[Vertex]) -> Result<Disk> {
        self.check_short_path(p)?;
        self.check_short_path(q)?;
        let q: Vec<Vertex> = if q[0] == p[0] && q[q.len() - 1] == p[p.len() - 1] {
            q.to_vec()
        } else if q[0] == p[p.len() - 1] && q[q.len() - 1] == p[0] {
            q.iter().rev().copied().collect()
        } else {
            return Err(Error::InvalidRegion(format!(
                "paths {p:?} and {q:?} do not share endpoints"
            )));
        };
        if p[0] == p[p.len() - 1] {
            return Err(Error::InvalidRegion(format!("path {p:?} is closed")));
        }
        if p == q.as_slice() {
            return Ok(Disk {
                boundary: p.to_vec(),
                boundary_edges: p.windows(2).map(|w| edge(w[0], w[1])).collect(),
                interior_vertices: VertexSet::new(),
                interior_edges: BTreeSet::new(),
                interior_faces: BTreeSet::new(),
                degenerate: true,
            });
        }
        let mut cycle: Vec<Vertex> = p.to_vec();
        cycle.extend(q.iter().rev().skip(1).take(q.len() - 2));
        let distinct: VertexSet = cycle.iter().copied().collect();
        if distinct.len() != cycle.len() || cycle.len() < 3 {
            return Err(Error::InvalidRegion(format!(
                "boundary {cycle:?} is not a simple closed walk"
            )));
        }
        let (interior_faces, _) = self.cycle_sides(&cycle)?;
        let boundary_edges: BTreeSet<Edge> = (0..cycle.len())
            .map(|i| edge(cycle[i], cycle[(i + 1) % cycle.len()]))
            .collect();
        let mut interior_vertices = VertexSet::new();
        let mut interior_edges = BTreeSet::new();
        for &f in &interior_faces {
            for &(a, b) in &self.faces[f] {
                if !distinct.contains(&a) {
                    interior_vertices.insert(a);
                }
                let e = edge(a, b);
                if !boundary_edges.contains(&e) {
                    interior_edges.insert(e);
                }
            }
        }
        Ok(Disk {
            boundary: cycle,
            boundary_edges,
            interior_vertices,
            interior_edges,
            interior_faces,
            degenerate: false,
        })
    }

    /// Splits the faces of the cycle's component into the two sides of the
    /// simple cycle; returns `(inner, outer)` where `outer` holds the
    /// component's outer face.
    pub fn cycle_sides(&self, cycle: &[Vertex]) -> Result<(BTreeSet<FaceId>, BTreeSet<FaceId>)> {
        let k = cycle.len();
        let mut cut = BTreeSet::new();
        for i in 0..k {
            let (a, b) = (cycle[i], cycle[(i + 1) % k]);
            if !self.graph.has_edge(a, b) {
                return Err(Error::InvalidRegion(format!("{a}-{b} is not an edge")));
            }
            cut.insert(edge(a, b));
        }
        let forward: Vec<FaceId> = (0..k)
            .map(|i| self.dart_face[&(cycle[i], cycle[(i + 1) % k])])
            .collect();
        let backward: Vec<FaceId> = (0..k)
            .map(|i| self.dart_face[&(cycle[(i + 1) % k], cycle[i])])
            .collect();
        let side_a = self.flood(&forward, &cut);
        let side_b = self.flood(&backward, &cut);
        if !side_a.is_disjoint(&side_b) {
            return Err(Error::Internal(format!(
                "cycle {cycle:?} does not separate the embedding"
            )));
        }
        let outer = self
            .outer_face_of(cycle[0])
            .expect("cycle lies in a component with edges");
        if side_a.contains(&outer) {
            Ok((side_b, side_a))
        } else {
            Ok((side_a, side_b))
        }
    }

    fn flood(&self, seeds: &[FaceId], cut: &BTreeSet<Edge>) -> BTreeSet<FaceId> {
        let mut seen: BTreeSet<FaceId> = seeds.iter().copied().collect();
        let mut queue: VecDeque<FaceId> = seen.iter().copied().collect();
        while let Some(f) = queue.pop_front() {
            for &(a, b) in &self.faces[f] {
                if cut.contains(&edge(a, b)) {
                    continue;
                }
                let g = self.dart_face[&(b, a)];
                if seen.insert(g) {
                    queue.push_back(g);
                }
            }
        }
        seen
    }

    fn check_short_path(&self, p: &[Vertex]) -> Result<()> {
        if p.len() < 2 || p.len() > 3 {
            return Err(Error::InvalidRegion(format!("path {p:?} must have one or two edges")));
        }
        for &v in p {
            if !self.graph.is_live(v) {
                return Err(Error::InvalidRegion(format!("path {p:?} uses dead vertex {v}")));
            }
        }
        let distinct: VertexSet = p.iter().copied().collect();
        if distinct.len() != p.len() {
            return Err(Error::InvalidRegion(format!("path {p:?} is not simple")));
        }
        for w in p.windows(2) {
            if !self.graph.has_edge(w[0], w[1]) {
                return Err(Error::InvalidRegion(format!("{}-{} is not an edge", w[0], w[1])));
            }
        }
        Ok(())
    }

    /// Drops `deleted` and their edges from the embedding. Faces around the
    /// removed vertices merge; outer faces follow their surviving darts.
    pub fn restrict_embedding(&self, deleted: &VertexSet) -> Result<PlaneGraph> {
        let g = self.graph.delete_vertices(deleted)?;
        let rotation: Vec<Vec<Vertex>> = self
            .rotation
            .iter()
            .enumerate()
            .map(|(v, rot)| {
                if deleted.contains(&v) {
                    Vec::new()
                } else {
                    rot.iter().copied().filter(|u| !deleted.contains(u)).collect()
                }
            })
            .collect();
        let hints: Vec<Dart> = self
            .outer_faces()
            .into_iter()
            .flat_map(|f| self.faces[f].iter().copied())
            .filter(|d| !deleted.contains(&d.0) && !deleted.contains(&d.1))
            .collect();
        Self::build(g, rotation, &hints).map_err(|e| match e {
            Error::NotPlanar(msg) | Error::InvalidEmbedding(msg) => {
                Error::Internal(format!("restricted embedding broke: {msg}"))
            }
            other => other,
        })
    }
}
