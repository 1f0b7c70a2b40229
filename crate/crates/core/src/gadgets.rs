//! Parameterized reductions from dominating set: to k-tuple domination, to
//! liar's domination, and a planarity-preserving reduction to liar's
//! domination. New vertices are appended after the original id space.

use serde::{Deserialize, Serialize};

use crate::domination::{minimum_cardinality, SolverConfig, Variant};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::plane::PlaneGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum GadgetKind {
    KTuple(usize),
    Liars,
    PlanarLiars,
}

impl GadgetKind {
    /// The variant asked about on the transformed graph.
    pub fn target(self) -> Variant {
        match self {
            GadgetKind::KTuple(k) => Variant::KTuple(k),
            GadgetKind::Liars | GadgetKind::PlanarLiars => Variant::Liars,
        }
    }
}

impl std::fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GadgetKind::KTuple(k) => write!(f, "ktuple:{k}"),
            GadgetKind::Liars => f.write_str("liars"),
            GadgetKind::PlanarLiars => f.write_str("planar-liars"),
        }
    }
}

impl From<GadgetKind> for String {
    fn from(k: GadgetKind) -> String {
        k.to_string()
    }
}

impl TryFrom<String> for GadgetKind {
    type Error = Error;

    fn try_from(s: String) -> Result<GadgetKind> {
        s.parse()
    }
}

impl std::str::FromStr for GadgetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<GadgetKind> {
        match s {
            "liars" => Ok(GadgetKind::Liars),
            "planar-liars" => Ok(GadgetKind::PlanarLiars),
            _ => match s.strip_prefix("ktuple:").and_then(|k| k.parse().ok()) {
                Some(k) if k >= 1 => Ok(GadgetKind::KTuple(k)),
                _ => Err(Error::InvalidArgument(format!("unknown gadget kind {s:?}"))),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetInstance {
    pub kind: GadgetKind,
    pub original: Graph,
    pub transformed: Graph,
    pub parameter_in: usize,
    pub parameter_out: usize,
    /// Labels of the added vertices, in id order.
    pub new_vertices: Vec<(String, Vertex)>,
}

/// The serializable part of a [`GadgetInstance`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetMetadata {
    pub kind: GadgetKind,
    pub target: Variant,
    pub original_n: usize,
    pub transformed_n: usize,
    pub transformed_m: usize,
    pub parameter_in: usize,
    pub parameter_out: usize,
    pub new_vertices: Vec<(String, Vertex)>,
}

impl GadgetInstance {
    pub fn metadata(&self) -> GadgetMetadata {
        GadgetMetadata {
            kind: self.kind,
            target: self.kind.target(),
            original_n: self.original.vertex_count(),
            transformed_n: self.transformed.vertex_count(),
            transformed_m: self.transformed.edge_count(),
            parameter_in: self.parameter_in,
            parameter_out: self.parameter_out,
            new_vertices: self.new_vertices.clone(),
        }
    }

    pub fn vertex(&self, label: &str) -> Option<Vertex> {
        self.new_vertices.iter().find(|(l, _)| l == label).map(|&(_, v)| v)
    }

    /// `parameter_out - parameter_in`.
    pub fn shift(&self) -> usize {
        self.parameter_out - self.parameter_in
    }
}

/// Adds the clique `u1..uk`; every original vertex is joined to `u1..u(k-1)`.
pub fn build_ktuple_gadget(g: &Graph, p: usize, k: usize) -> Result<GadgetInstance> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let mut t = g.clone();
    let first = t.grow(k);
    let us: Vec<Vertex> = (first..first + k).collect();
    for v in g.vertices() {
        for &u in &us[..k - 1] {
            t.insert_edge(v, u)?;
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            t.insert_edge(us[i], us[j])?;
        }
    }
    Ok(GadgetInstance {
        kind: GadgetKind::KTuple(k),
        original: g.clone(),
        transformed: t,
        parameter_in: p,
        parameter_out: p + k,
        new_vertices: us
            .iter()
            .enumerate()
            .map(|(i, &u)| (format!("u{}", i + 1), u))
            .collect(),
    })
}

/// Adds `u, u', v, v', w`: every original vertex is joined to `u` and `v`,
/// plus the edges `uu'`, `vv'`, `wu`, `wv`.
pub fn build_liars_gadget(g: &Graph, p: usize) -> Result<GadgetInstance> {
    let mut t = g.clone();
    let first = t.grow(5);
    let (u, u2, v, v2, w) = (first, first + 1, first + 2, first + 3, first + 4);
    for x in g.vertices() {
        t.insert_edge(x, u)?;
        t.insert_edge(x, v)?;
    }
    for (a, b) in [(u, u2), (v, v2), (w, u), (w, v)] {
        t.insert_edge(a, b)?;
    }
    Ok(GadgetInstance {
        kind: GadgetKind::Liars,
        original: g.clone(),
        transformed: t,
        parameter_in: p,
        parameter_out: p + 4,
        new_vertices: ["u", "u'", "v", "v'", "w"]
            .iter()
            .zip(first..)
            .map(|(l, id)| (l.to_string(), id))
            .collect(),
    })
}

/// Hangs a path `v - x - y - z` off every original vertex `v`.
pub fn build_planar_liars_gadget(g: &Graph, k: usize) -> Result<GadgetInstance> {
    let verts: Vec<Vertex> = g.vertices().collect();
    let mut t = g.clone();
    let first = t.grow(3 * verts.len());
    let mut labels = Vec::with_capacity(3 * verts.len());
    for (i, &v) in verts.iter().enumerate() {
        let (x, y, z) = (first + 3 * i, first + 3 * i + 1, first + 3 * i + 2);
        t.insert_edge(v, x)?;
        t.insert_edge(x, y)?;
        t.insert_edge(y, z)?;
        labels.push((format!("x{v}"), x));
        labels.push((format!("y{v}"), y));
        labels.push((format!("z{v}"), z));
    }
    Ok(GadgetInstance {
        kind: GadgetKind::PlanarLiars,
        original: g.clone(),
        transformed: t,
        parameter_in: k,
        parameter_out: k + 3 * verts.len(),
        new_vertices: labels,
    })
}

/// The planar-liars gadget together with the extended embedding: each
/// pendant path is inserted into the rotation at `v` right after its last
/// neighbor, which keeps every face intact apart from the path itself.
pub fn build_planar_liars_gadget_embedded(pg: &PlaneGraph, k: usize) -> Result<(GadgetInstance, PlaneGraph)> {
    let inst = build_planar_liars_gadget(pg.graph(), k)?;
    let mut rotation: Vec<Vec<Vertex>> = pg.rotations().to_vec();
    rotation.resize(inst.transformed.capacity(), Vec::new());
    for chunk in inst.new_vertices.chunks(3) {
        let (x, y, z) = (chunk[0].1, chunk[1].1, chunk[2].1);
        let v = *inst
            .transformed
            .adj(x)
            .iter()
            .find(|&&n| n != y)
            .expect("x is attached to its original vertex");
        rotation[v].push(x);
        rotation[x] = vec![v, y];
        rotation[y] = vec![x, z];
        rotation[z] = vec![y];
    }
    let outer: Vec<_> = pg.outer_faces().into_iter().map(|f| pg.canonical_dart(f)).collect();
    let extended = PlaneGraph::with_outer_darts(inst.transformed.clone(), rotation, &outer)?;
    Ok((inst, extended))
}

/// Oracle comparison of both sides of a reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub gamma_in: Option<usize>,
    pub gamma_out: Option<usize>,
    /// `γ(G) ≤ p ⇔ γ'(G') ≤ p'` at the instance's own parameter.
    pub holds_at_parameter: bool,
    /// Parameters `p ∈ 0..=n` where the two sides disagree.
    pub failing_parameters: Vec<usize>,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.holds_at_parameter && self.failing_parameters.is_empty()
    }
}

fn at_most(gamma: Option<usize>, p: usize) -> bool {
    gamma.is_some_and(|g| g <= p)
}

/// Solves both sides exactly and checks the iff-claim for every parameter
/// `0..=n` (the transformed graph does not depend on `p`, only `p'` does).
pub fn verify_equivalence(inst: &GadgetInstance, cfg: &SolverConfig) -> Result<EquivalenceReport> {
    let gamma_in = minimum_cardinality(&inst.original, Variant::Dominating, cfg)?;
    let gamma_out = minimum_cardinality(&inst.transformed, inst.kind.target(), cfg)?;
    let shift = inst.shift();
    let check = |p: usize| at_most(gamma_in, p) == at_most(gamma_out, p + shift);
    Ok(EquivalenceReport {
        gamma_in,
        gamma_out,
        holds_at_parameter: check(inst.parameter_in),
        failing_parameters: (0..=inst.original.vertex_count()).filter(|&p| !check(p)).collect(),
    })
}
