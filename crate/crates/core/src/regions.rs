//! D-region decompositions of plane graphs and the bound checks built on them.
//!
//! A region between `u, v ∈ D` is the closed disk bounded by two `u`–`v`
//! paths of at most two edges (or a single such path, a degenerate region)
//! whose strictly interior vertices are common neighbors of `u` and `v`.
//! Regions of a decomposition contain no other vertex of `D` and may only
//! share cells that lie on the boundary of both.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::domination::{is_k_tuple_dominating, Variant};
use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet};
use crate::plane::{Disk, PlaneGraph};

type PreferenceKey = (Reverse<usize>, Reverse<usize>, VertexSet, BTreeSet<(Vertex, Vertex)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    /// Endpoints, `u < v`.
    pub u: Vertex,
    pub v: Vertex,
    pub p: Vec<Vertex>,
    pub q: Vec<Vertex>,
    pub disk: Disk,
}

/// Flat view of a region for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionSummary {
    pub u: Vertex,
    pub v: Vertex,
    pub boundary: Vec<Vertex>,
    pub interior: Vec<Vertex>,
    pub size: usize,
}

impl Region {
    /// `V(R)`: boundary and interior vertices.
    pub fn vertices(&self) -> VertexSet {
        self.disk.vertices()
    }

    pub fn size(&self) -> usize {
        self.disk.boundary.len() + self.disk.interior_vertices.len()
    }

    pub fn summary(&self) -> RegionSummary {
        RegionSummary {
            u: self.u,
            v: self.v,
            boundary: self.disk.boundary.clone(),
            interior: self.disk.interior_vertices.iter().copied().collect(),
            size: self.size(),
        }
    }

    /// Only cells on the boundary of both regions may be shared.
    fn compatible_with(&self, other: &Region) -> bool {
        let (a, b) = (&self.disk, &other.disk);
        if !a.interior_faces.is_disjoint(&b.interior_faces) {
            return false;
        }
        let (ab, bb) = (a.boundary_vertices(), b.boundary_vertices());
        let shared_vertex_ok = self
            .vertices()
            .intersection(&other.vertices())
            .all(|x| ab.contains(x) && bb.contains(x));
        if !shared_vertex_ok {
            return false;
        }
        let edges_a: BTreeSet<_> = a.boundary_edges.union(&a.interior_edges).collect();
        let edges_b: BTreeSet<_> = b.boundary_edges.union(&b.interior_edges).collect();
        edges_a
            .intersection(&edges_b)
            .all(|e| a.boundary_edges.contains(e) && b.boundary_edges.contains(e))
    }

    /// Tie-break order for the greedy choice: more vertices, then more faces,
    /// then the lexicographically smaller boundary.
    fn preference_key(&self) -> PreferenceKey {
        (
            Reverse(self.size()),
            Reverse(self.disk.interior_faces.len()),
            self.disk.boundary_vertices(),
            self.disk.boundary_edges.clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionDecomposition {
    pub dset: VertexSet,
    /// Live vertex count of the decomposed graph.
    pub vertex_count: usize,
    pub regions: Vec<Region>,
}

impl RegionDecomposition {
    pub fn empty(dset: VertexSet, vertex_count: usize) -> RegionDecomposition {
        RegionDecomposition {
            dset,
            vertex_count,
            regions: Vec::new(),
        }
    }

    /// `V(ℛ)`.
    pub fn covered(&self) -> VertexSet {
        self.regions.iter().flat_map(|r| r.vertices()).collect()
    }

    /// Edges of the induced multigraph on `D`: one per region.
    pub fn induced_multigraph(&self) -> Vec<(Vertex, Vertex)> {
        self.regions.iter().map(|r| (r.u, r.v)).collect()
    }

    pub fn max_region_size(&self) -> usize {
        self.regions.iter().map(Region::size).max().unwrap_or(0)
    }

    /// The induced multigraph in Graphviz DOT.
    pub fn to_dot(&self) -> String {
        let summaries: Vec<RegionSummary> = self.regions.iter().map(Region::summary).collect();
        multigraph_dot(&self.dset, &summaries)
    }
}

/// DOT for the multigraph on `dset` with one labelled edge per region.
pub fn multigraph_dot(dset: &VertexSet, regions: &[RegionSummary]) -> String {
    let mut out = String::from("graph induced {\n");
    for d in dset {
        writeln!(out, "  {d};").unwrap();
    }
    for (i, r) in regions.iter().enumerate() {
        writeln!(out, "  {} -- {} [label=\"R{i}:{}\"];", r.u, r.v, r.size).unwrap();
    }
    out.push_str("}\n");
    out
}

fn check_dset(pg: &PlaneGraph, d: &VertexSet) -> Result<()> {
    d.iter().try_for_each(|&v| pg.graph().check_live(v))
}

/// `u`–`v` paths of at most two edges: the direct edge first, then the
/// two-edge paths by ascending middle vertex.
fn short_paths(pg: &PlaneGraph, u: Vertex, v: Vertex) -> Vec<Vec<Vertex>> {
    let g = pg.graph();
    let mut out = Vec::new();
    if g.has_edge(u, v) {
        out.push(vec![u, v]);
    }
    for &c in g.adj(u).intersection(g.adj(v)) {
        out.push(vec![u, c, v]);
    }
    out
}

/// Every region between `u` and `v` that satisfies the region definition and
/// holds no vertex of `d` besides its endpoints.
fn regions_between(pg: &PlaneGraph, d: &VertexSet, u: Vertex, v: Vertex) -> Result<Vec<Region>> {
    let g = pg.graph();
    let common: VertexSet = g.adj(u).intersection(g.adj(v)).copied().collect();
    let paths = short_paths(pg, u, v);
    let mut out = Vec::new();
    for i in 0..paths.len() {
        for j in i..paths.len() {
            let disk = pg.disk_between(&paths[i], &paths[j])?;
            if !disk.interior_vertices.is_subset(&common) {
                continue;
            }
            let r = Region {
                u,
                v,
                p: paths[i].clone(),
                q: paths[j].clone(),
                disk,
            };
            if r.vertices().iter().any(|x| *x != u && *x != v && d.contains(x)) {
                continue;
            }
            out.push(r);
        }
    }
    Ok(out)
}

/// Candidate regions for covering `x`: endpoints in `d`, `x ∈ V(S)`, no
/// other vertex of `d` in `V(S)`, and only boundary contact with every
/// region already in `existing`.
pub fn enumerate_candidate_regions(
    pg: &PlaneGraph,
    d: &VertexSet,
    x: Vertex,
    existing: &RegionDecomposition,
) -> Result<Vec<Region>> {
    let g = pg.graph();
    g.check_live(x)?;
    check_dset(pg, d)?;
    let mut pairs = BTreeSet::new();
    if d.contains(&x) {
        for &y in d {
            if y != x && (g.has_edge(x, y) || g.adj(x).intersection(g.adj(y)).next().is_some()) {
                pairs.insert((x.min(y), x.max(y)));
            }
        }
    } else {
        let near: Vec<Vertex> = g.adj(x).iter().copied().filter(|w| d.contains(w)).collect();
        for (i, &a) in near.iter().enumerate() {
            for &b in &near[i + 1..] {
                pairs.insert((a, b));
            }
        }
    }
    let mut out = Vec::new();
    for (u, v) in pairs {
        for r in regions_between(pg, d, u, v)? {
            if r.vertices().contains(&x) && existing.regions.iter().all(|e| r.compatible_with(e)) {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// Greedy maximal decomposition: repeatedly take the smallest uncovered
/// vertex and add its preferred candidate region, until every vertex is
/// covered. `d` must be a double dominating set.
pub fn region_decomposition(pg: &PlaneGraph, d: &VertexSet) -> Result<RegionDecomposition> {
    let g = pg.graph();
    check_dset(pg, d)?;
    if !is_k_tuple_dominating(g, d, 2)? {
        return Err(Error::InvalidInput("the given set is not double dominating".into()));
    }
    let mut rd = RegionDecomposition::empty(d.clone(), g.vertex_count());
    let mut covered = VertexSet::new();
    while let Some(x) = g.vertices().find(|v| !covered.contains(v)) {
        let best = enumerate_candidate_regions(pg, d, x, &rd)?
            .into_iter()
            .min_by(|a, b| a.preference_key().cmp(&b.preference_key()))
            .ok_or_else(|| {
                Error::Internal(format!(
                    "no admissible region contains vertex {x} although the set is double dominating"
                ))
            })?;
        covered.extend(best.vertices());
        rd.regions.push(best);
    }
    Ok(rd)
}

/// Structural violations of a decomposition against its graph: region shape,
/// interior vertices, foreign `D` vertices, pairwise overlap and cover.
pub fn validate_decomposition(pg: &PlaneGraph, rd: &RegionDecomposition) -> Vec<String> {
    let g = pg.graph();
    let mut bad = Vec::new();
    for (i, r) in rd.regions.iter().enumerate() {
        if !(rd.dset.contains(&r.u) && rd.dset.contains(&r.v)) {
            bad.push(format!("region {i}: endpoints {}-{} not both in D", r.u, r.v));
        }
        for path in [&r.p, &r.q] {
            let ok = path.len() >= 2
                && path.len() <= 3
                && path[0] == r.u
                && path[path.len() - 1] == r.v
                && path.windows(2).all(|w| g.has_edge(w[0], w[1]));
            if !ok {
                bad.push(format!("region {i}: boundary path {path:?} is not a short u-v path"));
            }
        }
        match pg.disk_between(&r.p, &r.q) {
            Ok(disk) if disk == r.disk => {}
            _ => bad.push(format!("region {i}: stored disk does not match its boundary")),
        }
        let common: VertexSet = g.adj(r.u).intersection(g.adj(r.v)).copied().collect();
        if !r.disk.interior_vertices.is_subset(&common) {
            bad.push(format!("region {i}: interior vertex outside N(u) ∩ N(v)"));
        }
        if r.vertices()
            .iter()
            .any(|x| *x != r.u && *x != r.v && rd.dset.contains(x))
        {
            bad.push(format!("region {i}: contains a foreign vertex of D"));
        }
        for (j, s) in rd.regions.iter().enumerate().skip(i + 1) {
            if !r.compatible_with(s) {
                bad.push(format!("regions {i} and {j} overlap beyond their boundaries"));
            }
        }
    }
    let covered = rd.covered();
    let missing: Vec<Vertex> = g.vertices().filter(|v| !covered.contains(v)).collect();
    if !missing.is_empty() {
        bad.push(format!("vertices {missing:?} are not covered"));
    }
    bad
}

/// Which dominating set the decomposition was built from; fixes the
/// per-region vertex cap and the global factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Minimum double dominating set of a reduced graph.
    ReducedDouble,
    /// Liar's dominating set.
    Liars,
    /// k-tuple dominating set with k ≥ 3.
    Ktuple3,
}

impl Regime {
    /// The domination variant whose optimal sets the regime is about.
    pub fn variant(self) -> Variant {
        match self {
            Regime::ReducedDouble => Variant::KTuple(2),
            Regime::Liars => Variant::Liars,
            Regime::Ktuple3 => Variant::KTuple(3),
        }
    }

    pub fn region_cap(self) -> usize {
        match self {
            Regime::ReducedDouble => 6,
            Regime::Liars => 5,
            Regime::Ktuple3 => 4,
        }
    }

    pub fn planar_factor(self) -> i64 {
        match self {
            Regime::ReducedDouble => 18,
            Regime::Liars => 15,
            Regime::Ktuple3 => 12,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::ReducedDouble => "double",
            Regime::Liars => "liars",
            Regime::Ktuple3 => "ktuple3",
        })
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Regime> {
        match s {
            "double" | "reduced-double" => Ok(Regime::ReducedDouble),
            "liars" => Ok(Regime::Liars),
            "ktuple3" => Ok(Regime::Ktuple3),
            _ => Err(Error::InvalidArgument(format!("unknown regime {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundViolation {
    pub check: String,
    pub region: Option<usize>,
    pub vertices: Vec<Vertex>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub regime: Regime,
    pub dset_size: usize,
    pub vertex_count: usize,
    pub region_count: usize,
    pub max_region_vertices: usize,
    pub region_cap: usize,
    pub region_count_bound: usize,
    pub global_bound: i64,
    pub violations: Vec<BoundViolation>,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Per-region vertex cap, region count `≤ 3|D|` and the global
/// `|V| ≤ c·|D|` for the regime. Violations are returned, never dropped.
pub fn check_region_bounds(rd: &RegionDecomposition, regime: Regime) -> BoundsReport {
    let cap = regime.region_cap();
    let d = rd.dset.len();
    let mut violations = Vec::new();
    for (i, r) in rd.regions.iter().enumerate() {
        if r.size() > cap {
            violations.push(BoundViolation {
                check: "region_size".into(),
                region: Some(i),
                vertices: r.vertices().into_iter().collect(),
                detail: format!("region {}-{} has {} vertices, cap {cap}", r.u, r.v, r.size()),
            });
        }
    }
    if rd.regions.len() > 3 * d {
        violations.push(BoundViolation {
            check: "region_count".into(),
            region: None,
            vertices: rd.dset.iter().copied().collect(),
            detail: format!("{} regions exceed 3|D| = {}", rd.regions.len(), 3 * d),
        });
    }
    let global = regime.planar_factor() * d as i64;
    if rd.vertex_count as i64 > global {
        violations.push(BoundViolation {
            check: "global".into(),
            region: None,
            vertices: rd.dset.iter().copied().collect(),
            detail: format!("|V| = {} exceeds {global}", rd.vertex_count),
        });
    }
    BoundsReport {
        regime,
        dset_size: d,
        vertex_count: rd.vertex_count,
        region_count: rd.regions.len(),
        max_region_vertices: rd.max_region_size(),
        region_cap: cap,
        region_count_bound: 3 * d,
        global_bound: global,
        violations,
    }
}

/// Edge-count test for the induced multigraph: at most `3|D|` edges, and at
/// most `3|D| − 6` once `|D| ≥ 3`.
pub fn thin_planar_check(rd: &RegionDecomposition) -> bool {
    let (m, d) = (rd.regions.len(), rd.dset.len());
    m <= 3 * d && (d < 3 || m + 6 <= 3 * d)
}

/// Kernel-size bound on a surface of Euler genus `eg`. For `eg = 0` these are
/// the planar constants `18γ`, `15γ` and `12γ`; for `eg ≥ 1` the double bound
/// is `18(γ + 32·eg − 16)` and the liar's and k-tuple bounds are
/// `15(γ + 32·eg)`.
pub fn genus_bound(gamma: i64, eg: i64, regime: Regime) -> Result<i64> {
    if gamma < 0 || eg < 0 {
        return Err(Error::InvalidArgument(format!(
            "gamma and Euler genus must be nonnegative, got {gamma} and {eg}"
        )));
    }
    if eg == 0 {
        return Ok(regime.planar_factor() * gamma);
    }
    Ok(match regime {
        Regime::ReducedDouble => 18 * (gamma + 32 * eg - 16),
        Regime::Liars | Regime::Ktuple3 => 15 * (gamma + 32 * eg),
    })
}
