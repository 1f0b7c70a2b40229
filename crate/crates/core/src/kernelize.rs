//! The common-neighborhood reduction rule for double domination.
//!
//! For a pair `u, v` the common neighbors `N(u,v)` split into
//!
//! * `N¹`: those with a neighbor outside `N(u,v) ∪ {u, v}`,
//! * `N²`: the rest that touch `N¹`,
//! * `N³`: everything else.
//!
//! When `N³` is nonempty, every vertex of `N²` and all but one vertex of `N³`
//! can be deleted without changing the double domination number.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodPartition {
    pub pair: (Vertex, Vertex),
    pub n1: VertexSet,
    pub n2: VertexSet,
    pub n3: VertexSet,
}

impl NeighborhoodPartition {
    /// True when applying the rule to this pair would delete something.
    pub fn triggers(&self) -> bool {
        !self.n3.is_empty() && (self.n3.len() > 1 || !self.n2.is_empty())
    }
}

/// One effective application of the rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub pair: (Vertex, Vertex),
    pub deleted_n2: VertexSet,
    pub deleted_n3: VertexSet,
    pub kept_witness: Vertex,
}

impl ReductionStep {
    pub fn deleted(&self) -> VertexSet {
        self.deleted_n2.union(&self.deleted_n3).copied().collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub original_n: usize,
    pub reduced_n: usize,
    /// Pair scans started, the final change-free scan included.
    pub passes: usize,
}

impl ReductionTrace {
    /// Every vertex deleted over the whole run.
    pub fn deleted(&self) -> VertexSet {
        self.steps.iter().flat_map(|s| s.deleted()).collect()
    }
}

fn check_pair(g: &Graph, u: Vertex, v: Vertex) -> Result<()> {
    g.check_live(u)?;
    g.check_live(v)?;
    if u == v {
        return Err(Error::InvalidPair(u, v));
    }
    Ok(())
}

pub fn partition_common_neighborhood(g: &Graph, u: Vertex, v: Vertex) -> Result<NeighborhoodPartition> {
    check_pair(g, u, v)?;
    Ok(partition_unchecked(g, u, v))
}

fn partition_unchecked(g: &Graph, u: Vertex, v: Vertex) -> NeighborhoodPartition {
    let common: VertexSet = g.adj(u).intersection(g.adj(v)).copied().collect();
    let inside = |x: &Vertex| *x == u || *x == v || common.contains(x);
    let n1: VertexSet = common
        .iter()
        .copied()
        .filter(|&x| g.adj(x).iter().any(|y| !inside(y)))
        .collect();
    let n2: VertexSet = common
        .iter()
        .copied()
        .filter(|x| !n1.contains(x) && g.adj(*x).iter().any(|y| n1.contains(y)))
        .collect();
    let n3: VertexSet = common
        .iter()
        .copied()
        .filter(|x| !n1.contains(x) && !n2.contains(x))
        .collect();
    NeighborhoodPartition {
        pair: (u, v),
        n1,
        n2,
        n3,
    }
}

/// Applies the rule to one pair. Returns the graph unchanged and no step when
/// the rule would delete nothing; otherwise keeps the smallest id of `N³`.
pub fn apply_reduction_rule(g: &Graph, u: Vertex, v: Vertex) -> Result<(Graph, Option<ReductionStep>)> {
    let part = partition_common_neighborhood(g, u, v)?;
    match step_for(&part) {
        None => Ok((g.clone(), None)),
        Some(step) => {
            let reduced = g.delete_vertices(&step.deleted())?;
            Ok((reduced, Some(step)))
        }
    }
}

fn step_for(part: &NeighborhoodPartition) -> Option<ReductionStep> {
    if !part.triggers() {
        return None;
    }
    let mut n3 = part.n3.iter().copied();
    let kept_witness = n3.next().expect("N³ is nonempty");
    Some(ReductionStep {
        pair: part.pair,
        deleted_n2: part.n2.clone(),
        deleted_n3: n3.collect(),
        kept_witness,
    })
}

/// Pairs with at least one common neighbor, lexicographic with `u < v`.
fn pairs_with_common_neighbors(g: &Graph) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for u in g.vertices() {
        let second: BTreeSet<Vertex> = g
            .adj(u)
            .iter()
            .flat_map(|&w| g.adj(w).range(u + 1..).copied())
            .collect();
        out.extend(second.into_iter().map(|v| (u, v)));
    }
    out
}

fn first_trigger(g: &Graph) -> Option<NeighborhoodPartition> {
    pairs_with_common_neighbors(g)
        .into_iter()
        .map(|(u, v)| partition_unchecked(g, u, v))
        .find(NeighborhoodPartition::triggers)
}

/// Applies the rule until no pair triggers it. Pairs are scanned in
/// lexicographic order and the scan restarts after every effective
/// application.
pub fn kernelize_double_domination(g: &Graph) -> Result<(Graph, ReductionTrace)> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut cur = g.clone();
    let mut trace = ReductionTrace {
        original_n: g.vertex_count(),
        ..Default::default()
    };
    loop {
        trace.passes += 1;
        let Some(part) = first_trigger(&cur) else { break };
        let step = step_for(&part).expect("partition triggers");
        for x in step.deleted() {
            cur.tombstone(x);
        }
        trace.steps.push(step);
    }
    trace.reduced_n = cur.vertex_count();
    Ok((cur, trace))
}

/// True iff applying the rule to any pair would be a no-op.
pub fn is_reduced(g: &Graph) -> bool {
    first_trigger(g).is_none()
}
