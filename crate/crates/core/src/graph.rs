//! Simple undirected graphs with stable vertex ids.
//!
//! Vertices are dense integers `0..capacity`. Deleting a vertex tombstones it
//! instead of re-indexing, so a kernel can always be traced back to the ids of
//! the instance it came from.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<Vertex>>,
    live: Vec<bool>,
    edge_count: usize,
}

impl Graph {
    /// `n` isolated live vertices.
    pub fn new(n: usize) -> Graph {
        Graph {
            adj: vec![BTreeSet::new(); n],
            live: vec![true; n],
            edge_count: 0,
        }
    }

    /// Builds a simple graph on `n` vertices. Self-loops, repeated edges and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_live(u)?;
        self.check_live(v)?;
        if u == v {
            return Err(Error::NotSimple(format!("self-loop at {u}")));
        }
        if !self.adj[u].insert(v) {
            return Err(Error::NotSimple(format!("repeated edge {u}-{v}")));
        }
        self.adj[v].insert(u);
        self.edge_count += 1;
        Ok(())
    }

    /// Appends `extra` live isolated vertices; returns the first new id.
    pub(crate) fn grow(&mut self, extra: usize) -> Vertex {
        let first = self.adj.len();
        self.adj.resize(first + extra, BTreeSet::new());
        self.live.resize(first + extra, true);
        first
    }

    pub(crate) fn tombstone(&mut self, v: Vertex) {
        debug_assert!(self.live[v]);
        let nbrs = std::mem::take(&mut self.adj[v]);
        for w in &nbrs {
            self.adj[*w].remove(&v);
        }
        self.edge_count -= nbrs.len();
        self.live[v] = false;
    }

    /// Size of the id space, deleted vertices included.
    pub fn capacity(&self) -> usize {
        self.adj.len()
    }

    /// Number of live vertices.
    pub fn vertex_count(&self) -> usize {
        self.live.iter().filter(|&&l| l).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count() == 0
    }

    pub fn is_live(&self, v: Vertex) -> bool {
        self.live.get(v).copied().unwrap_or(false)
    }

    pub fn check_live(&self, v: Vertex) -> Result<()> {
        if self.is_live(v) {
            Ok(())
        } else {
            Err(Error::InvalidVertex(v))
        }
    }

    /// Live vertices in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.adj.len()).filter(move |&v| self.live[v])
    }

    pub fn deleted(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.adj.len()).filter(move |&v| !self.live[v])
    }

    pub fn neighbors(&self, v: Vertex) -> Result<&BTreeSet<Vertex>> {
        self.check_live(v)?;
        Ok(&self.adj[v])
    }

    /// Unchecked neighbor access for callers that already validated `v`.
    pub(crate) fn adj(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        Ok(self.neighbors(v)?.len())
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(u).is_some_and(|a| a.contains(&v))
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically ordered.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.range(u + 1..).map(move |&v| (u, v)))
    }

    /// `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: Vertex) -> Result<VertexSet> {
        let mut out = self.neighbors(v)?.clone();
        out.insert(v);
        Ok(out)
    }

    /// `N(u) ∩ N(v)`.
    pub fn common_neighbors(&self, u: Vertex, v: Vertex) -> Result<VertexSet> {
        let a = self.neighbors(u)?;
        let b = self.neighbors(v)?;
        Ok(a.intersection(b).copied().collect())
    }

    /// Returns a copy with every vertex of `s` tombstoned. Ids of the remaining
    /// vertices are unchanged.
    pub fn delete_vertices(&self, s: &VertexSet) -> Result<Graph> {
        for &v in s {
            self.check_live(v)?;
        }
        let mut g = self.clone();
        for &v in s {
            g.tombstone(v);
        }
        Ok(g)
    }

    pub fn minimum_degree(&self) -> Result<usize> {
        self.vertices()
            .map(|v| self.adj[v].len())
            .min()
            .ok_or(Error::EmptyGraph)
    }

    pub fn maximum_degree(&self) -> Result<usize> {
        self.vertices()
            .map(|v| self.adj[v].len())
            .max()
            .ok_or(Error::EmptyGraph)
    }

    /// Connected components of the live vertices, each sorted, ordered by
    /// their smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.capacity()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(x) = stack.pop() {
                comp.push(x);
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Disjoint union; vertices of `other` are shifted by `self.capacity()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.capacity();
        let mut g = self.clone();
        g.adj
            .extend(other.adj.iter().map(|a| a.iter().map(|&v| v + shift).collect()));
        g.live.extend_from_slice(&other.live);
        g.edge_count += other.edge_count;
        g
    }

    /// Graph induced on the live vertices of `keep`, ids preserved (everything
    /// else tombstoned).
    pub fn induced(&self, keep: &VertexSet) -> Result<Graph> {
        let drop: VertexSet = self.vertices().filter(|v| !keep.contains(v)).collect();
        for &v in keep {
            self.check_live(v)?;
        }
        self.delete_vertices(&drop)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, e).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    fn set(v: &[Vertex]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn closed_neighborhood_examples() {
        assert_eq!(path(3).closed_neighborhood(1).unwrap(), set(&[0, 1, 2]));
        assert_eq!(Graph::new(1).closed_neighborhood(0).unwrap(), set(&[0]));
        assert_eq!(cycle(4).closed_neighborhood(0).unwrap(), set(&[3, 0, 1]));
    }

    #[test]
    fn closed_neighborhood_rejects_unknown_and_deleted() {
        let g = cycle(4);
        assert!(matches!(g.closed_neighborhood(9), Err(Error::InvalidVertex(9))));
        let h = g.delete_vertices(&set(&[2])).unwrap();
        assert!(matches!(h.closed_neighborhood(2), Err(Error::InvalidVertex(2))));
    }

    #[test]
    fn delete_vertices_examples() {
        let c4 = cycle(4);
        let p = c4.delete_vertices(&set(&[3])).unwrap();
        assert_eq!(p.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(p.vertex_count(), 3);
        assert_eq!(p.capacity(), 4);

        assert_eq!(c4.delete_vertices(&VertexSet::new()).unwrap(), c4);

        let k4 = complete(4);
        let e = k4.delete_vertices(&set(&[0, 1])).unwrap();
        assert_eq!(e.edges().collect::<Vec<_>>(), vec![(2, 3)]);
        assert_eq!(e.edge_count(), 1);
    }

    #[test]
    fn deleting_twice_is_an_error() {
        let g = cycle(5).delete_vertices(&set(&[1])).unwrap();
        assert!(matches!(g.delete_vertices(&set(&[1])), Err(Error::InvalidVertex(1))));
    }

    #[test]
    fn minimum_degree_examples() {
        assert_eq!(complete(4).minimum_degree().unwrap(), 3);
        assert_eq!(star(3).minimum_degree().unwrap(), 1);
        assert_eq!(cycle(5).minimum_degree().unwrap(), 2);
        assert!(matches!(Graph::new(0).minimum_degree(), Err(Error::EmptyGraph)));
        let gone = Graph::new(2).delete_vertices(&set(&[0, 1])).unwrap();
        assert!(matches!(gone.minimum_degree(), Err(Error::EmptyGraph)));
    }

    #[test]
    fn rejects_non_simple_input() {
        assert!(matches!(Graph::from_edges(2, [(0, 0)]), Err(Error::NotSimple(_))));
        assert!(matches!(
            Graph::from_edges(2, [(0, 1), (1, 0)]),
            Err(Error::NotSimple(_))
        ));
        assert!(matches!(Graph::from_edges(2, [(0, 2)]), Err(Error::InvalidVertex(2))));
    }

    #[test]
    fn components_are_ordered() {
        let g = Graph::from_edges(6, [(4, 5), (0, 2)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 2], vec![1], vec![3], vec![4, 5]]);
    }
}
