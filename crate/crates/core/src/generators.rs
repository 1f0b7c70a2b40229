//! Seeded instance families. Every plane family comes with a rotation system,
//! so the outputs can go straight into the region machinery.
//!
//! Randomness is SplitMix64; bounded draws use the multiply-shift map
//! `(x * n) >> 64`, so a spec and seed pin the instance on every platform.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::plane::PlaneGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    Grid {
        rows: usize,
        cols: usize,
    },
    /// Hub 0 joined to the rim cycle `1..=spokes`.
    Wheel {
        spokes: usize,
    },
    /// Plane for `n ≤ 4`, abstract above.
    Complete {
        n: usize,
    },
    /// Random stacked triangulation (planar 3-tree).
    Stacked {
        n: usize,
        seed: u64,
    },
    /// Hubs 0 and 1 with `t` private common neighbors.
    Hubs {
        t: usize,
    },
    /// A stacked base with degree-2 vertices attached across random edges,
    /// often several on the same edge, so the reduction rule fires.
    ReductionTrigger {
        n: usize,
        seed: u64,
    },
    /// `G(n, p)` with `p = permille / 1000`; abstract.
    Random {
        n: usize,
        permille: u32,
        seed: u64,
    },
}

impl GeneratorSpec {
    pub fn label(&self) -> String {
        match self {
            GeneratorSpec::Cycle { n } => format!("cycle-{n}"),
            GeneratorSpec::Path { n } => format!("path-{n}"),
            GeneratorSpec::Grid { rows, cols } => format!("grid-{rows}x{cols}"),
            GeneratorSpec::Wheel { spokes } => format!("wheel-{spokes}"),
            GeneratorSpec::Complete { n } => format!("complete-{n}"),
            GeneratorSpec::Stacked { n, seed } => format!("stacked-{n}-s{seed}"),
            GeneratorSpec::Hubs { t } => format!("hubs-{t}"),
            GeneratorSpec::ReductionTrigger { n, seed } => format!("trigger-{n}-s{seed}"),
            GeneratorSpec::Random { n, permille, seed } => format!("random-{n}-p{permille}-s{seed}"),
        }
    }

    /// Builds a spec from CLI-style arguments: `size` is `N` or `RxC`.
    pub fn from_args(family: &str, size: &str, seed: u64) -> Result<GeneratorSpec> {
        let n = || {
            size.parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("size {size:?} is not a number")))
        };
        Ok(match family {
            "cycle" => GeneratorSpec::Cycle { n: n()? },
            "path" => GeneratorSpec::Path { n: n()? },
            "grid" => {
                let (r, c) = size
                    .split_once('x')
                    .and_then(|(r, c)| Some((r.parse().ok()?, c.parse().ok()?)))
                    .ok_or_else(|| Error::InvalidArgument(format!("grid size {size:?} is not RxC")))?;
                GeneratorSpec::Grid { rows: r, cols: c }
            }
            "wheel" => GeneratorSpec::Wheel { spokes: n()? },
            "complete" => GeneratorSpec::Complete { n: n()? },
            "stacked" => GeneratorSpec::Stacked { n: n()?, seed },
            "hubs" => GeneratorSpec::Hubs { t: n()? },
            "reduction-trigger" => GeneratorSpec::ReductionTrigger { n: n()?, seed },
            "random" => GeneratorSpec::Random {
                n: n()?,
                permille: 400,
                seed,
            },
            _ => return Err(Error::InvalidArgument(format!("unknown family {family:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Plane(PlaneGraph),
    Abstract(Graph),
}

impl Instance {
    pub fn graph(&self) -> &Graph {
        match self {
            Instance::Plane(pg) => pg.graph(),
            Instance::Abstract(g) => g,
        }
    }

    pub fn plane(&self) -> Option<&PlaneGraph> {
        match self {
            Instance::Plane(pg) => Some(pg),
            Instance::Abstract(_) => None,
        }
    }
}

struct Rng(SplitMix64);

impl Rng {
    fn new(seed: u64) -> Rng {
        Rng(SplitMix64::seed_from_u64(seed))
    }

    /// Uniform in `0..n`; `n` must be positive.
    fn below(&mut self, n: usize) -> usize {
        ((self.0.next_u64() as u128 * n as u128) >> 64) as usize
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("{}: {what}", spec.label())))
        }
    };
    match *spec {
        GeneratorSpec::Cycle { n } => {
            need(n >= 3, "needs n >= 3")?;
            plane(n, |i| vec![(i + 1) % n, (i + n - 1) % n])
        }
        GeneratorSpec::Path { n } => {
            need(n >= 1, "needs n >= 1")?;
            plane(n, |i| {
                let mut r = Vec::new();
                if i + 1 < n {
                    r.push(i + 1);
                }
                if i > 0 {
                    r.push(i - 1);
                }
                r
            })
        }
        GeneratorSpec::Grid { rows, cols } => {
            need(rows >= 1 && cols >= 1, "needs positive dimensions")?;
            plane(rows * cols, |i| {
                let (r, c) = (i / cols, i % cols);
                // counterclockwise: right, up, left, down
                let mut out = Vec::new();
                if c + 1 < cols {
                    out.push(i + 1);
                }
                if r > 0 {
                    out.push(i - cols);
                }
                if c > 0 {
                    out.push(i - 1);
                }
                if r + 1 < rows {
                    out.push(i + cols);
                }
                out
            })
        }
        GeneratorSpec::Wheel { spokes: s } => {
            need(s >= 3, "needs at least 3 spokes")?;
            plane(s + 1, |i| {
                if i == 0 {
                    (1..=s).collect()
                } else {
                    vec![i % s + 1, 0, (i + s - 2) % s + 1]
                }
            })
        }
        GeneratorSpec::Complete { n } => {
            need(n >= 1, "needs n >= 1")?;
            match n {
                1 => plane(1, |_| vec![]),
                2 => plane(2, |i| vec![1 - i]),
                3 => plane(3, |i| vec![(i + 1) % 3, (i + 2) % 3]),
                4 => {
                    let rot = [vec![1, 2, 3], vec![2, 0, 3], vec![0, 1, 3], vec![1, 0, 2]];
                    plane(4, |i| rot[i].clone())
                }
                _ => {
                    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                    Ok(Instance::Abstract(Graph::from_edges(n, edges)?))
                }
            }
        }
        GeneratorSpec::Stacked { n, seed } => {
            need(n >= 3, "needs n >= 3")?;
            let mut b = StackedBuilder::new();
            let mut rng = Rng::new(seed);
            while b.rot.len() < n {
                let f = rng.below(b.faces.len());
                b.stack(f);
            }
            b.finish()
        }
        GeneratorSpec::Hubs { t } => {
            need(t >= 1, "needs t >= 1")?;
            plane(t + 2, |i| match i {
                0 => (2..t + 2).collect(),
                1 => (2..t + 2).rev().collect(),
                _ => vec![0, 1],
            })
        }
        GeneratorSpec::ReductionTrigger { n, seed } => {
            need(n >= 5, "needs n >= 5")?;
            let mut rng = Rng::new(seed);
            let attachments = 2 + rng.below(n - 4);
            let mut b = StackedBuilder::new();
            while b.rot.len() < n - attachments {
                let f = rng.below(b.faces.len());
                b.stack(f);
            }
            let mut last: Option<(Vertex, Vertex)> = None;
            for _ in 0..attachments {
                let dart = match last {
                    Some(d) if rng.below(2) == 0 => d,
                    _ => {
                        let u = rng.below(b.rot.len());
                        (u, b.rot[u][rng.below(b.rot[u].len())])
                    }
                };
                b.attach(dart);
                last = Some(dart);
            }
            b.finish()
        }
        GeneratorSpec::Random { n, permille, seed } => {
            need(permille <= 1000, "permille must be at most 1000")?;
            let mut rng = Rng::new(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.below(1000) < permille as usize {
                        edges.push((u, v));
                    }
                }
            }
            Ok(Instance::Abstract(Graph::from_edges(n, edges)?))
        }
    }
}

fn plane(n: usize, rot: impl Fn(Vertex) -> Vec<Vertex>) -> Result<Instance> {
    let rotation: Vec<Vec<Vertex>> = (0..n).map(rot).collect();
    let edges: Vec<(Vertex, Vertex)> = rotation
        .iter()
        .enumerate()
        .flat_map(|(u, r)| r.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect();
    let g = Graph::from_edges(n, edges)?;
    Ok(Instance::Plane(PlaneGraph::new(g, rotation)?))
}

/// Grows a triangulation by inserting a vertex into a triangular face.
/// A face `(a, b, c)` is the walk `a→b→c→a`.
struct StackedBuilder {
    rot: Vec<Vec<Vertex>>,
    faces: Vec<[Vertex; 3]>,
}

impl StackedBuilder {
    fn new() -> StackedBuilder {
        StackedBuilder {
            rot: vec![vec![1, 2], vec![2, 0], vec![0, 1]],
            faces: vec![[0, 1, 2], [1, 0, 2]],
        }
    }

    fn insert_after(list: &mut Vec<Vertex>, anchor: Vertex, x: Vertex) {
        let i = list.iter().position(|&y| y == anchor).expect("anchor is a neighbor");
        list.insert(i + 1, x);
    }

    fn stack(&mut self, f: usize) {
        let [a, b, c] = self.faces[f];
        let x = self.rot.len();
        Self::insert_after(&mut self.rot[a], c, x);
        Self::insert_after(&mut self.rot[b], a, x);
        Self::insert_after(&mut self.rot[c], b, x);
        self.rot.push(vec![b, a, c]);
        self.faces[f] = [a, b, x];
        self.faces.push([b, c, x]);
        self.faces.push([c, a, x]);
    }

    /// New vertex adjacent to both ends of the dart `u→v`, placed in the
    /// face on the dart's side. Face bookkeeping is dropped, so this is only
    /// used after stacking is done.
    fn attach(&mut self, (u, v): (Vertex, Vertex)) {
        let c = self.rot.len();
        Self::insert_after(&mut self.rot[v], u, c);
        let i = self.rot[u].iter().position(|&y| y == v).expect("v is a neighbor");
        self.rot[u].insert(i, c);
        self.rot.push(vec![u, v]);
    }

    fn finish(self) -> Result<Instance> {
        let rot = self.rot;
        plane(rot.len(), |i| rot[i].clone())
    }
}

/// Every labelled simple graph on `n` vertices, by edge bitmask.
pub fn all_labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    assert!(pairs.len() < 32, "too many graphs to enumerate");
    (0u32..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).expect("pairs are valid")
    })
}
