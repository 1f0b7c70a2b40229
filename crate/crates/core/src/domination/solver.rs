//! Exact minimum solvers: exhaustive enumeration by increasing size, and a
//! branch-and-bound search. Both work on closed-neighborhood bitmasks over
//! the live vertices in ascending id order.

use serde::{Deserialize, Serialize};

use super::{Certificate, Variant};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Branch-and-bound works on 128-bit masks.
const MASK_BITS: usize = 128;
/// Enumeration steps through subsets with a 64-bit Gosper walk.
const BRUTE_HARD_CAP: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Brute,
    #[serde(rename = "bnb")]
    BranchAndBound,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "brute" => Ok(Mode::Brute),
            "bnb" => Ok(Mode::BranchAndBound),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest live vertex count accepted in brute mode.
    pub brute_cap: usize,
    /// Abort with [`Error::SearchLimit`] after this many search nodes.
    pub node_limit: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            brute_cap: 24,
            node_limit: None,
        }
    }
}

/// Outcome of a minimum search. `certificate` is `None` when no vertex set
/// satisfies the variant at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub certificate: Option<Certificate>,
    pub nodes_explored: u64,
}

impl Solution {
    pub fn feasible(&self) -> bool {
        self.certificate.is_some()
    }

    pub fn cardinality(&self) -> Option<usize> {
        self.certificate.as_ref().map(Certificate::len)
    }
}

struct Compact {
    ids: Vec<Vertex>,
    closed: Vec<u128>,
}

impl Compact {
    fn new(g: &Graph) -> Compact {
        let ids: Vec<Vertex> = g.vertices().collect();
        let mut index = vec![usize::MAX; g.capacity()];
        for (i, &v) in ids.iter().enumerate() {
            index[v] = i;
        }
        let closed = ids
            .iter()
            .enumerate()
            .map(|(i, &v)| g.adj(v).iter().fold(1u128 << i, |m, &w| m | (1u128 << index[w])))
            .collect();
        Compact { ids, closed }
    }

    fn len(&self) -> usize {
        self.ids.len()
    }

    fn all(&self) -> u128 {
        if self.len() == MASK_BITS {
            u128::MAX
        } else {
            (1u128 << self.len()) - 1
        }
    }

    fn meets_demand(&self, mask: u128, req: u32) -> bool {
        self.closed.iter().all(|&c| (c & mask).count_ones() >= req)
    }

    /// First pair (lexicographic) whose closed neighborhoods jointly hold
    /// fewer than three vertices of `mask`.
    fn first_bad_pair(&self, mask: u128) -> Option<(usize, usize)> {
        let n = self.len();
        for u in 0..n {
            for v in u + 1..n {
                if ((self.closed[u] | self.closed[v]) & mask).count_ones() < 3 {
                    return Some((u, v));
                }
            }
        }
        None
    }

    fn satisfies(&self, mask: u128, variant: Variant) -> bool {
        match variant {
            Variant::Liars => self.meets_demand(mask, 2) && self.first_bad_pair(mask).is_none(),
            v => self.meets_demand(mask, v.demand() as u32),
        }
    }

    fn to_set(&self, mask: u128) -> VertexSet {
        (0..self.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.ids[i])
            .collect()
    }
}

fn prepare(g: &Graph, variant: Variant, mode: Mode, cfg: &SolverConfig) -> Result<Compact> {
    variant.validate()?;
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let cap = match mode {
        Mode::Brute => cfg.brute_cap.min(BRUTE_HARD_CAP),
        Mode::BranchAndBound => MASK_BITS,
    };
    if n > cap {
        return Err(Error::InstanceTooLarge { n, cap });
    }
    Ok(Compact::new(g))
}

/// Exact optimum, brute force on small graphs and branch-and-bound above
/// `min(brute_cap, 16)` live vertices. `None` means no set qualifies.
pub fn minimum_cardinality(g: &Graph, variant: Variant, cfg: &SolverConfig) -> Result<Option<usize>> {
    let mode = if g.vertex_count() <= cfg.brute_cap.min(16) {
        Mode::Brute
    } else {
        Mode::BranchAndBound
    };
    Ok(solve_minimum_with(g, variant, mode, cfg)?.cardinality())
}

pub fn solve_minimum(g: &Graph, variant: Variant, mode: Mode) -> Result<Solution> {
    solve_minimum_with(g, variant, mode, &SolverConfig::default())
}

pub fn solve_minimum_with(g: &Graph, variant: Variant, mode: Mode, cfg: &SolverConfig) -> Result<Solution> {
    let c = prepare(g, variant, mode, cfg)?;
    let (best, nodes) = match mode {
        Mode::Brute => brute(&c, variant, cfg.node_limit)?,
        Mode::BranchAndBound => {
            let mut s = Search::new(&c, variant, cfg.node_limit);
            let best = s.run()?;
            (best, s.nodes)
        }
    };
    let certificate = match best {
        Some(mask) => {
            let cert = Certificate::unverified(variant, c.to_set(mask)).verify(g)?;
            if !cert.verified {
                return Err(Error::Internal(format!("solver produced an invalid {variant} set")));
            }
            Some(cert)
        }
        None => None,
    };
    Ok(Solution {
        certificate,
        nodes_explored: nodes,
    })
}

/// Subsets with `k` of the low `n` bits set, in increasing numeric order.
fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut next = if k == 0 {
        Some(0u64)
    } else if k > n {
        None
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            let nxt = (((ripple ^ cur) >> 2) / low) | ripple;
            (nxt < limit).then_some(nxt)
        };
        Some(cur)
    })
}

fn brute(c: &Compact, variant: Variant, limit: Option<u64>) -> Result<(Option<u128>, u64)> {
    let mut nodes = 0u64;
    if !c.satisfies(c.all(), variant) {
        return Ok((None, 1));
    }
    for k in 0..=c.len() {
        for mask in subsets_of_size(c.len(), k) {
            nodes += 1;
            if limit.is_some_and(|l| nodes > l) {
                return Err(Error::SearchLimit(nodes));
            }
            if c.satisfies(mask as u128, variant) {
                return Ok((Some(mask as u128), nodes));
            }
        }
    }
    unreachable!("the full vertex set satisfies the variant")
}

/// All minimum solutions, by enumeration. Returns `None` when infeasible.
pub fn enumerate_minimum(g: &Graph, variant: Variant, cfg: &SolverConfig) -> Result<Option<Vec<VertexSet>>> {
    let c = prepare(g, variant, Mode::Brute, cfg)?;
    if !c.satisfies(c.all(), variant) {
        return Ok(None);
    }
    for k in 0..=c.len() {
        let found: Vec<VertexSet> = subsets_of_size(c.len(), k)
            .filter(|&m| c.satisfies(m as u128, variant))
            .map(|m| c.to_set(m as u128))
            .collect();
        if !found.is_empty() {
            return Ok(Some(found));
        }
    }
    unreachable!("the full vertex set satisfies the variant")
}

/// Branch-and-bound. Branches on the lowest-index vertex (or, for liar's
/// domination, the first pair) with unmet demand: each child adds one
/// candidate and excludes the candidates tried before it.
struct Search<'a> {
    c: &'a Compact,
    variant: Variant,
    req: u32,
    best: u128,
    best_size: u32,
    nodes: u64,
    limit: Option<u64>,
}

impl<'a> Search<'a> {
    fn new(c: &'a Compact, variant: Variant, limit: Option<u64>) -> Search<'a> {
        Search {
            c,
            variant,
            req: variant.demand() as u32,
            best: c.all(),
            best_size: c.len() as u32,
            nodes: 0,
            limit,
        }
    }

    fn run(&mut self) -> Result<Option<u128>> {
        if !self.c.satisfies(self.c.all(), self.variant) {
            self.nodes = 1;
            return Ok(None);
        }
        self.search(0, 0)?;
        Ok(Some(self.best))
    }

    fn search(&mut self, chosen: u128, excluded: u128) -> Result<()> {
        self.nodes += 1;
        if self.limit.is_some_and(|l| self.nodes > l) {
            return Err(Error::SearchLimit(self.nodes));
        }
        let size = chosen.count_ones();
        if size >= self.best_size {
            return Ok(());
        }
        let free = self.c.all() & !chosen & !excluded;

        let mut total = 0u32;
        let mut deficient = 0u128;
        let mut first = None;
        for (v, &nb) in self.c.closed.iter().enumerate() {
            let have = (nb & chosen).count_ones();
            if have < self.req {
                let need = self.req - have;
                if (nb & free).count_ones() < need {
                    return Ok(());
                }
                total += need;
                deficient |= 1u128 << v;
                first.get_or_insert(v);
            }
        }

        if let Some(v) = first {
            let cover = bits(free)
                .map(|x| (self.c.closed[x] & deficient).count_ones())
                .max()
                .unwrap_or(0);
            if cover == 0 || size + total.div_ceil(cover) >= self.best_size {
                return Ok(());
            }
            return self.branch(chosen, excluded, self.c.closed[v] & free);
        }

        if self.variant == Variant::Liars {
            if let Some((u, v)) = self.c.first_bad_pair(chosen) {
                let cands = (self.c.closed[u] | self.c.closed[v]) & free;
                if size + 1 >= self.best_size {
                    return Ok(());
                }
                return self.branch(chosen, excluded, cands);
            }
        }

        debug_assert!(self.c.satisfies(chosen, self.variant));
        self.best = chosen;
        self.best_size = size;
        Ok(())
    }

    fn branch(&mut self, chosen: u128, mut excluded: u128, cands: u128) -> Result<()> {
        for x in bits(cands) {
            let b = 1u128 << x;
            self.search(chosen | b, excluded)?;
            excluded |= b;
        }
        Ok(())
    }
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}
