//! Dominating set variants, certificate checkers and exact solvers.
//!
//! The solvers here are the ground truth every other module is tested
//! against, so the checkers are written for obviousness first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

mod solver;

pub use solver::{
    enumerate_minimum, minimum_cardinality, solve_minimum, solve_minimum_with, Mode, Solution, SolverConfig,
};

/// Which domination condition a set must meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Variant {
    /// `|N[v] ∩ D| ≥ 1` for all v.
    Dominating,
    /// `|N[v] ∩ D| ≥ k` for all v.
    KTuple(usize),
    /// Double domination plus `|(N[u] ∪ N[v]) ∩ D| ≥ 3` for all pairs `u ≠ v`.
    Liars,
}

impl Variant {
    pub fn validate(self) -> Result<Variant> {
        match self {
            Variant::KTuple(0) => Err(Error::InvalidArgument("k-tuple domination needs k >= 1".into())),
            v => Ok(v),
        }
    }

    /// Per-vertex demand on `|N[v] ∩ D|`.
    pub fn demand(self) -> usize {
        match self {
            Variant::Dominating => 1,
            Variant::KTuple(k) => k,
            Variant::Liars => 2,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Dominating => write!(f, "dom"),
            Variant::KTuple(k) => write!(f, "ktuple:{k}"),
            Variant::Liars => write!(f, "liars"),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "dom" => Ok(Variant::Dominating),
            "liars" => Ok(Variant::Liars),
            _ => {
                let k = s
                    .strip_prefix("ktuple:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown variant {s:?}")))?;
                Variant::KTuple(k).validate()
            }
        }
    }
}

impl From<Variant> for String {
    fn from(v: Variant) -> String {
        v.to_string()
    }
}

impl TryFrom<String> for Variant {
    type Error = Error;

    fn try_from(s: String) -> Result<Variant> {
        s.parse()
    }
}

/// A vertex set claimed to satisfy `variant`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub variant: Variant,
    pub set: VertexSet,
    pub verified: bool,
}

impl Certificate {
    pub fn unverified(variant: Variant, set: VertexSet) -> Certificate {
        Certificate {
            variant,
            set,
            verified: false,
        }
    }

    /// Rechecks the set against `g` and records the outcome.
    pub fn verify(mut self, g: &Graph) -> Result<Certificate> {
        self.verified = satisfies(g, &self.set, self.variant)?;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }
}

fn check_subset(g: &Graph, d: &VertexSet) -> Result<()> {
    d.iter().try_for_each(|&v| g.check_live(v))
}

fn hits(g: &Graph, v: usize, d: &VertexSet) -> usize {
    g.adj(v).iter().filter(|w| d.contains(w)).count() + usize::from(d.contains(&v))
}

pub fn is_dominating(g: &Graph, d: &VertexSet) -> Result<bool> {
    is_k_tuple_dominating(g, d, 1)
}

pub fn is_k_tuple_dominating(g: &Graph, d: &VertexSet, k: usize) -> Result<bool> {
    Variant::KTuple(k).validate()?;
    check_subset(g, d)?;
    Ok(g.vertices().all(|v| hits(g, v, d) >= k))
}

/// Liar's domination. The pair condition is evaluated through the closed
/// neighborhoods: once every vertex is hit twice, a pair can only fail when
/// both vertices are hit exactly twice by the same two vertices of `d`.
pub fn is_liars_dominating(g: &Graph, d: &VertexSet) -> Result<bool> {
    check_subset(g, d)?;
    let mut twice: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
    for v in g.vertices() {
        let mut hit: Vec<usize> = g.adj(v).iter().copied().filter(|w| d.contains(w)).collect();
        if d.contains(&v) {
            hit.push(v);
        }
        if hit.len() < 2 {
            debug_assert!(!liars_full_check(g, d));
            return Ok(false);
        }
        if hit.len() == 2 {
            hit.sort_unstable();
            if !twice.insert(hit) {
                debug_assert!(!liars_full_check(g, d));
                return Ok(false);
            }
        }
    }
    debug_assert!(liars_full_check(g, d));
    Ok(true)
}

/// Both liar's conditions by direct enumeration over all vertices and all
/// unordered pairs.
pub fn liars_full_check(g: &Graph, d: &VertexSet) -> bool {
    let verts: Vec<usize> = g.vertices().collect();
    let closed: Vec<VertexSet> = verts.iter().map(|&v| g.closed_neighborhood(v).expect("live")).collect();
    for a in &closed {
        if a.intersection(d).count() < 2 {
            return false;
        }
    }
    for i in 0..closed.len() {
        for j in i + 1..closed.len() {
            if closed[i].union(&closed[j]).filter(|x| d.contains(x)).count() < 3 {
                return false;
            }
        }
    }
    true
}

pub fn satisfies(g: &Graph, d: &VertexSet, variant: Variant) -> Result<bool> {
    match variant.validate()? {
        Variant::Dominating => is_dominating(g, d),
        Variant::KTuple(k) => is_k_tuple_dominating(g, d, k),
        Variant::Liars => is_liars_dominating(g, d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, cycle, path, star};

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn dominating_examples() {
        assert!(is_dominating(&star(3), &set(&[0])).unwrap());
        assert!(!is_dominating(&cycle(4), &set(&[0])).unwrap());
        assert!(is_dominating(&cycle(5), &set(&[0, 2])).unwrap());
    }

    #[test]
    fn k_tuple_examples() {
        let k4 = complete(4);
        for a in 0..4 {
            for b in a + 1..4 {
                assert!(is_k_tuple_dominating(&k4, &set(&[a, b]), 2).unwrap());
            }
        }
        assert!(is_k_tuple_dominating(&cycle(4), &set(&[0, 1, 2]), 2).unwrap());
        assert!(!is_k_tuple_dominating(&cycle(4), &set(&[0, 1]), 2).unwrap());
        assert!(matches!(
            is_k_tuple_dominating(&cycle(4), &set(&[0]), 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn liars_examples() {
        let k4 = complete(4);
        assert!(is_liars_dominating(&k4, &set(&[0, 1, 2])).unwrap());
        assert!(!is_liars_dominating(&k4, &set(&[0, 1])).unwrap());
        // P3 with everything selected: vertex and pair conditions all hold.
        assert!(is_liars_dominating(&path(3), &set(&[0, 1, 2])).unwrap());
        assert!(liars_full_check(&path(3), &set(&[0, 1, 2])));
        assert!(!is_liars_dominating(&cycle(4), &set(&[0, 1])).unwrap());
    }

    #[test]
    fn checkers_reject_dead_ids() {
        let g = cycle(4).delete_vertices(&set(&[3])).unwrap();
        assert!(matches!(is_dominating(&g, &set(&[3])), Err(Error::InvalidVertex(3))));
        assert!(matches!(
            is_liars_dominating(&g, &set(&[7])),
            Err(Error::InvalidVertex(7))
        ));
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("dom".parse::<Variant>().unwrap(), Variant::Dominating);
        assert_eq!("ktuple:3".parse::<Variant>().unwrap(), Variant::KTuple(3));
        assert_eq!("liars".parse::<Variant>().unwrap(), Variant::Liars);
        assert!("ktuple:0".parse::<Variant>().is_err());
        assert!("triple".parse::<Variant>().is_err());
        assert_eq!(Variant::KTuple(2).to_string(), "ktuple:2");
        assert_eq!(serde_json::to_string(&Variant::KTuple(2)).unwrap(), r#""ktuple:2""#);
    }
}
