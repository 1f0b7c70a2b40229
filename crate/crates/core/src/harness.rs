//! Experiment runner. Each suite generates its corpus, computes exact
//! optima with the oracles, checks every bound and keeps the instances that
//! break one. Records come back in corpus order whatever the thread count,
//! so two runs differ only in their `wall_time` fields.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domination::{solve_minimum_with, Mode, Solution, SolverConfig, Variant};
use crate::error::{Error, Result};
use crate::format::{write_embedding, write_graph};
use crate::gadgets::{
    build_ktuple_gadget, build_liars_gadget, build_planar_liars_gadget, build_planar_liars_gadget_embedded,
    verify_equivalence, GadgetInstance, GadgetKind,
};
use crate::generators::{all_labelled_graphs, generate, GeneratorSpec, Instance};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::kernelize::{is_reduced, kernelize_double_domination};
use crate::plane::PlaneGraph;
use crate::regions::{
    check_region_bounds, multigraph_dot, region_decomposition, thin_planar_check, validate_decomposition, BoundsReport,
    Regime, RegionSummary,
};

/// Overrides the oracle caps: either one number for both brute-force caps,
/// or a comma list such as `double=18,liars=16,nodes=1000000`.
pub const ORACLE_CAP_ENV: &str = "DOMKERNEL_ORACLE_CAP";

/// Largest instance on which the brute-force and branch-and-bound oracles
/// are cross-checked.
pub const CROSS_CHECK_MAX_N: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCaps {
    /// Brute force for double and k-tuple domination up to this many
    /// vertices, branch-and-bound above.
    pub brute_double: usize,
    /// Same for liar's domination.
    pub brute_liars: usize,
    /// Branch-and-bound node budget; instances that exhaust it are skipped.
    pub node_limit: u64,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            brute_double: 18,
            brute_liars: 16,
            node_limit: 20_000_000,
        }
    }
}

impl OracleCaps {
    pub fn with_env_override(mut self) -> Result<OracleCaps> {
        let Ok(raw) = std::env::var(ORACLE_CAP_ENV) else {
            return Ok(self);
        };
        let bad = || Error::InvalidArgument(format!("{ORACLE_CAP_ENV}={raw:?} is not understood"));
        if let Ok(n) = raw.trim().parse::<usize>() {
            self.brute_double = n;
            self.brute_liars = n;
            return Ok(self);
        }
        for part in raw.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            let value: u64 = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "double" => self.brute_double = value as usize,
                "liars" => self.brute_liars = value as usize,
                "nodes" => self.node_limit = value,
                _ => return Err(bad()),
            }
        }
        Ok(self)
    }

    fn brute_cap(&self, variant: Variant) -> usize {
        match variant {
            Variant::Liars => self.brute_liars,
            _ => self.brute_double,
        }
    }

    fn config(&self) -> SolverConfig {
        SolverConfig {
            brute_cap: usize::MAX,
            node_limit: Some(self.node_limit),
        }
    }

    fn solve(&self, g: &Graph, variant: Variant, mode: Mode) -> Result<Option<Solution>> {
        match solve_minimum_with(g, variant, mode, &self.config()) {
            Ok(s) => Ok(Some(s)),
            Err(Error::SearchLimit(_) | Error::InstanceTooLarge { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Exact optimum, or `None` when the oracle gave up on the instance.
    pub fn optimum(&self, g: &Graph, variant: Variant) -> Result<Option<Solution>> {
        let mode = if g.vertex_count() <= self.brute_cap(variant) {
            Mode::Brute
        } else {
            Mode::BranchAndBound
        };
        self.solve(g, variant, mode)
    }

    /// Runs the other solver on small instances and compares cardinalities.
    fn cross_check(&self, g: &Graph, variant: Variant, first: &Solution) -> Result<Option<bool>> {
        if g.vertex_count() > CROSS_CHECK_MAX_N {
            return Ok(None);
        }
        let mode = if g.vertex_count() <= self.brute_cap(variant) {
            Mode::BranchAndBound
        } else {
            Mode::Brute
        };
        Ok(self
            .solve(g, variant, mode)?
            .map(|s| s.cardinality() == first.cardinality()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum Status {
    Pass,
    Violation(Vec<String>),
    Skipped(String),
    Error(String),
}

impl Status {
    fn from_checks(violations: Vec<String>, skipped: Option<String>) -> Status {
        if !violations.is_empty() {
            Status::Violation(violations)
        } else if let Some(reason) = skipped {
            Status::Skipped(reason)
        } else {
            Status::Pass
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Violation(_) => "violation",
            Status::Skipped(_) => "skipped",
            Status::Error(_) => "error",
        }
    }

    fn detail(&self) -> String {
        match self {
            Status::Pass => String::new(),
            Status::Violation(v) => v.join("; "),
            Status::Skipped(s) | Status::Error(s) => s.clone(),
        }
    }
}

/// A region decomposition built from an optimal set and checked against
/// its regime.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionCheck {
    pub regime: Regime,
    pub dset: Vec<Vertex>,
    pub validation: Vec<String>,
    pub thin: bool,
    pub bounds: BoundsReport,
    pub regions: Vec<RegionSummary>,
}

impl RegionCheck {
    pub fn run(pg: &PlaneGraph, d: &VertexSet, regime: Regime) -> Result<RegionCheck> {
        let rd = region_decomposition(pg, d)?;
        Ok(RegionCheck {
            regime,
            dset: d.iter().copied().collect(),
            validation: validate_decomposition(pg, &rd),
            thin: thin_planar_check(&rd),
            bounds: check_region_bounds(&rd, regime),
            regions: rd.regions.iter().map(|r| r.summary()).collect(),
        })
    }

    pub fn passed(&self) -> bool {
        self.validation.is_empty() && self.bounds.passed()
    }

    fn problems(&self) -> Vec<String> {
        let tag = self.regime;
        self.validation
            .iter()
            .map(|v| format!("{tag}: {v}"))
            .chain(self.bounds.violations.iter().map(|v| format!("{tag}: {}", v.detail)))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        multigraph_dot(&self.dset.iter().copied().collect(), &self.regions)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelRecord {
    pub instance: String,
    pub spec: GeneratorSpec,
    pub n: usize,
    pub m: usize,
    pub kernel_n: usize,
    pub kernel_m: usize,
    pub steps: usize,
    pub reduced: bool,
    pub gamma2: Option<usize>,
    pub gamma2_kernel: Option<usize>,
    /// `γ₂(G) = γ₂(G′)`.
    pub safe: Option<bool>,
    /// `|V′| / γ₂(G′)`.
    pub ratio: Option<f64>,
    pub solvers_agree: Option<bool>,
    pub regions: Option<RegionCheck>,
    pub status: Status,
    pub wall_time: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionRecord {
    pub instance: String,
    pub spec: GeneratorSpec,
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub gamma2: Option<usize>,
    pub gamma_lr: Option<usize>,
    pub gamma3: Option<usize>,
    /// `γ₂ ≤ γ_LR ≤ γ₃`, over the values that exist.
    pub sandwich: Option<bool>,
    pub liars_ratio: Option<f64>,
    pub ktuple3_ratio: Option<f64>,
    pub solvers_agree: Option<bool>,
    pub liars: Option<RegionCheck>,
    pub ktuple3: Option<RegionCheck>,
    pub status: Status,
    pub wall_time: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GadgetRecord {
    pub instance: String,
    pub kind: GadgetKind,
    pub n: usize,
    pub m: usize,
    pub transformed_n: usize,
    pub shift: usize,
    pub gamma_in: Option<usize>,
    pub gamma_out: Option<usize>,
    pub holds: Option<bool>,
    pub failing_parameters: Vec<usize>,
    /// Planar-liars gadget on a plane input: the extended embedding is valid.
    pub planar: Option<bool>,
    pub status: Status,
    pub wall_time: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetCase {
    pub kind: GadgetKind,
    pub graph: GeneratorSpec,
}

/// Every labelled graph with `1..=max_n` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveCase {
    pub kind: GadgetKind,
    pub max_n: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusConfig {
    #[serde(default)]
    pub kernel: Vec<GeneratorSpec>,
    #[serde(default)]
    pub region: Vec<GeneratorSpec>,
    #[serde(default)]
    pub gadget: Vec<GadgetCase>,
    #[serde(default)]
    pub gadget_exhaustive: Vec<ExhaustiveCase>,
    #[serde(default)]
    pub caps: Option<OracleCaps>,
}

impl CorpusConfig {
    pub fn from_json(text: &str) -> Result<CorpusConfig> {
        Ok(serde_json::from_str(text)?)
    }
}

/// The built-in corpus.
///
/// * kernel: stacked triangulations on 4..=16 vertices (20 seeds each) and
///   reduction-trigger graphs on 5..=16 vertices (22 seeds each), plus
///   hubs, wheels, grids and 48 nonplanar random graphs;
/// * region: plane families on at most 14 vertices;
/// * gadget: k-tuple on random graphs with at most 7 vertices (200 seeds,
///   k = 1, 2, 3), liar's on every graph with at most 5 vertices, and the
///   planar variant on cycles and grids.
pub fn default_corpus() -> CorpusConfig {
    let mut kernel = Vec::new();
    for n in 4..=16 {
        kernel.extend((0..20).map(|seed| GeneratorSpec::Stacked { n, seed }));
    }
    for n in 5..=16 {
        kernel.extend((0..22).map(|seed| GeneratorSpec::ReductionTrigger { n, seed }));
    }
    kernel.extend((1..=14).map(|t| GeneratorSpec::Hubs { t }));
    kernel.extend((3..=15).map(|spokes| GeneratorSpec::Wheel { spokes }));
    kernel.extend([(2, 2), (2, 5), (3, 3), (3, 4), (4, 4)].map(|(rows, cols)| GeneratorSpec::Grid { rows, cols }));
    kernel.extend((0..48u64).map(|seed| GeneratorSpec::Random {
        n: 6 + (seed % 7) as usize,
        permille: 300 + 100 * (seed % 4) as u32,
        seed,
    }));

    let mut region = Vec::new();
    for n in 4..=14 {
        region.extend((0..8).map(|seed| GeneratorSpec::Stacked { n, seed: 1000 + seed }));
    }
    for n in 5..=14 {
        region.extend((0..8).map(|seed| GeneratorSpec::ReductionTrigger { n, seed: 1000 + seed }));
    }
    region.extend((3..=14).map(|n| GeneratorSpec::Cycle { n }));
    region.extend((3..=14).map(|n| GeneratorSpec::Path { n }));
    region.extend((3..=13).map(|spokes| GeneratorSpec::Wheel { spokes }));
    region.extend((1..=12).map(|t| GeneratorSpec::Hubs { t }));
    region.extend((1..=4).map(|n| GeneratorSpec::Complete { n }));
    region.extend(
        [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (3, 3), (3, 4)]
            .map(|(rows, cols)| GeneratorSpec::Grid { rows, cols }),
    );

    let mut gadget = Vec::new();
    for k in 1..=3 {
        for seed in 0..200u64 {
            let n = 1 + (seed % 7) as usize;
            let permille = 250 + 125 * (seed % 5) as u32;
            gadget.push(GadgetCase {
                kind: GadgetKind::KTuple(k),
                graph: GeneratorSpec::Random { n, permille, seed },
            });
        }
    }
    for n in 3..=6 {
        gadget.push(GadgetCase {
            kind: GadgetKind::PlanarLiars,
            graph: GeneratorSpec::Cycle { n },
        });
    }
    for (rows, cols) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        gadget.push(GadgetCase {
            kind: GadgetKind::PlanarLiars,
            graph: GeneratorSpec::Grid { rows, cols },
        });
    }

    CorpusConfig {
        kernel,
        region,
        gadget,
        gadget_exhaustive: vec![ExhaustiveCase {
            kind: GadgetKind::Liars,
            max_n: 5,
        }],
        caps: None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Kernel,
    Gadget,
    Region,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "kernel" => Ok(Suite::Kernel),
            "gadget" => Ok(Suite::Gadget),
            "region" => Ok(Suite::Region),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidArgument(format!("unknown suite {s:?}"))),
        }
    }
}

/// An instance that broke a claim, with enough text to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub suite: Suite,
    pub instance: String,
    pub reasons: Vec<String>,
    /// Embedding text for plane inputs, graph text otherwise.
    pub input: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    pub passed: usize,
    pub violations: usize,
    pub skipped: usize,
    pub errors: usize,
    pub safeness_checked: usize,
    pub max_kernel_ratio: Option<f64>,
    pub max_liars_ratio: Option<f64>,
    pub max_ktuple3_ratio: Option<f64>,
    pub max_region_vertices: Vec<(Regime, usize)>,
    pub gadget_cases: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub suite: Suite,
    pub caps: OracleCaps,
    pub summary: Summary,
    pub kernel: Vec<KernelRecord>,
    pub region: Vec<RegionRecord>,
    pub gadget: Vec<GadgetRecord>,
    pub counterexamples: Vec<Counterexample>,
    pub wall_time: f64,
}

impl ExperimentReport {
    fn statuses(&self) -> impl Iterator<Item = &Status> {
        self.kernel
            .iter()
            .map(|r| &r.status)
            .chain(self.region.iter().map(|r| &r.status))
            .chain(self.gadget.iter().map(|r| &r.status))
    }

    /// 0 when everything passed or was skipped, 2 on a bound violation,
    /// 3 when some instance hit an infrastructure error.
    pub fn exit_code(&self) -> i32 {
        if self.statuses().any(|s| matches!(s, Status::Error(_))) {
            3
        } else if self.statuses().any(|s| matches!(s, Status::Violation(_))) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// One row per record.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "instance", "n", "status", "gamma", "gamma_other", "detail"])
            .map_err(csv_err)?;
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.kernel {
            w.write_record([
                "kernel",
                &r.instance,
                &r.n.to_string(),
                r.status.name(),
                &opt(r.gamma2),
                &opt(r.gamma2_kernel),
                &r.status.detail(),
            ])
            .map_err(csv_err)?;
        }
        for r in &self.region {
            w.write_record([
                "region",
                &r.instance,
                &r.n.to_string(),
                r.status.name(),
                &opt(r.gamma_lr),
                &opt(r.gamma3),
                &r.status.detail(),
            ])
            .map_err(csv_err)?;
        }
        for r in &self.gadget {
            w.write_record([
                "gadget",
                &r.instance,
                &r.n.to_string(),
                r.status.name(),
                &opt(r.gamma_in),
                &opt(r.gamma_out),
                &r.status.detail(),
            ])
            .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }

    /// `(file stem, DOT text)` for every region decomposition in the report.
    pub fn dot_files(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for r in &self.kernel {
            if let Some(c) = &r.regions {
                out.push((format!("kernel-{}-{}", r.instance, c.regime), c.to_dot()));
            }
        }
        for r in &self.region {
            for c in r.liars.iter().chain(&r.ktuple3) {
                out.push((format!("region-{}-{}", r.instance, c.regime), c.to_dot()));
            }
        }
        out
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Internal(format!("csv: {e}"))
}

/// Removes every `wall_time` field, recursively.
pub fn strip_timing(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            map.remove("wall_time");
            map.values_mut().for_each(strip_timing);
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn ratio(n: usize, gamma: Option<usize>) -> Option<f64> {
    gamma.filter(|&g| g > 0).map(|g| n as f64 / g as f64)
}

fn skip_reason(what: &str, n: usize) -> String {
    format!("oracle gave up on {what} (n = {n})")
}

pub fn run_kernel_instance(spec: &GeneratorSpec, caps: &OracleCaps) -> Result<KernelRecord> {
    let start = Instant::now();
    let inst = generate(spec)?;
    let g = inst.graph();
    let (kernel, trace) = kernelize_double_domination(g)?;
    let mut violations = Vec::new();
    let mut skipped = None;
    let reduced = is_reduced(&kernel);
    if !reduced {
        violations.push("kernel is not reduced".to_string());
    }
    let double = Variant::KTuple(2);
    let before = caps.optimum(g, double)?;
    let after = caps.optimum(&kernel, double)?;
    if before.is_none() || after.is_none() {
        skipped = Some(skip_reason("γ₂", g.vertex_count()));
    }
    let gamma2 = before.as_ref().and_then(Solution::cardinality);
    let gamma2_kernel = after.as_ref().and_then(Solution::cardinality);
    let safe = (before.is_some() && after.is_some()).then_some(gamma2 == gamma2_kernel);
    if safe == Some(false) {
        violations.push(format!("γ₂ changed from {gamma2:?} to {gamma2_kernel:?}"));
    }
    let kernel_n = kernel.vertex_count();
    let ratio = ratio(kernel_n, gamma2_kernel);
    if let Some(gk) = gamma2_kernel {
        if kernel_n > 18 * gk {
            violations.push(format!("|V'| = {kernel_n} exceeds 18·γ₂(G') = {}", 18 * gk));
        }
    }
    let solvers_agree = match &before {
        Some(s) => caps.cross_check(g, double, s)?,
        None => None,
    };
    if solvers_agree == Some(false) {
        violations.push("brute force and branch-and-bound disagree on γ₂".into());
    }
    let regions = match (inst.plane(), after.as_ref().and_then(|s| s.certificate.as_ref())) {
        (Some(pg), Some(cert)) => {
            let kpg = pg.restrict_embedding(&trace.deleted())?;
            let check = RegionCheck::run(&kpg, &cert.set, Regime::ReducedDouble)?;
            violations.extend(check.problems());
            Some(check)
        }
        _ => None,
    };
    Ok(KernelRecord {
        instance: spec.label(),
        spec: spec.clone(),
        n: g.vertex_count(),
        m: g.edge_count(),
        kernel_n,
        kernel_m: kernel.edge_count(),
        steps: trace.steps.len(),
        reduced,
        gamma2,
        gamma2_kernel,
        safe,
        ratio,
        solvers_agree,
        regions,
        status: Status::from_checks(violations, skipped),
        wall_time: start.elapsed().as_secs_f64(),
    })
}

pub fn run_region_instance(spec: &GeneratorSpec, caps: &OracleCaps) -> Result<RegionRecord> {
    let start = Instant::now();
    let inst = generate(spec)?;
    let pg = inst
        .plane()
        .ok_or_else(|| Error::InvalidInput(format!("{} has no embedding", spec.label())))?;
    let g = pg.graph();
    let n = g.vertex_count();
    let min_degree = g.minimum_degree()?;
    let mut violations = Vec::new();
    let mut gave_up = Vec::new();
    let mut agree = Vec::new();
    let mut gammas = Vec::new();
    let mut checks = Vec::new();
    for (variant, regime) in [
        (Variant::KTuple(2), None),
        (Variant::Liars, Some(Regime::Liars)),
        (Variant::KTuple(3), (min_degree >= 2).then_some(Regime::Ktuple3)),
    ] {
        let sol = caps.optimum(g, variant)?;
        let Some(sol) = sol else {
            gave_up.push(variant.to_string());
            gammas.push(None);
            checks.push(None);
            continue;
        };
        if let Some(ok) = caps.cross_check(g, variant, &sol)? {
            agree.push(ok);
            if !ok {
                violations.push(format!("brute force and branch-and-bound disagree on {variant}"));
            }
        }
        gammas.push(Some(sol.cardinality()));
        let check = match (regime, &sol.certificate) {
            (Some(regime), Some(cert)) => {
                let c = RegionCheck::run(pg, &cert.set, regime)?;
                violations.extend(c.problems());
                Some(c)
            }
            _ => None,
        };
        checks.push(check);
    }
    let flat = |i: usize| gammas[i].flatten();
    let (gamma2, gamma_lr, gamma3) = (flat(0), flat(1), flat(2));
    // Infeasible counts as +∞, so the chain is checked on the solved values.
    let sandwich = gammas.iter().all(Option::is_some).then(|| {
        let key = |x: Option<usize>| x.unwrap_or(usize::MAX);
        key(gamma2) <= key(gamma_lr) && key(gamma_lr) <= key(gamma3)
    });
    if sandwich == Some(false) {
        violations.push(format!("γ₂ ≤ γ_LR ≤ γ₃ fails: {gamma2:?}, {gamma_lr:?}, {gamma3:?}"));
    }
    let ktuple3 = checks.pop().flatten();
    let liars = checks.pop().flatten();
    let skipped = (!gave_up.is_empty()).then(|| skip_reason(&gave_up.join(", "), n));
    Ok(RegionRecord {
        instance: spec.label(),
        spec: spec.clone(),
        n,
        m: g.edge_count(),
        min_degree,
        gamma2,
        gamma_lr,
        gamma3,
        sandwich,
        liars_ratio: ratio(n, gamma_lr),
        ktuple3_ratio: if min_degree >= 2 { ratio(n, gamma3) } else { None },
        solvers_agree: (!agree.is_empty()).then(|| agree.iter().all(|&a| a)),
        liars,
        ktuple3,
        status: Status::from_checks(violations, skipped),
        wall_time: start.elapsed().as_secs_f64(),
    })
}

fn build_gadget(kind: GadgetKind, g: &Graph) -> Result<GadgetInstance> {
    let p = g.vertex_count() / 2;
    match kind {
        GadgetKind::KTuple(k) => build_ktuple_gadget(g, p, k),
        GadgetKind::Liars => build_liars_gadget(g, p),
        GadgetKind::PlanarLiars => build_planar_liars_gadget(g, p),
    }
}

pub fn run_gadget_instance(name: String, kind: GadgetKind, inst: &Instance, caps: &OracleCaps) -> Result<GadgetRecord> {
    let start = Instant::now();
    let g = inst.graph();
    let gadget = build_gadget(kind, g)?;
    let planar = match (kind, inst.plane()) {
        (GadgetKind::PlanarLiars, Some(pg)) => {
            let (_, ext) = build_planar_liars_gadget_embedded(pg, gadget.parameter_in)?;
            Some(ext.euler_holds())
        }
        _ => None,
    };
    let cfg = SolverConfig {
        brute_cap: caps.brute_cap(kind.target()),
        node_limit: Some(caps.node_limit),
    };
    let mut violations = Vec::new();
    let mut skipped = None;
    let (gamma_in, gamma_out, holds, failing) = match verify_equivalence(&gadget, &cfg) {
        Ok(rep) => {
            if !rep.holds() {
                violations.push(format!(
                    "iff fails at p = {:?} (γ = {:?}, γ' = {:?})",
                    rep.failing_parameters, rep.gamma_in, rep.gamma_out
                ));
            }
            (rep.gamma_in, rep.gamma_out, Some(rep.holds()), rep.failing_parameters)
        }
        Err(Error::SearchLimit(_) | Error::InstanceTooLarge { .. }) => {
            skipped = Some(skip_reason("the gadget", gadget.transformed.vertex_count()));
            (None, None, None, Vec::new())
        }
        Err(e) => return Err(e),
    };
    if planar == Some(false) {
        violations.push("extended embedding is not planar".into());
    }
    Ok(GadgetRecord {
        instance: name,
        kind,
        n: g.vertex_count(),
        m: g.edge_count(),
        transformed_n: gadget.transformed.vertex_count(),
        shift: gadget.shift(),
        gamma_in,
        gamma_out,
        holds,
        failing_parameters: failing,
        planar,
        status: Status::from_checks(violations, skipped),
        wall_time: start.elapsed().as_secs_f64(),
    })
}

fn error_status(e: Error) -> Status {
    Status::Error(e.to_string())
}

fn kernel_suite(specs: &[GeneratorSpec], caps: &OracleCaps) -> Vec<KernelRecord> {
    specs
        .par_iter()
        .map(|spec| {
            run_kernel_instance(spec, caps).unwrap_or_else(|e| KernelRecord {
                instance: spec.label(),
                spec: spec.clone(),
                n: 0,
                m: 0,
                kernel_n: 0,
                kernel_m: 0,
                steps: 0,
                reduced: false,
                gamma2: None,
                gamma2_kernel: None,
                safe: None,
                ratio: None,
                solvers_agree: None,
                regions: None,
                status: error_status(e),
                wall_time: 0.0,
            })
        })
        .collect()
}

fn region_suite(specs: &[GeneratorSpec], caps: &OracleCaps) -> Vec<RegionRecord> {
    specs
        .par_iter()
        .map(|spec| {
            run_region_instance(spec, caps).unwrap_or_else(|e| RegionRecord {
                instance: spec.label(),
                spec: spec.clone(),
                n: 0,
                m: 0,
                min_degree: 0,
                gamma2: None,
                gamma_lr: None,
                gamma3: None,
                sandwich: None,
                liars_ratio: None,
                ktuple3_ratio: None,
                solvers_agree: None,
                liars: None,
                ktuple3: None,
                status: error_status(e),
                wall_time: 0.0,
            })
        })
        .collect()
}

fn gadget_suite(corpus: &CorpusConfig, caps: &OracleCaps) -> Vec<GadgetRecord> {
    let mut jobs: Vec<(String, GadgetKind, Result<Instance>)> = Vec::new();
    for case in &corpus.gadget {
        jobs.push((case.graph.label(), case.kind, generate(&case.graph)));
    }
    for case in &corpus.gadget_exhaustive {
        for n in 1..=case.max_n {
            for (i, g) in all_labelled_graphs(n).enumerate() {
                jobs.push((format!("all-{n}-#{i}"), case.kind, Ok(Instance::Abstract(g))));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(name, kind, inst)| {
            let res = inst.and_then(|inst| run_gadget_instance(name.clone(), kind, &inst, caps));
            res.unwrap_or_else(|e| GadgetRecord {
                instance: name,
                kind,
                n: 0,
                m: 0,
                transformed_n: 0,
                shift: 0,
                gamma_in: None,
                gamma_out: None,
                holds: None,
                failing_parameters: Vec::new(),
                planar: None,
                status: error_status(e),
                wall_time: 0.0,
            })
        })
        .collect()
}

fn reproduction_text(spec: &GeneratorSpec) -> String {
    match generate(spec) {
        Ok(Instance::Plane(pg)) => write_embedding(&pg),
        Ok(Instance::Abstract(g)) => write_graph(&g),
        Err(e) => format!("c could not regenerate: {e}\n"),
    }
}

fn max_f64(values: impl Iterator<Item = f64>) -> Option<f64> {
    values.fold(None, |acc, x| Some(acc.map_or(x, |a: f64| a.max(x))))
}

fn summarize(report: &mut ExperimentReport) {
    let mut s = Summary::default();
    for status in report.statuses() {
        s.records += 1;
        match status {
            Status::Pass => s.passed += 1,
            Status::Violation(_) => s.violations += 1,
            Status::Skipped(_) => s.skipped += 1,
            Status::Error(_) => s.errors += 1,
        }
    }
    s.safeness_checked = report.kernel.iter().filter(|r| r.safe.is_some()).count();
    s.max_kernel_ratio = max_f64(report.kernel.iter().filter_map(|r| r.ratio));
    s.max_liars_ratio = max_f64(report.region.iter().filter_map(|r| r.liars_ratio));
    s.max_ktuple3_ratio = max_f64(report.region.iter().filter_map(|r| r.ktuple3_ratio));
    let checks = report
        .kernel
        .iter()
        .filter_map(|r| r.regions.as_ref())
        .chain(report.region.iter().flat_map(|r| r.liars.iter().chain(&r.ktuple3)));
    for c in checks {
        let m = c.bounds.max_region_vertices;
        match s.max_region_vertices.iter_mut().find(|(r, _)| *r == c.regime) {
            Some((_, best)) => *best = (*best).max(m),
            None => s.max_region_vertices.push((c.regime, m)),
        }
    }
    s.max_region_vertices.sort_by_key(|(r, _)| r.to_string());
    s.gadget_cases = report.gadget.len();
    report.summary = s;
}

pub fn run_suite(suite: Suite, corpus: &CorpusConfig, caps: &OracleCaps) -> ExperimentReport {
    let start = Instant::now();
    let want = |s: Suite| suite == Suite::All || suite == s;
    let kernel = if want(Suite::Kernel) {
        kernel_suite(&corpus.kernel, caps)
    } else {
        Vec::new()
    };
    let region = if want(Suite::Region) {
        region_suite(&corpus.region, caps)
    } else {
        Vec::new()
    };
    let gadget = if want(Suite::Gadget) {
        gadget_suite(corpus, caps)
    } else {
        Vec::new()
    };
    let mut counterexamples = Vec::new();
    for r in &kernel {
        if let Status::Violation(reasons) = &r.status {
            counterexamples.push(Counterexample {
                suite: Suite::Kernel,
                instance: r.instance.clone(),
                reasons: reasons.clone(),
                input: reproduction_text(&r.spec),
            });
        }
    }
    for r in &region {
        if let Status::Violation(reasons) = &r.status {
            counterexamples.push(Counterexample {
                suite: Suite::Region,
                instance: r.instance.clone(),
                reasons: reasons.clone(),
                input: reproduction_text(&r.spec),
            });
        }
    }
    for r in &gadget {
        if let Status::Violation(reasons) = &r.status {
            counterexamples.push(Counterexample {
                suite: Suite::Gadget,
                instance: r.instance.clone(),
                reasons: reasons.clone(),
                input: String::new(),
            });
        }
    }
    let mut report = ExperimentReport {
        suite,
        caps: caps.clone(),
        summary: Summary::default(),
        kernel,
        region,
        gadget,
        counterexamples,
        wall_time: 0.0,
    };
    summarize(&mut report);
    report.wall_time = start.elapsed().as_secs_f64();
    report
}
