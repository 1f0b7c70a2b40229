//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines are always
//! printed. A criterion listed in `EXPECTED_FAILURES` must fail, with the
//! reason given there; any other outcome makes the target exit nonzero.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};

use domkernel_core::domination::{solve_minimum, Mode, Variant};
use domkernel_core::gadgets::GadgetKind;
use domkernel_core::generators::{generate, GeneratorSpec};
use domkernel_core::harness::{default_corpus, run_suite, strip_timing, ExperimentReport, OracleCaps, Status, Suite};
use domkernel_core::regions::Regime;

/// Criteria known to fail, with the reason.
const EXPECTED_FAILURES: &[(u32, &str)] = &[(
    1,
    "the reduction rule fires on a nonadjacent pair u,v with N1 = N2 = {} and |N3| >= 2 \
     (K5 minus an edge): the kernel is a P3 with gamma2 = 3 while the input has gamma2 = 2",
)];

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn fmt_ratio(r: Option<f64>) -> String {
    r.map(|x| format!("{x:.3}")).unwrap_or_else(|| "n/a".into())
}

fn max_ratio(values: impl Iterator<Item = f64>) -> Option<f64> {
    values.fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.max(x))))
}

fn is_planar_family(spec: &GeneratorSpec) -> bool {
    !matches!(spec, GeneratorSpec::Random { .. } | GeneratorSpec::Complete { n: 5.. })
}

fn safeness(r: &ExperimentReport) -> Outcome {
    let recs: Vec<_> = r
        .kernel
        .iter()
        .filter(|k| {
            matches!(
                k.spec,
                GeneratorSpec::Stacked { .. } | GeneratorSpec::ReductionTrigger { .. }
            )
        })
        .filter(|k| k.n <= 16)
        .collect();
    let exact = recs.iter().filter(|k| k.safe.is_some()).count();
    let unsafe_: Vec<&str> = recs
        .iter()
        .filter(|k| k.safe == Some(false))
        .map(|k| k.instance.as_str())
        .collect();
    Outcome {
        id: 1,
        name: "safeness γ₂(G) = γ₂(kernel)",
        pass: exact >= 500 && exact == recs.len() && unsafe_.is_empty(),
        detail: format!(
            "{exact}/{} instances solved exactly, {} changed γ₂ {:?}",
            recs.len(),
            unsafe_.len(),
            unsafe_
        ),
    }
}

fn kernel_bound(r: &ExperimentReport) -> Outcome {
    let recs: Vec<_> = r
        .kernel
        .iter()
        .filter(|k| is_planar_family(&k.spec) && k.gamma2_kernel.is_some())
        .collect();
    let bad = recs
        .iter()
        .filter(|k| k.kernel_n > 18 * k.gamma2_kernel.unwrap())
        .count();
    let reduced = recs.iter().all(|k| k.reduced);
    Outcome {
        id: 2,
        name: "|V'| ≤ 18·γ₂(G') on reduced planar graphs",
        pass: !recs.is_empty() && bad == 0 && reduced,
        detail: format!(
            "{} kernels, {bad} over the bound, max ratio {}",
            recs.len(),
            fmt_ratio(max_ratio(recs.iter().filter_map(|k| k.ratio)))
        ),
    }
}

fn liars_bound(r: &ExperimentReport) -> Outcome {
    let recs: Vec<_> = r.region.iter().filter(|x| x.n <= 14 && x.gamma_lr.is_some()).collect();
    let bad = recs.iter().filter(|x| x.n > 15 * x.gamma_lr.unwrap()).count();
    Outcome {
        id: 3,
        name: "|V| ≤ 15·γ_LR (n ≤ 14)",
        pass: !recs.is_empty() && bad == 0,
        detail: format!(
            "{} instances, {bad} over the bound, max ratio {}",
            recs.len(),
            fmt_ratio(max_ratio(recs.iter().filter_map(|x| x.liars_ratio)))
        ),
    }
}

fn ktuple3_bound(r: &ExperimentReport) -> Outcome {
    let recs: Vec<_> = r
        .region
        .iter()
        .filter(|x| x.n <= 14 && x.min_degree >= 2 && x.gamma3.is_some())
        .collect();
    let bad = recs.iter().filter(|x| x.n > 12 * x.gamma3.unwrap()).count();
    Outcome {
        id: 4,
        name: "|V| ≤ 12·γ₃ (δ ≥ 2, n ≤ 14)",
        pass: !recs.is_empty() && bad == 0,
        detail: format!(
            "{} instances, {bad} over the bound, max ratio {}",
            recs.len(),
            fmt_ratio(max_ratio(recs.iter().filter_map(|x| x.ktuple3_ratio)))
        ),
    }
}

fn region_lemmas(r: &ExperimentReport) -> Outcome {
    let checks: Vec<_> = r
        .kernel
        .iter()
        .filter_map(|k| k.regions.as_ref())
        .chain(r.region.iter().flat_map(|x| x.liars.iter().chain(&x.ktuple3)))
        .collect();
    let mut problems = Vec::new();
    let mut max_size = [(Regime::ReducedDouble, 0), (Regime::Liars, 0), (Regime::Ktuple3, 0)];
    for c in &checks {
        problems.extend(c.validation.iter().cloned());
        if c.bounds.region_count > 3 * c.dset.len() {
            problems.push(format!("{} regions for |D| = {}", c.bounds.region_count, c.dset.len()));
        }
        if c.bounds.max_region_vertices > c.regime.region_cap() {
            problems.push(format!(
                "{} region with {} vertices",
                c.regime, c.bounds.max_region_vertices
            ));
        }
        let slot = max_size.iter_mut().find(|(g, _)| *g == c.regime).unwrap();
        slot.1 = slot.1.max(c.bounds.max_region_vertices);
    }
    let per_regime: BTreeSet<Regime> = checks.iter().map(|c| c.regime).collect();
    Outcome {
        id: 5,
        name: "region lemmas: cover, ≤ 3|D| regions, caps 6/5/4",
        pass: per_regime.len() == 3 && problems.is_empty(),
        detail: format!(
            "{} decompositions, largest regions {}, {} problems{}",
            checks.len(),
            max_size
                .iter()
                .map(|(g, m)| format!("{g}={m}"))
                .collect::<Vec<_>>()
                .join(" "),
            problems.len(),
            problems.first().map(|p| format!(" (first: {p})")).unwrap_or_default()
        ),
    }
}

fn gadgets(r: &ExperimentReport) -> Outcome {
    let liars_all = r
        .gadget
        .iter()
        .filter(|g| g.kind == GadgetKind::Liars && g.instance.starts_with("all-"));
    let liars_count = liars_all.clone().count();
    let expected_liars: usize = (1..=5u32).map(|n| 1usize << (n * (n - 1) / 2)).sum();
    let ktuple: Vec<_> = r
        .gadget
        .iter()
        .filter(|g| matches!(g.kind, GadgetKind::KTuple(_)))
        .collect();
    let ks: BTreeSet<usize> = ktuple
        .iter()
        .map(|g| match g.kind {
            GadgetKind::KTuple(k) => k,
            _ => unreachable!(),
        })
        .collect();
    let planar: Vec<_> = r.gadget.iter().filter(|g| g.kind == GadgetKind::PlanarLiars).collect();
    let families_ok = planar.iter().any(|g| g.instance.starts_with("cycle"))
        && planar.iter().any(|g| g.instance.starts_with("grid"))
        && planar.iter().all(|g| g.planar == Some(true));
    let failing: Vec<&str> = r
        .gadget
        .iter()
        .filter(|g| g.holds != Some(true))
        .map(|g| g.instance.as_str())
        .collect();
    Outcome {
        id: 6,
        name: "gadget iff-checks",
        pass: liars_count == expected_liars
            && ktuple.len() >= 600
            && ks == BTreeSet::from([1, 2, 3])
            && ktuple.iter().all(|g| g.n <= 7)
            && families_ok
            && failing.is_empty(),
        detail: format!(
            "liars on {liars_count} graphs (n ≤ 5), k-tuple on {} random graphs (k ∈ {ks:?}), planar-liars on {} cycles/grids, {} failures",
            ktuple.len(),
            planar.len(),
            failing.len()
        ),
    }
}

fn sandwich(r: &ExperimentReport) -> Outcome {
    let solved = r.region.iter().filter(|x| x.sandwich.is_some()).count();
    let bad: Vec<&str> = r
        .region
        .iter()
        .filter(|x| x.sandwich == Some(false))
        .map(|x| x.instance.as_str())
        .collect();
    Outcome {
        id: 7,
        name: "γ₂ ≤ γ_LR ≤ γ₃",
        pass: solved == r.region.len() && bad.is_empty(),
        detail: format!("{solved}/{} instances solved, {} violations", r.region.len(), bad.len()),
    }
}

/// Brute force and branch-and-bound on every corpus graph with at most 12
/// vertices, for every variant.
fn solver_agreement(r: &ExperimentReport) -> Outcome {
    let corpus = default_corpus();
    let specs = corpus
        .kernel
        .iter()
        .chain(&corpus.region)
        .chain(corpus.gadget.iter().map(|g| &g.graph));
    let variants = [
        Variant::Dominating,
        Variant::KTuple(1),
        Variant::KTuple(2),
        Variant::KTuple(3),
        Variant::Liars,
    ];
    let mut compared = 0;
    let mut bad = Vec::new();
    for spec in specs {
        let inst = generate(spec).expect("corpus specs generate");
        let g = inst.graph();
        if g.vertex_count() > 12 {
            continue;
        }
        for v in variants {
            let a = solve_minimum(g, v, Mode::Brute).unwrap().cardinality();
            let b = solve_minimum(g, v, Mode::BranchAndBound).unwrap().cardinality();
            compared += 1;
            if a != b {
                bad.push(format!("{} {v}: {a:?} vs {b:?}", spec.label()));
            }
        }
    }
    let harness_bad = r
        .kernel
        .iter()
        .map(|k| k.solvers_agree)
        .chain(r.region.iter().map(|x| x.solvers_agree))
        .filter(|a| *a == Some(false))
        .count();
    Outcome {
        id: 8,
        name: "brute force = branch-and-bound (n ≤ 12)",
        pass: compared > 0 && bad.is_empty() && harness_bad == 0,
        detail: format!("{compared} solves compared, {} disagreements", bad.len() + harness_bad),
    }
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let bin = env!("CARGO_BIN_EXE_domkernel");
    let mut texts = Vec::new();
    let mut codes = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("report{i}.json"));
        let status = Command::new(bin)
            .args(["bench", "--suite", "all", "--out"])
            .arg(&out)
            .status()
            .expect("bench runs");
        codes.push(status.code());
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        strip_timing(&mut v);
        texts.push(serde_json::to_string_pretty(&v).unwrap());
    }
    let same = texts[0] == texts[1] && codes[0] == codes[1];
    Outcome {
        id: 9,
        name: "bench reports identical apart from timing",
        pass: same && codes[0].is_some_and(|c| c != 3),
        detail: format!("{} bytes each, exit codes {:?}", texts[0].len(), codes),
    }
}

fn main() -> ExitCode {
    let caps = OracleCaps::default().with_env_override().expect("oracle caps");
    let report = run_suite(Suite::All, &default_corpus(), &caps);
    let errors: Vec<_> = report
        .kernel
        .iter()
        .map(|k| (&k.instance, &k.status))
        .chain(report.region.iter().map(|x| (&x.instance, &x.status)))
        .chain(report.gadget.iter().map(|g| (&g.instance, &g.status)))
        .filter(|(_, s)| matches!(s, Status::Error(_)))
        .collect();
    let outcomes = [
        safeness(&report),
        kernel_bound(&report),
        liars_bound(&report),
        ktuple3_bound(&report),
        region_lemmas(&report),
        gadgets(&report),
        sandwich(&report),
        solver_agreement(&report),
        determinism(),
    ];
    let mut unexpected = Vec::new();
    for o in &outcomes {
        let expected_fail = EXPECTED_FAILURES.iter().find(|(id, _)| *id == o.id);
        println!(
            "{} criterion {} ({}): {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.detail
        );
        match (o.pass, expected_fail) {
            (false, Some((_, why))) => println!("     expected failure: {why}"),
            (true, Some(_)) => unexpected.push(format!("criterion {} passed but is listed as failing", o.id)),
            (false, None) => unexpected.push(format!("criterion {} failed", o.id)),
            (true, None) => {}
        }
    }
    if !errors.is_empty() {
        unexpected.push(format!(
            "{} records hit infrastructure errors, first {:?}",
            errors.len(),
            errors[0]
        ));
    }
    if unexpected.is_empty() {
        println!("acceptance: outcomes match expectations");
        ExitCode::SUCCESS
    } else {
        for u in &unexpected {
            println!("acceptance: {u}");
        }
        ExitCode::FAILURE
    }
}
