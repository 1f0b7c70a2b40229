use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use domkernel_core::domination::{solve_minimum_with, Mode, SolverConfig, Variant};
use domkernel_core::format::{parse_embedding, parse_graph, write_embedding, write_graph};
use domkernel_core::gadgets::{
    build_ktuple_gadget, build_liars_gadget, build_planar_liars_gadget, build_planar_liars_gadget_embedded,
    verify_equivalence, GadgetKind,
};
use domkernel_core::generators::{generate, GeneratorSpec, Instance};
use domkernel_core::harness::{default_corpus, run_suite, CorpusConfig, Suite};
use domkernel_core::kernelize::kernelize_double_domination;
use domkernel_core::regions::{check_region_bounds, region_decomposition, validate_decomposition, Regime};
use domkernel_core::VertexSet;

#[derive(Parser)]
#[command(
    name = "domkernel",
    version,
    about = "Kernels, region decompositions and gadgets for domination problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact minimum set for a domination variant.
    Solve {
        /// dom, ktuple:K or liars
        #[arg(long)]
        variant: Variant,
        /// brute or bnb
        #[arg(long, default_value = "bnb")]
        mode: Mode,
        /// Abort after this many search nodes.
        #[arg(long)]
        node_limit: Option<u64>,
        graph: PathBuf,
    },
    /// Apply the double domination reduction rule to a fixpoint.
    Kernelize {
        graph: PathBuf,
        /// Write the list of applied steps as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Region decomposition of an embedded graph.
    Regions {
        embedding: PathBuf,
        /// Comma-separated vertex ids, or `auto` for an optimal set.
        #[arg(long)]
        dset: String,
        /// double, liars or ktuple3
        #[arg(long, default_value = "double")]
        regime: Regime,
        /// Print the induced multigraph as DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Build a hardness gadget.
    Gadget {
        /// ktuple:K, liars or planar-liars
        #[arg(long)]
        kind: GadgetKind,
        /// Parameter of the dominating set instance.
        #[arg(long)]
        param: usize,
        graph: PathBuf,
        /// Check the equivalence with the exact solvers when the transformed
        /// graph has at most this many vertices.
        #[arg(long)]
        verify: Option<usize>,
    },
    /// Generate an instance.
    Gen {
        #[arg(long)]
        family: String,
        /// N, or RxC for grids.
        #[arg(long)]
        size: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Run an experiment suite and write a JSON report.
    Bench {
        /// kernel, gadget, region or all
        #[arg(long)]
        suite: Suite,
        /// Corpus description; the built-in corpus when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Also write a CSV next to the report.
        #[arg(long)]
        csv: bool,
        /// Write one DOT file per region decomposition into this directory.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn has_rotations(text: &str) -> bool {
    text.lines().any(|l| l.trim_start().starts_with("r "))
}

fn solve(variant: Variant, mode: Mode, node_limit: Option<u64>, path: &Path) -> Result<()> {
    let g = parse_graph(&read(path)?)?;
    let cfg = SolverConfig {
        node_limit,
        ..SolverConfig::default()
    };
    let start = Instant::now();
    let sol = solve_minimum_with(&g, variant, mode, &cfg)?;
    let set: Vec<usize> = sol
        .certificate
        .as_ref()
        .map(|c| c.set.iter().copied().collect())
        .unwrap_or_default();
    let out = json!({
        "variant": variant.to_string(),
        "cardinality": sol.cardinality(),
        "set": set,
        "feasible": sol.feasible(),
        "nodes_explored": sol.nodes_explored,
        "wall_time": start.elapsed().as_secs_f64(),
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn kernelize(path: &Path, trace: Option<&Path>) -> Result<()> {
    let g = parse_graph(&read(path)?)?;
    let (kernel, t) = kernelize_double_domination(&g)?;
    if let Some(out) = trace {
        fs::write(out, serde_json::to_string_pretty(&t)? + "\n")
            .with_context(|| format!("writing {}", out.display()))?;
    }
    print!("{}", write_graph(&kernel));
    Ok(())
}

fn parse_ids(s: &str) -> Result<VertexSet> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .with_context(|| format!("bad vertex id {t:?}"))
        })
        .collect()
}

fn regions(path: &Path, dset: &str, regime: Regime, dot: bool) -> Result<()> {
    let pg = parse_embedding(&read(path)?)?;
    let d = if dset == "auto" {
        let sol = solve_minimum_with(
            pg.graph(),
            regime.variant(),
            Mode::BranchAndBound,
            &SolverConfig::default(),
        )?;
        match sol.certificate {
            Some(c) => c.set,
            None => bail!("the graph has no {} set", regime.variant()),
        }
    } else {
        parse_ids(dset)?
    };
    let rd = region_decomposition(&pg, &d)?;
    if dot {
        print!("{}", rd.to_dot());
        return Ok(());
    }
    let regions: Vec<_> = rd.regions.iter().map(|r| r.summary()).collect();
    let out = json!({
        "dset": d,
        "regions": regions,
        "counts": {
            "regions": rd.regions.len(),
            "dset": d.len(),
            "vertices": rd.vertex_count,
            "covered": rd.covered().len(),
            "max_region_vertices": rd.max_region_size(),
        },
        "validation": validate_decomposition(&pg, &rd),
        "bounds_report": check_region_bounds(&rd, regime),
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn gadget(kind: GadgetKind, param: usize, path: &Path, verify: Option<usize>) -> Result<()> {
    let text = read(path)?;
    let (inst, text_out) = match kind {
        GadgetKind::PlanarLiars if has_rotations(&text) => {
            let pg = parse_embedding(&text)?;
            let (inst, ext) = build_planar_liars_gadget_embedded(&pg, param)?;
            (inst, write_embedding(&ext))
        }
        _ => {
            let g = parse_graph(&text)?;
            let inst = match kind {
                GadgetKind::KTuple(k) => build_ktuple_gadget(&g, param, k)?,
                GadgetKind::Liars => build_liars_gadget(&g, param)?,
                GadgetKind::PlanarLiars => build_planar_liars_gadget(&g, param)?,
            };
            let out = write_graph(&inst.transformed);
            (inst, out)
        }
    };
    let mut meta = serde_json::to_value(inst.metadata())?;
    if let Some(limit) = verify {
        let check = if inst.transformed.vertex_count() <= limit {
            serde_json::to_value(verify_equivalence(&inst, &SolverConfig::default())?)?
        } else {
            json!(format!(
                "skipped: {} vertices exceed {limit}",
                inst.transformed.vertex_count()
            ))
        };
        meta["verification"] = check;
    }
    print!("{text_out}");
    println!("c {}", serde_json::to_string(&meta)?);
    Ok(())
}

fn gen(family: &str, size: &str, seed: u64, output: &Path) -> Result<()> {
    let spec = GeneratorSpec::from_args(family, size, seed)?;
    let text = match generate(&spec)? {
        Instance::Plane(pg) => write_embedding(&pg),
        Instance::Abstract(g) => write_graph(&g),
    };
    fs::write(output, format!("c {}\n{text}", spec.label()))
        .with_context(|| format!("writing {}", output.display()))?;
    Ok(())
}

fn bench(suite: Suite, corpus: Option<&Path>, out: &Path, csv: bool, dot: Option<&Path>) -> Result<i32> {
    let corpus = match corpus {
        Some(p) => CorpusConfig::from_json(&read(p)?)?,
        None => default_corpus(),
    };
    let caps = corpus.caps.clone().unwrap_or_default().with_env_override()?;
    let report = run_suite(suite, &corpus, &caps);
    fs::write(out, report.to_json()?).with_context(|| format!("writing {}", out.display()))?;
    if csv {
        let path = out.with_extension("csv");
        fs::write(&path, report.to_csv()?).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(dir) = dot {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (stem, text) in report.dot_files() {
            let path = dir.join(format!("{stem}.dot"));
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    let s = &report.summary;
    eprintln!(
        "{} records: {} passed, {} violations, {} skipped, {} errors",
        s.records, s.passed, s.violations, s.skipped, s.errors
    );
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve {
            variant,
            mode,
            node_limit,
            graph,
        } => solve(variant, mode, node_limit, &graph).map(|_| 0),
        Command::Kernelize { graph, trace } => kernelize(&graph, trace.as_deref()).map(|_| 0),
        Command::Regions {
            embedding,
            dset,
            regime,
            dot,
        } => regions(&embedding, &dset, regime, dot).map(|_| 0),
        Command::Gadget {
            kind,
            param,
            graph,
            verify,
        } => gadget(kind, param, &graph, verify).map(|_| 0),
        Command::Gen {
            family,
            size,
            seed,
            output,
        } => gen(&family, &size, seed, &output).map(|_| 0),
        Command::Bench {
            suite,
            corpus,
            out,
            csv,
            dot,
        } => bench(suite, corpus.as_deref(), &out, csv, dot.as_deref()).or_else(|e| {
            eprintln!("error: {e:#}");
            Ok(3)
        }),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
