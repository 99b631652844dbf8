//! `meden`: guard counts, exact game values, decompositions and live defender
//! strategies for cactus graphs.
//!
//! Exit codes: 0 when everything checked holds, 1 when a check found a
//! violation, 2 on bad input.

mod input;

use std::fs;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use meden_core::generate::{enumerate_christmas, generate, GeneratorSpec};
use meden_core::oracle::{domination_number, exact_number, solve_safety, OracleLimits};
use meden_core::strategy::verify_strategy;
use meden_core::{
    cactus_upper_bound, christmas_decomposition, classify, crosscheck, meden_with_trace, scaling_table, Attack,
    CrosscheckReport, DefenderEngine, GameVariant, Graph,
};
use rayon::prelude::*;
use serde_json::json;

use input::{graph_json, input_error, load_graph};

#[derive(Parser)]
#[command(name = "meden", version, about = "Eternal domination on cactus graphs")]
struct Cli {
    /// Output format for graphs and reports.
    #[arg(long, global = true, value_enum, default_value = "edgelist")]
    format: Format,
    /// Seed for everything random.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Edgelist,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Egc,
    Edn,
    Ede,
    All,
}

impl VariantArg {
    fn variants(self) -> Vec<GameVariant> {
        match self {
            VariantArg::Egc => vec![GameVariant::Egc],
            VariantArg::Edn => vec![GameVariant::Edn],
            VariantArg::Ede => vec![GameVariant::Ede],
            VariantArg::All => GameVariant::ALL.to_vec(),
        }
    }
}

/// GRAPH arguments take a file in edge-list or JSON form, `-` for stdin, or
/// a family name (C9, P4, K4, star3, bull, 3-pan).
#[derive(Subcommand)]
enum Command {
    /// Optimal guard count of a Christmas cactus in linear time.
    Compute {
        graph: String,
        /// Also print the reduction steps.
        #[arg(long)]
        trace: bool,
    },
    /// Exact game values by exhaustive search (small graphs only).
    Oracle {
        graph: String,
        #[arg(long, value_enum, default_value = "all")]
        variant: VariantArg,
        /// Print the winning strategy found for each variant.
        #[arg(long)]
        witness: bool,
        /// Ceiling on configurations times attacks.
        #[arg(long, default_value_t = 10_000_000)]
        max_pairs: u64,
    },
    /// Split a cactus into Christmas cacti and report the upper bound.
    Decompose {
        graph: String,
        /// Write each component as an edge list with a label table.
        #[arg(long)]
        emit_components: Option<PathBuf>,
    },
    /// Build the defender and show, verify or play it.
    Strategy {
        graph: String,
        /// Random games to play: TRIALS LENGTH (uses --seed).
        #[arg(long, num_args = 2, value_names = ["TRIALS", "LENGTH"])]
        verify: Option<Vec<usize>>,
        /// Read `attack v`, `evictv v` or `evicte u v` lines from stdin.
        #[arg(long)]
        interactive: bool,
    },
    /// Compare every applicable value and check the relations between them.
    Crosscheck {
        graphs: Vec<String>,
        /// Also check every Christmas cactus with up to this many vertices.
        #[arg(long)]
        corpus: Option<usize>,
        /// Also check this many random Christmas cacti on 8 or 9 vertices.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 10_000_000)]
        max_pairs: u64,
    },
    /// Random cactus or Christmas cactus, or every Christmas cactus up to a size.
    Generate {
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Probability that a new block is a cycle.
        #[arg(long, default_value_t = 0.5)]
        cycle_ratio: f64,
        #[arg(long, default_value_t = 6)]
        max_cycle: usize,
        /// Allow vertices in more than two blocks.
        #[arg(long)]
        cactus: bool,
        /// List every Christmas cactus with at most this many vertices instead.
        #[arg(long)]
        enumerate: Option<usize>,
        /// Directory for enumerated graphs (one file each).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the linear solver on generated Christmas cacti.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [100_000usize, 200_000, 400_000])]
        sizes: Vec<usize>,
        /// Timed runs per size; the fastest counts.
        #[arg(long, default_value_t = 3)]
        runs: usize,
    },
    /// Start the HTTP session service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Directory with a static front end.
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 30)]
        idle_minutes: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Compute { graph, trace } => compute(&load_graph(graph)?, *trace, json),
        Command::Oracle {
            graph,
            variant,
            witness,
            max_pairs,
        } => oracle(&load_graph(graph)?, *variant, *witness, limits(*max_pairs), json),
        Command::Decompose { graph, emit_components } => decompose(&load_graph(graph)?, emit_components.as_ref(), json),
        Command::Strategy {
            graph,
            verify,
            interactive,
        } => strategy(&load_graph(graph)?, verify.as_deref(), *interactive, cli.seed, json),
        Command::Crosscheck {
            graphs,
            corpus,
            random,
            max_pairs,
        } => run_crosscheck(graphs, *corpus, *random, cli.seed, limits(*max_pairs), json),
        Command::Generate {
            n,
            cycle_ratio,
            max_cycle,
            cactus,
            enumerate,
            out,
        } => {
            let spec = GeneratorSpec {
                n: *n,
                cycle_ratio: *cycle_ratio,
                max_cycle: *max_cycle,
                christmas: !cactus,
                seed: cli.seed,
            };
            run_generate(spec, *enumerate, out.as_ref(), json)
        }
        Command::Bench { sizes, runs } => bench(sizes, *runs, cli.seed, json),
        Command::Serve {
            port,
            host,
            static_dir,
            idle_minutes,
        } => serve(host, *port, static_dir.clone(), *idle_minutes),
    }
}

fn limits(max_pairs: u64) -> OracleLimits {
    OracleLimits {
        max_pairs,
        ..OracleLimits::default()
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("values serialize"));
}

fn compute(g: &Graph, trace: bool, json: bool) -> Result<ExitCode> {
    let (k, t) = meden_with_trace(g).map_err(input_error)?;
    if json {
        let mut out = json!({ "guards": k });
        if trace {
            out["trace"] = serde_json::to_value(&t)?;
        }
        print_json(&out);
    } else {
        println!("guards {k}");
        if trace {
            for s in &t.steps {
                println!("{:?} +{} removed {:?}", s.kind, s.guard_increment, s.removed_vertices);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn oracle(g: &Graph, variant: VariantArg, witness: bool, limits: OracleLimits, json: bool) -> Result<ExitCode> {
    let gamma = domination_number(g, &limits).map_err(input_error)?;
    let mut values = Vec::new();
    for v in variant.variants() {
        let k = exact_number(g, v, &limits).map_err(input_error)?;
        let w = if witness {
            solve_safety(g, k, v, &limits).map_err(input_error)?
        } else {
            None
        };
        values.push((v, k, w));
    }
    if json {
        let mut out = json!({ "domination": gamma });
        for (v, k, w) in &values {
            out[v.to_string()] = json!(k);
            if let Some(w) = w {
                out[format!("{v}_witness")] = serde_json::to_value(w)?;
            }
        }
        print_json(&out);
    } else {
        println!("domination {gamma}");
        for (v, k, w) in &values {
            println!("{v} {k}");
            if let Some(w) = w {
                println!("  {} winning configurations", w.configurations.len());
                for c in &w.configurations {
                    println!("  {c}");
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn decompose(g: &Graph, emit: Option<&PathBuf>, json: bool) -> Result<ExitCode> {
    let d = christmas_decomposition(g).map_err(input_error)?;
    let bound = cactus_upper_bound(g).map_err(input_error)?;
    if let Some(dir) = emit {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, c) in d.components.iter().enumerate() {
            let path = dir.join(format!("component_{i}.txt"));
            fs::write(&path, c.graph.to_edge_list_with_labels(&c.original))
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    let (red, groups) = (d.coloring.red_count(), d.coloring.group_count());
    if json {
        let comps: Vec<serde_json::Value> = d
            .components
            .iter()
            .map(|c| {
                json!({
                    "graph": graph_json(&c.graph),
                    "original": c.original,
                    "red_copies": c.red_copies(),
                })
            })
            .collect();
        print_json(&json!({
            "red": red,
            "red_groups": groups,
            "components": comps,
            "bound": bound,
        }));
    } else {
        println!("red {red}");
        println!("red_groups {groups}");
        println!("components {}", d.components.len());
        println!("bound {bound}");
    }
    Ok(ExitCode::SUCCESS)
}

fn strategy(g: &Graph, verify: Option<&[usize]>, interactive: bool, seed: u64, json: bool) -> Result<ExitCode> {
    let mut engine = DefenderEngine::for_graph(g).map_err(input_error)?;
    let mut code = ExitCode::SUCCESS;
    if let Some(&[trials, length]) = verify {
        let report = verify_strategy(g, &mut engine, trials, length, seed);
        if json {
            print_json(&serde_json::to_value(&report)?);
        } else {
            println!(
                "responses {} violations {} distinct configurations {}",
                report.responses,
                report.violations.len(),
                report.distinct_configurations
            );
            for v in report.violations.iter().take(10) {
                println!("trial {} step {} {}: {}", v.trial, v.step, v.attack, v.problems.join("; "));
            }
        }
        if !report.passed() {
            code = ExitCode::from(1);
        }
    } else if !interactive {
        if json {
            print_json(&json!({
                "guards": engine.guard_count(),
                "initial": engine.initial_configuration().positions(),
                "core": engine.core_kind().to_string(),
                "gadgets": engine.gadgets(),
            }));
        } else {
            println!("guards {}", engine.guard_count());
            println!("initial {}", engine.initial_configuration());
            println!("core {}", engine.core_kind());
            println!("gadgets {}", engine.gadgets().len());
        }
    }
    if interactive {
        code = play(&mut engine, json)?;
    }
    Ok(code)
}

fn play(engine: &mut DefenderEngine, json: bool) -> Result<ExitCode> {
    let stdin = std::io::stdin();
    let mut out = std::io::stdout().lock();
    let mut bad_input = false;
    let show = |out: &mut std::io::StdoutLock, c: &meden_core::Configuration| -> std::io::Result<()> {
        if json {
            writeln!(out, "{}", json!({ "configuration": c.positions() }))
        } else {
            writeln!(out, "{c}")
        }
    };
    show(&mut out, &engine.current())?;
    for line in stdin.lock().lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "quit" {
            break;
        }
        let result = line
            .parse::<Attack>()
            .map_err(|e| e.to_string())
            .and_then(|a| engine.respond(a).map_err(|e| e.to_string()));
        match result {
            Ok(c) => show(&mut out, &c)?,
            Err(e) => {
                bad_input = true;
                eprintln!("error: {e}");
            }
        }
        out.flush()?;
    }
    Ok(if bad_input { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn report_text(name: &str, r: &CrosscheckReport) -> String {
    let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    let mut s = format!(
        "{name}: n={} m={} {:?} domination={} egc={} edn={} ede={} meden={} bound={}\n",
        r.n,
        r.m,
        r.class,
        r.domination,
        r.egc,
        r.edn,
        r.ede,
        opt(r.meden),
        opt(r.bound)
    );
    for rel in &r.relations {
        s.push_str(&format!("  {} {}\n", if rel.holds { "PASS" } else { "FAIL" }, rel.name));
    }
    s
}

fn run_crosscheck(
    graphs: &[String],
    corpus: Option<usize>,
    random: usize,
    seed: u64,
    limits: OracleLimits,
    json: bool,
) -> Result<ExitCode> {
    let mut named: Vec<(String, Graph)> = Vec::new();
    for source in graphs {
        named.push((source.clone(), load_graph(source)?));
    }
    let explicit = named.len();
    if let Some(max_n) = corpus {
        if max_n > 11 {
            return Err(input_error("--corpus is limited to 11 vertices"));
        }
        for (i, g) in enumerate_christmas(max_n).into_iter().enumerate() {
            named.push((format!("corpus#{i}"), g));
        }
    }
    for i in 0..random {
        let spec = GeneratorSpec {
            n: 8 + i % 2,
            cycle_ratio: 0.5,
            max_cycle: 9,
            christmas: true,
            seed: seed.wrapping_add(i as u64),
        };
        named.push((format!("random#{i}"), generate(&spec).map_err(input_error)?));
    }
    if named.is_empty() {
        return Err(input_error("nothing to check: give graphs, --corpus or --random"));
    }
    let reports: Vec<(String, Result<CrosscheckReport, String>)> = named
        .par_iter()
        .map(|(name, g)| (name.clone(), crosscheck(g, &limits).map_err(|e| e.to_string())))
        .collect();

    let mut failed = 0;
    let mut errors = 0;
    let mut out = Vec::new();
    for (i, (name, r)) in reports.iter().enumerate() {
        match r {
            Ok(r) => {
                if !r.passed() {
                    failed += 1;
                }
                // bulk graphs are only shown when something fails
                if i < explicit || !r.passed() {
                    if json {
                        out.push(json!({ "graph": name, "report": r }));
                    } else {
                        print!("{}", report_text(name, r));
                    }
                }
            }
            Err(e) => {
                errors += 1;
                if json {
                    out.push(json!({ "graph": name, "error": e }));
                } else {
                    println!("{name}: error: {e}");
                }
            }
        }
    }
    if json {
        print_json(&json!({ "checked": reports.len(), "failed": failed, "errors": errors, "reports": out }));
    } else {
        println!("checked {} failed {failed} errors {errors}", reports.len());
    }
    Ok(if failed > 0 {
        ExitCode::from(1)
    } else if errors > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn run_generate(spec: GeneratorSpec, enumerate: Option<usize>, out: Option<&PathBuf>, json: bool) -> Result<ExitCode> {
    let graphs = match enumerate {
        Some(max_n) if max_n > 11 => return Err(input_error("--enumerate is limited to 11 vertices")),
        Some(max_n) => enumerate_christmas(max_n),
        None => vec![generate(&spec).map_err(input_error)?],
    };
    let ext = if json { "json" } else { "txt" };
    let render = |g: &Graph| {
        if json {
            serde_json::to_string(&graph_json(g)).expect("graphs serialize") + "\n"
        } else {
            g.to_edge_list()
        }
    };
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for (i, g) in graphs.iter().enumerate() {
                let path = dir.join(format!("graph_{i:04}.{ext}"));
                fs::write(&path, render(g)).with_context(|| format!("writing {}", path.display()))?;
            }
            eprintln!("wrote {} graphs to {}", graphs.len(), dir.display());
        }
        None if json && graphs.len() > 1 => {
            let all: Vec<serde_json::Value> = graphs.iter().map(graph_json).collect();
            print_json(&serde_json::Value::Array(all));
        }
        None => {
            for (i, g) in graphs.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                print!("{}", render(g));
            }
        }
    }
    if enumerate.is_none() {
        let class = classify(&graphs[0]).map_err(input_error)?;
        anyhow::ensure!(class.is_cactus(), "generator produced {:?}", class.kind);
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(sizes: &[usize], runs: usize, seed: u64, json: bool) -> Result<ExitCode> {
    let rows = scaling_table(sizes, seed, runs).map_err(input_error)?;
    if json {
        print_json(&serde_json::to_value(&rows)?);
    } else {
        println!("{:>10} {:>10} {:>8} {:>10} {:>6}", "n", "m", "guards", "seconds", "ratio");
        for r in &rows {
            let ratio = r.ratio.map_or("-".to_string(), |x| format!("{x:.2}"));
            println!("{:>10} {:>10} {:>8} {:>10.4} {:>6}", r.n, r.m, r.guards, r.seconds, ratio);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn serve(host: &str, port: u16, static_dir: Option<PathBuf>, idle_minutes: u64) -> Result<ExitCode> {
    if let Some(dir) = &static_dir {
        if !dir.is_dir() {
            return Err(input_error(format!("{}: not a directory", dir.display())));
        }
    }
    let config = meden_service::ServiceConfig {
        idle_timeout: std::time::Duration::from_secs(idle_minutes * 60),
        static_dir,
        ..Default::default()
    };
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind((host, port))
            .await
            .with_context(|| format!("binding {host}:{port}"))?;
        eprintln!("listening on http://{}", listener.local_addr()?);
        meden_service::serve(listener, config).await?;
        Ok(ExitCode::SUCCESS)
    })
}
