//! Acceptance suite. Runs each criterion in turn, prints one PASS or FAIL
//! line per criterion and exits non-zero if any failed.

use std::process::ExitCode;
use std::time::Instant;

use meden_core::generate::{enumerate_christmas, generate, random_connected, GeneratorSpec};
use meden_core::oracle::{domination_number, exact_number, OracleLimits};
use meden_core::strategy::verify_strategy;
use meden_core::*;
use rayon::prelude::*;

const VARIANTS: [GameVariant; 3] = [GameVariant::Egc, GameVariant::Edn, GameVariant::Ede];

type Outcome = Result<String, String>;

fn oracle(g: &Graph, v: GameVariant) -> usize {
    exact_number(g, v, &OracleLimits::default()).expect("within oracle budget")
}

/// Exhaustive corpus up to seven vertices plus 200 random graphs on 8 or 9.
fn corpus() -> Vec<Graph> {
    let mut out = enumerate_christmas(7);
    for seed in 0..200u64 {
        out.push(
            generate(&GeneratorSpec {
                n: 8 + (seed % 2) as usize,
                cycle_ratio: 0.5,
                max_cycle: 9,
                christmas: true,
                seed: 1000 + seed,
            })
            .unwrap(),
        );
    }
    out
}

fn describe(g: &Graph) -> String {
    format!("n={} edges={:?}", g.n(), g.edges().collect::<Vec<_>>())
}

fn cycle_law() -> Outcome {
    for k in 3..=12 {
        let g = families::cycle(k);
        let want = k.div_ceil(3);
        let got = [
            meden(&g).unwrap(),
            oracle(&g, GameVariant::Edn),
            oracle(&g, GameVariant::Ede),
        ];
        if got != [want; 3] {
            return Err(format!("C{k}: meden/edn/ede = {got:?}, expected {want}"));
        }
    }
    Ok("C3..C12 all equal ceil(k/3)".into())
}

fn elementary_values() -> Outcome {
    let cases = [
        ("single vertex", families::single_vertex(), 1),
        ("single edge", families::path(2), 1),
        ("path on 3 vertices", families::path(3), 2),
        ("3-pan", families::three_pan(), 2),
        ("bull", families::bull(), 3),
    ];
    for (name, g, want) in cases {
        let mut got = vec![meden(&g).unwrap()];
        got.extend(VARIANTS.iter().map(|&v| oracle(&g, v)));
        if got.iter().any(|&x| x != want) {
            return Err(format!("{name}: meden/egc/edn/ede = {got:?}, expected {want}"));
        }
    }
    Ok("5 graphs, meden and three oracle variants".into())
}

fn equality(corpus: &[Graph]) -> Outcome {
    let bad: Vec<String> = corpus
        .par_iter()
        .filter_map(|g| {
            let k = meden(g).unwrap();
            let vals: Vec<usize> = VARIANTS.iter().map(|&v| oracle(g, v)).collect();
            vals.iter().any(|&x| x != k).then(|| format!("{} meden {k} oracle {vals:?}", describe(g)))
        })
        .collect();
    match bad.first() {
        None => Ok(format!("{} graphs, zero exceptions", corpus.len())),
        Some(b) => Err(format!("{} exceptions, first: {b}", bad.len())),
    }
}

fn chain() -> Outcome {
    let bad: Vec<String> = (0..100u64)
        .into_par_iter()
        .filter_map(|seed| {
            let n = 1 + (seed % 7) as usize;
            let g = random_connected(n, 0.1 + 0.05 * (seed % 10) as f64, 500 + seed);
            let gamma = domination_number(&g, &OracleLimits::default()).unwrap();
            let [egc, edn, ede] = VARIANTS.map(|v| oracle(&g, v));
            (!(gamma <= egc && egc <= edn && edn <= ede))
                .then(|| format!("{}: {gamma} {egc} {edn} {ede}", describe(&g)))
        })
        .collect();
    match bad.first() {
        None => Ok("100 random connected graphs, zero violations".into()),
        Some(b) => Err(format!("{} violations, first: {b}", bad.len())),
    }
}

fn red_cacti() -> Vec<Graph> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < 120 {
        let g = generate(&GeneratorSpec {
            n: 4 + (seed % 6) as usize,
            cycle_ratio: 0.4,
            max_cycle: 6,
            christmas: false,
            seed: 7000 + seed,
        })
        .unwrap();
        seed += 1;
        if color_red(&g).unwrap().red_count() > 0 {
            out.push(g);
        }
    }
    out
}

fn bound_soundness(corpus: &[Graph]) -> Outcome {
    let star = families::star(3);
    let (b, o) = (cactus_upper_bound(&star).unwrap(), oracle(&star, GameVariant::Edn));
    if (b, o) != (2, 2) {
        return Err(format!("K1,3: bound {b} oracle {o}, expected 2 and 2"));
    }
    let reds = red_cacti();
    // the decomposition may produce a component that is not a Christmas
    // cactus; then the bound is undefined and the graph is counted apart
    let results: Vec<Result<bool, String>> = reds
        .par_iter()
        .map(|g| match cactus_upper_bound(g) {
            Ok(b) => {
                let o = oracle(g, GameVariant::Edn);
                if b < o {
                    Err(format!("{}: bound {b} < edn {o}", describe(g)))
                } else {
                    Ok(true)
                }
            }
            Err(e) => {
                println!("INFO bound undefined for {}: {e}", describe(g));
                Ok(false)
            }
        })
        .collect();
    let bad: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    if let Some(first) = bad.first() {
        return Err(format!("{} violations, first: {first}", bad.len()));
    }
    let checked = results.iter().filter(|r| matches!(r, Ok(true))).count();
    if checked < 100 {
        return Err(format!("only {checked} red cacti had a defined bound"));
    }
    for g in corpus {
        let (b, k) = (cactus_upper_bound(g).unwrap(), meden(g).unwrap());
        if b != k {
            return Err(format!("{}: bound {b} != meden {k}", describe(g)));
        }
    }
    Ok(format!(
        "{checked} of {} red cacti bound >= edn, {} Christmas cacti bound == meden, K1,3 -> 2",
        reds.len(),
        corpus.len()
    ))
}

fn strategy_soundness(corpus: &[Graph]) -> Outcome {
    let bad: Vec<String> = corpus
        .par_iter()
        .enumerate()
        .filter_map(|(i, g)| {
            let mut engine = DefenderEngine::for_graph(g).unwrap();
            let k = meden(g).unwrap();
            if engine.guard_count() != k {
                return Some(format!("{}: {} guards, meden {k}", describe(g), engine.guard_count()));
            }
            let report = verify_strategy(g, &mut engine, 1000, 200, 90_000 + i as u64);
            (!report.passed()).then(|| format!("{}: {:?}", describe(g), report.violations[0]))
        })
        .collect();
    match bad.first() {
        None => Ok(format!("{} graphs x 1000 games x 200 attacks, zero violations", corpus.len())),
        Some(b) => Err(format!("{} graphs failed, first: {b}", bad.len())),
    }
}

fn linear_time() -> Outcome {
    let big = scaling_table(&[1_000_000], 11, 1).unwrap();
    let rows = scaling_table(&[100_000, 200_000, 400_000, 800_000], 12, 3).unwrap();
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio).collect();
    let summary = format!(
        "n=1e6 in {:.3}s, doubling ratios {:?}",
        big[0].seconds,
        ratios.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>()
    );
    println!("INFO same sizes with shuffled labels: doubling ratios {:?}", shuffled_ratios());
    if big[0].seconds < 5.0 && ratios.iter().all(|&r| r < 3.0) {
        Ok(summary)
    } else {
        Err(summary)
    }
}

/// Generated graphs are labelled depth-first. With random labels the same
/// graphs pay for cache misses that grow with n; reported, not checked.
fn shuffled_ratios() -> Vec<String> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let mut prev: Option<f64> = None;
    let mut out = Vec::new();
    for n in [100_000, 200_000, 400_000, 800_000] {
        let g = generate(&GeneratorSpec { n, seed: 12, ..GeneratorSpec::default() }).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let g = g.relabel(&perm);
        let best = (0..3)
            .map(|_| {
                let t = Instant::now();
                meden(&g).unwrap();
                t.elapsed().as_secs_f64()
            })
            .fold(f64::MAX, f64::min);
        if let Some(p) = prev {
            out.push(format!("{:.2}", best / p));
        }
        prev = Some(best);
    }
    out
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        // timed first, while nothing else runs
        ("linear-time behaviour", Box::new(linear_time)),
        ("cycle law", Box::new(cycle_law)),
        ("elementary values", Box::new(elementary_values)),
        ("equality on the Christmas corpus", Box::new(|| equality(&corpus))),
        ("chain on random graphs", Box::new(chain)),
        ("decomposition bound soundness", Box::new(|| bound_soundness(&corpus))),
        ("strategy soundness", Box::new(|| strategy_soundness(&corpus))),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    println!("INFO grid and interval results: not checked, the oracle is the reference for all other values");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
