//! Wall-clock scaling of the linear-time solver.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::generate::{generate, GenerateError, GeneratorSpec};
use crate::reduction::meden;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub n: usize,
    pub m: usize,
    pub guards: usize,
    /// Best of the timed runs, in seconds.
    pub seconds: f64,
    /// `seconds` divided by the previous row's, when there is one.
    pub ratio: Option<f64>,
}

/// Times the solver on one generated Christmas cactus per size. Each size is
/// run `runs` times (at least once) and the fastest run is kept.
pub fn scaling_table(sizes: &[usize], seed: u64, runs: usize) -> Result<Vec<ScalingRow>, GenerateError> {
    let mut rows: Vec<ScalingRow> = Vec::with_capacity(sizes.len());
    for (i, &n) in sizes.iter().enumerate() {
        let g = generate(&GeneratorSpec {
            n,
            seed: seed.wrapping_add(i as u64),
            ..GeneratorSpec::default()
        })?;
        let mut best = Duration::MAX;
        let mut guards = 0;
        for _ in 0..runs.max(1) {
            let start = Instant::now();
            guards = meden(&g).expect("generated graphs are Christmas cacti");
            best = best.min(start.elapsed());
        }
        let seconds = best.as_secs_f64();
        let ratio = rows.last().map(|prev| seconds / prev.seconds.max(1e-9));
        rows.push(ScalingRow {
            n,
            m: g.m(),
            guards,
            seconds,
            ratio,
        });
    }
    Ok(rows)
}
