//! Exact values of the guarding game on small graphs.
//!
//! The game is solved as a safety game over all configurations of a fixed
//! order: configurations are deleted until every survivor can answer every
//! attack by moving to another survivor.

mod matching;
mod safety;

pub use matching::{movement, traversable};
pub use safety::{exact_number, solve_safety, validate_witness, StrategyWitness};

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("configurations have different orders ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("state space too large: {pairs} configuration/attack pairs exceed the limit {limit}")]
    BudgetExceeded { pairs: u128, limit: u64 },
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("no winning order up to {max_order}")]
    NoWinningOrder { max_order: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Size guards for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    /// Ceiling on `configurations x attacks`.
    pub max_pairs: u64,
    /// Largest order tried by [`exact_number`]; `None` means `n`.
    pub max_order: Option<usize>,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_pairs: 10_000_000,
            max_order: None,
        }
    }
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of configurations of `order` guards on `n` vertices.
pub fn configuration_count(n: usize, order: usize, duplicates: bool) -> u128 {
    if duplicates {
        binomial((n + order).saturating_sub(1) as u128, order as u128)
    } else {
        binomial(n as u128, order as u128)
    }
}

/// Advances `c` to the next sorted selection over `0..n` in lexicographic
/// order; `duplicates` allows repeated entries. Returns `false` when done.
pub(crate) fn next_selection(c: &mut [Vertex], n: usize, duplicates: bool) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        // largest value position i may take
        let cap = if duplicates { n - 1 } else { n - k + i };
        if c[i] < cap {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = if duplicates { c[i] } else { c[j - 1] + 1 };
            }
            return true;
        }
    }
    false
}

pub(crate) fn first_selection(k: usize, duplicates: bool) -> Vec<Vertex> {
    if duplicates {
        vec![0; k]
    } else {
        (0..k).collect()
    }
}

/// Smallest dominating set size, by increasing-size subset search.
pub fn domination_number(g: &Graph, limits: &OracleLimits) -> Result<usize, OracleError> {
    g.require_connected()?;
    let n = g.n();
    let mut spent: u128 = 0;
    for k in 1..=n {
        spent += configuration_count(n, k, false);
        if spent > limits.max_pairs as u128 {
            return Err(OracleError::BudgetExceeded {
                pairs: spent,
                limit: limits.max_pairs,
            });
        }
        let mut c = first_selection(k, false);
        loop {
            if g.is_dominating(&c) {
                return Ok(k);
            }
            if !next_selection(&mut c, n, false) {
                break;
            }
        }
    }
    unreachable!("the whole vertex set dominates")
}
