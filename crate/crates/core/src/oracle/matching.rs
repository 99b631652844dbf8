//! Guard movement as bipartite matching between two configurations.
//!
//! Guard `i` of the source may fill slot `j` of the target when the target
//! position lies in the closed neighbourhood of the source position.

use crate::game::Configuration;
use crate::graph::{Graph, Vertex};

use super::OracleError;

const FREE: usize = usize::MAX;

/// Candidate slots per source guard, ascending.
fn candidates(g: &Graph, from: &[Vertex], to: &[Vertex]) -> Vec<Vec<usize>> {
    from.iter()
        .map(|&u| {
            let mut slots = Vec::new();
            let mut push_range = |v: Vertex| {
                let lo = to.partition_point(|&x| x < v);
                let hi = to.partition_point(|&x| x <= v);
                slots.extend(lo..hi);
            };
            push_range(u);
            for &w in g.neighbors(u) {
                push_range(w);
            }
            slots.sort_unstable();
            slots
        })
        .collect()
}

/// Kuhn's augmenting-path matching with an explicit stack.
///
/// Guards `0..fixed.len()` are pinned to the given slots. Returns the number
/// of matched guards and the slot of every guard.
fn max_matching(adj: &[Vec<usize>], k: usize, fixed: &[usize]) -> (usize, Vec<usize>) {
    let mut guard_of = vec![FREE; k];
    let mut slot_of = vec![FREE; adj.len()];
    let mut matched = 0;
    for (gi, &s) in fixed.iter().enumerate() {
        slot_of[gi] = s;
        guard_of[s] = gi;
        matched += 1;
    }
    let start = fixed.len();
    let mut seen = vec![usize::MAX; k];
    for root in start..adj.len() {
        // frames: (guard, next candidate index)
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        let mut found = false;
        while let Some(top) = stack.last_mut() {
            let gi = top.0;
            if top.1 >= adj[gi].len() {
                stack.pop();
                continue;
            }
            let s = adj[gi][top.1];
            top.1 += 1;
            if seen[s] == root {
                continue;
            }
            seen[s] = root;
            let owner = guard_of[s];
            if owner == FREE {
                // augment along the stack
                let mut slot = s;
                for &(gj, _) in stack.iter().rev() {
                    let prev = slot_of[gj];
                    slot_of[gj] = slot;
                    guard_of[slot] = gj;
                    slot = prev;
                }
                found = true;
                break;
            } else if owner >= start {
                stack.push((owner, 0));
            }
        }
        if found {
            matched += 1;
        }
    }
    (matched, slot_of)
}

fn check_orders(a: &Configuration, b: &Configuration) -> Result<(), OracleError> {
    if a.order() != b.order() {
        return Err(OracleError::OrderMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    Ok(())
}

/// Whether every guard of `a` can take one step (or stay) so that the guards
/// end on exactly the positions of `b`.
pub fn traversable(g: &Graph, a: &Configuration, b: &Configuration) -> Result<bool, OracleError> {
    check_orders(a, b)?;
    let adj = candidates(g, a.positions(), b.positions());
    Ok(max_matching(&adj, b.order(), &[]).0 == a.order())
}

/// The lexicographically smallest assignment of guards (in ascending source
/// order) to target positions, as `(from, to)` pairs, or `None` when `b` is
/// not traversable from `a`.
pub fn movement(
    g: &Graph,
    a: &Configuration,
    b: &Configuration,
) -> Result<Option<Vec<(Vertex, Vertex)>>, OracleError> {
    check_orders(a, b)?;
    let (from, to) = (a.positions(), b.positions());
    let k = from.len();
    let adj = candidates(g, from, to);
    if max_matching(&adj, k, &[]).0 != k {
        return Ok(None);
    }
    let mut fixed: Vec<usize> = Vec::with_capacity(k);
    let mut used = vec![false; k];
    for gi in 0..k {
        let mut chosen = None;
        for &s in &adj[gi] {
            if used[s] {
                continue;
            }
            fixed.push(s);
            if max_matching(&adj, k, &fixed).0 == k {
                chosen = Some(s);
                break;
            }
            fixed.pop();
        }
        let s = chosen.expect("a perfect matching extends the current prefix");
        used[s] = true;
    }
    Ok(Some(from.iter().zip(&fixed).map(|(&u, &s)| (u, to[s])).collect()))
}
