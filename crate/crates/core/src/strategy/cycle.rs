//! Guard moves on a single cycle with ceil(len/3) guards.
//!
//! Positions are local slots `0..len`; slot `i` is adjacent to `i - 1` and
//! `i + 1` modulo `len`. Every response is either a rotation of all guards by
//! one slot or a local step of at most two guards, so it is always traversable.

use crate::graph::Vertex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum CycleAttack {
    Vertex(usize),
    EvictVertex(usize),
    /// The edge between slot `i` and slot `i + 1`.
    EvictEdge(usize),
}

/// Guards at slots `offset, offset + 3, ...`.
pub(crate) fn initial(len: usize, offset: usize) -> Vec<bool> {
    let mut occ = vec![false; len];
    for k in 0..len.div_ceil(3) {
        occ[(offset + 3 * k) % len] = true;
    }
    occ
}

/// Local edge index of the edge between slots `a` and `b`.
pub(crate) fn edge_slot(len: usize, a: usize, b: usize) -> Option<usize> {
    if (a + 1) % len == b {
        Some(a)
    } else if (b + 1) % len == a {
        Some(b)
    } else {
        None
    }
}

/// Responds in place. `ids` holds the graph vertex of each slot and is only
/// used to break ties between the two rotation directions.
pub(crate) fn respond(occ: &mut [bool], ids: &[Vertex], attack: CycleAttack) {
    let len = occ.len();
    let prev = |i: usize| (i + len - 1) % len;
    let next = |i: usize| (i + 1) % len;
    match attack {
        CycleAttack::Vertex(t) => {
            if occ[t] {
                return;
            }
            let (p, q) = (prev(t), next(t));
            let forward = match (occ[p], occ[q]) {
                (true, true) => ids[p] < ids[q],
                (true, false) => true,
                (false, true) => false,
                (false, false) => return,
            };
            if forward {
                occ.rotate_right(1);
            } else {
                occ.rotate_left(1);
            }
        }
        CycleAttack::EvictVertex(t) => {
            if occ[t] {
                respond(occ, ids, CycleAttack::EvictEdge(t));
            }
        }
        CycleAttack::EvictEdge(e) => {
            let f = next(e);
            if !occ[e] && !occ[f] {
                return;
            }
            let (d, g) = (prev(e), next(f));
            if !occ[d] && !occ[e] {
                occ.rotate_right(1);
            } else if !occ[f] && !occ[g] {
                occ.rotate_left(1);
            } else {
                // neither side has a free pair, so d and g end up guarded
                if occ[e] {
                    occ[e] = false;
                    occ[d] = true;
                }
                if occ[f] {
                    occ[f] = false;
                    occ[g] = true;
                }
            }
        }
    }
}

/// Whether every slot is guarded or next to a guard.
pub(crate) fn dominates(occ: &[bool]) -> bool {
    let len = occ.len();
    (0..len).all(|i| occ[i] || occ[(i + 1) % len] || occ[(i + len - 1) % len])
}
