use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// The terminal graphs of the reduction process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementaryKind {
    SingleVertex,
    SingleEdge,
    PathThreeVertices,
    /// A cycle on `len >= 3` vertices.
    Cycle(usize),
    Bull,
    ThreePan,
}

impl fmt::Display for ElementaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryKind::SingleVertex => write!(f, "single vertex"),
            ElementaryKind::SingleEdge => write!(f, "single edge"),
            ElementaryKind::PathThreeVertices => write!(f, "path on three vertices"),
            ElementaryKind::Cycle(len) => write!(f, "cycle of length {len}"),
            ElementaryKind::Bull => write!(f, "bull"),
            ElementaryKind::ThreePan => write!(f, "3-pan"),
        }
    }
}

/// Optimal guard count of an elementary graph.
pub fn elementary_value(kind: ElementaryKind) -> usize {
    match kind {
        ElementaryKind::SingleVertex | ElementaryKind::SingleEdge => 1,
        ElementaryKind::PathThreeVertices | ElementaryKind::ThreePan => 2,
        ElementaryKind::Cycle(len) => len.div_ceil(3),
        ElementaryKind::Bull => 3,
    }
}

/// Recognizes elementary graphs from vertex/edge counts and degrees.
///
/// Among connected graphs with `m <= n` these numbers determine the
/// isomorphism type of every elementary graph.
pub fn is_elementary(g: &Graph) -> Option<ElementaryKind> {
    if !g.is_connected() {
        return None;
    }
    let (n, m) = (g.n(), g.m());
    let mut degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    degrees.sort_unstable();
    match (n, m) {
        (1, 0) => Some(ElementaryKind::SingleVertex),
        (2, 1) => Some(ElementaryKind::SingleEdge),
        (3, 2) => Some(ElementaryKind::PathThreeVertices),
        _ if n >= 3 && m == n && degrees.iter().all(|&d| d == 2) => Some(ElementaryKind::Cycle(n)),
        (4, 4) if degrees == [1, 2, 2, 3] => Some(ElementaryKind::ThreePan),
        (5, 5) if degrees == [1, 1, 2, 3, 3] => Some(ElementaryKind::Bull),
        _ => None,
    }
}
