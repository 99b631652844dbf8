//! Reductions applied to an explicit graph.
//!
//! The counter algorithm never builds the reduced graphs. Strategy synthesis
//! needs them, so here each reduction is chosen on a concrete graph and
//! applied to a [`WorkGraph`] that keeps the original vertex ids.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::blocks::{block_cut_tree, BlockCutTree};
use crate::class::classify_with;
use crate::graph::{Graph, Vertex};

use super::{is_elementary, ReductionError, ReductionStep, StepKind};

/// One reduction on a Christmas cactus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reduction {
    /// Leaf cycle `cycle[0] = articulation, cycle[1], ...` of length not 1
    /// mod 3; everything but the articulation is replaced by one new leaf.
    LeafCycleShrink { cycle: Vec<Vertex> },
    /// Leaf cycle of length 1 mod 3; everything but the articulation goes.
    LeafCycleRemove { cycle: Vec<Vertex> },
    /// Leaf `leaf` on `middle`, which has degree 2 and continues to `anchor`.
    LeafEdge { leaf: Vertex, middle: Vertex, anchor: Vertex },
    /// Leaf `leaf` on `hub`, which sits on a cycle of length at least 4
    /// between `left` and `right`. The two go and `left`-`right` becomes an edge.
    LongCyclePendant { leaf: Vertex, hub: Vertex, left: Vertex, right: Vertex },
    /// Triangle `hub, x, y` with leaves on `x` and `y`; `hub` leads to the rest.
    LeafBull { hub: Vertex, x: Vertex, y: Vertex, x_leaf: Vertex, y_leaf: Vertex },
    /// Triangle `hub, x, y` with a leaf on `x` and `y` of degree 2.
    LeafPan { hub: Vertex, x: Vertex, x_leaf: Vertex, y: Vertex },
}

impl Reduction {
    pub fn increment(&self) -> usize {
        match self {
            Reduction::LeafCycleShrink { cycle } => cycle.len().div_ceil(3) - 1,
            Reduction::LeafCycleRemove { cycle } => (cycle.len() - 1) / 3,
            Reduction::LeafBull { .. } => 2,
            _ => 1,
        }
    }

    /// Vertices deleted from the graph.
    pub fn removed(&self) -> Vec<Vertex> {
        match self {
            Reduction::LeafCycleShrink { cycle } | Reduction::LeafCycleRemove { cycle } => cycle[1..].to_vec(),
            Reduction::LeafEdge { leaf, middle, .. } => vec![*leaf, *middle],
            Reduction::LongCyclePendant { leaf, hub, .. } => vec![*leaf, *hub],
            Reduction::LeafBull { x, y, x_leaf, y_leaf, .. } => vec![*x, *y, *x_leaf, *y_leaf],
            Reduction::LeafPan { x, x_leaf, .. } => vec![*x, *x_leaf],
        }
    }

    /// The same reduction with every vertex renamed.
    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Reduction {
        match self {
            Reduction::LeafCycleShrink { cycle } => Reduction::LeafCycleShrink {
                cycle: cycle.iter().map(|&v| f(v)).collect(),
            },
            Reduction::LeafCycleRemove { cycle } => Reduction::LeafCycleRemove {
                cycle: cycle.iter().map(|&v| f(v)).collect(),
            },
            &Reduction::LeafEdge { leaf, middle, anchor } => Reduction::LeafEdge {
                leaf: f(leaf),
                middle: f(middle),
                anchor: f(anchor),
            },
            &Reduction::LongCyclePendant { leaf, hub, left, right } => Reduction::LongCyclePendant {
                leaf: f(leaf),
                hub: f(hub),
                left: f(left),
                right: f(right),
            },
            &Reduction::LeafBull { hub, x, y, x_leaf, y_leaf } => Reduction::LeafBull {
                hub: f(hub),
                x: f(x),
                y: f(y),
                x_leaf: f(x_leaf),
                y_leaf: f(y_leaf),
            },
            &Reduction::LeafPan { hub, x, x_leaf, y } => Reduction::LeafPan {
                hub: f(hub),
                x: f(x),
                x_leaf: f(x_leaf),
                y: f(y),
            },
        }
    }

    /// The reduction expressed as trace steps. A bull is a leaf edge on a
    /// cycle followed by a leaf edge pair; a pan is a leaf edge on a cycle.
    pub fn steps(&self) -> Vec<ReductionStep> {
        let step = |kind, removed: Vec<Vertex>, anchor: Vertex, inc: usize, len: Option<usize>| {
            let mut removed = removed;
            removed.sort_unstable();
            ReductionStep {
                kind,
                removed_vertices: removed,
                anchor: Some(anchor),
                guard_increment: inc,
                cycle_length: len,
                elementary: None,
            }
        };
        match self {
            Reduction::LeafCycleShrink { cycle } => vec![step(
                StepKind::LeafCycleShrink,
                cycle[1..].to_vec(),
                cycle[0],
                self.increment(),
                Some(cycle.len()),
            )],
            Reduction::LeafCycleRemove { cycle } => vec![step(
                StepKind::LeafCycleRemove,
                cycle[1..].to_vec(),
                cycle[0],
                self.increment(),
                Some(cycle.len()),
            )],
            &Reduction::LeafEdge { leaf, middle, anchor } => {
                vec![step(StepKind::LeafEdgePair, vec![leaf, middle], anchor, 1, None)]
            }
            &Reduction::LongCyclePendant { leaf, hub, left, .. } => {
                vec![step(StepKind::PendantOnCycle, vec![leaf, hub], left, 1, None)]
            }
            &Reduction::LeafBull { hub, x, y, x_leaf, y_leaf } => vec![
                step(StepKind::PendantOnCycle, vec![x_leaf, x], y, 1, None),
                step(StepKind::LeafEdgePair, vec![y_leaf, y], hub, 1, None),
            ],
            &Reduction::LeafPan { x, x_leaf, y, .. } => {
                vec![step(StepKind::PendantOnCycle, vec![x_leaf, x], y, 1, None)]
            }
        }
    }
}

/// Cycle of block `b` as a vertex sequence starting at `start`, stepping to
/// the smaller neighbour first.
fn cycle_order(g: &Graph, bc: &BlockCutTree, b: usize, start: Vertex) -> Vec<Vertex> {
    let members = bc.members(b);
    let inside = |v: &Vertex| members.binary_search(v).is_ok();
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = *g.neighbors(start).iter().find(|w| inside(w)).expect("cycle vertex has a cycle neighbour");
    while cur != start {
        order.push(cur);
        let next = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| w != prev && inside(&w))
            .expect("cycle continues");
        prev = cur;
        cur = next;
    }
    order
}

/// Picks the reduction the decision procedure prescribes for `g`.
///
/// Order of preference: leaf cycle, leaf edge on a degree-2 vertex, leaf on a
/// cycle of length at least 4, then a leaf bull or leaf 3-pan.
pub fn choose_reduction(g: &Graph, bc: &BlockCutTree) -> Result<Reduction, ReductionError> {
    let class = classify_with(g, bc);
    if !class.is_christmas_cactus() {
        return Err(ReductionError::NotChristmasCactus {
            kind: class.kind,
            witness: class.witness,
        });
    }
    if let Some(kind) = is_elementary(g) {
        return Err(ReductionError::Elementary(kind));
    }

    for (b, block) in bc.blocks.iter().enumerate() {
        if block.is_cycle() && bc.deg(b) == 1 {
            let art = bc.articulations[bc.block_articulations(b)[0]];
            let cycle = cycle_order(g, bc, b, art);
            return Ok(if cycle.len() % 3 == 1 {
                Reduction::LeafCycleRemove { cycle }
            } else {
                Reduction::LeafCycleShrink { cycle }
            });
        }
    }

    let leaves: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) == 1).collect();
    for &leaf in &leaves {
        let middle = g.neighbors(leaf)[0];
        if g.degree(middle) == 2 {
            let anchor = *g.neighbors(middle).iter().find(|&&w| w != leaf).expect("degree two");
            return Ok(Reduction::LeafEdge { leaf, middle, anchor });
        }
    }
    for &leaf in &leaves {
        let hub = g.neighbors(leaf)[0];
        if g.degree(hub) == 3 {
            let others: Vec<Vertex> = g.neighbors(hub).iter().copied().filter(|&w| w != leaf).collect();
            let (left, right) = (others[0], others[1]);
            if !g.has_edge(left, right) {
                return Ok(Reduction::LongCyclePendant { leaf, hub, left, right });
            }
        }
    }

    // every leaf now hangs on a triangle
    let leaf_of = |v: Vertex| g.neighbors(v).iter().copied().find(|&w| g.degree(w) == 1);
    for (b, block) in bc.blocks.iter().enumerate() {
        if block.size() != 3 || !block.is_cycle() {
            continue;
        }
        let tri = bc.members(b);
        let with_leaf: Vec<Vertex> = tri.iter().copied().filter(|&v| leaf_of(v).is_some()).collect();
        let bare: Vec<Vertex> = tri.iter().copied().filter(|&v| g.degree(v) == 2).collect();
        if with_leaf.len() >= 2 {
            let (x, y) = (with_leaf[0], with_leaf[1]);
            let hub = *tri.iter().find(|&&v| v != x && v != y).expect("triangle");
            return Ok(Reduction::LeafBull {
                hub,
                x,
                y,
                x_leaf: leaf_of(x).unwrap(),
                y_leaf: leaf_of(y).unwrap(),
            });
        }
        if with_leaf.len() == 1 && bare.len() == 1 {
            let (x, y) = (with_leaf[0], bare[0]);
            let hub = *tri.iter().find(|&&v| v != x && v != y).expect("triangle");
            return Ok(Reduction::LeafPan {
                hub,
                x,
                x_leaf: leaf_of(x).unwrap(),
                y,
            });
        }
    }
    Err(ReductionError::NoReduction)
}

/// A shrinking graph that remembers original vertex ids. New vertices get
/// ids from `original_n` upward.
#[derive(Debug, Clone)]
pub struct WorkGraph {
    original_n: usize,
    adj: Vec<BTreeSet<Vertex>>,
    alive: Vec<bool>,
}

impl WorkGraph {
    pub fn new(g: &Graph) -> Self {
        Self {
            original_n: g.n(),
            adj: (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect(),
            alive: vec![true; g.n()],
        }
    }

    pub fn original_n(&self) -> usize {
        self.original_n
    }

    /// One past the largest id ever handed out.
    pub fn id_bound(&self) -> usize {
        self.alive.len()
    }

    pub fn is_original(&self, v: Vertex) -> bool {
        v < self.original_n
    }

    /// Live ids, ascending.
    pub fn vertices(&self) -> Vec<Vertex> {
        (0..self.alive.len()).filter(|&v| self.alive[v]).collect()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(u).is_some_and(|s| s.contains(&v))
    }

    /// Dense copy plus the id of every dense vertex.
    pub fn compact(&self) -> (Graph, Vec<Vertex>) {
        let ids = self.vertices();
        let mut local = vec![usize::MAX; self.alive.len()];
        for (i, &v) in ids.iter().enumerate() {
            local[v] = i;
        }
        let edges = ids
            .iter()
            .flat_map(|&u| self.adj[u].iter().filter(move |&&w| u < w).map(move |&w| (u, w)))
            .map(|(u, w)| (local[u], local[w]));
        let g = Graph::new(ids.len(), edges.collect::<Vec<_>>()).expect("work graph stays simple");
        (g, ids)
    }

    fn remove(&mut self, v: Vertex) {
        for w in std::mem::take(&mut self.adj[v]) {
            self.adj[w].remove(&v);
        }
        self.alive[v] = false;
    }

    fn add_vertex(&mut self) -> Vertex {
        self.adj.push(BTreeSet::new());
        self.alive.push(true);
        self.adj.len() - 1
    }

    fn add_edge(&mut self, u: Vertex, v: Vertex) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    /// Applies `r` (in work-graph ids). Returns the new leaf created by a
    /// cycle shrink.
    pub fn apply(&mut self, r: &Reduction) -> Option<Vertex> {
        for v in r.removed() {
            self.remove(v);
        }
        match r {
            Reduction::LeafCycleShrink { cycle } => {
                let s = self.add_vertex();
                self.add_edge(cycle[0], s);
                Some(s)
            }
            &Reduction::LongCyclePendant { left, right, .. } => {
                self.add_edge(left, right);
                None
            }
            _ => None,
        }
    }

    /// Chooses the next reduction in work-graph ids, or reports the
    /// elementary graph that remains.
    pub fn next_reduction(&self) -> Result<Reduction, ReductionError> {
        let (g, ids) = self.compact();
        let bc = block_cut_tree(&g)?;
        Ok(choose_reduction(&g, &bc)?.map(|v| ids[v]))
    }
}

/// The full reduction sequence in work-graph ids, the final work graph, and
/// the guard count it certifies.
pub fn reduce_fully(g: &Graph) -> Result<(Vec<Reduction>, WorkGraph, usize), ReductionError> {
    let mut work = WorkGraph::new(g);
    let mut seq = Vec::new();
    let mut total = 0;
    loop {
        match work.next_reduction() {
            Ok(r) => {
                total += r.increment();
                work.apply(&r);
                seq.push(r);
            }
            Err(ReductionError::Elementary(kind)) => {
                total += super::elementary_value(kind);
                return Ok((seq, work, total));
            }
            Err(e) => return Err(e),
        }
    }
}
