//! Linear-time guard count for Christmas cacti.
//!
//! Leaf blocks of the block-cut tree are peeled off one at a time. Each block
//! carries only a size counter and an articulation counter, so a reduction
//! costs constant time: a leaf cycle is shrunk to a leaf edge by rewriting its
//! counter, and a leaf edge hanging on a cycle shortens that cycle by one.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::blocks::{block_cut_tree, leaf_blocks, BlockCutTree, BlockId};
use crate::class::classify_with;
use crate::graph::{Graph, Vertex};

use super::{elementary_value, ElementaryKind, ReductionError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepKind {
    /// A leaf cycle of length not 1 mod 3 is replaced by a leaf edge.
    LeafCycleShrink,
    /// A leaf cycle of length 1 mod 3 is removed up to its articulation.
    LeafCycleRemove,
    /// A leaf edge hanging on another edge: both are removed.
    LeafEdgePair,
    /// A leaf edge hanging on a cycle: the leaf and its articulation are
    /// removed and the cycle shortens by one.
    PendantOnCycle,
    /// An isolated elementary block is guarded directly.
    ElementaryFinish,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub kind: StepKind,
    /// Original vertices that leave the graph in this step, ascending.
    pub removed_vertices: Vec<Vertex>,
    /// Vertex the removed part was attached to, when it survives the step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<Vertex>,
    pub guard_increment: usize,
    /// Cycle length before a leaf-cycle step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle_length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elementary: Option<ElementaryKind>,
}

impl ReductionStep {
    /// The increment prescribed for this kind of step.
    pub fn expected_increment(&self) -> Option<usize> {
        match self.kind {
            StepKind::LeafCycleShrink => self.cycle_length.map(|l| l.div_ceil(3) - 1),
            StepKind::LeafCycleRemove => self.cycle_length.map(|l| (l - 1) / 3),
            StepKind::LeafEdgePair | StepKind::PendantOnCycle => Some(1),
            StepKind::ElementaryFinish => self.elementary.map(elementary_value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub total: usize,
    pub input_n: usize,
}

impl ReductionTrace {
    /// Problems with the trace's internal consistency: increments that do not
    /// sum to the total or disagree with their kind, and removed vertices that
    /// do not partition `0..input_n`.
    pub fn check(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let sum: usize = self.steps.iter().map(|s| s.guard_increment).sum();
        if sum != self.total {
            problems.push(format!("increments sum to {sum}, total is {}", self.total));
        }
        let mut seen = vec![false; self.input_n];
        for (i, s) in self.steps.iter().enumerate() {
            if s.expected_increment() != Some(s.guard_increment) {
                problems.push(format!("step {i}: increment {} does not match {:?}", s.guard_increment, s.kind));
            }
            for &v in &s.removed_vertices {
                match seen.get_mut(v) {
                    Some(flag) if !*flag => *flag = true,
                    Some(_) => problems.push(format!("vertex {v} removed twice")),
                    None => problems.push(format!("vertex {v} out of range")),
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            problems.push(format!("vertex {v} never removed"));
        }
        problems
    }
}

/// Order in which pending leaf blocks are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LeafOrder {
    /// Most recently discovered leaf first.
    #[default]
    Lifo,
    /// Oldest pending leaf first.
    Fifo,
}

struct Counters<'a> {
    g: &'a Graph,
    bc: &'a BlockCutTree,
    size: Vec<usize>,
    deg: Vec<usize>,
    block_alive: Vec<bool>,
    art_alive: Vec<bool>,
    vertex_gone: Vec<bool>,
    pending: VecDeque<BlockId>,
    order: LeafOrder,
    total: usize,
    steps: Option<Vec<ReductionStep>>,
}

impl Counters<'_> {
    fn push(&mut self, b: BlockId) {
        self.pending.push_back(b);
    }

    fn pop(&mut self) -> Option<BlockId> {
        match self.order {
            LeafOrder::Lifo => self.pending.pop_back(),
            LeafOrder::Fifo => self.pending.pop_front(),
        }
    }

    /// The only live articulation index of `b` (requires `deg(b) == 1`).
    fn articulation_of(&self, b: BlockId) -> usize {
        *self
            .bc
            .block_articulations(b)
            .iter()
            .find(|&&a| self.art_alive[a])
            .expect("leaf block keeps one articulation")
    }

    fn other_block(&self, a: usize, b: BlockId) -> BlockId {
        *self
            .bc
            .articulation_blocks(a)
            .iter()
            .find(|&&x| x != b)
            .expect("articulation joins two blocks")
    }

    fn in_block(&self, v: Vertex, b: BlockId) -> bool {
        self.bc.blocks_of(v).contains(&b)
    }

    /// Live original members of `b`, optionally skipping one vertex; marks them gone.
    fn take_members(&mut self, b: BlockId, keep: Option<Vertex>) -> Vec<Vertex> {
        if self.steps.is_none() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for &v in self.bc.members(b) {
            if Some(v) != keep && !self.vertex_gone[v] {
                self.vertex_gone[v] = true;
                out.push(v);
            }
        }
        out
    }

    fn record(&mut self, step: ReductionStep) {
        self.total += step.guard_increment;
        if let Some(steps) = self.steps.as_mut() {
            steps.push(step);
        }
    }

    fn finish(&mut self, b: BlockId, removed: Vec<Vertex>, size: usize) {
        let kind = match size {
            0 | 1 => ElementaryKind::SingleVertex,
            2 => ElementaryKind::SingleEdge,
            s => ElementaryKind::Cycle(s),
        };
        self.block_alive[b] = false;
        self.record(ReductionStep {
            kind: StepKind::ElementaryFinish,
            removed_vertices: removed,
            anchor: None,
            guard_increment: size.div_ceil(3).max(1),
            cycle_length: None,
            elementary: Some(kind),
        });
    }

    /// Erases leaf block `v` together with its articulation; the neighbouring
    /// block becomes a leaf candidate. Returns that neighbour.
    fn detach(&mut self, v: BlockId) -> BlockId {
        let a = self.articulation_of(v);
        let u = self.other_block(a, v);
        self.block_alive[v] = false;
        self.art_alive[a] = false;
        self.deg[v] -= 1;
        self.deg[u] -= 1;
        if self.deg[u] <= 1 {
            self.push(u);
        }
        u
    }

    fn step(&mut self, v: BlockId) {
        if self.deg[v] == 0 {
            let removed = self.take_members(v, None);
            self.finish(v, removed, self.size[v]);
            return;
        }
        let a = self.articulation_of(v);
        let av = self.bc.articulations[a];
        let u = self.other_block(a, v);
        let s = self.size[v];
        if s >= 3 {
            if s % 3 != 1 {
                let removed = self.take_members(v, Some(av));
                self.size[v] = 2;
                self.push(v);
                self.record(ReductionStep {
                    kind: StepKind::LeafCycleShrink,
                    removed_vertices: removed,
                    anchor: Some(av),
                    guard_increment: s.div_ceil(3) - 1,
                    cycle_length: Some(s),
                    elementary: None,
                });
            } else {
                let removed = self.take_members(v, Some(av));
                self.detach(v);
                self.record(ReductionStep {
                    kind: StepKind::LeafCycleRemove,
                    removed_vertices: removed,
                    anchor: Some(av),
                    guard_increment: (s - 1) / 3,
                    cycle_length: Some(s),
                    elementary: None,
                });
            }
            return;
        }
        // leaf edge: its articulation leaves the graph with it
        let removed = self.take_members(v, None);
        if self.size[u] == 2 {
            self.detach(v);
            let mut finish = None;
            let anchor = if self.deg[u] == 0 {
                self.block_alive[u] = false;
                finish = Some(self.take_members(u, None));
                None
            } else {
                let b = self.bc.articulations[self.articulation_of(u)];
                self.detach(u);
                Some(b)
            };
            self.record(ReductionStep {
                kind: StepKind::LeafEdgePair,
                removed_vertices: removed,
                anchor: anchor.filter(|&b| self.steps.is_some() && !self.vertex_gone[b]),
                guard_increment: 1,
                cycle_length: None,
                elementary: None,
            });
            if let Some(rest) = finish {
                self.finish(u, rest, 1);
            }
        } else {
            self.detach(v);
            self.size[u] -= 1;
            let anchor = if self.steps.is_some() {
                self.g
                    .neighbors(av)
                    .iter()
                    .copied()
                    .find(|&w| !self.vertex_gone[w] && self.in_block(w, u))
            } else {
                None
            };
            self.record(ReductionStep {
                kind: StepKind::PendantOnCycle,
                removed_vertices: removed,
                anchor,
                guard_increment: 1,
                cycle_length: None,
                elementary: None,
            });
        }
    }
}

fn run(g: &Graph, order: LeafOrder, with_trace: bool) -> Result<(usize, Option<Vec<ReductionStep>>), ReductionError> {
    let bc = block_cut_tree(g)?;
    let class = classify_with(g, &bc);
    if !class.is_christmas_cactus() {
        return Err(ReductionError::NotChristmasCactus {
            kind: class.kind,
            witness: class.witness,
        });
    }
    let nb = bc.blocks.len();
    let mut c = Counters {
        g,
        bc: &bc,
        size: bc.blocks.iter().map(|b| b.size()).collect(),
        deg: (0..nb).map(|b| bc.deg(b)).collect(),
        block_alive: vec![true; nb],
        art_alive: vec![true; bc.articulations.len()],
        vertex_gone: if with_trace { vec![false; g.n()] } else { Vec::new() },
        pending: VecDeque::with_capacity(nb),
        order,
        total: 0,
        steps: with_trace.then(Vec::new),
    };
    for b in leaf_blocks(&bc) {
        c.push(b);
    }
    while let Some(v) = c.pop() {
        if c.block_alive[v] {
            c.step(v);
        }
    }
    Ok((c.total, c.steps))
}

/// Optimal number of guards of a Christmas cactus (equal for all three game
/// variants).
pub fn meden(g: &Graph) -> Result<usize, ReductionError> {
    Ok(run(g, LeafOrder::Lifo, false)?.0)
}

/// [`meden`] together with the steps taken.
pub fn meden_with_trace(g: &Graph) -> Result<(usize, ReductionTrace), ReductionError> {
    meden_with_order(g, LeafOrder::Lifo)
}

pub fn meden_with_order(g: &Graph, order: LeafOrder) -> Result<(usize, ReductionTrace), ReductionError> {
    let (total, steps) = run(g, order, true)?;
    let trace = ReductionTrace {
        steps: steps.unwrap_or_default(),
        total,
        input_n: g.n(),
    };
    Ok((total, trace))
}
