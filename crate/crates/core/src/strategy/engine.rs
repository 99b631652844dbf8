//! The defender engine: one gadget per reduction, outermost first, around a
//! strategy for the elementary graph that remains.
//!
//! Every vertex id (original or created by a cycle shrink) is owned by the
//! gadget that removes it, or by the core. Its owner keeps one bit saying
//! whether the owner's local configuration holds a guard there. What a layer
//! sees at a vertex can differ from that bit: a cycle shrink adds its cycle
//! guard at the articulation, a 3-pan in its alias state shows the guard of
//! `y` on `x`, and a shrink's new leaf does not exist outside. These
//! adjustments are the touches of a vertex; a view at layer `j` applies the
//! touches of layers `>= j`, innermost first.
//!
//! An attack walks inward. Each gadget either answers it locally, possibly
//! sending a simulated attack to the next layer, or forwards it and settles
//! its own guards once the inner layers have answered.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::game::{check_attack, cycle_edges, Attack, Configuration, GameVariant};
use crate::graph::{Graph, Vertex};
use crate::reduction::{elementary_value, meden_with_trace, ElementaryKind, Reduction, ReductionError, ReductionTrace};
use crate::reduction::WorkGraph;

use super::cycle::{self, CycleAttack};
use super::tables::{label_vertices, table_for, Table};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("trace does not match the graph: {0}")]
    TraceMismatch(String),
    #[error("malformed attack {attack}: {reason}")]
    Malformed { attack: Attack, reason: String },
    #[error("no gadget handles {attack} at layer {layer}")]
    Unroutable { layer: usize, attack: Attack },
}

/// One layer of the engine. Vertex ids are work-graph ids: original vertices
/// keep their number, leaves created by cycle shrinks come after them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Gadget {
    /// A private guard on `{leaf, middle}`.
    LeafEdge { leaf: Vertex, middle: Vertex, anchor: Vertex },
    /// A guard on `{leaf, hub}`; when it stands on the leaf, neither `left`
    /// nor `right` is guarded inside.
    Pendant { leaf: Vertex, hub: Vertex, left: Vertex, right: Vertex },
    /// One guard on `{x, x_leaf}`, one on `{y, y_leaf}`.
    Bull { hub: Vertex, x: Vertex, y: Vertex, x_leaf: Vertex, y_leaf: Vertex },
    /// One guard on `{x, x_leaf}`; in the alias state it stands on `x_leaf`
    /// while the inner guard of `y` stands on `x`.
    Pan { hub: Vertex, x: Vertex, x_leaf: Vertex, y: Vertex },
    /// A cycle strategy on `cycle[1..]` closed by a chord; the articulation
    /// `cycle[0]` is guarded inside or both chord ends are free.
    CycleRemove { cycle: Vec<Vertex> },
    /// A cycle strategy on the whole cycle; the inner leaf `leaf` on
    /// `cycle[0]` is guarded exactly when the cycle strategy leaves
    /// `cycle[0]` free.
    CycleShrink { cycle: Vec<Vertex>, leaf: Vertex },
}

impl Gadget {
    fn new(r: Reduction, new_leaf: Option<Vertex>) -> Gadget {
        match r {
            Reduction::LeafCycleShrink { cycle } => Gadget::CycleShrink {
                cycle,
                leaf: new_leaf.expect("a shrink creates a leaf"),
            },
            Reduction::LeafCycleRemove { cycle } => Gadget::CycleRemove { cycle },
            Reduction::LeafEdge { leaf, middle, anchor } => Gadget::LeafEdge { leaf, middle, anchor },
            Reduction::LongCyclePendant { leaf, hub, left, right } => Gadget::Pendant { leaf, hub, left, right },
            Reduction::LeafBull { hub, x, y, x_leaf, y_leaf } => Gadget::Bull { hub, x, y, x_leaf, y_leaf },
            Reduction::LeafPan { hub, x, x_leaf, y } => Gadget::Pan { hub, x, x_leaf, y },
        }
    }

    /// Owned vertices with their cycle slot (0 outside cycles).
    fn owned(&self) -> Vec<(Vertex, usize)> {
        match self {
            &Gadget::LeafEdge { leaf, middle, .. } => vec![(leaf, 0), (middle, 0)],
            &Gadget::Pendant { leaf, hub, .. } => vec![(leaf, 0), (hub, 0)],
            &Gadget::Bull { x, y, x_leaf, y_leaf, .. } => vec![(x, 0), (y, 0), (x_leaf, 0), (y_leaf, 0)],
            &Gadget::Pan { x, x_leaf, .. } => vec![(x, 0), (x_leaf, 0)],
            Gadget::CycleRemove { cycle } => cycle[1..].iter().enumerate().map(|(k, &w)| (w, k)).collect(),
            Gadget::CycleShrink { cycle, .. } => cycle.iter().enumerate().skip(1).map(|(k, &w)| (w, k)).collect(),
        }
    }

    /// Guards this layer adds on top of the inner strategy.
    pub fn increment(&self) -> usize {
        match self {
            Gadget::Bull { .. } => 2,
            Gadget::CycleRemove { cycle } => (cycle.len() - 1) / 3,
            Gadget::CycleShrink { cycle, .. } => cycle.len().div_ceil(3) - 1,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Touch {
    /// Guarded when the layer flag is set (shrink articulation, pan alias target).
    Add,
    /// Hidden when the layer flag is set (pan alias source).
    Hide,
    /// Never visible outside (a shrink's new leaf).
    Drop,
}

#[derive(Debug)]
enum Core {
    Table {
        table: &'static Table,
        labels: Vec<Vertex>,
        attacks: Vec<Attack>,
    },
    Cycle {
        ids: Vec<Vertex>,
    },
}

/// Everything that changes while the game is played.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EngineState {
    held: Vec<bool>,
    flag: Vec<bool>,
    core: usize,
}

#[derive(Debug)]
struct Layout {
    owner: Vec<usize>,
    slot: Vec<usize>,
    touches: Vec<Vec<(usize, Touch)>>,
}

impl Layout {
    fn view(&self, state: &EngineState, layer: usize, w: Vertex) -> bool {
        let mut b = state.held[w];
        for &(l, t) in &self.touches[w] {
            if l < layer {
                break;
            }
            let f = state.flag[l];
            b = match t {
                Touch::Add => b || f,
                Touch::Hide => b && !f,
                Touch::Drop => false,
            };
        }
        b
    }
}

struct Ctx<'a> {
    state: &'a mut EngineState,
    layout: &'a Layout,
    dirty: &'a mut Vec<Vertex>,
}

impl Ctx<'_> {
    fn view(&self, layer: usize, w: Vertex) -> bool {
        self.layout.view(self.state, layer, w)
    }

    fn held(&self, w: Vertex) -> bool {
        self.state.held[w]
    }

    fn set(&mut self, w: Vertex, b: bool) {
        if self.state.held[w] != b {
            self.state.held[w] = b;
            self.dirty.push(w);
        }
    }

    fn set_flag(&mut self, layer: usize, b: bool, seen_at: &[Vertex]) {
        if self.state.flag[layer] != b {
            self.state.flag[layer] = b;
            self.dirty.extend_from_slice(seen_at);
        }
    }

    fn satisfied(&self, layer: usize, a: Attack) -> bool {
        match a {
            Attack::Vertex(v) => self.view(layer, v),
            Attack::EvictVertex(v) => !self.view(layer, v),
            Attack::EvictEdge(u, v) => !self.view(layer, u) && !self.view(layer, v),
        }
    }

    fn owned(&self, layer: usize, a: Attack) -> bool {
        a.vertices().all(|w| self.layout.owner[w] == layer)
    }

    /// Occupancy of a cycle; with `flag_slot` the first slot is the layer flag.
    fn gather(&self, layer: usize, ids: &[Vertex], flag_slot: bool) -> Vec<bool> {
        ids.iter()
            .enumerate()
            .map(|(k, &w)| if k == 0 && flag_slot { self.state.flag[layer] } else { self.held(w) })
            .collect()
    }

    fn cycle_move(&mut self, layer: usize, ids: &[Vertex], flag_slot: bool, attack: CycleAttack) {
        let mut occ = self.gather(layer, ids, flag_slot);
        cycle::respond(&mut occ, ids, attack);
        for (k, &w) in ids.iter().enumerate() {
            if k == 0 && flag_slot {
                self.set_flag(layer, occ[0], &[w]);
            } else {
                self.set(w, occ[k]);
            }
        }
    }

    /// `a` in slots of a cycle whose first slot may be an unowned articulation.
    fn local(&self, a: Attack, len: usize, hub: Option<Vertex>) -> Option<CycleAttack> {
        let slot = |w: Vertex| if Some(w) == hub { 0 } else { self.layout.slot[w] };
        Some(match a {
            Attack::Vertex(w) => CycleAttack::Vertex(slot(w)),
            Attack::EvictVertex(w) => CycleAttack::EvictVertex(slot(w)),
            Attack::EvictEdge(u, w) => CycleAttack::EvictEdge(cycle::edge_slot(len, slot(u), slot(w))?),
        })
    }
}

/// Handles `a` at layer `i`. Returns the attack for layer `i + 1` and whether
/// the gadget must settle after the inner layers answered.
fn descend(gadget: &Gadget, i: usize, a: Attack, cx: &mut Ctx) -> (Option<Attack>, bool) {
    let inner = i + 1;
    match *gadget {
        Gadget::LeafEdge { leaf, middle, .. } => {
            let target = match a {
                Attack::Vertex(w) if w == leaf || w == middle => w,
                Attack::EvictVertex(w) if w == leaf => middle,
                Attack::EvictVertex(w) if w == middle => leaf,
                _ => return (Some(a), false),
            };
            cx.set(leaf, target == leaf);
            cx.set(middle, target == middle);
            (None, false)
        }
        Gadget::Pendant { leaf, hub, left, right } => {
            let to_leaf = match a {
                Attack::Vertex(w) => w == leaf,
                Attack::EvictVertex(w) => w == hub,
                Attack::EvictEdge(u, w) => u == hub || w == hub,
            };
            let to_hub = matches!(a, Attack::Vertex(w) if w == hub) || matches!(a, Attack::EvictVertex(w) if w == leaf);
            if to_leaf {
                cx.set(hub, false);
                cx.set(leaf, true);
                let busy = cx.view(inner, left) || cx.view(inner, right);
                (busy.then(|| Attack::EvictEdge(left, right).normalized()), false)
            } else if to_hub {
                cx.set(leaf, false);
                cx.set(hub, true);
                (None, false)
            } else {
                (Some(a), true)
            }
        }
        Gadget::Bull { hub, x, y, x_leaf, y_leaf } => {
            let side = |w: Vertex| {
                if w == x || w == x_leaf {
                    Some((x, x_leaf))
                } else if w == y || w == y_leaf {
                    Some((y, y_leaf))
                } else {
                    None
                }
            };
            let place = |cx: &mut Ctx, w: Vertex, on: bool| {
                let (inside, leaf) = side(w).expect("bull vertex");
                let target = if on { w } else if w == inside { leaf } else { inside };
                cx.set(inside, target == inside);
                cx.set(leaf, target == leaf);
            };
            match a {
                Attack::Vertex(w) if side(w).is_some() => place(cx, w, true),
                Attack::EvictVertex(w) if side(w).is_some() => place(cx, w, false),
                Attack::EvictEdge(u, w) if side(u).is_some() && side(w).is_some() => {
                    place(cx, x, false);
                    place(cx, y, false);
                }
                Attack::EvictEdge(u, w) if (u == hub && side(w).is_some()) || (w == hub && side(u).is_some()) => {
                    let other = if u == hub { w } else { u };
                    place(cx, other, false);
                    return (cx.view(inner, hub).then_some(Attack::EvictVertex(hub)), false);
                }
                _ => return (Some(a), false),
            }
            (None, false)
        }
        Gadget::Pan { hub, x, x_leaf, y } => {
            let aliased = cx.state.flag[i];
            let seen = [x, y];
            let put = |cx: &mut Ctx, on_x: bool| {
                cx.set(x, on_x);
                cx.set(x_leaf, !on_x);
            };
            let edge = |u: Vertex, w: Vertex, p: Vertex, q: Vertex| (u == p && w == q) || (u == q && w == p);
            match a {
                Attack::Vertex(w) if w == x => put(cx, true),
                Attack::Vertex(w) if w == x_leaf => put(cx, false),
                Attack::EvictVertex(w) if w == x_leaf => {
                    cx.set_flag(i, false, &seen);
                    put(cx, true);
                }
                Attack::EvictVertex(w) if w == x => {
                    cx.set_flag(i, false, &seen);
                    put(cx, false);
                }
                Attack::Vertex(w) if w == y && aliased => cx.set_flag(i, false, &seen),
                Attack::EvictEdge(u, w) if edge(u, w, x, y) => {
                    put(cx, false);
                    cx.set_flag(i, false, &seen);
                    return (cx.view(inner, y).then_some(Attack::EvictVertex(y)), false);
                }
                Attack::EvictEdge(u, w) if edge(u, w, x, hub) => {
                    put(cx, false);
                    cx.set_flag(i, false, &seen);
                    return (cx.view(inner, hub).then_some(Attack::EvictVertex(hub)), false);
                }
                Attack::EvictEdge(u, w) if edge(u, w, hub, y) => {
                    // the guard forced onto y stands on x instead
                    put(cx, false);
                    cx.set_flag(i, true, &seen);
                    return (cx.view(inner, hub).then_some(Attack::EvictVertex(hub)), false);
                }
                _ => return (Some(a), true),
            }
            (None, false)
        }
        Gadget::CycleRemove { ref cycle } => {
            let v = cycle[0];
            let ids = &cycle[1..];
            let len = ids.len();
            let (first, last) = (ids[0], ids[len - 1]);
            let chord = CycleAttack::EvictEdge(len - 1);
            if let Attack::EvictEdge(p, q) = a {
                if (p == v && cx.layout.owner[q] == i) || (q == v && cx.layout.owner[p] == i) {
                    cx.cycle_move(i, ids, false, chord);
                    return (cx.view(inner, v).then_some(Attack::EvictVertex(v)), false);
                }
            }
            if cx.owned(i, a) {
                let Some(local) = cx.local(a, len, None) else {
                    return (Some(a), false);
                };
                cx.cycle_move(i, ids, false, local);
                let needs_hub = !cx.view(inner, v) && (cx.held(first) || cx.held(last));
                return (needs_hub.then_some(Attack::Vertex(v)), false);
            }
            (Some(a), true)
        }
        Gadget::CycleShrink { ref cycle, leaf } => {
            let v = cycle[0];
            let at_hub = matches!(a, Attack::EvictEdge(p, q)
                if (p == v && cx.layout.owner[q] == i) || (q == v && cx.layout.owner[p] == i));
            if at_hub || cx.owned(i, a) {
                let Some(local) = cx.local(a, cycle.len(), Some(v)) else {
                    return (Some(a), false);
                };
                cx.cycle_move(i, cycle, true, local);
                let on_hub = cx.state.flag[i];
                let leaf_held = cx.view(inner, leaf);
                let next = if at_hub {
                    cx.view(inner, v).then_some(Attack::EvictVertex(v))
                } else if on_hub && leaf_held {
                    Some(Attack::EvictVertex(leaf))
                } else if !on_hub && !leaf_held {
                    Some(Attack::EvictVertex(v))
                } else {
                    None
                };
                return (next, false);
            }
            (Some(a), true)
        }
    }
}

/// Settles layer `i` after its inner layers answered a forwarded attack.
fn ascend(gadget: &Gadget, i: usize, cx: &mut Ctx) {
    let inner = i + 1;
    match *gadget {
        Gadget::Pendant { leaf, hub, left, right } => {
            if cx.held(leaf) && (cx.view(inner, left) || cx.view(inner, right)) {
                cx.set(leaf, false);
                cx.set(hub, true);
            }
        }
        Gadget::Pan { x, y, .. } => {
            if cx.state.flag[i] && !cx.view(inner, y) {
                cx.set_flag(i, false, &[x, y]);
            }
        }
        Gadget::CycleRemove { ref cycle } => {
            let ids = &cycle[1..];
            let len = ids.len();
            if !cx.view(inner, cycle[0]) && (cx.held(ids[0]) || cx.held(ids[len - 1])) {
                cx.cycle_move(i, ids, false, CycleAttack::EvictEdge(len - 1));
            }
        }
        Gadget::CycleShrink { ref cycle, leaf } => {
            let leaf_held = cx.view(inner, leaf);
            let on_hub = cx.state.flag[i];
            if leaf_held && on_hub {
                cx.cycle_move(i, cycle, true, CycleAttack::EvictVertex(0));
            } else if !leaf_held && !on_hub {
                cx.cycle_move(i, cycle, true, CycleAttack::Vertex(0));
            }
        }
        _ => {}
    }
}

fn core_respond(core: &Core, a: Attack, cx: &mut Ctx) -> bool {
    match core {
        Core::Table { table, labels, attacks } => {
            let Some(k) = attacks.iter().position(|&b| b == a) else {
                return false;
            };
            let next = table.responses[cx.state.core][k];
            cx.state.core = next;
            for (label, &w) in labels.iter().enumerate() {
                cx.set(w, table.configs[next].contains(&label));
            }
            true
        }
        Core::Cycle { ids } => {
            if !a.vertices().all(|w| cx.layout.owner[w] == cx.state.flag.len()) {
                return false;
            }
            let Some(local) = cx.local(a, ids.len(), None) else {
                return false;
            };
            cx.cycle_move(usize::MAX, ids, false, local);
            true
        }
    }
}

/// A stateful defender for a Christmas cactus that uses exactly the optimal
/// number of guards and answers every attack of the eviction game.
#[derive(Debug)]
pub struct DefenderEngine {
    graph: Graph,
    gadgets: Vec<Gadget>,
    core: Core,
    core_kind: ElementaryKind,
    layout: Layout,
    guard_count: usize,
    state: EngineState,
    initial: EngineState,
    positions: BTreeSet<Vertex>,
    cycle_edges: Vec<(Vertex, Vertex)>,
}

impl DefenderEngine {
    /// Reduces `g` and builds the engine.
    pub fn for_graph(g: &Graph) -> Result<Self, StrategyError> {
        let (_, trace) = meden_with_trace(g)?;
        Self::synthesize(g, &trace)
    }

    /// Builds the engine for `g`, checking it against a trace of `g`. The
    /// gadgets follow the decision procedure on the explicit graph; the trace
    /// has to agree with it on the guard count.
    pub fn synthesize(g: &Graph, trace: &ReductionTrace) -> Result<Self, StrategyError> {
        if trace.input_n != g.n() {
            return Err(StrategyError::TraceMismatch(format!(
                "trace is for {} vertices, graph has {}",
                trace.input_n,
                g.n()
            )));
        }
        if let Some(problem) = trace.check().into_iter().next() {
            return Err(StrategyError::TraceMismatch(problem));
        }
        let engine = Self::build(g)?;
        if engine.guard_count != trace.total {
            return Err(StrategyError::TraceMismatch(format!(
                "trace total {} but the reductions need {} guards",
                trace.total, engine.guard_count
            )));
        }
        Ok(engine)
    }

    fn build(g: &Graph) -> Result<Self, StrategyError> {
        let mut work = WorkGraph::new(g);
        let mut gadgets = Vec::new();
        let core_kind = loop {
            match work.next_reduction() {
                Ok(r) => {
                    let new_leaf = work.apply(&r);
                    gadgets.push(Gadget::new(r, new_leaf));
                }
                Err(ReductionError::Elementary(kind)) => break kind,
                Err(e) => return Err(e.into()),
            }
        };
        let guard_count = gadgets.iter().map(Gadget::increment).sum::<usize>() + elementary_value(core_kind);
        let (core_graph, ids) = work.compact();
        let bound = work.id_bound();
        let core_layer = gadgets.len();

        let mut layout = Layout {
            owner: vec![usize::MAX; bound],
            slot: vec![0; bound],
            touches: vec![Vec::new(); bound],
        };
        for (i, gadget) in gadgets.iter().enumerate() {
            for (w, k) in gadget.owned() {
                layout.owner[w] = i;
                layout.slot[w] = k;
            }
        }
        for (i, gadget) in gadgets.iter().enumerate().rev() {
            match *gadget {
                Gadget::Pan { x, y, .. } => {
                    layout.touches[x].push((i, Touch::Add));
                    layout.touches[y].push((i, Touch::Hide));
                }
                Gadget::CycleShrink { ref cycle, leaf } => {
                    layout.touches[cycle[0]].push((i, Touch::Add));
                    layout.touches[leaf].push((i, Touch::Drop));
                }
                _ => {}
            }
        }
        for &w in &ids {
            layout.owner[w] = core_layer;
        }

        let mut state = EngineState {
            held: vec![false; bound],
            flag: vec![false; core_layer],
            core: 0,
        };
        let core = match core_kind {
            ElementaryKind::Cycle(len) => {
                let order: Vec<Vertex> = cycle_order(&core_graph).into_iter().map(|v| ids[v]).collect();
                debug_assert_eq!(order.len(), len);
                for (k, &w) in order.iter().enumerate() {
                    layout.slot[w] = k;
                }
                for (k, on) in cycle::initial(len, 0).into_iter().enumerate() {
                    state.held[order[k]] = on;
                }
                Core::Cycle { ids: order }
            }
            kind => {
                let table = table_for(kind).expect("table for every non-cycle elementary graph");
                let labels: Vec<Vertex> = label_vertices(kind, &core_graph)
                    .ok_or(ReductionError::Elementary(kind))?
                    .into_iter()
                    .map(|v| ids[v])
                    .collect();
                let attacks = table
                    .attacks()
                    .into_iter()
                    .map(|a| match a {
                        Attack::Vertex(v) => Attack::Vertex(labels[v]),
                        Attack::EvictVertex(v) => Attack::EvictVertex(labels[v]),
                        Attack::EvictEdge(u, v) => Attack::EvictEdge(labels[u], labels[v]).normalized(),
                    })
                    .collect();
                for &label in table.configs[0] {
                    state.held[labels[label]] = true;
                }
                Core::Table { table, labels, attacks }
            }
        };

        // gadgets from the inside out, each consistent with what it wraps
        for (i, gadget) in gadgets.iter().enumerate().rev() {
            let inner = i + 1;
            match *gadget {
                Gadget::LeafEdge { leaf, .. } => state.held[leaf] = true,
                Gadget::Pendant { hub, .. } => state.held[hub] = true,
                Gadget::Bull { x, y, .. } => {
                    state.held[x] = true;
                    state.held[y] = true;
                }
                Gadget::Pan { x, .. } => state.held[x] = true,
                Gadget::CycleRemove { ref cycle } => {
                    // chord ends start free
                    for (k, on) in cycle::initial(cycle.len() - 1, 1).into_iter().enumerate() {
                        state.held[cycle[k + 1]] = on;
                    }
                }
                Gadget::CycleShrink { ref cycle, leaf } => {
                    let offset = if layout.view(&state, inner, leaf) { 1 } else { 0 };
                    let occ = cycle::initial(cycle.len(), offset);
                    state.flag[i] = occ[0];
                    for (k, &w) in cycle.iter().enumerate().skip(1) {
                        state.held[w] = occ[k];
                    }
                }
            }
        }

        let positions = (0..g.n()).filter(|&w| layout.view(&state, 0, w)).collect();
        Ok(Self {
            graph: g.clone(),
            gadgets,
            core,
            core_kind,
            layout,
            guard_count,
            initial: state.clone(),
            state,
            positions,
            cycle_edges: cycle_edges(g),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn guard_count(&self) -> usize {
        self.guard_count
    }

    /// Gadgets from the outermost inward.
    pub fn gadgets(&self) -> &[Gadget] {
        &self.gadgets
    }

    pub fn core_kind(&self) -> ElementaryKind {
        self.core_kind
    }

    pub fn current(&self) -> Configuration {
        Configuration::new(self.positions.iter().copied().collect())
    }

    pub fn state(&self) -> &EngineState {
        &self.state
    }

    pub fn initial_configuration(&self) -> Configuration {
        let positions = (0..self.graph.n())
            .filter(|&w| self.layout.view(&self.initial, 0, w))
            .collect();
        Configuration::new(positions)
    }

    /// Back to the initial configuration.
    pub fn reset(&mut self) {
        self.restore(self.initial.clone());
    }

    /// Jumps to a state taken from an engine for the same graph.
    pub fn restore(&mut self, state: EngineState) {
        self.state = state;
        self.positions = (0..self.graph.n())
            .filter(|&w| self.layout.view(&self.state, 0, w))
            .collect();
    }

    /// Answers an attack of the eviction game on the engine's graph. A plain
    /// vertex attack is also a valid attack of the other two games.
    pub fn respond(&mut self, attack: Attack) -> Result<Configuration, StrategyError> {
        let attack = self.validate(attack)?;
        let mut dirty = Vec::new();
        let mut cx = Ctx {
            state: &mut self.state,
            layout: &self.layout,
            dirty: &mut dirty,
        };
        let mut settle = Vec::new();
        let mut next = Some(attack);
        let mut layer = 0;
        let mut failure = None;
        while let Some(a) = next {
            if cx.satisfied(layer, a) {
                break;
            }
            if layer == self.gadgets.len() {
                if !core_respond(&self.core, a, &mut cx) {
                    failure = Some(StrategyError::Unroutable { layer, attack: a });
                }
                break;
            }
            let (inner, after) = descend(&self.gadgets[layer], layer, a, &mut cx);
            if after {
                settle.push(layer);
            }
            next = inner;
            layer += 1;
        }
        for &l in settle.iter().rev() {
            ascend(&self.gadgets[l], l, &mut cx);
        }
        for w in dirty {
            if w < self.graph.n() {
                if self.layout.view(&self.state, 0, w) {
                    self.positions.insert(w);
                } else {
                    self.positions.remove(&w);
                }
            }
        }
        match failure {
            Some(e) => Err(e),
            None => Ok(self.current()),
        }
    }

    /// Same rules as [`check_attack`] for the eviction game, with the cycle
    /// edges looked up instead of recomputed.
    fn validate(&self, attack: Attack) -> Result<Attack, StrategyError> {
        let a = attack.normalized();
        let n = self.graph.n();
        let reason = match a {
            _ if a.vertices().any(|v| v >= n) => {
                check_attack(&self.graph, GameVariant::Ede, a).err().unwrap_or_default()
            }
            Attack::EvictVertex(_) if n < 2 => "cannot evict the only vertex".to_string(),
            Attack::EvictEdge(u, v) if self.cycle_edges.binary_search(&(u, v)).is_err() => {
                check_attack(&self.graph, GameVariant::Ede, a).err().unwrap_or_default()
            }
            _ => return Ok(a),
        };
        Err(StrategyError::Malformed { attack, reason })
    }

    /// Broken invariants of the current state, empty when all hold.
    pub fn check_invariants(&self) -> Vec<String> {
        let mut out = Vec::new();
        let st = &self.state;
        let view = |layer: usize, w: Vertex| self.layout.view(st, layer, w);
        let pos: Vec<Vertex> = self.positions.iter().copied().collect();
        if pos.len() != self.guard_count {
            out.push(format!("{} positions for {} guards", pos.len(), self.guard_count));
        }
        if !self.graph.is_dominating(&pos) {
            out.push("configuration does not dominate".into());
        }
        let one_of = |a: Vertex, b: Vertex| st.held[a] != st.held[b];
        for (i, gadget) in self.gadgets.iter().enumerate() {
            let inner = i + 1;
            let problem = match *gadget {
                Gadget::LeafEdge { leaf, middle, .. } => (!one_of(leaf, middle)).then(|| "private guard left its edge".to_string()),
                Gadget::Pendant { leaf, hub, left, right } => {
                    if !one_of(leaf, hub) {
                        Some("guard count on leaf and hub".into())
                    } else if st.held[leaf] && (view(inner, left) || view(inner, right)) {
                        Some("hub free while a chord end is guarded".into())
                    } else {
                        None
                    }
                }
                Gadget::Bull { x, y, x_leaf, y_leaf, .. } => {
                    (!one_of(x, x_leaf) || !one_of(y, y_leaf)).then(|| "bull edge without its guard".to_string())
                }
                Gadget::Pan { x, x_leaf, y, .. } => {
                    if !one_of(x, x_leaf) {
                        Some("pan edge without its guard".into())
                    } else if st.flag[i] && !(st.held[x_leaf] && view(inner, y)) {
                        Some("alias without a guard behind it".into())
                    } else {
                        None
                    }
                }
                Gadget::CycleRemove { ref cycle } => {
                    let occ: Vec<bool> = cycle[1..].iter().map(|&w| st.held[w]).collect();
                    let ends = occ[0] || occ[occ.len() - 1];
                    if occ.iter().filter(|&&b| b).count() != (cycle.len() - 1) / 3 || !cycle::dominates(&occ) {
                        Some("cycle strategy broken".into())
                    } else if ends && !view(inner, cycle[0]) {
                        Some("articulation free while a chord end is guarded".into())
                    } else {
                        None
                    }
                }
                Gadget::CycleShrink { ref cycle, leaf } => {
                    let mut occ: Vec<bool> = cycle.iter().map(|&w| st.held[w]).collect();
                    occ[0] = st.flag[i];
                    let n = cycle.len();
                    let pair = (view(inner, leaf) && (occ[1] || occ[n - 1])) || (view(inner, cycle[0]) && occ[0]);
                    if occ.iter().filter(|&&b| b).count() != n.div_ceil(3) || !cycle::dominates(&occ) {
                        Some("cycle strategy broken".into())
                    } else if view(inner, leaf) == occ[0] {
                        Some("new leaf and articulation disagree".into())
                    } else if !pair {
                        Some("no guard pair across the articulation".into())
                    } else {
                        None
                    }
                }
            };
            if let Some(p) = problem {
                out.push(format!("layer {i} ({}): {p}", gadget_name(gadget)));
            }
        }
        match &self.core {
            Core::Table { table, labels, .. } => {
                let expect = table.configs[st.core];
                if labels.iter().enumerate().any(|(l, &w)| st.held[w] != expect.contains(&l)) {
                    out.push("core leaves its table".into());
                }
            }
            Core::Cycle { ids } => {
                let occ: Vec<bool> = ids.iter().map(|&w| st.held[w]).collect();
                if occ.iter().filter(|&&b| b).count() != ids.len().div_ceil(3) || !cycle::dominates(&occ) {
                    out.push("core cycle strategy broken".into());
                }
            }
        }
        out
    }
}

fn gadget_name(g: &Gadget) -> &'static str {
    match g {
        Gadget::LeafEdge { .. } => "leaf edge",
        Gadget::Pendant { .. } => "pendant",
        Gadget::Bull { .. } => "bull",
        Gadget::Pan { .. } => "pan",
        Gadget::CycleRemove { .. } => "cycle remove",
        Gadget::CycleShrink { .. } => "cycle shrink",
    }
}

/// Vertices of a cycle graph from 0, stepping to the smaller neighbour first.
fn cycle_order(g: &Graph) -> Vec<Vertex> {
    let mut order = vec![0];
    let mut prev = 0;
    let mut cur = g.neighbors(0)[0];
    while cur != 0 {
        order.push(cur);
        let next = *g.neighbors(cur).iter().find(|&&w| w != prev).expect("cycle");
        prev = cur;
        cur = next;
    }
    order
}
