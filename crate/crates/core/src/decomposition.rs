//! Splitting a cactus into Christmas cacti around its red vertices, and the
//! resulting upper bound on the guard count.
//!
//! A vertex is red when it lies in three or more blocks. Each connected group
//! of red vertices is contracted to one vertex; every connected black part of
//! the contracted graph, together with copies of its red neighbours, forms one
//! component.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blocks::block_cut_tree;
use crate::class::{classify, classify_with, ClassKind, Witness};
use crate::graph::{Graph, GraphError, Vertex};
use crate::reduction::{meden, ReductionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("not a cactus (witness {0:?})")]
    NotCactus(Option<Witness>),
    #[error("component {index} is not a Christmas cactus (class {kind:?}, witness {witness:?})")]
    ComponentNotChristmas {
        index: usize,
        kind: ClassKind,
        witness: Option<Witness>,
    },
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedColoring {
    pub red: Vec<bool>,
    /// Connected groups of red vertices, each ascending, ordered by smallest member.
    pub red_components: Vec<Vec<Vertex>>,
}

impl RedColoring {
    /// Number of red vertices.
    pub fn red_count(&self) -> usize {
        self.red_components.iter().map(Vec::len).sum()
    }

    /// Number of red groups.
    pub fn group_count(&self) -> usize {
        self.red_components.len()
    }
}

pub fn color_red(g: &Graph) -> Result<RedColoring, DecompositionError> {
    let bc = block_cut_tree(g)?;
    let class = classify_with(g, &bc);
    if !class.is_cactus() {
        return Err(DecompositionError::NotCactus(class.witness));
    }
    let red: Vec<bool> = (0..g.n()).map(|v| bc.blocks_of(v).len() >= 3).collect();
    let mut seen = vec![false; g.n()];
    let mut red_components = Vec::new();
    for s in 0..g.n() {
        if !red[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in g.neighbors(v) {
                if red[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        red_components.push(comp);
    }
    Ok(RedColoring { red, red_components })
}

/// The graph with every red group contracted to a single vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contracted {
    pub graph: Graph,
    /// Original vertex -> contracted vertex.
    pub map: Vec<Vertex>,
    /// Contracted vertex -> original vertices it stands for.
    pub members: Vec<Vec<Vertex>>,
    pub red: Vec<bool>,
}

pub fn contract_red_components(g: &Graph, c: &RedColoring) -> Contracted {
    let mut map = vec![usize::MAX; g.n()];
    let mut members: Vec<Vec<Vertex>> = Vec::new();
    let mut red = Vec::new();
    let mut group_of = vec![usize::MAX; g.n()];
    for (i, comp) in c.red_components.iter().enumerate() {
        for &v in comp {
            group_of[v] = i;
        }
    }
    for v in 0..g.n() {
        if map[v] != usize::MAX {
            continue;
        }
        let id = members.len();
        if group_of[v] != usize::MAX {
            let comp = &c.red_components[group_of[v]];
            for &w in comp {
                map[w] = id;
            }
            members.push(comp.clone());
            red.push(true);
        } else {
            map[v] = id;
            members.push(vec![v]);
            red.push(false);
        }
    }
    let mut edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .map(|(u, v)| (map[u].min(map[v]), map[u].max(map[v])))
        .filter(|(a, b)| a != b)
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let graph = Graph::new(members.len(), edges).expect("contraction keeps the graph simple");
    Contracted {
        graph,
        map,
        members,
        red,
    }
}

/// One Christmas cactus of the decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub graph: Graph,
    /// Local vertex -> contracted vertex.
    pub contracted: Vec<Vertex>,
    /// Local vertex -> an original vertex it stands for (the smallest member
    /// of a red group).
    pub original: Vec<Vertex>,
    pub red_copy: Vec<bool>,
}

impl Component {
    pub fn red_copies(&self) -> usize {
        self.red_copy.iter().filter(|&&r| r).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub coloring: RedColoring,
    pub contracted: Contracted,
    pub components: Vec<Component>,
}

/// Splits a cactus into Christmas cacti. Every component is checked; a
/// component of another class is reported, never passed on.
pub fn christmas_decomposition(g: &Graph) -> Result<Decomposition, DecompositionError> {
    let coloring = color_red(g)?;
    let contracted = contract_red_components(g, &coloring);
    let h = &contracted.graph;
    let n = h.n();
    let mut comp_of = vec![usize::MAX; n];
    let mut components = Vec::new();
    for s in 0..n {
        if contracted.red[s] || comp_of[s] != usize::MAX {
            continue;
        }
        let index = components.len();
        comp_of[s] = index;
        let mut black = vec![s];
        let mut i = 0;
        while i < black.len() {
            let v = black[i];
            i += 1;
            for &w in h.neighbors(v) {
                if !contracted.red[w] && comp_of[w] == usize::MAX {
                    comp_of[w] = index;
                    black.push(w);
                }
            }
        }
        let mut verts = black.clone();
        for &v in &black {
            verts.extend(h.neighbors(v).iter().copied().filter(|&w| contracted.red[w]));
        }
        verts.sort_unstable();
        verts.dedup();
        let graph = h.induced(&verts);
        let class = classify(&graph)?;
        if !class.is_christmas_cactus() {
            return Err(DecompositionError::ComponentNotChristmas {
                index,
                kind: class.kind,
                witness: class.witness,
            });
        }
        components.push(Component {
            graph,
            original: verts.iter().map(|&v| contracted.members[v][0]).collect(),
            red_copy: verts.iter().map(|&v| contracted.red[v]).collect(),
            contracted: verts,
        });
    }
    Ok(Decomposition {
        coloring,
        contracted,
        components,
    })
}

/// Upper bound for a cactus: the sum over components of their optimal guard
/// count minus their red copies, plus the number of red vertices and of red
/// groups. Exact on Christmas cacti.
pub fn cactus_upper_bound(g: &Graph) -> Result<usize, DecompositionError> {
    let d = christmas_decomposition(g)?;
    // a component may carry more red copies than it needs guards
    let mut total = (d.coloring.red_count() + d.coloring.group_count()) as isize;
    for c in &d.components {
        total += meden(&c.graph)? as isize - c.red_copies() as isize;
    }
    Ok(total.max(0) as usize)
}

/// Several related graphs used as fixtures.
pub mod fixtures {
    use crate::graph::Graph;

    /// A cactus on 21 vertices with seven red vertices in three groups: a
    /// single red vertex, a red edge and a red path on four vertices, all
    /// hanging off one triangle.
    pub fn three_red_groups() -> Graph {
        Graph::new(
            21,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (3, 4),
                (4, 5),
                (3, 5),
                (5, 6),
                (6, 7),
                (6, 8),
                (6, 9),
                (7, 10),
                (7, 11),
                (4, 12),
                (12, 13),
                (13, 14),
                (14, 15),
                (12, 16),
                (13, 17),
                (14, 18),
                (15, 19),
                (15, 20),
            ],
        )
        .unwrap()
    }

    /// Two triangles joined by the path `2-6-7-3`; every path vertex carries
    /// a leaf, which makes the whole path red.
    pub fn triangles_on_red_path() -> Graph {
        Graph::new(
            12,
            [
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (2, 6),
                (6, 7),
                (7, 3),
                (6, 8),
                (7, 9),
                (2, 10),
                (3, 11),
            ],
        )
        .unwrap()
    }
}
