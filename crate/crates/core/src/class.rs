//! Recognition of cacti and Christmas cacti.

use serde::{Deserialize, Serialize};

use crate::blocks::{block_cut_tree, BlockCutTree};
use crate::graph::{Graph, GraphError, Vertex};

/// Graph classes ordered from weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassKind {
    GeneralGraph,
    Cactus,
    ChristmasCactus,
}

/// Why a graph failed a stronger class test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    /// An edge of a block that is neither a bridge nor a cycle; it lies on two cycles.
    Edge(Vertex, Vertex),
    /// A vertex contained in three or more blocks.
    Vertex(Vertex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphClass {
    pub kind: ClassKind,
    pub witness: Option<Witness>,
}

impl GraphClass {
    pub fn is_cactus(&self) -> bool {
        self.kind >= ClassKind::Cactus
    }

    pub fn is_christmas_cactus(&self) -> bool {
        self.kind == ClassKind::ChristmasCactus
    }
}

pub fn classify(g: &Graph) -> Result<GraphClass, GraphError> {
    let bc = block_cut_tree(g)?;
    Ok(classify_with(g, &bc))
}

/// Classification from an already built block-cut tree.
pub fn classify_with(g: &Graph, bc: &BlockCutTree) -> GraphClass {
    for (b, block) in bc.blocks.iter().enumerate() {
        let ok = block.size() <= 2 || block.is_cycle();
        if !ok {
            // a vertex of degree >= 3 inside the block exists; report one of its block edges
            let members = bc.members(b);
            let inside = |v: Vertex| members.binary_search(&v).is_ok();
            let hub = members
                .iter()
                .copied()
                .find(|&v| g.neighbors(v).iter().filter(|&&w| inside(w)).count() >= 3)
                .unwrap_or(members[0]);
            let other = g
                .neighbors(hub)
                .iter()
                .copied()
                .find(|&w| inside(w))
                .expect("block member has a neighbour in its block");
            return GraphClass {
                kind: ClassKind::GeneralGraph,
                witness: Some(Witness::Edge(hub.min(other), hub.max(other))),
            };
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| bc.blocks_of(v).len() >= 3) {
        return GraphClass {
            kind: ClassKind::Cactus,
            witness: Some(Witness::Vertex(v)),
        };
    }
    GraphClass {
        kind: ClassKind::ChristmasCactus,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    #[test]
    fn k4_is_general_with_edge_witness() {
        let c = classify(&families::complete(4)).unwrap();
        assert_eq!(c.kind, ClassKind::GeneralGraph);
        assert!(matches!(c.witness, Some(Witness::Edge(_, _))));
    }

    #[test]
    fn star_is_cactus_with_centre_witness() {
        let c = classify(&families::star(3)).unwrap();
        assert_eq!(c.kind, ClassKind::Cactus);
        assert_eq!(c.witness, Some(Witness::Vertex(0)));
        assert!(c.is_cactus() && !c.is_christmas_cactus());
    }

    #[test]
    fn bull_is_christmas_cactus() {
        let c = classify(&families::bull()).unwrap();
        assert_eq!(c.kind, ClassKind::ChristmasCactus);
        assert_eq!(c.witness, None);
    }

    #[test]
    fn small_families() {
        for g in [families::single_vertex(), families::path(2), families::cycle(7)] {
            assert!(classify(&g).unwrap().is_christmas_cactus());
        }
        // two triangles sharing a vertex plus a pendant there: centre in 3 blocks
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (0, 5)]).unwrap();
        assert_eq!(classify(&g).unwrap().witness, Some(Witness::Vertex(0)));
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(classify(&g), Err(GraphError::Disconnected));
    }
}
