//! Fixed strategies for the small elementary graphs.
//!
//! Each table lists the configurations reachable from the first one and, for
//! every configuration, the index of the response to each attack in the order
//! of [`applicable_attacks`] for the eviction game on the labelled graph.

use crate::game::{applicable_attacks, Attack, GameVariant};
use crate::graph::{Graph, Vertex};
use crate::reduction::ElementaryKind;

#[derive(Debug)]
pub(crate) struct Table {
    pub n: usize,
    pub edges: &'static [(usize, usize)],
    pub configs: &'static [&'static [usize]],
    pub responses: &'static [&'static [usize]],
}

impl Table {
    pub fn graph(&self) -> Graph {
        Graph::new(self.n, self.edges.iter().copied()).expect("table graphs are simple")
    }

    pub fn attacks(&self) -> Vec<Attack> {
        applicable_attacks(&self.graph(), GameVariant::Ede)
    }

    #[cfg(test)]
    pub fn order(&self) -> usize {
        self.configs[0].len()
    }
}

pub(crate) static SINGLE_VERTEX: Table = Table {
    n: 1,
    edges: &[],
    configs: &[&[0]],
    responses: &[&[0]],
};

pub(crate) static SINGLE_EDGE: Table = Table {
    n: 2,
    edges: &[(0, 1)],
    configs: &[&[0], &[1]],
    responses: &[&[0, 1, 1, 0], &[0, 1, 1, 0]],
};

/// Path `0 - 1 - 2`.
pub(crate) static PATH_THREE: Table = Table {
    n: 3,
    edges: &[(0, 1), (1, 2)],
    configs: &[&[0, 2], &[0, 1], &[1, 2]],
    responses: &[&[0, 1, 0, 2, 0, 1], &[1, 1, 0, 2, 0, 1], &[1, 2, 2, 2, 0, 1]],
};

/// Triangle `0, 1, 2` with the leaf `3` on `1`.
pub(crate) static THREE_PAN: Table = Table {
    n: 4,
    edges: &[(0, 1), (0, 2), (1, 2), (1, 3)],
    configs: &[&[0, 1], &[1, 2], &[0, 3], &[2, 3], &[1, 3]],
    responses: &[
        &[0, 0, 1, 2, 1, 2, 0, 0, 3, 4, 2],
        &[0, 1, 1, 2, 1, 2, 0, 1, 3, 4, 2],
        &[2, 0, 1, 2, 1, 2, 2, 0, 3, 4, 2],
        &[0, 0, 3, 3, 3, 3, 0, 0, 3, 4, 2],
        &[0, 4, 1, 4, 4, 2, 4, 0, 3, 4, 2],
    ],
};

/// Triangle `0, 1, 2` with leaves `3` on `1` and `4` on `2`; `0` is the hub.
pub(crate) static BULL: Table = Table {
    n: 5,
    edges: &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)],
    configs: &[
        &[0, 1, 2],
        &[0, 2, 3],
        &[0, 1, 4],
        &[1, 2, 3],
        &[2, 3, 4],
        &[1, 3, 4],
        &[0, 3, 4],
    ],
    responses: &[
        &[0, 0, 0, 1, 2, 3, 1, 2, 0, 0, 4, 5, 6],
        &[1, 0, 1, 1, 2, 3, 1, 2, 0, 1, 4, 5, 6],
        &[2, 2, 0, 1, 2, 3, 1, 2, 2, 0, 4, 5, 6],
        &[0, 3, 3, 3, 2, 3, 1, 2, 0, 3, 4, 5, 6],
        &[0, 0, 4, 4, 4, 4, 4, 2, 0, 0, 4, 5, 6],
        &[0, 5, 0, 5, 5, 5, 1, 5, 0, 0, 4, 5, 6],
        &[6, 0, 0, 6, 6, 3, 6, 6, 0, 0, 4, 5, 6],
    ],
};

pub(crate) fn table_for(kind: ElementaryKind) -> Option<&'static Table> {
    match kind {
        ElementaryKind::SingleVertex => Some(&SINGLE_VERTEX),
        ElementaryKind::SingleEdge => Some(&SINGLE_EDGE),
        ElementaryKind::PathThreeVertices => Some(&PATH_THREE),
        ElementaryKind::ThreePan => Some(&THREE_PAN),
        ElementaryKind::Bull => Some(&BULL),
        ElementaryKind::Cycle(_) => None,
    }
}

/// Maps the table labels onto the vertices of `g`, an elementary graph of
/// the given kind: `labels[i]` is the vertex of `g` playing label `i`.
pub(crate) fn label_vertices(kind: ElementaryKind, g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.n();
    let with_degree = |d: usize| (0..n).filter(move |&v| g.degree(v) == d);
    let leaf_on = |v: Vertex| g.neighbors(v).iter().copied().find(|&w| g.degree(w) == 1);
    let labels = match kind {
        ElementaryKind::SingleVertex => vec![0],
        ElementaryKind::SingleEdge => vec![0, 1],
        ElementaryKind::PathThreeVertices => {
            let mid = with_degree(2).next()?;
            let ends: Vec<Vertex> = with_degree(1).collect();
            vec![ends[0], mid, *ends.get(1)?]
        }
        ElementaryKind::ThreePan => {
            let x = with_degree(3).next()?;
            let bare: Vec<Vertex> = with_degree(2).collect();
            vec![bare[0], x, *bare.get(1)?, leaf_on(x)?]
        }
        ElementaryKind::Bull => {
            let hub = with_degree(2).next()?;
            let xy: Vec<Vertex> = with_degree(3).collect();
            let (x, y) = (xy[0], *xy.get(1)?);
            vec![hub, x, y, leaf_on(x)?, leaf_on(y)?]
        }
        ElementaryKind::Cycle(_) => return None,
    };
    let table = table_for(kind)?;
    let mapped_ok = table.n == n
        && table.edges.len() == g.m()
        && table.edges.iter().all(|&(a, b)| g.has_edge(labels[a], labels[b]));
    mapped_ok.then_some(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Configuration;
    use crate::graph::families;
    use crate::oracle::{exact_number, solve_safety, traversable, OracleLimits};

    const ALL: [ElementaryKind; 5] = [
        ElementaryKind::SingleVertex,
        ElementaryKind::SingleEdge,
        ElementaryKind::PathThreeVertices,
        ElementaryKind::ThreePan,
        ElementaryKind::Bull,
    ];

    #[test]
    fn tables_are_winning_strategies() {
        for kind in ALL {
            let t = table_for(kind).unwrap();
            let g = t.graph();
            let attacks = t.attacks();
            assert_eq!(t.responses.len(), t.configs.len());
            assert_eq!(t.order(), crate::reduction::elementary_value(kind));
            assert_eq!(t.order(), exact_number(&g, GameVariant::Ede, &OracleLimits::default()).unwrap());
            for (i, row) in t.responses.iter().enumerate() {
                assert_eq!(row.len(), attacks.len());
                let from = t.configs[i];
                for (a, &j) in attacks.iter().zip(row.iter()) {
                    let to = t.configs[j];
                    assert!(g.is_dominating(to));
                    assert!(a.satisfied_by(to), "{kind}: {a} from {from:?} to {to:?}");
                    assert!(traversable(&g, &Configuration::new(from.to_vec()), &Configuration::new(to.to_vec())).unwrap());
                    assert!(!Configuration::new(to.to_vec()).has_duplicates());
                }
            }
        }
    }

    #[test]
    fn tables_stay_inside_oracle_winning_region() {
        for kind in ALL {
            let t = table_for(kind).unwrap();
            let g = t.graph();
            let w = solve_safety(&g, t.order(), GameVariant::Ede, &OracleLimits::default())
                .unwrap()
                .unwrap();
            for c in t.configs {
                assert!(w.index_of(&Configuration::new(c.to_vec())).is_some(), "{kind}: {c:?}");
            }
        }
    }

    #[test]
    fn tables_match_their_families() {
        assert_eq!(BULL.graph(), families::bull());
        assert_eq!(THREE_PAN.graph(), families::three_pan());
        assert_eq!(PATH_THREE.graph(), families::path(3));
    }

    #[test]
    fn labelling_relabelled_graphs() {
        let g = families::bull().relabel(&[4, 2, 0, 1, 3]);
        let labels = label_vertices(ElementaryKind::Bull, &g).unwrap();
        assert_eq!(g.degree(labels[0]), 2);
        assert!(g.has_edge(labels[1], labels[3]));
        let g = families::three_pan().relabel(&[3, 0, 2, 1]);
        assert!(label_vertices(ElementaryKind::ThreePan, &g).is_some());
        assert!(label_vertices(ElementaryKind::Bull, &families::three_pan()).is_none());
    }
}
