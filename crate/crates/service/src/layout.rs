//! Radial drawing hint built on the block-cut tree.

use std::collections::VecDeque;
use std::f64::consts::PI;

use meden_core::{block_cut_tree, BlockCutTree, Graph, Vertex};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

/// Coordinates in the unit square. The most central block sits in the
/// middle and every other block hangs outward from its parent articulation,
/// cycles drawn as regular polygons with unit edges. Disconnected graphs get
/// a circle.
pub fn radial_layout(g: &Graph) -> Vec<Point> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let Ok(bc) = block_cut_tree(g) else {
        return circle(n);
    };
    let mut pos = vec![(0.0f64, 0.0f64); n];
    let mut placed = vec![false; n];
    let mut done = vec![false; bc.blocks.len()];
    let root = central_block(&bc);

    // (block, anchor vertex, direction, wedge)
    let mut queue = VecDeque::from([(root, None::<Vertex>, 0.0f64, 2.0 * PI)]);
    while let Some((b, anchor, dir, wedge)) = queue.pop_front() {
        done[b] = true;
        let order = block_order(g, &bc, b, anchor);
        let s = order.len();
        let origin = anchor.map_or((0.0, 0.0), |a| pos[a]);
        let center = if s >= 3 {
            let r = 1.0 / (2.0 * (PI / s as f64).sin());
            let center = match anchor {
                Some(_) => (origin.0 + r * dir.cos(), origin.1 + r * dir.sin()),
                None => origin,
            };
            for (i, &v) in order.iter().enumerate() {
                let t = dir + PI + 2.0 * PI * i as f64 / s as f64;
                if !placed[v] {
                    pos[v] = (center.0 + r * t.cos(), center.1 + r * t.sin());
                    placed[v] = true;
                }
            }
            center
        } else {
            match (anchor, order.as_slice()) {
                (_, [v]) => placed[*v] = true,
                (None, [u, v]) => {
                    pos[*u] = (-0.5, 0.0);
                    pos[*v] = (0.5, 0.0);
                    placed[*u] = true;
                    placed[*v] = true;
                }
                (Some(a), [_, v]) => {
                    pos[*v] = (pos[a].0 + dir.cos(), pos[a].1 + dir.sin());
                    placed[*v] = true;
                }
                _ => {}
            }
            origin
        };
        for &v in &order {
            if Some(v) == anchor || !bc.is_articulation(v) {
                continue;
            }
            let children: Vec<usize> = bc.blocks_of(v).iter().copied().filter(|&c| !done[c]).collect();
            if children.is_empty() {
                continue;
            }
            let away = if s >= 3 || anchor.is_none() {
                (pos[v].1 - center.1).atan2(pos[v].0 - center.0)
            } else {
                dir
            };
            let spread = (wedge.min(2.0 * PI / 3.0)) / children.len() as f64;
            for (k, &c) in children.iter().enumerate() {
                done[c] = true;
                let offset = (k as f64 - (children.len() - 1) as f64 / 2.0) * spread;
                queue.push_back((c, Some(v), away + offset, spread));
            }
        }
    }
    normalize(&pos)
}

fn circle(n: usize) -> Vec<Point> {
    let pos: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect();
    normalize(&pos)
}

/// Members of `b` in walking order starting at `start` (a cycle is walked
/// along its edges).
fn block_order(g: &Graph, bc: &BlockCutTree, b: usize, start: Option<Vertex>) -> Vec<Vertex> {
    let members = bc.members(b);
    let first = start.unwrap_or(members[0]);
    if members.len() < 3 {
        let mut out = vec![first];
        out.extend(members.iter().copied().filter(|&v| v != first));
        return out;
    }
    let inside = |v: &Vertex| members.binary_search(v).is_ok();
    let mut order = vec![first];
    let (mut prev, mut cur) = (first, *g.neighbors(first).iter().find(|w| inside(w)).unwrap());
    while cur != first && order.len() < members.len() {
        order.push(cur);
        let next = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| w != prev && inside(&w))
            .unwrap_or(&first);
        prev = cur;
        cur = next;
    }
    order
}

/// A block at the centre of the block-cut tree, found by peeling leaves.
fn central_block(bc: &BlockCutTree) -> usize {
    let nb = bc.blocks.len();
    let mut deg: Vec<usize> = (0..nb).map(|b| bc.deg(b)).collect();
    let mut art_deg: Vec<usize> = (0..bc.articulations.len()).map(|a| bc.articulation_blocks(a).len()).collect();
    let mut alive = nb;
    let mut layer: Vec<usize> = (0..nb).filter(|&b| deg[b] <= 1).collect();
    let mut last = layer.clone();
    while alive > layer.len() && !layer.is_empty() {
        alive -= layer.len();
        let mut next = Vec::new();
        for &b in &layer {
            deg[b] = 0;
            for &a in bc.block_articulations(b) {
                art_deg[a] -= 1;
                if art_deg[a] == 1 {
                    // the articulation now hangs on one remaining block
                    for &c in bc.articulation_blocks(a) {
                        if deg[c] > 0 {
                            deg[c] -= 1;
                            if deg[c] == 1 {
                                next.push(c);
                            }
                        }
                    }
                }
            }
        }
        last = layer;
        layer = next;
    }
    layer.first().or(last.first()).copied().unwrap_or(0)
}

fn normalize(pos: &[(f64, f64)]) -> Vec<Point> {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in pos {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let margin = 0.05;
    let scale = (1.0 - 2.0 * margin) / span;
    let (cx, cy) = ((x1 - x0) * scale / 2.0, (y1 - y0) * scale / 2.0);
    pos.iter()
        .map(|&(x, y)| Point {
            x: 0.5 - cx + (x - x0) * scale,
            y: 0.5 - cy + (y - y0) * scale,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use meden_core::families;

    fn inside_unit_square(p: &[Point]) -> bool {
        p.iter().all(|q| (0.0..=1.0).contains(&q.x) && (0.0..=1.0).contains(&q.y))
    }

    #[test]
    fn one_point_per_vertex() {
        for g in [families::single_vertex(), families::path(2), families::cycle(6), families::bull(), families::star(5)] {
            let p = radial_layout(&g);
            assert_eq!(p.len(), g.n());
            assert!(inside_unit_square(&p));
        }
    }

    #[test]
    fn cycle_is_a_regular_polygon() {
        let p = radial_layout(&families::cycle(6));
        let d = |a: usize, b: usize| ((p[a].x - p[b].x).powi(2) + (p[a].y - p[b].y).powi(2)).sqrt();
        for i in 0..6 {
            assert!((d(i, (i + 1) % 6) - d(0, 1)).abs() < 1e-9);
        }
    }

    #[test]
    fn vertices_are_distinct_on_a_chain_of_cycles() {
        let g = meden_core::generate::generate(&meden_core::generate::GeneratorSpec { n: 60, seed: 4, ..Default::default() })
            .unwrap();
        let p = radial_layout(&g);
        for a in 0..g.n() {
            for b in a + 1..g.n() {
                assert!((p[a].x - p[b].x).abs() + (p[a].y - p[b].y).abs() > 1e-6, "{a} {b}");
            }
        }
    }

    #[test]
    fn disconnected_graph_gets_a_circle() {
        let g = Graph::new(4, [(0, 1)]).unwrap();
        assert_eq!(radial_layout(&g).len(), 4);
    }
}
