//! Random and exhaustive graph generation.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    /// Number of vertices.
    pub n: usize,
    /// Probability that a new block is a cycle.
    pub cycle_ratio: f64,
    /// Longest cycle allowed.
    pub max_cycle: usize,
    /// Keep every vertex in at most two blocks.
    pub christmas: bool,
    pub seed: u64,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        Self {
            n: 10,
            cycle_ratio: 0.5,
            max_cycle: 6,
            christmas: true,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("n must be at least 1")]
    Empty,
    #[error("cycle ratio {0} outside [0, 1]")]
    BadRatio(f64),
    #[error("cycles requested but max_cycle = {0} < 3")]
    NoCycleLength(usize),
}

/// Vertices still allowed to receive a block, with O(1) removal.
struct Eligible {
    list: Vec<Vertex>,
    pos: Vec<usize>,
}

impl Eligible {
    fn insert(&mut self, v: Vertex) {
        if self.pos.len() <= v {
            self.pos.resize(v + 1, usize::MAX);
        }
        self.pos[v] = self.list.len();
        self.list.push(v);
    }

    fn remove(&mut self, v: Vertex) {
        let i = self.pos[v];
        let last = *self.list.last().unwrap();
        self.list.swap_remove(i);
        if last != v {
            self.pos[last] = i;
        }
        self.pos[v] = usize::MAX;
    }
}

/// A connected cactus (a Christmas cactus when `spec.christmas`) built by
/// attaching edge and cycle blocks at random eligible vertices, labelled in
/// depth-first order.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph, GenerateError> {
    if spec.n == 0 {
        return Err(GenerateError::Empty);
    }
    if !(0.0..=1.0).contains(&spec.cycle_ratio) {
        return Err(GenerateError::BadRatio(spec.cycle_ratio));
    }
    if spec.cycle_ratio > 0.0 && spec.max_cycle < 3 {
        return Err(GenerateError::NoCycleLength(spec.max_cycle));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(spec.n + spec.n / 2);
    let mut blocks_at = vec![0u8; spec.n];
    let mut eligible = Eligible {
        list: Vec::with_capacity(spec.n),
        pos: vec![usize::MAX; spec.n],
    };
    eligible.insert(0);
    let mut count = 1;
    while count < spec.n {
        let remaining = spec.n - count;
        let at = eligible.list[rng.gen_range(0..eligible.list.len())];
        let cycle_len = if remaining >= 2 && spec.cycle_ratio > 0.0 && rng.gen_bool(spec.cycle_ratio) {
            Some(rng.gen_range(3..=spec.max_cycle.min(remaining + 1)))
        } else {
            None
        };
        let added = cycle_len.map_or(1, |l| l - 1);
        let mut prev = at;
        for v in count..count + added {
            edges.push((prev, v));
            prev = v;
            eligible.insert(v);
        }
        blocks_at[count..count + added].fill(1);
        if cycle_len.is_some() {
            edges.push((prev, at));
        }
        count += added;
        blocks_at[at] += 1;
        if spec.christmas && blocks_at[at] >= 2 {
            eligible.remove(at);
        }
    }
    let g = Graph::new(spec.n, edges).expect("generated edges are simple");
    // depth-first labels keep neighbours close in memory for large graphs
    Ok(g.relabel(&g.depth_first_order()))
}

/// Connected graph of no particular class: a random spanning tree plus each
/// remaining pair with probability `extra`.
pub fn random_connected(n: usize, extra: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = HashSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(extra) {
                edges.insert((u, v));
            }
        }
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    Graph::new(n, edges).expect("simple by construction")
}

/// Adjacency bits of the upper triangle, for graphs with at most 11 vertices.
fn adjacency_code(n: usize, edges: &[(Vertex, Vertex)], label: &[usize]) -> u64 {
    let mut code = 0u64;
    for &(u, v) in edges {
        let (a, b) = (label[u].min(label[v]), label[u].max(label[v]));
        // index of (a, b) in row-major upper triangle
        let idx = a * (2 * n - a - 1) / 2 + (b - a - 1);
        code |= 1 << idx;
    }
    code
}

/// Isomorphism-invariant code: the largest adjacency code over labelings that
/// list vertices by non-increasing degree.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "canonical codes are limited to 11 vertices");
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    // groups of equal degree are permuted independently
    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && g.degree(order[j]) == g.degree(order[i]) {
            j += 1;
        }
        groups.push((i, j));
        i = j;
    }
    let mut best = 0u64;
    let mut label = vec![0; n];
    permute_groups(&mut order, &groups, 0, &mut |ord| {
        for (pos, &v) in ord.iter().enumerate() {
            label[v] = pos;
        }
        best = best.max(adjacency_code(n, &edges, &label));
    });
    best
}

fn permute_groups(order: &mut [Vertex], groups: &[(usize, usize)], gi: usize, visit: &mut impl FnMut(&[Vertex])) {
    if gi == groups.len() {
        visit(order);
        return;
    }
    let (lo, hi) = groups[gi];
    // Heap's algorithm over order[lo..hi]
    let k = hi - lo;
    let mut c = vec![0usize; k];
    permute_groups(order, groups, gi + 1, visit);
    let mut i = 1;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(lo, lo + i);
            } else {
                order.swap(lo + c[i], lo + i);
            }
            permute_groups(order, groups, gi + 1, visit);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Every connected Christmas cactus on `1..=max_n` vertices, one per
/// isomorphism class, smallest first.
pub fn enumerate_christmas(max_n: usize) -> Vec<Graph> {
    assert!(max_n <= 11, "exhaustive enumeration is limited to 11 vertices");
    let mut seen: HashSet<(usize, u64)> = HashSet::new();
    let mut frontier = vec![Graph::new(1, []).unwrap()];
    let mut out = Vec::new();
    seen.insert((1, 0));
    // graphs are grown one block at a time; each level has more vertices
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            out.push(g.clone());
            let n = g.n();
            let blocks_at = blocks_per_vertex(g);
            let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
            for at in (0..n).filter(|&v| blocks_at[v] < 2) {
                for len in std::iter::once(2).chain(3..=max_n + 1 - n) {
                    let added = len - 1;
                    if n + added > max_n {
                        continue;
                    }
                    let mut e = edges.clone();
                    let mut prev = at;
                    for v in n..n + added {
                        e.push((prev, v));
                        prev = v;
                    }
                    if len >= 3 {
                        e.push((prev, at));
                    }
                    let h = Graph::new(n + added, e).unwrap();
                    if seen.insert((h.n(), canonical_code(&h))) {
                        next.push(h);
                    }
                }
            }
        }
        frontier = next;
    }
    out.sort_by_key(|g| (g.n(), g.m()));
    out
}

fn blocks_per_vertex(g: &Graph) -> Vec<usize> {
    let bc = crate::blocks::block_cut_tree(g).expect("connected");
    (0..g.n()).map(|v| bc.blocks_of(v).len()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::{classify, ClassKind};
    use crate::graph::families;

    #[test]
    fn single_vertex() {
        let g = generate(&GeneratorSpec {
            n: 1,
            ..Default::default()
        })
        .unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
    }

    #[test]
    fn christmas_class_and_determinism() {
        for seed in 0..50 {
            let spec = GeneratorSpec {
                n: 9,
                seed,
                ..Default::default()
            };
            let g = generate(&spec).unwrap();
            assert!(classify(&g).unwrap().is_christmas_cactus());
            assert_eq!(g, generate(&spec).unwrap());
        }
    }

    #[test]
    fn general_cacti() {
        let mut red = 0;
        for seed in 0..50 {
            let g = generate(&GeneratorSpec {
                n: 9,
                christmas: false,
                seed,
                ..Default::default()
            })
            .unwrap();
            let c = classify(&g).unwrap();
            assert!(c.is_cactus());
            red += (c.kind == ClassKind::Cactus) as usize;
        }
        assert!(red > 10);
    }

    #[test]
    fn invalid_specs() {
        let base = GeneratorSpec::default();
        assert_eq!(generate(&GeneratorSpec { n: 0, ..base }), Err(GenerateError::Empty));
        assert!(matches!(
            generate(&GeneratorSpec {
                cycle_ratio: 1.5,
                ..base
            }),
            Err(GenerateError::BadRatio(_))
        ));
        assert_eq!(
            generate(&GeneratorSpec { max_cycle: 2, ..base }),
            Err(GenerateError::NoCycleLength(2))
        );
        assert!(generate(&GeneratorSpec {
            max_cycle: 2,
            cycle_ratio: 0.0,
            ..base
        })
        .is_ok());
    }

    #[test]
    fn canonical_code_is_invariant() {
        let g = families::bull();
        let h = g.relabel(&[4, 2, 0, 1, 3]);
        assert_eq!(canonical_code(&g), canonical_code(&h));
        assert_ne!(canonical_code(&g), canonical_code(&families::cycle_with_tail(3, 2)));
    }

    #[test]
    fn small_counts() {
        // trees and unicyclic graphs counted by hand
        let by_n = |n: usize| enumerate_christmas(n).into_iter().filter(|g| g.n() == n).count();
        assert_eq!(by_n(1), 1);
        assert_eq!(by_n(2), 1);
        // path, triangle
        assert_eq!(by_n(3), 2);
        // path, C4, 3-pan (the star is excluded)
        assert_eq!(by_n(4), 3);
        for g in enumerate_christmas(7) {
            assert!(classify(&g).unwrap().is_christmas_cactus());
        }
    }

    #[test]
    fn random_connected_graphs() {
        for seed in 0..20 {
            let g = random_connected(7, 0.3, seed);
            assert!(g.is_connected());
        }
    }
}
