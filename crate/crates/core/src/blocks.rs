//! Biconnected blocks and the block-cut tree.
//!
//! Blocks are found with an iterative Hopcroft–Tarjan traversal over an edge
//! stack, so deep graphs (long paths, long chains of cycles) never touch the
//! call stack.

use crate::graph::{Graph, GraphError, Vertex};

/// Index into [`BlockCutTree::blocks`].
pub type BlockId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    start: usize,
    size: usize,
    pub edge_count: usize,
}

impl Block {
    pub fn size(&self) -> usize {
        self.size
    }

    /// A block of a cactus is a bridge, a cycle, or (only in `K1`) a lone vertex.
    pub fn is_cycle(&self) -> bool {
        self.size() >= 3 && self.edge_count == self.size()
    }

    pub fn is_bridge(&self) -> bool {
        self.size() == 2
    }
}

/// Blocks of a connected graph together with their articulation incidences.
#[derive(Debug, Clone)]
pub struct BlockCutTree {
    pub blocks: Vec<Block>,
    member_list: Vec<Vertex>,
    /// Articulation vertices, ascending.
    pub articulations: Vec<Vertex>,
    /// Incidence list `(articulation index, block id)`.
    pub edges: Vec<(usize, BlockId)>,
    ba_offsets: Vec<usize>,
    ba_list: Vec<usize>,
    vb_offsets: Vec<usize>,
    vb_blocks: Vec<BlockId>,
    art_index: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl BlockCutTree {
    /// Member vertices of block `b`, ascending.
    pub fn members(&self, b: BlockId) -> &[Vertex] {
        let block = &self.blocks[b];
        &self.member_list[block.start..block.start + block.size]
    }

    /// Number of articulations incident to block `b`.
    pub fn deg(&self, b: BlockId) -> usize {
        self.ba_offsets[b + 1] - self.ba_offsets[b]
    }

    /// Articulation indices incident to block `b`.
    pub fn block_articulations(&self, b: BlockId) -> &[usize] {
        &self.ba_list[self.ba_offsets[b]..self.ba_offsets[b + 1]]
    }

    /// Blocks incident to articulation index `a`.
    pub fn articulation_blocks(&self, a: usize) -> &[BlockId] {
        self.blocks_of(self.articulations[a])
    }

    /// Blocks containing vertex `v`, ascending.
    pub fn blocks_of(&self, v: Vertex) -> &[BlockId] {
        &self.vb_blocks[self.vb_offsets[v]..self.vb_offsets[v + 1]]
    }

    /// Articulation index of `v`, if `v` is an articulation.
    pub fn articulation_index(&self, v: Vertex) -> Option<usize> {
        (self.art_index[v] != NONE).then_some(self.art_index[v])
    }

    pub fn is_articulation(&self, v: Vertex) -> bool {
        self.art_index[v] != NONE
    }

    /// Node count plus incidence count of the tree.
    pub fn total_size(&self) -> usize {
        self.blocks.len() + self.articulations.len() + self.edges.len()
    }

    /// `true` when the incidence graph is a tree.
    pub fn is_tree(&self) -> bool {
        let nb = self.blocks.len();
        let nodes = nb + self.articulations.len();
        if self.edges.len() + 1 != nodes {
            return false;
        }
        // union-find over block nodes [0, nb) and articulation nodes [nb, nodes)
        let mut parent: Vec<usize> = (0..nodes).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, nb + a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }
}

/// Builds the block-cut tree of a connected graph.
pub fn block_cut_tree(g: &Graph) -> Result<BlockCutTree, GraphError> {
    g.require_connected()?;
    let n = g.n();
    let mut blocks: Vec<Block> = Vec::new();
    let mut member_list: Vec<Vertex> = Vec::with_capacity(n + n / 2);

    if n == 1 {
        member_list.push(0);
        blocks.push(Block {
            start: 0,
            size: 1,
            edge_count: 0,
        });
    } else {
        let mut disc = vec![NONE; n];
        let mut low = vec![0usize; n];
        let mut mark = vec![NONE; n];
        let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
        // (vertex, parent, next neighbour position)
        let mut frames: Vec<(Vertex, Vertex, usize)> = vec![(0, NONE, 0)];
        disc[0] = 0;
        low[0] = 0;
        let mut time = 1;

        while let Some(frame) = frames.last_mut() {
            let (u, parent, pos) = *frame;
            let nbrs = g.neighbors(u);
            if pos < nbrs.len() {
                frame.2 += 1;
                let w = nbrs[pos];
                if disc[w] == NONE {
                    edge_stack.push((u, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, u, 0));
                } else if w != parent && disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
                continue;
            }
            frames.pop();
            if parent == NONE {
                continue;
            }
            low[parent] = low[parent].min(low[u]);
            if low[u] >= disc[parent] {
                let id = blocks.len();
                let start = member_list.len();
                let mut edge_count = 0;
                while let Some((a, b)) = edge_stack.pop() {
                    edge_count += 1;
                    for x in [a, b] {
                        if mark[x] != id {
                            mark[x] = id;
                            member_list.push(x);
                        }
                    }
                    if (a, b) == (parent, u) {
                        break;
                    }
                }
                member_list[start..].sort_unstable();
                blocks.push(Block {
                    start,
                    size: member_list.len() - start,
                    edge_count,
                });
            }
        }
    }

    let mut count = vec![0usize; n];
    for &v in &member_list {
        count[v] += 1;
    }
    let mut vb_offsets = Vec::with_capacity(n + 1);
    vb_offsets.push(0);
    for &c in &count {
        vb_offsets.push(vb_offsets.last().unwrap() + c);
    }
    let mut fill = vb_offsets[..n].to_vec();
    let mut vb_blocks = vec![0; vb_offsets[n]];
    for (id, b) in blocks.iter().enumerate() {
        for &v in &member_list[b.start..b.start + b.size] {
            vb_blocks[fill[v]] = id;
            fill[v] += 1;
        }
    }

    let mut art_index = vec![NONE; n];
    let mut articulations = Vec::new();
    for v in 0..n {
        if count[v] >= 2 {
            art_index[v] = articulations.len();
            articulations.push(v);
        }
    }
    let mut edges = Vec::new();
    let mut ba_count = vec![0usize; blocks.len()];
    for (a, &v) in articulations.iter().enumerate() {
        for &b in &vb_blocks[vb_offsets[v]..vb_offsets[v + 1]] {
            ba_count[b] += 1;
            edges.push((a, b));
        }
    }
    let mut ba_offsets = Vec::with_capacity(blocks.len() + 1);
    ba_offsets.push(0);
    for &c in &ba_count {
        ba_offsets.push(ba_offsets.last().unwrap() + c);
    }
    let mut fill = ba_offsets[..blocks.len()].to_vec();
    let mut ba_list = vec![0; edges.len()];
    for &(a, b) in &edges {
        ba_list[fill[b]] = a;
        fill[b] += 1;
    }

    Ok(BlockCutTree {
        blocks,
        member_list,
        articulations,
        edges,
        ba_offsets,
        ba_list,
        vb_offsets,
        vb_blocks,
        art_index,
    })
}

/// Blocks incident to at most one articulation, ascending by id.
pub fn leaf_blocks(bc: &BlockCutTree) -> Vec<BlockId> {
    (0..bc.blocks.len()).filter(|&b| bc.deg(b) <= 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    fn sizes(bc: &BlockCutTree) -> Vec<usize> {
        let mut s: Vec<usize> = bc.blocks.iter().map(Block::size).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn triangle_is_one_block() {
        let bc = block_cut_tree(&families::cycle(3)).unwrap();
        assert_eq!(sizes(&bc), vec![3]);
        assert!(bc.articulations.is_empty());
        assert!(bc.blocks[0].is_cycle());
        assert_eq!(leaf_blocks(&bc), vec![0]);
    }

    #[test]
    fn path_has_articulation_in_middle() {
        let bc = block_cut_tree(&families::path(3)).unwrap();
        assert_eq!(sizes(&bc), vec![2, 2]);
        assert_eq!(bc.articulations, vec![1]);
        assert_eq!(leaf_blocks(&bc), vec![0, 1]);
    }

    #[test]
    fn bull_blocks() {
        let g = families::bull();
        let bc = block_cut_tree(&g).unwrap();
        assert_eq!(sizes(&bc), vec![2, 2, 3]);
        assert_eq!(bc.articulations, vec![1, 2]);
        let leaves = leaf_blocks(&bc);
        assert_eq!(leaves.len(), 2);
        assert!(leaves.iter().all(|&b| bc.blocks[b].is_bridge()));
        let triangle = (0..3).find(|&b| bc.blocks[b].size() == 3).unwrap();
        assert_eq!(bc.deg(triangle), 2);
    }

    #[test]
    fn single_vertex_block() {
        let bc = block_cut_tree(&families::single_vertex()).unwrap();
        assert_eq!(bc.blocks.len(), 1);
        assert_eq!(bc.blocks[0].size(), 1);
        assert_eq!(leaf_blocks(&bc), vec![0]);
    }

    #[test]
    fn k4_is_single_non_cycle_block() {
        let bc = block_cut_tree(&families::complete(4)).unwrap();
        assert_eq!(bc.blocks.len(), 1);
        assert_eq!(bc.blocks[0].edge_count, 6);
        assert!(!bc.blocks[0].is_cycle());
    }

    #[test]
    fn rejects_disconnected() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(block_cut_tree(&g).unwrap_err(), GraphError::Disconnected);
    }

    #[test]
    fn long_path_does_not_recurse() {
        let g = families::path(200_000);
        let bc = block_cut_tree(&g).unwrap();
        assert_eq!(bc.blocks.len(), 199_999);
        assert!(bc.is_tree());
    }
}
