//! Undirected simple graphs over dense vertex ids, plus the edge-list text format.
//!
//! The edge-list document is `n m` on the first non-comment line followed by
//! `m` lines `u v`. Lines starting with `#` are comments. A component file may
//! carry `# label <local> <original>` comment lines that map its vertex ids back
//! to ids of the graph it was cut from; [`parse_labels`] reads them.

use std::fmt::Write as _;

use thiserror::Error;

/// Vertex identifier. Vertices of a graph are exactly `0..n`.
pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex id {id} out of range for n = {n}")]
    VertexOutOfRange { id: Vertex, n: usize },
    #[error("header announces {expected} edges but {found} were given")]
    EdgeCount { expected: usize, found: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
}

/// Undirected simple graph stored as sorted adjacency lists in CSR layout.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints. Edge orientation does not matter.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let edges: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            for id in [u, v] {
                if id >= n {
                    return Err(GraphError::VertexOutOfRange { id, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0; offsets[n]];
        for &(u, v) in &edges {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            let row = &mut targets[offsets[v]..offsets[v + 1]];
            row.sort_unstable();
            if let Some(w) = row.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (v.min(w[0]), v.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Self { offsets, targets })
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// `v` is in the closed neighbourhood of `u`.
    pub fn is_closed_neighbor(&self, u: Vertex, v: Vertex) -> bool {
        u == v || self.has_edge(u, v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in self.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub(crate) fn require_connected(&self) -> Result<(), GraphError> {
        if self.n() == 0 {
            Err(GraphError::Empty)
        } else if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    /// `true` when every vertex is in `set` or adjacent to a member of `set`.
    pub fn is_dominating(&self, set: &[Vertex]) -> bool {
        let mut covered = vec![false; self.n()];
        for &v in set {
            if v >= self.n() {
                continue;
            }
            covered[v] = true;
            for &w in self.neighbors(v) {
                covered[w] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }

    /// Subgraph induced by `keep`, with vertices renumbered in the order given.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]));
        Graph::new(keep.len(), edges).expect("induced subgraph of a simple graph is simple")
    }

    /// `order[v]` is the position of `v` in a depth-first preorder from
    /// vertex 0 that tries smaller neighbours first. Unreached vertices follow
    /// in ascending order.
    pub fn depth_first_order(&self) -> Vec<Vertex> {
        let n = self.n();
        let mut order = vec![usize::MAX; n];
        let mut next = 0;
        for root in 0..n {
            if order[root] != usize::MAX {
                continue;
            }
            order[root] = next;
            next += 1;
            let mut stack = vec![(root, 0usize)];
            while let Some((u, pos)) = stack.last_mut() {
                let nbrs = self.neighbors(*u);
                if let Some(&w) = nbrs.get(*pos) {
                    *pos += 1;
                    if order[w] == usize::MAX {
                        order[w] = next;
                        next += 1;
                        stack.push((w, 0));
                    }
                } else {
                    stack.pop();
                }
            }
        }
        order
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        Graph::new(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
            .expect("relabelling preserves simplicity")
    }

    /// Serializes to the edge-list format with edges sorted lexicographically.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Edge-list serialization preceded by `# label` lines.
    pub fn to_edge_list_with_labels(&self, labels: &[Vertex]) -> String {
        let mut out = String::new();
        for (local, original) in labels.iter().enumerate() {
            let _ = writeln!(out, "# label {local} {original}");
        }
        out.push_str(&self.to_edge_list());
        out
    }
}

/// Parses an edge-list document.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(GraphError::Malformed {
        line: 1,
        reason: "missing `n m` header".into(),
    })?;
    let (n, m) = parse_pair(hline, header)?;

    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        let (u, v) = parse_pair(line, body)?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(GraphError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Graph::new(n, edges)
}

/// Reads `# label <local> <original>` lines; `None` when the document has none.
pub fn parse_labels(text: &str) -> Option<Vec<Vertex>> {
    let mut pairs: Vec<(usize, Vertex)> = text
        .lines()
        .filter_map(|l| l.trim().strip_prefix("# label "))
        .filter_map(|rest| {
            let mut it = rest.split_whitespace().map(str::parse::<usize>);
            Some((it.next()?.ok()?, it.next()?.ok()?))
        })
        .collect();
    if pairs.is_empty() {
        return None;
    }
    pairs.sort_unstable();
    Some(pairs.into_iter().map(|(_, o)| o).collect())
}

fn parse_pair(line: usize, body: &str) -> Result<(usize, usize), GraphError> {
    let malformed = |reason: &str| GraphError::Malformed {
        line,
        reason: reason.to_string(),
    };
    let mut fields = body.split_whitespace();
    let a = fields.next().ok_or_else(|| malformed("expected two integers"))?;
    let b = fields.next().ok_or_else(|| malformed("expected two integers"))?;
    if fields.next().is_some() {
        return Err(malformed("trailing fields"));
    }
    let a = a.parse().map_err(|_| malformed("not a non-negative integer"))?;
    let b = b.parse().map_err(|_| malformed("not a non-negative integer"))?;
    Ok((a, b))
}

/// Small named graphs used by tests, presets and the CLI.
pub mod families {
    use super::{Graph, Vertex};

    pub fn single_vertex() -> Graph {
        Graph::new(1, []).unwrap()
    }

    /// Path on `k` vertices.
    pub fn path(k: usize) -> Graph {
        Graph::new(k, (1..k).map(|i| (i - 1, i))).unwrap()
    }

    /// Cycle on `k >= 3` vertices, `0-1-...-(k-1)-0`.
    pub fn cycle(k: usize) -> Graph {
        assert!(k >= 3, "cycles need at least three vertices");
        Graph::new(k, (0..k).map(|i| (i, (i + 1) % k))).unwrap()
    }

    pub fn complete(k: usize) -> Graph {
        Graph::new(k, (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)))).unwrap()
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|l| (0, l))).unwrap()
    }

    /// Triangle `v=0, x=1, y=2` with leaves `x'=3` on `x` and `y'=4` on `y`.
    pub fn bull() -> Graph {
        Graph::new(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)]).unwrap()
    }

    /// Triangle `0, 1, 2` with a leaf `3` on vertex 1.
    pub fn three_pan() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (1, 2), (1, 3)]).unwrap()
    }

    /// Cycle `0..k` with a pendant path of `tail` extra vertices hanging off vertex 0.
    pub fn cycle_with_tail(k: usize, tail: usize) -> Graph {
        let mut edges: Vec<(Vertex, Vertex)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        let mut prev = 0;
        for t in 0..tail {
            edges.push((prev, k + t));
            prev = k + t;
        }
        Graph::new(k + tail, edges).unwrap()
    }

    /// Two triangles `{0,1,2}` and `{3,4,5}` joined by the bridge `2-3`.
    pub fn bridged_triangles() -> Graph {
        Graph::new(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap()
    }

    /// Looks up a family by a short name such as `C9`, `P4`, `K4`, `star3`, `bull`.
    pub fn by_name(name: &str) -> Option<Graph> {
        let lower = name.to_ascii_lowercase();
        let num = |prefix: &str| lower.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
        match lower.as_str() {
            "bull" => return Some(bull()),
            "3-pan" | "pan" | "three-pan" => return Some(three_pan()),
            "k1" | "vertex" => return Some(single_vertex()),
            _ => {}
        }
        if let Some(k) = num("star") {
            return Some(star(k));
        }
        if let Some(k) = num("path-").or_else(|| num("p")) {
            return (k >= 1).then(|| path(k));
        }
        if let Some(k) = num("c") {
            return (k >= 3).then(|| cycle(k));
        }
        if let Some(k) = num("k") {
            return (k >= 1).then(|| complete(k));
        }
        None
    }
}
