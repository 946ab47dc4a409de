//! Loopless multigraph with dense, stable vertex and edge identities.
//!
//! Parallel edges are first-class: every edge carries its own [`EdgeId`], so a
//! recoloring procedure can talk about one copy of a parallel bundle without
//! disturbing the others. Graphs are immutable after construction, which makes
//! them safe to share across worker threads.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Index of a vertex, dense in `[0, n)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub usize);

/// Index of an edge, dense in `[0, m)`. Parallel edges carry distinct ids.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex {vertex} out of range (n = {n})")]
    BadVertex { vertex: usize, n: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Edge cut `∂(X)`: the edges with exactly one endpoint in the side `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCut {
    /// The side `X`, sorted ascending.
    pub side: Vec<VertexId>,
    /// Edges with exactly one endpoint in `side`, in `EdgeId` order.
    pub edges: Vec<EdgeId>,
}

/// Length of a shortest cycle, or `Infinite` for forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn is_finite(self) -> bool {
        matches!(self, Girth::Finite(_))
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

/// Finite, undirected, loopless multigraph.
#[derive(Clone, Debug)]
pub struct Multigraph {
    n: usize,
    endpoints: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<EdgeId>>,
}

impl Multigraph {
    /// Builds a graph on `n` vertices from an endpoint-pair list. Edge ids are
    /// assigned densely in input order.
    pub fn build(n: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut endpoints = Vec::with_capacity(edge_list.len());
        let mut adjacency = vec![Vec::new(); n];
        for (i, &(u, v)) in edge_list.iter().enumerate() {
            if u >= n {
                return Err(GraphError::BadVertex { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::BadVertex { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            let e = EdgeId(i);
            endpoints.push((VertexId(u), VertexId(v)));
            adjacency[u].push(e);
            adjacency[v].push(e);
        }
        Ok(Multigraph {
            n,
            endpoints,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.endpoints.len()).map(EdgeId)
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.endpoints[e.0]
    }

    /// The endpoint of `e` that is not `v`. Panics if `v` is not an endpoint.
    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.endpoints[e.0];
        if a == v {
            b
        } else {
            assert_eq!(b, v, "vertex {v} is not an endpoint of edge {e}");
            a
        }
    }

    pub fn is_incident(&self, e: EdgeId, v: VertexId) -> bool {
        let (a, b) = self.endpoints[e.0];
        a == v || b == v
    }

    /// Incident edges of `v`, in `EdgeId` order.
    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.adjacency[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.0].len()
    }

    /// Maximum degree Δ. Zero for an edgeless graph.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Minimum degree δ. Zero for an empty vertex set.
    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Number of parallel edges between `u` and `v`.
    pub fn parallel_count(&self, u: VertexId, v: VertexId) -> usize {
        self.adjacency[u.0]
            .iter()
            .filter(|&&e| self.other_endpoint(e, u) == v)
            .count()
    }

    /// Whether some vertex pair carries at least two parallel edges.
    pub fn has_parallel_pair(&self, u: VertexId, v: VertexId) -> bool {
        self.parallel_count(u, v) >= 2
    }

    /// Maximum multiplicity μ: the largest parallel bundle. Zero if edgeless.
    pub fn multiplicity(&self) -> usize {
        let mut best = 0;
        for u in 0..self.n {
            let mut counts = vec![0usize; self.n];
            for &e in &self.adjacency[u] {
                let w = self.other_endpoint(e, VertexId(u)).0;
                if w > u {
                    counts[w] += 1;
                    best = best.max(counts[w]);
                }
            }
        }
        best
    }

    pub fn is_simple(&self) -> bool {
        self.multiplicity() <= 1
    }

    /// The cut `∂(X)`. The side may be given in any order; duplicates are
    /// ignored. Vertices must be in range.
    pub fn boundary(&self, side: &[VertexId]) -> EdgeCut {
        let mut in_side = vec![false; self.n];
        for &v in side {
            assert!(v.0 < self.n, "vertex {v} out of range");
            in_side[v.0] = true;
        }
        let edges = self
            .edge_ids()
            .filter(|&e| {
                let (a, b) = self.endpoints(e);
                in_side[a.0] != in_side[b.0]
            })
            .collect();
        let side = (0..self.n)
            .filter(|&v| in_side[v])
            .map(VertexId)
            .collect();
        EdgeCut { side, edges }
    }

    /// Deduplicated neighbor lists of the underlying simple graph.
    fn simple_neighbors(&self) -> Vec<Vec<usize>> {
        let mut nbrs = vec![Vec::new(); self.n];
        for u in 0..self.n {
            let mut seen = vec![false; self.n];
            for &e in &self.adjacency[u] {
                let w = self.other_endpoint(e, VertexId(u)).0;
                if !seen[w] {
                    seen[w] = true;
                    nbrs[u].push(w);
                }
            }
        }
        nbrs
    }

    /// The underlying simple graph: one edge per adjacent vertex pair, edges
    /// ordered lexicographically by endpoints.
    pub fn underlying_simple(&self) -> Multigraph {
        let nbrs = self.simple_neighbors();
        let mut edges = Vec::new();
        for u in 0..self.n {
            let mut ws: Vec<usize> = nbrs[u].iter().copied().filter(|&w| w > u).collect();
            ws.sort_unstable();
            for w in ws {
                edges.push((u, w));
            }
        }
        Multigraph::build(self.n, &edges).expect("simple graph of a valid graph is valid")
    }

    /// Girth of the underlying simple graph (always ≥ 3 for loopless graphs),
    /// or `Infinite` for forests.
    pub fn girth(&self) -> Girth {
        let nbrs = self.simple_neighbors();
        let mut best = usize::MAX;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &w in &nbrs[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w && parent[w] != u {
                        // Non-tree edge closes a walk through the root.
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// Length of a shortest odd cycle of the underlying simple graph, or
    /// `Infinite` when the graph is bipartite.
    pub fn odd_girth(&self) -> Girth {
        let nbrs = self.simple_neighbors();
        let mut best = usize::MAX;
        for root in 0..self.n {
            // BFS over (vertex, parity) states; dist[root][odd] is the
            // shortest odd closed walk through the root, and the minimum odd
            // closed walk in a graph is an odd cycle.
            let mut dist = vec![[usize::MAX; 2]; self.n];
            dist[root][0] = 0;
            let mut queue = VecDeque::from([(root, 0usize)]);
            while let Some((u, p)) = queue.pop_front() {
                for &w in &nbrs[u] {
                    let q = 1 - p;
                    if dist[w][q] == usize::MAX {
                        dist[w][q] = dist[u][p] + 1;
                        queue.push_back((w, q));
                    }
                }
            }
            best = best.min(dist[root][1]);
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &e in &self.adjacency[u] {
                let w = self.other_endpoint(e, VertexId(u)).0;
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// Subgraph on the same vertex set keeping only `keep` edges. New dense
    /// edge ids follow the order of `keep`.
    pub fn subgraph_of_edges(&self, keep: &[EdgeId]) -> Multigraph {
        let edges: Vec<(usize, usize)> = keep
            .iter()
            .map(|&e| {
                let (a, b) = self.endpoints(e);
                (a.0, b.0)
            })
            .collect();
        Multigraph::build(self.n, &edges).expect("subgraph of a valid graph is valid")
    }

    /// Parses the text graph format: a `p <n> <m>` header followed by `m`
    /// lines `e <u> <v>` (0-based). Lines starting with `c` are comments.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') {
                continue;
            }
            let mut parts = trimmed.split_whitespace();
            match parts.next() {
                Some("p") => {
                    if header.is_some() {
                        return Err(GraphError::Parse {
                            line,
                            msg: "duplicate header".into(),
                        });
                    }
                    let n = parse_field(parts.next(), line, "vertex count")?;
                    let m = parse_field(parts.next(), line, "edge count")?;
                    header = Some((n, m));
                }
                Some("e") => {
                    if header.is_none() {
                        return Err(GraphError::Parse {
                            line,
                            msg: "edge before header".into(),
                        });
                    }
                    let u = parse_field(parts.next(), line, "endpoint")?;
                    let v = parse_field(parts.next(), line, "endpoint")?;
                    edges.push((u, v));
                }
                Some(other) => {
                    return Err(GraphError::Parse {
                        line,
                        msg: format!("unknown record '{other}'"),
                    })
                }
                None => unreachable!("non-empty line has a token"),
            }
        }
        let (n, m) = header.ok_or(GraphError::Parse {
            line: 0,
            msg: "missing 'p' header".into(),
        })?;
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: 0,
                msg: format!("header promises {m} edges, found {}", edges.len()),
            });
        }
        Multigraph::build(n, &edges)
    }

    /// Serializes to the text graph format. Edges appear in `EdgeId` order,
    /// so parse → serialize → parse is the identity on ids.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("p {} {}\n", self.n, self.edge_count()));
        for (u, v) in &self.endpoints {
            out.push_str(&format!("e {} {}\n", u.0, v.0));
        }
        out
    }
}

fn parse_field(field: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    field
        .ok_or_else(|| GraphError::Parse {
            line,
            msg: format!("missing {what}"),
        })?
        .parse()
        .map_err(|_| GraphError::Parse {
            line,
            msg: format!("bad {what}"),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn triangle() -> Multigraph {
        Multigraph::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn fat_triangle() -> Multigraph {
        Multigraph::build(3, &[(0, 1), (0, 1), (1, 2), (1, 2), (2, 0), (2, 0)]).unwrap()
    }

    fn k33() -> Multigraph {
        let mut edges = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                edges.push((a, b));
            }
        }
        Multigraph::build(6, &edges).unwrap()
    }

    #[test]
    fn build_triangle() {
        let g = triangle();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.max_degree(), 2);
        assert_eq!(g.multiplicity(), 1);
        assert!(g.is_simple());
    }

    #[test]
    fn build_fat_triangle() {
        let g = fat_triangle();
        assert_eq!(g.max_degree(), 4);
        assert_eq!(g.multiplicity(), 2);
        assert!(!g.is_simple());
        assert!(g.has_parallel_pair(VertexId(0), VertexId(1)));
        assert!(!triangle().has_parallel_pair(VertexId(0), VertexId(1)));
    }

    #[test]
    fn build_rejects_loops_and_bad_vertices() {
        assert_eq!(
            Multigraph::build(2, &[(0, 0)]),
            Err(GraphError::LoopEdge(0)),
            "loopless invariant"
        );
        assert_eq!(
            Multigraph::build(2, &[(0, 5)]).unwrap_err(),
            GraphError::BadVertex { vertex: 5, n: 2 }
        );
    }

    impl PartialEq for Multigraph {
        fn eq(&self, other: &Self) -> bool {
            self.n == other.n && self.endpoints == other.endpoints
        }
    }

    #[test]
    fn boundary_counts() {
        let g = triangle();
        assert_eq!(g.boundary(&[VertexId(0)]).edges.len(), 2);
        let fat = fat_triangle();
        assert_eq!(fat.boundary(&[VertexId(0)]).edges.len(), 4);
        let all: Vec<VertexId> = fat.vertices().collect();
        assert!(fat.boundary(&all).edges.is_empty());
        assert!(fat.boundary(&[]).edges.is_empty());
    }

    #[test]
    fn boundary_complement_symmetry_exhaustive() {
        let g = generators::petersen();
        let n = g.vertex_count();
        for mask in 0u32..(1 << n) {
            let side: Vec<VertexId> = (0..n).filter(|&v| mask >> v & 1 == 1).map(VertexId).collect();
            let co: Vec<VertexId> = (0..n).filter(|&v| mask >> v & 1 == 0).map(VertexId).collect();
            assert_eq!(g.boundary(&side).edges, g.boundary(&co).edges);
        }
    }

    #[test]
    fn girth_values() {
        assert_eq!(fat_triangle().girth(), Girth::Finite(3));
        assert_eq!(k33().girth(), Girth::Finite(4));
        assert_eq!(k33().odd_girth(), Girth::Infinite);
        let petersen = generators::petersen();
        assert_eq!(petersen.girth(), Girth::Finite(5));
        assert_eq!(petersen.odd_girth(), Girth::Finite(5));
        let path = Multigraph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.girth(), Girth::Infinite);
        // A parallel bundle alone never creates a cycle of the underlying
        // simple graph.
        let bundle = Multigraph::build(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(bundle.girth(), Girth::Infinite);
    }

    #[test]
    fn girth_matches_cycle_enumeration() {
        // Independent oracle: enumerate all simple cycles by DFS.
        fn brute(g: &Multigraph, odd_only: bool) -> Girth {
            let simple = g.underlying_simple();
            let n = simple.vertex_count();
            let mut best = usize::MAX;
            fn dfs(
                simple: &Multigraph,
                start: usize,
                u: usize,
                visited: &mut Vec<bool>,
                depth: usize,
                odd_only: bool,
                best: &mut usize,
            ) {
                for &e in simple.incident_edges(VertexId(u)) {
                    let w = simple.other_endpoint(e, VertexId(u)).0;
                    if w == start && depth >= 2 && (!odd_only || (depth + 1) % 2 == 1) {
                        *best = (*best).min(depth + 1);
                    } else if w > start && !visited[w] {
                        visited[w] = true;
                        dfs(simple, start, w, visited, depth + 1, odd_only, best);
                        visited[w] = false;
                    }
                }
            }
            for start in 0..n {
                let mut visited = vec![false; n];
                visited[start] = true;
                dfs(&simple, start, start, &mut visited, 0, odd_only, &mut best);
            }
            if best == usize::MAX {
                Girth::Infinite
            } else {
                Girth::Finite(best)
            }
        }
        for g in [fat_triangle(), k33(), generators::petersen(), triangle()] {
            assert_eq!(g.girth(), brute(&g, false));
            assert_eq!(g.odd_girth(), brute(&g, true));
        }
    }

    #[test]
    fn fat_cycle_underlying_simple_girth() {
        for k in 1..=3usize {
            let g = generators::gen_fat_cycle(k);
            let simple = g.underlying_simple();
            assert_eq!(simple.edge_count(), 2 * k + 1);
            assert_eq!(g.girth(), Girth::Finite(2 * k + 1));
        }
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        for g in [triangle(), fat_triangle(), k33(), generators::petersen()] {
            let sum: usize = g.vertices().map(|v| g.degree(v)).sum();
            assert_eq!(sum, 2 * g.edge_count());
        }
    }

    #[test]
    fn text_round_trip_is_identity() {
        let g = fat_triangle();
        let text = g.to_text();
        let parsed = Multigraph::parse(&text).unwrap();
        assert_eq!(parsed, g);
        assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn parse_accepts_comments_and_rejects_garbage() {
        let ok = "c a triangle\np 3 3\ne 0 1\ne 1 2\ne 2 0\n";
        assert!(Multigraph::parse(ok).is_ok());
        assert!(matches!(
            Multigraph::parse("p 3 1\n"),
            Err(GraphError::Parse { .. })
        ));
        assert!(matches!(
            Multigraph::parse("e 0 1\np 2 1\n"),
            Err(GraphError::Parse { .. })
        ));
        assert!(matches!(
            Multigraph::parse("p 2 1\nq 0 1\n"),
            Err(GraphError::Parse { .. })
        ));
        assert!(matches!(
            Multigraph::parse("p 2 1\ne 0 0\n"),
            Err(GraphError::LoopEdge(0))
        ));
    }

    #[test]
    fn connectivity() {
        assert!(triangle().is_connected());
        let disconnected = Multigraph::build(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!disconnected.is_connected());
        assert!(Multigraph::build(0, &[]).unwrap().is_connected());
    }
}
