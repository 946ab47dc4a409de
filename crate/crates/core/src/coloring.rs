//! Partial proper edge colorings and Kempe-chain machinery.
//!
//! Colorings are persistent values: every recoloring operation returns a new
//! [`PartialColoring`] and leaves the input untouched, so callers can keep the
//! old coloring around for rollback or comparison.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::multigraph::{EdgeId, Multigraph, VertexId};

/// Colors are 1-based integers `1..=t`.
pub type Color = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("bad colors: {0}")]
    BadColors(String),
    #[error("chain is stale: its edges no longer carry the alternating colors")]
    StaleChain,
    #[error("cycle is stale: its edges no longer carry the expected colors")]
    StaleCycle,
    #[error("edge {0} does not lie on the cycle")]
    EdgeNotOnCycle(EdgeId),
    #[error("improper assignment: {0}")]
    Improper(String),
}

/// Assignment of colors `1..=t` to a subset of edges, proper at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialColoring {
    num_colors: usize,
    colors: Vec<Option<Color>>,
}

/// A maximal two-color component: a path or an even cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KempeChain {
    /// The unordered color pair, stored sorted.
    pub colors: (Color, Color),
    /// Edge sequence from one end to the other (cyclic order for cycles).
    pub edges: Vec<EdgeId>,
    pub kind: ChainKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainKind {
    /// Endpoints of the path; equal endpoints denote the empty chain anchored
    /// at a vertex missing both colors.
    Path { endpoints: (VertexId, VertexId) },
    EvenCycle,
}

impl KempeChain {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn anchor(&self, g: &Multigraph) -> VertexId {
        match self.kind {
            ChainKind::Path { endpoints } => endpoints.0,
            ChainKind::EvenCycle => g.endpoints(self.edges[0]).0,
        }
    }
}

/// The odd cycle formed by an uncolored edge `e = (u, v)` together with the
/// alternating path from `v` back to `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncoloredCycle {
    pub edge: EdgeId,
    /// Color missing at `u`.
    pub alpha: Color,
    /// Color missing at `v`.
    pub beta: Color,
    /// Cycle edges: `edge` first, then the path edges from `v` to `u`.
    pub edges: Vec<EdgeId>,
    /// Cyclic vertex sequence: `vertices[0] = u`, `vertices[1] = v`, and
    /// `edges[i]` joins `vertices[i]` to `vertices[(i + 1) % len]`.
    pub vertices: Vec<VertexId>,
}

impl UncoloredCycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }
}

/// A non-closing alternating path: evidence that the colored subgraph is not
/// maximum. Flipping `path` and coloring `edge` with `color` gains one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Improvement {
    pub edge: EdgeId,
    pub color: Color,
    pub path: KempeChain,
}

impl Improvement {
    /// Applies the improvement, producing a coloring with one more edge.
    pub fn apply(&self, g: &Multigraph, c: &PartialColoring) -> Result<PartialColoring, ColoringError> {
        let mut next = if self.path.is_empty() {
            c.clone()
        } else {
            c.flip_chain(g, &self.path)?
        };
        next.colors[self.edge.index()] = Some(self.color);
        debug_assert!(next.is_proper(g));
        Ok(next)
    }
}

/// Result of searching for the odd cycle of an uncolored edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleSearch {
    Cycle(UncoloredCycle),
    Improvement(Improvement),
}

impl CycleSearch {
    pub fn cycle(self) -> Option<UncoloredCycle> {
        match self {
            CycleSearch::Cycle(c) => Some(c),
            CycleSearch::Improvement(_) => None,
        }
    }
}

impl PartialColoring {
    /// All-uncolored coloring over `edge_count` edges with palette `1..=t`.
    pub fn empty(num_colors: usize, edge_count: usize) -> Self {
        PartialColoring {
            num_colors,
            colors: vec![None; edge_count],
        }
    }

    /// Builds a coloring from explicit assignments, validating range and
    /// properness.
    pub fn from_assignments(
        g: &Multigraph,
        num_colors: usize,
        assigned: &[(EdgeId, Color)],
    ) -> Result<Self, ColoringError> {
        let mut c = PartialColoring::empty(num_colors, g.edge_count());
        for &(e, color) in assigned {
            if color == 0 || color > num_colors {
                return Err(ColoringError::BadColors(format!(
                    "color {color} outside 1..={num_colors}"
                )));
            }
            if c.colors[e.index()].is_some() {
                return Err(ColoringError::Improper(format!("edge {e} assigned twice")));
            }
            c.colors[e.index()] = Some(color);
        }
        if !c.is_proper(g) {
            return Err(ColoringError::Improper("adjacent edges share a color".into()));
        }
        Ok(c)
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn edge_count(&self) -> usize {
        self.colors.len()
    }

    pub fn color_of(&self, e: EdgeId) -> Option<Color> {
        self.colors[e.index()]
    }

    pub(crate) fn set(&mut self, e: EdgeId, color: Option<Color>) {
        self.colors[e.index()] = color;
    }

    pub fn colored_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    pub fn colored_edges(&self) -> Vec<EdgeId> {
        (0..self.colors.len())
            .filter(|&i| self.colors[i].is_some())
            .map(EdgeId)
            .collect()
    }

    pub fn uncolored_edges(&self) -> Vec<EdgeId> {
        (0..self.colors.len())
            .filter(|&i| self.colors[i].is_none())
            .map(EdgeId)
            .collect()
    }

    /// Colors present at `v`.
    pub fn present_colors(&self, g: &Multigraph, v: VertexId) -> BTreeSet<Color> {
        g.incident_edges(v)
            .iter()
            .filter_map(|&e| self.colors[e.index()])
            .collect()
    }

    /// Colors of `1..=t` missing at `v`.
    pub fn missing_colors(&self, g: &Multigraph, v: VertexId) -> BTreeSet<Color> {
        let present = self.present_colors(g, v);
        (1..=self.num_colors).filter(|c| !present.contains(c)).collect()
    }

    /// The unique edge at `v` colored `color`, if any.
    pub fn edge_with_color_at(&self, g: &Multigraph, v: VertexId, color: Color) -> Option<EdgeId> {
        g.incident_edges(v)
            .iter()
            .copied()
            .find(|&e| self.colors[e.index()] == Some(color))
    }

    /// True iff no vertex sees a repeated color.
    pub fn is_proper(&self, g: &Multigraph) -> bool {
        for v in g.vertices() {
            let mut seen = 0u128;
            for &e in g.incident_edges(v) {
                if let Some(c) = self.colors[e.index()] {
                    if c == 0 || c > self.num_colors || seen >> c & 1 == 1 {
                        return false;
                    }
                    seen |= 1 << c;
                }
            }
        }
        true
    }

    /// Walks from `v` along edges colored alternately starting with `first`,
    /// returning `(edges, final_vertex)`.
    fn alternating_walk(
        &self,
        g: &Multigraph,
        v: VertexId,
        first: Color,
        second: Color,
    ) -> (Vec<EdgeId>, VertexId) {
        let mut edges = Vec::new();
        let mut at = v;
        let mut want = first;
        let other = |c: Color| if c == first { second } else { first };
        while let Some(e) = self.edge_with_color_at(g, at, want) {
            if edges.last() == Some(&e) {
                break;
            }
            edges.push(e);
            at = g.other_endpoint(e, at);
            want = other(want);
            if at == v {
                break;
            }
        }
        (edges, at)
    }

    /// The maximal two-color component through `start`. A vertex missing both
    /// colors anchors an empty path.
    pub fn kempe_chain(
        &self,
        g: &Multigraph,
        start: VertexId,
        alpha: Color,
        beta: Color,
    ) -> KempeChain {
        assert_ne!(alpha, beta, "chain colors must differ");
        assert!(alpha >= 1 && alpha <= self.num_colors, "color {alpha} out of range");
        assert!(beta >= 1 && beta <= self.num_colors, "color {beta} out of range");
        let colors = (alpha.min(beta), alpha.max(beta));
        let has_alpha = self.edge_with_color_at(g, start, alpha).is_some();
        let has_beta = self.edge_with_color_at(g, start, beta).is_some();
        if !has_alpha && !has_beta {
            return KempeChain {
                colors,
                edges: Vec::new(),
                kind: ChainKind::Path {
                    endpoints: (start, start),
                },
            };
        }
        let (first, second) = if has_alpha { (alpha, beta) } else { (beta, alpha) };
        let (forward, end_fwd) = self.alternating_walk(g, start, first, second);
        if end_fwd == start && !forward.is_empty() {
            debug_assert_eq!(forward.len() % 2, 0, "two-color cycles are even");
            return KempeChain {
                colors,
                edges: forward,
                kind: ChainKind::EvenCycle,
            };
        }
        if has_alpha && has_beta {
            // `start` is interior: stitch the two directions together.
            let (backward, end_bwd) = self.alternating_walk(g, start, second, first);
            let mut edges: Vec<EdgeId> = backward.iter().rev().copied().collect();
            edges.extend(forward.iter().copied());
            return KempeChain {
                colors,
                edges,
                kind: ChainKind::Path {
                    endpoints: (end_bwd, end_fwd),
                },
            };
        }
        KempeChain {
            colors,
            edges: forward,
            kind: ChainKind::Path {
                endpoints: (start, end_fwd),
            },
        }
    }

    /// Swaps the two chain colors on every chain edge. Fails with
    /// [`ColoringError::StaleChain`] when the chain no longer matches this
    /// coloring.
    pub fn flip_chain(&self, g: &Multigraph, chain: &KempeChain) -> Result<PartialColoring, ColoringError> {
        let (alpha, beta) = chain.colors;
        if chain.is_empty() {
            return Ok(self.clone());
        }
        let current = self.kempe_chain(g, chain.anchor(g), alpha, beta);
        let mut want: Vec<EdgeId> = chain.edges.clone();
        let mut have: Vec<EdgeId> = current.edges.clone();
        want.sort_unstable();
        have.sort_unstable();
        if want != have || std::mem::discriminant(&current.kind) != std::mem::discriminant(&chain.kind) {
            return Err(ColoringError::StaleChain);
        }
        let mut next = self.clone();
        for &e in &chain.edges {
            let c = match self.colors[e.index()] {
                Some(c) if c == alpha => beta,
                Some(c) if c == beta => alpha,
                _ => return Err(ColoringError::StaleChain),
            };
            next.colors[e.index()] = Some(c);
        }
        debug_assert!(next.is_proper(g));
        Ok(next)
    }

    /// Searches for the odd cycle of the uncolored edge `e = (u, v)` with
    /// `alpha` missing at `u` and `beta` missing at `v`. When the alternating
    /// path from `v` fails to close at `u`, the colored subgraph is not
    /// maximum and the enlargement witness is returned instead.
    pub fn uncolored_cycle(
        &self,
        g: &Multigraph,
        e: EdgeId,
        alpha: Color,
        beta: Color,
    ) -> Result<CycleSearch, ColoringError> {
        if self.colors[e.index()].is_some() {
            return Err(ColoringError::BadColors(format!("edge {e} is colored")));
        }
        let (u, v) = g.endpoints(e);
        for (color, vertex, name) in [(alpha, u, "alpha"), (beta, v, "beta")] {
            if color == 0 || color > self.num_colors {
                return Err(ColoringError::BadColors(format!("{name} = {color} out of range")));
            }
            if self.edge_with_color_at(g, vertex, color).is_some() {
                return Err(ColoringError::BadColors(format!(
                    "{name} = {color} is present at vertex {vertex}"
                )));
            }
        }
        let missing_v = self.missing_colors(g, v);
        if alpha == beta || missing_v.contains(&alpha) {
            // `alpha` is missing at both endpoints: color `e` directly.
            return Ok(CycleSearch::Improvement(Improvement {
                edge: e,
                color: alpha,
                path: KempeChain {
                    colors: (alpha.min(beta), alpha.max(beta)),
                    edges: Vec::new(),
                    kind: ChainKind::Path { endpoints: (v, v) },
                },
            }));
        }
        if self.missing_colors(g, u).contains(&beta) {
            return Ok(CycleSearch::Improvement(Improvement {
                edge: e,
                color: beta,
                path: KempeChain {
                    colors: (alpha.min(beta), alpha.max(beta)),
                    edges: Vec::new(),
                    kind: ChainKind::Path { endpoints: (u, u) },
                },
            }));
        }
        // `v` misses beta and has alpha, so the component through `v` is a
        // path starting with its alpha edge.
        let (walk, end) = self.alternating_walk(g, v, alpha, beta);
        if end != u {
            let path = KempeChain {
                colors: (alpha.min(beta), alpha.max(beta)),
                edges: walk,
                kind: ChainKind::Path { endpoints: (v, end) },
            };
            return Ok(CycleSearch::Improvement(Improvement {
                edge: e,
                color: alpha,
                path,
            }));
        }
        let mut vertices = vec![u, v];
        let mut at = v;
        for &w in &walk[..walk.len().saturating_sub(1)] {
            at = g.other_endpoint(w, at);
            vertices.push(at);
        }
        let mut edges = vec![e];
        edges.extend(walk.iter().copied());
        debug_assert_eq!(edges.len() % 2, 1, "cycle of an uncolored edge is odd");
        debug_assert_eq!(vertices.len(), edges.len());
        Ok(CycleSearch::Cycle(UncoloredCycle {
            edge: e,
            alpha,
            beta,
            edges,
            vertices,
        }))
    }

    /// Recolors the cycle so that `new_uncolored` becomes its unique uncolored
    /// edge; the even path around the rest of the cycle alternates the two
    /// cycle colors. Colored-edge count and properness are preserved.
    pub fn shift_cycle(
        &self,
        g: &Multigraph,
        uc: &UncoloredCycle,
        new_uncolored: EdgeId,
    ) -> Result<PartialColoring, ColoringError> {
        let len = uc.edges.len();
        let Some(pos) = uc.edges.iter().position(|&e| e == new_uncolored) else {
            return Err(ColoringError::EdgeNotOnCycle(new_uncolored));
        };
        // Validate the cycle against this coloring: `edge` uncolored, path
        // edges alternating alpha/beta.
        if self.colors[uc.edge.index()].is_some() {
            return Err(ColoringError::StaleCycle);
        }
        for (i, &e) in uc.edges.iter().enumerate().skip(1) {
            let expect = if i % 2 == 1 { uc.alpha } else { uc.beta };
            if self.colors[e.index()] != Some(expect) {
                return Err(ColoringError::StaleCycle);
            }
        }
        let mut next = self.clone();
        for &e in &uc.edges {
            next.colors[e.index()] = None;
        }
        for i in 1..len {
            let e = uc.edges[(pos + i) % len];
            let color = if i % 2 == 1 { uc.alpha } else { uc.beta };
            next.colors[e.index()] = Some(color);
        }
        debug_assert_eq!(next.colored_count(), self.colored_count());
        debug_assert!(next.is_proper(g));
        Ok(next)
    }

    /// Applies a color permutation: `perm[c - 1]` is the new name of color `c`.
    pub(crate) fn permute_colors(&self, perm: &[Color]) -> PartialColoring {
        debug_assert_eq!(perm.len(), self.num_colors);
        PartialColoring {
            num_colors: self.num_colors,
            colors: self
                .colors
                .iter()
                .map(|c| c.map(|c| perm[c - 1]))
                .collect(),
        }
    }

    /// Parses the coloring format: header `t <num_colors>`, then lines
    /// `x <edge_id> <color|->`.
    pub fn parse(text: &str, edge_count: usize) -> Result<Self, ColoringError> {
        let mut num_colors: Option<usize> = None;
        let mut colors = vec![None; edge_count];
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("t") => {
                    let t: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| ColoringError::BadColors("bad 't' header".into()))?;
                    num_colors = Some(t);
                }
                Some("x") => {
                    let e: usize = parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| ColoringError::BadColors("bad edge id".into()))?;
                    if e >= edge_count {
                        return Err(ColoringError::BadColors(format!("edge {e} out of range")));
                    }
                    let field = parts
                        .next()
                        .ok_or_else(|| ColoringError::BadColors("missing color".into()))?;
                    colors[e] = if field == "-" {
                        None
                    } else {
                        Some(field.parse().map_err(|_| {
                            ColoringError::BadColors(format!("bad color '{field}'"))
                        })?)
                    };
                }
                Some(other) => {
                    return Err(ColoringError::BadColors(format!("unknown record '{other}'")))
                }
                None => unreachable!(),
            }
        }
        let num_colors =
            num_colors.ok_or_else(|| ColoringError::BadColors("missing 't' header".into()))?;
        if let Some(&bad) = colors.iter().flatten().find(|&&c| c == 0 || c > num_colors) {
            return Err(ColoringError::BadColors(format!("color {bad} out of range")));
        }
        Ok(PartialColoring { num_colors, colors })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("t {}\n", self.num_colors);
        for (i, c) in self.colors.iter().enumerate() {
            match c {
                Some(c) => out.push_str(&format!("x {i} {c}\n")),
                None => out.push_str(&format!("x {i} -\n")),
            }
        }
        out
    }
}
