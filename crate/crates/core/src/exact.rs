//! Desk-scale exact oracles: t-edge-colorability, chromatic index, maximum
//! Δ-edge-colorable subgraph, and the minimum union of excess color classes.
//!
//! Every search carries an explicit node budget; exceeding it is an error,
//! never a silently wrong answer. All tie-breaking is lexicographic by edge
//! id, so results are reproducible.

use serde_json::json;
use thiserror::Error;

use crate::coloring::{Color, CycleSearch, PartialColoring};
use crate::multigraph::{EdgeId, Multigraph, VertexId};
use crate::report::VerificationReport;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// The r'_e enumeration walks every optimal coloring; above these sizes the
/// oracle reports out of range instead of approximating.
pub const R_PRIME_MAX_CHI: usize = 8;
pub const R_PRIME_MAX_EDGES: usize = 24;

#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: DEFAULT_NODE_BUDGET,
        }
    }
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("search node budget exceeded after {explored} nodes")]
    BudgetExceeded { explored: u64 },
    #[error("oracle out of range: {0}")]
    OutOfRange(String),
}

/// Certificate for a maximum Δ-edge-colorable subgraph: the coloring, its
/// size and whether the search ran to completion.
#[derive(Clone, Debug)]
pub struct MaxSubgraphCertificate {
    pub coloring: PartialColoring,
    pub size: usize,
    pub optimal: bool,
}

impl MaxSubgraphCertificate {
    /// Minimum number of edges whose removal leaves a Δ-colorable graph.
    pub fn r_e(&self, g: &Multigraph) -> usize {
        g.edge_count() - self.size
    }
}

/// Exact chromatic index with a witness coloring and a record of why one
/// fewer color is infeasible.
#[derive(Clone, Debug)]
pub struct ChromaticCertificate {
    pub chi: usize,
    pub delta: usize,
    pub witness: PartialColoring,
    pub lower_bound_proof: LowerBoundProof,
}

impl ChromaticCertificate {
    pub fn is_class_two(&self) -> bool {
        self.chi > self.delta
    }

    /// Excess over the maximum degree.
    pub fn excess(&self) -> usize {
        self.chi - self.delta
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LowerBoundProof {
    EmptyGraph,
    /// Some vertex of this degree forces at least that many colors.
    DegreeBound { vertex: VertexId, degree: usize },
    /// The search for one fewer color completed with no solution.
    ExhaustedSearch { colors: usize, nodes_explored: u64 },
}

/// Exact maximum matching size of the underlying simple graph, by branching
/// on a minimum-degree vertex. Every color class is a matching, so this caps
/// color-class sizes in the searches below.
pub fn max_matching_size(g: &Multigraph) -> usize {
    let simple = g.underlying_simple();
    let n = simple.vertex_count();
    let nbrs: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            simple
                .incident_edges(VertexId(u))
                .iter()
                .map(|&e| simple.other_endpoint(e, VertexId(u)).0)
                .collect()
        })
        .collect();
    fn go(nbrs: &[Vec<usize>], alive: &mut [bool]) -> usize {
        let mut pick = None;
        let mut pick_deg = usize::MAX;
        for u in 0..nbrs.len() {
            if !alive[u] {
                continue;
            }
            let deg = nbrs[u].iter().filter(|&&w| alive[w]).count();
            if deg >= 1 && deg < pick_deg {
                pick_deg = deg;
                pick = Some(u);
            }
        }
        let Some(u) = pick else { return 0 };
        alive[u] = false;
        let mut best = go(nbrs, alive);
        for i in 0..nbrs[u].len() {
            let w = nbrs[u][i];
            if !alive[w] {
                continue;
            }
            alive[w] = false;
            best = best.max(1 + go(nbrs, alive));
            alive[w] = true;
        }
        alive[u] = true;
        best
    }
    let mut alive = vec![true; n];
    go(&nbrs, &mut alive)
}

pub(crate) struct NodeCounter {
    nodes: u64,
    max_nodes: u64,
}

impl NodeCounter {
    pub(crate) fn new(budget: SearchBudget) -> Self {
        NodeCounter {
            nodes: 0,
            max_nodes: budget.max_nodes,
        }
    }

    pub(crate) fn tick(&mut self) -> Result<(), ExactError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            Err(ExactError::BudgetExceeded {
                explored: self.nodes,
            })
        } else {
            Ok(())
        }
    }
}

/// Groups edges into parallel bundles; edges of one bundle are listed in id
/// order. Searches break the permutation symmetry of parallel edges by
/// forcing colors to increase along each bundle.
pub(crate) fn parallel_bundles(g: &Multigraph) -> (Vec<usize>, Vec<Vec<EdgeId>>) {
    let mut index: std::collections::BTreeMap<(VertexId, VertexId), usize> =
        std::collections::BTreeMap::new();
    let mut bundle_of = vec![0usize; g.edge_count()];
    let mut bundles: Vec<Vec<EdgeId>> = Vec::new();
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        let key = (u.min(v), u.max(v));
        let b = *index.entry(key).or_insert_with(|| {
            bundles.push(Vec::new());
            bundles.len() - 1
        });
        bundle_of[e.0] = b;
        bundles[b].push(e);
    }
    (bundle_of, bundles)
}

struct DecisionSearch<'a> {
    g: &'a Multigraph,
    full: u64,
    used: Vec<u64>,
    uncolored_at: Vec<usize>,
    assigned: Vec<Option<Color>>,
    bundle_of: Vec<usize>,
    bundles: Vec<Vec<EdgeId>>,
    remaining: usize,
}

impl<'a> DecisionSearch<'a> {
    fn avail(&self, e: EdgeId) -> u64 {
        let (u, v) = self.g.endpoints(e);
        let mut mask = !(self.used[u.0] | self.used[v.0]) & self.full;
        let bundle = &self.bundles[self.bundle_of[e.0]];
        if bundle.len() > 1 {
            for &f in bundle {
                if f == e {
                    continue;
                }
                if let Some(c) = self.assigned[f.0] {
                    if f < e {
                        mask &= !((1u64 << c) - 1); // colors above c
                    } else {
                        mask &= (1u64 << (c - 1)) - 1; // colors below c
                    }
                }
            }
        }
        mask
    }

    /// Every unassigned edge at `w` still needs its own free color there.
    fn capacity_ok(&self, w: VertexId) -> bool {
        let free = (!self.used[w.0] & self.full).count_ones() as usize;
        self.uncolored_at[w.0] <= free
    }

    fn assign(&mut self, e: EdgeId, c: Color) {
        let (u, v) = self.g.endpoints(e);
        let bit = 1u64 << (c - 1);
        self.used[u.0] |= bit;
        self.used[v.0] |= bit;
        self.uncolored_at[u.0] -= 1;
        self.uncolored_at[v.0] -= 1;
        self.assigned[e.0] = Some(c);
        self.remaining -= 1;
    }

    fn unassign(&mut self, e: EdgeId, c: Color) {
        let (u, v) = self.g.endpoints(e);
        let bit = 1u64 << (c - 1);
        self.used[u.0] &= !bit;
        self.used[v.0] &= !bit;
        self.uncolored_at[u.0] += 1;
        self.uncolored_at[v.0] += 1;
        self.assigned[e.0] = None;
        self.remaining += 1;
    }

    /// Most-constrained uncolored edge, ties by edge id.
    fn pick(&self) -> Option<(EdgeId, u64)> {
        let mut best: Option<(EdgeId, u64, u32)> = None;
        for i in 0..self.assigned.len() {
            if self.assigned[i].is_some() {
                continue;
            }
            let e = EdgeId(i);
            let avail = self.avail(e);
            let count = avail.count_ones();
            if best.as_ref().map_or(true, |&(_, _, c)| count < c) {
                if count == 0 {
                    return Some((e, 0));
                }
                best = Some((e, avail, count));
            }
        }
        best.map(|(e, avail, _)| (e, avail))
    }

    fn run(&mut self, counter: &mut NodeCounter) -> Result<bool, ExactError> {
        let Some((e, avail)) = self.pick() else {
            return Ok(true);
        };
        let (u, v) = self.g.endpoints(e);
        let mut rest = avail;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            counter.tick()?;
            self.assign(e, c);
            if self.capacity_ok(u) && self.capacity_ok(v) && self.run(counter)? {
                return Ok(true);
            }
            self.unassign(e, c);
        }
        Ok(false)
    }
}

pub(crate) fn decide_colorable(
    g: &Multigraph,
    t: usize,
    counter: &mut NodeCounter,
) -> Result<Option<PartialColoring>, ExactError> {
    let m = g.edge_count();
    if m == 0 {
        return Ok(Some(PartialColoring::empty(t, 0)));
    }
    let delta = g.max_degree();
    if t < delta {
        return Ok(None);
    }
    assert!(t <= 63, "palette too large for the bitmask search");
    if m > t * max_matching_size(g) {
        // Each color class is a matching, so t classes cannot cover m edges.
        return Ok(None);
    }
    let (bundle_of, bundles) = parallel_bundles(g);
    let mut search = DecisionSearch {
        g,
        full: if t == 0 { 0 } else { (1u64 << t) - 1 },
        used: vec![0; g.vertex_count()],
        uncolored_at: (0..g.vertex_count()).map(|v| g.degree(VertexId(v))).collect(),
        assigned: vec![None; m],
        bundle_of,
        bundles,
        remaining: m,
    };
    // Symmetry breaking: the edges at one maximum-degree vertex can always be
    // renamed to colors 1..d, so fix them up front.
    let v0 = g
        .vertices()
        .max_by_key(|&v| g.degree(v))
        .expect("nonempty graph has a vertex");
    for (i, &e) in g.incident_edges(v0).iter().enumerate() {
        search.assign(e, i + 1);
    }
    if !g.vertices().all(|v| search.capacity_ok(v)) {
        return Ok(None);
    }
    if search.run(counter)? {
        let mut witness = PartialColoring::empty(t, m);
        for i in 0..m {
            witness.set(EdgeId(i), search.assigned[i]);
        }
        debug_assert!(witness.is_proper(g));
        debug_assert_eq!(witness.colored_count(), m);
        Ok(Some(witness))
    } else {
        Ok(None)
    }
}

/// Exact decision: does `g` admit a proper `t`-edge-coloring? Returns the
/// witness coloring on success.
pub fn is_t_edge_colorable(
    g: &Multigraph,
    t: usize,
    budget: SearchBudget,
) -> Result<Option<PartialColoring>, ExactError> {
    let mut counter = NodeCounter::new(budget);
    decide_colorable(g, t, &mut counter)
}

/// Exact chromatic index.
pub fn chromatic_index(
    g: &Multigraph,
    budget: SearchBudget,
) -> Result<ChromaticCertificate, ExactError> {
    let m = g.edge_count();
    if m == 0 {
        return Ok(ChromaticCertificate {
            chi: 0,
            delta: 0,
            witness: PartialColoring::empty(0, 0),
            lower_bound_proof: LowerBoundProof::EmptyGraph,
        });
    }
    let delta = g.max_degree();
    let mu = g.multiplicity();
    let mut counter = NodeCounter::new(budget);
    let mut last_failure_nodes = 0u64;
    for t in delta..=(delta + mu) {
        let before = counter.nodes;
        if let Some(witness) = decide_colorable(g, t, &mut counter)? {
            let lower_bound_proof = if t == delta {
                let vertex = g
                    .vertices()
                    .max_by_key(|&v| g.degree(v))
                    .expect("nonempty graph");
                LowerBoundProof::DegreeBound {
                    vertex,
                    degree: delta,
                }
            } else {
                LowerBoundProof::ExhaustedSearch {
                    colors: t - 1,
                    nodes_explored: last_failure_nodes,
                }
            };
            return Ok(ChromaticCertificate {
                chi: t,
                delta,
                witness,
                lower_bound_proof,
            });
        }
        last_failure_nodes = counter.nodes - before;
    }
    unreachable!("a (Δ + μ)-edge-coloring always exists");
}

/// Greedy coloring followed by Kempe-chain repair: colors edges in id order
/// with the least free color, then repeatedly applies enlargement witnesses
/// of non-closing alternating paths. Used as the lower bound seed for the
/// exact subgraph search.
pub fn greedy_kempe(g: &Multigraph, t: usize) -> PartialColoring {
    let mut c = PartialColoring::empty(t, g.edge_count());
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        let mut missing_u = c.missing_colors(g, u);
        let missing_v = c.missing_colors(g, v);
        missing_u.retain(|x| missing_v.contains(x));
        if let Some(&color) = missing_u.iter().next() {
            c.set(e, Some(color));
        }
    }
    loop {
        let mut improved = false;
        for e in c.uncolored_edges() {
            if c.color_of(e).is_some() {
                continue;
            }
            let (u, v) = g.endpoints(e);
            let missing_u = c.missing_colors(g, u);
            let missing_v = c.missing_colors(g, v);
            'pairs: for &a in &missing_u {
                for &b in &missing_v {
                    match c.uncolored_cycle(g, e, a, b) {
                        Ok(CycleSearch::Improvement(imp)) => {
                            c = imp.apply(g, &c).expect("witness applies to its coloring");
                            improved = true;
                            break 'pairs;
                        }
                        Ok(CycleSearch::Cycle(_)) => {}
                        Err(_) => unreachable!("preconditions hold by construction"),
                    }
                }
            }
        }
        if !improved {
            return c;
        }
    }
}

/// Static edge order for the subgraph search: grow a connected front so each
/// edge sees as many previously-fixed endpoints as possible.
fn static_edge_order(g: &Multigraph) -> Vec<EdgeId> {
    let m = g.edge_count();
    let mut covered = vec![false; g.vertex_count()];
    let mut taken = vec![false; m];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let mut best: Option<(usize, usize, EdgeId)> = None;
        for e in g.edge_ids() {
            if taken[e.0] {
                continue;
            }
            let (u, v) = g.endpoints(e);
            let cover = covered[u.0] as usize + covered[v.0] as usize;
            let weight = g.degree(u) + g.degree(v);
            let candidate = (cover, weight, e);
            let better = match best {
                None => true,
                Some((bc, bw, be)) => {
                    (cover, weight, std::cmp::Reverse(e)) > (bc, bw, std::cmp::Reverse(be))
                }
            };
            if better {
                best = Some(candidate);
            }
        }
        let (_, _, e) = best.expect("edges remain");
        taken[e.0] = true;
        let (u, v) = g.endpoints(e);
        covered[u.0] = true;
        covered[v.0] = true;
        order.push(e);
    }
    order
}

struct MaxSearch<'a> {
    g: &'a Multigraph,
    delta: usize,
    nu: usize,
    order: Vec<EdgeId>,
    used: Vec<u64>,
    class_count: Vec<usize>,
    assigned: Vec<Option<Color>>,
    bundle_of: Vec<usize>,
    bundle_floor: Vec<usize>,
    bundle_blocked: Vec<bool>,
    colored: usize,
    max_used: usize,
    best_size: usize,
    best: Vec<Option<Color>>,
    target: usize,
}

impl<'a> MaxSearch<'a> {
    fn run(&mut self, pos: usize, counter: &mut NodeCounter) -> Result<(), ExactError> {
        if self.best_size >= self.target {
            return Ok(());
        }
        let remaining = self.order.len() - pos;
        if self.colored + remaining <= self.best_size {
            return Ok(());
        }
        if pos == self.order.len() {
            if self.colored > self.best_size {
                self.best_size = self.colored;
                self.best = self.assigned.clone();
            }
            return Ok(());
        }
        let e = self.order[pos];
        let (u, v) = self.g.endpoints(e);
        let b = self.bundle_of[e.0];
        // Within a bundle the colored edges form a prefix in id order with
        // increasing colors; the static order visits bundle edges in id
        // order, so one floor and one blocked flag per bundle suffice.
        if !self.bundle_blocked[b] {
            let full = if self.delta == 0 { 0 } else { (1u64 << self.delta) - 1 };
            let mut avail = !(self.used[u.0] | self.used[v.0]) & full;
            avail &= !((1u64 << self.bundle_floor[b]) - 1);
            // Fresh-color symmetry breaking: at most one unused color is tried.
            if self.max_used < self.delta {
                avail &= (1u64 << (self.max_used + 1)) - 1;
            }
            let mut rest = avail;
            while rest != 0 {
                let c = rest.trailing_zeros() as usize + 1;
                rest &= rest - 1;
                if self.class_count[c - 1] == self.nu {
                    continue; // a color class is a matching
                }
                counter.tick()?;
                let bit = 1u64 << (c - 1);
                self.used[u.0] |= bit;
                self.used[v.0] |= bit;
                self.class_count[c - 1] += 1;
                self.assigned[e.0] = Some(c);
                self.colored += 1;
                let prev_max = self.max_used;
                let prev_floor = self.bundle_floor[b];
                self.max_used = self.max_used.max(c);
                self.bundle_floor[b] = c;
                self.run(pos + 1, counter)?;
                self.bundle_floor[b] = prev_floor;
                self.max_used = prev_max;
                self.colored -= 1;
                self.assigned[e.0] = None;
                self.class_count[c - 1] -= 1;
                self.used[u.0] &= !bit;
                self.used[v.0] &= !bit;
            }
        }
        // Leave `e` uncolored; later bundle edges stay uncolored too.
        counter.tick()?;
        let prev_blocked = self.bundle_blocked[b];
        self.bundle_blocked[b] = true;
        let out = self.run(pos + 1, counter);
        self.bundle_blocked[b] = prev_blocked;
        out
    }
}

/// Exact maximum Δ-edge-colorable subgraph by branch and bound over partial
/// colorings, seeded with the greedy-plus-Kempe lower bound and capped by the
/// matching bound Δ·ν.
pub fn max_delta_subgraph(
    g: &Multigraph,
    budget: SearchBudget,
) -> Result<MaxSubgraphCertificate, ExactError> {
    let m = g.edge_count();
    let delta = g.max_degree();
    if m == 0 {
        return Ok(MaxSubgraphCertificate {
            coloring: PartialColoring::empty(delta, 0),
            size: 0,
            optimal: true,
        });
    }
    assert!(delta <= 63, "palette too large for the bitmask search");
    let nu = max_matching_size(g);
    let target = m.min(delta * nu);
    let heur = greedy_kempe(g, delta);
    let heur_size = heur.colored_count();
    if heur_size == target {
        return Ok(MaxSubgraphCertificate {
            coloring: heur,
            size: heur_size,
            optimal: true,
        });
    }
    let (bundle_of, bundles) = parallel_bundles(g);
    let mut search = MaxSearch {
        g,
        delta,
        nu,
        order: static_edge_order(g),
        used: vec![0; g.vertex_count()],
        class_count: vec![0; delta],
        assigned: vec![None; m],
        bundle_of,
        bundle_floor: vec![0; bundles.len()],
        bundle_blocked: vec![false; bundles.len()],
        colored: 0,
        max_used: 0,
        best_size: heur_size,
        best: Vec::new(),
        target,
    };
    let mut counter = NodeCounter::new(budget);
    search.run(0, &mut counter)?;
    let coloring = if search.best.is_empty() {
        heur
    } else {
        let mut c = PartialColoring::empty(delta, m);
        for i in 0..m {
            c.set(EdgeId(i), search.best[i]);
        }
        c
    };
    debug_assert!(coloring.is_proper(g));
    debug_assert_eq!(coloring.colored_count(), search.best_size);
    Ok(MaxSubgraphCertificate {
        size: search.best_size,
        coloring,
        optimal: true,
    })
}

/// Whether the r'_e enumeration supports this instance.
pub fn r_prime_in_range(chi: usize, edge_count: usize) -> bool {
    chi <= R_PRIME_MAX_CHI && edge_count <= R_PRIME_MAX_EDGES
}

struct RPrimeSearch<'a> {
    g: &'a Multigraph,
    chi: usize,
    k: usize,
    nu: usize,
    order: Vec<EdgeId>,
    used: Vec<u64>,
    class_count: Vec<usize>,
    bundle_of: Vec<usize>,
    bundle_floor: Vec<usize>,
    max_used: usize,
    best: usize,
    lower: usize,
}

impl<'a> RPrimeSearch<'a> {
    /// Sum of the k smallest final class sizes is at least the sum of the k
    /// smallest of max(count, 1): every class must end nonempty.
    fn bound(&self) -> usize {
        let mut sizes: Vec<usize> = self.class_count.iter().map(|&c| c.max(1)).collect();
        sizes.sort_unstable();
        sizes.iter().take(self.k).sum()
    }

    fn run(&mut self, pos: usize, counter: &mut NodeCounter) -> Result<(), ExactError> {
        if self.best == self.lower {
            return Ok(());
        }
        if self.bound() >= self.best {
            return Ok(());
        }
        if pos == self.order.len() {
            debug_assert!(self.class_count.iter().all(|&c| c >= 1));
            let mut sizes = self.class_count.clone();
            sizes.sort_unstable();
            let score: usize = sizes.iter().take(self.k).sum();
            self.best = self.best.min(score);
            return Ok(());
        }
        let e = self.order[pos];
        let (u, v) = self.g.endpoints(e);
        let b = self.bundle_of[e.0];
        let full = (1u64 << self.chi) - 1;
        let mut avail = !(self.used[u.0] | self.used[v.0]) & full;
        avail &= !((1u64 << self.bundle_floor[b]) - 1);
        if self.max_used < self.chi {
            avail &= (1u64 << (self.max_used + 1)) - 1;
        }
        let mut rest = avail;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            if self.class_count[c - 1] == self.nu {
                continue;
            }
            counter.tick()?;
            let bit = 1u64 << (c - 1);
            self.used[u.0] |= bit;
            self.used[v.0] |= bit;
            self.class_count[c - 1] += 1;
            let prev_max = self.max_used;
            let prev_floor = self.bundle_floor[b];
            self.max_used = self.max_used.max(c);
            self.bundle_floor[b] = c;
            self.run(pos + 1, counter)?;
            self.bundle_floor[b] = prev_floor;
            self.max_used = prev_max;
            self.class_count[c - 1] -= 1;
            self.used[u.0] &= !bit;
            self.used[v.0] &= !bit;
        }
        Ok(())
    }
}

/// Minimum total size of the k = χ' − Δ smallest color classes over all
/// optimal edge colorings; zero for class I graphs. Exhaustive enumeration
/// with color-renaming symmetry broken by first use.
pub fn r_prime(g: &Multigraph, budget: SearchBudget) -> Result<usize, ExactError> {
    let cert = chromatic_index(g, budget)?;
    let k = cert.excess();
    if k == 0 {
        return Ok(0);
    }
    if !r_prime_in_range(cert.chi, g.edge_count()) {
        return Err(ExactError::OutOfRange(format!(
            "r' enumeration supports chi <= {R_PRIME_MAX_CHI} and m <= {R_PRIME_MAX_EDGES}, got chi = {}, m = {}",
            cert.chi,
            g.edge_count()
        )));
    }
    let nu = max_matching_size(g);
    let m = g.edge_count();
    let lower = k.max(m.saturating_sub((cert.chi - k) * nu));
    let (bundle_of, bundles) = parallel_bundles(g);
    let mut search = RPrimeSearch {
        g,
        chi: cert.chi,
        k,
        nu,
        order: static_edge_order(g),
        used: vec![0; g.vertex_count()],
        class_count: vec![0; cert.chi],
        bundle_of,
        bundle_floor: vec![0; bundles.len()],
        max_used: 0,
        best: usize::MAX,
        lower,
    };
    let mut counter = NodeCounter::new(budget);
    search.run(0, &mut counter)?;
    assert_ne!(search.best, usize::MAX, "an optimal coloring exists");
    Ok(search.best)
}

/// Compares r_e (from the subgraph oracle) with r'_e (from the coloring
/// oracle). Equality is a theorem for simple graphs and a conjecture for
/// multigraphs, so failures are reported with both values, never asserted
/// here.
pub fn check_re_equals_rprime(
    g: &Multigraph,
    budget: SearchBudget,
) -> Result<VerificationReport, ExactError> {
    let cert = max_delta_subgraph(g, budget)?;
    let re = cert.r_e(g);
    match r_prime(g, budget) {
        Ok(rp) => {
            let witness = json!({ "r_e": re, "r_prime": rp, "simple": g.is_simple() });
            if re == rp {
                let mut report = VerificationReport::pass("rerprime");
                report.witness = Some(witness);
                Ok(report)
            } else {
                Ok(VerificationReport::fail("rerprime", witness))
            }
        }
        Err(ExactError::OutOfRange(reason)) => Ok(VerificationReport::vacuous(
            "rerprime",
            json!({ "reason": reason }),
        )),
        Err(e) => Err(e),
    }
}
