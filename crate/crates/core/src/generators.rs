//! Deterministic constructors for the extremal families and named example
//! instances, plus seeded random class II graphs for corpus testing.
//!
//! Generators are pure functions of their parameters: the same call always
//! yields the same edge list, byte for byte.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coloring::PartialColoring;
use crate::exact::{chromatic_index, ExactError, SearchBudget};
use crate::multigraph::{EdgeId, Multigraph};

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("no class II sample found after {rejections} rejections")]
    RejectionBudget { rejections: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Reproducible class II sample with its rejection count.
#[derive(Clone, Debug)]
pub struct ClassTwoSample {
    pub graph: Multigraph,
    pub rejections: usize,
}

/// Cycle of length `2k + 1` with every edge at multiplicity `2k`:
/// `2k(2k + 1)` edges, maximum degree `4k`, girth `2k + 1`.
pub fn gen_fat_cycle(k: usize) -> Multigraph {
    assert!(k >= 1, "fat cycle needs k >= 1");
    let n = 2 * k + 1;
    let mut edges = Vec::with_capacity(2 * k * n);
    for v in 0..n {
        for _ in 0..2 * k {
            edges.push((v, (v + 1) % n));
        }
    }
    Multigraph::build(n, &edges).expect("fat cycle is loopless")
}

/// The explicit maximum subgraph of the fat cycle: one bundle kept whole and
/// every other bundle reduced by one edge, `4k²` edges in total.
pub fn fat_cycle_max_subgraph_edges(k: usize) -> Vec<EdgeId> {
    let n = 2 * k + 1;
    let mut keep = Vec::new();
    for bundle in 0..n {
        let width = if bundle == 0 { 2 * k } else { 2 * k - 1 };
        for j in 0..width {
            keep.push(EdgeId(bundle * 2 * k + j));
        }
    }
    keep
}

/// Two chains of `r` subdivided complete bipartite blocks, joined by a bridge
/// between the chain hubs: a simple `(2r + 1)`-regular graph.
///
/// Each block is `K_{2r+1,2r+1}` with its lexicographically first edge
/// subdivided; the subdivision vertices of one chain's blocks are identified
/// into a single hub.
pub fn gen_hr_chain(r: usize) -> Multigraph {
    assert!(r >= 1, "chain needs r >= 1");
    let side = 2 * r + 1;
    let block_vertices = 2 * side;
    let n = 2 + 2 * r * block_vertices;
    let mut edges = Vec::new();
    for copy in 0..2usize {
        let hub = copy;
        for block in 0..r {
            let base = 2 + (copy * r + block) * block_vertices;
            let a = |i: usize| base + i;
            let b = |i: usize| base + side + i;
            for i in 0..side {
                for j in 0..side {
                    if i == 0 && j == 0 {
                        continue; // subdivided below
                    }
                    edges.push((a(i), b(j)));
                }
            }
            edges.push((a(0), hub));
            edges.push((hub, b(0)));
        }
    }
    edges.push((0, 1));
    Multigraph::build(n, &edges).expect("chain is loopless")
}

/// `k` petals glued at a shared center: per petal two center edges and a
/// `(2k − 1)`-fold parallel pair, giving a `2k`-regular multigraph on
/// `2k + 1` vertices.
pub fn gen_flower(k: usize) -> Multigraph {
    assert!(k >= 2, "flower needs k >= 2");
    let n = 2 * k + 1;
    let mut edges = Vec::new();
    for petal in 0..k {
        let x = 1 + 2 * petal;
        let y = 2 + 2 * petal;
        edges.push((0, x));
        edges.push((0, y));
        for _ in 0..2 * k - 1 {
            edges.push((x, y));
        }
    }
    Multigraph::build(n, &edges).expect("flower is loopless")
}

/// Triangle on vertices a = 0, b = 1, c = 2 with every pair doubled, plus the
/// four-colored maximum subgraph whose missing sets are {4} at a, {3} at b
/// and {1, 2} at c. The uncolored edges are one b-c copy and one a-c copy.
pub fn gen_figure1() -> (Multigraph, PartialColoring) {
    let g = Multigraph::build(3, &[(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)])
        .expect("doubled triangle is loopless");
    let coloring = PartialColoring::from_assignments(
        &g,
        4,
        &[(EdgeId(0), 1), (EdgeId(1), 2), (EdgeId(2), 4), (EdgeId(4), 3)],
    )
    .expect("the fixed coloring is proper");
    (g, coloring)
}

/// The Petersen graph: outer five-cycle 0..4, inner pentagram 5..9, spokes in
/// between. Hard-coded named instance for tests and corpora.
pub fn petersen() -> Multigraph {
    Multigraph::build(
        10,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
        ],
    )
    .expect("petersen is loopless")
}

/// Reproducible random connected multigraph that the chromatic-index oracle
/// certifies as class II. Resamples until certified, up to 1000 rejections.
pub fn gen_random_class2(
    seed: u64,
    n: usize,
    mu_max: usize,
    budget: SearchBudget,
) -> Result<ClassTwoSample, GeneratorError> {
    assert!(n <= 10, "random corpus supports n <= 10");
    assert!((1..=3).contains(&mu_max), "random corpus supports mu_max in 1..=3");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for rejections in 0..1000 {
        let g = random_connected(&mut rng, n, mu_max);
        if g.edge_count() == 0 {
            continue;
        }
        let cert = chromatic_index(&g, budget)?;
        if cert.is_class_two() {
            return Ok(ClassTwoSample {
                graph: g,
                rejections,
            });
        }
    }
    Err(GeneratorError::RejectionBudget { rejections: 1000 })
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize, mu_max: usize) -> Multigraph {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let extra = rng.gen_range(0..=2 * n);
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let count = edges
            .iter()
            .filter(|&&(a, b)| (a, b) == (u.min(v), u.max(v)) || (b, a) == (u.min(v), u.max(v)))
            .count();
        if count < mu_max {
            edges.push((u.min(v), u.max(v)));
        }
    }
    Multigraph::build(n, &edges).expect("sampled edges are loopless")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{is_t_edge_colorable, SearchBudget};
    use crate::multigraph::VertexId;
    use std::collections::BTreeSet;

    #[test]
    fn fat_cycle_counts() {
        for k in 1..=3usize {
            let g = gen_fat_cycle(k);
            assert_eq!(g.vertex_count(), 2 * k + 1);
            assert_eq!(g.edge_count(), 2 * k * (2 * k + 1));
            assert_eq!(g.max_degree(), 4 * k);
            assert_eq!(g.min_degree(), 4 * k);
            assert_eq!(g.multiplicity(), 2 * k);
            assert_eq!(g.girth().finite(), Some(2 * k + 1));
            assert!(g.is_connected());
        }
    }

    #[test]
    fn fat_cycle_explicit_subgraph_is_colorable() {
        // One bundle kept whole, the rest thinned by one: 4k² edges that
        // still color with 4k colors, for k up to 3.
        for k in 1..=3usize {
            let g = gen_fat_cycle(k);
            let keep = fat_cycle_max_subgraph_edges(k);
            assert_eq!(keep.len(), 4 * k * k);
            let h = g.subgraph_of_edges(&keep);
            assert_eq!(h.max_degree(), 4 * k - 1);
            let witness = is_t_edge_colorable(&h, 4 * k, SearchBudget::default()).unwrap();
            assert!(witness.is_some(), "explicit subgraph colors with 4k colors");
        }
    }

    #[test]
    fn hr_chain_counts() {
        let g = gen_hr_chain(1);
        assert_eq!(g.vertex_count(), 14);
        assert_eq!(g.edge_count(), 21);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        assert!(g.is_simple());
        assert!(g.is_connected());

        let g = gen_hr_chain(2);
        assert_eq!(g.vertex_count(), 42);
        assert_eq!(g.edge_count(), 105);
        assert!(g.vertices().all(|v| g.degree(v) == 5));
        assert!(g.is_simple());
        assert!(g.is_connected());
    }

    #[test]
    fn hr_chain_is_class_two() {
        let g = gen_hr_chain(1);
        let cert = chromatic_index(&g, SearchBudget::default()).unwrap();
        assert_eq!(cert.chi, 4);
        assert!(cert.is_class_two());
    }

    #[test]
    fn flower_counts() {
        let g = gen_flower(2);
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 10);
        assert!(g.vertices().all(|v| g.degree(v) == 4));
        assert_eq!(g.multiplicity(), 3);

        let g = gen_flower(3);
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 21);
        assert!(g.vertices().all(|v| g.degree(v) == 6));
        assert_eq!(g.multiplicity(), 5);
    }

    #[test]
    fn figure1_missing_sets() {
        let (g, c) = gen_figure1();
        assert_eq!(g.max_degree(), 4);
        assert_eq!(c.colored_count(), 4);
        assert_eq!(c.missing_colors(&g, VertexId(0)), BTreeSet::from([4]));
        assert_eq!(c.missing_colors(&g, VertexId(1)), BTreeSet::from([3]));
        assert_eq!(c.missing_colors(&g, VertexId(2)), BTreeSet::from([1, 2]));
        assert_eq!(c.uncolored_edges(), vec![EdgeId(3), EdgeId(5)]);
    }

    #[test]
    fn figure1_subgraph_is_maximum() {
        let (g, c) = gen_figure1();
        let cert = crate::exact::max_delta_subgraph(&g, SearchBudget::default()).unwrap();
        assert_eq!(cert.size, c.colored_count());
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(gen_fat_cycle(2).to_text(), gen_fat_cycle(2).to_text());
        assert_eq!(gen_hr_chain(1).to_text(), gen_hr_chain(1).to_text());
        assert_eq!(gen_flower(3).to_text(), gen_flower(3).to_text());
        let a = gen_random_class2(1, 5, 1, SearchBudget::default()).unwrap();
        let b = gen_random_class2(1, 5, 1, SearchBudget::default()).unwrap();
        assert_eq!(a.graph.to_text(), b.graph.to_text());
        assert_eq!(a.rejections, b.rejections);
    }

    #[test]
    fn random_class2_is_certified() {
        for seed in [1u64, 2, 3] {
            let sample = gen_random_class2(seed, 5, 1, SearchBudget::default()).unwrap();
            assert!(sample.graph.is_simple());
            assert!(sample.graph.is_connected());
            let cert = chromatic_index(&sample.graph, SearchBudget::default()).unwrap();
            assert!(cert.is_class_two());
        }
        let sample = gen_random_class2(2, 4, 3, SearchBudget::default()).unwrap();
        assert!(sample.graph.multiplicity() <= 3);
        let cert = chromatic_index(&sample.graph, SearchBudget::default()).unwrap();
        assert!(cert.is_class_two());
    }
}
