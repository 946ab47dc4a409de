//! Slow, independent cross-check oracles.
//!
//! These walk the full subset lattice instead of branching over partial
//! colorings, so they share no search state with the main oracles and can be
//! used to validate them on small instances.

use crate::exact::{is_t_edge_colorable, SearchBudget};
use crate::multigraph::{EdgeId, Multigraph};

/// Size of the largest Δ(g)-edge-colorable edge subset, by testing every
/// subset in decreasing-size order. Exponential; intended for m ≤ ~14.
pub fn max_colorable_subset_size(g: &Multigraph) -> usize {
    let m = g.edge_count();
    assert!(m <= 22, "subset enumeration supports m <= 22, got {m}");
    let delta = g.max_degree();
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); m + 1];
    for mask in 0..(1u32 << m) {
        by_size[mask.count_ones() as usize].push(mask);
    }
    for size in (0..=m).rev() {
        for &mask in &by_size[size] {
            let keep: Vec<EdgeId> = (0..m).filter(|&i| mask >> i & 1 == 1).map(EdgeId).collect();
            let sub = g.subgraph_of_edges(&keep);
            if is_t_edge_colorable(&sub, delta, SearchBudget::default())
                .expect("subset checks are tiny")
                .is_some()
            {
                return size;
            }
        }
    }
    0
}

/// All inclusion-maximal Δ(g)-edge-colorable edge subsets of maximum size,
/// as edge-id lists. Used to enumerate every maximum subgraph on tiny
/// instances.
pub fn maximum_colorable_subsets(g: &Multigraph) -> Vec<Vec<EdgeId>> {
    let m = g.edge_count();
    assert!(m <= 22, "subset enumeration supports m <= 22, got {m}");
    let delta = g.max_degree();
    let best = max_colorable_subset_size(g);
    let mut out = Vec::new();
    for mask in 0..(1u32 << m) {
        if mask.count_ones() as usize != best {
            continue;
        }
        let keep: Vec<EdgeId> = (0..m).filter(|&i| mask >> i & 1 == 1).map(EdgeId).collect();
        let sub = g.subgraph_of_edges(&keep);
        if is_t_edge_colorable(&sub, delta, SearchBudget::default())
            .expect("subset checks are tiny")
            .is_some()
        {
            out.push(keep);
        }
    }
    out
}
