//! Exhaustive corpora of small graphs up to isomorphism, used by the
//! verification suites.
//!
//! Canonical forms are brute force: the minimum edge code over all vertex
//! permutations. That is only viable at desk scale (n ≤ 7 for simple graphs,
//! n ≤ 5 for multigraphs), which is exactly the scale the suites need, and it
//! is trivially correct.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::multigraph::Multigraph;

/// Unordered vertex pairs of an n-vertex graph in lexicographic order.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    // Pairs (0,1)..(0,n-1), (1,2)..: offset of row i is i*n - i*(i+1)/2.
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

/// For each permutation, the induced map on pair indices.
fn pair_maps(n: usize) -> Vec<Vec<usize>> {
    let ps = pairs(n);
    permutations(n)
        .into_iter()
        .map(|perm| {
            ps.iter()
                .map(|&(i, j)| pair_index(n, perm[i], perm[j]))
                .collect()
        })
        .collect()
}

fn canonical_mask(mask: u32, maps: &[Vec<usize>]) -> u32 {
    let mut best = u32::MAX;
    for map in maps {
        let mut image = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let bit = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            image |= 1 << map[bit];
        }
        best = best.min(image);
    }
    best
}

/// All graphs on exactly `n` labeled-then-canonicalized vertices, one mask
/// per isomorphism class, built by vertex augmentation.
fn graph_levels() -> &'static Vec<Vec<u32>> {
    static LEVELS: OnceLock<Vec<Vec<u32>>> = OnceLock::new();
    LEVELS.get_or_init(|| {
        let mut levels: Vec<Vec<u32>> = vec![vec![0], vec![0]]; // n = 0, 1
        for n in 2..=7usize {
            let maps = pair_maps(n);
            let mut seen: BTreeSet<u32> = BTreeSet::new();
            for &old in &levels[n - 1] {
                // Re-index the old pairs into the n-vertex pair space.
                let mut base = 0u32;
                let mut rest = old;
                let old_pairs = pairs(n - 1);
                while rest != 0 {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let (i, j) = old_pairs[bit];
                    base |= 1 << pair_index(n, i, j);
                }
                for nb in 0u32..(1 << (n - 1)) {
                    let mut mask = base;
                    let mut rest = nb;
                    while rest != 0 {
                        let v = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        mask |= 1 << pair_index(n, v, n - 1);
                    }
                    seen.insert(canonical_mask(mask, &maps));
                }
            }
            levels.push(seen.into_iter().collect());
        }
        levels
    })
}

fn mask_to_graph(n: usize, mask: u32) -> Multigraph {
    let ps = pairs(n);
    let edges: Vec<(usize, usize)> = (0..ps.len())
        .filter(|&b| mask >> b & 1 == 1)
        .map(|b| ps[b])
        .collect();
    Multigraph::build(n, &edges).expect("mask encodes a simple graph")
}

/// Every simple graph on exactly `n` vertices, up to isomorphism. Supports
/// n ≤ 7.
pub fn simple_graphs(n: usize) -> Vec<Multigraph> {
    assert!(n <= 7, "simple enumeration supports n <= 7");
    graph_levels()[n]
        .iter()
        .map(|&mask| mask_to_graph(n, mask))
        .collect()
}

/// Every connected simple graph on exactly `n` vertices, up to isomorphism.
pub fn connected_simple_graphs(n: usize) -> Vec<Multigraph> {
    simple_graphs(n)
        .into_iter()
        .filter(|g| g.is_connected())
        .collect()
}

/// Every connected multigraph on exactly `n` vertices with maximum edge
/// multiplicity at most `mu_max`, up to isomorphism. Supports n ≤ 5.
pub fn connected_multigraphs(n: usize, mu_max: usize) -> Vec<Multigraph> {
    assert!(n <= 5, "multigraph enumeration supports n <= 5");
    assert!(mu_max >= 1);
    if n == 0 {
        return vec![Multigraph::build(0, &[]).unwrap()];
    }
    let maps = pair_maps(n);
    let ps = pairs(n);
    let mut out = Vec::new();
    for support in connected_simple_graphs(n) {
        let support_pairs: Vec<usize> = support
            .edge_ids()
            .map(|e| {
                let (u, v) = support.endpoints(e);
                pair_index(n, u.index(), v.index())
            })
            .collect();
        let m = support_pairs.len();
        let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
        let mut mults = vec![1u8; m];
        loop {
            let mut vector = vec![0u8; ps.len()];
            for (idx, &p) in support_pairs.iter().enumerate() {
                vector[p] = mults[idx];
            }
            let mut best = vector.clone();
            for map in &maps {
                let mut image = vec![0u8; ps.len()];
                for (p, &count) in vector.iter().enumerate() {
                    if count > 0 {
                        image[map[p]] = count;
                    }
                }
                if image < best {
                    best = image;
                }
            }
            if seen.insert(best.clone()) {
                let mut edges = Vec::new();
                for (p, &count) in best.iter().enumerate() {
                    for _ in 0..count {
                        edges.push(ps[p]);
                    }
                }
                out.push(Multigraph::build(n, &edges).expect("valid multigraph"));
            }
            // Next multiplicity vector in mixed radix.
            let mut carry = 0;
            while carry < m {
                if (mults[carry] as usize) < mu_max {
                    mults[carry] += 1;
                    break;
                }
                mults[carry] = 1;
                carry += 1;
            }
            if carry == m {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_graph_counts() {
        let all: Vec<usize> = (1..=7).map(|n| simple_graphs(n).len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156, 1044]);
        let connected: Vec<usize> = (1..=7).map(|n| connected_simple_graphs(n).len()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn multigraph_enumeration_is_sound() {
        let graphs = connected_multigraphs(4, 3);
        assert!(!graphs.is_empty());
        for g in &graphs {
            assert!(g.is_connected());
            assert!(g.multiplicity() <= 3);
            assert_eq!(g.vertex_count(), 4);
        }
        // With mu_max = 1 the enumeration reduces to connected simple graphs.
        assert_eq!(
            connected_multigraphs(5, 1).len(),
            connected_simple_graphs(5).len()
        );
        // Triangle multiplicity vectors up to rotation/reflection: the
        // multiset of three values from {1,2,3} determines the class.
        assert_eq!(connected_multigraphs(3, 3).len(), 10 + 6);
    }

    #[test]
    fn multigraph_codes_are_distinct() {
        let graphs = connected_multigraphs(4, 2);
        let texts: BTreeSet<String> = graphs.iter().map(|g| g.to_text()).collect();
        assert_eq!(texts.len(), graphs.len());
    }
}
