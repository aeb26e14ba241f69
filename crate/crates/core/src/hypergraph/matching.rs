//! Orientability via maximum bipartite matching.
//!
//! An orientation exists exactly when the bipartite graph between edges and
//! their projected vertices has a matching that saturates every edge; this is
//! Hall's theorem applied to the cuckoo allocation problem. The matcher is
//! Hopcroft-Karp: repeated BFS layering plus layered DFS augmentation.

use super::{Hypergraph, Orientation};

const UNMATCHED: u32 = u32::MAX;

/// Find an orientation, or report that none exists.
pub fn orient(h: &Hypergraph) -> Option<Orientation> {
    if h.m() > h.n() {
        return None;
    }
    let adj: Vec<Vec<u32>> = (0..h.m()).map(|i| h.support(i)).collect();
    let (size, match_edge) = hopcroft_karp(&adj, h.n());
    if size < h.m() {
        return None;
    }
    let assignment = match_edge;
    Some(Orientation::new(h, assignment).expect("matching always yields a valid orientation"))
}

pub fn is_orientable(h: &Hypergraph) -> bool {
    orient(h).is_some()
}

/// Maximum matching between left nodes (with adjacency `adj`) and `n_right`
/// right nodes. Returns the matching size and, for each left node, its match.
fn hopcroft_karp(adj: &[Vec<u32>], n_right: usize) -> (usize, Vec<u32>) {
    let n_left = adj.len();
    let mut match_left = vec![UNMATCHED; n_left];
    let mut match_right = vec![UNMATCHED; n_right];
    let mut size = 0usize;
    let mut dist = vec![u32::MAX; n_left];
    let mut queue = std::collections::VecDeque::new();

    loop {
        // BFS from every unmatched left node to layer the alternating graph.
        queue.clear();
        for l in 0..n_left {
            if match_left[l] == UNMATCHED {
                dist[l] = 0;
                queue.push_back(l as u32);
            } else {
                dist[l] = u32::MAX;
            }
        }
        let mut found_free = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l as usize] {
                let next = match_right[r as usize];
                if next == UNMATCHED {
                    found_free = true;
                } else if dist[next as usize] == u32::MAX {
                    dist[next as usize] = dist[l as usize] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found_free {
            break;
        }
        for l in 0..n_left {
            if match_left[l] == UNMATCHED
                && augment(l, adj, &mut match_left, &mut match_right, &mut dist)
            {
                size += 1;
            }
        }
    }
    (size, match_left)
}

fn augment(
    l: usize,
    adj: &[Vec<u32>],
    match_left: &mut [u32],
    match_right: &mut [u32],
    dist: &mut [u32],
) -> bool {
    let d = std::mem::replace(&mut dist[l], u32::MAX);
    for &r in &adj[l] {
        let next = match_right[r as usize];
        let extends = next == UNMATCHED
            || (dist[next as usize] == d + 1
                && augment(next as usize, adj, match_left, match_right, dist));
        if extends {
            match_left[l] = r;
            match_right[r as usize] = l as u32;
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;

    /// Exhaustive oracle: try every choice of one vertex per edge.
    pub(crate) fn orientable_by_enumeration(h: &Hypergraph) -> bool {
        fn rec(h: &Hypergraph, edge: usize, used: &mut Vec<bool>) -> bool {
            if edge == h.m() {
                return true;
            }
            for &v in &h.support(edge) {
                if !used[v as usize] {
                    used[v as usize] = true;
                    if rec(h, edge + 1, used) {
                        used[v as usize] = false;
                        return true;
                    }
                    used[v as usize] = false;
                }
            }
            false
        }
        rec(h, 0, &mut vec![false; h.n()])
    }

    #[test]
    fn single_edge_is_orientable() {
        let h = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let o = orient(&h).unwrap();
        assert_eq!(o.m(), 1);
        assert_eq!(o.free_count(), 2);
    }

    #[test]
    fn four_parallel_edges_on_three_vertices_are_not() {
        let h = Hypergraph::new(5, 3, vec![vec![0, 1, 2]; 4]).unwrap();
        assert!(!is_orientable(&h));
    }

    #[test]
    fn witness_saturates_every_edge_injectively() {
        let h = Hypergraph::sample(40, 30, 3, 5);
        if let Some(o) = orient(&h) {
            assert_eq!(o.m(), h.m());
            assert_eq!(o.free_count(), h.n() - h.m());
        }
    }

    #[test]
    fn matching_agrees_with_exhaustive_oracle_on_small_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=6);
            let m = rng.gen_range(0..=4);
            let h = Hypergraph::sample(n, m, 3, rng.gen());
            assert_eq!(
                is_orientable(&h),
                orientable_by_enumeration(&h),
                "n={n} m={m}: {:?}",
                h.edges().collect::<Vec<_>>()
            );
        }
    }
}
