//! h-neighborhoods: BFS over the reversed orientation.
//!
//! Level 0 of a vertex v is v itself; level t+1 collects the vertices of
//! edges oriented to level-t vertices that were not seen earlier. The
//! cumulative count through level t can never exceed `(k-1)^{t+1}`.

use super::{Hypergraph, Orientation};

/// Cumulative number of vertices within h-distance `t` of `v`.
pub fn neighborhood_size(h: &Hypergraph, o: &Orientation, v: u32, t: usize) -> usize {
    bfs(h, o, v, Some(t), false).0
}

/// Minimal `t` such that a free vertex lies within h-distance `t` of `v`,
/// or `None` when no free vertex is reachable.
pub fn distance_to_free(h: &Hypergraph, o: &Orientation, v: u32) -> Option<usize> {
    bfs(h, o, v, None, true).1
}

fn bfs(
    h: &Hypergraph,
    o: &Orientation,
    v: u32,
    max_level: Option<usize>,
    stop_at_free: bool,
) -> (usize, Option<usize>) {
    debug_assert!((v as usize) < h.n());
    if stop_at_free && o.is_free(v) {
        return (1, Some(0));
    }
    let mut seen = vec![false; h.n()];
    seen[v as usize] = true;
    let mut count = 1usize;
    let mut frontier = vec![v];
    let mut level = 0usize;
    while !frontier.is_empty() {
        if let Some(cap) = max_level {
            if level == cap {
                break;
            }
        }
        level += 1;
        let mut next = Vec::new();
        for &u in &frontier {
            let Some(e) = o.edge_oriented_to(u) else {
                continue;
            };
            for &w in h.edge(e) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    if stop_at_free && o.is_free(w) {
                        return (count, Some(level));
                    }
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    (count, None)
}
