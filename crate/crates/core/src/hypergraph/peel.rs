//! 2-core extraction by degree-1 stripping.
//!
//! Repeatedly pick a vertex of degree exactly 1 and delete its unique alive
//! edge. Degrees count tuple occurrences: a vertex appearing twice in one
//! edge has degree 2 from it and is not peelable until the edge dies. What
//! survives (ignoring isolated vertices) is the unique maximal subhypergraph
//! of minimum degree 2, independent of the peel order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreResult {
    /// Sorted vertices of the 2-core.
    pub core_vertices: Vec<u32>,
    /// Sorted edge indices of the 2-core.
    pub core_edges: Vec<usize>,
    /// The (vertex, edge) removals in the order they happened.
    pub peel_order: Vec<(u32, usize)>,
}

enum Picker {
    Fifo(usize),
    Seeded(Box<ChaCha8Rng>),
}

impl Picker {
    fn pick(&mut self, pool: &mut Vec<u32>) -> Option<u32> {
        match self {
            Picker::Fifo(head) => {
                if *head >= pool.len() {
                    return None;
                }
                let v = pool[*head];
                *head += 1;
                Some(v)
            }
            Picker::Seeded(rng) => {
                if pool.is_empty() {
                    return None;
                }
                let idx = rng.gen_range(0..pool.len());
                Some(pool.swap_remove(idx))
            }
        }
    }
}

/// Strip with deterministic first-in-first-out tie-breaking.
pub fn strip_core(h: &Hypergraph) -> CoreResult {
    strip_with(h, Picker::Fifo(0))
}

/// Strip with seeded random tie-breaking; the resulting core is identical.
pub fn strip_core_seeded(h: &Hypergraph, seed: u64) -> CoreResult {
    strip_with(h, Picker::Seeded(Box::new(ChaCha8Rng::seed_from_u64(seed))))
}

fn strip_with(h: &Hypergraph, mut picker: Picker) -> CoreResult {
    let n = h.n();
    let m = h.m();
    let mut degree = vec![0u32; n];
    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); n];
    for e in 0..m {
        for &v in h.edge(e) {
            degree[v as usize] += 1;
            incident[v as usize].push(e as u32);
        }
    }
    let mut alive = vec![true; m];
    let mut pool: Vec<u32> = (0..n as u32).filter(|&v| degree[v as usize] == 1).collect();
    let mut peel_order = Vec::new();

    while let Some(v) = picker.pick(&mut pool) {
        if degree[v as usize] != 1 {
            continue; // stale entry: went to 0 while queued
        }
        let e = incident[v as usize]
            .iter()
            .rev()
            .find(|&&e| alive[e as usize])
            .copied()
            .expect("degree-1 vertex must have an alive incident edge") as usize;
        alive[e] = false;
        peel_order.push((v, e));
        for &u in h.edge(e) {
            degree[u as usize] -= 1;
        }
        for u in h.support(e) {
            if degree[u as usize] == 1 {
                pool.push(u);
            }
        }
    }

    let core_edges: Vec<usize> = (0..m).filter(|&e| alive[e]).collect();
    let core_vertices: Vec<u32> = (0..n as u32).filter(|&v| degree[v as usize] >= 2).collect();
    debug_assert!(degree.iter().all(|&d| d != 1));
    CoreResult {
        core_vertices,
        core_edges,
        peel_order,
    }
}
