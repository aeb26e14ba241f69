//! The expansion property: every not-too-large edge subset spans almost
//! `(k-1)` vertices per edge.
//!
//! Subsets of at most `ln ln n` edges must span at least `(k-1)|E'|`
//! vertices; subsets with `ln ln n < |E'| < n/k` get the slack `x_s` and must
//! span `(k-1-x_s)|E'|`. Larger subsets are outside the property. The exact
//! mode enumerates all edge subsets; the sampled mode grows random connected
//! subsets, which suffices because an inclusion-minimal violating set is
//! connected (splitting a disconnected violator leaves a part that violates).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Hypergraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub enum ExpansionMode {
    /// Enumerate every nonempty edge subset; requires m <= 20.
    Exact,
    /// Grow `samples` random connected edge subsets from a seeded stream.
    Sampled { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionViolation {
    /// Sorted indices of the violating edge subset.
    pub edges: Vec<usize>,
    /// Distinct vertices the subset spans.
    pub spanned: usize,
    /// The bound the subset had to meet.
    pub required: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionOutcome {
    pub holds: bool,
    /// Number of violating subsets seen (exact) or violating samples (sampled).
    pub violations: u64,
    pub witness: Option<ExpansionViolation>,
}

const EXACT_EDGE_LIMIT: usize = 20;

/// The slack `x_s = log_k((k-1)e^k) / (log_k(n/s) - 1)`.
pub fn expansion_slack(n: usize, k: usize, s: usize) -> Result<f64> {
    if s == 0 {
        return Err(Error::Domain("slack is defined for nonempty subsets"));
    }
    if s * k >= n {
        return Err(Error::Domain("slack x_s is undefined once s >= n/k"));
    }
    let kf = k as f64;
    // ln((k-1)e^k) = ln(k-1) + k; the log_k denominators cancel into ln k.
    Ok(((kf - 1.0).ln() + kf) / ((n as f64 / s as f64).ln() - kf.ln()))
}

/// Required spanned-vertex bound for a subset of `s` edges, or `None` when
/// the size falls outside both regimes.
fn required_span(n: usize, k: usize, s: usize) -> Option<f64> {
    let lnln = (n as f64).ln().ln();
    let sf = s as f64;
    if sf <= lnln {
        return Some((k as f64 - 1.0) * sf);
    }
    if s * k < n {
        let x_s = expansion_slack(n, k, s).expect("regime guarantees s < n/k");
        return Some((k as f64 - 1.0 - x_s) * sf);
    }
    None
}

pub fn check_expansion(h: &Hypergraph, mode: ExpansionMode) -> Result<ExpansionOutcome> {
    match mode {
        ExpansionMode::Exact => {
            if h.m() > EXACT_EDGE_LIMIT {
                return Err(Error::SizeLimit(
                    "exact expansion check handles at most 20 edges",
                ));
            }
            Ok(check_exact(h))
        }
        ExpansionMode::Sampled { samples, seed } => Ok(check_sampled(h, samples, seed)),
    }
}

fn check_exact(h: &Hypergraph) -> ExpansionOutcome {
    let m = h.m();
    let mut violations = 0u64;
    let mut witness = None;
    let mut stamp = vec![u32::MAX; h.n()];
    for subset in 1u32..(1u32 << m) {
        let s = subset.count_ones() as usize;
        let Some(required) = required_span(h.n(), h.k(), s) else {
            continue;
        };
        let mut spanned = 0usize;
        for e in 0..m {
            if subset >> e & 1 == 1 {
                for &v in h.edge(e) {
                    if stamp[v as usize] != subset {
                        stamp[v as usize] = subset;
                        spanned += 1;
                    }
                }
            }
        }
        if (spanned as f64) < required {
            violations += 1;
            if witness.is_none() {
                witness = Some(ExpansionViolation {
                    edges: (0..m).filter(|&e| subset >> e & 1 == 1).collect(),
                    spanned,
                    required,
                });
            }
        }
    }
    ExpansionOutcome {
        holds: violations == 0,
        violations,
        witness,
    }
}

fn check_sampled(h: &Hypergraph, samples: u64, seed: u64) -> ExpansionOutcome {
    let (n, m, k) = (h.n(), h.m(), h.k());
    if m == 0 {
        return ExpansionOutcome {
            holds: true,
            violations: 0,
            witness: None,
        };
    }
    // Largest subset size either regime constrains.
    let regime1_max = if n >= 1 { (n - 1) / k } else { 0 };
    let regime2_max = (n as f64).ln().ln().floor().max(0.0) as usize;
    let max_size = regime1_max.max(regime2_max).min(m);
    if max_size == 0 {
        return ExpansionOutcome {
            holds: true,
            violations: 0,
            witness: None,
        };
    }

    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); n];
    for e in 0..m {
        for v in h.support(e) {
            incident[v as usize].push(e as u32);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0u64;
    let mut witness: Option<ExpansionViolation> = None;
    let mut grow = Growth {
        h,
        incident: &incident,
        vertex_stamp: vec![u64::MAX; n],
        edge_stamp: vec![u64::MAX; m],
        chosen: Vec::new(),
        candidates: Vec::new(),
        spanned: 0,
    };

    for sample in 0..samples {
        // Log-uniform target size keeps small subsets heavily sampled while
        // still reaching the upper end of the checked regime.
        let target = (rng.gen_range(0.0..(max_size as f64).ln().max(f64::MIN_POSITIVE)))
            .exp()
            .floor() as usize;
        let target = target.clamp(1, max_size);
        let mut violated_here = false;

        grow.reset();
        let start = rng.gen_range(0..m);
        grow.add_edge(start, sample);

        loop {
            if let Some(required) = required_span(n, k, grow.chosen.len()) {
                if (grow.spanned as f64) < required {
                    violations += 1;
                    violated_here = true;
                    if witness.is_none() {
                        let mut edges = grow.chosen.clone();
                        edges.sort_unstable();
                        witness = Some(ExpansionViolation {
                            edges,
                            spanned: grow.spanned,
                            required,
                        });
                    }
                }
            }
            if violated_here || grow.chosen.len() >= target {
                break;
            }
            match grow.pick_adjacent(&mut rng, sample) {
                Some(e) => grow.add_edge(e, sample),
                None => break,
            }
        }
    }

    ExpansionOutcome {
        holds: violations == 0,
        violations,
        witness,
    }
}

/// Connected-subset growth state, reused across samples via stamps.
struct Growth<'a> {
    h: &'a Hypergraph,
    incident: &'a [Vec<u32>],
    vertex_stamp: Vec<u64>,
    edge_stamp: Vec<u64>,
    chosen: Vec<usize>,
    candidates: Vec<u32>,
    spanned: usize,
}

impl Growth<'_> {
    fn reset(&mut self) {
        self.chosen.clear();
        self.candidates.clear();
        self.spanned = 0;
    }

    fn add_edge(&mut self, e: usize, sample: u64) {
        self.edge_stamp[e] = sample;
        self.chosen.push(e);
        for &v in self.h.edge(e) {
            if self.vertex_stamp[v as usize] != sample {
                self.vertex_stamp[v as usize] = sample;
                self.spanned += 1;
                self.candidates
                    .extend_from_slice(&self.incident[v as usize]);
            }
        }
    }

    /// Random adjacent unchosen edge; stale candidate entries are discarded.
    fn pick_adjacent(&mut self, rng: &mut ChaCha8Rng, sample: u64) -> Option<usize> {
        while !self.candidates.is_empty() {
            let idx = rng.gen_range(0..self.candidates.len());
            let e = self.candidates.swap_remove(idx) as usize;
            if self.edge_stamp[e] != sample {
                return Some(e);
            }
        }
        None
    }
}
