//! The k-bounded multigraph laboratory: random sampling, orientability via
//! bipartite matching, 2-core stripping, h-neighborhoods, and the density and
//! expansion property checkers.
//!
//! Edges are stored as the ordered k-tuples drawn by the hash functions; most
//! structural notions (orientations, induced edges, spanned vertices) work on
//! the projection of a tuple to its set of distinct vertices.

pub mod density;
pub mod expansion;
pub mod flow;
pub mod matching;
pub mod neighborhood;
pub mod peel;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use density::{check_density, max_density, DensityMode, DensityOutcome, Ratio};
pub use expansion::{check_expansion, expansion_slack, ExpansionMode, ExpansionOutcome};
pub use matching::{is_orientable, orient};
pub use neighborhood::{distance_to_free, neighborhood_size};
pub use peel::{strip_core, strip_core_seeded, CoreResult};

/// A multigraph whose edges are ordered k-tuples over `{0, ..., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Box<[u32]>>,
}

impl Hypergraph {
    /// Build from explicit ordered tuples, validating arity and vertex range.
    pub fn new(n: usize, k: usize, edges: Vec<Vec<u32>>) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain("hypergraph needs at least one vertex"));
        }
        if k < 2 {
            return Err(Error::Domain("edge arity must be at least 2"));
        }
        for e in &edges {
            if e.len() != k {
                return Err(Error::Domain("every edge must be an ordered k-tuple"));
            }
            if e.iter().any(|&v| v as usize >= n) {
                return Err(Error::Domain("edge references a vertex outside the range"));
            }
        }
        Ok(Hypergraph {
            n,
            k,
            edges: edges.into_iter().map(Vec::into_boxed_slice).collect(),
        })
    }

    /// Sample `m` i.i.d. uniform ordered k-tuples, deterministically per seed.
    ///
    /// Edges are drawn sequentially from a single seeded stream, so graphs
    /// sampled with the same `(n, k, seed)` and growing `m` share prefixes.
    pub fn sample(n: usize, m: usize, k: usize, seed: u64) -> Self {
        assert!(n >= 1 && k >= 2, "sample requires n >= 1 and k >= 2");
        assert!(n <= u32::MAX as usize);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let edges = (0..m)
            .map(|_| {
                (0..k)
                    .map(|_| rng.gen_range(0..n as u32))
                    .collect::<Box<[u32]>>()
            })
            .collect();
        Hypergraph { n, k, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The ordered tuple of edge `i`.
    pub fn edge(&self, i: usize) -> &[u32] {
        &self.edges[i]
    }

    pub fn edges(&self) -> impl Iterator<Item = &[u32]> {
        self.edges.iter().map(|e| &**e)
    }

    /// The projected edge: sorted distinct vertices of tuple `i`.
    pub fn support(&self, i: usize) -> Vec<u32> {
        let mut s = self.edges[i].to_vec();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Line-oriented text format: `n m k` header, then one edge per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {} {}\n", self.n, self.m(), self.k));
        for e in &self.edges {
            let words: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing header line".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!(
                "header must be `n m k`, got `{header}`"
            )));
        }
        let parse = |s: &str, what: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad {what}: `{s}`")))
        };
        let n = parse(fields[0], "n")?;
        let m = parse(fields[1], "m")?;
        let k = parse(fields[2], "k")?;
        let mut edges = Vec::with_capacity(m);
        for (idx, line) in lines.enumerate() {
            if idx >= m {
                return Err(Error::Parse(
                    "more edge lines than the header declares".into(),
                ));
            }
            let verts: Vec<u32> = line
                .split_whitespace()
                .map(|w| {
                    w.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad vertex `{w}` on edge {idx}")))
                })
                .collect::<Result<_>>()?;
            if verts.len() != k {
                return Err(Error::Parse(format!(
                    "edge {idx} has {} vertices, expected {k}",
                    verts.len()
                )));
            }
            edges.push(verts);
        }
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "header declares {m} edges but {} were given",
                edges.len()
            )));
        }
        Hypergraph::new(n, k, edges)
    }
}

/// An injective assignment of each edge to one of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    n: usize,
    assignment: Vec<u32>,
    /// Reverse index: which edge is oriented to each vertex.
    oriented_at: Vec<Option<u32>>,
}

impl Orientation {
    /// Validate injectivity and membership against the hypergraph.
    pub fn new(h: &Hypergraph, assignment: Vec<u32>) -> Result<Self> {
        if assignment.len() != h.m() {
            return Err(Error::Domain("orientation must assign every edge"));
        }
        let mut oriented_at = vec![None; h.n()];
        for (e, &v) in assignment.iter().enumerate() {
            if v as usize >= h.n() {
                return Err(Error::Domain("orientation targets a vertex out of range"));
            }
            if !h.edge(e).contains(&v) {
                return Err(Error::Domain(
                    "an edge is oriented to a vertex it does not contain",
                ));
            }
            if oriented_at[v as usize].is_some() {
                return Err(Error::Domain("orientation is not injective"));
            }
            oriented_at[v as usize] = Some(e as u32);
        }
        Ok(Orientation {
            n: h.n(),
            assignment,
            oriented_at,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.assignment.len()
    }

    /// Vertex that edge `e` is oriented to.
    pub fn vertex_of(&self, e: usize) -> u32 {
        self.assignment[e]
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    /// Edge oriented to vertex `v`, if any.
    pub fn edge_oriented_to(&self, v: u32) -> Option<usize> {
        self.oriented_at[v as usize].map(|e| e as usize)
    }

    /// A vertex is free when no edge is oriented to it.
    pub fn is_free(&self, v: u32) -> bool {
        self.oriented_at[v as usize].is_none()
    }

    pub fn free_count(&self) -> usize {
        self.n - self.assignment.len()
    }

    pub fn free_vertices(&self) -> Vec<u32> {
        (0..self.n as u32).filter(|&v| self.is_free(v)).collect()
    }
}
