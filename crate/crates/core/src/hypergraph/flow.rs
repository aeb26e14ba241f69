//! Compact max-flow (Dinic) used by the density checker's closure reduction.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: u32,
    cap: u64,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<u32>>,
    arcs: Vec<Arc>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            arcs: Vec::new(),
        }
    }

    pub fn nodes(&self) -> usize {
        self.adj.len()
    }

    /// Directed arc with capacity `cap`; the paired reverse arc has capacity 0.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: u64) {
        let id = self.arcs.len() as u32;
        self.arcs.push(Arc { to: to as u32, cap });
        self.arcs.push(Arc {
            to: from as u32,
            cap: 0,
        });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
    }

    fn bfs_levels(&self, s: usize, t: usize) -> Option<Vec<u32>> {
        let mut level = vec![u32::MAX; self.nodes()];
        level[s] = 0;
        let mut queue = VecDeque::from([s as u32]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u as usize] {
                let arc = &self.arcs[a as usize];
                if arc.cap > 0 && level[arc.to as usize] == u32::MAX {
                    level[arc.to as usize] = level[u as usize] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        (level[t] != u32::MAX).then_some(level)
    }

    fn push(&mut self, u: usize, t: usize, limit: u64, level: &[u32], iter: &mut [usize]) -> u64 {
        if u == t {
            return limit;
        }
        while iter[u] < self.adj[u].len() {
            let a = self.adj[u][iter[u]] as usize;
            let (to, cap) = (self.arcs[a].to as usize, self.arcs[a].cap);
            if cap > 0 && level[to] == level[u] + 1 {
                let pushed = self.push(to, t, limit.min(cap), level, iter);
                if pushed > 0 {
                    self.arcs[a].cap -= pushed;
                    self.arcs[a ^ 1].cap += pushed;
                    return pushed;
                }
            }
            iter[u] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut flow = 0u64;
        while let Some(level) = self.bfs_levels(s, t) {
            let mut iter = vec![0usize; self.nodes()];
            loop {
                let pushed = self.push(s, t, u64::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
        flow
    }

    /// After `max_flow`: nodes with no residual path to `t`. This is the
    /// maximal source side among all minimum cuts.
    pub fn max_source_side(&self, t: usize) -> Vec<bool> {
        let mut reaches_t = vec![false; self.nodes()];
        reaches_t[t] = true;
        let mut queue = VecDeque::from([t as u32]);
        while let Some(v) = queue.pop_front() {
            // u reaches t through the residual arc u->v iff the pair of an
            // arc v->u carries residual capacity.
            for &a in &self.adj[v as usize] {
                let u = self.arcs[a as usize].to as usize;
                if !reaches_t[u] && self.arcs[(a ^ 1) as usize].cap > 0 {
                    reaches_t[u] = true;
                    queue.push_back(u as u32);
                }
            }
        }
        reaches_t.into_iter().map(|r| !r).collect()
    }
}
