//! Integer max-flow (Dinic) used for load-assignment feasibility and
//! degree-constrained subgraphs.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
    rev: usize,
}

/// Flow network with integer capacities. Arcs are addressed by the handle
/// returned from [`FlowNetwork::add_arc`].
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Vec<Arc>>,
    handles: Vec<(usize, usize, i64)>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            arcs: vec![Vec::new(); nodes],
            handles: Vec::new(),
        }
    }

    pub fn add_node(&mut self) -> usize {
        self.arcs.push(Vec::new());
        self.arcs.len() - 1
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let i = self.arcs[from].len();
        let j = self.arcs[to].len() + usize::from(from == to);
        self.arcs[from].push(Arc { to, cap, rev: j });
        self.arcs[to].push(Arc { to: from, cap: 0, rev: i });
        self.handles.push((from, i, cap));
        self.handles.len() - 1
    }

    /// Flow currently routed through the arc with the given handle.
    pub fn flow(&self, handle: usize) -> i64 {
        let (from, i, cap) = self.handles[handle];
        cap - self.arcs[from][i].cap
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let Some(level) = self.levels(s, t) else {
                return total;
            };
            let mut next = vec![0usize; self.arcs.len()];
            loop {
                let f = self.augment(s, t, i64::MAX, &level, &mut next);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }

    fn levels(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut level = vec![usize::MAX; self.arcs.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for a in &self.arcs[u] {
                if a.cap > 0 && level[a.to] == usize::MAX {
                    level[a.to] = level[u] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        (level[t] != usize::MAX).then_some(level)
    }

    fn augment(&mut self, u: usize, t: usize, limit: i64, level: &[usize], next: &mut [usize]) -> i64 {
        if u == t {
            return limit;
        }
        while next[u] < self.arcs[u].len() {
            let i = next[u];
            let Arc { to, cap, rev } = self.arcs[u][i].clone();
            if cap > 0 && level[to] == level[u] + 1 {
                let f = self.augment(to, t, limit.min(cap), level, next);
                if f > 0 {
                    self.arcs[u][i].cap -= f;
                    self.arcs[to][rev].cap += f;
                    return f;
                }
            }
            next[u] += 1;
        }
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond() {
        let mut net = FlowNetwork::new(4);
        let a = net.add_arc(0, 1, 3);
        net.add_arc(0, 2, 2);
        net.add_arc(1, 3, 2);
        net.add_arc(2, 3, 3);
        net.add_arc(1, 2, 1);
        assert_eq!(net.max_flow(0, 3), 5);
        assert_eq!(net.flow(a), 3);
    }
}
