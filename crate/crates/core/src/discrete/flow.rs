//! Dinic max-flow on the bipartite transport network
//! `source -> i -> j -> sink`, with supply and demand capacities on the
//! outer arcs and unbounded admissible arcs in the middle.

use std::collections::VecDeque;

use crate::scalar::{pmin, Scalar};

#[derive(Debug, Clone)]
struct Arc<C> {
    to: usize,
    rev: usize,
    cap: C,
}

pub(crate) struct BipartiteFlow<C> {
    n: usize,
    graph: Vec<Vec<Arc<C>>>,
    /// `(i, j, index of the i -> j arc in graph[1 + i])`.
    middle: Vec<(usize, usize, usize)>,
    initial: Vec<C>,
    tol: C,
}

/// Outcome of a max-flow solve.
pub(crate) struct FlowSolution<C> {
    pub value: C,
    /// Positive flows on admissible pairs, in arc insertion order.
    pub flows: Vec<(usize, usize, C)>,
    /// Sources reachable from the super-source in the residual network.
    pub reachable_sources: Vec<bool>,
}

impl<C: Scalar> BipartiteFlow<C> {
    /// `edges` lists admissible pairs; iteration order fixes tie-breaking.
    pub fn new(supply: &[C], demand: &[C], edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let n = supply.len();
        let m = demand.len();
        let nodes = n + m + 2;
        let mut g = Self {
            n,
            graph: vec![Vec::new(); nodes],
            middle: Vec::new(),
            initial: Vec::new(),
            tol: C::feasibility_tol(),
        };
        let big = supply.iter().fold(C::zero(), |a, &b| a + b) + C::one();
        let (s, t) = (0, nodes - 1);
        for (i, &w) in supply.iter().enumerate() {
            g.add_arc(s, 1 + i, w);
        }
        for (i, j) in edges {
            let idx = g.add_arc(1 + i, 1 + n + j, big);
            g.middle.push((i, j, idx));
        }
        for (j, &v) in demand.iter().enumerate() {
            g.add_arc(1 + n + j, t, v);
        }
        g.initial = g.middle.iter().map(|&(i, _, idx)| g.graph[1 + i][idx].cap).collect();
        g
    }

    fn add_arc(&mut self, u: usize, v: usize, cap: C) -> usize {
        let ru = self.graph[v].len();
        let rv = self.graph[u].len();
        self.graph[u].push(Arc { to: v, rev: ru, cap });
        self.graph[v].push(Arc { to: u, rev: rv, cap: C::zero() });
        rv
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.graph.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for a in &self.graph[u] {
                if a.cap > self.tol && level[a.to] == usize::MAX {
                    level[a.to] = level[u] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        level
    }

    /// Iterative blocking-flow search along level-increasing arcs.
    fn augment(&mut self, s: usize, t: usize, level: &[usize], iter: &mut [usize]) -> C {
        let mut path: Vec<(usize, usize)> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let mut push = None;
                for &(v, k) in &path {
                    let c = self.graph[v][k].cap;
                    push = Some(match push {
                        None => c,
                        Some(p) => pmin(p, c),
                    });
                }
                let push = push.unwrap_or_else(C::zero);
                for &(v, k) in &path {
                    let Arc { to, rev, .. } = self.graph[v][k];
                    self.graph[v][k].cap = self.graph[v][k].cap - push;
                    self.graph[to][rev].cap = self.graph[to][rev].cap + push;
                }
                return push;
            }
            let mut advanced = false;
            while iter[u] < self.graph[u].len() {
                let a = &self.graph[u][iter[u]];
                if a.cap > self.tol && level[a.to] == level[u] + 1 {
                    path.push((u, iter[u]));
                    u = a.to;
                    advanced = true;
                    break;
                }
                iter[u] += 1;
            }
            if !advanced {
                // Dead end: retreat and skip the arc that led here.
                match path.pop() {
                    Some((v, k)) => {
                        iter[v] = k + 1;
                        u = v;
                    }
                    None => return C::zero(),
                }
            }
        }
    }

    pub fn solve(mut self) -> FlowSolution<C> {
        let (s, t) = (0, self.graph.len() - 1);
        let mut value = C::zero();
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                break;
            }
            let mut iter = vec![0; self.graph.len()];
            loop {
                let f = self.augment(s, t, &level, &mut iter);
                if f <= self.tol {
                    break;
                }
                value = value + f;
            }
        }
        let level = self.levels(s);
        let flows = self
            .middle
            .iter()
            .zip(&self.initial)
            .filter_map(|(&(i, j, idx), &cap0)| {
                let f = cap0 - self.graph[1 + i][idx].cap;
                (f > self.tol).then_some((i, j, f))
            })
            .collect();
        FlowSolution { value, flows, reachable_sources: (0..self.n).map(|i| level[1 + i] != usize::MAX).collect() }
    }
}
