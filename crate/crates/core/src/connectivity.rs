//! Articulation vertices, 2-connectedness, inner-disjoint paths, θ-graphs and
//! Hamiltonian cycles.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by the backtracking Hamiltonian search.
pub const HAMILTONIAN_MAX_ORDER: usize = 12;

/// Pairwise inner-disjoint paths sharing the endpoints `source` and `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathSystem {
    pub source: usize,
    pub target: usize,
    pub paths: Vec<Vec<usize>>,
}

impl PathSystem {
    /// Checks every structural invariant against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.order();
        let mut owner = vec![usize::MAX; n];
        for (k, p) in self.paths.iter().enumerate() {
            if p.first() != Some(&self.source) || p.last() != Some(&self.target) {
                return Err(Error::Defect(format!("path {k} has wrong endpoints")));
            }
            if p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                return Err(Error::Defect(format!("path {k} uses a non-edge")));
            }
            let mut seen = vec![false; n];
            for &v in p {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Defect(format!("path {k} repeats vertex {v}")));
                }
            }
            for &v in &p[1..p.len() - 1] {
                if owner[v] != usize::MAX {
                    return Err(Error::Defect(format!(
                        "paths {} and {k} share inner vertex {v}",
                        owner[v]
                    )));
                }
                owner[v] = k;
            }
        }
        Ok(())
    }
}

/// Cut vertices of a connected graph, ascending.
pub fn articulation_vertices(g: &Graph) -> Result<Vec<usize>> {
    let n = g.order();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if n <= 2 {
        return Ok(Vec::new());
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
    disc[0] = 0;
    low[0] = 0;
    timer += 1;
    let mut root_children = 0;
    while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
        if let Some(&w) = adj[v].get(*next) {
            *next += 1;
            if disc[w] == usize::MAX {
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((w, v, 0));
            } else if w != parent {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[v]);
                if parent != 0 && low[v] >= disc[parent] {
                    is_cut[parent] = true;
                }
            }
        }
    }
    is_cut[0] = root_children > 1;
    Ok((0..n).filter(|&v| is_cut[v]).collect())
}

/// 2-connected: at least three vertices, connected, no cut vertex.
pub fn is_biconnected(g: &Graph) -> bool {
    g.order() >= 3 && g.is_connected() && articulation_vertices(g).is_ok_and(|a| a.is_empty())
}

/// Vertex-split unit-capacity flow network. Vertex `v` becomes `2v` (in) and
/// `2v + 1` (out).
struct SplitNetwork {
    size: usize,
    cap: Vec<i32>,
    flow: Vec<i32>,
}

impl SplitNetwork {
    fn new(g: &Graph, s: usize, t: usize) -> Self {
        let size = 2 * g.order();
        let mut cap = vec![0; size * size];
        for v in 0..g.order() {
            let inner = if v == s || v == t { g.order() as i32 } else { 1 };
            cap[(2 * v) * size + 2 * v + 1] = inner;
        }
        for (u, v) in g.edges() {
            cap[(2 * u + 1) * size + 2 * v] = 1;
            cap[(2 * v + 1) * size + 2 * u] = 1;
        }
        SplitNetwork {
            size,
            cap,
            flow: vec![0; size * size],
        }
    }

    #[inline]
    fn residual(&self, a: usize, b: usize) -> i32 {
        self.cap[a * self.size + b] - self.flow[a * self.size + b]
    }

    /// BFS augmenting path, neighbours scanned in increasing node index.
    #[allow(clippy::needless_range_loop)]
    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut prev = vec![usize::MAX; self.size];
        prev[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(a) = queue.pop_front() {
            if a == sink {
                break;
            }
            for b in 0..self.size {
                if prev[b] == usize::MAX && self.residual(a, b) > 0 {
                    prev[b] = a;
                    queue.push_back(b);
                }
            }
        }
        if prev[sink] == usize::MAX {
            return false;
        }
        let mut b = sink;
        while b != source {
            let a = prev[b];
            self.flow[a * self.size + b] += 1;
            self.flow[b * self.size + a] -= 1;
            b = a;
        }
        true
    }

    fn run(&mut self, source: usize, sink: usize, limit: usize) -> usize {
        let mut total = 0;
        while total < limit && self.augment(source, sink) {
            total += 1;
        }
        total
    }
}

fn check_endpoints(g: &Graph, u: usize, v: usize) -> Result<()> {
    for x in [u, v] {
        if x >= g.order() {
            return Err(Error::VertexOutOfRange {
                vertex: x,
                order: g.order(),
            });
        }
    }
    if u == v {
        return Err(Error::SameEndpoints(u));
    }
    Ok(())
}

/// `p(u, v)`: the maximum number of pairwise inner-disjoint `u`–`v` paths.
pub fn local_connectivity(g: &Graph, u: usize, v: usize) -> Result<usize> {
    check_endpoints(g, u, v)?;
    let mut net = SplitNetwork::new(g, u, v);
    Ok(net.run(2 * u + 1, 2 * v, usize::MAX))
}

/// Exactly `k` inner-disjoint `u`–`v` paths read off a maximum flow.
/// Paths are listed in the order their first hop leaves `u`.
pub fn inner_disjoint_paths(g: &Graph, u: usize, v: usize, k: usize) -> Result<PathSystem> {
    check_endpoints(g, u, v)?;
    let mut net = SplitNetwork::new(g, u, v);
    let found = net.run(2 * u + 1, 2 * v, k);
    if found < k {
        return Err(Error::InsufficientPaths {
            u,
            v,
            wanted: k,
            found,
        });
    }
    let n = g.order();
    let carries = |net: &SplitNetwork, a: usize, b: usize| {
        g.has_edge(a, b) && net.flow[(2 * a + 1) * net.size + 2 * b] > 0
    };
    let mut paths = Vec::with_capacity(k);
    for first in 0..n {
        if !carries(&net, u, first) {
            continue;
        }
        let mut path = vec![u, first];
        let mut cur = first;
        while cur != v {
            let next = (0..n)
                .find(|&w| carries(&net, cur, w))
                .ok_or_else(|| Error::Defect("flow path ends early".into()))?;
            path.push(next);
            cur = next;
            if path.len() > n {
                return Err(Error::Defect("flow path cycles".into()));
            }
        }
        paths.push(path);
    }
    let system = PathSystem {
        source: u,
        target: v,
        paths,
    };
    system.validate(g)?;
    if system.paths.len() != k {
        return Err(Error::Defect(format!(
            "extracted {} paths from a flow of value {k}",
            system.paths.len()
        )));
    }
    Ok(system)
}

/// θ-graph test via the characterisation `2-connected ∧ m = n + 1`.
pub fn is_theta(g: &Graph) -> bool {
    g.size() == g.order() + 1 && is_biconnected(g)
}

/// Sorted path lengths `(l1 ≤ l2 ≤ l3)` between the two branch vertices of
/// a θ-graph, or `None` if `g` is not one. The triple determines the graph
/// up to isomorphism.
pub fn theta_lengths(g: &Graph) -> Option<[usize; 3]> {
    if !is_theta(g) {
        return None;
    }
    let branch: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) == 3).collect();
    let &[a, b] = branch.as_slice() else {
        return None;
    };
    let system = inner_disjoint_paths(g, a, b, 3).ok()?;
    let mut lens = [0; 3];
    for (slot, p) in lens.iter_mut().zip(&system.paths) {
        *slot = p.len() - 1;
    }
    lens.sort_unstable();
    Some(lens)
}

/// A spanning cycle starting at vertex 0, or `None`. Branching tries
/// low-degree neighbours first, ties by index.
pub fn hamiltonian_cycle(g: &Graph) -> Result<Option<Vec<usize>>> {
    let n = g.order();
    if n > HAMILTONIAN_MAX_ORDER {
        return Err(Error::OrderLimit {
            what: "Hamiltonian search",
            order: n,
            limit: HAMILTONIAN_MAX_ORDER,
        });
    }
    if n < 3 || !g.is_connected() || (0..n).any(|v| g.degree(v) < 2) {
        return Ok(None);
    }
    let deg = g.degrees();
    let order: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut ns: Vec<usize> = g.neighbors(v).collect();
            ns.sort_by_key(|&w| (deg[w], w));
            ns
        })
        .collect();

    fn extend(g: &Graph, order: &[Vec<usize>], path: &mut Vec<usize>, visited: &mut u64) -> bool {
        let n = g.order();
        let last = *path.last().unwrap();
        if path.len() == n {
            return g.has_edge(last, path[0]);
        }
        for &w in &order[last] {
            if *visited >> w & 1 == 0 {
                *visited |= 1 << w;
                path.push(w);
                if extend(g, order, path, visited) {
                    return true;
                }
                path.pop();
                *visited &= !(1 << w);
            }
        }
        false
    }

    let mut path = vec![0];
    let mut visited = 1u64;
    Ok(extend(g, &order, &mut path, &mut visited).then_some(path))
}
