//! Simple undirected graphs over the vertex set `0..n`.
//!
//! Adjacency is a symmetric bit matrix. Edit operations (`add_edge`,
//! `remove_edge`, `add_graph`) return new graphs and leave the receiver
//! untouched.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
    m: usize,
}

impl Graph {
    /// Edgeless graph of order `n`.
    pub fn empty(n: usize) -> Self {
        let stride = n.div_ceil(64).max(1);
        Graph {
            n,
            stride,
            bits: vec![0; stride * n],
            m: 0,
        }
    }

    /// Builds a graph from unordered pairs. Duplicate pairs collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        if n >= 3 {
            for i in 0..n {
                g.insert(i, (i + 1) % n);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.insert(i - 1, i);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert(u, v);
            }
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.insert(u, v);
            }
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Neighbours of `v` in increasing index order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(k, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + bit)
                }
            })
        })
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// `G + uv`.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return Err(Error::EdgeExists(u.min(v), u.max(v)));
        }
        let mut g = self.clone();
        g.insert(u, v);
        Ok(g)
    }

    /// `G - uv`.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Err(Error::EdgeMissing(u.min(v), u.max(v)));
        }
        let mut g = self.clone();
        g.delete(u, v);
        Ok(g)
    }

    /// `G + K`: union of edge sets. `K` must live on the same vertex set and
    /// bring at least one edge that `G` lacks.
    pub fn add_graph(&self, other: &Graph) -> Result<Graph> {
        if other.n != self.n {
            return Err(Error::VertexSetMismatch {
                graph: self.n,
                added: other.n,
            });
        }
        if other.edges().iter().all(|&(u, v)| self.has_edge(u, v)) {
            return Err(Error::NoNewEdge);
        }
        let mut g = self.clone();
        for (u, v) in other.edges() {
            g.insert(u, v);
        }
        Ok(g)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.insert(perm[u], perm[v]);
        }
        g
    }

    /// Subgraph on all vertices keeping only the listed edges that exist in `self`.
    pub fn spanning_subgraph(&self, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::empty(self.n);
        for &(u, v) in edges {
            if self.has_edge(u, v) {
                g.insert(u, v);
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// True iff every vertex has degree 2 and the graph is connected.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && (0..self.n).all(|v| self.degree(v) == 2) && self.is_connected()
    }

    /// Sum of `(x(u) - x(v))^2` over the edges.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.n);
        self.edges().iter().map(|&(u, v)| (x[u] - x[v]).powi(2)).sum()
    }

    /// Parses the `"n; u-v,u-v,..."` edge-list form.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let (head, tail) = text
            .split_once(';')
            .ok_or_else(|| Error::EdgeList("missing ';' after the order".into()))?;
        let n: usize = head
            .trim()
            .parse()
            .map_err(|_| Error::EdgeList(format!("bad order {:?}", head.trim())))?;
        let mut edges = Vec::new();
        for item in tail.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (a, b) = item
                .split_once('-')
                .ok_or_else(|| Error::EdgeList(format!("bad edge {item:?}")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::EdgeList(format!("bad vertex {s:?}")))
            };
            edges.push((parse(a)?, parse(b)?));
        }
        Graph::from_edges(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let body: Vec<String> = self.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("{}; {}", self.n, body.join(","))
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.stride..(v + 1) * self.stride]
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            Err(Error::LoopEdge(u))
        } else {
            Ok(())
        }
    }

    pub(crate) fn insert(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if !self.has_edge(u, v) {
            self.bits[u * self.stride + v / 64] |= 1 << (v % 64);
            self.bits[v * self.stride + u / 64] |= 1 << (u % 64);
            self.m += 1;
        }
    }

    pub(crate) fn delete(&mut self, u: usize, v: usize) {
        if self.has_edge(u, v) {
            self.bits[u * self.stride + v / 64] &= !(1 << (v % 64));
            self.bits[v * self.stride + u / 64] &= !(1 << (u % 64));
            self.m -= 1;
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.to_edge_list())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

impl FromStr for Graph {
    type Err = Error;

    /// Accepts either the edge-list form (contains `;`) or graph6.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains(';') {
            Graph::parse_edge_list(s)
        } else {
            crate::graph6::decode(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_from_edges() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(g.size(), 3);
    }

    #[test]
    fn five_cycle_from_edges() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(g, Graph::cycle(5));
        assert!(g.is_cycle());
    }

    #[test]
    fn empty_edge_set() {
        let g = Graph::from_edges(2, []).unwrap();
        assert_eq!(g.size(), 0);
        assert!(!g.is_connected());
    }

    #[test]
    fn duplicates_collapse() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, order: 3 })
        );
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::LoopEdge(1)));
    }

    #[test]
    fn add_then_remove_chord() {
        let c5 = Graph::cycle(5);
        let h = c5.add_edge(1, 4).unwrap();
        assert_eq!(h.size(), 6);
        assert!(h.has_edge(4, 1));
        assert_eq!(c5.size(), 5);
        assert_eq!(h.remove_edge(1, 4).unwrap(), c5);
    }

    #[test]
    fn edit_precondition_errors() {
        let c5 = Graph::cycle(5);
        assert_eq!(c5.add_edge(0, 1), Err(Error::EdgeExists(0, 1)));
        assert_eq!(c5.remove_edge(0, 2), Err(Error::EdgeMissing(0, 2)));
        assert_eq!(
            c5.add_graph(&Graph::cycle(4)),
            Err(Error::VertexSetMismatch { graph: 5, added: 4 })
        );
        assert_eq!(c5.add_graph(&Graph::path(5)), Err(Error::NoNewEdge));
    }

    #[test]
    fn cycle_plus_diagonals_is_k4() {
        let k = Graph::from_edges(4, [(0, 2), (1, 3)]).unwrap();
        assert_eq!(Graph::cycle(4).add_graph(&k).unwrap(), Graph::complete(4));
    }

    #[test]
    fn add_graph_may_overlap() {
        let k = Graph::from_edges(4, [(0, 1), (0, 2)]).unwrap();
        let g = Graph::cycle(4).add_graph(&k).unwrap();
        assert_eq!(g.size(), 5);
    }

    #[test]
    fn edge_list_round_trip() {
        let g: Graph = "5; 0-1, 1-2,2-3,3-4,4-0".parse().unwrap();
        assert_eq!(g, Graph::cycle(5));
        assert_eq!(g.to_edge_list().parse::<Graph>().unwrap(), g);
        assert!("5 0-1".parse::<Graph>().is_err());
        assert!("3; 0-x".parse::<Graph>().is_err());
    }

    #[test]
    fn wide_graph_beyond_one_word() {
        let g = Graph::cycle(130);
        assert_eq!(g.size(), 130);
        assert!(g.has_edge(129, 0));
        assert_eq!(g.neighbors(64).collect::<Vec<_>>(), vec![63, 65]);
        assert!(g.is_cycle());
    }
}
