//! Canonical labelling and isomorphism testing for graphs of order at most 12.
//!
//! The search refines an ordered vertex colouring to an equitable one
//! (starting from the degree partition), individualises each vertex of the
//! first non-singleton cell in turn, and keeps the lexicographically smallest
//! adjacency string over all discrete leaves. Leaves with identical strings
//! yield automorphisms, which prune sibling branches lying in the same orbit.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

pub const MAX_ORDER: usize = 12;

/// Canonical adjacency string of a graph: `n(n-1)/2` bits in graph6 pair
/// order, the first pair most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    n: u8,
    bits: u128,
}

impl CanonicalCode {
    pub(crate) fn from_parts(n: u8, bits: u128) -> Self {
        CanonicalCode { n, bits }
    }

    pub fn order(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn bit_len(&self) -> usize {
        pair_count(self.n as usize)
    }

    /// The canonically labelled representative.
    pub fn to_graph(&self) -> Graph {
        let n = self.n as usize;
        let len = pair_count(n);
        let mut g = Graph::empty(n);
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if self.bits >> (len - 1 - k) & 1 == 1 {
                    g.insert(i, j);
                }
                k += 1;
            }
        }
        g
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode(&self.to_graph()).expect("canonical orders fit graph6")
    }

    /// Parses the graph6 form of a canonical representative.
    pub fn from_graph6(text: &str) -> Result<Self> {
        let g = graph6::decode(text)?;
        check_order(g.order())?;
        let rows = rows_of(&g);
        let identity: Vec<u8> = (0..g.order() as u8).collect();
        let code = code_of(&rows, &identity);
        Ok(CanonicalCode {
            n: g.order() as u8,
            bits: code,
        })
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_graph6())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_graph6())
    }
}

/// Canonical code together with the relabelling that produces it:
/// vertex `v` of the input goes to position `perm[v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub code: CanonicalCode,
    pub perm: Vec<usize>,
}

pub fn canonical_labeling(g: &Graph) -> Result<Labeling> {
    check_order(g.order())?;
    let rows = rows_of(g);
    let (bits, perm) = search(&rows);
    Ok(Labeling {
        code: CanonicalCode {
            n: g.order() as u8,
            bits,
        },
        perm: perm.into_iter().map(usize::from).collect(),
    })
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalCode> {
    canonical_labeling(g).map(|l| l.code)
}

pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    canonical_form(g).map(|c| c.to_graph())
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    check_order(g.order())?;
    check_order(h.order())?;
    if g.order() != h.order() || g.size() != h.size() {
        return Ok(false);
    }
    let mut dg = g.degrees();
    let mut dh = h.degrees();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::OrderLimit {
            what: "canonical labelling",
            order: n,
            limit: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

#[inline]
pub(crate) fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub(crate) fn rows_of(g: &Graph) -> Vec<u16> {
    (0..g.order())
        .map(|v| g.neighbors(v).fold(0u16, |acc, w| acc | 1 << w))
        .collect()
}

/// Adjacency string of the relabelling `perm` (vertex -> position).
pub(crate) fn code_of(rows: &[u16], perm: &[u8]) -> u128 {
    let n = rows.len();
    let mut inv = [0u8; MAX_ORDER];
    for (v, &p) in perm.iter().enumerate() {
        inv[p as usize] = v as u8;
    }
    let mut bits = 0u128;
    for j in 1..n {
        let row = rows[inv[j] as usize];
        for &vi in &inv[..j] {
            bits = bits << 1 | (row >> vi & 1) as u128;
        }
    }
    bits
}

/// Canonical code and labelling of an adjacency-row graph.
pub(crate) fn search(rows: &[u16]) -> (u128, Vec<u8>) {
    let n = rows.len();
    if n <= 1 {
        return (0, (0..n as u8).collect());
    }
    let mut s = Search {
        rows,
        best: None,
        first: None,
        autos: Vec::new(),
    };
    let mut prefix = Vec::new();
    s.visit(vec![0u8; n], &mut prefix);
    let (bits, perm) = s.best.expect("search reaches at least one leaf");
    (bits, perm)
}

/// Edge whose deletion is canonical: the last pair (in code order) present
/// in the canonical representative, mapped back to input labels.
pub(crate) fn canonical_deletion(rows: &[u16], perm: &[u8]) -> Option<(usize, usize)> {
    let n = rows.len();
    let mut inv = [0u8; MAX_ORDER];
    for (v, &p) in perm.iter().enumerate() {
        inv[p as usize] = v as u8;
    }
    for j in (1..n).rev() {
        let row = rows[inv[j] as usize];
        for i in (0..j).rev() {
            if row >> inv[i] & 1 == 1 {
                return Some((inv[i] as usize, inv[j] as usize));
            }
        }
    }
    None
}

struct Search<'a> {
    rows: &'a [u16],
    best: Option<(u128, Vec<u8>)>,
    first: Option<(u128, Vec<u8>)>,
    autos: Vec<Vec<u8>>,
}

impl Search<'_> {
    fn visit(&mut self, mut colors: Vec<u8>, prefix: &mut Vec<u8>) {
        let n = self.rows.len();
        let cells = refine(self.rows, &mut colors);
        if cells == n {
            self.leaf(colors);
            return;
        }
        let target = first_nontrivial_cell(&colors);
        let cell: Vec<u8> = (0..n as u8).filter(|&v| colors[v as usize] == target).collect();
        let mut explored: Vec<u8> = Vec::with_capacity(cell.len());
        for &w in &cell {
            if !explored.is_empty() && self.in_explored_orbit(&explored, w, prefix) {
                continue;
            }
            let mut next = colors.clone();
            individualize(&mut next, w);
            prefix.push(w);
            self.visit(next, prefix);
            prefix.pop();
            explored.push(w);
        }
    }

    fn leaf(&mut self, perm: Vec<u8>) {
        let code = code_of(self.rows, &perm);
        if let Some((first_code, first_perm)) = &self.first {
            if code == *first_code {
                let auto = compose_inverse(first_perm, &perm);
                self.autos.push(auto);
            }
        } else {
            self.first = Some((code, perm.clone()));
        }
        match &self.best {
            Some((best_code, best_perm)) if code == *best_code => {
                if self.first.as_ref().is_some_and(|(c, _)| *c != code) {
                    let auto = compose_inverse(best_perm, &perm);
                    self.autos.push(auto);
                }
            }
            Some((best_code, _)) if code > *best_code => {}
            _ => self.best = Some((code, perm)),
        }
    }

    fn in_explored_orbit(&self, explored: &[u8], w: u8, prefix: &[u8]) -> bool {
        let n = self.rows.len();
        let mut parent: Vec<u8> = (0..n as u8).collect();
        fn find(parent: &mut [u8], mut x: u8) -> u8 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for auto in &self.autos {
            if prefix.iter().all(|&p| auto[p as usize] == p) {
                for v in 0..n as u8 {
                    let a = find(&mut parent, v);
                    let b = find(&mut parent, auto[v as usize]);
                    if a != b {
                        parent[a.max(b) as usize] = a.min(b);
                    }
                }
            }
        }
        let root = find(&mut parent, w);
        explored.iter().any(|&u| find(&mut parent, u) == root)
    }
}

/// `target^{-1} ∘ source`: maps `v` to the vertex holding position `source[v]`
/// under `target`.
fn compose_inverse(target: &[u8], source: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; target.len()];
    for (v, &p) in target.iter().enumerate() {
        inv[p as usize] = v as u8;
    }
    source.iter().map(|&p| inv[p as usize]).collect()
}

fn first_nontrivial_cell(colors: &[u8]) -> u8 {
    let mut counts = [0u8; MAX_ORDER];
    for &c in colors {
        counts[c as usize] += 1;
    }
    counts
        .iter()
        .position(|&k| k > 1)
        .expect("non-discrete colouring") as u8
}

fn individualize(colors: &mut [u8], w: u8) {
    let c = colors[w as usize];
    for (v, col) in colors.iter_mut().enumerate() {
        if *col > c || (*col == c && v != w as usize) {
            *col += 1;
        }
    }
}

/// Refines `colors` to the coarsest equitable colouring finer than it.
/// Colours stay dense (`0..k`) and ordered by signature, so the result does
/// not depend on vertex labels. Returns the number of cells.
fn refine(rows: &[u16], colors: &mut [u8]) -> usize {
    let n = rows.len();
    let mut cells = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut sigs: Vec<([u8; MAX_ORDER + 1], u8)> = vec![([0; MAX_ORDER + 1], 0); n];
    loop {
        for v in 0..n {
            let mut sig = [0u8; MAX_ORDER + 1];
            sig[0] = colors[v];
            let mut row = rows[v];
            while row != 0 {
                let w = row.trailing_zeros() as usize;
                row &= row - 1;
                sig[1 + colors[w] as usize] += 1;
            }
            sigs[v] = (sig, v as u8);
        }
        sigs.sort_unstable();
        let mut rank = 0u8;
        for k in 0..n {
            if k > 0 && sigs[k].0 != sigs[k - 1].0 {
                rank += 1;
            }
            colors[sigs[k].1 as usize] = rank;
        }
        let now = rank as usize + 1;
        if now == cells || now == n {
            return now;
        }
        cells = now;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
        fn rec(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = map.len();
            if k == g.order() {
                return true;
            }
            for t in 0..h.order() {
                if used[t] {
                    continue;
                }
                if (0..k).all(|u| g.has_edge(u, k) == h.has_edge(map[u], t)) {
                    map.push(t);
                    used[t] = true;
                    if rec(g, h, map, used) {
                        return true;
                    }
                    used[t] = false;
                    map.pop();
                }
            }
            false
        }
        g.order() == h.order()
            && g.size() == h.size()
            && rec(g, h, &mut Vec::new(), &mut vec![false; h.order()])
    }

    #[test]
    fn chord_pairs_on_six_cycle() {
        let a = Graph::cycle(6).add_edge(1, 5).unwrap();
        let b = Graph::cycle(6).add_edge(2, 4).unwrap();
        assert!(brute_isomorphic(&a, &b));
        assert!(is_isomorphic(&a, &b).unwrap());
        let c = Graph::cycle(6).add_edge(1, 4).unwrap();
        assert!(!brute_isomorphic(&a, &c));
        assert!(!is_isomorphic(&a, &c).unwrap());
    }

    #[test]
    fn different_sizes() {
        let diamond = Graph::complete(4).remove_edge(0, 2).unwrap();
        assert!(!is_isomorphic(&Graph::cycle(4), &diamond).unwrap());
    }

    #[test]
    fn relabelled_cycle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut perm: Vec<usize> = (0..5).collect();
        perm.shuffle(&mut rng);
        let g = Graph::cycle(5).relabel(&perm);
        assert!(is_isomorphic(&g, &Graph::cycle(5)).unwrap());
    }

    #[test]
    fn labeling_reproduces_code() {
        let g = Graph::complete_bipartite(2, 3).add_edge(0, 1).unwrap();
        let lab = canonical_labeling(&g).unwrap();
        assert_eq!(g.relabel(&lab.perm), lab.code.to_graph());
        assert_eq!(
            CanonicalCode::from_graph6(&lab.code.to_graph6()).unwrap(),
            lab.code
        );
    }

    #[test]
    fn symmetric_graphs_terminate_quickly() {
        for n in 1..=MAX_ORDER {
            for g in [Graph::complete(n), Graph::empty(n), Graph::cycle(n)] {
                let code = canonical_form(&g).unwrap();
                assert_eq!(code.to_graph().size(), g.size());
            }
        }
        let petersen = Graph::from_edges(
            10,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        let mut perm: Vec<usize> = (0..10).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(1));
        assert!(is_isomorphic(&petersen, &petersen.relabel(&perm)).unwrap());
    }

    #[test]
    fn order_limit() {
        assert!(matches!(
            canonical_form(&Graph::cycle(13)),
            Err(Error::OrderLimit { .. })
        ));
    }

    #[test]
    fn canonical_deletion_is_an_edge() {
        let g = Graph::cycle(6).add_edge(0, 3).unwrap();
        let rows = rows_of(&g);
        let (_, perm) = search(&rows);
        let (u, v) = canonical_deletion(&rows, &perm).unwrap();
        assert!(g.has_edge(u, v));
        assert_eq!(
            canonical_deletion(&rows_of(&Graph::empty(4)), &[0, 1, 2, 3]),
            None
        );
    }
}
