//! Independent reference implementations used as test oracles. Nothing here
//! calls into the library's connectivity or canonical-form code.

#![allow(dead_code)]

use std::collections::HashMap;

use algconn_core::Graph;

/// Adjacency rows as bitmasks.
pub type Rows = Vec<u16>;

pub fn rows_of(g: &Graph) -> Rows {
    let mut rows = vec![0u16; g.order()];
    for (u, v) in g.edges() {
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
    }
    rows
}

pub fn graph_of(rows: &Rows) -> Graph {
    let n = rows.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| rows[u] >> v & 1 == 1)
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

/// Labelled graph number `mask` of order `n`, one bit per pair `(u < v)` in
/// row-major order.
pub fn labelled(n: usize, mask: u64) -> Rows {
    let mut rows = vec![0u16; n];
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> k & 1 == 1 {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
            k += 1;
        }
    }
    rows
}

/// Connectivity of the subgraph induced on `alive`.
pub fn connected_on(rows: &Rows, alive: u16) -> bool {
    if alive == 0 {
        return true;
    }
    let start = alive.trailing_zeros();
    let mut seen: u16 = 1 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = rows[v] & alive & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == alive
}

pub fn full(n: usize) -> u16 {
    ((1u32 << n) - 1) as u16
}

pub fn connected(rows: &Rows) -> bool {
    connected_on(rows, full(rows.len()))
}

/// Connected, at least three vertices, and still connected after deleting
/// any single vertex.
pub fn biconnected(rows: &Rows) -> bool {
    let n = rows.len();
    let all = full(n);
    n >= 3 && connected(rows) && (0..n).all(|v| connected_on(rows, all & !(1 << v)))
}

fn code_under(rows: &Rows, order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | u64::from(rows[order[i]] >> order[j] & 1);
        }
    }
    code
}

/// Canonical key: the sorted vertex-invariant sequence plus the largest
/// adjacency code over all orderings that list vertices by invariant.
pub type Key = (Vec<(u32, Vec<u32>, u32)>, u64);

pub fn canonical_key(rows: &Rows) -> Key {
    let n = rows.len();
    let deg = |v: usize| rows[v].count_ones();
    let inv: Vec<(u32, Vec<u32>, u32)> = (0..n)
        .map(|v| {
            let mut nd: Vec<u32> = (0..n).filter(|&w| rows[v] >> w & 1 == 1).map(deg).collect();
            nd.sort_unstable();
            let triangles = (0..n)
                .filter(|&w| rows[v] >> w & 1 == 1)
                .map(|w| (rows[v] & rows[w]).count_ones())
                .sum::<u32>();
            (deg(v), nd, triangles)
        })
        .collect();
    let mut by_inv: Vec<usize> = (0..n).collect();
    by_inv.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    let cell_of: Vec<usize> = {
        let mut cells = vec![0; n];
        for p in 1..n {
            cells[p] = cells[p - 1] + usize::from(inv[by_inv[p]] != inv[by_inv[p - 1]]);
        }
        cells
    };
    let mut best = 0u64;
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn place(
        p: usize,
        rows: &Rows,
        by_inv: &[usize],
        cell_of: &[usize],
        order: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut u64,
    ) {
        let n = by_inv.len();
        if p == n {
            *best = (*best).max(code_under(rows, order));
            return;
        }
        for q in 0..n {
            if cell_of[q] == cell_of[p] && !used[by_inv[q]] {
                let v = by_inv[q];
                used[v] = true;
                order.push(v);
                place(p + 1, rows, by_inv, cell_of, order, used, best);
                order.pop();
                used[v] = false;
            }
        }
    }
    place(0, rows, &by_inv, &cell_of, &mut order, &mut used, &mut best);
    let mut sorted = inv;
    sorted.sort();
    (sorted, best)
}

/// Largest code over every permutation, no pruning.
pub fn exhaustive_code(rows: &Rows) -> u64 {
    let n = rows.len();
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = code_under(rows, &order);
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            best = best.max(code_under(rows, &order));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Isomorphism classes of labelled graphs of order `n` passing `keep`,
/// bucketed by [`exhaustive_code`]; one representative per class.
pub fn brute_force_classes(n: usize, keep: impl Fn(&Rows) -> bool) -> Vec<Rows> {
    let pairs = n * n.saturating_sub(1) / 2;
    let mut classes: HashMap<u64, Rows> = HashMap::new();
    for mask in 0..1u64 << pairs {
        let rows = labelled(n, mask);
        if keep(&rows) {
            classes.entry(exhaustive_code(&rows)).or_insert(rows);
        }
    }
    classes.into_values().collect()
}

fn extend(parents: &[Rows], min_new_degree: u32, keep: impl Fn(&Rows) -> bool) -> Vec<Rows> {
    let mut classes: HashMap<Key, Rows> = HashMap::new();
    for parent in parents {
        let k = parent.len();
        for mask in 1u16..1 << k {
            if mask.count_ones() < min_new_degree {
                continue;
            }
            let mut rows = parent.clone();
            rows.push(mask);
            for (v, row) in rows.iter_mut().enumerate().take(k) {
                if mask >> v & 1 == 1 {
                    *row |= 1 << k;
                }
            }
            if keep(&rows) {
                classes.entry(canonical_key(&rows)).or_insert(rows);
            }
        }
    }
    let mut out: Vec<Rows> = classes.into_values().collect();
    out.sort();
    out
}

/// Connected classes of order `n` by vertex extension: every connected graph
/// has a vertex whose deletion leaves it connected.
pub fn connected_classes(n: usize) -> Vec<Rows> {
    let mut level = vec![vec![0u16]];
    for _ in 1..n {
        level = extend(&level, 1, |_| true);
    }
    level
}

/// 2-connected classes of order `n ≥ 4`, extending connected classes of
/// order `n − 1`: deleting any vertex of a 2-connected graph leaves it
/// connected, and the deleted vertex had at least two neighbours.
pub fn biconnected_classes(n: usize) -> Vec<Rows> {
    extend(&connected_classes(n - 1), 2, biconnected)
}

/// θ-graph by definition: exactly two vertices of degree 3, all others of
/// degree 2, and the three walks leaving one pole through degree-2 vertices
/// all end at the other pole and together visit every vertex once.
pub fn theta_by_definition(g: &Graph) -> bool {
    let n = g.order();
    let poles: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 3).collect();
    if poles.len() != 2 || (0..n).any(|v| g.degree(v) != 3 && g.degree(v) != 2) {
        return false;
    }
    let (a, b) = (poles[0], poles[1]);
    let mut visited = vec![false; n];
    visited[a] = true;
    visited[b] = true;
    for first in g.neighbors(a).collect::<Vec<_>>() {
        let (mut prev, mut cur) = (a, first);
        while cur != b {
            if visited[cur] || g.degree(cur) != 2 {
                return false;
            }
            visited[cur] = true;
            let next = g.neighbors(cur).find(|&w| w != prev).unwrap();
            prev = cur;
            cur = next;
        }
    }
    visited.iter().all(|&x| x)
}

/// `(l1, l2, l3)` with `l1 ≤ l2 ≤ l3`, `l1 + l2 + l3 = n + 1` and at most one
/// length equal to 1.
pub fn theta_triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            for c in b..=n {
                if a + b + c == n + 1 && b >= 2 {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Backtracking search for a spanning cycle through vertex 0.
pub fn hamiltonian(rows: &Rows) -> bool {
    let n = rows.len();
    if n < 3 {
        return false;
    }
    fn go(rows: &Rows, v: usize, seen: u16, count: usize) -> bool {
        let n = rows.len();
        if count == n {
            return rows[v] & 1 == 1;
        }
        let mut next = rows[v] & !seen;
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            if go(rows, w, seen | 1 << w, count + 1) {
                return true;
            }
        }
        false
    }
    go(rows, 0, 1, 1)
}
