//! Isomorph-free generation of all graphs of a given order by canonical
//! edge augmentation.
//!
//! Graphs are grown one edge at a time from the empty graph. A child
//! `P + e` is kept only when `e` is a canonical deletion of the child, i.e.
//! removing the canonically last edge of the child gives back a graph
//! isomorphic to `P`. Every isomorphism class then has exactly one parent
//! class, and children of one parent are deduplicated locally, so no global
//! table of seen graphs is needed and parents can be expanded in parallel.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{self, CanonicalCode};
use crate::connectivity::is_biconnected;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_ORDER: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Predicate {
    All,
    Connected,
    Biconnected,
}

impl Predicate {
    pub fn test(self, g: &Graph) -> bool {
        match self {
            Predicate::All => true,
            Predicate::Connected => g.is_connected(),
            Predicate::Biconnected => is_biconnected(g),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Predicate::All => "all",
            Predicate::Connected => "connected",
            Predicate::Biconnected => "biconnected",
        })
    }
}

impl FromStr for Predicate {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "all" => Ok(Predicate::All),
            "connected" => Ok(Predicate::Connected),
            "biconnected" | "2-connected" => Ok(Predicate::Biconnected),
            other => Err(format!("unknown predicate {other:?}")),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct EnumOptions {
    /// Randomly relabel each parent and shuffle the order in which its
    /// non-edges are tried. The emitted classes must not change.
    pub shuffle_seed: Option<u64>,
}

/// One isomorphism class: its code and canonically labelled representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumerated {
    pub code: CanonicalCode,
    pub graph: Graph,
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::OrderLimit {
            what: "graph enumeration",
            order: n,
            limit: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

fn rows_from_bits(n: usize, bits: u128) -> Vec<u16> {
    let len = canon::pair_count(n);
    let mut rows = vec![0u16; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits >> (len - 1 - k) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    rows
}

fn children(n: usize, parent_bits: u128, opts: &EnumOptions) -> Vec<u128> {
    let mut rows = rows_from_bits(n, parent_bits);
    let mut non_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| rows[u] >> v & 1 == 0)
        .collect();
    if let Some(seed) = opts.shuffle_seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (parent_bits as u64) ^ ((parent_bits >> 64) as u64));
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut relabelled = vec![0u16; n];
        for u in 0..n {
            for v in 0..n {
                if rows[u] >> v & 1 == 1 {
                    relabelled[perm[u]] |= 1 << perm[v];
                }
            }
        }
        rows = relabelled;
        non_edges = non_edges
            .into_iter()
            .map(|(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v])))
            .collect();
        non_edges.shuffle(&mut rng);
    }

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (u, v) in non_edges {
        let mut child = rows.clone();
        child[u] |= 1 << v;
        child[v] |= 1 << u;
        let (bits, perm) = canon::search(&child);
        if !seen.insert(bits) {
            continue;
        }
        let (a, b) = canon::canonical_deletion(&child, &perm).expect("child has an edge");
        let accepted = if (a.min(b), a.max(b)) == (u, v) {
            true
        } else {
            child[a] &= !(1 << b);
            child[b] &= !(1 << a);
            canon::search(&child).0 == parent_bits
        };
        if accepted {
            out.push(bits);
        }
    }
    out
}

/// Generates every isomorphism class of order `n`, level by level in edge
/// count, handing each class that satisfies `predicate` to `sink`. Within a
/// level classes arrive in code order.
pub fn stream_graphs<F>(n: usize, predicate: Predicate, opts: &EnumOptions, mut sink: F) -> Result<()>
where
    F: FnMut(Enumerated),
{
    check_order(n)?;
    let mut level: Vec<u128> = vec![0];
    let n8 = n as u8;
    loop {
        for &bits in &level {
            let code = code_from(n8, bits);
            let graph = code.to_graph();
            if predicate.test(&graph) {
                sink(Enumerated { code, graph });
            }
        }
        let mut next: Vec<u128> = level
            .par_iter()
            .flat_map_iter(|&bits| children(n, bits, opts))
            .collect();
        if next.is_empty() {
            return Ok(());
        }
        next.sort_unstable();
        level = next;
    }
}

fn code_from(n: u8, bits: u128) -> CanonicalCode {
    CanonicalCode::from_parts(n, bits)
}

/// All classes of order `n` satisfying `predicate`, sorted by code.
pub fn enumerate_graphs(n: usize, predicate: Predicate) -> Result<Vec<Enumerated>> {
    enumerate_graphs_with(n, predicate, &EnumOptions::default())
}

pub fn enumerate_graphs_with(n: usize, predicate: Predicate, opts: &EnumOptions) -> Result<Vec<Enumerated>> {
    let mut out = Vec::new();
    stream_graphs(n, predicate, opts, |e| out.push(e))?;
    out.sort_by_key(|e| e.code);
    Ok(out)
}

pub fn count_classes(n: usize, predicate: Predicate) -> Result<usize> {
    let mut count = 0;
    stream_graphs(n, predicate, &EnumOptions::default(), |_| count += 1)?;
    Ok(count)
}
