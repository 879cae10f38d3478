//! The cycle `C_n`, the chorded cycles `H1`, `H2`, `H3`, and θ-graphs given
//! by their three path lengths.
//!
//! Chords are `v_i v_{n-i}` for `H1` (odd `n`) and `H2` (even `n`), and
//! `v_i v_{n-i-1}` for `H3` (even `n`). Every chord joins two vertices on
//! which a symmetric α-eigenvector of `C_n` takes equal values, which is why
//! adding them leaves α unchanged.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::canon::{canonical_form, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyKind {
    Cycle,
    H1,
    H2,
    H3,
    ThetaLengths,
}

impl FamilyKind {
    fn tag(self) -> &'static str {
        match self {
            FamilyKind::Cycle => "cycle",
            FamilyKind::H1 => "h1",
            FamilyKind::H2 => "h2",
            FamilyKind::H3 => "h3",
            FamilyKind::ThetaLengths => "theta",
        }
    }

    /// Largest admissible chord index for order `n`, or an error naming the
    /// violated order/parity bound.
    fn max_index(self, n: usize) -> Result<usize> {
        let bad = |msg: &str| Err(Error::FamilySpec(format!("{}: {msg}, got n={n}", self.tag())));
        match self {
            FamilyKind::H1 if n < 5 || n.is_multiple_of(2) => bad("requires odd n >= 5"),
            FamilyKind::H1 => Ok((n - 3) / 2),
            FamilyKind::H2 if n < 4 || n % 2 == 1 => bad("requires even n >= 4"),
            FamilyKind::H2 => Ok((n - 2) / 2),
            FamilyKind::H3 if n < 6 || n % 2 == 1 => bad("requires even n >= 6"),
            FamilyKind::H3 => Ok((n - 4) / 2),
            FamilyKind::Cycle | FamilyKind::ThetaLengths => bad("has no chord indices"),
        }
    }
}

/// Symbolic description of a family member. For `ThetaLengths`, `indices`
/// holds the sorted path lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    pub indices: Vec<usize>,
}

impl FamilySpec {
    pub fn cycle(n: usize) -> Result<Self> {
        FamilySpec {
            kind: FamilyKind::Cycle,
            n,
            indices: Vec::new(),
        }
        .validated()
    }

    /// Chorded cycle; repeated indices collapse.
    pub fn chorded(kind: FamilyKind, n: usize, indices: &[usize]) -> Result<Self> {
        FamilySpec {
            kind,
            n,
            indices: indices.to_vec(),
        }
        .validated()
    }

    pub fn theta(lengths: [usize; 3]) -> Result<Self> {
        let n = lengths.iter().sum::<usize>().saturating_sub(1);
        FamilySpec {
            kind: FamilyKind::ThetaLengths,
            n,
            indices: lengths.to_vec(),
        }
        .validated()
    }

    /// Sorts and deduplicates indices, then checks the family's bounds.
    pub fn validated(mut self) -> Result<Self> {
        self.indices.sort_unstable();
        match self.kind {
            FamilyKind::Cycle => {
                if self.n < 3 {
                    return Err(Error::FamilySpec(format!(
                        "cycle: requires n >= 3, got n={}",
                        self.n
                    )));
                }
                if !self.indices.is_empty() {
                    return Err(Error::FamilySpec("cycle: takes no indices".into()));
                }
            }
            FamilyKind::ThetaLengths => {
                let l = &self.indices;
                if l.len() != 3 {
                    return Err(Error::FamilySpec(format!(
                        "theta: needs 3 path lengths, got {}",
                        l.len()
                    )));
                }
                if l[0] < 1 {
                    return Err(Error::FamilySpec("theta: path lengths must be >= 1".into()));
                }
                if l[1] < 2 {
                    return Err(Error::FamilySpec("theta: at most one path of length 1".into()));
                }
                let n = l.iter().sum::<usize>() - 1;
                if n < 4 {
                    return Err(Error::FamilySpec(format!("theta: requires n >= 4, got n={n}")));
                }
                if self.n != n {
                    return Err(Error::FamilySpec(format!(
                        "theta: lengths give n={n}, not {}",
                        self.n
                    )));
                }
            }
            kind => {
                let max = kind.max_index(self.n)?;
                self.indices.dedup();
                if self.indices.is_empty() {
                    return Err(Error::FamilySpec(format!(
                        "{}: requires k >= 1 chord index",
                        kind.tag()
                    )));
                }
                if let Some(&bad) = self.indices.iter().find(|&&i| i < 1 || i > max) {
                    return Err(Error::FamilySpec(format!(
                        "{}: index {bad} outside 1..={max} for n={}",
                        kind.tag(),
                        self.n
                    )));
                }
            }
        }
        Ok(self)
    }

    /// Chords added to `C_n`, as `(i, partner)` pairs.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        match self.kind {
            FamilyKind::H1 | FamilyKind::H2 => self.indices.iter().map(|&i| (i, n - i)).collect(),
            FamilyKind::H3 => self.indices.iter().map(|&i| (i, n - i - 1)).collect(),
            FamilyKind::Cycle | FamilyKind::ThetaLengths => Vec::new(),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        match self.kind {
            FamilyKind::Cycle => write!(f, "cycle:{}", self.n),
            FamilyKind::ThetaLengths => write!(f, "theta:{}", list(&self.indices)),
            kind => write!(f, "{}:n={}:i={}", kind.tag(), self.n, list(&self.indices)),
        }
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// `cycle:12`, `theta:2,3,4`, `h1:n=9:i=1,3` (also `h2`, `h3`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::FamilySpec(format!("cannot parse {s:?}"));
        let numbers = |t: &str| -> Result<Vec<usize>> {
            t.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        let mut parts = s.trim().split(':');
        let tag = parts.next().ok_or_else(bad)?.to_ascii_lowercase();
        match tag.as_str() {
            "cycle" => {
                let n = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
                if parts.next().is_some() {
                    return Err(bad());
                }
                FamilySpec::cycle(n)
            }
            "theta" => {
                let l = numbers(parts.next().ok_or_else(bad)?)?;
                if parts.next().is_some() {
                    return Err(bad());
                }
                let lengths: [usize; 3] = l
                    .try_into()
                    .map_err(|_| Error::FamilySpec("theta: needs 3 path lengths".into()))?;
                FamilySpec::theta(lengths)
            }
            "h1" | "h2" | "h3" => {
                let kind = match tag.as_str() {
                    "h1" => FamilyKind::H1,
                    "h2" => FamilyKind::H2,
                    _ => FamilyKind::H3,
                };
                let n = parts
                    .next()
                    .and_then(|p| p.trim().strip_prefix("n="))
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?;
                let idx = parts
                    .next()
                    .and_then(|p| p.trim().strip_prefix("i="))
                    .ok_or_else(bad)?;
                if parts.next().is_some() {
                    return Err(bad());
                }
                FamilySpec::chorded(kind, n, &numbers(idx)?)
            }
            _ => Err(bad()),
        }
    }
}

pub fn realize(spec: &FamilySpec) -> Result<Graph> {
    let spec = spec.clone().validated()?;
    if spec.kind == FamilyKind::ThetaLengths {
        return Ok(theta_graph(&spec.indices));
    }
    let mut g = Graph::cycle(spec.n);
    for (u, v) in spec.chords() {
        g.insert(u, v);
    }
    Ok(g)
}

/// Poles are `0` and `l1`; path one is `0, 1, ..., l1`, the other two paths
/// take the next blocks of fresh vertices, shorter path first.
fn theta_graph(lengths: &[usize]) -> Graph {
    let (l1, l2, l3) = (lengths[0], lengths[1], lengths[2]);
    let n = l1 + l2 + l3 - 1;
    let mut g = Graph::empty(n);
    for v in 0..l1 {
        g.insert(v, v + 1);
    }
    let mut next = l1 + 1;
    for len in [l2, l3] {
        let mut prev = 0;
        for _ in 0..len - 1 {
            g.insert(prev, next);
            prev = next;
            next += 1;
        }
        g.insert(prev, l1);
    }
    g
}

/// `H1`, `H2` or `H3` with every admissible chord.
pub fn saturated(kind: FamilyKind, n: usize) -> Result<Graph> {
    let max = kind.max_index(n)?;
    let all: Vec<usize> = (1..=max).collect();
    realize(&FamilySpec::chorded(kind, n, &all)?)
}

/// One realised member of a family listing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub spec: FamilySpec,
    pub graph: Graph,
    pub code: CanonicalCode,
}

fn index_subsets(max: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (1u64..1 << max)
        .map(|mask| (1..=max).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
}

/// Every graph named by the equality clause for order `n`: `C_n` and all
/// chord subsets of the applicable families, one per isomorphism class,
/// first spec found kept.
pub fn equality_family(n: usize) -> Result<Vec<FamilyMember>> {
    if n < 4 {
        return Err(Error::OrderTooSmall {
            what: "equality family",
            order: n,
            min: 4,
        });
    }
    let mut specs = vec![FamilySpec::cycle(n)?];
    let kinds: &[FamilyKind] = if n % 2 == 1 {
        &[FamilyKind::H1]
    } else {
        &[FamilyKind::H2, FamilyKind::H3]
    };
    for &kind in kinds {
        if let Ok(max) = kind.max_index(n) {
            for subset in index_subsets(max) {
                specs.push(FamilySpec::chorded(kind, n, &subset)?);
            }
        }
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for spec in specs {
        let graph = realize(&spec)?;
        let code = canonical_form(&graph)?;
        if seen.insert(code) {
            out.push(FamilyMember { spec, graph, code });
        }
    }
    Ok(out)
}

/// Single-chord members: `H1(i)` for odd `n`, `H2(i)` and `H3(i)` for even `n`.
pub fn single_chord_family(n: usize) -> Result<Vec<FamilySpec>> {
    let kinds: &[FamilyKind] = if n % 2 == 1 {
        &[FamilyKind::H1]
    } else {
        &[FamilyKind::H2, FamilyKind::H3]
    };
    let mut out = Vec::new();
    for &kind in kinds {
        if let Ok(max) = kind.max_index(n) {
            for i in 1..=max {
                out.push(FamilySpec::chorded(kind, n, &[i])?);
            }
        }
    }
    Ok(out)
}

/// All θ-graphs of order `n`: one per length triple `l1 ≤ l2 ≤ l3` with
/// `l1 + l2 + l3 = n + 1` and at most one length equal to 1.
pub fn enumerate_theta(n: usize) -> Result<Vec<FamilySpec>> {
    if n < 4 {
        return Err(Error::OrderTooSmall {
            what: "theta-graph",
            order: n,
            min: 4,
        });
    }
    let total = n + 1;
    let mut out = Vec::new();
    for l1 in 1..=total / 3 {
        for l2 in l1.max(2)..=(total - l1) / 2 {
            let l3 = total - l1 - l2;
            out.push(FamilySpec::theta([l1, l2, l3])?);
        }
    }
    Ok(out)
}

/// Symmetric α-eigenvector of `C_n`: `cos(2π j / n)`, or with `half_shift`,
/// `cos(2π (j + ½) / n)`. The first is invariant under `j ↦ n − j`, the
/// second under `j ↦ n − 1 − j`.
pub fn symmetric_cycle_eigenvector(n: usize, half_shift: bool) -> Vec<f64> {
    let shift = if half_shift { 0.5 } else { 0.0 };
    (0..n)
        .map(|j| (2.0 * std::f64::consts::PI * (j as f64 + shift) / n as f64).cos())
        .collect()
}

/// Squared increments `(x(u) − x(v))²` that each chord of `spec` adds to the
/// quadratic form of `C_n` under the matching symmetric eigenvector.
pub fn chord_increments(spec: &FamilySpec) -> Vec<f64> {
    let x = symmetric_cycle_eigenvector(spec.n, spec.kind == FamilyKind::H3);
    spec.chords()
        .into_iter()
        .map(|(u, v)| (x[u] - x[v]).powi(2))
        .collect()
}
