//! Rewiring a 2-connected graph into a spanning cycle that does not increase
//! the Laplacian quadratic form of a Fiedler vector `X`.
//!
//! Take the vertices where `X` is smallest and largest, join them by two
//! inner-disjoint paths `P1`, `P2` (a cycle `C`), and thread every vertex off
//! `C` into an edge of `P1` whose `X`-interval contains its value, in
//! increasing order of `X`. Splitting a jump `q − h` into ordered steps never
//! increases the sum of squares, so `X^T L(G') X ≤ X^T L(C) X ≤ X^T L(G) X`.

use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::connectivity::{hamiltonian_cycle, inner_disjoint_paths, is_biconnected};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::laplacian::laplacian_apply_at;
use crate::spectra::{algebraic_connectivity, alpha_cycle_closed_form, fiedler_vector, FiedlerResult};

/// Slack for the quadratic-form chain.
pub const CHAIN_SLACK: f64 = 1e-12;
/// Required margin for the strict decrease `α(G') < α(G)`.
pub const STRICT_MARGIN: f64 = 1e-10;
/// Agreement of `α(G')` with the closed form for `C_n`.
pub const CYCLE_AGREEMENT: f64 = 1e-10;

/// Off-cycle vertices threaded between `P1[w]` and `P1[w + 1]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairAssignment {
    pub w: usize,
    /// Endpoint with the smaller `X` value.
    pub low: usize,
    /// Endpoint with the larger `X` value.
    pub high: usize,
    /// Inserted vertices, ascending in `X` from `low`.
    pub inserted: Vec<usize>,
}

/// `(L X)_v − α(G) x(v)` at a threading endpoint, before and after rewiring.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EndpointResidual {
    pub vertex: usize,
    pub residual_g: f64,
    pub residual_gprime: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RewireCertificate {
    pub n: usize,
    pub v_min: usize,
    pub v_max: usize,
    pub cycle: Vec<usize>,
    pub p1: Vec<usize>,
    pub p2: Vec<usize>,
    /// `C` already spans every vertex; `G' = C`.
    pub cycle_spans: bool,
    pub assignments: Vec<PairAssignment>,
    #[serde(serialize_with = "serialize_graph")]
    pub g_prime: Graph,
    pub q_g: f64,
    pub q_c: f64,
    pub q_gprime: f64,
    pub alpha_g: f64,
    pub alpha_gprime: f64,
    pub fiedler_multiplicity: usize,
    pub endpoint_residuals: Vec<EndpointResidual>,
}

fn serialize_graph<S: Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    match graph6::encode(g) {
        Ok(text) => s.serialize_str(&text),
        Err(_) => s.serialize_str(&g.to_edge_list()),
    }
}

impl RewireCertificate {
    /// `q_G' ≤ q_C ≤ q_G` up to [`CHAIN_SLACK`].
    pub fn chain_holds(&self) -> bool {
        self.q_gprime <= self.q_c + CHAIN_SLACK && self.q_c <= self.q_g + CHAIN_SLACK
    }

    pub fn alpha_drop(&self) -> f64 {
        self.alpha_g - self.alpha_gprime
    }

    /// Field-per-line text form.
    pub fn to_text(&self) -> String {
        let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        let _ = writeln!(out, "n: {}", self.n);
        let _ = writeln!(out, "v_min: {}", self.v_min);
        let _ = writeln!(out, "v_max: {}", self.v_max);
        let _ = writeln!(out, "cycle: {}", list(&self.cycle));
        let _ = writeln!(out, "p1: {}", list(&self.p1));
        let _ = writeln!(out, "p2: {}", list(&self.p2));
        let _ = writeln!(out, "cycle_spans: {}", self.cycle_spans);
        for a in &self.assignments {
            let _ = writeln!(
                out,
                "assignment: w={} low={} high={} inserted={}",
                a.w,
                a.low,
                a.high,
                list(&a.inserted)
            );
        }
        let g6 = graph6::encode(&self.g_prime).unwrap_or_else(|_| self.g_prime.to_edge_list());
        let _ = writeln!(out, "g_prime: {g6}");
        let _ = writeln!(out, "q_g: {:.17e}", self.q_g);
        let _ = writeln!(out, "q_c: {:.17e}", self.q_c);
        let _ = writeln!(out, "q_gprime: {:.17e}", self.q_gprime);
        let _ = writeln!(out, "alpha_g: {:.17e}", self.alpha_g);
        let _ = writeln!(out, "alpha_gprime: {:.17e}", self.alpha_gprime);
        let _ = writeln!(out, "fiedler_multiplicity: {}", self.fiedler_multiplicity);
        for r in &self.endpoint_residuals {
            let _ = writeln!(
                out,
                "endpoint_residual: vertex={} g={:.3e} gprime={:.3e}",
                r.vertex, r.residual_g, r.residual_gprime
            );
        }
        out
    }
}

/// Indices of the smallest and largest entries, lowest index on ties.
pub fn extreme_vertices(x: &[f64]) -> Result<(usize, usize)> {
    let mut lo = 0;
    let mut hi = 0;
    for (i, &v) in x.iter().enumerate() {
        if v < x[lo] {
            lo = i;
        }
        if v > x[hi] {
            hi = i;
        }
    }
    if x.is_empty() || x[lo] == x[hi] {
        return Err(Error::ConstantVector);
    }
    Ok((lo, hi))
}

/// Distributes `offcycle` over the consecutive pairs of `p1`.
///
/// Vertex `v` goes to the first pair (in `P1` order) with
/// `x(low) < x(v) ≤ x(high)`. A value equal to `x(P1[0])` is never strictly
/// exceeded; it goes to the first non-constant pair whose low endpoint
/// carries that value. Pairs with equal endpoint values receive nothing.
/// Each list is sorted by `(x, index)`.
pub fn interval_assignment(p1: &[usize], offcycle: &[usize], x: &[f64]) -> Result<Vec<Vec<usize>>> {
    if p1.len() < 2 {
        return Err(Error::Defect("P1 needs at least two vertices".into()));
    }
    let pairs = p1.len() - 1;
    let low_value = x[p1[0]];
    let high_value = x[p1[pairs]];
    let bounds: Vec<(f64, f64)> = p1
        .windows(2)
        .map(|w| (x[w[0]].min(x[w[1]]), x[w[0]].max(x[w[1]])))
        .collect();
    let mut lists = vec![Vec::new(); pairs];
    for &v in offcycle {
        let xv = x[v];
        if !(low_value..=high_value).contains(&xv) {
            return Err(Error::OutsideRange {
                vertex: v,
                value: xv,
                low: low_value,
                high: high_value,
            });
        }
        let slot = bounds
            .iter()
            .position(|&(lo, hi)| lo < xv && xv <= hi)
            .or_else(|| bounds.iter().position(|&(lo, hi)| lo == xv && lo < hi))
            .ok_or_else(|| Error::Defect(format!("no P1 pair covers vertex {v}")))?;
        lists[slot].push(v);
    }
    for list in &mut lists {
        list.sort_by(|&a, &b| x[a].total_cmp(&x[b]).then(a.cmp(&b)));
    }
    Ok(lists)
}

/// Checks `(q − h)² ≥ (q − l_z)² + (l_1 − h)² + Σ (l_{j+1} − l_j)²` for
/// `h ≤ l_1 ≤ … ≤ l_z ≤ q`, to within 1e-15 relative.
pub fn chain_inequality_check(h: f64, mids: &[f64], q: f64) -> Result<bool> {
    let mut prev = h;
    for &l in mids.iter().chain(std::iter::once(&q)) {
        if l < prev {
            return Err(Error::Unordered(format!("{l} follows {prev}")));
        }
        prev = l;
    }
    let whole = (q - h).powi(2);
    let mut steps = 0.0;
    let mut prev = h;
    for &l in mids.iter().chain(std::iter::once(&q)) {
        steps += (l - prev).powi(2);
        prev = l;
    }
    Ok(steps <= whole + 1e-15 * whole)
}

fn cycle_graph(n: usize, order: &[usize]) -> Graph {
    let mut g = Graph::empty(n);
    for k in 0..order.len() {
        g.insert(order[k], order[(k + 1) % order.len()]);
    }
    g
}

pub fn rewire(g: &Graph, fiedler: &FiedlerResult) -> Result<RewireCertificate> {
    let n = g.order();
    if n < 4 {
        return Err(Error::OrderTooSmall {
            what: "rewiring",
            order: n,
            min: 4,
        });
    }
    if !is_biconnected(g) {
        return Err(Error::NotBiconnected);
    }
    let x = &fiedler.vector;
    if x.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let (v_min, v_max) = extreme_vertices(x)?;
    let system = inner_disjoint_paths(g, v_min, v_max, 2)?;
    let p1 = system.paths[0].clone();
    let p2 = system.paths[1].clone();
    let mut cycle = p1.clone();
    cycle.extend(p2[1..p2.len() - 1].iter().rev());
    let c = cycle_graph(n, &cycle);

    let mut on_cycle = vec![false; n];
    for &v in &cycle {
        on_cycle[v] = true;
    }
    let offcycle: Vec<usize> = (0..n).filter(|&v| !on_cycle[v]).collect();
    let cycle_spans = offcycle.is_empty();

    let mut assignments = Vec::new();
    let mut g_prime = c.clone();
    if !cycle_spans {
        let lists = interval_assignment(&p1, &offcycle, x)?;
        let placed: usize = lists.iter().map(Vec::len).sum();
        if placed != offcycle.len() {
            return Err(Error::Defect(format!(
                "assignment placed {placed} of {} off-cycle vertices",
                offcycle.len()
            )));
        }
        for (w, inserted) in lists.into_iter().enumerate() {
            if inserted.is_empty() {
                continue;
            }
            let (a, b) = (p1[w], p1[w + 1]);
            let (low, high) = if x[a] < x[b] { (a, b) } else { (b, a) };
            let mids: Vec<f64> = inserted.iter().map(|&v| x[v]).collect();
            if !chain_inequality_check(x[low], &mids, x[high])? {
                return Err(Error::Defect(format!("chain inequality fails on pair {w}")));
            }
            g_prime.delete(a, b);
            let mut prev = low;
            for &v in &inserted {
                g_prime.insert(prev, v);
                prev = v;
            }
            g_prime.insert(prev, high);
            assignments.push(PairAssignment {
                w,
                low,
                high,
                inserted,
            });
        }
    }
    if !g_prime.is_cycle() || g_prime.order() != n {
        return Err(Error::Defect("rewired graph is not a spanning cycle".into()));
    }

    let alpha_g = fiedler.alpha;
    let mut endpoint_residuals = Vec::new();
    for a in &assignments {
        for v in [a.low, a.high] {
            endpoint_residuals.push(EndpointResidual {
                vertex: v,
                residual_g: laplacian_apply_at(g, x, v) - alpha_g * x[v],
                residual_gprime: laplacian_apply_at(&g_prime, x, v) - alpha_g * x[v],
            });
        }
    }

    Ok(RewireCertificate {
        n,
        v_min,
        v_max,
        q_g: g.quadratic_form(x),
        q_c: c.quadratic_form(x),
        q_gprime: g_prime.quadratic_form(x),
        alpha_gprime: algebraic_connectivity(&g_prime)?,
        alpha_g,
        fiedler_multiplicity: fiedler.multiplicity,
        cycle,
        p1,
        p2,
        cycle_spans,
        assignments,
        g_prime,
        endpoint_residuals,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrictnessReport {
    /// `G` has a spanning cycle.
    pub hamiltonian: bool,
    pub alpha_drop: f64,
    /// Some certificate check failed; see [`StrictnessReport::problems`].
    pub flagged: bool,
    pub problems: Vec<String>,
    pub certificate: RewireCertificate,
}

/// Rewires `g` from its own Fiedler vector and audits the outcome: the
/// quadratic-form chain, `G' ≅ C_n`, and, for non-Hamiltonian `g`, a strict
/// drop in algebraic connectivity of more than [`STRICT_MARGIN`].
pub fn strictness_report(g: &Graph) -> Result<StrictnessReport> {
    if !is_biconnected(g) {
        return Err(Error::NotBiconnected);
    }
    let fiedler = fiedler_vector(g)?;
    let certificate = rewire(g, &fiedler)?;
    let hamiltonian = hamiltonian_cycle(g)?.is_some();
    let alpha_drop = certificate.alpha_drop();
    let mut problems = Vec::new();
    if !certificate.chain_holds() {
        problems.push(format!(
            "quadratic-form chain fails: q_gprime={} q_c={} q_g={}",
            certificate.q_gprime, certificate.q_c, certificate.q_g
        ));
    }
    let reference = alpha_cycle_closed_form(g.order())?;
    if (certificate.alpha_gprime - reference).abs() > CYCLE_AGREEMENT {
        problems.push(format!(
            "alpha(G') = {} differs from alpha(C_n) = {reference}",
            certificate.alpha_gprime
        ));
    }
    if !hamiltonian && alpha_drop <= STRICT_MARGIN {
        problems.push(format!("alpha drop {alpha_drop:e} within the strictness margin"));
    }
    Ok(StrictnessReport {
        hamiltonian,
        alpha_drop,
        flagged: !problems.is_empty(),
        problems,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{realize, FamilySpec};

    #[test]
    fn extremes() {
        assert_eq!(extreme_vertices(&[0.5, -0.5, 0.0]).unwrap(), (1, 0));
        assert_eq!(extreme_vertices(&[-1.0, -1.0, 2.0]).unwrap(), (0, 2));
        let f = fiedler_vector(&Graph::path(3)).unwrap();
        assert_eq!(extreme_vertices(&f.vector).unwrap(), (2, 0));
        assert_eq!(extreme_vertices(&[1.0, 1.0]), Err(Error::ConstantVector));
        assert_eq!(extreme_vertices(&[]), Err(Error::ConstantVector));
    }

    #[test]
    fn assignment_single_pair() {
        let x = [0.0, 1.0, 0.5];
        assert_eq!(interval_assignment(&[0, 1], &[2], &x).unwrap(), vec![vec![2]]);
    }

    #[test]
    fn assignment_two_pairs() {
        // P1 = 0,1,2 with x = 0, 0.5, 1; off-cycle 3,4,5 with 0.2, 0.7, 0.3
        let x = [0.0, 0.5, 1.0, 0.2, 0.7, 0.3];
        let lists = interval_assignment(&[0, 1, 2], &[3, 4, 5], &x).unwrap();
        assert_eq!(lists, vec![vec![3, 5], vec![4]]);
    }

    #[test]
    fn assignment_boundary_tie_and_constant_pair() {
        // P1 = 0,1,2,3 with x = 0, 0, 0.4, 1; pair 0 is constant.
        let x = [0.0, 0.0, 0.4, 1.0, 0.0, 0.4];
        let lists = interval_assignment(&[0, 1, 2, 3], &[4, 5], &x).unwrap();
        assert_eq!(lists, vec![vec![], vec![4, 5], vec![]]);
    }

    #[test]
    fn assignment_rejects_out_of_range() {
        let x = [0.0, 1.0, 1.5];
        assert!(matches!(
            interval_assignment(&[0, 1], &[2], &x),
            Err(Error::OutsideRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn chain_examples() {
        assert!(chain_inequality_check(0.0, &[1.0], 2.0).unwrap());
        assert!(chain_inequality_check(0.0, &[], 3.0).unwrap());
        assert!(chain_inequality_check(0.0, &[1.0, 1.0], 1.0).unwrap());
        assert!(matches!(
            chain_inequality_check(0.0, &[2.0, 1.0], 3.0),
            Err(Error::Unordered(_))
        ));
        assert!(chain_inequality_check(1.0, &[], 0.0).is_err());
    }

    #[test]
    fn cycle_is_its_own_rewiring() {
        let g = Graph::cycle(7);
        let f = fiedler_vector(&g).unwrap();
        let cert = rewire(&g, &f).unwrap();
        assert!(cert.cycle_spans);
        assert_eq!(cert.g_prime, g);
        assert!((cert.alpha_gprime - cert.alpha_g).abs() < 1e-12);
    }

    #[test]
    fn k23_rewires_to_five_cycle() {
        let g = Graph::complete_bipartite(2, 3);
        let report = strictness_report(&g).unwrap();
        assert!(!report.hamiltonian);
        assert!(!report.flagged, "{:?}", report.problems);
        let cert = &report.certificate;
        assert!(cert.g_prime.is_cycle());
        assert!((cert.alpha_g - 2.0).abs() < 1e-12);
        assert!((cert.alpha_gprime - alpha_cycle_closed_form(5).unwrap()).abs() < 1e-12);
        // 2 − (2 − 2cos 72°) = 2cos 72° = (√5 − 1)/2
        assert!((report.alpha_drop - 0.618_033_988_749_895).abs() < 1e-12);
        assert!(cert.chain_holds());
    }

    #[test]
    fn eight_cycle_has_no_drop() {
        let report = strictness_report(&Graph::cycle(8)).unwrap();
        assert!(report.hamiltonian);
        assert!(report.alpha_drop.abs() < 1e-12);
    }

    #[test]
    fn theta_223_drops() {
        let g = realize(&FamilySpec::theta([2, 2, 3]).unwrap()).unwrap();
        let report = strictness_report(&g).unwrap();
        assert!(report.alpha_drop > STRICT_MARGIN);
        assert!(!report.flagged);
    }

    #[test]
    fn rewire_preconditions() {
        let f = fiedler_vector(&Graph::path(4)).unwrap();
        assert_eq!(rewire(&Graph::path(4), &f), Err(Error::NotBiconnected));
        let f3 = fiedler_vector(&Graph::cycle(3)).unwrap();
        assert!(matches!(
            rewire(&Graph::cycle(3), &f3),
            Err(Error::OrderTooSmall { .. })
        ));
    }

    #[test]
    fn text_form_lists_fields() {
        let g = Graph::complete_bipartite(2, 3);
        let cert = rewire(&g, &fiedler_vector(&g).unwrap()).unwrap();
        let text = cert.to_text();
        for key in [
            "v_min:",
            "p1:",
            "assignment:",
            "g_prime:",
            "q_gprime:",
            "alpha_gprime:",
        ] {
            assert!(text.contains(key), "{text}");
        }
    }
}
