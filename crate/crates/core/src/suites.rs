//! Seeded randomized property suites. Each returns a [`SuiteOutcome`] with
//! the worst observed value so callers can print it next to the threshold.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::families::{chord_increments, realize, FamilyKind, FamilySpec};
use crate::graph::Graph;
use crate::rewiring::chain_inequality_check;
use crate::spectra::{
    algebraic_connectivity, alpha_cycle_closed_form, fiedler_vector, laplacian_spectrum, rayleigh_quotient,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    /// Largest observed deviation in the direction that would fail.
    pub worst: f64,
    pub threshold: f64,
    pub detail: String,
}

impl SuiteOutcome {
    fn new(name: &'static str, cases: usize, worst: f64, threshold: f64, detail: String) -> Self {
        SuiteOutcome {
            name,
            passed: worst <= threshold,
            cases,
            worst,
            threshold,
            detail,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.insert(u, v);
            }
        }
    }
    g
}

/// Random spanning tree plus `G(n, p)` edges.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = random_graph(rng, n, p);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        g.insert(order[k], parent);
    }
    g
}

/// Random unit vector orthogonal to the all-ones vector.
pub fn random_admissible_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mean = x.iter().sum::<f64>() / n as f64;
        x.iter_mut().for_each(|v| *v -= mean);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-6 {
            x.iter_mut().for_each(|v| *v /= norm);
            return x;
        }
    }
}

/// `α(C_n)` against the closed form for `3 ≤ n ≤ 100`.
pub fn cycle_oracle_suite() -> Result<SuiteOutcome> {
    let mut worst: f64 = 0.0;
    let mut at = 0;
    for n in 3..=100 {
        let dev = (algebraic_connectivity(&Graph::cycle(n))? - alpha_cycle_closed_form(n)?).abs();
        if dev > worst {
            worst = dev;
            at = n;
        }
    }
    Ok(SuiteOutcome::new(
        "cycle closed form",
        98,
        worst,
        1e-10,
        format!("worst at n={at}"),
    ))
}

/// Laplacian eigenvalue sum equals `2m` on random graphs with `n ≤ 30`.
pub fn trace_suite(seed: u64, graphs: usize) -> Result<SuiteOutcome> {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..graphs {
        let n = rng.gen_range(1..=30);
        let p = rng.gen_range(0.0..1.0);
        let g = random_graph(&mut rng, n, p);
        let spec = laplacian_spectrum(&g)?;
        let sum: f64 = spec.eigenvalues.iter().sum();
        worst = worst.max((sum - 2.0 * g.size() as f64).abs());
    }
    Ok(SuiteOutcome::new(
        "eigenvalue sum = 2m",
        graphs,
        worst,
        1e-9,
        String::new(),
    ))
}

/// Every admissible unit vector has Rayleigh quotient at least `α`, and the
/// Fiedler vector attains it.
pub fn rayleigh_suite(seed: u64, graphs: usize, vectors: usize) -> Result<SuiteOutcome> {
    let mut rng = rng(seed);
    let mut worst: f64 = f64::NEG_INFINITY;
    for _ in 0..graphs {
        let n = rng.gen_range(2..=20);
        let p = rng.gen_range(0.05..0.8);
        let g = random_connected_graph(&mut rng, n, p);
        let f = fiedler_vector(&g)?;
        for _ in 0..vectors {
            let x = random_admissible_vector(&mut rng, n);
            // undershoot below α
            worst = worst.max(f.alpha - rayleigh_quotient(&g, &x)?);
        }
        worst = worst.max((rayleigh_quotient(&g, &f.vector)? - f.alpha).abs());
    }
    Ok(SuiteOutcome::new(
        "Rayleigh lower bound",
        graphs * vectors,
        worst.max(0.0),
        1e-9,
        String::new(),
    ))
}

/// `α(G + uv) ≥ α(G)` on random `(G, uv)`.
pub fn monotonicity_suite(seed: u64, pairs: usize) -> Result<SuiteOutcome> {
    let mut rng = rng(seed);
    let mut worst: f64 = f64::NEG_INFINITY;
    let mut done = 0;
    while done < pairs {
        let n = rng.gen_range(3..=16);
        let p = rng.gen_range(0.05..0.7);
        let g = random_graph(&mut rng, n, p);
        let non_edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        let Some(&(u, v)) = non_edges.choose(&mut rng) else {
            continue;
        };
        let before = algebraic_connectivity(&g)?;
        let after = algebraic_connectivity(&g.add_edge(u, v)?)?;
        worst = worst.max(before - after);
        done += 1;
    }
    Ok(SuiteOutcome::new(
        "edge-addition monotonicity",
        pairs,
        worst.max(0.0),
        1e-10,
        String::new(),
    ))
}

fn full_spec(kind: FamilyKind, n: usize) -> Result<FamilySpec> {
    let max = match kind {
        FamilyKind::H1 => (n - 3) / 2,
        FamilyKind::H2 => (n - 2) / 2,
        _ => (n - 4) / 2,
    };
    FamilySpec::chorded(kind, n, &(1..=max).collect::<Vec<_>>())
}

/// Chord increments under the analytic symmetric eigenvectors, for every
/// admissible chord at odd `5 ≤ n ≤ 99` and even `4 ≤ n ≤ 98`.
pub fn zero_increment_suite() -> Result<SuiteOutcome> {
    let mut worst: f64 = 0.0;
    let mut chords = 0;
    for n in 4..=99 {
        let kinds: &[FamilyKind] = match n % 2 {
            1 => &[FamilyKind::H1],
            _ if n >= 6 => &[FamilyKind::H2, FamilyKind::H3],
            _ => &[FamilyKind::H2],
        };
        for &kind in kinds {
            let spec = full_spec(kind, n)?;
            for d in chord_increments(&spec) {
                worst = worst.max(d);
                chords += 1;
            }
        }
    }
    Ok(SuiteOutcome::new(
        "zero chord increment",
        chords,
        worst,
        1e-24,
        String::new(),
    ))
}

/// A random `H1`/`H2`/`H3` spec of order at most `max_n`.
pub fn random_family_spec<R: Rng>(rng: &mut R, max_n: usize) -> Result<FamilySpec> {
    let kind = *[FamilyKind::H1, FamilyKind::H2, FamilyKind::H3]
        .choose(rng)
        .unwrap();
    let n = loop {
        let n = rng.gen_range(4..=max_n);
        let ok = match kind {
            FamilyKind::H1 => n % 2 == 1 && n >= 5,
            FamilyKind::H2 => n % 2 == 0,
            _ => n % 2 == 0 && n >= 6,
        };
        if ok {
            break n;
        }
    };
    let full = full_spec(kind, n)?;
    let k = rng.gen_range(1..=full.indices.len());
    let picked: Vec<usize> = full.indices.choose_multiple(rng, k).copied().collect();
    FamilySpec::chorded(kind, n, &picked)
}

/// `α(realize(spec)) = α(C_n)` on random family specs with `n ≤ 40`.
pub fn family_alpha_suite(seed: u64, specs: usize) -> Result<SuiteOutcome> {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    let mut worst_spec = String::new();
    for _ in 0..specs {
        let spec = random_family_spec(&mut rng, 40)?;
        let dev = (algebraic_connectivity(&realize(&spec)?)? - alpha_cycle_closed_form(spec.n)?).abs();
        if dev > worst {
            worst = dev;
            worst_spec = spec.to_string();
        }
    }
    Ok(SuiteOutcome::new(
        "family attains alpha(C_n)",
        specs,
        worst,
        1e-9,
        worst_spec,
    ))
}

/// The telescoping inequality on random ordered `(h, mids, q)`.
pub fn chain_suite(seed: u64, triples: usize) -> Result<SuiteOutcome> {
    let mut rng = rng(seed);
    let mut failures = 0usize;
    for _ in 0..triples {
        let a: f64 = rng.gen_range(-10.0..10.0);
        let b: f64 = rng.gen_range(-10.0..10.0);
        let (h, q) = (a.min(b), a.max(b));
        let k = rng.gen_range(0..8);
        let mut mids: Vec<f64> = (0..k)
            .map(|_| {
                if rng.gen_bool(0.1) {
                    [h, q][rng.gen_range(0..2)]
                } else {
                    rng.gen_range(h..=q)
                }
            })
            .collect();
        mids.sort_by(f64::total_cmp);
        if !chain_inequality_check(h, &mids, q)? {
            failures += 1;
        }
    }
    Ok(SuiteOutcome::new(
        "telescoping inequality",
        triples,
        failures as f64,
        0.0,
        String::new(),
    ))
}

/// Everything at the default sizes.
pub fn run_all(seed: u64) -> Result<Vec<SuiteOutcome>> {
    Ok(vec![
        cycle_oracle_suite()?,
        trace_suite(seed, 500)?,
        rayleigh_suite(seed.wrapping_add(1), 50, 1000)?,
        monotonicity_suite(seed.wrapping_add(2), 200)?,
        zero_increment_suite()?,
        family_alpha_suite(seed.wrapping_add(3), 200)?,
        chain_suite(seed.wrapping_add(4), 100_000)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_connected_is_connected() {
        let mut r = rng(3);
        for _ in 0..50 {
            let n = r.gen_range(1..12);
            assert!(random_connected_graph(&mut r, n, 0.1).is_connected());
        }
    }

    #[test]
    fn admissible_vectors() {
        let mut r = rng(4);
        let x = random_admissible_vector(&mut r, 7);
        assert!(x.iter().sum::<f64>().abs() < 1e-12);
        assert!((x.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_specs_validate() {
        let mut r = rng(5);
        for _ in 0..100 {
            let spec = random_family_spec(&mut r, 20).unwrap();
            assert!(realize(&spec).is_ok(), "{spec}");
        }
    }

    #[test]
    fn small_suites_pass() {
        assert!(trace_suite(1, 20).unwrap().passed);
        assert!(rayleigh_suite(1, 3, 50).unwrap().passed);
        assert!(chain_suite(1, 1000).unwrap().passed);
    }
}
