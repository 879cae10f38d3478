//! Dense symmetric eigensolver and the Laplacian quantities built on it:
//! algebraic connectivity, Fiedler vectors, Rayleigh quotients.
//!
//! The solver is Householder reduction to tridiagonal form followed by the
//! implicit-shift QL iteration, with the orthogonal transforms accumulated
//! so eigenvectors come out alongside eigenvalues. Shifts and sweep order
//! are fixed, so repeated runs are bit-identical.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::laplacian::{laplacian, LaplacianMatrix};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
    /// `max_k ‖M x_k − λ_k x_k‖∞`.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiedlerResult {
    pub alpha: f64,
    /// Unit vector orthogonal to the all-ones vector; the first entry of
    /// largest magnitude is positive.
    pub vector: Vec<f64>,
    /// Number of eigenvalues in the cluster around `alpha`.
    pub multiplicity: usize,
    pub residual: f64,
}

pub fn eigen_symmetric(m: &LaplacianMatrix) -> Result<SpectralDecomposition> {
    eigen_symmetric_dense(m.order(), &m.to_dense())
}

/// Eigen-decomposition of a row-major `n × n` symmetric matrix.
pub fn eigen_symmetric_dense(n: usize, a: &[f64]) -> Result<SpectralDecomposition> {
    assert_eq!(a.len(), n * n, "matrix storage");
    for i in 0..n {
        for j in i + 1..n {
            if a[i * n + j] != a[j * n + i] {
                return Err(Error::NotSymmetric(i, j));
            }
        }
    }
    if n == 0 {
        return Ok(SpectralDecomposition {
            eigenvalues: Vec::new(),
            eigenvectors: Vec::new(),
            residual: 0.0,
        });
    }
    let mut v: Vec<Vec<f64>> = a.chunks(n).map(<[f64]>::to_vec).collect();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut v, &mut d, &mut e);
    ql_implicit(&mut v, &mut d, &mut e)?;

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| d[i].total_cmp(&d[j]).then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = idx.iter().map(|&k| d[k]).collect();
    let eigenvectors: Vec<Vec<f64>> = idx.iter().map(|&k| (0..n).map(|r| v[r][k]).collect()).collect();

    let mut residual: f64 = 0.0;
    for (lambda, x) in eigenvalues.iter().zip(&eigenvectors) {
        for i in 0..n {
            let mx: f64 = (0..n).map(|j| a[i * n + j] * x[j]).sum();
            residual = residual.max((mx - lambda * x[i]).abs());
        }
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        residual,
    })
}

/// Householder reduction of the symmetric matrix held in `v` to tridiagonal
/// form. On return `d` holds the diagonal, `e[1..]` the sub-diagonal and `v`
/// the accumulated orthogonal transform.
#[allow(clippy::needless_range_loop)]
fn tridiagonalize(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    d.copy_from_slice(&v[n - 1]);
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in &d[..i] {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
                v[j][i] = 0.0;
            }
        } else {
            for dk in &mut d[..i] {
                *dk /= scale;
                h += *dk * *dk;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].fill(0.0);

            for j in 0..i {
                let f = d[j];
                v[j][i] = f;
                let mut g = e[j] + v[j][j] * f;
                for k in j + 1..i {
                    g += v[k][j] * d[k];
                    e[k] += v[k][j] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[k][j] -= f * e[k] + g * d[k];
                }
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
            }
        }
        d[i] = h;
    }

    for i in 0..n - 1 {
        v[n - 1][i] = v[i][i];
        v[i][i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k][i + 1] * v[k][j];
                }
                for k in 0..=i {
                    v[k][j] -= g * d[k];
                }
            }
        }
        for row in v.iter_mut().take(i + 1) {
            row[i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = 0.0;
    }
    v[n - 1][n - 1] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL on the tridiagonal `(d, e)`, rotating `v` along.
fn ql_implicit(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    let mut total_sweeps = 0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                total_sweeps += 1;
                if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
                    return Err(Error::NoConvergence {
                        order: n,
                        iterations: total_sweeps,
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in &mut d[l + 2..] {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for row in v.iter_mut() {
                        let h = row[i + 1];
                        row[i + 1] = s * row[i] + c * h;
                        row[i] = c * row[i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

pub fn laplacian_spectrum(g: &Graph) -> Result<SpectralDecomposition> {
    eigen_symmetric(&laplacian(g))
}

/// Second-smallest Laplacian eigenvalue.
pub fn algebraic_connectivity(g: &Graph) -> Result<f64> {
    if g.order() < 2 {
        return Err(Error::OrderTooSmall {
            what: "algebraic connectivity",
            order: g.order(),
            min: 2,
        });
    }
    let spec = laplacian_spectrum(g)?;
    Ok(spec.eigenvalues[1].max(0.0))
}

/// Width of the eigenvalue cluster that counts toward the multiplicity of α.
pub fn cluster_tolerance(n: usize) -> f64 {
    (1e-10 * n as f64).max(1e-8)
}

pub fn fiedler_vector(g: &Graph) -> Result<FiedlerResult> {
    let n = g.order();
    if n < 2 {
        return Err(Error::OrderTooSmall {
            what: "Fiedler vector",
            order: n,
            min: 2,
        });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let spec = laplacian_spectrum(g)?;
    fiedler_from_spectrum(&spec)
}

/// Picks the Fiedler data out of a full Laplacian decomposition.
pub fn fiedler_from_spectrum(spec: &SpectralDecomposition) -> Result<FiedlerResult> {
    let n = spec.eigenvalues.len();
    let alpha = spec.eigenvalues[1];
    let tol = cluster_tolerance(n);
    let multiplicity = spec.eigenvalues[1..]
        .iter()
        .take_while(|&&l| l - alpha <= tol)
        .count();

    let mut x = spec.eigenvectors[1].clone();
    let mean = x.iter().sum::<f64>() / n as f64;
    x.iter_mut().for_each(|xi| *xi -= mean);
    let norm = x.iter().map(|xi| xi * xi).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    x.iter_mut().for_each(|xi| *xi /= norm);
    orient(&mut x);
    Ok(FiedlerResult {
        alpha,
        vector: x,
        multiplicity,
        residual: spec.residual,
    })
}

/// Flips `x` so its first entry of largest magnitude is positive.
fn orient(x: &mut [f64]) {
    let peak = x.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let lead = x
        .iter()
        .position(|v| v.abs() >= peak - 1e-12)
        .expect("nonempty vector");
    if x[lead] < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
}

/// `Σ_{uv∈E} (x(u) − x(v))² / Σ_v x(v)²` for nonzero `x ⊥ 1`.
pub fn rayleigh_quotient(g: &Graph, x: &[f64]) -> Result<f64> {
    let n = g.order();
    if x.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let norm_sq: f64 = x.iter().map(|v| v * v).sum();
    if norm_sq == 0.0 {
        return Err(Error::ZeroVector);
    }
    let dot: f64 = x.iter().sum();
    let cosine = dot / (norm_sq.sqrt() * (n as f64).sqrt());
    if cosine.abs() > 1e-9 {
        return Err(Error::NotOrthogonal(cosine));
    }
    Ok(g.quadratic_form(x) / norm_sq)
}

/// `2(1 − cos(2π/n))`, the algebraic connectivity of the cycle `C_n`.
pub fn alpha_cycle_closed_form(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::OrderTooSmall {
            what: "cycle",
            order: n,
            min: 3,
        });
    }
    Ok(2.0 * (1.0 - (2.0 * std::f64::consts::PI / n as f64).cos()))
}
