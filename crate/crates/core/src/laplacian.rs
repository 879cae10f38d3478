use crate::graph::Graph;

/// `L(G) = D(G) - A(G)`, assembled in integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl LaplacianMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.entries
            .chunks(self.n.max(1))
            .map(|r| r.iter().sum())
            .collect()
    }

    /// Row-major floating-point copy for the eigensolver.
    pub fn to_dense(&self) -> Vec<f64> {
        self.entries.iter().map(|&v| v as f64).collect()
    }

    /// `x^T L x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n);
        let mut acc = 0.0;
        for i in 0..self.n {
            let row = &self.entries[i * self.n..(i + 1) * self.n];
            let lx: f64 = row.iter().zip(x).map(|(&a, &b)| a as f64 * b).sum();
            acc += x[i] * lx;
        }
        acc
    }

    /// `L x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|row| row.iter().zip(x).map(|(&a, &b)| a as f64 * b).sum())
            .collect()
    }
}

pub fn laplacian(g: &Graph) -> LaplacianMatrix {
    let n = g.order();
    let mut entries = vec![0i64; n * n];
    for (u, v) in g.edges() {
        entries[u * n + v] = -1;
        entries[v * n + u] = -1;
        entries[u * n + u] += 1;
        entries[v * n + v] += 1;
    }
    LaplacianMatrix { n, entries }
}

/// `(L(G) x)_v` computed straight from adjacency.
pub fn laplacian_apply_at(g: &Graph, x: &[f64], v: usize) -> f64 {
    g.neighbors(v).map(|w| x[v] - x[w]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let l = laplacian(&Graph::complete(3));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l.get(i, j), if i == j { 2 } else { -1 });
            }
        }
    }

    #[test]
    fn single_edge() {
        let l = laplacian(&Graph::path(2));
        assert_eq!(l.to_dense(), vec![1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn four_cycle_rows() {
        let l = laplacian(&Graph::cycle(4));
        assert_eq!(l.row_sums(), vec![0; 4]);
        assert!((0..4).all(|i| l.get(i, i) == 2));
    }

    #[test]
    fn matches_degree_minus_adjacency() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let l = laplacian(&g);
        for i in 0..5 {
            for j in 0..5 {
                let want = if i == j {
                    g.degree(i) as i64
                } else if g.has_edge(i, j) {
                    -1
                } else {
                    0
                };
                assert_eq!(l.get(i, j), want);
            }
        }
    }

    #[test]
    fn apply_matches_pointwise() {
        let g = Graph::cycle(6).add_edge(1, 4).unwrap();
        let x = [0.3, -1.0, 2.0, 0.5, -0.25, 1.5];
        let lx = laplacian(&g).apply(&x);
        for (v, value) in lx.iter().enumerate() {
            assert!((value - laplacian_apply_at(&g, &x, v)).abs() < 1e-15);
        }
    }
}
