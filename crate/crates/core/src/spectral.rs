//! Dense symmetric eigendecomposition and the diagonal of `exp(beta A)`.

use crate::error::{Error, Result};
use crate::graph::{AdjacencyMatrix, Graph};

/// Sweep cap for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 50;
/// Convergence threshold on the off-diagonal Frobenius norm, relative to `||A||_F`.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-13;
/// Above this inverse temperature the `beta -> inf` weights are substituted.
pub const BETA_CAP: f64 = 1e4;

/// Eigenvalues in descending order with an orthonormal eigenvector matrix.
///
/// `vectors` is row-major: entry `(i, j)` is component `i` of the eigenvector
/// paired with `eigenvalues[j]`. Each eigenvector is signed so that its first
/// entry of largest magnitude is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    n: usize,
    eigenvalues: Vec<f64>,
    vectors: Vec<f64>,
    sweeps: usize,
}

fn frobenius(m: &[f64]) -> f64 {
    m.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn off_diagonal_norm(m: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            sum += m[p * n + q] * m[p * n + q];
        }
    }
    (2.0 * sum).sqrt()
}

/// Cyclic Jacobi on a symmetric row-major matrix. Returns unsorted
/// eigenvalues, eigenvector matrix and the number of sweeps used.
fn jacobi(mut a: Vec<f64>, n: usize) -> Result<(Vec<f64>, Vec<f64>, usize)> {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let threshold = OFF_DIAGONAL_TOLERANCE * frobenius(&a);
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a, n);
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NonConvergence {
                sweeps,
                residual: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_p = c * akp - s * akq;
                    let new_q = s * akp + c * akq;
                    a[k * n + p] = new_p;
                    a[p * n + k] = new_p;
                    a[k * n + q] = new_q;
                    a[q * n + k] = new_q;
                }
                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let values = (0..n).map(|i| a[i * n + i]).collect();
    Ok((values, v, sweeps))
}

/// Eigendecomposition of a symmetric adjacency matrix by cyclic Jacobi with a
/// fixed row-by-row sweep order. Deterministic for a given input.
pub fn eigendecompose(a: &AdjacencyMatrix) -> Result<Spectrum> {
    let n = a.n();
    if n == 0 {
        return Err(Error::InvalidGraph("graph must have >= 1 vertex".into()));
    }
    let (values, vectors, sweeps) = jacobi(a.to_f64(), n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| values[y].total_cmp(&values[x]));

    let eigenvalues: Vec<f64> = order.iter().map(|&j| values[j]).collect();
    let mut sorted = vec![0.0; n * n];
    for (dst, &src) in order.iter().enumerate() {
        let column: Vec<f64> = (0..n).map(|i| vectors[i * n + src]).collect();
        let max = column.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let lead = column
            .iter()
            .position(|x| x.abs() >= max - 1e-12)
            .unwrap_or(0);
        let sign = if column[lead] < 0.0 { -1.0 } else { 1.0 };
        for (i, x) in column.into_iter().enumerate() {
            sorted[i * n + dst] = sign * x;
        }
    }
    Ok(Spectrum {
        n,
        eigenvalues,
        vectors: sorted,
        sweeps,
    })
}

impl Spectrum {
    pub fn of(g: &Graph) -> Result<Self> {
        eigendecompose(&g.adjacency())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn largest(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Component `i` of eigenvector `j`.
    pub fn component(&self, i: usize, j: usize) -> f64 {
        self.vectors[i * self.n + j]
    }

    pub fn eigenvector(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.component(i, j)).collect()
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    /// Eigenvector of the largest eigenvalue with round-off negatives
    /// (down to `-1e-10`) clamped to zero. Non-negative for connected graphs.
    pub fn perron_vector(&self) -> Vec<f64> {
        self.eigenvector(0)
            .into_iter()
            .map(|x| if (-1e-10..0.0).contains(&x) { 0.0 } else { x })
            .collect()
    }

    /// `lambda_1 - lambda_2`, or `None` for a single vertex.
    pub fn spectral_gap(&self) -> Option<f64> {
        (self.n > 1).then(|| self.eigenvalues[0] - self.eigenvalues[1])
    }

    /// Number of eigenvalues within `1e-9 * max(1, |lambda_1|)` of the largest.
    pub fn top_multiplicity(&self) -> usize {
        let tol = 1e-9 * self.eigenvalues[0].abs().max(1.0);
        self.eigenvalues
            .iter()
            .take_while(|&&l| self.eigenvalues[0] - l <= tol)
            .count()
    }

    /// Diagonal of the orthogonal projector onto the top eigenspace. Equals
    /// `phi_1(i)^2` when the largest eigenvalue is simple.
    pub fn top_projector_diagonal(&self) -> Vec<f64> {
        let m = self.top_multiplicity();
        (0..self.n)
            .map(|i| (0..m).map(|j| self.component(i, j).powi(2)).sum())
            .collect()
    }

    /// Number of distinct eigenvalues if the clustering is unambiguous:
    /// eigenvalues closer than `1e-10` are merged, and every gap between
    /// clusters must be at least `1e-8`.
    pub fn certified_distinct_eigenvalues(&self) -> Option<usize> {
        let mut clusters = 1;
        for w in self.eigenvalues.windows(2) {
            let gap = w[0] - w[1];
            if gap <= 1e-10 {
                continue;
            }
            if gap < 1e-8 {
                return None;
            }
            clusters += 1;
        }
        Some(clusters)
    }

    /// `max |Q^T Q - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in a..n {
                let dot: f64 = (0..n)
                    .map(|i| self.component(i, a) * self.component(i, b))
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// `max |Q diag(lambda) Q^T - A|`.
    pub fn reconstruction_error(&self, a: &AdjacencyMatrix) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in r..n {
                let value: f64 = (0..n)
                    .map(|j| self.component(r, j) * self.eigenvalues[j] * self.component(c, j))
                    .sum();
                worst = worst.max((value - f64::from(a.get(r, c))).abs());
            }
        }
        worst
    }

    /// Weights `exp(beta (lambda_j - lambda_1))` with shift `beta lambda_1`.
    pub(crate) fn shifted_weights(&self, beta: f64) -> Result<ShiftedWeights> {
        check_beta(beta)?;
        let lambda1 = self.eigenvalues[0];
        if beta == 0.0 {
            return Ok(ShiftedWeights {
                log_scale: 0.0,
                weights: vec![1.0; self.n],
            });
        }
        let weights = if beta > BETA_CAP {
            let m = self.top_multiplicity();
            (0..self.n).map(|j| if j < m { 1.0 } else { 0.0 }).collect()
        } else {
            self.eigenvalues
                .iter()
                .map(|&l| (beta * (l - lambda1)).exp())
                .collect()
        };
        Ok(ShiftedWeights {
            log_scale: beta * lambda1,
            weights,
        })
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_nan() || beta < 0.0 {
        Err(Error::InvalidParameter(format!(
            "beta must be >= 0, got {beta}"
        )))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub(crate) struct ShiftedWeights {
    pub log_scale: f64,
    pub weights: Vec<f64>,
}

impl ShiftedWeights {
    pub fn sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Diagonal of `exp(beta A)` in log-scaled form: `y_i = exp(log_scale) * scaled[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpDiagonal {
    pub beta: f64,
    pub scaled: Vec<f64>,
    pub log_scale: f64,
    /// `z_i = ln y_i`.
    pub z: Vec<f64>,
}

impl ExpDiagonal {
    /// Unscaled `y_i`; entries may be infinite when `log_scale` exceeds ~709.
    pub fn y(&self) -> Vec<f64> {
        let f = self.log_scale.exp();
        self.scaled.iter().map(|s| s * f).collect()
    }

    /// `sum_i z_i`, non-negative up to round-off by Hadamard's inequality.
    pub fn z_sum(&self) -> f64 {
        self.z.iter().sum()
    }
}

/// `y_i = sum_j Q_ij^2 exp(beta lambda_j)`, evaluated as
/// `exp(beta lambda_1) * sum_j Q_ij^2 exp(beta (lambda_j - lambda_1))`.
pub fn exp_diagonal(s: &Spectrum, beta: f64) -> Result<ExpDiagonal> {
    let w = s.shifted_weights(beta)?;
    let n = s.n;
    let scaled: Vec<f64> = if beta == 0.0 {
        vec![1.0; n]
    } else {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| s.component(i, j).powi(2) * w.weights[j])
                    .sum()
            })
            .collect()
    };
    let z = scaled.iter().map(|x| w.log_scale + x.ln()).collect();
    Ok(ExpDiagonal {
        beta,
        scaled,
        log_scale: w.log_scale,
        z,
    })
}

/// `Z = tr(exp(beta A)) = sum_j exp(beta lambda_j)` in log-scaled form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionFunction {
    pub log_scale: f64,
    pub scaled: f64,
    pub ln_z: f64,
}

impl PartitionFunction {
    pub fn value(&self) -> f64 {
        self.ln_z.exp()
    }
}

pub fn partition_function(s: &Spectrum, beta: f64) -> Result<PartitionFunction> {
    let w = s.shifted_weights(beta)?;
    let scaled = if beta == 0.0 { s.n as f64 } else { w.sum() };
    Ok(PartitionFunction {
        log_scale: w.log_scale,
        scaled,
        ln_z: w.log_scale + scaled.ln(),
    })
}

/// Subgraph centrality `(e^A)_ii`.
pub fn subgraph_centrality(s: &Spectrum) -> Vec<f64> {
    exp_diagonal(s, 1.0).expect("beta = 1 is valid").y()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn k2_spectrum() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let s = Spectrum::of(&g).unwrap();
        assert!(close(s.eigenvalues()[0], 1.0, 1e-14));
        assert!(close(s.eigenvalues()[1], -1.0, 1e-14));
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(s.component(0, 0), r, 1e-14) && close(s.component(1, 0), r, 1e-14));
        assert!(close(s.component(0, 1).abs(), r, 1e-14));
        assert!(close(s.component(0, 1), -s.component(1, 1), 1e-14));
    }

    #[test]
    fn p3_and_c4_spectra() {
        let s = Spectrum::of(&p3()).unwrap();
        let r2 = 2f64.sqrt();
        for (got, want) in s.eigenvalues().iter().zip([r2, 0.0, -r2]) {
            assert!(close(*got, want, 1e-13), "{got} vs {want}");
        }
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s = Spectrum::of(&c4).unwrap();
        for (got, want) in s.eigenvalues().iter().zip([2.0, 0.0, 0.0, -2.0]) {
            assert!(close(*got, want, 1e-13));
        }
    }

    #[test]
    fn invariants_hold() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap();
        let a = g.adjacency();
        let s = eigendecompose(&a).unwrap();
        assert!(s.orthonormality_error() <= 1e-10);
        assert!(s.reconstruction_error(&a) <= 1e-8);
        assert!(s.eigenvalues().iter().sum::<f64>().abs() <= 1e-8);
        assert!(s.perron_vector().iter().all(|&x| x >= 0.0));
        assert!(s.eigenvalues().windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn edgeless_and_single_vertex() {
        let s = Spectrum::of(&Graph::edgeless(3).unwrap()).unwrap();
        assert_eq!(s.eigenvalues(), &[0.0, 0.0, 0.0]);
        assert_eq!(s.sweeps(), 0);
        let s = Spectrum::of(&Graph::edgeless(1).unwrap()).unwrap();
        assert_eq!(s.spectral_gap(), None);
        let z = partition_function(&s, 3.0).unwrap();
        assert_eq!(z.value(), 1.0);
    }

    #[test]
    fn exp_diagonal_closed_forms() {
        let k2 = Spectrum::of(&Graph::new(2, [(0, 1)]).unwrap()).unwrap();
        let y = exp_diagonal(&k2, 1.0).unwrap().y();
        for v in y {
            assert!(close(v, 1f64.cosh(), 1e-14));
        }
        let s = Spectrum::of(&p3()).unwrap();
        let c = 2f64.sqrt().cosh();
        let y = exp_diagonal(&s, 1.0).unwrap().y();
        for (got, want) in y.iter().zip([(c + 1.0) / 2.0, c, (c + 1.0) / 2.0]) {
            assert!(close(*got, want, 1e-13), "{got} vs {want}");
        }
        assert!(close(y[0], 1.589091, 1e-6) && close(y[1], 2.178183, 1e-6));
    }

    #[test]
    fn small_beta_gives_identity() {
        let s = Spectrum::of(&p3()).unwrap();
        for v in exp_diagonal(&s, 1e-12).unwrap().y() {
            assert!(close(v, 1.0, 1e-10));
        }
        assert_eq!(exp_diagonal(&s, 0.0).unwrap().y(), vec![1.0; 3]);
    }

    #[test]
    fn negative_beta_rejected() {
        let s = Spectrum::of(&p3()).unwrap();
        assert!(matches!(
            exp_diagonal(&s, -1.0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(partition_function(&s, f64::NAN).is_err());
    }

    #[test]
    fn partition_function_values() {
        let k2 = Spectrum::of(&Graph::new(2, [(0, 1)]).unwrap()).unwrap();
        let e = std::f64::consts::E;
        assert!(close(
            partition_function(&k2, 1.0).unwrap().value(),
            e + 1.0 / e,
            1e-13
        ));
        assert!(close(
            partition_function(&k2, 1.0).unwrap().value(),
            3.0861613,
            1e-7
        ));
        let s = Spectrum::of(&p3()).unwrap();
        let r2 = 2f64.sqrt();
        let want = r2.exp() + 1.0 + (-r2).exp();
        assert!(close(
            partition_function(&s, 1.0).unwrap().value(),
            want,
            1e-13
        ));
        assert!(close(want, 5.356367, 1e-6));
        let empty = Spectrum::of(&Graph::edgeless(4).unwrap()).unwrap();
        assert_eq!(partition_function(&empty, 2.5).unwrap().value(), 4.0);
    }

    #[test]
    fn huge_beta_stays_finite_in_log_scale() {
        let s = Spectrum::of(&p3()).unwrap();
        let d = exp_diagonal(&s, 5000.0).unwrap();
        assert!(d.z.iter().all(|z| z.is_finite()));
        assert!(d.y().iter().all(|y| y.is_infinite()));
        let z = partition_function(&s, 5000.0).unwrap();
        assert!(close(z.ln_z, 5000.0 * 2f64.sqrt(), 1e-9));
        // Past the cap the limit weights are used.
        let capped = exp_diagonal(&s, 1e6).unwrap();
        for (got, want) in capped.scaled.iter().zip([0.25, 0.5, 0.25]) {
            assert!(close(*got, want, 1e-12));
        }
    }

    #[test]
    fn star_centrality_ordering() {
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let sc = subgraph_centrality(&Spectrum::of(&star).unwrap());
        assert!(sc[1..].iter().all(|&leaf| sc[0] > leaf));
    }

    #[test]
    fn top_eigenspace() {
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s = Spectrum::of(&tri.disjoint_union(&c4)).unwrap();
        assert_eq!(s.top_multiplicity(), 2);
        let p = s.top_projector_diagonal();
        for (i, want) in [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.25, 0.25, 0.25, 0.25]
            .iter()
            .enumerate()
        {
            assert!(close(p[i], *want, 1e-12));
        }
        assert_eq!(
            Spectrum::of(&p3())
                .unwrap()
                .certified_distinct_eigenvalues(),
            Some(3)
        );
    }
}
