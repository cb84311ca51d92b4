//! Exact closed-walk counts and the walk-regularity decision procedure.
//!
//! All matrix powers are carried in arbitrary-precision integers. Since `A` is
//! a 0/1 matrix, `A * M` is computed as neighbour-row sums, which costs
//! `O(n * |E|)` big-integer additions per power instead of a dense product.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Exact diagonals of `A^k` for `k = 0..=K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSequence {
    n: usize,
    rows: Vec<Vec<BigUint>>,
}

impl DiagonalSequence {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Highest power stored.
    pub fn max_power(&self) -> usize {
        self.rows.len() - 1
    }

    /// `diag(A^k)`; entry `i` counts closed walks of length `k` at vertex `i`.
    pub fn row(&self, k: usize) -> &[BigUint] {
        &self.rows[k]
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    /// `trace(A^k)`.
    pub fn trace(&self, k: usize) -> BigUint {
        self.rows[k].iter().sum()
    }
}

/// Multiplies `m` (row-major, `n x n`) on the left by the adjacency matrix of `g`.
fn adjacency_times<T>(g: &Graph, m: &[T]) -> Vec<T>
where
    T: Clone + Zero + for<'a> std::ops::AddAssign<&'a T>,
{
    let n = g.n();
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        let row = &mut out[i * n..(i + 1) * n];
        for &l in g.neighbors(i) {
            for (dst, src) in row.iter_mut().zip(&m[l * n..(l + 1) * n]) {
                *dst += src;
            }
        }
    }
    out
}

fn identity<T: Clone + Zero + One>(n: usize) -> Vec<T> {
    let mut m = vec![T::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = T::one();
    }
    m
}

fn diagonal<T: Clone>(m: &[T], n: usize) -> Vec<T> {
    (0..n).map(|i| m[i * n + i].clone()).collect()
}

/// Iterator over successive powers `A^0, A^1, ...` as full matrices.
struct Powers<'g> {
    g: &'g Graph,
    current: Option<Vec<BigUint>>,
}

impl<'g> Powers<'g> {
    fn new(g: &'g Graph) -> Self {
        Powers { g, current: None }
    }
}

impl Iterator for Powers<'_> {
    type Item = Vec<BigUint>;

    fn next(&mut self) -> Option<Self::Item> {
        let next = match &self.current {
            None => identity(self.g.n()),
            Some(m) => adjacency_times(self.g, m),
        };
        self.current = Some(next.clone());
        Some(next)
    }
}

/// Exact `diag(A^k)` for `k = 0..=max_power`.
pub fn diagonal_sequence(g: &Graph, max_power: usize) -> DiagonalSequence {
    let n = g.n();
    let rows = Powers::new(g)
        .take(max_power + 1)
        .map(|m| diagonal(&m, n))
        .collect();
    DiagonalSequence { n, rows }
}

/// The first power whose diagonal is not constant, with the vertex pair that
/// shows it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub k: usize,
    pub vertices: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkRegularity {
    pub walk_regular: bool,
    pub witness: Option<Witness>,
    /// Highest power examined.
    pub checked_up_to: usize,
}

fn first_difference(diag: &[BigUint]) -> Option<usize> {
    diag.iter().position(|d| d != &diag[0])
}

fn decide(g: &Graph, bound: usize) -> WalkRegularity {
    let mut checked = 0;
    // k = 0 and k = 1 are constant for every simple graph.
    for (k, power) in Powers::new(g).enumerate().take(bound + 1) {
        checked = k;
        if k < 2 {
            continue;
        }
        let diag = diagonal(&power, g.n());
        if let Some(j) = first_difference(&diag) {
            return WalkRegularity {
                walk_regular: false,
                witness: Some(Witness {
                    k,
                    vertices: (0, j),
                }),
                checked_up_to: k,
            };
        }
    }
    WalkRegularity {
        walk_regular: true,
        witness: None,
        checked_up_to: checked,
    }
}

/// Decides walk-regularity exactly: `diag(A^k)` constant for all
/// `k = 0..=n-1`. By Cayley-Hamilton every higher power is an integer
/// combination of these, so the bound is complete. Stops at the first
/// non-constant diagonal, which is therefore the minimal witness.
pub fn is_walk_regular_exact(g: &Graph) -> WalkRegularity {
    decide(g, g.n().saturating_sub(1))
}

/// Same decision with a caller-supplied power bound, typically the number of
/// distinct eigenvalues minus one from [`crate::spectral::Spectrum::certified_distinct_eigenvalues`].
/// The bound is only sound if the eigenvalue count is; [`is_walk_regular_exact`]
/// remains the authority.
pub fn is_walk_regular_bounded(g: &Graph, bound: usize) -> WalkRegularity {
    decide(g, bound.min(g.n().saturating_sub(1)))
}

/// Coefficients `c_0, ..., c_n` of the characteristic polynomial
/// `det(T I - A) = T^n + c_{n-1} T^{n-1} + ... + c_0`, by Faddeev-LeVerrier in
/// exact integer arithmetic.
pub fn characteristic_polynomial(g: &Graph) -> Result<Vec<BigInt>> {
    let n = g.n();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m: Vec<BigInt> = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = adjacency_times(g, &m);
        for i in 0..n {
            next[i * n + i] += &coeffs[n - k + 1];
        }
        // c_{n-k} = -tr(A M_k) / k
        let mut trace = BigInt::zero();
        for i in 0..n {
            for &l in g.neighbors(i) {
                trace += &next[l * n + i];
            }
        }
        let k_big = BigInt::from(k);
        if !(&trace % &k_big).is_zero() {
            return Err(Error::Internal(format!(
                "Faddeev-LeVerrier trace {trace} not divisible by {k}"
            )));
        }
        coeffs[n - k] = -(trace / k_big);
        m = next;
    }
    Ok(coeffs)
}

/// Self-test of the `n - 1` bound: checks that `diag(A^n)` equals
/// `-(c_{n-1} diag(A^{n-1}) + ... + c_0 diag(A^0))` exactly.
pub fn hamilton_reduction_check(g: &Graph) -> Result<bool> {
    let n = g.n();
    let coeffs = characteristic_polynomial(g)?;
    let seq = diagonal_sequence(g, n);
    let mut predicted = vec![BigInt::zero(); n];
    for (k, c) in coeffs.iter().take(n).enumerate() {
        if c.is_zero() {
            continue;
        }
        for (p, d) in predicted.iter_mut().zip(seq.row(k)) {
            *p -= c * BigInt::from(d.clone());
        }
    }
    Ok(predicted
        .iter()
        .zip(seq.row(n))
        .all(|(p, d)| *p == BigInt::from(d.clone())))
}
