//! Independent oracles and the shared corpus for the integration tests.
#![allow(dead_code)]

use walkgauge::{generate, FamilySpec, Graph};

/// Diagonal of `exp(beta A)` by truncated Taylor series on dense `f64`
/// matrices. Every term is entrywise non-negative, so there is no
/// cancellation and the partial sums are accurate to a few ulps.
pub fn taylor_exp_diagonal(g: &Graph, beta: f64) -> Vec<f64> {
    let n = g.n();
    let mut a = vec![0.0; n * n];
    for (i, j) in g.edges() {
        a[i * n + j] = 1.0;
        a[j * n + i] = 1.0;
    }
    let mut term = vec![0.0; n * n];
    for i in 0..n {
        term[i * n + i] = 1.0;
    }
    let mut diag = vec![1.0; n];
    for k in 1..2000 {
        let mut next = vec![0.0; n * n];
        for i in 0..n {
            for l in 0..n {
                let t = term[i * n + l];
                if t == 0.0 {
                    continue;
                }
                for j in 0..n {
                    next[i * n + j] += t * a[l * n + j];
                }
            }
        }
        let f = beta / k as f64;
        next.iter_mut().for_each(|x| *x *= f);
        term = next;
        let biggest = term.iter().fold(0.0f64, |m, x| m.max(*x));
        for i in 0..n {
            diag[i] += term[i * n + i];
        }
        let smallest = diag.iter().fold(f64::INFINITY, |m, x| m.min(*x));
        if k as f64 > beta * n as f64 && biggest < 1e-18 * smallest {
            break;
        }
    }
    diag
}

pub fn shannon(y: &[f64]) -> f64 {
    let z: f64 = y.iter().sum();
    -y.iter()
        .map(|v| {
            let p = v / z;
            if p == 0.0 {
                0.0
            } else {
                p * p.ln()
            }
        })
        .sum::<f64>()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

pub fn g(spec: FamilySpec) -> Graph {
    generate(&spec).unwrap()
}

pub fn c3_c4() -> Graph {
    g(FamilySpec::Cycle(3)).disjoint_union(&g(FamilySpec::Cycle(4)))
}

/// Every family in the corpus, connected or not.
pub fn family_corpus() -> Vec<FamilySpec> {
    use FamilySpec::*;
    let mut v: Vec<FamilySpec> = (2..=8).map(Complete).collect();
    v.extend((3..=12).map(Cycle));
    v.extend([
        Petersen,
        Hypercube(3),
        Hypercube(4),
        Circulant(8, vec![1, 2]),
        Circulant(9, vec![1, 3]),
        TwinK4e,
        Path(3),
        Path(5),
        Path(8),
        Star(4),
        Star(5),
        CompleteBipartite(2, 3),
        CompleteBipartite(3, 5),
        Edgeless(4),
    ]);
    v
}

/// Small connected graphs given by edge list, outside the built-in families.
pub fn misc_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        (
            "paw",
            Graph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap(),
        ),
        (
            "prism",
            Graph::new(
                6,
                [
                    (0, 1),
                    (1, 2),
                    (2, 0),
                    (3, 4),
                    (4, 5),
                    (5, 3),
                    (0, 3),
                    (1, 4),
                    (2, 5),
                ],
            )
            .unwrap(),
        ),
        ("complement of c3+c4", c3_c4().complement()),
        (
            "complement of twin_k4e",
            g(FamilySpec::TwinK4e).complement(),
        ),
    ]
}
