//! Deterministic graph families and the regular-but-not-walk-regular search.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::WalkClass;
use crate::error::{Error, Result};
use crate::exact::is_walk_regular_exact;
use crate::graph::{is_regular, Graph};
use crate::graph6::emit_graph6;

pub const MAX_HYPERCUBE_DIM: usize = 7;
/// Ceiling on `max_n` for the search.
pub const SEARCH_MAX_N: usize = 12;
/// Ceiling for the built-in enumeration when no candidate stream is given.
pub const ENUMERATION_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum FamilySpec {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    /// `K_{1, n-1}`: `n` vertices in total, vertex 0 is the centre.
    Star(usize),
    CompleteBipartite(usize, usize),
    /// `n` vertices, `i ~ i +/- s (mod n)` for each `s` in the connection set.
    Circulant(usize, Vec<usize>),
    Hypercube(usize),
    Petersen,
    TwinK4e,
    Edgeless(usize),
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Complete(n) => write!(f, "complete({n})"),
            FamilySpec::Cycle(n) => write!(f, "cycle({n})"),
            FamilySpec::Path(n) => write!(f, "path({n})"),
            FamilySpec::Star(n) => write!(f, "star({n})"),
            FamilySpec::CompleteBipartite(m, k) => write!(f, "complete_bipartite({m},{k})"),
            FamilySpec::Circulant(n, s) => {
                let s: Vec<String> = s.iter().map(ToString::to_string).collect();
                write!(f, "circulant({n},{{{}}})", s.join(","))
            }
            FamilySpec::Hypercube(d) => write!(f, "hypercube({d})"),
            FamilySpec::Petersen => f.write_str("petersen"),
            FamilySpec::TwinK4e => f.write_str("twin_k4e"),
            FamilySpec::Edgeless(n) => write!(f, "edgeless({n})"),
        }
    }
}

fn need(ok: bool, msg: impl Into<String>) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.into()))
    }
}

fn complete_edges(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Builds the labeled graph for `spec`.
///
/// The Petersen graph is the Kneser graph `K(5,2)`: vertices are the 2-subsets
/// of `{0..4}` in lexicographic order, adjacent when disjoint. `TwinK4e` is
/// two copies of `K_4` minus the edge `{a, b}` on vertices `(a, b, c, d)` =
/// `(0, 1, 2, 3)` and `(4, 5, 6, 7)`, joined by `a1-a2` and `b1-b2`.
pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    match spec {
        FamilySpec::Complete(n) => {
            need(*n >= 1, "complete graph needs n >= 1")?;
            Graph::new(*n, complete_edges(*n))
        }
        FamilySpec::Cycle(n) => {
            need(*n >= 3, "cycle needs n >= 3")?;
            Graph::new(*n, (0..*n).map(|i| (i, (i + 1) % n)))
        }
        FamilySpec::Path(n) => {
            need(*n >= 1, "path needs n >= 1")?;
            Graph::new(*n, (1..*n).map(|i| (i - 1, i)))
        }
        FamilySpec::Star(n) => {
            need(*n >= 1, "star needs n >= 1")?;
            Graph::new(*n, (1..*n).map(|i| (0, i)))
        }
        FamilySpec::CompleteBipartite(m, k) => {
            need(m + k >= 1, "complete bipartite graph needs m + k >= 1")?;
            Graph::new(
                m + k,
                (0..*m).flat_map(|i| (0..*k).map(move |j| (i, m + j))),
            )
        }
        FamilySpec::Circulant(n, set) => {
            need(*n >= 1, "circulant needs n >= 1")?;
            need(
                set.iter().all(|&s| s >= 1 && s <= n / 2),
                format!("circulant connection set must lie in 1..={}", n / 2),
            )?;
            Graph::new(
                *n,
                set.iter()
                    .flat_map(|&s| (0..*n).map(move |i| (i, (i + s) % n))),
            )
        }
        FamilySpec::Hypercube(d) => {
            need(
                *d <= MAX_HYPERCUBE_DIM,
                format!("hypercube dimension must be <= {MAX_HYPERCUBE_DIM}"),
            )?;
            let n = 1usize << d;
            Graph::new(
                n,
                (0..n).flat_map(|v| (0..*d).map(move |b| (v, v ^ (1 << b)))),
            )
        }
        FamilySpec::Petersen => {
            let pairs: Vec<(usize, usize)> = complete_edges(5).collect();
            let edges = complete_edges(10).filter(|&(u, v)| {
                let (a, b) = pairs[u];
                let (c, d) = pairs[v];
                a != c && a != d && b != c && b != d
            });
            Graph::new(10, edges)
        }
        FamilySpec::TwinK4e => {
            let copy = |o: usize| {
                [
                    (o, o + 2),
                    (o, o + 3),
                    (o + 1, o + 2),
                    (o + 1, o + 3),
                    (o + 2, o + 3),
                ]
            };
            let edges = copy(0).into_iter().chain(copy(4)).chain([(0, 4), (1, 5)]);
            Graph::new(8, edges)
        }
        FamilySpec::Edgeless(n) => Graph::edgeless(*n),
    }
}

/// Ground-truth label for each family.
pub fn expected_class(spec: &FamilySpec) -> WalkClass {
    match spec {
        FamilySpec::Path(n) | FamilySpec::Star(n) if *n >= 3 => WalkClass::NonRegular,
        FamilySpec::CompleteBipartite(m, k) if m != k && *m > 0 && *k > 0 => WalkClass::NonRegular,
        FamilySpec::TwinK4e => WalkClass::RegularNotWalkRegular,
        _ => WalkClass::WalkRegular,
    }
}

/// Every labeled `degree`-regular graph on `n` vertices, by choosing each
/// vertex's remaining higher-indexed neighbours in turn.
pub fn enumerate_regular(n: usize, degree: usize) -> Vec<Graph> {
    fn recurse(
        n: usize,
        d: usize,
        v: usize,
        deg: &mut Vec<usize>,
        edges: &mut Vec<(usize, usize)>,
        out: &mut Vec<Graph>,
    ) {
        if v == n {
            out.push(Graph::new(n, edges.iter().copied()).expect("valid by construction"));
            return;
        }
        let missing = d - deg[v];
        let candidates: Vec<usize> = (v + 1..n).filter(|&u| deg[u] < d).collect();
        if candidates.len() < missing {
            return;
        }
        choose(n, d, v, &candidates, 0, missing, deg, edges, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn choose(
        n: usize,
        d: usize,
        v: usize,
        candidates: &[usize],
        from: usize,
        missing: usize,
        deg: &mut Vec<usize>,
        edges: &mut Vec<(usize, usize)>,
        out: &mut Vec<Graph>,
    ) {
        if missing == 0 {
            recurse(n, d, v + 1, deg, edges, out);
            return;
        }
        for idx in from..candidates.len() {
            if candidates.len() - idx < missing {
                break;
            }
            let u = candidates[idx];
            deg[u] += 1;
            edges.push((v, u));
            let before = deg[v];
            deg[v] += 1;
            choose(n, d, v, candidates, idx + 1, missing - 1, deg, edges, out);
            deg[v] = before;
            edges.pop();
            deg[u] -= 1;
        }
    }

    if n == 0 || degree >= n || (n * degree) % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    recurse(n, degree, 0, &mut vec![0; n], &mut Vec::new(), &mut out);
    out
}

/// Regular graphs that are not walk-regular, deduplicated by graph6 string
/// and returned in graph6 byte order.
///
/// Candidates come from `stream` when given (graphs with more than `max_n`
/// vertices are skipped); otherwise every labeled regular graph on
/// `1..=max_n` vertices is generated, which requires `max_n <= 8`.
pub fn search_regular_not_walk_regular(
    stream: Option<&[Graph]>,
    max_n: usize,
    degree: Option<usize>,
) -> Result<Vec<(String, Graph)>> {
    if max_n > SEARCH_MAX_N {
        return Err(Error::InvalidParameter(format!(
            "search max_n must be <= {SEARCH_MAX_N}, got {max_n}"
        )));
    }
    let degree_ok = |g: &Graph| degree.is_none_or(|d| g.degrees().first() == Some(&d));
    let candidates: Vec<Graph> = match stream {
        Some(graphs) => graphs
            .iter()
            .filter(|g| g.n() <= max_n && is_regular(g) && degree_ok(g))
            .cloned()
            .collect(),
        None => {
            if max_n > ENUMERATION_MAX_N {
                return Err(Error::InvalidParameter(format!(
                    "built-in enumeration covers n <= {ENUMERATION_MAX_N}; supply a candidate stream for larger n"
                )));
            }
            (1..=max_n)
                .flat_map(|n| {
                    let degrees: Vec<usize> = match degree {
                        Some(d) => vec![d],
                        None => (0..n).collect(),
                    };
                    degrees
                        .into_iter()
                        .flat_map(move |d| enumerate_regular(n, d))
                })
                .collect()
        }
    };
    let found: BTreeMap<String, Graph> = candidates
        .into_par_iter()
        .filter(|g| !is_walk_regular_exact(g).walk_regular)
        .map(|g| (emit_graph6(&g), g))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(found.into_iter().collect())
}
