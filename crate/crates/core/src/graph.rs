//! Simple undirected graphs, edge-list ingestion and structural queries.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Default ceiling on vertex count for dense (O(n^3)) operations.
pub const DEFAULT_MAX_DENSE_N: usize = 2048;
/// Largest integer vertex label accepted by [`parse_edge_list`].
pub const EDGE_LIST_MAX_INDEX: usize = 1 << 20;

/// A validated simple undirected graph on vertices `0..n`.
///
/// Edges are stored as ordered pairs `(i, j)` with `i < j`. Adjacency lists and
/// degrees are derived at construction and never change afterwards.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    degrees: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge iterator. Duplicate edges (in either
    /// orientation) collapse to one.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::InvalidGraph("graph must have >= 1 vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {i}")));
            }
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) out of range for n = {n}"
                )));
            }
            set.insert((i.min(j), i.max(j)));
        }
        Ok(Self::from_set(n, set))
    }

    fn from_set(n: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut neighbors = vec![Vec::new(); n];
        for &(i, j) in &edges {
            neighbors[i].push(j);
            neighbors[j].push(i);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        let degrees = neighbors.iter().map(Vec::len).collect();
        Graph {
            n,
            edges,
            neighbors,
            degrees,
            labels: None,
        }
    }

    /// Graph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Result<Self> {
        Self::new(n, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(i, j)` pairs with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Original vertex labels when the graph was parsed from symbolic tokens.
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label for vertex `v`.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        let mut data = vec![0u8; self.n * self.n];
        for &(i, j) in &self.edges {
            data[i * self.n + j] = 1;
            data[j * self.n + i] = 1;
        }
        AdjacencyMatrix { n: self.n, data }
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(i, j)| (i + shift, j + shift)))
            .collect();
        Self::from_set(self.n + other.n, edges)
    }

    pub fn complement(&self) -> Graph {
        let mut edges = BTreeSet::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.edges.contains(&(i, j)) {
                    edges.insert((i, j));
                }
            }
        }
        Self::from_set(self.n, edges)
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n
            || perm
                .iter()
                .any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidParameter(
                "not a permutation of the vertex set".into(),
            ));
        }
        Graph::new(self.n, self.edges.iter().map(|&(i, j)| (perm[i], perm[j])))
    }

    /// Rejects graphs above the dense-operation ceiling.
    pub fn check_dense_size(&self, max: usize) -> Result<()> {
        if self.n > max {
            Err(Error::TooLarge { n: self.n, max })
        } else {
            Ok(())
        }
    }
}

/// Dense symmetric 0/1 adjacency matrix with zero diagonal, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    data: Vec<u8>,
}

impl AdjacencyMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.n + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> usize {
        (0..self.n).map(|i| self.get(i, i) as usize).sum()
    }

    /// Row-major `f64` copy.
    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|&x| f64::from(x)).collect()
    }
}

/// True iff every vertex has the same degree.
pub fn is_regular(g: &Graph) -> bool {
    g.degrees().windows(2).all(|w| w[0] == w[1])
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut component = vec![usize::MAX; g.n()];
    let mut out = Vec::new();
    for start in 0..g.n() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        component[start] = id;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if component[w] == usize::MAX {
                    component[w] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    connected_components(g).len() == 1
}

/// Parses the line-oriented edge-list format.
///
/// A token starting with `#` begins a comment running to the end of the
/// line, so labels never start with `#`. Each remaining
/// line holds two vertex labels (an edge) or a single label (an isolated
/// vertex). If every label is a non-negative integer the labels are used as
/// indices and `n = max + 1`; otherwise all labels are interned as tokens in
/// first-appearance order.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut records: Vec<(usize, &str, Option<&str>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let mut tokens = raw.split_whitespace().take_while(|t| !t.starts_with('#'));
        let Some(first) = tokens.next() else {
            continue;
        };
        let second = tokens.next();
        if tokens.next().is_some() {
            return Err(Error::parse(line_no, "expected at most two vertex labels"));
        }
        if second == Some(first) {
            return Err(Error::parse(
                line_no,
                format!("self-loop at vertex {first}"),
            ));
        }
        records.push((line_no, first, second));
    }
    if records.is_empty() {
        return Err(Error::parse(0, "graph must have >= 1 vertex"));
    }

    let numeric: Option<Vec<(usize, Option<usize>)>> = records
        .iter()
        .map(|&(_, a, b)| {
            let a = a.parse::<usize>().ok()?;
            match b {
                None => Some((a, None)),
                Some(b) => b.parse::<usize>().ok().map(|b| (a, Some(b))),
            }
        })
        .collect();

    if let Some(pairs) = numeric {
        let max = pairs
            .iter()
            .map(|&(a, b)| a.max(b.unwrap_or(0)))
            .max()
            .expect("records is non-empty");
        let n = max
            .checked_add(1)
            .ok_or_else(|| Error::parse(0, "vertex index overflow"))?;
        let mut edges = BTreeSet::new();
        for (&(line_no, _, _), &(a, b)) in records.iter().zip(&pairs) {
            if let Some(b) = b {
                if a == b {
                    return Err(Error::parse(line_no, format!("self-loop at vertex {a}")));
                }
                edges.insert((a.min(b), a.max(b)));
            }
        }
        // Refuse absurd indices rather than allocate per-vertex storage for them.
        if n > EDGE_LIST_MAX_INDEX + 1 {
            return Err(Error::parse(0, format!("vertex index {max} too large")));
        }
        return Ok(Graph::from_set(n, edges));
    }

    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut intern = |tok| {
        *index.entry(tok).or_insert_with(|| {
            labels.push(tok.to_string());
            labels.len() - 1
        })
    };
    let mut edges = BTreeSet::new();
    for &(_, a, b) in &records {
        let a = intern(a);
        if let Some(b) = b {
            let b = intern(b);
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let n = labels.len();
    let mut g = Graph::from_set(n, edges);
    g.labels = Some(labels);
    Ok(g)
}

/// Writes the graph in edge-list form, one `i j` line per edge in
/// lexicographic order, plus a single-label line for each isolated vertex.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (i, j) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(i), g.label(j));
    }
    for v in 0..g.n() {
        if g.degrees()[v] == 0 {
            let _ = writeln!(out, "{}", g.label(v));
        }
    }
    out
}
