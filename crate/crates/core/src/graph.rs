//! Labelled simple graphs and their basic structure.
//!
//! Vertices are `0..n`. A label names at most one vertex; constructions use
//! the labels `0, 1, 2, ...` to decide which vertices get glued or extended.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Vertex labels. Only small non-negative labels are used by the constructions.
pub type Label = u32;

/// A finite simple graph with an optional, injective vertex labelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertex_count: usize,
    /// Normalised `(u, v)` with `u < v`, sorted ascending.
    edges: Vec<(usize, usize)>,
    /// label -> vertex; injective in both directions.
    labels: BTreeMap<Label, usize>,
}

/// Validating constructor: rejects loops, duplicate edges, out-of-range
/// endpoints and duplicated labels, naming the offending item.
pub fn build_graph(
    vertex_count: usize,
    edges: &[(usize, usize)],
    labels: &[(Label, usize)],
) -> Result<LabeledGraph> {
    let mut normalised: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        for &x in &[u, v] {
            if x >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    vertex_count,
                });
            }
        }
        normalised.push((u.min(v), u.max(v)));
    }
    normalised.sort_unstable();
    if let Some(w) = normalised.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateEdge(w[0].0, w[0].1));
    }
    let mut map = BTreeMap::new();
    let mut seen_vertices = BTreeMap::new();
    for &(l, v) in labels {
        if v >= vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count,
            });
        }
        if map.insert(l, v).is_some() {
            return Err(Error::DuplicateLabel(l));
        }
        if seen_vertices.insert(v, l).is_some() {
            return Err(Error::DuplicateLabel(l));
        }
    }
    Ok(LabeledGraph {
        vertex_count,
        edges: normalised,
        labels: map,
    })
}

impl LabeledGraph {
    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.vertex_count
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> &BTreeMap<Label, usize> {
        &self.labels
    }

    pub fn label_vertex(&self, label: Label) -> Option<usize> {
        self.labels.get(&label).copied()
    }

    pub fn vertex_label(&self, vertex: usize) -> Option<Label> {
        self.labels
            .iter()
            .find(|&(_, &v)| v == vertex)
            .map(|(&l, _)| l)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn adjacency(&self) -> AdjMatrix {
        AdjMatrix::from_graph(self)
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count <= 1 {
            return true;
        }
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// Two-colourability by BFS; edgeless graphs are bipartite.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.adjacency_lists();
        let mut colour = vec![u8::MAX; self.vertex_count];
        for start in 0..self.vertex_count {
            if colour[start] != u8::MAX {
                continue;
            }
            colour[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[v];
                        queue.push_back(w);
                    } else if colour[w] == colour[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Replaces the labelling wholesale; used by the construction operators.
    pub(crate) fn with_labels(mut self, labels: BTreeMap<Label, usize>) -> Self {
        self.labels = labels;
        self
    }

    /// Disjoint union; the other graph's vertices are shifted by `self.n()`.
    /// Labels of `other` are dropped on collision with labels of `self`.
    pub fn disjoint_union(&self, other: &LabeledGraph) -> LabeledGraph {
        let offset = self.vertex_count;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + offset, v + offset)));
        let mut labels = self.labels.clone();
        for (&l, &v) in &other.labels {
            labels.entry(l).or_insert(v + offset);
        }
        build_graph(self.vertex_count + other.vertex_count, &edges, &[])
            .expect("disjoint union of valid graphs is valid")
            .with_labels(labels)
    }

    /// GraphViz rendering; labelled vertices carry a `label` attribute.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.vertex_count {
            match self.vertex_label(v) {
                Some(l) => out.push_str(&format!("  {v} [label=\"{v} ({l})\"];\n")),
                None => out.push_str(&format!("  {v};\n")),
            }
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph(n={}, m={}", self.vertex_count, self.edges.len())?;
        if !self.labels.is_empty() {
            let labels: Vec<String> = self
                .labels
                .iter()
                .map(|(l, v)| format!("{l}->{v}"))
                .collect();
            write!(f, ", labels: {}", labels.join(", "))?;
        }
        write!(f, ")")
    }
}

/// JSON shape: `{"vertices": n, "edges": [[u, v], ...], "labels": {"0": 2}}`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<String, usize>,
}

impl Serialize for LabeledGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            vertices: self.vertex_count,
            edges: self.edges.clone(),
            labels: self
                .labels
                .iter()
                .map(|(l, v)| (l.to_string(), *v))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LabeledGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(deserializer)?;
        let mut labels = Vec::with_capacity(raw.labels.len());
        for (l, v) in raw.labels {
            let l: Label = l
                .parse()
                .map_err(|_| D::Error::custom(format!("label {l:?} is not a non-negative integer")))?;
            labels.push((l, v));
        }
        build_graph(raw.vertices, &raw.edges, &labels).map_err(D::Error::custom)
    }
}

/// Bitset adjacency matrix used by the counting engines and the battery.
#[derive(Debug, Clone)]
pub struct AdjMatrix {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl AdjMatrix {
    pub fn from_graph(g: &LabeledGraph) -> Self {
        let n = g.n();
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![0u64; n * words];
        for &(u, v) in g.edges() {
            rows[u * words + v / 64] |= 1 << (v % 64);
            rows[v * words + u / 64] |= 1 << (u % 64);
        }
        AdjMatrix { n, words, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of neighbours of `u` inside the bitmask `mask` (same word layout).
    pub fn degree_into(&self, u: usize, mask: &[u64]) -> usize {
        self.row(u)
            .iter()
            .zip(mask)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn words(&self) -> usize {
        self.words
    }
}

/// The stock graphs used by the constructions, with their canonical labellings:
/// a single vertex labelled 0; two isolated vertices labelled 1 and 2; a single
/// edge labelled 0 and 1; cycles and complete graphs with vertex 0 labelled 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardKind {
    SingleVertex,
    IsolatedPair,
    Edge,
    Cycle,
    Complete,
}

impl StandardKind {
    pub fn name(self) -> &'static str {
        match self {
            StandardKind::SingleVertex => "v",
            StandardKind::IsolatedPair => "isolated_pair",
            StandardKind::Edge => "e",
            StandardKind::Cycle => "cycle",
            StandardKind::Complete => "complete",
        }
    }
}

impl std::str::FromStr for StandardKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "v" | "vertex" | "single-vertex" => Ok(StandardKind::SingleVertex),
            "isolated-pair" | "isolated_pair" | "ebar" => Ok(StandardKind::IsolatedPair),
            "e" | "edge" => Ok(StandardKind::Edge),
            "cycle" | "c" => Ok(StandardKind::Cycle),
            "complete" | "k" => Ok(StandardKind::Complete),
            other => Err(Error::InvalidParameter(format!(
                "unknown standard graph kind {other:?}"
            ))),
        }
    }
}

/// Builds one of the stock graphs. `size` is the vertex count and must match
/// the kind (1 for the single vertex, 2 for the pair and the edge, >= 3 for
/// cycles, >= 1 for complete graphs).
pub fn standard_graph(kind: StandardKind, size: usize) -> Result<LabeledGraph> {
    let invalid = || Error::InvalidStandardSize {
        kind: kind.name(),
        size,
    };
    match kind {
        StandardKind::SingleVertex => {
            if size != 1 {
                return Err(invalid());
            }
            build_graph(1, &[], &[(0, 0)])
        }
        StandardKind::IsolatedPair => {
            if size != 2 {
                return Err(invalid());
            }
            build_graph(2, &[], &[(1, 0), (2, 1)])
        }
        StandardKind::Edge => {
            if size != 2 {
                return Err(invalid());
            }
            build_graph(2, &[(0, 1)], &[(0, 0), (1, 1)])
        }
        StandardKind::Cycle => {
            if size < 3 {
                return Err(invalid());
            }
            let edges: Vec<(usize, usize)> = (0..size).map(|i| (i, (i + 1) % size)).collect();
            build_graph(size, &edges, &[(0, 0)])
        }
        StandardKind::Complete => {
            if size < 1 {
                return Err(invalid());
            }
            let mut edges = Vec::new();
            for u in 0..size {
                for v in u + 1..size {
                    edges.push((u, v));
                }
            }
            build_graph(size, &edges, &[(0, 0)])
        }
    }
}
