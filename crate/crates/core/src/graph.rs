//! Undirected simple graphs and the edge-list format.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Read;

use crate::error::{Error, Result};

/// An immutable undirected simple graph over dense node indices `0..n`.
///
/// Each index keeps the label it had in the source file. Neighbor lists are
/// sorted, which makes `has_edge` a binary search and iteration order stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
    edge_count: u64,
}

/// Number of unordered pairs of distinct nodes, `n(n-1)/2`.
pub fn vertex_pair_count(n: usize) -> u64 {
    let n = n as u64;
    if n < 2 {
        0
    } else if n % 2 == 0 {
        (n / 2) * (n - 1)
    } else {
        n * ((n - 1) / 2)
    }
}

impl Graph {
    /// Parses a whitespace-separated edge list.
    ///
    /// Lines starting with `#` or `%` and blank lines are skipped. Labels are
    /// mapped to indices in first-appearance order and repeated edges (in
    /// either orientation) collapse into one.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut builder = Builder::default();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected two node tokens, got {line:?}"),
                    })
                }
            };
            if a == b {
                return Err(Error::SelfLoop {
                    line: line_no,
                    label: a.to_string(),
                });
            }
            let u = builder.intern(a);
            let v = builder.intern(b);
            builder.push(u, v);
        }
        let g = builder.finish();
        if g.edge_count == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(g)
    }

    pub fn read_edge_list<R: Read>(mut reader: R) -> Result<Graph> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        Self::parse_edge_list(&text)
    }

    /// Builds a graph on nodes labelled `"0".."n-1"`. Duplicate edges are
    /// collapsed; self-loops and out-of-range endpoints are rejected. An edge
    /// set may be empty here, unlike in [`Graph::parse_edge_list`].
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_labeled_edges((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn from_labeled_edges<I>(labels: Vec<String>, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if labels.is_empty() {
            return Err(Error::InvalidParameter("graph needs at least one node".into()));
        }
        let mut builder = Builder::default();
        for label in &labels {
            let before = builder.labels.len();
            if builder.intern(label) != before {
                return Err(Error::InvalidParameter(format!("duplicate node label {label:?}")));
            }
        }
        let n = labels.len();
        for (u, v) in edges {
            for index in [u, v] {
                if index >= n {
                    return Err(Error::NodeOutOfRange { index, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop {
                    line: 0,
                    label: labels[u].clone(),
                });
            }
            builder.push(u, v);
        }
        Ok(builder.finish())
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn vertex_pair_count(&self) -> u64 {
        vertex_pair_count(self.node_count())
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, u: usize) -> &str {
        &self.labels[u]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Same node set and labels, with the given edges removed. Pairs that are
    /// not edges are ignored.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Graph {
        let mut adjacency = self.adjacency.clone();
        let mut edge_count = self.edge_count;
        for &(u, v) in removed {
            if let Ok(pos) = adjacency[u].binary_search(&v) {
                adjacency[u].remove(pos);
                let pos = adjacency[v].binary_search(&u).expect("symmetric adjacency");
                adjacency[v].remove(pos);
                edge_count -= 1;
            }
        }
        Graph {
            labels: self.labels.clone(),
            index: self.index.clone(),
            adjacency,
            edge_count,
        }
    }

    /// Serializes as one `label label` line per edge. Isolated nodes have no
    /// representation in the format and are lost.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", self.labels[u], self.labels[v]);
        }
        out
    }
}

#[derive(Default)]
struct Builder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
}

impl Builder {
    fn intern(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        self.adjacency.push(Vec::new());
        i
    }

    fn push(&mut self, u: usize, v: usize) {
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
    }

    fn finish(self) -> Graph {
        let mut adjacency = self.adjacency;
        let mut twice_m = 0usize;
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
            nbrs.dedup();
            twice_m += nbrs.len();
        }
        Graph {
            labels: self.labels,
            index: self.index,
            adjacency,
            edge_count: (twice_m / 2) as u64,
        }
    }
}
