use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

/// Labeled simple undirected graph. Loops are dropped on insertion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteGraph {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
}

impl FiniteGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let mut g = Self::new();
        for l in labels {
            g.add_vertex(l);
        }
        g
    }

    /// Adds a vertex, or returns the existing one with that label.
    pub fn add_vertex(&mut self, label: impl Into<String>) -> usize {
        let label = label.into();
        if let Some(&i) = self.index.get(&label) {
            return i;
        }
        let i = self.labels.len();
        self.index.insert(label.clone(), i);
        self.labels.push(label);
        self.adj.push(BTreeSet::new());
        i
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn add_edge_by_label(&mut self, a: &str, b: &str) {
        let u = self.add_vertex(a);
        let v = self.add_vertex(b);
        self.add_edge(u, v);
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in increasing order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, ns) in self.adj.iter().enumerate() {
            out.extend(ns.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Whether `perm` (a bijection on vertex indices) preserves adjacency.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.vertex_count();
        if perm.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut hit[p], true) {
                return false;
            }
        }
        self.edges().iter().all(|&(u, v)| self.has_edge(perm[u], perm[v]))
    }

    /// The subgraph induced on `keep`, with vertices in the order given.
    pub fn induced(&self, keep: &[usize]) -> FiniteGraph {
        let mut g = FiniteGraph::with_vertices(keep.iter().map(|&v| self.labels[v].clone()));
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn to_dot(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
        let mut out = String::from("graph G {\n");
        for l in &self.labels {
            let _ = writeln!(out, "  {};", quote(l));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {} -- {};", quote(&self.labels[u]), quote(&self.labels[v]));
        }
        out.push_str("}\n");
        out
    }
}

impl Serialize for FiniteGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let edges: Vec<[&str; 2]> = self
            .edges()
            .into_iter()
            .map(|(u, v)| [self.labels[u].as_str(), self.labels[v].as_str()])
            .collect();
        let mut st = serializer.serialize_struct("FiniteGraph", 2)?;
        st.serialize_field("vertices", &self.labels)?;
        st.serialize_field("edges", &edges)?;
        st.end()
    }
}

/// The cycle `0 - 1 - ⋯ - (n-1) - 0`.
pub fn cycle_graph(n: usize) -> FiniteGraph {
    let mut g = FiniteGraph::with_vertices((0..n).map(|i| i.to_string()));
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
    }
    g
}

pub fn path_graph(n: usize) -> FiniteGraph {
    let mut g = FiniteGraph::with_vertices((0..n).map(|i| i.to_string()));
    for i in 1..n {
        g.add_edge(i - 1, i);
    }
    g
}
