//! Finite graphs with loops, their morphisms, and the named families.
//!
//! Every graph stores its vertices in ascending label order. Indices into
//! that order are what the search routines work with; labels only matter at
//! the boundary.

mod family;
mod fold_sequence;
mod iso;
mod map;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub use family::{family, Family};
pub use fold_sequence::FoldSequence;
pub use iso::is_isomorphic;
pub use map::{compose, identity, GraphMap};

/// A finite undirected graph; loops allowed, no multi-edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Vec<String>,
    neighbors: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl Graph {
    /// Builds a graph from a vertex set and a set of unordered pairs.
    ///
    /// Duplicate vertices and duplicate or reversed edges collapse. A pair
    /// `(v, v)` is a loop at `v`.
    pub fn new<V, S, E, A, B>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let labels: BTreeSet<String> = vertices.into_iter().map(Into::into).collect();
        let labels: Vec<String> = labels.into_iter().collect();
        let lookup = |name: &str| labels.binary_search_by(|l| l.as_str().cmp(name)).ok();
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            match (lookup(a), lookup(b)) {
                (Some(x), Some(y)) => pairs.push((x, y)),
                _ => return Err(Error::DanglingEdge(a.to_owned(), b.to_owned())),
            }
        }
        Ok(Self::from_sorted(labels, pairs))
    }

    pub fn empty() -> Self {
        Self::from_sorted(Vec::new(), [])
    }

    /// The single looped vertex `I₀`, labelled `0`.
    pub fn looped_vertex() -> Self {
        Self::from_sorted(vec!["0".to_owned()], [(0, 0)])
    }

    /// `labels` must already be sorted and free of duplicates.
    pub(crate) fn from_sorted(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let n = labels.len();
        let mut matrix = vec![false; n * n];
        for (a, b) in edges {
            matrix[a * n + b] = true;
            matrix[b * n + a] = true;
        }
        let neighbors = (0..n)
            .map(|a| (0..n).filter(|&b| matrix[a * n + b]).collect())
            .collect();
        Self {
            labels,
            neighbors,
            matrix,
        }
    }

    /// Builds a graph from unique but unsorted labels, with edges given as
    /// indices into `labels`. Returns the graph together with the position of
    /// each input label in the sorted vertex order.
    pub(crate) fn assemble(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> (Self, Vec<usize>) {
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        let mut position = vec![0; labels.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let mut labels: Vec<Option<String>> = labels.into_iter().map(Some).collect();
        let sorted = order.iter().map(|&old| labels[old].take().unwrap()).collect();
        let edges: Vec<_> = edges
            .into_iter()
            .map(|(a, b)| (position[a], position[b]))
            .collect();
        (Self::from_sorted(sorted, edges), position)
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .ok()
    }

    pub(crate) fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_owned()))
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.matrix[a * self.order() + b]
    }

    #[inline]
    pub fn is_looped(&self, v: usize) -> bool {
        self.adjacent(v, v)
    }

    /// Neighbour indices of `v` in ascending order; contains `v` itself when looped.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    /// `N(v)` by label.
    pub fn neighborhood(&self, v: &str) -> Result<BTreeSet<&str>> {
        let v = self.require(v)?;
        Ok(self.neighbors[v].iter().map(|&u| self.label(u)).collect())
    }

    /// `N(a) ⊆ N(b)`.
    pub fn neighborhood_within(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].iter().all(|&x| self.adjacent(b, x))
    }

    /// Edges as index pairs `(a, b)` with `a <= b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.order())
            .flat_map(|a| {
                self.neighbors[a]
                    .iter()
                    .filter(move |&&b| b >= a)
                    .map(move |&b| (a, b))
            })
            .collect()
    }

    pub fn labeled_edges(&self) -> Vec<(&str, &str)> {
        self.edges()
            .into_iter()
            .map(|(a, b)| (self.label(a), self.label(b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn loop_count(&self) -> usize {
        (0..self.order()).filter(|&v| self.is_looped(v)).count()
    }

    /// The subgraph induced on `keep`, which must be ascending.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let mut edges = Vec::new();
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i) {
                if self.adjacent(a, b) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_sorted(labels, edges)
    }

    pub fn without_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.order()).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Prefixes every label, e.g. to keep vertex sets apart.
    pub fn relabeled(&self, prefix: &str) -> Graph {
        let labels = self
            .labels
            .iter()
            .map(|l| format!("{prefix}{l}"))
            .collect();
        Graph::assemble(labels, self.edges()).0
    }

    /// Connected components as ascending index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.neighbors[v] {
                    if !seen[u] {
                        seen[u] = true;
                        members.push(u);
                        queue.push_back(u);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components
    }

    /// Non-empty with a single component.
    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.components().len() == 1
    }

    fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &u in &self.neighbors[v] {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Largest shortest-path distance. Loops never shorten a path, so this is
    /// the diameter of the underlying loopless graph. `None` when the graph is
    /// empty or disconnected.
    pub fn diameter(&self) -> Option<usize> {
        if !self.is_connected() {
            return None;
        }
        (0..self.order())
            .map(|s| self.distances_from(s).into_iter().map(Option::unwrap).max())
            .max()
            .flatten()
    }

    /// Length of a shortest odd cycle in the underlying loopless graph, or
    /// `None` when that graph is bipartite.
    pub fn odd_girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.order() {
            let dist = self.distances_from(s);
            for (a, b) in self.edges() {
                if a == b {
                    continue;
                }
                if let (Some(da), Some(db)) = (dist[a], dist[b]) {
                    if da == db {
                        let len = 2 * da + 1;
                        best = Some(best.map_or(len, |x| x.min(len)));
                    }
                }
            }
        }
        best
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("edges", &self.labeled_edges())
            .finish()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, " | ")?;
        for (i, (a, b)) in self.labeled_edges().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}{b}")?;
        }
        write!(f, "}}")
    }
}
