//! Immutable simple undirected graphs and their metric structure.

mod io;
mod metric;

pub use io::GraphJson;
pub use metric::{AntipodalCertificate, DistanceTable, ParityDistance};

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::algebra::RationalMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("label {0:#b} assigned to more than one vertex")]
    DuplicateLabel(u64),
    #[error("label {mask:#b} does not fit in {width} bits")]
    LabelWidth { mask: u64, width: u32 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("distance {requested} outside 0..={diameter}")]
    DistanceOutOfRange { requested: usize, diameter: usize },
    #[error("certificate is not antipodal")]
    NotAntipodal,
    #[error("edge list line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Per-vertex combinatorial labels: distinct bitmasks over a ground set of
/// `width` coordinates (coordinate `j` is bit `j - 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labels {
    width: u32,
    masks: Vec<u64>,
}

impl Labels {
    pub fn new(width: u32, masks: Vec<u64>) -> Result<Self, GraphError> {
        let mut seen = HashMap::with_capacity(masks.len());
        for &m in &masks {
            if width < 64 && m >> width != 0 {
                return Err(GraphError::LabelWidth { mask: m, width });
            }
            if seen.insert(m, ()).is_some() {
                return Err(GraphError::DuplicateLabel(m));
            }
        }
        Ok(Self { width, masks })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    /// Binary string of a mask, least significant coordinate first.
    pub fn binary(&self, mask: u64) -> String {
        (0..self.width)
            .map(|j| if mask >> j & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Mask to vertex index lookup.
    pub fn index(&self) -> HashMap<u64, usize> {
        self.masks.iter().enumerate().map(|(i, &m)| (m, i)).collect()
    }
}

/// Simple undirected graph on vertices `0..order`.
///
/// Neighbor lists are sorted and symmetric; there are no loops or parallel
/// edges. Instances never change after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Option<Labels>,
}

impl Graph {
    /// Graph on `order` vertices with no edges.
    pub fn empty(order: usize) -> Self {
        Self {
            adj: vec![Vec::new(); order],
            labels: None,
        }
    }

    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); order];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self { adj, labels: None })
    }

    /// Builds a graph from a symmetric adjacency predicate.
    pub fn from_adjacency(order: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adj = vec![Vec::new(); order];
        for u in 0..order {
            for v in u + 1..order {
                if adjacent(u, v) {
                    adj[u].push(v);
                    adj[v].push(u);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { adj, labels: None }
    }

    pub fn with_labels(mut self, labels: Labels) -> Result<Self, GraphError> {
        if labels.masks.len() != self.order() {
            return Err(GraphError::LabelCount {
                expected: self.order(),
                got: labels.masks.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Common degree when the graph is regular (and nonempty).
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    pub fn label(&self, v: usize) -> Option<u64> {
        self.labels.as_ref().map(|l| l.masks[v])
    }

    /// 0/1 adjacency matrix in canonical vertex order.
    pub fn adjacency_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.order(), self.order());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                m.set(u, v, BigRational::one());
            }
        }
        m
    }

    /// Adjacency matrix as big-integer rows.
    pub fn integer_adjacency(&self) -> Vec<Vec<BigInt>> {
        let n = self.order();
        self.adj
            .iter()
            .map(|list| {
                let mut row = vec![BigInt::from(0); n];
                for &v in list {
                    row[v] = BigInt::one();
                }
                row
            })
            .collect()
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut position = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (position[w] != usize::MAX).then_some(position[w]))
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        let labels = self.labels.as_ref().map(|l| Labels {
            width: l.width,
            masks: vertices.iter().map(|&v| l.masks[v]).collect(),
        });
        Graph { adj, labels }
    }

    /// Edge-set equality, ignoring labels.
    pub fn same_edges(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }
}
