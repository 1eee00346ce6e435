//! Bipartite doubles and extended bipartite doubles.
//!
//! Vertex `i` of the source becomes the unprimed vertex `i` and the primed
//! vertex `i + n`; the spectral block identities rely on this layout.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, GraphJson};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DoubleError {
    #[error("source graph is bipartite, its double is disconnected")]
    Bipartite,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A doubled graph on `2n` vertices: `0..n` unprimed, `n..2n` primed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledGraph {
    pub graph: Graph,
    pub origin: String,
    pub primed_offset: usize,
}

#[derive(Serialize)]
struct DoubledJson<'a> {
    origin: &'a str,
    primed_offset: usize,
    #[serde(flatten)]
    graph: GraphJson,
}

impl Serialize for DoubledGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DoubledJson {
            origin: &self.origin,
            primed_offset: self.primed_offset,
            graph: self.graph.to_json(),
        }
        .serialize(s)
    }
}

impl DoubledGraph {
    pub fn with_origin(mut self, origin: impl Into<String>) -> Self {
        self.origin = origin.into();
        self
    }

    /// Index of the primed copy of source vertex `i`.
    pub fn primed(&self, i: usize) -> usize {
        i + self.primed_offset
    }

    /// True when `i <-> i'` maps the edge set onto itself. The swap moves
    /// every vertex; it fixes an edge only when that edge is some `{i, i'}`.
    pub fn swap_is_automorphism(&self) -> bool {
        let n = self.primed_offset;
        let swap = |v: usize| if v < n { v + n } else { v - n };
        self.graph
            .edges()
            .all(|(u, v)| self.graph.has_edge(swap(u), swap(v)))
    }
}

/// Edge set `{ i j' : ij in E(G) }`.
pub fn bipartite_double(g: &Graph) -> DoubledGraph {
    let n = g.order();
    let edges = g
        .edges()
        .flat_map(|(i, j)| [(i, j + n), (j, i + n)]);
    DoubledGraph {
        graph: Graph::from_edges(2 * n, edges).expect("doubled edges are valid"),
        origin: format!("graph of order {n}"),
        primed_offset: n,
    }
}

/// The bipartite double plus the matching `{ i i' }`.
pub fn extended_bipartite_double(g: &Graph) -> DoubledGraph {
    let n = g.order();
    let edges = g
        .edges()
        .flat_map(|(i, j)| [(i, j + n), (j, i + n)])
        .chain((0..n).map(|i| (i, i + n)));
    DoubledGraph {
        graph: Graph::from_edges(2 * n, edges).expect("doubled edges are valid"),
        origin: format!("graph of order {n}"),
        primed_offset: n,
    }
}

/// A pair whose double distance disagrees with the parity distance in `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceViolation {
    pub source: usize,
    pub target: usize,
    pub primed_target: bool,
    pub double_distance: Option<usize>,
    pub parity_distance: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceRelations {
    pub holds: bool,
    pub pairs_checked: usize,
    pub counterexample: Option<DistanceViolation>,
}

/// Compares BFS distances in the double against even/odd walk lengths in
/// `g`: `d(i, j) = d+(i, j)`, `d(i, j') = d-(i, j)`, and symmetrically from
/// primed sources. Unreachable pairs must match infinite parity distances.
pub fn verify_distance_relations(g: &Graph) -> DistanceRelations {
    let n = g.order();
    let double = bipartite_double(g);
    let table = double.graph.all_pairs_distances();
    let mut pairs_checked = 0;
    for i in 0..n {
        let parity = g.parity_distances(i);
        for (j, pd) in parity.iter().enumerate() {
            // (i, j) and (i', j') are even; (i, j') and (i', j) are odd.
            let cases = [
                (i, j, false, pd.even),
                (i + n, j + n, false, pd.even),
                (i, j + n, true, pd.odd),
                (i + n, j, true, pd.odd),
            ];
            for (a, b, primed_target, expected) in cases {
                pairs_checked += 1;
                let got = table.get(a, b);
                if got != expected {
                    return DistanceRelations {
                        holds: false,
                        pairs_checked,
                        counterexample: Some(DistanceViolation {
                            source: i,
                            target: j,
                            primed_target,
                            double_distance: got,
                            parity_distance: expected,
                        }),
                    };
                }
            }
        }
    }
    DistanceRelations {
        holds: true,
        pairs_checked,
        counterexample: None,
    }
}

/// Diameters of a connected non-bipartite graph and of its double, with an
/// independent evaluation of the ball criterion for `D~ = 2D + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiameterReport {
    pub source_diameter: usize,
    pub double_diameter: usize,
    /// `D~ <= 2D + 1`.
    pub bound_holds: bool,
    /// `D~ == 2D + 1`.
    pub equality_holds: bool,
    /// Least vertex whose ball of radius `D - 1` induces a bipartite graph.
    pub certificate_vertex: Option<usize>,
    /// Equality holds exactly when a certificate vertex exists.
    pub criterion_agrees: bool,
}

impl DiameterReport {
    pub fn passed(&self) -> bool {
        self.bound_holds && self.criterion_agrees
    }
}

pub fn diameter_report(g: &Graph) -> Result<DiameterReport, DoubleError> {
    let source_diameter = g.diameter()?;
    if g.is_bipartite() {
        return Err(DoubleError::Bipartite);
    }
    let double_diameter = bipartite_double(g).graph.diameter()?;
    let bound = 2 * source_diameter + 1;
    let certificate_vertex = (0..g.order()).find(|&i| {
        // Radius D - 1; for D = 0 the ball is empty and nothing qualifies.
        source_diameter > 0 && g.induced_ball(i, source_diameter - 1).is_bipartite()
    });
    let equality_holds = double_diameter == bound;
    Ok(DiameterReport {
        source_diameter,
        double_diameter,
        bound_holds: double_diameter <= bound,
        equality_holds,
        certificate_vertex,
        criterion_agrees: equality_holds == certificate_vertex.is_some(),
    })
}
