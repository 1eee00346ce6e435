use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use super::{Graph, GraphError, Labels};

/// All-pairs hop distances; `None` marks an unreachable pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    order: usize,
    dist: Vec<Option<u32>>,
}

impl DistanceTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        self.dist[i * self.order + j].map(|d| d as usize)
    }

    pub fn row(&self, i: usize) -> &[Option<u32>] {
        &self.dist[i * self.order..(i + 1) * self.order]
    }

    pub fn is_connected(&self) -> bool {
        self.dist.iter().all(Option::is_some)
    }

    pub fn eccentricity(&self, i: usize) -> Result<usize, GraphError> {
        self.row(i)
            .iter()
            .try_fold(0usize, |acc, d| d.map(|d| acc.max(d as usize)))
            .ok_or(GraphError::Disconnected)
    }

    pub fn diameter(&self) -> Result<usize, GraphError> {
        (0..self.order).try_fold(0, |acc, i| Ok(acc.max(self.eccentricity(i)?)))
    }
}

/// Shortest even and odd walk lengths between two vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParityDistance {
    pub even: Option<usize>,
    pub odd: Option<usize>,
}

impl ParityDistance {
    /// The ordinary distance, recovered as the shorter of the two walks.
    pub fn shortest(&self) -> Option<usize> {
        match (self.even, self.odd) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

/// Whether the distance-`D` graph is a disjoint union of cliques.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AntipodalCertificate {
    pub is_antipodal: bool,
    /// Components of the distance-`D` graph, each sorted, ordered by least
    /// member.
    pub clique_partition: Vec<Vec<usize>>,
    /// Common class size `r` when every class has the same size.
    pub uniform_size: Option<usize>,
}

impl Graph {
    /// Breadth-first distances from `source`.
    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let next = dist[u].map(|d| d + 1);
            for &v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = next;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn all_pairs_distances(&self) -> DistanceTable {
        let rows: Vec<Vec<Option<u32>>> =
            (0..self.order()).into_par_iter().map(|s| self.bfs(s)).collect();
        DistanceTable {
            order: self.order(),
            dist: rows.into_iter().flatten().collect(),
        }
    }

    /// Shortest even and odd walks from `source`, by BFS over
    /// (vertex, parity) states.
    pub fn parity_distances(&self, source: usize) -> Vec<ParityDistance> {
        let n = self.order();
        let mut dist: Vec<[Option<usize>; 2]> = vec![[None, None]; n];
        dist[source][0] = Some(0);
        let mut queue = VecDeque::from([(source, 0usize)]);
        while let Some((u, parity)) = queue.pop_front() {
            let d = dist[u][parity].expect("queued states are reached") + 1;
            let flipped = parity ^ 1;
            for &v in self.neighbors(u) {
                if dist[v][flipped].is_none() {
                    dist[v][flipped] = Some(d);
                    queue.push_back((v, flipped));
                }
            }
        }
        dist.into_iter()
            .map(|[even, odd]| ParityDistance { even, odd })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    /// Connected components, each sorted, ordered by least member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for s in 0..self.order() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                for &v in self.neighbors(comp[i]) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn diameter(&self) -> Result<usize, GraphError> {
        self.all_pairs_distances().diameter()
    }

    pub fn eccentricity(&self, v: usize) -> Result<usize, GraphError> {
        self.bfs(v)
            .iter()
            .try_fold(0usize, |acc, d| d.map(|d| acc.max(d as usize)))
            .ok_or(GraphError::Disconnected)
    }

    /// Graph on the same vertices joining pairs at distance exactly `l`.
    pub fn distance_graph(&self, l: usize) -> Result<Graph, GraphError> {
        let table = self.all_pairs_distances();
        let diameter = table.diameter()?;
        if l > diameter {
            return Err(GraphError::DistanceOutOfRange {
                requested: l,
                diameter,
            });
        }
        Ok(self.distance_graph_from(&table, l))
    }

    pub(crate) fn distance_graph_from(&self, table: &DistanceTable, l: usize) -> Graph {
        let mut g = Graph::from_adjacency(self.order(), |u, v| table.get(u, v) == Some(l));
        g.labels = self.labels.clone();
        g
    }

    /// Decides whether the distance-`D` graph is a disjoint union of cliques.
    ///
    /// A component with `s` vertices is a clique iff it spans `s(s-1)/2`
    /// edges.
    pub fn antipodal_certificate(&self) -> Result<AntipodalCertificate, GraphError> {
        let table = self.all_pairs_distances();
        let diameter = table.diameter()?;
        let far = self.distance_graph_from(&table, diameter);
        let clique_partition = far.components();
        let is_antipodal = clique_partition.iter().all(|comp| {
            let s = comp.len();
            let edges: usize = comp.iter().map(|&v| far.degree(v)).sum::<usize>() / 2;
            edges == s * (s - 1) / 2
        });
        let first = clique_partition.first().map(Vec::len);
        let uniform_size = first.filter(|&s| clique_partition.iter().all(|c| c.len() == s));
        Ok(AntipodalCertificate {
            is_antipodal,
            clique_partition,
            uniform_size,
        })
    }

    /// Folded graph: one vertex per antipodal class, two classes adjacent
    /// iff some edge joins them. Each class keeps its least member's label.
    pub fn fold(&self, cert: &AntipodalCertificate) -> Result<Graph, GraphError> {
        if !cert.is_antipodal {
            return Err(GraphError::NotAntipodal);
        }
        let mut class = vec![usize::MAX; self.order()];
        for (c, members) in cert.clique_partition.iter().enumerate() {
            for &v in members {
                if v >= self.order() {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        order: self.order(),
                    });
                }
                class[v] = c;
            }
        }
        if class.contains(&usize::MAX) {
            return Err(GraphError::NotAntipodal);
        }
        let k = cert.clique_partition.len();
        let mut adj = vec![Vec::new(); k];
        for (u, v) in self.edges() {
            let (a, b) = (class[u], class[v]);
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let labels = self.labels.as_ref().map(|l| Labels {
            width: l.width,
            masks: cert.clique_partition.iter().map(|c| l.masks[c[0]]).collect(),
        });
        Ok(Graph { adj, labels })
    }

    /// A proper two-colouring (`false`/`true` sides) if one exists. The least
    /// vertex of each component is coloured `false`.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.order()];
        for s in 0..self.order() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].expect("coloured before queueing");
                for &v in self.neighbors(u) {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap_or(false)).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Subgraph induced by the vertices within `radius` of `center`.
    pub fn induced_ball(&self, center: usize, radius: usize) -> Graph {
        let vertices: Vec<usize> = self
            .bfs(center)
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_some_and(|d| d as usize <= radius))
            .map(|(v, _)| v)
            .collect();
        self.induced_subgraph(&vertices)
    }
}
