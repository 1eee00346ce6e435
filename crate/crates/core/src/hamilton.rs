//! Budgeted backtracking search for Hamilton cycles.

use serde::Serialize;

use crate::graph::Graph;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HamiltonStatus {
    Found,
    NotFoundWithinBudget,
    ProvenNone,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HamiltonResult {
    pub status: HamiltonStatus,
    pub cycle: Option<Vec<usize>>,
    pub nodes_expanded: u64,
}

/// Checks a vertex sequence independently of the search: every vertex once,
/// consecutive pairs (cyclically) adjacent.
pub fn is_hamilton_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.order();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

struct Search<'a> {
    g: &'a Graph,
    on_path: Vec<bool>,
    path: Vec<usize>,
}

impl Search<'_> {
    fn free_degree(&self, v: usize) -> usize {
        self.g.neighbors(v).iter().filter(|&&w| !self.on_path[w]).count()
    }

    /// Every vertex off the path still has two usable neighbours, where the
    /// path's two ends count as usable; the start keeps a free neighbour.
    fn feasible(&self) -> bool {
        let start = self.path[0];
        let end = *self.path.last().expect("path is nonempty");
        if self.path.len() == self.g.order() {
            return true;
        }
        if self.free_degree(start) == 0 {
            return false;
        }
        (0..self.g.order()).filter(|&v| !self.on_path[v]).all(|v| {
            self.g
                .neighbors(v)
                .iter()
                .filter(|&&w| !self.on_path[w] || w == start || w == end)
                .count()
                >= 2
        })
    }

    /// Unvisited neighbours of `v`, fewest onward options first.
    fn candidates(&self, v: usize) -> Vec<usize> {
        let mut c: Vec<(usize, usize)> = self
            .g
            .neighbors(v)
            .iter()
            .filter(|&&w| !self.on_path[w])
            .map(|&w| (self.free_degree(w), w))
            .collect();
        c.sort_unstable();
        c.into_iter().map(|(_, w)| w).collect()
    }
}

/// Depth-first search from vertex 0. A node expansion is one extension of
/// the current path.
pub fn find_hamilton_cycle(g: &Graph, budget: u64) -> HamiltonResult {
    let n = g.order();
    let none = |nodes_expanded| HamiltonResult {
        status: HamiltonStatus::ProvenNone,
        cycle: None,
        nodes_expanded,
    };
    if n < 3 || (0..n).any(|v| g.degree(v) < 2) || !g.is_connected() {
        return none(0);
    }
    let mut s = Search {
        g,
        on_path: vec![false; n],
        path: vec![0],
    };
    s.on_path[0] = true;
    let mut stack: Vec<Vec<usize>> = vec![s.candidates(0)];
    let mut expanded = 0u64;
    while let Some(options) = stack.last_mut() {
        let Some(next) = (!options.is_empty()).then(|| options.remove(0)) else {
            stack.pop();
            if let Some(v) = s.path.pop() {
                s.on_path[v] = false;
            }
            continue;
        };
        if expanded >= budget {
            return HamiltonResult {
                status: HamiltonStatus::NotFoundWithinBudget,
                cycle: None,
                nodes_expanded: expanded,
            };
        }
        expanded += 1;
        s.path.push(next);
        s.on_path[next] = true;
        if s.path.len() == n {
            if g.has_edge(next, 0) {
                let cycle = s.path.clone();
                debug_assert!(is_hamilton_cycle(g, &cycle));
                return HamiltonResult {
                    status: HamiltonStatus::Found,
                    cycle: Some(cycle),
                    nodes_expanded: expanded,
                };
            }
        } else if s.feasible() {
            stack.push(s.candidates(next));
            continue;
        }
        s.path.pop();
        s.on_path[next] = false;
    }
    none(expanded)
}
