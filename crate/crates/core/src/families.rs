//! Constructors for hypercubes, odd graphs, middle cube graphs and a few
//! small fixtures, all with canonical vertex order.
//!
//! Subsets of `{1, .., w}` are bitmasks with element `j` at bit `j - 1`.
//! Within a class, vertices are ordered by ascending mask value; every
//! matrix and report downstream depends on this order.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::doubles::bipartite_double;
use crate::graph::{Graph, GraphError, Labels};

pub const MAX_HYPERCUBE: u32 = 20;
pub const MAX_ODD: u32 = 10;
pub const MAX_MIDDLE_CUBE: u32 = 10;
pub const MAX_SIMPLE: u32 = 100_000;
pub const MAX_COMPLETE: u32 = 2_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("cannot parse family spec {0:?} (expected e.g. \"middle-cube:3\")")]
    InvalidSpec(String),
    #[error("{family} parameter {parameter} outside {min}..={max}")]
    ParameterOutOfRange {
        family: Family,
        parameter: u32,
        min: u32,
        max: u32,
    },
    #[error(transparent)]
    Graph(GraphError),
    #[error("isomorphism check failed: {0}")]
    Isomorphism(#[from] IsomorphismError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Hypercube,
    Odd,
    MiddleCube,
    Cycle,
    Complete,
    Path,
    Petersen,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Hypercube => "hypercube",
            Family::Odd => "odd",
            Family::MiddleCube => "middle-cube",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Path => "path",
            Family::Petersen => "petersen",
        }
    }

    fn bounds(self) -> (u32, u32) {
        match self {
            Family::Hypercube => (1, MAX_HYPERCUBE),
            Family::Odd => (2, MAX_ODD),
            Family::MiddleCube => (1, MAX_MIDDLE_CUBE),
            Family::Cycle => (3, MAX_SIMPLE),
            Family::Complete => (1, MAX_COMPLETE),
            Family::Path => (1, MAX_SIMPLE),
            Family::Petersen => (0, 0),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A named family member such as `middle-cube:3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub parameter: u32,
}

impl FamilySpec {
    pub fn new(family: Family, parameter: u32) -> Result<Self, FamilyError> {
        let (min, max) = family.bounds();
        if !(min..=max).contains(&parameter) {
            return Err(FamilyError::ParameterOutOfRange {
                family,
                parameter,
                min,
                max,
            });
        }
        Ok(Self { family, parameter })
    }

    pub fn petersen() -> Self {
        Self {
            family: Family::Petersen,
            parameter: 0,
        }
    }

    pub fn build(&self) -> Result<Graph, FamilyError> {
        standard_graph(*self)
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::InvalidSpec(s.to_string());
        let (name, param) = match s.trim().split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s.trim(), None),
        };
        let family = match name {
            "hypercube" | "cube" => Family::Hypercube,
            "odd" => Family::Odd,
            "middle-cube" | "middle_cube" | "mq" => Family::MiddleCube,
            "cycle" => Family::Cycle,
            "complete" => Family::Complete,
            "path" => Family::Path,
            "petersen" => Family::Petersen,
            _ => return Err(bad()),
        };
        let parameter = match (family, param) {
            (Family::Petersen, None) => 0,
            (_, None) => return Err(bad()),
            (_, Some(p)) => p.trim().parse().map_err(|_| bad())?,
        };
        FamilySpec::new(family, parameter)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Petersen => f.write_str("petersen"),
            fam => write!(f, "{}:{}", fam, self.parameter),
        }
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All `width`-bit masks with exactly `weight` ones, ascending.
pub fn masks_of_weight(width: u32, weight: u32) -> Vec<u64> {
    assert!(width < 64);
    if weight > width {
        return Vec::new();
    }
    if weight == 0 {
        return vec![0];
    }
    let limit = 1u64 << width;
    let mut out = Vec::new();
    let mut m = (1u64 << weight) - 1;
    while m < limit {
        out.push(m);
        // Gosper's hack: next larger mask with the same popcount.
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

fn check(family: Family, parameter: u32) -> Result<(), FamilyError> {
    FamilySpec::new(family, parameter).map(|_| ())
}

/// The `n`-cube; vertex `v` carries the `n`-bit label `v`.
pub fn hypercube(n: u32) -> Result<Graph, FamilyError> {
    check(Family::Hypercube, n)?;
    let order = 1usize << n;
    let edges = (0..order).flat_map(|v| {
        (0..n)
            .map(move |j| v ^ (1 << j))
            .filter(move |&w| w > v)
            .map(move |w| (v, w))
    });
    let g = Graph::from_edges(order, edges).expect("hypercube edges are valid");
    Ok(g
        .with_labels(Labels::new(n, (0..order as u64).collect()).expect("distinct labels"))
        .expect("label count matches"))
}

/// The odd graph on the `(k-1)`-subsets of `{1, .., 2k-1}`, disjoint
/// subsets adjacent.
pub fn odd_graph(k: u32) -> Result<Graph, FamilyError> {
    check(Family::Odd, k)?;
    let width = 2 * k - 1;
    let full = (1u64 << width) - 1;
    let masks = masks_of_weight(width, k - 1);
    let labels = Labels::new(width, masks.clone()).expect("distinct labels");
    let index = labels.index();
    let mut edges = Vec::new();
    for (i, &u) in masks.iter().enumerate() {
        let comp = full & !u;
        for j in 0..width {
            if comp >> j & 1 == 1 {
                let v = index[&(comp ^ (1 << j))];
                if v > i {
                    edges.push((i, v));
                }
            }
        }
    }
    let g = Graph::from_edges(masks.len(), edges).expect("odd graph edges are valid");
    Ok(g.with_labels(labels).expect("label count matches"))
}

/// The subgraph of the `(2k-1)`-cube induced by its two middle layers.
/// Weight `k-1` masks come first, then weight `k` masks.
pub fn middle_cube(k: u32) -> Result<Graph, FamilyError> {
    check(Family::MiddleCube, k)?;
    let width = 2 * k - 1;
    let mut masks = masks_of_weight(width, k - 1);
    let lower = masks.len();
    masks.extend(masks_of_weight(width, k));
    let labels = Labels::new(width, masks.clone()).expect("distinct labels");
    let index = labels.index();
    let mut edges = Vec::new();
    for (i, &u) in masks[..lower].iter().enumerate() {
        for j in 0..width {
            if u >> j & 1 == 0 {
                edges.push((i, index[&(u | 1 << j)]));
            }
        }
    }
    let g = Graph::from_edges(masks.len(), edges).expect("middle cube edges are valid");
    Ok(g.with_labels(labels).expect("label count matches"))
}

pub fn cycle(n: u32) -> Result<Graph, FamilyError> {
    check(Family::Cycle, n)?;
    let n = n as usize;
    Ok(Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)).map(|(a, b)| (a.min(b), a.max(b))))
        .expect("cycle edges are valid"))
}

pub fn path(n: u32) -> Result<Graph, FamilyError> {
    check(Family::Path, n)?;
    let n = n as usize;
    Ok(Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid"))
}

pub fn complete(n: u32) -> Result<Graph, FamilyError> {
    check(Family::Complete, n)?;
    Ok(Graph::from_adjacency(n as usize, |_, _| true))
}

pub fn petersen() -> Graph {
    odd_graph(3).expect("k = 3 is in range")
}

pub fn standard_graph(spec: FamilySpec) -> Result<Graph, FamilyError> {
    let p = spec.parameter;
    match spec.family {
        Family::Hypercube => hypercube(p),
        Family::Odd => odd_graph(p),
        Family::MiddleCube => middle_cube(p),
        Family::Cycle => cycle(p),
        Family::Complete => complete(p),
        Family::Path => path(p),
        Family::Petersen => Ok(petersen()),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsomorphismError {
    #[error("map has {got} entries, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("map is not injective: two vertices land on {0}")]
    NotInjective(usize),
    #[error("edge {0}-{1} maps to the non-edge {2}-{3}")]
    EdgeNotPreserved(usize, usize, usize, usize),
    #[error("edge counts differ: {source_size} vs {target_size}")]
    SizeMismatch { source_size: usize, target_size: usize },
}

/// Checks that `map` is a bijection carrying edges of `source` onto edges
/// of `target` and non-edges onto non-edges.
pub fn verify_isomorphism(source: &Graph, target: &Graph, map: &[usize]) -> Result<(), IsomorphismError> {
    let n = source.order();
    if map.len() != n || target.order() != n {
        return Err(IsomorphismError::Length {
            expected: n.max(target.order()),
            got: map.len(),
        });
    }
    let mut hit = vec![false; n];
    for &t in map {
        if t >= n || hit[t] {
            return Err(IsomorphismError::NotInjective(t));
        }
        hit[t] = true;
    }
    for (u, v) in source.edges() {
        if !target.has_edge(map[u], map[v]) {
            return Err(IsomorphismError::EdgeNotPreserved(u, v, map[u], map[v]));
        }
    }
    // Injective on edges plus equal edge counts gives the reverse direction.
    if source.size() != target.size() {
        return Err(IsomorphismError::SizeMismatch {
            source_size: source.size(),
            target_size: target.size(),
        });
    }
    Ok(())
}

/// The bijection from the bipartite double of `O_k` onto `MQ_k`: an
/// unprimed subset goes to itself, a primed subset to its complement.
///
/// Entry `i` of the result is the `MQ_k` index of double vertex `i`.
pub fn mqk_isomorphism(k: u32) -> Result<Vec<usize>, FamilyError> {
    check(Family::Odd, k)?;
    check(Family::MiddleCube, k)?;
    let odd = odd_graph(k)?;
    let mq = middle_cube(k)?;
    let full = (1u64 << (2 * k - 1)) - 1;
    let index = mq.labels().expect("middle cube is labelled").index();
    let odd_masks = odd.labels().expect("odd graph is labelled").masks();
    let unprimed = odd_masks.iter().map(|m| index[m]);
    let primed = odd_masks.iter().map(|m| index[&(full & !m)]);
    Ok(unprimed.chain(primed).collect())
}

/// Builds both sides of the `MQ_k` isomorphism and verifies the map.
pub fn verify_mqk_isomorphism(k: u32) -> Result<Vec<usize>, FamilyError> {
    let map = mqk_isomorphism(k)?;
    let double = bipartite_double(&odd_graph(k)?);
    verify_isomorphism(&double.graph, &middle_cube(k)?, &map)?;
    Ok(map)
}

/// Folds `MQ_k` along its antipodal classes `{x, complement(x)}` and checks
/// the result against `O_k`, reading each class as its `(k-1)`-subset.
pub fn verify_mqk_fold(k: u32) -> Result<Vec<usize>, FamilyError> {
    check(Family::Odd, k)?;
    let mq = middle_cube(k)?;
    let odd = odd_graph(k)?;
    let cert = mq.antipodal_certificate().map_err(FamilyError::Graph)?;
    if cert.uniform_size != Some(2) {
        return Err(FamilyError::Graph(GraphError::NotAntipodal));
    }
    let folded = mq.fold(&cert).map_err(FamilyError::Graph)?;
    let full = (1u64 << (2 * k - 1)) - 1;
    let index = odd.labels().expect("odd graph is labelled").index();
    let masks = folded.labels().expect("fold keeps labels").masks();
    let map: Vec<usize> = masks
        .iter()
        .map(|&m| if m.count_ones() == k { index[&(full & !m)] } else { index[&m] })
        .collect();
    verify_isomorphism(&folded, &odd, &map)?;
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::binomial;

    fn binom(n: u32, k: u32) -> usize {
        usize::try_from(binomial(n.into(), k.into())).unwrap()
    }

    #[test]
    fn spec_parsing() {
        let s: FamilySpec = "middle-cube:3".parse().unwrap();
        assert_eq!(s, FamilySpec::new(Family::MiddleCube, 3).unwrap());
        assert_eq!(s.to_string(), "middle-cube:3");
        assert_eq!("petersen".parse::<FamilySpec>().unwrap(), FamilySpec::petersen());
        assert_eq!("odd:4".parse::<FamilySpec>().unwrap().parameter, 4);
        assert!(matches!(
            "hypercube:0".parse::<FamilySpec>(),
            Err(FamilyError::ParameterOutOfRange { .. })
        ));
        assert!(matches!("odd:1".parse::<FamilySpec>(), Err(FamilyError::ParameterOutOfRange { .. })));
        assert!(matches!("cycle:2".parse::<FamilySpec>(), Err(FamilyError::ParameterOutOfRange { .. })));
        assert!(matches!("tree:3".parse::<FamilySpec>(), Err(FamilyError::InvalidSpec(_))));
        assert!(matches!("odd".parse::<FamilySpec>(), Err(FamilyError::InvalidSpec(_))));
        assert!(matches!("odd:x".parse::<FamilySpec>(), Err(FamilyError::InvalidSpec(_))));
    }

    #[test]
    fn gosper_enumeration() {
        assert_eq!(masks_of_weight(4, 2), vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(masks_of_weight(3, 0), vec![0]);
        assert_eq!(masks_of_weight(3, 3), vec![0b111]);
        assert!(masks_of_weight(2, 3).is_empty());
    }

    #[test]
    fn hypercubes() {
        assert!(hypercube(1).unwrap().same_edges(&complete(2).unwrap()));
        let q2 = hypercube(2).unwrap();
        assert_eq!(q2.order(), 4);
        assert_eq!(q2.regular_degree(), Some(2));
        assert!(q2.is_connected());
        let q3 = hypercube(3).unwrap();
        assert_eq!((q3.order(), q3.regular_degree(), q3.diameter()), (8, Some(3), Ok(3)));
        let side = q3.bipartition().unwrap();
        for v in 0..8u64 {
            assert_eq!(side[v as usize], v.count_ones() % 2 == 1);
        }
    }

    #[test]
    fn odd_graphs() {
        assert!(odd_graph(2).unwrap().same_edges(&complete(3).unwrap()));
        let p = odd_graph(3).unwrap();
        assert_eq!((p.order(), p.size(), p.regular_degree()), (10, 15, Some(3)));
        let o4 = odd_graph(4).unwrap();
        assert_eq!((o4.order(), o4.regular_degree(), o4.diameter()), (35, Some(4), Ok(3)));
        for k in 2..=5 {
            let g = odd_graph(k).unwrap();
            assert_eq!(g.order(), binom(2 * k - 1, k - 1));
            assert_eq!(g.regular_degree(), Some(k as usize));
        }
        for k in 2..=4 {
            assert_eq!(odd_graph(k).unwrap().diameter(), Ok(k as usize - 1));
        }
        // Masks are in ascending order and adjacency is disjointness.
        let masks = p.labels().unwrap().masks();
        assert!(masks.windows(2).all(|w| w[0] < w[1]));
        for u in 0..10 {
            for v in 0..10 {
                assert_eq!(p.has_edge(u, v), u != v && masks[u] & masks[v] == 0);
            }
        }
    }

    #[test]
    fn middle_cubes() {
        assert!(middle_cube(2).unwrap().same_edges(&Graph::from_edges(6, [(0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5)]).unwrap()));
        let c6 = cycle(6).unwrap();
        let mq2 = middle_cube(2).unwrap();
        assert_eq!((mq2.order(), mq2.regular_degree(), mq2.is_connected()), (6, Some(2), true));
        assert_eq!(mq2.size(), c6.size());
        let mq3 = middle_cube(3).unwrap();
        assert_eq!((mq3.order(), mq3.regular_degree()), (20, Some(3)));
        let mq4 = middle_cube(4).unwrap();
        assert_eq!((mq4.order(), mq4.regular_degree(), mq4.diameter()), (70, Some(4), Ok(7)));
        for k in 2..=4 {
            let g = middle_cube(k).unwrap();
            assert_eq!(g.diameter(), Ok(2 * k as usize - 1));
            let side = g.bipartition().unwrap();
            let half = binom(2 * k - 1, k);
            assert_eq!(side.iter().filter(|&&s| s).count(), half);
            assert_eq!(side.iter().filter(|&&s| !s).count(), half);
        }
        let mq1 = middle_cube(1).unwrap();
        assert!(mq1.same_edges(&complete(2).unwrap()));
    }

    #[test]
    fn middle_cube_is_induced_hypercube_layers() {
        for k in 2..=4 {
            let q = hypercube(2 * k - 1).unwrap();
            let mq = middle_cube(k).unwrap();
            let vertices: Vec<usize> = mq.labels().unwrap().masks().iter().map(|&m| m as usize).collect();
            let induced = q.induced_subgraph(&vertices);
            assert!(induced.same_edges(&mq));
            assert_eq!(induced.labels(), mq.labels());
        }
    }

    #[test]
    fn middle_cube_sides_follow_weight_parity() {
        let mq3 = middle_cube(3).unwrap();
        let side = mq3.bipartition().unwrap();
        let masks = mq3.labels().unwrap().masks();
        for v in 0..20 {
            assert_eq!(side[v], masks[v].count_ones() == 3);
        }
    }

    #[test]
    fn fixtures() {
        assert_eq!(standard_graph("cycle:5".parse().unwrap()).unwrap().size(), 5);
        let p4 = standard_graph("path:4".parse().unwrap()).unwrap();
        assert_eq!(p4.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(petersen(), odd_graph(3).unwrap());
    }

    #[test]
    fn mqk_isomorphisms() {
        for k in 2..=5 {
            let map = verify_mqk_isomorphism(k).unwrap();
            assert_eq!(map.len(), middle_cube(k).unwrap().order());
        }
        // A corrupted map is rejected with the first bad edge.
        let mut map = mqk_isomorphism(3).unwrap();
        map.swap(0, 10);
        let double = bipartite_double(&odd_graph(3).unwrap());
        assert!(matches!(
            verify_isomorphism(&double.graph, &middle_cube(3).unwrap(), &map),
            Err(IsomorphismError::EdgeNotPreserved(..))
        ));
    }

    #[test]
    fn mqk_folds_onto_odd_graph() {
        for k in 2..=4 {
            let map = verify_mqk_fold(k).unwrap();
            assert_eq!(map.len(), odd_graph(k).unwrap().order());
        }
    }
}
