//! Distance-regularity: intersection arrays, distance polynomials and the
//! Hoffman polynomial.

use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{format_rational, rational, Polynomial, RationalMatrix};
use crate::boundary::{products, BoundaryError};
use crate::graph::{Graph, GraphError};

/// Largest order for which matrix identities are evaluated.
pub const MATRIX_IDENTITY_MAX_ORDER: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrgError {
    #[error("malformed intersection array: {0}")]
    Malformed(String),
    #[error("c_{0} is zero")]
    ZeroC(usize),
    #[error("order {order} exceeds the matrix identity cap of {cap}")]
    OrderAboveCap { order: usize, cap: usize },
    #[error("graph is not regular")]
    NotRegular,
    #[error("expected {expected} distance polynomials, got {got}")]
    PolynomialCount { expected: usize, got: usize },
    #[error("multiplicity {value} at index {index} is not a positive integer")]
    NonIntegerMultiplicity { index: usize, value: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Eigenvalues(#[from] BoundaryError),
}

/// `{b_0, ..., b_{D-1}; c_1, ..., c_D}` with `a_i = b_0 - b_i - c_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionArray {
    b: Vec<usize>,
    c: Vec<usize>,
}

impl IntersectionArray {
    pub fn new(b: Vec<usize>, c: Vec<usize>) -> Result<Self, DrgError> {
        if b.len() != c.len() {
            return Err(DrgError::Malformed(format!(
                "{} b entries but {} c entries",
                b.len(),
                c.len()
            )));
        }
        if let Some(i) = c.iter().position(|&x| x == 0) {
            return Err(DrgError::ZeroC(i + 1));
        }
        let arr = Self { b, c };
        let k = arr.degree();
        for i in 0..=arr.diameter() {
            if arr.b_at(i) + arr.c_at(i) > k {
                return Err(DrgError::Malformed(format!("b_{i} + c_{i} exceeds b_0 = {k}")));
            }
        }
        Ok(arr)
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    pub fn degree(&self) -> usize {
        self.b.first().copied().unwrap_or(0)
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn c(&self) -> &[usize] {
        &self.c
    }

    /// `b_i`, zero at `i = D`.
    pub fn b_at(&self, i: usize) -> usize {
        self.b.get(i).copied().unwrap_or(0)
    }

    /// `c_i`, zero at `i = 0`.
    pub fn c_at(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    pub fn a_at(&self, i: usize) -> usize {
        self.degree() - self.b_at(i) - self.c_at(i)
    }

    /// `a_0, ..., a_D`.
    pub fn a(&self) -> Vec<usize> {
        (0..=self.diameter()).map(|i| self.a_at(i)).collect()
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{}; {}}}", join(&self.b), join(&self.c))
    }
}

impl Serialize for IntersectionArray {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IntersectionArray", 4)?;
        st.serialize_field("b", &self.b)?;
        st.serialize_field("c", &self.c)?;
        st.serialize_field("a", &self.a())?;
        st.serialize_field("notation", &self.to_string())?;
        st.end()
    }
}

/// Counts `(c, a, b)` of neighbours of `v` one step closer to, level with,
/// and one step further from `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LevelCounts {
    pub c: usize,
    pub a: usize,
    pub b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DrgWitness {
    pub u: usize,
    pub v: usize,
    pub level: usize,
    pub expected: LevelCounts,
    pub found: LevelCounts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DrgCertificate {
    pub is_drg: bool,
    pub array: Option<IntersectionArray>,
    pub witness: Option<DrgWitness>,
}

pub fn check_distance_regular(g: &Graph) -> Result<DrgCertificate, DrgError> {
    let table = g.all_pairs_distances();
    let diameter = table.diameter()?;
    let mut levels: Vec<Option<(usize, usize, LevelCounts)>> = vec![None; diameter + 1];
    for u in 0..g.order() {
        let row = table.row(u);
        for v in 0..g.order() {
            let h = row[v].expect("connected") as usize;
            let mut found = LevelCounts { c: 0, a: 0, b: 0 };
            for &w in g.neighbors(v) {
                let d = row[w].expect("connected") as usize;
                match d.cmp(&h) {
                    std::cmp::Ordering::Less => found.c += 1,
                    std::cmp::Ordering::Equal => found.a += 1,
                    std::cmp::Ordering::Greater => found.b += 1,
                }
            }
            match levels[h] {
                None => levels[h] = Some((u, v, found)),
                Some((_, _, expected)) if expected != found => {
                    return Ok(DrgCertificate {
                        is_drg: false,
                        array: None,
                        witness: Some(DrgWitness {
                            u,
                            v,
                            level: h,
                            expected,
                            found,
                        }),
                    });
                }
                Some(_) => {}
            }
        }
    }
    let counts: Vec<LevelCounts> = levels.into_iter().map(|l| l.expect("every level occurs").2).collect();
    let b = counts[..diameter].iter().map(|l| l.b).collect();
    let c = counts[1..].iter().map(|l| l.c).collect();
    Ok(DrgCertificate {
        is_drg: true,
        array: Some(IntersectionArray::new(b, c)?),
        witness: None,
    })
}

fn check_k(k: u32) -> Result<(), DrgError> {
    if k < 2 {
        Err(DrgError::Malformed(format!("k = {k} is below 2")))
    } else {
        Ok(())
    }
}

/// `b_j = k - floor((j+1)/2)`, `c_j = floor((j+1)/2)`, `D = k - 1`.
pub fn odd_intersection_array(k: u32) -> Result<IntersectionArray, DrgError> {
    check_k(k)?;
    let k = k as usize;
    let d = k - 1;
    IntersectionArray::new(
        (0..d).map(|j| k - j.div_ceil(2)).collect(),
        (1..=d).map(|j| j.div_ceil(2)).collect(),
    )
}

/// Array of `MQ_k`: `b_j = k - floor((j+1)/2)`, `c_j = ceil(j/2)`,
/// `D = 2k - 1`.
pub fn mqk_intersection_array(k: u32) -> Result<IntersectionArray, DrgError> {
    check_k(k)?;
    let k = k as usize;
    let d = 2 * k - 1;
    IntersectionArray::new(
        (0..d).map(|j| k - j.div_ceil(2)).collect(),
        (1..=d).map(|j| j.div_ceil(2)).collect(),
    )
}

/// `p_0 = 1`, `p_1 = x`, `c_{i+1} p_{i+1} = (x - a_i) p_i - b_{i-1} p_{i-1}`.
pub fn distance_polynomials(arr: &IntersectionArray) -> Vec<Polynomial> {
    let mut polys = vec![Polynomial::one()];
    for i in 0..arr.diameter() {
        let shifted = &Polynomial::x() - &Polynomial::constant(rational(arr.a_at(i) as i64));
        let mut next = &shifted * &polys[i];
        if i > 0 {
            next = &next - &polys[i - 1].scale(&rational(arr.b_at(i - 1) as i64));
        }
        let c = BigRational::from_integer((arr.c_at(i + 1) as i64).into());
        polys.push(next.scale(&c.recip()));
    }
    polys
}

/// Sum of the distance polynomials.
pub fn hoffman_polynomial(polys: &[Polynomial]) -> Polynomial {
    polys.iter().fold(Polynomial::zero(), |acc, p| &acc + p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoffmanReport {
    pub hoffman: Polynomial,
    /// `H(k)` for the valency `k`.
    #[serde(with = "crate::algebra::serde_rational")]
    pub value_at_degree: BigRational,
    pub order: usize,
    pub scalar_identity: bool,
    /// `H(A) = J`, absent above the matrix cap.
    pub matrix_identity: Option<bool>,
}

impl HoffmanReport {
    pub fn passed(&self) -> bool {
        self.scalar_identity && self.matrix_identity != Some(false)
    }
}

fn regular_degree(g: &Graph) -> Result<usize, DrgError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    g.regular_degree().ok_or(DrgError::NotRegular)
}

/// Scalar check `H(k) = n` always; the matrix check `H(A) = J` only up to
/// the size cap.
pub fn hoffman_report(g: &Graph, polys: &[Polynomial]) -> Result<HoffmanReport, DrgError> {
    let k = regular_degree(g)?;
    let hoffman = hoffman_polynomial(polys);
    let value_at_degree = hoffman.eval(&rational(k as i64));
    let matrix_identity = (g.order() <= MATRIX_IDENTITY_MAX_ORDER)
        .then(|| g.adjacency_matrix().poly_eval(&hoffman).is_constant(&rational(1)));
    Ok(HoffmanReport {
        scalar_identity: value_at_degree == rational(g.order() as i64),
        value_at_degree,
        order: g.order(),
        hoffman,
        matrix_identity,
    })
}

/// `H(A) = J` and `H(k) = n`, exactly.
pub fn hoffman_check(g: &Graph, polys: &[Polynomial]) -> Result<bool, DrgError> {
    if g.order() > MATRIX_IDENTITY_MAX_ORDER {
        return Err(DrgError::OrderAboveCap {
            order: g.order(),
            cap: MATRIX_IDENTITY_MAX_ORDER,
        });
    }
    Ok(hoffman_report(g, polys)?.passed())
}

/// Levels `i` where `p_i(A)` differs from the distance-`i` matrix.
pub fn distance_matrix_mismatches(g: &Graph, polys: &[Polynomial]) -> Result<Vec<usize>, DrgError> {
    if g.order() > MATRIX_IDENTITY_MAX_ORDER {
        return Err(DrgError::OrderAboveCap {
            order: g.order(),
            cap: MATRIX_IDENTITY_MAX_ORDER,
        });
    }
    let diameter = g.diameter()?;
    if polys.len() != diameter + 1 {
        return Err(DrgError::PolynomialCount {
            expected: diameter + 1,
            got: polys.len(),
        });
    }
    let a = g.adjacency_matrix();
    let mut bad = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        let target = if i == 0 {
            RationalMatrix::identity(g.order())
        } else {
            g.distance_graph(i)?.adjacency_matrix()
        };
        if a.poly_eval(p) != target {
            bad.push(i);
        }
    }
    Ok(bad)
}

/// `p_i(A)` is the distance-`i` matrix for every `i`.
pub fn distance_matrix_identity(g: &Graph, polys: &[Polynomial]) -> Result<bool, DrgError> {
    Ok(distance_matrix_mismatches(g, polys)?.is_empty())
}

/// `m_i = phi_0 p_D(l_0) / (phi_i p_D(l_i))` from precomputed products and
/// values of the highest distance polynomial.
pub fn multiplicities_from_products(phi: &[BigRational], p_values: &[BigRational]) -> Result<Vec<usize>, DrgError> {
    if phi.len() != p_values.len() || phi.is_empty() {
        return Err(DrgError::Malformed(format!(
            "{} products but {} polynomial values",
            phi.len(),
            p_values.len()
        )));
    }
    let top = &phi[0] * &p_values[0];
    phi.iter()
        .zip(p_values)
        .enumerate()
        .map(|(i, (f, p))| {
            let denom = f * p;
            let bad = |value: String| DrgError::NonIntegerMultiplicity { index: i, value };
            if denom.is_zero() {
                return Err(bad("undefined".into()));
            }
            let m = &top / denom;
            match (m.is_integer(), m.to_integer().to_usize()) {
                (true, Some(m)) if m > 0 => Ok(m),
                _ => Err(bad(format_rational(&m))),
            }
        })
        .collect()
}

/// Multiplicities of the distinct eigenvalues (descending) from the highest
/// distance polynomial.
pub fn multiplicities_from_highest(eigenvalues: &[BigRational], p_d: &Polynomial) -> Result<Vec<usize>, DrgError> {
    let phi = products(eigenvalues)?.phi;
    let values: Vec<BigRational> = eigenvalues.iter().map(|l| p_d.eval(l)).collect();
    multiplicities_from_products(&phi, &values)
}
