//! Eigenvalue gap products, the alternating polynomial and the boundary
//! condition `sum pi_0 / pi_i = n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{binomial, factorial, format_rational, rational, Polynomial};
use crate::graph::{Graph, GraphError};
use crate::spectral::{integer_spectrum, SpectralError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundaryError {
    #[error("eigenvalue {0} appears twice")]
    Duplicate(String),
    #[error("eigenvalues must be listed in descending order")]
    NotDescending,
    #[error("need at least {0} distinct eigenvalues")]
    TooFew(usize),
    #[error("spectrum has a nonzero residual {0}; boundary test needs every eigenvalue")]
    ResidualNonzero(Polynomial),
    #[error("parameter out of range: k = {k}, i = {i}")]
    Parameter { k: u32, i: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Signed and absolute gap products `phi_i = prod_{j != i} (l_i - l_j)`
/// and `pi_i = |phi_i|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenvalueProducts {
    #[serde(with = "crate::algebra::serde_rational::vec")]
    pub eigenvalues: Vec<BigRational>,
    #[serde(with = "crate::algebra::serde_rational::vec")]
    pub phi: Vec<BigRational>,
    #[serde(with = "crate::algebra::serde_rational::vec")]
    pub pi: Vec<BigRational>,
}

fn check_descending(eigenvalues: &[BigRational]) -> Result<(), BoundaryError> {
    for w in eigenvalues.windows(2) {
        if w[0] == w[1] {
            return Err(BoundaryError::Duplicate(format_rational(&w[0])));
        }
        if w[0] < w[1] {
            return Err(BoundaryError::NotDescending);
        }
    }
    Ok(())
}

pub fn products(eigenvalues: &[BigRational]) -> Result<EigenvalueProducts, BoundaryError> {
    check_descending(eigenvalues)?;
    let phi: Vec<BigRational> = eigenvalues
        .iter()
        .enumerate()
        .map(|(i, li)| {
            eigenvalues
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(BigRational::one(), |acc, (_, lj)| acc * (li - lj))
        })
        .collect();
    debug_assert!(phi
        .iter()
        .enumerate()
        .all(|(i, p)| p.is_positive() == (i % 2 == 0)));
    let pi = phi.iter().map(Signed::abs).collect();
    Ok(EigenvalueProducts {
        eigenvalues: eigenvalues.to_vec(),
        phi,
        pi,
    })
}

/// `sum_{i=0}^{d} pi_0/pi_i` and the same sum from `i = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundarySum {
    #[serde(with = "crate::algebra::serde_rational")]
    pub full: BigRational,
    #[serde(with = "crate::algebra::serde_rational")]
    pub from_one: BigRational,
}

pub fn boundary_sum(eigenvalues: &[BigRational]) -> Result<BoundarySum, BoundaryError> {
    Ok(sum_of_ratios(&products(eigenvalues)?.pi))
}

fn sum_of_ratios<T: Clone + Into<BigRational>>(pi: &[T]) -> BoundarySum {
    let pi: Vec<BigRational> = pi.iter().cloned().map(Into::into).collect();
    let from_one: BigRational = pi.iter().skip(1).map(|p| &pi[0] / p).sum();
    let full = if pi.is_empty() {
        BigRational::zero()
    } else {
        BigRational::one() + &from_one
    };
    BoundarySum { full, from_one }
}

/// The degree `d - 1` interpolant with `P(l_i) = (-1)^(i+1)` for `1 <= i <= d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternatingPolynomial {
    pub polynomial: Polynomial,
    /// `P(l_0)`.
    #[serde(with = "crate::algebra::serde_rational")]
    pub value_at_largest: BigRational,
    /// `P(l_0)` equals `sum_{i=1}^{d} pi_0/pi_i`.
    pub matches_sum: bool,
}

pub fn alternating_polynomial(eigenvalues: &[BigRational]) -> Result<AlternatingPolynomial, BoundaryError> {
    if eigenvalues.len() < 2 {
        return Err(BoundaryError::TooFew(2));
    }
    let sum = boundary_sum(eigenvalues)?;
    let points: Vec<(BigRational, BigRational)> = eigenvalues
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, l)| (l.clone(), rational(if i % 2 == 1 { 1 } else { -1 })))
        .collect();
    let polynomial = Polynomial::interpolate(&points).expect("nodes are distinct");
    let value_at_largest = polynomial.eval(&eigenvalues[0]);
    Ok(AlternatingPolynomial {
        matches_sum: value_at_largest == sum.from_one,
        polynomial,
        value_at_largest,
    })
}

/// Boundary test of a graph with fully rational spectrum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryReport {
    #[serde(with = "crate::algebra::serde_rational")]
    pub sum: BigRational,
    #[serde(with = "crate::algebra::serde_rational")]
    pub sum_from_one: BigRational,
    pub order: usize,
    pub is_boundary: bool,
    #[serde(with = "crate::algebra::serde_rational::vec")]
    pub pi: Vec<BigRational>,
    #[serde(with = "crate::algebra::serde_rational::vec")]
    pub phi: Vec<BigRational>,
    /// `P(l_0)`, absent when there is a single eigenvalue.
    #[serde(
        serialize_with = "serialize_optional_rational",
        skip_serializing_if = "Option::is_none"
    )]
    pub alternating_at_largest: Option<BigRational>,
    /// `sum == n` exactly when `P(l_0) + 1 == n`.
    pub conventions_agree: bool,
}

fn serialize_optional_rational<S: serde::Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.collect_str(&format_rational(q)),
        None => s.serialize_none(),
    }
}

pub fn is_boundary(g: &Graph) -> Result<BoundaryReport, BoundaryError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let sp = integer_spectrum(g)?;
    if !sp.is_rational() {
        return Err(BoundaryError::ResidualNonzero(sp.residual().clone()));
    }
    let eigenvalues = sp.eigenvalues();
    let prods = products(&eigenvalues)?;
    let sum = sum_of_ratios(&prods.pi);
    let n = rational(g.order() as i64);
    let alternating = if eigenvalues.len() >= 2 {
        Some(alternating_polynomial(&eigenvalues)?)
    } else {
        None
    };
    let is_boundary = sum.full == n;
    let conventions_agree = match &alternating {
        Some(a) => a.matches_sum && (is_boundary == (&a.value_at_largest + BigRational::one() == n)),
        None => true,
    };
    Ok(BoundaryReport {
        sum: sum.full,
        sum_from_one: sum.from_one,
        order: g.order(),
        is_boundary,
        pi: prods.pi,
        phi: prods.phi,
        alternating_at_largest: alternating.map(|a| a.value_at_largest),
        conventions_agree,
    })
}

/// Distinct eigenvalues of `MQ_k`, descending: `k, ..., 1, -1, ..., -k`.
pub fn mqk_eigenvalues(k: u32) -> Vec<BigRational> {
    let k = i64::from(k);
    (1..=k).rev().chain((1..=k).map(|t| -t)).map(rational).collect()
}

/// `pi_i = i! (2k-i)! / (k-i)` for `i < k`, mirrored as
/// `pi_i = pi_{2k-1-i}` for `i >= k`.
pub fn mqk_pi_closed_form(k: u32, i: u32) -> Result<BigInt, BoundaryError> {
    if k < 2 || i > 2 * k - 1 {
        return Err(BoundaryError::Parameter { k, i });
    }
    let i = if i >= k { 2 * k - 1 - i } else { i };
    let (k, i) = (u64::from(k), u64::from(i));
    Ok(factorial(i) * factorial(2 * k - i) / BigInt::from(k - i))
}

/// `sum_{i=0}^{2k-1} pi_0/pi_i` from the closed form alone.
pub fn mqk_boundary_sum(k: u32) -> Result<BoundarySum, BoundaryError> {
    let pi = (0..2 * k)
        .map(|i| mqk_pi_closed_form(k, i).map(BigRational::from_integer))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(sum_of_ratios(&pi))
}

/// Both sides of the two binomial identities behind the `MQ_k` boundary
/// proof:
/// `sum_{i<k} C(2k,i) = 2^(2k-1) - C(2k-1,k)` and
/// `sum_{i=1}^{k-1} (i/k) C(2k,i) = 2^(2k-1) - 2 C(2k-1,k-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialIdentities {
    pub k: u32,
    #[serde(with = "crate::algebra::serde_rational::vec")]
    pub first: Vec<BigRational>,
    #[serde(with = "crate::algebra::serde_rational::vec")]
    pub second: Vec<BigRational>,
}

impl BinomialIdentities {
    pub fn hold(&self) -> bool {
        self.first[0] == self.first[1] && self.second[0] == self.second[1]
    }
}

pub fn binomial_identities(k: u32) -> BinomialIdentities {
    let kk = i64::from(k);
    let power = BigRational::from_integer(BigInt::one() << (2 * k - 1) as usize);
    let c = |n: i64, r: i64| BigRational::from_integer(binomial(n, r));
    let lhs1: BigRational = (0..kk).map(|i| c(2 * kk, i)).sum();
    let rhs1 = &power - c(2 * kk - 1, kk);
    let lhs2: BigRational = (1..kk)
        .map(|i| BigRational::new(BigInt::from(i), BigInt::from(kk)) * c(2 * kk, i))
        .sum();
    let rhs2 = &power - rational(2) * c(2 * kk - 1, kk - 1);
    BinomialIdentities {
        k,
        first: vec![lhs1, rhs1],
        second: vec![lhs2, rhs2],
    }
}
