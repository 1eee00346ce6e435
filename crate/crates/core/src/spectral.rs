//! Exact adjacency spectra.
//!
//! Two independent routes produce spectra: the characteristic polynomial
//! (division-free, small graphs only) followed by integer root extraction,
//! and per-eigenvalue kernel dimensions of `A - lambda I` (any size). Closed
//! forms for the hypercube, odd and middle cube families and the doubling
//! rules for bipartite doubles sit on top.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{binomial, format_rational, rational, Polynomial};
use crate::doubles::{bipartite_double, extended_bipartite_double};
use crate::graph::Graph;

/// Largest order accepted by [`char_poly`].
pub const CHAR_POLY_MAX_ORDER: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error("order {order} exceeds the characteristic polynomial cap of {cap}; use integer_spectrum instead")]
    OrderAboveCap { order: usize, cap: usize },
    #[error("spectrum of a graph of order {order} is not fully integral and its residual polynomial is above the size cap")]
    ResidualUnavailable { order: usize },
    #[error("residual polynomial {0} is not symmetric under x -> -x")]
    AsymmetricResidual(Polynomial),
    #[error("parameter {parameter} out of range (minimum {min})")]
    Parameter { parameter: u32, min: u32 },
    #[error("vector is not an eigenvector for eigenvalue {0}")]
    NotAnEigenvector(String),
}

/// Multiset of exact eigenvalues plus the monic factor of the
/// characteristic polynomial whose roots were not extracted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pairs: Vec<(BigRational, usize)>,
    residual: Polynomial,
}

impl Spectrum {
    /// Merges repeated values, drops zero multiplicities and sorts
    /// descending. The residual is made monic.
    pub fn new(pairs: impl IntoIterator<Item = (BigRational, usize)>, residual: Polynomial) -> Self {
        let mut pairs: Vec<(BigRational, usize)> = pairs.into_iter().filter(|(_, m)| *m > 0).collect();
        pairs.sort_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(BigRational, usize)> = Vec::with_capacity(pairs.len());
        for (v, m) in pairs {
            match merged.last_mut() {
                Some((last, lm)) if *last == v => *lm += m,
                _ => merged.push((v, m)),
            }
        }
        let residual = if residual.is_zero() { Polynomial::one() } else { residual.monic() };
        Self { pairs: merged, residual }
    }

    /// Fully integral spectrum from `(value, multiplicity)` pairs.
    pub fn from_integers(pairs: &[(i64, usize)]) -> Self {
        Self::new(pairs.iter().map(|&(v, m)| (rational(v), m)), Polynomial::one())
    }

    pub fn pairs(&self) -> &[(BigRational, usize)] {
        &self.pairs
    }

    pub fn residual(&self) -> &Polynomial {
        &self.residual
    }

    /// Distinct extracted eigenvalues, descending.
    pub fn eigenvalues(&self) -> Vec<BigRational> {
        self.pairs.iter().map(|(v, _)| v.clone()).collect()
    }

    pub fn multiplicity(&self, value: &BigRational) -> usize {
        self.pairs.iter().find(|(v, _)| v == value).map_or(0, |(_, m)| *m)
    }

    /// Every root was extracted.
    pub fn is_rational(&self) -> bool {
        self.residual.degree() == Some(0)
    }

    /// Total multiplicity including the residual degree.
    pub fn order(&self) -> usize {
        self.pairs.iter().map(|(_, m)| m).sum::<usize>() + self.residual.degree().unwrap_or(0)
    }

    /// Sum of `lambda^k` over all eigenvalues with multiplicity, including
    /// the residual's roots (via Newton's identities, `k <= 2`).
    pub fn power_sum(&self, k: u32) -> BigRational {
        assert!(k <= 2, "only the first two power sums are supported");
        let explicit = self
            .pairs
            .iter()
            .fold(BigRational::zero(), |acc, (v, m)| {
                acc + num_traits::pow(v.clone(), k as usize) * rational(*m as i64)
            });
        let d = self.residual.degree().unwrap_or(0);
        let hidden = match (k, d) {
            (0, d) => rational(d as i64),
            (_, 0) => BigRational::zero(),
            (1, d) => -self.residual.coeff(d - 1),
            (_, 1) => {
                let e1 = -self.residual.coeff(0);
                &e1 * &e1
            }
            (_, d) => {
                let e1 = -self.residual.coeff(d - 1);
                let e2 = self.residual.coeff(d - 2);
                &e1 * &e1 - rational(2) * e2
            }
        };
        explicit + hidden
    }

    /// Checks order, trace and the second moment against `g`.
    pub fn is_consistent_with(&self, g: &Graph) -> bool {
        self.order() == g.order()
            && self.power_sum(1).is_zero()
            && self.power_sum(2) == rational(2 * g.size() as i64)
    }

    /// Every `(lambda, m)` here occurs in `other` with multiplicity `>= m`.
    pub fn is_contained_in(&self, other: &Spectrum) -> bool {
        self.pairs.iter().all(|(v, m)| other.multiplicity(v) >= *m)
    }

    /// Eigenvalues listed with repetition, descending. `None` unless the
    /// spectrum is fully rational.
    pub fn expanded(&self) -> Option<Vec<BigRational>> {
        self.is_rational().then(|| {
            self.pairs
                .iter()
                .flat_map(|(v, m)| std::iter::repeat(v.clone()).take(*m))
                .collect()
        })
    }

    /// Cauchy interlacing against the spectrum of a graph on at least as
    /// many vertices: `mu_i >= theta_i >= mu_{N-n+i}`.
    pub fn interlaces_within(&self, whole: &Spectrum) -> bool {
        let (Some(t), Some(w)) = (self.expanded(), whole.expanded()) else {
            return false;
        };
        let shift = match w.len().checked_sub(t.len()) {
            Some(s) => s,
            None => return false,
        };
        t.iter().enumerate().all(|(i, th)| w[i] >= *th && *th >= w[i + shift])
    }

    fn symmetric_residual(&self) -> Result<(), SpectralError> {
        let r = &self.residual;
        let reflected = r.reflect();
        if reflected == *r || reflected == -r {
            Ok(())
        } else {
            Err(SpectralError::AsymmetricResidual(r.clone()))
        }
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|(v, m)| format!("{}^{}", format_rational(v), m))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))?;
        if !self.is_rational() {
            write!(f, " * roots of {}", self.residual)?;
        }
        Ok(())
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            value: String,
            multiplicity: usize,
        }
        let entries: Vec<Entry> = self
            .pairs
            .iter()
            .map(|(v, m)| Entry {
                value: format_rational(v),
                multiplicity: *m,
            })
            .collect();
        let mut st = s.serialize_struct("Spectrum", 2)?;
        st.serialize_field("eigenvalues", &entries)?;
        st.serialize_field("residual", &self.residual)?;
        st.end()
    }
}

/// Berkowitz's division-free characteristic polynomial of an integer
/// matrix given as sparse rows. Returns coefficients highest degree first.
fn berkowitz(rows: &[Vec<(usize, BigInt)>]) -> Vec<BigInt> {
    let n = rows.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let entry = |i: usize, j: usize| -> BigInt {
        rows[i]
            .iter()
            .find(|(c, _)| *c == j)
            .map_or_else(BigInt::zero, |(_, v)| v.clone())
    };
    let mut prev = vec![BigInt::one(), -entry(0, 0)];
    for r in 1..n {
        // Column S = A[0..r][r] and the leading block M = A[0..r][0..r].
        let mut v: Vec<BigInt> = (0..r).map(|i| entry(i, r)).collect();
        let row_r: Vec<&(usize, BigInt)> = rows[r].iter().filter(|(c, _)| *c < r).collect();
        let mut col = Vec::with_capacity(r + 2);
        col.push(BigInt::one());
        col.push(-entry(r, r));
        for k in 0..r {
            let rv: BigInt = row_r.iter().map(|(c, a)| a * &v[*c]).sum();
            col.push(-rv);
            if k + 1 < r {
                v = (0..r)
                    .map(|i| {
                        rows[i]
                            .iter()
                            .filter(|(c, _)| *c < r)
                            .map(|(c, a)| a * &v[*c])
                            .sum()
                    })
                    .collect();
            }
        }
        let next: Vec<BigInt> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r))
                    .filter(|&j| !prev[j].is_zero() && !col[i - j].is_zero())
                    .map(|j| &col[i - j] * &prev[j])
                    .sum()
            })
            .collect();
        prev = next;
    }
    prev
}

/// Characteristic polynomial `det(xI - A)` of the adjacency matrix.
pub fn char_poly(g: &Graph) -> Result<Polynomial, SpectralError> {
    if g.order() > CHAR_POLY_MAX_ORDER {
        return Err(SpectralError::OrderAboveCap {
            order: g.order(),
            cap: CHAR_POLY_MAX_ORDER,
        });
    }
    let rows: Vec<Vec<(usize, BigInt)>> = (0..g.order())
        .map(|u| g.neighbors(u).iter().map(|&v| (v, BigInt::one())).collect())
        .collect();
    let mut coeffs = berkowitz(&rows);
    coeffs.reverse();
    Ok(Polynomial::from_coeffs(
        coeffs.into_iter().map(BigRational::from_integer).collect(),
    ))
}

/// Spectrum from the characteristic polynomial, splitting off integer roots
/// in `[-Delta, Delta]`.
pub fn char_poly_spectrum(g: &Graph) -> Result<Spectrum, SpectralError> {
    let phi = char_poly(g)?;
    let split = phi.factor_integer_roots(&BigInt::from(g.max_degree()));
    Ok(Spectrum::new(
        split
            .roots
            .into_iter()
            .map(|(r, m)| (BigRational::from_integer(r), m)),
        split.residual,
    ))
}

/// Integer eigenvalues in `[-Delta, Delta]` with multiplicities read off as
/// kernel dimensions of `A - lambda I`.
pub fn integer_spectrum(g: &Graph) -> Result<Spectrum, SpectralError> {
    integer_spectrum_with_bound(g, g.max_degree())
}

pub fn integer_spectrum_with_bound(g: &Graph, bound: usize) -> Result<Spectrum, SpectralError> {
    let a = g.adjacency_matrix();
    let bound = bound as i64;
    let pairs: Vec<(BigRational, usize)> = (-bound..=bound)
        .into_par_iter()
        .map(|l| {
            let m = a.shift_diagonal(&rational(-l)).nullity_dimension();
            (rational(l), m)
        })
        .collect();
    let found: usize = pairs.iter().map(|(_, m)| m).sum();
    let residual = if found == g.order() {
        Polynomial::one()
    } else if g.order() <= CHAR_POLY_MAX_ORDER {
        let extracted = Polynomial::from_roots(pairs.iter().map(|(v, m)| (v, *m)));
        let (q, r) = char_poly(g)?.div_rem(&extracted);
        debug_assert!(r.is_zero(), "kernel dimensions exceed algebraic multiplicities");
        q
    } else {
        return Err(SpectralError::ResidualUnavailable { order: g.order() });
    };
    Ok(Spectrum::new(pairs, residual))
}

fn check_param(parameter: u32, min: u32) -> Result<(), SpectralError> {
    if parameter < min {
        Err(SpectralError::Parameter { parameter, min })
    } else {
        Ok(())
    }
}

fn to_count(n: &BigInt) -> usize {
    n.to_usize().expect("multiplicity fits in usize")
}

/// Both closed forms of the odd-graph multiplicity of `(-1)^i (k - i)`:
/// `C(2k-1, i) - C(2k-1, i-1)` and `(k-i)/k * C(2k, i)`.
pub fn odd_multiplicity_forms(k: u32, i: u32) -> (BigInt, BigRational) {
    let (k, i) = (i64::from(k), i64::from(i));
    let difference = binomial(2 * k - 1, i) - binomial(2 * k - 1, i - 1);
    let product = BigRational::new(BigInt::from(k - i), BigInt::from(k))
        * BigRational::from_integer(binomial(2 * k, i));
    (difference, product)
}

/// Closed-form spectrum of the odd graph `O_k`.
pub fn odd_spectrum(k: u32) -> Result<Spectrum, SpectralError> {
    check_param(k, 2)?;
    let pairs = (0..k).map(|i| {
        let value = if i % 2 == 0 { 1 } else { -1 } * i64::from(k - i);
        let (m, alt) = odd_multiplicity_forms(k, i);
        debug_assert_eq!(BigRational::from_integer(m.clone()), alt);
        (rational(value), to_count(&m))
    });
    Ok(Spectrum::new(pairs, Polynomial::one()))
}

/// Closed-form spectrum of `MQ_k`: `+-(k - i)` with multiplicity
/// `(k-i)/k * C(2k, i)` each.
pub fn mqk_spectrum(k: u32) -> Result<Spectrum, SpectralError> {
    check_param(k, 2)?;
    let pairs = (0..k).flat_map(|i| {
        let (_, m) = odd_multiplicity_forms(k, i);
        let m = to_count(&m.to_integer());
        let theta = i64::from(k - i);
        [(rational(theta), m), (rational(-theta), m)]
    });
    Ok(Spectrum::new(pairs, Polynomial::one()))
}

/// `n - 2i` with multiplicity `C(n, i)`.
pub fn hypercube_spectrum(n: u32) -> Result<Spectrum, SpectralError> {
    check_param(n, 1)?;
    let n = i64::from(n);
    Ok(Spectrum::new(
        (0..=n).map(|i| (rational(n - 2 * i), to_count(&binomial(n, i)))),
        Polynomial::one(),
    ))
}

/// Spectrum of the bipartite double: each `(lambda, m)` yields
/// `(lambda, m)` and `(-lambda, m)`.
pub fn double_spectrum(sp: &Spectrum) -> Result<Spectrum, SpectralError> {
    sp.symmetric_residual()?;
    let pairs = sp
        .pairs
        .iter()
        .flat_map(|(v, m)| [(v.clone(), *m), (-v, *m)]);
    let r = &sp.residual;
    Ok(Spectrum::new(pairs, r * &r.reflect()))
}

/// Spectrum of the extended bipartite double: each `(lambda, m)` yields
/// `(1 + lambda, m)` and `(-1 - lambda, m)`.
pub fn extended_double_spectrum(sp: &Spectrum) -> Result<Spectrum, SpectralError> {
    sp.symmetric_residual()?;
    let one = BigRational::one();
    let pairs = sp
        .pairs
        .iter()
        .flat_map(|(v, m)| [(&one + v, *m), (-(&one + v), *m)]);
    let r = &sp.residual;
    let shifted = r.compose_linear(&one, &-&one);
    let flipped = r.compose_linear(&-&one, &-&one);
    Ok(Spectrum::new(pairs, &shifted * &flipped))
}

/// Both sides of the doubling identity `phi_{G~}(x) = (-1)^n phi(x) phi(-x)`.
pub fn double_char_poly_sides(g: &Graph) -> Result<(Polynomial, Polynomial), SpectralError> {
    let phi = char_poly(g)?;
    let lhs = char_poly(&bipartite_double(g).graph)?;
    let rhs = (&phi * &phi.reflect()).scale(&sign(g.order()));
    Ok((lhs, rhs))
}

/// Both sides of `phi_{G^}(x) = (-1)^n phi(x - 1) phi(-x - 1)`.
pub fn extended_char_poly_sides(g: &Graph) -> Result<(Polynomial, Polynomial), SpectralError> {
    let phi = char_poly(g)?;
    let lhs = char_poly(&extended_bipartite_double(g).graph)?;
    let one = BigRational::one();
    let rhs = (&phi.compose_linear(&one, &-&one) * &phi.compose_linear(&-&one, &-&one))
        .scale(&sign(g.order()));
    Ok((lhs, rhs))
}

fn sign(n: usize) -> BigRational {
    if n % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// An exact eigenvector viewed as a charge on each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenvectorCharge {
    #[serde(with = "crate::algebra::serde_rational")]
    pub eigenvalue: BigRational,
    #[serde(with = "crate::algebra::serde_rational::vec")]
    pub charges: Vec<BigRational>,
}

impl EigenvectorCharge {
    /// `A v = lambda v` exactly and `v != 0`: every vertex's neighbours
    /// carry `lambda` times its own charge.
    pub fn is_eigenvector_of(&self, g: &Graph) -> bool {
        self.charges.len() == g.order()
            && self.charges.iter().any(|c| !c.is_zero())
            && (0..g.order()).all(|i| {
                let s: BigRational = g.neighbors(i).iter().map(|&j| &self.charges[j]).sum();
                s == &self.eigenvalue * &self.charges[i]
            })
    }
}

/// Exact basis of the `lambda`-eigenspace, each vector scaled so its first
/// nonzero charge is 1. Empty when `lambda` is not an eigenvalue.
pub fn eigenspace_basis(g: &Graph, eigenvalue: &BigRational) -> Vec<EigenvectorCharge> {
    g.adjacency_matrix()
        .shift_diagonal(&-eigenvalue)
        .nullity()
        .basis
        .into_iter()
        .map(|charges| EigenvectorCharge {
            eigenvalue: eigenvalue.clone(),
            charges,
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LiftSign {
    Plus,
    Minus,
}

impl LiftSign {
    /// Eigenvalue of the lift on the bipartite double.
    pub fn double_eigenvalue(self, lambda: &BigRational) -> BigRational {
        match self {
            LiftSign::Plus => lambda.clone(),
            LiftSign::Minus => -lambda,
        }
    }

    /// Eigenvalue of the lift on the extended bipartite double.
    pub fn extended_eigenvalue(self, lambda: &BigRational) -> BigRational {
        match self {
            LiftSign::Plus => BigRational::one() + lambda,
            LiftSign::Minus => -(BigRational::one() + lambda),
        }
    }
}

/// Copies the charges onto both copies of each vertex, negating the primed
/// copy for the minus lift.
pub fn lift_eigenvector(v: &EigenvectorCharge, sign: LiftSign) -> EigenvectorCharge {
    let primed = v.charges.iter().map(|c| match sign {
        LiftSign::Plus => c.clone(),
        LiftSign::Minus => -c,
    });
    EigenvectorCharge {
        eigenvalue: sign.double_eigenvalue(&v.eigenvalue),
        charges: v.charges.iter().cloned().chain(primed).collect(),
    }
}

/// Outcome of lifting one eigenvector of `G` both ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftCheck {
    pub plus_on_double: bool,
    pub plus_on_extended: bool,
    pub minus_on_double: bool,
    pub minus_on_extended: bool,
}

impl LiftCheck {
    pub fn all(&self) -> bool {
        self.plus_on_double && self.plus_on_extended && self.minus_on_double && self.minus_on_extended
    }
}

/// Lifts `v` with both signs and checks the lifts by exact multiplication
/// on the double and the extended double of `g`.
pub fn verify_lift(g: &Graph, v: &EigenvectorCharge) -> Result<LiftCheck, SpectralError> {
    if !v.is_eigenvector_of(g) {
        return Err(SpectralError::NotAnEigenvector(format_rational(&v.eigenvalue)));
    }
    let double = bipartite_double(g).graph;
    let extended = extended_bipartite_double(g).graph;
    let on = |sign: LiftSign, target: &Graph, extended_target: bool| {
        let mut lifted = lift_eigenvector(v, sign);
        if extended_target {
            lifted.eigenvalue = sign.extended_eigenvalue(&v.eigenvalue);
        }
        lifted.is_eigenvector_of(target)
    };
    Ok(LiftCheck {
        plus_on_double: on(LiftSign::Plus, &double, false),
        plus_on_extended: on(LiftSign::Plus, &extended, true),
        minus_on_double: on(LiftSign::Minus, &double, false),
        minus_on_extended: on(LiftSign::Minus, &extended, true),
    })
}
