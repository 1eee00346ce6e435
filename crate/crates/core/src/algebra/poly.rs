use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{format_rational, rational};

/// Dense univariate polynomial with exact rational coefficients.
///
/// Coefficients are stored lowest degree first and never carry a trailing
/// zero, so the zero polynomial is the empty sequence and structural equality
/// is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

/// Result of [`Polynomial::factor_integer_roots`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerRoots {
    /// Distinct integer roots with multiplicities, descending by root.
    pub roots: Vec<(BigInt, usize)>,
    /// Cofactor with no integer root inside the search bound.
    pub residual: Polynomial,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^degree`.
    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    /// Builds a polynomial from coefficients, lowest degree first.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rational(c)).collect())
    }

    /// `prod (x - r)^m` over the given roots.
    pub fn from_roots<'a, I>(roots: I) -> Self
    where
        I: IntoIterator<Item = (&'a BigRational, usize)>,
    {
        let mut acc = Self::one();
        for (r, m) in roots {
            let factor = Self::from_coeffs(vec![-r.clone(), BigRational::one()]);
            for _ in 0..m {
                acc = &acc * &factor;
            }
        }
        acc
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides through by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => self.scale(&lead.recip()),
            None => Self::zero(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// `p(-x)`: odd-degree coefficients change sign.
    pub fn reflect(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(a*x + b)`.
    pub fn compose_linear(&self, a: &BigRational, b: &BigRational) -> Self {
        let inner = Self::from_coeffs(vec![b.clone(), a.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &inner) + &Self::constant(c.clone()))
    }

    /// Euclidean division; returns `(quotient, remainder)`.
    ///
    /// Panics when dividing by the zero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d_deg = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.coeffs[d_deg].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - d_deg];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + d_deg] * &lead_inv;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        rem.truncate(d_deg);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Divides by `x - r`, returning the quotient and `p(r)`.
    fn synthetic_division(&self, r: &BigRational) -> (Self, BigRational) {
        if self.coeffs.is_empty() {
            return (Self::zero(), BigRational::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![BigRational::zero(); n - 1];
        let mut carry = BigRational::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &carry * r;
            if i == 0 {
                return (Self::from_coeffs(quot), v);
            }
            carry = v.clone();
            quot[i - 1] = v;
        }
        unreachable!()
    }

    /// Least common multiple of all coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Splits off every integer root `r` with `|r| <= bound`.
    ///
    /// Candidates are the divisors of the constant term of the
    /// denominator-cleared polynomial (after removing the root 0), restricted
    /// to `[-bound, bound]`. The returned residual satisfies
    /// `self = residual * prod (x - r)^m` exactly.
    pub fn factor_integer_roots(&self, bound: &BigInt) -> IntegerRoots {
        assert!(!self.is_zero(), "factor_integer_roots of the zero polynomial");
        let mut rest = self.clone();
        let mut roots: Vec<(BigInt, usize)> = Vec::new();

        let zero_mult = rest.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zero_mult > 0 {
            rest = Self::from_coeffs(rest.coeffs[zero_mult..].to_vec());
            roots.push((BigInt::zero(), zero_mult));
        }

        let scale = BigRational::from_integer(rest.denominator_lcm());
        let c0 = (&rest.coeffs[0] * &scale).to_integer().abs();
        let mut r = BigInt::one();
        while &r <= bound {
            if c0.is_multiple_of(&r) {
                for cand in [r.clone(), -r.clone()] {
                    let q = BigRational::from_integer(cand.clone());
                    let mut mult = 0;
                    loop {
                        let (quot, value) = rest.synthetic_division(&q);
                        if !value.is_zero() {
                            break;
                        }
                        rest = quot;
                        mult += 1;
                    }
                    if mult > 0 {
                        roots.push((cand, mult));
                    }
                }
            }
            r += 1;
        }
        roots.sort_by(|a, b| b.0.cmp(&a.0));
        IntegerRoots {
            roots,
            residual: rest,
        }
    }

    /// The unique polynomial of degree `< points.len()` through `points`.
    ///
    /// Returns `None` when two nodes coincide.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Option<Self> {
        let mut acc = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Self::one();
            let mut denom = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let diff = xi - xj;
                if diff.is_zero() {
                    return None;
                }
                denom *= diff;
                basis = &basis * &Self::from_coeffs(vec![-xj.clone(), BigRational::one()]);
            }
            acc = &acc + &basis.scale(&(yi / denom));
        }
        Some(acc)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            let body = if mag.is_integer() {
                format_rational(&mag)
            } else {
                format!("({})", format_rational(&mag))
            };
            match (i, mag.is_one()) {
                (0, _) => f.write_str(&body)?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{body}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{body}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        super::serde_rational::vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        super::serde_rational::vec::deserialize(d).map(Self::from_coeffs)
    }
}
