//! Exact scalars, dense polynomials and rational matrices.
//!
//! Every quantity in the crate (eigenvalues, polynomial coefficients,
//! eigenvalue products) is carried as a [`BigRational`]; nothing here ever
//! touches floating point.

mod matrix;
mod poly;

pub use matrix::{Nullspace, RationalMatrix};
pub use poly::{IntegerRoots, Polynomial};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_traits::{One, Zero};

/// Builds the rational `n / 1`.
pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Builds the rational `num / den`, reduced to lowest terms.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `"num/den"`, omitting the denominator when it is 1.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses the format written by [`format_rational`].
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Returns the integer value of `q` when its denominator is 1.
pub fn as_integer(q: &BigRational) -> Option<&BigInt> {
    q.is_integer().then(|| q.numer())
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Serde adapters for rationals and polynomials.
///
/// Rationals are written as `"num/den"` strings (denominator dropped when it
/// is 1); polynomials as arrays of such strings, lowest degree first.
pub mod serde_rational {
    use super::{format_rational, parse_rational, BigRational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| D::Error::custom(format!("invalid rational {s:?}")))
    }

    pub mod vec {
        use super::super::{format_rational, parse_rational, BigRational};
        use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for q in v {
                seq.serialize_element(&format_rational(q))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| {
                    parse_rational(s)
                        .ok_or_else(|| D::Error::custom(format!("invalid rational {s:?}")))
                })
                .collect()
        }
    }
}

/// Serde adapter writing big integers as decimal strings.
pub mod serde_bigint {
    pub mod vec {
        use super::super::BigInt;
        use serde::{ser::SerializeSeq, Serializer};

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for n in v {
                seq.serialize_element(&n.to_string())?;
            }
            seq.end()
        }
    }
}
