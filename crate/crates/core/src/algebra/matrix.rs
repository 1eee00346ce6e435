use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Polynomial;

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

/// Kernel of a matrix: its dimension and an exact basis.
///
/// Each basis vector is scaled so that its first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nullspace {
    pub dimension: usize,
    pub basis: Vec<Vec<BigRational>>,
}

/// Integer row echelon form produced by fraction-free elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    /// Square matrix with every entry equal to 1.
    pub fn all_ones(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            entries: vec![BigRational::one(); n * n],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| {
            BigRational::from_integer(BigInt::from(rows[i][j]))
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// `self + c*I`.
    pub fn shift_diagonal(&self, c: &BigRational) -> Self {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.rows {
            out.entries[i * self.cols + i] += c;
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(BigRational::zero(), |acc, (a, x)| acc + a * x)
            })
            .collect()
    }

    /// True when every entry equals `value`.
    pub fn is_constant(&self, value: &BigRational) -> bool {
        self.entries.iter().all(|e| e == value)
    }

    /// Nonzero entries of each row as `(column, value)` pairs.
    fn sparse_rows(&self) -> Vec<Vec<(usize, &BigRational)>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect()
    }

    fn mul_sparse_right(&self, rhs_rows: &[Vec<(usize, &BigRational)>], rhs_cols: usize) -> Self {
        let mut out = Self::zeros(self.rows, rhs_cols);
        for i in 0..self.rows {
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &rhs_rows[k] {
                    out.entries[i * rhs_cols + j] += a * b;
                }
            }
        }
        out
    }

    /// Evaluates `p(self)` by Horner's scheme.
    pub fn poly_eval(&self, p: &Polynomial) -> Self {
        assert!(self.is_square(), "polynomial of a non-square matrix");
        let n = self.rows;
        let sparse = self.sparse_rows();
        let mut acc = Self::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul_sparse_right(&sparse, n).shift_diagonal(c);
        }
        acc
    }

    /// Rows scaled to integers by clearing each row's denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter()
                    .map(|q| (q * BigRational::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect()
    }

    /// Bareiss fraction-free forward elimination with column skipping.
    ///
    /// Every entry after step `k` is a `(k+1)`-minor of the input, so the
    /// division by the previous pivot is exact.
    fn echelon(&self) -> Echelon {
        let mut a = self.integer_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let (head, tail) = a.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let pivot = &pivot_row[c];
            for row in tail.iter_mut() {
                let factor = std::mem::take(&mut row[c]);
                for j in c + 1..cols {
                    let upper = &pivot_row[j];
                    let cur = &mut row[j];
                    if cur.is_zero() && (factor.is_zero() || upper.is_zero()) {
                        continue;
                    }
                    let mut v = pivot * &*cur;
                    if !factor.is_zero() && !upper.is_zero() {
                        v -= &factor * upper;
                    }
                    if !prev.is_one() {
                        debug_assert!(v.is_multiple_of(&prev), "inexact Bareiss step");
                        v /= &prev;
                    }
                    *cur = v;
                }
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        a.truncate(pivots.len());
        Echelon { rows: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Kernel dimension without building a basis.
    pub fn nullity_dimension(&self) -> usize {
        self.cols - self.rank()
    }

    /// Dimension of the right kernel together with an exact basis.
    pub fn nullity(&self) -> Nullspace {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![BigRational::zero(); self.cols];
            x[free] = BigRational::one();
            for (row, &pc) in ech.rows.iter().zip(&ech.pivots).rev() {
                let mut s = BigInt::zero();
                // Only x entries at free columns and later pivots are set.
                let mut acc = BigRational::zero();
                for j in pc + 1..self.cols {
                    if row[j].is_zero() || x[j].is_zero() {
                        continue;
                    }
                    if x[j].is_integer() {
                        s += &row[j] * x[j].numer();
                    } else {
                        acc += BigRational::from_integer(row[j].clone()) * &x[j];
                    }
                }
                acc += BigRational::from_integer(s);
                x[pc] = -acc / BigRational::from_integer(row[pc].clone());
            }
            let lead = x.iter().find(|v| !v.is_zero()).cloned().expect("nonzero basis vector");
            if !lead.is_one() {
                let inv = lead.recip();
                for v in &mut x {
                    *v *= &inv;
                }
            }
            basis.push(x);
        }
        Nullspace {
            dimension: basis.len(),
            basis,
        }
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;

    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;

    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        self.mul_sparse_right(&rhs.sparse_rows(), rhs.cols)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(super::format_rational).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ratio, rational};
    use proptest::prelude::*;

    fn k3_plus_identity() -> RationalMatrix {
        RationalMatrix::from_integer_rows(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]])
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let ns = RationalMatrix::identity(3).nullity();
        assert_eq!(ns.dimension, 0);
        assert!(ns.basis.is_empty());
    }

    #[test]
    fn k3_shifted_kernel() {
        let m = k3_plus_identity();
        let ns = m.nullity();
        assert_eq!(ns.dimension, 2);
        for b in &ns.basis {
            assert!(m.mul_vec(b).iter().all(Zero::is_zero));
            assert!(b.iter().find(|v| !v.is_zero()).unwrap().is_one());
        }
    }

    #[test]
    fn rational_entries_are_cleared() {
        let m = RationalMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => ratio(1, 2),
            (0, 1) => ratio(1, 3),
            (1, 0) => ratio(3, 2),
            _ => rational(1),
        });
        let ns = m.nullity();
        assert_eq!(ns.dimension, 1);
        assert_eq!(ns.basis[0], vec![rational(1), ratio(-3, 2)]);
    }

    #[test]
    fn poly_eval_matches_products() {
        let a = RationalMatrix::from_integer_rows(&[vec![0, 1], vec![1, 1]]);
        assert_eq!(a.poly_eval(&Polynomial::x()), a);
        let p = Polynomial::from_integers(&[-3, 0, 1]);
        let expected = &(&a * &a) - &RationalMatrix::identity(2).scale(&rational(3));
        assert_eq!(a.poly_eval(&p), expected);
        assert_eq!(a.poly_eval(&Polynomial::zero()), RationalMatrix::zeros(2, 2));
    }

    fn factor(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
        prop::collection::vec((-2i64..=2, 1i64..=3), rows * cols).prop_map(move |es| {
            RationalMatrix::from_fn(rows, cols, |i, j| {
                let (n, d) = es[i * cols + j];
                ratio(n, d)
            })
        })
    }

    // Products of 6xr and rx6 factors, so every rank up to 6 shows up.
    fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
        (1usize..=6).prop_flat_map(|r| (factor(6, r), factor(r, 6)).prop_map(|(b, c)| &b * &c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let ns = m.nullity();
            prop_assert_eq!(ns.dimension + m.rank(), 6);
            for b in &ns.basis {
                prop_assert!(m.mul_vec(b).iter().all(Zero::is_zero));
            }
        }
    }
}
