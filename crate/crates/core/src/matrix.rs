//! Dense row-major matrices over an arbitrary commutative ring.
//!
//! The same container carries integer relation matrices, rational group
//! elements and matrices whose entries are Laurent polynomials in `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative ring operations needed by the generic matrix routines.
pub trait RingElement:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Determinant of a square matrix. Rings with a cheaper exact method
    /// override the division-free subset expansion.
    fn determinant_of(m: &Matrix<Self>) -> Self {
        subset_expansion(m)
    }

    /// Matrix product; shapes are checked by the caller.
    fn product_of(a: &Matrix<Self>, b: &Matrix<Self>) -> Matrix<Self> {
        schoolbook_product(a, b)
    }
}

impl RingElement for BigInt {}

// Gcd normalization makes every rational operation expensive once
// denominators grow, so clear them row by row and eliminate over Z.
impl RingElement for BigRational {
    fn determinant_of(m: &Matrix<Self>) -> Self {
        let mut scale = BigInt::one();
        let mut rows = Vec::with_capacity(m.rows);
        for row in m.row_iter() {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            rows.extend(row.iter().map(|x| x.numer() * (&l / x.denom())));
            scale *= l;
        }
        let cleared = IntegerMatrix::from_vec(m.rows, m.cols, rows);
        BigRational::new(crate::lattice::integer_determinant(&cleared), scale)
    }

    fn product_of(a: &Matrix<Self>, b: &Matrix<Self>) -> Matrix<Self> {
        let (a_num, a_den) = common_denominator(a);
        let (b_num, b_den) = common_denominator(b);
        let den = a_den * b_den;
        schoolbook_product(&a_num, &b_num).map(|x| BigRational::new(x.clone(), den.clone()))
    }
}

/// `m = num / den` with `num` integral.
fn common_denominator(m: &RationalMatrix) -> (IntegerMatrix, BigInt) {
    let den = m.entries.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let num = m.map(|x| x.numer() * (&den / x.denom()));
    (num, den)
}

fn schoolbook_product<T: RingElement>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let mut out: Matrix<T> = Matrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if y.is_zero() {
                    continue;
                }
                let cur = out.get(i, j).clone();
                out.set(i, j, cur + x.clone() * y.clone());
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type IntegerMatrix = Matrix<BigInt>;
pub type RationalMatrix = Matrix<BigRational>;

impl<T> Matrix<T> {
    /// Builds a matrix from row-major entries.
    ///
    /// Panics if `entries.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "matrix entry count does not match {rows}x{cols}"
        );
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        *self.get_mut(i, j) = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: &[Vec<T>], cols: usize) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend(row.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Submatrix on the given row and column index lists (in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }
}

impl<T: RingElement> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        T::product_of(self, other)
    }

    pub fn add(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), other.shape());
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + other.get(i, j).clone()
        })
    }

    pub fn sub(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), other.shape());
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() - other.get(i, j).clone()
        })
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        self.map(|x| c.clone() * x.clone())
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                (0..self.rows).fold(T::zero(), |acc, i| {
                    acc + v[i].clone() * self.get(i, j).clone()
                })
            })
            .collect()
    }

    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant of non-square matrix");
        T::determinant_of(self)
    }

    /// Determinant of the submatrix on `rows` x `cols`.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> T {
        self.select(rows, cols).determinant()
    }
}

/// Determinant by expansion over column subsets; division free, so it works
/// over any commutative ring. Cost is `O(2^n n)`.
fn subset_expansion<T: RingElement>(a: &Matrix<T>) -> T {
    let n = a.rows;
    if n == 0 {
        return T::one();
    }
    assert!(n <= 20, "subset-expansion determinant limited to n <= 20");
    let mut dp: Vec<Option<T>> = vec![None; 1 << n];
    dp[0] = Some(T::one());
    for mask in 0usize..(1 << n) {
        let Some(acc) = dp[mask].clone() else {
            continue;
        };
        if acc.is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for col in 0..n {
            if mask & (1 << col) != 0 {
                continue;
            }
            let x = a.get(row, col);
            if x.is_zero() {
                continue;
            }
            // sign: number of chosen columns to the right of `col`
            let inversions = (mask >> (col + 1)).count_ones();
            let term = acc.clone() * x.clone();
            let term = if inversions % 2 == 1 { -term } else { term };
            let next = mask | (1 << col);
            dp[next] = Some(match dp[next].take() {
                Some(prev) => prev + term,
                None => term,
            });
        }
    }
    dp[(1 << n) - 1].clone().unwrap_or_else(T::zero)
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entries[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl IntegerMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Matrix::from_rows(&rows, cols)
    }

    pub fn to_rational(&self) -> RationalMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }
}

impl RationalMatrix {
    /// Reduced row echelon form; returns the pivot columns. Reference for
    /// the fraction-free rank.
    #[cfg(test)]
    fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).recip();
            for j in 0..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in 0..self.cols {
                    let v = self.get(i, j) - &factor * self.get(r, j);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Exact rank by fraction-free elimination over the integers. Each row
    /// is scaled to clear its denominators, which leaves the rank unchanged.
    pub fn rank(&self) -> usize {
        let mut m = IntegerMatrix::from_vec(
            self.rows,
            self.cols,
            self.row_iter()
                .flat_map(|row| {
                    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                    row.iter().map(move |x| x.numer() * (&l / x.denom())).collect::<Vec<_>>()
                })
                .collect(),
        );
        let mut prev = BigInt::one();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let pivot = m.get(rank, c).clone();
            for i in rank + 1..m.rows {
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = (m.get(i, j) * &pivot - &factor * m.get(rank, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    /// Inverse by fraction-free Gauss-Jordan on the cleared integer matrix:
    /// every intermediate entry is a minor, so each division is exact and
    /// the left half ends as `det * I`.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (num, den) = common_denominator(self);
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                num.get(i, j).clone()
            } else if j - n == i {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        let mut prev = BigInt::one();
        for k in 0..n {
            let p = (k..n).find(|&i| !aug.get(i, k).is_zero())?;
            aug.swap_rows(k, p);
            let pivot = aug.get(k, k).clone();
            for i in (0..n).filter(|&i| i != k) {
                let factor = aug.get(i, k).clone();
                for j in 0..2 * n {
                    let v = (aug.get(i, j) * &pivot - &factor * aug.get(k, j)) / &prev;
                    aug.set(i, j, v);
                }
            }
            prev = pivot;
        }
        Some(Matrix::from_fn(n, n, |i, j| {
            BigRational::new(aug.get(i, n + j) * &den, aug.get(i, i).clone())
        }))
    }

    /// Converts to an integer matrix if every entry is integral.
    pub fn to_integer(&self) -> Option<IntegerMatrix> {
        if self.entries.iter().all(|x| x.is_integer()) {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }
}
