//! Exact integer lattice algebra: Smith normal form, cokernels and integer
//! linear systems.
//!
//! Everything here works over arbitrary-precision integers. Intermediate
//! entries of the Smith reduction can grow well beyond the input size, so
//! there is no fixed-width fast path.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use crate::matrix::IntegerMatrix;

/// `U * A * V = D` with `U`, `V` unimodular and `D` in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub d: IntegerMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_rank`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k)
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Computes the Smith normal form with transforms.
///
/// Pivoting always moves the smallest nonzero absolute value of the active
/// submatrix (first in row-major order on ties) to the diagonal, which keeps
/// the output a deterministic function of the input.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (m, n) = a.shape();
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_entry(&d, (t..m).collect(), (t..n).collect()) else {
            break;
        };
        move_pivot(&mut d, &mut u, &mut v, t, pi, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                let q = d.get(i, t).div_floor(d.get(t, t));
                if !q.is_zero() {
                    add_row_multiple(&mut d, &mut u, i, t, &-q);
                }
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = d.get(t, j).div_floor(d.get(t, t));
                if !q.is_zero() {
                    add_col_multiple(&mut d, &mut v, j, t, &-q);
                }
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a remainder smaller than the pivot survived in row or column t
                let rows: Vec<usize> = (t..m).collect();
                let cols: Vec<usize> = (t..n).collect();
                let (pi, pj) = smallest_in_cross(&d, t, &rows, &cols);
                move_pivot(&mut d, &mut u, &mut v, t, pi, pj);
                continue;
            }
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => add_row_multiple(&mut d, &mut u, t, i, &BigInt::one()),
                None => break,
            }
        }

        if d.get(t, t).is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }

    SmithDecomposition { u, v, d }
}

fn smallest_entry(d: &IntegerMatrix, rows: Vec<usize>, cols: Vec<usize>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for &i in &rows {
        for &j in &cols {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d.get(bi, bj).abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn smallest_in_cross(d: &IntegerMatrix, t: usize, rows: &[usize], cols: &[usize]) -> (usize, usize) {
    let mut cands: Vec<(usize, usize)> = vec![(t, t)];
    cands.extend(rows.iter().skip(1).map(|&i| (i, t)));
    cands.extend(cols.iter().skip(1).map(|&j| (t, j)));
    cands
        .into_iter()
        .filter(|&(i, j)| !d.get(i, j).is_zero())
        .min_by(|&(a, b), &(c, e)| d.get(a, b).abs().cmp(&d.get(c, e).abs()))
        .expect("pivot cross cannot be all zero")
}

fn move_pivot(
    d: &mut IntegerMatrix,
    u: &mut IntegerMatrix,
    v: &mut IntegerMatrix,
    t: usize,
    i: usize,
    j: usize,
) {
    d.swap_rows(t, i);
    u.swap_rows(t, i);
    d.swap_cols(t, j);
    v.swap_cols(t, j);
}

/// row[target] += k * row[source], on both `d` and the left transform.
fn add_row_multiple(d: &mut IntegerMatrix, u: &mut IntegerMatrix, target: usize, source: usize, k: &BigInt) {
    for mat in [d, u] {
        for c in 0..mat.cols() {
            let delta = mat.get(source, c) * k;
            if !delta.is_zero() {
                let cur = mat.get(target, c) + delta;
                mat.set(target, c, cur);
            }
        }
    }
}

/// col[target] += k * col[source], on both `d` and the right transform.
fn add_col_multiple(d: &mut IntegerMatrix, v: &mut IntegerMatrix, target: usize, source: usize, k: &BigInt) {
    for mat in [d, v] {
        for r in 0..mat.rows() {
            let delta = mat.get(r, source) * k;
            if !delta.is_zero() {
                let cur = mat.get(r, target) + delta;
                mat.set(r, target, cur);
            }
        }
    }
}

fn negate_row(mat: &mut IntegerMatrix, r: usize) {
    for c in 0..mat.cols() {
        let x = -mat.get(r, c);
        mat.set(r, c, x);
    }
}

/// A finitely generated abelian group `Z^free_rank + Z/d_1 + ... + Z/d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupPresentation {
    pub free_rank: usize,
    #[serde(with = "crate::json::big_ints")]
    pub invariant_factors: Vec<BigInt>,
}

impl AbelianGroupPresentation {
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self> {
        if let Some(bad) = invariant_factors.iter().find(|d| **d < BigInt::from(2)) {
            return Err(Error::InvalidModel(format!(
                "invariant factor {bad} is not at least 2"
            )));
        }
        if invariant_factors
            .windows(2)
            .any(|w| !w[1].is_multiple_of(&w[0]))
        {
            return Err(Error::InvalidModel(
                "invariant factors do not form a divisibility chain".into(),
            ));
        }
        Ok(AbelianGroupPresentation {
            free_rank,
            invariant_factors,
        })
    }

    pub fn trivial() -> Self {
        AbelianGroupPresentation {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl fmt::Display for AbelianGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Presentation of `Z^cols / rowspan(relations)`.
pub fn cokernel(relations: &IntegerMatrix) -> AbelianGroupPresentation {
    cokernel_from_smith(relations.cols(), &smith_normal_form(relations))
}

pub(crate) fn cokernel_from_smith(cols: usize, snf: &SmithDecomposition) -> AbelianGroupPresentation {
    let diag = snf.diagonal();
    AbelianGroupPresentation {
        free_rank: cols - diag.len(),
        invariant_factors: diag.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Why `A x = b` has no integer solution, in Smith coordinates `c = U b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// `d_index` does not divide `c_index`.
    Divisibility {
        index: usize,
        divisor: BigInt,
        value: BigInt,
    },
    /// `c_index != 0` for an index beyond the rank: `b` is not even in the
    /// rational column span.
    OutsideImage { index: usize, value: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegerSolution {
    Solution(Vec<BigInt>),
    Obstructed(Obstruction),
}

/// Decides `A x = b` over the integers through the Smith decomposition of `A`.
pub fn solve_with_certificate(a: &IntegerMatrix, b: &[BigInt]) -> Result<IntegerSolution> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {} but matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let snf = smith_normal_form(a);
    let c = snf.u.apply(b);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < diag.len() {
            let (q, r) = ci.div_rem(&diag[i]);
            if !r.is_zero() {
                return Ok(IntegerSolution::Obstructed(Obstruction::Divisibility {
                    index: i,
                    divisor: diag[i].clone(),
                    value: ci.clone(),
                }));
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return Ok(IntegerSolution::Obstructed(Obstruction::OutsideImage {
                index: i,
                value: ci.clone(),
            }));
        }
    }
    Ok(IntegerSolution::Solution(snf.v.apply(&y)))
}

/// Some integer `x` with `A x = b`, or `None` when no integer solution exists.
pub fn solve_integer(a: &IntegerMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    Ok(match solve_with_certificate(a, b)? {
        IntegerSolution::Solution(x) => Some(x),
        IntegerSolution::Obstructed(_) => None,
    })
}

/// Exact determinant by fraction-free Gaussian elimination (Bareiss).
pub fn integer_determinant(a: &IntegerMatrix) -> BigInt {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j);
                m.set(i, j, num / &prev);
            }
        }
        prev = m.get(k, k).clone();
    }
    sign * m.get(n - 1, n - 1)
}

/// Exact rational vector in canonical (reduced) form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn from_integers(v: &[BigInt]) -> Self {
        RationalVector(v.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn dot_integers(&self, v: &[BigInt]) -> BigRational {
        self.0
            .iter()
            .zip(v)
            .fold(BigRational::zero(), |acc, (a, b)| {
                acc + a * BigRational::from_integer(b.clone())
            })
    }
}

/// Formats a rational as `"p/q"` (always with an explicit denominator).
pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
