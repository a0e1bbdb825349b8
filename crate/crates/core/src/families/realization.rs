//! Concrete matrix models of the families: points are tuples of matrices,
//! the group is a product of general linear groups acting on each block by
//! `g_left * block * g_right^-1`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, RationalMatrix, RingElement};
use crate::poly::LaurentPoly;
use crate::rootdata::{Character, TorusLattice};

/// Magnitude bound for sampled integer entries. Large enough that a random
/// sample hits a fixed low-degree hypersurface with negligible probability.
pub const SAMPLE_BOUND: i64 = 1_000_000;

pub type Point = Vec<RationalMatrix>;
pub type LaurentPoint = Vec<Matrix<LaurentPoly>>;

/// The family-specific group action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    /// Pairs `(A, B)` of `m x m` matrices. Group factors `[a1, b1, a2, b2]`
    /// with `b = d * a^-T`; `(a1, b1)` acts on the left, `(a2, b2)` on the right.
    Monoid { m: usize },
    /// `A` of size `m x n`; factors `[g1, g2]`, `A -> g1 A g2^-1`.
    Determinantal { m: usize, n: usize, r: usize },
    /// `(A, B)` of sizes `l x m`, `m x n`; `(g1 A g2^-1, g2 B g3^-1)`.
    Complexes { l: usize, m: usize, n: usize, r: usize, s: usize },
    /// `(X, Y)` of sizes `m x n`, `n x m`; `(g1 X g2^-1, g2 Y g1^-1)`.
    Circular { m: usize, n: usize, r: usize, s: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Triangle {
    Lower,
    Upper,
}

impl Action {
    pub fn factor_sizes(&self) -> Vec<usize> {
        match *self {
            Action::Monoid { m } => vec![m; 4],
            Action::Determinantal { m, n, .. } => vec![m, n],
            Action::Complexes { l, m, n, .. } => vec![l, m, n],
            Action::Circular { m, n, .. } => vec![m, n],
        }
    }

    /// `(left factor, right factor)` for every block.
    pub fn block_factors(&self) -> Vec<(usize, usize)> {
        match self {
            Action::Monoid { .. } => vec![(0, 2), (1, 3)],
            Action::Determinantal { .. } => vec![(0, 1)],
            Action::Complexes { .. } => vec![(0, 1), (1, 2)],
            Action::Circular { .. } => vec![(0, 1), (1, 0)],
        }
    }

    pub fn block_shapes(&self) -> Vec<(usize, usize)> {
        let sizes = self.factor_sizes();
        self.block_factors()
            .into_iter()
            .map(|(l, r)| (sizes[l], sizes[r]))
            .collect()
    }

    pub fn block_names(&self) -> Vec<&'static str> {
        match self {
            Action::Monoid { .. } | Action::Complexes { .. } => vec!["A", "B"],
            Action::Determinantal { .. } => vec!["A"],
            Action::Circular { .. } => vec!["X", "Y"],
        }
    }

    fn borel_shape(&self) -> Vec<Triangle> {
        use Triangle::*;
        match self {
            Action::Monoid { .. } => vec![Lower, Upper, Upper, Lower],
            Action::Determinantal { .. } => vec![Lower, Upper],
            Action::Complexes { .. } => vec![Lower, Upper, Upper],
            Action::Circular { .. } => vec![Lower, Upper],
        }
    }

    /// Completes monoid factors: `b = d * a^-T`.
    fn monoid_pair(a: RationalMatrix, d: BigRational) -> Result<(RationalMatrix, RationalMatrix)> {
        let inv = a
            .inverse()
            .ok_or_else(|| Error::Oracle("singular monoid factor".into()))?;
        let b = inv.transpose().scale(&d);
        Ok((a, b))
    }

    fn assemble(&self, free: Vec<RationalMatrix>, scalars: [BigRational; 2]) -> Result<GroupElement> {
        match self {
            Action::Monoid { .. } => {
                let mut it = free.into_iter();
                let [d1, d2] = scalars;
                let (a1, b1) = Action::monoid_pair(it.next().unwrap(), d1)?;
                let (a2, b2) = Action::monoid_pair(it.next().unwrap(), d2)?;
                GroupElement::new(vec![a1, b1, a2, b2])
            }
            _ => GroupElement::new(free),
        }
    }

    fn free_factor_sizes(&self) -> Vec<usize> {
        match *self {
            Action::Monoid { m } => vec![m, m],
            _ => self.factor_sizes(),
        }
    }

    pub fn sample_group(&self, rng: &mut ChaCha8Rng) -> GroupElement {
        loop {
            let free = self
                .free_factor_sizes()
                .into_iter()
                .map(|n| random_matrix(n, n, rng))
                .collect();
            if let Ok(g) = self.assemble(free, [random_nonzero(rng), random_nonzero(rng)]) {
                return g;
            }
        }
    }

    /// A random element of the Borel subgroup used for semi-invariants.
    pub fn sample_borel(&self, rng: &mut ChaCha8Rng) -> GroupElement {
        let shape = self.borel_shape();
        let free_shape: Vec<Triangle> = match self {
            Action::Monoid { .. } => vec![shape[0], shape[2]],
            _ => shape,
        };
        let free = self
            .free_factor_sizes()
            .into_iter()
            .zip(free_shape)
            .map(|(n, tri)| random_triangular(n, tri, rng))
            .collect();
        self.assemble(free, [random_nonzero(rng), random_nonzero(rng)])
            .expect("triangular factors with nonzero diagonal are invertible")
    }

    /// Value of the character with lattice coordinates `chi` on the torus
    /// part (diagonal) of a Borel element.
    pub fn torus_character(&self, chi: &[BigInt], g: &GroupElement) -> BigRational {
        let diag = |f: usize, i: usize| g.factors[f].get(i, i).clone();
        let mut value = BigRational::one();
        let mut mul = |x: BigRational, e: &BigInt| value *= rational_pow(&x, e);
        match *self {
            Action::Monoid { m } => {
                for (k, e) in chi.iter().enumerate().take(m) {
                    mul(diag(0, k) / diag(2, k), e);
                }
                mul(diag(1, 0) / diag(3, 0), &chi[m]);
            }
            Action::Determinantal { r, .. } => {
                for (i, e) in chi.iter().enumerate().take(r) {
                    mul(diag(0, i) / diag(1, i), e);
                }
            }
            Action::Circular { m, n, r, s } => {
                for (i, e) in chi.iter().enumerate().take(r) {
                    mul(diag(0, i) / diag(1, i), e);
                }
                for j in 0..s {
                    mul(diag(1, n - s + j) / diag(0, m - s + j), &chi[r + j]);
                }
            }
            Action::Complexes { .. } => {}
        }
        value
    }

    /// Torus element on which lattice coordinate `k` takes the value `c` and
    /// every other coordinate the value 1.
    pub fn dual_torus_element(&self, k: usize, c: &BigRational) -> Option<GroupElement> {
        let sizes = self.factor_sizes();
        let mut diags: Vec<Vec<BigRational>> = sizes.iter().map(|&n| vec![BigRational::one(); n]).collect();
        match *self {
            Action::Monoid { m } => {
                // factors (a1, b1) with b1 = d a1^-1 on the diagonal
                if k == m {
                    diags[1] = vec![c.clone(); m];
                } else if k == 0 {
                    diags[0][0] = c.clone();
                    for j in 1..m {
                        diags[1][j] = c.clone();
                    }
                } else if k < m {
                    diags[0][k] = c.clone();
                    diags[1][k] = c.recip();
                } else {
                    return None;
                }
            }
            Action::Determinantal { r, .. } => {
                if k >= r {
                    return None;
                }
                diags[0][k] = c.clone();
            }
            Action::Circular { n, r, s, .. } => {
                if k < r {
                    diags[0][k] = c.clone();
                } else if k < r + s {
                    diags[1][n - s + (k - r)] = c.clone();
                } else {
                    return None;
                }
            }
            Action::Complexes { .. } => return None,
        }
        GroupElement::new(diags.iter().map(|d| RationalMatrix::diagonal(d)).collect()).ok()
    }

    /// Basis of the Lie algebra, one tuple of factor matrices per vector.
    pub fn lie_basis(&self) -> Vec<Vec<RationalMatrix>> {
        let sizes = self.factor_sizes();
        let zero_tuple = || -> Vec<RationalMatrix> { sizes.iter().map(|&n| Matrix::zeros(n, n)).collect() };
        let unit = |n: usize, i: usize, j: usize, c: i64| {
            let mut e: RationalMatrix = Matrix::zeros(n, n);
            e.set(i, j, BigRational::from_integer(c.into()));
            e
        };
        let mut basis = Vec::new();
        match *self {
            Action::Monoid { m } => {
                // tangent of b = d a^-T at the identity: db = dd I - da^T
                for (fa, fb) in [(0, 1), (2, 3)] {
                    for i in 0..m {
                        for j in 0..m {
                            let mut v = zero_tuple();
                            v[fa] = unit(m, i, j, 1);
                            v[fb] = unit(m, j, i, -1);
                            basis.push(v);
                        }
                    }
                    let mut v = zero_tuple();
                    v[fb] = Matrix::identity(m);
                    basis.push(v);
                }
            }
            _ => {
                for (f, &n) in sizes.iter().enumerate() {
                    for i in 0..n {
                        for j in 0..n {
                            let mut v = zero_tuple();
                            v[f] = unit(n, i, j, 1);
                            basis.push(v);
                        }
                    }
                }
            }
        }
        basis
    }

    /// Defining equations and rank bounds.
    pub fn contains(&self, point: &[RationalMatrix]) -> bool {
        if point.len() != self.block_shapes().len()
            || point.iter().zip(self.block_shapes()).any(|(p, s)| p.shape() != s)
        {
            return false;
        }
        match *self {
            Action::Monoid { m } => {
                let atb = point[0].transpose().mul(&point[1]);
                let abt = point[0].mul(&point[1].transpose());
                let d = atb.get(0, 0).clone();
                atb == abt && atb == Matrix::identity(m).scale(&d)
            }
            Action::Determinantal { r, .. } => point[0].rank() <= r,
            Action::Complexes { r, s, .. } => {
                point[0].rank() <= r && point[1].rank() <= s && point[0].mul(&point[1]).is_zero()
            }
            Action::Circular { r, s, .. } => {
                point[0].rank() <= r
                    && point[1].rank() <= s
                    && point[0].mul(&point[1]).is_zero()
                    && point[1].mul(&point[0]).is_zero()
            }
        }
    }

    pub fn act<T: RingElement + From<BigRational>>(&self, g: &GroupElement, point: &[Matrix<T>]) -> Vec<Matrix<T>> {
        let lift = |m: &RationalMatrix| m.map(|x| T::from(x.clone()));
        let left: Vec<Matrix<T>> = g.factors.iter().map(lift).collect();
        let right: Vec<Matrix<T>> = g.inverses.iter().map(lift).collect();
        act_with(&self.block_factors(), &left, &right, point)
    }

    /// Infinitesimal action of a Lie algebra vector at `point`.
    pub fn tangent(&self, xi: &[RationalMatrix], point: &[RationalMatrix]) -> Vec<RationalMatrix> {
        self.block_factors()
            .iter()
            .zip(point)
            .map(|(&(l, r), x)| xi[l].mul(x).sub(&x.mul(&xi[r])))
            .collect()
    }
}

fn act_with<T: RingElement>(
    blocks: &[(usize, usize)],
    left: &[Matrix<T>],
    right_inv: &[Matrix<T>],
    point: &[Matrix<T>],
) -> Vec<Matrix<T>> {
    blocks
        .iter()
        .zip(point)
        .map(|(&(l, r), x)| left[l].mul(x).mul(&right_inv[r]))
        .collect()
}

/// A tuple of invertible rational matrices with cached inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub factors: Vec<RationalMatrix>,
    pub inverses: Vec<RationalMatrix>,
}

impl GroupElement {
    pub fn new(factors: Vec<RationalMatrix>) -> Result<Self> {
        let inverses = factors
            .iter()
            .map(|f| f.inverse().ok_or_else(|| Error::Oracle("singular group factor".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupElement { factors, inverses })
    }

    pub fn identity(sizes: &[usize]) -> Self {
        let factors: Vec<RationalMatrix> = sizes.iter().map(|&n| Matrix::identity(n)).collect();
        GroupElement {
            inverses: factors.clone(),
            factors,
        }
    }
}

/// A polynomial function on points with a claimed `B`-weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiInvariantSpec {
    pub name: String,
    pub kind: SemiInvariantKind,
    pub claimed_weight: Character,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemiInvariantKind {
    Constant(BigRational),
    Minor { block: usize, rows: Vec<usize>, cols: Vec<usize> },
    /// `(A^T B)_{11}`, the scalar `d` of a monoid point.
    Dilation,
    Product(Vec<SemiInvariantKind>),
    Scaled(BigRational, Box<SemiInvariantKind>),
}

impl SemiInvariantKind {
    pub fn evaluate<T: RingElement + From<BigRational>>(&self, point: &[Matrix<T>]) -> T {
        match self {
            SemiInvariantKind::Constant(c) => T::from(c.clone()),
            SemiInvariantKind::Minor { block, rows, cols } => point[*block].minor(rows, cols),
            SemiInvariantKind::Dilation => {
                let (a, b) = (&point[0], &point[1]);
                (0..a.rows()).fold(T::zero(), |acc, k| acc + a.get(k, 0).clone() * b.get(k, 0).clone())
            }
            SemiInvariantKind::Product(parts) => parts
                .iter()
                .fold(T::one(), |acc, p| acc * p.evaluate(point)),
            SemiInvariantKind::Scaled(c, inner) => T::from(c.clone()) * inner.evaluate(point),
        }
    }

    pub fn leading_minor(block: usize, k: usize) -> Self {
        SemiInvariantKind::Minor {
            block,
            rows: (0..k).collect(),
            cols: (0..k).collect(),
        }
    }

    pub fn trailing_minor(block: usize, shape: (usize, usize), k: usize) -> Self {
        SemiInvariantKind::Minor {
            block,
            rows: (shape.0 - k..shape.0).collect(),
            cols: (shape.1 - k..shape.1).collect(),
        }
    }
}

impl SemiInvariantSpec {
    pub fn constant(lattice: &Arc<TorusLattice>, c: BigRational) -> Self {
        SemiInvariantSpec {
            name: "const".into(),
            kind: SemiInvariantKind::Constant(c),
            claimed_weight: Character::zero(lattice),
        }
    }

    pub fn product(&self, other: &SemiInvariantSpec) -> Result<Self> {
        Ok(SemiInvariantSpec {
            name: format!("{}*{}", self.name, other.name),
            kind: SemiInvariantKind::Product(vec![self.kind.clone(), other.kind.clone()]),
            claimed_weight: self.claimed_weight.add(&other.claimed_weight)?,
        })
    }

    pub fn scaled(&self, c: BigRational) -> Self {
        SemiInvariantSpec {
            name: format!("{c}*{}", self.name),
            kind: SemiInvariantKind::Scaled(c, Box::new(self.kind.clone())),
            claimed_weight: self.claimed_weight.clone(),
        }
    }
}

/// `t -> lambda(t) . base_point`, optionally tied to the boundary divisor
/// whose generic point it approaches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocharacterCurve {
    pub label: String,
    pub boundary: Option<String>,
    pub point: LaurentPoint,
}

#[derive(Clone, Debug)]
pub struct MatrixRealization {
    pub family: String,
    pub action: Action,
    pub base_point: Point,
    pub lattice: Option<Arc<TorusLattice>>,
    pub semi_invariants: Vec<SemiInvariantSpec>,
    pub curves: Vec<CocharacterCurve>,
}

impl MatrixRealization {
    pub fn ambient_shape(&self) -> Vec<(usize, usize)> {
        self.action.block_shapes()
    }

    pub fn contains(&self, point: &[RationalMatrix]) -> bool {
        self.action.contains(point)
    }

    pub fn curve(&self, label: &str) -> Result<&CocharacterCurve> {
        self.curves
            .iter()
            .find(|c| c.label == label)
            .ok_or_else(|| Error::Oracle(format!("no curve `{label}` in {}", self.family)))
    }

    pub fn curve_for_boundary(&self, boundary: &str) -> Option<&CocharacterCurve> {
        self.curves.iter().find(|c| c.boundary.as_deref() == Some(boundary))
    }

    pub fn semi_invariant(&self, name: &str) -> Result<&SemiInvariantSpec> {
        self.semi_invariants
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| Error::Oracle(format!("no semi-invariant `{name}` in {}", self.family)))
    }

    /// Adds the curve `t -> lambda(t) . base_point` where `lambda` is the
    /// diagonal cocharacter with the given exponents on each factor.
    pub fn push_curve(&mut self, label: &str, boundary: Option<String>, exponents: Vec<Vec<i64>>) {
        let monomials = |e: &[i64], sign: i64| {
            let diag: Vec<LaurentPoly> = e
                .iter()
                .map(|&k| LaurentPoly::monomial(BigRational::one(), sign * k))
                .collect();
            Matrix::diagonal(&diag)
        };
        let left: Vec<Matrix<LaurentPoly>> = exponents.iter().map(|e| monomials(e, 1)).collect();
        let right: Vec<Matrix<LaurentPoly>> = exponents.iter().map(|e| monomials(e, -1)).collect();
        let base: LaurentPoint = self
            .base_point
            .iter()
            .map(|m| m.map(|x| LaurentPoly::constant(x.clone())))
            .collect();
        let point = act_with(&self.action.block_factors(), &left, &right, &base);
        self.curves.push(CocharacterCurve {
            label: label.to_string(),
            boundary,
            point,
        });
    }

    pub(crate) fn trivial_exponents(&self) -> Vec<Vec<i64>> {
        self.action.factor_sizes().iter().map(|&n| vec![0; n]).collect()
    }

    /// Random element of the block shape of the stabilizer of the base
    /// point. With `violate`, one of the shared diagonal blocks is replaced
    /// by an independent one, so the element keeps the block shape but moves
    /// the base point. `None` when there is no shared block to break.
    pub fn sample_stabilizer(&self, rng: &mut ChaCha8Rng, violate: bool) -> Option<GroupElement> {
        let fresh = |other: &RationalMatrix, rng: &mut ChaCha8Rng| loop {
            let m = random_invertible(other.rows(), rng);
            if &m != other {
                return m;
            }
        };
        let factors = match self.action {
            Action::Monoid { m } => {
                let pair = |rng: &mut ChaCha8Rng| {
                    Action::monoid_pair(random_invertible(m, rng), random_nonzero(rng))
                        .expect("invertible factor")
                };
                let (a, b) = pair(rng);
                let (a2, b2) = if violate { pair(rng) } else { (a.clone(), b.clone()) };
                vec![a, b, a2, b2]
            }
            Action::Determinantal { m, n, r } => {
                let a11 = random_invertible(r, rng);
                let b11 = if violate { fresh(&a11, rng) } else { a11.clone() };
                let g1 = block_triangular(&[a11, random_invertible(m - r, rng)], true, rng);
                let g2 = block_triangular(&[b11, random_invertible(n - r, rng)], false, rng);
                vec![g1, g2]
            }
            Action::Circular { m, n, r, s } => {
                let a11 = random_invertible(r, rng);
                let a33 = random_invertible(s, rng);
                let (b11, b33) = match (violate, r > 0) {
                    (false, _) => (a11.clone(), a33.clone()),
                    (true, true) => (fresh(&a11, rng), a33.clone()),
                    (true, false) => (a11.clone(), fresh(&a33, rng)),
                };
                let g1 = block_triangular(&[a11, random_invertible(m - r - s, rng), a33], true, rng);
                let g2 = block_triangular(&[b11, random_invertible(n - r - s, rng), b33], false, rng);
                vec![g1, g2]
            }
            Action::Complexes { l, m, n, r, s } => {
                if violate && r == 0 && s == 0 {
                    return None;
                }
                let a11 = random_invertible(r, rng);
                let b33 = random_invertible(s, rng);
                let (b11, c22) = match (violate, r > 0) {
                    (false, _) => (a11.clone(), b33.clone()),
                    (true, true) => (fresh(&a11, rng), b33.clone()),
                    (true, false) => (a11.clone(), fresh(&b33, rng)),
                };
                let g1 = block_triangular(&[a11, random_invertible(l - r, rng)], true, rng);
                let g2 = block_triangular(&[b11, random_invertible(m - r - s, rng), b33], false, rng);
                let g3 = block_triangular(&[random_invertible(n - s, rng), c22], true, rng);
                vec![g1, g2, g3]
            }
        };
        GroupElement::new(factors).ok()
    }
}

pub fn random_entry(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::from_integer(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND).into())
}

pub fn random_nonzero(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let x = random_entry(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> RationalMatrix {
    Matrix::from_fn(rows, cols, |_, _| random_entry(rng))
}

fn random_triangular(n: usize, tri: Triangle, rng: &mut ChaCha8Rng) -> RationalMatrix {
    Matrix::from_fn(n, n, |i, j| {
        let keep = match tri {
            Triangle::Lower => i >= j,
            Triangle::Upper => i <= j,
        };
        if i == j {
            random_nonzero(rng)
        } else if keep {
            random_entry(rng)
        } else {
            BigRational::zero()
        }
    })
}

/// Random invertible matrix.
pub fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> RationalMatrix {
    loop {
        let m = random_matrix(n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

fn rational_pow(x: &BigRational, e: &BigInt) -> BigRational {
    use num_traits::{Signed, ToPrimitive};
    let k = e.abs().to_usize().expect("exponent fits in usize");
    let base = if e.is_negative() { x.recip() } else { x.clone() };
    num_traits::pow(base, k)
}

/// `E_r`: identity in the top-left `r x r` corner.
pub fn top_left_idempotent(rows: usize, cols: usize, r: usize) -> RationalMatrix {
    Matrix::from_fn(rows, cols, |i, j| {
        if i == j && i < r {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    })
}

/// Identity in the bottom-right `s x s` corner.
pub fn bottom_right_idempotent(rows: usize, cols: usize, s: usize) -> RationalMatrix {
    Matrix::from_fn(rows, cols, |i, j| {
        if i + s >= rows && j + s >= cols && rows - i == cols - j {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    })
}

/// Block triangular matrix with the given diagonal blocks and random
/// entries on one side of the diagonal.
pub(crate) fn block_triangular(
    blocks: &[RationalMatrix],
    upper: bool,
    rng: &mut ChaCha8Rng,
) -> RationalMatrix {
    let mut owner = Vec::new();
    let mut offsets = Vec::new();
    for (b, block) in blocks.iter().enumerate() {
        offsets.push(owner.len());
        owner.extend(std::iter::repeat(b).take(block.rows()));
    }
    let n = owner.len();
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (bi, bj) = (owner[i], owner[j]);
            let value = if bi == bj {
                blocks[bi].get(i - offsets[bi], j - offsets[bj]).clone()
            } else if (upper && bi < bj) || (!upper && bi > bj) {
                random_entry(rng)
            } else {
                BigRational::zero()
            };
            out.set(i, j, value);
        }
    }
    out
}
