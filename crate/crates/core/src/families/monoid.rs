use num_bigint::BigInt;
use num_rational::BigRational;

use super::realization::{Action, GroupElement, MatrixRealization, SemiInvariantKind, SemiInvariantSpec};
use super::{discover_minors, torus_pairings, transcription_error};
use crate::divisor_model::{BoundarySpec, ColorSpec, SphericalDivisorModel};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, RationalMatrix};
use crate::rootdata::{Character, CovectorFunctional, SimpleRootSet, TorusLattice};

/// The monoid of pairs `(A, B)` with `A^T B = A B^T = d I`.
///
/// Lattice basis `eps_1..eps_{m+1}`; `eps_{m+1}` is the weight of the
/// `(1,1)` entry of `B`. Colors `D_1..D_{m-1}`, boundaries `X_0..X_m`.
pub fn monoid_model(m: usize) -> Result<(SphericalDivisorModel, MatrixRealization)> {
    if m < 1 {
        return Err(Error::InvalidParameters(format!("monoid needs m >= 1, got m = {m}")));
    }
    let labels: Vec<String> = (1..=m + 1).map(|k| format!("eps_{k}")).collect();
    let lattice = TorusLattice::new(labels.clone())?;
    let rank = m + 1;

    let color_functional = |i: usize| {
        // i is 1-based
        let mut v = vec![0i64; rank];
        v[i - 1] = 1;
        v[i] -= 1;
        if i == 1 {
            v[m] = -1;
        }
        v
    };
    let boundary_valuation = |r: usize| {
        let mut v: Vec<i64> = (1..=m).map(|k| i64::from(k > r)).collect();
        v.push(i64::from(r >= 1));
        v
    };

    let mut roots = Vec::new();
    let mut colors = Vec::new();
    for i in 1..m {
        let mut root = vec![0i64; rank];
        root[i - 1] = 1;
        root[i] = -1;
        let functional = CovectorFunctional::from_i64(&lattice, &color_functional(i))?;
        roots.push((format!("alpha_{i}"), Character::from_i64(&lattice, &root)?, functional.clone()));
        colors.push(ColorSpec::new(format!("D_{i}"), functional, -2));
    }
    let boundaries = (0..=m)
        .map(|r| Ok(BoundarySpec::new(format!("X_{r}"), CovectorFunctional::from_i64(&lattice, &boundary_valuation(r))?)))
        .collect::<Result<Vec<_>>>()?;
    let basis = labels
        .iter()
        .map(|l| Character::basis(&lattice, l))
        .collect::<Result<Vec<_>>>()?;
    let model = SphericalDivisorModel::new(
        format!("monoid:m={m}"),
        lattice.clone(),
        basis,
        SimpleRootSet::new(lattice.clone(), roots)?,
        colors,
        boundaries,
    );

    let action = Action::Monoid { m };
    let identity: RationalMatrix = Matrix::identity(m);
    let mut real = MatrixRealization {
        family: model.name().to_string(),
        action,
        base_point: vec![identity.clone(), identity],
        lattice: Some(lattice.clone()),
        semi_invariants: Vec::new(),
        curves: Vec::new(),
    };
    let id = real.trivial_exponents();
    real.push_curve("identity", None, id);
    for r in 0..=m {
        let a: Vec<i64> = (0..m).map(|k| i64::from(k >= r)).collect();
        let b: Vec<i64> = (0..m).map(|k| i64::from(k < r)).collect();
        real.push_curve(&format!("lambda_{r}"), Some(format!("X_{r}")), vec![a, b, vec![0; m], vec![0; m]]);
    }

    cross_check(&model, &action, &lattice, m)?;

    let mut found = vec![SemiInvariantSpec {
        name: "d".into(),
        kind: SemiInvariantKind::Dilation,
        claimed_weight: Character::basis(&lattice, "eps_1")?.add(&Character::basis(&lattice, &format!("eps_{}", m + 1))?)?,
    }];
    found.extend(discover_minors(&real)?);
    real.semi_invariants = found;
    Ok((model, real))
}

/// Recomputes every color functional from the coroot cocharacter and every
/// boundary valuation from `lambda_r`, both through the torus character of
/// the realization.
fn cross_check(model: &SphericalDivisorModel, action: &Action, lattice: &TorusLattice, m: usize) -> Result<()> {
    let two = BigRational::from_integer(2.into());
    let half = BigRational::new(1.into(), 2.into());
    let one = BigRational::from_integer(1.into());
    let with_right_identity = |a: Vec<BigRational>, b: Vec<BigRational>| {
        let ones = vec![one.clone(); m];
        GroupElement::new(vec![
            Matrix::diagonal(&a),
            Matrix::diagonal(&b),
            Matrix::diagonal(&ones),
            Matrix::diagonal(&ones),
        ])
    };
    for (i, color) in model.colors().iter().enumerate() {
        // alpha_i^vee(c): a = diag(.., c, 1/c, ..), d = 1
        let mut a = vec![one.clone(); m];
        a[i] = two.clone();
        a[i + 1] = half.clone();
        let b: Vec<BigRational> = a.iter().map(|x| x.recip()).collect();
        let expect = torus_pairings(action, lattice, &with_right_identity(a, b)?)?;
        compare(&color.id, &expect, color.functional.coords())?;
    }
    for (r, boundary) in model.boundaries().iter().enumerate() {
        // lambda_r(c): a = diag(1^r, c^{m-r}), d = c
        let a: Vec<BigRational> = (0..m).map(|k| if k >= r { two.clone() } else { one.clone() }).collect();
        let b: Vec<BigRational> = a.iter().map(|x| &two / x).collect();
        let expect = torus_pairings(action, lattice, &with_right_identity(a, b)?)?;
        compare(&boundary.id, &expect, boundary.valuation.coords())?;
    }
    Ok(())
}

fn compare(id: &str, expect: &[i64], found: &[BigRational]) -> Result<()> {
    let found_int: Vec<Option<BigInt>> = found.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect();
    let expect_int: Vec<Option<BigInt>> = expect.iter().map(|&x| Some(BigInt::from(x))).collect();
    if found_int == expect_int {
        Ok(())
    } else {
        Err(transcription_error("monoid", format!("{id}: table {found:?}, torus {expect:?}")))
    }
}
