use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::realization::{top_left_idempotent, Action, MatrixRealization};
use super::{discover_minors, CONSTRUCTION_SEED, CONSTRUCTION_TRIALS};
use crate::divisor_model::{BoundarySpec, ColorSpec, SphericalDivisorModel};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, RationalMatrix};
use crate::oracle;
use crate::rootdata::{Character, CovectorFunctional, SimpleRootSet, TorusLattice};

/// What the oracle found about the boundary of a determinantal variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeterminantalEvidence {
    /// The orbit closure of the limit of `lambda_r`.
    pub candidate: String,
    /// Generic orders of the semi-invariants along `lambda_r`.
    pub orders: Vec<(String, i64)>,
    /// Valuation of the candidate on the lattice basis, solved from `orders`.
    pub valuation: Vec<i64>,
    pub open_orbit_dimension: usize,
    pub candidate_orbit_dimension: usize,
    pub codimension: usize,
    /// The candidate is a divisor and was added to the model.
    pub boundary_added: bool,
}

fn check_params(m: usize, n: usize, r: usize) -> Result<()> {
    if r == 0 || r >= m.min(n) {
        return Err(Error::InvalidParameters(format!(
            "determinantal:m={m},n={n},r={r}: need 0 < r < min(m, n)"
        )));
    }
    Ok(())
}

fn candidate_label(r: usize) -> String {
    format!("X_{}", r - 1)
}

struct Tables {
    lattice: Arc<TorusLattice>,
    basis: Vec<Character>,
    roots: SimpleRootSet,
    colors: Vec<ColorSpec>,
}

fn tables(m: usize, n: usize, r: usize) -> Result<Tables> {
    let labels: Vec<String> = (1..=r).map(|i| format!("eps_{i}")).collect();
    let lattice = TorusLattice::new(labels.clone())?;
    let mut roots = Vec::new();
    let mut colors = Vec::new();
    for i in 1..r {
        let mut v = vec![0i64; r];
        v[i - 1] = 1;
        v[i] = -1;
        let f = CovectorFunctional::from_i64(&lattice, &v)?;
        roots.push((format!("alpha_{i}"), Character::from_i64(&lattice, &v)?, f.clone()));
        colors.push(ColorSpec::new(format!("D_{i}"), f, -2));
    }
    let eps_r = CovectorFunctional::dual(&lattice, &format!("eps_{r}"))?;
    colors.push(ColorSpec::new("D_r1", eps_r.clone(), -((m - r + 1) as i64)));
    colors.push(ColorSpec::new("D_r2", eps_r, -((n - r + 1) as i64)));
    let basis = labels
        .iter()
        .map(|l| Character::basis(&lattice, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(Tables {
        roots: SimpleRootSet::new(lattice.clone(), roots)?,
        lattice,
        basis,
        colors,
    })
}

/// Realization on `m x n` matrices of rank `<= r` with base point `E_r`,
/// plus a provisional model whose single boundary candidate carries a
/// placeholder valuation until the oracle supplies it.
pub fn determinantal_realization(m: usize, n: usize, r: usize) -> Result<(MatrixRealization, SphericalDivisorModel)> {
    check_params(m, n, r)?;
    let name = format!("determinantal:m={m},n={n},r={r}");
    let t = tables(m, n, r)?;
    let candidate = BoundarySpec::new(candidate_label(r), CovectorFunctional::zero(&t.lattice));
    let model = SphericalDivisorModel::new(name.clone(), t.lattice.clone(), t.basis, t.roots, t.colors, vec![candidate])
        .into_provisional("boundary valuation and divisoriality not yet supplied by the oracle");

    let mut real = MatrixRealization {
        family: name,
        action: Action::Determinantal { m, n, r },
        base_point: vec![top_left_idempotent(m, n, r)],
        lattice: Some(t.lattice),
        semi_invariants: Vec::new(),
        curves: Vec::new(),
    };
    let id = real.trivial_exponents();
    real.push_curve("identity", None, id);
    let mut g1 = vec![0i64; m];
    g1[r - 1] = 1;
    real.push_curve(&format!("lambda_{r}"), Some(candidate_label(r)), vec![g1, vec![0; n]]);
    real.semi_invariants = discover_minors(&real)?;
    Ok((real, model))
}

/// Final model: the candidate boundary's valuation is solved from generic
/// orders of the semi-invariants along `lambda_r`, and it is kept only if
/// its orbit closure has codimension one.
pub fn determinantal_model(
    m: usize,
    n: usize,
    r: usize,
) -> Result<(SphericalDivisorModel, MatrixRealization, DeterminantalEvidence)> {
    let (real, provisional) = determinantal_realization(m, n, r)?;
    let curve = format!("lambda_{r}");
    let rank = provisional.lattice().rank();

    // pick semi-invariants with independent weights
    let mut chosen: Vec<(String, Vec<BigRational>, i64)> = Vec::new();
    let mut orders = Vec::new();
    for f in &real.semi_invariants {
        let t = oracle::t_order(&real, f, &curve, CONSTRUCTION_TRIALS, CONSTRUCTION_SEED)?;
        if !t.stable {
            return Err(Error::OracleUnstable(format!("order of `{}` along `{curve}`", f.name)));
        }
        let order = t.order.expect("finite order");
        orders.push((f.name.clone(), order));
        let w: Vec<BigRational> = f.claimed_weight.coords().iter().cloned().map(BigRational::from_integer).collect();
        let mut rows: Vec<Vec<BigRational>> = chosen.iter().map(|c| c.1.clone()).collect();
        rows.push(w.clone());
        if chosen.len() < rank && Matrix::from_rows(&rows, rank).rank() == rows.len() {
            chosen.push((f.name.clone(), w, order));
        }
    }
    if chosen.len() < rank {
        return Err(Error::Oracle(format!(
            "semi-invariants of {} do not span the weight lattice",
            real.family
        )));
    }
    let weights: RationalMatrix = Matrix::from_rows(&chosen.iter().map(|c| c.1.clone()).collect::<Vec<_>>(), rank);
    let rhs: Vec<BigRational> = chosen.iter().map(|c| BigRational::from_integer(c.2.into())).collect();
    let solution = weights.inverse().expect("independent weights").apply(&rhs);
    let valuation = CovectorFunctional::new(provisional.lattice().clone(), solution)?;
    if !valuation.is_integral() {
        return Err(Error::Oracle(format!("non-integral valuation {valuation} along `{curve}`")));
    }
    // every other semi-invariant must agree with the solved valuation
    for f in &real.semi_invariants {
        let order = orders.iter().find(|o| o.0 == f.name).expect("order recorded").1;
        let expected = crate::rootdata::pair_integral(&f.claimed_weight, &valuation)?;
        if expected != BigInt::from(order) {
            return Err(Error::Oracle(format!(
                "order of `{}` along `{curve}` is {order}, the solved valuation gives {expected}",
                f.name
            )));
        }
    }

    let limit = oracle::limit_signature(&real, &curve)?;
    let open_orbit_dimension = oracle::orbit_dimension(&real, CONSTRUCTION_SEED);
    let candidate_orbit_dimension = oracle::orbit_dimension_at(&real, &limit.limit_point, CONSTRUCTION_SEED);
    let codimension = open_orbit_dimension - candidate_orbit_dimension;
    let boundary_added = codimension == 1;

    let t = tables(m, n, r)?;
    let boundaries = if boundary_added {
        vec![BoundarySpec::new(candidate_label(r), valuation.clone())]
    } else {
        Vec::new()
    };
    let model = SphericalDivisorModel::new(provisional.name(), t.lattice, t.basis, t.roots, t.colors, boundaries);
    let evidence = DeterminantalEvidence {
        candidate: candidate_label(r),
        orders,
        valuation: valuation.coords().iter().map(|x| super::to_i64(&x.to_integer())).collect(),
        open_orbit_dimension,
        candidate_orbit_dimension,
        codimension,
        boundary_added,
    };
    Ok((model, real, evidence))
}
