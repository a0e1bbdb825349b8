//! Randomized exact checks of a divisor model against its matrix realization.
//!
//! Everything runs over the rationals with seeded samplers, so identical
//! seeds give identical reports. Orders along curves use exact Laurent
//! polynomial arithmetic in `t`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::divisor_model::SphericalDivisorModel;
use crate::error::{Error, Result};
use crate::families::realization::{GroupElement, MatrixRealization, Point, SemiInvariantSpec};
use crate::families::log2_exact;
use crate::json::int_to_value;
use crate::matrix::{Matrix, RationalMatrix};
use crate::rootdata::{pair_integral, Character};

pub const DEFAULT_TRIALS: usize = 8;
pub const DEFAULT_SEED: u64 = 0;

/// Generic order of a function along a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TOrderResult {
    /// `None` stands for `+infinity`; only possible when some trials vanish.
    pub order: Option<i64>,
    pub trials: usize,
    /// Every trial produced the same finite order.
    pub stable: bool,
    pub per_trial: Vec<Option<i64>>,
}

/// `min` over seeded translates `g . curve(t)` of `ord_t f`.
pub fn t_order(
    real: &MatrixRealization,
    f: &SemiInvariantSpec,
    curve_label: &str,
    trials: usize,
    seed: u64,
) -> Result<TOrderResult> {
    let curve = real.curve(curve_label)?;
    if trials == 0 {
        return Err(Error::Oracle("t_order needs at least one trial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_trial: Vec<Option<i64>> = (0..trials)
        .map(|_| {
            let g = real.action.sample_group(&mut rng);
            f.kind.evaluate(&real.action.act(&g, &curve.point)).order()
        })
        .collect();
    let order = per_trial.iter().flatten().min().copied();
    if order.is_none() {
        return Err(Error::Oracle(format!(
            "`{}` vanishes identically on every translate of `{curve_label}`",
            f.name
        )));
    }
    let stable = per_trial.iter().all(|o| *o == order);
    Ok(TOrderResult {
        order,
        trials,
        stable,
        per_trial,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitSignature {
    pub limit_point: Point,
    pub rank_profile: Vec<usize>,
}

/// `lim_{t -> 0}` of a curve, or `NoLimit` when a negative power survives.
pub fn limit_signature(real: &MatrixRealization, curve_label: &str) -> Result<LimitSignature> {
    let curve = real.curve(curve_label)?;
    let mut limit_point = Vec::new();
    for (block, m) in curve.point.iter().enumerate() {
        if m.entries().iter().any(|p| p.has_negative_powers()) {
            return Err(Error::NoLimit {
                curve: curve_label.to_string(),
                block,
            });
        }
        limit_point.push(m.map(|p| p.value_at_zero().expect("no negative powers")));
    }
    let rank_profile = limit_point.iter().map(RationalMatrix::rank).collect();
    Ok(LimitSignature {
        limit_point,
        rank_profile,
    })
}

/// Dimension of the orbit through the base point.
pub fn orbit_dimension(real: &MatrixRealization, seed: u64) -> usize {
    orbit_dimension_at(real, &real.base_point, seed)
}

/// Rank of the infinitesimal action at a seeded translate of `point`. The
/// orbit dimension is the same at every point of the orbit; translating
/// keeps the check from leaning on the special shape of `point`.
pub fn orbit_dimension_at(real: &MatrixRealization, point: &[RationalMatrix], seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = real.action.sample_group(&mut rng);
    let x = real.action.act(&g, point);
    let rows: Vec<Vec<BigRational>> = real
        .action
        .lie_basis()
        .iter()
        .map(|xi| {
            real.action
                .tangent(xi, &x)
                .iter()
                .flat_map(|m| m.entries().to_vec())
                .collect()
        })
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    Matrix::from_rows(&rows, cols).rank()
}

/// Sampled points for weight detection, shared by every function tested on
/// one realization: a generic point `x0`, its translates by torus elements
/// dual to the lattice basis, and pairs `(x, b . x)` for Borel elements `b`.
pub struct WeightProbe {
    x0: Point,
    torus_translates: Vec<Point>,
    borel_pairs: Vec<(Point, Point, GroupElement)>,
}

impl WeightProbe {
    pub fn new(real: &MatrixRealization, trials: usize, seed: u64) -> Result<Self> {
        let lattice = real
            .lattice
            .as_ref()
            .ok_or_else(|| Error::Oracle(format!("{} has no weight lattice", real.family)))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let generic = |rng: &mut ChaCha8Rng| {
            let g = real.action.sample_group(rng);
            real.action.act(&g, &real.base_point)
        };
        let x0 = generic(&mut rng);
        let two = BigRational::from_integer(2.into());
        let torus_translates = (0..lattice.rank())
            .map(|k| {
                let t = real.action.dual_torus_element(k, &two).ok_or_else(|| {
                    Error::Oracle(format!("no torus element dual to `{}`", lattice.labels()[k]))
                })?;
                Ok(real.action.act(&t, &x0))
            })
            .collect::<Result<Vec<_>>>()?;
        let borel_pairs = (0..trials)
            .map(|_| {
                let x = generic(&mut rng);
                let b = real.action.sample_borel(&mut rng);
                let moved = real.action.act(&b, &x);
                (x, moved, b)
            })
            .collect();
        Ok(WeightProbe {
            x0,
            torus_translates,
            borel_pairs,
        })
    }

    /// Weight of `f` read off from the torus translates, then confirmed as
    /// `f(b . x) = chi(b) f(x)` on every Borel pair.
    pub fn detect(&self, real: &MatrixRealization, f: &SemiInvariantSpec) -> Result<Character> {
        let lattice = real
            .lattice
            .clone()
            .ok_or_else(|| Error::Oracle(format!("{} has no weight lattice", real.family)))?;
        let two = BigRational::from_integer(2.into());
        let v0: BigRational = f.kind.evaluate(&self.x0);
        if v0.is_zero() {
            return Err(Error::Oracle(format!("`{}` vanishes on the open orbit", f.name)));
        }
        let mut coords = Vec::with_capacity(lattice.rank());
        for x in &self.torus_translates {
            let ratio = f.kind.evaluate(x) / &v0;
            let e = log2_exact(&ratio, &two)
                .map_err(|_| Error::Oracle(format!("`{}` is not a torus eigenfunction", f.name)))?;
            coords.push(BigInt::from(e));
        }
        let weight = Character::new(lattice, coords)?;
        for (x, moved, b) in &self.borel_pairs {
            let before: BigRational = f.kind.evaluate(x);
            let after: BigRational = f.kind.evaluate(moved);
            if after != real.action.torus_character(weight.coords(), b) * before {
                return Err(Error::Oracle(format!("`{}` is not semi-invariant", f.name)));
            }
        }
        Ok(weight)
    }
}

/// Reads off the weight of `f` from torus elements dual to the lattice
/// basis, then confirms `f(b . x) = chi(b) f(x)` on seeded Borel elements
/// `b` and generic points `x`.
pub fn detect_weight(real: &MatrixRealization, f: &SemiInvariantSpec, trials: usize, seed: u64) -> Result<Character> {
    WeightProbe::new(real, trials, seed)?.detect(real, f)
}

/// Confirms the claimed weight of `f` and returns it.
pub fn semiinvariance_check(
    real: &MatrixRealization,
    f: &SemiInvariantSpec,
    trials: usize,
    seed: u64,
) -> Result<Character> {
    let found = detect_weight(real, f, trials, seed)?;
    if found != f.claimed_weight {
        return Err(Error::Oracle(format!(
            "`{}` has weight {found}, claimed {}",
            f.name, f.claimed_weight
        )));
    }
    Ok(found)
}

/// Whether `element` fixes the base point.
pub fn stabilizer_check(real: &MatrixRealization, element: &GroupElement) -> bool {
    real.action.act(element, &real.base_point) == real.base_point
}

/// One comparison between a model value and an oracle value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub inputs: Value,
    pub model_value: Value,
    pub oracle_value: Value,
    #[serde(rename = "match")]
    pub matches: bool,
    pub trials: usize,
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub family: String,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

impl OracleReport {
    pub fn new(family: impl Into<String>, checks: Vec<CheckRecord>) -> Self {
        let passed = checks.iter().all(|c| c.matches && c.stable);
        OracleReport {
            family: family.into(),
            passed,
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !(c.matches && c.stable))
    }

    /// Some record disagreed between trials.
    pub fn is_unstable(&self) -> bool {
        self.checks.iter().any(|c| !c.stable)
    }

    pub fn extend(&mut self, other: OracleReport) {
        self.checks.extend(other.checks);
        self.passed = self.passed && other.passed;
    }
}

/// For every boundary of the model and every semi-invariant: the model's
/// pairing of the weight with the boundary valuation against the generic
/// order along the curve attached to the boundary. Each semi-invariant's
/// weight is confirmed first.
pub fn verify_boundary_valuations(
    model: &SphericalDivisorModel,
    real: &MatrixRealization,
    semi_invariants: &[SemiInvariantSpec],
    trials: usize,
    seed: u64,
) -> Result<OracleReport> {
    let mut checks = Vec::new();
    let mut confirmed = Vec::new();
    let probe = WeightProbe::new(real, trials, seed)?;
    for f in semi_invariants {
        let found = probe.detect(real, f);
        let oracle_value = match &found {
            Ok(w) => Value::String(w.to_string()),
            Err(e) => Value::String(e.to_string()),
        };
        let matches = found.as_ref().is_ok_and(|w| *w == f.claimed_weight);
        checks.push(CheckRecord {
            check: "semi_invariance".into(),
            inputs: json!({ "semi_invariant": f.name }),
            model_value: Value::String(f.claimed_weight.to_string()),
            oracle_value,
            matches,
            trials,
            stable: true,
        });
        if matches {
            confirmed.push(f);
        }
    }
    for boundary in model.boundaries() {
        let curve = real.curve_for_boundary(&boundary.id).ok_or_else(|| {
            Error::Oracle(format!("{} has no curve for boundary `{}`", real.family, boundary.id))
        })?;
        for f in &confirmed {
            let model_value = pair_integral(&f.claimed_weight, &boundary.valuation)?;
            let t = t_order(real, f, &curve.label, trials, seed)?;
            let oracle = t.order.expect("t_order reports a finite minimum");
            checks.push(CheckRecord {
                check: "boundary_valuation".into(),
                inputs: json!({
                    "boundary": boundary.id,
                    "curve": curve.label,
                    "semi_invariant": f.name,
                    "weight": f.claimed_weight.to_string(),
                }),
                model_value: int_to_value(&model_value),
                oracle_value: json!(oracle),
                matches: model_value == BigInt::from(oracle),
                trials,
                stable: t.stable,
            });
        }
    }
    Ok(OracleReport::new(model.name(), checks))
}

/// Identity, sampled stabilizer elements (must fix the base point) and
/// sampled elements breaking a shared block (must move it).
pub fn verify_stabilizer(real: &MatrixRealization, trials: usize, seed: u64) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let record = |what: &str, expected: bool, found: bool| CheckRecord {
        check: "stabilizer".into(),
        inputs: json!({ "element": what }),
        model_value: json!(expected),
        oracle_value: json!(found),
        matches: expected == found,
        trials: 1,
        stable: true,
    };
    let identity = GroupElement::identity(&real.action.factor_sizes());
    let mut checks = vec![record("identity", true, stabilizer_check(real, &identity))];
    for _ in 0..trials {
        if let Some(g) = real.sample_stabilizer(&mut rng, false) {
            checks.push(record("stabilizer_sample", true, stabilizer_check(real, &g)));
        }
        if let Some(g) = real.sample_stabilizer(&mut rng, true) {
            checks.push(record("broken_block_sample", false, stabilizer_check(real, &g)));
        }
    }
    OracleReport::new(real.family.clone(), checks)
}

#[cfg(test)]
mod tests;
