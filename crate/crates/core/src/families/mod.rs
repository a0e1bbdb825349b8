//! Divisor models and matrix realizations of the example families.
//!
//! Family specifiers: `monoid:m=<int>`, `circular:m=,n=,r=,s=`,
//! `determinantal:m,n,r`, `complexes:l,m,n,r,s` and the synthetic
//! `wonderful:k=,l=`. Values may be given by key or by position.

mod circular;
mod complexes;
mod determinantal;
mod monoid;
pub mod realization;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::oracle;
use crate::rootdata::{Character, TorusLattice};

pub use circular::{circular_complexes_model, CircularParams};
pub use complexes::complexes_realization;
pub use determinantal::{determinantal_model, determinantal_realization, DeterminantalEvidence};
pub use monoid::monoid_model;
pub use realization::{
    Action, CocharacterCurve, GroupElement, MatrixRealization, SemiInvariantKind, SemiInvariantSpec,
};

// Seed and trial count used when constructors consult the oracle.
pub(crate) const CONSTRUCTION_SEED: u64 = 0x5eed_0f_c0de;
pub(crate) const CONSTRUCTION_TRIALS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Monoid { m: usize },
    Circular { m: usize, n: usize, r: usize, s: usize },
    Determinantal { m: usize, n: usize, r: usize },
    Complexes { l: usize, m: usize, n: usize, r: usize, s: usize },
    Wonderful { k: usize, l: usize },
}

impl FamilySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::Monoid { .. } => "monoid",
            FamilySpec::Circular { .. } => "circular",
            FamilySpec::Determinantal { .. } => "determinantal",
            FamilySpec::Complexes { .. } => "complexes",
            FamilySpec::Wonderful { .. } => "wonderful",
        }
    }

    /// Parameter names in positional order.
    fn keys(kind: &str) -> Option<&'static [&'static str]> {
        Some(match kind {
            "monoid" => &["m"],
            "circular" => &["m", "n", "r", "s"],
            "determinantal" => &["m", "n", "r"],
            "complexes" => &["l", "m", "n", "r", "s"],
            "wonderful" => &["k", "l"],
            _ => return None,
        })
    }

    pub fn params(&self) -> Vec<(&'static str, usize)> {
        let keys = FamilySpec::keys(self.kind()).unwrap();
        let values: Vec<usize> = match *self {
            FamilySpec::Monoid { m } => vec![m],
            FamilySpec::Circular { m, n, r, s } => vec![m, n, r, s],
            FamilySpec::Determinantal { m, n, r } => vec![m, n, r],
            FamilySpec::Complexes { l, m, n, r, s } => vec![l, m, n, r, s],
            FamilySpec::Wonderful { k, l } => vec![k, l],
        };
        keys.iter().copied().zip(values).collect()
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let kind = kind.trim();
        let keys = FamilySpec::keys(kind).ok_or_else(|| Error::Parse(format!("unknown family `{kind}`")))?;
        let items: Vec<&str> = rest.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let mut values: Vec<Option<usize>> = vec![None; keys.len()];
        let keyed = items.iter().filter(|i| i.contains('=')).count();
        if keyed != 0 && keyed != items.len() {
            return Err(Error::Parse(format!("mixed keyed and positional parameters in `{spec}`")));
        }
        if items.len() != keys.len() {
            return Err(Error::Parse(format!(
                "family `{kind}` takes {} parameters ({}), got {}",
                keys.len(),
                keys.join(","),
                items.len()
            )));
        }
        let parse_value = |text: &str| -> Result<usize> {
            let v: i64 = text
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("`{text}` is not an integer")))?;
            usize::try_from(v).map_err(|_| Error::InvalidParameters(format!("negative parameter {v}")))
        };
        for (pos, item) in items.iter().enumerate() {
            let (idx, text) = match item.split_once('=') {
                Some((k, v)) => {
                    let idx = keys
                        .iter()
                        .position(|key| *key == k.trim())
                        .ok_or_else(|| Error::Parse(format!("unknown parameter `{}` for `{kind}`", k.trim())))?;
                    (idx, v)
                }
                None => (pos, *item),
            };
            if values[idx].replace(parse_value(text)?).is_some() {
                return Err(Error::Parse(format!("parameter `{}` given twice", keys[idx])));
            }
        }
        let v: Vec<usize> = values.into_iter().map(|v| v.unwrap()).collect();
        Ok(match kind {
            "monoid" => FamilySpec::Monoid { m: v[0] },
            "circular" => FamilySpec::Circular { m: v[0], n: v[1], r: v[2], s: v[3] },
            "determinantal" => FamilySpec::Determinantal { m: v[0], n: v[1], r: v[2] },
            "complexes" => FamilySpec::Complexes { l: v[0], m: v[1], n: v[2], r: v[3], s: v[4] },
            _ => FamilySpec::Wonderful { k: v[0], l: v[1] },
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}:{}", self.kind(), params.join(","))
    }
}

/// Exponents `<chi_k, lambda>` of a torus element `lambda(2)` on every
/// basis character, read off through the realization's character formula.
pub(crate) fn torus_pairings(action: &Action, lattice: &TorusLattice, g: &GroupElement) -> Result<Vec<i64>> {
    let two = BigRational::from_integer(2.into());
    (0..lattice.rank())
        .map(|k| {
            let mut chi = vec![BigInt::zero(); lattice.rank()];
            chi[k] = BigInt::one();
            log2_exact(&action.torus_character(&chi, g), &two)
        })
        .collect()
}

pub(crate) fn log2_exact(x: &BigRational, two: &BigRational) -> Result<i64> {
    let (mut v, mut e) = (x.clone(), 0i64);
    if v.is_zero() {
        return Err(Error::Oracle("torus character vanished".into()));
    }
    while v.numer().abs() > v.denom().clone() && e < 4096 {
        v /= two;
        e += 1;
    }
    while v.numer().abs() < v.denom().clone() && e > -4096 {
        v *= two;
        e -= 1;
    }
    if v.is_one() {
        Ok(e)
    } else {
        Err(Error::Oracle(format!("{x} is not a power of 2")))
    }
}

pub(crate) fn transcription_error(family: &str, what: String) -> Error {
    Error::InvalidModel(format!("{family}: transcription cross-check failed: {what}"))
}

/// Keeps the minors that the oracle confirms as semi-invariants and that do
/// not vanish on the open orbit; their weights are the detected ones.
pub(crate) fn discover_minors(real: &MatrixRealization) -> Result<Vec<SemiInvariantSpec>> {
    let lattice = real
        .lattice
        .clone()
        .ok_or_else(|| Error::Oracle("semi-invariants need a weight lattice".into()))?;
    let names = real.action.block_names();
    let probe = oracle::WeightProbe::new(real, CONSTRUCTION_TRIALS, CONSTRUCTION_SEED)?;
    let mut seen: Vec<SemiInvariantKind> = Vec::new();
    let mut out = Vec::new();
    for (block, &shape) in real.ambient_shape().iter().enumerate() {
        for lead in [true, false] {
            for k in 1..=shape.0.min(shape.1) {
                let kind = if lead {
                    SemiInvariantKind::leading_minor(block, k)
                } else {
                    SemiInvariantKind::trailing_minor(block, shape, k)
                };
                if seen.contains(&kind) {
                    continue;
                }
                seen.push(kind.clone());
                let name = if block == 0 && lead {
                    format!("Delta_{k}")
                } else {
                    format!("{}_{}_{k}", names[block], if lead { "lead" } else { "trail" })
                };
                let candidate = SemiInvariantSpec {
                    name,
                    kind,
                    claimed_weight: Character::zero(&lattice),
                };
                if let Ok(weight) = probe.detect(real, &candidate) {
                    out.push(SemiInvariantSpec {
                        claimed_weight: weight,
                        ..candidate
                    });
                }
            }
        }
    }
    Ok(out)
}

pub(crate) fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("small exponent")
}

#[cfg(test)]
mod tests;
