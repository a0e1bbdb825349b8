use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{BoundarySpec, ColorSpec, SphericalDivisorModel};
use crate::error::{Error, Result};
use crate::rootdata::{Character, CovectorFunctional, SimpleRootSet, TorusLattice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    #[serde(default)]
    pub name: String,
    pub lattice: LatticeDocument,
    pub basis_characters: Vec<IntVector>,
    pub simple_roots: Vec<RootDocument>,
    pub colors: Vec<ColorDocument>,
    pub boundaries: Vec<BoundaryDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provisional: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDocument {
    pub rank: usize,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVector(#[serde(with = "crate::json::big_ints")] pub Vec<BigInt>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalVector(#[serde(with = "crate::json::rationals")] pub Vec<BigRational>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDocument {
    pub id: String,
    pub root: IntVector,
    pub coroot: RationalVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColorDocument {
    pub id: String,
    pub functional: RationalVector,
    #[serde(with = "crate::json::big_int")]
    pub canonical_coefficient: BigInt,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryDocument {
    pub id: String,
    pub valuation: RationalVector,
}

impl ModelDocument {
    pub fn from_model(model: &SphericalDivisorModel) -> Self {
        let functional = |f: &CovectorFunctional| RationalVector(f.coords().to_vec());
        ModelDocument {
            name: model.name.clone(),
            lattice: LatticeDocument {
                rank: model.lattice.rank(),
                labels: model.lattice.labels().to_vec(),
            },
            basis_characters: model
                .basis_characters
                .iter()
                .map(|c| IntVector(c.coords().to_vec()))
                .collect(),
            simple_roots: model
                .simple_roots
                .roots()
                .iter()
                .zip(model.simple_roots.coroots())
                .map(|((id, root), (_, coroot))| RootDocument {
                    id: id.clone(),
                    root: IntVector(root.coords().to_vec()),
                    coroot: functional(coroot),
                })
                .collect(),
            colors: model
                .colors
                .iter()
                .map(|c| ColorDocument {
                    id: c.id.clone(),
                    functional: functional(&c.functional),
                    canonical_coefficient: c.canonical_coefficient.clone(),
                    aliases: c.aliases.clone(),
                })
                .collect(),
            boundaries: model
                .boundaries
                .iter()
                .map(|b| BoundaryDocument {
                    id: b.id.clone(),
                    valuation: functional(&b.valuation),
                })
                .collect(),
            provisional: model.provisional.clone(),
        }
    }

    pub fn into_model(self) -> Result<SphericalDivisorModel> {
        if self.lattice.rank != self.lattice.labels.len() {
            return Err(Error::InvalidModel(format!(
                "lattice rank {} does not match {} labels",
                self.lattice.rank,
                self.lattice.labels.len()
            )));
        }
        let lattice = TorusLattice::new(self.lattice.labels)?;
        let basis = self
            .basis_characters
            .into_iter()
            .map(|v| Character::new(lattice.clone(), v.0))
            .collect::<Result<Vec<_>>>()?;
        let roots = self
            .simple_roots
            .into_iter()
            .map(|r| {
                Ok((
                    r.id,
                    Character::new(lattice.clone(), r.root.0)?,
                    CovectorFunctional::new(lattice.clone(), r.coroot.0)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let simple_roots = SimpleRootSet::new(lattice.clone(), roots)?;
        let colors = self
            .colors
            .into_iter()
            .map(|c| {
                Ok(ColorSpec {
                    id: c.id,
                    aliases: c.aliases,
                    functional: CovectorFunctional::new(lattice.clone(), c.functional.0)?,
                    canonical_coefficient: c.canonical_coefficient,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let boundaries = self
            .boundaries
            .into_iter()
            .map(|b| Ok(BoundarySpec::new(b.id, CovectorFunctional::new(lattice.clone(), b.valuation.0)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut model = SphericalDivisorModel::new(self.name, lattice, basis, simple_roots, colors, boundaries);
        model.provisional = self.provisional;
        Ok(model)
    }
}

pub fn model_to_json(model: &SphericalDivisorModel) -> String {
    serde_json::to_string_pretty(&ModelDocument::from_model(model)).expect("model documents serialize")
}

pub fn model_from_json(text: &str) -> Result<SphericalDivisorModel> {
    let doc: ModelDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.into_model()
}
