use std::sync::Arc;

use num_bigint::BigInt;

use super::{Divisor, DivisorLabel};
use crate::error::{Error, Result};
use crate::rootdata::{pair_integral, Character, CovectorFunctional, SimpleRootSet, TorusLattice};

/// Colors of a wonderful compactification with their Picard generators.
///
/// The weight lattice is spanned by fundamental weights, so each coroot is
/// the dual basis functional of its fundamental weight. Paired colors `D_i`
/// read the coroot of the first factor and require both factors to agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WonderfulModel {
    lattice: Arc<TorusLattice>,
    simple_roots: SimpleRootSet,
    paired: Vec<PairedColor>,
    single: Vec<SingleColor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct PairedColor {
    id: String,
    first: CovectorFunctional,
    second: CovectorFunctional,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct SingleColor {
    id: String,
    coroot: CovectorFunctional,
}

impl WonderfulModel {
    /// Two `A_k` chains with weights `w_i_1`, `w_i_2` whose roots pair off
    /// into colors `D_1..D_k`, and `l` orthogonal `A_1` factors with weights
    /// `w_J1..w_Jl` giving colors `D_J1..D_Jl`.
    pub fn synthetic(k: usize, l: usize) -> Result<Self> {
        if k + l == 0 {
            return Err(Error::InvalidParameters("wonderful model needs k + l >= 1".into()));
        }
        let mut labels = Vec::new();
        for side in 1..=2 {
            labels.extend((1..=k).map(|i| format!("w_{i}_{side}")));
        }
        labels.extend((1..=l).map(|j| format!("w_J{j}")));
        let lattice = TorusLattice::new(labels.clone())?;
        let rank = lattice.rank();

        // root a = sum_b <a, b^vee> w_b, read off the Cartan matrix
        let mut entries = Vec::new();
        for (idx, label) in labels.iter().enumerate() {
            let mut root = vec![0i64; rank];
            root[idx] = 2;
            let (block, offset) = if idx < 2 * k { (k, (idx / k.max(1)) * k) } else { (1, idx) };
            if block > 1 {
                let pos = idx - offset;
                if pos > 0 {
                    root[idx - 1] = -1;
                }
                if pos + 1 < block {
                    root[idx + 1] = -1;
                }
            }
            entries.push((
                label.replacen('w', "alpha", 1),
                Character::from_i64(&lattice, &root)?,
                CovectorFunctional::dual(&lattice, label)?,
            ));
        }
        let simple_roots = SimpleRootSet::new(lattice.clone(), entries)?;

        let paired = (1..=k)
            .map(|i| {
                Ok(PairedColor {
                    id: format!("D_{i}"),
                    first: CovectorFunctional::dual(&lattice, &format!("w_{i}_1"))?,
                    second: CovectorFunctional::dual(&lattice, &format!("w_{i}_2"))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let single = (1..=l)
            .map(|j| {
                Ok(SingleColor {
                    id: format!("D_J{j}"),
                    coroot: CovectorFunctional::dual(&lattice, &format!("w_J{j}"))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WonderfulModel {
            lattice,
            simple_roots,
            paired,
            single,
        })
    }

    pub fn lattice(&self) -> &Arc<TorusLattice> {
        &self.lattice
    }

    pub fn simple_roots(&self) -> &SimpleRootSet {
        &self.simple_roots
    }

    pub fn color_labels(&self) -> Vec<DivisorLabel> {
        self.paired
            .iter()
            .map(|c| DivisorLabel::color(c.id.clone()))
            .chain(self.single.iter().map(|c| DivisorLabel::color(c.id.clone())))
            .collect()
    }

    /// Picard generators paired with the color they cut out:
    /// `w_i_1 + w_i_2` for `D_i` and `w_Jj` for `D_Jj`.
    pub fn picard_basis(&self) -> Result<Vec<(DivisorLabel, Character)>> {
        let mut out = Vec::new();
        for (i, c) in self.paired.iter().enumerate() {
            let a = Character::basis(&self.lattice, &format!("w_{}_1", i + 1))?;
            let b = Character::basis(&self.lattice, &format!("w_{}_2", i + 1))?;
            out.push((DivisorLabel::color(c.id.clone()), a.add(&b)?));
        }
        for (j, c) in self.single.iter().enumerate() {
            out.push((
                DivisorLabel::color(c.id.clone()),
                Character::basis(&self.lattice, &format!("w_J{}", j + 1))?,
            ));
        }
        Ok(out)
    }

    pub fn in_picard(&self, chi: &Character) -> Result<bool> {
        for c in &self.paired {
            if pair_integral(chi, &c.first)? != pair_integral(chi, &c.second)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Divisor of the section of weight `chi`, supported on colors.
pub fn wonderful_section_divisor(model: &WonderfulModel, chi: &Character) -> Result<Divisor> {
    let mut d = Divisor::zero();
    for c in &model.paired {
        let a: BigInt = pair_integral(chi, &c.first)?;
        let b: BigInt = pair_integral(chi, &c.second)?;
        if a != b {
            return Err(Error::OutsidePicard(format!(
                "{chi} pairs to {a} and {b} with the two coroots behind `{}`",
                c.id
            )));
        }
        d.add_term(DivisorLabel::color(c.id.clone()), a);
    }
    for c in &model.single {
        d.add_term(DivisorLabel::color(c.id.clone()), pair_integral(chi, &c.coroot)?);
    }
    Ok(d)
}
