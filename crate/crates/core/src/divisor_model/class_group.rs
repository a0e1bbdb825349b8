use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{Divisor, DivisorKind, DivisorLabel, SphericalDivisorModel};
use crate::error::Result;
use crate::lattice::{cokernel_from_smith, smith_normal_form, solve_integer, AbelianGroupPresentation, SmithDecomposition};
use crate::matrix::IntegerMatrix;

// Bound on generator subsets tried before falling back to Smith coordinates.
const SUBSET_BUDGET: usize = 20_000;

/// Class group together with the data needed to compute classes.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub presentation: AbelianGroupPresentation,
    /// Names of the free generators. Prime divisor ids when a named basis
    /// exists, otherwise `g_1, g_2, ...` for Smith coordinates.
    pub generators: Vec<String>,
    labels: Vec<DivisorLabel>,
    coordinates: Coordinates,
}

#[derive(Clone, Debug)]
enum Coordinates {
    /// The classes of `free` form a basis; the remaining labels are
    /// eliminated through `complement_columns` (transposed relation columns).
    Named {
        free: Vec<usize>,
        complement: Vec<usize>,
        complement_columns: IntegerMatrix,
        relations: IntegerMatrix,
    },
    Smith { snf: SmithDecomposition },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClassCoordinates {
    #[serde(with = "crate::json::big_ints")]
    pub free: Vec<BigInt>,
    /// Residues modulo the invariant factors, in `[0, d)`.
    #[serde(with = "crate::json::big_ints")]
    pub torsion: Vec<BigInt>,
}

impl ClassCoordinates {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }
}

pub fn class_group(model: &SphericalDivisorModel) -> Result<ClassGroup> {
    model.require_final()?;
    let relations = model.relation_matrix()?;
    let labels = model.labels();
    let snf = smith_normal_form(&relations);
    let presentation = cokernel_from_smith(labels.len(), &snf);

    if presentation.is_free() {
        if let Some((free, complement, complement_columns)) =
            named_basis(&relations, &labels, presentation.free_rank)
        {
            return Ok(ClassGroup {
                presentation,
                generators: free.iter().map(|&i| labels[i].id.clone()).collect(),
                labels,
                coordinates: Coordinates::Named {
                    free,
                    complement,
                    complement_columns,
                    relations,
                },
            });
        }
    }
    Ok(ClassGroup {
        generators: (1..=presentation.free_rank).map(|i| format!("g_{i}")).collect(),
        presentation,
        labels,
        coordinates: Coordinates::Smith { snf },
    })
}

/// First subset of labels (colors in model order, then boundaries) whose
/// classes form a basis of the class group.
fn named_basis(
    relations: &IntegerMatrix,
    labels: &[DivisorLabel],
    free_rank: usize,
) -> Option<(Vec<usize>, Vec<usize>, IntegerMatrix)> {
    let mut order: Vec<usize> = (0..labels.len())
        .filter(|&i| labels[i].kind == DivisorKind::Color)
        .collect();
    order.extend((0..labels.len()).filter(|&i| labels[i].kind == DivisorKind::Boundary));

    let rank = labels.len() - free_rank;
    let mut picks: Vec<usize> = (0..free_rank).collect();
    for _ in 0..SUBSET_BUDGET {
        let free: Vec<usize> = picks.iter().map(|&p| order[p]).collect();
        let complement: Vec<usize> = (0..labels.len()).filter(|i| !free.contains(i)).collect();
        let block = relations.select(&(0..relations.rows()).collect::<Vec<_>>(), &complement);
        let diag = smith_normal_form(&block).diagonal();
        if diag.len() == rank && diag.iter().all(One::is_one) {
            return Some((free, complement, block.transpose()));
        }
        if !next_combination(&mut picks, labels.len()) {
            return None;
        }
    }
    None
}

fn next_combination(picks: &mut [usize], n: usize) -> bool {
    let k = picks.len();
    for i in (0..k).rev() {
        if picks[i] < n - k + i {
            picks[i] += 1;
            for j in i + 1..k {
                picks[j] = picks[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl ClassGroup {
    /// Coordinates of the class of `d`; equal iff the divisors differ by a
    /// principal divisor.
    pub fn class_of_vector(&self, d: &[BigInt]) -> Result<ClassCoordinates> {
        match &self.coordinates {
            Coordinates::Named {
                free,
                complement,
                complement_columns,
                relations,
            } => {
                let rhs: Vec<BigInt> = complement.iter().map(|&i| d[i].clone()).collect();
                let x = solve_integer(complement_columns, &rhs)?
                    .expect("complement block is unimodular onto its image");
                let principal = relations.apply_left(&x);
                Ok(ClassCoordinates {
                    free: free.iter().map(|&i| &d[i] - &principal[i]).collect(),
                    torsion: Vec::new(),
                })
            }
            Coordinates::Smith { snf } => {
                let y = snf.v.apply_left(d);
                let diag = snf.diagonal();
                let mut torsion = Vec::new();
                for (yi, di) in y.iter().zip(&diag) {
                    if !di.is_one() {
                        torsion.push(yi.mod_floor(di));
                    }
                }
                Ok(ClassCoordinates {
                    free: y[diag.len()..].to_vec(),
                    torsion,
                })
            }
        }
    }

    pub fn labels(&self) -> &[DivisorLabel] {
        &self.labels
    }

    /// Whether the free generators are prime divisors of the model.
    pub fn has_named_generators(&self) -> bool {
        matches!(self.coordinates, Coordinates::Named { .. })
    }
}

pub fn class_of(model: &SphericalDivisorModel, d: &Divisor) -> Result<ClassCoordinates> {
    let v = model.divisor_vector(d)?;
    class_group(model)?.class_of_vector(&v)
}
