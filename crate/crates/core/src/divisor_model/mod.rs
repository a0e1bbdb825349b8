//! Divisors of semi-invariants, class groups, canonical divisors.
//!
//! A [`SphericalDivisorModel`] stores, for every `B`-stable prime divisor,
//! the functional on the weight lattice that gives its coefficient in the
//! divisor of a semi-invariant of weight `chi`. Colors carry composed coroot
//! functionals, boundary divisors carry their valuation images.
//!
//! Matrix conventions: labels are ordered boundaries first, then colors, each
//! in model order. The relation matrix has one row per basis character.

mod class_group;
mod io;
mod wonderful;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{smith_normal_form, solve_integer};
use crate::matrix::IntegerMatrix;
use crate::rootdata::{
    antidominance_violations, pair_integral, split_top_level, write_combination, Character,
    CovectorFunctional, SimpleRootSet, TorusLattice,
};

pub use class_group::{class_group, class_of, ClassCoordinates, ClassGroup};
pub use io::{model_from_json, model_to_json, ModelDocument};
pub use wonderful::{wonderful_section_divisor, WonderfulModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum DivisorKind {
    Boundary,
    Color,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorLabel {
    pub kind: DivisorKind,
    pub id: String,
}

impl DivisorLabel {
    pub fn boundary(id: impl Into<String>) -> Self {
        DivisorLabel {
            kind: DivisorKind::Boundary,
            id: id.into(),
        }
    }

    pub fn color(id: impl Into<String>) -> Self {
        DivisorLabel {
            kind: DivisorKind::Color,
            id: id.into(),
        }
    }
}

impl fmt::Display for DivisorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

/// A formal integer combination of prime divisors. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    coefficients: BTreeMap<DivisorLabel, BigInt>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (DivisorLabel, BigInt)>) -> Self {
        let mut d = Divisor::zero();
        for (label, c) in terms {
            d.add_term(label, c);
        }
        d
    }

    pub fn single(label: DivisorLabel) -> Self {
        Divisor::from_terms([(label, BigInt::one())])
    }

    pub fn add_term(&mut self, label: DivisorLabel, c: BigInt) {
        let entry = self.coefficients.entry(label.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coefficients.remove(&label);
        }
    }

    pub fn coefficient(&self, label: &DivisorLabel) -> BigInt {
        self.coefficients.get(label).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DivisorLabel, &BigInt)> {
        self.coefficients.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (l, c) in other.terms() {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Divisor {
        Divisor::from_terms(self.terms().map(|(l, c)| (l.clone(), c * k)))
    }

    pub fn neg(&self) -> Divisor {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.neg())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, BigInt)> = self
            .coefficients
            .iter()
            .map(|(l, c)| (l.id.clone(), c.clone()))
            .collect();
        write_combination(f, &terms)
    }
}

/// A color with its composed functional and canonical coefficient. Merged
/// colors keep one id and list the other names as aliases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorSpec {
    pub id: String,
    pub aliases: Vec<String>,
    pub functional: CovectorFunctional,
    pub canonical_coefficient: BigInt,
}

impl ColorSpec {
    pub fn new(id: impl Into<String>, functional: CovectorFunctional, canonical_coefficient: i64) -> Self {
        ColorSpec {
            id: id.into(),
            aliases: Vec::new(),
            functional,
            canonical_coefficient: canonical_coefficient.into(),
        }
    }

    pub fn label(&self) -> DivisorLabel {
        DivisorLabel::color(self.id.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundarySpec {
    pub id: String,
    pub valuation: CovectorFunctional,
}

impl BoundarySpec {
    pub fn new(id: impl Into<String>, valuation: CovectorFunctional) -> Self {
        BoundarySpec {
            id: id.into(),
            valuation,
        }
    }

    pub fn label(&self) -> DivisorLabel {
        DivisorLabel::boundary(self.id.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalDivisorModel {
    name: String,
    lattice: Arc<TorusLattice>,
    basis_characters: Vec<Character>,
    simple_roots: SimpleRootSet,
    colors: Vec<ColorSpec>,
    boundaries: Vec<BoundarySpec>,
    provisional: Option<String>,
}

impl SphericalDivisorModel {
    /// Assembles a model without validating it; see [`validate_model`].
    pub fn new(
        name: impl Into<String>,
        lattice: Arc<TorusLattice>,
        basis_characters: Vec<Character>,
        simple_roots: SimpleRootSet,
        colors: Vec<ColorSpec>,
        boundaries: Vec<BoundarySpec>,
    ) -> Self {
        SphericalDivisorModel {
            name: name.into(),
            lattice,
            basis_characters,
            simple_roots,
            colors,
            boundaries,
            provisional: None,
        }
    }

    /// Marks the model as incomplete. Class computations then fail with
    /// [`Error::ProvisionalModel`] until a complete model replaces it.
    pub fn into_provisional(mut self, reason: impl Into<String>) -> Self {
        self.provisional = Some(reason.into());
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &Arc<TorusLattice> {
        &self.lattice
    }

    pub fn basis_characters(&self) -> &[Character] {
        &self.basis_characters
    }

    pub fn simple_roots(&self) -> &SimpleRootSet {
        &self.simple_roots
    }

    pub fn colors(&self) -> &[ColorSpec] {
        &self.colors
    }

    pub fn boundaries(&self) -> &[BoundarySpec] {
        &self.boundaries
    }

    pub fn provisional_reason(&self) -> Option<&str> {
        self.provisional.as_deref()
    }

    pub fn is_provisional(&self) -> bool {
        self.provisional.is_some()
    }

    pub(crate) fn require_final(&self) -> Result<()> {
        match &self.provisional {
            Some(reason) => Err(Error::ProvisionalModel(reason.clone())),
            None => Ok(()),
        }
    }

    /// Boundaries first, then colors.
    pub fn labels(&self) -> Vec<DivisorLabel> {
        self.boundaries
            .iter()
            .map(BoundarySpec::label)
            .chain(self.colors.iter().map(ColorSpec::label))
            .collect()
    }

    /// Resolves an id or alias to its label.
    pub fn resolve(&self, name: &str) -> Result<DivisorLabel> {
        if let Some(b) = self.boundaries.iter().find(|b| b.id == name) {
            return Ok(b.label());
        }
        self.colors
            .iter()
            .find(|c| c.id == name || c.aliases.iter().any(|a| a == name))
            .map(ColorSpec::label)
            .ok_or_else(|| Error::ForeignLabel(name.to_string()))
    }

    /// Parses a sparse `label:coef,...` list; aliases fold onto their color.
    pub fn parse_divisor(&self, spec: &str) -> Result<Divisor> {
        let mut d = Divisor::zero();
        for item in split_top_level(spec) {
            let (label, coef) = item
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `label:coefficient`, got `{item}`")))?;
            let c: BigInt = coef
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid coefficient `{coef}`")))?;
            d.add_term(self.resolve(label.trim())?, c);
        }
        Ok(d)
    }

    pub fn check_divisor(&self, d: &Divisor) -> Result<()> {
        let labels = self.labels();
        match d.terms().find(|(l, _)| !labels.contains(l)) {
            Some((l, _)) => Err(Error::ForeignLabel(l.id.clone())),
            None => Ok(()),
        }
    }

    /// Coefficients of `d` in label order.
    pub fn divisor_vector(&self, d: &Divisor) -> Result<Vec<BigInt>> {
        self.check_divisor(d)?;
        Ok(self.labels().iter().map(|l| d.coefficient(l)).collect())
    }

    pub fn divisor_from_vector(&self, v: &[BigInt]) -> Divisor {
        Divisor::from_terms(self.labels().into_iter().zip(v.iter().cloned()))
    }

    /// Relation matrix: row `i` is the divisor of basis character `i`.
    pub fn relation_matrix(&self) -> Result<IntegerMatrix> {
        let labels = self.labels();
        let mut rows = Vec::with_capacity(self.basis_characters.len());
        for b in &self.basis_characters {
            let d = principal_divisor(self, b)?;
            rows.push(labels.iter().map(|l| d.coefficient(l)).collect::<Vec<_>>());
        }
        Ok(IntegerMatrix::from_rows(&rows, labels.len()))
    }

    /// The sum of all boundary divisors.
    pub fn boundary_sum(&self) -> Divisor {
        Divisor::from_terms(self.boundaries.iter().map(|b| (b.label(), BigInt::one())))
    }
}

/// `(chi) = sum <chi, phi_D> D + sum <chi, nu_X> X`.
pub fn principal_divisor(model: &SphericalDivisorModel, chi: &Character) -> Result<Divisor> {
    let mut d = Divisor::zero();
    for b in &model.boundaries {
        d.add_term(b.label(), pair_integral(chi, &b.valuation)?);
    }
    for c in &model.colors {
        d.add_term(c.label(), pair_integral(chi, &c.functional)?);
    }
    Ok(d)
}

/// `-1` on every boundary plus the canonical coefficient on every color.
pub fn canonical_divisor(model: &SphericalDivisorModel) -> Result<Divisor> {
    model.require_final()?;
    let mut d = Divisor::zero();
    for b in &model.boundaries {
        d.add_term(b.label(), BigInt::from(-1));
    }
    for c in &model.colors {
        d.add_term(c.label(), c.canonical_coefficient.clone());
    }
    Ok(d)
}

/// Some character `chi` with `(chi) = d`, if one exists.
pub fn is_principal(model: &SphericalDivisorModel, d: &Divisor) -> Result<Option<Character>> {
    model.require_final()?;
    let target = model.divisor_vector(d)?;
    let columns = model.relation_matrix()?.transpose();
    let Some(x) = solve_integer(&columns, &target)? else {
        return Ok(None);
    };
    let mut witness = Character::zero(&model.lattice);
    for (b, k) in model.basis_characters.iter().zip(&x) {
        witness = witness.add(&b.scale(k))?;
    }
    Ok(Some(witness))
}

/// Whether the canonical class is trivial in the class group.
pub fn is_gorenstein(model: &SphericalDivisorModel) -> Result<bool> {
    Ok(gorenstein_witness(model)?.is_some())
}

/// A character whose divisor is the canonical divisor, if any.
pub fn gorenstein_witness(model: &SphericalDivisorModel) -> Result<Option<Character>> {
    is_principal(model, &canonical_divisor(model)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValidationCheck {
    LabelsUnique,
    SameLattice,
    BasisGenerates,
    FunctionalsIntegral,
    BoundaryAntidominant,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ValidationFailure {
    pub check: ValidationCheck,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn has_failure(&self, check: ValidationCheck) -> bool {
        self.failures.iter().any(|f| f.check == check)
    }

    fn fail(&mut self, check: ValidationCheck, detail: String) {
        self.failures.push(ValidationFailure { check, detail });
    }
}

pub fn validate_model(model: &SphericalDivisorModel) -> ValidationReport {
    use ValidationCheck::*;
    let mut report = ValidationReport::default();
    let lattice = &model.lattice;

    let mut seen: Vec<&str> = Vec::new();
    let names = model
        .boundaries
        .iter()
        .map(|b| b.id.as_str())
        .chain(model.colors.iter().flat_map(|c| {
            std::iter::once(c.id.as_str()).chain(c.aliases.iter().map(String::as_str))
        }));
    for name in names {
        if seen.contains(&name) {
            report.fail(LabelsUnique, format!("label `{name}` occurs more than once"));
        }
        seen.push(name);
    }

    let mut lattice_ok = true;
    let mut check_lattice = |what: String, other: &Arc<TorusLattice>| {
        if other != lattice {
            lattice_ok = false;
            report.fail(SameLattice, format!("{what} lives on a different lattice"));
        }
    };
    for (i, b) in model.basis_characters.iter().enumerate() {
        check_lattice(format!("basis character {i}"), b.lattice());
    }
    if model.simple_roots.lattice() != lattice {
        check_lattice("simple roots".into(), model.simple_roots.lattice());
    }
    for c in &model.colors {
        check_lattice(format!("color `{}`", c.id), c.functional.lattice());
    }
    for b in &model.boundaries {
        check_lattice(format!("boundary `{}`", b.id), b.valuation.lattice());
    }
    if !lattice_ok {
        return report;
    }

    let rows: Vec<Vec<BigInt>> = model.basis_characters.iter().map(|c| c.coords().to_vec()).collect();
    let snf = smith_normal_form(&IntegerMatrix::from_rows(&rows, lattice.rank()));
    let diag = snf.diagonal();
    if diag.len() != lattice.rank() || diag.iter().any(|d| !d.is_one()) {
        report.fail(
            BasisGenerates,
            format!(
                "basis characters span a sublattice with elementary divisors {:?} (rank {} of {})",
                diag.iter().map(ToString::to_string).collect::<Vec<_>>(),
                diag.len(),
                lattice.rank()
            ),
        );
    }

    for c in &model.colors {
        if !c.functional.is_integral() {
            report.fail(FunctionalsIntegral, format!("color `{}` has functional {}", c.id, c.functional));
        }
    }
    for b in &model.boundaries {
        if !b.valuation.is_integral() {
            report.fail(FunctionalsIntegral, format!("boundary `{}` has valuation {}", b.id, b.valuation));
        }
        match antidominance_violations(&b.valuation, &model.simple_roots) {
            Ok(v) if v.is_empty() => {}
            Ok(v) => {
                let roots: Vec<String> = v
                    .iter()
                    .map(|(root, p)| format!("<{root}, {}> = {}", b.id, crate::lattice::format_rational(p)))
                    .collect();
                report.fail(BoundaryAntidominant, roots.join(", "));
            }
            Err(e) => report.fail(BoundaryAntidominant, e.to_string()),
        }
    }
    report
}

#[cfg(test)]
mod tests;
