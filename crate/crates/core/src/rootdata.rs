//! Character lattices, coroot functionals and antidominance.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{format_rational, RationalVector};

/// A character lattice `X(T)` with named coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusLattice {
    labels: Vec<String>,
}

impl TorusLattice {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidModel(format!("duplicate basis label `{l}`")));
            }
        }
        Ok(Arc::new(TorusLattice { labels }))
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn check_same(&self, other: &TorusLattice) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::LatticeMismatch {
                expected: self.labels.join(","),
                found: other.labels.join(","),
            })
        }
    }

    /// Parses a sparse `label:coef,label:coef` list into a character.
    pub fn parse_character(self: &Arc<Self>, spec: &str) -> Result<Character> {
        let mut coords = vec![BigInt::zero(); self.rank()];
        for item in split_top_level(spec) {
            let (label, coef) = item
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `label:coefficient`, got `{item}`")))?;
            let idx = self
                .index_of(label.trim())
                .ok_or_else(|| Error::UnknownBasisLabel(label.trim().to_string()))?;
            let c: BigInt = coef
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid coefficient `{coef}`")))?;
            coords[idx] += c;
        }
        Character::new(self.clone(), coords)
    }
}

/// Splits a comma separated list, ignoring commas nested inside braces so
/// that labels like `X_{0,1}` survive.
pub fn split_top_level(spec: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in spec.char_indices() {
        match ch {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&spec[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&spec[start..]);
    out.into_iter().map(str::trim).filter(|s| !s.is_empty()).collect()
}

/// An element of `X(T)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Character {
    lattice: Arc<TorusLattice>,
    coords: Vec<BigInt>,
}

impl Character {
    pub fn new(lattice: Arc<TorusLattice>, coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() != lattice.rank() {
            return Err(Error::DimensionMismatch(format!(
                "character has {} coordinates, lattice has rank {}",
                coords.len(),
                lattice.rank()
            )));
        }
        Ok(Character { lattice, coords })
    }

    pub fn from_i64(lattice: &Arc<TorusLattice>, coords: &[i64]) -> Result<Self> {
        Character::new(lattice.clone(), coords.iter().map(|&c| c.into()).collect())
    }

    pub fn zero(lattice: &Arc<TorusLattice>) -> Self {
        Character {
            lattice: lattice.clone(),
            coords: vec![BigInt::zero(); lattice.rank()],
        }
    }

    /// The basis character with the given label.
    pub fn basis(lattice: &Arc<TorusLattice>, label: &str) -> Result<Self> {
        let idx = lattice
            .index_of(label)
            .ok_or_else(|| Error::UnknownBasisLabel(label.to_string()))?;
        let mut c = Character::zero(lattice);
        c.coords[idx] = BigInt::from(1);
        Ok(c)
    }

    pub fn lattice(&self) -> &Arc<TorusLattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        self.lattice.check_same(&other.lattice)?;
        Ok(Character {
            lattice: self.lattice.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> Character {
        Character {
            lattice: self.lattice.clone(),
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub fn neg(&self) -> Character {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, BigInt)> = self
            .lattice
            .labels
            .iter()
            .cloned()
            .zip(self.coords.iter().cloned())
            .collect();
        write_combination(f, &terms)
    }
}

/// Writes `a*x + b*y - ...`, or `0` for an empty combination.
pub(crate) fn write_combination(f: &mut fmt::Formatter<'_>, terms: &[(String, BigInt)]) -> fmt::Result {
    let mut first = true;
    for (label, c) in terms {
        if c.is_zero() {
            continue;
        }
        let abs = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        if abs == BigInt::from(1) {
            write!(f, "{label}")?;
        } else {
            write!(f, "{abs}*{label}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// A rational linear functional on `X(T)`, i.e. an element of `Q (x) Y(T)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CovectorFunctional {
    lattice: Arc<TorusLattice>,
    coords: RationalVector,
}

impl CovectorFunctional {
    pub fn new(lattice: Arc<TorusLattice>, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != lattice.rank() {
            return Err(Error::DimensionMismatch(format!(
                "functional has {} coordinates, lattice has rank {}",
                coords.len(),
                lattice.rank()
            )));
        }
        Ok(CovectorFunctional {
            lattice,
            coords: RationalVector(coords),
        })
    }

    pub fn from_i64(lattice: &Arc<TorusLattice>, coords: &[i64]) -> Result<Self> {
        CovectorFunctional::new(
            lattice.clone(),
            coords
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(lattice: &Arc<TorusLattice>) -> Self {
        CovectorFunctional {
            lattice: lattice.clone(),
            coords: RationalVector(vec![BigRational::zero(); lattice.rank()]),
        }
    }

    /// The dual basis element `label^*`.
    pub fn dual(lattice: &Arc<TorusLattice>, label: &str) -> Result<Self> {
        let idx = lattice
            .index_of(label)
            .ok_or_else(|| Error::UnknownBasisLabel(label.to_string()))?;
        let mut f = CovectorFunctional::zero(lattice);
        f.coords.0[idx] = BigRational::from_integer(1.into());
        Ok(f)
    }

    pub fn lattice(&self) -> &Arc<TorusLattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords.0
    }

    pub fn is_integral(&self) -> bool {
        self.coords.is_integral()
    }

    pub fn add(&self, other: &CovectorFunctional) -> Result<CovectorFunctional> {
        self.lattice.check_same(&other.lattice)?;
        Ok(CovectorFunctional {
            lattice: self.lattice.clone(),
            coords: RationalVector(
                self.coords.0.iter().zip(&other.coords.0).map(|(a, b)| a + b).collect(),
            ),
        })
    }

    pub fn scale(&self, k: &BigRational) -> CovectorFunctional {
        CovectorFunctional {
            lattice: self.lattice.clone(),
            coords: RationalVector(self.coords.0.iter().map(|a| a * k).collect()),
        }
    }

    pub fn neg(&self) -> CovectorFunctional {
        self.scale(&BigRational::from_integer((-1).into()))
    }
}

impl fmt::Debug for CovectorFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CovectorFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .lattice
            .labels
            .iter()
            .zip(&self.coords.0)
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| {
                if c.is_integer() {
                    format!("{}*{l}^*", c.to_integer())
                } else {
                    format!("({})*{l}^*", format_rational(c))
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `<chi, f>`, the exact dot product.
pub fn pair(chi: &Character, f: &CovectorFunctional) -> Result<BigRational> {
    chi.lattice.check_same(&f.lattice)?;
    Ok(f.coords.dot_integers(&chi.coords))
}

/// `<chi, f>` when it is known to be an integer.
pub fn pair_integral(chi: &Character, f: &CovectorFunctional) -> Result<BigInt> {
    let v = pair(chi, f)?;
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::NonIntegralPairing {
            character: chi.to_string(),
            functional: f.to_string(),
            value: format_rational(&v),
        })
    }
}

/// Simple roots with their coroots, index aligned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleRootSet {
    lattice: Arc<TorusLattice>,
    roots: Vec<(String, Character)>,
    coroots: Vec<(String, CovectorFunctional)>,
}

impl SimpleRootSet {
    /// Builds the set, checking `<alpha, alpha^vee> = 2` for each pair.
    pub fn new(
        lattice: Arc<TorusLattice>,
        entries: Vec<(String, Character, CovectorFunctional)>,
    ) -> Result<Self> {
        let mut roots = Vec::with_capacity(entries.len());
        let mut coroots = Vec::with_capacity(entries.len());
        for (label, root, coroot) in entries {
            lattice.check_same(&root.lattice)?;
            lattice.check_same(&coroot.lattice)?;
            let p = pair(&root, &coroot)?;
            if p != BigRational::from_integer(2.into()) {
                return Err(Error::InvalidModel(format!(
                    "<{label}, {label}^vee> = {} instead of 2",
                    format_rational(&p)
                )));
            }
            roots.push((label.clone(), root));
            coroots.push((label, coroot));
        }
        Ok(SimpleRootSet {
            lattice,
            roots,
            coroots,
        })
    }

    pub fn empty(lattice: &Arc<TorusLattice>) -> Self {
        SimpleRootSet {
            lattice: lattice.clone(),
            roots: Vec::new(),
            coroots: Vec::new(),
        }
    }

    pub fn lattice(&self) -> &Arc<TorusLattice> {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[(String, Character)] {
        &self.roots
    }

    pub fn coroots(&self) -> &[(String, CovectorFunctional)] {
        &self.coroots
    }

    pub fn coroot(&self, label: &str) -> Option<&CovectorFunctional> {
        self.coroots.iter().find(|(l, _)| l == label).map(|(_, c)| c)
    }
}

/// `true` iff `<alpha, v> <= 0` for every simple root `alpha`.
pub fn is_antidominant(v: &CovectorFunctional, roots: &SimpleRootSet) -> Result<bool> {
    Ok(antidominance_violations(v, roots)?.is_empty())
}

/// The simple roots pairing strictly positively with `v`.
pub fn antidominance_violations(
    v: &CovectorFunctional,
    roots: &SimpleRootSet,
) -> Result<Vec<(String, BigRational)>> {
    roots.lattice.check_same(&v.lattice)?;
    let mut out = Vec::new();
    for (label, root) in &roots.roots {
        let p = pair(root, v)?;
        if p.is_positive() {
            out.push((label.clone(), p));
        }
    }
    Ok(out)
}

/// GL-type simple roots `eps_i - eps_{i+1}` on consecutive labels, with
/// coroots `eps_i^* - eps_{i+1}^*`. `sign = -1` gives `-eps_i + eps_{i+1}`.
pub fn gl_chain(
    lattice: &Arc<TorusLattice>,
    labels: &[&str],
    root_prefix: &str,
    sign: i64,
) -> Result<Vec<(String, Character, CovectorFunctional)>> {
    let mut out = Vec::new();
    for (i, pair_labels) in labels.windows(2).enumerate() {
        let a = lattice.index_of(pair_labels[0]).ok_or_else(|| Error::UnknownBasisLabel(pair_labels[0].into()))?;
        let b = lattice.index_of(pair_labels[1]).ok_or_else(|| Error::UnknownBasisLabel(pair_labels[1].into()))?;
        let mut root = vec![0i64; lattice.rank()];
        root[a] = sign;
        root[b] = -sign;
        out.push((
            format!("{root_prefix}_{}", i + 1),
            Character::from_i64(lattice, &root)?,
            CovectorFunctional::from_i64(lattice, &root)?,
        ));
    }
    Ok(out)
}
