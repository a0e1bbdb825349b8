use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::realization::{bottom_right_idempotent, top_left_idempotent, Action, MatrixRealization};
use super::{discover_minors, transcription_error};
use crate::divisor_model::{BoundarySpec, ColorSpec, SphericalDivisorModel};
use crate::error::{Error, Result};
use crate::rootdata::{Character, CovectorFunctional, SimpleRootSet, TorusLattice};

/// Parameters of a circular complex after normalizing to `m <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CircularParams {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub s: usize,
    /// The roles of the two matrices were exchanged to reach `m <= n`.
    pub swapped: bool,
}

impl CircularParams {
    pub fn new(m: usize, n: usize, r: usize, s: usize) -> Result<Self> {
        let p = if m <= n {
            CircularParams { m, n, r, s, swapped: false }
        } else {
            CircularParams { m: n, n: m, r: s, s: r, swapped: true }
        };
        let bad = |why: &str| Err(Error::InvalidParameters(format!("circular:m={m},n={n},r={r},s={s}: {why}")));
        if p.r == 0 && p.s == 0 {
            return bad("(r, s) = (0, 0) is the zero orbit");
        }
        if p.r + p.s > p.m {
            return bad("r + s exceeds min(m, n)");
        }
        if p.r + p.s == p.m && (p.r == 0 || p.s == 0) {
            return bad("r + s = min(m, n) needs 1 <= r, s");
        }
        Ok(p)
    }

    /// Whether the orbit closure has boundary divisors.
    pub fn has_boundary(&self) -> bool {
        self.m == self.n && self.r + self.s == self.m
    }

    pub fn dimension(&self) -> usize {
        let k = self.r + self.s;
        k * (self.m + self.n - k)
    }

    /// All admissible raw parameter tuples with `m, n <= bound`.
    pub fn admissible(bound: usize) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for m in 1..=bound {
            for n in 1..=bound {
                for r in 0..=m.min(n) {
                    for s in 0..=m.min(n) {
                        if CircularParams::new(m, n, r, s).is_ok() {
                            out.push((m, n, r, s));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Which of the four special colors exist, and which are merged.
struct SpecialColors {
    r1: bool,
    r2: bool,
    s1: bool,
    s2: bool,
    merge1: bool,
    merge2: bool,
}

impl SpecialColors {
    fn of(p: &CircularParams) -> Self {
        let (m, n, r, s) = (p.m, p.n, p.r, p.s);
        SpecialColors {
            r1: r != 0 && r != m,
            r2: r != 0 && r != n,
            s1: s != 0 && s != m,
            s2: s != 0 && s != n,
            merge1: r + s == m,
            merge2: r + s == n,
        }
    }
}

pub fn circular_complexes_model(
    m: usize,
    n: usize,
    r: usize,
    s: usize,
) -> Result<(SphericalDivisorModel, MatrixRealization)> {
    let p = CircularParams::new(m, n, r, s)?;
    let (m, n, r, s) = (p.m, p.n, p.r, p.s);
    let name = format!("circular:m={m},n={n},r={r},s={s}");

    let mut labels: Vec<String> = (1..=r).map(|i| format!("eps_{i}")).collect();
    labels.extend((1..=s).map(|j| format!("delta_{j}")));
    let lattice = TorusLattice::new(labels.clone())?;
    let rank = r + s;
    let eps = |i: usize| i - 1;
    let delta = |j: usize| r + j - 1;
    let vector = |entries: &[(usize, i64)]| {
        let mut v = vec![0i64; rank];
        for &(k, c) in entries {
            v[k] += c;
        }
        v
    };

    let mut roots = Vec::new();
    let mut colors = Vec::new();
    for i in 1..r {
        let v = vector(&[(eps(i), 1), (eps(i + 1), -1)]);
        let f = CovectorFunctional::from_i64(&lattice, &v)?;
        roots.push((format!("alpha_{i}"), Character::from_i64(&lattice, &v)?, f.clone()));
        colors.push(ColorSpec::new(format!("D_{i}"), f, -2));
    }
    for j in 1..s {
        let v = vector(&[(delta(j), -1), (delta(j + 1), 1)]);
        let f = CovectorFunctional::from_i64(&lattice, &v)?;
        roots.push((format!("beta_{j}"), Character::from_i64(&lattice, &v)?, f.clone()));
        colors.push(ColorSpec::new(format!("E_{j}"), f, -2));
    }

    let sc = SpecialColors::of(&p);
    let c1 = -(m as i64 - (r + s) as i64 + 1);
    let c2 = -(n as i64 - (r + s) as i64 + 1);
    let eps_r = if r > 0 { vector(&[(eps(r), 1)]) } else { vec![0; rank] };
    let delta_1 = if s > 0 { vector(&[(delta(1), 1)]) } else { vec![0; rank] };
    let sum = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
    let special = |id: &str, v: &[i64], c: i64, alias: Option<&str>| -> Result<ColorSpec> {
        let mut color = ColorSpec::new(id, CovectorFunctional::from_i64(&lattice, v)?, c);
        color.aliases.extend(alias.map(String::from));
        Ok(color)
    };
    if sc.r1 {
        colors.push(if sc.merge1 && sc.s1 {
            special("D_r1", &sum(&eps_r, &delta_1), 2 * c1, Some("D_s1"))?
        } else {
            special("D_r1", &eps_r, c1, None)?
        });
    }
    if sc.r2 {
        colors.push(if sc.merge2 && sc.s2 {
            special("D_r2", &sum(&eps_r, &delta_1), 2 * c2, Some("D_s2"))?
        } else {
            special("D_r2", &eps_r, c2, None)?
        });
    }
    if sc.s1 && !(sc.merge1 && sc.r1) {
        colors.push(special("D_s1", &delta_1, c1, None)?);
    }
    if sc.s2 && !(sc.merge2 && sc.r2) {
        colors.push(special("D_s2", &delta_1, c2, None)?);
    }

    let mut boundaries = Vec::new();
    let lower_x = format!("X_{{{},{}}}", r.wrapping_sub(1), m.wrapping_sub(r));
    let lower_y = format!("X_{{{},{}}}", r, m.wrapping_sub(r + 1));
    if p.has_boundary() {
        boundaries.push(BoundarySpec::new(lower_x.clone(), CovectorFunctional::from_i64(&lattice, &eps_r)?));
        boundaries.push(BoundarySpec::new(lower_y.clone(), CovectorFunctional::from_i64(&lattice, &delta_1)?));
    }
    let basis = labels
        .iter()
        .map(|l| Character::basis(&lattice, l))
        .collect::<Result<Vec<_>>>()?;
    let model = SphericalDivisorModel::new(
        name.clone(),
        lattice.clone(),
        basis,
        SimpleRootSet::new(lattice.clone(), roots)?,
        colors,
        boundaries,
    );
    cross_check(&model, &p, &lattice)?;

    let mut real = MatrixRealization {
        family: name,
        action: Action::Circular { m, n, r, s },
        base_point: vec![top_left_idempotent(m, n, r), bottom_right_idempotent(n, m, s)],
        lattice: Some(lattice),
        semi_invariants: Vec::new(),
        curves: Vec::new(),
    };
    let id = real.trivial_exponents();
    real.push_curve("identity", None, id);
    if r >= 1 {
        let mut g1 = vec![0i64; m];
        g1[r - 1] = 1;
        let link = p.has_boundary().then_some(lower_x);
        real.push_curve(&format!("lambda_{r}"), link, vec![g1, vec![0; n]]);
    }
    if s >= 1 {
        let mut g2 = vec![0i64; n];
        g2[n - s] = 1;
        let link = p.has_boundary().then_some(lower_y);
        real.push_curve(&format!("mu_{r}"), link, vec![vec![0; m], g2]);
    }
    real.semi_invariants = discover_minors(&real)?;
    Ok((model, real))
}

/// Rebuilds the color table from the weight map into `GL_m x GL_n` and the
/// coroots of the roots behind each color, and the canonical coefficients
/// from `2 rho`.
fn cross_check(model: &SphericalDivisorModel, p: &CircularParams, lattice: &Arc<TorusLattice>) -> Result<()> {
    let (m, n, r, s) = (p.m as i64, p.n as i64, p.r, p.s);
    // ambient characters: eps_{i,1} at i-1, eps_{i,2} at m+i-1 (1-based i)
    let dim = (m + n) as usize;
    let e1 = |i: i64| (i - 1) as usize;
    let e2 = |i: i64| (m + i - 1) as usize;

    // weight map of each lattice basis vector
    let mut weights: Vec<Vec<i64>> = Vec::new();
    for i in 1..=r as i64 {
        let mut w = vec![0i64; dim];
        w[e1(i)] -= 1;
        w[e2(i)] += 1;
        weights.push(w);
    }
    for j in 1..=s as i64 {
        let mut w = vec![0i64; dim];
        w[e1(m - s as i64 + j)] += 1;
        w[e2(n - s as i64 + j)] -= 1;
        weights.push(w);
    }

    let mut two_rho = vec![0i64; dim];
    for i in (r as i64 + 1)..=(m - s as i64) {
        two_rho[e1(i)] = -(m + r as i64 - s as i64 + 1 - 2 * i);
    }
    for i in (r as i64 + 1)..=(n - s as i64) {
        two_rho[e2(i)] = n + r as i64 - s as i64 + 1 - 2 * i;
    }

    let coroot = |a: usize, ca: i64, b: usize, cb: i64| {
        let mut v = vec![0i64; dim];
        v[a] += ca;
        v[b] += cb;
        v
    };
    let (ri, si) = (r as i64, s as i64);
    let gamma = |id: &str| -> Option<Vec<i64>> {
        Some(match id {
            "D_r1" => coroot(e1(ri), -1, e1(ri + 1), 1),
            "D_r2" => coroot(e2(ri), 1, e2(ri + 1), -1),
            "D_s1" => coroot(e1(m - si), -1, e1(m - si + 1), 1),
            "D_s2" => coroot(e2(n - si), 1, e2(n - si + 1), -1),
            other => {
                let (head, idx) = other.split_once('_')?;
                let k: i64 = idx.parse().ok()?;
                match head {
                    "D" => coroot(e2(k), 1, e2(k + 1), -1),
                    "E" => coroot(e1(m - si + k), -1, e1(m - si + k + 1), 1),
                    _ => return None,
                }
            }
        })
    };
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();

    for color in model.colors() {
        let g = gamma(&color.id)
            .ok_or_else(|| transcription_error("circular", format!("no root behind `{}`", color.id)))?;
        let expected: Vec<BigRational> = weights
            .iter()
            .map(|w| BigRational::from_integer(dot(w, &g).into()))
            .collect();
        if expected != color.functional.coords() {
            return Err(transcription_error(
                "circular",
                format!("`{}` functional {} differs from the coroot pairing", color.id, color.functional),
            ));
        }
        let coefficient = BigInt::from(-2 + dot(&two_rho, &g));
        if coefficient != color.canonical_coefficient {
            return Err(transcription_error(
                "circular",
                format!(
                    "`{}` canonical coefficient {} differs from -<2 rho_Q, gamma> = {coefficient}",
                    color.id, color.canonical_coefficient
                ),
            ));
        }
    }
    let _ = lattice;
    Ok(())
}
