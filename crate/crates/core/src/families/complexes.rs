use super::realization::{bottom_right_idempotent, top_left_idempotent, Action, MatrixRealization};
use crate::error::{Error, Result};

/// Pairs `(A, B)` of `l x m` and `m x n` matrices with `rk A <= r`,
/// `rk B <= s` and `AB = 0`. Realization only: no weight lattice and no
/// divisor model.
pub fn complexes_realization(l: usize, m: usize, n: usize, r: usize, s: usize) -> Result<MatrixRealization> {
    if r > l || s > n || r + s > m {
        return Err(Error::InvalidParameters(format!(
            "complexes:l={l},m={m},n={n},r={r},s={s}: need r <= l, s <= n, r + s <= m"
        )));
    }
    let mut real = MatrixRealization {
        family: format!("complexes:l={l},m={m},n={n},r={r},s={s}"),
        action: Action::Complexes { l, m, n, r, s },
        base_point: vec![top_left_idempotent(l, m, r), bottom_right_idempotent(m, n, s)],
        lattice: None,
        semi_invariants: Vec::new(),
        curves: Vec::new(),
    };
    let id = real.trivial_exponents();
    real.push_curve("identity", None, id);
    Ok(real)
}
