use serde::Serialize;

use crate::error::{Error, Result};
use crate::tmfpi::ell_max;

use super::delta::delta1_matrix;

/// Predicted leading row of a `δ¹` column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LeadingTerm {
    /// Highest nonzero residue sits in row `w`, with a unit coefficient on
    /// the unscaled class.
    Row(u32),
    /// The column vanishes in `coker h`.
    Zero,
    /// The column is nonzero with no predicted position.
    Star,
}

/// Leading row of `δ¹(C_v^m)` or `δ¹(D_v^m)`.
///
/// With `lo = ⌊(m−1)/2⌋` and `ℓ = ℓ^{ε,m}`: for `m < 0` (or `m ≤ 0` when
/// `ε = 1`) the row is `lo − 2ℓ + 2v`; for `m > 0` it is `lo − ℓ + v` below
/// `ℓ` and `lo − 2ℓ + 2v` above, with column `ℓ` zero except when `ε = 1`
/// and `m ≡ 13 (mod 27)`. In degree 0 the same first formula gives `2v − 1`.
pub fn leading_term(eps: u8, m: i64, v: u32) -> LeadingTerm {
    let ell = ell_max(eps, m);
    let lo = (m - 1).div_euclid(2);
    let v = v as i64;
    let row = |w: i64| if w < 0 { LeadingTerm::Zero } else { LeadingTerm::Row(w as u32) };
    if m < 0 || m == 0 {
        return row(lo - 2 * ell + 2 * v);
    }
    match v.cmp(&ell) {
        std::cmp::Ordering::Less => row(lo - ell + v),
        std::cmp::Ordering::Equal if eps == 1 && m.rem_euclid(27) == 13 => LeadingTerm::Star,
        std::cmp::Ordering::Equal => LeadingTerm::Zero,
        std::cmp::Ordering::Greater => row(lo - 2 * ell + 2 * v),
    }
}

/// Checks the prediction against the computed column.
pub fn verify_leading_term(eps: u8, m: i64, v: u32) -> Result<LeadingTerm> {
    let predicted = leading_term(eps, m, v);
    let cm = delta1_matrix(eps, m, v)?;
    let j = v as usize;
    let gamma = crate::arith::LocalScalar::from(cm.columns[j].gamma as i64);
    let fail = |detail: String| Error::LeadingTerm { eps, m, v, detail };
    // the unscaled class, so that a factor γ = 3 cannot hide the leading term
    let column: Vec<_> =
        cm.lifts.column(j).iter().map(|c| c.checked_div(&gamma).expect("gamma is 1 or 3")).collect();
    let reduce = |c: &crate::arith::LocalScalar| cm.exponent.map_or(c.clone(), |k| c.reduced(k));
    let found = (0..column.len()).rev().find(|&i| !reduce(&column[i]).is_zero());
    match (predicted, found) {
        (LeadingTerm::Zero, None) => Ok(predicted),
        (LeadingTerm::Star, Some(_)) => Ok(predicted),
        (LeadingTerm::Row(w), Some(i)) if i == w as usize => {
            let unscaled = &column[i];
            if unscaled.is_unit() {
                Ok(predicted)
            } else {
                Err(fail(format!("leading coefficient {unscaled} at row {w} is not a unit")))
            }
        }
        (p, f) => Err(fail(format!(
            "predicted {p:?}, computed leading row {}",
            f.map_or("none".to_string(), |i| cm.rows[i].enum_label())
        ))),
    }
}
