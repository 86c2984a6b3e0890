use crate::error::{Error, Result};

use super::complex::Cohomology;
use super::matrix::Matrix;
use super::ops::{self, Presented};

/// Inputs of `0→H⁰→ker g→ker h→H¹→coker g→coker h→H²→0` in one degree.
#[derive(Clone, Debug)]
pub struct LesInput {
    pub t: i64,
    pub ker_g: Presented,
    pub ker_h: Presented,
    pub delta0: Matrix,
    pub coker_g: Presented,
    pub coker_h: Presented,
    pub delta1: Matrix,
}

/// Reads off `H⁰ = ker δ⁰`, `H² = coker δ¹` and `H¹ = coker δ⁰ ⊕ ker δ¹`.
///
/// The splitting of `H¹` needs `coker δ⁰` to vanish off degree 0 and
/// `ker δ¹` to be free of rank one in degree 0; both are checked.
pub fn les_assemble(input: &LesInput) -> Result<Cohomology> {
    let (k0, c0) = ops::kernel_cokernel(&input.delta0, &input.ker_g, &input.ker_h)?;
    let (k1, c1) = ops::kernel_cokernel(&input.delta1, &input.coker_g, &input.coker_h)?;
    if input.t != 0 && !c0.is_zero() {
        return Err(Error::Splitting(format!(
            "coker delta0 is nonzero in degree {}: {}",
            input.t, c0.presentation
        )));
    }
    if input.t == 0 {
        let inv = k1.presentation.invariants();
        if inv.free_rank != 1 || !inv.torsion.is_empty() {
            return Err(Error::Splitting(format!("ker delta1 in degree 0 is {inv}, not Z(3)")));
        }
    }
    Ok(Cohomology {
        h0: k0.presentation,
        h1: c0.presentation.direct_sum(&k1.presentation),
        h2: c1.presentation,
    })
}
