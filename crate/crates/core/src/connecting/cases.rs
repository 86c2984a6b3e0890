use std::fmt;

use serde::Serialize;

use crate::arith::LocalScalar;
use crate::error::{Error, Result};
use crate::homology::ops::{format_vector, kernel_preimage, solve, subquotient, verify_claim};
use crate::homology::{Matrix, ModulePresentation, Order, Relation, Subquotient};
use crate::tmfpi::{ell_max, scaled_basis_label};

use super::delta::{delta1_matrix, ConnectingMatrix};
use super::leading::{leading_term, LeadingTerm};

/// The five shapes of `δ¹`, by `ε`, the sign of `m` and `m mod 27`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseId {
    One = 1,
    Two = 2,
    Three = 3,
    Four = 4,
    Five = 5,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Case {}", *self as u8)
    }
}

/// Case 5 iff `ε = 1`, `m > 0` and `m ≡ 13 (mod 27)`.
pub fn case_of(eps: u8, m: i64) -> Result<CaseId> {
    Ok(match (eps, m) {
        (0, 0) => return Err(Error::Precondition("degree 0 is handled by delta0".into())),
        (0, m) if m < 0 => CaseId::One,
        (0, _) => CaseId::Two,
        (_, m) if m <= 0 => CaseId::Three,
        (_, m) if m.rem_euclid(27) == 13 => CaseId::Five,
        _ => CaseId::Four,
    })
}

/// Result of comparing computed and closed-form `ker δ¹`, `coker δ¹`.
#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: CaseId,
    pub eps: u8,
    pub m: i64,
    pub trunc: u32,
    pub exponent: u32,
    pub closed_kernel: ModulePresentation,
    pub closed_cokernel: ModulePresentation,
    pub kernel: ModulePresentation,
    pub cokernel: ModulePresentation,
    /// The complement of `K″` in Case 5.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<ModulePresentation>,
    pub matches: bool,
    pub failures: Vec<String>,
}

/// A closed-form module together with ambient vectors for its generators.
struct Claim {
    presentation: ModulePresentation,
    vectors: Vec<Vec<LocalScalar>>,
}

impl Claim {
    fn new() -> Self {
        Claim { presentation: ModulePresentation::zero(), vectors: Vec::new() }
    }

    fn push(&mut self, label: String, order: Order, vector: Vec<LocalScalar>) {
        self.presentation.push(label, order);
        self.vectors.push(vector);
    }

    fn extend(&mut self, sq: &Subquotient) {
        self.presentation.generators.extend(sq.presentation.generators.iter().cloned());
        self.vectors.extend(sq.vectors.iter().cloned());
    }
}

fn unit(n: usize, i: usize) -> Vec<LocalScalar> {
    let mut e = vec![LocalScalar::zero(); n];
    e[i] = LocalScalar::one();
    e
}

/// `3^{k−1}·γ_vC_v`, the order-3 kernel element of a `γ_v = 3` column.
fn kernel_label(eps: u8, m: i64, v: u32, k: u32) -> String {
    let base = scaled_basis_label(eps, m, v);
    match k {
        1 => base,
        _ => format!("{}·{base}", crate::arith::pow3(k - 1)),
    }
}

fn delta1_label(eps: u8, m: i64, v: u32) -> String {
    let c = if eps == 0 { 'C' } else { 'D' };
    format!("δ¹({c}_{v}^{m})")
}

/// `ker δ¹` restricted to columns `0..=ℓ`, in full source coordinates.
fn u_kernel(cm: &ConnectingMatrix, ell: usize) -> Result<Subquotient> {
    let cols: Vec<usize> = (0..=ell).collect();
    let f = cm.dense().select_columns(&cols);
    let src = crate::homology::Presented::from_orders(
        cols.iter().map(|&v| cm.lifts.col_labels[v].clone()).collect(),
        &vec![Order::Pow3(cm.exponent.expect("torsion sector")); cols.len()],
    );
    let tgt = cm.target();
    let mut sq = subquotient(&kernel_preimage(&f, &src, &tgt), &src.relations, &src.labels)?;
    for v in sq.vectors.iter_mut() {
        v.resize(cm.columns.len(), LocalScalar::zero());
    }
    Ok(sq)
}

/// Closed-form kernel and cokernel read off the leading-term pattern.
fn closed_forms(cm: &ConnectingMatrix, case: CaseId) -> Result<(Claim, Claim)> {
    let (eps, m) = (cm.eps, cm.m);
    let k = cm.exponent.expect("torsion sector");
    let (nc, nr) = (cm.columns.len(), cm.rows.len());
    let ell = ell_max(eps, m);
    let three = LocalScalar::from(3);
    let lift = LocalScalar::pow3(k - 1);

    let mut kernel = Claim::new();
    let mut pivots = vec![false; nr];
    let mut coker_extra = Claim::new();
    for (v, x) in cm.columns.iter().enumerate() {
        let vv = v as u32;
        match leading_term(eps, m, vv) {
            LeadingTerm::Row(w) => {
                if let Some(p) = pivots.get_mut(w as usize) {
                    *p = true;
                }
                if x.gamma == 3 {
                    let e = unit(nc, v).into_iter().map(|c| c * &lift).collect();
                    let in_k2 = case == CaseId::Five && v as i64 > ell;
                    if case != CaseId::Five || in_k2 {
                        kernel.push(kernel_label(eps, m, vv, k), Order::Pow3(1), e);
                    }
                    let col = cm.lifts.column(v);
                    coker_extra.push(
                        delta1_label(eps, m, vv),
                        Order::Pow3(1),
                        col.iter().map(|c| c.checked_div(&three).expect("divisible by 3")).collect(),
                    );
                }
            }
            LeadingTerm::Zero => {
                kernel.push(scaled_basis_label(eps, m, vv), Order::Pow3(k), unit(nc, v));
            }
            LeadingTerm::Star => {}
        }
    }
    if case == CaseId::Five {
        let u = u_kernel(cm, ell as usize)?;
        let mut full = Claim::new();
        full.extend(&u);
        full.presentation.generators.extend(kernel.presentation.generators);
        full.vectors.extend(kernel.vectors);
        kernel = full;
    }

    let mut coker = Claim::new();
    for (w, r) in cm.rows.iter().enumerate() {
        if !pivots[w] {
            coker.push(r.enum_label(), Order::Pow3(k), unit(nr, w));
        }
    }
    coker.presentation.generators.extend(coker_extra.presentation.generators);
    coker.vectors.extend(coker_extra.vectors);
    coker.presentation.truncated = true;
    kernel.presentation.truncated = true;

    if case == CaseId::Five {
        let gens = Matrix::from_columns(nr, &coker.vectors);
        let a = gens.hcat(&cm.target().relations);
        let col = Matrix::from_columns(nr, &[cm.lifts.column(ell as usize)]);
        let c = solve(&a, &col)
            .ok_or_else(|| Error::Mismatch("the star column is not in the span of the coker generators".into()))?;
        let n = coker.vectors.len();
        let coeffs: Vec<LocalScalar> = (0..n).map(|g| c.get(g, 0).clone()).collect();
        let labels: Vec<String> = coker.presentation.generators.iter().map(|g| g.label.clone()).collect();
        let label = format!("{} = {}", delta1_label(eps, m, ell as u32), format_vector(&coeffs, &labels));
        coker.presentation.relations.push(Relation {
            label,
            coefficients: coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect(),
        });
    }
    Ok((kernel, coker))
}

fn check(cm: &ConnectingMatrix, case: CaseId) -> Result<(Claim, Claim, Subquotient, Subquotient)> {
    let (kernel, coker) = closed_forms(cm, case)?;
    let (src, tgt) = (cm.source(), cm.target());
    let f = cm.dense();
    let (ck, cc) = cm.kernel_cokernel()?;
    verify_claim(&kernel.presentation, &kernel.vectors, &kernel_preimage(&f, &src, &tgt), &src.relations)
        .map_err(|e| Error::Mismatch(format!("kernel: {e}")))?;
    verify_claim(&coker.presentation, &coker.vectors, &Matrix::identity(tgt.rank()), &f.hcat(&tgt.relations))
        .map_err(|e| Error::Mismatch(format!("cokernel: {e}")))?;
    if case == CaseId::Five {
        let ell = ell_max(cm.eps, cm.m) as usize;
        if cm.leading_row(ell).is_none() {
            return Err(Error::Mismatch(format!("{} vanishes", delta1_label(cm.eps, cm.m, ell as u32))));
        }
    }
    Ok((kernel, coker, ck, cc))
}

/// Selects the case, builds the closed forms and compares them with the
/// Smith normal form of `δ¹` at `V`; the comparison is repeated at `V+4`.
pub fn case_analysis(eps: u8, m: i64, trunc: u32) -> Result<CaseReport> {
    let case = case_of(eps, m)?;
    let cm = delta1_matrix(eps, m, trunc)?;
    let exponent = cm.exponent.expect("torsion sector");
    let mut report = match check(&cm, case) {
        Ok((kernel, coker, ck, cc)) => CaseReport {
            case,
            eps,
            m,
            trunc,
            exponent,
            u: (case == CaseId::Five)
                .then(|| u_kernel(&cm, ell_max(eps, m) as usize).map(|u| u.presentation))
                .transpose()?,
            closed_kernel: kernel.presentation,
            closed_cokernel: coker.presentation,
            kernel: ck.presentation,
            cokernel: cc.presentation,
            matches: true,
            failures: Vec::new(),
        },
        Err(e) => {
            let (ck, cc) = cm.kernel_cokernel()?;
            let (kernel, coker) = closed_forms(&cm, case)
                .map(|(k, c)| (k.presentation, c.presentation))
                .unwrap_or_default();
            return Ok(CaseReport {
                case,
                eps,
                m,
                trunc,
                exponent,
                closed_kernel: kernel,
                closed_cokernel: coker,
                kernel: ck.presentation,
                cokernel: cc.presentation,
                u: None,
                matches: false,
                failures: vec![e.to_string()],
            });
        }
    };
    let next = delta1_matrix(eps, m, trunc + 4)?;
    if let Err(e) = check(&next, case) {
        return Err(Error::NonStabilized {
            v: trunc,
            v_next: trunc + 4,
            context: format!("{case} at (eps={eps}, m={m}): {e}"),
        });
    }
    report.kernel.truncated = true;
    report.cokernel.truncated = true;
    Ok(report)
}

/// Evidence that a result is unchanged between two truncations.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub trunc: u32,
    pub trunc_next: u32,
    pub stable: bool,
    pub detail: String,
}

/// `U^{4m+2}`, the complement of `K″` in `ker δ¹` for `m ≡ 13 (mod 27)`.
#[derive(Clone, Debug, Serialize)]
pub struct UResolution {
    pub m: i64,
    pub t: i64,
    pub trunc: u32,
    pub exponent: u32,
    pub u: ModulePresentation,
    pub k_double_prime: ModulePresentation,
    pub kernel: ModulePresentation,
    pub certificate: Certificate,
}

/// Computes `U` from the columns `0..=ℓ`, checks `K″ ⊕ U = ker δ¹` at `V`
/// and `V+4`, and certifies that `U` is the same at both.
pub fn resolve_u(m: i64, trunc: u32) -> Result<UResolution> {
    if m <= 0 || m.rem_euclid(27) != 13 {
        return Err(Error::Precondition(format!("U is only undetermined for m > 0, m = 13 mod 27; got m = {m}")));
    }
    let ell = ell_max(1, m);
    if (trunc as i64) <= ell {
        return Err(Error::Precondition(format!("truncation {trunc} must exceed {ell}")));
    }
    let mut results = Vec::new();
    for v in [trunc, trunc + 4] {
        let cm = delta1_matrix(1, m, v)?;
        let (kernel, _, ck, _) = check(&cm, CaseId::Five)?;
        let u = u_kernel(&cm, ell as usize)?;
        let n_u = u.presentation.generators.len();
        let k2 = ModulePresentation {
            generators: kernel.presentation.generators[n_u..].to_vec(),
            truncated: true,
            ..ModulePresentation::zero()
        };
        results.push((u.presentation, k2, ck.presentation));
    }
    let (u, k2, kernel) = results.swap_remove(0);
    let stable = results[0].0 == u;
    let certificate = Certificate {
        trunc,
        trunc_next: trunc + 4,
        stable,
        detail: format!("U = {} at V = {}, {} at V = {}", u.invariants(), trunc, results[0].0.invariants(), trunc + 4),
    };
    if !stable {
        return Err(Error::NonStabilized { v: trunc, v_next: trunc + 4, context: certificate.detail });
    }
    Ok(UResolution { m, t: 4 * m + 2, trunc, exponent: kernel_exponent(m), u, k_double_prime: k2, kernel, certificate })
}

fn kernel_exponent(m: i64) -> u32 {
    crate::bring::coker_h_order(crate::bring::EigenKind::B, m).exponent().expect("torsion")
}
