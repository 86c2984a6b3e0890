use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use serde::Serialize;

use crate::arith::LocalScalar;
use crate::bring::{
    antisymmetrize, coker_h_order, h_map, project_coker_h, psi_d, sector_of_degree, CokerEntry,
    EigenClass, EigenKind, RingElement,
};
use crate::error::{Error, Result};
use crate::homology::ops::{kernel_preimage, verify_claim};
use crate::homology::{
    kernel_cokernel, LabeledMatrix, LesInput, Matrix, ModulePresentation, Order, Presented,
    Subquotient,
};
use crate::tmfpi::{
    basis_class, coker_g_order, scaled_basis_label, torsion_at_internal, ZeroLineClass,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Connecting {
    Delta0,
    Delta1,
}

/// A connecting map on one sector, columns `v ≤ V` of the scaled 0-line
/// basis, rows `A_w^m` or `B_w^m` for `w` up to the largest row reached.
///
/// Entries are exact `Z_(3)` lifts; residues live in `Z/3^k` with `k` the
/// common exponent of `coker g` and `coker h`, or stay exact when free.
#[derive(Clone, Debug, Serialize)]
pub struct ConnectingMatrix {
    pub map: Connecting,
    pub eps: u8,
    pub m: i64,
    pub trunc: u32,
    pub exponent: Option<u32>,
    pub columns: Vec<ZeroLineClass>,
    pub rows: Vec<EigenClass>,
    pub lifts: LabeledMatrix,
}

impl ConnectingMatrix {
    pub fn residue(&self, i: usize, j: usize) -> LocalScalar {
        let x = self.lifts.get(i, j);
        match self.exponent {
            Some(k) => x.reduced(k),
            None => x,
        }
    }

    pub fn residues(&self) -> LabeledMatrix {
        let mut out = LabeledMatrix::new(self.lifts.row_labels.clone(), self.lifts.col_labels.clone());
        for (&(i, j), _) in self.lifts.entries() {
            out.set(i, j, self.residue(i, j));
        }
        out
    }

    pub fn dense(&self) -> Matrix {
        self.lifts.to_dense()
    }

    fn order(&self) -> Order {
        self.exponent.map_or(Order::Free, Order::Pow3)
    }

    /// The source as a presented module: `coker g` for `δ¹`, `ker g` for `δ⁰`.
    pub fn source(&self) -> Presented {
        let n = self.columns.len();
        Presented::from_orders(self.lifts.col_labels.clone(), &vec![self.order(); n])
    }

    /// The target: `coker h` for `δ¹`, `ker h` for `δ⁰`.
    pub fn target(&self) -> Presented {
        let n = self.rows.len();
        Presented::from_orders(self.lifts.row_labels.clone(), &vec![self.order(); n])
    }

    pub fn kernel_cokernel(&self) -> Result<(Subquotient, Subquotient)> {
        kernel_cokernel(&self.dense(), &self.source(), &self.target())
    }

    /// Largest row index with a nonzero residue in column `j`.
    pub fn leading_row(&self, j: usize) -> Option<usize> {
        (0..self.rows.len()).rev().find(|&i| !self.residue(i, j).is_zero())
    }
}

/// `δ⁰(C_v⁰)` by the closed binomial formula, keyed by `a_{−i,i}`.
pub fn delta0_formula(v: u32) -> BTreeMap<EigenClass, LocalScalar> {
    let v = v as i64;
    let big = |x: i64| BigInt::from(x);
    let choose = |k: i64| -> LocalScalar {
        if k < 0 || k > 3 * v {
            LocalScalar::zero()
        } else {
            LocalScalar::from(binomial(big(3 * v), big(k)))
        }
    };
    let pre = LocalScalar::pow2(8 * v);
    let mut out = BTreeMap::new();
    for i in 1..=2 * v {
        let mut c = -(choose(2 * v - i) * LocalScalar::pow2(2 * i));
        if i <= v {
            c += &(choose(2 * v + i) * LocalScalar::pow2(-2 * i));
        }
        let c = &pre * &c;
        if !c.is_zero() {
            out.insert(EigenClass { kind: EigenKind::A, i: -i, j: i }, c);
        }
    }
    out
}

/// `(ψ_d − 1)(embed x)` for `x` of degree 0, checked to lie in `ker h`.
pub fn delta0_direct(x: &ZeroLineClass) -> Result<RingElement> {
    if x.degree() != 0 {
        return Err(Error::Precondition(format!("{} is not in degree 0", x.label())));
    }
    let e = x.embed();
    let out = &psi_d(&e) - &e;
    if !h_map(&out).is_zero() {
        return Err(Error::Mismatch(format!("delta0({}) is not annihilated by h", x.label())));
    }
    Ok(out)
}

/// Coordinates of an element of `ker h` on the `a_{−i,i}`.
pub fn ker_h_coordinates(x: &RingElement) -> Result<BTreeMap<EigenClass, LocalScalar>> {
    let anti = antisymmetrize(x)?;
    if !anti.remainder.is_zero() || anti.coefficients.keys().any(|c| c.m() != 0) {
        return Err(Error::Mismatch("element is not in the span of the a_{-i,i}".into()));
    }
    Ok(anti.coefficients)
}

/// `projectCokerH(−embed(basis class))`.
pub fn delta1_column(eps: u8, m: i64, v: u32) -> Result<BTreeMap<EigenClass, CokerEntry>> {
    let x = basis_class(eps, m, v)?;
    project_coker_h(&-&x.embed())
}

fn kind_of(eps: u8) -> EigenKind {
    if eps == 0 {
        EigenKind::A
    } else {
        EigenKind::B
    }
}

/// Largest enumeration index `w` of `A_w^m`/`B_w^m` that the embedded
/// columns `v ≤ V` can reach, read off their actual supports.
pub fn row_window(eps: u8, m: i64, trunc: u32) -> Result<u32> {
    let base = EigenClass::from_mv(kind_of(eps), m, 0);
    let base_gap = base.j - base.i;
    let mut gap = base_gap;
    for v in 0..=trunc {
        let e = basis_class(eps, m, v)?.embed();
        for (mono, _) in e.terms() {
            gap = gap.max((mono.i - mono.j).abs());
        }
    }
    Ok(((gap - base_gap) / 2) as u32)
}

fn empty_matrix(map: Connecting, eps: u8, m: i64, trunc: u32) -> Result<ConnectingMatrix> {
    let w_max = row_window(eps, m, trunc)?;
    let kind = kind_of(eps);
    let columns: Vec<ZeroLineClass> =
        (0..=trunc).map(|v| basis_class(eps, m, v)).collect::<Result<_>>()?;
    let rows: Vec<EigenClass> = (0..=w_max).map(|w| EigenClass::from_mv(kind, m, w)).collect();
    let exponent = coker_h_order(kind, m).exponent();
    let col_labels = (0..=trunc).map(|v| scaled_basis_label(eps, m, v)).collect();
    let row_labels = rows.iter().map(EigenClass::label).collect();
    Ok(ConnectingMatrix {
        map,
        eps,
        m,
        trunc,
        exponent,
        columns,
        rows,
        lifts: LabeledMatrix::new(row_labels, col_labels),
    })
}

fn fill(
    mut cm: ConnectingMatrix,
    column: impl Fn(&ZeroLineClass) -> Result<BTreeMap<EigenClass, LocalScalar>>,
) -> Result<ConnectingMatrix> {
    let index: BTreeMap<EigenClass, usize> = cm.rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    for (j, x) in cm.columns.clone().iter().enumerate() {
        for (cls, c) in column(x)? {
            let i = *index.get(&cls).ok_or_else(|| {
                Error::Mismatch(format!("{} has support outside the row window", x.label()))
            })?;
            cm.lifts.set(i, j, c);
        }
    }
    Ok(cm)
}

/// Matrix of `δ⁰` on `γ_v C_v⁰`, `v ≤ V`.
pub fn delta0_matrix(trunc: u32) -> Result<ConnectingMatrix> {
    fill(empty_matrix(Connecting::Delta0, 0, 0, trunc)?, |x| ker_h_coordinates(&delta0_direct(x)?))
}

/// Matrix of `δ¹` on the sector `(ε, m)`, `v ≤ V`.
pub fn delta1_matrix(eps: u8, m: i64, trunc: u32) -> Result<ConnectingMatrix> {
    fill(empty_matrix(Connecting::Delta1, eps, m, trunc)?, |x| {
        Ok(antisymmetrize(&-&x.embed())?.coefficients)
    })
}

fn delta0_closed(cm: &ConnectingMatrix) -> (ModulePresentation, Vec<Vec<LocalScalar>>, ModulePresentation, Vec<Vec<LocalScalar>>) {
    let (nc, nr) = (cm.columns.len(), cm.rows.len());
    let unit = |n: usize, i: usize| {
        let mut e = vec![LocalScalar::zero(); n];
        e[i] = LocalScalar::one();
        e
    };
    let mut ker = ModulePresentation::zero();
    ker.push(scaled_basis_label(0, 0, 0), Order::Free);
    let kv = vec![unit(nc, 0)];

    let mut coker = ModulePresentation::zero();
    let mut cv = Vec::new();
    for (w, r) in cm.rows.iter().enumerate() {
        // a_{-i,i} with i odd, or beyond the last pivot
        if r.j % 2 == 1 || r.j > 2 * cm.trunc as i64 {
            coker.push(r.label(), Order::Free);
            cv.push(unit(nr, w));
        }
    }
    let three = LocalScalar::from(3);
    for (v, x) in cm.columns.iter().enumerate().skip(1) {
        if x.gamma == 3 {
            coker.push(format!("δ⁰(C_{v}^0)"), Order::Pow3(1));
            let col = cm.lifts.column(v);
            cv.push(col.iter().map(|c| c.checked_div(&three).expect("column divisible by 3")).collect());
        }
    }
    coker.truncated = true;
    (ker, kv, coker, cv)
}

/// `ker δ⁰` and `coker δ⁰`: the closed form (`Z_(3){1}`; free on odd
/// `a_{−i,i}` plus `Z/3{δ⁰(C_v⁰)}` for `3 ∤ v`) verified against the matrix
/// at `V` and again at `V+4`.
pub fn delta0_ker_coker(trunc: u32) -> Result<(ModulePresentation, ModulePresentation)> {
    if trunc < 2 {
        return Err(Error::Precondition("delta0 truncation must be at least 2".into()));
    }
    let mut first = None;
    for v in [trunc, trunc + 4] {
        let cm = delta0_matrix(v)?;
        let (ker, kv, coker, cv) = delta0_closed(&cm);
        let f = cm.dense();
        let (src, tgt) = (cm.source(), cm.target());
        let checked = verify_claim(&ker, &kv, &kernel_preimage(&f, &src, &tgt), &src.relations)
            .and_then(|_| verify_claim(&coker, &cv, &Matrix::identity(tgt.rank()), &f.hcat(&tgt.relations)));
        match (checked, first.is_none()) {
            (Ok(()), true) => first = Some((ker, coker)),
            (Ok(()), false) => {}
            (Err(e), true) => return Err(e),
            (Err(e), false) => {
                return Err(Error::NonStabilized {
                    v: trunc,
                    v_next: v,
                    context: format!("delta0: {e}"),
                })
            }
        }
    }
    Ok(first.expect("set on the first pass"))
}

/// The five inputs of the long exact sequence in degree `t`, with the
/// 0-line truncated at `V` and torsion passed through with zero maps.
pub fn les_input(t: i64, trunc: u32) -> Result<LesInput> {
    let Some((eps, m)) = sector_of_degree(t) else {
        let empty = Presented::free(Vec::new());
        return Ok(LesInput {
            t,
            ker_g: empty.clone(),
            ker_h: empty.clone(),
            delta0: Matrix::zeros(0, 0),
            coker_g: empty.clone(),
            coker_h: empty,
            delta1: Matrix::zeros(0, 0),
        });
    };
    let torsion: Vec<String> = torsion_at_internal(t).into_iter().map(|c| c.name).collect();
    let tors = Presented::from_orders(torsion.clone(), &vec![Order::Pow3(1); torsion.len()]);
    let pad = |f: Matrix| f.hcat(&Matrix::zeros(f.nrows(), torsion.len()));

    let d1 = delta1_matrix(eps, m, trunc)?;
    let zero_line = Presented::from_orders(
        d1.lifts.col_labels.clone(),
        &vec![if t == 0 { Order::Free } else { coker_g_order(t) }; d1.columns.len()],
    );
    let coker_g = zero_line.direct_sum(&tors);
    let coker_h = d1.target();
    let delta1 = pad(d1.dense());

    let (ker_g, ker_h, delta0) = if t == 0 {
        let d0 = delta0_matrix(trunc)?;
        (d0.source().direct_sum(&tors), d0.target(), pad(d0.dense()))
    } else {
        (tors, Presented::free(Vec::new()), Matrix::zeros(0, torsion.len()))
    };
    Ok(LesInput { t, ker_g, ker_h, delta0, coker_g, coker_h, delta1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tmfpi::ZeroLineClass;

    fn a(i: i64) -> EigenClass {
        EigenClass { kind: EigenKind::A, i: -i, j: i }
    }

    #[test]
    fn formula_examples() {
        assert!(delta0_formula(0).is_empty());
        let f = delta0_formula(1);
        assert_eq!(f[&a(1)], LocalScalar::from(-3008));
        assert_eq!(f[&a(2)], LocalScalar::from(-4096));
    }

    #[test]
    fn direct_examples() {
        assert!(delta0_direct(&ZeroLineClass::monomial(0, 0, 0)).unwrap().is_zero());
        let c1 = ZeroLineClass::monomial(3, 0, -1);
        let d = ker_h_coordinates(&delta0_direct(&c1).unwrap()).unwrap();
        assert_eq!(d, delta0_formula(1));
        assert!(delta0_direct(&ZeroLineClass::monomial(1, 0, 0)).is_err());
    }

    #[test]
    fn delta1_examples() {
        assert!(delta1_column(0, 3, 1).unwrap().is_empty());
        let col = delta1_column(0, 3, 0).unwrap();
        assert_eq!(col.len(), 1);
        let (cls, entry) = col.iter().next().unwrap();
        assert_eq!(cls.enum_label(), "A_0^3");
        assert_eq!(entry.order, Order::Pow3(2));
        assert_eq!(entry.value.val3().finite(), Some(1));
    }

    #[test]
    fn delta0_matrix_subdiagonal() {
        let cm = delta0_matrix(6).unwrap();
        for k in 1..=6usize {
            let row = cm.rows.iter().position(|r| *r == a(2 * k as i64)).unwrap();
            let gamma = if k % 3 == 0 { 1 } else { 3 };
            let expect = -(LocalScalar::pow2(12 * k as i64) * LocalScalar::from(gamma));
            assert_eq!(cm.lifts.get(row, k), expect);
        }
    }

    #[test]
    fn delta0_closed_form() {
        let (ker, coker) = delta0_ker_coker(8).unwrap();
        assert_eq!(ker.labels(), ["C_0^0"]);
        let free: Vec<&str> =
            coker.generators.iter().filter(|g| g.order == Order::Free).map(|g| g.label.as_str()).collect();
        for l in ["a_{-1,1}", "a_{-3,3}", "a_{-5,5}", "a_{-7,7}"] {
            assert!(free.contains(&l));
        }
        let tors: Vec<&str> =
            coker.generators.iter().filter(|g| g.order != Order::Free).map(|g| g.label.as_str()).collect();
        assert_eq!(tors, ["δ⁰(C_1^0)", "δ⁰(C_2^0)", "δ⁰(C_4^0)", "δ⁰(C_5^0)", "δ⁰(C_7^0)", "δ⁰(C_8^0)"]);
    }

    #[test]
    fn half_relation_at_degree_zero() {
        let d0 = delta0_matrix(6).unwrap();
        let d1 = delta1_matrix(0, 0, 6).unwrap();
        let half = LocalScalar::new(1, 2).unwrap();
        assert_eq!(d0.rows, d1.rows);
        for j in 0..d0.columns.len() {
            let lhs: Vec<_> = d0.lifts.column(j).iter().map(|x| x * &half).collect();
            assert_eq!(lhs, d1.lifts.column(j));
        }
    }
}
