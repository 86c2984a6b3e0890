use serde::Serialize;

use crate::error::{Error, Result};

use crate::arith::LocalScalar;

use super::finite::{self, ZMatrix, Zmod};
use super::matrix::Matrix;
use super::ops::{self, format_vector, span_contains, subquotient, Presented};
use super::presentation::{ModulePresentation, Order};
use super::snf::SnfOptions;

/// `M0 --d1--> M1 --d2--> M2` with `d2∘d1 = 0`.
#[derive(Clone, Debug)]
pub struct ThreeTermComplex {
    pub m0: Presented,
    pub m1: Presented,
    pub m2: Presented,
    pub d1: Matrix,
    pub d2: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cohomology {
    pub h0: ModulePresentation,
    pub h1: ModulePresentation,
    pub h2: ModulePresentation,
}

impl Cohomology {
    pub fn row(&self, s: usize) -> Option<&ModulePresentation> {
        match s {
            0 => Some(&self.h0),
            1 => Some(&self.h1),
            2 => Some(&self.h2),
            _ => None,
        }
    }
}

impl ThreeTermComplex {
    /// Verifies both maps are well defined and compose to zero.
    pub fn check(&self) -> Result<()> {
        ops::check_well_defined(&self.d1, &self.m0, &self.m1)?;
        ops::check_well_defined(&self.d2, &self.m1, &self.m2)?;
        let comp = self.d2.mul(&self.d1);
        if span_contains(&self.m2.relations, &comp) {
            return Ok(());
        }
        for j in 0..comp.ncols() {
            let col = Matrix::from_columns(comp.nrows(), &[comp.column(j)]);
            if !span_contains(&self.m2.relations, &col) {
                return Err(Error::NotAComplex(format!(
                    "d2(d1({})) = {} is nonzero",
                    self.m0.labels[j],
                    format_vector(&comp.column(j), &self.m2.labels)
                )));
            }
        }
        unreachable!("some column must fail")
    }
}

pub fn complex_cohomology(c: &ThreeTermComplex) -> Result<Cohomology> {
    c.check()?;
    if let Some(h) = finite_cohomology(c) {
        return Ok(h);
    }
    exact_cohomology(c)
}

/// The same without the finite-length shortcut.
fn exact_cohomology(c: &ThreeTermComplex) -> Result<Cohomology> {
    let h0 = ops::kernel(&c.d1, &c.m0, &c.m1)?;
    let z1 = ops::kernel_preimage(&c.d2, &c.m1, &c.m2);
    let b1 = c.d1.hcat(&c.m1.relations);
    let h1 = subquotient(&z1, &b1, &c.m1.labels)?;
    let h2 = ops::cokernel(&c.d2, &c.m2)?;
    Ok(Cohomology { h0: h0.presentation, h1: h1.presentation, h2: h2.presentation })
}

/// Basis vectors of a module that carry a single diagonal relation and
/// touch no differential, with that relation's exponent. `None` if some
/// other basis vector is involved in a relation.
fn isolated_torsion(p: &Presented, touched: impl Fn(usize) -> bool) -> Option<Vec<(usize, u32)>> {
    let n = p.rank();
    let mut out = Vec::new();
    let mut covered = vec![false; n];
    for j in 0..p.relations.ncols() {
        let nz: Vec<usize> = (0..n).filter(|&i| !p.relations.get(i, j).is_zero()).collect();
        let [i] = nz[..] else { return None };
        if covered[i] || touched(i) {
            return None;
        }
        covered[i] = true;
        out.push((i, p.relations.get(i, j).val3().finite()?));
    }
    Some(out)
}

/// Cohomology of a complex that is free apart from split torsion and has
/// finite cohomology, computed mod `3^M` and certified.
///
/// With `B = d2` of full row rank and largest invariant `3^{K0}`, the last
/// columns of `V` from `U·B·V = D` mod `3^M` agree mod `3^{M−K0}` with a
/// basis of the exact `ker B`; `d1` in that basis is then known mod
/// `3^N`, `N = M − K0`. If it has full rank with every invariant below
/// `3^N`, these are the invariants of `H¹` and its representatives are
/// exact up to `3^N·ker B ⊆ im d1`. Returns `None` when a hypothesis fails.
fn finite_cohomology(c: &ThreeTermComplex) -> Option<Cohomology> {
    let t0 = isolated_torsion(&c.m0, |i| (0..c.d1.nrows()).any(|r| !c.d1.get(r, i).is_zero()))?;
    let t1 = isolated_torsion(&c.m1, |i| {
        (0..c.d1.ncols()).any(|k| !c.d1.get(i, k).is_zero())
            || (0..c.d2.nrows()).any(|r| !c.d2.get(r, i).is_zero())
    })?;
    let t2 = isolated_torsion(&c.m2, |i| (0..c.d2.ncols()).any(|k| !c.d2.get(i, k).is_zero()))?;
    let free = |p: &Presented, t: &[(usize, u32)]| -> Vec<usize> {
        (0..p.rank()).filter(|i| t.iter().all(|x| x.0 != *i)).collect()
    };
    let (f0, f1, f2) = (free(&c.m0, &t0), free(&c.m1, &t1), free(&c.m2, &t2));
    if f0.len() + f2.len() != f1.len() {
        return None;
    }
    let sub = |m: &Matrix, rows: &[usize], cols: &[usize]| {
        let mut s = Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                s.set(a, b, m.get(i, j).clone());
            }
        }
        s
    };
    let (a, b) = (sub(&c.d1, &f1, &f0), sub(&c.d2, &f2, &f1));

    let (h1, h2) = [24, finite::MAX_EXPONENT].into_iter().find_map(|m| {
        let r = Zmod::new(m);
        let opts = SnfOptions { u_inv: true, v: true, v_inv: true, ..SnfOptions::none() };
        let sb = finite::smith_normal_form(&ZMatrix::reduce(&b, r), r, opts);
        if sb.rank() != f2.len() {
            return None;
        }
        let k0 = sb.exponents.iter().copied().max().unwrap_or(0);
        let n = m - k0;
        if n == 0 {
            return None;
        }
        let rn = Zmod::new(n);
        let down = |z: ZMatrix| ZMatrix::reduce(&z.lift(r), rn);
        let rank = sb.rank();
        let coords = down(
            sb.v_inv.as_ref().expect("requested").mul(&ZMatrix::reduce(&a, r), r).select_rows(rank..f1.len()),
        );
        let v = sb.v.as_ref().expect("requested");
        let z = ZMatrix::from_columns(f1.len(), &(rank..f1.len()).map(|j| v.column(j)).collect::<Vec<_>>());
        let z = down(z);
        let sc = finite::smith_normal_form(&coords, rn, SnfOptions { u_inv: true, ..SnfOptions::none() });
        if sc.rank() != f0.len() {
            return None;
        }
        let gens = z.mul(sc.u_inv.as_ref().expect("requested"), rn);
        let h1: Vec<(Vec<u64>, u32, Zmod)> = sc
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (finite::normalize(gens.column(i), rn), e, rn))
            .collect();
        let ub = sb.u_inv.as_ref().expect("requested");
        let h2: Vec<(Vec<u64>, u32, Zmod)> = sb
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (finite::normalize(ub.column(i), r), e, r))
            .collect();
        Some((h1, h2))
    })?;

    let build = |p: &Presented, free: &[usize], computed: Vec<(Vec<u64>, u32, Zmod)>, tors: &[(usize, u32)]| {
        let mut out = ModulePresentation::zero();
        for (v, e, r) in computed {
            let mut full = vec![LocalScalar::zero(); p.rank()];
            for (&i, x) in free.iter().zip(v) {
                full[i] = r.lift(x);
            }
            out.push(format_vector(&full, &p.labels), Order::Pow3(e));
        }
        for &(i, e) in tors {
            if e > 0 {
                out.push(p.labels[i].clone(), Order::Pow3(e));
            }
        }
        out
    };
    Some(Cohomology {
        h0: build(&c.m0, &f0, Vec::new(), &t0),
        h1: build(&c.m1, &f1, h1, &t1),
        h2: build(&c.m2, &f2, h2, &t2),
    })
}
