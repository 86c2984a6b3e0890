//! Kernels, cokernels and subquotients of finitely presented Z_(3)-modules.
//!
//! A module is carried as `F^n / im(R)` with labelled basis of `F^n`.
//! Torsion generators are lifted to free ones with a relation column, so
//! every computation reduces to Smith normal forms over Z_(3). When the
//! relevant relations contain `3^K·F^n` the work is done over `Z/3^K`.

use crate::arith::LocalScalar;
use crate::error::{Error, Result};

use super::finite::{self, torsion_bound, ZMatrix, Zmod};
use super::matrix::Matrix;
use super::presentation::{Generator, ModulePresentation, Order};
use super::snf::{smith_normal_form, SnfOptions};

/// `F^n / im(relations)` with a label for each basis vector of `F^n`.
#[derive(Clone, Debug)]
pub struct Presented {
    pub labels: Vec<String>,
    pub relations: Matrix,
}

impl Presented {
    pub fn free(labels: Vec<String>) -> Self {
        let n = labels.len();
        Presented { labels, relations: Matrix::zeros(n, 0) }
    }

    /// One cyclic summand per label, with the given order.
    pub fn from_orders(labels: Vec<String>, orders: &[Order]) -> Self {
        assert_eq!(labels.len(), orders.len());
        let n = labels.len();
        let columns: Vec<Vec<LocalScalar>> = orders
            .iter()
            .enumerate()
            .filter_map(|(i, o)| {
                o.exponent().map(|k| {
                    let mut c = vec![LocalScalar::zero(); n];
                    c[i] = LocalScalar::pow3(k);
                    c
                })
            })
            .collect();
        Presented { labels, relations: Matrix::from_columns(n, &columns) }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn direct_sum(&self, other: &Presented) -> Presented {
        let n = self.rank() + other.rank();
        let mut columns = Vec::new();
        for j in 0..self.relations.ncols() {
            let mut c = self.relations.column(j);
            c.resize(n, LocalScalar::zero());
            columns.push(c);
        }
        for j in 0..other.relations.ncols() {
            let mut c = vec![LocalScalar::zero(); self.rank()];
            c.extend(other.relations.column(j));
            columns.push(c);
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Presented { labels, relations: Matrix::from_columns(n, &columns) }
    }

    /// The module itself as a cyclic decomposition.
    pub fn decompose(&self) -> Result<Subquotient> {
        subquotient(&Matrix::identity(self.rank()), &self.relations, &self.labels)
    }
}

/// A subquotient `K / S` of a labelled free module, with generator vectors.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub presentation: ModulePresentation,
    /// One ambient vector per generator, in the same order.
    pub vectors: Vec<Vec<LocalScalar>>,
}

impl Subquotient {
    pub fn is_zero(&self) -> bool {
        self.presentation.generators.is_empty()
    }
}

/// Whether every column of `b` lies in the column span of `a`.
pub fn span_contains(a: &Matrix, b: &Matrix) -> bool {
    assert_eq!(a.nrows(), b.nrows());
    if b.ncols() == 0 {
        return true;
    }
    match torsion_bound(a) {
        Some(0) => return true,
        Some(k) if k <= finite::MAX_EXPONENT => {
            let r = Zmod::new(k);
            return finite::span_contains(&ZMatrix::reduce(a, r), &ZMatrix::reduce(b, r), r);
        }
        _ => {}
    }
    let s = smith_normal_form(a, SnfOptions { u: true, ..SnfOptions::none() });
    let ub = s.u.as_ref().expect("requested").mul(b);
    (0..ub.nrows()).all(|i| {
        (0..ub.ncols()).all(|j| {
            let x = ub.get(i, j);
            match s.exponents.get(i) {
                Some(&e) => x.checked_div(&LocalScalar::pow3(e)).is_some(),
                None => x.is_zero(),
            }
        })
    })
}

/// Coordinates `c` with `a·c = b` for each column of `b`, when they exist.
pub fn solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let s = smith_normal_form(a, SnfOptions { u: true, v: true, ..SnfOptions::none() });
    let ub = s.u.as_ref().expect("requested").mul(b);
    let mut y = Matrix::zeros(a.ncols(), b.ncols());
    for i in 0..ub.nrows() {
        for j in 0..ub.ncols() {
            let x = ub.get(i, j);
            match s.exponents.get(i) {
                Some(&e) => y.set(i, j, x.checked_div(&LocalScalar::pow3(e))?),
                None if !x.is_zero() => return None,
                None => {}
            }
        }
    }
    Some(s.v.as_ref().expect("requested").mul(&y))
}

/// `span(k) / span(s)` for `span(s) ⊆ span(k)` inside a free module with
/// the given basis labels.
pub fn subquotient(k: &Matrix, s: &Matrix, labels: &[String]) -> Result<Subquotient> {
    let n = k.nrows();
    assert_eq!(s.nrows(), n);
    assert_eq!(labels.len(), n);
    match torsion_bound(s) {
        Some(0) => {
            return Ok(Subquotient { presentation: ModulePresentation::zero(), vectors: Vec::new() })
        }
        Some(e) if e <= finite::MAX_EXPONENT => return finite_subquotient(k, s, labels, Zmod::new(e)),
        _ => {}
    }
    let sk = smith_normal_form(k, SnfOptions { u: true, u_inv: true, ..SnfOptions::none() });
    let r = sk.rank();
    let u = sk.u.as_ref().expect("requested");
    let u_inv = sk.u_inv.as_ref().expect("requested");

    // Basis of span(k): columns of U^{-1} scaled by the invariant factors.
    let mut basis = Matrix::zeros(n, r);
    for (c, &e) in sk.exponents.iter().enumerate() {
        let f = LocalScalar::pow3(e);
        for i in 0..n {
            let x = u_inv.get(i, c);
            if !x.is_zero() {
                basis.set(i, c, x * &f);
            }
        }
    }

    let us = u.mul(s);
    let mut coords = Matrix::zeros(r, s.ncols());
    for i in 0..n {
        for j in 0..s.ncols() {
            let x = us.get(i, j);
            if i < r {
                let y = x.checked_div(&LocalScalar::pow3(sk.exponents[i])).ok_or_else(|| {
                    Error::Precondition("subquotient: relations not contained in submodule".into())
                })?;
                coords.set(i, j, y);
            } else if !x.is_zero() {
                return Err(Error::Precondition(
                    "subquotient: relations not contained in submodule".into(),
                ));
            }
        }
    }

    let sc = smith_normal_form(&coords, SnfOptions { u_inv: true, ..SnfOptions::none() });
    let w_inv = sc.u_inv.as_ref().expect("requested");
    let gens = basis.mul(w_inv);

    let mut torsion = Vec::new();
    let mut free = Vec::new();
    for i in 0..r {
        let order = match sc.exponents.get(i) {
            Some(&0) => continue,
            Some(&e) => Order::Pow3(e),
            None => Order::Free,
        };
        let v = normalize(gens.column(i));
        let entry = (Generator::new(format_vector(&v, labels), order), v);
        if order == Order::Free {
            free.push(entry);
        } else {
            torsion.push(entry);
        }
    }
    torsion.extend(free);
    let (generators, vectors) = torsion.into_iter().unzip();
    Ok(Subquotient { presentation: ModulePresentation::new(generators), vectors })
}

fn finite_subquotient(k: &Matrix, s: &Matrix, labels: &[String], r: Zmod) -> Result<Subquotient> {
    let parts = finite::subquotient(&ZMatrix::reduce(k, r), &ZMatrix::reduce(s, r), r).ok_or_else(
        || Error::Precondition("subquotient: relations not contained in submodule".into()),
    )?;
    let (generators, vectors) = parts
        .into_iter()
        .map(|(v, e)| {
            let v: Vec<LocalScalar> = v.into_iter().map(|x| r.lift(x)).collect();
            (Generator::new(format_vector(&v, labels), Order::Pow3(e)), v)
        })
        .unzip();
    Ok(Subquotient { presentation: ModulePresentation::new(generators), vectors })
}

/// Checks that `f` maps relations of `src` into relations of `tgt`.
pub fn check_well_defined(f: &Matrix, src: &Presented, tgt: &Presented) -> Result<()> {
    if f.nrows() != tgt.rank() || f.ncols() != src.rank() {
        return Err(Error::IllDefinedMap(format!(
            "matrix is {}x{}, expected {}x{}",
            f.nrows(),
            f.ncols(),
            tgt.rank(),
            src.rank()
        )));
    }
    let image = f.mul(&src.relations);
    if span_contains(&tgt.relations, &image) {
        return Ok(());
    }
    for j in 0..image.ncols() {
        let col = Matrix::from_columns(image.nrows(), &[image.column(j)]);
        if !span_contains(&tgt.relations, &col) {
            let witness = format_vector(&src.relations.column(j), &src.labels);
            return Err(Error::IllDefinedMap(format!("relation {witness} does not map to zero")));
        }
    }
    Ok(())
}

/// Generators of `{x ∈ F^n : f(x) ∈ im R_tgt}`, including the source relations.
pub fn kernel_preimage(f: &Matrix, src: &Presented, tgt: &Presented) -> Matrix {
    let n = src.rank();
    let a = f.hcat(&tgt.relations);
    match torsion_bound(&tgt.relations) {
        Some(0) => return Matrix::identity(n).hcat(&src.relations),
        Some(k) if k <= finite::MAX_EXPONENT => {
            // the preimage contains 3^k·F^n, so it is determined mod 3^k
            let r = Zmod::new(k);
            let ker = finite::kernel(&ZMatrix::reduce(&a, r), r).select_rows(0..n).lift(r);
            let mut scaled = Matrix::identity(n);
            for i in 0..n {
                scaled.set(i, i, LocalScalar::pow3(k));
            }
            return ker.hcat(&scaled).hcat(&src.relations);
        }
        _ => {}
    }
    let s = smith_normal_form(&a, SnfOptions { v: true, ..SnfOptions::none() });
    let v = s.v.as_ref().expect("requested");
    let cols: Vec<Vec<LocalScalar>> =
        (s.rank()..a.ncols()).map(|j| v.column(j)[..n].to_vec()).collect();
    Matrix::from_columns(n, &cols).hcat(&src.relations)
}

/// Kernel of the induced map `src → tgt`.
pub fn kernel(f: &Matrix, src: &Presented, tgt: &Presented) -> Result<Subquotient> {
    subquotient(&kernel_preimage(f, src, tgt), &src.relations, &src.labels)
}

/// Cokernel of the induced map `src → tgt`.
pub fn cokernel(f: &Matrix, tgt: &Presented) -> Result<Subquotient> {
    subquotient(&Matrix::identity(tgt.rank()), &f.hcat(&tgt.relations), &tgt.labels)
}

/// Kernel and cokernel after verifying the map is well defined.
pub fn kernel_cokernel(
    f: &Matrix,
    src: &Presented,
    tgt: &Presented,
) -> Result<(Subquotient, Subquotient)> {
    check_well_defined(f, src, tgt)?;
    Ok((kernel(f, src, tgt)?, cokernel(f, tgt)?))
}

/// Checks that generator vectors with the orders and relations of `claim`
/// give a well-defined surjection onto `span(k) / span(s)` with the same
/// invariants. For modules of finite length this is an isomorphism.
pub fn verify_claim(
    claim: &ModulePresentation,
    vectors: &[Vec<LocalScalar>],
    k: &Matrix,
    s: &Matrix,
) -> Result<()> {
    let n = k.nrows();
    assert_eq!(claim.generators.len(), vectors.len());
    let x = Matrix::from_columns(n, vectors);
    if !span_contains(k, &x) {
        return Err(Error::Mismatch("claimed generators leave the submodule".into()));
    }
    let mut rels: Vec<(String, Vec<LocalScalar>)> = Vec::new();
    for (g, v) in claim.generators.iter().zip(vectors) {
        if let Order::Pow3(e) = g.order {
            let f = LocalScalar::pow3(e);
            rels.push((format!("order of {}", g.label), v.iter().map(|c| c * &f).collect()));
        }
    }
    for r in &claim.relations {
        let mut c = vec![LocalScalar::zero(); n];
        for (g, a) in &r.coefficients {
            for (ci, vi) in c.iter_mut().zip(&vectors[*g]) {
                *ci += &(vi * a);
            }
        }
        rels.push((format!("relation {}", r.label), c));
    }
    let all: Vec<Vec<LocalScalar>> = rels.iter().map(|(_, c)| c.clone()).collect();
    if !span_contains(s, &Matrix::from_columns(n, &all)) {
        let (what, _) = rels
            .iter()
            .find(|(_, c)| !span_contains(s, &Matrix::from_columns(n, std::slice::from_ref(c))))
            .expect("some relation fails");
        return Err(Error::Mismatch(format!("claimed {what} does not hold")));
    }
    if !span_contains(&x.hcat(s), k) {
        return Err(Error::Mismatch("claimed generators do not span".into()));
    }
    let actual = subquotient(k, s, &vec![String::new(); n])?.presentation.invariants();
    let claimed = claim.invariants();
    if actual != claimed {
        return Err(Error::Mismatch(format!("invariants differ: claimed {claimed}, actual {actual}")));
    }
    Ok(())
}

/// Scales a vector by a unit so that its first nonzero entry is a power of 3.
pub fn normalize(mut v: Vec<LocalScalar>) -> Vec<LocalScalar> {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        let u = first.unit_part().expect("nonzero").unit_inverse().expect("unit");
        for x in v.iter_mut() {
            *x *= &u;
        }
    }
    v
}

/// Human-readable `Σ c·label`, truncated after a few terms.
pub fn format_vector(v: &[LocalScalar], labels: &[String]) -> String {
    const SHOWN: usize = 3;
    let terms: Vec<String> = v
        .iter()
        .zip(labels)
        .filter(|(x, _)| !x.is_zero())
        .map(|(x, l)| if x.is_one() { l.clone() } else { format!("{x}*{l}") })
        .collect();
    match terms.len() {
        0 => "0".into(),
        n if n <= SHOWN => terms.join(" + "),
        n => format!("{} + ... ({} terms)", terms[..SHOWN].join(" + "), n),
    }
}
