//! Smith normal form over the discrete valuation ring Z_(3).
//!
//! Pivots are chosen by minimal 3-adic valuation; ties go to the smallest
//! original (row, column) index so the output is deterministic. Every pivot
//! is scaled to an exact power of 3, so `U·M·V = D` with `D` carrying
//! `3^{e_0}, 3^{e_1}, …` on its diagonal and `e_0 ≤ e_1 ≤ …`.

use crate::arith::{LocalScalar, Valuation};

use super::matrix::Matrix;

/// Which transformation matrices to accumulate.
#[derive(Debug, Clone, Copy, Default)]
pub struct SnfOptions {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl SnfOptions {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn all() -> Self {
        SnfOptions { u: true, u_inv: true, v: true, v_inv: true }
    }
}

#[derive(Debug, Clone)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Exponents of the nonzero diagonal entries, weakly increasing.
    pub exponents: Vec<u32>,
    pub u: Option<Matrix>,
    pub u_inv: Option<Matrix>,
    pub v: Option<Matrix>,
    pub v_inv: Option<Matrix>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn diagonal(&self) -> Matrix {
        let mut d = Matrix::zeros(self.rows, self.cols);
        for (i, &e) in self.exponents.iter().enumerate() {
            d.set(i, i, LocalScalar::pow3(e));
        }
        d
    }

    /// Re-multiplies `U·M·V` and checks it equals `D`, and that the stored
    /// inverses really are inverses (so `U`, `V` are invertible over Z_(3)).
    pub fn verify(&self, m: &Matrix) -> bool {
        let (Some(u), Some(v)) = (&self.u, &self.v) else {
            return false;
        };
        if u.mul(m).mul(v) != self.diagonal() {
            return false;
        }
        if let Some(ui) = &self.u_inv {
            if u.mul(ui) != Matrix::identity(self.rows) {
                return false;
            }
        }
        if let Some(vi) = &self.v_inv {
            if v.mul(vi) != Matrix::identity(self.cols) {
                return false;
            }
        }
        true
    }
}

struct Work {
    a: Matrix,
    vals: Vec<Valuation>,
    cols: usize,
}

impl Work {
    fn val(&self, i: usize, j: usize) -> Valuation {
        self.vals[i * self.cols + j]
    }

    fn refresh(&mut self, i: usize, j: usize) {
        self.vals[i * self.cols + j] = self.a.get(i, j).val3();
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        for j in 0..self.cols {
            self.vals.swap(x * self.cols + j, y * self.cols + j);
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        let rows = self.a.nrows();
        for i in 0..rows {
            self.vals.swap(i * self.cols + x, i * self.cols + y);
        }
    }
}

pub fn smith_normal_form(m: &Matrix, opts: SnfOptions) -> SmithForm {
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut u = opts.u.then(|| Matrix::identity(nr));
    let mut u_inv = opts.u_inv.then(|| Matrix::identity(nr));
    let mut v = opts.v.then(|| Matrix::identity(nc));
    let mut v_inv = opts.v_inv.then(|| Matrix::identity(nc));

    let vals = (0..nr * nc).map(|k| m.get(k / nc, k % nc).val3()).collect();
    let mut w = Work { a: m.clone(), vals, cols: nc };
    let mut row_orig: Vec<usize> = (0..nr).collect();
    let mut col_orig: Vec<usize> = (0..nc).collect();
    let mut exponents = Vec::new();

    for r in 0..nr.min(nc) {
        let mut best: Option<(u32, usize, usize, usize, usize)> = None;
        for i in r..nr {
            for j in r..nc {
                if let Valuation::Finite(e) = w.val(i, j) {
                    let key = (e, row_orig[i], col_orig[j], i, j);
                    if best.map_or(true, |b| (key.0, key.1, key.2) < (b.0, b.1, b.2)) {
                        best = Some(key);
                    }
                }
            }
        }
        let Some((e, _, _, pi, pj)) = best else { break };

        if pi != r {
            w.swap_rows(r, pi);
            row_orig.swap(r, pi);
            if let Some(u) = u.as_mut() {
                u.swap_rows(r, pi);
            }
            if let Some(ui) = u_inv.as_mut() {
                ui.swap_cols(r, pi);
            }
        }
        if pj != r {
            w.swap_cols(r, pj);
            col_orig.swap(r, pj);
            if let Some(v) = v.as_mut() {
                v.swap_cols(r, pj);
            }
            if let Some(vi) = v_inv.as_mut() {
                vi.swap_rows(r, pj);
            }
        }

        let unit = w.a.get(r, r).unit_part().expect("pivot is nonzero");
        if !unit.is_one() {
            let inv = unit.unit_inverse().expect("unit part is a unit");
            w.a.scale_row(r, &inv);
            if let Some(u) = u.as_mut() {
                u.scale_row(r, &inv);
            }
            if let Some(ui) = u_inv.as_mut() {
                ui.scale_col(r, &unit);
            }
        }
        let pivot = LocalScalar::pow3(e);

        let pivot_row_nz: Vec<usize> = (r + 1..nc).filter(|&j| !w.a.get(r, j).is_zero()).collect();
        let pivot_row: Vec<LocalScalar> = pivot_row_nz.iter().map(|&j| w.a.get(r, j).clone()).collect();

        for i in r + 1..nr {
            if w.a.get(i, r).is_zero() {
                continue;
            }
            let f = w.a.get(i, r).checked_div(&pivot).expect("minimal valuation pivot divides");
            for (&j, pr) in pivot_row_nz.iter().zip(&pivot_row) {
                let p = &f * pr;
                *w.a.get_mut(i, j) -= &p;
                w.refresh(i, j);
            }
            w.a.set(i, r, LocalScalar::zero());
            w.refresh(i, r);
            if let Some(u) = u.as_mut() {
                u.add_row_multiple(i, r, &-&f);
            }
            if let Some(ui) = u_inv.as_mut() {
                ui.add_col_multiple(r, i, &f);
            }
        }

        for (&j, pr) in pivot_row_nz.iter().zip(&pivot_row) {
            let g = pr.checked_div(&pivot).expect("minimal valuation pivot divides");
            w.a.set(r, j, LocalScalar::zero());
            w.refresh(r, j);
            if let Some(v) = v.as_mut() {
                v.add_col_multiple(j, r, &-&g);
            }
            if let Some(vi) = v_inv.as_mut() {
                vi.add_row_multiple(r, j, &g);
            }
        }

        exponents.push(e);
    }

    SmithForm { rows: nr, cols: nc, exponents, u, u_inv, v, v_inv }
}
