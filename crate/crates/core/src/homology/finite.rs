//! Smith normal form over `Z/3^K` on machine words.
//!
//! Used whenever a module is killed by a known `3^K`: then every lattice in
//! play contains `3^K·F^n`, so reducing entries mod `3^K` loses nothing.

use num_bigint::BigInt;

use crate::arith::LocalScalar;

use super::matrix::Matrix;
use super::snf::SnfOptions;

/// Largest `K` for which `2·3^K` fits in a `u64`.
pub const MAX_EXPONENT: u32 = 39;

/// The ring `Z/3^k`.
#[derive(Clone, Copy, Debug)]
pub struct Zmod {
    k: u32,
    q: u64,
}

impl Zmod {
    pub fn new(k: u32) -> Self {
        assert!((1..=MAX_EXPONENT).contains(&k), "exponent {k} out of range");
        Zmod { k, q: 3u64.pow(k) }
    }

    pub fn exponent(self) -> u32 {
        self.k
    }

    pub fn reduce(self, x: &LocalScalar) -> u64 {
        u64::try_from(x.reduce_mod(self.k).value).expect("residue below 3^k")
    }

    /// Representative in `(−q/2, q/2]`.
    pub fn lift(self, x: u64) -> LocalScalar {
        let x = x % self.q;
        if x > self.q / 2 {
            LocalScalar::from_int(BigInt::from(x) - BigInt::from(self.q))
        } else {
            LocalScalar::from_int(BigInt::from(x))
        }
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.q - b) % self.q
    }

    pub fn neg(self, a: u64) -> u64 {
        (self.q - a) % self.q
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    /// 3-adic valuation, `k` for zero.
    pub fn val(self, mut a: u64) -> u32 {
        if a == 0 {
            return self.k;
        }
        let mut e = 0;
        while a % 3 == 0 {
            a /= 3;
            e += 1;
        }
        e
    }

    pub fn pow3(self, e: u32) -> u64 {
        if e >= self.k {
            0
        } else {
            3u64.pow(e)
        }
    }

    /// `a / 3^e` for `val(a) ≥ e`, well defined mod `3^{k−e}`.
    pub fn div3(self, a: u64, e: u32) -> u64 {
        debug_assert!(self.val(a) >= e);
        a / 3u64.pow(e)
    }

    pub fn inv_unit(self, u: u64) -> u64 {
        let (mut r0, mut r1) = (self.q as i128, (u % self.q) as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let f = r0 / r1;
            (r0, r1) = (r1, r0 - f * r1);
            (s0, s1) = (s1, s0 - f * s1);
        }
        assert_eq!(r0, 1, "not a unit mod 3^k");
        s0.rem_euclid(self.q as i128) as u64
    }

    /// Unit `u` with `a = 3^{val a}·u`, for nonzero `a`.
    pub fn unit_part(self, a: u64) -> u64 {
        a / 3u64.pow(self.val(a))
    }
}

/// Dense row-major matrix over `Z/3^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ZMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn reduce(m: &Matrix, r: Zmod) -> Self {
        let mut z = Self::zeros(m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let x = m.get(i, j);
                if !x.is_zero() {
                    z.set(i, j, r.reduce(x));
                }
            }
        }
        z
    }

    pub fn lift(&self, r: Zmod) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if x != 0 {
                    m.set(i, j, r.lift(x));
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn mul(&self, rhs: &ZMatrix, r: Zmod) -> ZMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = ZMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(l, j);
                    if b != 0 {
                        let x = r.add(out.get(i, j), r.mul(a, b));
                        out.set(i, j, x);
                    }
                }
            }
        }
        out
    }

    pub fn select_rows(&self, rows: std::ops::Range<usize>) -> ZMatrix {
        let n = rows.len();
        ZMatrix {
            rows: n,
            cols: self.cols,
            data: self.data[rows.start * self.cols..rows.end * self.cols].to_vec(),
        }
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        if x != y {
            for j in 0..self.cols {
                self.data.swap(x * self.cols + j, y * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        if x != y {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + x, i * self.cols + y);
            }
        }
    }

    fn scale_row(&mut self, i: usize, f: u64, r: Zmod) {
        for j in 0..self.cols {
            let x = self.get(i, j);
            self.set(i, j, r.mul(x, f));
        }
    }

    fn scale_col(&mut self, j: usize, f: u64, r: Zmod) {
        for i in 0..self.rows {
            let x = self.get(i, j);
            self.set(i, j, r.mul(x, f));
        }
    }

    /// `row dst += f·row src`.
    fn add_row_multiple(&mut self, dst: usize, src: usize, f: u64, r: Zmod) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s != 0 {
                let x = r.add(self.get(dst, j), r.mul(f, s));
                self.set(dst, j, x);
            }
        }
    }

    /// `col dst += f·col src`.
    fn add_col_multiple(&mut self, dst: usize, src: usize, f: u64, r: Zmod) {
        for i in 0..self.rows {
            let s = self.get(i, src);
            if s != 0 {
                let x = r.add(self.get(i, dst), r.mul(f, s));
                self.set(i, dst, x);
            }
        }
    }
}

/// `U·M·V = D` over `Z/3^k`; `exponents` lists the pivots with `e < k`.
#[derive(Clone, Debug)]
pub struct ZSmithForm {
    pub exponents: Vec<u32>,
    pub u: Option<ZMatrix>,
    pub u_inv: Option<ZMatrix>,
    pub v: Option<ZMatrix>,
    pub v_inv: Option<ZMatrix>,
}

impl ZSmithForm {
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }
}

/// Same pivot rule as the exact form: minimal valuation, then smallest
/// original (row, column).
pub fn smith_normal_form(m: &ZMatrix, r: Zmod, opts: SnfOptions) -> ZSmithForm {
    let (nr, nc) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = opts.u.then(|| ZMatrix::identity(nr));
    let mut u_inv = opts.u_inv.then(|| ZMatrix::identity(nr));
    let mut v = opts.v.then(|| ZMatrix::identity(nc));
    let mut v_inv = opts.v_inv.then(|| ZMatrix::identity(nc));
    let mut row_orig: Vec<usize> = (0..nr).collect();
    let mut col_orig: Vec<usize> = (0..nc).collect();
    let mut exponents = Vec::new();

    for p in 0..nr.min(nc) {
        let mut best: Option<(u32, usize, usize, usize, usize)> = None;
        for i in p..nr {
            for j in p..nc {
                let x = a.get(i, j);
                if x == 0 {
                    continue;
                }
                let key = (r.val(x), row_orig[i], col_orig[j], i, j);
                if best.map_or(true, |b| (key.0, key.1, key.2) < (b.0, b.1, b.2)) {
                    best = Some(key);
                }
            }
        }
        let Some((e, _, _, pi, pj)) = best else { break };

        a.swap_rows(p, pi);
        row_orig.swap(p, pi);
        if let Some(u) = u.as_mut() {
            u.swap_rows(p, pi);
        }
        if let Some(ui) = u_inv.as_mut() {
            ui.swap_cols(p, pi);
        }
        a.swap_cols(p, pj);
        col_orig.swap(p, pj);
        if let Some(v) = v.as_mut() {
            v.swap_cols(p, pj);
        }
        if let Some(vi) = v_inv.as_mut() {
            vi.swap_rows(p, pj);
        }

        let unit = r.unit_part(a.get(p, p));
        if unit != 1 {
            let inv = r.inv_unit(unit);
            a.scale_row(p, inv, r);
            if let Some(u) = u.as_mut() {
                u.scale_row(p, inv, r);
            }
            if let Some(ui) = u_inv.as_mut() {
                ui.scale_col(p, unit, r);
            }
        }

        for i in p + 1..nr {
            let x = a.get(i, p);
            if x == 0 {
                continue;
            }
            let f = r.div3(x, e);
            a.add_row_multiple(i, p, r.neg(f), r);
            if let Some(u) = u.as_mut() {
                u.add_row_multiple(i, p, r.neg(f), r);
            }
            if let Some(ui) = u_inv.as_mut() {
                ui.add_col_multiple(p, i, f, r);
            }
        }
        for j in p + 1..nc {
            let x = a.get(p, j);
            if x == 0 {
                continue;
            }
            let g = r.div3(x, e);
            a.set(p, j, 0);
            if let Some(v) = v.as_mut() {
                v.add_col_multiple(j, p, r.neg(g), r);
            }
            if let Some(vi) = v_inv.as_mut() {
                vi.add_row_multiple(p, j, g, r);
            }
        }
        exponents.push(e);
    }
    ZSmithForm { exponents, u, u_inv, v, v_inv }
}

/// Generators of `{x : m·x = 0}` over `Z/3^k`.
pub fn kernel(m: &ZMatrix, r: Zmod) -> ZMatrix {
    let s = smith_normal_form(m, r, SnfOptions { v: true, ..SnfOptions::none() });
    let v = s.v.expect("requested");
    let mut cols = Vec::new();
    for j in 0..m.cols {
        let scale = s.exponents.get(j).map_or(1, |&e| r.pow3(r.exponent() - e));
        let c: Vec<u64> = v.column(j).into_iter().map(|x| r.mul(x, scale)).collect();
        if c.iter().any(|&x| x != 0) {
            cols.push(c);
        }
    }
    ZMatrix::from_columns(m.cols, &cols)
}

/// Whether every column of `b` lies in the span of the columns of `a`.
pub fn span_contains(a: &ZMatrix, b: &ZMatrix, r: Zmod) -> bool {
    let s = smith_normal_form(a, r, SnfOptions { u: true, ..SnfOptions::none() });
    let ub = s.u.expect("requested").mul(b, r);
    (0..ub.rows).all(|i| {
        (0..ub.cols).all(|j| {
            let x = ub.get(i, j);
            match s.exponents.get(i) {
                Some(&e) => r.val(x) >= e,
                None => x == 0,
            }
        })
    })
}

/// Cyclic decomposition of `span(k) / span(s)` over `Z/3^k`: generator
/// vectors with their exponents, ascending, trivial summands dropped.
/// `None` when `span(s) ⊄ span(k)`.
pub fn subquotient(k: &ZMatrix, s: &ZMatrix, r: Zmod) -> Option<Vec<(Vec<u64>, u32)>> {
    let n = k.rows;
    let sk = smith_normal_form(k, r, SnfOptions { u: true, u_inv: true, ..SnfOptions::none() });
    let rank = sk.rank();
    let u = sk.u.as_ref().expect("requested");
    let u_inv = sk.u_inv.as_ref().expect("requested");

    // span(k) = ⊕ Z/3^{k−e_c}·b_c with b_c = 3^{e_c}·(column c of U⁻¹)
    let mut basis = ZMatrix::zeros(n, rank);
    for (c, &e) in sk.exponents.iter().enumerate() {
        let f = r.pow3(e);
        for i in 0..n {
            basis.set(i, c, r.mul(u_inv.get(i, c), f));
        }
    }
    let us = u.mul(s, r);
    let mut rel = ZMatrix::zeros(rank, rank + s.cols);
    for (c, &e) in sk.exponents.iter().enumerate() {
        rel.set(c, c, r.pow3(r.exponent() - e));
    }
    for i in 0..n {
        for j in 0..s.cols {
            let x = us.get(i, j);
            if i < rank {
                let e = sk.exponents[i];
                if r.val(x) < e {
                    return None;
                }
                rel.set(i, rank + j, r.div3(x, e));
            } else if x != 0 {
                return None;
            }
        }
    }
    let sc = smith_normal_form(&rel, r, SnfOptions { u_inv: true, ..SnfOptions::none() });
    let gens = basis.mul(sc.u_inv.as_ref().expect("requested"), r);
    let mut out = Vec::new();
    for i in 0..rank {
        let e = sc.exponents.get(i).copied().unwrap_or(r.exponent());
        if e > 0 {
            out.push((normalize(gens.column(i), r), e));
        }
    }
    Some(out)
}

/// Scales by a unit so the first nonzero entry is a power of 3.
pub fn normalize(mut v: Vec<u64>, r: Zmod) -> Vec<u64> {
    if let Some(&first) = v.iter().find(|&&x| x != 0) {
        let inv = r.inv_unit(r.unit_part(first));
        for x in v.iter_mut() {
            *x = r.mul(*x, inv);
        }
    }
    v
}

/// Largest `K` with `3^K·e_i` a column of `relations` for every `i`, when
/// every basis vector has such a column.
pub fn torsion_bound(relations: &Matrix) -> Option<u32> {
    let n = relations.nrows();
    if n == 0 {
        return None;
    }
    let mut best: Vec<Option<u32>> = vec![None; n];
    for j in 0..relations.ncols() {
        let mut nz = (0..n).filter(|&i| !relations.get(i, j).is_zero());
        let (Some(i), None) = (nz.next(), nz.next()) else { continue };
        if let Some(e) = relations.get(i, j).val3().finite() {
            best[i] = Some(best[i].map_or(e, |b: u32| b.min(e)));
        }
    }
    best.into_iter().try_fold(0, |acc, e| e.map(|e| acc.max(e)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_valuation() {
        let r = Zmod::new(4);
        assert_eq!(r.mul(r.inv_unit(2), 2), 1);
        assert_eq!(r.mul(r.inv_unit(80), 80), 1);
        assert_eq!(r.val(54), 3);
        assert_eq!(r.val(0), 4);
        assert_eq!(r.lift(80), LocalScalar::from(-1));
    }

    #[test]
    fn snf_matches_exact_form() {
        let m = Matrix::from_i64(&[&[3, 6, 0], &[9, 1, 2], &[0, 0, 27]]);
        let r = Zmod::new(6);
        let z = smith_normal_form(&ZMatrix::reduce(&m, r), r, SnfOptions::all());
        let exact = super::super::snf::smith_normal_form(&m, SnfOptions::none());
        assert_eq!(z.exponents, exact.exponents);
        let d = z.u.unwrap().mul(&ZMatrix::reduce(&m, r), r).mul(z.v.as_ref().unwrap(), r);
        for (i, &e) in z.exponents.iter().enumerate() {
            assert_eq!(d.get(i, i), r.pow3(e));
        }
    }

    #[test]
    fn subquotient_of_cyclic() {
        // span(3e0, e1) / span(9e0, 3e1) = Z/3 ⊕ Z/3
        let r = Zmod::new(2);
        let k = ZMatrix::from_columns(2, &[vec![3, 0], vec![0, 1]]);
        let s = ZMatrix::from_columns(2, &[vec![0, 3]]);
        let out = subquotient(&k, &s, r).unwrap();
        assert_eq!(out.iter().map(|x| x.1).collect::<Vec<_>>(), vec![1, 1]);
    }
}
