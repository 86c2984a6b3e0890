use std::collections::BTreeMap;

use crate::bring::{degree_window, h_matrix, psi_d, sector_of_degree, Monomial};
use crate::connecting::row_window;
use crate::error::Result;
use crate::homology::{complex_cohomology, Cohomology, Matrix, Order, Presented, ThreeTermComplex};
use crate::tmfpi::{g_scalar, scaled_basis_label, sector_classes, torsion_at_internal};

/// The truncated complex `π_t → B × π_t → B` in internal degree `t`.
///
/// `d¹x = ((ψ_d − 1)(ι x), (2^t − 1)x)` and `d²(b, y) = h(b) − ι y`, with
/// `ι` the inclusion of the 0-line; torsion maps to zero under both. The
/// `B`-window is every monomial of the degree up to the widest support of
/// an included 0-line class, so the truncation is a subcomplex.
pub fn direct_complex(t: i64, trunc: u32) -> Result<ThreeTermComplex> {
    let torsion: Vec<String> = torsion_at_internal(t).into_iter().map(|c| c.name).collect();
    let tors = Presented::from_orders(torsion.clone(), &vec![Order::Pow3(1); torsion.len()]);
    let Some((eps, m)) = sector_of_degree(t) else {
        let empty = Presented::free(Vec::new());
        return Ok(ThreeTermComplex {
            m0: empty.clone(),
            m1: empty.clone(),
            m2: empty,
            d1: Matrix::zeros(0, 0),
            d2: Matrix::zeros(0, 0),
        });
    };
    let window = degree_window(eps, m, row_window(eps, m, trunc)?);
    let index: BTreeMap<Monomial, usize> = window.iter().enumerate().map(|(k, x)| (*x, k)).collect();
    let classes = sector_classes(eps, m, trunc);
    let (nw, nz, nt) = (window.len(), classes.len(), torsion.len());

    let zero_line = Presented::free((0..=trunc).map(|v| scaled_basis_label(eps, m, v)).collect());
    let b = Presented::free(window.iter().map(Monomial::to_string).collect());
    let m0 = zero_line.direct_sum(&tors);
    let m1 = b.direct_sum(&zero_line).direct_sum(&tors);
    let m2 = b;

    let g = g_scalar(t);
    let mut d1 = Matrix::zeros(nw + nz + nt, nz + nt);
    let mut d2 = Matrix::zeros(nw, nw + nz + nt);
    let h = h_matrix(&window);
    for i in 0..nw {
        for j in 0..nw {
            d2.set(i, j, h.get(i, j).clone());
        }
    }
    for (v, x) in classes.iter().enumerate() {
        let e = x.embed();
        let dx = &psi_d(&e) - &e;
        for (mono, c) in dx.terms() {
            d1.set(index[mono], v, c.clone());
        }
        d1.set(nw + v, v, g.clone());
        for (mono, c) in e.terms() {
            d2.set(index[mono], nw + v, -c);
        }
    }
    Ok(ThreeTermComplex { m0, m1, m2, d1, d2 })
}

/// `H^s` of the direct complex.
pub fn direct_cohomology(t: i64, trunc: u32) -> Result<Cohomology> {
    complex_cohomology(&direct_complex(t, trunc)?)
}
