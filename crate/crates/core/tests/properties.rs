//! Property tests. Every oracle here is computed independently of the
//! library code it checks.

use std::collections::BTreeSet;

use proptest::prelude::*;

use q2bkss::arith::{LocalScalar, Valuation};
use q2bkss::bring::{
    coker_h_order, delta_pow, from_q, psi_2, psi_d, EigenKind, Monomial, QPoly, RingElement,
};
use q2bkss::connecting::delta1_matrix;
use q2bkss::homology::{kernel_cokernel, smith_normal_form, Matrix, Order, Presented, SnfOptions};
use q2bkss::tmfpi::{coker_g_order, g_scalar};

fn nu3(mut n: i128) -> u32 {
    assert_ne!(n, 0);
    let mut k = 0;
    while n % 3 == 0 {
        n /= 3;
        k += 1;
    }
    k
}

fn scalar() -> impl Strategy<Value = LocalScalar> {
    (-100_000i64..=100_000, 1i64..=300, 0u32..4).prop_filter_map("3 | den", |(n, d, k)| {
        (d % 3 != 0).then(|| LocalScalar::new(n, d).unwrap() * LocalScalar::pow3(k))
    })
}

fn homogeneous() -> impl Strategy<Value = RingElement> {
    (-8i64..=8, 0u8..=1, prop::collection::vec((-12i64..=12, -40i64..=40), 1..6)).prop_map(|(m, e, terms)| {
        RingElement::from_terms(terms.into_iter().map(|(i, c)| (Monomial::new(i, m - i, e), c.into())))
    })
}

fn qpoly(max_delta: i64) -> impl Strategy<Value = QPoly> {
    prop::collection::vec((0u32..=3, 0u32..=2, -max_delta..=max_delta, -9i64..=9), 1..4).prop_map(|terms| {
        terms.into_iter().fold(QPoly::zero(), |acc, (a, b, d, c)| acc.add(&QPoly::term(a, b, d, c.into())))
    })
}

fn int_matrix(max_dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        let entry = prop_oneof![-4i64..=4, (-4i64..=4).prop_map(|x| 3 * x), (-3i64..=3).prop_map(|x| 9 * x)];
        prop::collection::vec(prop::collection::vec(entry, c), r)
    })
}

fn to_matrix(rows: &[Vec<i64>]) -> Matrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Matrix::from_i64(&refs)
}

/// Determinant by cofactor expansion.
fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..1usize << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect()
}

/// Minimal 3-adic valuation of the nonzero `k × k` minors, if any.
fn determinantal_valuation(a: &[Vec<i64>], k: usize) -> Option<u32> {
    let (r, c) = (a.len(), a[0].len());
    let mut best: Option<u32> = None;
    for rows in subsets(r, k) {
        for cols in subsets(c, k) {
            let sub: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j] as i128).collect()).collect();
            let d = det(&sub);
            if d != 0 {
                best = Some(best.map_or(nu3(d), |b| b.min(nu3(d))));
            }
        }
    }
    best
}

/// Span of the columns in `(Z/q)^n`, by closure under addition.
fn span_mod(a: &[Vec<i64>], q: i64) -> BTreeSet<Vec<i64>> {
    let n = a.len();
    let cols: Vec<Vec<i64>> = (0..a[0].len()).map(|j| (0..n).map(|i| a[i][j].rem_euclid(q)).collect()).collect();
    let mut span = BTreeSet::from([vec![0; n]]);
    for col in cols {
        let mut next = span.clone();
        for x in &span {
            let mut y = x.clone();
            for _ in 1..q {
                y = y.iter().zip(&col).map(|(a, b)| (a + b).rem_euclid(q)).collect();
                next.insert(y.clone());
            }
        }
        span = next;
    }
    span
}

/// All `x ∈ (Z/q)^m` with `Ax = 0`.
fn kernel_mod(a: &[Vec<i64>], q: i64) -> Vec<Vec<i64>> {
    let m = a[0].len();
    let total = (q as usize).pow(m as u32);
    (0..total)
        .map(|mut code| {
            (0..m)
                .map(|_| {
                    let d = (code % q as usize) as i64;
                    code /= q as usize;
                    d
                })
                .collect::<Vec<i64>>()
        })
        .filter(|x| a.iter().all(|row| row.iter().zip(x).map(|(r, v)| r * v).sum::<i64>().rem_euclid(q) == 0))
        .collect()
}

fn log3_size(orders: impl Iterator<Item = Order>) -> u32 {
    orders.map(|o| o.exponent().expect("finite")).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalars_form_a_ring(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!((&a * &b).val3(), a.val3() + b.val3());
    }

    #[test]
    fn four_to_the_n_minus_one(n in (-2000i64..=2000).prop_filter("nonzero", |n| *n != 0)) {
        let v = (LocalScalar::unit_pow(4, n) - LocalScalar::one()).val3();
        prop_assert_eq!(v, Valuation::Finite(nu3(n as i128) + 1));
    }

    #[test]
    fn psi_d_squares_to_psi_2(x in homogeneous()) {
        prop_assert_eq!(psi_d(&psi_d(&x)), psi_2(&x));
    }

    #[test]
    fn psi_d_is_multiplicative(x in homogeneous(), y in homogeneous()) {
        prop_assert_eq!(psi_d(&(&x * &y)), &psi_d(&x) * &psi_d(&y));
    }

    #[test]
    fn from_q_is_a_homomorphism(p in qpoly(2), q in qpoly(2)) {
        prop_assert_eq!(from_q(&p.add(&q)), &from_q(&p) + &from_q(&q));
        prop_assert_eq!(from_q(&p.mul(&q)), &from_q(&p) * &from_q(&q));
    }

    /// `ψ_d` through the q-coordinates: `q₂ ↦ −2q₂`, `q₄ ↦ q₂² − 4q₄` and
    /// `Δ = q₄²(16q₂² − 64q₄)` transported along, substituted term by term.
    #[test]
    fn psi_d_matches_q_substitution(p in qpoly(0).prop_flat_map(|p| (Just(p), 0i64..=2))) {
        let (p, d) = p;
        let p = p.mul(&QPoly::term(0, 0, d, LocalScalar::one()));
        let q2 = from_q(&QPoly::q2()).scale(&(-2).into());
        let q4 = &from_q(&QPoly::q2().pow(2)) - &from_q(&QPoly::q4()).scale(&4.into());
        let delta = &(&q4 * &q4) * &(&(&q2 * &q2).scale(&16.into()) - &q4.scale(&64.into()));
        let mut oracle = RingElement::zero();
        for (m, c) in p.terms() {
            let t = &(&q2.pow(m.q2) * &q4.pow(m.q4)) * &delta.pow(m.delta as u32);
            oracle = &oracle + &t.scale(c);
        }
        prop_assert_eq!(psi_d(&from_q(&p)), oracle.clone());
        prop_assert_eq!(p.psi_d(), oracle);
    }

    #[test]
    fn snf_matches_determinantal_divisors(a in int_matrix(4)) {
        let snf = smith_normal_form(&to_matrix(&a), SnfOptions::none());
        let mut partial = 0;
        for k in 1..=a.len().min(a[0].len()) {
            let expected = determinantal_valuation(&a, k);
            if k <= snf.rank() {
                partial += snf.exponents[k - 1];
                prop_assert_eq!(expected, Some(partial));
            } else {
                prop_assert_eq!(expected, None);
            }
        }
    }

    #[test]
    fn kernel_and_cokernel_sizes_mod_nine(a in int_matrix(3)) {
        let (n, m) = (a.len(), a[0].len());
        let src = Presented::from_orders((0..m).map(|j| format!("x{j}")).collect(), &vec![Order::Pow3(2); m]);
        let tgt = Presented::from_orders((0..n).map(|i| format!("y{i}")).collect(), &vec![Order::Pow3(2); n]);
        let (ker, coker) = kernel_cokernel(&to_matrix(&a), &src, &tgt).unwrap();
        let image = span_mod(&a, 9);
        let kernel = kernel_mod(&a, 9);
        let coker_size = 9usize.pow(n as u32) / image.len();
        prop_assert_eq!(3usize.pow(log3_size(coker.presentation.generators.iter().map(|g| g.order))), coker_size);
        prop_assert_eq!(3usize.pow(log3_size(ker.presentation.generators.iter().map(|g| g.order))), kernel.len());
        // the number of cyclic summands is the rank of the 3-torsion
        let socle = kernel.iter().filter(|x| x.iter().all(|v| (3 * v) % 9 == 0)).count();
        prop_assert_eq!(3usize.pow(ker.presentation.generators.len() as u32), socle);
    }

    #[test]
    fn delta1_kills_the_image_of_g(eps in 0u8..=1, m in (-12i64..=12).prop_filter("t != 0", |m| *m != 0)) {
        let t = 4 * m + 2 * eps as i64;
        let cm = delta1_matrix(eps, m, 6).unwrap();
        let k = cm.exponent.expect("torsion sector");
        let kind = if eps == 0 { EigenKind::A } else { EigenKind::B };
        prop_assert_eq!(Some(k), coker_g_order(t).exponent());
        prop_assert_eq!(Some(k), coker_h_order(kind, m).exponent());
        let g = g_scalar(t);
        for (_, x) in cm.lifts.entries() {
            prop_assert!((&g * x).reduced(k).is_zero());
        }
    }
}

#[test]
fn discriminant_identity() {
    let lhs = delta_pow(1).scale(&1728.into());
    let rhs = &q2bkss::bring::c4().pow(3) - &q2bkss::bring::c6().pow(2);
    assert_eq!(lhs, rhs);
}
