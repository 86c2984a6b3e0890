//! Individual worked values, one test per module. Values marked as derived
//! in comments are recomputed here from first principles.

use q2bkss::arith::{LocalScalar, Valuation};
use q2bkss::bring::{
    antisymmetrize, c4, c6, delta_pow, from_q, h_map, project_coker_h, psi_2, psi_d, EigenClass, EigenKind,
    Monomial, QPoly, RingElement,
};
use q2bkss::connecting::{
    case_analysis, delta0_direct, delta0_formula, delta1_column, delta1_matrix, leading_term, resolve_u,
    CaseId, LeadingTerm,
};
use q2bkss::homology::{kernel_cokernel, smith_normal_form, Invariants, Matrix, Order, Presented, SnfOptions};
use q2bkss::spectral::{cross_check, e2_filtration, theorem_table};
use q2bkss::tmfpi::{basis_class, ell_max, g_map, torsion_at, TmfClass, ZeroLineClass};

fn s(n: i64) -> LocalScalar {
    LocalScalar::from(n)
}

fn frac(n: i64, d: i64) -> LocalScalar {
    LocalScalar::new(n, d).unwrap()
}

fn mono(i: i64, j: i64, e: u8, c: LocalScalar) -> RingElement {
    RingElement::term(Monomial::new(i, j, e), c)
}

fn sigma() -> RingElement {
    RingElement::sigma()
}

fn tau() -> RingElement {
    RingElement::tau()
}

#[test]
fn arithmetic() {
    assert_eq!(s(0).val3(), Valuation::Infinite);
    assert_eq!(s(4095).val3(), Valuation::Finite(2));
    assert_eq!(frac(1, 16).val3(), Valuation::Finite(0));
    assert_eq!(s(-4096).unit_part().unwrap(), s(-4096));
    assert_eq!(frac(9, 2).unit_part().unwrap(), frac(1, 2));
    // −3008 = −2⁶·47
    assert_eq!(-3008, -(1 << 6) * 47);
    assert_eq!(s(-3008).unit_part().unwrap(), s(-3008));
    // 16·4 = 64 ≡ 1 (mod 9)
    assert_eq!((16 * 4) % 9, 1);
    assert_eq!(frac(1, 16).reduce_mod(2).value, 4u32.into());
    assert!(frac(9, 2).reduce_mod(2).is_zero());
    assert_eq!((-3008i64).rem_euclid(3), 1);
    assert_eq!(s(-3008).reduce_mod(1).value, 1u32.into());
}

#[test]
fn ring_coordinates() {
    assert_eq!(from_q(&QPoly::q4()), sigma().scale(&frac(1, 8)));
    // τ = 2q₂² − 8q₄ gives q₂² = (σ + τ)/2
    assert_eq!(from_q(&QPoly::q2().pow(2)), (&sigma() + &tau()).scale(&frac(1, 2)));
    // Δ = q₄²(16q₂² − 64q₄) with the two substitutions above
    let q4 = sigma().scale(&frac(1, 8));
    let q2sq = (&sigma() + &tau()).scale(&frac(1, 2));
    let delta = &(&q4 * &q4) * &(&q2sq.scale(&s(16)) - &q4.scale(&s(64)));
    assert_eq!(from_q(&QPoly::delta()), delta);
    assert_eq!(delta, mono(2, 1, 0, frac(1, 8)));

    // c₄ = b₂² − 24b₄, c₆ = −b₂³ + 36b₂b₄ with b₂ = 4q₂, b₄ = 2q₄
    let b2 = QPoly::q2().scale(&s(4));
    let b4 = QPoly::q4().scale(&s(2));
    let c4q = b2.pow(2).add(&b4.scale(&s(-24)));
    let c6q = b2.pow(3).scale(&s(-1)).add(&b2.mul(&b4).scale(&s(36)));
    assert_eq!(from_q(&c4q), c4());
    assert_eq!(from_q(&c6q), c6());
    assert_eq!(c4(), &sigma().scale(&s(2)) + &tau().scale(&s(8)));
    let disc = &c4().pow(3) - &c6().pow(2);
    assert_eq!(disc, mono(2, 1, 0, s(216)));
    assert_eq!(disc, delta_pow(1).scale(&s(1728)));
}

#[test]
fn structure_maps() {
    assert_eq!(psi_d(&sigma()), tau().scale(&s(4)));
    // ψ_d(c₄) = 2·4τ + 8·4σ
    assert_eq!(psi_d(&c4()), &sigma().scale(&s(32)) + &tau().scale(&s(8)));
    assert_eq!(psi_2(&RingElement::q2()), RingElement::q2().scale(&s(4)));
    let a = EigenClass::new(EigenKind::A, -1, 1).unwrap().element();
    assert!(h_map(&a).is_zero());
    let b = EigenClass::new(EigenKind::B, 0, 1).unwrap().element();
    assert_eq!(h_map(&b), b.scale(&s(9)));
    // by expansion: ψ_d(τq₂) = 4σ·(−2q₂), ψ_d(σq₂) = 4τ·(−2q₂)
    let expanded = &(&mono(0, 1, 1, s(1)) - &mono(1, 0, 1, s(1))) + &(&mono(1, 0, 1, s(-8)) - &mono(0, 1, 1, s(-8)));
    assert_eq!(h_map(&b), expanded);
    assert_eq!(h_map(&RingElement::one()), RingElement::constant(s(2)));
}

#[test]
fn antisymmetric_parts_and_coker_h() {
    let a12 = EigenClass::new(EigenKind::A, 1, 2).unwrap();
    let anti = antisymmetrize(&a12.element()).unwrap();
    assert_eq!(anti.coefficients.get(&a12), Some(&s(1)));
    assert!(anti.remainder.is_zero());
    let diag = mono(3, 3, 0, s(1));
    let anti = antisymmetrize(&diag).unwrap();
    assert!(anti.coefficients.is_empty());
    assert_eq!(anti.remainder, diag);
    // −3Δ = −(3/8)σ²τ and σ²τ = (s₁₂ − a₁₂)/2 where s₁₂ = σ²τ + στ²
    let x = delta_pow(1).scale(&s(-3));
    let anti = antisymmetrize(&x).unwrap();
    assert_eq!(anti.coefficients.get(&a12), Some(&frac(3, 16)));
    assert_eq!(anti.remainder, &mono(2, 1, 0, frac(-3, 16)) + &mono(1, 2, 0, frac(-3, 16)));

    let y = mono(4, -1, 1, s(5)) + mono(0, 3, 1, s(-7));
    assert!(project_coker_h(&h_map(&y)).unwrap().is_empty());
    // 3/16 ≡ 3·4 ≡ 3 (mod 9)
    let p = project_coker_h(&x).unwrap();
    assert_eq!(p[&a12].value, s(3));
    assert_eq!(p[&a12].order, Order::Pow3(2));
    assert!(project_coker_h(&c4().pow(3).scale(&s(-1))).unwrap().is_empty());
}

#[test]
fn zero_line() {
    assert_eq!(ell_max(0, 0), 0);
    assert_eq!(ell_max(1, 13), 4);
    assert_eq!(ell_max(0, -1), -1);
    assert_eq!(basis_class(0, 0, 1).unwrap(), ZeroLineClass { n: 3, eps: 0, ell: -1, gamma: 3 });
    assert_eq!(basis_class(0, 3, 0).unwrap(), ZeroLineClass { n: 0, eps: 0, ell: 1, gamma: 3 });
    assert_eq!(basis_class(0, 0, 0).unwrap(), ZeroLineClass { n: 0, eps: 0, ell: 0, gamma: 1 });
    assert_eq!(torsion_at(3).iter().map(|c| c.name.as_str()).collect::<Vec<_>>(), ["α"]);
    assert_eq!(torsion_at(27).iter().map(|c| c.name.as_str()).collect::<Vec<_>>(), ["b"]);
    assert!(torsion_at(47).is_empty());
    assert!(g_map(&TmfClass::ZeroLine(ZeroLineClass::monomial(0, 0, 0))).is_zero());
    assert_eq!(g_map(&TmfClass::ZeroLine(ZeroLineClass::monomial(1, 0, 0))), s(15));
    assert!(g_map(&TmfClass::Torsion(torsion_at(3).remove(0))).is_zero());

    assert_eq!(ZeroLineClass::monomial(0, 0, 0).embed(), RingElement::one());
    let three_delta = ZeroLineClass { n: 0, eps: 0, ell: 1, gamma: 3 };
    assert_eq!(three_delta.embed(), mono(2, 1, 0, frac(3, 8)));
    // (2σ + 8τ)³ = 8σ³ + 96σ²τ + 384στ² + 512τ³
    let want = mono(3, 0, 0, s(8)) + mono(2, 1, 0, s(96)) + mono(1, 2, 0, s(384)) + mono(0, 3, 0, s(512));
    assert_eq!(ZeroLineClass::monomial(3, 0, 0).embed(), want);
}

#[test]
fn connecting_maps() {
    assert!(delta0_formula(0).is_empty());
    let a = |i: i64| EigenClass::new(EigenKind::A, -i, i).unwrap();
    let f = delta0_formula(1);
    assert_eq!(f.len(), 2);
    assert_eq!(f[&a(1)], s(-3008));
    assert_eq!(f[&a(2)], s(-(1 << 12)));
    assert!(delta0_direct(&ZeroLineClass::monomial(0, 0, 0)).unwrap().is_zero());
    let direct = delta0_direct(&ZeroLineClass::monomial(3, 0, -1)).unwrap();
    assert_eq!(direct, &a(1).element().scale(&s(-3008)) + &a(2).element().scale(&s(-4096)));
    for v in 0..=8 {
        let x = delta0_direct(&ZeroLineClass::monomial(3 * v, 0, -(v as i64))).unwrap();
        assert!(h_map(&x).is_zero());
    }
    assert!(delta1_column(0, 3, 1).unwrap().is_empty());
    let col = delta1_column(0, 3, 0).unwrap();
    let (cls, entry) = col.iter().next().unwrap();
    assert_eq!(cls.enum_label(), "A_0^3");
    assert_eq!(entry.value, s(3));
    let d1 = delta1_matrix(0, 0, 8).unwrap();
    for v in 1..=8u32 {
        let gamma = s(d1.columns[v as usize].gamma as i64);
        let col: Vec<LocalScalar> = d1.lifts.column(v as usize).iter().map(|x| x.checked_div(&gamma).unwrap()).collect();
        for (w, cls) in d1.rows.iter().enumerate() {
            let half = delta0_formula(v).get(cls).cloned().unwrap_or_default() * frac(1, 2);
            assert_eq!(col[w], half, "v = {v}, {}", cls.label());
        }
    }
    assert_eq!(leading_term(0, 3, 0), LeadingTerm::Row(0));
    assert_eq!(leading_term(0, 3, 1), LeadingTerm::Zero);
    assert_eq!(leading_term(1, 13, 4), LeadingTerm::Star);
}

#[test]
fn cases_and_u() {
    let r = case_analysis(0, -2, 8).unwrap();
    assert_eq!(r.case, CaseId::One);
    assert!(r.matches);
    assert_eq!(&r.closed_kernel.labels()[..4], ["3C_0^-2", "3C_1^-2", "3C_3^-2", "3C_4^-2"]);
    let u = resolve_u(13, 24).unwrap();
    assert_eq!(u.k_double_prime.invariants().sum(&u.u.invariants()), u.kernel.invariants());
    assert!(resolve_u(40, 24).unwrap().certificate.stable);
    assert!(resolve_u(1, 24).is_err());
}

#[test]
fn linear_algebra() {
    let snf = smith_normal_form(&Matrix::from_i64(&[&[3, 1], &[0, 3]]), SnfOptions::none());
    assert_eq!(snf.exponents, [0, 2]);
    assert!(smith_normal_form(&Matrix::zeros(2, 3), SnfOptions::none()).exponents.is_empty());
    for m in [1i64, 3, 9, -6] {
        let x = LocalScalar::one() - LocalScalar::unit_pow(4, m);
        let snf = smith_normal_form(&Matrix::from_rows(&[vec![x]]), SnfOptions::none());
        let k = if m % 9 == 0 { 3 } else if m % 3 == 0 { 2 } else { 1 };
        assert_eq!(snf.exponents, [k]);
    }
    let z9 = Presented::from_orders(vec!["x".into()], &[Order::Pow3(2)]);
    let (k, c) = kernel_cokernel(&Matrix::from_i64(&[&[3]]), &z9, &z9).unwrap();
    assert_eq!(k.presentation.invariants(), Invariants::from_orders([Order::Pow3(1)]));
    assert_eq!(c.presentation.invariants(), Invariants::from_orders([Order::Pow3(1)]));
    let (k, _) = kernel_cokernel(&Matrix::zeros(1, 1), &z9, &z9).unwrap();
    assert_eq!(k.presentation.invariants(), Invariants::from_orders([Order::Pow3(2)]));
}

#[test]
fn page_entries() {
    let page = e2_filtration(-2, 8, 12).unwrap();
    assert_eq!(page.invariants(0, 0), Invariants::from_orders([Order::Free]));
    assert_eq!(page.get(0, 6).unwrap().labels(), ["β"]);
    let r1 = page.invariants(1, 4);
    assert!(r1.count(Order::Pow3(1)) >= 2 && r1.torsion.len() == 1 && r1.free_rank == 0);
    let r2 = page.invariants(2, 0);
    assert!(r2.free_rank > 0 && r2.count(Order::Pow3(1)) > 0 && r2.torsion.len() == 1);
    let r2 = page.invariants(2, 6);
    assert!(r2.count(Order::Pow3(1)) > 0 && r2.count(Order::Pow3(2)) > 0 && r2.torsion.len() == 2);
    assert_eq!(theorem_table(54)[1].placeholder.as_deref(), Some("U^54"));
    assert_eq!(theorem_table(8)[2].families, [Order::Pow3(1)]);
}

#[test]
fn cross_check_at_v16() {
    let (_, f, report) = cross_check(-40, 40, 16).unwrap();
    let bad: Vec<_> = report.failures().collect();
    assert!(bad.is_empty(), "{bad:#?}");
    // the first open degree lies beyond this window
    assert!(f.u.is_empty());
    assert!(report.checks.iter().any(|c| c.bidegree.s == 1 && c.bidegree.t == 2 && c.filtration.count(Order::Pow3(1)) > 1));
}
