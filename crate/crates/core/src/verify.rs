//! Invariant suites run by `verify`. Every check is an exact equality; a
//! check either passes, fails with a detail string, or aborts the suite
//! when a truncation does not stabilize.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{val3_int, LocalScalar, Valuation};
use crate::bring::{
    c4, c6, delta_pow, from_q, h_map, ker_coker_h, psi_2, psi_d, EigenClass, EigenKind, Monomial,
    QPoly, RingElement, sector_of_degree,
};
use crate::connecting::{
    case_analysis, case_of, delta0_direct, delta0_formula, delta0_ker_coker, delta0_matrix,
    delta1_matrix, ker_h_coordinates, resolve_u, verify_leading_term, CaseId, LeadingTerm,
};
use crate::error::{Error, Result};
use crate::homology::{Invariants, Order};
use crate::spectral::{collapse_check, cross_check, E2Page};
use crate::tmfpi::{
    basis_class, coker_g_order, ell_max, g_map, gamma_sequence_verbatim, ker_coker_g, sector_classes, torsion_at,
    torsion_at_internal, TmfClass, ZeroLineClass, TORSION_PERIOD,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Arith,
    Ring,
    Tmf,
    Delta,
    E2,
    All,
}

impl Suite {
    pub const SINGLE: [Suite; 5] = [Suite::Arith, Suite::Ring, Suite::Tmf, Suite::Delta, Suite::E2];

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::SINGLE.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Arith => "arith",
            Suite::Ring => "ring",
            Suite::Tmf => "tmf",
            Suite::Delta => "delta",
            Suite::E2 => "e2",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "arith" => Suite::Arith,
            "ring" => Suite::Ring,
            "tmf" => Suite::Tmf,
            "delta" => Suite::Delta,
            "e2" => Suite::E2,
            "all" => Suite::All,
            _ => return Err(Error::Usage(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct VerifyConfig {
    pub trunc: u32,
    pub t_min: i64,
    pub t_max: i64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { trunc: 16, t_min: -24, t_max: 24, seed: 0x5132_424b }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// `Ok(None)` passes, `Ok(Some(detail))` fails.
type Outcome = Result<Option<String>>;

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    /// Records one check. Non-stabilization aborts; any other error is a
    /// failure of this check alone.
    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Outcome) -> Result<()> {
        let (passed, detail) = match f() {
            Ok(None) => (true, String::new()),
            Ok(Some(d)) => (false, d),
            Err(e @ Error::NonStabilized { .. }) => return Err(e),
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(Check { suite: self.suite, name: name.into(), passed, detail });
        Ok(())
    }
}

/// The first failing item of an exhaustive loop, if any.
fn first_failure<T>(items: impl IntoIterator<Item = T>, mut f: impl FnMut(&T) -> Outcome) -> Outcome {
    for x in items {
        if let Some(d) = f(&x)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

fn expect(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    Ok((!ok).then(detail))
}

pub fn run(suite: Suite, config: &VerifyConfig) -> Result<Report> {
    let mut checks = Vec::new();
    for s in suite.members() {
        let mut rec = Recorder { suite: s, checks: Vec::new() };
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ s as u64);
        match s {
            Suite::Arith => arith_suite(&mut rec, &mut rng)?,
            Suite::Ring => ring_suite(&mut rec, &mut rng, config)?,
            Suite::Tmf => tmf_suite(&mut rec, config)?,
            Suite::Delta => delta_suite(&mut rec, config)?,
            Suite::E2 => e2_suite(&mut rec, config)?,
            Suite::All => unreachable!("expanded by members"),
        }
        checks.extend(rec.checks);
    }
    Ok(Report { config: *config, checks })
}

fn random_scalar(rng: &mut ChaCha8Rng) -> LocalScalar {
    let num: i64 = rng.gen_range(-10_000..=10_000);
    let den = loop {
        let d: i64 = rng.gen_range(1..=500);
        if d % 3 != 0 {
            break d;
        }
    };
    let k = rng.gen_range(0..4);
    LocalScalar::new(num, den).expect("3 does not divide den") * LocalScalar::pow3(k)
}

fn nu3(n: i64) -> u32 {
    val3_int(&BigInt::from(n)).finite().expect("nonzero")
}

fn arith_suite(rec: &mut Recorder, rng: &mut ChaCha8Rng) -> Result<()> {
    let triples: Vec<[LocalScalar; 3]> =
        (0..200).map(|_| [random_scalar(rng), random_scalar(rng), random_scalar(rng)]).collect();
    rec.check("ring axioms on 200 random triples", || {
        first_failure(&triples, |[a, b, c]| {
            let ok = &(a + b) + c == a + &(b + c)
                && &(a * b) * c == a * &(b * c)
                && a + b == b + a
                && a * b == b * a
                && a * &(b + c) == &(a * b) + &(a * c)
                && (a - a).is_zero()
                && a * &LocalScalar::one() == *a
                && a.val3() == (a * &LocalScalar::from(2)).val3();
            expect(ok, || format!("axioms fail on ({a}, {b}, {c})"))
        })
    })?;
    rec.check("v3(4^n - 1) = v3(n) + 1 for 0 < |n| <= 1000", || {
        first_failure((-1000..=1000).filter(|&n| n != 0), |&n| {
            let v = (LocalScalar::unit_pow(4, n) - LocalScalar::one()).val3();
            expect(v == Valuation::Finite(nu3(n) + 1), || format!("n = {n}: got {v}"))
        })
    })?;
    rec.check("eigenvalue valuations for |n| <= 500", || {
        first_failure(-500..=500i64, |&n| {
            let a = (LocalScalar::one() - LocalScalar::unit_pow(4, n)).val3();
            let b = (LocalScalar::one() + LocalScalar::unit_pow(4, n) * LocalScalar::from(2)).val3();
            let a_ok = if n == 0 { a == Valuation::Infinite } else { a == Valuation::Finite(nu3(3 * n)) };
            let b_ok = b == Valuation::Finite(nu3(6 * n + 3));
            expect(a_ok && b_ok, || format!("n = {n}: v(1 - 4^n) = {a}, v(1 + 2*4^n) = {b}"))
        })
    })?;
    rec.check("reduction mod 3^k is a ring homomorphism, k <= 8", || {
        first_failure(&triples, |[a, b, _]| {
            first_failure(1..=8u32, |&k| {
                let sum = (a + b).reduce_mod(k) == a.reduce_mod(k).add(&b.reduce_mod(k));
                let prod = (a * b).reduce_mod(k) == a.reduce_mod(k).mul(&b.reduce_mod(k));
                expect(sum && prod, || format!("k = {k} on ({a}, {b})"))
            })
        })
    })?;
    Ok(())
}

/// A random homogeneous element of `B` of internal degree `4m + 2ε`.
pub fn random_homogeneous(rng: &mut impl Rng, terms: usize) -> RingElement {
    let m: i64 = rng.gen_range(-8..=8);
    let e: u8 = rng.gen_range(0..=1);
    RingElement::from_terms((0..terms).map(|_| {
        let i = rng.gen_range(-10..=10);
        let c = LocalScalar::from(rng.gen_range(-50i64..=50));
        (Monomial::new(i, m - i, e), c)
    }))
}

fn random_qpoly(rng: &mut ChaCha8Rng) -> QPoly {
    (0..3).fold(QPoly::zero(), |acc, _| {
        let c = LocalScalar::from(rng.gen_range(-20i64..=20));
        acc.add(&QPoly::term(rng.gen_range(0..=3), rng.gen_range(0..=2), rng.gen_range(-2..=2), c))
    })
}

fn ring_suite(rec: &mut Recorder, rng: &mut ChaCha8Rng, config: &VerifyConfig) -> Result<()> {
    let samples: Vec<RingElement> = (0..200).map(|_| random_homogeneous(rng, 4)).collect();
    rec.check("psi_d^2 = psi_[2] on 200 homogeneous elements", || {
        first_failure(&samples, |x| expect(psi_d(&psi_d(x)) == psi_2(x), || format!("fails on {x}")))
    })?;
    rec.check("1728 Delta = c4^3 - c6^2", || {
        let lhs = delta_pow(1).scale(&1728.into());
        let rhs = &c4().pow(3) - &c6().pow(2);
        expect(lhs == rhs, || format!("{lhs} vs {rhs}"))
    })?;
    rec.check("h eigenrelations for |i|, |j| <= 16", || {
        let classes = (-16..=16i64).flat_map(|i| {
            (i + 1..=16).flat_map(move |j| [EigenKind::A, EigenKind::B].map(|k| EigenClass { kind: k, i, j }))
        });
        first_failure(classes, |c| {
            let x = c.element();
            expect(h_map(&x) == x.scale(&c.eigenvalue()), || format!("h({}) is not {} times it", c.label(), c.eigenvalue()))
        })
    })?;
    let pairs: Vec<(QPoly, QPoly)> = (0..50).map(|_| (random_qpoly(rng), random_qpoly(rng))).collect();
    rec.check("from_q is a ring homomorphism and commutes with psi_d", || {
        first_failure(&pairs, |(p, q)| {
            let add = from_q(&p.add(q)) == &from_q(p) + &from_q(q);
            let mul = from_q(&p.mul(q)) == &from_q(p) * &from_q(q);
            let psi = p.psi_d() == psi_d(&from_q(p));
            expect(add && mul && psi, || format!("add {add}, mul {mul}, psi_d {psi}"))
        })
    })?;
    let trunc = config.trunc;
    rec.check(format!("ker/coker h closed form = SNF for |t| <= 80, V = {trunc}"), || {
        first_failure((-80..=80i64).filter(|t| t % 2 == 0), |&t| {
            ker_coker_h(t, trunc)?;
            Ok(None)
        })
    })?;
    Ok(())
}

fn tmf_suite(rec: &mut Recorder, config: &VerifyConfig) -> Result<()> {
    let v = config.trunc;
    rec.check(format!("stated gamma sequences match the basis for |m| <= 40, v <= {v}"), || {
        let sectors = (0..=1u8).flat_map(|e| (-40..=40i64).map(move |m| (e, m)));
        first_failure(sectors, |&(e, m)| {
            let stated = gamma_sequence_verbatim(e, m, v as usize + 1);
            let basis: Vec<u8> = sector_classes(e, m, v).iter().map(|c| c.gamma).collect();
            expect(stated == basis, || format!("(eps={e}, m={m}): {stated:?} vs {basis:?}"))
        })
    })?;
    rec.check("eight torsion classes per period", || {
        let top: usize = (0..TORSION_PERIOD).map(|t| torsion_at(t).len()).sum();
        let internal: usize = (0..TORSION_PERIOD / 2).map(|t| torsion_at_internal(t).len()).sum();
        let placed = (0..TORSION_PERIOD / 2)
            .flat_map(torsion_at_internal)
            .all(|c| 2 * c.t_internal() - c.s as i64 == c.t_top);
        expect(top == 8 && internal == 8 && placed, || format!("{top} by tTop, {internal} by t, placed {placed}"))
    })?;
    rec.check("g = 2^t - 1 and coker g = Z/3^(v3(t)+1) for even t != 0, |t| <= 200", || {
        first_failure((-200..=200i64).filter(|t| t % 2 == 0 && *t != 0), |&t| {
            let order = coker_g_order(t);
            let (e, m) = sector_of_degree(t).expect("even degree");
            let x = basis_class(e, m, 0)?;
            let g = g_map(&TmfClass::ZeroLine(x));
            let scalar_ok = g == LocalScalar::pow2(t) - LocalScalar::one();
            expect(order == Order::Pow3(nu3(t) + 1) && scalar_ok, || format!("t = {t}: {order}, g = {g}"))
        })
    })?;
    rec.check("g vanishes on torsion; ker g is torsion away from t = 0", || {
        first_failure(1..=80i64, |&t| {
            let torsion_ok = torsion_at_internal(t).into_iter().all(|c| g_map(&TmfClass::Torsion(c)).is_zero());
            let (ker, _) = ker_coker_g(t, 8);
            let ker_ok = ker.invariants() == Invariants::from_orders(vec![Order::Pow3(1); torsion_at_internal(t).len()]);
            expect(torsion_ok && ker_ok, || format!("t = {t}: ker g = {}", ker.invariants()))
        })
    })?;
    Ok(())
}

fn delta_suite(rec: &mut Recorder, config: &VerifyConfig) -> Result<()> {
    let v = config.trunc;
    rec.check("subdiagonal units u_k = -2^(12k) for k <= 6", || {
        let cm = delta0_matrix(6)?;
        first_failure(1..=6i64, |&k| {
            let row = cm.rows.iter().position(|r| r.kind == EigenKind::A && r.i == -2 * k && r.j == 2 * k);
            let gamma = LocalScalar::from(cm.columns[k as usize].gamma as i64);
            let u = row.and_then(|r| cm.lifts.get(r, k as usize).checked_div(&gamma));
            let want = -LocalScalar::pow2(12 * k);
            expect(u.as_ref() == Some(&want), || format!("k = {k}: {u:?}"))
        })
    })?;
    rec.check("delta0 closed formula = direct computation for v <= 10", || {
        first_failure(0..=10u32, |&w| {
            let direct = ker_h_coordinates(&delta0_direct(&ZeroLineClass::monomial(3 * w, 0, -(w as i64)))?)?;
            expect(direct == delta0_formula(w), || format!("v = {w}"))
        })
    })?;
    rec.check("delta1 = delta0 / 2 on degree 0, v <= 10", || {
        let (d0, d1) = (delta0_matrix(10)?, delta1_matrix(0, 0, 10)?);
        let half = LocalScalar::new(1, 2)?;
        let ok = d0.rows == d1.rows
            && (0..d0.columns.len())
                .all(|j| d0.lifts.column(j).iter().map(|x| x * &half).collect::<Vec<_>>() == d1.lifts.column(j));
        expect(ok, || "columns differ".into())
    })?;
    rec.check("leading terms for |m| <= 20, v <= 16", || {
        let cells = (0..=1u8).flat_map(|e| (-20..=20i64).flat_map(move |m| (0..=16u32).map(move |w| (e, m, w))));
        first_failure(cells, |&(e, m, w)| {
            let lt = verify_leading_term(e, m, w)?;
            let star = e == 1 && m > 0 && m % 27 == 13 && w as i64 == ell_max(e, m);
            expect(star == (lt == LeadingTerm::Star), || format!("(eps={e}, m={m}, v={w}): {lt:?}"))
        })
    })?;
    rec.check(format!("case closed forms for |m| <= 20, V = {v}"), || {
        let sectors = (0..=1u8).flat_map(|e| (-20..=20i64).map(move |m| (e, m))).filter(|&(e, m)| (e, m) != (0, 0));
        first_failure(sectors, |&(e, m)| {
            let r = case_analysis(e, m, v)?;
            expect(r.matches, || format!("{} at (eps={e}, m={m}): {}", r.case, r.failures.join("; ")))
        })
    })?;
    for m in [13, 40] {
        rec.check(format!("K'' splits off ker delta1 at m = {m}, V = {v}"), || {
            if case_of(1, m)? != CaseId::Five {
                return Ok(Some("not the undetermined case".into()));
            }
            let u = resolve_u(m, v)?;
            let top = verify_leading_term(1, m, ell_max(1, m) as u32)?;
            let split = u.k_double_prime.invariants().sum(&u.u.invariants()) == u.kernel.invariants();
            expect(split && u.certificate.stable && top == LeadingTerm::Star, || {
                format!("K'' = {}, U = {}, ker = {}", u.k_double_prime.invariants(), u.u.invariants(), u.kernel.invariants())
            })
        })?;
    }
    rec.check(format!("ker/coker delta0 closed form at V = {v}"), || {
        delta0_ker_coker(v)?;
        Ok(None)
    })?;
    Ok(())
}

/// Torsion classes of `π_*TMF` in every degree of the page appear by name
/// on the 0-line, which holds nothing else off degree 0, and on the 1-line.
pub fn torsion_pass_through(page: &E2Page) -> Option<String> {
    for t in page.degrees() {
        let names: Vec<String> = torsion_at_internal(t).into_iter().map(|c| c.name).collect();
        let row0 = page.get(0, t).map(|p| p.labels().iter().map(|s| s.to_string()).collect::<Vec<_>>());
        let row1 = page.get(1, t).map(|p| p.labels().iter().map(|s| s.to_string()).collect::<Vec<_>>());
        let row0_ok = t == 0 || row0.as_deref().unwrap_or_default() == names.as_slice();
        let row1_ok = names.iter().all(|n| row1.as_deref().unwrap_or_default().contains(n));
        if !(row0_ok && row1_ok) {
            return Some(format!("{} page, t = {t}: torsion {names:?}, rows {row0:?} / {row1:?}", page.provenance));
        }
    }
    None
}

fn e2_suite(rec: &mut Recorder, config: &VerifyConfig) -> Result<()> {
    let (lo, hi, v) = (config.t_min, config.t_max, config.trunc);
    let (direct, filtration, report) = cross_check(lo, hi, v)?;
    rec.check(format!("direct = filtration = closed form on t in [{lo}, {hi}], V = {v}"), || {
        let bad: Vec<String> = report
            .failures()
            .map(|c| format!("(s={}, t={}): {}", c.bidegree.s, c.bidegree.t, c.detail))
            .collect();
        expect(report.passed(), || {
            format!("stable {}, rows s >= 3 zero {}; {}", report.stable, report.higher_rows_zero, bad.join("; "))
        })
    })?;
    rec.check("d2 candidates and collapse at E3", || {
        let c = collapse_check(&filtration);
        expect(c.passed(), || {
            format!(
                "matches {}, row 1 permanent {}, E3 collapse {}, rows s >= 3 zero {}",
                c.matches_expected, c.row1_permanent, c.collapses_at_e3, c.higher_rows_zero
            )
        })
    })?;
    rec.check("torsion pass-through on rows 0 and 1", || {
        Ok(torsion_pass_through(&direct).or_else(|| torsion_pass_through(&filtration)))
    })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::SINGLE.into_iter().chain([Suite::All]) {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(Error::Usage(_))));
    }

    #[test]
    fn cheap_suites_pass() {
        let config = VerifyConfig { trunc: 8, t_min: -8, t_max: 8, ..VerifyConfig::default() };
        for s in [Suite::Arith, Suite::Tmf, Suite::E2] {
            let report = run(s, &config).unwrap();
            let bad: Vec<_> = report.failures().collect();
            assert!(bad.is_empty(), "{bad:#?}");
        }
    }

    #[test]
    fn failures_are_recorded_not_raised() {
        let mut rec = Recorder { suite: Suite::Arith, checks: Vec::new() };
        rec.check("boom", || Err(Error::Mismatch("x".into()))).unwrap();
        rec.check("fine", || Ok(None)).unwrap();
        assert!(!rec.checks[0].passed && rec.checks[1].passed);
        let err = rec.check("unstable", || Err(Error::NonStabilized { v: 8, v_next: 12, context: String::new() }));
        assert!(err.is_err());
    }
}
