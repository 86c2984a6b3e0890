//! The graded ring `B = Z_(3)[σ^±, τ^±] ⊕ q₂·Z_(3)[σ^±, τ^±]` with
//! `q₂² = (σ+τ)/2`, the maps `ψ_d`, `ψ_[2]`, `h = ψ_d + 1`, and the
//! antisymmetric eigenbasis `a_{i,j}`, `b_{i,j}` of `h`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{LocalScalar, Valuation};
use crate::error::{Error, Result};
use crate::homology::{
    ops, Generator, Matrix, ModulePresentation, Order, Presented, Subquotient,
};

/// `σ^i τ^j q₂^e` with `e ∈ {0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub e: u8,
    pub i: i64,
    pub j: i64,
}

impl Monomial {
    pub fn new(i: i64, j: i64, e: u8) -> Self {
        assert!(e <= 1, "q2 exponent must be 0 or 1");
        Monomial { e, i, j }
    }

    /// Internal degree `4(i+j) + 2e`.
    pub fn degree(&self) -> i64 {
        4 * (self.i + self.j) + 2 * self.e as i64
    }

    pub fn swap(&self) -> Monomial {
        Monomial { e: self.e, i: self.j, j: self.i }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (sym, k) in [("σ", self.i), ("τ", self.j)] {
            match k {
                0 => {}
                1 => s.push_str(sym),
                _ => s.push_str(&format!("{sym}^{k}")),
            }
        }
        if self.e == 1 {
            s.push_str("q₂");
        }
        if s.is_empty() {
            s.push('1');
        }
        write!(f, "{s}")
    }
}

/// Element of `B` as a finite map from monomials to nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingElement {
    terms: BTreeMap<Monomial, LocalScalar>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(LocalScalar::one())
    }

    pub fn constant(c: LocalScalar) -> Self {
        Self::term(Monomial::new(0, 0, 0), c)
    }

    pub fn term(m: Monomial, c: LocalScalar) -> Self {
        let mut out = Self::zero();
        out.add_term(m, &c);
        out
    }

    pub fn sigma() -> Self {
        Self::term(Monomial::new(1, 0, 0), LocalScalar::one())
    }

    pub fn tau() -> Self {
        Self::term(Monomial::new(0, 1, 0), LocalScalar::one())
    }

    pub fn q2() -> Self {
        Self::term(Monomial::new(0, 0, 1), LocalScalar::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, LocalScalar)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: &LocalScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &LocalScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> LocalScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The common internal degree; `None` for zero.
    pub fn degree(&self) -> Result<Option<i64>> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let Some(d) = it.next() else { return Ok(None) };
        if it.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::Inhomogeneous)
        }
    }

    pub fn scale(&self, c: &LocalScalar) -> RingElement {
        if c.is_zero() {
            return Self::zero();
        }
        RingElement { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> RingElement {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn map_monomials(&self, f: impl Fn(&Monomial) -> (Monomial, LocalScalar)) -> RingElement {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (m2, s) = f(m);
            out.add_term(m2, &(c * &s));
        }
        out
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.signum() < 0;
            let abs = if neg { -c } else { c.clone() };
            let sep = match (k, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let mono = m.to_string();
            if abs.is_one() {
                write!(f, "{sep}{mono}")?;
            } else if mono == "1" {
                write!(f, "{sep}{abs}")?;
            } else {
                write!(f, "{sep}({abs}){mono}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl<'a> Mul<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        let half = LocalScalar::new(1, 2).expect("2 is a unit");
        let mut out = RingElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let c = x * y;
                let (i, j) = (a.i + b.i, a.j + b.j);
                if a.e + b.e < 2 {
                    out.add_term(Monomial::new(i, j, a.e + b.e), &c);
                } else {
                    let h = &c * &half;
                    out.add_term(Monomial::new(i + 1, j, 0), &h);
                    out.add_term(Monomial::new(i, j + 1, 0), &h);
                }
            }
        }
        out
    }
}

macro_rules! forward_owned_ring {
    ($tr:ident, $m:ident) => {
        impl $tr<RingElement> for RingElement {
            type Output = RingElement;
            fn $m(self, rhs: RingElement) -> RingElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned_ring!(Add, add);
forward_owned_ring!(Sub, sub);
forward_owned_ring!(Mul, mul);

#[derive(Serialize, Deserialize)]
struct TermJson {
    i: i64,
    j: i64,
    e: u8,
    num: String,
    den: String,
}

impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                i: m.i,
                j: m.j,
                e: m.e,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let terms = Vec::<TermJson>::deserialize(d)?;
        let mut out = RingElement::zero();
        for t in terms {
            if t.e > 1 {
                return Err(D::Error::custom("q2 exponent must be 0 or 1"));
            }
            let num: BigInt = t.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = t.den.parse().map_err(D::Error::custom)?;
            let c = LocalScalar::new(num, den).map_err(D::Error::custom)?;
            out.add_term(Monomial::new(t.i, t.j, t.e), &c);
        }
        Ok(out)
    }
}

/// `c₄ = 2σ + 8τ`.
pub fn c4() -> RingElement {
    RingElement::from_terms([
        (Monomial::new(1, 0, 0), 2.into()),
        (Monomial::new(0, 1, 0), 8.into()),
    ])
}

/// `c₆ = q₂(4σ − 32τ)`.
pub fn c6() -> RingElement {
    RingElement::from_terms([
        (Monomial::new(1, 0, 1), 4.into()),
        (Monomial::new(0, 1, 1), (-32).into()),
    ])
}

/// `Δ^ℓ = (σ²τ/8)^ℓ`.
pub fn delta_pow(ell: i64) -> RingElement {
    RingElement::term(Monomial::new(2 * ell, ell, 0), LocalScalar::pow2(-3 * ell))
}

/// `ψ_d`: `σ ↦ 4τ`, `τ ↦ 4σ`, `q₂ ↦ −2q₂`.
pub fn psi_d(x: &RingElement) -> RingElement {
    x.map_monomials(|m| {
        let s = LocalScalar::pow2(2 * (m.i + m.j));
        let s = if m.e == 1 { -(s * LocalScalar::from(2)) } else { s };
        (m.swap(), s)
    })
}

/// `ψ_[2]`: multiplication by `2^t` in internal degree `t`.
pub fn psi_2(x: &RingElement) -> RingElement {
    x.map_monomials(|m| (*m, LocalScalar::pow2(m.degree())))
}

/// `h = ψ_d + 1`.
pub fn h_map(x: &RingElement) -> RingElement {
    &psi_d(x) + x
}

/// Monomial `q₂^a q₄^b Δ^c` in the original coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QMonomial {
    pub q2: u32,
    pub q4: u32,
    pub delta: i64,
}

/// Formal polynomial in `q₂`, `q₄`, `Δ^±` with no relation imposed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QPoly {
    terms: BTreeMap<QMonomial, LocalScalar>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(q2: u32, q4: u32, delta: i64, c: LocalScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(QMonomial { q2, q4, delta }, &c);
        p
    }

    pub fn q2() -> Self {
        Self::term(1, 0, 0, LocalScalar::one())
    }

    pub fn q4() -> Self {
        Self::term(0, 1, 0, LocalScalar::one())
    }

    pub fn delta() -> Self {
        Self::term(0, 0, 1, LocalScalar::one())
    }

    pub fn constant(c: LocalScalar) -> Self {
        Self::term(0, 0, 0, c)
    }

    pub fn add_term(&mut self, m: QMonomial, c: &LocalScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QMonomial, &LocalScalar)> {
        self.terms.iter()
    }

    pub fn add(&self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn scale(&self, c: &LocalScalar) -> QPoly {
        let mut out = QPoly::zero();
        for (m, x) in &self.terms {
            out.add_term(*m, &(x * c));
        }
        out
    }

    pub fn mul(&self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let m = QMonomial { q2: a.q2 + b.q2, q4: a.q4 + b.q4, delta: a.delta + b.delta };
                out.add_term(m, &(x * y));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> QPoly {
        (0..n).fold(QPoly::constant(LocalScalar::one()), |acc, _| acc.mul(self))
    }

    /// `ψ_d` in the original coordinates: `q₂ ↦ −2q₂`, `q₄ ↦ q₂² − 4q₄`,
    /// and `Δ ↦ ψ_d(q₄)²(16ψ_d(q₂)² − 64ψ_d(q₄))`, the latter inverted via `B`.
    pub fn psi_d(&self) -> RingElement {
        let q2 = RingElement::q2().scale(&(-2).into());
        let q4 = &from_q(&QPoly::q2().pow(2)) - &from_q(&QPoly::q4()).scale(&4.into());
        let d = delta_from_q(&q2, &q4);
        let d_inv = invert_monomial(&d).expect("ψ_d(Δ) is a monomial");
        let mut out = RingElement::zero();
        for (m, c) in &self.terms {
            let dp = if m.delta >= 0 { d.pow(m.delta as u32) } else { d_inv.pow((-m.delta) as u32) };
            let t = &(&q2.pow(m.q2) * &q4.pow(m.q4)) * &dp;
            out = &out + &t.scale(c);
        }
        out
    }
}

fn delta_from_q(q2: &RingElement, q4: &RingElement) -> RingElement {
    let inner = &(q2 * q2).scale(&16.into()) - &q4.scale(&64.into());
    &(q4 * q4) * &inner
}

fn invert_monomial(x: &RingElement) -> Option<RingElement> {
    let mut it = x.terms();
    let (m, c) = it.next()?;
    if it.next().is_some() || m.e != 0 {
        return None;
    }
    let inv = c.unit_inverse().ok()?;
    Some(RingElement::term(Monomial::new(-m.i, -m.j, 0), inv))
}

/// Normal form of a formal expression via `q₄ = σ/8`, `q₂² = (σ+τ)/2`,
/// `Δ = σ²τ/8`.
pub fn from_q(p: &QPoly) -> RingElement {
    let q4 = RingElement::term(Monomial::new(1, 0, 0), LocalScalar::pow2(-3));
    let mut out = RingElement::zero();
    for (m, c) in &p.terms {
        let t = &(&RingElement::q2().pow(m.q2) * &q4.pow(m.q4)) * &delta_pow(m.delta);
        out = &out + &t.scale(c);
    }
    out
}

/// A preimage under `from_q`, using `σ = 8q₄`, `τ = 2q₂² − 8q₄` and
/// `σ²τ = 8Δ` to clear negative exponents.
pub fn to_q(x: &RingElement) -> QPoly {
    let sigma = QPoly::q4().scale(&8.into());
    let tau = QPoly::q2().pow(2).scale(&2.into()).add(&QPoly::q4().scale(&(-8).into()));
    let mut out = QPoly::zero();
    for (m, c) in x.terms() {
        let k = [0, (-m.i + 1).div_euclid(2), -m.j].into_iter().max().unwrap_or(0);
        let (a, b) = ((m.i + 2 * k) as u32, (m.j + k) as u32);
        let scale = c * &LocalScalar::pow2(-3 * k);
        let mono = sigma
            .pow(a)
            .mul(&tau.pow(b))
            .mul(&QPoly::term(m.e as u32, 0, -k, LocalScalar::one()));
        out = out.add(&mono.scale(&scale));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EigenKind {
    A,
    B,
}

/// `a_{i,j} = σ^iτ^j − σ^jτ^i` or `b_{i,j} = a_{i,j}q₂`, with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EigenClass {
    pub kind: EigenKind,
    pub i: i64,
    pub j: i64,
}

impl EigenClass {
    pub fn new(kind: EigenKind, i: i64, j: i64) -> Result<Self> {
        if i >= j {
            return Err(Error::Precondition(format!("eigenclass needs i < j, got ({i}, {j})")));
        }
        Ok(EigenClass { kind, i, j })
    }

    /// `A_v^m = a_{⌊(m−1)/2⌋−v, ⌈(m+1)/2⌉+v}` and likewise for `B_v^m`.
    pub fn from_mv(kind: EigenKind, m: i64, v: u32) -> Self {
        let v = v as i64;
        EigenClass { kind, i: (m - 1).div_euclid(2) - v, j: (m + 1).div_euclid(2) + (m + 1).rem_euclid(2) + v }
    }

    pub fn m(&self) -> i64 {
        self.i + self.j
    }

    pub fn v(&self) -> u32 {
        ((self.m() - 1).div_euclid(2) - self.i) as u32
    }

    pub fn eps(&self) -> u8 {
        match self.kind {
            EigenKind::A => 0,
            EigenKind::B => 1,
        }
    }

    pub fn degree(&self) -> i64 {
        4 * self.m() + 2 * self.eps() as i64
    }

    pub fn element(&self) -> RingElement {
        let e = self.eps();
        RingElement::from_terms([
            (Monomial::new(self.i, self.j, e), LocalScalar::one()),
            (Monomial::new(self.j, self.i, e), -LocalScalar::one()),
        ])
    }

    /// Eigenvalue of `h`: `1 − 4^{i+j}` on `a`, `1 + 2·4^{i+j}` on `b`.
    pub fn eigenvalue(&self) -> LocalScalar {
        h_eigenvalue(self.kind, self.m())
    }

    /// Order of the class in `coker h`.
    pub fn coker_order(&self) -> Order {
        coker_h_order(self.kind, self.m())
    }

    pub fn label(&self) -> String {
        let c = match self.kind {
            EigenKind::A => 'a',
            EigenKind::B => 'b',
        };
        format!("{c}_{{{},{}}}", self.i, self.j)
    }

    pub fn enum_label(&self) -> String {
        let c = match self.kind {
            EigenKind::A => 'A',
            EigenKind::B => 'B',
        };
        format!("{c}_{}^{}", self.v(), self.m())
    }
}

pub fn h_eigenvalue(kind: EigenKind, m: i64) -> LocalScalar {
    let p = LocalScalar::unit_pow(4, m);
    match kind {
        EigenKind::A => LocalScalar::one() - p,
        EigenKind::B => LocalScalar::one() + p * LocalScalar::from(2),
    }
}

/// `Z/3^{ν₃(m)+1}` on `A`, `Z/3^{ν₃(2m+1)+1}` on `B`, free on `a_{−i,i}`.
pub fn coker_h_order(kind: EigenKind, m: i64) -> Order {
    match h_eigenvalue(kind, m).val3() {
        Valuation::Infinite => Order::Free,
        Valuation::Finite(k) => Order::Pow3(k),
    }
}

/// Antisymmetric coordinates plus the swap-symmetric remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antisymmetrized {
    pub coefficients: BTreeMap<EigenClass, LocalScalar>,
    pub remainder: RingElement,
}

pub fn antisymmetrize(x: &RingElement) -> Result<Antisymmetrized> {
    x.degree()?;
    let half = LocalScalar::new(1, 2).expect("2 is a unit");
    let mut coefficients: BTreeMap<EigenClass, LocalScalar> = BTreeMap::new();
    let mut remainder = RingElement::zero();
    for (m, c) in x.terms() {
        if m.i == m.j {
            remainder.add_term(*m, c);
            continue;
        }
        let kind = if m.e == 0 { EigenKind::A } else { EigenKind::B };
        let (lo, hi, sign) = if m.i < m.j { (m.i, m.j, 1) } else { (m.j, m.i, -1) };
        let hc = c * &half;
        let entry = coefficients.entry(EigenClass { kind, i: lo, j: hi }).or_default();
        if sign > 0 {
            *entry += &hc;
        } else {
            *entry -= &hc;
        }
        remainder.add_term(*m, &hc);
        remainder.add_term(m.swap(), &hc);
    }
    coefficients.retain(|_, c| !c.is_zero());
    Ok(Antisymmetrized { coefficients, remainder })
}

/// Class of a basis element in `coker h`: its order and a canonical value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CokerEntry {
    pub order: Order,
    /// Reduced into `[0, 3^k)` for torsion, exact when free.
    pub value: LocalScalar,
}

/// Image of a homogeneous element in `coker h`, keyed by eigenclass.
pub fn project_coker_h(x: &RingElement) -> Result<BTreeMap<EigenClass, CokerEntry>> {
    let anti = antisymmetrize(x)?;
    let mut out = BTreeMap::new();
    for (cls, c) in anti.coefficients {
        let order = cls.coker_order();
        let value = match order {
            Order::Free => c,
            Order::Pow3(k) => c.reduced(k),
        };
        if !value.is_zero() {
            out.insert(cls, CokerEntry { order, value });
        }
    }
    Ok(out)
}

/// Splits an internal degree `t` into `(eps, m)` with `t = 4m + 2eps`.
pub fn sector_of_degree(t: i64) -> Option<(u8, i64)> {
    if t.rem_euclid(2) != 0 {
        return None;
    }
    Some(((t.rem_euclid(4) / 2) as u8, t.div_euclid(4)))
}

/// Monomials `σ^iτ^jq₂^eps` with `i + j = m` and `|i − j|` at most the gap of
/// the eigenclass with enumeration index `w_max`.
pub fn degree_window(eps: u8, m: i64, w_max: u32) -> Vec<Monomial> {
    let top = EigenClass::from_mv(EigenKind::A, m, w_max);
    let gap = top.j - top.i;
    (top.i..=top.j)
        .filter(|&i| (2 * i - m).abs() <= gap)
        .map(|i| Monomial::new(i, m - i, eps))
        .collect()
}

/// Matrix of `h` on a swap-closed monomial window.
pub fn h_matrix(window: &[Monomial]) -> Matrix {
    let index: BTreeMap<Monomial, usize> = window.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let mut out = Matrix::zeros(window.len(), window.len());
    for (col, m) in window.iter().enumerate() {
        let img = h_map(&RingElement::term(*m, LocalScalar::one()));
        for (mm, c) in img.terms() {
            let row = index[mm];
            out.set(row, col, c.clone());
        }
    }
    out
}

/// Closed form of `ker h` and `coker h` in degree `t`, basis `v ≤ V`.
pub fn ker_coker_h_closed(t: i64, trunc: u32) -> (ModulePresentation, ModulePresentation) {
    let Some((eps, m)) = sector_of_degree(t) else {
        return (ModulePresentation::zero(), ModulePresentation::zero());
    };
    let kind = if eps == 0 { EigenKind::A } else { EigenKind::B };
    let mut ker = ModulePresentation::zero();
    let mut coker = ModulePresentation::zero();
    for v in 0..=trunc {
        let cls = EigenClass::from_mv(kind, m, v);
        if t == 0 {
            ker.push(cls.label(), Order::Free);
        }
        coker.push(cls.label(), cls.coker_order());
    }
    ker.truncated = t == 0;
    coker.truncated = true;
    (ker, coker)
}

/// `ker h` and `coker h` on the monomial window, by Smith normal form.
pub fn ker_coker_h_snf(t: i64, trunc: u32) -> Result<(Subquotient, Subquotient)> {
    let Some((eps, m)) = sector_of_degree(t) else {
        let empty = Presented::free(Vec::new());
        return ops::kernel_cokernel(&Matrix::zeros(0, 0), &empty, &empty);
    };
    let window = degree_window(eps, m, trunc);
    let labels: Vec<String> = window.iter().map(Monomial::to_string).collect();
    let module = Presented::free(labels);
    ops::kernel_cokernel(&h_matrix(&window), &module, &module)
}

/// `ker h`, `coker h` in degree `t`: closed form cross-checked against the
/// SNF at `V` and `V+4`, where the growth must be exactly four more
/// summands of the family order.
pub fn ker_coker_h(t: i64, trunc: u32) -> Result<(ModulePresentation, ModulePresentation)> {
    let (ker, coker) = ker_coker_h_closed(t, trunc);
    let (ker4, coker4) = ker_coker_h_closed(t, trunc + 4);
    let (sk, sc) = ker_coker_h_snf(t, trunc)?;
    let (sk4, sc4) = ker_coker_h_snf(t, trunc + 4)?;
    if !sk.presentation.iso_eq(&ker) || !sc.presentation.iso_eq(&coker) {
        return Err(Error::Mismatch(format!(
            "degree {t}: SNF ker {} / coker {} vs closed form {} / {}",
            sk.presentation.invariants(),
            sc.presentation.invariants(),
            ker.invariants(),
            coker.invariants()
        )));
    }
    if !sk4.presentation.iso_eq(&ker4) || !sc4.presentation.iso_eq(&coker4) {
        return Err(Error::NonStabilized {
            v: trunc,
            v_next: trunc + 4,
            context: format!("h in degree {t}"),
        });
    }
    Ok((ker, coker))
}

/// Labels of an `h` window for display.
pub fn window_generators(window: &[Monomial]) -> Vec<Generator> {
    window.iter().map(|m| Generator::new(m.to_string(), Order::Free)).collect()
}
