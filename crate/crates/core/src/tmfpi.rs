//! Additive model of `π_*TMF_(3)`: the 0-line monomial basis
//! `γ c₄ⁿ c₆^ε Δ^ℓ`, the 3-torsion table, the map `g = ψ_[2] − 1`, and the
//! inclusion of the 0-line into `B`.

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::arith::{LocalScalar, Valuation};
use crate::bring::{c4, c6, delta_pow, RingElement};
use crate::error::{Error, Result};
use crate::homology::{ModulePresentation, Order};

/// `γ · c₄ⁿ c₆^ε Δ^ℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZeroLineClass {
    pub n: u32,
    pub eps: u8,
    pub ell: i64,
    pub gamma: u8,
}

/// `1` when `ℓ ≡ 0 (mod 3)`, else `3`.
pub fn gamma_factor(ell: i64) -> u8 {
    if ell.rem_euclid(3) == 0 {
        1
    } else {
        3
    }
}

impl ZeroLineClass {
    /// The bare monomial, `γ = 1`.
    pub fn monomial(n: u32, eps: u8, ell: i64) -> Self {
        ZeroLineClass { n, eps, ell, gamma: 1 }
    }

    /// The basis representative, with `γ` fixed by `ℓ`.
    pub fn basis(n: u32, eps: u8, ell: i64) -> Self {
        ZeroLineClass { n, eps, ell, gamma: gamma_factor(ell) }
    }

    pub fn unscaled(&self) -> Self {
        Self::monomial(self.n, self.eps, self.ell)
    }

    /// Sector index `m = n + ε + 3ℓ`.
    pub fn m(&self) -> i64 {
        self.n as i64 + self.eps as i64 + 3 * self.ell
    }

    /// Internal degree `4m + 2ε`.
    pub fn degree(&self) -> i64 {
        4 * self.m() + 2 * self.eps as i64
    }

    pub fn label(&self) -> String {
        let mut s = String::new();
        if self.gamma != 1 {
            s.push_str(&self.gamma.to_string());
        }
        match self.n {
            0 => {}
            1 => s.push_str("c₄"),
            n => s.push_str(&format!("c₄^{n}")),
        }
        if self.eps == 1 {
            s.push_str("c₆");
        }
        match self.ell {
            0 => {}
            1 => s.push('Δ'),
            l => s.push_str(&format!("Δ^{l}")),
        }
        if s.is_empty() || s == self.gamma.to_string() {
            s.push('1');
            if self.gamma != 1 {
                s = format!("{}", self.gamma);
            }
        }
        s
    }

    /// `γ c₄ⁿ c₆^ε Δ^ℓ` as an element of `B`.
    pub fn embed(&self) -> RingElement {
        let mut x = c4().pow(self.n);
        if self.eps == 1 {
            x = &x * &c6();
        }
        (&x * &delta_pow(self.ell)).scale(&LocalScalar::from(self.gamma as i64))
    }
}

impl Serialize for ZeroLineClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(5))?;
        m.serialize_entry("kind", "zeroline")?;
        m.serialize_entry("n", &self.n)?;
        m.serialize_entry("eps", &self.eps)?;
        m.serialize_entry("ell", &self.ell)?;
        m.serialize_entry("gamma", &self.gamma)?;
        m.end()
    }
}

/// A named 3-torsion class of `π_*TMF_(3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionClass {
    pub name: String,
    pub s: u32,
    pub t_top: i64,
    pub representative: String,
}

impl TorsionClass {
    /// Internal degree `t` with `2t − s = t_top`.
    pub fn t_internal(&self) -> i64 {
        (self.t_top + self.s as i64) / 2
    }
}

impl Serialize for TorsionClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("kind", "torsion")?;
        m.serialize_entry("name", &self.name)?;
        m.serialize_entry("s", &self.s)?;
        m.serialize_entry("tTop", &self.t_top)?;
        m.end()
    }
}

/// One period of the torsion: (name, topological degree, filtration,
/// cobar representative). Coordinates read off the E∞ chart; product
/// classes carry product representatives.
const TORSION_TABLE: [(&str, i64, u32, &str); 8] = [
    ("α", 3, 1, "r"),
    ("β", 10, 2, "r²⊗r−r⊗r²"),
    ("αβ", 13, 3, "r·(r²⊗r−r⊗r²)"),
    ("β²", 20, 4, "(r²⊗r−r⊗r²)²"),
    ("b", 27, 1, "rΔ"),
    ("β³", 30, 6, "(r²⊗r−r⊗r²)³"),
    ("βb", 37, 3, "(r²⊗r−r⊗r²)·rΔ"),
    ("β⁴", 40, 8, "(r²⊗r−r⊗r²)⁴"),
];

pub const TORSION_PERIOD: i64 = 72;

/// Torsion classes in topological degree `t_top`.
pub fn torsion_at(t_top: i64) -> Vec<TorsionClass> {
    TORSION_TABLE
        .iter()
        .filter(|(_, base, _, _)| (t_top - base).rem_euclid(TORSION_PERIOD) == 0)
        .map(|(name, base, s, rep)| {
            let k = (t_top - base).div_euclid(TORSION_PERIOD);
            let name = match k {
                0 => name.to_string(),
                1 => format!("Δ³{name}"),
                _ => format!("Δ^{}{name}", 3 * k),
            };
            TorsionClass { name, s: *s, t_top, representative: rep.to_string() }
        })
        .collect()
}

/// Torsion classes in internal degree `t`.
pub fn torsion_at_internal(t: i64) -> Vec<TorsionClass> {
    let mut filtrations: Vec<u32> = TORSION_TABLE.iter().map(|x| x.2).collect();
    filtrations.sort_unstable();
    filtrations.dedup();
    filtrations
        .into_iter()
        .flat_map(|s| torsion_at(2 * t - s as i64).into_iter().filter(move |c| c.s == s))
        .collect()
}

/// `ℓ^{0,m} = ⌊m/3⌋`, `ℓ^{1,m} = ⌊(m−1)/3⌋`.
pub fn ell_max(eps: u8, m: i64) -> i64 {
    (m - eps as i64).div_euclid(3)
}

/// `γ_v C_v^m` (ε = 0) or `θ_v D_v^m` (ε = 1).
pub fn basis_class(eps: u8, m: i64, v: u32) -> Result<ZeroLineClass> {
    let ell = ell_max(eps, m) - v as i64;
    let n = m - eps as i64 - 3 * ell;
    if n < 0 {
        return Err(Error::Precondition(format!("negative c4 exponent for ({eps}, {m}, {v})")));
    }
    Ok(ZeroLineClass::basis(n as u32, eps, ell))
}

/// `C_v^m` or `D_v^m`, optionally prefixed by a multiplier.
pub fn basis_label(eps: u8, m: i64, v: u32) -> String {
    let c = if eps == 0 { 'C' } else { 'D' };
    format!("{c}_{v}^{m}")
}

/// Label of the basis element `γ_v C_v^m`.
pub fn scaled_basis_label(eps: u8, m: i64, v: u32) -> String {
    let g = gamma_factor(ell_max(eps, m) - v as i64);
    let base = basis_label(eps, m, v);
    if g == 1 {
        base
    } else {
        format!("{g}{base}")
    }
}

/// The unit sequence `{γ_v}` or `{θ_v}` as stated by cases on `m mod 9`.
pub fn gamma_sequence_verbatim(eps: u8, m: i64, len: usize) -> Vec<u8> {
    let r = m.rem_euclid(9);
    let shift = r - eps as i64;
    let start: [u8; 3] = match shift {
        0..=2 => [1, 3, 3],
        3..=5 => [3, 1, 3],
        _ => [3, 3, 1],
    };
    (0..len).map(|v| start[v % 3]).collect()
}

/// The sector's basis `v = 0..=trunc`.
pub fn sector_classes(eps: u8, m: i64, trunc: u32) -> Vec<ZeroLineClass> {
    (0..=trunc).map(|v| basis_class(eps, m, v).expect("exponent is nonnegative")).collect()
}

/// `2^t − 1`, the scalar by which `g` acts in internal degree `t`.
pub fn g_scalar(t: i64) -> LocalScalar {
    LocalScalar::pow2(t) - LocalScalar::one()
}

/// Either kind of class in `π_*TMF_(3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum TmfClass {
    ZeroLine(ZeroLineClass),
    Torsion(TorsionClass),
}

impl TmfClass {
    pub fn t_internal(&self) -> i64 {
        match self {
            TmfClass::ZeroLine(z) => z.degree(),
            TmfClass::Torsion(c) => c.t_internal(),
        }
    }
}

/// `g(x) = (2^t − 1)x`; zero on torsion since `3 | 2^t − 1` for even `t`.
pub fn g_map(x: &TmfClass) -> LocalScalar {
    match x {
        TmfClass::ZeroLine(z) => g_scalar(z.degree()),
        TmfClass::Torsion(_) => LocalScalar::zero(),
    }
}

/// Order of a 0-line class of degree `t ≠ 0` in `coker g`.
pub fn coker_g_order(t: i64) -> Order {
    match g_scalar(t).val3() {
        Valuation::Infinite => Order::Free,
        Valuation::Finite(k) => Order::Pow3(k),
    }
}

/// `ker g` and `coker g` in internal degree `t`, 0-line basis `v ≤ V`.
pub fn ker_coker_g(t: i64, trunc: u32) -> (ModulePresentation, ModulePresentation) {
    let mut ker = ModulePresentation::zero();
    let mut coker = ModulePresentation::zero();
    if let Some((eps, m)) = crate::bring::sector_of_degree(t) {
        for v in 0..=trunc {
            let label = scaled_basis_label(eps, m, v);
            if t == 0 {
                ker.push(label.clone(), Order::Free);
            }
            coker.push(label, coker_g_order(t));
        }
        ker.truncated = t == 0;
        coker.truncated = true;
    }
    for c in torsion_at_internal(t) {
        ker.push(c.name.clone(), Order::Pow3(1));
        coker.push(c.name, Order::Pow3(1));
    }
    (ker, coker)
}
