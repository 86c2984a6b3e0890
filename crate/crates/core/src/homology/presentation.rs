use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::arith::LocalScalar;

use super::matrix::Matrix;
use super::snf::{smith_normal_form, SnfOptions};

/// Order of a cyclic summand: `Z/3^k` with `k ≥ 1`, or free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Pow3(u32),
    Free,
}

impl Order {
    /// `Pow3(0)` is the trivial module and has no `Order`.
    pub fn from_exponent(k: u32) -> Option<Order> {
        (k > 0).then_some(Order::Pow3(k))
    }

    pub fn exponent(self) -> Option<u32> {
        match self {
            Order::Pow3(k) => Some(k),
            Order::Free => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Free => write!(f, "Z(3)"),
            Order::Pow3(1) => write!(f, "Z/3"),
            Order::Pow3(k) => write!(f, "Z/3^{k}"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Free => s.serialize_str("free"),
            Order::Pow3(k) if *k <= 40 => s.serialize_u64(3u64.pow(*k)),
            Order::Pow3(k) => s.serialize_str(&crate::arith::pow3(*k).to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub label: String,
    pub order: Order,
}

impl Generator {
    pub fn new(label: impl Into<String>, order: Order) -> Self {
        Generator { label: label.into(), order }
    }
}

/// Extra relation `Σ c_i g_i = 0` among generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub label: String,
    pub coefficients: Vec<(usize, LocalScalar)>,
}

impl Serialize for Relation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("label", &self.label)?;
        let terms: Vec<_> = self
            .coefficients
            .iter()
            .map(|(g, c)| serde_json::json!({"generator": g, "coefficient": c.to_string()}))
            .collect();
        m.serialize_entry("coefficients", &terms)?;
        m.end()
    }
}

/// Rank plus multiset of torsion exponents; a complete isomorphism invariant.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Invariants {
    pub free_rank: usize,
    pub torsion: BTreeMap<u32, usize>,
}

impl Invariants {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_orders(orders: impl IntoIterator<Item = Order>) -> Self {
        let mut inv = Self::zero();
        for o in orders {
            inv.push(o, 1);
        }
        inv
    }

    pub fn push(&mut self, order: Order, count: usize) {
        if count == 0 {
            return;
        }
        match order {
            Order::Free => self.free_rank += count,
            Order::Pow3(k) => *self.torsion.entry(k).or_default() += count,
        }
    }

    pub fn count(&self, order: Order) -> usize {
        match order {
            Order::Free => self.free_rank,
            Order::Pow3(k) => self.torsion.get(&k).copied().unwrap_or(0),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn total(&self) -> usize {
        self.free_rank + self.torsion.values().sum::<usize>()
    }

    pub fn sum(&self, other: &Invariants) -> Invariants {
        let mut out = self.clone();
        out.free_rank += other.free_rank;
        for (&k, &c) in &other.torsion {
            *out.torsion.entry(k).or_default() += c;
        }
        out
    }

    /// Multiset difference; `None` unless `other` is a sub-multiset.
    pub fn checked_sub(&self, other: &Invariants) -> Option<Invariants> {
        let mut out = self.clone();
        out.free_rank = out.free_rank.checked_sub(other.free_rank)?;
        for (&k, &c) in &other.torsion {
            let e = out.torsion.get_mut(&k)?;
            *e = e.checked_sub(c)?;
            if *e == 0 {
                out.torsion.remove(&k);
            }
        }
        Some(out)
    }

    pub fn orders(&self) -> impl Iterator<Item = (Order, usize)> + '_ {
        self.torsion
            .iter()
            .map(|(&k, &c)| (Order::Pow3(k), c))
            .chain((self.free_rank > 0).then_some((Order::Free, self.free_rank)))
    }
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .orders()
            .map(|(o, c)| if c == 1 { o.to_string() } else { format!("({o})^{c}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Labelled cyclic decomposition of a finitely generated Z_(3)-module.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ModulePresentation {
    pub generators: Vec<Generator>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Relation>,
    /// Set when the module is the truncation of an infinite family.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub truncated: bool,
    /// Symbolic summand that is not computed, such as an undetermined `U^t`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub placeholder: Option<String>,
}

impl ModulePresentation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(generators: Vec<Generator>) -> Self {
        ModulePresentation { generators, ..Self::default() }
    }

    pub fn is_zero(&self) -> bool {
        self.invariants().is_zero() && self.placeholder.is_none()
    }

    pub fn push(&mut self, label: impl Into<String>, order: Order) {
        self.generators.push(Generator::new(label, order));
    }

    pub fn direct_sum(&self, other: &ModulePresentation) -> ModulePresentation {
        let offset = self.generators.len();
        let mut out = self.clone();
        out.generators.extend(other.generators.iter().cloned());
        out.relations.extend(other.relations.iter().map(|r| Relation {
            label: r.label.clone(),
            coefficients: r.coefficients.iter().map(|(g, c)| (g + offset, c.clone())).collect(),
        }));
        out.truncated |= other.truncated;
        out.placeholder = match (&self.placeholder, &other.placeholder) {
            (Some(a), Some(b)) => Some(format!("{a} + {b}")),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        out
    }

    /// Invariants of the module, taking any extra relations into account.
    pub fn invariants(&self) -> Invariants {
        if self.relations.is_empty() {
            return Invariants::from_orders(self.generators.iter().map(|g| g.order));
        }
        let n = self.generators.len();
        let mut columns: Vec<Vec<LocalScalar>> = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            if let Order::Pow3(k) = g.order {
                let mut c = vec![LocalScalar::zero(); n];
                c[i] = LocalScalar::pow3(k);
                columns.push(c);
            }
        }
        for r in &self.relations {
            let mut c = vec![LocalScalar::zero(); n];
            for (g, x) in &r.coefficients {
                c[*g] += x;
            }
            columns.push(c);
        }
        let s = smith_normal_form(&Matrix::from_columns(n, &columns), SnfOptions::none());
        let mut inv = Invariants::zero();
        for &e in &s.exponents {
            if let Some(o) = Order::from_exponent(e) {
                inv.push(o, 1);
            }
        }
        inv.push(Order::Free, n - s.rank());
        inv
    }

    pub fn iso_eq(&self, other: &ModulePresentation) -> bool {
        self.invariants() == other.invariants()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.label.as_str()).collect()
    }

    pub fn find(&self, label: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.label == label)
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> =
            self.generators.iter().map(|g| format!("{}{{{}}}", g.order, g.label)).collect();
        if let Some(p) = &self.placeholder {
            parts.push(p.clone());
        }
        if parts.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", parts.join(" + "))?;
        }
        if !self.relations.is_empty() {
            let rel: Vec<&str> = self.relations.iter().map(|r| r.label.as_str()).collect();
            write!(f, " / ({})", rel.join(", "))?;
        }
        if self.truncated {
            write!(f, " [truncated]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_multiset_arithmetic() {
        let a = Invariants::from_orders([Order::Pow3(1), Order::Pow3(1), Order::Free]);
        let b = Invariants::from_orders([Order::Pow3(1)]);
        let d = a.checked_sub(&b).unwrap();
        assert_eq!(d, Invariants::from_orders([Order::Pow3(1), Order::Free]));
        assert!(b.checked_sub(&a).is_none());
        assert_eq!(d.sum(&b), a);
    }

    #[test]
    fn relation_changes_invariants() {
        let mut p = ModulePresentation::new(vec![
            Generator::new("x", Order::Pow3(2)),
            Generator::new("y", Order::Pow3(1)),
        ]);
        p.relations.push(Relation {
            label: "x = y".into(),
            coefficients: vec![(0, 1.into()), (1, (-1).into())],
        });
        assert_eq!(p.invariants(), Invariants::from_orders([Order::Pow3(1)]));
    }

    #[test]
    fn order_serialization() {
        assert_eq!(serde_json::to_string(&Order::Free).unwrap(), "\"free\"");
        assert_eq!(serde_json::to_string(&Order::Pow3(2)).unwrap(), "9");
    }
}
