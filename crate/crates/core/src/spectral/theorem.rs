use serde::Serialize;

use crate::bring::{coker_h_order, sector_of_degree, EigenKind};
use crate::homology::{Invariants, ModulePresentation, Order};
use crate::tmfpi::{basis_label, ell_max, torsion_at_internal};

/// One row of the closed-form answer in a single internal degree: named
/// finite summands, infinite families `⊕_n Z/3^k` (or `⊕_n Z_(3)`), an
/// optional undetermined summand, and whether a single extra relation is
/// imposed on the families.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TheoremRow {
    pub finite: ModulePresentation,
    pub families: Vec<Order>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub placeholder: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub relation: bool,
}

impl TheoremRow {
    pub fn is_zero(&self) -> bool {
        self.finite.is_zero() && self.families.is_empty() && self.placeholder.is_none()
    }

    /// Whether `computed` has exactly the finite summands plus `extra`,
    /// and then a positive number of copies of every family and nothing
    /// else. Rows with a relation are not decided here.
    pub fn accepts(&self, computed: &Invariants, extra: &Invariants) -> Result<(), String> {
        let fixed = self.finite.invariants().sum(extra);
        let rest = computed
            .checked_sub(&fixed)
            .ok_or_else(|| format!("{computed} does not contain the finite part {fixed}"))?;
        for (order, _) in rest.orders() {
            if !self.families.contains(&order) {
                return Err(format!("unexpected summand {order} beyond {fixed}"));
            }
        }
        for &order in &self.families {
            if rest.count(order) == 0 {
                return Err(format!("family {order} is empty"));
            }
        }
        Ok(())
    }

    /// Display form: finite generators, one `⊕_n` generator per family and
    /// the placeholder, flagged as truncated when a family is present.
    pub fn presentation(&self) -> ModulePresentation {
        let mut p = self.finite.clone();
        for &o in &self.families {
            p.push(format!("⊕_n {o}"), o);
        }
        p.truncated = !self.families.is_empty();
        p.placeholder = self.placeholder.clone();
        p
    }
}

/// `ν₃(3m) = ν₃(m) + 1` as the exponent of `coker h` on `A^m`, and
/// `ν₃(6m+3) = ν₃(2m+1) + 1` on `B^m`.
fn family_order(eps: u8, m: i64) -> Order {
    let kind = if eps == 0 { EigenKind::A } else { EigenKind::B };
    coker_h_order(kind, m)
}

fn torsion_part(t: i64) -> ModulePresentation {
    ModulePresentation::new(
        torsion_at_internal(t)
            .into_iter()
            .map(|c| crate::homology::Generator::new(c.name, Order::Pow3(1)))
            .collect(),
    )
}

/// The closed-form `E₂^{s,t}` for `s = 0, 1, 2`; every higher row is zero.
pub fn theorem_table(t: i64) -> [TheoremRow; 3] {
    let torsion = torsion_part(t);
    let z3 = Order::Pow3(1);
    if t == 0 {
        let mut unit = ModulePresentation::zero();
        unit.push("1", Order::Free);
        return [
            TheoremRow { finite: unit, ..TheoremRow::default() },
            TheoremRow { families: vec![Order::Free, z3], ..TheoremRow::default() },
            TheoremRow { families: vec![Order::Free, z3], ..TheoremRow::default() },
        ];
    }
    let row0 = TheoremRow { finite: torsion.clone(), ..TheoremRow::default() };
    let Some((eps, m)) = sector_of_degree(t) else {
        return [row0, TheoremRow { finite: torsion, ..TheoremRow::default() }, TheoremRow::default()];
    };
    let order = family_order(eps, m);
    let mut families2 = vec![z3];
    if order != z3 {
        families2.push(order);
    }
    let row2 = TheoremRow { families: families2, ..TheoremRow::default() };
    let row1 = match (eps, m > 0, m.rem_euclid(27) == 13) {
        (_, false, _) => TheoremRow { finite: torsion, families: vec![z3], ..TheoremRow::default() },
        (1, true, true) => TheoremRow {
            finite: torsion,
            families: vec![z3],
            placeholder: Some(format!("U^{t}")),
            ..TheoremRow::default()
        },
        _ => {
            let mut finite = torsion;
            finite.push(basis_label(eps, m, ell_max(eps, m) as u32), order);
            TheoremRow { finite, families: vec![z3], ..TheoremRow::default() }
        }
    };
    let row2 = if eps == 1 && m > 0 && m.rem_euclid(27) == 13 {
        TheoremRow { relation: true, ..row2 }
    } else {
        row2
    };
    [row0, row1, row2]
}
