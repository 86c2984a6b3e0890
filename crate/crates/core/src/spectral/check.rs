use serde::Serialize;

use crate::connecting::case_analysis;
use crate::error::Result;
use crate::homology::Invariants;

use super::page::{e2_direct, e2_filtration, undetermined_sector, Bidegree, E2Page};
use super::theorem::theorem_table;

/// Comparison of the three provenances in one bidegree.
#[derive(Clone, Debug, Serialize)]
pub struct BidegreeCheck {
    pub bidegree: Bidegree,
    pub direct: Invariants,
    pub filtration: Invariants,
    /// Invariants of the resolved `U^t`, where the closed form has a placeholder.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<Invariants>,
    pub direct_matches_filtration: bool,
    pub theorem_matches: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl BidegreeCheck {
    pub fn passed(&self) -> bool {
        self.direct_matches_filtration && self.theorem_matches
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub trunc: u32,
    pub t_min: i64,
    pub t_max: i64,
    pub checks: Vec<BidegreeCheck>,
    /// Both pages stabilized between `V` and `V + 4` in every degree.
    pub stable: bool,
    /// No page has an entry in a row `s ≥ 3`.
    pub higher_rows_zero: bool,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.stable && self.higher_rows_zero && self.checks.iter().all(BidegreeCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BidegreeCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// Compares a direct and a filtration page with each other and with the
/// closed form.
///
/// Rows carrying the placeholder accept the resolved `U` as an extra
/// finite summand; the row carrying the extra relation is compared with
/// the cokernel of the case analysis, which has that relation built in.
pub fn compare(direct: &E2Page, filtration: &E2Page) -> Result<CrossCheck> {
    let mut checks = Vec::new();
    for t in direct.degrees() {
        let table = theorem_table(t);
        for (s, row) in table.iter().enumerate() {
            let s8 = s as u8;
            let d = direct.invariants(s8, t);
            let f = filtration.invariants(s8, t);
            let mut detail = Vec::new();
            let dmf = d == f;
            if !dmf {
                detail.push(format!("direct {d} but filtration {f}"));
            }
            let u = row
                .placeholder
                .as_ref()
                .map(|_| filtration.u.get(&t).map(|r| r.u.invariants()).unwrap_or_default());
            let theorem = if row.relation {
                let m = undetermined_sector(t).expect("relation only in undetermined sectors");
                let report = case_analysis(1, m, filtration.trunc)?;
                let expected = report.closed_cokernel.invariants();
                if expected == f && report.matches {
                    Ok(())
                } else {
                    Err(format!("case analysis gives {expected}, computed {f}"))
                }
            } else {
                row.accepts(&f, u.as_ref().unwrap_or(&Invariants::zero()))
            };
            if let Err(e) = &theorem {
                detail.push(format!("theorem: {e}"));
            }
            checks.push(BidegreeCheck {
                bidegree: Bidegree::new(s8, t),
                direct: d,
                filtration: f,
                u,
                direct_matches_filtration: dmf,
                theorem_matches: theorem.is_ok(),
                detail: detail.join("; "),
            });
        }
    }
    let higher_rows_zero =
        [direct, filtration].iter().all(|p| p.entries.keys().all(|b| b.s <= 2));
    Ok(CrossCheck {
        trunc: direct.trunc,
        t_min: direct.t_min,
        t_max: direct.t_max,
        checks,
        stable: direct.is_stable() && filtration.is_stable(),
        higher_rows_zero,
    })
}

/// Builds both pages over `[t_min, t_max]` at truncation `V` (certified
/// against `V + 4`) and compares them.
pub fn cross_check(t_min: i64, t_max: i64, trunc: u32) -> Result<(E2Page, E2Page, CrossCheck)> {
    let direct = e2_direct(t_min, t_max, trunc)?;
    let filtration = e2_filtration(t_min, t_max, trunc)?;
    let report = compare(&direct, &filtration)?;
    Ok((direct, filtration, report))
}
