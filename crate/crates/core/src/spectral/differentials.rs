use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::homology::Generator;
use crate::tmfpi::torsion_at_internal;

use super::page::E2Page;

/// Chart position: filtration `s` and topological degree `t_top`; the
/// abscissa is `t_top − s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ChartPoint {
    pub s: u8,
    #[serde(rename = "tTop")]
    pub t_top: i64,
}

impl ChartPoint {
    pub fn stem(self) -> i64 {
        self.t_top - self.s as i64
    }
}

/// Summands of a page placed by topological degree. A torsion class of
/// `π_*TMF` sits at its own topological degree; every other summand of
/// `E₂^{s,t}` sits at `2t`.
pub fn chart_cells(page: &E2Page) -> BTreeMap<ChartPoint, Vec<Generator>> {
    let mut cells: BTreeMap<ChartPoint, Vec<Generator>> = BTreeMap::new();
    for (b, p) in &page.entries {
        let torsion = torsion_at_internal(b.t);
        for g in &p.generators {
            let t_top = torsion.iter().find(|c| c.name == g.label).map_or(b.t_top(), |c| c.t_top);
            cells.entry(ChartPoint { s: b.s, t_top }).or_default().push(g.clone());
        }
        if let Some(u) = &p.placeholder {
            cells.entry(ChartPoint { s: b.s, t_top: b.t_top() }).or_default().push(Generator::new(
                u.clone(),
                crate::homology::Order::Pow3(1),
            ));
        }
    }
    cells
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateStatus {
    PossiblyNonzero,
    ForcedZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroReason {
    SourceZero,
    TargetZero,
    Sparseness,
}

/// `d_r: E_r^{s,T} → E_r^{s+r, T+r−1}` in topological degree `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialCandidate {
    pub r: u8,
    pub source: ChartPoint,
    pub target: ChartPoint,
    pub status: CandidateStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<ZeroReason>,
}

/// Rows at or above this filtration vanish on the page.
const ROWS: u8 = 3;

fn classify(r: u8, source: ChartPoint, target: ChartPoint, nonzero: &BTreeSet<ChartPoint>) -> DifferentialCandidate {
    let reason = if !nonzero.contains(&source) {
        Some(ZeroReason::SourceZero)
    } else if target.s >= ROWS {
        Some(ZeroReason::Sparseness)
    } else if !nonzero.contains(&target) {
        Some(ZeroReason::TargetZero)
    } else {
        None
    };
    let status = if reason.is_none() { CandidateStatus::PossiblyNonzero } else { CandidateStatus::ForcedZero };
    DifferentialCandidate { r, source, target, status, reason }
}

/// Every `d_r`, `r ∈ {2, 3}`, leaving or entering a nonzero chart cell whose
/// other end lies in the window covered by the page.
pub fn d2_candidates(page: &E2Page) -> Vec<DifferentialCandidate> {
    let cells = chart_cells(page);
    let nonzero: BTreeSet<ChartPoint> =
        cells.iter().filter(|(_, g)| !g.is_empty()).map(|(p, _)| *p).collect();
    // a cell at T collects internal degrees from ⌈T/2⌉ up to (T + 8)/2,
    // the largest torsion filtration being 8
    let covered = |p: ChartPoint| {
        p.s >= ROWS || (page.t_min <= (p.t_top + 1).div_euclid(2) && (p.t_top + 8).div_euclid(2) <= page.t_max)
    };
    let mut out = BTreeMap::new();
    for &p in &nonzero {
        for r in 2..=3u8 {
            let target = ChartPoint { s: p.s + r, t_top: p.t_top + r as i64 - 1 };
            if covered(target) {
                out.insert((r, p, target), classify(r, p, target, &nonzero));
            }
            if p.s >= r {
                let source = ChartPoint { s: p.s - r, t_top: p.t_top - r as i64 + 1 };
                if covered(source) {
                    out.insert((r, source, p), classify(r, source, p, &nonzero));
                }
            }
        }
    }
    out.into_values().collect()
}

/// Outcome of the sparseness argument over a page.
#[derive(Clone, Debug, Serialize)]
pub struct CollapseReport {
    pub candidates: usize,
    pub possibly_nonzero: Vec<DifferentialCandidate>,
    /// `(0, T) → (2, T + 1)` with both cells nonzero, found independently.
    pub expected: Vec<(ChartPoint, ChartPoint)>,
    pub matches_expected: bool,
    /// No possibly nonzero differential leaves or enters the 1-line.
    pub row1_permanent: bool,
    /// Every `d_r` with `r ≥ 3` is forced to vanish, so `E₃ = E∞`.
    pub collapses_at_e3: bool,
    /// Every nonzero cell lies in rows 0 to 2.
    pub higher_rows_zero: bool,
}

impl CollapseReport {
    pub fn passed(&self) -> bool {
        self.matches_expected && self.row1_permanent && self.collapses_at_e3 && self.higher_rows_zero
    }
}

pub fn collapse_check(page: &E2Page) -> CollapseReport {
    let candidates = d2_candidates(page);
    let cells = chart_cells(page);
    let nonzero: BTreeSet<ChartPoint> =
        cells.iter().filter(|(_, g)| !g.is_empty()).map(|(p, _)| *p).collect();
    let possibly_nonzero: Vec<DifferentialCandidate> =
        candidates.iter().filter(|c| c.status == CandidateStatus::PossiblyNonzero).cloned().collect();
    let expected: Vec<(ChartPoint, ChartPoint)> = nonzero
        .iter()
        .filter(|p| p.s == 0)
        .map(|&p| (p, ChartPoint { s: 2, t_top: p.t_top + 1 }))
        .filter(|(_, q)| nonzero.contains(q))
        .collect();
    let found: Vec<(ChartPoint, ChartPoint)> =
        possibly_nonzero.iter().map(|c| (c.source, c.target)).collect();
    CollapseReport {
        candidates: candidates.len(),
        matches_expected: found == expected && possibly_nonzero.iter().all(|c| c.r == 2),
        row1_permanent: possibly_nonzero.iter().all(|c| c.source.s != 1 && c.target.s != 1),
        collapses_at_e3: candidates.iter().filter(|c| c.r >= 3).all(|c| c.status == CandidateStatus::ForcedZero),
        higher_rows_zero: nonzero.iter().all(|p| p.s < ROWS),
        possibly_nonzero,
        expected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::e2_filtration;

    #[test]
    fn torsion_is_rebucketed() {
        let page = e2_filtration(0, 8, 8).unwrap();
        let cells = chart_cells(&page);
        let alpha = ChartPoint { s: 0, t_top: 3 };
        assert_eq!(cells[&alpha].iter().map(|g| g.label.as_str()).collect::<Vec<_>>(), ["α"]);
        assert!(cells[&ChartPoint { s: 1, t_top: 3 }].iter().any(|g| g.label == "α"));
    }

    #[test]
    fn only_zero_to_two_survives() {
        let page = e2_filtration(-20, 20, 8).unwrap();
        let report = collapse_check(&page);
        assert!(report.passed(), "{report:#?}");
        // α in stem 3 may hit the 2-line at topological degree 4
        assert!(report
            .possibly_nonzero
            .iter()
            .any(|c| c.source == ChartPoint { s: 0, t_top: 3 } && c.target.t_top == 4));
    }
}
