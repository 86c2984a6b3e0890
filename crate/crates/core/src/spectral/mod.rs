//! The `E₂`-page over a window of internal degrees, by the direct complex
//! and by the filtration sequence, compared with the closed form, together
//! with the bookkeeping of the possible higher differentials.

mod check;
mod differentials;
mod direct;
mod page;
pub mod render;
mod theorem;

pub use check::{compare, cross_check, BidegreeCheck, CrossCheck};
pub use differentials::{
    chart_cells, collapse_check, d2_candidates, CandidateStatus, ChartPoint, CollapseReport,
    DifferentialCandidate, ZeroReason,
};
pub use direct::{direct_cohomology, direct_complex};
pub use page::{
    e2_direct, e2_filtration, e2_theorem, undetermined_sector, Bidegree, E2Page, Provenance, MIN_TRUNC,
};
pub use theorem::{theorem_table, TheoremRow};
