use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bring::sector_of_degree;
use crate::connecting::{les_input, resolve_u, Certificate, UResolution};
use crate::error::{Error, Result};
use crate::homology::{les_assemble, Cohomology, Invariants, ModulePresentation};

use super::direct::direct_cohomology;
use super::theorem::theorem_table;

/// Smallest truncation the pages accept.
pub const MIN_TRUNC: u32 = 8;

/// `E₂^{s,t}` with internal degree `t`. Ordered by `t`, then `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Bidegree {
    pub s: u8,
    pub t: i64,
}

impl Bidegree {
    pub fn new(s: u8, t: i64) -> Self {
        Bidegree { s, t }
    }

    /// Topological degree of the 0-line and `B`-type classes here.
    pub fn t_top(self) -> i64 {
        2 * self.t
    }

    /// Chart abscissa `t_top − s`.
    pub fn stem(self) -> i64 {
        self.t_top() - self.s as i64
    }
}

impl Ord for Bidegree {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.t, self.s).cmp(&(other.t, other.s))
    }
}

impl PartialOrd for Bidegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Direct,
    Filtration,
    Theorem,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::Direct => "direct",
            Provenance::Filtration => "filtration",
            Provenance::Theorem => "theorem",
        })
    }
}

/// Rows `s = 0, 1, 2` for every `t` in `[t_min, t_max]`; all other rows
/// vanish because the defining complex has length three.
#[derive(Clone, Debug, Serialize)]
pub struct E2Page {
    pub provenance: Provenance,
    pub trunc: u32,
    pub t_min: i64,
    pub t_max: i64,
    pub entries: BTreeMap<Bidegree, ModulePresentation>,
    /// Truncation `V` against `V + 4`, per internal degree.
    pub certificates: BTreeMap<i64, Certificate>,
    /// Resolved `U^t` in the degrees where the closed form leaves it open.
    pub u: BTreeMap<i64, UResolution>,
}

impl E2Page {
    pub fn get(&self, s: u8, t: i64) -> Option<&ModulePresentation> {
        self.entries.get(&Bidegree::new(s, t))
    }

    pub fn invariants(&self, s: u8, t: i64) -> Invariants {
        self.get(s, t).map_or_else(Invariants::zero, ModulePresentation::invariants)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.t_min..=self.t_max
    }

    pub fn is_stable(&self) -> bool {
        self.certificates.values().all(|c| c.stable)
    }
}

fn check_range(t_min: i64, t_max: i64, trunc: u32) -> Result<()> {
    if t_min > t_max {
        return Err(Error::Usage(format!("empty degree range [{t_min}, {t_max}]")));
    }
    if trunc < MIN_TRUNC {
        return Err(Error::Usage(format!("truncation must be at least {MIN_TRUNC}, got {trunc}")));
    }
    Ok(())
}

/// Whether a row computed at `V` and at `V + 4` agree up to the growth of
/// the infinite families: the same orders occur and no count shrinks. The
/// 0-line has no families and must agree exactly.
fn row_stable(s: usize, a: &Invariants, b: &Invariants) -> bool {
    if s == 0 {
        return a == b;
    }
    let orders_a: Vec<_> = a.orders().map(|x| x.0).collect();
    let orders_b: Vec<_> = b.orders().map(|x| x.0).collect();
    orders_a == orders_b && a.orders().all(|(o, c)| b.count(o) >= c)
}

fn certify(t: i64, trunc: u32, a: &Cohomology, b: &Cohomology) -> Result<Certificate> {
    let rows: Vec<(Invariants, Invariants)> = (0..3)
        .map(|s| (a.row(s).expect("s ≤ 2").invariants(), b.row(s).expect("s ≤ 2").invariants()))
        .collect();
    let stable = rows.iter().enumerate().all(|(s, (x, y))| row_stable(s, x, y));
    let detail = rows
        .iter()
        .enumerate()
        .map(|(s, (x, y))| format!("s={s}: {x} -> {y}"))
        .collect::<Vec<_>>()
        .join("; ");
    let certificate = Certificate { trunc, trunc_next: trunc + 4, stable, detail };
    if !stable {
        return Err(Error::NonStabilized {
            v: trunc,
            v_next: trunc + 4,
            context: format!("t = {t}: {}", certificate.detail),
        });
    }
    Ok(certificate)
}

type DegreeResult = (i64, Cohomology, Certificate, Option<UResolution>);

fn build_page(
    provenance: Provenance,
    t_min: i64,
    t_max: i64,
    trunc: u32,
    compute: impl Fn(i64, u32) -> Result<Cohomology> + Sync,
    extra: impl Fn(i64, u32) -> Result<Option<UResolution>> + Sync,
) -> Result<E2Page> {
    check_range(t_min, t_max, trunc)?;
    let degrees: Vec<i64> = (t_min..=t_max).collect();
    let results: Vec<DegreeResult> = degrees
        .par_iter()
        .map(|&t| {
            let h = compute(t, trunc)?;
            let h_next = compute(t, trunc + 4)?;
            let cert = certify(t, trunc, &h, &h_next)?;
            Ok((t, h, cert, extra(t, trunc)?))
        })
        .collect::<Result<_>>()?;
    let mut page = E2Page {
        provenance,
        trunc,
        t_min,
        t_max,
        entries: BTreeMap::new(),
        certificates: BTreeMap::new(),
        u: BTreeMap::new(),
    };
    for (t, h, cert, u) in results {
        for (s, row) in [h.h0, h.h1, h.h2].into_iter().enumerate() {
            page.entries.insert(Bidegree::new(s as u8, t), row);
        }
        page.certificates.insert(t, cert);
        if let Some(u) = u {
            page.u.insert(t, u);
        }
    }
    Ok(page)
}

/// `m` when `t = 4m + 2` is a degree whose 1-line carries an undetermined
/// summand.
pub fn undetermined_sector(t: i64) -> Option<i64> {
    match sector_of_degree(t) {
        Some((1, m)) if m > 0 && m.rem_euclid(27) == 13 => Some(m),
        _ => None,
    }
}

/// The page from the cohomology of the truncated three-term complex.
pub fn e2_direct(t_min: i64, t_max: i64, trunc: u32) -> Result<E2Page> {
    build_page(Provenance::Direct, t_min, t_max, trunc, direct_cohomology, |_, _| Ok(None))
}

/// The page from the long exact sequence of the filtration, with `U`
/// resolved where the closed form leaves it open.
pub fn e2_filtration(t_min: i64, t_max: i64, trunc: u32) -> Result<E2Page> {
    build_page(
        Provenance::Filtration,
        t_min,
        t_max,
        trunc,
        |t, v| les_assemble(&les_input(t, v)?),
        |t, v| undetermined_sector(t).map(|m| resolve_u(m, v)).transpose(),
    )
}

/// The closed-form page, for display; comparisons use `theorem_table`.
pub fn e2_theorem(t_min: i64, t_max: i64) -> Result<E2Page> {
    if t_min > t_max {
        return Err(Error::Usage(format!("empty degree range [{t_min}, {t_max}]")));
    }
    let mut entries = BTreeMap::new();
    for t in t_min..=t_max {
        for (s, row) in theorem_table(t).iter().enumerate() {
            entries.insert(Bidegree::new(s as u8, t), row.presentation());
        }
    }
    Ok(E2Page {
        provenance: Provenance::Theorem,
        trunc: 0,
        t_min,
        t_max,
        entries,
        certificates: BTreeMap::new(),
        u: BTreeMap::new(),
    })
}
