//! Text, JSON and SVG renderings of pages. All output is a pure function of
//! the page, so equal pages give byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::homology::{Generator, ModulePresentation, Order};

use super::check::CrossCheck;
use super::differentials::{chart_cells, collapse_check, ChartPoint};
use super::page::{Bidegree, E2Page};

/// Entries with at most this many generators are listed in text output.
const LISTED: usize = 6;

pub fn page_text(page: &E2Page) -> String {
    let mut out = String::new();
    let v = if page.trunc > 0 { format!(", V = {}", page.trunc) } else { String::new() };
    let _ = writeln!(out, "E2 page ({}{v}), t in [{}, {}]", page.provenance, page.t_min, page.t_max);
    for (b, p) in &page.entries {
        if p.is_zero() {
            continue;
        }
        let mut line = format!("E2^{{{},{}}} (stem {}): {}", b.s, b.t, b.stem(), p.invariants());
        if let Some(u) = &p.placeholder {
            let _ = write!(line, " + {u}");
        }
        if p.truncated {
            line.push_str(" [truncated]");
        }
        if p.generators.len() <= LISTED {
            let _ = write!(line, "  = {p}");
        }
        let _ = writeln!(out, "{line}");
    }
    for (t, u) in &page.u {
        let _ = writeln!(out, "U^{t} = {} (stable between V = {} and {})", u.u, u.certificate.trunc, u.certificate.trunc_next);
    }
    out
}

pub fn cross_check_text(report: &CrossCheck) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "cross-check t in [{}, {}], V = {}: {} ({} bidegrees, stable: {}, rows s >= 3 zero: {})",
        report.t_min,
        report.t_max,
        report.trunc,
        if report.passed() { "PASS" } else { "FAIL" },
        report.checks.len(),
        report.stable,
        report.higher_rows_zero
    );
    for c in report.failures() {
        let _ = writeln!(out, "  mismatch at (s={}, t={}): {}", c.bidegree.s, c.bidegree.t, c.detail);
    }
    out
}

#[derive(Serialize)]
struct Summand<'a> {
    order: Order,
    label: &'a str,
}

/// One entry in the shared page schema.
pub fn entry_json(b: Bidegree, p: &ModulePresentation, provenance: &str) -> Value {
    let summands: Vec<Summand> =
        p.generators.iter().map(|g| Summand { order: g.order, label: &g.label }).collect();
    let mut v = json!({
        "s": b.s,
        "t": b.t,
        "tTop": b.t_top(),
        "stem": b.stem(),
        "summands": summands,
        "relations": p.relations,
        "provenance": provenance,
        "truncated": p.truncated,
    });
    if let Some(u) = &p.placeholder {
        v["placeholder"] = json!(u);
    }
    v
}

pub fn page_json(page: &E2Page) -> Value {
    let provenance = page.provenance.to_string();
    let entries: Vec<Value> = page.entries.iter().map(|(b, p)| entry_json(*b, p, &provenance)).collect();
    json!({
        "provenance": provenance,
        "trunc": page.trunc,
        "tMin": page.t_min,
        "tMax": page.t_max,
        "entries": entries,
        "certificates": page.certificates,
        "u": page.u,
    })
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

const CELL: i64 = 28;
const MARGIN: i64 = 40;
const ROWS_SHOWN: i64 = 4;

/// Chart with `s` up and `t_top − s` to the right. Filled square: free
/// summand; filled circle: `Z/3`; open circle with its exponent: `Z/3^k`.
/// Each glyph carries its multiplicity when above one; possible `d₂`
/// arrows are drawn in grey.
pub fn chart_svg(page: &E2Page) -> String {
    let cells = chart_cells(page);
    let stems: Vec<i64> = cells.keys().map(|p| p.stem()).collect();
    let lo = stems.iter().copied().min().unwrap_or(2 * page.t_min).min(2 * page.t_min - 2);
    let hi = stems.iter().copied().max().unwrap_or(2 * page.t_max).max(2 * page.t_max);
    let width = (hi - lo + 1) * CELL + 2 * MARGIN;
    let height = ROWS_SHOWN * CELL * 2 + 2 * MARGIN;
    let x = |stem: i64| MARGIN + (stem - lo) * CELL + CELL / 2;
    let y = |s: i64| height - MARGIN - s * CELL * 2 - CELL / 2;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="9">"#
    );
    let _ = writeln!(
        out,
        "<title>E2 page ({}), t in [{}, {}]</title>",
        page.provenance, page.t_min, page.t_max
    );
    let _ = writeln!(out, r##"<defs><marker id="head" markerWidth="6" markerHeight="6" refX="5" refY="3" orient="auto"><path d="M0,0 L6,3 L0,6 z" fill="#888"/></marker></defs>"##);
    let axis_y = height - MARGIN;
    let _ = writeln!(out, r#"<line x1="{MARGIN}" y1="{axis_y}" x2="{}" y2="{axis_y}" stroke="black"/>"#, width - MARGIN);
    let _ = writeln!(out, r#"<line x1="{MARGIN}" y1="{axis_y}" x2="{MARGIN}" y2="{MARGIN}" stroke="black"/>"#);
    for stem in (lo..=hi).filter(|s| s.rem_euclid(4) == 0) {
        let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{stem}</text>"#, x(stem), axis_y + 14);
    }
    for s in 0..ROWS_SHOWN {
        let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{s}</text>"#, MARGIN - 6, y(s) + 3);
    }

    for c in collapse_check(page).possibly_nonzero {
        let _ = writeln!(
            out,
            r##"<line class="d2" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#888" marker-end="url(#head)"/>"##,
            x(c.source.stem()),
            y(c.source.s as i64),
            x(c.target.stem()),
            y(c.target.s as i64) + 6
        );
    }
    for (p, gens) in &cells {
        draw_cell(&mut out, *p, gens, x(p.stem()), y(p.s as i64));
    }
    out.push_str("</svg>\n");
    out
}

fn draw_cell(out: &mut String, p: ChartPoint, gens: &[Generator], cx: i64, cy: i64) {
    let mut counts: BTreeMap<Order, Vec<&str>> = BTreeMap::new();
    for g in gens {
        counts.entry(g.order).or_default().push(&g.label);
    }
    // free glyphs first, then by increasing order
    let mut ordered: Vec<(Order, Vec<&str>)> = counts.into_iter().collect();
    ordered.sort_by_key(|(o, _)| (*o != Order::Free, *o));
    for (k, (order, labels)) in ordered.iter().enumerate() {
        let gy = cy - 9 * k as i64;
        let title = format!(
            "<title>s={}, tTop={}: {} x {}: {}</title>",
            p.s,
            p.t_top,
            labels.len(),
            order,
            xml_escape(&labels.iter().take(4).copied().collect::<Vec<_>>().join(", "))
        );
        match order {
            Order::Free => {
                let _ = writeln!(
                    out,
                    r#"<rect class="free" x="{}" y="{}" width="7" height="7" fill="black">{title}</rect>"#,
                    cx - 3,
                    gy - 3
                );
            }
            Order::Pow3(1) => {
                let _ = writeln!(out, r#"<circle class="z3" cx="{cx}" cy="{gy}" r="3" fill="black">{title}</circle>"#);
            }
            Order::Pow3(e) => {
                let _ = writeln!(
                    out,
                    r#"<circle class="z3k" cx="{cx}" cy="{gy}" r="3" fill="none" stroke="black">{title}</circle>"#
                );
                let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="7">{e}</text>"#, cx - 10, gy + 3);
            }
        }
        if labels.len() > 1 {
            let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="7">×{}</text>"#, cx + 5, gy + 3, labels.len());
        }
    }
}
