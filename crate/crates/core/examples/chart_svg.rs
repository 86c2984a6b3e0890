// An SVG chart of the page with its possible `d₂` differentials.

use q2bkss::spectral::render::chart_svg;
use q2bkss::spectral::{collapse_check, e2_filtration};

pub fn run_example() -> q2bkss::Result<String> {
    let page = e2_filtration(-4, 12, 8)?;
    let report = collapse_check(&page);
    let svg = chart_svg(&page);
    Ok(format!(
        "{} possible d2, collapse check {}, svg of {} bytes\n",
        report.possibly_nonzero.len(),
        report.passed(),
        svg.len()
    ))
}

fn main() -> q2bkss::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
