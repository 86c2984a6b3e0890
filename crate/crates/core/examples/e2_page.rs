// Both computed E2 pages on a small window, compared with the closed form.

use q2bkss::spectral::cross_check;
use q2bkss::spectral::render::{cross_check_text, page_text};

pub fn run_example() -> q2bkss::Result<String> {
    let (_, filtration, report) = cross_check(-6, 6, 8)?;
    Ok(format!("{}{}", page_text(&filtration), cross_check_text(&report)))
}

fn main() -> q2bkss::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
