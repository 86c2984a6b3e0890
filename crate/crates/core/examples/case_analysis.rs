// Closed forms for `ker δ¹` and `coker δ¹` checked against the computed maps.

use q2bkss::connecting::case_analysis;

pub fn run_example() -> q2bkss::Result<String> {
    let mut out = String::new();
    for (eps, m) in [(0, -2), (0, 3), (1, -1), (1, 4)] {
        let r = case_analysis(eps, m, 12)?;
        out += &format!(
            "{} (eps={eps}, m={m}): matches {}, ker = {}, coker = {}\n",
            r.case,
            r.matches,
            r.kernel.invariants(),
            r.cokernel.invariants()
        );
    }
    Ok(out)
}

fn main() -> q2bkss::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
