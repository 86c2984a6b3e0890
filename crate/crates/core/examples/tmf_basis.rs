// The 0-line basis of `π_*TMF_(3)`, its torsion, and `g = ψ_[2] − 1`.

use q2bkss::tmfpi::{ker_coker_g, sector_classes, torsion_at_internal};

pub fn run_example() -> q2bkss::Result<String> {
    let mut out = String::new();
    for c in sector_classes(0, 3, 4) {
        out += &format!("{} (degree {})\n", c.label(), c.degree());
    }
    for t in [2, 5, 6, 7] {
        let names: Vec<String> = torsion_at_internal(t).into_iter().map(|c| c.name).collect();
        out += &format!("torsion in internal degree {t}: {names:?}\n");
    }
    let (ker, coker) = ker_coker_g(6, 4);
    out += &format!("degree 6: ker g = {}, coker g = {}\n", ker.invariants(), coker.invariants());
    Ok(out)
}

fn main() -> q2bkss::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
