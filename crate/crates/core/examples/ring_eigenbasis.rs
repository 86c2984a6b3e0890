// The ring `B`, its structure maps and the eigenbasis of `h = ψ_d + 1`.

use q2bkss::bring::{c4, c6, delta_pow, h_map, ker_coker_h, psi_2, psi_d, EigenClass, EigenKind};

pub fn run_example() -> q2bkss::Result<String> {
    let mut out = String::new();
    out += &format!("c4 = {}\nc6 = {}\nDelta = {}\n", c4(), c6(), delta_pow(1));
    let disc = &c4().pow(3) - &c6().pow(2);
    out += &format!("c4^3 - c6^2 = {disc}\n");
    let x = c4();
    out += &format!("psi_d(psi_d(c4)) = psi_[2](c4): {}\n", psi_d(&psi_d(&x)) == psi_2(&x));
    for (kind, i, j) in [(EigenKind::A, -1, 1), (EigenKind::A, 0, 1), (EigenKind::B, 1, 3)] {
        let c = EigenClass::new(kind, i, j)?;
        let e = c.element();
        assert_eq!(h_map(&e), e.scale(&c.eigenvalue()));
        out += &format!("h({}) = {} * {}, coker order {}\n", c.label(), c.eigenvalue(), c.label(), c.coker_order());
    }
    let (ker, coker) = ker_coker_h(6, 8)?;
    out += &format!("degree 6: ker h = {}, coker h = {}\n", ker.invariants(), coker.invariants());
    Ok(out)
}

fn main() -> q2bkss::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
