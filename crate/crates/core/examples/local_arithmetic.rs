// Exact arithmetic in `Z_(3)`: valuations, units and residues.

use q2bkss::arith::LocalScalar;

pub fn run_example() -> q2bkss::Result<String> {
    let mut out = String::new();
    for n in [1, 3, 9, -27] {
        let x = LocalScalar::unit_pow(4, n) - LocalScalar::one();
        out += &format!("v3(4^{n} - 1) = {}\n", x.val3());
    }
    let x = LocalScalar::new(7, 4)?;
    out += &format!("7/4 = {}\n", x.reduce_mod(3));
    let u = LocalScalar::new(18, 5)?;
    out += &format!("18/5 = 3^{} * {}\n", u.val3(), u.unit_part()?);
    Ok(out)
}

fn main() -> q2bkss::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
