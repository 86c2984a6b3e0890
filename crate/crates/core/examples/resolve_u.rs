// The summand `U^{4m+2}` that the closed form leaves open, at `m = 13`.

use q2bkss::connecting::resolve_u;

pub fn run_example() -> q2bkss::Result<String> {
    let r = resolve_u(13, 12)?;
    Ok(format!(
        "U^{} = {}\nK'' = {}\nker delta1 = {}\n{}\n",
        r.t,
        r.u.invariants(),
        r.k_double_prime.invariants(),
        r.kernel.invariants(),
        r.certificate.detail
    ))
}

fn main() -> q2bkss::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
