// The connecting map `δ⁰` in degree 0 and its kernel and cokernel.

use q2bkss::arith::LocalScalar;
use q2bkss::connecting::{delta0_ker_coker, delta0_matrix};

pub fn run_example() -> q2bkss::Result<String> {
    let cm = delta0_matrix(6)?;
    let mut out = String::new();
    for k in 1..=3usize {
        let row = 2 * k - 1;
        let gamma = LocalScalar::from(cm.columns[k].gamma as i64);
        let u = cm.lifts.get(row, k).checked_div(&gamma).expect("gamma divides the column");
        out += &format!("{} -> {} at {}: {}\n", cm.lifts.col_labels[k], u, cm.lifts.row_labels[row], u == -LocalScalar::pow2(12 * k as i64));
    }
    let (ker, coker) = delta0_ker_coker(8)?;
    out += &format!("ker delta0 = {ker}\ncoker delta0 = {}\n", coker.invariants());
    Ok(out)
}

fn main() -> q2bkss::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
