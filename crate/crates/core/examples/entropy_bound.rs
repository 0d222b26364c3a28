//! Relative distances delta_0 with H_q(delta_0) = c for the constants that
//! appear in the asymptotic distance bounds of the four families.

use dncodes::galois::{entropy_inverse, entropy_q};

fn main() -> dncodes::Result<()> {
    for q in [5, 13] {
        for (label, c) in [("1/8", 0.125), ("1/4", 0.25), ("1/16", 0.0625)] {
            let d = entropy_inverse(c, q)?;
            println!("q={q:<3} c={label:<5} delta0={d:.12}  H_q(delta0)={:.12}", entropy_q(d, q)?);
        }
    }
    Ok(())
}
