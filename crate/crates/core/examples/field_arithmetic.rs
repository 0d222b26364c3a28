//! Arithmetic in F_9 and factoring x^8 - 1 over F_3.

use dncodes::galois::{factor_squarefree, field_of_order, Poly};

fn main() -> dncodes::Result<()> {
    let f9 = field_of_order(9)?;
    println!("F_9 modulus (low to high): {:?}", f9.modulus());
    let t = f9.from_coeffs(&[0, 1])?;
    for k in 0..8 {
        println!("t^{k} = {:?}", f9.coeffs(f9.pow(t, k)));
    }
    println!("order of t: {:?}", f9.order(t));
    println!("sqrt(-1) in F_9: {:?}", f9.sqrts(f9.neg(1)));

    let f3 = field_of_order(3)?;
    let x8m1 = Poly::binomial(8, f3.neg(1));
    for g in factor_squarefree(&x8m1, &f3)? {
        println!("factor of x^8 - 1 over F_3: {}", g.display(&f3));
    }
    Ok(())
}
