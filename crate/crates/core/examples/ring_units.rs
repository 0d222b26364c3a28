//! The ring F_q + uF_q with u^2 = u, its CRT split, and the constituent
//! count oracles.

use dncodes::galois::field_of_order;
use dncodes::semiring::{
    hermitian_self_dual_count_oracle, reciprocal_pair_lcd_count_oracle, reciprocal_pair_self_dual_count_oracle,
    sqrt_minus_one, RElement, RRing,
};

fn main() -> dncodes::Result<()> {
    let f = field_of_order(5)?;
    let r = RRing::over(&f);
    let units = r.elements().filter(|&z| r.is_unit(z)).count();
    println!("|R| = {}, units = {units}", r.size());

    let z = RElement::new(2, 1);
    println!("z = 2 + u splits as {:?}, z^-1 = {:?}", r.crt_split(z), r.inv(z));
    println!("u is idempotent: {}", r.mul(RElement::U, RElement::U) == RElement::U);
    println!("square roots of -1: {:?}", sqrt_minus_one(&f));

    println!("Hermitian self-dual constituents (q=3, e=1): {}", hermitian_self_dual_count_oracle(3, 1)?);
    println!("Hermitian self-dual constituents (q=5, e=1): {}", hermitian_self_dual_count_oracle(5, 1)?);
    println!("self-dual pair constituents (q=5, d=1): {}", reciprocal_pair_self_dual_count_oracle(5, 1)?);
    println!("LCD pair constituents (q=3, d=1): {}", reciprocal_pair_lcd_count_oracle(3, 1)?);
    Ok(())
}
