//! Gray images of codes over R: phi(a+ub) = (-b, 2a+b) and
//! beta(a+ub) = (a, a+b) both carry self-dual and LCD codes to codes of the
//! same kind over F_q.

use dncodes::codekit::CodeSpec;
use dncodes::factorshape::Sign;
use dncodes::galois::field_of_order;
use dncodes::graydist::{gray_generator_matrix, gray_phi, GrayMap};
use dncodes::semiring::RElement;

fn main() -> dncodes::Result<()> {
    let f = field_of_order(5)?;
    println!("phi(1) = {:?}, phi(u) = {:?}", gray_phi(RElement::ONE, &f)?, gray_phi(RElement::U, &f)?);

    let one_by_one = CodeSpec::new(&f, 1, Sign::Minus, vec![3], vec![1])?;
    println!("phi image of (1, 3 + u): {:?}", gray_generator_matrix(&one_by_one, GrayMap::Phi)?.generator());

    let sd = CodeSpec::from_decreasing(&f, Sign::Minus, "3 1 3", "2 4 0")?;
    let lcd = CodeSpec::from_decreasing(&f, Sign::Minus, "1 2 1", "4 0 2")?;
    for map in [GrayMap::Phi, GrayMap::Beta] {
        let a = gray_generator_matrix(&sd, map)?;
        let b = gray_generator_matrix(&lcd, map)?;
        println!("{map}: self-dual spec -> self-dual image {}; LCD spec -> LCD image {}", a.is_self_dual(), b.is_lcd());
    }
    Ok(())
}
