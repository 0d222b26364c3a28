//! Building double circulant codes, testing self-duality and LCD-ness, and
//! looking at their constituents.

use dncodes::codekit::CodeSpec;
use dncodes::factorshape::{factor_shape, Sign};
use dncodes::galois::field_of_order;
use dncodes::semiring::RElement;

fn main() -> dncodes::Result<()> {
    let f = field_of_order(5)?;
    // printed in decreasing powers: a1 = 2x, a2 = 3x + 2
    let sd = CodeSpec::from_decreasing(&f, Sign::Minus, "2 0", "3 2")?;
    let lcd = CodeSpec::from_decreasing(&f, Sign::Minus, "4 0", "4 2")?;
    for (name, spec) in [("self-dual row", &sd), ("LCD row", &lcd)] {
        println!("{name}: self_dual={} lcd={}", spec.is_self_dual(), spec.is_lcd());
        let a = spec.circulant_matrix();
        println!("  A mod u     = {:?}", a.component(0, &f));
        println!("  A mod u - 1 = {:?}", a.component(1, &f));
    }

    let spec = CodeSpec::from_decreasing(&f, Sign::Minus, "1 2 1", "4 0 2")?;
    let shape = factor_shape(Sign::Minus, 3, &f)?;
    let view = spec.constituents(&shape)?;
    for c in &view.entries {
        println!("  mod {}: a = ({}) + u({})", c.factor.display(&f), c.value.a.display(&f), c.value.b.display(&f));
    }
    let word = spec.encode(&[RElement::new(1, 0), RElement::U, RElement::new(3, 2)]);
    println!("encoded word in code: {} (by constituents: {})", spec.contains(&word)?, view.contains(&word));
    println!("json: {}", serde_json::to_string(&spec.to_json()).unwrap());
    Ok(())
}
