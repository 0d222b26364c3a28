//! Self-reciprocal factors and reciprocal pairs of x^n -+ 1, and the
//! Dickson closed form for x^{2^a} + 1.

use dncodes::factorshape::{decomposition_kind, dickson_factorization, factor_shape, Sign};
use dncodes::galois::field_of_order;

fn main() -> dncodes::Result<()> {
    for (q, n, sign) in [(5, 3, Sign::Minus), (13, 3, Sign::Minus), (3, 2, Sign::Plus), (5, 4, Sign::Plus), (17, 4, Sign::Plus)] {
        let f = field_of_order(q)?;
        let shape = factor_shape(sign, n, &f)?;
        println!("q={q} n={n} {}:", sign.as_str());
        for g in &shape.self_reciprocal {
            println!("  self-reciprocal  {}", g.factor.display(&f));
        }
        for p in &shape.pairs {
            println!("  pair             {}  |  {}", p.h.display(&f), p.h_star.display(&f));
        }
        if sign == Sign::Plus {
            println!("  decomposition: {:?}", decomposition_kind(&shape)?);
        }
    }

    // x^8 + 1 over F_3 and x^16 + 1 over F_5
    for (q, a) in [(3, 3), (5, 4), (41, 2)] {
        let f = field_of_order(q)?;
        let fs: Vec<String> = dickson_factorization(a, &f)?.iter().map(|g| g.display(&f)).collect();
        println!("x^{} + 1 over F_{q}: {}", 1 << a, fs.join(" * "));
    }
    Ok(())
}
