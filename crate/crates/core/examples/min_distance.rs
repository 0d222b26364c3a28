//! Exact minimum distance of Gray images by Gray-code message enumeration.

use std::time::Instant;

use dncodes::codekit::CodeSpec;
use dncodes::factorshape::Sign;
use dncodes::galois::field_of_order;
use dncodes::graydist::{gray_generator_matrix, min_distance, GrayMap, DEFAULT_DISTANCE_BUDGET};

fn main() -> dncodes::Result<()> {
    let f = field_of_order(5)?;
    let rows = [("4 0", "4 2"), ("1 2 1", "4 0 2"), ("0 3 3 4", "3 2 4 2"), ("4 3 0 3 0", "0 4 1 3 1")];
    for (a1, a2) in rows {
        let spec = CodeSpec::from_decreasing(&f, Sign::Minus, a1, a2)?;
        let code = gray_generator_matrix(&spec, GrayMap::Phi)?;
        let t = Instant::now();
        let r = min_distance(&code, DEFAULT_DISTANCE_BUDGET)?;
        println!("{a1:>10} | {a2:<10} {:?}  {} messages in {:.2?}", r.params, r.messages_scanned, t.elapsed());
    }

    let big = CodeSpec::from_decreasing(&f, Sign::Minus, "0 1 0 0 4 4", "1 3 2 2 0 2")?;
    match min_distance(&gray_generator_matrix(&big, GrayMap::Phi)?, DEFAULT_DISTANCE_BUDGET) {
        Ok(r) => println!("n=6: {:?}", r.params),
        Err(e) => println!("n=6 under the default budget: {e}"),
    }
    Ok(())
}
