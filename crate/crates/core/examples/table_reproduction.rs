//! Re-verifies the published LCD and self-dual tables over F_5 + uF_5.
//!
//! Pass a distance budget as the first argument to reach rows beyond n = 5,
//! e.g. `cargo run --release --example table_reproduction 1e9`.

use dncodes::graydist::DEFAULT_DISTANCE_BUDGET;
use dncodes::tables::verify_table;

fn main() -> dncodes::Result<()> {
    let budget = std::env::args()
        .nth(1)
        .and_then(|s| s.parse::<f64>().ok())
        .map_or(DEFAULT_DISTANCE_BUDGET, |b| b as u128);
    for table in [1, 2] {
        for row in verify_table(table, 9, budget)? {
            println!("{}", row.line());
        }
    }
    Ok(())
}
