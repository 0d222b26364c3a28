//! Searching a family for the best Gray-image distance.

use dncodes::census::{search_best, Family, Property, SearchConfig, SearchMode, ENUMERATION_BUDGET};
use dncodes::factorshape::Sign;
use dncodes::galois::field_of_order;
use dncodes::graydist::DEFAULT_DISTANCE_BUDGET;

fn main() -> dncodes::Result<()> {
    let f = field_of_order(5)?;
    let runs = [
        (2, Property::Lcd, SearchMode::Exhaustive, 0),
        (3, Property::SelfDual, SearchMode::Exhaustive, 0),
        (4, Property::Lcd, SearchMode::Random, 100),
        (4, Property::SelfDual, SearchMode::Random, 100),
    ];
    for (n, prop, mode, trials) in runs {
        let cfg = SearchConfig {
            mode,
            trials,
            seed: 0,
            distance_budget: DEFAULT_DISTANCE_BUDGET,
            enumeration_budget: ENUMERATION_BUDGET,
        };
        let r = search_best(&f, n, Family::new(prop, Sign::Minus), &cfg)?;
        println!("{:<7} n={n} {:?}: {} | {}  {:?}", r.family.label(), mode, r.a1, r.a2, r.params);
    }
    Ok(())
}
