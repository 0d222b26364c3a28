//! Closed-form counts of self-dual and LCD double (nega)circulant codes,
//! next to brute-force enumeration.

use dncodes::census::{census, enumerate_codes, Family, Property, ENUMERATION_BUDGET};
use dncodes::factorshape::Sign;
use dncodes::galois::field_of_order;

fn main() -> dncodes::Result<()> {
    let cases = [(5, 3, Sign::Minus), (3, 2, Sign::Plus), (5, 2, Sign::Plus), (3, 4, Sign::Plus), (5, 4, Sign::Plus)];
    println!("{:<7} {:>3} {:>2} {:>12} {:>12} {:>12}", "family", "q", "n", "formula", "exact", "brute force");
    for (q, n, sign) in cases {
        let f = field_of_order(q)?;
        for prop in [Property::SelfDual, Property::Lcd] {
            let fam = Family::new(prop, sign);
            let res = census(&f, n, fam)?;
            let brute = enumerate_codes(&f, n, sign, |s| fam.accepts(s), ENUMERATION_BUDGET)?;
            let formula = res.closed_form.map_or("-".to_string(), |c| c.to_string());
            println!("{:<7} {q:>3} {n:>2} {formula:>12} {:>12} {brute:>12}", fam.label(), res.constituent_count);
        }
    }
    Ok(())
}
