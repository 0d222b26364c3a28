//! How many generators (1, a) have a given word in their code, against the
//! known upper bounds. Words are drawn from self-dual codes so that both
//! counts are positive.

use dncodes::census::{
    component_self_dual_solutions, containment_count, is_constant_vector, lemma_bound, trial_rng, Scope,
    ENUMERATION_BUDGET,
};
use dncodes::codekit::CodeSpec;
use dncodes::factorshape::Sign;
use dncodes::galois::field_of_order;
use dncodes::semiring::RElement;
use rand::Rng;

fn main() -> dncodes::Result<()> {
    let f = field_of_order(5)?;
    for (n, sign) in [(3, Sign::Minus), (4, Sign::Plus)] {
        let bound_all = lemma_bound(&f, n, sign, Scope::All)?;
        let bound_sd = lemma_bound(&f, n, sign, Scope::SelfDual)?;
        println!("q=5 n={n} {}: bounds {bound_all} (all), {bound_sd} (self-dual)", sign.as_str());
        let sols = component_self_dual_solutions(&f, n, sign)?;
        let mut rng = trial_rng(1, n as u64);
        for _ in 0..6 {
            let e: Vec<RElement> = (0..n).map(|_| RElement::new(rng.gen_range(0..5), rng.gen_range(0..5))).collect();
            if e.iter().all(RElement::is_zero) || is_constant_vector(&e) {
                continue;
            }
            let (c0, c1) = (&sols[rng.gen_range(0..sols.len())], &sols[rng.gen_range(0..sols.len())]);
            let z = CodeSpec::from_components(&f, n, sign, c0, c1)?.encode(&e);
            let all = containment_count(&z, &f, sign, Scope::All, ENUMERATION_BUDGET)?;
            let sd = containment_count(&z, &f, sign, Scope::SelfDual, ENUMERATION_BUDGET)?;
            println!("  count {:>5} (all), {:>3} (self-dual)", all.count, sd.count);
        }
    }
    Ok(())
}
