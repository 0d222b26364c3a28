use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FieldCtx, Poly};
use crate::error::{Error, Result};

/// Irreducibility by distinct-degree gcds: `gcd(x^{q^i} - x, f) = 1` for `i <= deg/2`.
pub fn is_irreducible(f: &Poly, field: &FieldCtx) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let f = f.make_monic(field);
    let x = Poly::x();
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = h.pow_mod(field.q() as u64, &f, field);
        if f.gcd(&h.sub(&x, field), field).degree() != Some(0) {
            return false;
        }
    }
    true
}

/// `gcd(f, f') = 1` test; a nonconstant polynomial with zero derivative is a p-th power.
pub fn is_squarefree(f: &Poly, field: &FieldCtx) -> bool {
    match f.degree() {
        None => false,
        Some(0) => true,
        Some(_) => {
            let d = f.derivative(field);
            !d.is_zero() && f.gcd(&d, field).degree() == Some(0)
        }
    }
}

/// Seed of the trial-polynomial stream used for equal-degree splitting.
const TRIAL_SEED: u64 = 0x5eed_f00d;

/// Random polynomial of degree below `bound`, drawn from a fixed-seed stream.
fn trial(rng: &mut ChaCha8Rng, q: u32, bound: usize) -> Poly {
    Poly::from_coeffs((0..bound).map(|_| rng.gen_range(0..q)).collect())
}

/// Splits a product of distinct monic irreducibles all of degree `d`.
fn equal_degree(g: Poly, d: usize, field: &FieldCtx, out: &mut Vec<Poly>) {
    let n = g.degree().unwrap();
    if n == d {
        out.push(g);
        return;
    }
    let q = field.q();
    let odd_exp = (q % 2 == 1).then(|| (BigUint::from(q).pow(d as u32) - 1u32) / 2u32);
    let trace_len = field.m() as usize * d;
    let mut rng = ChaCha8Rng::seed_from_u64(TRIAL_SEED);
    loop {
        let t = trial(&mut rng, q, n);
        let w = match &odd_exp {
            Some(e) => t.pow_mod_big(e, &g, field).sub(&Poly::one(), field),
            None => {
                let mut acc = t.rem(&g, field);
                let mut cur = acc.clone();
                for _ in 1..trace_len {
                    cur = cur.mul_mod(&cur, &g, field);
                    acc = acc.add(&cur, field);
                }
                acc
            }
        };
        let s = g.gcd(&w, field);
        let sd = s.degree().unwrap_or(0);
        if sd > 0 && sd < n {
            let (rest, _) = g.divrem(&s, field);
            equal_degree(s, d, field, out);
            equal_degree(rest.make_monic(field), d, field, out);
            return;
        }
    }
}

/// Factors a monic squarefree polynomial into monic irreducibles, sorted by
/// degree then coefficients from the top.
pub fn factor_squarefree(f: &Poly, field: &FieldCtx) -> Result<Vec<Poly>> {
    if f.is_zero() || !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !is_squarefree(f, field) {
        return Err(Error::NotSquarefree);
    }
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = Poly::x();
    let mut h = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if rest.degree().unwrap() < 2 * d {
            out.push(rest.clone());
            break;
        }
        h = h.pow_mod(field.q() as u64, &rest, field);
        let g = rest.gcd(&h.sub(&x, field), field);
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.divrem(&g, field).0.make_monic(field);
            h = h.rem(&rest, field);
            equal_degree(g, d, field, &mut out);
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    fn product(fs: &[Poly], field: &FieldCtx) -> Poly {
        fs.iter().fold(Poly::one(), |acc, g| acc.mul(g, field))
    }

    #[test]
    fn x3_minus_1_over_f5() {
        let f5 = make_field(5, 1).unwrap();
        // x^2 + x + 1 has no root in F_5
        assert!((0..5).all(|x| (x * x + x + 1) % 5 != 0));
        let fs = factor_squarefree(&Poly::binomial(3, 4), &f5).unwrap();
        assert_eq!(fs, vec![Poly::from_coeffs(vec![4, 1]), Poly::from_coeffs(vec![1, 1, 1])]);
    }

    #[test]
    fn x3_minus_1_over_f13_splits() {
        let f13 = make_field(13, 1).unwrap();
        let fs = factor_squarefree(&Poly::binomial(3, 12), &f13).unwrap();
        // roots 1, 3, 9 give x + 12, x + 10, x + 4
        assert_eq!(
            fs,
            vec![
                Poly::from_coeffs(vec![4, 1]),
                Poly::from_coeffs(vec![10, 1]),
                Poly::from_coeffs(vec![12, 1]),
            ]
        );
    }

    #[test]
    fn x2_plus_1_over_f3_irreducible() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(factor_squarefree(&Poly::binomial(2, 1), &f3).unwrap(), vec![Poly::binomial(2, 1)]);
    }

    #[test]
    fn rejects_non_squarefree_and_non_monic() {
        let f5 = make_field(5, 1).unwrap();
        // x^5 - 1 = (x - 1)^5 over F_5
        assert_eq!(factor_squarefree(&Poly::binomial(5, 4), &f5).unwrap_err(), Error::NotSquarefree);
        let g = Poly::from_coeffs(vec![1, 2]);
        assert_eq!(factor_squarefree(&g, &f5).unwrap_err(), Error::NotMonic);
    }

    #[test]
    fn products_reproduce_inputs() {
        for (p, m) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)] {
            let field = make_field(p, m).unwrap();
            for n in 1..40usize {
                if n % p as usize == 0 {
                    continue;
                }
                for c in [1, field.neg(1)] {
                    let f = Poly::binomial(n, c);
                    let fs = factor_squarefree(&f, &field).unwrap();
                    assert_eq!(product(&fs, &field), f, "p={p} m={m} n={n}");
                    assert!(fs.iter().all(|g| is_irreducible(g, &field)));
                }
            }
        }
    }

    #[test]
    fn factors_have_no_roots_in_small_extensions() {
        // a degree-d irreducible has no root in F_{q^k} for k < d
        let f3 = make_field(3, 1).unwrap();
        let fs = factor_squarefree(&Poly::binomial(20, 2), &f3).unwrap();
        for g in fs.iter().filter(|g| g.degree().unwrap() <= 4) {
            let d = g.degree().unwrap();
            for k in 1..d {
                let ext = make_field(3, k as u32).unwrap();
                // coefficients of g lie in F_3, which embeds as constants
                assert!(ext.elements().all(|x| g.eval(x, &ext) != 0), "{g:?} has a root in F_3^{k}");
            }
        }
    }
}
