//! Number-theoretic odds and ends: primitive roots, the q-ary entropy
//! function and Dickson polynomials.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::field::{is_prime, prime_factors};
use super::{Elem, FieldCtx, Poly};
use crate::error::{Error, Result};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Multiplicative order of `a` modulo `n` (`gcd(a, n) = 1`).
pub fn multiplicative_order(a: u64, n: u64) -> u64 {
    let mut k = 1;
    let mut x = a % n;
    while x != 1 % n {
        x = x * (a % n) % n;
        k += 1;
    }
    k
}

/// Whether `q` generates `(Z/nZ)^*` for an odd prime `n`.
pub fn is_primitive_root(q: u64, n: u64) -> Result<bool> {
    if n < 3 || !is_prime(n) {
        return Err(Error::Precondition(format!("{n} is not an odd prime")));
    }
    if gcd(q, n) != 1 {
        return Err(Error::NotCoprime { n: n as usize, q: q as u32 });
    }
    let phi = n - 1;
    Ok(prime_factors(phi).iter().all(|&r| pow_mod(q, phi / r, n) != 1))
}

fn pow_mod(mut b: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    b %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % n;
        }
        b = b * b % n;
        e >>= 1;
    }
    acc
}

/// Tolerance used for every comparison of entropy values.
pub const ENTROPY_TOL: f64 = 1e-9;

/// Absolute tolerance of [`entropy_inverse`] in its argument.
pub const BISECTION_TOL: f64 = 1e-12;

/// q-ary entropy `H_q(t)` on `[0, (q-1)/q]`.
pub fn entropy_q(t: f64, q: u64) -> Result<f64> {
    if q < 2 {
        return Err(Error::Domain(format!("q = {q}")));
    }
    let qf = q as f64;
    let right = (qf - 1.0) / qf;
    if !(0.0..=right + f64::EPSILON).contains(&t) {
        return Err(Error::Domain(format!("t = {t} outside [0, {right}]")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let ln_q = qf.ln();
    let mut h = t * (qf - 1.0).ln() - t * t.ln();
    if t < 1.0 {
        h -= (1.0 - t) * (1.0 - t).ln();
    }
    Ok(h / ln_q)
}

/// The unique `t` in `[0, (q-1)/q]` with `H_q(t) = c`, by bisection.
pub fn entropy_inverse(c: f64, q: u64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::Domain(format!("c = {c} outside [0, 1]")));
    }
    let right = (q as f64 - 1.0) / q as f64;
    if c == 0.0 {
        return Ok(0.0);
    }
    if c == 1.0 {
        return Ok(right);
    }
    let (mut lo, mut hi) = (0.0f64, right);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if entropy_q(mid, q)? < c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// Dickson polynomial `D_n(x, alpha) = sum_j n/(n-j) C(n-j, j) (-alpha)^j x^{n-2j}`.
///
/// Each integer coefficient `n/(n-j) C(n-j, j)` is formed exactly before
/// reduction mod `p`. `D_0 = 2`.
pub fn dickson(n: usize, alpha: Elem, f: &FieldCtx) -> Poly {
    if n == 0 {
        return Poly::constant(f.from_int(2));
    }
    let minus_alpha = f.neg(alpha);
    let p = BigUint::from(f.p());
    let mut coeffs = vec![0; n + 1];
    for j in 0..=n / 2 {
        let (nn, jj) = (n as u64, j as u64);
        let int_coeff = binomial(nn - jj, jj) * nn / (nn - jj);
        let reduced = (int_coeff % &p).to_u32().unwrap();
        if reduced.is_zero() {
            continue;
        }
        coeffs[n - 2 * j] = f.mul(reduced, f.pow(minus_alpha, jj));
    }
    Poly::from_coeffs(coeffs)
}

/// Roots of a polynomial in `F_q` by exhaustive evaluation.
pub fn roots(p: &Poly, f: &FieldCtx) -> Vec<Elem> {
    f.elements().filter(|&x| p.eval(x, f) == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    #[test]
    fn primitive_roots() {
        assert!(is_primitive_root(5, 3).unwrap());
        assert!(!is_primitive_root(5, 11).unwrap());
        assert!(is_primitive_root(3, 5).unwrap());
        assert_eq!(multiplicative_order(5, 11), 5);
        assert!(is_primitive_root(5, 9).is_err());
        assert!(is_primitive_root(5, 2).is_err());
        assert!(is_primitive_root(10, 5).is_err());
    }

    #[test]
    fn entropy_endpoints() {
        assert_eq!(entropy_q(0.0, 5).unwrap(), 0.0);
        assert!((entropy_q(0.5, 2).unwrap() - 1.0).abs() < ENTROPY_TOL);
        assert!((entropy_q(0.8, 5).unwrap() - 1.0).abs() < ENTROPY_TOL);
        assert!(entropy_q(0.81, 5).is_err());
        assert!(entropy_q(-0.1, 5).is_err());
    }

    #[test]
    fn entropy_inverse_values() {
        assert_eq!(entropy_inverse(0.0, 5).unwrap(), 0.0);
        assert_eq!(entropy_inverse(1.0, 5).unwrap(), 0.8);
        let d = entropy_inverse(0.125, 5).unwrap();
        assert!((entropy_q(d, 5).unwrap() - 0.125).abs() <= 1e-12);
        assert!(entropy_inverse(1.5, 5).is_err());
    }

    #[test]
    fn dickson_small_cases() {
        let f7 = make_field(7, 1).unwrap();
        let m1 = f7.neg(1);
        assert_eq!(dickson(2, m1, &f7), Poly::from_coeffs(vec![2, 0, 1]));
        assert_eq!(dickson(4, m1, &f7), Poly::from_coeffs(vec![2, 0, 4, 0, 1]));
        assert_eq!(roots(&dickson(4, m1, &f7), &f7), vec![1, 3, 4, 6]);
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(roots(&dickson(2, f3.neg(1), &f3), &f3), vec![1, 2]);
        assert_eq!(dickson(0, 1, &f3), Poly::constant(2));
        assert_eq!(dickson(1, 1, &f3), Poly::x());
    }

    #[test]
    fn dickson_recurrence() {
        for p in [3u64, 5, 7] {
            let f = make_field(p, 1).unwrap();
            for alpha in f.elements() {
                for n in 2..=16 {
                    let lhs = dickson(n, alpha, &f);
                    let rhs = Poly::x()
                        .mul(&dickson(n - 1, alpha, &f), &f)
                        .sub(&dickson(n - 2, alpha, &f).scale(alpha, &f), &f);
                    assert_eq!(lhs, rhs, "p={p} alpha={alpha} n={n}");
                }
            }
        }
    }
}
