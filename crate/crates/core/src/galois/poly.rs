use std::cmp::Ordering;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{Elem, FieldCtx};

/// Univariate polynomial over a [`FieldCtx`], lowest degree first.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector. Arithmetic takes the field explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![1] }
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn x() -> Poly {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn monomial(c: Elem, deg: usize) -> Poly {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Poly::from_coeffs(coeffs)
    }

    /// `x^n + c`.
    pub fn binomial(n: usize, c: Elem) -> Poly {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = c;
        coeffs[n] = 1;
        Poly::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Dense coefficient vector of length `n`, zero padded.
    pub fn to_dense(&self, n: usize) -> Vec<Elem> {
        let mut v = self.coeffs.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    /// Degree first, then coefficients from the leading one down.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    pub fn add(&self, other: &Poly, f: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, f: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &FieldCtx) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: Elem, f: &FieldCtx) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &FieldCtx) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, divisor: &Poly, f: &FieldCtx) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.lead()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let t = f.mul(c, lead_inv);
            quot[i - dd] = t;
            for (k, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + k] = f.sub(rem[i - dd + k], f.mul(t, dc));
            }
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Poly, f: &FieldCtx) -> Poly {
        self.divrem(divisor, f).1
    }

    pub fn make_monic(&self, f: &FieldCtx) -> Poly {
        match f.inv(self.lead()) {
            Some(inv) => self.scale(inv, f),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly, f: &FieldCtx) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.make_monic(f)
    }

    /// Inverse modulo `modulus`, if `self` is coprime to it.
    pub fn inv_mod(&self, modulus: &Poly, f: &FieldCtx) -> Option<Poly> {
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus, f));
        let (mut s0, mut s1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (quot, r) = r0.divrem(&r1, f);
            let s = s0.sub(&quot.mul(&s1, f), f);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = f.inv(r0.lead())?;
        Some(s0.scale(c, f).rem(modulus, f))
    }

    pub fn derivative(&self, f: &FieldCtx) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: Elem, f: &FieldCtx) -> Elem {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self(g) mod modulus` by Horner's rule.
    pub fn compose_mod(&self, g: &Poly, modulus: &Poly, f: &FieldCtx) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, &c| {
            acc.mul(g, f).add(&Poly::constant(c), f).rem(modulus, f)
        })
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly, f: &FieldCtx) -> Poly {
        self.mul(other, f).rem(modulus, f)
    }

    pub fn pow_mod(&self, e: u64, modulus: &Poly, f: &FieldCtx) -> Poly {
        self.pow_mod_big(&BigUint::from(e), modulus, f)
    }

    pub fn pow_mod_big(&self, e: &BigUint, modulus: &Poly, f: &FieldCtx) -> Poly {
        let mut acc = Poly::one().rem(modulus, f);
        let base = self.rem(modulus, f);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus, f);
            if e.bit(i) {
                acc = acc.mul_mod(&base, modulus, f);
            }
        }
        acc
    }

    /// Monic reciprocal `x^deg f(1/x) / f(0)`; `None` when `f(0) = 0`.
    pub fn reciprocal(&self, f: &FieldCtx) -> Option<Poly> {
        let c0 = *self.coeffs.first()?;
        if c0 == 0 {
            return None;
        }
        let rev = Poly::from_coeffs(self.coeffs.iter().rev().copied().collect());
        Some(rev.scale(f.inv(c0)?, f))
    }

    pub fn is_self_reciprocal(&self, f: &FieldCtx) -> bool {
        self.reciprocal(f).as_ref() == Some(self)
    }

    /// Integer coefficient view for serialization: each element as its
    /// coefficient vector, or a bare integer over a prime field.
    pub fn to_json(&self, f: &FieldCtx) -> serde_json::Value {
        if f.is_prime_field() {
            serde_json::json!(self.coeffs)
        } else {
            serde_json::json!(self.coeffs.iter().map(|&c| f.coeffs(c)).collect::<Vec<_>>())
        }
    }

    /// Human-readable rendering, highest degree first.
    pub fn display(&self, f: &FieldCtx) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let fmt_c = |c: Elem| {
            if f.is_prime_field() {
                c.to_string()
            } else {
                format!("{:?}", f.coeffs(c))
            }
        };
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { fmt_c(c) };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            });
        }
        terms.join(" + ")
    }
}
