use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Integer encoding of a field element: the coefficient vector
/// `(c_0, ..., c_{m-1})` over `F_p` packed as `sum c_i p^i`.
pub type Elem = u32;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Addition tables are precomputed for extension fields up to this size.
const ADD_TABLE_LIMIT: u32 = 256;

/// Handle to a finite field `F_q`, `q = p^m`, in polynomial basis over `F_p`.
///
/// Cloning is cheap; the tables live behind an `Arc`.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic irreducible modulus over `F_p`, lowest degree first, length `m + 1`.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `i < 2(q - 1)`; empty for prime fields.
    exp: Vec<Elem>,
    /// Discrete log base `g`; `log[0]` is unused.
    log: Vec<u32>,
    /// Full addition table for small extension fields.
    add: Vec<Elem>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.0.p)
            .field("m", &self.0.m)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, m)` when `q = p^m` for a prime `p`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Builds `F_{p^m}` with the lexicographically least monic irreducible modulus.
pub fn make_field(p: u64, m: u32) -> Result<FieldCtx> {
    FieldCtx::new(p, m)
}

/// Builds `F_q` from a prime power `q`.
pub fn field_of_order(q: u64) -> Result<FieldCtx> {
    let (p, m) = prime_power(q).ok_or(Error::Precondition(format!("{q} is not a prime power")))?;
    FieldCtx::new(p as u64, m)
}

// Dense polynomial helpers over F_p used only while building a context.
fn pmul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for d in (m..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for k in 0..m {
            // modulus is monic: x^m = -sum modulus[k] x^k
            let sub = c * modulus[k] as u64 % p as u64;
            prod[d - m + k] = (prod[d - m + k] + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(m);
    prod.resize(m, 0);
    prod.into_iter().map(|c| c as u32).collect()
}

fn encode(digits: &[u32], p: u32) -> Elem {
    digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

fn decode(mut e: Elem, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = e % p;
            e /= p;
            d
        })
        .collect()
}

fn pow_digits(base: &[u32], mut e: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut acc = vec![0u32; m];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = pmul_mod(&acc, &b, modulus, p);
        }
        b = pmul_mod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

/// Rabin's test on a monic polynomial over `F_p` using raw digit vectors.
fn is_irreducible_fp(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    if m <= 1 {
        return m == 1;
    }
    let prime = FieldCtx::prime(p);
    let f = super::Poly::from_coeffs(modulus.to_vec());
    super::factor::is_irreducible(&f, &prime)
}

impl FieldCtx {
    fn prime(p: u32) -> FieldCtx {
        FieldCtx(Arc::new(Inner {
            p,
            m: 1,
            q: p,
            modulus: vec![0, 1],
            exp: Vec::new(),
            log: Vec::new(),
            add: Vec::new(),
        }))
    }

    pub fn new(p: u64, m: u32) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::InvalidDegree(m));
        }
        let q = p.checked_pow(m).filter(|&q| q <= MAX_FIELD_SIZE).ok_or(Error::FieldTooLarge(
            p.saturating_pow(m),
        ))?;
        let p = p as u32;
        if m == 1 {
            return Ok(FieldCtx::prime(p));
        }
        // Monic candidates ordered by the integer encoding of their lower coefficients.
        let modulus = (0..q as u32)
            .map(|low| {
                let mut c = decode(low, p, m);
                c.push(1);
                c
            })
            .find(|c| c[0] != 0 && is_irreducible_fp(c, p))
            .expect("an irreducible polynomial of every degree exists");
        Self::build(p, modulus)
    }

    /// Builds an extension of `F_p` from an explicit monic irreducible modulus.
    pub fn with_modulus(p: u64, modulus: Vec<u32>) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let p = p as u32;
        if modulus.len() < 2 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::Reducible);
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::NotMonic);
        }
        let m = modulus.len() as u32 - 1;
        if (p as u64).checked_pow(m).map_or(true, |q| q > MAX_FIELD_SIZE) {
            return Err(Error::FieldTooLarge((p as u64).saturating_pow(m)));
        }
        if !is_irreducible_fp(&modulus, p) {
            return Err(Error::Reducible);
        }
        if m == 1 {
            // x + c: any degree-1 modulus gives the prime field itself
            return Ok(FieldCtx::prime(p));
        }
        Self::build(p, modulus)
    }

    fn build(p: u32, modulus: Vec<u32>) -> Result<FieldCtx> {
        let m = modulus.len() as u32 - 1;
        let q = p.pow(m);
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let generator = (2..q)
            .map(|g| decode(g, p, m))
            .find(|g| {
                factors
                    .iter()
                    .all(|&r| pow_digits(g, order / r, &modulus, p) != decode(1, p, m))
            })
            .ok_or_else(|| Error::Inconsistent("no primitive element".into()))?;
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = decode(1, p, m);
        for i in 0..order {
            let e = encode(&cur, p);
            exp.push(e);
            log[e as usize] = i as u32;
            cur = pmul_mod(&cur, &generator, &modulus, p);
        }
        exp.extend_from_within(..);
        let mut ctx = Inner {
            p,
            m,
            q,
            modulus,
            exp,
            log,
            add: Vec::new(),
        };
        if q <= ADD_TABLE_LIMIT {
            let mut add = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = digit_add(a, b, p);
                }
            }
            ctx.add = add;
        }
        Ok(FieldCtx(Arc::new(ctx)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.q
    }

    /// Embeds an integer (reduced mod `p`) into the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        v.rem_euclid(self.0.p as i64) as Elem
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.0.m as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::Domain(format!("{coeffs:?} is not a coefficient vector")));
        }
        Ok(encode(coeffs, self.0.p))
    }

    pub fn coeffs(&self, e: Elem) -> Vec<u32> {
        decode(e, self.0.p, self.0.m)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let ctx = &*self.0;
        if ctx.m == 1 {
            let s = a + b;
            if s >= ctx.p {
                s - ctx.p
            } else {
                s
            }
        } else if !ctx.add.is_empty() {
            ctx.add[(a * ctx.q + b) as usize]
        } else {
            digit_add(a, b, ctx.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let ctx = &*self.0;
        if ctx.m == 1 {
            if a == 0 {
                0
            } else {
                ctx.p - a
            }
        } else {
            let (mut a, mut out, mut scale) = (a, 0, 1);
            while a > 0 {
                let d = a % ctx.p;
                out += ((ctx.p - d) % ctx.p) * scale;
                scale *= ctx.p;
                a /= ctx.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let ctx = &*self.0;
        if ctx.m == 1 {
            ((a as u64 * b as u64) % ctx.p as u64) as Elem
        } else if a == 0 || b == 0 {
            0
        } else {
            ctx.exp[(ctx.log[a as usize] + ctx.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let ctx = &*self.0;
        if ctx.m == 1 {
            Some(self.pow(a, (ctx.p - 2) as u64))
        } else {
            let l = ctx.log[a as usize];
            Some(ctx.exp[((ctx.q - 1 - l) % (ctx.q - 1)) as usize])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let ctx = &*self.0;
        if ctx.m > 1 {
            let l = ctx.log[a as usize] as u64 * (e % (ctx.q as u64 - 1));
            return ctx.exp[(l % (ctx.q as u64 - 1)) as usize];
        }
        let (mut acc, mut b, mut e) = (1u64, a as u64, e);
        let p = ctx.p as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc as Elem
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let n = self.q() as u64 - 1;
        let mut ord = n;
        for r in prime_factors(n) {
            while ord % r == 0 && self.pow(a, ord / r) == 1 {
                ord /= r;
            }
        }
        Some(ord)
    }

    /// Square roots of `a` by exhaustive scan.
    pub fn sqrts(&self, a: Elem) -> Vec<Elem> {
        self.elements().filter(|&x| self.mul(x, x) == a).collect()
    }
}

fn digit_add(mut a: Elem, mut b: Elem, p: u32) -> Elem {
    let (mut out, mut scale) = (0, 1);
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * scale;
        scale *= p;
        a /= p;
        b /= p;
    }
    out
}
