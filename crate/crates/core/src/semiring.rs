//! The semilocal ring `R_l = F_{q^l} + u F_{q^l}` with `u^2 = u`.
//!
//! Elements are stored in the u-basis `a + u b`. Reduction mod `u` and mod
//! `u - 1` gives the CRT pair `(a, a + b)`, under which `R_l` is the product
//! ring `F_{q^l} x F_{q^l}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{make_field, Elem, FieldCtx, Poly};

/// `a + u b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "[Elem; 2]", into = "[Elem; 2]")]
pub struct RElement {
    pub a: Elem,
    pub b: Elem,
}

impl From<[Elem; 2]> for RElement {
    fn from([a, b]: [Elem; 2]) -> Self {
        RElement { a, b }
    }
}

impl From<RElement> for [Elem; 2] {
    fn from(z: RElement) -> Self {
        [z.a, z.b]
    }
}

impl RElement {
    pub const ZERO: RElement = RElement { a: 0, b: 0 };
    pub const ONE: RElement = RElement { a: 1, b: 0 };
    pub const U: RElement = RElement { a: 0, b: 1 };

    pub fn new(a: Elem, b: Elem) -> RElement {
        RElement { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

/// Arithmetic context for `R_l` over a base field `F_q`.
#[derive(Debug, Clone)]
pub struct RRing {
    base: FieldCtx,
    field: FieldCtx,
    ell: u32,
}

impl RRing {
    /// `R = F_q + u F_q`.
    pub fn over(base: &FieldCtx) -> RRing {
        RRing {
            base: base.clone(),
            field: base.clone(),
            ell: 1,
        }
    }

    /// `R_l`, with `F_{q^l}` built by [`make_field`].
    pub fn extension(base: &FieldCtx, ell: u32) -> Result<RRing> {
        if ell == 1 {
            return Ok(RRing::over(base));
        }
        let field = make_field(base.p() as u64, base.m() * ell)?;
        Ok(RRing {
            base: base.clone(),
            field,
            ell,
        })
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    /// The coordinate field `F_{q^l}`.
    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// `|R_l| = q^{2l}`.
    pub fn size(&self) -> u64 {
        let s = self.field.q() as u64;
        s * s
    }

    pub fn elements(&self) -> impl Iterator<Item = RElement> + '_ {
        let s = self.field.q();
        (0..s).flat_map(move |a| (0..s).map(move |b| RElement { a, b }))
    }

    pub fn add(&self, x: RElement, y: RElement) -> RElement {
        let f = &self.field;
        RElement::new(f.add(x.a, y.a), f.add(x.b, y.b))
    }

    pub fn sub(&self, x: RElement, y: RElement) -> RElement {
        let f = &self.field;
        RElement::new(f.sub(x.a, y.a), f.sub(x.b, y.b))
    }

    pub fn neg(&self, x: RElement) -> RElement {
        RElement::new(self.field.neg(x.a), self.field.neg(x.b))
    }

    /// `(a + ub)(c + ud) = ac + u(ad + bc + bd)`.
    pub fn mul(&self, x: RElement, y: RElement) -> RElement {
        let f = &self.field;
        let ub = f.add(f.add(f.mul(x.a, y.b), f.mul(x.b, y.a)), f.mul(x.b, y.b));
        RElement::new(f.mul(x.a, y.a), ub)
    }

    /// Scalar from the coordinate field.
    pub fn scale(&self, c: Elem, x: RElement) -> RElement {
        RElement::new(self.field.mul(c, x.a), self.field.mul(c, x.b))
    }

    /// CRT pair `(a, a + b)`: reductions mod `u` and mod `u - 1`.
    pub fn crt_split(&self, z: RElement) -> (Elem, Elem) {
        (z.a, self.field.add(z.a, z.b))
    }

    pub fn from_crt(&self, x: Elem, y: Elem) -> RElement {
        RElement::new(x, self.field.sub(y, x))
    }

    pub fn is_unit(&self, z: RElement) -> bool {
        let (x, y) = self.crt_split(z);
        x != 0 && y != 0
    }

    pub fn inv(&self, z: RElement) -> Option<RElement> {
        let (x, y) = self.crt_split(z);
        Some(self.from_crt(self.field.inv(x)?, self.field.inv(y)?))
    }

    /// `q^e`-power Frobenius on both u-coordinates of an element of `R_{2e}`.
    pub fn hermitian_conj(&self, z: RElement) -> Result<RElement> {
        if self.ell % 2 != 0 {
            return Err(Error::Precondition(format!(
                "hermitian conjugation needs even extension degree, got {}",
                self.ell
            )));
        }
        let e = (self.base.q() as u64).pow(self.ell / 2);
        Ok(RElement::new(self.field.pow(z.a, e), self.field.pow(z.b, e)))
    }

    /// Embeds an element of the base field as a constant.
    pub fn constant(&self, c: Elem) -> RElement {
        RElement::new(c, 0)
    }
}

/// All `z` in `R = F_q + u F_q` with `z^2 = -1`: `x + u y` with `x^2 = -1`
/// and `y` in `{0, -2x}`. Even characteristic gives `{1}`.
pub fn sqrt_minus_one(base: &FieldCtx) -> Vec<RElement> {
    if base.p() == 2 {
        return vec![RElement::ONE];
    }
    let mut out = Vec::new();
    for x in base.sqrts(base.neg(1)) {
        let minus_2x = base.neg(base.add(x, x));
        out.push(RElement::new(x, 0));
        out.push(RElement::new(x, minus_2x));
    }
    out.sort_by_key(|z| (z.a, z.b));
    out
}

/// Whether `-1` is a square in `F_q`, from the arithmetic of `q`: `q` even,
/// `q = p^b` with `p = 1 mod 4`, or `q = p^{2b}` with `p = 3 mod 4`.
pub fn minus_one_is_square_by_q(p: u32, m: u32) -> bool {
    p == 2 || p % 4 == 1 || m % 2 == 0
}

/// Full scans are used up to this many elements of `R_{2e}`.
const FULL_SCAN_LIMIT: u64 = 1 << 26;

/// Counts `c` in `R_{2e}` with `1 + c conj(c) = 0` by scanning the ring.
///
/// Above `2^26` ring elements the scan skips every `c = x + uy` whose
/// u-free part `1 + x conj(x)` is already nonzero.
pub fn hermitian_self_dual_count_oracle(q: u64, e: u32) -> Result<u64> {
    let base = crate::galois::field_of_order(q)?;
    let field_size = q.checked_pow(2 * e).unwrap_or(u64::MAX);
    if field_size > 1 << 16 {
        return Err(Error::BudgetExceeded {
            needed: field_size as u128,
            budget: 1 << 16,
        });
    }
    let ring = RRing::extension(&base, 2 * e)?;
    let f = ring.field();
    let is_zero_of = |c: RElement| -> Result<bool> {
        let v = ring.add(RElement::ONE, ring.mul(c, ring.hermitian_conj(c)?));
        Ok(v.is_zero())
    };
    let mut count = 0;
    if ring.size() <= FULL_SCAN_LIMIT {
        for c in ring.elements() {
            count += is_zero_of(c)? as u64;
        }
    } else {
        for x in f.elements() {
            let cx = RElement::new(x, 0);
            let head = ring.add(RElement::ONE, ring.mul(cx, ring.hermitian_conj(cx)?));
            if head.a != 0 {
                continue;
            }
            for y in f.elements() {
                count += is_zero_of(RElement::new(x, y))? as u64;
            }
        }
    }
    Ok(count)
}

/// Counts pairs `(a, b)` in `R_d^2` with `1 + ab = 0`.
pub fn reciprocal_pair_self_dual_count_oracle(q: u64, d: u32) -> Result<u64> {
    pair_scan(q, d, |_, v| v.is_zero())
}

/// Counts pairs `(a, b)` in `R_d^2` with `1 + ab` a unit.
pub fn reciprocal_pair_lcd_count_oracle(q: u64, d: u32) -> Result<u64> {
    pair_scan(q, d, |ring, v| ring.is_unit(v))
}

fn pair_scan(q: u64, d: u32, accept: impl Fn(&RRing, RElement) -> bool) -> Result<u64> {
    let base = crate::galois::field_of_order(q)?;
    let ring = RRing::extension(&base, d)?;
    let pairs = (ring.size() as u128).pow(2);
    if pairs > FULL_SCAN_LIMIT as u128 {
        return Err(Error::BudgetExceeded {
            needed: pairs,
            budget: FULL_SCAN_LIMIT as u128,
        });
    }
    let mut count = 0;
    for a in ring.elements() {
        for b in ring.elements() {
            count += accept(&ring, ring.add(RElement::ONE, ring.mul(a, b))) as u64;
        }
    }
    Ok(count)
}

/// Polynomial `a(x) + u b(x)` over `R`, stored as its two `F_q` parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct RPoly {
    pub a: Poly,
    pub b: Poly,
}

impl RPoly {
    pub fn new(a: Poly, b: Poly) -> RPoly {
        RPoly { a, b }
    }

    pub fn constant(z: RElement) -> RPoly {
        RPoly::new(Poly::constant(z.a), Poly::constant(z.b))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.a.degree().max(self.b.degree())
    }

    pub fn coeff(&self, i: usize) -> RElement {
        RElement::new(self.a.coeff(i), self.b.coeff(i))
    }

    /// The two CRT component polynomials `(a, a + b)`.
    pub fn crt_parts(&self, f: &FieldCtx) -> (Poly, Poly) {
        (self.a.clone(), self.a.add(&self.b, f))
    }

    pub fn from_crt_parts(c0: &Poly, c1: &Poly, f: &FieldCtx) -> RPoly {
        RPoly::new(c0.clone(), c1.sub(c0, f))
    }

    pub fn add(&self, o: &RPoly, f: &FieldCtx) -> RPoly {
        RPoly::new(self.a.add(&o.a, f), self.b.add(&o.b, f))
    }

    /// Product computed componentwise in the CRT view.
    pub fn mul(&self, o: &RPoly, f: &FieldCtx) -> RPoly {
        let (x0, x1) = self.crt_parts(f);
        let (y0, y1) = o.crt_parts(f);
        RPoly::from_crt_parts(&x0.mul(&y0, f), &x1.mul(&y1, f), f)
    }

    pub fn rem(&self, modulus: &Poly, f: &FieldCtx) -> RPoly {
        RPoly::new(self.a.rem(modulus, f), self.b.rem(modulus, f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> FieldCtx {
        crate::galois::field_of_order(q).unwrap()
    }

    #[test]
    fn crt_split_examples() {
        let r = RRing::over(&f(5));
        assert_eq!(r.crt_split(RElement::U), (0, 1));
        assert_eq!(r.crt_split(RElement::ONE), (1, 1));
        assert_eq!(r.crt_split(RElement::new(2, 3)), (2, 0));
        assert!(!r.is_unit(RElement::new(2, 3)));
    }

    #[test]
    fn units_of_r_over_f3() {
        let r = RRing::over(&f(3));
        assert_eq!(r.elements().filter(|&z| r.is_unit(z)).count(), 4);
        assert!(!r.is_unit(RElement::U));
        assert!(r.is_unit(RElement::new(1, 1)));
        // u (u - 1) = 0
        let u_minus_1 = RElement::new(2, 1);
        assert!(r.mul(RElement::U, u_minus_1).is_zero());
    }

    #[test]
    fn square_roots_of_minus_one() {
        let r5 = RRing::over(&f(5));
        let roots = sqrt_minus_one(r5.base());
        assert_eq!(
            roots,
            vec![RElement::new(2, 0), RElement::new(2, 1), RElement::new(3, 0), RElement::new(3, 4)]
        );
        for z in &roots {
            assert_eq!(r5.mul(*z, *z), RElement::new(4, 0));
        }
        assert!(sqrt_minus_one(&f(7)).is_empty());
        assert_eq!(sqrt_minus_one(&f(9)).len(), 4);
        assert_eq!(sqrt_minus_one(&f(4)), vec![RElement::ONE]);
    }

    #[test]
    fn hermitian_conjugation() {
        let base = f(3);
        assert!(RRing::over(&base).hermitian_conj(RElement::ONE).is_err());
        let r2 = RRing::extension(&base, 2).unwrap();
        let f9 = r2.field();
        let t = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f9.mul(t, t), f9.neg(1));
        let z = RElement::new(t, 1);
        assert_eq!(r2.hermitian_conj(z).unwrap(), RElement::new(f9.neg(t), 1));
        for z in r2.elements() {
            let c = r2.hermitian_conj(z).unwrap();
            assert_eq!(r2.hermitian_conj(c).unwrap(), z);
            // fixed points are exactly the elements with both coordinates in F_3
            assert_eq!(c == z, z.a < 3 && z.b < 3);
        }
    }

    #[test]
    fn constituent_oracles() {
        assert_eq!(hermitian_self_dual_count_oracle(3, 1).unwrap(), 16);
        assert_eq!(hermitian_self_dual_count_oracle(5, 1).unwrap(), 36);
        assert_eq!(hermitian_self_dual_count_oracle(3, 2).unwrap(), 100);
        assert!(hermitian_self_dual_count_oracle(257, 1).is_err());
        assert_eq!(reciprocal_pair_lcd_count_oracle(3, 1).unwrap(), 49);
        assert_eq!(reciprocal_pair_self_dual_count_oracle(5, 1).unwrap(), 16);
    }

    #[test]
    fn rpoly_product_matches_u_basis_expansion() {
        let fq = f(5);
        let r = RRing::over(&fq);
        let x = RPoly::new(Poly::from_coeffs(vec![1, 2]), Poly::from_coeffs(vec![3, 0, 4]));
        let y = RPoly::new(Poly::from_coeffs(vec![0, 4, 1]), Poly::from_coeffs(vec![2]));
        let prod = x.mul(&y, &fq);
        for k in 0..5 {
            let mut acc = RElement::ZERO;
            for i in 0..=k {
                acc = r.add(acc, r.mul(x.coeff(i), y.coeff(k - i)));
            }
            assert_eq!(prod.coeff(k), acc);
        }
    }
}
