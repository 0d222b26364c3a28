//! Factorization shapes of `x^n - 1` and `x^n + 1`.
//!
//! The irreducible factors are sorted into self-reciprocal factors and
//! reciprocal pairs `(h, h*)`. For `n = 2^a` the factors of `x^n + 1` also
//! have closed forms in terms of Dickson polynomial roots and roots of unity;
//! [`dickson_factorization`] builds those directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{dickson, factor_squarefree, roots, FieldCtx, Poly};

/// Which binomial is being factored: `x^n - 1` (circulant) or `x^n + 1` (negacirculant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    /// `x^n - 1` or `x^n + 1`.
    pub fn modulus(self, n: usize, f: &FieldCtx) -> Poly {
        Poly::binomial(n, self.constant(f))
    }

    /// Constant term of the modulus.
    pub fn constant(self, f: &FieldCtx) -> u32 {
        match self {
            Sign::Minus => f.neg(1),
            Sign::Plus => 1,
        }
    }

    /// Value of `x^n` in the quotient ring: `1` for circulant, `-1` for negacirculant.
    pub fn wrap(self, f: &FieldCtx) -> u32 {
        match self {
            Sign::Minus => 1,
            Sign::Plus => f.neg(1),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Minus => "minus",
            Sign::Plus => "plus",
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Sign> {
        match s {
            "minus" | "circulant" | "-" => Ok(Sign::Minus),
            "plus" | "negacirculant" | "+" => Ok(Sign::Plus),
            _ => Err(Error::Precondition(format!("unknown sign {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfReciprocal {
    pub factor: Poly,
    pub degree: usize,
}

impl SelfReciprocal {
    /// `e` with `degree = 2e`; `None` for the linear factors `x - 1`, `x + 1`.
    pub fn half_degree(&self) -> Option<usize> {
        (self.degree % 2 == 0).then_some(self.degree / 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocalPair {
    pub h: Poly,
    pub h_star: Poly,
    pub degree: usize,
}

/// Classified factorization `x^n -+ 1 = prod g_i prod h_j h_j*` (monic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorShape {
    pub sign: Sign,
    pub n: usize,
    pub q: u32,
    /// Self-reciprocal factors, linear ones (`x - 1`, `x + 1`) first.
    pub self_reciprocal: Vec<SelfReciprocal>,
    pub pairs: Vec<ReciprocalPair>,
}

impl FactorShape {
    /// Every irreducible factor, self-reciprocal ones first, then `h, h*` per pair.
    pub fn factors(&self) -> Vec<&Poly> {
        self.self_reciprocal
            .iter()
            .map(|s| &s.factor)
            .chain(self.pairs.iter().flat_map(|p| [&p.h, &p.h_star]))
            .collect()
    }

    /// Degree-1 self-reciprocal factors.
    pub fn linear(&self) -> impl Iterator<Item = &SelfReciprocal> {
        self.self_reciprocal.iter().filter(|s| s.degree == 1)
    }

    pub fn product(&self, f: &FieldCtx) -> Poly {
        self.factors().into_iter().fold(Poly::one(), |acc, g| acc.mul(g, f))
    }

    pub fn to_json(&self, f: &FieldCtx) -> serde_json::Value {
        serde_json::json!({
            "sign": self.sign,
            "n": self.n,
            "q": self.q,
            "self_reciprocal": self.self_reciprocal.iter().map(|s| s.factor.to_json(f)).collect::<Vec<_>>(),
            "pairs": self.pairs.iter().map(|p| [p.h.to_json(f), p.h_star.to_json(f)]).collect::<Vec<_>>(),
        })
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Factors `x^n - 1` or `x^n + 1` over `F_q` and pairs reciprocal factors.
pub fn factor_shape(sign: Sign, n: usize, f: &FieldCtx) -> Result<FactorShape> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    if gcd(n, f.p() as usize) != 1 {
        return Err(Error::NotCoprime { n, q: f.q() });
    }
    let factors = factor_squarefree(&sign.modulus(n, f), f)?;
    let mut self_reciprocal = Vec::new();
    let mut pairs = Vec::new();
    let mut used = vec![false; factors.len()];
    for i in 0..factors.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let g = &factors[i];
        let degree = g.degree().unwrap();
        let recip = g.reciprocal(f).expect("x does not divide x^n -+ 1");
        if &recip == g {
            self_reciprocal.push(SelfReciprocal {
                factor: g.clone(),
                degree,
            });
            continue;
        }
        let j = factors
            .iter()
            .position(|h| h == &recip)
            .ok_or_else(|| Error::Inconsistent("reciprocal of a factor is missing".into()))?;
        used[j] = true;
        // factors are sorted, so g precedes its reciprocal
        pairs.push(ReciprocalPair {
            h: g.clone(),
            h_star: recip,
            degree,
        });
    }
    Ok(FactorShape {
        sign,
        n,
        q: f.q(),
        self_reciprocal,
        pairs,
    })
}

/// Decomposition type of `x^n + 1` for the negacirculant distance bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecompositionKind {
    /// One reciprocal pair, each factor of degree `n/2`.
    I,
    /// Two reciprocal pairs, each factor of degree `n/4`.
    II,
    Other,
}

pub fn decomposition_kind(shape: &FactorShape) -> Result<DecompositionKind> {
    if shape.sign != Sign::Plus {
        return Err(Error::Precondition("decomposition kinds are defined for x^n + 1".into()));
    }
    let n = shape.n;
    let kind = match (shape.self_reciprocal.len(), shape.pairs.as_slice()) {
        (0, [p]) if 2 * p.degree == n => DecompositionKind::I,
        (0, [p1, p2]) if 4 * p1.degree == n && 4 * p2.degree == n => DecompositionKind::II,
        _ => DecompositionKind::Other,
    };
    Ok(kind)
}

fn two_adic_valuation(mut v: u64) -> u32 {
    let mut k = 0;
    while v % 2 == 0 {
        v /= 2;
        k += 1;
    }
    k
}

/// Elements of exact multiplicative order `2^k`.
fn primitive_two_power_roots(k: u32, f: &FieldCtx) -> Vec<u32> {
    let target = 1u64 << k;
    f.elements().filter(|&x| f.order(x) == Some(target)).collect()
}

/// Closed-form factorization of `x^{2^a} + 1` over `F_q`, `q` odd, `a >= 2`.
///
/// For `q = 3 mod 4` with `q = 2^A m - 1`: trinomials `x^2 + gx + 1` over the
/// roots `g` of `D_{2^{a-1}}(x, 1)` when `a < A`, otherwise
/// `x^{2^{a-A+1}} + d x^{2^{a-A}} - 1` over the roots `d` of `D_{2^{A-1}}(x, -1)`.
/// For `q = 1 mod 4` with `q = 2^{A+1} m + 1`: `x + v` over primitive
/// `2^{a+1}`-th roots `v` when `a <= A`, otherwise `x^{2^{a-A}} + v` over
/// primitive `2^{A+1}`-th roots.
pub fn dickson_factorization(a: u32, f: &FieldCtx) -> Result<Vec<Poly>> {
    if f.p() == 2 {
        return Err(Error::Precondition("closed forms need odd q".into()));
    }
    if a < 2 {
        return Err(Error::Precondition(format!("n = 2^{a} must be at least 4")));
    }
    let q = f.q() as u64;
    let minus_one = f.neg(1);
    let mut out: Vec<Poly> = if q % 4 == 3 {
        let big_a = two_adic_valuation(q + 1);
        if a < big_a {
            let gammas = roots(&dickson(1 << (a - 1), 1, f), f);
            gammas.into_iter().map(|g| Poly::from_coeffs(vec![1, g, 1])).collect()
        } else {
            let deltas = roots(&dickson(1 << (big_a - 1), minus_one, f), f);
            let hi = 1usize << (a - big_a + 1);
            let mid = 1usize << (a - big_a);
            deltas
                .into_iter()
                .map(|d| {
                    let mut c = vec![0; hi + 1];
                    c[0] = minus_one;
                    c[mid] = d;
                    c[hi] = 1;
                    Poly::from_coeffs(c)
                })
                .collect()
        }
    } else {
        let big_a = two_adic_valuation(q - 1) - 1;
        if a <= big_a {
            primitive_two_power_roots(a + 1, f)
                .into_iter()
                .map(|v| Poly::from_coeffs(vec![v, 1]))
                .collect()
        } else {
            let deg = 1usize << (a - big_a);
            primitive_two_power_roots(big_a + 1, f)
                .into_iter()
                .map(|v| Poly::binomial(deg, v))
                .collect()
        }
    };
    out.sort_by(|x, y| x.canonical_cmp(y));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{field_of_order, is_irreducible};

    fn f(q: u64) -> FieldCtx {
        field_of_order(q).unwrap()
    }

    fn p(c: &[u32]) -> Poly {
        Poly::from_coeffs(c.to_vec())
    }

    #[test]
    fn shape_x3_minus_1_over_f5() {
        let s = factor_shape(Sign::Minus, 3, &f(5)).unwrap();
        assert_eq!(s.self_reciprocal.len(), 2);
        assert_eq!(s.self_reciprocal[0].factor, p(&[4, 1]));
        assert_eq!(s.self_reciprocal[1].factor, p(&[1, 1, 1]));
        assert_eq!(s.self_reciprocal[1].half_degree(), Some(1));
        assert!(s.pairs.is_empty());
    }

    #[test]
    fn shape_x3_minus_1_over_f13() {
        let s = factor_shape(Sign::Minus, 3, &f(13)).unwrap();
        assert_eq!(s.linear().count(), 1);
        assert_eq!(s.pairs.len(), 1);
        // x - 3 and x - 9 (= x + 10, x + 4)
        let pair = &s.pairs[0];
        let mut got = [pair.h.clone(), pair.h_star.clone()];
        got.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(got, [p(&[4, 1]), p(&[10, 1])]);
        assert_eq!(pair.degree, 1);
    }

    #[test]
    fn shape_x2_plus_1_over_f5() {
        let s = factor_shape(Sign::Plus, 2, &f(5)).unwrap();
        assert!(s.self_reciprocal.is_empty());
        assert_eq!(s.pairs.len(), 1);
        assert_eq!((s.pairs[0].h.clone(), s.pairs[0].h_star.clone()), (p(&[2, 1]), p(&[3, 1])));
    }

    #[test]
    fn rejects_non_coprime() {
        assert!(matches!(factor_shape(Sign::Plus, 2, &f(4)), Err(Error::NotCoprime { .. })));
        assert!(matches!(factor_shape(Sign::Minus, 5, &f(5)), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn decomposition_kinds() {
        let k = |q, n| decomposition_kind(&factor_shape(Sign::Plus, n, &f(q)).unwrap()).unwrap();
        assert_eq!(k(5, 4), DecompositionKind::I);
        assert_eq!(k(17, 4), DecompositionKind::II);
        assert_eq!(k(7, 4), DecompositionKind::Other);
        assert!(decomposition_kind(&factor_shape(Sign::Minus, 3, &f(5)).unwrap()).is_err());
    }

    #[test]
    fn dickson_small_examples() {
        // q = 7, a = 2: gamma in roots of x^2 - 2 = {3, 4}
        assert_eq!(dickson_factorization(2, &f(7)).unwrap(), vec![p(&[1, 3, 1]), p(&[1, 4, 1])]);
        assert_eq!(
            dickson_factorization(3, &f(5)).unwrap(),
            vec![p(&[2, 0, 0, 0, 1]), p(&[3, 0, 0, 0, 1])]
        );
        assert!(dickson_factorization(1, &f(5)).is_err());
        assert!(dickson_factorization(3, &f(4)).is_err());
    }

    #[test]
    fn shape_invariants() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49] {
            let fq = f(q);
            for n in 1..=64usize {
                if n % fq.p() as usize == 0 {
                    continue;
                }
                for sign in [Sign::Minus, Sign::Plus] {
                    let s = factor_shape(sign, n, &fq).unwrap();
                    assert_eq!(s.product(&fq), sign.modulus(n, &fq));
                    let deg: usize = s.self_reciprocal.iter().map(|g| g.degree).sum::<usize>()
                        + 2 * s.pairs.iter().map(|p| p.degree).sum::<usize>();
                    assert_eq!(deg, n);
                    for g in &s.self_reciprocal {
                        assert!(g.factor.is_self_reciprocal(&fq));
                        assert!(g.degree == 1 || g.degree % 2 == 0);
                    }
                    for pr in &s.pairs {
                        assert_eq!(pr.h.reciprocal(&fq).as_ref(), Some(&pr.h_star));
                        assert_ne!(pr.h, pr.h_star);
                        assert!(pr.h.canonical_cmp(&pr.h_star).is_lt());
                    }
                    assert!(s.factors().iter().all(|g| is_irreducible(g, &fq)));
                }
            }
        }
    }
}
