//! Counting, enumerating and searching self-dual and LCD double circulant
//! (`x^n - 1`) and double negacirculant (`x^n + 1`) codes over `R`.
//!
//! Closed forms come from the factor shape of the modulus. Every count also
//! has a brute-force route ([`enumerate_codes`]) that applies the spec-level
//! predicates of [`crate::codekit`] to each `a(x)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::codekit::{component_is_self_dual, crt_reconstruct, cyclic_mul, reflect, CodeSpec, CodeSpecJson};
use crate::error::{Error, Result};
use crate::factorshape::{decomposition_kind, factor_shape, DecompositionKind, FactorShape, Sign};
use crate::galois::{is_primitive_root, Elem, FieldCtx, Poly};
use crate::graydist::{gray_generator_matrix, min_distance_above, DistanceBound, GrayMap};
use crate::semiring::RElement;

/// Largest spec space scanned by [`enumerate_codes`] and the full-scan
/// containment count.
pub const ENUMERATION_BUDGET: u128 = 10_000_000;

/// Largest factor ring scanned when counting or sampling constituent solutions.
const FACTOR_SCAN_LIMIT: u128 = 1 << 22;

/// Largest component space `q^n` scanned for self-dual component solutions.
const COMPONENT_SCAN_LIMIT: u128 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    #[serde(rename = "sd")]
    SelfDual,
    Lcd,
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Property> {
        match s.to_ascii_lowercase().as_str() {
            "sd" | "self-dual" | "selfdual" => Ok(Property::SelfDual),
            "lcd" => Ok(Property::Lcd),
            _ => Err(Error::Domain(format!("unknown family {s:?}"))),
        }
    }
}

/// One of SD-DC, LCD-DC, SD-DN, LCD-DN.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Family {
    pub property: Property,
    pub sign: Sign,
}

impl Family {
    pub fn new(property: Property, sign: Sign) -> Family {
        Family { property, sign }
    }

    pub fn label(&self) -> &'static str {
        match (self.property, self.sign) {
            (Property::SelfDual, Sign::Minus) => "SD-DC",
            (Property::Lcd, Sign::Minus) => "LCD-DC",
            (Property::SelfDual, Sign::Plus) => "SD-DN",
            (Property::Lcd, Sign::Plus) => "LCD-DN",
        }
    }

    pub fn accepts(&self, spec: &CodeSpec) -> bool {
        spec.sign() == self.sign
            && match self.property {
                Property::SelfDual => spec.is_self_dual(),
                Property::Lcd => spec.is_lcd(),
            }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn as_opt_decimal<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => as_decimal(v, s),
        None => s.serialize_none(),
    }
}

/// Closed-form count for one family at `(q, n)`.
#[derive(Debug, Clone, Serialize)]
pub struct CensusResult {
    pub family: Family,
    pub q: u32,
    pub n: usize,
    /// The published product formula; absent where it does not apply.
    #[serde(serialize_with = "as_opt_decimal")]
    pub closed_form: Option<BigUint>,
    /// Product of exact per-constituent counts, each component field handled
    /// separately.
    #[serde(serialize_with = "as_decimal")]
    pub constituent_count: BigUint,
    pub shape: serde_json::Value,
    pub warning: Option<String>,
}

fn big(q: u32) -> BigUint {
    BigUint::from(q)
}

fn qpow(q: u32, e: usize) -> BigUint {
    big(q).pow(e as u32)
}

fn check_family_n(sign: Sign, n: usize) -> Result<()> {
    match sign {
        Sign::Minus if n % 2 == 0 => Err(Error::Precondition(format!("circulant counts need odd n, got {n}"))),
        Sign::Plus if n % 2 == 1 => Err(Error::Precondition(format!("negacirculant counts need even n, got {n}"))),
        _ => Ok(()),
    }
}

/// Closed-form census of one family. `n` must be odd for circulant and even
/// for negacirculant families, coprime to `q`.
pub fn census(field: &FieldCtx, n: usize, family: Family) -> Result<CensusResult> {
    if field.p() == 2 {
        return Err(Error::Precondition("codes are built over odd q".into()));
    }
    check_family_n(family.sign, n)?;
    let shape = factor_shape(family.sign, n, field)?;
    let q = field.q();
    let s = field.sqrts(field.neg(1)).len() as u32;
    let mut warning = None;
    let mut exact = BigUint::one();
    let mut formula = BigUint::one();
    for g in &shape.self_reciprocal {
        match (g.half_degree(), family.property) {
            (None, Property::SelfDual) => {
                exact *= big(s * s);
                formula *= big(4);
            }
            (None, Property::Lcd) => {
                exact *= big((q - s) * (q - s));
                formula *= big(q * q) - big(4);
            }
            (Some(e), Property::SelfDual) => {
                let t = qpow(q, e) + 1u32;
                exact *= &t * &t;
                formula *= &t * &t;
            }
            (Some(e), Property::Lcd) => {
                let t = qpow(q, 2 * e) - qpow(q, e) - 1u32;
                exact *= &t * &t;
                let sd = qpow(q, e) + 1u32;
                formula *= qpow(q, 4 * e) - &sd * &sd;
            }
        }
    }
    for p in &shape.pairs {
        let d = p.degree;
        let t = match family.property {
            Property::SelfDual => qpow(q, d) - 1u32,
            Property::Lcd => qpow(q, 2 * d) - qpow(q, d) + 1u32,
        };
        exact *= &t * &t;
        formula *= &t * &t;
    }
    let mut closed_form = Some(formula);
    if family.sign == Sign::Minus && s == 0 {
        match family.property {
            Property::SelfDual => {
                closed_form = Some(BigUint::zero());
                warning = Some(format!("-1 is not a square in F_{q}: no self-dual double circulant codes"));
            }
            Property::Lcd => {
                closed_form = None;
                warning = Some(format!(
                    "-1 is not a square in F_{q}: the product formula does not apply, use the exhaustive count"
                ));
            }
        }
    }
    if family.property == Property::Lcd && closed_form.as_ref().is_some_and(|c| *c != exact) {
        warning = Some(
            "the product formula counts every non-self-dual constituent as LCD; over R a constituent can be \
             self-dual in one component and LCD in the other, so the exact count is lower"
                .into(),
        );
    }
    Ok(CensusResult {
        family,
        q,
        n,
        closed_form,
        constituent_count: exact,
        shape: shape.to_json(field),
        warning,
    })
}

pub fn count_self_dual_dc(field: &FieldCtx, n: usize) -> Result<CensusResult> {
    census(field, n, Family::new(Property::SelfDual, Sign::Minus))
}

pub fn count_lcd_dc(field: &FieldCtx, n: usize) -> Result<CensusResult> {
    census(field, n, Family::new(Property::Lcd, Sign::Minus))
}

pub fn count_self_dual_dn(field: &FieldCtx, n: usize) -> Result<CensusResult> {
    census(field, n, Family::new(Property::SelfDual, Sign::Plus))
}

pub fn count_lcd_dn(field: &FieldCtx, n: usize) -> Result<CensusResult> {
    census(field, n, Family::new(Property::Lcd, Sign::Plus))
}

fn space_size(q: u32, len: usize) -> u128 {
    (0..len).try_fold(1u128, |acc, _| acc.checked_mul(q as u128)).unwrap_or(u128::MAX)
}

fn digits(mut idx: u128, q: u32, len: usize) -> Vec<Elem> {
    (0..len)
        .map(|_| {
            let d = (idx % q as u128) as Elem;
            idx /= q as u128;
            d
        })
        .collect()
}

/// The spec with index `idx` in the enumeration order: the low `n` base-`q`
/// digits are `a1`, the high `n` digits are `a2`.
pub fn spec_at(field: &FieldCtx, n: usize, sign: Sign, idx: u128) -> CodeSpec {
    let all = digits(idx, field.q(), 2 * n);
    CodeSpec::new(field, n, sign, all[..n].to_vec(), all[n..].to_vec()).expect("digits lie in F_q")
}

fn check_space(field: &FieldCtx, n: usize, budget: u128) -> Result<u128> {
    let total = space_size(field.q(), 2 * n);
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    Ok(total)
}

/// Number of `a` in `R[x]/(x^n -+ 1)` whose spec satisfies `pred`.
pub fn enumerate_codes<P>(field: &FieldCtx, n: usize, sign: Sign, pred: P, budget: u128) -> Result<u64>
where
    P: Fn(&CodeSpec) -> bool + Sync,
{
    let total = check_space(field, n, budget)? as u64;
    Ok((0..total)
        .into_par_iter()
        .filter(|&i| pred(&spec_at(field, n, sign, i as u128)))
        .count() as u64)
}

/// The specs satisfying `pred`, in enumeration order.
pub fn enumerate_matching<P>(field: &FieldCtx, n: usize, sign: Sign, pred: P, budget: u128) -> Result<Vec<CodeSpec>>
where
    P: Fn(&CodeSpec) -> bool + Sync,
{
    let total = check_space(field, n, budget)? as u64;
    Ok((0..total)
        .into_par_iter()
        .filter_map(|i| {
            let spec = spec_at(field, n, sign, i as u128);
            pred(&spec).then_some(spec)
        })
        .collect())
}

/// All `c` in `F_q[x]/(x^n -+ 1)` with `c(x) c(x^{-1}) = -1`, in index order.
///
/// A spec is self-dual exactly when both of its CRT components are such
/// solutions, so these lists parameterize every self-dual spec; this works for
/// any `n`, including `gcd(n, q) > 1`.
pub fn component_self_dual_solutions(field: &FieldCtx, n: usize, sign: Sign) -> Result<Vec<Vec<Elem>>> {
    let total = space_size(field.q(), n);
    if total > COMPONENT_SCAN_LIMIT {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget: COMPONENT_SCAN_LIMIT,
        });
    }
    Ok((0..total as u64)
        .into_par_iter()
        .filter_map(|i| {
            let c = digits(i as u128, field.q(), n);
            component_is_self_dual(&c, sign, field).then_some(c)
        })
        .collect())
}

/// Which generators a containment count ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    All,
    SelfDual,
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scope> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(Scope::All),
            "sd" | "self-dual" | "selfdual" => Ok(Scope::SelfDual),
            _ => Err(Error::Domain(format!("unknown scope {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainmentCount {
    pub count: u128,
    /// `full-scan` or `constituents`.
    pub method: &'static str,
}

/// Whether `e` is a nonzero `R`-multiple of the all-ones vector.
pub fn is_constant_vector(e: &[RElement]) -> bool {
    !e.is_empty() && !e[0].is_zero() && e.iter().all(|&x| x == e[0])
}

fn component_vec(v: &[RElement], k: usize, f: &FieldCtx) -> Vec<Elem> {
    v.iter().map(|z| if k == 0 { z.a } else { f.add(z.a, z.b) }).collect()
}

/// Number of specs `a` with `z = (e | f)` in `C_a` (and, for
/// [`Scope::SelfDual`], `C_a` self-dual).
///
/// Scans every spec when `q^{2n} <= budget`; otherwise solves `f = e a`
/// factor by factor in each CRT component, which needs `gcd(n, q) = 1`.
/// For circulant specs `e` must not be a constant vector.
pub fn containment_count(z: &[RElement], field: &FieldCtx, sign: Sign, scope: Scope, budget: u128) -> Result<ContainmentCount> {
    if z.len() % 2 != 0 || z.is_empty() {
        return Err(Error::Precondition("z must have even positive length".into()));
    }
    if z.iter().all(RElement::is_zero) {
        return Err(Error::Precondition("z must be nonzero".into()));
    }
    let n = z.len() / 2;
    let (e, w) = z.split_at(n);
    if sign == Sign::Minus && is_constant_vector(e) {
        return Err(Error::Precondition("left half of z is a constant vector".into()));
    }
    let comps: Vec<(Vec<Elem>, Vec<Elem>)> = (0..2).map(|k| (component_vec(e, k, field), component_vec(w, k, field))).collect();
    if space_size(field.q(), 2 * n) <= budget {
        let total = space_size(field.q(), 2 * n) as u64;
        let count = (0..total)
            .into_par_iter()
            .filter(|&i| {
                let spec = spec_at(field, n, sign, i as u128);
                let parts = spec.components();
                parts.iter().zip(&comps).all(|(c, (ek, wk))| cyclic_mul(ek, c, sign, field) == *wk)
                    && (scope == Scope::All || spec.is_self_dual())
            })
            .count();
        return Ok(ContainmentCount {
            count: count as u128,
            method: "full-scan",
        });
    }
    let shape = factor_shape(sign, n, field).map_err(|err| match err {
        Error::NotCoprime { .. } => Error::Precondition(format!("{err}: no constituent route for this instance")),
        other => other,
    })?;
    let mut count = 1u128;
    for (ek, wk) in &comps {
        let (ep, wp) = (Poly::from_coeffs(ek.clone()), Poly::from_coeffs(wk.clone()));
        count = count.saturating_mul(component_containment(&ep, &wp, &shape, scope, field)?);
    }
    Ok(ContainmentCount {
        count,
        method: "constituents",
    })
}

/// Solutions `c` of `e c = w` in `F_q[x]/(x^n -+ 1)` (with `c(x) c(x^{-1}) = -1`
/// for self-dual scope), as a product over factors.
fn component_containment(e: &Poly, w: &Poly, shape: &FactorShape, scope: Scope, f: &FieldCtx) -> Result<u128> {
    let mut count = 1u128;
    for g in &shape.self_reciprocal {
        let (eg, wg) = (e.rem(&g.factor, f), w.rem(&g.factor, f));
        let local = if !eg.is_zero() {
            let c = wg.mul_mod(&eg.inv_mod(&g.factor, f).unwrap(), &g.factor, f);
            (scope == Scope::All || satisfies_norm_equation(&c, &g.factor, f)) as u128
        } else if !wg.is_zero() {
            0
        } else {
            match scope {
                Scope::All => space_size(f.q(), g.degree),
                Scope::SelfDual => norm_fiber(&g.factor, f)?.len() as u128,
            }
        };
        count = count.saturating_mul(local);
    }
    for p in &shape.pairs {
        let (eh, wh) = (e.rem(&p.h, f), w.rem(&p.h, f));
        let (es, ws) = (e.rem(&p.h_star, f), w.rem(&p.h_star, f));
        let local = match scope {
            Scope::All => {
                let side = |ex: &Poly, wx: &Poly| -> u128 {
                    if !ex.is_zero() {
                        1
                    } else if wx.is_zero() {
                        space_size(f.q(), p.degree)
                    } else {
                        0
                    }
                };
                side(&eh, &wh) * side(&es, &ws)
            }
            Scope::SelfDual => {
                if !eh.is_zero() {
                    let ch = wh.mul_mod(&eh.inv_mod(&p.h, f).unwrap(), &p.h, f);
                    match partner_solution(&ch, &p.h, &p.h_star, f) {
                        Some(cs) => (es.mul_mod(&cs, &p.h_star, f) == ws) as u128,
                        None => 0,
                    }
                } else if !wh.is_zero() {
                    0
                } else if !es.is_zero() {
                    let cs = ws.mul_mod(&es.inv_mod(&p.h_star, f).unwrap(), &p.h_star, f);
                    partner_solution(&cs, &p.h_star, &p.h, f).is_some() as u128
                } else if ws.is_zero() {
                    space_size(f.q(), p.degree) - 1
                } else {
                    0
                }
            }
        };
        count = count.saturating_mul(local);
    }
    Ok(count)
}

/// `c(x) c(x^{-1}) = -1` modulo a self-reciprocal factor `g`.
fn satisfies_norm_equation(c: &Poly, g: &Poly, f: &FieldCtx) -> bool {
    let v = c.mul_mod(&reflect(c, g, f), g, f);
    v == Poly::constant(f.neg(1))
}

/// Every `c` modulo `g` solving `c(x) c(x^{-1}) = -1`, by scanning the factor ring.
fn norm_fiber(g: &Poly, f: &FieldCtx) -> Result<Vec<Poly>> {
    let deg = g.degree().unwrap();
    let total = space_size(f.q(), deg);
    if total > FACTOR_SCAN_LIMIT {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget: FACTOR_SCAN_LIMIT,
        });
    }
    Ok((0..total)
        .map(|i| Poly::from_coeffs(digits(i, f.q(), deg)))
        .filter(|c| satisfies_norm_equation(c, g, f))
        .collect())
}

/// For `c` modulo `h`, the unique `c'` modulo `h*` with `c(x) c'(x^{-1}) = -1`
/// modulo `h`; `None` when `c = 0`.
fn partner_solution(c: &Poly, h: &Poly, h_star: &Poly, f: &FieldCtx) -> Option<Poly> {
    let minus_inv = c.inv_mod(h, f)?.neg(f);
    Some(reflect(&minus_inv, h_star, f))
}

/// Draws self-dual CRT components uniformly, constituent by constituent.
pub struct ConstituentSampler {
    field: FieldCtx,
    n: usize,
    factors: Vec<Poly>,
    fibers: Vec<Vec<Poly>>,
    pairs: Vec<(Poly, Poly)>,
}

impl ConstituentSampler {
    pub fn new(field: &FieldCtx, n: usize, sign: Sign) -> Result<ConstituentSampler> {
        let shape = factor_shape(sign, n, field)?;
        let fibers = shape.self_reciprocal.iter().map(|g| norm_fiber(&g.factor, field)).collect::<Result<Vec<_>>>()?;
        if fibers.iter().any(Vec::is_empty) {
            return Err(Error::Precondition("some constituent has no self-dual solution".into()));
        }
        Ok(ConstituentSampler {
            field: field.clone(),
            n,
            factors: shape.factors().into_iter().cloned().collect(),
            fibers,
            pairs: shape.pairs.iter().map(|p| (p.h.clone(), p.h_star.clone())).collect(),
        })
    }

    /// A uniformly random `c` with `c(x) c(x^{-1}) = -1` modulo `x^n -+ 1`.
    pub fn sample(&self, rng: &mut impl Rng) -> Vec<Elem> {
        let f = &self.field;
        let mut residues: Vec<Poly> = self.fibers.iter().map(|fib| fib[rng.gen_range(0..fib.len())].clone()).collect();
        for (h, h_star) in &self.pairs {
            let deg = h.degree().unwrap();
            let c = loop {
                let c = Poly::from_coeffs((0..deg).map(|_| rng.gen_range(0..f.q())).collect());
                if !c.is_zero() {
                    break c;
                }
            };
            let partner = partner_solution(&c, h, h_star, f).unwrap();
            residues.push(c);
            residues.push(partner);
        }
        let refs: Vec<&Poly> = self.factors.iter().collect();
        crt_reconstruct(&refs, &residues, f).to_dense(self.n)
    }
}

/// Upper bound on [`containment_count`] for the families where one is known:
/// circulant with `n` an odd prime and `q` primitive modulo `n`, and
/// negacirculant with `x^n + 1` splitting into one or two reciprocal pairs.
pub fn lemma_bound(field: &FieldCtx, n: usize, sign: Sign, scope: Scope) -> Result<BigUint> {
    let q = field.q();
    match sign {
        Sign::Minus => {
            if !is_primitive_root(q as u64, n as u64)? {
                return Err(Error::Precondition(format!("{q} is not a primitive root modulo {n}")));
            }
            Ok(match scope {
                Scope::All => qpow(q, n + 1),
                Scope::SelfDual => (qpow(q, (n - 1) / 2) + 1u32) * 4u32,
            })
        }
        Sign::Plus => {
            let shape = factor_shape(sign, n, field)?;
            match (decomposition_kind(&shape)?, scope) {
                (DecompositionKind::I, Scope::All) => Ok(qpow(q, 3 * n / 2)),
                (DecompositionKind::I, Scope::SelfDual) => Ok(qpow(q, n / 2)),
                (DecompositionKind::II, Scope::All) => Ok(qpow(q, 7 * n / 4)),
                (DecompositionKind::II, Scope::SelfDual) => Ok(qpow(q, 3 * n / 4)),
                (DecompositionKind::Other, _) => {
                    Err(Error::Precondition(format!("x^{n}+1 over F_{q} is not one or two reciprocal pairs")))
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<SearchMode> {
        match s.to_ascii_lowercase().as_str() {
            "exhaustive" => Ok(SearchMode::Exhaustive),
            "random" => Ok(SearchMode::Random),
            _ => Err(Error::Domain(format!("unknown search mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub mode: SearchMode,
    /// Random mode only.
    pub trials: u64,
    pub seed: u64,
    pub distance_budget: u128,
    pub enumeration_budget: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub family: Family,
    pub q: u32,
    pub n: usize,
    pub spec: CodeSpecJson,
    /// `a1`, `a2` in decreasing powers.
    pub a1: String,
    pub a2: String,
    /// Gray-phi parameters `[4n, 2n, d]`.
    pub params: [usize; 3],
    pub mode: SearchMode,
    pub trials: u64,
    pub seed: u64,
    /// Index of the reported spec among the candidates.
    pub index: u64,
}

/// Candidates for a search, addressed by index so they can be evaluated in
/// any order.
enum Candidates {
    SelfDualPairs(Vec<Vec<Elem>>),
    LcdSpace,
    RandomSelfDual(Box<dyn Fn(&mut ChaCha8Rng) -> Vec<Elem> + Sync>),
    RandomLcd,
}

const LCD_DRAW_ATTEMPTS: usize = 10_000;

impl Candidates {
    fn count(&self, q: u32, n: usize, trials: u64) -> u128 {
        match self {
            Candidates::SelfDualPairs(sols) => (sols.len() as u128).pow(2),
            Candidates::LcdSpace => space_size(q, 2 * n),
            _ => trials as u128,
        }
    }

    fn get(&self, field: &FieldCtx, n: usize, sign: Sign, seed: u64, idx: u128) -> Result<Option<CodeSpec>> {
        match self {
            Candidates::SelfDualPairs(sols) => {
                let len = sols.len() as u128;
                let (c0, c1) = (&sols[(idx % len) as usize], &sols[(idx / len) as usize]);
                CodeSpec::from_components(field, n, sign, c0, c1).map(Some)
            }
            Candidates::LcdSpace => {
                let spec = spec_at(field, n, sign, idx);
                Ok(spec.is_lcd().then_some(spec))
            }
            Candidates::RandomSelfDual(draw) => {
                let mut rng = trial_rng(seed, idx as u64);
                let (c0, c1) = (draw(&mut rng), draw(&mut rng));
                CodeSpec::from_components(field, n, sign, &c0, &c1).map(Some)
            }
            Candidates::RandomLcd => {
                let mut rng = trial_rng(seed, idx as u64);
                for _ in 0..LCD_DRAW_ATTEMPTS {
                    let mut coeffs = || (0..n).map(|_| rng.gen_range(0..field.q())).collect::<Vec<_>>();
                    let (a1, a2) = (coeffs(), coeffs());
                    let spec = CodeSpec::new(field, n, sign, a1, a2)?;
                    if spec.is_lcd() {
                        return Ok(Some(spec));
                    }
                }
                Err(Error::Precondition("no LCD spec found by random draws".into()))
            }
        }
    }
}

/// Independent stream for trial `t`: the same draws whatever the number of workers.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Candidates evaluated together; the distance cutoff is refreshed between chunks.
const SEARCH_CHUNK: u128 = 64;

/// Finds the family member whose Gray-phi image has the largest minimum
/// distance. Ties go to the lowest candidate index, so the result does not
/// depend on how candidates are spread over workers.
pub fn search_best(field: &FieldCtx, n: usize, family: Family, cfg: &SearchConfig) -> Result<SearchReport> {
    let sign = family.sign;
    let candidates = match (cfg.mode, family.property) {
        (SearchMode::Exhaustive, Property::SelfDual) => {
            let sols = component_self_dual_solutions(field, n, sign)?;
            if (sols.len() as u128).pow(2) > cfg.enumeration_budget {
                return Err(Error::BudgetExceeded {
                    needed: (sols.len() as u128).pow(2),
                    budget: cfg.enumeration_budget,
                });
            }
            Candidates::SelfDualPairs(sols)
        }
        (SearchMode::Exhaustive, Property::Lcd) => {
            check_space(field, n, cfg.enumeration_budget)?;
            Candidates::LcdSpace
        }
        (SearchMode::Random, _) if cfg.trials == 0 => {
            return Err(Error::Precondition("random search needs at least one trial".into()));
        }
        (SearchMode::Random, Property::SelfDual) => {
            if space_size(field.q(), n) <= COMPONENT_SCAN_LIMIT {
                let sols = component_self_dual_solutions(field, n, sign)?;
                if sols.is_empty() {
                    return Err(Error::Precondition(format!("no {} spec exists at q={}, n={n}", family, field.q())));
                }
                Candidates::RandomSelfDual(Box::new(move |rng| sols[rng.gen_range(0..sols.len())].clone()))
            } else {
                let sampler = ConstituentSampler::new(field, n, sign)?;
                Candidates::RandomSelfDual(Box::new(move |rng| sampler.sample(rng)))
            }
        }
        (SearchMode::Random, Property::Lcd) => Candidates::RandomLcd,
    };
    let total = candidates.count(field.q(), n, cfg.trials);
    let mut best: Option<(usize, u128, CodeSpec)> = None;
    let mut start = 0u128;
    while start < total {
        let end = (start + SEARCH_CHUNK).min(total);
        let cutoff = best.as_ref().map_or(0, |b| b.0);
        let results: Vec<Option<(usize, u128, CodeSpec)>> = (start as u64..end as u64)
            .into_par_iter()
            .map(|i| -> Result<_> {
                let Some(spec) = candidates.get(field, n, sign, cfg.seed, i as u128)? else {
                    return Ok(None);
                };
                let code = gray_generator_matrix(&spec, GrayMap::Phi)?;
                Ok(match min_distance_above(&code, cutoff, cfg.distance_budget)? {
                    DistanceBound::Exact(d) => Some((d, i as u128, spec)),
                    DistanceBound::AtMost(_) => None,
                })
            })
            .collect::<Result<_>>()?;
        for r in results.into_iter().flatten() {
            if best.as_ref().is_none_or(|b| r.0 > b.0) {
                best = Some(r);
            }
        }
        start = end;
    }
    let Some((d, index, spec)) = best else {
        return Err(Error::Precondition(format!("no {} spec exists at q={}, n={n}", family, field.q())));
    };
    let (a1, a2) = spec.to_decreasing();
    Ok(SearchReport {
        family,
        q: field.q(),
        n,
        spec: spec.to_json(),
        a1,
        a2,
        params: [4 * n, 2 * n, d],
        mode: cfg.mode,
        trials: match cfg.mode {
            SearchMode::Exhaustive => total as u64,
            SearchMode::Random => cfg.trials,
        },
        seed: cfg.seed,
        index: index as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::field_of_order;
    use crate::graydist::{min_distance, DEFAULT_DISTANCE_BUDGET};

    fn f(q: u64) -> FieldCtx {
        field_of_order(q).unwrap()
    }

    fn sd(sign: Sign) -> Family {
        Family::new(Property::SelfDual, sign)
    }

    fn lcd(sign: Sign) -> Family {
        Family::new(Property::Lcd, sign)
    }

    fn closed(q: u64, n: usize, fam: Family) -> Option<u64> {
        census(&f(q), n, fam).unwrap().closed_form.map(|c| c.try_into().unwrap())
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed(5, 3, sd(Sign::Minus)), Some(144));
        assert_eq!(closed(13, 3, sd(Sign::Minus)), Some(576));
        assert_eq!(closed(5, 1, sd(Sign::Minus)), Some(4));
        assert_eq!(closed(5, 3, lcd(Sign::Minus)), Some(12369));
        assert_eq!(closed(13, 3, lcd(Sign::Minus)), Some(4067085));
        assert_eq!(closed(3, 2, sd(Sign::Plus)), Some(16));
        assert_eq!(closed(3, 2, lcd(Sign::Plus)), Some(65));
        assert_eq!(closed(5, 2, sd(Sign::Plus)), Some(16));
        assert_eq!(closed(5, 2, lcd(Sign::Plus)), Some(441));
        assert_eq!(closed(3, 4, sd(Sign::Plus)), Some(64));
        assert_eq!(closed(5, 4, sd(Sign::Plus)), Some(576));
        assert_eq!(closed(5, 4, lcd(Sign::Plus)), Some(361201));
    }

    #[test]
    fn non_square_minus_one() {
        let r = count_self_dual_dc(&f(7), 3).unwrap();
        assert_eq!(r.closed_form, Some(BigUint::zero()));
        assert!(r.warning.is_some());
        let r = count_lcd_dc(&f(7), 3).unwrap();
        assert_eq!(r.closed_form, None);
        assert!(r.warning.is_some());
    }

    #[test]
    fn preconditions() {
        assert!(count_self_dual_dc(&f(5), 4).is_err());
        assert!(count_self_dual_dn(&f(5), 3).is_err());
        assert!(matches!(count_self_dual_dc(&f(5), 5), Err(Error::NotCoprime { .. })));
        assert!(count_self_dual_dc(&f(4), 3).is_err());
    }

    #[test]
    fn small_oracles() {
        let fq = f(3);
        assert_eq!(enumerate_codes(&fq, 2, Sign::Plus, |_| true, ENUMERATION_BUDGET).unwrap(), 81);
        assert_eq!(enumerate_codes(&fq, 2, Sign::Plus, CodeSpec::is_self_dual, ENUMERATION_BUDGET).unwrap(), 16);
        assert!(enumerate_codes(&fq, 2, Sign::Plus, |_| true, 80).is_err());
    }

    /// The per-constituent count equals brute force wherever brute force is cheap.
    #[test]
    fn constituent_counts_match_enumeration() {
        let cases = [(3u64, 1usize, Sign::Minus), (5, 1, Sign::Minus), (7, 1, Sign::Minus), (5, 3, Sign::Minus), (7, 3, Sign::Minus), (3, 2, Sign::Plus), (5, 2, Sign::Plus), (7, 2, Sign::Plus), (3, 4, Sign::Plus)];
        for (q, n, sign) in cases {
            let fq = f(q);
            for fam in [sd(sign), lcd(sign)] {
                let got = enumerate_codes(&fq, n, sign, |s| fam.accepts(s), ENUMERATION_BUDGET).unwrap();
                assert_eq!(census(&fq, n, fam).unwrap().constituent_count, BigUint::from(got), "{fam} q={q} n={n}");
            }
        }
    }

    #[test]
    fn component_solutions_square_to_sd_count() {
        let fq = f(5);
        let sols = component_self_dual_solutions(&fq, 3, Sign::Minus).unwrap();
        assert_eq!(sols.len(), 12);
        // n = 5 is not coprime to q = 5, yet the scan still applies
        let sols = component_self_dual_solutions(&fq, 5, Sign::Minus).unwrap();
        assert!(!sols.is_empty());
    }

    #[test]
    fn containment_routes_agree() {
        let fq = f(5);
        let mut rng = trial_rng(11, 0);
        for (n, sign) in [(3, Sign::Minus), (2, Sign::Plus), (4, Sign::Plus), (2, Sign::Minus)] {
            let sols = component_self_dual_solutions(&fq, n, sign).unwrap();
            for t in 0..6 {
                let a = if t % 2 == 0 && !sols.is_empty() {
                    let (c0, c1) = (&sols[rng.gen_range(0..sols.len())], &sols[rng.gen_range(0..sols.len())]);
                    CodeSpec::from_components(&fq, n, sign, c0, c1).unwrap()
                } else {
                    spec_at(&fq, n, sign, rng.gen_range(0..space_size(5, 2 * n)))
                };
                let e: Vec<RElement> = (0..n)
                    .map(|i| if t == 5 && i > 0 { RElement::ZERO } else { RElement::new(rng.gen_range(0..5), rng.gen_range(0..5)) })
                    .collect();
                if e.iter().all(RElement::is_zero) || (sign == Sign::Minus && is_constant_vector(&e)) {
                    continue;
                }
                let z = a.encode(&e);
                for scope in [Scope::All, Scope::SelfDual] {
                    let full = containment_count(&z, &fq, sign, scope, ENUMERATION_BUDGET).unwrap();
                    let by_parts = containment_count(&z, &fq, sign, scope, 0).unwrap();
                    assert_eq!(full.method, "full-scan");
                    assert_eq!(by_parts.method, "constituents");
                    assert_eq!(full.count, by_parts.count, "n={n} {sign:?} {scope:?} z={z:?}");
                }
            }
        }
    }

    #[test]
    fn containment_rejects_inadmissible() {
        let fq = f(5);
        let ones = vec![RElement::ONE; 6];
        assert!(containment_count(&ones, &fq, Sign::Minus, Scope::All, ENUMERATION_BUDGET).is_err());
        assert!(containment_count(&[RElement::ZERO; 6], &fq, Sign::Minus, Scope::All, ENUMERATION_BUDGET).is_err());
    }

    #[test]
    fn bounds() {
        let fq = f(5);
        assert_eq!(lemma_bound(&fq, 3, Sign::Minus, Scope::All).unwrap(), BigUint::from(625u32));
        assert_eq!(lemma_bound(&fq, 3, Sign::Minus, Scope::SelfDual).unwrap(), BigUint::from(24u32));
        assert_eq!(lemma_bound(&fq, 4, Sign::Plus, Scope::All).unwrap(), BigUint::from(15625u32));
        assert_eq!(lemma_bound(&fq, 4, Sign::Plus, Scope::SelfDual).unwrap(), BigUint::from(25u32));
        assert!(lemma_bound(&fq, 11, Sign::Minus, Scope::All).is_err());
        assert_eq!(lemma_bound(&f(17), 4, Sign::Plus, Scope::SelfDual).unwrap(), BigUint::from(17u32.pow(3)));
    }

    #[test]
    fn sampler_draws_self_dual_components() {
        let fq = f(13);
        let sampler = ConstituentSampler::new(&fq, 6, Sign::Plus).unwrap();
        let mut rng = trial_rng(3, 1);
        for _ in 0..20 {
            let c = sampler.sample(&mut rng);
            assert!(component_is_self_dual(&c, Sign::Plus, &fq));
        }
        let sampler = ConstituentSampler::new(&fq, 5, Sign::Minus).unwrap();
        let c = sampler.sample(&mut rng);
        assert!(component_is_self_dual(&c, Sign::Minus, &fq));
    }

    fn cfg(mode: SearchMode, trials: u64) -> SearchConfig {
        SearchConfig {
            mode,
            trials,
            seed: 0,
            distance_budget: DEFAULT_DISTANCE_BUDGET,
            enumeration_budget: ENUMERATION_BUDGET,
        }
    }

    #[test]
    fn exhaustive_searches() {
        let fq = f(5);
        let r = search_best(&fq, 2, lcd(Sign::Minus), &cfg(SearchMode::Exhaustive, 0)).unwrap();
        assert_eq!(r.params, [8, 4, 4]);
        let r = search_best(&fq, 3, sd(Sign::Minus), &cfg(SearchMode::Exhaustive, 0)).unwrap();
        assert_eq!(r.params, [12, 6, 4]);
        assert_eq!(r.trials, 144);
        let spec = CodeSpec::from_json(&r.spec).unwrap();
        assert!(spec.is_self_dual());
        let code = gray_generator_matrix(&spec, GrayMap::Phi).unwrap();
        assert_eq!(min_distance(&code, DEFAULT_DISTANCE_BUDGET).unwrap().params, r.params);
        assert!(search_best(&f(7), 3, sd(Sign::Minus), &cfg(SearchMode::Exhaustive, 0)).is_err());
    }

    #[test]
    fn random_search_is_reproducible() {
        let fq = f(5);
        let a = search_best(&fq, 3, lcd(Sign::Minus), &cfg(SearchMode::Random, 40)).unwrap();
        let b = search_best(&fq, 3, lcd(Sign::Minus), &cfg(SearchMode::Random, 40)).unwrap();
        assert_eq!(a.spec, b.spec);
        assert!(CodeSpec::from_json(&a.spec).unwrap().is_lcd());
        let s = search_best(&fq, 4, sd(Sign::Minus), &cfg(SearchMode::Random, 30)).unwrap();
        assert!(CodeSpec::from_json(&s.spec).unwrap().is_self_dual());
        assert!(search_best(&fq, 3, lcd(Sign::Minus), &cfg(SearchMode::Random, 0)).is_err());
    }
}
