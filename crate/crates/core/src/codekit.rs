//! Double circulant and double negacirculant codes over `R = F_q + u F_q`.
//!
//! A [`CodeSpec`] fixes `a(x) = a1(x) + u a2(x)` modulo `x^n - 1` (circulant)
//! or `x^n + 1` (negacirculant); the code is generated by `(I | A)` where `A`
//! is the (nega)circulant matrix with first row `a_0, ..., a_{n-1}`.
//!
//! Bulk predicates run in the CRT view: `R` splits as `F_q x F_q` via
//! `a + ub -> (a, a + b)`, so a spec is the pair of `F_q` polynomials
//! `(a1, a1 + a2)` and every duality question is asked once per component.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorshape::{FactorShape, Sign};
use crate::galois::{field_of_order, Elem, FieldCtx, Poly};
use crate::linalg::{determinant, FMatrix};
use crate::semiring::{RElement, RPoly, RRing};

/// `(q, n, sign, a(x))` describing a double (nega)circulant code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    field: FieldCtx,
    n: usize,
    sign: Sign,
    a1: Vec<Elem>,
    a2: Vec<Elem>,
}

/// Serialized form of a [`CodeSpec`], coefficients in increasing powers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpecJson {
    pub q: u32,
    pub n: usize,
    pub sign: Sign,
    pub a1: Vec<Elem>,
    pub a2: Vec<Elem>,
}

impl CodeSpec {
    pub fn new(field: &FieldCtx, n: usize, sign: Sign, a1: Vec<Elem>, a2: Vec<Elem>) -> Result<CodeSpec> {
        if field.p() == 2 {
            return Err(Error::Precondition("codes are built over odd q".into()));
        }
        if n == 0 {
            return Err(Error::Precondition("n must be positive".into()));
        }
        if a1.iter().chain(&a2).any(|&c| c >= field.q()) {
            return Err(Error::Domain("coefficient outside F_q".into()));
        }
        let f = field;
        let reduce = |c: Vec<Elem>| reduce_dense(&c, n, sign.wrap(f), f);
        Ok(CodeSpec {
            field: field.clone(),
            n,
            sign,
            a1: reduce(a1),
            a2: reduce(a2),
        })
    }

    pub fn from_rpoly(field: &FieldCtx, n: usize, sign: Sign, a: &RPoly) -> Result<CodeSpec> {
        CodeSpec::new(field, n, sign, a.a.coeffs().to_vec(), a.b.coeffs().to_vec())
    }

    /// Builds a spec from its two CRT component polynomials `(a1, a1 + a2)`.
    pub fn from_components(field: &FieldCtx, n: usize, sign: Sign, c0: &[Elem], c1: &[Elem]) -> Result<CodeSpec> {
        let a2 = (0..n)
            .map(|i| field.sub(c1.get(i).copied().unwrap_or(0), c0.get(i).copied().unwrap_or(0)))
            .collect();
        CodeSpec::new(field, n, sign, c0.to_vec(), a2)
    }

    /// Parses coefficient strings written in decreasing powers of `x`, as in
    /// printed tables: `"3 1 1"` is `3x^2 + x + 1`.
    pub fn from_decreasing(field: &FieldCtx, sign: Sign, a1: &str, a2: &str) -> Result<CodeSpec> {
        let parse = |s: &str| -> Result<Vec<Elem>> {
            let mut v = s
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|e| Error::Domain(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            v.reverse();
            Ok(v)
        };
        let (c1, c2) = (parse(a1)?, parse(a2)?);
        if c1.len() != c2.len() {
            return Err(Error::Precondition("a1 and a2 must list the same number of coefficients".into()));
        }
        CodeSpec::new(field, c1.len(), sign, c1, c2)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Dense coefficients of `a1`, increasing powers.
    pub fn a1(&self) -> &[Elem] {
        &self.a1
    }

    pub fn a2(&self) -> &[Elem] {
        &self.a2
    }

    pub fn rpoly(&self) -> RPoly {
        RPoly::new(Poly::from_coeffs(self.a1.clone()), Poly::from_coeffs(self.a2.clone()))
    }

    /// Coefficient `a_i = a1_i + u a2_i`.
    pub fn coeff(&self, i: usize) -> RElement {
        RElement::new(self.a1[i], self.a2[i])
    }

    /// The CRT components `(a1, a1 + a2)` as dense vectors.
    pub fn components(&self) -> [Vec<Elem>; 2] {
        let f = &self.field;
        let c1 = self.a1.iter().zip(&self.a2).map(|(&x, &y)| f.add(x, y)).collect();
        [self.a1.clone(), c1]
    }

    /// Decreasing-power rendering of `a1` and `a2`.
    pub fn to_decreasing(&self) -> (String, String) {
        let fmt = |v: &[Elem]| v.iter().rev().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
        (fmt(&self.a1), fmt(&self.a2))
    }

    pub fn to_json(&self) -> CodeSpecJson {
        CodeSpecJson {
            q: self.q(),
            n: self.n,
            sign: self.sign,
            a1: self.a1.clone(),
            a2: self.a2.clone(),
        }
    }

    pub fn from_json(j: &CodeSpecJson) -> Result<CodeSpec> {
        let field = field_of_order(j.q as u64)?;
        if j.a1.len() > j.n || j.a2.len() > j.n {
            return Err(Error::Precondition("coefficient arrays longer than n".into()));
        }
        CodeSpec::new(&field, j.n, j.sign, j.a1.clone(), j.a2.clone())
    }

    /// The (nega)circulant matrix `A` over `R`.
    pub fn circulant_matrix(&self) -> RMatrix {
        let [c0, c1] = self.components();
        let m0 = circulant(&c0, self.sign, &self.field);
        let m1 = circulant(&c1, self.sign, &self.field);
        RMatrix::from_components(&m0, &m1, &self.field)
    }

    /// `A A^T = -I` over both CRT components.
    pub fn is_self_dual(&self) -> bool {
        self.components().iter().all(|c| component_is_self_dual(c, self.sign, &self.field))
    }

    /// `det(I + A A^T)` is a unit of `R`: a nonzero determinant in both components.
    pub fn is_lcd(&self) -> bool {
        self.components().iter().all(|c| component_is_lcd(c, self.sign, &self.field))
    }

    /// Whether `z = (e | f)` of length `2n` lies in the code: `f = e A`.
    pub fn contains(&self, z: &[RElement]) -> Result<bool> {
        if z.len() != 2 * self.n {
            return Err(Error::Precondition(format!("word of length {} for a code of length {}", z.len(), 2 * self.n)));
        }
        let ring = RRing::over(&self.field);
        let a = self.circulant_matrix();
        let (e, f) = z.split_at(self.n);
        Ok(ring_vec_mat(&ring, e, &a) == f)
    }

    /// Codeword `m (I | A)` for a message `m` of length `n`.
    pub fn encode(&self, m: &[RElement]) -> Vec<RElement> {
        let ring = RRing::over(&self.field);
        let mut out = m.to_vec();
        out.extend(ring_vec_mat(&ring, m, &self.circulant_matrix()));
        out
    }

    /// Generator matrix `(I | A)` over `R`.
    pub fn generator(&self) -> RMatrix {
        let a = self.circulant_matrix();
        let n = self.n;
        let mut g = RMatrix::zero(n, 2 * n);
        for i in 0..n {
            g.set(i, i, RElement::ONE);
            for j in 0..n {
                g.set(i, n + j, a.get(i, j));
            }
        }
        g
    }

    /// Residues of `a(x)` modulo every irreducible factor of `x^n -+ 1`.
    pub fn constituents(&self, shape: &FactorShape) -> Result<ConstituentView> {
        ConstituentView::new(self, shape)
    }
}

/// Reduces a dense coefficient vector modulo `x^n - wrap`.
fn reduce_dense(c: &[Elem], n: usize, wrap: Elem, f: &FieldCtx) -> Vec<Elem> {
    let mut out = vec![0; n];
    for (i, &v) in c.iter().enumerate() {
        let mut v = v;
        for _ in 0..i / n {
            v = f.mul(v, wrap);
        }
        out[i % n] = f.add(out[i % n], v);
    }
    out
}

/// Product in `F_q[x]/(x^n - wrap)`, dense vectors of length `n`.
pub fn cyclic_mul(a: &[Elem], b: &[Elem], sign: Sign, f: &FieldCtx) -> Vec<Elem> {
    let n = a.len();
    let wrap = sign.wrap(f);
    let mut out = vec![0; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let mut t = f.mul(x, y);
            let k = i + j;
            if k >= n {
                t = f.mul(t, wrap);
            }
            out[k % n] = f.add(out[k % n], t);
        }
    }
    out
}

/// Polynomial of the transpose matrix: `a(x^{-1})` modulo `x^n -+ 1`.
pub fn transpose_poly(a: &[Elem], sign: Sign, f: &FieldCtx) -> Vec<Elem> {
    let n = a.len();
    let wrap = sign.wrap(f);
    (0..n)
        .map(|k| if k == 0 { a[0] } else { f.mul(a[n - k], wrap) })
        .collect()
}

pub(crate) fn component_is_self_dual(c: &[Elem], sign: Sign, f: &FieldCtx) -> bool {
    let prod = cyclic_mul(c, &transpose_poly(c, sign, f), sign, f);
    prod[0] == f.neg(1) && prod[1..].iter().all(|&v| v == 0)
}

pub(crate) fn component_is_lcd(c: &[Elem], sign: Sign, f: &FieldCtx) -> bool {
    let mut gram = cyclic_mul(c, &transpose_poly(c, sign, f), sign, f);
    gram[0] = f.add(gram[0], 1);
    determinant(circulant(&gram, sign, f), f) != 0
}

/// Row `i` holds the coefficients of `x^i c(x)` modulo `x^n -+ 1`.
pub fn circulant(c: &[Elem], sign: Sign, f: &FieldCtx) -> FMatrix {
    let n = c.len();
    let wrap = sign.wrap(f);
    let mut rows = Vec::with_capacity(n);
    let mut row = c.to_vec();
    for _ in 0..n {
        rows.push(row.clone());
        let last = row[n - 1];
        row.rotate_right(1);
        row[0] = f.mul(last, wrap);
    }
    rows
}

/// Matrix over `R`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RElement>,
}

impl RMatrix {
    pub fn zero(rows: usize, cols: usize) -> RMatrix {
        RMatrix {
            rows,
            cols,
            data: vec![RElement::ZERO; rows * cols],
        }
    }

    /// Assembles `M` from its CRT components: `M = M0 + u (M1 - M0)`.
    pub fn from_components(m0: &FMatrix, m1: &FMatrix, f: &FieldCtx) -> RMatrix {
        let rows = m0.len();
        let cols = m0.first().map_or(0, Vec::len);
        let mut out = RMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, RElement::new(m0[i][j], f.sub(m1[i][j], m0[i][j])));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> RElement {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Component `k = 0` (mod `u`) or `k = 1` (mod `u - 1`).
    pub fn component(&self, k: usize, f: &FieldCtx) -> FMatrix {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|z| if k == 0 { z.a } else { f.add(z.a, z.b) })
                    .collect()
            })
            .collect()
    }

    /// The u-basis parts `(A1, A2)` with `A = A1 + u A2`.
    pub fn parts(&self) -> (FMatrix, FMatrix) {
        let part = |pick: fn(&RElement) -> Elem| -> FMatrix {
            (0..self.rows).map(|i| self.row(i).iter().map(pick).collect()).collect()
        };
        (part(|z| z.a), part(|z| z.b))
    }
}

fn ring_vec_mat(ring: &RRing, v: &[RElement], m: &RMatrix) -> Vec<RElement> {
    (0..m.cols())
        .map(|j| {
            v.iter()
                .enumerate()
                .fold(RElement::ZERO, |acc, (i, &x)| ring.add(acc, ring.mul(x, m.get(i, j))))
        })
        .collect()
}

/// Where a constituent sits in the factor shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstituentKind {
    SelfReciprocal,
    PairFirst,
    PairSecond,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constituent {
    pub factor: Poly,
    pub kind: ConstituentKind,
    /// Index of the partner factor for a reciprocal pair, else itself.
    pub partner: usize,
    /// `a(x) mod factor`, an element of `R_deg`.
    pub value: RPoly,
}

/// CRT decomposition of a spec along the irreducible factors of its modulus.
#[derive(Debug, Clone)]
pub struct ConstituentView {
    field: FieldCtx,
    pub entries: Vec<Constituent>,
}

impl ConstituentView {
    fn new(spec: &CodeSpec, shape: &FactorShape) -> Result<ConstituentView> {
        if shape.sign != spec.sign || shape.n != spec.n || shape.q != spec.q() {
            return Err(Error::Precondition("factor shape does not match the spec".into()));
        }
        let f = &spec.field;
        let a = spec.rpoly();
        let mut entries = Vec::new();
        for s in &shape.self_reciprocal {
            let idx = entries.len();
            entries.push(Constituent {
                factor: s.factor.clone(),
                kind: ConstituentKind::SelfReciprocal,
                partner: idx,
                value: a.rem(&s.factor, f),
            });
        }
        for p in &shape.pairs {
            let idx = entries.len();
            entries.push(Constituent {
                factor: p.h.clone(),
                kind: ConstituentKind::PairFirst,
                partner: idx + 1,
                value: a.rem(&p.h, f),
            });
            entries.push(Constituent {
                factor: p.h_star.clone(),
                kind: ConstituentKind::PairSecond,
                partner: idx,
                value: a.rem(&p.h_star, f),
            });
        }
        Ok(ConstituentView {
            field: f.clone(),
            entries,
        })
    }

    /// Projects an `R`-vector of length `n`, read as a polynomial, onto each factor.
    pub fn project(&self, v: &[RElement]) -> Vec<RPoly> {
        let f = &self.field;
        let p = RPoly::new(
            Poly::from_coeffs(v.iter().map(|z| z.a).collect()),
            Poly::from_coeffs(v.iter().map(|z| z.b).collect()),
        );
        self.entries.iter().map(|c| p.rem(&c.factor, f)).collect()
    }

    /// Membership decided constituent by constituent: `f_i = e_i a_i` in every factor ring.
    pub fn contains(&self, z: &[RElement]) -> bool {
        let n = z.len() / 2;
        let f = &self.field;
        let (e, w) = z.split_at(n);
        let (pe, pw) = (self.project(e), self.project(w));
        self.entries
            .iter()
            .zip(pe.iter().zip(&pw))
            .all(|(c, (ei, wi))| ei.mul(&c.value, f).rem(&c.factor, f) == *wi)
    }

    /// Constituent-level self-duality: `1 + a_i * tau(a_partner) = 0` in every
    /// factor ring, where `tau` substitutes `x -> x^{-1}`.
    pub fn is_self_dual(&self) -> bool {
        let f = &self.field;
        self.entries.iter().all(|c| {
            let partner = &self.entries[c.partner];
            let twisted = involution(&partner.value, &c.factor, f);
            let v = c.value.mul(&twisted, f).add(&RPoly::constant(RElement::ONE), f).rem(&c.factor, f);
            v.is_zero()
        })
    }
}

/// `r(x^{-1}) mod target`, for `target` a factor of `x^n -+ 1`.
pub fn reflect(r: &Poly, target: &Poly, f: &FieldCtx) -> Poly {
    let xinv = Poly::x().inv_mod(target, f).expect("x is a unit modulo a factor of x^n -+ 1");
    r.compose_mod(&xinv, target, f)
}

/// [`reflect`] applied to both u-parts.
pub fn involution(r: &RPoly, target: &Poly, f: &FieldCtx) -> RPoly {
    RPoly::new(reflect(&r.a, target, f), reflect(&r.b, target, f))
}

/// Inverse CRT: the unique polynomial of degree `< deg(prod factors)` with the
/// given residues.
pub fn crt_reconstruct(factors: &[&Poly], residues: &[Poly], f: &FieldCtx) -> Poly {
    let modulus = factors.iter().fold(Poly::one(), |acc, g| acc.mul(g, f));
    let mut out = Poly::zero();
    for (g, r) in factors.iter().zip(residues) {
        let cofactor = modulus.divrem(g, f).0;
        let inv = cofactor.inv_mod(g, f).expect("factors are pairwise coprime");
        let idempotent = cofactor.mul(&inv, f);
        out = out.add(&r.mul(&idempotent, f), f).rem(&modulus, f);
    }
    out
}
