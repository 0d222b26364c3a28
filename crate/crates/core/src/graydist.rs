//! Gray maps from `R` to `F_q^2`, Gray images of double (nega)circulant
//! codes, and exact minimum distance of linear codes over `F_q`.
//!
//! A word `(e | f)` of length `2n` over `R` maps to the length-`4n` word
//! `(g1(e), g2(e), g1(f), g2(f))`, where `g(z) = (g1(z), g2(z))` is applied
//! coordinatewise. For `phi` this is the column order in which the image of
//! `(I | A)` takes the block form
//! `[[-I, I, -A1-A2, A1+A2], [0, 2I, -A2, 2A1+A2]]`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codekit::CodeSpec;
use crate::error::{Error, Result};
use crate::galois::{field_of_order, Elem, FieldCtx};
use crate::linalg::{determinant, mat_mul, rank, rref, transpose, FMatrix};
use crate::semiring::{RElement, RRing};

/// Default number of messages an exhaustive distance scan may visit: `10^7.5`.
pub const DEFAULT_DISTANCE_BUDGET: u128 = 31_622_777;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrayMap {
    Phi,
    Beta,
}

impl FromStr for GrayMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<GrayMap> {
        match s.to_ascii_lowercase().as_str() {
            "phi" => Ok(GrayMap::Phi),
            "beta" => Ok(GrayMap::Beta),
            _ => Err(Error::Domain(format!("unknown Gray map {s:?}"))),
        }
    }
}

impl fmt::Display for GrayMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrayMap::Phi => "phi",
            GrayMap::Beta => "beta",
        })
    }
}

/// `phi(a + ub) = (-b, 2a + b)`; injective only for odd `q`.
pub fn gray_phi(z: RElement, f: &FieldCtx) -> Result<(Elem, Elem)> {
    if f.p() == 2 {
        return Err(Error::Precondition("phi needs odd q".into()));
    }
    Ok((f.neg(z.b), f.add(f.add(z.a, z.a), z.b)))
}

/// `beta(a + ub) = (a, a + b)`.
pub fn gray_beta(z: RElement, f: &FieldCtx) -> (Elem, Elem) {
    (z.a, f.add(z.a, z.b))
}

pub fn gray_pair(map: GrayMap, z: RElement, f: &FieldCtx) -> Result<(Elem, Elem)> {
    match map {
        GrayMap::Phi => gray_phi(z, f),
        GrayMap::Beta => Ok(gray_beta(z, f)),
    }
}

/// Inverse of [`gray_phi`].
pub fn gray_phi_inverse(pair: (Elem, Elem), f: &FieldCtx) -> Result<RElement> {
    if f.p() == 2 {
        return Err(Error::Precondition("phi needs odd q".into()));
    }
    let b = f.neg(pair.0);
    let two_inv = f.inv(f.from_int(2)).unwrap();
    Ok(RElement::new(f.mul(f.sub(pair.1, b), two_inv), b))
}

/// Gray image of a word of even length, laid out half by half.
pub fn gray_word(map: GrayMap, z: &[RElement], f: &FieldCtx) -> Result<Vec<Elem>> {
    if z.len() % 2 != 0 {
        return Err(Error::Precondition("Gray layout expects a word of even length".into()));
    }
    let n = z.len() / 2;
    let mut out = vec![0; 2 * z.len()];
    for (half, chunk) in z.chunks(n.max(1)).enumerate() {
        for (i, &x) in chunk.iter().enumerate() {
            let (g1, g2) = gray_pair(map, x, f)?;
            out[2 * n * half + i] = g1;
            out[2 * n * half + n + i] = g2;
        }
    }
    Ok(out)
}

/// Inverse of [`gray_word`] for `phi`.
pub fn gray_word_phi_inverse(w: &[Elem], f: &FieldCtx) -> Result<Vec<RElement>> {
    if w.len() % 4 != 0 {
        return Err(Error::Precondition("length must be a multiple of 4".into()));
    }
    let n = w.len() / 4;
    let mut out = Vec::with_capacity(2 * n);
    for half in 0..2 {
        for i in 0..n {
            out.push(gray_phi_inverse((w[2 * n * half + i], w[2 * n * half + n + i]), f)?);
        }
    }
    Ok(out)
}

/// A linear code over `F_q` given by a full-rank generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QLinearCode {
    field: FieldCtx,
    length: usize,
    g: FMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QLinearCodeJson {
    pub q: u32,
    #[serde(rename = "N")]
    pub length: usize,
    pub k: usize,
    #[serde(rename = "G")]
    pub g: FMatrix,
}

impl QLinearCode {
    pub fn new(field: &FieldCtx, length: usize, g: FMatrix) -> Result<QLinearCode> {
        if g.iter().any(|r| r.len() != length) {
            return Err(Error::Precondition("generator rows must have length N".into()));
        }
        if g.iter().flatten().any(|&c| c >= field.q()) {
            return Err(Error::Domain("generator entry outside F_q".into()));
        }
        if rank(&g, field) != g.len() {
            return Err(Error::Inconsistent(format!("generator with {} rows is not of full rank", g.len())));
        }
        Ok(QLinearCode {
            field: field.clone(),
            length,
            g,
        })
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.g.len()
    }

    pub fn generator(&self) -> &FMatrix {
        &self.g
    }

    pub fn to_json(&self) -> QLinearCodeJson {
        QLinearCodeJson {
            q: self.field.q(),
            length: self.length,
            k: self.g.len(),
            g: self.g.clone(),
        }
    }

    pub fn from_json(j: &QLinearCodeJson) -> Result<QLinearCode> {
        let code = QLinearCode::new(&field_of_order(j.q as u64)?, j.length, j.g.clone())?;
        if code.dimension() != j.k {
            return Err(Error::Precondition(format!("k = {} but G has {} rows", j.k, code.dimension())));
        }
        Ok(code)
    }

    fn gram(&self) -> FMatrix {
        mat_mul(&self.g, &transpose(&self.g), &self.field)
    }

    /// `k = N/2` and `G G^T = 0`.
    pub fn is_self_dual(&self) -> bool {
        2 * self.dimension() == self.length && self.gram().iter().flatten().all(|&v| v == 0)
    }

    /// Massey: `G G^T` nonsingular.
    pub fn is_lcd(&self) -> bool {
        determinant(self.gram(), &self.field) != 0
    }

    /// Codeword `m G`.
    pub fn encode(&self, m: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = vec![0; self.length];
        for (row, &c) in self.g.iter().zip(m) {
            if c == 0 {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(c, v));
            }
        }
        out
    }
}

pub fn is_self_dual_q(code: &QLinearCode) -> bool {
    code.is_self_dual()
}

pub fn is_lcd_q(code: &QLinearCode) -> bool {
    code.is_lcd()
}

/// Gray image of the code of `spec` under `map`, of length `4n` and dimension `2n`.
pub fn gray_generator_matrix(spec: &CodeSpec, map: GrayMap) -> Result<QLinearCode> {
    let f = spec.field();
    let n = spec.n();
    let rows = match map {
        GrayMap::Phi => phi_block_matrix(spec)?,
        GrayMap::Beta => {
            let ring = RRing::over(f);
            let g = spec.generator();
            let mut rows = Vec::with_capacity(2 * n);
            for i in 0..n {
                let row = g.row(i);
                rows.push(gray_word(map, row, f)?);
                let urow: Vec<RElement> = row.iter().map(|&z| ring.mul(RElement::U, z)).collect();
                rows.push(gray_word(map, &urow, f)?);
            }
            let pivots = rref(&mut rows, f);
            rows.truncate(pivots.len());
            rows
        }
    };
    let code = QLinearCode::new(f, 4 * n, rows)?;
    if code.dimension() != 2 * n {
        return Err(Error::Inconsistent(format!("Gray image has rank {} instead of {}", code.dimension(), 2 * n)));
    }
    Ok(code)
}

/// `[[-I, I, -A1-A2, A1+A2], [0, 2I, -A2, 2A1+A2]]`.
fn phi_block_matrix(spec: &CodeSpec) -> Result<FMatrix> {
    let f = spec.field();
    if f.p() == 2 {
        return Err(Error::Precondition("phi needs odd q".into()));
    }
    let n = spec.n();
    let (a1, a2) = spec.circulant_matrix().parts();
    let two = f.from_int(2);
    let mut rows = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut r = vec![0; 4 * n];
        r[i] = f.neg(1);
        r[n + i] = 1;
        for j in 0..n {
            let s = f.add(a1[i][j], a2[i][j]);
            r[2 * n + j] = f.neg(s);
            r[3 * n + j] = s;
        }
        rows.push(r);
    }
    for i in 0..n {
        let mut r = vec![0; 4 * n];
        r[n + i] = two;
        for j in 0..n {
            r[2 * n + j] = f.neg(a2[i][j]);
            r[3 * n + j] = f.add(f.mul(two, a1[i][j]), a2[i][j]);
        }
        rows.push(r);
    }
    Ok(rows)
}

/// Result of an exhaustive distance computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    /// `[N, k, d]`
    pub params: [usize; 3],
    pub method: String,
    pub messages_scanned: u128,
}

/// Outcome of a scan that may stop once a light codeword is found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceBound {
    Exact(usize),
    /// Some nonzero codeword has at most this weight.
    AtMost(usize),
}

fn check_budget(code: &QLinearCode, budget: u128) -> Result<()> {
    let q = code.field.q() as u128;
    let needed = (0..code.dimension()).try_fold(1u128, |acc, _| acc.checked_mul(q)).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Exact minimum distance by exhaustive message enumeration.
pub fn min_distance(code: &QLinearCode, budget: u128) -> Result<DistanceReport> {
    check_budget(code, budget)?;
    let scan = DistanceScan::new(code);
    let (d, scanned) = scan.run(0);
    Ok(DistanceReport {
        params: [code.length, code.dimension(), d],
        method: "exhaustive".into(),
        messages_scanned: scanned,
    })
}

/// Like [`min_distance`], but stops as soon as a nonzero codeword of weight
/// `<= cutoff` turns up.
pub fn min_distance_above(code: &QLinearCode, cutoff: usize, budget: u128) -> Result<DistanceBound> {
    check_budget(code, budget)?;
    let (d, _) = DistanceScan::new(code).run(cutoff);
    Ok(if d <= cutoff { DistanceBound::AtMost(d) } else { DistanceBound::Exact(d) })
}

/// Systematic generator `[I_k | P]` (after a column permutation) with
/// precomputed addition, ready for Gray-code enumeration.
///
/// Messages are enumerated projectively: the highest nonzero digit `j` is
/// fixed to 1 and the digits below `j` run through the q-ary modular Gray
/// code, in which step `t` adds row `v_q(t)`. The information part of a
/// codeword equals its message, so only the `N - k` parity coordinates are
/// updated.
struct DistanceScan {
    q: usize,
    k: usize,
    parity: Vec<Vec<u8>>,
    add: Vec<u8>,
}

impl DistanceScan {
    fn new(code: &QLinearCode) -> DistanceScan {
        let f = &code.field;
        let mut g = code.g.clone();
        let pivots = rref(&mut g, f);
        let parity = g
            .iter()
            .map(|row| {
                (0..code.length)
                    .filter(|c| !pivots.contains(c))
                    .map(|c| row[c] as u8)
                    .collect()
            })
            .collect();
        let q = f.q() as usize;
        let add = (0..q * q).map(|i| f.add((i / q) as Elem, (i % q) as Elem) as u8).collect();
        DistanceScan {
            q,
            k: code.dimension(),
            parity,
            add,
        }
    }

    /// Minimum weight over nonzero codewords, or the first weight `<= cutoff`
    /// encountered; also returns the number of messages visited.
    fn run(&self, cutoff: usize) -> (usize, u128) {
        let results: Vec<(usize, u128)> = (0..self.k).into_par_iter().map(|j| self.scan_leading(j, cutoff)).collect();
        let d = results.iter().map(|r| r.0).min().unwrap_or(usize::MAX);
        (d, results.iter().map(|r| r.1).sum())
    }

    fn scan_leading(&self, j: usize, cutoff: usize) -> (usize, u128) {
        let q = self.q;
        let mut word = self.parity[j].clone();
        let mut digits = vec![0usize; j];
        let mut msg_weight = 1usize;
        let mut parity_weight = word.iter().filter(|&&c| c != 0).count();
        let mut best = msg_weight + parity_weight;
        let mut scanned: u128 = 1;
        if best <= cutoff {
            return (best, scanned);
        }
        let total = (q as u128).pow(j as u32);
        let mut t: u128 = 1;
        while t < total {
            let mut i = 0;
            let mut rest = t;
            while rest % q as u128 == 0 {
                rest /= q as u128;
                i += 1;
            }
            let before = digits[i];
            digits[i] = (before + 1) % q;
            if before == 0 {
                msg_weight += 1;
            } else if digits[i] == 0 {
                msg_weight -= 1;
            }
            for (w, &r) in word.iter_mut().zip(&self.parity[i]) {
                if r == 0 {
                    continue;
                }
                let old = *w;
                let new = self.add[old as usize * q + r as usize];
                *w = new;
                if old == 0 {
                    parity_weight += 1;
                } else if new == 0 {
                    parity_weight -= 1;
                }
            }
            scanned += 1;
            let wt = msg_weight + parity_weight;
            if wt < best {
                best = wt;
                if best <= cutoff.max(1) {
                    break;
                }
            }
            t += 1;
        }
        (best, scanned)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorshape::Sign;
    use crate::linalg::identity;

    fn f5() -> FieldCtx {
        field_of_order(5).unwrap()
    }

    /// Independent reference: list every codeword.
    fn naive_distance(code: &QLinearCode) -> usize {
        let f = code.field();
        let q = f.q() as usize;
        let k = code.dimension();
        let mut best = usize::MAX;
        for idx in 1..q.pow(k as u32) {
            let mut m = vec![0; k];
            let mut x = idx;
            for d in m.iter_mut() {
                *d = (x % q) as Elem;
                x /= q;
            }
            let w = code.encode(&m).iter().filter(|&&c| c != 0).count();
            best = best.min(w);
        }
        best
    }

    #[test]
    fn element_maps() {
        let f = f5();
        assert_eq!(gray_phi(RElement::ONE, &f).unwrap(), (0, 2));
        assert_eq!(gray_phi(RElement::U, &f).unwrap(), (4, 1));
        assert_eq!(gray_beta(RElement::U, &f), (0, 1));
        assert_eq!(gray_beta(RElement::ONE, &f), (1, 1));
        assert!(gray_phi(RElement::ONE, &field_of_order(4).unwrap()).is_err());
        let ring = RRing::over(&f);
        let mut images: Vec<_> = ring.elements().map(|z| gray_phi(z, &f).unwrap()).collect();
        for z in ring.elements() {
            assert_eq!(gray_phi_inverse(gray_phi(z, &f).unwrap(), &f).unwrap(), z);
        }
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 25);
    }

    #[test]
    fn beta_is_crt_split() {
        for q in [3u64, 4, 5, 7, 8, 9] {
            let f = field_of_order(q).unwrap();
            let ring = RRing::over(&f);
            for z in ring.elements() {
                assert_eq!(gray_beta(z, &f), ring.crt_split(z));
            }
        }
    }

    #[test]
    fn phi_block_form_n1() {
        let spec = CodeSpec::new(&f5(), 1, Sign::Minus, vec![3], vec![1]).unwrap();
        let code = gray_generator_matrix(&spec, GrayMap::Phi).unwrap();
        assert_eq!(code.generator(), &vec![vec![4, 1, 1, 4], vec![0, 2, 4, 2]]);
    }

    #[test]
    fn table_rows_n2() {
        let f = f5();
        let lcd = CodeSpec::from_decreasing(&f, Sign::Minus, "4 0", "4 2").unwrap();
        let code = gray_generator_matrix(&lcd, GrayMap::Phi).unwrap();
        assert!(code.is_lcd());
        assert_eq!(min_distance(&code, DEFAULT_DISTANCE_BUDGET).unwrap().params, [8, 4, 4]);
        let sd = CodeSpec::from_decreasing(&f, Sign::Minus, "2 0", "3 2").unwrap();
        assert!(gray_generator_matrix(&sd, GrayMap::Phi).unwrap().is_self_dual());
    }

    #[test]
    fn zero_spec_has_distance_one() {
        let spec = CodeSpec::new(&f5(), 3, Sign::Minus, vec![], vec![]).unwrap();
        let code = gray_generator_matrix(&spec, GrayMap::Phi).unwrap();
        assert_eq!(min_distance(&code, DEFAULT_DISTANCE_BUDGET).unwrap().params[2], 1);
    }

    #[test]
    fn identity_code_is_lcd_not_self_dual() {
        let f = f5();
        let g: FMatrix = identity(3).into_iter().map(|mut r| {
            r.extend([0, 0]);
            r
        }).collect();
        let code = QLinearCode::new(&f, 5, g).unwrap();
        assert!(code.is_lcd());
        assert!(!code.is_self_dual());
        assert!(QLinearCode::new(&f, 2, vec![vec![1, 2], vec![2, 4]]).is_err());
    }

    #[test]
    fn beta_image_has_full_size() {
        let f = f5();
        let spec = CodeSpec::from_decreasing(&f, Sign::Minus, "1 2 1", "4 0 2").unwrap();
        let code = gray_generator_matrix(&spec, GrayMap::Beta).unwrap();
        assert_eq!(code.dimension(), 6);
        let m = [RElement::new(1, 1), RElement::new(0, 4), RElement::new(2, 0)];
        let word = gray_word(GrayMap::Beta, &spec.encode(&m), &f).unwrap();
        let mut g = code.generator().clone();
        g.push(word);
        assert_eq!(rank(&g, &f), 6);
    }

    #[test]
    fn budget_refusal() {
        let f = f5();
        let spec = CodeSpec::from_decreasing(&f, Sign::Minus, "1 2 1", "4 0 2").unwrap();
        let code = gray_generator_matrix(&spec, GrayMap::Phi).unwrap();
        assert!(matches!(min_distance(&code, 100), Err(Error::BudgetExceeded { needed: 15625, budget: 100 })));
        assert_eq!(min_distance(&code, DEFAULT_DISTANCE_BUDGET).unwrap().params, [12, 6, 6]);
    }

    #[test]
    fn engine_matches_naive_listing() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for q in [3u64, 5, 7] {
            let f = field_of_order(q).unwrap();
            for _ in 0..20 {
                let k = rng.gen_range(1..=4usize);
                let len = rng.gen_range(k..=9);
                let g: FMatrix = (0..k).map(|_| (0..len).map(|_| rng.gen_range(0..q as u32)).collect()).collect();
                let Ok(code) = QLinearCode::new(&f, len, g) else { continue };
                if (q as u128).pow(k as u32) > 5u128.pow(6) {
                    continue;
                }
                let d = min_distance(&code, DEFAULT_DISTANCE_BUDGET).unwrap().params[2];
                assert_eq!(d, naive_distance(&code));
                match min_distance_above(&code, d, DEFAULT_DISTANCE_BUDGET).unwrap() {
                    DistanceBound::AtMost(w) => assert!(w <= d),
                    DistanceBound::Exact(_) => panic!("cutoff at d must trigger"),
                }
                assert_eq!(min_distance_above(&code, d - 1, DEFAULT_DISTANCE_BUDGET).unwrap(), DistanceBound::Exact(d));
            }
        }
    }
}
