use std::collections::HashMap;

use super::{make_field, Elem, FieldCtx, Poly};
use crate::error::{Error, Result};

/// Embedding of a subfield `F_q` into an extension `F_{q^n}` sharing the same prime.
///
/// The generator of the subfield's polynomial basis is sent to the smallest
/// (by encoding) root of the subfield modulus in the extension.
#[derive(Debug, Clone)]
pub struct Embedding {
    image: Vec<Elem>,
    preimage: HashMap<Elem, Elem>,
    degree: u32,
}

impl Embedding {
    pub fn new(base: &FieldCtx, ext: &FieldCtx) -> Result<Embedding> {
        if base.p() != ext.p() || ext.m() % base.m() != 0 {
            return Err(Error::NotSubfield {
                base: base.q(),
                ext: ext.q(),
            });
        }
        let generator = if base.m() == 1 {
            0
        } else {
            let modulus = Poly::from_coeffs(base.modulus().to_vec());
            ext.elements()
                .find(|&r| modulus.eval(r, ext) == 0)
                .ok_or(Error::Inconsistent("subfield modulus has no root".into()))?
        };
        let image: Vec<Elem> = base
            .elements()
            .map(|e| {
                base.coeffs(e)
                    .iter()
                    .rev()
                    .fold(0, |acc, &c| ext.add(ext.mul(acc, generator), c))
            })
            .collect();
        let preimage = image.iter().enumerate().map(|(i, &v)| (v, i as Elem)).collect();
        Ok(Embedding {
            image,
            preimage,
            degree: ext.m() / base.m(),
        })
    }

    /// Extension degree `[F_{q^n} : F_q]`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn push(&self, e: Elem) -> Elem {
        self.image[e as usize]
    }

    /// Preimage of an extension element, if it lies in the subfield.
    pub fn pull(&self, e: Elem) -> Option<Elem> {
        self.preimage.get(&e).copied()
    }
}

fn norm_exponent(q: u64, n: u32) -> u64 {
    (q.pow(n) - 1) / (q - 1)
}

/// `Norm(x) = x^{(q^n - 1)/(q - 1)}` from `ext = F_{q^n}` down to `base = F_q`.
pub fn norm(x: Elem, ext: &FieldCtx, base: &FieldCtx) -> Result<Elem> {
    let emb = Embedding::new(base, ext)?;
    norm_with(x, ext, base, &emb)
}

/// [`norm`] with a prebuilt embedding.
pub fn norm_with(x: Elem, ext: &FieldCtx, base: &FieldCtx, emb: &Embedding) -> Result<Elem> {
    let y = ext.pow(x, norm_exponent(base.q() as u64, emb.degree()));
    emb.pull(y)
        .ok_or(Error::Inconsistent("norm left the base field".into()))
}

/// All `x` in `F_{q^n}` with `Norm(x) = c`, by scanning the extension.
/// Returns the extension context together with the fiber.
pub fn norm_fiber(c: Elem, base: &FieldCtx, ext_degree: u32) -> Result<(FieldCtx, Vec<Elem>)> {
    if c >= base.q() {
        return Err(Error::Domain(format!("{c} is not an element of F_{}", base.q())));
    }
    if ext_degree < 1 {
        return Err(Error::InvalidDegree(ext_degree));
    }
    let ext = make_field(base.p() as u64, base.m() * ext_degree)?;
    let emb = Embedding::new(base, &ext)?;
    let target = emb.push(c);
    let e = norm_exponent(base.q() as u64, ext_degree);
    let fiber = ext.elements().filter(|&x| ext.pow(x, e) == target).collect();
    Ok((ext, fiber))
}
