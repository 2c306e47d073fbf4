use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{FieldContext, FieldElem};
use crate::error::{Error, Result};
use crate::poly::{roots_in_field, UPoly};

/// The canonical injective homomorphism `GF(2^d) -> GF(2^e)`, `d | e`,
/// sending `t` to the smallest-encoding root of the source modulus.
pub struct Embedding {
    sub: FieldContext,
    sup: FieldContext,
    /// image of `t^i`
    images: Vec<u64>,
    /// echelonized images for preimage lookup: (pivot bit, vector, source bits)
    echelon: Vec<(u32, u64, u64)>,
}

fn cache() -> &'static Mutex<HashMap<(u64, u64), Arc<Embedding>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), Arc<Embedding>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Embedding {
    pub fn new(sub: &FieldContext, sup: &FieldContext) -> Result<Self> {
        let (d, e) = (sub.degree(), sup.degree());
        if e % d != 0 {
            return Err(Error::NotASubfield { sub: d, sup: e });
        }
        let modulus = sub.modulus();
        let coeffs: Vec<FieldElem> = (0..=d)
            .map(|i| sup.wrap(((modulus >> i) & 1) as u64))
            .collect();
        let f = UPoly::new(sup, coeffs);
        let roots = roots_in_field(&f, 0)?;
        let beta = *roots.first().ok_or_else(|| {
            Error::Internal(format!("modulus of GF(2^{d}) has no root in GF(2^{e})"))
        })?;
        let mut images = Vec::with_capacity(d as usize);
        let mut p = 1u64;
        for _ in 0..d {
            images.push(p);
            p = sup.mul_bits(p, beta.bits());
        }
        let mut echelon: Vec<(u32, u64, u64)> = Vec::new();
        for (i, &img) in images.iter().enumerate() {
            let (mut v, mut src) = (img, 1u64 << i);
            for &(pivot, pv, ps) in &echelon {
                if (v >> pivot) & 1 == 1 {
                    v ^= pv;
                    src ^= ps;
                }
            }
            if v == 0 {
                return Err(Error::Internal("embedding images are dependent".into()));
            }
            let pivot = 63 - v.leading_zeros();
            for entry in echelon.iter_mut() {
                if (entry.1 >> pivot) & 1 == 1 {
                    entry.1 ^= v;
                    entry.2 ^= src;
                }
            }
            echelon.push((pivot, v, src));
        }
        Ok(Embedding {
            sub: sub.clone(),
            sup: sup.clone(),
            images,
            echelon,
        })
    }

    /// Shared cached embedding for a `(sub, sup)` pair.
    pub fn cached(sub: &FieldContext, sup: &FieldContext) -> Result<Arc<Self>> {
        let key = (sub.id(), sup.id());
        if let Some(e) = cache().lock().expect("embedding cache poisoned").get(&key) {
            return Ok(e.clone());
        }
        let emb = Arc::new(Self::new(sub, sup)?);
        cache()
            .lock()
            .expect("embedding cache poisoned")
            .insert(key, emb.clone());
        Ok(emb)
    }

    pub fn source(&self) -> &FieldContext {
        &self.sub
    }

    pub fn target(&self) -> &FieldContext {
        &self.sup
    }

    pub(crate) fn apply_bits(&self, bits: u64) -> u64 {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, _)| (bits >> i) & 1 == 1)
            .fold(0, |acc, (_, &img)| acc ^ img)
    }

    pub fn apply(&self, x: FieldElem) -> Result<FieldElem> {
        self.sub.check(x)?;
        Ok(self.sup.wrap(self.apply_bits(x.bits())))
    }

    /// Inverse image of `y` if it lies in the embedded subfield.
    pub fn preimage(&self, y: FieldElem) -> Result<Option<FieldElem>> {
        self.sup.check(y)?;
        let (mut v, mut src) = (y.bits(), 0u64);
        for &(pivot, pv, ps) in &self.echelon {
            if (v >> pivot) & 1 == 1 {
                v ^= pv;
                src ^= ps;
            }
        }
        Ok((v == 0).then(|| self.sub.wrap(src)))
    }
}

/// Embed `x` from `sub` into `sup` through the cached canonical embedding.
pub fn embed(sub: &FieldContext, sup: &FieldContext, x: FieldElem) -> Result<FieldElem> {
    Embedding::cached(sub, sup)?.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unital_and_homomorphic() {
        let f4 = FieldContext::of_degree(2).unwrap();
        let f16 = FieldContext::of_degree(4).unwrap();
        let f2 = FieldContext::of_degree(1).unwrap();
        assert_eq!(embed(&f2, &f16, f2.one()).unwrap(), f16.one());
        let img = embed(&f4, &f16, f4.t()).unwrap();
        assert!(f16.add(f16.add(f16.square(img), img), f16.one()).is_zero());
        let emb = Embedding::new(&f4, &f16).unwrap();
        for x in f4.elements() {
            for y in f4.elements() {
                let lhs = emb.apply(f4.mul(x, y)).unwrap();
                let rhs = f16.mul(emb.apply(x).unwrap(), emb.apply(y).unwrap());
                assert_eq!(lhs, rhs);
            }
            assert_eq!(emb.preimage(emb.apply(x).unwrap()).unwrap(), Some(x));
        }
        // elements outside the image of GF(4)
        let outside = f16.elements().filter(|&z| emb.preimage(z).unwrap().is_none()).count();
        assert_eq!(outside, 12);
    }

    #[test]
    fn smallest_root_is_chosen() {
        let f4 = FieldContext::of_degree(2).unwrap();
        let f16 = FieldContext::of_degree(4).unwrap();
        let img = embed(&f4, &f16, f4.t()).unwrap();
        let roots: Vec<_> = f16
            .elements()
            .filter(|&z| f16.add(f16.add(f16.square(z), z), f16.one()).is_zero())
            .collect();
        assert_eq!(img, roots[0]);
    }

    #[test]
    fn non_dividing_degree() {
        let f8 = FieldContext::of_degree(3).unwrap();
        let f16 = FieldContext::of_degree(4).unwrap();
        assert_eq!(
            Embedding::new(&f8, &f16).err(),
            Some(Error::NotASubfield { sub: 3, sup: 4 })
        );
    }
}
