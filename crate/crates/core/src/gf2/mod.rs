//! Binary finite fields GF(2^m) and the distinguished subsets used
//! throughout: roots of unity of order `q + 1` and the trace-one part of GF(q).

pub(crate) mod clmul;
mod embed;
mod field;
pub(crate) mod gf2x;
pub mod numth;

pub use embed::{embed, Embedding};
pub use field::FieldContext;
pub use field::FieldElem;

use crate::error::{Error, Result};

/// Solutions `{z, z + 1}` of `z^2 + z = c`, or `None` when `Tr(c) = 1`.
///
/// Odd degree uses the half-trace; even degree solves the GF(2)-linear
/// system for `z -> z^2 + z`.
pub fn solve_artin_schreier(ctx: &FieldContext, c: FieldElem) -> Result<Option<(FieldElem, FieldElem)>> {
    ctx.check(c)?;
    if ctx.trace_abs(c) == 1 {
        return Ok(None);
    }
    let m = ctx.degree();
    let z = if m % 2 == 1 {
        // sum_{i=0}^{(m-1)/2} c^(4^i)
        let mut acc = c;
        let mut x = c;
        for _ in 0..(m - 1) / 2 {
            x = ctx.square(ctx.square(x));
            acc = ctx.add(acc, x);
        }
        acc
    } else {
        ctx.wrap(solve_linearized(ctx, c.bits())?)
    };
    let z1 = ctx.add(z, ctx.one());
    let (lo, hi) = if z <= z1 { (z, z1) } else { (z1, z) };
    Ok(Some((lo, hi)))
}

/// Gaussian elimination for `z^2 + z = c` over the polynomial basis.
fn solve_linearized(ctx: &FieldContext, c: u64) -> Result<u64> {
    let m = ctx.degree();
    // column i = L(t^i); rows are combined together with a record of which
    // source columns were used
    let mut rows: Vec<(u32, u64, u64)> = Vec::new();
    for i in 0..m {
        let basis = 1u64 << i;
        let mut v = ctx.mul_bits(basis, basis) ^ basis;
        let mut src = basis;
        for &(pivot, pv, ps) in &rows {
            if (v >> pivot) & 1 == 1 {
                v ^= pv;
                src ^= ps;
            }
        }
        if v != 0 {
            let pivot = 63 - v.leading_zeros();
            for r in rows.iter_mut() {
                if (r.1 >> pivot) & 1 == 1 {
                    r.1 ^= v;
                    r.2 ^= src;
                }
            }
            rows.push((pivot, v, src));
        }
    }
    let (mut v, mut z) = (c, 0u64);
    for &(pivot, pv, ps) in &rows {
        if (v >> pivot) & 1 == 1 {
            v ^= pv;
            z ^= ps;
        }
    }
    if v != 0 {
        return Err(Error::Internal(format!("trace-zero element {c:#x} has no Artin-Schreier root")));
    }
    Ok(z)
}

/// `<x> = x + 1/x`.
pub fn ang(ctx: &FieldContext, x: FieldElem) -> Result<FieldElem> {
    let xi = ctx.inv(x)?;
    Ok(ctx.add(x, xi))
}

/// All `q + 1` elements of `mu_{q+1}`, `q = 2^n`, inside `ambient`, sorted by
/// encoding. Requires `2n | deg(ambient)`.
pub fn mu_subgroup(n: u32, ambient: &FieldContext) -> Result<Vec<FieldElem>> {
    if n == 0 || !ambient.degree().is_multiple_of(2 * n) {
        return Err(Error::NotASubfield {
            sub: 2 * n,
            sup: ambient.degree(),
        });
    }
    let q = 1u64 << n;
    let fq2 = FieldContext::of_degree(2 * n)?;
    let h = fq2.pow(fq2.generator(), (q - 1) as u128);
    let emb = Embedding::cached(&fq2, ambient)?;
    let mut out = Vec::with_capacity(q as usize + 1);
    let mut x = fq2.one();
    for _ in 0..=q {
        out.push(emb.apply(x)?);
        x = fq2.mul(x, h);
    }
    out.sort();
    Ok(out)
}

/// `F_{q,1}`: the `q/2` elements of `ctx = GF(2^n)` with absolute trace one.
pub fn fq_one_set(n: u32, ctx: &FieldContext) -> Result<Vec<FieldElem>> {
    if ctx.degree() != n {
        return Err(Error::InvalidArgument(format!(
            "expected GF(2^{n}), got GF(2^{})",
            ctx.degree()
        )));
    }
    Ok(ctx.elements().filter(|&x| ctx.trace_abs(x) == 1).collect())
}

/// `F_{q,0}`: elements of `ctx` with absolute trace zero.
pub fn fq_zero_set(ctx: &FieldContext) -> Vec<FieldElem> {
    ctx.elements().filter(|&x| ctx.trace_abs(x) == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn artin_schreier_examples() {
        let f4 = FieldContext::of_degree(2).unwrap();
        let (z0, z1) = solve_artin_schreier(&f4, f4.zero()).unwrap().unwrap();
        assert_eq!((z0, z1), (f4.zero(), f4.one()));
        assert_eq!(solve_artin_schreier(&f4, f4.t()).unwrap(), None);
    }

    #[test]
    fn artin_schreier_exhaustive() {
        for m in 1..=8 {
            let f = FieldContext::of_degree(m).unwrap();
            for c in f.elements() {
                match solve_artin_schreier(&f, c).unwrap() {
                    Some((z, w)) => {
                        assert_eq!(f.trace_abs(c), 0);
                        assert_eq!(w, f.add(z, f.one()).max(z));
                        for s in [z, w] {
                            assert_eq!(f.add(f.square(s), s), c);
                        }
                    }
                    None => assert_eq!(f.trace_abs(c), 1),
                }
            }
        }
        // large even and odd degrees
        for m in [40, 41, 64] {
            let f = FieldContext::of_degree(m).unwrap();
            let c = f.add(f.square(f.t()), f.t());
            let (z, _) = solve_artin_schreier(&f, c).unwrap().unwrap();
            assert_eq!(f.add(f.square(z), z), c);
        }
    }

    #[test]
    fn ang_examples() {
        let f4 = FieldContext::of_degree(2).unwrap();
        assert_eq!(ang(&f4, f4.one()).unwrap(), f4.zero());
        assert_eq!(ang(&f4, f4.t()).unwrap(), f4.one());
        assert!(ang(&f4, f4.zero()).is_err());
        let f32 = FieldContext::of_degree(5).unwrap();
        for x in f32.nonzero_elements() {
            let xi = f32.inv(x).unwrap();
            assert_eq!(ang(&f32, x).unwrap(), ang(&f32, xi).unwrap());
        }
    }

    #[test]
    fn mu_subgroup_properties() {
        let f16 = FieldContext::of_degree(4).unwrap();
        let mu = mu_subgroup(2, &f16).unwrap();
        assert_eq!(mu.len(), 5);
        let fifth: Vec<_> = f16.nonzero_elements().filter(|&z| f16.pow(z, 5).is_one()).collect();
        assert_eq!(mu, fifth);
        for n in 2..=4 {
            let amb = FieldContext::of_degree(4 * n).unwrap();
            let q = 1u128 << n;
            let mu = mu_subgroup(n, &amb).unwrap();
            let set: BTreeSet<_> = mu.iter().copied().collect();
            assert_eq!(set.len() as u128, q + 1);
            let fq = FieldContext::of_degree(n).unwrap();
            let emb = Embedding::cached(&fq, &amb).unwrap();
            for &z in &mu {
                assert!(amb.pow(z, q + 1).is_one());
                assert_eq!(amb.pow(z, q), amb.inv(z).unwrap());
                assert!(set.contains(&amb.inv(z).unwrap()));
                for &w in &mu {
                    assert!(set.contains(&amb.mul(z, w)));
                }
                if !z.is_one() {
                    assert!(emb.preimage(ang(&amb, z).unwrap()).unwrap().is_some());
                }
            }
        }
        assert!(mu_subgroup(3, &f16).is_err());
    }

    #[test]
    fn fq_one_set_matches_reciprocal_angles() {
        let f4 = FieldContext::of_degree(2).unwrap();
        let ones = fq_one_set(2, &f4).unwrap();
        assert_eq!(ones, vec![f4.t(), f4.add(f4.t(), f4.one())]);
        for n in 2..=8u32 {
            let fq = FieldContext::of_degree(n).unwrap();
            assert_eq!(fq_one_set(n, &fq).unwrap().len(), 1 << (n - 1));
        }
        for n in 2..=5u32 {
            let fq = FieldContext::of_degree(n).unwrap();
            let fq2 = FieldContext::of_degree(2 * n).unwrap();
            let emb = Embedding::cached(&fq, &fq2).unwrap();
            let image: BTreeSet<_> = mu_subgroup(n, &fq2)
                .unwrap()
                .into_iter()
                .filter(|z| !z.is_one())
                .map(|z| {
                    let v = fq2.inv(ang(&fq2, z).unwrap()).unwrap();
                    emb.preimage(v).unwrap().unwrap()
                })
                .collect();
            let ones: BTreeSet<_> = fq_one_set(n, &fq).unwrap().into_iter().collect();
            assert_eq!(image, ones);
        }
    }
}
