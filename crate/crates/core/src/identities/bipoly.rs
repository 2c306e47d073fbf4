use std::fmt;

use crate::gf2::{Embedding, FieldContext, FieldElem};
use crate::poly::UPoly;

/// Polynomial in `X` whose coefficients are polynomials in `Y`, all over one
/// field. Entry `i` is the coefficient of `X^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    ctx: FieldContext,
    coeffs: Vec<UPoly>,
}

impl BiPoly {
    pub fn new(ctx: &FieldContext, mut coeffs: Vec<UPoly>) -> Self {
        for c in &coeffs {
            assert_eq!(c.ctx(), ctx, "BiPoly coefficient from another field");
        }
        while coeffs.last().is_some_and(UPoly::is_zero) {
            coeffs.pop();
        }
        BiPoly { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &FieldContext) -> Self {
        Self::new(ctx, Vec::new())
    }

    /// `c(Y) X^i`.
    pub fn term(ctx: &FieldContext, i: usize, c: UPoly) -> Self {
        let mut v = vec![UPoly::zero(ctx); i];
        v.push(c);
        Self::new(ctx, v)
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(UPoly::degree).max()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `X^i`.
    pub fn coeff(&self, i: usize) -> UPoly {
        self.coeffs.get(i).cloned().unwrap_or_else(|| UPoly::zero(&self.ctx))
    }

    pub fn coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "BiPoly operands from different fields");
        let len = self.coeffs.len().max(other.coeffs.len());
        let v = (0..len).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Self::new(&self.ctx, v)
    }

    /// Schoolbook product, accumulating into raw coefficient buffers.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "BiPoly operands from different fields");
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx);
        }
        let ctx = &self.ctx;
        let ylen = self.y_degree().unwrap_or(0) + other.y_degree().unwrap_or(0) + 1;
        let mut acc = vec![vec![0u64; ylen]; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let out = &mut acc[i + j];
                for (s, &ac) in a.raw().iter().enumerate() {
                    if ac == 0 {
                        continue;
                    }
                    for (t, &bc) in b.raw().iter().enumerate() {
                        out[s + t] ^= ctx.mul_bits(ac, bc);
                    }
                }
            }
        }
        let v = acc.into_iter().map(|c| UPoly::from_raw_unchecked(ctx, c)).collect();
        Self::new(ctx, v)
    }

    /// Map every coefficient through `emb`.
    pub fn embed(&self, emb: &Embedding) -> crate::Result<Self> {
        let v = self.coeffs.iter().map(|c| c.embed(emb)).collect::<crate::Result<Vec<_>>>()?;
        Ok(Self::new(emb.target(), v))
    }

    pub fn eval(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.ctx.zero(), |acc, c| self.ctx.add(self.ctx.mul(acc, x), c.eval(y)))
    }
}

/// Balanced product tree.
pub fn product_tree(ctx: &FieldContext, mut layer: Vec<BiPoly>) -> BiPoly {
    if layer.is_empty() {
        return BiPoly::term(ctx, 0, UPoly::one(ctx));
    }
    while layer.len() > 1 {
        layer = layer
            .chunks(2)
            .map(|pair| match pair {
                [a, b] => a.mul(b),
                [a] => a.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    layer.pop().expect("nonempty")
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) X^{i}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_matches_evaluation() {
        let ctx = FieldContext::of_degree(4).unwrap();
        let a = BiPoly::new(&ctx, vec![UPoly::x(&ctx), UPoly::one(&ctx), UPoly::from_exponents(&ctx, &[0, 2])]);
        let b = BiPoly::new(&ctx, vec![UPoly::one(&ctx), UPoly::zero(&ctx), UPoly::x(&ctx)]);
        let p = a.mul(&b);
        assert_eq!(p.x_degree(), Some(4));
        for x in ctx.elements() {
            for y in ctx.elements() {
                assert_eq!(p.eval(x, y), ctx.mul(a.eval(x, y), b.eval(x, y)));
            }
        }
        assert_eq!(a.add(&a), BiPoly::zero(&ctx));
    }
}
