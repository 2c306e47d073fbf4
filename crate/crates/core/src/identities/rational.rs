use crate::error::{Error, Result};
use crate::gf2::FieldElem;
use crate::poly::UPoly;

/// `num / den` with no normalization. Equality is decided by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFn {
    pub num: UPoly,
    pub den: UPoly,
}

impl RationalFn {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.ctx() != den.ctx() {
            return Err(Error::ContextMismatch {
                left: num.ctx().id(),
                right: den.ctx().id(),
            });
        }
        Ok(RationalFn { num, den })
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    pub fn eval(&self, x: FieldElem) -> Result<FieldElem> {
        let ctx = self.num.ctx();
        ctx.div(self.num.eval(x), self.den.eval(x))
    }

    /// `self(p / s)`, using the homogenized forms of numerator and
    /// denominator.
    pub fn compose(&self, p: &UPoly, s: &UPoly) -> Result<Self> {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let top = dn.max(dd);
        let mut s_pows = vec![UPoly::one(p.ctx())];
        for i in 0..top {
            let next = s_pows[i].mul(s);
            s_pows.push(next);
        }
        let num = homogenize(&self.num, dn, p, &s_pows).mul(&s_pows[dd]);
        let den = homogenize(&self.den, dd, p, &s_pows).mul(&s_pows[dn]);
        Self::new(num, den)
    }
}

/// `sum f_i p^i s^(deg - i)` by Horner's rule.
fn homogenize(f: &UPoly, deg: usize, p: &UPoly, s_pows: &[UPoly]) -> UPoly {
    let ctx = f.ctx();
    let mut acc = UPoly::zero(ctx);
    for i in (0..=deg).rev() {
        let c = UPoly::constant(ctx, f.coeff(i));
        acc = acc.mul(p).add(&c.mul(&s_pows[deg - i]));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::FieldContext;

    #[test]
    fn compose_agrees_pointwise() {
        let ctx = FieldContext::of_degree(5).unwrap();
        let g = ctx.generator();
        let f = RationalFn::new(
            UPoly::new(&ctx, vec![g, ctx.one(), ctx.zero(), g]),
            UPoly::new(&ctx, vec![ctx.one(), g]),
        )
        .unwrap();
        let p = UPoly::new(&ctx, vec![ctx.one(), g]);
        let s = UPoly::from_exponents(&ctx, &[2]);
        let h = f.compose(&p, &s).unwrap();
        for x in ctx.nonzero_elements() {
            let inner = ctx.div(p.eval(x), s.eval(x)).unwrap();
            if let (Ok(lhs), Ok(rhs)) = (h.eval(x), f.eval(inner)) {
                assert_eq!(lhs, rhs);
            }
        }
        let scaled = RationalFn::new(f.num.scale(g), f.den.scale(g)).unwrap();
        assert!(scaled.same_as(&f));
        assert!(RationalFn::new(f.num.clone(), UPoly::zero(&ctx)).is_err());
    }
}
