use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{Embedding, FieldContext, FieldElem};

/// Dense univariate polynomial over a binary field. `coeffs[i]` is the
/// coefficient of `x^i`; the leading entry is always nonzero and the zero
/// polynomial has no coefficients.
#[derive(Clone)]
pub struct UPoly {
    ctx: FieldContext,
    coeffs: Vec<u64>,
}

impl PartialEq for UPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.coeffs == other.coeffs
    }
}

impl Eq for UPoly {}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly[{}]", self)
    }
}

/// Comma-separated hex coefficients, lowest degree first.
impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0x0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c:#x}")?;
        }
        Ok(())
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl UPoly {
    #[track_caller]
    pub fn new(ctx: &FieldContext, coeffs: Vec<FieldElem>) -> Self {
        let raw = coeffs
            .into_iter()
            .map(|c| {
                if let Err(e) = ctx.check(c) {
                    panic!("{e}");
                }
                c.bits()
            })
            .collect();
        Self::from_raw_unchecked(ctx, raw)
    }

    /// Build from raw coefficient encodings, validating each against the field.
    pub fn from_bits(ctx: &FieldContext, bits: Vec<u64>) -> Result<Self> {
        for &b in &bits {
            ctx.from_bits(b)?;
        }
        Ok(Self::from_raw_unchecked(ctx, bits))
    }

    pub(crate) fn from_raw_unchecked(ctx: &FieldContext, mut coeffs: Vec<u64>) -> Self {
        trim(&mut coeffs);
        UPoly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// Parse the `0x1,0x0,0x1` text format.
    pub fn parse(ctx: &FieldContext, s: &str) -> Result<Self> {
        let bits = s
            .split(',')
            .map(|t| ctx.parse_elem(t).map(FieldElem::bits))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_raw_unchecked(ctx, bits))
    }

    pub fn zero(ctx: &FieldContext) -> Self {
        Self::from_raw_unchecked(ctx, Vec::new())
    }

    pub fn one(ctx: &FieldContext) -> Self {
        Self::from_raw_unchecked(ctx, vec![1])
    }

    pub fn x(ctx: &FieldContext) -> Self {
        Self::from_raw_unchecked(ctx, vec![0, 1])
    }

    #[track_caller]
    pub fn constant(ctx: &FieldContext, c: FieldElem) -> Self {
        Self::new(ctx, vec![c])
    }

    /// `c * x^deg`.
    #[track_caller]
    pub fn monomial(ctx: &FieldContext, c: FieldElem, deg: usize) -> Self {
        let mut v = vec![0u64; deg + 1];
        if let Err(e) = ctx.check(c) {
            panic!("{e}");
        }
        v[deg] = c.bits();
        Self::from_raw_unchecked(ctx, v)
    }

    /// Polynomial with 0/1 coefficients given by the listed exponents.
    pub fn from_exponents(ctx: &FieldContext, exps: &[usize]) -> Self {
        let len = exps.iter().max().map_or(0, |&d| d + 1);
        let mut v = vec![0u64; len];
        for &e in exps {
            v[e] ^= 1;
        }
        Self::from_raw_unchecked(ctx, v)
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.ctx.wrap(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn leading(&self) -> FieldElem {
        self.ctx.wrap(self.coeffs.last().copied().unwrap_or(0))
    }

    pub fn coeffs(&self) -> Vec<FieldElem> {
        self.coeffs.iter().map(|&b| self.ctx.wrap(b)).collect()
    }

    pub(crate) fn raw(&self) -> &[u64] {
        &self.coeffs
    }

    #[track_caller]
    fn same(&self, other: &UPoly) {
        if self.ctx != other.ctx {
            panic!(
                "{}",
                Error::ContextMismatch {
                    left: self.ctx.id(),
                    right: other.ctx.id()
                }
            );
        }
    }

    #[track_caller]
    pub fn add(&self, other: &UPoly) -> UPoly {
        self.same(other);
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut v = long.clone();
        for (a, b) in v.iter_mut().zip(short) {
            *a ^= b;
        }
        Self::from_raw_unchecked(&self.ctx, v)
    }

    #[track_caller]
    pub fn mul(&self, other: &UPoly) -> UPoly {
        self.same(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx);
        }
        let mut v = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] ^= self.ctx.mul_bits(a, b);
            }
        }
        Self::from_raw_unchecked(&self.ctx, v)
    }

    #[track_caller]
    pub fn scale(&self, c: FieldElem) -> UPoly {
        if let Err(e) = self.ctx.check(c) {
            panic!("{e}");
        }
        let v = self
            .coeffs
            .iter()
            .map(|&a| self.ctx.mul_bits(a, c.bits()))
            .collect();
        Self::from_raw_unchecked(&self.ctx, v)
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0u64; k];
        v.extend_from_slice(&self.coeffs);
        Self::from_raw_unchecked(&self.ctx, v)
    }

    /// Square using the Frobenius: `(sum a_i x^i)^2 = sum a_i^2 x^(2i)`.
    pub fn square(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0u64; 2 * self.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            v[2 * i] = self.ctx.mul_bits(a, a);
        }
        Self::from_raw_unchecked(&self.ctx, v)
    }

    pub fn pow(&self, mut e: u64) -> UPoly {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    #[track_caller]
    pub fn divrem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        self.same(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dl = d.coeffs.len();
        if self.coeffs.len() < dl {
            return Ok((Self::zero(&self.ctx), self.clone()));
        }
        let lead_inv = self.ctx.inv_bits(*d.coeffs.last().unwrap())?;
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let top = r[i + dl - 1];
            if top == 0 {
                continue;
            }
            let f = self.ctx.mul_bits(top, lead_inv);
            q[i] = f;
            for (j, &c) in d.coeffs.iter().enumerate() {
                r[i + j] ^= self.ctx.mul_bits(f, c);
            }
        }
        r.truncate(dl - 1);
        Ok((
            Self::from_raw_unchecked(&self.ctx, q),
            Self::from_raw_unchecked(&self.ctx, r),
        ))
    }

    pub fn rem(&self, d: &UPoly) -> Result<UPoly> {
        self.divrem(d).map(|(_, r)| r)
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &UPoly) -> Result<UPoly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn monic(&self) -> UPoly {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&l) => {
                let inv = self.ctx.inv_bits(l).expect("leading coefficient is nonzero");
                self.scale(self.ctx.wrap(inv))
            }
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    #[track_caller]
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        self.same(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Formal derivative; in characteristic 2 the even-degree terms vanish.
    pub fn derivative(&self) -> UPoly {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { 0 })
            .collect();
        Self::from_raw_unchecked(&self.ctx, v)
    }

    #[track_caller]
    pub fn eval(&self, x: FieldElem) -> FieldElem {
        if let Err(e) = self.ctx.check(x) {
            panic!("{e}");
        }
        self.ctx.wrap(self.eval_bits(x.bits()))
    }

    pub(crate) fn eval_bits(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| self.ctx.mul_bits(acc, x) ^ c)
    }

    /// `self(inner(x))`.
    #[track_caller]
    pub fn compose(&self, inner: &UPoly) -> UPoly {
        self.same(inner);
        self.coeffs.iter().rev().fold(Self::zero(&self.ctx), |acc, &c| {
            acc.mul(inner).add(&Self::from_raw_unchecked(&self.ctx, vec![c]))
        })
    }

    /// `x^deg * self(1/x)`.
    pub fn reverse(&self) -> UPoly {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::from_raw_unchecked(&self.ctx, v)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &UPoly) -> Result<UPoly> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(&self.ctx).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.square().rem(m)?;
            }
        }
        Ok(acc)
    }

    /// `self^(2^k) mod m` by repeated squaring.
    pub fn frobenius_mod(&self, k: u64, m: &UPoly) -> Result<UPoly> {
        let mut h = self.rem(m)?;
        for _ in 0..k {
            h = h.square().rem(m)?;
        }
        Ok(h)
    }

    /// Square root of a polynomial whose odd-degree coefficients vanish.
    pub fn sqrt(&self) -> Result<UPoly> {
        if self.coeffs.iter().skip(1).step_by(2).any(|&c| c != 0) {
            return Err(Error::InvalidArgument("polynomial is not a square".into()));
        }
        let v = self
            .coeffs
            .iter()
            .step_by(2)
            .map(|&c| self.ctx.sqrt(self.ctx.wrap(c)).bits())
            .collect();
        Ok(Self::from_raw_unchecked(&self.ctx, v))
    }

    /// Map coefficients through a field embedding.
    pub fn embed(&self, emb: &Embedding) -> Result<UPoly> {
        if emb.source() != &self.ctx {
            return Err(Error::ContextMismatch {
                left: emb.source().id(),
                right: self.ctx.id(),
            });
        }
        let v = self.coeffs.iter().map(|&c| emb.apply_bits(c)).collect();
        Ok(Self::from_raw_unchecked(emb.target(), v))
    }

    /// Reinterpret a polynomial with 0/1 coefficients over another field.
    /// The prime field sits inside every binary field, so no embedding
    /// search is needed.
    pub fn lift_prime(&self, ctx: &FieldContext) -> Result<UPoly> {
        if self.coeffs.iter().any(|&c| c > 1) {
            return Err(Error::InvalidArgument(
                "coefficients outside GF(2) cannot be lifted".into(),
            ));
        }
        Ok(Self::from_raw_unchecked(ctx, self.coeffs.clone()))
    }
}

/// Product of many polynomials through a balanced product tree.
pub fn product_tree(ctx: &FieldContext, mut layer: Vec<UPoly>) -> UPoly {
    if layer.is_empty() {
        return UPoly::one(ctx);
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
    layer.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(m: u32) -> FieldContext {
        FieldContext::of_degree(m).unwrap()
    }

    #[test]
    fn derivative_in_char_two() {
        // x^(q+1) + a x + a  ->  x^q + a
        let f = gf(3);
        let a = f.from_bits(5).unwrap();
        let q = 8;
        let p = UPoly::monomial(&f, f.one(), q + 1)
            .add(&UPoly::monomial(&f, a, 1))
            .add(&UPoly::constant(&f, a));
        let expect = UPoly::monomial(&f, f.one(), q).add(&UPoly::constant(&f, a));
        assert_eq!(p.derivative(), expect);
    }

    #[test]
    fn eval_and_text_format() {
        let f = gf(1);
        let p = UPoly::parse(&f, "0x1,0x1,0x0,0x0,0x0,0x1").unwrap();
        assert_eq!(p, UPoly::from_exponents(&f, &[0, 1, 5]));
        assert_eq!(p.eval(f.zero()), f.one());
        assert_eq!(p.to_string(), "0x1,0x1,0x0,0x0,0x0,0x1");
        assert_eq!(UPoly::parse(&f, "0x1,0x0,0x0").unwrap().degree(), Some(0));
        assert!(UPoly::parse(&f, "0x2").is_err());
        assert_eq!(UPoly::zero(&f).to_string(), "0x0");
    }

    #[test]
    fn division_and_gcd() {
        let f = gf(4);
        let a = UPoly::from_bits(&f, vec![3, 0, 7, 1]).unwrap();
        let b = UPoly::from_bits(&f, vec![9, 2, 1]).unwrap();
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg() < b.deg());
        assert_eq!(a.divrem(&UPoly::zero(&f)).err(), Some(Error::DivisionByZero));
        let g = a.mul(&b).gcd(&b.mul(&b));
        assert_eq!(g, b.monic());
    }

    #[test]
    fn compose_reverse_sqrt() {
        let f = gf(2);
        let x = UPoly::x(&f);
        let p = UPoly::from_exponents(&f, &[0, 1, 3]);
        let shifted = p.compose(&x.add(&UPoly::one(&f)));
        for v in f.elements() {
            assert_eq!(shifted.eval(v), p.eval(f.add(v, f.one())));
        }
        assert_eq!(p.reverse(), UPoly::from_exponents(&f, &[0, 2, 3]));
        assert_eq!(p.square().sqrt().unwrap(), p);
        assert!(p.sqrt().is_err());
    }
}
