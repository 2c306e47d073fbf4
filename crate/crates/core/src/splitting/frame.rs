use std::sync::Arc;

use crate::dickson::c_poly;
use crate::error::{Error, Result};
use crate::gf2::numth::lcm;
use crate::gf2::{Embedding, FieldContext, FieldElem};
use crate::pgl2::{Pgl2Elem, ProjPoint};
use crate::poly::{roots_in_field, splitting_degree, UPoly};

/// `x^(q+1) + a x + a` over `ctx`.
pub fn qplus1_poly(n: u32, a: FieldElem, ctx: &FieldContext) -> UPoly {
    let q = 1usize << n;
    let mut v = vec![ctx.zero(); q + 2];
    v[0] = a;
    v[1] = a;
    v[q + 1] = ctx.one();
    UPoly::new(ctx, v)
}

/// `x^(q+1) + x + 1/a` over `ctx`.
pub fn qplus1_reciprocal_poly(n: u32, a: FieldElem, ctx: &FieldContext) -> Result<UPoly> {
    let q = 1usize << n;
    let mut v = vec![ctx.zero(); q + 2];
    v[0] = ctx.inv(a)?;
    v[1] = ctx.one();
    v[q + 1] = ctx.one();
    Ok(UPoly::new(ctx, v))
}

/// `C(x) + a` over `ctx`.
pub fn c_plus_a(n: u32, a: FieldElem, ctx: &FieldContext) -> Result<UPoly> {
    Ok(c_poly(n)?.to_upoly(ctx).add(&UPoly::constant(ctx, a)))
}

/// The joint splitting scene of `x^(q+1) + a x + a` over `GF(2^k)`: the
/// roots `r_w`, the cross-ratio `y`, `z = y^(q-1)` and `xi = y^q + y`.
#[derive(Clone)]
pub struct SplitFrame {
    pub n: u32,
    pub k: u32,
    /// In the base field `GF(2^k)`.
    pub a: FieldElem,
    pub y: FieldElem,
    pub z: FieldElem,
    pub xi: FieldElem,
    base: FieldContext,
    fq: FieldContext,
    ambient: FieldContext,
    base_emb: Arc<Embedding>,
    fq_emb: Arc<Embedding>,
    points: Vec<ProjPoint>,
    roots: Vec<FieldElem>,
}

impl SplitFrame {
    pub fn base(&self) -> &FieldContext {
        &self.base
    }

    /// `GF(q)` as its own field.
    pub fn fq(&self) -> &FieldContext {
        &self.fq
    }

    pub fn ambient(&self) -> &FieldContext {
        &self.ambient
    }

    pub fn q(&self) -> u64 {
        1 << self.n
    }

    /// `P^1(F_q)`, infinity first.
    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    /// `r_w` for each point of `points()`.
    pub fn roots(&self) -> &[FieldElem] {
        &self.roots
    }

    pub fn root(&self, w: ProjPoint) -> FieldElem {
        match w {
            ProjPoint::Infinity => self.roots[0],
            ProjPoint::Finite(x) => self.roots[1 + x.bits() as usize],
        }
    }

    pub fn a_ambient(&self) -> FieldElem {
        self.base_emb.apply(self.a).expect("a belongs to the base field")
    }

    pub fn base_to_ambient(&self, x: FieldElem) -> Result<FieldElem> {
        self.base_emb.apply(x)
    }

    pub fn fq_to_ambient(&self, x: FieldElem) -> Result<FieldElem> {
        self.fq_emb.apply(x)
    }

    pub fn fq_from_ambient(&self, x: FieldElem) -> Result<Option<FieldElem>> {
        self.fq_emb.preimage(x)
    }

    pub fn base_embedding(&self) -> &Embedding {
        &self.base_emb
    }

    pub fn fq_embedding(&self) -> &Embedding {
        &self.fq_emb
    }

    /// `e(y', c, j) = (c y'^2 + y' + j/c)^(q+1) / (y'^q + y')^2` for any
    /// `y'` in the ambient field; `c`, `j` live in `GF(q)`.
    pub fn e_at(&self, y: FieldElem, c: FieldElem, j: FieldElem) -> Result<FieldElem> {
        let f = &self.ambient;
        let (c, j) = (self.fq_to_ambient(c)?, self.fq_to_ambient(j)?);
        let q = self.q() as u128;
        let inner = f.add(f.add(f.mul(c, f.square(y)), y), f.div(j, c)?);
        let den = f.square(f.add(f.pow(y, q), y));
        if den.is_zero() {
            return Err(Error::Internal(format!("y' = {y} lies in F_q")));
        }
        f.div(f.pow(inner, q + 1), den)
    }

    /// The root of `C(x) + a` labelled by `(c, j)`, `c != 0`, `Tr(j) = 1`.
    pub fn e_root(&self, c: FieldElem, j: FieldElem) -> Result<FieldElem> {
        self.fq.check(c)?;
        self.fq.check(j)?;
        if c.is_zero() || self.fq.trace_abs(j) != 1 {
            return Err(Error::InvalidArgument(format!("need c != 0 and Tr(j) = 1, got c={c}, j={j}")));
        }
        self.e_at(self.y, c, j)
    }

    /// `(c, j, e(y, c, j))` for `c` in `F_q^x`, `j` in `F_{q,1}`, both ascending.
    pub fn e_table(&self) -> Result<Vec<(FieldElem, FieldElem, FieldElem)>> {
        let js: Vec<FieldElem> = self.fq.elements().filter(|&j| self.fq.trace_abs(j) == 1).collect();
        let mut out = Vec::with_capacity(js.len() * (self.q() as usize - 1));
        for c in self.fq.nonzero_elements() {
            for &j in &js {
                out.push((c, j, self.e_root(c, j)?));
            }
        }
        Ok(out)
    }

    /// Linear fractional action of a `PGL_2(q)` element on the ambient field.
    pub fn mobius(&self, g: &Pgl2Elem, x: FieldElem) -> Result<FieldElem> {
        let f = &self.ambient;
        let m = |e: FieldElem| self.fq_to_ambient(e);
        let num = f.add(f.mul(m(g.a)?, x), m(g.b)?);
        let den = f.add(f.mul(m(g.c)?, x), m(g.d)?);
        if den.is_zero() {
            return Err(Error::Internal(format!("{x} is a pole of {g}")));
        }
        f.div(num, den)
    }

    /// Identities every frame must satisfy beyond those asserted at
    /// construction: recovery of each `w` and of `a` from the roots, and
    /// injectivity of `(c, j) -> e`. Returns the failures.
    pub fn invariant_failures(&self) -> Result<Vec<String>> {
        let f = &self.ambient;
        let mut bad = Vec::new();
        let (r, r0, r1) = (self.roots[0], self.roots[1], self.roots[2]);
        let lead = f.div(f.add(r1, r), f.add(r1, r0))?;
        for w in self.fq.elements() {
            let w_amb = self.fq_to_ambient(w)?;
            let rw = self.root(ProjPoint::Finite(w));
            let rw1 = self.root(ProjPoint::Finite(self.fq.add(w, self.fq.one())));
            let got = f.add(lead, f.div(f.add(rw1, r), f.add(rw1, rw))?);
            if got != w_amb {
                bad.push(format!("w-recovery gives {got} for w = {w}"));
            }
        }
        let q = self.q() as u128;
        let xi_pow = f.pow(self.xi, q - 1);
        let t = f.add(f.one(), f.inv(xi_pow)?);
        let a_rec = f.mul(f.pow(t, q + 1), xi_pow);
        if a_rec != self.a_ambient() {
            bad.push(format!("a-recovery gives {a_rec}"));
        }
        let mut es: Vec<FieldElem> = self.e_table()?.into_iter().map(|(_, _, e)| e).collect();
        es.sort();
        es.dedup();
        let want = (self.q() / 2 * (self.q() - 1)) as usize;
        if es.len() != want {
            bad.push(format!("(c, j) -> e hits {} values, expected {want}", es.len()));
        }
        Ok(bad)
    }
}

/// Factor `x^(q+1) + a x + a` over `GF(2^k)`, split it in
/// `GF(2^lcm(k * L, 2n))`, and assemble the frame from the three
/// smallest-encoding roots.
pub fn build_frame(n: u32, k: u32, a: FieldElem, seed: u64) -> Result<SplitFrame> {
    if !(2..=8).contains(&n) || k == 0 {
        return Err(Error::InvalidArgument(format!("need 2 <= n <= 8 and k >= 1, got n={n}, k={k}")));
    }
    let base = FieldContext::of_degree(k)?;
    base.check(a)?;
    if a.is_zero() {
        return Err(Error::InvalidArgument("a must be nonzero".into()));
    }
    let f = qplus1_poly(n, a, &base);
    let split = splitting_degree(&f, seed)?;
    let degree = lcm(k as u64 * split, 2 * n as u64);
    if degree > 64 {
        return Err(Error::UnsupportedDegree(degree as u32));
    }
    let ambient = FieldContext::of_degree(degree as u32)?;
    let fq = FieldContext::of_degree(n)?;
    let base_emb = Embedding::cached(&base, &ambient)?;
    let fq_emb = Embedding::cached(&fq, &ambient)?;
    let sorted = roots_in_field(&f.embed(&base_emb)?, seed)?;
    let q = 1u64 << n;
    if sorted.len() as u64 != q + 1 {
        return Err(Error::Internal(format!("{} roots in the ambient field, expected {}", sorted.len(), q + 1)));
    }
    let amb = &ambient;
    let (r, r0, r1) = (sorted[0], sorted[1], sorted[2]);
    let y = amb.div(amb.add(r1, r), amb.add(r1, r0))?;
    let qq = q as u128;
    let z = amb.pow(y, qq - 1);
    let xi = amb.add(amb.pow(y, qq), y);
    let one = amb.one();
    let inv_r1 = amb.inv(amb.add(r, one))?;
    let checks = [
        (z == amb.div(r0, r)?, "z = r0/r"),
        (!xi.is_zero(), "xi != 0"),
        (xi == amb.mul(y, amb.add(z, one)), "xi = y(z+1)"),
        (amb.pow(xi, qq - 1) == inv_r1, "xi^(q-1) = 1/(r+1)"),
        (amb.mul(z, amb.pow(amb.add(z, one), qq - 1)) == inv_r1, "z(z+1)^(q-1) = 1/(r+1)"),
        (amb.add(amb.pow(y, qq * qq), y) == amb.add(amb.pow(xi, qq), xi), "y^(q^2) + y = xi^q + xi"),
        (amb.pow(y, qq * qq) != y, "y not in F_(q^2)"),
    ];
    if let Some((_, what)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(Error::Internal(format!("frame relation {what} fails for n={n}, k={k}, a={a}")));
    }
    let mut points = vec![ProjPoint::Infinity];
    let mut roots = vec![r];
    for w in fq.elements() {
        points.push(ProjPoint::Finite(w));
        let yw = amb.add(y, fq_emb.apply(w)?);
        roots.push(amb.mul(r, amb.pow(yw, qq - 1)));
    }
    let mut check = roots.clone();
    check.sort();
    if check != sorted || roots[1] != r0 || roots[2] != r1 {
        return Err(Error::Internal("r_w = r (y+w)^(q-1) does not reproduce the roots".into()));
    }
    Ok(SplitFrame { n, k, a, y, z, xi, base, fq, ambient, base_emb, fq_emb, points, roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::product_tree;

    #[test]
    fn quintic_frame() {
        let f2 = FieldContext::of_degree(1).unwrap();
        let frame = build_frame(2, 1, f2.one(), 0).unwrap();
        assert_eq!(frame.ambient().degree(), 12);
        assert_eq!(frame.roots().len(), 5);
        assert!(frame.invariant_failures().unwrap().is_empty());
        let amb = frame.ambient();
        let c_a = c_plus_a(2, amb.one(), amb).unwrap();
        let table = frame.e_table().unwrap();
        assert_eq!(table.len(), 6);
        for &(_, _, e) in &table {
            assert!(c_a.eval(e).is_zero());
        }
        let prod = product_tree(amb, table.iter().map(|&(_, _, e)| UPoly::new(amb, vec![e, amb.one()])).collect());
        assert_eq!(prod, c_a);
    }

    #[test]
    fn rejects_bad_input() {
        let f2 = FieldContext::of_degree(1).unwrap();
        assert!(build_frame(2, 1, f2.zero(), 0).is_err());
        assert!(build_frame(1, 1, f2.one(), 0).is_err());
    }
}
