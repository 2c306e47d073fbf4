//! `PGL_2(q)`, `q = 2^n`, acting on the projective line by linear fractional
//! transformations, with the cyclic subgroups `C_{j,C}` of order `q + 1` and
//! their dihedral extensions `D_{j,C}`.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{fq_one_set, FieldContext, FieldElem};
use crate::report::CheckReport;
use crate::splitting::SplitFrame;

/// A point of `P^1(F_q)`. `Infinity` sorts before every finite point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjPoint {
    Infinity,
    Finite(FieldElem),
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Infinity => write!(f, "inf"),
            ProjPoint::Finite(x) => write!(f, "{x}"),
        }
    }
}

/// `[[a, b], [c, d]]` scaled so the first nonzero of `a, b` is one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pgl2Elem {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub d: FieldElem,
}

impl fmt::Display for Pgl2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElemClass {
    Identity,
    Involution,
    SplitsQm1,
    SplitsQp1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub involutions: u64,
    pub order_divides_qm1: u64,
    pub order_divides_qp1: u64,
}

impl ClassCounts {
    /// The counts every `PGL_2(2^n)` must have.
    pub fn expected(n: u32) -> Self {
        let q = 1u64 << n;
        ClassCounts {
            involutions: q * q - 1,
            order_divides_qm1: (q + 1) * (q / 2) * (q - 2),
            order_divides_qp1: q * q * (q - 1) / 2,
        }
    }

    pub fn total_with_identity(&self) -> u64 {
        1 + self.involutions + self.order_divides_qm1 + self.order_divides_qp1
    }
}

#[derive(Clone, Debug)]
pub struct Pgl2 {
    ctx: FieldContext,
}

impl Pgl2 {
    /// The group over `GF(2^n)`, `1 <= n <= 8`.
    pub fn new(n: u32) -> Result<Self> {
        if !(1..=8).contains(&n) {
            return Err(Error::InvalidArgument(format!("PGL2 needs 1 <= n <= 8, got {n}")));
        }
        Ok(Pgl2 { ctx: FieldContext::of_degree(n)? })
    }

    pub fn over(ctx: &FieldContext) -> Result<Self> {
        Self::new(ctx.degree()).map(|_| Pgl2 { ctx: ctx.clone() })
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn q(&self) -> u64 {
        1 << self.ctx.degree()
    }

    pub fn order_of_group(&self) -> u64 {
        let q = self.q();
        q * q * q - q
    }

    /// Canonical element from raw entries.
    pub fn elem(&self, a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Result<Pgl2Elem> {
        let f = &self.ctx;
        for x in [a, b, c, d] {
            f.check(x)?;
        }
        let det = f.add(f.mul(a, d), f.mul(b, c));
        if det.is_zero() {
            return Err(Error::InvalidArgument(format!("singular matrix [[{a}, {b}], [{c}, {d}]]")));
        }
        let lead = if a.is_zero() { b } else { a };
        let s = f.inv(lead)?;
        Ok(Pgl2Elem {
            a: f.mul(a, s),
            b: f.mul(b, s),
            c: f.mul(c, s),
            d: f.mul(d, s),
        })
    }

    fn elem_unchecked(&self, a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Pgl2Elem {
        self.elem(a, b, c, d).expect("nonsingular by construction")
    }

    pub fn identity(&self) -> Pgl2Elem {
        let f = &self.ctx;
        self.elem_unchecked(f.one(), f.zero(), f.zero(), f.one())
    }

    /// `[[1, b], [0, 1]]`.
    pub fn translation(&self, b: FieldElem) -> Pgl2Elem {
        let f = &self.ctx;
        self.elem_unchecked(f.one(), b, f.zero(), f.one())
    }

    /// `[[w, 0], [0, 1]]`, `w != 0`.
    pub fn dilation(&self, w: FieldElem) -> Result<Pgl2Elem> {
        let f = &self.ctx;
        self.elem(w, f.zero(), f.zero(), f.one())
    }

    /// `P^1(F_q)` with infinity first, then finite points by encoding.
    pub fn points(&self) -> Vec<ProjPoint> {
        std::iter::once(ProjPoint::Infinity)
            .chain(self.ctx.elements().map(ProjPoint::Finite))
            .collect()
    }

    /// All `q^3 - q` canonical elements, sorted.
    pub fn elements(&self) -> Vec<Pgl2Elem> {
        let f = &self.ctx;
        let mut out = Vec::with_capacity(self.order_of_group() as usize);
        for b in f.elements() {
            for c in f.elements() {
                for d in f.elements() {
                    if d != f.mul(b, c) {
                        out.push(Pgl2Elem { a: f.one(), b, c, d });
                    }
                }
            }
        }
        for c in f.nonzero_elements() {
            for d in f.elements() {
                out.push(Pgl2Elem { a: f.zero(), b: f.one(), c, d });
            }
        }
        out.sort();
        out
    }

    pub fn act(&self, g: &Pgl2Elem, w: ProjPoint) -> ProjPoint {
        let f = &self.ctx;
        let (num, den) = match w {
            ProjPoint::Infinity => (g.a, g.c),
            ProjPoint::Finite(x) => (f.add(f.mul(g.a, x), g.b), f.add(f.mul(g.c, x), g.d)),
        };
        match f.div(num, den) {
            Ok(v) => ProjPoint::Finite(v),
            Err(_) => ProjPoint::Infinity,
        }
    }

    pub fn mul(&self, g: &Pgl2Elem, h: &Pgl2Elem) -> Pgl2Elem {
        let f = &self.ctx;
        let e = |x: FieldElem, y: FieldElem, z: FieldElem, w: FieldElem| f.add(f.mul(x, y), f.mul(z, w));
        self.elem_unchecked(
            e(g.a, h.a, g.b, h.c),
            e(g.a, h.b, g.b, h.d),
            e(g.c, h.a, g.d, h.c),
            e(g.c, h.b, g.d, h.d),
        )
    }

    /// In characteristic 2 the adjugate is `[[d, b], [c, a]]`.
    pub fn inv(&self, g: &Pgl2Elem) -> Pgl2Elem {
        self.elem_unchecked(g.d, g.b, g.c, g.a)
    }

    pub fn order(&self, g: &Pgl2Elem) -> u64 {
        let id = self.identity();
        let mut x = *g;
        let mut k = 1;
        while x != id {
            x = self.mul(&x, g);
            k += 1;
        }
        k
    }

    /// Classification by matrix trace and the absolute trace of
    /// `det / (a + d)^2`.
    pub fn classify(&self, g: &Pgl2Elem) -> ElemClass {
        let f = &self.ctx;
        if g.a == g.d {
            return if g.b.is_zero() && g.c.is_zero() {
                ElemClass::Identity
            } else {
                ElemClass::Involution
            };
        }
        let det = f.add(f.mul(g.a, g.d), f.mul(g.b, g.c));
        let s = f.add(f.square(g.a), f.square(g.d));
        let t = f.div(det, s).expect("a != d");
        if f.trace_abs(t) == 1 {
            ElemClass::SplitsQp1
        } else {
            ElemClass::SplitsQm1
        }
    }

    /// Exhaustive tally by `classify`, cross-checked against `order`. The
    /// second value lists elements where the two disagree.
    pub fn class_counts(&self) -> (ClassCounts, Vec<Pgl2Elem>) {
        let q = self.q();
        let tallies: Vec<(ElemClass, bool, Pgl2Elem)> = self
            .elements()
            .into_par_iter()
            .map(|g| {
                let class = self.classify(&g);
                let ord = self.order(&g);
                let agrees = match class {
                    ElemClass::Identity => ord == 1,
                    ElemClass::Involution => ord == 2,
                    ElemClass::SplitsQm1 => ord > 1 && (q - 1).is_multiple_of(ord),
                    ElemClass::SplitsQp1 => ord > 1 && (q + 1).is_multiple_of(ord),
                };
                (class, agrees, g)
            })
            .collect();
        let mut counts = ClassCounts { involutions: 0, order_divides_qm1: 0, order_divides_qp1: 0 };
        let mut bad = Vec::new();
        for (class, agrees, g) in tallies {
            match class {
                ElemClass::Identity => {}
                ElemClass::Involution => counts.involutions += 1,
                ElemClass::SplitsQm1 => counts.order_divides_qm1 += 1,
                ElemClass::SplitsQp1 => counts.order_divides_qp1 += 1,
            }
            if !agrees {
                bad.push(g);
            }
        }
        (counts, bad)
    }

    /// `M_A = [[A, 1/C], [C, A + 1/j]]`, and `M_inf = 1`.
    pub fn cyclic_ma(&self, j: FieldElem, cc: FieldElem, a: ProjPoint) -> Result<Pgl2Elem> {
        let f = &self.ctx;
        let j_inv = f.inv(j)?;
        let c_inv = f.inv(cc)?;
        match a {
            ProjPoint::Infinity => Ok(self.identity()),
            ProjPoint::Finite(a) => self.elem(a, c_inv, cc, f.add(a, j_inv)),
        }
    }

    /// `[[1, 1/(jC)], [0, 1]]`.
    pub fn reflection(&self, j: FieldElem, cc: FieldElem) -> Result<Pgl2Elem> {
        let f = &self.ctx;
        Ok(self.translation(f.inv(f.mul(j, cc))?))
    }

    /// `C_{j,C}` indexed by `A` in `P^1` order.
    pub fn cyclic_group(&self, j: FieldElem, cc: FieldElem) -> Result<Vec<Pgl2Elem>> {
        self.points().into_iter().map(|a| self.cyclic_ma(j, cc, a)).collect()
    }

    /// `D_{j,C} = C_{j,C} ∪ C_{j,C} S`, sorted.
    pub fn dihedral_group(&self, j: FieldElem, cc: FieldElem) -> Result<Vec<Pgl2Elem>> {
        let s = self.reflection(j, cc)?;
        let cyc = self.cyclic_group(j, cc)?;
        let mut out: BTreeSet<Pgl2Elem> = cyc.iter().copied().collect();
        out.extend(cyc.iter().map(|m| self.mul(m, &s)));
        Ok(out.into_iter().collect())
    }

    /// The composition law index `K = (1 + AB) / (1/j + A + B)`.
    pub fn compose_index(&self, j: FieldElem, a: ProjPoint, b: ProjPoint) -> Result<ProjPoint> {
        let f = &self.ctx;
        Ok(match (a, b) {
            (ProjPoint::Infinity, x) | (x, ProjPoint::Infinity) => x,
            (ProjPoint::Finite(a), ProjPoint::Finite(b)) => {
                let num = f.add(f.one(), f.mul(a, b));
                let den = f.add(f.add(f.inv(j)?, a), b);
                match f.div(num, den) {
                    Ok(k) => ProjPoint::Finite(k),
                    Err(_) => ProjPoint::Infinity,
                }
            }
        })
    }

    /// All relations of the cyclic and dihedral subgroups for one `(j, C)`.
    /// Returns the failures.
    pub fn dihedral_failures(&self, j: FieldElem, cc: FieldElem, mutate: bool) -> Result<Vec<String>> {
        let f = &self.ctx;
        let q = self.q();
        let mut bad = Vec::new();
        if f.trace_abs(j) != 1 {
            return Err(Error::InvalidArgument(format!("j = {j} has trace 0")));
        }
        let pts = self.points();
        let cyc = self.cyclic_group(j, cc)?;
        let id = self.identity();
        for (ia, &pa) in pts.iter().enumerate() {
            for (ib, &pb) in pts.iter().enumerate() {
                let mut k = self.compose_index(j, pa, pb)?;
                if mutate {
                    if let ProjPoint::Finite(x) = k {
                        k = ProjPoint::Finite(f.add(x, f.one()));
                    }
                }
                if self.mul(&cyc[ia], &cyc[ib]) != self.cyclic_ma(j, cc, k)? {
                    bad.push(format!("j={j} C={cc}: M_{pa} M_{pb} != M_{k}"));
                }
            }
        }
        let distinct: BTreeSet<_> = cyc.iter().collect();
        if distinct.len() as u64 != q + 1 {
            bad.push(format!("j={j} C={cc}: |C_(j,C)| = {}", distinct.len()));
        }
        if !cyc.iter().any(|m| self.order(m) == q + 1) {
            bad.push(format!("j={j} C={cc}: no element of order q+1"));
        }
        let s = self.reflection(j, cc)?;
        let j_inv = f.inv(j)?;
        for (&pa, m) in pts.iter().zip(&cyc) {
            let conj = self.mul(&self.mul(&s, m), &s);
            let shifted = match pa {
                ProjPoint::Infinity => ProjPoint::Infinity,
                ProjPoint::Finite(x) => ProjPoint::Finite(f.add(x, j_inv)),
            };
            if conj != self.inv(m) || conj != self.cyclic_ma(j, cc, shifted)? {
                bad.push(format!("j={j} C={cc}: S M_{pa} S != M_{pa}^-1 = M_{shifted}"));
            }
            if *m != id {
                if let Some(w) = pts.iter().find(|&&w| self.act(m, w) == w) {
                    bad.push(format!("j={j} C={cc}: M_{pa} fixes {w}"));
                }
            }
        }
        let dih = self.dihedral_group(j, cc)?;
        let dset: BTreeSet<_> = dih.iter().copied().collect();
        if dih.len() as u64 != 2 * (q + 1) {
            bad.push(format!("j={j} C={cc}: |D_(j,C)| = {}", dih.len()));
        }
        'closure: for g in &dih {
            for h in &dih {
                if !dset.contains(&self.mul(g, h)) {
                    bad.push(format!("j={j} C={cc}: D_(j,C) not closed at {g} * {h}"));
                    break 'closure;
                }
            }
        }
        for m in &cyc {
            let r = self.mul(m, &s);
            if self.order(&r) != 2 {
                bad.push(format!("j={j} C={cc}: reflection {r} has order {}", self.order(&r)));
            }
        }
        Ok(bad)
    }

    /// Conjugation of `M_A` (with `C = 1`) by `[[1, b], [0, 1]]` and the
    /// renormalized parameters `A'`, `C'`, `J`. Returns the failures.
    pub fn conjugation_failures(&self, j: FieldElem) -> Result<Vec<String>> {
        let f = &self.ctx;
        let mut bad = Vec::new();
        let j_inv = f.inv(j)?;
        for a in f.elements() {
            let m = self.cyclic_ma(j, f.one(), ProjPoint::Finite(a))?;
            for b in f.elements() {
                let t = self.translation(b);
                let conj = self.mul(&self.mul(&t, &m), &t);
                let u = f.add(f.add(f.one(), f.square(b)), f.mul(b, j_inv));
                if u.is_zero() {
                    bad.push(format!("j={j} b={b}: u = 0"));
                    continue;
                }
                let ab = f.add(a, b);
                if conj != self.elem(ab, u, f.one(), f.add(ab, j_inv))? {
                    bad.push(format!("j={j} A={a} b={b}: conjugate is not [[A+b, u], [1, A+b+1/j]]"));
                }
                let su = f.sqrt(u);
                let su_alt = f.add(f.add(f.one(), b), f.sqrt(f.mul(b, j_inv)));
                let a2 = f.div(ab, su)?;
                let big_j = f.mul(j, su);
                let big_j_alt = f.add(f.add(j, f.sqrt(f.mul(b, j))), f.mul(b, j));
                let normalized = self.elem(a2, su, f.inv(su)?, f.add(a2, f.inv(big_j)?))?;
                if su != su_alt || big_j != big_j_alt || f.trace_abs(big_j) != 1 || normalized != conj {
                    bad.push(format!("j={j} A={a} b={b}: normalized parameters disagree"));
                }
            }
        }
        Ok(bad)
    }

    /// Split `g = delta * beta` with `delta` in `C_j` (`C = 1`) and `beta`
    /// fixing infinity.
    pub fn decompose(&self, g: &Pgl2Elem, j: FieldElem) -> Result<(Pgl2Elem, Pgl2Elem)> {
        let f = &self.ctx;
        let mut found = None;
        for delta in self.cyclic_group(j, f.one())? {
            let beta = self.mul(&self.inv(&delta), g);
            if beta.c.is_zero() {
                if found.is_some() {
                    return Err(Error::Internal(format!("two decompositions of {g}")));
                }
                found = Some((delta, beta));
            }
        }
        found.ok_or_else(|| Error::Internal(format!("no decomposition of {g}")))
    }

    /// `gamma^-1` acting on an element of the frame's ambient field.
    pub fn act_inverse_on(&self, frame: &SplitFrame, g: &Pgl2Elem, y: FieldElem) -> Result<FieldElem> {
        let gi = self.inv(g);
        frame.mobius(&gi, y)
    }
}

/// Every `gamma` with `e(gamma^-1 y, c, j) = e(y, c, j)`, sorted.
pub fn stabilizer_scan(frame: &SplitFrame, c: FieldElem, j: FieldElem) -> Result<Vec<Pgl2Elem>> {
    let g = Pgl2::over(frame.fq())?;
    let target = frame.e_root(c, j)?;
    let y = frame.y;
    let hits: Vec<Option<Pgl2Elem>> = g
        .elements()
        .into_par_iter()
        .map(|gamma| {
            let y2 = g.act_inverse_on(frame, &gamma, y)?;
            let e2 = frame.e_at(y2, c, j)?;
            Ok((e2 == target).then_some(gamma))
        })
        .collect::<Result<_>>()?;
    Ok(hits.into_iter().flatten().collect())
}

/// `gamma^-1 y = (r_{gamma(1)} - r_{gamma(inf)}) / (r_{gamma(1)} - r_{gamma(0)})`
/// for every `gamma`. Returns the failures.
pub fn cross_ratio_law_failures(frame: &SplitFrame) -> Result<Vec<String>> {
    let g = Pgl2::over(frame.fq())?;
    let amb = frame.ambient();
    let fq = frame.fq();
    let (inf, zero, one) = (ProjPoint::Infinity, ProjPoint::Finite(fq.zero()), ProjPoint::Finite(fq.one()));
    let mut bad = Vec::new();
    for gamma in g.elements() {
        let lhs = g.act_inverse_on(frame, &gamma, frame.y)?;
        let r1 = frame.root(g.act(&gamma, one));
        let num = amb.add(r1, frame.root(g.act(&gamma, inf)));
        let den = amb.add(r1, frame.root(g.act(&gamma, zero)));
        if lhs != amb.div(num, den)? {
            bad.push(format!("cross-ratio law fails for gamma = {gamma}"));
        }
    }
    Ok(bad)
}

pub fn check_class_counts(n: u32, mutate: bool) -> Result<CheckReport> {
    let g = Pgl2::new(n)?;
    CheckReport::new("class-counts").with_n(n).param("mutate", mutate).run(|rep| {
        let (got, bad) = g.class_counts();
        let mut want = ClassCounts::expected(n);
        if mutate {
            want.involutions += 1;
        }
        rep.record("counts", got);
        rep.record("group_order", g.order_of_group());
        rep.require(bad.is_empty(), || format!("classify disagrees with order at {}", bad[0]));
        rep.require(got == want, || format!("counts {got:?} != expected {want:?}"));
        rep.require(got.total_with_identity() == g.order_of_group(), || {
            format!("class sizes sum to {}", got.total_with_identity())
        });
        Ok(())
    })
}

/// Dihedral relations for every `j` in `F_{q,1}` and `C` in `{1, g}`, plus
/// the conjugation formulas and the `delta * beta` decomposition.
pub fn check_dihedral(n: u32, mutate: bool) -> Result<CheckReport> {
    let g = Pgl2::new(n)?;
    if n < 2 {
        return Err(Error::InvalidArgument("dihedral check needs n >= 2".into()));
    }
    CheckReport::new("dihedral").with_n(n).param("mutate", mutate).run(|rep| {
        let f = g.ctx().clone();
        let js = fq_one_set(n, &f)?;
        let cs: BTreeSet<FieldElem> = [f.one(), f.generator()].into_iter().collect();
        let mut pairs = 0;
        for &j in &js {
            for &cc in &cs {
                for msg in g.dihedral_failures(j, cc, mutate)? {
                    rep.fail(msg);
                }
                pairs += 1;
            }
            for msg in g.conjugation_failures(j)? {
                rep.fail(msg);
            }
        }
        rep.record("pairs", pairs);
        if n <= 3 {
            let all = g.elements();
            let j = js[0];
            let mut products = BTreeSet::new();
            let cyc = g.cyclic_group(j, f.one())?;
            for delta in &cyc {
                for a in f.nonzero_elements() {
                    for b in f.elements() {
                        let beta = g.elem(a, b, f.zero(), f.one())?;
                        products.insert(g.mul(delta, &beta));
                    }
                }
            }
            rep.require(products.len() == all.len(), || {
                format!("delta*beta covers {} of {} elements", products.len(), all.len())
            });
            for x in &all {
                let (delta, beta) = g.decompose(x, j)?;
                rep.require(g.mul(&delta, &beta) == *x, || format!("decomposition of {x} does not multiply back"));
            }
            rep.record("decomposed", all.len());
        }
        Ok(())
    })
}

/// Exhaustive stabilizer scans on a frame for the given `(c, j)` pairs.
pub fn check_stabilizer(frame: &SplitFrame, pairs: &[(FieldElem, FieldElem)], mutate: bool) -> Result<CheckReport> {
    let g = Pgl2::over(frame.fq())?;
    let f = g.ctx().clone();
    CheckReport::new("stabilizer")
        .with_n(frame.n)
        .param("k", frame.k)
        .param("a", frame.a.to_string())
        .param("pairs", pairs.len())
        .param("mutate", mutate)
        .run(|rep| {
            let q = g.q();
            for &(c, j) in pairs {
                let d = f.sqrt(j);
                let found = stabilizer_scan(frame, c, j)?;
                let expected = if mutate {
                    g.cyclic_group(d, f.div(c, d)?)?
                } else {
                    g.dihedral_group(d, f.div(c, d)?)?
                };
                let mut expected_sorted = expected.clone();
                expected_sorted.sort();
                rep.require(found.contains(&g.identity()), || format!("c={c} j={j}: identity missing"));
                rep.require(found.len() as u64 == 2 * (q + 1), || {
                    format!("c={c} j={j}: stabilizer has {} elements", found.len())
                });
                rep.require(found == expected_sorted, || {
                    format!("c={c} j={j}: stabilizer differs from D_(sqrt j, c/sqrt j)")
                });
            }
            for msg in cross_ratio_law_failures(frame)? {
                rep.fail(msg);
            }
            rep.record("group_order", g.order_of_group());
            rep.record("pairs", pairs.len());
            Ok(())
        })
}
