//! Factorization over GF(2^k): squarefree decomposition, distinct-degree
//! splitting, then equal-degree splitting with the additive trace map
//! `h + h^2 + ... + h^(2^(kd-1))`.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::UPoly;
use crate::error::{Error, Result};
use crate::gf2::numth::{lcm, prime_divisors};
use crate::gf2::{Embedding, FieldContext, FieldElem};

/// Sorted multiset of irreducible-factor degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactType(Vec<u32>);

impl FactType {
    pub fn new(mut degrees: Vec<u32>) -> Self {
        degrees.sort_unstable();
        FactType(degrees)
    }

    pub fn degrees(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of linear factors.
    pub fn linear_count(&self) -> usize {
        self.count(1)
    }

    pub fn count(&self, d: u32) -> usize {
        self.0.iter().filter(|&&x| x == d).count()
    }

    pub fn lcm(&self) -> u64 {
        self.0.iter().fold(1, |acc, &d| lcm(acc, d as u64))
    }
}

impl fmt::Display for FactType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

fn squarefree_decomposition(f: &UPoly) -> Vec<(UPoly, u32)> {
    let mut out = Vec::new();
    let fp = f.derivative();
    let mut c = f.gcd(&fp);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        let root = c.sqrt().expect("remaining cofactor is a square");
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, 2 * m));
        }
    }
    out
}

/// Distinct-degree split of a monic squarefree polynomial.
fn distinct_degree(f: &UPoly) -> Vec<(UPoly, u32)> {
    let k = f.ctx().degree() as u64;
    let x = UPoly::x(f.ctx());
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest).expect("nonzero");
    let mut d = 1u32;
    while rest.deg() >= 2 * d as isize {
        h = h.frobenius_mod(k, &rest).expect("nonzero");
        let g = h.add(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero");
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let dr = rest.deg() as u32;
        out.push((rest, dr));
    }
    out
}

fn random_poly(ctx: &FieldContext, below: usize, rng: &mut ChaCha8Rng) -> UPoly {
    let v = (0..below).map(|_| ctx.random(rng).bits()).collect();
    UPoly::from_raw_unchecked(ctx, v)
}

/// Split a monic squarefree `g` whose irreducible factors all have degree `d`.
fn equal_degree(g: UPoly, d: u32, rng: &mut ChaCha8Rng, out: &mut Vec<UPoly>) {
    if g.deg() == d as isize {
        out.push(g);
        return;
    }
    let ctx = g.ctx().clone();
    let steps = ctx.degree() as u64 * d as u64;
    loop {
        let h = random_poly(&ctx, g.deg() as usize, rng);
        if h.deg() < 1 {
            continue;
        }
        let mut acc = h.clone();
        let mut p = h;
        for _ in 1..steps {
            p = p.square().rem(&g).expect("nonzero");
            acc = acc.add(&p);
        }
        let s = acc.gcd(&g);
        if s.deg() > 0 && s.deg() < g.deg() {
            let other = g.div_exact(&s).expect("gcd divides");
            equal_degree(s, d, rng, out);
            equal_degree(other, d, rng, out);
            return;
        }
    }
}

/// Rabin certificate: `x^(Q^d) = x mod g` and `gcd(x^(Q^(d/p)) - x, g) = 1`.
pub fn is_irreducible(g: &UPoly) -> bool {
    let Some(d) = g.degree() else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let g = g.monic();
    let k = g.ctx().degree() as u64;
    let x = UPoly::x(g.ctx());
    let mut powers = vec![x.rem(&g).expect("nonzero")];
    for i in 0..d {
        let next = powers[i].frobenius_mod(k, &g).expect("nonzero");
        powers.push(next);
    }
    if powers[d] != x {
        return false;
    }
    prime_divisors(d as u64)
        .into_iter()
        .all(|p| powers[d / p as usize].add(&x).gcd(&g).is_one())
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by `(degree, coefficients)`.
pub fn factor(f: &UPoly, seed: u64) -> Result<Vec<(UPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("cannot factor the zero polynomial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&f.monic()) {
        for (g, d) in distinct_degree(&part) {
            let mut pieces = Vec::new();
            equal_degree(g, d, &mut rng, &mut pieces);
            out.extend(pieces.into_iter().map(|p| (p, mult)));
        }
    }
    for (g, _) in &out {
        if !is_irreducible(g) {
            return Err(Error::Internal(format!("factor {g} failed the irreducibility certificate")));
        }
    }
    out.sort_by(|(a, _), (b, _)| a.deg().cmp(&b.deg()).then_with(|| a.raw().cmp(b.raw())));
    Ok(out)
}

/// Degrees of irreducible factors, repeated by multiplicity.
pub fn fact_type(f: &UPoly, seed: u64) -> Result<FactType> {
    let degs = factor(f, seed)?
        .into_iter()
        .flat_map(|(g, m)| std::iter::repeat_n(g.deg() as u32, m as usize))
        .collect();
    Ok(FactType::new(degs))
}

/// Degree of the splitting field over the coefficient field: the lcm of the
/// irreducible factor degrees.
pub fn splitting_degree(f: &UPoly, seed: u64) -> Result<u64> {
    Ok(factor(f, seed)?
        .iter()
        .fold(1, |acc, (g, _)| lcm(acc, g.deg() as u64)))
}

/// Distinct roots of `f` lying in its own coefficient field, sorted by
/// encoding.
pub fn roots_in_field(f: &UPoly, seed: u64) -> Result<Vec<FieldElem>> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("the zero polynomial vanishes everywhere".into()));
    }
    let f = f.monic();
    if f.deg() < 1 {
        return Ok(Vec::new());
    }
    let k = f.ctx().degree() as u64;
    let x = UPoly::x(f.ctx());
    let xq = x.frobenius_mod(k, &f)?;
    let g = xq.add(&x).gcd(&f);
    if g.deg() < 1 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut linears = Vec::new();
    equal_degree(g, 1, &mut rng, &mut linears);
    let mut roots: Vec<FieldElem> = linears.iter().map(|l| l.coeff(0)).collect();
    roots.sort();
    Ok(roots)
}

/// Number of distinct roots in the coefficient field.
pub fn count_roots_in_field(f: &UPoly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("the zero polynomial vanishes everywhere".into()));
    }
    let f = f.monic();
    if f.deg() < 1 {
        return Ok(0);
    }
    let x = UPoly::x(f.ctx());
    let xq = x.frobenius_mod(f.ctx().degree() as u64, &f)?;
    Ok(xq.add(&x).gcd(&f).deg() as usize)
}

/// Build `GF(2^(k * splitting degree))`, embed `f`, and return all of its
/// roots there, sorted by encoding and each re-verified by evaluation.
pub fn roots_in_splitting_field(f: &UPoly, seed: u64) -> Result<(FieldContext, Vec<FieldElem>)> {
    if f.is_zero() || !f.gcd(&f.derivative()).is_one() {
        return Err(Error::InvalidArgument("polynomial must be nonzero and squarefree".into()));
    }
    let k = f.ctx().degree() as u64;
    let degree = k * splitting_degree(f, seed)?;
    let degree = u32::try_from(degree)
        .ok()
        .filter(|&d| d <= 64)
        .ok_or(Error::UnsupportedDegree(degree.min(u32::MAX as u64) as u32))?;
    let ambient = FieldContext::of_degree(degree)?;
    let emb = Embedding::cached(f.ctx(), &ambient)?;
    let g = f.embed(&emb)?;
    let roots = roots_in_field(&g, seed)?;
    if roots.len() as isize != g.deg() {
        return Err(Error::Internal(format!(
            "{} roots found for a degree {} polynomial in its splitting field",
            roots.len(),
            g.deg()
        )));
    }
    if let Some(r) = roots.iter().find(|&&r| !g.eval(r).is_zero()) {
        return Err(Error::Internal(format!("claimed root {r} does not vanish")));
    }
    Ok((ambient, roots))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(m: u32) -> FieldContext {
        FieldContext::of_degree(m).unwrap()
    }

    #[test]
    fn quintic_over_gf2() {
        let f2 = gf(1);
        let p = UPoly::from_exponents(&f2, &[0, 1, 5]);
        let fs = factor(&p, 0).unwrap();
        assert_eq!(
            fs,
            vec![
                (UPoly::from_exponents(&f2, &[0, 1, 2]), 1),
                (UPoly::from_exponents(&f2, &[0, 2, 3]), 1)
            ]
        );
        assert_eq!(fact_type(&p, 0).unwrap().to_string(), "[2,3]");
        assert_eq!(splitting_degree(&p, 0).unwrap(), 6);
    }

    #[test]
    fn quintic_over_gf4() {
        let f4 = gf(2);
        let p = UPoly::from_exponents(&f4, &[0, 1, 5]);
        assert_eq!(fact_type(&p, 3).unwrap(), FactType::new(vec![1, 1, 3]));
        let a = f4.t();
        let roots = roots_in_field(&p, 0).unwrap();
        assert_eq!(roots, vec![a, f4.square(a)]);
        let cubic = UPoly::from_exponents(&f4, &[0, 2, 3]);
        assert!(is_irreducible(&cubic));
    }

    #[test]
    fn small_types() {
        let f2 = gf(1);
        assert_eq!(fact_type(&UPoly::from_exponents(&f2, &[0, 1, 2]), 0).unwrap(), FactType::new(vec![2]));
        // (x + 1)^2 = x^2 + 1
        assert_eq!(fact_type(&UPoly::from_exponents(&f2, &[0, 2]), 0).unwrap(), FactType::new(vec![1, 1]));
        assert_eq!(splitting_degree(&UPoly::x(&f2), 0).unwrap(), 1);
        assert!(factor(&UPoly::zero(&f2), 0).is_err());
    }

    #[test]
    fn repeated_factors_with_multiplicity() {
        let f = gf(3);
        let a = UPoly::from_bits(&f, vec![3, 1]).unwrap();
        let b = UPoly::from_bits(&f, vec![1, 1, 0, 1]).unwrap();
        let p = a.pow(4).mul(&b.pow(3)).mul(&UPoly::x(&f));
        let fs = factor(&p, 9).unwrap();
        let back = fs
            .iter()
            .fold(UPoly::one(&f), |acc, (g, m)| acc.mul(&g.pow(*m as u64)));
        assert_eq!(back, p.monic());
        assert_eq!(fact_type(&p, 9).unwrap().total(), p.deg() as u32);
    }

    #[test]
    fn splitting_field_roots() {
        let f2 = gf(1);
        let (amb, roots) = roots_in_splitting_field(&UPoly::from_exponents(&f2, &[0, 1, 2]), 0).unwrap();
        assert_eq!(amb.degree(), 2);
        assert_eq!(roots, vec![amb.t(), amb.add(amb.t(), amb.one())]);
        let p = UPoly::from_exponents(&f2, &[0, 1]).mul(&UPoly::from_exponents(&f2, &[0, 1, 2]));
        let (amb, roots) = roots_in_splitting_field(&p, 0).unwrap();
        assert_eq!(amb.degree(), 2);
        assert_eq!(roots.len(), 3);
        assert!(roots_in_splitting_field(&UPoly::from_exponents(&f2, &[0, 2]), 0).is_err());
    }

    #[test]
    fn fact_type_display() {
        assert_eq!(FactType::new(vec![3, 1, 1]).to_string(), "[1,1,3]");
        assert_eq!(FactType::new(vec![2, 4]).lcm(), 4);
    }
}
