//! Exact polynomial identities: the bivariate product identity over
//! `F_q[X, Y]`, the `(c, j)` product, the transformation laws of
//! `e(y, c, j)`, and the root product for `C(X) + a`.

mod bipoly;
mod rational;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use bipoly::{product_tree, BiPoly};
pub use rational::RationalFn;

use crate::dickson::{dickson_gf2, t_rev_poly};
use crate::error::{Error, Result};
use crate::gf2::{ang, fq_one_set, mu_subgroup, Embedding, FieldContext, FieldElem};
use crate::poly::{self, roots_in_field, UPoly};
use crate::report::CheckReport;
use crate::splitting::{c_plus_a, SplitFrame};

fn require_n(n: u32, max: u32) -> Result<()> {
    if !(2..=max).contains(&n) {
        return Err(Error::InvalidArgument(format!("need 2 <= n <= {max}, got {n}")));
    }
    Ok(())
}

/// The product side `prod_w (D_(q+1)(wX) + Y)` over `F_q^x`.
pub fn main_identity_lhs(n: u32) -> Result<BiPoly> {
    require_n(n, 8)?;
    let ctx = FieldContext::of_degree(n)?;
    let support = dickson_gf2((1usize << n) + 1).support();
    let factors = ctx
        .nonzero_elements()
        .map(|w| {
            let top = support.last().copied().unwrap_or(0);
            let mut v = vec![UPoly::zero(&ctx); top + 1];
            for &e in &support {
                v[e] = UPoly::constant(&ctx, ctx.pow(w, e as u128));
            }
            v[0] = v[0].add(&UPoly::x(&ctx));
            BiPoly::new(&ctx, v)
        })
        .collect();
    Ok(product_tree(&ctx, factors))
}

/// `X^(q^2-1) + (sum_i Y^(q-2^i)) X^(q-1) + Y^(q-1)`; `drop_last` removes the
/// `Y^(q-1)` term.
pub fn main_identity_rhs(n: u32, drop_last: bool) -> Result<BiPoly> {
    require_n(n, 8)?;
    let ctx = FieldContext::of_degree(n)?;
    let q = 1usize << n;
    let middle: Vec<usize> = (1..=n).map(|i| q - (1 << i)).collect();
    let mut v = vec![UPoly::zero(&ctx); q * q];
    v[q * q - 1] = UPoly::one(&ctx);
    v[q - 1] = UPoly::from_exponents(&ctx, &middle);
    if !drop_last {
        v[0] = UPoly::from_exponents(&ctx, &[q - 1]);
    }
    Ok(BiPoly::new(&ctx, v))
}

pub fn main_identity_sides(n: u32) -> Result<(BiPoly, BiPoly)> {
    Ok((main_identity_lhs(n)?, main_identity_rhs(n, false)?))
}

pub fn verify_main_identity(n: u32) -> Result<bool> {
    let (lhs, rhs) = main_identity_sides(n)?;
    Ok(lhs == rhs)
}

fn first_difference(lhs: &BiPoly, rhs: &BiPoly) -> Option<String> {
    let len = lhs.coeffs().len().max(rhs.coeffs().len());
    (0..len)
        .find(|&i| lhs.coeff(i) != rhs.coeff(i))
        .map(|i| format!("X^{i}: lhs {} vs rhs {}", lhs.coeff(i), rhs.coeff(i)))
}

/// Plug `X = <zeta u>/w`, `Y = <u^(q+1)>` into the product side inside
/// `GF(q^4)` for a random `u` outside `F_(q^2)`, and check the `q^2-1`
/// values are distinct.
fn root_set_failures(n: u32, lhs: &BiPoly, seed: u64) -> Result<Vec<String>> {
    let q = 1u128 << n;
    let fq = lhs.ctx().clone();
    let big = FieldContext::of_degree(4 * n)?;
    let emb = Embedding::cached(&fq, &big)?;
    let lhs = lhs.embed(&emb)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = loop {
        let u = big.random_nonzero(&mut rng);
        if big.pow(u, q * q) != u {
            break u;
        }
    };
    let y = ang(&big, big.pow(u, q + 1))?;
    let mut values = Vec::new();
    let mut bad = Vec::new();
    for zeta in mu_subgroup(n, &big)? {
        let num = ang(&big, big.mul(zeta, u))?;
        for w in fq.nonzero_elements() {
            let x = big.div(num, emb.apply(w)?)?;
            if !lhs.eval(x, y).is_zero() {
                bad.push(format!("product side nonzero at zeta={zeta}, w={w}, u={u}"));
            }
            values.push(x);
        }
    }
    let total = values.len();
    values.sort();
    values.dedup();
    if values.len() != total || total as u128 != q * q - 1 {
        bad.push(format!("{} distinct root values out of {total}, u={u}", values.len()));
    }
    Ok(bad)
}

pub fn check_main_identity(n: u32, seed: u64, mutate: bool) -> Result<CheckReport> {
    require_n(n, 8)?;
    CheckReport::new("main-identity")
        .with_n(n)
        .param("seed", seed)
        .param("mutate", mutate)
        .run(|rep| {
            let lhs = main_identity_lhs(n)?;
            let rhs = main_identity_rhs(n, mutate)?;
            let q = 1usize << n;
            rep.record("x_degree", lhs.x_degree());
            if let Some(diff) = first_difference(&lhs, &rhs) {
                rep.fail(diff);
            }
            let ctx = lhs.ctx();
            let t_rev_y2 = t_rev_poly(n)?.to_upoly(ctx).compose(&UPoly::from_exponents(ctx, &[2]));
            rep.require(rhs.coeff(q - 1) == t_rev_y2, || "middle coefficient differs from T_rev(Y^2)".into());
            rep.require(lhs.coeff(0) == UPoly::from_exponents(ctx, &[q - 1]), || {
                format!("product side at X=0 is {}", lhs.coeff(0))
            });
            if n <= 3 {
                for msg in root_set_failures(n, &lhs, seed)? {
                    rep.fail(msg);
                }
            }
            Ok(())
        })
}

/// Both sides of `prod_(c, j) (c y^2 + y + j/c) = 1 + (y^q + y)^(q-1)`;
/// `drop_one` removes the constant on the right.
pub fn cj_product_sides(n: u32, drop_one: bool) -> Result<(UPoly, UPoly)> {
    require_n(n, 8)?;
    let ctx = FieldContext::of_degree(n)?;
    let js = fq_one_set(n, &ctx)?;
    let mut factors = Vec::new();
    for c in ctx.nonzero_elements() {
        for &j in &js {
            factors.push(UPoly::new(&ctx, vec![ctx.div(j, c)?, ctx.one(), c]));
        }
    }
    let lhs = poly::product_tree(&ctx, factors);
    let q = 1usize << n;
    let mut rhs = UPoly::from_exponents(&ctx, &[1, q]).pow((q - 1) as u64);
    if !drop_one {
        rhs = rhs.add(&UPoly::one(&ctx));
    }
    Ok((lhs, rhs))
}

pub fn verify_cj_product(n: u32) -> Result<bool> {
    let (lhs, rhs) = cj_product_sides(n, false)?;
    Ok(lhs == rhs)
}

pub fn check_cj_product(n: u32, mutate: bool) -> Result<CheckReport> {
    require_n(n, 8)?;
    CheckReport::new("cj-product")
        .with_n(n)
        .param("mutate", mutate)
        .run(|rep| {
            let (lhs, rhs) = cj_product_sides(n, mutate)?;
            let q = 1usize << n;
            rep.record("degree", lhs.degree());
            rep.require(lhs.degree() == Some(q * (q - 1)), || format!("product degree {:?}", lhs.degree()));
            rep.require(lhs == rhs, || {
                let i = (0..=q * q).find(|&i| lhs.coeff(i) != rhs.coeff(i)).unwrap_or(0);
                format!("coefficient of y^{i}: {} vs {}", lhs.coeff(i), rhs.coeff(i))
            });
            let ctx = lhs.ctx();
            for y in ctx.elements() {
                rep.require(lhs.eval(y) == rhs.eval(y), || format!("sides differ at y={y}"));
            }
            Ok(())
        })
}

fn validate_cj(ctx: &FieldContext, c: FieldElem, j: FieldElem) -> Result<()> {
    ctx.check(c)?;
    ctx.check(j)?;
    if c.is_zero() {
        return Err(Error::InvalidArgument("c must be nonzero".into()));
    }
    if ctx.trace_abs(j) != 1 {
        return Err(Error::InvalidArgument(format!("j={j} must have absolute trace 1")));
    }
    Ok(())
}

/// `e(y, c, j) = (c y^2 + y + j/c)^(q+1) / (y^q + y)^2` over `ctx = GF(q)`.
pub fn e_rational(ctx: &FieldContext, c: FieldElem, j: FieldElem) -> Result<RationalFn> {
    validate_cj(ctx, c, j)?;
    let q = 1usize << ctx.degree();
    let inner = UPoly::new(ctx, vec![ctx.div(j, c)?, ctx.one(), c]);
    RationalFn::new(inner.pow(q as u64 + 1), UPoly::from_exponents(ctx, &[2, 2 * q]))
}

/// Failures of the shift, scaling and inversion laws over all
/// `b, c in F_q^x`, `j in F_(q,1)`. The mutation drops `(bc)^2` from the
/// shifted `j`.
pub fn e_transformation_failures(n: u32, mutate: bool) -> Result<Vec<String>> {
    require_n(n, 6)?;
    let ctx = FieldContext::of_degree(n)?;
    let js = fq_one_set(n, &ctx)?;
    let cs: Vec<FieldElem> = ctx.nonzero_elements().collect();
    let one = UPoly::one(&ctx);
    let y = UPoly::x(&ctx);
    let per_c: Vec<Vec<String>> = cs
        .par_iter()
        .map(|&c| -> Result<Vec<String>> {
            let mut bad = Vec::new();
            for &j in &js {
                let e = e_rational(&ctx, c, j)?;
                let inverted = e.compose(&one, &y)?;
                if !inverted.same_as(&e_rational(&ctx, ctx.div(j, c)?, j)?) {
                    bad.push(format!("inversion law fails at c={c}, j={j}"));
                }
                for b in ctx.nonzero_elements() {
                    let bc = ctx.mul(b, c);
                    let mut j2 = ctx.add(j, bc);
                    if !mutate {
                        j2 = ctx.add(j2, ctx.square(bc));
                    }
                    if ctx.trace_abs(j2) != 1 {
                        bad.push(format!("trace of shifted j is 0 at b={b}, c={c}, j={j}"));
                        continue;
                    }
                    let shifted = e.compose(&UPoly::new(&ctx, vec![b, ctx.one()]), &one)?;
                    if !shifted.same_as(&e_rational(&ctx, c, j2)?) {
                        bad.push(format!("shift law fails at b={b}, c={c}, j={j}"));
                    }
                    let scaled = e.compose(&UPoly::new(&ctx, vec![ctx.zero(), b]), &one)?;
                    if !scaled.same_as(&e_rational(&ctx, bc, j)?) {
                        bad.push(format!("scaling law fails at b={b}, c={c}, j={j}"));
                    }
                }
            }
            Ok(bad)
        })
        .collect::<Result<_>>()?;
    Ok(per_c.into_iter().flatten().collect())
}

pub fn verify_e_transformations(n: u32) -> Result<bool> {
    Ok(e_transformation_failures(n, false)?.is_empty())
}

pub fn check_e_transformations(n: u32, mutate: bool) -> Result<CheckReport> {
    require_n(n, 6)?;
    CheckReport::new("e-transforms")
        .with_n(n)
        .param("mutate", mutate)
        .run(|rep| {
            let bad = e_transformation_failures(n, mutate)?;
            rep.record("failures", bad.len());
            if let Some(first) = bad.into_iter().next() {
                rep.fail(first);
            }
            Ok(())
        })
}

/// Failures of `prod_(c, j) (X + e(y, c, j)) = C(X) + a` in the frame's
/// ambient field, plus `prod e = a` and the match with the roots of
/// `C(X) + a`. The mutation perturbs `a` by one.
pub fn root_product_failures(frame: &SplitFrame, mutate: bool) -> Result<Vec<String>> {
    let amb = frame.ambient();
    let mut a = frame.a_ambient();
    if mutate {
        a = amb.add(a, amb.one());
    }
    let target = c_plus_a(frame.n, a, amb)?;
    let es: Vec<FieldElem> = frame.e_table()?.into_iter().map(|(_, _, e)| e).collect();
    let product = poly::product_tree(amb, es.iter().map(|&e| UPoly::new(amb, vec![e, amb.one()])).collect());
    let mut bad = Vec::new();
    if product != target {
        bad.push(format!("prod (X + e) = {product}, expected {target}"));
    }
    let all = es.iter().fold(amb.one(), |acc, &e| amb.mul(acc, e));
    if all != a {
        bad.push(format!("prod e = {all}, expected a = {a}"));
    }
    let mut sorted = es.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != es.len() {
        bad.push("e(y, c, j) values are not distinct".into());
    }
    if sorted != roots_in_field(&target, 0)? {
        bad.push("e values differ from the roots of C(X) + a".into());
    }
    Ok(bad)
}

pub fn verify_root_product(frame: &SplitFrame) -> Result<bool> {
    Ok(root_product_failures(frame, false)?.is_empty())
}

pub fn check_root_product(frame: &SplitFrame, mutate: bool) -> Result<CheckReport> {
    CheckReport::new("root-product")
        .with_n(frame.n)
        .param("k", frame.k)
        .param("a", frame.a.to_string())
        .param("mutate", mutate)
        .run(|rep| {
            rep.record("ambient_degree", frame.ambient().degree());
            for msg in root_product_failures(frame, mutate)? {
                rep.fail(msg);
            }
            Ok(())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitting::build_frame;

    #[test]
    fn main_identity_small() {
        let rhs = main_identity_rhs(2, false).unwrap();
        let ctx = rhs.ctx();
        assert_eq!(rhs.x_degree(), Some(15));
        assert_eq!(rhs.coeff(3), UPoly::from_exponents(ctx, &[0, 2]));
        assert_eq!(rhs.coeff(0), UPoly::from_exponents(ctx, &[3]));
        assert!(verify_main_identity(2).unwrap());
        assert!(verify_main_identity(3).unwrap());
        assert!(check_main_identity(2, 7, false).unwrap().pass);
        assert!(!check_main_identity(2, 7, true).unwrap().pass);
    }

    #[test]
    fn cj_product_small() {
        for n in 2..=4 {
            assert!(verify_cj_product(n).unwrap());
        }
        assert!(!check_cj_product(2, true).unwrap().pass);
    }

    #[test]
    fn e_rational_shape() {
        let ctx = FieldContext::of_degree(2).unwrap();
        let j = fq_one_set(2, &ctx).unwrap()[0];
        let e = e_rational(&ctx, ctx.one(), j).unwrap();
        assert_eq!(e.num.degree(), Some(10));
        assert_eq!(e.den, UPoly::from_exponents(&ctx, &[2, 8]));
        assert!(e_rational(&ctx, ctx.zero(), j).is_err());
        assert!(e_rational(&ctx, ctx.one(), ctx.zero()).is_err());
    }

    #[test]
    fn e_rational_matches_frame() {
        let f2 = FieldContext::of_degree(1).unwrap();
        let frame = build_frame(2, 1, f2.one(), 0).unwrap();
        let emb = frame.fq_embedding();
        for (c, j, e) in frame.e_table().unwrap() {
            let r = e_rational(frame.fq(), c, j).unwrap();
            let num = r.num.embed(emb).unwrap().eval(frame.y);
            let den = r.den.embed(emb).unwrap().eval(frame.y);
            assert_eq!(frame.ambient().div(num, den).unwrap(), e);
        }
    }

    #[test]
    fn transformations_small() {
        assert!(verify_e_transformations(2).unwrap());
        assert!(verify_e_transformations(3).unwrap());
        assert!(!check_e_transformations(2, true).unwrap().pass);
    }

    #[test]
    fn root_product_small() {
        let f2 = FieldContext::of_degree(1).unwrap();
        for n in [2, 3] {
            let frame = build_frame(n, 1, f2.one(), 0).unwrap();
            assert!(verify_root_product(&frame).unwrap());
            assert!(!check_root_product(&frame, true).unwrap().pass);
        }
    }
}
