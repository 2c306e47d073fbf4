use serde::Serialize;

use super::frame::SplitFrame;
use crate::dickson::{dickson_gf2, t_poly};
use crate::error::{Error, Result};
use crate::gf2::{ang, mu_subgroup, FieldElem};
use crate::poly::{roots_in_field, UPoly};
use crate::report::CheckReport;

/// The data tying a root `e` of `C(x) + a` to the frame: `u` with
/// `<u^(q+1)> = 1/e`, `zeta`, `rho` in `mu_{q+1}`, and the labels `c`, `d`
/// in `F_q` (stored as ambient elements).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SevenWitness {
    pub e: FieldElem,
    pub u: FieldElem,
    pub zeta: FieldElem,
    pub rho: FieldElem,
    pub c: FieldElem,
    pub d: FieldElem,
    pub lambda: FieldElem,
}

/// Construct `u`, `zeta`, `rho` for the root `e`.
///
/// `u` is taken among the roots of `U^(2(q+1)) + U^(q+1)/e + 1` in the frame's
/// ambient field with `r^2 = lambda <u>^(q-1)`; of the two (`u` and `1/u`)
/// the smaller encoding is used.
pub fn seven_witness(frame: &SplitFrame, e: FieldElem, seed: u64) -> Result<SevenWitness> {
    let f = frame.ambient();
    let n = frame.n;
    let q = frame.q() as usize;
    let qq = q as u128;
    if !super::frame::c_plus_a(n, frame.a_ambient(), f)?.eval(e).is_zero() {
        return Err(Error::InvalidArgument(format!("{e} is not a root of C(x) + a")));
    }
    let lambda = f.mul(e, f.square(t_poly(n)?.to_upoly(f).eval(e)));
    let mut coeffs = vec![f.zero(); 2 * q + 3];
    coeffs[0] = f.one();
    coeffs[q + 1] = f.inv(e)?;
    coeffs[2 * q + 2] = f.one();
    let u_poly = UPoly::new(f, coeffs);
    let candidates = roots_in_field(&u_poly, seed)?;
    if candidates.len() != 2 * (q + 1) {
        return Err(Error::Internal(format!(
            "U^(2(q+1)) + U^(q+1)/e + 1 has {} roots in GF(2^{}), expected {}",
            candidates.len(),
            f.degree(),
            2 * (q + 1)
        )));
    }
    let matches = |x: FieldElem, target: FieldElem| -> Result<bool> {
        Ok(f.mul(lambda, f.pow(ang(f, x)?, qq - 1)) == target)
    };
    let roots = frame.roots();
    let (r2, r02, r12) = (f.square(roots[0]), f.square(roots[1]), f.square(roots[2]));
    let mut u = None;
    for &cand in &candidates {
        if matches(cand, r2)? {
            u = Some(cand);
            break;
        }
    }
    let u = u.ok_or_else(|| Error::Internal(format!("no u aligns with r for e = {e}")))?;
    let mu = mu_subgroup(n, f)?;
    let find = |target: FieldElem| -> Result<FieldElem> {
        let mut hit = None;
        for &z in mu.iter().filter(|z| !z.is_one()) {
            if matches(f.mul(f.square(z), u), target)? {
                if hit.is_some() {
                    return Err(Error::Internal("two elements of mu_(q+1) align with one root".into()));
                }
                hit = Some(z);
            }
        }
        hit.ok_or_else(|| Error::Internal(format!("no element of mu_(q+1) aligns with {target}")))
    };
    let zeta = find(r02)?;
    let rho = find(r12)?;
    let c = f.div(ang(f, f.div(zeta, rho)?)?, f.mul(ang(f, zeta)?, ang(f, rho)?))?;
    let d = f.inv(ang(f, zeta)?)?;
    Ok(SevenWitness { e, u, zeta, rho, c, d, lambda })
}

/// Check the seven formulas plus `d in F_{q,1}` and the setup relations.
/// `mutate` perturbs the right side of formula (7). Returns the failures.
pub fn seven_formula_failures(frame: &SplitFrame, w: &SevenWitness, mutate: bool) -> Result<Vec<String>> {
    let f = frame.ambient();
    let q = frame.q() as u128;
    let y = frame.y;
    let roots = frame.roots();
    let SevenWitness { e, u, zeta, rho, c, d, lambda } = *w;
    let a = |x| ang(f, x);
    let mut bad = Vec::new();
    let mut req = |ok: bool, what: &str| {
        if !ok {
            bad.push(format!("e={e}: {what}"));
        }
    };

    req(a(f.pow(u, q + 1))? == f.inv(e)?, "<u^(q+1)> = 1/e");
    req(f.mul(lambda, f.pow(a(u)?, q - 1)) == f.square(roots[0]), "r^2 = lambda <u>^(q-1)");
    req(f.mul(lambda, f.pow(a(f.mul(f.square(zeta), u))?, q - 1)) == f.square(roots[1]), "r0^2 = lambda <zeta^2 u>^(q-1)");
    req(f.mul(lambda, f.pow(a(f.mul(f.square(rho), u))?, q - 1)) == f.square(roots[2]), "r1^2 = lambda <rho^2 u>^(q-1)");
    req(zeta != rho && !zeta.is_one() && !rho.is_one(), "zeta, rho distinct and != 1");

    let zr = f.div(zeta, rho)?;
    // (1)
    let rhs1 = f.div(
        f.mul(a(f.square(rho))?, a(f.mul(f.square(zeta), u))?),
        f.mul(a(f.square(zr))?, a(u)?),
    )?;
    req(f.square(y) == rhs1, "formula (1)");
    // (2)
    let rhs2 = f.div(
        f.mul(a(rho)?, f.add(f.mul(zeta, u), f.inv(zeta)?)),
        f.mul(a(zr)?, f.add(u, f.one())),
    )?;
    req(y == rhs2, "formula (2)");
    // (3)
    let azr_y = f.mul(a(zr)?, y);
    let rhs3 = f.div(f.add(azr_y, f.div(a(rho)?, zeta)?), f.add(azr_y, f.mul(a(rho)?, zeta)))?;
    req(u == rhs3, "formula (3)");
    // (4)
    let cy = f.mul(c, y);
    let quad = f.add(f.add(f.square(cy), cy), f.square(d));
    req(a(u)? == f.inv(quad)?, "formula (4)");
    // (5)
    let dq1 = dickson_gf2(q as usize + 1).to_upoly(f);
    req(f.inv(e)? == dq1.eval(f.inv(quad)?), "formula (5)");
    // (6)
    let xi2 = f.square(f.add(f.pow(y, q), y));
    let rhs6 = f.div(a(f.pow(u, q + 1))?, f.mul(f.square(c), f.pow(a(u)?, q + 1)))?;
    req(xi2 == rhs6, "formula (6)");
    // (7)
    let inner = f.add(f.add(f.mul(c, f.square(y)), y), f.div(f.square(d), c)?);
    let mut rhs7 = f.div(f.pow(inner, q + 1), xi2)?;
    if mutate {
        rhs7 = f.add(rhs7, f.one());
    }
    req(e == rhs7, "formula (7)");

    let c_fq = frame.fq_from_ambient(c)?;
    let d_fq = frame.fq_from_ambient(d)?;
    req(c_fq.is_some_and(|x| !x.is_zero()), "c in F_q^x");
    req(d_fq.is_some_and(|x| frame.fq().trace_abs(x) == 1), "d in F_(q,1)");
    if let (Some(c_fq), Some(d_fq)) = (c_fq, d_fq) {
        let j = frame.fq().square(d_fq);
        req(frame.e_root(c_fq, j)? == e, "e = e(y, c, d^2)");
    }
    Ok(bad)
}

/// `{lambda <zeta u>^(q-1)}` is the root set of `x^(q+1) + a^2 x + a^2`,
/// which is `{r_w^2}`.
pub fn verify_e_relation(frame: &SplitFrame, w: &SevenWitness) -> Result<bool> {
    let f = frame.ambient();
    let q = frame.q() as u128;
    let mut got = Vec::new();
    for z in mu_subgroup(frame.n, f)? {
        got.push(f.mul(w.lambda, f.pow(ang(f, f.mul(z, w.u))?, q - 1)));
    }
    got.sort();
    let a2 = f.square(frame.a_ambient());
    let poly = super::frame::qplus1_poly(frame.n, a2, f);
    let all_roots = got.iter().all(|&x| poly.eval(x).is_zero());
    let mut squares: Vec<FieldElem> = frame.roots().iter().map(|&r| f.square(r)).collect();
    squares.sort();
    let distinct = got.windows(2).all(|p| p[0] != p[1]);
    Ok(all_roots && distinct && got == squares && got.len() as u128 == q + 1)
}

/// Witness construction and all formulas for every root of `C(x) + a`.
pub fn check_seven_formulas(frame: &SplitFrame, seed: u64, mutate: bool) -> Result<CheckReport> {
    CheckReport::new("seven-formulas")
        .with_n(frame.n)
        .param("k", frame.k)
        .param("a", frame.a.to_string())
        .param("seed", seed)
        .param("mutate", mutate)
        .run(|rep| {
            let table = frame.e_table()?;
            for &(_, _, e) in &table {
                let w = seven_witness(frame, e, seed)?;
                for msg in seven_formula_failures(frame, &w, mutate)? {
                    rep.fail(msg);
                }
                rep.require(verify_e_relation(frame, &w)?, || format!("e={e}: root set of x^(q+1)+a^2x+a^2 differs"));
            }
            rep.record("roots", table.len());
            rep.record("ambient_degree", frame.ambient().degree());
            Ok(())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::FieldContext;
    use crate::splitting::build_frame;

    #[test]
    fn all_formulas_hold_for_the_quintic() {
        let f2 = FieldContext::of_degree(1).unwrap();
        let frame = build_frame(2, 1, f2.one(), 0).unwrap();
        let rep = check_seven_formulas(&frame, 0, false).unwrap();
        assert!(rep.pass, "{rep:?}");
        let rep = check_seven_formulas(&frame, 0, true).unwrap();
        assert!(!rep.pass);
    }
}
