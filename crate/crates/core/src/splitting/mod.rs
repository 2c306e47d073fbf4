//! The joint splitting scene of `x^(q+1) + a x + a` and `C(x) + a`, and the
//! checks built on it: splitting-field equality, factorization-type
//! correspondence, root counts, the permutation property, and Frobenius
//! orbit shapes.

mod frame;
mod witness;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

pub use frame::{build_frame, c_plus_a, qplus1_poly, qplus1_reciprocal_poly, SplitFrame};
pub use witness::{check_seven_formulas, seven_formula_failures, seven_witness, verify_e_relation, SevenWitness};

use crate::error::{Error, Result};
use crate::gf2::numth::gcd;
use crate::gf2::{FieldContext, FieldElem};
use crate::pgl2::{Pgl2, ProjPoint};
use crate::poly::{fact_type, splitting_degree, FactType};
use crate::report::CheckReport;

fn base_field(k: u32) -> Result<FieldContext> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    FieldContext::of_degree(k)
}

fn require_n(n: u32) -> Result<()> {
    if !(2..=8).contains(&n) {
        return Err(Error::InvalidArgument(format!("need 2 <= n <= 8, got {n}")));
    }
    Ok(())
}

/// The values of `a` to scan: the given one, or all of `GF(2^k)^x`.
pub fn a_values(k: u32, a: Option<FieldElem>) -> Result<Vec<FieldElem>> {
    let base = base_field(k)?;
    match a {
        Some(a) => {
            base.check(a)?;
            if a.is_zero() {
                return Err(Error::InvalidArgument("a must be nonzero".into()));
            }
            Ok(vec![a])
        }
        None => {
            if k > 20 {
                return Err(Error::InvalidArgument("exhaustive scans need k <= 20".into()));
            }
            Ok(base.nonzero_elements().collect())
        }
    }
}

/// Splitting degrees over `GF(2^k)` of the polynomials whose splitting
/// fields coincide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitDegrees {
    pub a: String,
    pub qplus1_a: u64,
    pub qplus1_a2: u64,
    pub qplus1_a4: u64,
    pub qplus1_reciprocal: u64,
    pub c_plus_a: u64,
}

impl SplitDegrees {
    pub fn all_equal(&self) -> bool {
        let d = self.qplus1_a;
        [self.qplus1_a2, self.qplus1_a4, self.qplus1_reciprocal, self.c_plus_a].iter().all(|&x| x == d)
    }
}

pub fn splitfield_degrees(n: u32, k: u32, a: FieldElem, seed: u64) -> Result<SplitDegrees> {
    require_n(n)?;
    let base = base_field(k)?;
    let a2 = base.square(a);
    let a4 = base.square(a2);
    Ok(SplitDegrees {
        a: a.to_string(),
        qplus1_a: splitting_degree(&qplus1_poly(n, a, &base), seed)?,
        qplus1_a2: splitting_degree(&qplus1_poly(n, a2, &base), seed)?,
        qplus1_a4: splitting_degree(&qplus1_poly(n, a4, &base), seed)?,
        qplus1_reciprocal: splitting_degree(&qplus1_reciprocal_poly(n, a, &base)?, seed)?,
        c_plus_a: splitting_degree(&c_plus_a(n, a, &base)?, seed)?,
    })
}

pub fn splitfield_equal(n: u32, k: u32, a: FieldElem, seed: u64) -> Result<bool> {
    Ok(splitfield_degrees(n, k, a, seed)?.all_equal())
}

pub fn check_splitfield(n: u32, k: u32, a: Option<FieldElem>, seed: u64, mutate: bool) -> Result<CheckReport> {
    let values = a_values(k, a)?;
    require_n(n)?;
    CheckReport::new("splitfield")
        .with_n(n)
        .param("k", k)
        .param("seed", seed)
        .param("mutate", mutate)
        .run(|rep| {
            let rows: Vec<SplitDegrees> = values
                .par_iter()
                .map(|&a| splitfield_degrees(n, k, a, seed))
                .collect::<Result<_>>()?;
            for row in &rows {
                let ok = row.all_equal() && !(mutate && row.c_plus_a == row.qplus1_a);
                rep.require(ok, || format!("a={}: degrees {row:?}", row.a));
            }
            rep.record("a_count", rows.len());
            if rows.len() <= 16 {
                rep.record("rows", &rows);
            }
            Ok(())
        })
}

/// Which of the four orbit cases applies, by the number of roots of
/// `x^(q+1) + x + 1/a` in the base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseId {
    AllLinear,
    TwoRoots,
    OneRoot,
    NoRoots,
}

impl CaseId {
    pub fn roman(self) -> &'static str {
        match self {
            CaseId::AllLinear => "i",
            CaseId::TwoRoots => "ii",
            CaseId::OneRoot => "iii",
            CaseId::NoRoots => "iv",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Correspondence {
    pub a: String,
    pub f_type: FactType,
    pub c_type: FactType,
    /// Only classified when `n | k`.
    pub case: Option<CaseId>,
    pub delta: Option<u32>,
    pub violation: Option<String>,
}

/// Shapes forced on `(f, C + a)` given the number of linear factors of `f`.
/// Returns the case, `delta`, and a violation message if any.
pub fn classify_pair(n: u32, f: &FactType, c: &FactType) -> (CaseId, Option<u32>, Option<String>) {
    let q = 1u32 << n;
    let nonlinear = |t: &FactType| -> Vec<u32> { t.degrees().iter().copied().filter(|&d| d != 1).collect() };
    let uniform = |v: &[u32]| -> Option<u32> {
        let first = *v.first()?;
        v.iter().all(|&d| d == first).then_some(first)
    };
    match f.linear_count() {
        l if l >= 3 => {
            let ok = nonlinear(f).is_empty() && nonlinear(c).is_empty();
            (CaseId::AllLinear, Some(1), (!ok).then(|| format!("case (i) expects all linear, got {f} / {c}")))
        }
        2 => {
            let rest = nonlinear(f);
            let delta = uniform(&rest);
            let ok = delta.is_some_and(|dl| {
                (q - 1).is_multiple_of(dl) && c.linear_count() == 0 && uniform(c.degrees()) == Some(dl)
            });
            (CaseId::TwoRoots, delta, (!ok).then(|| format!("case (ii) shape violated: {f} / {c}")))
        }
        1 => {
            let ok = f.count(2) as u32 == q / 2
                && c.linear_count() as u32 == q / 2
                && c.count(2) as u32 == (q * q - 2 * q) / 4
                && c.degrees().len() as u32 == q / 2 + (q * q - 2 * q) / 4;
            (CaseId::OneRoot, Some(2), (!ok).then(|| format!("case (iii) shape violated: {f} / {c}")))
        }
        _ => {
            let delta = uniform(f.degrees());
            let ok = delta.is_some_and(|dl| {
                (q + 1).is_multiple_of(dl)
                    && c.linear_count() == 1
                    && uniform(&nonlinear(c)) == Some(dl)
            });
            (CaseId::NoRoots, delta, (!ok).then(|| format!("case (iv) shape violated: {f} / {c}")))
        }
    }
}

pub fn correspond(n: u32, k: u32, a: FieldElem, seed: u64) -> Result<Correspondence> {
    require_n(n)?;
    let base = base_field(k)?;
    base.check(a)?;
    if a.is_zero() {
        return Err(Error::InvalidArgument("a must be nonzero".into()));
    }
    let f_type = fact_type(&qplus1_reciprocal_poly(n, a, &base)?, seed)?;
    let c_type = fact_type(&c_plus_a(n, a, &base)?, seed)?;
    let (case, delta, violation) = if k.is_multiple_of(n) {
        let (case, delta, violation) = classify_pair(n, &f_type, &c_type);
        (Some(case), delta, violation)
    } else {
        (None, None, None)
    };
    Ok(Correspondence { a: a.to_string(), f_type, c_type, case, delta, violation })
}

pub fn check_correspond(n: u32, k: u32, a: Option<FieldElem>, seed: u64, mutate: bool) -> Result<CheckReport> {
    let values = a_values(k, a)?;
    require_n(n)?;
    CheckReport::new("correspond")
        .with_n(n)
        .param("k", k)
        .param("seed", seed)
        .param("mutate", mutate)
        .run(|rep| {
            let rows: Vec<Correspondence> = values
                .par_iter()
                .map(|&a| correspond(n, k, a, seed))
                .collect::<Result<_>>()?;
            let mut cases: BTreeMap<String, usize> = BTreeMap::new();
            for row in &rows {
                if let Some(v) = &row.violation {
                    rep.fail(format!("a={}: {v}", row.a));
                }
                if mutate && row.case.is_some() {
                    // pretend C + a is irreducible
                    let (_, _, v) = classify_pair(n, &row.f_type, &FactType::new(vec![row.c_type.total()]));
                    if let Some(v) = v {
                        rep.fail(format!("a={}: {v}", row.a));
                    }
                }
                let key = row.case.map_or("unclassified", CaseId::roman).to_owned();
                *cases.entry(key).or_default() += 1;
            }
            rep.record("cases", &cases);
            rep.record("classified", k.is_multiple_of(n));
            if rows.len() <= 16 {
                rep.record("rows", &rows);
            }
            Ok(())
        })
}

/// The admissible `(x^5 + x + 1/a, x(1+x)^5 + a)` type pairs over `GF(2^k)`.
pub fn quintic_rows(k: u32) -> Vec<(FactType, FactType)> {
    let t = |v: &[u32]| FactType::new(v.to_vec());
    if k.is_multiple_of(2) {
        vec![
            (t(&[1, 1, 1, 1, 1]), t(&[1, 1, 1, 1, 1, 1])),
            (t(&[1, 1, 3]), t(&[3, 3])),
            (t(&[1, 2, 2]), t(&[1, 1, 2, 2])),
            (t(&[5]), t(&[1, 5])),
        ]
    } else {
        vec![
            (t(&[1, 1, 1, 2]), t(&[2, 2, 2])),
            (t(&[1, 4]), t(&[1, 1, 4])),
            (t(&[2, 3]), t(&[6])),
        ]
    }
}

pub fn quintic_pair(k: u32, a: FieldElem, seed: u64) -> Result<(FactType, FactType)> {
    let base = base_field(k)?;
    Ok((
        fact_type(&qplus1_reciprocal_poly(2, a, &base)?, seed)?,
        fact_type(&c_plus_a(2, a, &base)?, seed)?,
    ))
}

pub fn quintic_table(k: u32, seed: u64, mutate: bool) -> Result<CheckReport> {
    let values = a_values(k, None)?;
    CheckReport::new("quintic")
        .param("k", k)
        .param("seed", seed)
        .param("mutate", mutate)
        .run(|rep| {
            let rows = quintic_rows(if mutate { k + 1 } else { k });
            let pairs: Vec<(FactType, FactType)> = values
                .par_iter()
                .map(|&a| quintic_pair(k, a, seed))
                .collect::<Result<_>>()?;
            let mut seen: BTreeMap<String, usize> = BTreeMap::new();
            for (a, pair) in values.iter().zip(&pairs) {
                rep.require(rows.contains(pair), || format!("a={a}: unlisted pairing {} / {}", pair.0, pair.1));
                *seen.entry(format!("{} <-> {}", pair.0, pair.1)).or_default() += 1;
            }
            rep.record("observed", &seen);
            Ok(())
        })
}

/// `C(x)` at a point of `ctx`, computed as `x * T(x)^(q+1)` with
/// `T(x) = sum x^(2^i - 1)`.
pub fn c_eval(n: u32, ctx: &FieldContext, x: FieldElem) -> FieldElem {
    let mut t = ctx.zero();
    let mut p = ctx.one();
    for _ in 0..n {
        t = ctx.add(t, p);
        p = ctx.mul(ctx.square(p), x);
    }
    let tq = ctx.frobenius(t, n);
    ctx.mul(x, ctx.mul(tq, t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RootCounts {
    pub zero: u64,
    pub one: u64,
    pub half_q: u64,
    pub full: u64,
}

impl RootCounts {
    /// The closed forms for `F = F_(q^m)`.
    pub fn expected(n: u32, m: u32) -> Self {
        let q = 1u128 << n;
        let qm = q.pow(m);
        let qm1 = q.pow(m - 1);
        let zero = (q - 2) * (qm - 1) / (2 * (q - 1));
        if m.is_multiple_of(2) {
            RootCounts {
                zero: zero as u64,
                one: ((qm * q - q) / (2 * (q + 1))) as u64,
                half_q: qm1 as u64,
                full: ((qm1 - q) / (q * q - 1)) as u64,
            }
        } else {
            RootCounts {
                zero: zero as u64,
                one: ((qm * q + q) / (2 * (q + 1))) as u64,
                half_q: (qm1 - 1) as u64,
                full: ((qm1 - 1) / (q * q - 1)) as u64,
            }
        }
    }
}

/// Histogram of `C(x)` over `F_(q^m)`, then tallies by root count for each
/// `a != 0`. Unexpected counts are returned alongside.
pub fn root_count_distribution(n: u32, m: u32) -> Result<(RootCounts, BTreeMap<u64, u64>)> {
    require_n(n)?;
    if m == 0 || n * m > 16 {
        return Err(Error::InvalidArgument(format!("need 1 <= m and n*m <= 16, got n={n}, m={m}")));
    }
    let f = FieldContext::of_degree(n * m)?;
    let mut hist = vec![0u64; f.size() as usize];
    for x in f.elements() {
        hist[c_eval(n, &f, x).bits() as usize] += 1;
    }
    let q = 1u64 << n;
    let mut counts = RootCounts { zero: 0, one: 0, half_q: 0, full: 0 };
    let mut other = BTreeMap::new();
    for &h in &hist[1..] {
        match h {
            0 => counts.zero += 1,
            1 => counts.one += 1,
            x if x == q / 2 => counts.half_q += 1,
            x if x == q / 2 * (q - 1) => counts.full += 1,
            x => *other.entry(x).or_default() += 1,
        }
    }
    Ok((counts, other))
}

pub fn check_counts(n: u32, m: u32, mutate: bool) -> Result<CheckReport> {
    CheckReport::new("counts")
        .with_n(n)
        .param("m", m)
        .param("mutate", mutate)
        .run(|rep| {
            let (got, other) = root_count_distribution(n, m)?;
            let mut want = RootCounts::expected(n, m);
            if mutate {
                want.zero += 1;
            }
            rep.record("observed", got);
            rep.record("expected", want);
            rep.require(other.is_empty(), || format!("unexpected root counts {other:?}"));
            rep.require(got == want, || format!("observed {got:?} != expected {want:?}"));
            Ok(())
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PermResult {
    pub is_permutation: bool,
    pub predicted: bool,
}

/// Evaluate `C` on all of `GF(2^m)` and test bijectivity.
pub fn perm_check(n: u32, m: u32) -> Result<PermResult> {
    require_n(n)?;
    if !(1..=24).contains(&m) {
        return Err(Error::InvalidArgument(format!("need 1 <= m <= 24, got {m}")));
    }
    let f = FieldContext::of_degree(m)?;
    let size = f.size() as u64;
    let chunk = 1u64 << 12.min(m);
    let images: Vec<Vec<u64>> = (0..size.div_ceil(chunk))
        .into_par_iter()
        .map(|i| {
            (i * chunk..((i + 1) * chunk).min(size))
                .map(|b| c_eval(n, &f, f.from_bits(b).expect("in range")).bits())
                .collect()
        })
        .collect();
    let mut seen = vec![0u64; (size as usize).div_ceil(64)];
    let mut injective = true;
    for v in images.iter().flatten() {
        let (w, bit) = ((*v / 64) as usize, v % 64);
        if (seen[w] >> bit) & 1 == 1 {
            injective = false;
            break;
        }
        seen[w] |= 1 << bit;
    }
    Ok(PermResult {
        is_permutation: injective,
        predicted: gcd(2 * m as u64, n as u64) == 1,
    })
}

pub fn check_perm(n: u32, ms: &[u32], mutate: bool) -> Result<CheckReport> {
    CheckReport::new("permcheck")
        .with_n(n)
        .param("m", ms)
        .param("mutate", mutate)
        .run(|rep| {
            let mut rows = BTreeMap::new();
            for &m in ms {
                let r = perm_check(n, m)?;
                rep.require(r.is_permutation == (r.predicted != mutate), || {
                    format!("m={m}: permutation = {}, gcd(2m, n) = 1 is {}", r.is_permutation, r.predicted)
                });
                rows.insert(m.to_string(), r);
            }
            rep.record("results", rows);
            Ok(())
        })
}

/// Cycle lengths of `sigma` on a finite set given as a permutation table.
fn orbit_sizes(perm: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitData {
    pub f_orbits: FactType,
    pub c_orbits: FactType,
    pub case: CaseId,
    pub gamma: String,
}

/// Frobenius `x -> x^(2^k)` acting on both root sets of a frame with
/// `n | k`. Returns the orbit data and any shape violations.
pub fn orbit_structure(frame: &SplitFrame) -> Result<(OrbitData, Vec<String>)> {
    let (n, k) = (frame.n, frame.k);
    if k % n != 0 {
        return Err(Error::InvalidArgument(format!("orbit shapes need n | k, got n={n}, k={k}")));
    }
    let f = frame.ambient();
    let q = frame.q() as u32;
    let sigma = |x: FieldElem| f.frobenius(x, k);
    let index_of = |set: &[FieldElem], x: FieldElem| -> Result<usize> {
        set.iter()
            .position(|&v| v == x)
            .ok_or_else(|| Error::Internal(format!("Frobenius image {x} is not a root")))
    };
    let roots = frame.roots();
    let f_perm: Vec<usize> = roots.iter().map(|&r| index_of(roots, sigma(r))).collect::<Result<_>>()?;
    let es: Vec<FieldElem> = frame.e_table()?.into_iter().map(|(_, _, e)| e).collect();
    let c_perm: Vec<usize> = es.iter().map(|&e| index_of(&es, sigma(e))).collect::<Result<_>>()?;
    let f_orbits = FactType::new(orbit_sizes(&f_perm));
    let c_orbits = FactType::new(orbit_sizes(&c_perm));
    let mut bad = Vec::new();

    // gamma with sigma(r_w) = r_{gamma(w)}, and sigma(y) = gamma^-1 y
    let g = Pgl2::over(frame.fq())?;
    let pts = frame.points();
    let matches: Vec<_> = g
        .elements()
        .into_iter()
        .filter(|gamma| pts.iter().enumerate().all(|(i, &w)| roots[f_perm[i]] == frame.root(g.act(gamma, w))))
        .collect();
    let gamma = match matches.as_slice() {
        [one] => {
            if g.act_inverse_on(frame, one, frame.y)? != sigma(frame.y) {
                bad.push(format!("sigma(y) != gamma^-1 y for gamma = {one}"));
            }
            one.to_string()
        }
        _ => {
            bad.push(format!("{} elements of PGL2 realize sigma on the roots", matches.len()));
            String::new()
        }
    };

    let fixed_f = f_orbits.linear_count();
    let fixed_c = c_orbits.linear_count();
    let nonfixed = |t: &FactType| -> Vec<u32> { t.degrees().iter().copied().filter(|&d| d != 1).collect() };
    let uniform = |v: &[u32]| v.windows(2).all(|p| p[0] == p[1]);
    let case = match fixed_f {
        x if x >= 3 => {
            if fixed_f != (q + 1) as usize || !nonfixed(&c_orbits).is_empty() {
                bad.push("case (i): sigma fixes three roots but not everything".into());
            }
            CaseId::AllLinear
        }
        2 => {
            let rest = nonfixed(&f_orbits);
            let d = rest.first().copied().unwrap_or(1);
            if !uniform(&rest) || !(q - 1).is_multiple_of(d) || c_orbits.degrees().iter().any(|&s| s != d) {
                bad.push(format!("case (ii): orbits {f_orbits} / {c_orbits}"));
            }
            CaseId::TwoRoots
        }
        1 => {
            let half = (q / 2) as usize;
            if nonfixed(&f_orbits).iter().any(|&s| s != 2)
                || fixed_c != half
                || c_orbits.count(2) != half * (half - 1)
                || c_orbits.degrees().len() != half + half * (half - 1)
            {
                bad.push(format!("case (iii): orbits {f_orbits} / {c_orbits}"));
            }
            CaseId::OneRoot
        }
        _ => {
            let d = f_orbits.degrees()[0];
            if !uniform(f_orbits.degrees()) || !(q + 1).is_multiple_of(d) || fixed_c != 1 || nonfixed(&c_orbits).iter().any(|&s| s != d) {
                bad.push(format!("case (iv): orbits {f_orbits} / {c_orbits}"));
            }
            CaseId::NoRoots
        }
    };
    // orbits of sigma over the base field are the factor degrees over it
    let base = frame.base();
    let seed = 0;
    let ft = fact_type(&qplus1_poly(n, frame.a, base), seed)?;
    let ct = fact_type(&c_plus_a(n, frame.a, base)?, seed)?;
    if ft != f_orbits || ct != c_orbits {
        bad.push(format!("orbits {f_orbits} / {c_orbits} differ from factor types {ft} / {ct}"));
    }
    Ok((OrbitData { f_orbits, c_orbits, case, gamma }, bad))
}

pub fn check_orbit_structure(n: u32, k: u32, a: Option<FieldElem>, seed: u64, mutate: bool) -> Result<CheckReport> {
    let values = a_values(k, a)?;
    CheckReport::new("orbit-structure")
        .with_n(n)
        .param("k", k)
        .param("seed", seed)
        .param("mutate", mutate)
        .run(|rep| {
            let results: Vec<(String, OrbitData, Vec<String>)> = values
                .par_iter()
                .map(|&a| {
                    let frame = build_frame(n, k, a, seed)?;
                    let (data, bad) = orbit_structure(&frame)?;
                    Ok((a.to_string(), data, bad))
                })
                .collect::<Result<_>>()?;
            let mut cases: BTreeMap<&str, usize> = BTreeMap::new();
            for (a, data, bad) in &results {
                for msg in bad {
                    rep.fail(format!("a={a}: {msg}"));
                }
                // mutated expectation: both root sets have the same size
                if mutate && data.c_orbits.total() != data.f_orbits.total() {
                    rep.fail(format!("a={a}: {} roots of C(x)+a vs {}", data.c_orbits.total(), data.f_orbits.total()));
                }
                *cases.entry(data.case.roman()).or_default() += 1;
            }
            rep.record("cases", cases);
            Ok(())
        })
}

/// Roots of `x^(q+1) + a x + a` as a map from `P^1(F_q)`, for display.
pub fn frame_root_table(frame: &SplitFrame) -> Vec<(ProjPoint, FieldElem)> {
    frame.points().iter().copied().zip(frame.roots().iter().copied()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(k: u32) -> FieldContext {
        FieldContext::of_degree(k).unwrap()
    }

    #[test]
    fn splitfield_examples() {
        let d = splitfield_degrees(2, 1, gf(1).one(), 0).unwrap();
        assert_eq!(d.qplus1_a, 6);
        assert!(d.all_equal(), "{d:?}");
        assert!(check_splitfield(2, 2, None, 0, false).unwrap().pass);
        assert!(!check_splitfield(2, 2, None, 0, true).unwrap().pass);
    }

    #[test]
    fn correspond_examples() {
        let c = correspond(2, 2, gf(2).one(), 0).unwrap();
        assert_eq!(c.f_type, FactType::new(vec![1, 1, 3]));
        assert_eq!(c.c_type, FactType::new(vec![3, 3]));
        assert_eq!(c.case, Some(CaseId::TwoRoots));
        assert_eq!(c.delta, Some(3));
        assert!(c.violation.is_none());
        let raw = correspond(2, 1, gf(1).one(), 0).unwrap();
        assert_eq!(raw.case, None);
        let (case, _, v) = classify_pair(2, &FactType::new(vec![1, 2, 2]), &FactType::new(vec![1, 1, 2, 2]));
        assert_eq!(case, CaseId::OneRoot);
        assert!(v.is_none());
    }

    #[test]
    fn quintic_examples() {
        let (f, c) = quintic_pair(1, gf(1).one(), 0).unwrap();
        assert_eq!((f.to_string(), c.to_string()), ("[2,3]".into(), "[6]".into()));
        for k in 1..=3 {
            assert!(quintic_table(k, 0, false).unwrap().pass);
        }
        assert!(!quintic_table(1, 0, true).unwrap().pass);
    }

    #[test]
    fn root_counts_match_closed_forms() {
        let cases = [((2, 1), (1, 2, 0, 0)), ((2, 2), (5, 6, 4, 0)), ((3, 1), (3, 4, 0, 0)), ((3, 2), (27, 28, 8, 0))];
        for ((n, m), (z, o, h, f)) in cases {
            let (got, other) = root_count_distribution(n, m).unwrap();
            assert!(other.is_empty());
            assert_eq!(got, RootCounts { zero: z, one: o, half_q: h, full: f });
            assert_eq!(got, RootCounts::expected(n, m));
        }
    }

    #[test]
    fn permutation_examples() {
        let f2 = gf(1);
        assert_eq!(c_eval(3, &f2, f2.one()), f2.one());
        assert_eq!(perm_check(3, 1).unwrap(), PermResult { is_permutation: true, predicted: true });
        assert_eq!(perm_check(3, 3).unwrap(), PermResult { is_permutation: false, predicted: false });
        for m in 1..=3 {
            assert!(!perm_check(2, m).unwrap().is_permutation);
        }
    }

    #[test]
    fn orbit_shapes_over_gf4() {
        let rep = check_orbit_structure(2, 2, None, 0, false).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(!check_orbit_structure(2, 2, None, 0, true).unwrap().pass);
        assert!(check_orbit_structure(2, 1, None, 0, false).is_err());
    }
}
