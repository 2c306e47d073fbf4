use rayon::prelude::*;
use serde_json::{json, Value};

use mcm_core::dickson::{check_closed_forms, dickson_poly, verify_dickson_relations};
use mcm_core::identities::{check_cj_product, check_e_transformations, check_main_identity, check_root_product};
use mcm_core::pgl2::{check_class_counts, check_dihedral, check_stabilizer};
use mcm_core::poly::{factor, fact_type};
use mcm_core::report::CheckReport;
use mcm_core::splitting::{
    a_values, build_frame, check_correspond, check_counts, check_orbit_structure, check_perm,
    check_seven_formulas, check_splitfield, quintic_table, SplitFrame,
};
use mcm_core::{Error, FieldContext, FieldElem, Result, UPoly};

use crate::args::{CheckName, Cli, Command, Params};
use crate::output::{print_report, print_value};

pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidArgument(_)
        | Error::Parse(_)
        | Error::UnsupportedDegree(_)
        | Error::InvalidModulus { .. }
        | Error::NotASubfield { .. } => 2,
        _ => 1,
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Internal(format!("writing output: {e}"))
}

/// `5`, `1,3,5`, `1-10`, or a mix.
pub fn parse_m_list(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::Parse(format!("bad m list {s:?}"));
    let mut out = Vec::new();
    for part in s.split(',') {
        match part.split_once('-') {
            Some((lo, hi)) => {
                let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
                let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
                if lo > hi {
                    return Err(bad());
                }
                out.extend(lo..=hi);
            }
            None => out.push(part.trim().parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

fn parse_single_m(s: &Option<String>, default: u32) -> Result<u32> {
    match s {
        None => Ok(default),
        Some(s) => s.trim().parse().map_err(|_| Error::Parse(format!("bad m {s:?}"))),
    }
}

fn parse_a(k: u32, s: &str) -> Result<FieldElem> {
    FieldContext::of_degree(k)?.parse_elem(s)
}

fn a_choice(p: &Params, k: u32) -> Result<Option<FieldElem>> {
    p.a.as_deref().map(|s| parse_a(k, s)).transpose()
}

/// Build a frame for each `a` and fold the per-frame reports into one.
fn frame_sweep(
    name: &str,
    n: u32,
    k: u32,
    a: Option<FieldElem>,
    seed: u64,
    mutate: bool,
    check: impl Fn(&SplitFrame) -> Result<CheckReport> + Sync,
) -> Result<CheckReport> {
    let values = a_values(k, a)?;
    CheckReport::new(name)
        .with_n(n)
        .param("k", k)
        .param("a", a.map_or_else(|| "all".to_owned(), |a| a.to_string()))
        .param("seed", seed)
        .param("mutate", mutate)
        .run(|rep| {
            let subs: Vec<(FieldElem, CheckReport)> = values
                .par_iter()
                .map(|&a| {
                    let sub = match build_frame(n, k, a, seed) {
                        Ok(frame) => check(&frame)?,
                        Err(Error::Internal(msg)) => {
                            let mut r = CheckReport::new(name);
                            r.fail(format!("frame construction: {msg}"));
                            r
                        }
                        Err(e) => return Err(e),
                    };
                    Ok((a, sub))
                })
                .collect::<Result<_>>()?;
            for (a, sub) in &subs {
                if !sub.pass {
                    rep.fail(format!("a={a}: {}", sub.counterexample.clone().unwrap_or_default()));
                }
            }
            rep.record("a_checked", subs.len());
            if let [(_, only)] = subs.as_slice() {
                for (key, v) in &only.data {
                    rep.data.insert(key.clone(), v.clone());
                }
            }
            Ok(())
        })
}

fn stabilizer_report(frame: &SplitFrame, limit: Option<usize>, mutate: bool) -> Result<CheckReport> {
    let all: Vec<(FieldElem, FieldElem)> = frame.e_table()?.into_iter().map(|(c, j, _)| (c, j)).collect();
    let pairs: Vec<_> = match limit {
        Some(l) if l > 0 && l < all.len() => {
            let step = all.len() / l;
            all.iter().step_by(step).take(l).copied().collect()
        }
        _ => all,
    };
    check_stabilizer(frame, &pairs, mutate)
}

/// One named check with parameter defaults filled in.
fn run_check(
    check: CheckName,
    p: &Params,
    seed: u64,
    pairs: Option<usize>,
    trials: usize,
) -> Result<CheckReport> {
    let n = p.n;
    let mutate = p.mutate;
    match check {
        CheckName::MainIdentity => check_main_identity(n.unwrap_or(3), seed, mutate),
        CheckName::CjProduct => check_cj_product(n.unwrap_or(3), mutate),
        CheckName::ETransforms => check_e_transformations(n.unwrap_or(3), mutate),
        CheckName::DicksonRelations => verify_dickson_relations(n.unwrap_or(3), trials, seed, mutate),
        CheckName::ClosedForms => {
            let ns: Vec<u32> = match n {
                Some(n) => vec![n],
                None => (1..=8).collect(),
            };
            check_closed_forms(&ns, mutate)
        }
        CheckName::Dihedral => check_dihedral(n.unwrap_or(3), mutate),
        CheckName::ClassCounts => check_class_counts(n.unwrap_or(3), mutate),
        CheckName::RootProduct => {
            let (n, k) = (n.unwrap_or(2), p.k.unwrap_or(1));
            frame_sweep("root-product", n, k, a_choice(p, k)?, seed, mutate, |f| check_root_product(f, mutate))
        }
        CheckName::SevenFormulas => {
            let (n, k) = (n.unwrap_or(2), p.k.unwrap_or(1));
            frame_sweep("seven-formulas", n, k, a_choice(p, k)?, seed, mutate, |f| {
                check_seven_formulas(f, seed, mutate)
            })
        }
        CheckName::Stabilizer => {
            let (n, k) = (n.unwrap_or(2), p.k.unwrap_or(1));
            let a = a_choice(p, k)?.map_or_else(|| FieldContext::of_degree(k).map(|f| f.one()), Ok)?;
            frame_sweep("stabilizer", n, k, Some(a), seed, mutate, |f| stabilizer_report(f, pairs, mutate))
        }
        CheckName::Splitfield => {
            let (n, k) = (n.unwrap_or(2), p.k.unwrap_or(1));
            check_splitfield(n, k, a_choice(p, k)?, seed, mutate)
        }
        CheckName::OrbitStructure => {
            let n = n.unwrap_or(2);
            let k = p.k.unwrap_or(n);
            check_orbit_structure(n, k, a_choice(p, k)?, seed, mutate)
        }
        CheckName::Correspond => {
            let n = n.unwrap_or(2);
            let k = p.k.unwrap_or(n);
            check_correspond(n, k, a_choice(p, k)?, seed, mutate)
        }
        CheckName::Quintic => quintic_table(p.k.unwrap_or(1), seed, mutate),
        CheckName::Counts => check_counts(n.unwrap_or(2), parse_single_m(&p.m, 1)?, mutate),
        CheckName::Permcheck => {
            let ms = parse_m_list(p.m.as_deref().unwrap_or("1-10"))?;
            check_perm(n.unwrap_or(3), &ms, mutate)
        }
        CheckName::All => Err(Error::InvalidArgument("`all` is not a single check".into())),
    }
}

/// The bounded-size suite behind `verify all`, in canonical order.
pub fn suite(max_n: u32) -> Vec<(CheckName, Params)> {
    let params = |n: Option<u32>, k: Option<u32>, m: Option<&str>, a: Option<&str>| Params {
        n,
        k,
        m: m.map(str::to_owned),
        a: a.map(str::to_owned),
        all_a: false,
        mutate: false,
    };
    let top = max_n.max(2);
    let mut out = Vec::new();
    out.push((CheckName::ClosedForms, params(None, None, None, None)));
    for n in 2..=top {
        if n <= 6 {
            out.push((CheckName::MainIdentity, params(Some(n), None, None, None)));
            out.push((CheckName::CjProduct, params(Some(n), None, None, None)));
        }
        if n <= 4 {
            out.push((CheckName::ETransforms, params(Some(n), None, None, None)));
        }
        out.push((CheckName::DicksonRelations, params(Some(n), None, None, None)));
        if n <= 5 {
            out.push((CheckName::ClassCounts, params(Some(n), None, None, None)));
            out.push((CheckName::Dihedral, params(Some(n), None, None, None)));
        }
    }
    for n in 2..=top.min(3) {
        out.push((CheckName::RootProduct, params(Some(n), Some(1), None, None)));
        out.push((CheckName::SevenFormulas, params(Some(n), Some(1), None, Some("0x1"))));
        out.push((CheckName::Stabilizer, params(Some(n), Some(1), None, Some("0x1"))));
        for k in 1..=2 {
            out.push((CheckName::Splitfield, params(Some(n), Some(k), None, None)));
        }
        out.push((CheckName::Correspond, params(Some(n), Some(n), None, None)));
        out.push((CheckName::OrbitStructure, params(Some(n), Some(n), None, None)));
        for m in 1..=2 {
            out.push((CheckName::Counts, params(Some(n), None, Some(&m.to_string()), None)));
        }
    }
    for k in 1..=top.min(4) {
        out.push((CheckName::Quintic, params(None, Some(k), None, None)));
    }
    for n in 2..=top.min(5) {
        out.push((CheckName::Permcheck, params(Some(n), None, Some("1-10"), None)));
    }
    out
}

fn frame_value(n: u32, k: u32, a: &str, seed: u64, dump: bool) -> Result<Value> {
    let frame = build_frame(n, k, parse_a(k, a)?, seed)?;
    let mut v = json!({
        "n": n,
        "k": k,
        "a": frame.a,
        "ambient_degree": frame.ambient().degree(),
        "y": frame.y,
        "z": frame.z,
        "xi": frame.xi,
    });
    if dump {
        let roots: Vec<String> = frame
            .points()
            .iter()
            .zip(frame.roots())
            .map(|(w, r)| format!("r[{w}] = {r}"))
            .collect();
        let table: Vec<String> = frame
            .e_table()?
            .into_iter()
            .map(|(c, j, e)| format!("c={c} j={j} e={e}"))
            .collect();
        v["roots"] = json!(roots);
        v["e_table"] = json!(table);
    }
    Ok(v)
}

pub fn dispatch(cli: &Cli) -> Result<bool> {
    let (json, seed) = (cli.json, cli.seed);
    match &cli.command {
        Command::Verify { check: CheckName::All, p, max_n, pairs, trials } => {
            if p.mutate {
                return Err(Error::InvalidArgument("--mutate applies to single checks".into()));
            }
            let mut all_pass = true;
            for (check, params) in suite(*max_n) {
                let rep = run_check(check, &params, seed, *pairs, *trials)?;
                all_pass &= rep.pass;
                print_report(&rep, json).map_err(io)?;
            }
            Ok(all_pass)
        }
        Command::Verify { check, p, pairs, trials, .. } => {
            let rep = run_check(*check, p, seed, *pairs, *trials)?;
            print_report(&rep, json).map_err(io)?;
            Ok(rep.pass)
        }
        Command::Correspond { p } => {
            let rep = run_check(CheckName::Correspond, p, seed, None, 0)?;
            print_report(&rep, json).map_err(io)?;
            Ok(rep.pass)
        }
        Command::Quintic { k, mutate } => {
            let rep = quintic_table(*k, seed, *mutate)?;
            print_report(&rep, json).map_err(io)?;
            Ok(rep.pass)
        }
        Command::Counts { n, m, mutate } => {
            let rep = check_counts(*n, parse_single_m(&Some(m.clone()), 1)?, *mutate)?;
            print_report(&rep, json).map_err(io)?;
            Ok(rep.pass)
        }
        Command::Permcheck { n, m, mutate } => {
            let rep = check_perm(*n, &parse_m_list(m)?, *mutate)?;
            print_report(&rep, json).map_err(io)?;
            Ok(rep.pass)
        }
        Command::Factor { field, poly } => {
            let ctx = FieldContext::parse(field)?;
            let f = UPoly::parse(&ctx, poly)?;
            if f.degree().is_none() {
                return Err(Error::InvalidArgument("cannot factor the zero polynomial".into()));
            }
            let t = fact_type(&f, seed)?;
            if json {
                let factors: Vec<Value> = factor(&f, seed)?
                    .into_iter()
                    .map(|(g, e)| json!({"factor": g.to_string(), "multiplicity": e}))
                    .collect();
                let v = json!({"field": ctx.describe(), "poly": f.to_string(), "fact_type": t.to_string(), "factors": factors});
                print_value("factor", &v, true).map_err(io)?;
            } else {
                print_value("factor", &json!(t.to_string()), false).map_err(io)?;
            }
            Ok(true)
        }
        Command::Dickson { k, n } => {
            let ctx = FieldContext::of_degree(*n)?;
            let d = dickson_poly(*k, &ctx);
            if json {
                print_value("dickson", &json!({"k": k, "n": n, "coeffs": d.to_string()}), true).map_err(io)?;
            } else {
                print_value("dickson", &json!(d.to_string()), false).map_err(io)?;
            }
            Ok(true)
        }
        Command::Frame { n, k, a, dump } => {
            let v = frame_value(*n, *k, a, seed, *dump)?;
            print_value("frame", &v, json).map_err(io)?;
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_lists() {
        assert_eq!(parse_m_list("1-3,7").unwrap(), vec![1, 2, 3, 7]);
        assert_eq!(parse_m_list("4").unwrap(), vec![4]);
        assert!(parse_m_list("3-1").is_err());
        assert!(parse_m_list("x").is_err());
    }

    #[test]
    fn suite_is_ordered_and_bounded() {
        let s = suite(2);
        assert_eq!(s[0].0, CheckName::ClosedForms);
        assert!(s.iter().all(|(_, p)| p.n.unwrap_or(2) <= 2));
        assert!(suite(3).len() > s.len());
    }

    #[test]
    fn usage_errors_map_to_two() {
        assert_eq!(exit_code_for(&Error::Parse("x".into())), 2);
        assert_eq!(exit_code_for(&Error::Internal("x".into())), 1);
    }
}
