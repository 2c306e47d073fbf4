//! Dickson polynomials `D_k` (first kind, parameter 1) and the polynomials
//! `T`, `T_rev` and `C(x) = x T(x)^(q+1)` built from them.
//!
//! Everything here has 0/1 coefficients, so it is computed over GF(2) in a
//! bit-packed form and lifted into other fields on demand.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::clmul::{clmul, hardware_available};
use crate::gf2::{ang, FieldContext};
use crate::poly::UPoly;
use crate::report::CheckReport;

/// A polynomial over GF(2) packed 64 coefficients per word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exps {
            p.flip(e);
        }
        p
    }

    fn trim(mut self) -> Self {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
        self
    }

    pub fn flip(&mut self, e: usize) {
        let w = e / 64;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1 << (e % 64);
        let t = std::mem::take(self).trim();
        *self = t;
    }

    pub fn coeff(&self, e: usize) -> bool {
        self.words.get(e / 64).is_some_and(|w| (w >> (e % 64)) & 1 == 1)
    }

    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some(64 * (self.words.len() - 1) + 63 - top.leading_zeros() as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(64 * i + b);
                w &= w - 1;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (a, b) in words.iter_mut().zip(&short.words) {
            *a ^= b;
        }
        Gf2Poly { words }.trim()
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (ws, bs) = (k / 64, k % 64);
        let mut words = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + ws] ^= w << bs;
            if bs > 0 {
                words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        Gf2Poly { words }.trim()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let hw = hardware_available();
        let mut words = vec![0u64; self.words.len() + other.words.len()];
        for (i, &a) in self.words.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.words.iter().enumerate() {
                let p = clmul(a, b, hw);
                words[i + j] ^= p as u64;
                words[i + j + 1] ^= (p >> 64) as u64;
            }
        }
        Gf2Poly { words }.trim()
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Lift to a polynomial over `ctx`.
    pub fn to_upoly(&self, ctx: &FieldContext) -> UPoly {
        let len = self.degree().map_or(0, |d| d + 1);
        let v = (0..len).map(|e| self.coeff(e) as u64).collect();
        UPoly::from_raw_unchecked(ctx, v)
    }
}

/// `D_0, ..., D_max` by `D_k = x D_{k-1} + D_{k-2}` with `D_0 = 0`, `D_1 = x`.
pub fn dickson_table(max: usize) -> Vec<Gf2Poly> {
    let mut out = vec![Gf2Poly::zero(), Gf2Poly::from_exponents(&[1])];
    while out.len() <= max {
        let k = out.len();
        let next = out[k - 1].shift(1).add(&out[k - 2]);
        out.push(next);
    }
    out.truncate(max + 1);
    out
}

pub fn dickson_gf2(k: usize) -> Gf2Poly {
    dickson_table(k).pop().expect("table has k + 1 entries")
}

/// `D_k` over `ctx`.
pub fn dickson_poly(k: usize, ctx: &FieldContext) -> UPoly {
    dickson_gf2(k).to_upoly(ctx)
}

/// `D_{q-1}(Y) = sum_{i=1}^n Y^(q - 2^i + 1)`.
pub fn dickson_qm1_closed(n: u32) -> Result<Gf2Poly> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let q = 1usize << n;
    let exps: Vec<usize> = (1..=n).map(|i| q - (1 << i) + 1).collect();
    Ok(Gf2Poly::from_exponents(&exps))
}

/// `D_{q+1}(Y) = Y^(q+1) + D_{q-1}(Y)`.
pub fn dickson_qp1_closed(n: u32) -> Result<Gf2Poly> {
    let q = 1usize << n;
    Ok(dickson_qm1_closed(n)?.add(&Gf2Poly::from_exponents(&[q + 1])))
}

fn require_q_gt_2(n: u32) -> Result<usize> {
    if !(2..=20).contains(&n) {
        return Err(Error::InvalidArgument(format!("n must satisfy 2 <= n <= 20, got {n}")));
    }
    Ok(1usize << n)
}

/// `T(x) = sum_{i=0}^{n-1} x^(2^i - 1)`.
pub fn t_poly(n: u32) -> Result<Gf2Poly> {
    require_q_gt_2(n)?;
    let exps: Vec<usize> = (0..n).map(|i| (1usize << i) - 1).collect();
    Ok(Gf2Poly::from_exponents(&exps))
}

/// `T_rev(x) = sum_{i=0}^{n-1} x^(q/2 - 2^i)`.
pub fn t_rev_poly(n: u32) -> Result<Gf2Poly> {
    let q = require_q_gt_2(n)?;
    let exps: Vec<usize> = (0..n).map(|i| q / 2 - (1usize << i)).collect();
    Ok(Gf2Poly::from_exponents(&exps))
}

/// `C(x) = x T(x)^(q+1)`, of degree `(q/2)(q-1)`.
pub fn c_poly(n: u32) -> Result<Gf2Poly> {
    let q = require_q_gt_2(n)?;
    let t = t_poly(n)?;
    // T^(q+1) = T^q * T, and T^q only spreads exponents by q
    let tq = Gf2Poly::from_exponents(&t.support().iter().map(|e| e * q).collect::<Vec<_>>());
    Ok(tq.mul(&t).shift(1))
}

/// Compare the closed forms for `D_{q-1}` and `D_{q+1}` with the recurrence.
pub fn check_closed_forms(n_values: &[u32], mutate: bool) -> Result<CheckReport> {
    CheckReport::new("closed-forms")
        .param("n", n_values)
        .param("mutate", mutate)
        .run(|rep| {
            for &n in n_values {
                let q = 1usize << n;
                let table = dickson_table(q + 1);
                let mut qm1 = dickson_qm1_closed(n)?;
                if mutate {
                    qm1.flip(1 + 2 * n as usize);
                }
                let qp1 = dickson_qp1_closed(n)?;
                rep.require(table[q - 1] == qm1, || {
                    format!("n={n}: D_{} closed form {:?} != recurrence {:?}", q - 1, qm1.support(), table[q - 1].support())
                });
                rep.require(table[q + 1] == qp1, || {
                    format!("n={n}: D_{} closed form differs from recurrence", q + 1)
                });
            }
            Ok(())
        })
}

/// Product rule, Frobenius rule and the defining property `D_k(<u>) = <u^k>`
/// for all `k, l <= 2q`, plus the closed forms.
pub fn verify_dickson_relations(n: u32, trials: usize, seed: u64, mutate: bool) -> Result<CheckReport> {
    let q = require_q_gt_2(n)?;
    CheckReport::new("dickson-relations")
        .with_n(n)
        .param("trials", trials)
        .param("seed", seed)
        .param("mutate", mutate)
        .run(|rep| {
            let max = 2 * q;
            let mut table = dickson_table(2 * max);
            if mutate {
                table[max].flip(0);
            }
            for k in 0..=max {
                let d = &table[k];
                let parity_ok = d.support().iter().all(|e| e % 2 == k % 2);
                rep.require(parity_ok && (k == 0 || d.degree() == Some(k)), || {
                    format!("D_{k} is not monic of degree {k} with parity {}", k % 2)
                });
                rep.require(table[2 * k] == d.square(), || format!("D_{} != D_{k}^2", 2 * k));
                for l in 0..=k {
                    let lhs = d.mul(&table[l]);
                    let rhs = table[k + l].add(&table[k - l]);
                    if lhs != rhs {
                        rep.fail(format!("D_{k} D_{l} != D_{} + D_{}", k + l, k - l));
                    }
                }
            }
            let field = FieldContext::of_degree(2 * n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                let u = field.random_nonzero(&mut rng);
                let v = ang(&field, u)?;
                for (k, d) in table.iter().enumerate().take(max + 1) {
                    let lhs = d.to_upoly(&field).eval(v);
                    let rhs = ang(&field, field.pow(u, k as u128))?;
                    rep.require(lhs == rhs, || format!("D_{k}(<u>) != <u^{k}> at u={u}"));
                }
            }
            rep.absorb(check_closed_forms(&[n], mutate)?);
            Ok(())
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dickson_polys() {
        assert_eq!(dickson_gf2(0), Gf2Poly::zero());
        assert_eq!(dickson_gf2(1).support(), vec![1]);
        assert_eq!(dickson_gf2(2).support(), vec![2]);
        assert_eq!(dickson_gf2(3).support(), vec![1, 3]);
        assert_eq!(dickson_gf2(4).support(), vec![4]);
        assert_eq!(dickson_gf2(5).support(), vec![1, 3, 5]);
        assert_eq!(dickson_gf2(7).support(), vec![1, 5, 7]);
        assert_eq!(dickson_gf2(9).support(), vec![1, 5, 7, 9]);
        // D_2 D_1 = D_3 + D_1
        assert_eq!(dickson_gf2(2).mul(&dickson_gf2(1)), dickson_gf2(3).add(&dickson_gf2(1)));
    }

    #[test]
    fn closed_forms_agree_for_n_up_to_8() {
        assert_eq!(dickson_qm1_closed(2).unwrap().support(), vec![1, 3]);
        for n in 1..=8 {
            let q = 1usize << n;
            let t = dickson_table(q + 1);
            assert_eq!(dickson_qm1_closed(n).unwrap(), t[q - 1]);
            assert_eq!(dickson_qp1_closed(n).unwrap(), t[q + 1]);
        }
        assert!(dickson_qm1_closed(0).is_err());
    }

    #[test]
    fn t_and_c() {
        assert_eq!(t_poly(2).unwrap().support(), vec![0, 1]);
        assert_eq!(t_poly(3).unwrap().support(), vec![0, 1, 3]);
        assert!(t_poly(1).is_err());
        // C = x (1 + x)^5 for q = 4
        let c = c_poly(2).unwrap();
        let one_plus_x = Gf2Poly::from_exponents(&[0, 1]);
        let mut expect = Gf2Poly::from_exponents(&[1]);
        for _ in 0..5 {
            expect = expect.mul(&one_plus_x);
        }
        assert_eq!(c, expect);
        assert_eq!(c.degree(), Some(6));
        assert_eq!(c_poly(3).unwrap().degree(), Some(28));
        for n in 2..=6 {
            let q = 1usize << n;
            assert_eq!(c_poly(n).unwrap().degree(), Some(q / 2 * (q - 1)));
            // T_rev(x) = x^deg T * T(1/x)
            let t = t_poly(n).unwrap();
            let deg = t.degree().unwrap();
            let rev = Gf2Poly::from_exponents(&t.support().iter().map(|e| deg - e).collect::<Vec<_>>());
            assert_eq!(rev, t_rev_poly(n).unwrap());
        }
    }

    #[test]
    fn relations_report() {
        let rep = verify_dickson_relations(2, 4, 0, false).unwrap();
        assert!(rep.pass, "{rep:?}");
        let rep = verify_dickson_relations(3, 4, 1, true).unwrap();
        assert!(!rep.pass);
        assert!(check_closed_forms(&[1, 2, 3, 4, 5, 6, 7, 8], false).unwrap().pass);
        assert!(!check_closed_forms(&[3], true).unwrap().pass);
    }

    #[test]
    fn gf2poly_shift_and_mul_match_upoly() {
        let f2 = FieldContext::of_degree(1).unwrap();
        let a = Gf2Poly::from_exponents(&[0, 3, 64, 65, 130]);
        let b = Gf2Poly::from_exponents(&[1, 63, 64, 200]);
        assert_eq!(a.mul(&b).to_upoly(&f2), a.to_upoly(&f2).mul(&b.to_upoly(&f2)));
        assert_eq!(a.shift(70).to_upoly(&f2), a.to_upoly(&f2).shift(70));
    }
}
