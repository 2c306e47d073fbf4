//! Cross-checks against independent brute-force computations, and frozen
//! values obtained from them.

use mcm_core::dickson::{c_poly, dickson_gf2, dickson_qm1_closed, dickson_qp1_closed};
use mcm_core::gf2::{fq_one_set, fq_zero_set};
use mcm_core::pgl2::{ClassCounts, Pgl2};
use mcm_core::poly::{count_roots_in_field, fact_type, roots_in_field};
use mcm_core::splitting::{c_eval, c_plus_a, correspond, quintic_pair, root_count_distribution, RootCounts};
use mcm_core::{FactType, FieldContext, UPoly};

/// Shift-and-add multiplication modulo an explicit polynomial.
fn slow_mul(a: u64, mut b: u64, m: u32, modulus: u128) -> u64 {
    let mut acc: u128 = 0;
    let mut shifted = a as u128;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= shifted;
        }
        b >>= 1;
        shifted <<= 1;
        if (shifted >> m) & 1 == 1 {
            shifted ^= modulus;
        }
    }
    acc as u64
}

#[test]
fn field_multiplication_matches_shift_and_add() {
    for m in [1u32, 2, 3, 5, 8, 13, 16, 17, 31, 33, 48, 63, 64] {
        let f = FieldContext::of_degree(m).unwrap();
        let modulus = f.modulus();
        let mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let mut s = 0x9e37_79b9_7f4a_7c15u64 ^ m as u64;
        for _ in 0..200 {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = (s >> 7) & mask;
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let b = (s >> 3) & mask;
            let fa = f.from_bits(a).unwrap();
            let fb = f.from_bits(b).unwrap();
            assert_eq!(f.mul(fa, fb).bits(), slow_mul(a, b, m, modulus), "m={m} a={a:#x} b={b:#x}");
        }
    }
}

fn binom_parity(n: usize, k: usize) -> bool {
    // Lucas: C(n, k) is odd iff k's bits are a subset of n's
    k <= n && (k & !n) == 0
}

/// `D_k = sum_i k/(k-i) C(k-i, i) x^(k-2i)`, with
/// `k/(k-i) C(k-i, i) = C(k-i, i) + C(k-i-1, i-1)`.
fn dickson_coeff_parity(k: usize, i: usize) -> bool {
    if i == 0 {
        return true;
    }
    binom_parity(k - i, i) ^ binom_parity(k - i - 1, i - 1)
}

#[test]
fn dickson_matches_explicit_sum() {
    for k in 1..=300usize {
        let mut exps: Vec<usize> = (0..=k / 2).filter(|&i| dickson_coeff_parity(k, i)).map(|i| k - 2 * i).collect();
        exps.sort_unstable();
        assert_eq!(dickson_gf2(k).support(), exps, "k={k}");
    }
    assert!(dickson_gf2(0).is_zero());
}

#[test]
fn dickson_examples() {
    assert_eq!(dickson_gf2(1).support(), vec![1]);
    assert_eq!(dickson_gf2(3).support(), vec![1, 3]);
    assert_eq!(dickson_gf2(5).support(), vec![1, 3, 5]);
    assert_eq!(dickson_gf2(4).support(), vec![4]);
    for n in 1..=8 {
        let q = 1usize << n;
        assert_eq!(dickson_qm1_closed(n).unwrap(), dickson_gf2(q - 1));
        assert_eq!(dickson_qp1_closed(n).unwrap(), dickson_gf2(q + 1));
    }
}

#[test]
fn c_polynomial_values() {
    assert_eq!(c_poly(2).unwrap().degree(), Some(6));
    assert_eq!(c_poly(3).unwrap().degree(), Some(28));
    // x (1 + x)^5 = x + x^2 + x^5 + x^6 over GF(2)
    assert_eq!(c_poly(2).unwrap().support(), vec![1, 2, 5, 6]);
}

#[test]
fn c_roots_are_trace_zero_and_c_plus_a_is_squarefree() {
    for n in 2..=5u32 {
        let f = FieldContext::of_degree(n).unwrap();
        let c = c_poly(n).unwrap().to_upoly(&f);
        let mut roots = roots_in_field(&c, 0).unwrap();
        roots.sort();
        assert_eq!(roots, fq_zero_set(&f), "n={n}");
        for x in f.elements() {
            assert_eq!(c.eval(x), c_eval(n, &f, x));
        }
        for a in f.nonzero_elements() {
            let g = c.add(&UPoly::constant(&f, a));
            assert!(g.gcd(&g.derivative()).is_one(), "n={n} a={a}");
        }
    }
}

/// Irreducible-factor degrees of a squarefree polynomial over GF(2) from
/// brute-force root counts in GF(2^d), by Moebius inversion.
fn brute_fact_type(f_bits: &[u64]) -> FactType {
    let deg = f_bits.len() - 1;
    let mut counts = vec![0usize; deg + 1];
    for d in 1..=deg as u32 {
        let big = FieldContext::of_degree(d).unwrap();
        let f = UPoly::from_bits(&big, f_bits.to_vec()).unwrap();
        counts[d as usize] = big.elements().filter(|&x| f.eval(x).is_zero()).count();
    }
    let mut by_degree = vec![0usize; deg + 1];
    for e in 1..=deg {
        let smaller: usize = (1..e).filter(|d| e % d == 0).map(|d| d * by_degree[d]).sum();
        by_degree[e] = (counts[e] - smaller) / e;
    }
    let mut degrees = Vec::new();
    for (e, &c) in by_degree.iter().enumerate() {
        degrees.extend(std::iter::repeat_n(e as u32, c));
    }
    FactType::new(degrees)
}

#[test]
fn factorization_types_match_root_counts() {
    let f2 = FieldContext::of_degree(1).unwrap();
    let mut checked = 0;
    for bits in 0b10u64..(1 << 10) {
        let v: Vec<u64> = (0..64 - bits.leading_zeros()).map(|i| (bits >> i) & 1).collect();
        let f = UPoly::from_bits(&f2, v.clone()).unwrap();
        if f.degree().unwrap_or(0) == 0 || !f.gcd(&f.derivative()).is_one() {
            continue;
        }
        assert_eq!(fact_type(&f, 5).unwrap(), brute_fact_type(&v), "f={f}");
        checked += 1;
    }
    assert!(checked > 100);
}

#[test]
fn frozen_factorization_values() {
    let f2 = FieldContext::of_degree(1).unwrap();
    let x5 = UPoly::parse(&f2, "0x1,0x1,0x0,0x0,0x0,0x1").unwrap();
    assert_eq!(fact_type(&x5, 0).unwrap().to_string(), "[2,3]");
    let c = correspond(2, 2, FieldContext::of_degree(2).unwrap().one(), 0).unwrap();
    assert_eq!((c.f_type.to_string(), c.c_type.to_string()), ("[1,1,3]".to_owned(), "[3,3]".to_owned()));
    let (f, g) = quintic_pair(1, f2.one(), 0).unwrap();
    assert_eq!((f.to_string(), g.to_string()), ("[2,3]".to_owned(), "[6]".to_owned()));
}

/// Root counts by factoring each `C(x) + a` instead of tabulating `C`.
#[test]
fn root_counts_by_factoring() {
    for (n, m) in [(2u32, 1u32), (2, 2), (3, 1), (3, 2)] {
        let f = FieldContext::of_degree(n * m).unwrap();
        let q = 1usize << n;
        let mut counts = RootCounts { zero: 0, one: 0, half_q: 0, full: 0 };
        for a in f.nonzero_elements() {
            match count_roots_in_field(&c_plus_a(n, a, &f).unwrap()).unwrap() {
                0 => counts.zero += 1,
                1 => counts.one += 1,
                x if x == q / 2 => counts.half_q += 1,
                x if x == q / 2 * (q - 1) => counts.full += 1,
                x => panic!("unexpected count {x}"),
            }
        }
        assert_eq!(counts, root_count_distribution(n, m).unwrap().0, "n={n} m={m}");
        assert_eq!(counts, RootCounts::expected(n, m));
    }
    assert_eq!(RootCounts::expected(2, 2), RootCounts { zero: 5, one: 6, half_q: 4, full: 0 });
    assert_eq!(RootCounts::expected(3, 1), RootCounts { zero: 3, one: 4, half_q: 0, full: 0 });
}

/// PGL2(4) by plain 2x2 matrices over a hand-written GF(4) table, with
/// orders found by repeated multiplication up to scalars.
#[test]
fn pgl2_gf4_orders_by_matrix_powers() {
    const MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
    let mul = |a: [u8; 4], b: [u8; 4]| {
        let m = |x: u8, y: u8| MUL[x as usize][y as usize];
        [m(a[0], b[0]) ^ m(a[1], b[2]), m(a[0], b[1]) ^ m(a[1], b[3]), m(a[2], b[0]) ^ m(a[3], b[2]), m(a[2], b[1]) ^ m(a[3], b[3])]
    };
    let is_scalar = |a: [u8; 4]| a[1] == 0 && a[2] == 0 && a[0] == a[3];
    let mut elements = Vec::new();
    for bits in 0u32..256 {
        let a = [bits as u8 & 3, (bits >> 2) as u8 & 3, (bits >> 4) as u8 & 3, (bits >> 6) as u8 & 3];
        if MUL[a[0] as usize][a[3] as usize] == MUL[a[1] as usize][a[2] as usize] {
            continue;
        }
        // normalize so the first nonzero of the top row is 1
        let lead = if a[0] != 0 { a[0] } else { a[1] };
        let inv = [0u8, 1, 3, 2][lead as usize];
        let n = a.map(|x| MUL[inv as usize][x as usize]);
        if !elements.contains(&n) {
            elements.push(n);
        }
    }
    assert_eq!(elements.len(), 60);
    let mut counts = ClassCounts { involutions: 0, order_divides_qm1: 0, order_divides_qp1: 0 };
    for &g in &elements {
        let mut p = g;
        let mut order = 1;
        while !is_scalar(p) {
            p = mul(p, g);
            order += 1;
        }
        match order {
            1 => {}
            2 => counts.involutions += 1,
            3 => counts.order_divides_qm1 += 1,
            5 => counts.order_divides_qp1 += 1,
            o => panic!("order {o} in PGL2(4)"),
        }
    }
    assert_eq!(counts, ClassCounts::expected(2));
    assert_eq!(Pgl2::new(2).unwrap().class_counts().0, counts);
}

#[test]
fn trace_one_sets() {
    for n in 1..=6 {
        let f = FieldContext::of_degree(n).unwrap();
        let ones = fq_one_set(n, &f).unwrap();
        assert_eq!(ones.len(), 1 << (n - 1));
        // brute trace x + x^2 + ... + x^(2^(n-1))
        for x in f.elements() {
            let mut t = f.zero();
            let mut p = x;
            for _ in 0..n {
                t = f.add(t, p);
                p = f.square(p);
            }
            assert_eq!(t.is_one(), ones.contains(&x));
        }
    }
}
