//! Polynomials over GF(2) packed into a `u128`, bit `i` holding the
//! coefficient of `t^i`. Only what modulus search needs.

pub(crate) fn degree(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

pub(crate) fn rem(mut a: u128, m: u128) -> u128 {
    let dm = degree(m);
    while degree(a) >= dm {
        a ^= m << (degree(a) - dm);
    }
    a
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// `a * b mod m` for `deg a, deg b < deg m <= 64`.
pub(crate) fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    let dm = degree(m);
    let mut acc = 0u128;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if degree(a) == dm {
            a ^= m;
        }
    }
    acc
}

/// Rabin's irreducibility test over GF(2).
pub(crate) fn is_irreducible(m: u128) -> bool {
    let d = degree(m);
    if d < 1 {
        return false;
    }
    if d == 1 {
        return true;
    }
    if m & 1 == 0 {
        return false;
    }
    let d = d as u32;
    // t^(2^i) mod m for i = 0..=d
    let mut frob = Vec::with_capacity(d as usize + 1);
    let mut x = 0b10u128;
    frob.push(x);
    for _ in 0..d {
        x = mulmod(x, x, m);
        frob.push(x);
    }
    if frob[d as usize] != 0b10 {
        return false;
    }
    for p in crate::gf2::numth::prime_divisors(d as u64) {
        let h = frob[(d as u64 / p) as usize] ^ 0b10;
        if degree(gcd(m, h)) > 0 {
            return false;
        }
    }
    true
}

/// Smallest-encoding monic irreducible polynomial of degree `d` with nonzero
/// constant term. The constant-term condition only matters for `d = 1`, where
/// it selects `t + 1`.
pub(crate) fn smallest_irreducible(d: u32) -> u128 {
    let top = 1u128 << d;
    (0..top)
        .filter(|tail| tail & 1 == 1)
        .map(|tail| top | tail)
        .find(|&m| is_irreducible(m))
        .expect("an irreducible polynomial exists in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible(m: u128) -> bool {
        let d = degree(m);
        (2u128..(1 << (d / 2 + 1))).all(|f| degree(f) == 0 || rem(m, f) != 0 || f == m)
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for m in 2u128..(1 << 11) {
            assert_eq!(is_irreducible(m), brute_irreducible(m), "m = {m:#b}");
        }
    }

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(smallest_irreducible(1), 0b11);
        assert_eq!(smallest_irreducible(2), 0b111);
        assert_eq!(smallest_irreducible(3), 0b1011);
        assert_eq!(smallest_irreducible(8), 0b1_0001_1011);
    }
}
