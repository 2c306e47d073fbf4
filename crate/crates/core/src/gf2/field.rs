use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;

use super::{clmul, gf2x, numth};
use crate::error::{Error, Result};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Largest degree for which multiplication goes through log/antilog tables.
const TABLE_MAX_DEGREE: u32 = 16;

/// An element of some [`FieldContext`]. Bit `i` of `bits` is the
/// coefficient of `t^i` in the polynomial basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    bits: u64,
    ctx: u64,
}

impl FieldElem {
    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn context_id(self) -> u64 {
        self.ctx
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn is_one(self) -> bool {
        self.bits == 1
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

/// Serialized as the hex encoding of its bits; the context is implicit.
impl serde::Serialize for FieldElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct LogTables {
    exp: Vec<u16>,
    log: Vec<u16>,
}

struct Inner {
    id: u64,
    degree: u32,
    modulus: u128,
    tail: u64,
    mask: u64,
    hardware: bool,
    trace_mask: u64,
    tables: Option<LogTables>,
    generator: OnceLock<u64>,
}

/// The binary field GF(2^m), `1 <= m <= 64`, with a fixed irreducible modulus.
///
/// Contexts are immutable and cheap to clone. Elements remember the id of
/// the context that produced them; mixing contexts is an error.
#[derive(Clone)]
pub struct FieldContext(Arc<Inner>);

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}/{:#x})", self.0.degree, self.0.modulus)
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for FieldContext {}

fn default_cache() -> &'static Mutex<HashMap<u32, FieldContext>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, FieldContext>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FieldContext {
    /// Build GF(2^m). Without an explicit modulus the smallest-encoding
    /// irreducible of degree `m` is used.
    pub fn new(m: u32, modulus: Option<u128>) -> Result<Self> {
        if !(1..=64).contains(&m) {
            return Err(Error::UnsupportedDegree(m));
        }
        let modulus = match modulus {
            None => gf2x::smallest_irreducible(m),
            Some(p) => {
                if gf2x::degree(p) != m as i32 {
                    return Err(Error::InvalidModulus {
                        degree: m,
                        modulus: p,
                        reason: "wrong degree",
                    });
                }
                if !gf2x::is_irreducible(p) {
                    return Err(Error::InvalidModulus {
                        degree: m,
                        modulus: p,
                        reason: "reducible over GF(2)",
                    });
                }
                p
            }
        };
        let mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let mut inner = Inner {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            degree: m,
            modulus,
            tail: (modulus & mask as u128) as u64,
            mask,
            hardware: clmul::hardware_available(),
            trace_mask: 0,
            tables: None,
            generator: OnceLock::new(),
        };
        // trace is linear: record Tr(t^i) for each basis vector
        let mut trace_mask = 0u64;
        for i in 0..m {
            let basis = if m == 1 { 1 } else { 1u64 << i };
            let mut x = basis;
            let mut acc = basis;
            for _ in 1..m {
                x = inner.mul_slow(x, x);
                acc ^= x;
            }
            debug_assert!(acc <= 1);
            trace_mask |= (acc & 1) << i;
        }
        inner.trace_mask = trace_mask;
        if m <= TABLE_MAX_DEGREE {
            let g = inner.find_generator();
            let _ = inner.generator.set(g);
            let order = (1usize << m) - 1;
            let mut exp = vec![0u16; 2 * order.max(1)];
            let mut log = vec![0u16; 1 << m];
            let mut x = 1u64;
            for i in 0..order {
                exp[i] = x as u16;
                exp[i + order] = x as u16;
                log[x as usize] = i as u16;
                x = inner.mul_slow(x, g);
            }
            inner.tables = Some(LogTables { exp, log });
        }
        Ok(FieldContext(Arc::new(inner)))
    }

    /// Shared default-modulus context for GF(2^m).
    pub fn of_degree(m: u32) -> Result<Self> {
        let mut cache = default_cache().lock().expect("field cache poisoned");
        if let Some(ctx) = cache.get(&m) {
            return Ok(ctx.clone());
        }
        let ctx = Self::new(m, None)?;
        cache.insert(m, ctx.clone());
        Ok(ctx)
    }

    /// Parse `"2^m"` or `"2^m/0xMODULUS"`.
    pub fn parse(desc: &str) -> Result<Self> {
        let desc = desc.trim();
        let rest = desc
            .strip_prefix("2^")
            .ok_or_else(|| Error::Parse(format!("field must look like 2^m, got {desc:?}")))?;
        let (deg, modulus) = match rest.split_once('/') {
            Some((d, m)) => (d, Some(parse_hex_u128(m)?)),
            None => (rest, None),
        };
        let m: u32 = deg
            .parse()
            .map_err(|_| Error::Parse(format!("bad field degree {deg:?}")))?;
        match modulus {
            None => Self::of_degree(m),
            Some(p) if p == gf2x::smallest_irreducible(m.clamp(1, 64)) && (1..=64).contains(&m) => {
                Self::of_degree(m)
            }
            Some(p) => Self::new(m, Some(p)),
        }
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn modulus(&self) -> u128 {
        self.0.modulus
    }

    /// Number of elements, `2^m`.
    pub fn size(&self) -> u128 {
        1u128 << self.0.degree
    }

    /// Order of the multiplicative group, `2^m - 1`.
    pub fn unit_order(&self) -> u64 {
        self.0.mask
    }

    pub fn describe(&self) -> String {
        format!("2^{}/{:#x}", self.0.degree, self.0.modulus)
    }

    pub fn zero(&self) -> FieldElem {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElem {
        self.wrap(1)
    }

    /// The residue class of `t`.
    pub fn t(&self) -> FieldElem {
        self.wrap(self.0.reduce(0b10))
    }

    pub fn from_bits(&self, bits: u64) -> Result<FieldElem> {
        if bits & !self.0.mask != 0 {
            return Err(Error::InvalidArgument(format!(
                "{bits:#x} is not an element of GF(2^{})",
                self.0.degree
            )));
        }
        Ok(self.wrap(bits))
    }

    /// Parse a `0x..` element.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let v = parse_hex_u128(s)?;
        let bits = u64::try_from(v).map_err(|_| Error::Parse(format!("{s} too large")))?;
        self.from_bits(bits)
    }

    #[inline]
    pub(crate) fn wrap(&self, bits: u64) -> FieldElem {
        debug_assert_eq!(bits & !self.0.mask, 0);
        FieldElem {
            bits,
            ctx: self.0.id,
        }
    }

    pub fn contains(&self, x: FieldElem) -> bool {
        x.ctx == self.0.id
    }

    pub fn check(&self, x: FieldElem) -> Result<()> {
        if x.ctx == self.0.id {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left: self.0.id,
                right: x.ctx,
            })
        }
    }

    #[inline]
    #[track_caller]
    fn expect(&self, x: FieldElem) -> u64 {
        if x.ctx != self.0.id {
            panic!(
                "{}",
                Error::ContextMismatch {
                    left: self.0.id,
                    right: x.ctx
                }
            );
        }
        x.bits
    }

    /// All field elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        assert!(self.0.degree <= 32, "refusing to enumerate GF(2^{})", self.0.degree);
        (0..=self.0.mask).map(move |b| self.wrap(b))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        self.elements().skip(1)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        self.wrap(rng.gen::<u64>() & self.0.mask)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    // ---- checked arithmetic ----

    pub fn try_add(&self, x: FieldElem, y: FieldElem) -> Result<FieldElem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(x.bits ^ y.bits))
    }

    pub fn try_mul(&self, x: FieldElem, y: FieldElem) -> Result<FieldElem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.0.mul(x.bits, y.bits)))
    }

    // ---- arithmetic; panics on a context mismatch ----

    #[track_caller]
    pub fn add(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.wrap(self.expect(x) ^ self.expect(y))
    }

    #[track_caller]
    pub fn mul(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.wrap(self.0.mul(self.expect(x), self.expect(y)))
    }

    #[track_caller]
    pub fn square(&self, x: FieldElem) -> FieldElem {
        let b = self.expect(x);
        self.wrap(self.0.mul(b, b))
    }

    #[track_caller]
    pub fn pow(&self, x: FieldElem, e: u128) -> FieldElem {
        self.wrap(self.0.pow(self.expect(x), e))
    }

    /// `x^(2^k)`.
    #[track_caller]
    pub fn frobenius(&self, x: FieldElem, k: u32) -> FieldElem {
        let mut b = self.expect(x);
        for _ in 0..k % self.0.degree {
            b = self.0.mul(b, b);
        }
        self.wrap(b)
    }

    #[track_caller]
    pub fn inv(&self, x: FieldElem) -> Result<FieldElem> {
        self.check(x)?;
        self.0.inv(x.bits).map(|b| self.wrap(b))
    }

    #[track_caller]
    pub fn div(&self, x: FieldElem, y: FieldElem) -> Result<FieldElem> {
        self.check(x)?;
        let yi = self.inv(y)?;
        Ok(self.mul(x, yi))
    }

    /// The unique square root, `x^(2^(m-1))`.
    #[track_caller]
    pub fn sqrt(&self, x: FieldElem) -> FieldElem {
        self.frobenius(x, self.0.degree - 1)
    }

    /// Absolute trace `Tr_{GF(2^m)/GF(2)}(x)` as a bit.
    #[track_caller]
    pub fn trace_abs(&self, x: FieldElem) -> u8 {
        ((self.expect(x) & self.0.trace_mask).count_ones() & 1) as u8
    }

    /// Trace by the defining sum `x + x^2 + ... + x^(2^(m-1))`.
    #[track_caller]
    pub fn trace_by_sum(&self, x: FieldElem) -> FieldElem {
        let mut b = self.expect(x);
        let mut acc = b;
        for _ in 1..self.0.degree {
            b = self.0.mul(b, b);
            acc ^= b;
        }
        self.wrap(acc)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, x: FieldElem) -> Result<u64> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.0.mask;
        for (p, _) in numth::factorize(self.0.mask) {
            while ord.is_multiple_of(p) && self.0.pow(x.bits, (ord / p) as u128) == 1 {
                ord /= p;
            }
        }
        Ok(ord)
    }

    /// Smallest-encoding primitive element.
    pub fn generator(&self) -> FieldElem {
        self.wrap(*self.0.generator.get_or_init(|| self.0.find_generator()))
    }

    // ---- raw helpers used by the polynomial layers ----

    #[inline]
    pub(crate) fn mul_bits(&self, a: u64, b: u64) -> u64 {
        self.0.mul(a, b)
    }

    #[inline]
    pub(crate) fn inv_bits(&self, a: u64) -> Result<u64> {
        self.0.inv(a)
    }
}

impl Inner {
    #[inline]
    fn reduce(&self, mut p: u128) -> u64 {
        let m = self.degree;
        loop {
            let hi = p >> m;
            if hi == 0 {
                return p as u64;
            }
            p = (p & self.mask as u128) ^ clmul::clmul(hi as u64, self.tail, self.hardware);
        }
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        self.reduce(clmul::clmul(a, b, self.hardware))
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            Some(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[t.log[a as usize] as usize + t.log[b as usize] as usize] as u64
                }
            }
            None => self.mul_slow(a, b),
        }
    }

    fn pow(&self, mut a: u64, mut e: u128) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            let order = self.mask as usize;
            let l = t.log[a as usize] as usize;
            return Ok(t.exp[(order - l) % order.max(1)] as u64);
        }
        Ok(self.pow(a, self.mask as u128 - 1))
    }

    fn find_generator(&self) -> u64 {
        if self.degree == 1 {
            return 1;
        }
        let order = self.mask;
        let cofactors: Vec<u64> = numth::prime_divisors(order)
            .into_iter()
            .map(|p| order / p)
            .collect();
        (2..=self.mask)
            .find(|&g| cofactors.iter().all(|&c| self.pow(g, c as u128) != 1))
            .expect("GF(2^m)^x is cyclic")
    }
}

pub(crate) fn parse_hex_u128(s: &str) -> Result<u128> {
    let s = s.trim();
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .ok_or_else(|| Error::Parse(format!("expected 0x-prefixed hex, got {s:?}")))?;
    u128::from_str_radix(digits, 16).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}
