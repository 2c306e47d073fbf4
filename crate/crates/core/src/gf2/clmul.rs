//! Carry-less 64x64 -> 128 bit multiplication.

/// Portable 4-bit windowed carry-less multiply.
pub(crate) fn clmul_soft(a: u64, b: u64) -> u128 {
    let b = b as u128;
    let mut table = [0u128; 16];
    for i in 1..16 {
        table[i] = if i & 1 == 1 {
            table[i - 1] ^ b
        } else {
            table[i >> 1] << 1
        };
    }
    let mut acc = 0u128;
    let mut shift = 64;
    while shift > 0 {
        shift -= 4;
        acc = (acc << 4) ^ table[((a >> shift) & 0xf) as usize];
    }
    acc
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq,sse2")]
unsafe fn clmul_pclmul(a: u64, b: u64) -> u128 {
    use core::arch::x86_64::*;
    let x = _mm_set_epi64x(0, a as i64);
    let y = _mm_set_epi64x(0, b as i64);
    let r = _mm_clmulepi64_si128(x, y, 0x00);
    let lo = _mm_cvtsi128_si64(r) as u64;
    let hi = _mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)) as u64;
    ((hi as u128) << 64) | lo as u128
}

pub(crate) fn hardware_available() -> bool {
    #[cfg(target_arch = "x86_64")]
    {
        std::is_x86_feature_detected!("pclmulqdq")
    }
    #[cfg(not(target_arch = "x86_64"))]
    {
        false
    }
}

#[inline]
pub(crate) fn clmul(a: u64, b: u64, hardware: bool) -> u128 {
    #[cfg(target_arch = "x86_64")]
    if hardware {
        // SAFETY: `hardware` is only true when pclmulqdq was detected at runtime.
        return unsafe { clmul_pclmul(a, b) };
    }
    let _ = hardware;
    clmul_soft(a, b)
}
