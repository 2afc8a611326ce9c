/// Primitive polynomials over GF(2), indexed by degree, bit-packed with the
/// constant term in bit 0 and the leading x^m term included.
const PRIMITIVE_POLYS: [u32; 23] = [
    0x7,        // m=2:  x^2 + x + 1
    0xB,        // m=3:  x^3 + x + 1
    0x13,       // m=4:  x^4 + x + 1
    0x25,       // m=5:  x^5 + x^2 + 1
    0x43,       // m=6:  x^6 + x + 1
    0x83,       // m=7:  x^7 + x + 1
    0x11D,      // m=8:  x^8 + x^4 + x^3 + x^2 + 1
    0x211,      // m=9:  x^9 + x^4 + 1
    0x409,      // m=10: x^10 + x^3 + 1
    0x805,      // m=11: x^11 + x^2 + 1
    0x1053,     // m=12: x^12 + x^6 + x^4 + x + 1
    0x201B,     // m=13: x^13 + x^4 + x^3 + x + 1
    0x4443,     // m=14: x^14 + x^10 + x^6 + x + 1
    0x8003,     // m=15: x^15 + x + 1
    0x1100B,    // m=16: x^16 + x^12 + x^3 + x + 1
    0x20009,    // m=17: x^17 + x^3 + 1
    0x40081,    // m=18: x^18 + x^7 + 1
    0x80027,    // m=19: x^19 + x^5 + x^2 + x + 1
    0x100009,   // m=20: x^20 + x^3 + 1
    0x200005,   // m=21: x^21 + x^2 + 1
    0x400003,   // m=22: x^22 + x + 1
    0x800021,   // m=23: x^23 + x^5 + 1
    0x1000087,  // m=24: x^24 + x^7 + x^2 + x + 1
];

/// The fixed primitive polynomial shipped for degree `m`, if supported.
pub fn primitive_poly(m: u32) -> Option<u32> {
    if (2..=24).contains(&m) {
        Some(PRIMITIVE_POLYS[(m - 2) as usize])
    } else {
        None
    }
}

/// Distinct prime factors of `n` by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
