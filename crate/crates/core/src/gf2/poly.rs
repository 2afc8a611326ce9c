use std::fmt;

/// A polynomial over GF(2) of degree at most 127, packed LSB-first
/// (bit `k` holds the coefficient of `x^k`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly2(pub u128);

impl Poly2 {
    pub const ZERO: Poly2 = Poly2(0);
    pub const ONE: Poly2 = Poly2(1);

    pub fn monomial(k: u32) -> Poly2 {
        assert!(k < 128, "monomial degree {k} exceeds 127");
        Poly2(1u128 << k)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(127 - self.0.leading_zeros())
        }
    }

    /// Carry-less product; `None` if the result would exceed degree 127.
    pub fn checked_mul(self, other: Poly2) -> Option<Poly2> {
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return Some(Poly2::ZERO);
        };
        if da + db > 127 {
            return None;
        }
        let mut acc = 0u128;
        let mut b = other.0;
        while b != 0 {
            let k = b.trailing_zeros();
            acc ^= self.0 << k;
            b &= b - 1;
        }
        Some(Poly2(acc))
    }

    /// Remainder of `self` divided by `modulus`.
    pub fn rem(self, modulus: Poly2) -> Poly2 {
        let dm = modulus.degree().expect("division by the zero polynomial");
        let mut r = self.0;
        while r != 0 {
            let dr = 127 - r.leading_zeros();
            if dr < dm {
                break;
            }
            r ^= modulus.0 << (dr - dm);
        }
        Poly2(r)
    }

    pub fn gcd(self, other: Poly2) -> Poly2 {
        let (mut a, mut b) = (self, other);
        while !b.is_zero() {
            let r = a.rem(b);
            a = b;
            b = r;
        }
        a
    }

    /// `self * other mod modulus`, with both inputs already reduced.
    pub fn mulmod(self, other: Poly2, modulus: Poly2) -> Poly2 {
        let dm = modulus.degree().expect("division by the zero polynomial");
        let mut acc = 0u128;
        let mut a = self.0;
        let mut b = other.0;
        let top = 1u128 << dm;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= modulus.0;
            }
        }
        Poly2(acc)
    }

    /// `x^k mod modulus` by square-and-multiply.
    pub fn x_pow_mod(k: u64, modulus: Poly2) -> Poly2 {
        let dm = modulus.degree().expect("division by the zero polynomial");
        if dm == 0 {
            return Poly2::ZERO;
        }
        let mut result = Poly2::ONE.rem(modulus);
        let mut base = Poly2(0b10).rem(modulus);
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mulmod(base, modulus);
            }
            base = base.mulmod(base, modulus);
            e >>= 1;
        }
        result
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({:#x})", self.0)
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..128).rev() {
            if self.0 >> k & 1 == 1 {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                match k {
                    0 => write!(f, "1")?,
                    1 => write!(f, "x")?,
                    _ => write!(f, "x^{k}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fire_generator_product() {
        // (x^5 + 1)(x^4 + x + 1)
        let g = Poly2(0b100001).checked_mul(Poly2(0b10011)).unwrap();
        assert_eq!(g, Poly2(0b10_0111_0011));
        assert_eq!(g.degree(), Some(9));
    }

    #[test]
    fn rem_and_pow_agree() {
        let m = Poly2(0b10011);
        for k in 0..40u32 {
            assert_eq!(Poly2::monomial(k).rem(m), Poly2::x_pow_mod(k as u64, m));
        }
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        assert_eq!(Poly2(0b111).gcd(Poly2(0b1011)), Poly2::ONE);
        // x^3 + 1 = (x + 1)(x^2 + x + 1)
        assert_eq!(Poly2(0b1001).gcd(Poly2(0b111)), Poly2(0b111));
    }

    #[test]
    fn display() {
        assert_eq!(Poly2(0b10011).to_string(), "x^4 + x + 1");
        assert_eq!(Poly2(0).to_string(), "0");
    }
}
