use std::ops::{Add, Mul};

/// An element of GF(4) over the basis {1, β}: bit 0 is the coefficient of 1,
/// bit 1 the coefficient of β, with β^2 = β + 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf4Elem(u8);

// Powers of β: 1, β, β + 1.
const POWERS: [u8; 3] = [0b01, 0b10, 0b11];

impl Gf4Elem {
    pub const ZERO: Gf4Elem = Gf4Elem(0);
    pub const ONE: Gf4Elem = Gf4Elem(0b01);
    pub const BETA: Gf4Elem = Gf4Elem(0b10);
    pub const BETA_SQUARED: Gf4Elem = Gf4Elem(0b11);

    pub fn from_bits(bits: u8) -> Option<Gf4Elem> {
        (bits < 4).then_some(Gf4Elem(bits))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    fn log(self) -> Option<usize> {
        POWERS.iter().position(|&p| p == self.0)
    }
}

/// β^v with the exponent reduced mod 3.
pub fn gf4_pow(v: u64) -> Gf4Elem {
    Gf4Elem(POWERS[(v % 3) as usize])
}

impl Add for Gf4Elem {
    type Output = Gf4Elem;
    fn add(self, rhs: Gf4Elem) -> Gf4Elem {
        Gf4Elem(self.0 ^ rhs.0)
    }
}

impl Mul for Gf4Elem {
    type Output = Gf4Elem;
    fn mul(self, rhs: Gf4Elem) -> Gf4Elem {
        match (self.log(), rhs.log()) {
            (Some(a), Some(b)) => Gf4Elem(POWERS[(a + b) % 3]),
            _ => Gf4Elem::ZERO,
        }
    }
}
