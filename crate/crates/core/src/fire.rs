//! Fire codes: cyclic single-burst-correcting codes with generator
//! g(x) = (x^{2b-1} + 1)·p(x), p primitive, shortened to a used length n and
//! decoded by error trapping.

use serde::{Deserialize, Serialize};

use crate::error::{DecodeError, Error, Result};
use crate::gf2::{ceil_log2, primitive_poly, Poly2, MAX_DEGREE, MIN_DEGREE};

/// A burst in canonical form: bit 0 of `pattern` sits at `position` and both
/// the lowest and highest set bits of `pattern` are errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Burst {
    pub position: usize,
    pub pattern: u64,
}

impl Burst {
    /// Canonicalize an arbitrary nonzero pattern at `position`.
    pub fn new(position: usize, pattern: u64) -> Option<Burst> {
        if pattern == 0 {
            return None;
        }
        let tz = pattern.trailing_zeros();
        Some(Burst { position: position + tz as usize, pattern: pattern >> tz })
    }

    pub fn len(&self) -> usize {
        64 - self.pattern.leading_zeros() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.pattern == 0
    }

    /// Positions of the erroneous bits.
    pub fn positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.pattern >> k & 1 == 1).map(|k| self.position + k).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FireCode {
    b: usize,
    p_degree: u32,
    p: Poly2,
    g: Poly2,
    n_full: u64,
    n: usize,
}

/// Largest generator degree representable by [`Poly2`] residues.
const MAX_REDUNDANCY: usize = 127;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Shortest Fire code correcting `b`-bursts with length at least `n_min`,
/// shortened to exactly `n_min`.
pub fn build_fire(b: usize, n_min: usize) -> Result<FireCode> {
    if b == 0 || n_min == 0 {
        return Err(Error::Infeasible("burst length and code length must be positive".into()));
    }
    let mut p_degree = (b as u32).max(MIN_DEGREE);
    while p_degree <= MAX_DEGREE {
        match FireCode::with_degree(b, p_degree, n_min) {
            Ok(code) => return Ok(code),
            Err(Error::Infeasible(_)) => p_degree += 1,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Infeasible(format!("no Fire code for b={b}, n={n_min}")))
}

impl FireCode {
    /// Fire code with a primitive factor of the given degree, shortened to `n`.
    pub fn with_degree(b: usize, p_degree: u32, n: usize) -> Result<FireCode> {
        if b == 0 || n == 0 {
            return Err(Error::Infeasible("burst length and code length must be positive".into()));
        }
        let p_bits = primitive_poly(p_degree).ok_or(Error::UnsupportedDegree(p_degree))?;
        if (p_degree as usize) < b {
            return Err(Error::Infeasible(format!("primitive factor degree {p_degree} < b={b}")));
        }
        let c = 2 * b as u64 - 1;
        let e = (1u64 << p_degree) - 1;
        if c % e == 0 {
            return Err(Error::Infeasible(format!("p(x) of degree {p_degree} divides x^{c}+1")));
        }
        let r = c as usize + p_degree as usize;
        if r > MAX_REDUNDANCY {
            return Err(Error::Infeasible(format!("generator degree {r} exceeds {MAX_REDUNDANCY}")));
        }
        let n_full = c / gcd(c, e) * e;
        if (n as u64) > n_full {
            return Err(Error::Infeasible(format!("length {n} exceeds natural length {n_full}")));
        }
        let p = Poly2(p_bits as u128);
        let g = Poly2(1u128 << c | 1).checked_mul(p).expect("degree checked");
        Ok(FireCode { b, p_degree, p, g, n_full, n })
    }

    pub fn burst(&self) -> usize {
        self.b
    }

    pub fn p_degree(&self) -> u32 {
        self.p_degree
    }

    pub fn primitive_factor(&self) -> Poly2 {
        self.p
    }

    pub fn generator(&self) -> Poly2 {
        self.g
    }

    /// Natural length lcm(2b-1, 2^p - 1).
    pub fn n_full(&self) -> u64 {
        self.n_full
    }

    /// Used (shortened) length.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn redundancy(&self) -> usize {
        2 * self.b - 1 + self.p_degree as usize
    }

    /// ⌈log n_full⌉ + 2b - 1.
    pub fn redundancy_bound(&self) -> usize {
        ceil_log2(self.n_full) as usize + 2 * self.b - 1
    }

    /// x^k mod g.
    pub fn syndrome_of_position(&self, k: usize) -> Poly2 {
        Poly2::x_pow_mod(k as u64, self.g)
    }

    /// word(x) mod g, bit `k` of the word being the coefficient of x^k.
    pub fn syndrome(&self, word: &[bool]) -> Result<Poly2> {
        if word.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: word.len() });
        }
        let r = self.redundancy();
        let mut s = 0u128;
        for &bit in word.iter().rev() {
            s = s << 1 | bit as u128;
            if s >> r & 1 == 1 {
                s ^= self.g.0;
            }
        }
        Ok(Poly2(s))
    }

    /// Syndrome of a burst.
    pub fn syndrome_of_burst(&self, burst: &Burst) -> Poly2 {
        let shift = Poly2::x_pow_mod(burst.position as u64, self.g);
        Poly2(burst.pattern as u128).rem(self.g).mulmod(shift, self.g)
    }

    /// Error trapping: multiply the syndrome by x^{-1} until it fits in the
    /// low `b` coefficients.
    pub fn decode_burst(&self, syndrome: Poly2) -> std::result::Result<Option<Burst>, DecodeError> {
        if syndrome.is_zero() {
            return Ok(None);
        }
        let mut s = syndrome.rem(self.g).0;
        let window = (1u128 << self.b) - 1;
        for i in 0..self.n {
            if s & !window == 0 {
                let burst = Burst::new(i, s as u64).expect("nonzero residue");
                if burst.position + burst.len() > self.n {
                    return Err(DecodeError::Uncorrectable);
                }
                return Ok(Some(burst));
            }
            if s & 1 == 1 {
                s ^= self.g.0;
            }
            s >>= 1;
        }
        Err(DecodeError::Uncorrectable)
    }
}

/// Role of a component code in the coloring method.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentRole {
    BurstCorrecting,
    /// Interface slot only; no burst-locator code is implemented.
    BurstLocator,
}

/// A Fire code attached to one coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCodeSpec {
    pub code: FireCode,
    pub role: ComponentRole,
    /// 0-based coloring index.
    pub coloring: usize,
    /// Required burst capability B + δ_s.
    pub target_burst: usize,
}

/// All canonical bursts of length at most `b` that fit in `n` positions.
pub fn all_bursts(b: usize, n: usize) -> Vec<Burst> {
    let mut out = Vec::new();
    for len in 1..=b.min(n) {
        let patterns: Vec<u64> = if len == 1 {
            vec![1]
        } else {
            (0..1u64 << (len - 2)).map(|mid| 1 | mid << 1 | 1 << (len - 1)).collect()
        };
        for position in 0..=n - len {
            out.extend(patterns.iter().map(|&pattern| Burst { position, pattern }));
        }
    }
    out
}
