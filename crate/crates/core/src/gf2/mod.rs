//! Arithmetic in GF(2^m) for 2 <= m <= 24, GF(4), and GF(2)[x] helpers.
//!
//! Elements are bit-packed coefficient vectors with the constant term in
//! bit 0. Each degree has one fixed primitive polynomial (see
//! [`primitive_poly`]), so every exported matrix is reproducible bit for bit.
//! Log/antilog tables are built for m <= 20; larger fields multiply directly
//! and take discrete logs by baby-step giant-step.

mod gf4;
mod poly;
mod tables;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

pub use gf4::{gf4_pow, Gf4Elem};
pub use poly::Poly2;
pub use tables::primitive_poly;

use crate::error::{Error, Result};

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 24;
/// Largest degree for which log/antilog tables are materialized.
pub const TABLE_MAX_DEGREE: u32 = 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

#[derive(Debug)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Arithmetic context for GF(2^m); immutable once built.
pub struct FieldCtx {
    m: u32,
    poly: u32,
    order: u32,
    tables: Option<Tables>,
    // Baby steps for discrete logs in fields without tables.
    baby_steps: OnceLock<HashMap<u32, u32>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("m", &self.m)
            .field("poly", &format_args!("{:#x}", self.poly))
            .field("tabulated", &self.tables.is_some())
            .finish()
    }
}

impl FieldCtx {
    /// Field of degree `m` over the shipped primitive polynomial.
    pub fn new(m: u32) -> Result<FieldCtx> {
        let poly = primitive_poly(m).ok_or(Error::UnsupportedDegree(m))?;
        Ok(Self::build(m, poly))
    }

    /// Field of degree `m` over a caller-supplied polynomial, which must be
    /// primitive.
    pub fn with_poly(m: u32, poly: u32) -> Result<FieldCtx> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
            return Err(Error::UnsupportedDegree(m));
        }
        if !is_primitive(poly, m) {
            return Err(Error::NotPrimitive { poly: poly as u64, degree: m });
        }
        Ok(Self::build(m, poly))
    }

    fn build(m: u32, poly: u32) -> FieldCtx {
        let order = (1u32 << m) - 1;
        let tables = (m <= TABLE_MAX_DEGREE).then(|| {
            let mut exp = Vec::with_capacity(order as usize);
            let mut log = vec![u32::MAX; 1usize << m];
            let mut x = 1u32;
            for k in 0..order {
                exp.push(x);
                log[x as usize] = k;
                x <<= 1;
                if x >> m & 1 == 1 {
                    x ^= poly;
                }
            }
            Tables { exp, log }
        });
        FieldCtx { m, poly, order, tables, baby_steps: OnceLock::new() }
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn primitive_poly(&self) -> u32 {
        self.poly
    }

    /// Multiplicative order 2^m - 1.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Wrap raw bits as an element, rejecting values wider than m bits.
    pub fn elem(&self, bits: u32) -> Option<FieldElem> {
        (bits >> self.m == 0).then_some(FieldElem(bits))
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return FieldElem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let k = (t.log[a.0 as usize] + t.log[b.0 as usize]) % self.order;
                FieldElem(t.exp[k as usize])
            }
            None => FieldElem(mul_direct(a.0, b.0, self.poly, self.m)),
        }
    }

    /// `a^k` for `k >= 0`; `0^0` is taken to be 1.
    pub fn pow(&self, a: FieldElem, k: u64) -> FieldElem {
        if k == 0 {
            return FieldElem::ONE;
        }
        if a.is_zero() {
            return FieldElem::ZERO;
        }
        let k = k % self.order as u64;
        if let Some(t) = &self.tables {
            let e = (t.log[a.0 as usize] as u64 * k) % self.order as u64;
            return FieldElem(t.exp[e as usize]);
        }
        let mut result = FieldElem::ONE;
        let mut base = a;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// The primitive element α (the residue of x).
    pub fn alpha(&self) -> FieldElem {
        FieldElem(0b10)
    }

    /// α^k, with `k` reduced mod 2^m - 1 (negative exponents allowed).
    pub fn alpha_pow(&self, k: i64) -> FieldElem {
        let e = k.rem_euclid(self.order as i64) as u64;
        match &self.tables {
            Some(t) => FieldElem(t.exp[e as usize]),
            None => self.pow(self.alpha(), e),
        }
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        Some(self.pow(a, self.order as u64 - 1))
    }

    /// Discrete log base α, in `0..2^m - 1`; `None` for zero.
    pub fn log(&self, a: FieldElem) -> Option<u32> {
        if a.is_zero() || a.0 >> self.m != 0 {
            return None;
        }
        if let Some(t) = &self.tables {
            return Some(t.log[a.0 as usize]);
        }
        self.log_bsgs(a)
    }

    fn log_bsgs(&self, a: FieldElem) -> Option<u32> {
        let step = (self.order as f64).sqrt().ceil() as u32;
        let baby = self.baby_steps.get_or_init(|| {
            let mut map = HashMap::with_capacity(step as usize);
            let mut x = FieldElem::ONE;
            for j in 0..step {
                map.entry(x.0).or_insert(j);
                x = self.mul(x, self.alpha());
            }
            map
        });
        // a * (α^-step)^i = α^j  =>  log a = i * step + j
        let giant = self.alpha_pow(-(step as i64));
        let mut y = a;
        for i in 0..=step {
            if let Some(&j) = baby.get(&y.0) {
                return Some(((i as u64 * step as u64 + j as u64) % self.order as u64) as u32);
            }
            y = self.mul(y, giant);
        }
        None
    }
}

fn mul_direct(a: u32, b: u32, poly: u32, m: u32) -> u32 {
    let mut acc = 0u64;
    let mut x = a as u64;
    let mut y = b;
    while y != 0 {
        if y & 1 == 1 {
            acc ^= x;
        }
        x <<= 1;
        y >>= 1;
    }
    for k in (m..2 * m).rev() {
        if acc >> k & 1 == 1 {
            acc ^= (poly as u64) << (k - m);
        }
    }
    acc as u32
}

/// True when `poly` has degree `m` and x has multiplicative order exactly
/// 2^m - 1 modulo it.
pub fn is_primitive(poly: u32, m: u32) -> bool {
    if m == 0 || m > 31 || poly >> m != 1 || poly & 1 == 0 {
        return false;
    }
    let modulus = Poly2(poly as u128);
    let order = (1u64 << m) - 1;
    if Poly2::x_pow_mod(order, modulus) != Poly2::ONE {
        return false;
    }
    tables::prime_factors(order)
        .into_iter()
        .all(|q| Poly2::x_pow_mod(order / q, modulus) != Poly2::ONE)
}

/// Smallest `k` with `2^k >= x` (0 for x <= 1).
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}
