use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An r-bit vector: a parity-check column or the syndrome of a word.
///
/// Bit `k` corresponds to parity check `k`; segments are packed LSB-first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syndrome {
    words: Vec<u64>,
    len: usize,
}

impl Syndrome {
    pub fn zeros(len: usize) -> Syndrome {
        Syndrome { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn get(&self, k: usize) -> bool {
        assert!(k < self.len);
        self.words[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn set(&mut self, k: usize, value: bool) {
        assert!(k < self.len);
        let mask = 1u64 << (k % 64);
        if value {
            self.words[k / 64] |= mask;
        } else {
            self.words[k / 64] &= !mask;
        }
    }

    /// Read `width <= 64` bits starting at `offset`, bit `offset` landing in
    /// bit 0 of the result.
    pub fn segment(&self, offset: usize, width: usize) -> u64 {
        assert!(width <= 64 && offset + width <= self.len);
        let mut v = 0u64;
        for k in 0..width {
            if self.get(offset + k) {
                v |= 1 << k;
            }
        }
        v
    }

    /// Wide variant of [`Syndrome::segment`] for up to 128 bits.
    pub fn segment_u128(&self, offset: usize, width: usize) -> u128 {
        assert!(width <= 128 && offset + width <= self.len);
        let mut v = 0u128;
        for k in 0..width {
            if self.get(offset + k) {
                v |= 1 << k;
            }
        }
        v
    }

    pub fn set_segment(&mut self, offset: usize, width: usize, value: u128) {
        assert!(width <= 128 && offset + width <= self.len);
        for k in 0..width {
            self.set(offset + k, value >> k & 1 == 1);
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Hex with LSB-first nibble order: digit `k` holds bits `4k..4k+4`,
    /// bit `4k` being the digit's least significant bit.
    pub fn to_hex(&self) -> String {
        (0..self.len.div_ceil(4))
            .map(|d| {
                let w = 4.min(self.len - 4 * d);
                char::from_digit(self.segment(4 * d, w) as u32, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(hex: &str, len: usize) -> Result<Syndrome> {
        if hex.len() != len.div_ceil(4) {
            return Err(Error::Parse(format!("expected {} hex digits, got {}", len.div_ceil(4), hex.len())));
        }
        let mut s = Syndrome::zeros(len);
        for (d, ch) in hex.chars().enumerate() {
            let v = ch.to_digit(16).ok_or_else(|| Error::Parse(format!("bad hex digit {ch:?}")))?;
            let w = 4.min(len - 4 * d);
            if (v as u64) >> w != 0 {
                return Err(Error::Parse("hex value exceeds column length".into()));
            }
            s.set_segment(4 * d, w, v as u128);
        }
        Ok(s)
    }

    /// Bits as a 0/1 string, bit 0 first.
    pub fn to_bit_string(&self) -> String {
        (0..self.len).map(|k| if self.get(k) { '1' } else { '0' }).collect()
    }
}

impl BitXorAssign<&Syndrome> for Syndrome {
    fn bitxor_assign(&mut self, rhs: &Syndrome) {
        assert_eq!(self.len, rhs.len, "syndrome length mismatch");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor<&Syndrome> for &Syndrome {
    type Output = Syndrome;
    fn bitxor(self, rhs: &Syndrome) -> Syndrome {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl fmt::Debug for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Syndrome[{}]", self.to_bit_string())
    }
}

/// A named run of parity-check rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub name: String,
    pub offset: usize,
    pub width: usize,
}

/// Ordered, contiguous segments covering all r rows.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentLayout {
    segments: Vec<Segment>,
}

impl SegmentLayout {
    pub fn new() -> SegmentLayout {
        SegmentLayout::default()
    }

    /// Append a segment; returns its offset.
    pub fn push(&mut self, name: &str, width: usize) -> usize {
        let offset = self.total();
        self.segments.push(Segment { name: name.to_string(), offset, width });
        offset
    }

    pub fn total(&self) -> usize {
        self.segments.last().map_or(0, |s| s.offset + s.width)
    }

    pub fn get(&self, name: &str) -> Option<&Segment> {
        self.segments.iter().find(|s| s.name == name)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// `name:offset+width` entries separated by spaces.
    pub fn describe(&self) -> String {
        self.segments
            .iter()
            .map(|s| format!("{}:{}+{}", s.name, s.offset, s.width))
            .collect::<Vec<_>>()
            .join(" ")
    }
}
