//! Shortened binary BCH parity-check column sets (double- and
//! four-error-correcting) with subset-sum identification.
//!
//! Column `c` is the concatenation of α^c, α^{3c} (and α^{5c}, α^{7c} for the
//! four-error-correcting set) over GF(2^w), each w bits, LSB-first. The
//! distance property (all sums of at most `t_cap` distinct columns are
//! distinct and nonzero) is checked exhaustively when the set is built, and
//! the resulting sum table doubles as the identification index.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf2::{FieldCtx, MAX_DEGREE, MIN_DEGREE};
use crate::lattice::for_each_subset;

#[derive(Clone, Debug)]
pub struct BchColumns {
    t_cap: usize,
    degree: u32,
    cols: Vec<u64>,
    sums: HashMap<u64, Vec<usize>>,
}

impl BchColumns {
    /// Designed correction capability (2 or 4).
    pub fn t_cap(&self) -> usize {
        self.t_cap
    }

    /// Degree w of the component field GF(2^w).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Bits per column.
    pub fn width(&self) -> usize {
        self.t_cap * self.degree as usize
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn column(&self, c: usize) -> u64 {
        self.cols[c]
    }

    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    /// The unique set of at most `max_size` column indices whose XOR is `s`
    /// (empty for zero).
    pub fn identify_subset(&self, s: u64, max_size: usize) -> Option<Vec<usize>> {
        if s == 0 {
            return Some(Vec::new());
        }
        self.sums.get(&s).filter(|v| v.len() <= max_size.min(self.t_cap)).cloned()
    }
}

/// Smallest-degree set of `count` columns with the required distance.
pub fn build_bch(t_cap: usize, count: usize) -> Result<BchColumns> {
    check_t_cap(t_cap)?;
    let mut w = MIN_DEGREE;
    while ((1u64 << w) - 1) < count as u64 {
        w += 1;
    }
    while w <= MAX_DEGREE && t_cap * w as usize <= 64 {
        if let Ok(set) = build_bch_with_degree(t_cap, w, count) {
            return Ok(set);
        }
        w += 1;
    }
    Err(Error::Infeasible(format!("no BCH column set for t={t_cap}, count={count}")))
}

/// The first `count` columns over GF(2^degree).
pub fn build_bch_with_degree(t_cap: usize, degree: u32, count: usize) -> Result<BchColumns> {
    check_t_cap(t_cap)?;
    let field = FieldCtx::new(degree)?;
    let order = field.order() as usize;
    if count > order {
        return Err(Error::Infeasible(format!(
            "{count} columns exceed the {order} available over GF(2^{degree})"
        )));
    }
    if t_cap * degree as usize > 64 {
        return Err(Error::Infeasible("BCH column wider than 64 bits".into()));
    }
    let cols: Vec<u64> = (0..count)
        .map(|c| {
            (0..t_cap).fold(0u64, |acc, k| {
                let e = (2 * k + 1) as i64 * c as i64;
                acc | (field.alpha_pow(e).bits() as u64) << (k as u32 * degree)
            })
        })
        .collect();

    let mut sums: HashMap<u64, Vec<usize>> = HashMap::new();
    let idx: Vec<usize> = (0..count).collect();
    let mut clash = None;
    for_each_subset(&idx, t_cap, |subset| {
        if clash.is_some() {
            return;
        }
        let s = subset.iter().fold(0u64, |acc, &c| acc ^ cols[c]);
        if s == 0 {
            clash = Some(subset.to_vec());
            return;
        }
        if let Some(prev) = sums.insert(s, subset.to_vec()) {
            clash = Some(prev);
        }
    });
    if let Some(subset) = clash {
        return Err(Error::Infeasible(format!(
            "BCH columns over GF(2^{degree}) lack distance {}: subset {subset:?} collides",
            2 * t_cap + 1
        )));
    }
    Ok(BchColumns { t_cap, degree, cols, sums })
}

fn check_t_cap(t_cap: usize) -> Result<()> {
    if t_cap == 2 || t_cap == 4 {
        Ok(())
    } else {
        Err(Error::Infeasible(format!("unsupported BCH capability {t_cap}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Oracle: all subsets of size <= t by bitmask, compared pairwise.
    fn distinct_sums(cols: &[u64], t: usize) -> (bool, usize) {
        let n = cols.len();
        let mut seen = std::collections::HashSet::new();
        let mut count = 0;
        for mask in 1u32..(1 << n) {
            if mask.count_ones() as usize > t {
                continue;
            }
            count += 1;
            let s = (0..n).filter(|&i| mask >> i & 1 == 1).fold(0, |a, i| a ^ cols[i]);
            if s == 0 || !seen.insert(s) {
                return (false, count);
            }
        }
        (true, count)
    }

    #[test]
    fn column_zero_is_all_ones_exponents() {
        let b = build_bch_with_degree(2, 3, 7).unwrap();
        assert_eq!(b.column(0), 0b001_001);
        assert_eq!(b.width(), 6);
    }

    #[test]
    fn double_error_set_of_seven() {
        let b = build_bch_with_degree(2, 3, 7).unwrap();
        let (ok, count) = distinct_sums(b.columns(), 2);
        assert!(ok);
        assert_eq!(count, 28);
    }

    #[test]
    fn four_error_set_of_fifteen() {
        let b = build_bch_with_degree(4, 4, 15).unwrap();
        let (ok, count) = distinct_sums(b.columns(), 4);
        assert!(ok);
        assert_eq!(count, 1940);
    }

    #[test]
    fn identify() {
        let b = build_bch_with_degree(2, 3, 7).unwrap();
        assert_eq!(b.identify_subset(0, 2), Some(vec![]));
        assert_eq!(b.identify_subset(b.column(4), 2), Some(vec![4]));
        let mut got = b.identify_subset(b.column(3) ^ b.column(5), 2).unwrap();
        got.sort();
        assert_eq!(got, vec![3, 5]);
        assert_eq!(b.identify_subset(b.column(3) ^ b.column(5), 1), None);
    }

    #[test]
    fn too_many_columns() {
        assert!(build_bch_with_degree(2, 3, 8).is_err());
        assert!(build_bch(3, 4).is_err());
    }

    #[test]
    fn auto_degree_for_four_columns() {
        // GF(4) offers only three nonzero columns, so four need GF(8).
        let b = build_bch(2, 4).unwrap();
        assert_eq!(b.degree(), 3);
        let b = build_bch(2, 3).unwrap();
        assert_eq!(b.degree(), 2);
    }
}
