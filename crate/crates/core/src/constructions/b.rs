use crate::code::LinearCode;
use crate::gf2::{ceil_log2, gf4_pow, FieldElem};
use crate::syndrome::Syndrome;

use super::ParityCode;

/// The ⌈log(D+1)⌉ x D matrix whose columns, left to right, are the binary
/// forms of D, D-1, ..., 1; row 0 holds the most significant bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimMatrixB {
    rows: usize,
    rank: usize,
}

impl DimMatrixB {
    pub fn new(rank: usize) -> DimMatrixB {
        DimMatrixB { rows: ceil_log2(rank as u64 + 1) as usize, rank }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Integer whose binary form is the column of the 0-based axis.
    pub fn column_value(&self, axis: usize) -> u64 {
        (self.rank - axis) as u64
    }

    pub fn entry(&self, row: usize, axis: usize) -> bool {
        self.column_value(axis) >> (self.rows - 1 - row) & 1 == 1
    }

    /// B·i^T over the integers.
    pub fn apply(&self, coords: &[usize]) -> Vec<u64> {
        (0..self.rows)
            .map(|row| {
                coords
                    .iter()
                    .enumerate()
                    .filter(|&(a, _)| self.entry(row, a))
                    .map(|(_, &i)| i as u64)
                    .sum()
            })
            .collect()
    }

    /// Axis whose column has ones exactly on the rows flagged in `rows_set`.
    fn axis_of(&self, rows_set: &[bool]) -> Option<usize> {
        let v = rows_set
            .iter()
            .enumerate()
            .fold(0u64, |acc, (row, &b)| acc | (b as u64) << (self.rows - 1 - row));
        (1..=self.rank as u64).contains(&v).then(|| self.rank - v as usize)
    }
}

pub(super) fn column(code: &ParityCode, mat: &DimMatrixB, cell: usize) -> Syndrome {
    let mut s = Syndrome::zeros(code.redundancy());
    s.set(0, true);
    let pos = code.dims().position(cell);
    let sum: usize = pos.coords().iter().sum();
    s.set(1, sum % 2 == 1);
    let seg = code.layout().get("gf4").expect("gf4 segment");
    for (row, e) in mat.apply(pos.coords()).into_iter().enumerate() {
        s.set_segment(seg.offset + 2 * row, 2, gf4_pow(e).bits() as u128);
    }
    code.write_field(&mut s, cell);
    s
}

pub(super) fn candidates(code: &ParityCode, mat: &DimMatrixB, s: &Syndrome) -> Vec<Vec<usize>> {
    let g = code.read(s, "gf4");
    let zero_rows: Vec<bool> = (0..mat.rows()).map(|row| g >> (2 * row) & 0b11 == 0).collect();
    let f = code.field();
    let sigma = code.sigma(s);
    let gamma_for = |offsets: &[i64]| {
        offsets.iter().fold(FieldElem::ZERO, |acc, &k| f.add(acc, f.alpha_pow(k)))
    };

    if s.get(0) {
        // Odd weight: a single error has no zero GF(4) entry, three in a
        // line zero out exactly the rows where the axis column is one.
        if zero_rows.iter().all(|z| !z) {
            return code.singles(s);
        }
        let Some(axis) = mat.axis_of(&zero_rows) else {
            return Vec::new();
        };
        let st = code.step_of(axis);
        return code
            .solve(gamma_for(&[0, st, 2 * st]), sigma)
            .into_iter()
            .filter_map(|x| Some(vec![x, code.step(x, axis, 1)?, code.step(x, axis, 2)?]))
            .collect();
    }

    // Even weight: the nonzero entries mark the axis column; the parity bit
    // separates adjacent from distance-two pairs.
    let nonzero: Vec<bool> = zero_rows.iter().map(|z| !z).collect();
    let Some(axis) = mat.axis_of(&nonzero) else {
        return Vec::new();
    };
    let gap = if s.get(1) { 1 } else { 2 };
    let st = code.step_of(axis);
    code.solve(gamma_for(&[0, gap * st]), sigma)
        .into_iter()
        .filter_map(|x| code.step(x, axis, gap).map(|y| vec![x, y]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_for_three_dimensions() {
        let m = DimMatrixB::new(3);
        let rows: Vec<Vec<u8>> =
            (0..2).map(|r| (0..3).map(|a| m.entry(r, a) as u8).collect()).collect();
        assert_eq!(rows, vec![vec![1, 1, 0], vec![1, 0, 1]]);
        assert_eq!(m.apply(&[1, 2, 3]), vec![3, 4]);
    }

    #[test]
    fn axis_lookup() {
        let m = DimMatrixB::new(5);
        assert_eq!(m.rows(), 3);
        for a in 0..5 {
            let set: Vec<bool> = (0..3).map(|r| m.entry(r, a)).collect();
            assert_eq!(m.axis_of(&set), Some(a));
        }
        assert_eq!(m.axis_of(&[false, false, false]), None);
        assert_eq!(m.axis_of(&[true, true, true]), None);
    }
}
