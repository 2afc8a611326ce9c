use crate::code::LinearCode;
use crate::gf2::{ceil_log2, FieldElem};
use crate::syndrome::Syndrome;

use super::ParityCode;

/// The d x D dimension matrix, d = ⌈log D⌉. The column of the 0-based axis
/// `a` is the binary form of `a`, so columns are pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimMatrixA {
    rows: usize,
    rank: usize,
}

impl DimMatrixA {
    pub fn new(rank: usize) -> DimMatrixA {
        DimMatrixA { rows: ceil_log2(rank as u64) as usize, rank }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn column(&self, axis: usize) -> u64 {
        axis as u64
    }

    pub fn entry(&self, row: usize, axis: usize) -> bool {
        self.column(axis) >> row & 1 == 1
    }

    /// A·i^T mod 2.
    pub fn apply(&self, coords: &[usize]) -> u64 {
        coords
            .iter()
            .enumerate()
            .filter(|(_, &i)| i % 2 == 1)
            .fold(0, |acc, (a, _)| acc ^ self.column(a))
    }
}

pub(super) fn column(code: &ParityCode, mat: &DimMatrixA, cell: usize) -> Syndrome {
    let mut s = Syndrome::zeros(code.redundancy());
    s.set(0, true);
    let pos = code.dims().position(cell);
    let seg = code.layout().get("dimension").expect("dimension segment");
    s.set_segment(seg.offset, seg.width, mat.apply(pos.coords()) as u128);
    code.write_field(&mut s, cell);
    s
}

pub(super) fn candidates(code: &ParityCode, mat: &DimMatrixA, s: &Syndrome) -> Vec<Vec<usize>> {
    if s.get(0) {
        return code.singles(s);
    }
    // Two adjacent errors: the dimension bits name the axis.
    let v = code.read(s, "dimension");
    let Some(axis) = (0..mat.rank()).find(|&a| mat.column(a) == v) else {
        return Vec::new();
    };
    let f = code.field();
    let gamma = f.add(FieldElem::ONE, f.alpha_pow(code.step_of(axis)));
    code.solve(gamma, code.sigma(s))
        .into_iter()
        .filter_map(|x| code.step(x, axis, 1).map(|y| vec![x, y]))
        .collect()
}
