use crate::array::BitArray;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::syndrome::Syndrome;

/// Reduced basis vector with the parity positions that sum to it.
#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    vec: Syndrome,
    combo: Syndrome,
}

/// Systematic encoder: information bits fill the non-parity cells and the
/// parity cells are solved from the check columns.
#[derive(Clone, Debug)]
pub struct Encoder {
    dims: crate::lattice::Dims,
    columns: Vec<Syndrome>,
    parity: Vec<usize>,
    info: Vec<usize>,
    basis: Vec<Row>,
}

impl Encoder {
    /// Scan cells in index order and keep those whose columns are
    /// independent of the ones already kept.
    pub fn new(code: &dyn LinearCode) -> Encoder {
        let r = code.redundancy();
        let n = code.dims().volume();
        let columns: Vec<Syndrome> = (0..n).map(|c| code.column(c)).collect();
        let mut basis: Vec<Row> = Vec::new();
        let mut parity = Vec::new();
        let mut info = Vec::new();
        for (cell, col) in columns.iter().enumerate() {
            if basis.len() == r {
                info.push(cell);
                continue;
            }
            let mut combo = Syndrome::zeros(r);
            let mut v = col.clone();
            reduce(&basis, &mut v, &mut combo);
            match v.lowest_one() {
                Some(pivot) => {
                    combo.set(parity.len(), !combo.get(parity.len()));
                    parity.push(cell);
                    basis.push(Row { pivot, vec: v, combo });
                }
                None => info.push(cell),
            }
        }
        Encoder { dims: code.dims().clone(), columns, parity, info, basis }
    }

    /// Rank of the parity-check matrix.
    pub fn rank(&self) -> usize {
        self.parity.len()
    }

    pub fn info_len(&self) -> usize {
        self.info.len()
    }

    pub fn parity_positions(&self) -> &[usize] {
        &self.parity
    }

    pub fn info_positions(&self) -> &[usize] {
        &self.info
    }

    pub fn encode(&self, info_bits: &[bool]) -> Result<BitArray> {
        if info_bits.len() != self.info.len() {
            return Err(Error::LengthMismatch { expected: self.info.len(), got: info_bits.len() });
        }
        let mut array = BitArray::zeros(&self.dims);
        let r = self.columns.first().map_or(0, Syndrome::len);
        let mut s = Syndrome::zeros(r);
        for (&cell, &bit) in self.info.iter().zip(info_bits) {
            if bit {
                array.set(cell, true);
                s ^= &self.columns[cell];
            }
        }
        let mut combo = Syndrome::zeros(r);
        reduce(&self.basis, &mut s, &mut combo);
        debug_assert!(s.is_zero(), "information syndrome outside the column span");
        for (k, &cell) in self.parity.iter().enumerate() {
            if combo.get(k) {
                array.set(cell, true);
            }
        }
        Ok(array)
    }

    /// Information bits of a codeword.
    pub fn extract(&self, array: &BitArray) -> Vec<bool> {
        self.info.iter().map(|&c| array.get(c)).collect()
    }
}

fn reduce(basis: &[Row], v: &mut Syndrome, combo: &mut Syndrome) {
    for row in basis {
        if v.get(row.pivot) {
            *v ^= &row.vec;
            *combo ^= &row.combo;
        }
    }
}
