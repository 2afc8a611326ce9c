use crate::array::BitArray;
use crate::error::DecodeError;
use crate::lattice::{ClusterShape, Dims, ErrorPattern};
use crate::syndrome::Syndrome;

/// Result of a successful decode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Correction {
    NoError,
    Pattern(ErrorPattern),
}

impl Correction {
    pub fn pattern(&self) -> Option<&ErrorPattern> {
        match self {
            Correction::NoError => None,
            Correction::Pattern(p) => Some(p),
        }
    }
}

/// A binary linear array code given by one parity-check column per cell.
pub trait LinearCode {
    fn dims(&self) -> &Dims;

    /// Number of parity-check rows r.
    fn redundancy(&self) -> usize;

    /// Column h_i of the parity-check matrix for a linear cell index.
    fn column(&self, cell: usize) -> Syndrome;

    /// The declared correctable class.
    fn shape(&self) -> ClusterShape;

    fn name(&self) -> String;

    fn decode_syndrome(&self, s: &Syndrome) -> Result<Correction, DecodeError>;

    fn syndrome_of_cells(&self, cells: &[usize]) -> Syndrome {
        let mut s = Syndrome::zeros(self.redundancy());
        for &c in cells {
            s ^= &self.column(c);
        }
        s
    }

    fn syndrome_of(&self, pattern: &ErrorPattern) -> Syndrome {
        self.syndrome_of_cells(pattern.cells())
    }

    fn syndrome_of_array(&self, array: &BitArray) -> Syndrome {
        let cells: Vec<usize> = array.ones().collect();
        self.syndrome_of_cells(&cells)
    }
}
