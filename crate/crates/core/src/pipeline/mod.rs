//! Code assembly, encoding, reference decoding and redundancy accounting.

mod coloring_code;
mod encoder;
mod report;
mod table;

pub use coloring_code::{assemble_coloring_code, ColoringCode};
pub use encoder::Encoder;
pub use report::{redundancy_report, BoundCheck, RedundancyReport, Relation};
pub use table::TableDecoder;

use crate::code::{Correction, LinearCode};
use crate::constructions::ParityCode;
use crate::error::DecodeError;
use crate::lattice::{ClusterShape, Dims};
use crate::syndrome::{SegmentLayout, Syndrome};

/// Any code this crate can build.
#[derive(Clone, Debug)]
pub enum AnyCode {
    Parity(ParityCode),
    Coloring(ColoringCode),
}

impl AnyCode {
    pub fn layout(&self) -> &SegmentLayout {
        match self {
            AnyCode::Parity(c) => c.layout(),
            AnyCode::Coloring(c) => c.layout(),
        }
    }
}

impl From<ParityCode> for AnyCode {
    fn from(c: ParityCode) -> AnyCode {
        AnyCode::Parity(c)
    }
}

impl From<ColoringCode> for AnyCode {
    fn from(c: ColoringCode) -> AnyCode {
        AnyCode::Coloring(c)
    }
}

impl LinearCode for AnyCode {
    fn dims(&self) -> &Dims {
        match self {
            AnyCode::Parity(c) => c.dims(),
            AnyCode::Coloring(c) => c.dims(),
        }
    }

    fn redundancy(&self) -> usize {
        match self {
            AnyCode::Parity(c) => c.redundancy(),
            AnyCode::Coloring(c) => c.redundancy(),
        }
    }

    fn column(&self, cell: usize) -> Syndrome {
        match self {
            AnyCode::Parity(c) => c.column(cell),
            AnyCode::Coloring(c) => c.column(cell),
        }
    }

    fn shape(&self) -> ClusterShape {
        match self {
            AnyCode::Parity(c) => c.shape(),
            AnyCode::Coloring(c) => c.shape(),
        }
    }

    fn name(&self) -> String {
        match self {
            AnyCode::Parity(c) => c.name(),
            AnyCode::Coloring(c) => c.name(),
        }
    }

    fn decode_syndrome(&self, s: &Syndrome) -> Result<Correction, DecodeError> {
        match self {
            AnyCode::Parity(c) => c.decode_syndrome(s),
            AnyCode::Coloring(c) => c.decode_syndrome(s),
        }
    }
}
