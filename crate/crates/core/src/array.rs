//! Binary D-dimensional arrays and their text format.
//!
//! The format is a header line `dims n1,...,nD` followed by the cells in
//! row-major order as ASCII `0`/`1`. Whitespace between cells is ignored, so
//! writers may wrap lines freely.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lattice::{Dims, ErrorPattern};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitArray {
    dims: Dims,
    cells: Vec<u8>,
}

impl BitArray {
    pub fn zeros(dims: &Dims) -> BitArray {
        BitArray { dims: dims.clone(), cells: vec![0; dims.volume()] }
    }

    pub fn from_cells(dims: &Dims, cells: Vec<u8>) -> Result<BitArray> {
        if cells.len() != dims.volume() {
            return Err(Error::LengthMismatch { expected: dims.volume(), got: cells.len() });
        }
        if cells.iter().any(|&b| b > 1) {
            return Err(Error::Parse("array cells must be 0 or 1".into()));
        }
        Ok(BitArray { dims: dims.clone(), cells })
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn get(&self, cell: usize) -> bool {
        self.cells[cell] == 1
    }

    pub fn set(&mut self, cell: usize, value: bool) {
        self.cells[cell] = value as u8;
    }

    pub fn flip(&mut self, cell: usize) {
        self.cells[cell] ^= 1;
    }

    pub fn apply(&mut self, pattern: &ErrorPattern) {
        for &c in pattern.cells() {
            self.flip(c);
        }
    }

    /// Linear indices of the set cells.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells.iter().enumerate().filter(|(_, &b)| b == 1).map(|(i, _)| i)
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(|&b| b == 0)
    }

    /// Text form, one line per run of the last axis.
    pub fn to_text(&self) -> String {
        let mut out = format!("dims {}\n", self.dims);
        let row = *self.dims.edges().last().unwrap();
        for chunk in self.cells.chunks(row) {
            for &b in chunk {
                out.push(if b == 1 { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<BitArray> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty array file".into()))?;
        let dims = parse_dims_header(header)?;
        let mut cells = Vec::with_capacity(dims.volume());
        for line in lines {
            for ch in line.chars().filter(|c| !c.is_whitespace()) {
                match ch {
                    '0' => cells.push(0),
                    '1' => cells.push(1),
                    other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
                }
            }
        }
        BitArray::from_cells(&dims, cells)
    }
}

fn parse_dims_header(line: &str) -> Result<Dims> {
    let rest = line
        .trim()
        .strip_prefix("dims")
        .ok_or_else(|| Error::Parse(format!("expected `dims` header, got {line:?}")))?;
    Dims::new(parse_list(rest.trim())?)
}

/// Comma-separated unsigned integers.
pub fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect()
}

/// Render a pattern as `i1,..,iD;j1,..,jD`.
pub fn pattern_to_text(dims: &Dims, pattern: &ErrorPattern) -> String {
    let mut out = String::new();
    for (k, p) in pattern.positions(dims).iter().enumerate() {
        if k > 0 {
            out.push(';');
        }
        let coords: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
        let _ = write!(out, "{}", coords.join(","));
    }
    out
}

/// Parse the `i1,..,iD;j1,..,jD` pattern syntax.
pub fn parse_pattern(dims: &Dims, text: &str) -> Result<ErrorPattern> {
    let positions = text
        .split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_list(t).map(crate::lattice::Position))
        .collect::<Result<Vec<_>>>()?;
    ErrorPattern::from_positions(dims, &positions)
}
