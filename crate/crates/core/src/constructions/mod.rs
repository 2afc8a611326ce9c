//! Parity-check Constructions A through E.
//!
//! Every construction shares one column layout, top to bottom: an indicator
//! bit, a construction-specific middle (dimension bits, GF(4) entries or BCH
//! sums), and a field segment holding α raised to the cell's row-major linear
//! index. Decoders read the middle to learn the error's shape, solve
//! α^x·γ = σ on the field segment for the anchor x, and accept a candidate
//! only if its full syndrome matches.

mod a;
mod b;
mod c;
mod de;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use a::DimMatrixA;
pub use b::DimMatrixB;

use crate::bch::{build_bch, build_bch_with_degree, BchColumns};
use crate::code::{Correction, LinearCode};
use crate::error::{DecodeError, Error, Result};
use crate::gf2::{ceil_log2, FieldCtx, FieldElem};
use crate::lattice::{ClusterShape, Dims, ErrorPattern};
use crate::syndrome::{SegmentLayout, Syndrome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstructionKind {
    A,
    B,
    C,
    D,
    E,
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Variant {
    A(DimMatrixA),
    B(DimMatrixB),
    C { bch: BchColumns },
    D { arm: usize, t: u32, bch: BchColumns },
    E { t: u32, bch: BchColumns },
}

/// A code defined by one of the constructions; immutable after build.
#[derive(Clone, Debug)]
pub struct ParityCode {
    kind: ConstructionKind,
    dims: Dims,
    field: Arc<FieldCtx>,
    layout: SegmentLayout,
    shape: ClusterShape,
    variant: Variant,
}

pub fn build_a(dims: &Dims, m: u32) -> Result<ParityCode> {
    build_a_in(dims, Arc::new(FieldCtx::new(m)?))
}

pub fn build_b(dims: &Dims, m: u32) -> Result<ParityCode> {
    build_b_in(dims, Arc::new(FieldCtx::new(m)?))
}

pub fn build_c(dims: &Dims, m: u32) -> Result<ParityCode> {
    build_c_in(dims, Arc::new(FieldCtx::new(m)?))
}

pub fn build_d(dims: &Dims, m: u32, arm: usize) -> Result<ParityCode> {
    build_d_in(dims, Arc::new(FieldCtx::new(m)?), arm)
}

pub fn build_e(dims: &Dims, m: u32) -> Result<ParityCode> {
    build_e_in(dims, Arc::new(FieldCtx::new(m)?))
}

/// Construction A: corrects any error confined to a 2-burst.
pub fn build_a_in(dims: &Dims, field: Arc<FieldCtx>) -> Result<ParityCode> {
    let matrix = DimMatrixA::new(dims.rank());
    let mut layout = SegmentLayout::new();
    layout.push("indicator", 1);
    layout.push("dimension", matrix.rows());
    layout.push("field", field.degree() as usize);
    ParityCode::finish_build(
        ConstructionKind::A,
        dims,
        field,
        layout,
        ClusterShape::TwoBurst,
        Variant::A(matrix),
    )
}

/// Construction B: corrects any error confined to a 3-burst on a line.
pub fn build_b_in(dims: &Dims, field: Arc<FieldCtx>) -> Result<ParityCode> {
    let matrix = DimMatrixB::new(dims.rank());
    let mut layout = SegmentLayout::new();
    layout.push("indicator", 1);
    layout.push("parity", 1);
    layout.push("gf4", 2 * matrix.rows());
    layout.push("field", field.degree() as usize);
    ParityCode::finish_build(
        ConstructionKind::B,
        dims,
        field,
        layout,
        ClusterShape::ThreeBurstOnLine,
        Variant::B(matrix),
    )
}

/// Construction C: corrects up to two errors inside a semi-cross with arms
/// of length one.
pub fn build_c_in(dims: &Dims, field: Arc<FieldCtx>) -> Result<ParityCode> {
    let bch = build_bch(2, dims.rank())?;
    let mut layout = SegmentLayout::new();
    layout.push("indicator", 1);
    layout.push("bch", bch.width());
    layout.push("field", field.degree() as usize);
    ParityCode::finish_build(
        ConstructionKind::C,
        dims,
        field,
        layout,
        ClusterShape::WeightInSemiCross { arm: 1, weight: 2 },
        Variant::C { bch },
    )
}

/// Construction D: corrects up to two errors inside a semi-cross with arms
/// of length `arm`.
pub fn build_d_in(dims: &Dims, field: Arc<FieldCtx>, arm: usize) -> Result<ParityCode> {
    if arm == 0 {
        return Err(Error::Infeasible("arm length must be at least 1".into()));
    }
    let columns = 2 * arm * dims.rank();
    let t = smallest_t(columns);
    let bch = build_bch_with_degree(4, t, columns)?;
    let mut layout = SegmentLayout::new();
    layout.push("indicator", 1);
    layout.push("bch", bch.width());
    layout.push("field", field.degree() as usize);
    ParityCode::finish_build(
        ConstructionKind::D,
        dims,
        field,
        layout,
        ClusterShape::WeightInSemiCross { arm, weight: 2 },
        Variant::D { arm, t, bch },
    )
}

/// Construction E: corrects up to two errors inside a cross with arms of
/// length one.
pub fn build_e_in(dims: &Dims, field: Arc<FieldCtx>) -> Result<ParityCode> {
    let columns = 4 * dims.rank();
    let t = smallest_t(columns);
    let bch = build_bch_with_degree(4, t, columns)?;
    let mut layout = SegmentLayout::new();
    layout.push("indicator", 1);
    layout.push("bch", bch.width());
    layout.push("half-sum", 1);
    layout.push("field", field.degree() as usize);
    ParityCode::finish_build(
        ConstructionKind::E,
        dims,
        field,
        layout,
        ClusterShape::WeightInCross { arm: 1, weight: 2 },
        Variant::E { t, bch },
    )
}

/// Smallest t with 2^t - 1 >= columns (at least 2).
pub fn smallest_t(columns: usize) -> u32 {
    let mut t = 2;
    while (1u64 << t) - 1 < columns as u64 {
        t += 1;
    }
    t
}

/// Smallest m with 2^m - 1 >= volume (at least 2).
pub fn auto_degree(volume: usize) -> u32 {
    let mut m = 2;
    while (1u64 << m) - 1 < volume as u64 {
        m += 1;
    }
    m
}

impl ParityCode {
    fn finish_build(
        kind: ConstructionKind,
        dims: &Dims,
        field: Arc<FieldCtx>,
        layout: SegmentLayout,
        shape: ClusterShape,
        variant: Variant,
    ) -> Result<ParityCode> {
        let m = field.degree();
        let volume = dims.volume();
        // Up to 2^m - 1 cells get distinct field values; one more cell is
        // allowed when its column still differs from the first cell's.
        if volume as u64 > 1u64 << m {
            return Err(Error::FieldTooSmall { m, volume });
        }
        let code = ParityCode { kind, dims: dims.clone(), field, layout, shape, variant };
        if volume as u64 > code.field.order() as u64 && code.column(0) == code.column(volume - 1) {
            return Err(Error::FieldTooSmall { m, volume });
        }
        code.check_multipliers()?;
        Ok(code)
    }

    // Every γ the decoder divides by must be nonzero.
    fn check_multipliers(&self) -> Result<()> {
        let f = &self.field;
        let zero = |g: FieldElem, what: String| -> Result<()> {
            if g.is_zero() {
                Err(Error::DegenerateField(format!("{what} vanishes in GF(2^{})", f.degree())))
            } else {
                Ok(())
            }
        };
        for axis in 0..self.dims.rank() {
            let n = self.dims.edges()[axis] as i64;
            let s = self.step_of(axis);
            if self.kind == ConstructionKind::B && n >= 3 {
                let g = f.add(f.add(FieldElem::ONE, f.alpha_pow(s)), f.alpha_pow(2 * s));
                zero(g, format!("1 + α^{s} + α^{}", 2 * s))?;
            }
            for l in 1..n {
                zero(f.add(FieldElem::ONE, f.alpha_pow(l * s)), format!("1 + α^{}", l * s))?;
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> ConstructionKind {
        self.kind
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<FieldCtx> {
        Arc::clone(&self.field)
    }

    pub fn layout(&self) -> &SegmentLayout {
        &self.layout
    }

    pub fn dim_matrix_a(&self) -> Option<&DimMatrixA> {
        match &self.variant {
            Variant::A(m) => Some(m),
            _ => None,
        }
    }

    pub fn dim_matrix_b(&self) -> Option<&DimMatrixB> {
        match &self.variant {
            Variant::B(m) => Some(m),
            _ => None,
        }
    }

    pub fn bch(&self) -> Option<&BchColumns> {
        match &self.variant {
            Variant::C { bch } | Variant::D { bch, .. } | Variant::E { bch, .. } => Some(bch),
            _ => None,
        }
    }

    /// Arm length for Construction D.
    pub fn arm(&self) -> Option<usize> {
        match &self.variant {
            Variant::D { arm, .. } => Some(*arm),
            _ => None,
        }
    }

    /// BCH field degree t for Constructions D and E.
    pub fn bch_t(&self) -> Option<u32> {
        match &self.variant {
            Variant::D { t, .. } | Variant::E { t, .. } => Some(*t),
            _ => None,
        }
    }

    /// Redundancy given by the construction's closed form with the nominal
    /// d = ⌈log D⌉; differs from `redundancy()` only for Construction C when
    /// the BCH field had to be enlarged.
    pub fn nominal_redundancy(&self) -> usize {
        let m = self.field.degree() as usize;
        let rank = self.dims.rank() as u64;
        match &self.variant {
            Variant::A(mat) => m + mat.rows() + 1,
            Variant::B(mat) => m + 2 * mat.rows() + 2,
            Variant::C { .. } => m + 2 * ceil_log2(rank) as usize + 1,
            Variant::D { t, .. } => m + 4 * *t as usize + 1,
            Variant::E { t, .. } => m + 4 * *t as usize + 2,
        }
    }

    /// Step i(ℓ) along a 0-based axis.
    pub(crate) fn step_of(&self, axis: usize) -> i64 {
        self.dims.stride(axis) as i64
    }

    pub(crate) fn field_elem_of(&self, cell: usize) -> FieldElem {
        self.field.alpha_pow(cell as i64)
    }

    pub(crate) fn write_field(&self, s: &mut Syndrome, cell: usize) {
        let seg = self.layout.get("field").expect("field segment");
        s.set_segment(seg.offset, seg.width, self.field_elem_of(cell).bits() as u128);
    }

    pub(crate) fn read(&self, s: &Syndrome, name: &str) -> u64 {
        let seg = self.layout.get(name).expect("segment");
        s.segment(seg.offset, seg.width)
    }

    pub(crate) fn sigma(&self, s: &Syndrome) -> FieldElem {
        self.field.elem(self.read(s, "field") as u32).expect("segment fits the field")
    }

    /// All cells x with α^x·γ = σ.
    pub(crate) fn solve(&self, gamma: FieldElem, sigma: FieldElem) -> Vec<usize> {
        let (Some(lg), Some(ls)) = (self.field.log(gamma), self.field.log(sigma)) else {
            return Vec::new();
        };
        let order = self.field.order() as usize;
        let x0 = (ls as usize + order - lg as usize) % order;
        (x0..self.dims.volume()).step_by(order).collect()
    }

    /// Move `k` steps along a 0-based axis, staying in bounds.
    pub(crate) fn step(&self, cell: usize, axis: usize, k: i64) -> Option<usize> {
        let c = self.dims.coord(cell, axis) as i64 + k;
        if c < 0 || c >= self.dims.edges()[axis] as i64 {
            return None;
        }
        Some((cell as i64 + k * self.step_of(axis)) as usize)
    }

    pub(crate) fn singles(&self, s: &Syndrome) -> Vec<Vec<usize>> {
        self.solve(FieldElem::ONE, self.sigma(s)).into_iter().map(|x| vec![x]).collect()
    }

    /// Keep the candidates that reproduce `s` exactly.
    pub(crate) fn settle(
        &self,
        s: &Syndrome,
        candidates: Vec<Vec<usize>>,
    ) -> std::result::Result<Correction, DecodeError> {
        let mut found: Vec<ErrorPattern> = Vec::new();
        for cells in candidates {
            let Ok(p) = ErrorPattern::new(cells.iter().copied()) else {
                continue;
            };
            if p.weight() != cells.len() || found.contains(&p) {
                continue;
            }
            if &self.syndrome_of(&p) == s {
                found.push(p);
            }
        }
        match found.len() {
            0 => Err(DecodeError::Uncorrectable),
            1 => Ok(Correction::Pattern(found.pop().unwrap())),
            n => Err(DecodeError::Ambiguous(n)),
        }
    }
}

impl LinearCode for ParityCode {
    fn dims(&self) -> &Dims {
        &self.dims
    }

    fn redundancy(&self) -> usize {
        self.layout.total()
    }

    fn column(&self, cell: usize) -> Syndrome {
        match &self.variant {
            Variant::A(mat) => a::column(self, mat, cell),
            Variant::B(mat) => b::column(self, mat, cell),
            Variant::C { bch } => c::column(self, bch, cell),
            Variant::D { arm, bch, .. } => de::column_d(self, bch, *arm, cell),
            Variant::E { bch, .. } => de::column_e(self, bch, cell),
        }
    }

    fn shape(&self) -> ClusterShape {
        self.shape
    }

    fn name(&self) -> String {
        let m = self.field.degree();
        match &self.variant {
            Variant::D { arm, t, .. } => format!("D[m={m},R={arm},t={t}]"),
            Variant::E { t, .. } => format!("E[m={m},t={t}]"),
            _ => format!("{}[m={m}]", self.kind),
        }
    }

    fn decode_syndrome(&self, s: &Syndrome) -> std::result::Result<Correction, DecodeError> {
        if s.len() != self.redundancy() {
            return Err(DecodeError::Uncorrectable);
        }
        if s.is_zero() {
            return Ok(Correction::NoError);
        }
        let candidates = match &self.variant {
            Variant::A(mat) => a::candidates(self, mat, s),
            Variant::B(mat) => b::candidates(self, mat, s),
            Variant::C { bch } => c::candidates(self, bch, s),
            Variant::D { arm, bch, .. } => de::candidates_d(self, bch, *arm, s),
            Variant::E { bch, .. } => de::candidates_e(self, bch, s),
        };
        self.settle(s, candidates)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{enumerate_patterns, Position};

    fn cell(dims: &Dims, p: &[usize]) -> usize {
        dims.linear_index(&Position(p.to_vec())).unwrap()
    }

    // Oracle: decode by brute-force search over the class.
    fn round_trip(code: &ParityCode) -> usize {
        let pats = enumerate_patterns(code.dims(), &code.shape());
        for p in &pats {
            let s = code.syndrome_of(p);
            assert_eq!(
                code.decode_syndrome(&s),
                Ok(Correction::Pattern(p.clone())),
                "{} pattern {:?}",
                code.name(),
                p.positions(code.dims())
            );
        }
        pats.len()
    }

    #[test]
    fn redundancy_formulas() {
        let d44 = Dims::new(vec![4, 4]).unwrap();
        assert_eq!(build_a(&d44, 5).unwrap().redundancy(), 7);
        let d444 = Dims::cube(3, 4).unwrap();
        assert_eq!(build_b(&d444, 7).unwrap().redundancy(), 13);
        let d88 = Dims::new(vec![8, 8]).unwrap();
        let d = build_d(&d88, 7, 2).unwrap();
        assert_eq!(d.bch_t(), Some(4));
        assert_eq!(d.redundancy(), 24);
        let e = build_e(&Dims::cube(3, 3).unwrap(), 5).unwrap();
        assert_eq!(e.bch_t(), Some(4));
        assert_eq!(e.redundancy(), 5 + 16 + 2);
    }

    #[test]
    fn construction_c_enlarges_bch_for_power_of_two_rank() {
        let dims = Dims::cube(4, 3).unwrap();
        let c = build_c(&dims, 7).unwrap();
        assert_eq!(c.nominal_redundancy(), 12);
        assert_eq!(c.redundancy(), 14);
        let c3 = build_c(&Dims::cube(3, 3).unwrap(), 5).unwrap();
        assert_eq!(c3.redundancy(), c3.nominal_redundancy());
    }

    #[test]
    fn field_too_small() {
        let dims = Dims::new(vec![4, 4]).unwrap();
        assert_eq!(build_a(&dims, 3).unwrap_err(), Error::FieldTooSmall { m: 3, volume: 16 });
        // 16 = 2^4 cells: first and last columns differ in the dimension bits
        assert!(build_a(&dims, 4).is_ok());
        // one axis of length 4: the two ends share every segment
        assert!(build_a(&Dims::new(vec![4]).unwrap(), 2).is_err());
    }

    #[test]
    fn a_columns() {
        let dims = Dims::new(vec![4, 4]).unwrap();
        let code = build_a(&dims, 5).unwrap();
        let origin = code.column(0);
        assert_eq!(origin.to_bit_string(), "1010000");
        let s = code.syndrome_of_cells(&[cell(&dims, &[0, 0]), cell(&dims, &[0, 1])]);
        assert!(!s.get(0));
        assert_eq!(code.read(&s, "dimension"), 1);
        let f = code.field();
        assert_eq!(code.sigma(&s), f.add(FieldElem::ONE, f.alpha()));
    }

    #[test]
    fn a_decodes_examples() {
        let dims = Dims::new(vec![4, 4]).unwrap();
        let code = build_a(&dims, 5).unwrap();
        assert_eq!(code.decode_syndrome(&Syndrome::zeros(7)), Ok(Correction::NoError));
        let p = ErrorPattern::new([cell(&dims, &[1, 2]), cell(&dims, &[2, 2])]).unwrap();
        let s = code.syndrome_of(&p);
        assert_eq!(code.decode_syndrome(&s), Ok(Correction::Pattern(p)));
        assert_eq!(round_trip(&code), 40);
    }

    #[test]
    fn b_gf4_segment_shapes() {
        let dims = Dims::cube(3, 4).unwrap();
        let code = build_b(&dims, 7).unwrap();
        let mat = code.dim_matrix_b().unwrap();
        assert_eq!(mat.rows(), 2);
        // origin: β^0 in both entries
        assert_eq!(code.read(&code.column(0), "gf4"), 0b01_01);
        for axis in 0..3 {
            let p = cell(&dims, &[1, 1, 1]);
            let s = code.syndrome_of_cells(&[
                p,
                code.step(p, axis, 1).unwrap(),
                code.step(p, axis, 2).unwrap(),
            ]);
            let g = code.read(&s, "gf4");
            for row in 0..2 {
                let entry = g >> (2 * row) & 0b11;
                assert_eq!(entry == 0, mat.entry(row, axis), "axis {axis} row {row}");
            }
            let far = code.syndrome_of_cells(&[p, code.step(p, axis, 2).unwrap()]);
            assert_eq!(code.read(&far, "parity"), 0);
            let near = code.syndrome_of_cells(&[p, code.step(p, axis, 1).unwrap()]);
            assert_eq!(code.read(&near, "parity"), 1);
        }
    }

    #[test]
    fn b_round_trip_small() {
        let code = build_b(&Dims::new(vec![5, 3]).unwrap(), 4).unwrap();
        round_trip(&code);
    }

    #[test]
    fn c_bch_segment_shapes() {
        let dims = Dims::cube(4, 3).unwrap();
        let code = build_c(&dims, 7).unwrap();
        let bch = code.bch().unwrap();
        let p = cell(&dims, &[0, 1, 0, 1]);
        for j in 0..4 {
            let pj = code.step(p, j, 1).unwrap();
            assert_eq!(code.read(&code.syndrome_of_cells(&[p, pj]), "bch"), bch.column(j));
            for k in 0..j {
                let pk = code.step(p, k, 1).unwrap();
                let s = code.syndrome_of_cells(&[pj, pk]);
                assert_eq!(code.read(&s, "bch"), bch.column(j) ^ bch.column(k));
            }
        }
        let single = code.syndrome_of_cells(&[p]);
        assert!(single.get(0));
        assert_eq!(code.decode_syndrome(&single), Ok(Correction::Pattern(ErrorPattern::new([p]).unwrap())));
    }

    #[test]
    fn c_round_trip_small() {
        round_trip(&build_c(&Dims::cube(3, 3).unwrap(), 5).unwrap());
    }

    #[test]
    fn d_same_axis_pair_uses_two_block_columns() {
        let dims = Dims::new(vec![8, 8]).unwrap();
        let code = build_d(&dims, 7, 2).unwrap();
        let bch = code.bch().unwrap();
        let p = cell(&dims, &[3, 5]);
        for l in 1..=2i64 {
            let q = code.step(p, 1, l).unwrap();
            let s = code.syndrome_of_cells(&[p, q]);
            let expect = bch.column(4 + 5 % 4) ^ bch.column(4 + (5 + l as usize) % 4);
            assert_eq!(code.read(&s, "bch"), expect);
        }
    }

    #[test]
    fn d_round_trip_small() {
        round_trip(&build_d(&Dims::new(vec![5, 4]).unwrap(), 5, 2).unwrap());
        round_trip(&build_d(&Dims::cube(3, 3).unwrap(), 5, 1).unwrap());
    }

    #[test]
    fn e_half_sum_bit() {
        let dims = Dims::cube(3, 4).unwrap();
        let code = build_e(&dims, 7).unwrap();
        assert_eq!(code.read(&code.column(0), "half-sum"), 0);
        assert_eq!(code.read(&code.column(cell(&dims, &[1, 1, 1])), "half-sum"), 1);
        assert_eq!(code.read(&code.column(cell(&dims, &[2, 2, 0])), "half-sum"), 0);
    }

    #[test]
    fn e_opposite_pair_residues_differ_by_two() {
        let dims = Dims::new(vec![5, 5]).unwrap();
        let code = build_e(&dims, 5).unwrap();
        let bch = code.bch().unwrap();
        let center = cell(&dims, &[2, 2]);
        let lo = code.step(center, 0, -1).unwrap();
        let hi = code.step(center, 0, 1).unwrap();
        let s = code.syndrome_of_cells(&[lo, hi]);
        let subset = bch.identify_subset(code.read(&s, "bch"), 4).unwrap();
        assert_eq!(subset.len(), 2);
        assert_eq!((subset[0] as i64 - subset[1] as i64).abs(), 2);
    }

    #[test]
    fn e_round_trip_small() {
        round_trip(&build_e(&Dims::new(vec![4, 5]).unwrap(), 5).unwrap());
    }

    #[test]
    fn uncorrectable_is_reported() {
        let dims = Dims::new(vec![4, 4]).unwrap();
        let code = build_a(&dims, 5).unwrap();
        // field segment alone, indicator clear
        let mut s = Syndrome::zeros(7);
        s.set(6, true);
        assert_eq!(code.decode_syndrome(&s), Err(DecodeError::Uncorrectable));
    }

    #[test]
    fn smallest_t_rule() {
        assert_eq!(smallest_t(8), 4);
        assert_eq!(smallest_t(12), 4);
        assert_eq!(smallest_t(16), 5);
        assert_eq!(auto_degree(16), 5);
        assert_eq!(auto_degree(64), 7);
    }
}
