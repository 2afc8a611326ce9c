//! D-dimensional array geometry and the cluster-shape pattern classes.
//!
//! Arrays are noncyclic: a cluster instance is a translate of a window of
//! offsets whose every cell lies inside the array. A pattern class is the set
//! of nonempty subsets (optionally weight-limited) of all in-bounds
//! instances, deduplicated by the sorted list of linear indices.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Array edge lengths n_1..n_D, row-major (the last axis varies fastest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dims {
    edges: Vec<usize>,
    strides: Vec<usize>,
    volume: usize,
}

impl Dims {
    pub fn new(edges: Vec<usize>) -> Result<Dims> {
        if edges.is_empty() {
            return Err(Error::InvalidDims("at least one dimension is required".into()));
        }
        if let Some(&e) = edges.iter().find(|&&e| e < 2) {
            return Err(Error::InvalidDims(format!("edge length {e} is below 2")));
        }
        let mut strides = vec![1usize; edges.len()];
        let mut volume = 1usize;
        for axis in (0..edges.len()).rev() {
            strides[axis] = volume;
            volume = volume
                .checked_mul(edges[axis])
                .ok_or_else(|| Error::InvalidDims("array volume overflows".into()))?;
        }
        Ok(Dims { edges, strides, volume })
    }

    pub fn cube(rank: usize, edge: usize) -> Result<Dims> {
        Dims::new(vec![edge; rank])
    }

    /// Number of dimensions D.
    pub fn rank(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    /// Total number of cells N.
    pub fn volume(&self) -> usize {
        self.volume
    }

    /// Stride of a 0-based axis in the row-major order.
    pub fn stride(&self, axis: usize) -> usize {
        self.strides[axis]
    }

    pub fn is_cube(&self) -> bool {
        self.edges.windows(2).all(|w| w[0] == w[1])
    }

    pub fn linear_index(&self, p: &Position) -> Result<usize> {
        if p.0.len() != self.rank() || p.0.iter().zip(&self.edges).any(|(&i, &n)| i >= n) {
            return Err(Error::OutOfBounds(p.0.clone()));
        }
        Ok(p.0.iter().zip(&self.strides).map(|(i, s)| i * s).sum())
    }

    pub fn position(&self, index: usize) -> Position {
        assert!(index < self.volume, "linear index {index} out of range");
        Position(self.edges.iter().zip(&self.strides).map(|(&n, &s)| index / s % n).collect())
    }

    /// Coordinate of `index` along a 0-based axis.
    pub fn coord(&self, index: usize, axis: usize) -> usize {
        index / self.strides[axis] % self.edges[axis]
    }

    /// Step i(ℓ) between consecutive cells along the 1-based dimension `dim`.
    pub fn dim_step(&self, dim: usize) -> Result<usize> {
        if dim == 0 || dim > self.rank() {
            return Err(Error::InvalidDimension { index: dim, rank: self.rank() });
        }
        Ok(self.strides[dim - 1])
    }

    /// Translate a cell by an offset vector, or `None` when it leaves the
    /// array.
    pub fn translate(&self, index: usize, offset: &[i64]) -> Option<usize> {
        let mut out = 0usize;
        for (axis, &o) in offset.iter().enumerate() {
            let c = self.coord(index, axis) as i64 + o;
            if c < 0 || c >= self.edges[axis] as i64 {
                return None;
            }
            out += c as usize * self.strides[axis];
        }
        Some(out)
    }

    /// Cells of the instance of `window` anchored at `anchor`, if all are
    /// in bounds.
    pub fn place(&self, anchor: usize, window: &[Offset]) -> Option<Vec<usize>> {
        window.iter().map(|o| self.translate(anchor, &o.0)).collect()
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Coordinates (i_1, ..., i_D), each 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

/// A displacement vector relative to a cluster anchor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Offset(pub Vec<i64>);

impl Offset {
    pub fn zero(rank: usize) -> Offset {
        Offset(vec![0; rank])
    }

    /// `scale` times the unit vector along a 0-based axis.
    pub fn axis(rank: usize, axis: usize, scale: i64) -> Offset {
        let mut v = vec![0; rank];
        v[axis] = scale;
        Offset(v)
    }
}

/// The error classes the codes are built to correct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClusterShape {
    /// Two adjacent cells (or one).
    TwoBurst,
    /// Up to three consecutive cells on an axis-parallel line.
    ThreeBurstOnLine,
    /// Center plus `arm` cells in the positive direction of every axis.
    SemiCross { arm: usize },
    /// Center plus `arm` cells in both directions of every axis.
    Cross { arm: usize },
    WeightInSemiCross { arm: usize, weight: usize },
    WeightInCross { arm: usize, weight: usize },
    /// At most `weight` errors inside an `edge` x `edge` square spanned by two
    /// axes.
    WeightInSquare { edge: usize, weight: usize },
}

impl ClusterShape {
    /// Offset windows whose in-bounds translates are the cluster instances.
    pub fn windows(&self, rank: usize) -> Vec<Vec<Offset>> {
        match *self {
            ClusterShape::TwoBurst => (0..rank)
                .map(|a| vec![Offset::zero(rank), Offset::axis(rank, a, 1)])
                .collect(),
            ClusterShape::ThreeBurstOnLine => (0..rank)
                .map(|a| {
                    vec![Offset::zero(rank), Offset::axis(rank, a, 1), Offset::axis(rank, a, 2)]
                })
                .collect(),
            ClusterShape::SemiCross { arm } | ClusterShape::WeightInSemiCross { arm, .. } => {
                vec![shape_offsets(&ClusterShape::SemiCross { arm }, rank)]
            }
            ClusterShape::Cross { arm } | ClusterShape::WeightInCross { arm, .. } => {
                vec![shape_offsets(&ClusterShape::Cross { arm }, rank)]
            }
            ClusterShape::WeightInSquare { edge, .. } => {
                let side = edge as i64;
                if rank == 1 {
                    return vec![(0..side).map(|k| Offset(vec![k])).collect()];
                }
                let mut out = Vec::new();
                for a in 0..rank {
                    for b in a + 1..rank {
                        let mut w = Vec::new();
                        for x in 0..side {
                            for y in 0..side {
                                let mut v = vec![0; rank];
                                v[a] = x;
                                v[b] = y;
                                w.push(Offset(v));
                            }
                        }
                        out.push(w);
                    }
                }
                out
            }
        }
    }

    /// Maximum number of erroneous cells within one instance, if limited.
    pub fn weight_limit(&self) -> Option<usize> {
        match *self {
            ClusterShape::WeightInSemiCross { weight, .. }
            | ClusterShape::WeightInCross { weight, .. }
            | ClusterShape::WeightInSquare { weight, .. } => Some(weight),
            _ => None,
        }
    }

    /// Cluster size B: cells in one instance window.
    pub fn cluster_size(&self, rank: usize) -> usize {
        self.windows(rank).iter().map(Vec::len).max().unwrap_or(0)
    }
}

impl fmt::Display for ClusterShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ClusterShape::TwoBurst => write!(f, "2-burst"),
            ClusterShape::ThreeBurstOnLine => write!(f, "3-burst on a line"),
            ClusterShape::SemiCross { arm } => write!(f, "semi-cross(R={arm})"),
            ClusterShape::Cross { arm } => write!(f, "cross(R={arm})"),
            ClusterShape::WeightInSemiCross { arm, weight } => {
                write!(f, "weight<={weight} in semi-cross(R={arm})")
            }
            ClusterShape::WeightInCross { arm, weight } => {
                write!(f, "weight<={weight} in cross(R={arm})")
            }
            ClusterShape::WeightInSquare { edge, weight } => {
                write!(f, "weight<={weight} in {edge}x{edge} square")
            }
        }
    }
}

/// Offsets of a semi-cross or cross with the given arm length, center first.
/// Other shapes return the union of their windows.
pub fn shape_offsets(shape: &ClusterShape, rank: usize) -> Vec<Offset> {
    match *shape {
        ClusterShape::SemiCross { arm } | ClusterShape::WeightInSemiCross { arm, .. } => {
            let mut v = vec![Offset::zero(rank)];
            for a in 0..rank {
                for l in 1..=arm as i64 {
                    v.push(Offset::axis(rank, a, l));
                }
            }
            v
        }
        ClusterShape::Cross { arm } | ClusterShape::WeightInCross { arm, .. } => {
            let mut v = vec![Offset::zero(rank)];
            for a in 0..rank {
                for l in 1..=arm as i64 {
                    v.push(Offset::axis(rank, a, -l));
                    v.push(Offset::axis(rank, a, l));
                }
            }
            v
        }
        _ => {
            let set: BTreeSet<Offset> = shape.windows(rank).into_iter().flatten().collect();
            set.into_iter().collect()
        }
    }
}

/// A nonempty set of erroneous cells, kept as sorted linear indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ErrorPattern {
    cells: Vec<usize>,
}

impl ErrorPattern {
    pub fn new(cells: impl IntoIterator<Item = usize>) -> Result<ErrorPattern> {
        let set: BTreeSet<usize> = cells.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(ErrorPattern { cells: set.into_iter().collect() })
    }

    pub fn from_positions(dims: &Dims, positions: &[Position]) -> Result<ErrorPattern> {
        let cells = positions.iter().map(|p| dims.linear_index(p)).collect::<Result<Vec<_>>>()?;
        ErrorPattern::new(cells)
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn weight(&self) -> usize {
        self.cells.len()
    }

    pub fn positions(&self, dims: &Dims) -> Vec<Position> {
        self.cells.iter().map(|&c| dims.position(c)).collect()
    }

    /// Symmetric difference, `None` when it is empty.
    pub fn symmetric_difference(&self, other: &ErrorPattern) -> Option<ErrorPattern> {
        let a: BTreeSet<usize> = self.cells.iter().copied().collect();
        let b: BTreeSet<usize> = other.cells.iter().copied().collect();
        ErrorPattern::new(a.symmetric_difference(&b).copied()).ok()
    }
}

/// Every in-bounds cluster instance, as cell lists in window order.
pub fn instances(dims: &Dims, shape: &ClusterShape) -> Vec<Vec<usize>> {
    let windows = shape.windows(dims.rank());
    let mut out = Vec::new();
    for anchor in 0..dims.volume() {
        for w in &windows {
            if let Some(cells) = dims.place(anchor, w) {
                out.push(cells);
            }
        }
    }
    out
}

/// Every nonempty pattern of the class, each exactly once, in sorted order.
pub fn enumerate_patterns(dims: &Dims, shape: &ClusterShape) -> Vec<ErrorPattern> {
    let limit = shape.weight_limit();
    let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cells in instances(dims, shape) {
        let k = cells.len();
        let max_w = limit.unwrap_or(k).min(k);
        for_each_subset(&cells, max_w, |subset| {
            let mut v = subset.to_vec();
            v.sort_unstable();
            set.insert(v);
        });
    }
    set.into_iter().map(|cells| ErrorPattern { cells }).collect()
}

/// Calls `f` on every nonempty subset of `items` with at most `max` elements.
pub(crate) fn for_each_subset(items: &[usize], max: usize, mut f: impl FnMut(&[usize])) {
    fn rec(
        items: &[usize],
        start: usize,
        max: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        for i in start..items.len() {
            cur.push(items[i]);
            f(cur);
            if cur.len() < max {
                rec(items, i + 1, max, cur, f);
            }
            cur.pop();
        }
    }
    if max > 0 {
        rec(items, 0, max, &mut Vec::with_capacity(max), &mut f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(v: &[usize]) -> Position {
        Position(v.to_vec())
    }

    #[test]
    fn linear_index_examples() {
        let d = Dims::new(vec![4, 4]).unwrap();
        assert_eq!(d.linear_index(&pos(&[0, 0])).unwrap(), 0);
        assert_eq!(d.linear_index(&pos(&[1, 2])).unwrap(), 6);
        let d3 = Dims::cube(3, 3).unwrap();
        assert_eq!(d3.linear_index(&pos(&[2, 2, 2])).unwrap(), 26);
        assert!(d.linear_index(&pos(&[4, 0])).is_err());
        assert!(d.linear_index(&pos(&[0])).is_err());
    }

    #[test]
    fn dim_step_examples() {
        let d = Dims::new(vec![4, 4]).unwrap();
        assert_eq!(d.dim_step(2).unwrap(), 1);
        let diff = d.linear_index(&pos(&[1, 0])).unwrap() - d.linear_index(&pos(&[0, 0])).unwrap();
        assert_eq!(d.dim_step(1).unwrap(), diff);
        let d = Dims::new(vec![3, 5, 7]).unwrap();
        assert_eq!(d.dim_step(1).unwrap(), 35);
        assert!(d.dim_step(0).is_err());
        assert!(d.dim_step(4).is_err());
    }

    #[test]
    fn rejects_bad_dims() {
        assert!(Dims::new(vec![]).is_err());
        assert!(Dims::new(vec![4, 1]).is_err());
    }

    #[test]
    fn shape_offset_sizes() {
        let s = shape_offsets(&ClusterShape::SemiCross { arm: 1 }, 3);
        assert_eq!(s.len(), 4);
        assert!(s.contains(&Offset(vec![0, 0, 1])));
        let c = shape_offsets(&ClusterShape::Cross { arm: 1 }, 2);
        assert_eq!(c.len(), 5);
        assert!(c.contains(&Offset(vec![-1, 0])));
        let mut line: Vec<i64> = shape_offsets(&ClusterShape::Cross { arm: 2 }, 1)
            .into_iter()
            .map(|o| o.0[0])
            .collect();
        line.sort();
        assert_eq!(line, vec![-2, -1, 0, 1, 2]);
        assert_eq!(shape_offsets(&ClusterShape::SemiCross { arm: 3 }, 4).len(), 13);
        assert_eq!(shape_offsets(&ClusterShape::Cross { arm: 2 }, 3).len(), 13);
    }

    #[test]
    fn two_burst_counts() {
        let line = Dims::new(vec![2]).unwrap();
        let pats = enumerate_patterns(&line, &ClusterShape::TwoBurst);
        let cells: Vec<&[usize]> = pats.iter().map(|p| p.cells()).collect();
        assert_eq!(cells, vec![&[0][..], &[0, 1], &[1]]);
        let sq = Dims::new(vec![4, 4]).unwrap();
        assert_eq!(enumerate_patterns(&sq, &ClusterShape::TwoBurst).len(), 40);
    }

    #[test]
    fn three_burst_window_dedup() {
        let d = Dims::new(vec![5]).unwrap();
        let pats = enumerate_patterns(&d, &ClusterShape::ThreeBurstOnLine);
        let has = |c: &[usize]| pats.iter().any(|p| p.cells() == c);
        for c in [&[0, 1][..], &[0, 2], &[1, 2], &[0, 1, 2]] {
            assert!(has(c));
        }
        assert_eq!(pats.iter().filter(|p| p.cells() == [1, 2]).count(), 1);
        // 5 singles, 4 adjacent pairs, 3 distance-two pairs, 3 triples
        assert_eq!(pats.len(), 15);
    }

    #[test]
    fn subsets_respect_limit() {
        let mut n = 0;
        for_each_subset(&[1, 2, 3, 4, 5], 2, |_| n += 1);
        assert_eq!(n, 15);
        let mut all = 0;
        for_each_subset(&[1, 2, 3, 4, 5], 5, |_| all += 1);
        assert_eq!(all, 31);
    }

    #[test]
    fn empty_pattern_rejected() {
        assert_eq!(ErrorPattern::new(Vec::new()).unwrap_err(), Error::EmptyPattern);
        let p = ErrorPattern::new([3, 1, 3]).unwrap();
        assert_eq!(p.cells(), &[1, 3]);
    }

    #[test]
    fn semicross_instances_are_fully_in_bounds() {
        let d = Dims::cube(4, 3).unwrap();
        let inst = instances(&d, &ClusterShape::SemiCross { arm: 1 });
        assert_eq!(inst.len(), 16);
        let d = Dims::cube(2, 5).unwrap();
        assert_eq!(instances(&d, &ClusterShape::Cross { arm: 1 }).len(), 9);
    }
}
