//! Colorings of a D-dimensional array for the coloring method: the integer
//! coloring matrix, the per-coloring color ranges of a scheme, the property
//! checks (p.1) to (p.3), and projection onto 1-D component words.
//!
//! Row s of the matrix colors cell i with Σ_k a_{sk}·i_k, optionally reduced
//! modulo M_s. Colors are shifted to 0-based component positions; modular
//! rows are additionally rotated so that clusters wrap as little as possible.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::array::BitArray;
use crate::error::{Error, Result};
use crate::lattice::{shape_offsets, ClusterShape, Dims, Offset, Position};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowMode {
    Plain,
    Modular(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixKind {
    SemiCross,
    SemiCrossModular,
    Cross,
    Custom,
}

/// The D x D coloring matrix A_D with a mode per row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringMatrix {
    kind: MatrixKind,
    entries: Vec<Vec<i64>>,
    modes: Vec<RowMode>,
    /// False for parameters outside the proven range (odd D).
    theorem_backed: bool,
}

impl ColoringMatrix {
    pub fn new(entries: Vec<Vec<i64>>, modes: Vec<RowMode>) -> Result<ColoringMatrix> {
        let d = entries.len();
        if d == 0 || entries.iter().any(|r| r.len() != d) || modes.len() != d {
            return Err(Error::Infeasible("coloring matrix must be square with one mode per row".into()));
        }
        if modes.iter().any(|m| matches!(m, RowMode::Modular(q) if *q < 1)) {
            return Err(Error::Infeasible("modulus must be positive".into()));
        }
        Ok(ColoringMatrix { kind: MatrixKind::Custom, entries, modes, theorem_backed: true })
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Entry a_{sk}, both 0-based.
    pub fn entry(&self, s: usize, k: usize) -> i64 {
        self.entries[s][k]
    }

    pub fn row(&self, s: usize) -> &[i64] {
        &self.entries[s]
    }

    pub fn mode(&self, s: usize) -> RowMode {
        self.modes[s]
    }

    pub fn is_plain(&self) -> bool {
        self.modes.iter().all(|m| *m == RowMode::Plain)
    }

    pub fn is_theorem_backed(&self) -> bool {
        self.theorem_backed
    }

    /// Σ_k a_{sk}·i_k without reduction.
    pub fn linear(&self, s: usize, coords: &[usize]) -> i64 {
        self.entries[s].iter().zip(coords).map(|(&a, &i)| a * i as i64).sum()
    }

    /// Row value with the row's modulus applied.
    pub fn raw_color(&self, s: usize, coords: &[usize]) -> i64 {
        self.reduce(s, self.linear(s, coords))
    }

    fn reduce(&self, s: usize, v: i64) -> i64 {
        match self.modes[s] {
            RowMode::Plain => v,
            RowMode::Modular(q) => v.rem_euclid(q),
        }
    }

    /// Determinant by fraction-free Gaussian elimination.
    pub fn determinant(&self) -> i128 {
        let n = self.rank();
        let mut a: Vec<Vec<i128>> =
            self.entries.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                    return 0;
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }
}

impl fmt::Display for ColoringMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (row, mode) in self.entries.iter().zip(&self.modes) {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
            write!(f, "[{}]", cells.join(""))?;
            if let RowMode::Modular(q) = mode {
                write!(f, " mod {q}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Semi-cross coloring: row 1 is (1, ..., D), row s >= 2 has k for k < s
/// and k - D - 1 for k >= s. Only even D is proven.
pub fn semicross_matrix(d: usize) -> Result<ColoringMatrix> {
    if d < 2 || d % 2 == 1 {
        return Err(Error::UnsupportedByTheorem(format!(
            "semi-cross coloring requires an even dimension >= 2, got {d}"
        )));
    }
    semicross_matrix_experimental(d)
}

/// [`semicross_matrix`] without the evenness restriction.
pub fn semicross_matrix_experimental(d: usize) -> Result<ColoringMatrix> {
    if d == 0 {
        return Err(Error::InvalidDims("dimension must be at least 1".into()));
    }
    let di = d as i64;
    let entries = (1..=di)
        .map(|s| {
            (1..=di).map(|k| if s == 1 || k < s { k } else { k - di - 1 }).collect()
        })
        .collect();
    let mut m = ColoringMatrix::new(entries, vec![RowMode::Plain; d])?;
    m.kind = MatrixKind::SemiCross;
    m.theorem_backed = d % 2 == 0;
    Ok(m)
}

/// Semi-cross coloring with rows 2..D reduced modulo n(D+1).
pub fn semicross_matrix_modular(d: usize, n: usize) -> Result<ColoringMatrix> {
    let mut m = semicross_matrix(d)?;
    modular_rows(&mut m, |_| (n * (d + 1)) as i64)?;
    m.kind = MatrixKind::SemiCrossModular;
    Ok(m)
}

/// [`semicross_matrix_modular`] without the evenness restriction.
pub fn semicross_matrix_modular_experimental(d: usize, n: usize) -> Result<ColoringMatrix> {
    let mut m = semicross_matrix_experimental(d)?;
    modular_rows(&mut m, |_| (n * (d + 1)) as i64)?;
    m.kind = MatrixKind::SemiCrossModular;
    Ok(m)
}

/// Cross coloring: a_{sk} = s·k reduced to the symmetric residues modulo
/// 2s(D-s+1)+1; rows s >= 2 are modular with M_s = 2s(D-s+1)n.
pub fn cross_matrix(d: usize, n: usize) -> Result<ColoringMatrix> {
    if d == 0 {
        return Err(Error::InvalidDims("dimension must be at least 1".into()));
    }
    if n < 2 {
        return Err(Error::InvalidDims(format!("edge length {n} is below 2")));
    }
    let di = d as i64;
    let entries = (1..=di)
        .map(|s| {
            let q = 2 * s * (di - s + 1) + 1;
            (1..=di).map(|k| symmetric_residue(s * k, q)).collect()
        })
        .collect();
    let mut m = ColoringMatrix::new(entries, vec![RowMode::Plain; d])?;
    modular_rows(&mut m, |s| 2 * s * (di - s + 1) * n as i64)?;
    m.kind = MatrixKind::Cross;
    Ok(m)
}

/// Representative of `v` mod the odd `q` in [-(q-1)/2, (q-1)/2].
pub fn symmetric_residue(v: i64, q: i64) -> i64 {
    let r = v.rem_euclid(q);
    if r > (q - 1) / 2 {
        r - q
    } else {
        r
    }
}

// Rows 2..D become modular with modulus f(s), s 1-based.
fn modular_rows(m: &mut ColoringMatrix, f: impl Fn(i64) -> i64) -> Result<()> {
    for s in 1..m.rank() {
        let q = f(s as i64 + 1);
        if q < 1 {
            return Err(Error::Infeasible("modulus must be positive".into()));
        }
        m.modes[s] = RowMode::Modular(q);
    }
    Ok(())
}

/// A coloring matrix bound to a shape and an array, with measured color
/// ranges and cluster spans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringScheme {
    matrix: ColoringMatrix,
    shape: ClusterShape,
    dims: Dims,
    offsets: Vec<Offset>,
    /// Per coloring: first component position (plain) or rotation (modular).
    lo: Vec<i64>,
    eta: Vec<usize>,
    span: Vec<usize>,
}

/// Scheme summary for descriptors and reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeSummary {
    pub matrix: ColoringMatrix,
    pub shape: ClusterShape,
    pub cluster_size: usize,
    pub lo: Vec<i64>,
    pub eta: Vec<usize>,
    pub span: Vec<usize>,
    pub delta: Vec<i64>,
}

impl ColoringScheme {
    pub fn new(matrix: ColoringMatrix, shape: ClusterShape, dims: &Dims) -> Result<ColoringScheme> {
        let d = dims.rank();
        if matrix.rank() != d {
            return Err(Error::LengthMismatch { expected: d, got: matrix.rank() });
        }
        match shape {
            ClusterShape::SemiCross { .. } | ClusterShape::Cross { .. } => {}
            other => {
                return Err(Error::Infeasible(format!("no coloring scheme for shape {other}")))
            }
        }
        let offsets = shape_offsets(&shape, d);
        let mut scheme = ColoringScheme {
            matrix,
            shape,
            dims: dims.clone(),
            offsets,
            lo: vec![0; d],
            eta: vec![0; d],
            span: vec![0; d],
        };
        for s in 0..d {
            match scheme.matrix.mode(s) {
                RowMode::Plain => scheme.measure_plain(s),
                RowMode::Modular(q) => scheme.measure_modular(s, q),
            }
        }
        Ok(scheme)
    }

    fn measure_plain(&mut self, s: usize) {
        let row = self.matrix.row(s);
        let (mut lo, mut hi) = (0i64, 0i64);
        for (&a, &n) in row.iter().zip(self.dims.edges()) {
            let v = a * (n as i64 - 1);
            lo += v.min(0);
            hi += v.max(0);
        }
        let vals: Vec<i64> = self.offsets.iter().map(|o| dot(row, &o.0)).collect();
        let span = vals.iter().max().unwrap() - vals.iter().min().unwrap() + 1;
        self.lo[s] = lo;
        self.eta[s] = (hi - lo + 1) as usize;
        self.span[s] = span as usize;
    }

    // Try every rotation among the residues that occur and keep the one
    // with the smallest cluster span, then the shortest length.
    fn measure_modular(&mut self, s: usize, q: i64) {
        let used = self.residues(s, q);
        let clusters: Vec<Vec<i64>> = self.anchor_box().map_or_else(Vec::new, |(lo, hi)| {
            let mut out = Vec::new();
            for_each_in_box(&lo, &hi, |coords| {
                let base = self.matrix.linear(s, coords);
                let mut v: Vec<i64> = self
                    .offsets
                    .iter()
                    .map(|o| (base + dot(self.matrix.row(s), &o.0)).rem_euclid(q))
                    .collect();
                v.sort_unstable();
                v.dedup();
                if !out.contains(&v) {
                    out.push(v);
                }
            });
            out
        });
        let mut best: Option<(usize, usize, i64)> = None;
        for &rot in &used {
            let idx = |v: i64| (v - rot).rem_euclid(q);
            let span = clusters
                .iter()
                .map(|c| {
                    let (mn, mx) = c.iter().fold((i64::MAX, i64::MIN), |(a, b), &v| {
                        (a.min(idx(v)), b.max(idx(v)))
                    });
                    (mx - mn + 1) as usize
                })
                .max()
                .unwrap_or(1);
            let eta = used.iter().map(|&v| idx(v)).max().unwrap() as usize + 1;
            if best.is_none_or(|(bs, be, _)| (span, eta) < (bs, be)) {
                best = Some((span, eta, rot));
            }
        }
        let (span, eta, rot) = best.expect("at least one residue");
        self.lo[s] = rot;
        self.eta[s] = eta;
        self.span[s] = span;
    }

    // Residues mod q reached by Σ a_k i_k over the array.
    fn residues(&self, s: usize, q: i64) -> Vec<i64> {
        let mut seen = vec![false; q as usize];
        seen[0] = true;
        for (&a, &n) in self.matrix.row(s).iter().zip(self.dims.edges()) {
            let mut next = vec![false; q as usize];
            for (r, _) in seen.iter().enumerate().filter(|(_, &b)| b) {
                for i in 0..n as i64 {
                    next[(r as i64 + a * i).rem_euclid(q) as usize] = true;
                }
            }
            seen = next;
        }
        seen.iter().enumerate().filter(|(_, &b)| b).map(|(r, _)| r as i64).collect()
    }

    /// Anchor coordinate ranges whose instance lies in bounds.
    fn anchor_box(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let d = self.dims.rank();
        let mut lo = vec![0usize; d];
        let mut hi = vec![0usize; d];
        for k in 0..d {
            let mn = self.offsets.iter().map(|o| o.0[k]).min().unwrap();
            let mx = self.offsets.iter().map(|o| o.0[k]).max().unwrap();
            let n = self.dims.edges()[k] as i64;
            let (a, b) = (-mn, n - 1 - mx);
            if a > b {
                return None;
            }
            lo[k] = a as usize;
            hi[k] = b as usize;
        }
        Some((lo, hi))
    }

    pub fn matrix(&self) -> &ColoringMatrix {
        &self.matrix
    }

    pub fn shape(&self) -> ClusterShape {
        self.shape
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn rank(&self) -> usize {
        self.dims.rank()
    }

    /// Cluster size B.
    pub fn cluster_size(&self) -> usize {
        self.offsets.len()
    }

    pub fn offsets(&self) -> &[Offset] {
        &self.offsets
    }

    pub fn lo(&self, s: usize) -> i64 {
        self.lo[s]
    }

    /// Component length η_s.
    pub fn eta(&self, s: usize) -> usize {
        self.eta[s]
    }

    /// Largest color spread of one cluster, max - min + 1.
    pub fn span(&self, s: usize) -> usize {
        self.span[s]
    }

    /// δ_s = span_s - B.
    pub fn delta(&self, s: usize) -> i64 {
        self.span[s] as i64 - self.cluster_size() as i64
    }

    pub fn summary(&self) -> SchemeSummary {
        SchemeSummary {
            matrix: self.matrix.clone(),
            shape: self.shape,
            cluster_size: self.cluster_size(),
            lo: self.lo.clone(),
            eta: self.eta.clone(),
            span: self.span.clone(),
            delta: (0..self.rank()).map(|s| self.delta(s)).collect(),
        }
    }

    fn index_of(&self, s: usize, linear: i64) -> usize {
        match self.matrix.mode(s) {
            RowMode::Plain => (linear - self.lo[s]) as usize,
            RowMode::Modular(q) => (linear - self.lo[s]).rem_euclid(q) as usize,
        }
    }

    /// 0-based component position of a cell under coloring `s`.
    pub fn color_of(&self, s: usize, p: &Position) -> usize {
        self.index_of(s, self.matrix.linear(s, p.coords()))
    }

    pub fn color_of_cell(&self, s: usize, cell: usize) -> usize {
        self.color_of(s, &self.dims.position(cell))
    }

    /// Colors of a cell under every coloring.
    pub fn colors_of_cell(&self, cell: usize) -> Vec<usize> {
        let p = self.dims.position(cell);
        (0..self.rank()).map(|s| self.color_of(s, &p)).collect()
    }

    /// Component word of coloring `s`: entry j is the XOR of the cells with
    /// color j.
    pub fn project(&self, s: usize, array: &BitArray) -> Result<Vec<bool>> {
        if array.dims() != &self.dims {
            return Err(Error::InvalidDims(format!(
                "array dims {} do not match scheme dims {}",
                array.dims(),
                self.dims
            )));
        }
        let mut word = vec![false; self.eta[s]];
        for cell in array.ones() {
            word[self.color_of_cell(s, cell)] ^= true;
        }
        Ok(word)
    }

    // Visit every in-bounds anchor in parallel, passing the anchor
    // coordinates and the color indices of its instance per coloring.
    fn find_anchor<T: Send>(
        &self,
        f: impl Fn(&[usize], &[Vec<usize>]) -> Option<T> + Sync,
    ) -> Option<T> {
        let (lo, hi) = self.anchor_box()?;
        let d = self.rank();
        let mat = &self.matrix;
        let off: Vec<Vec<i64>> =
            (0..d).map(|s| self.offsets.iter().map(|o| dot(mat.row(s), &o.0)).collect()).collect();
        par_box(&lo, &hi, |coords, lin| {
            let colors: Vec<Vec<usize>> = (0..d)
                .map(|s| off[s].iter().map(|&o| self.index_of(s, lin[s] + o)).collect())
                .collect();
            f(coords, &colors)
        }, mat)
    }

    fn instance_positions(&self, anchor: &[usize]) -> Vec<Position> {
        self.offsets
            .iter()
            .map(|o| Position(anchor.iter().zip(&o.0).map(|(&a, &x)| (a as i64 + x) as usize).collect()))
            .collect()
    }
}

fn dot(row: &[i64], v: &[i64]) -> i64 {
    row.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Calls `f` on every coordinate vector in the box [lo, hi], row-major.
fn for_each_in_box(lo: &[usize], hi: &[usize], mut f: impl FnMut(&[usize])) {
    let d = lo.len();
    let mut c = lo.to_vec();
    loop {
        f(&c);
        let mut k = d;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if c[k] < hi[k] {
                c[k] += 1;
                break;
            }
            c[k] = lo[k];
        }
    }
}

/// Parallel scan of the box [lo, hi] with the unreduced row values
/// Σ a_{sk} i_k maintained incrementally. Returns the first hit in
/// row-major order.
fn par_box<T: Send>(
    lo: &[usize],
    hi: &[usize],
    f: impl Fn(&[usize], &[i64]) -> Option<T> + Sync,
    mat: &ColoringMatrix,
) -> Option<T> {
    let d = lo.len();
    let sizes: Vec<usize> = lo.iter().zip(hi).map(|(a, b)| b - a + 1).collect();
    let total: usize = sizes.iter().product();
    let chunk = 1 << 14;
    let chunks = total.div_ceil(chunk);
    (0..chunks).into_par_iter().find_map_first(|ci| {
        let start = ci * chunk;
        let end = (start + chunk).min(total);
        let mut c = vec![0usize; d];
        let mut rem = start;
        for k in (0..d).rev() {
            c[k] = lo[k] + rem % sizes[k];
            rem /= sizes[k];
        }
        let mut lin: Vec<i64> = (0..d).map(|s| mat.linear(s, &c)).collect();
        for _ in start..end {
            if let Some(t) = f(&c, &lin) {
                return Some(t);
            }
            let mut k = d;
            while k > 0 {
                k -= 1;
                if c[k] < hi[k] {
                    c[k] += 1;
                    for (s, l) in lin.iter_mut().enumerate() {
                        *l += mat.entry(s, k);
                    }
                    break;
                }
                for (s, l) in lin.iter_mut().enumerate() {
                    *l -= mat.entry(s, k) * (hi[k] - lo[k]) as i64;
                }
                c[k] = lo[k];
            }
        }
        None
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Property {
    P1,
    P2,
    P3,
}

/// A witness that a property fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub property: Property,
    /// 0-based coloring index, when one coloring is at fault.
    pub coloring: Option<usize>,
    pub positions: Vec<Position>,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails", self.property)?;
        if let Some(s) = self.coloring {
            write!(f, " for coloring {}", s + 1)?;
        }
        let ps: Vec<String> = self.positions.iter().map(|p| format!("{:?}", p.0)).collect();
        write!(f, " at {}: {}", ps.join(" "), self.detail)
    }
}

/// Colors inside every cluster instance are distinct and spread over at
/// most B + δ_s positions.
pub fn check_p1(scheme: &ColoringScheme) -> std::result::Result<(), Counterexample> {
    let hit = scheme.find_anchor(|anchor, colors| {
        for (s, cs) in colors.iter().enumerate() {
            let mut v = cs.clone();
            v.sort_unstable();
            let distinct = v.windows(2).all(|w| w[0] != w[1]);
            let spread = v[v.len() - 1] - v[0] + 1;
            if !distinct || spread > scheme.span(s) {
                return Some((anchor.to_vec(), s, distinct, spread));
            }
        }
        None
    });
    match hit {
        None => Ok(()),
        Some((anchor, s, distinct, spread)) => Err(Counterexample {
            property: Property::P1,
            coloring: Some(s),
            positions: scheme.instance_positions(&anchor),
            detail: if distinct {
                format!("spread {spread} exceeds {}", scheme.span(s))
            } else {
                "repeated color inside a cluster".into()
            },
        }),
    }
}

/// No two cells share the full color tuple.
pub fn check_p2(scheme: &ColoringScheme) -> std::result::Result<(), Counterexample> {
    let d = scheme.rank();
    let bits: Vec<u32> = (0..d).map(|s| usize::BITS - (scheme.eta(s).max(2) - 1).leading_zeros()).collect();
    let lo = vec![0usize; d];
    let hi: Vec<usize> = scheme.dims().edges().iter().map(|n| n - 1).collect();
    let mat = scheme.matrix();
    let tuple = |lin: &[i64]| -> Vec<usize> { (0..d).map(|s| scheme.index_of(s, lin[s])).collect() };

    let collision = if bits.iter().sum::<u32>() <= 128 {
        let pack = |t: &[usize]| t.iter().zip(&bits).fold(0u128, |acc, (&c, &b)| acc << b | c as u128);
        let mut keys: Vec<u128> = collect_box(&lo, &hi, mat, |lin| pack(&tuple(lin)));
        keys.par_sort_unstable();
        keys.windows(2).find(|w| w[0] == w[1]).map(|w| {
            let dup = w[0];
            let again: Vec<u128> = collect_box(&lo, &hi, mat, |lin| pack(&tuple(lin)));
            let cells: Vec<usize> =
                again.iter().enumerate().filter(|(_, &k)| k == dup).map(|(i, _)| i).take(2).collect();
            (cells[0], cells[1])
        })
    } else {
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut hit = None;
        for cell in 0..scheme.dims().volume() {
            let t = scheme.colors_of_cell(cell);
            if let Some(&prev) = seen.get(&t) {
                hit = Some((prev, cell));
                break;
            }
            seen.insert(t, cell);
        }
        hit
    };
    match collision {
        None => Ok(()),
        Some((a, b)) => Err(Counterexample {
            property: Property::P2,
            coloring: None,
            positions: vec![scheme.dims().position(a), scheme.dims().position(b)],
            detail: format!("both cells have colors {:?}", scheme.colors_of_cell(a)),
        }),
    }
}

// Evaluate `f` on every cell of the box in row-major order.
fn collect_box<T: Send>(
    lo: &[usize],
    hi: &[usize],
    mat: &ColoringMatrix,
    f: impl Fn(&[i64]) -> T + Sync,
) -> Vec<T> {
    let d = lo.len();
    let sizes: Vec<usize> = lo.iter().zip(hi).map(|(a, b)| b - a + 1).collect();
    let total: usize = sizes.iter().product();
    let chunk = 1 << 14;
    (0..total.div_ceil(chunk))
        .into_par_iter()
        .flat_map_iter(|ci| {
            let start = ci * chunk;
            let end = (start + chunk).min(total);
            let mut out = Vec::with_capacity(end - start);
            let mut c = vec![0usize; d];
            let mut rem = start;
            for k in (0..d).rev() {
                c[k] = lo[k] + rem % sizes[k];
                rem /= sizes[k];
            }
            let mut lin: Vec<i64> = (0..d).map(|s| mat.linear(s, &c)).collect();
            for _ in start..end {
                out.push(f(&lin));
                let mut k = d;
                while k > 0 {
                    k -= 1;
                    if c[k] < hi[k] {
                        c[k] += 1;
                        for (s, l) in lin.iter_mut().enumerate() {
                            *l += mat.entry(s, k);
                        }
                        break;
                    }
                    for (s, l) in lin.iter_mut().enumerate() {
                        *l -= mat.entry(s, k) * (hi[k] - lo[k]) as i64;
                    }
                    c[k] = lo[k];
                }
            }
            out
        })
        .collect()
}

/// (p.2) decided by invertibility; `None` unless every row is plain.
pub fn p2_by_determinant(matrix: &ColoringMatrix) -> Option<bool> {
    matrix.is_plain().then(|| matrix.determinant() != 0)
}

/// Cells with equal first color have s-colors congruent modulo B + δ_s.
pub fn check_p3(scheme: &ColoringScheme) -> std::result::Result<(), Counterexample> {
    let d = scheme.rank();
    for s in 1..d {
        let q = scheme.span(s);
        let mut first: HashMap<usize, (usize, usize)> = HashMap::new();
        for cell in 0..scheme.dims().volume() {
            let c1 = scheme.color_of_cell(0, cell);
            let cs = scheme.color_of_cell(s, cell);
            match first.get(&c1) {
                Some(&(r, prev)) if r != cs % q => {
                    return Err(Counterexample {
                        property: Property::P3,
                        coloring: Some(s),
                        positions: vec![scheme.dims().position(prev), scheme.dims().position(cell)],
                        detail: format!("first color {c1}; colors differ by a non-multiple of {q}"),
                    });
                }
                Some(_) => {}
                None => {
                    first.insert(c1, (cs % q, cell));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::instances;

    fn rows(m: &ColoringMatrix) -> Vec<Vec<i64>> {
        (0..m.rank()).map(|s| m.row(s).to_vec()).collect()
    }

    // Oracle: Laplace expansion.
    fn det(a: &[Vec<i64>]) -> i128 {
        if a.len() == 1 {
            return a[0][0] as i128;
        }
        (0..a.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a[0][j] as i128 * det(&minor)
            })
            .sum()
    }

    // Oracle: spread of colors over every in-bounds instance.
    fn measured_span(scheme: &ColoringScheme, s: usize) -> usize {
        instances(scheme.dims(), &scheme.shape())
            .iter()
            .map(|cells| {
                let cs: Vec<usize> = cells.iter().map(|&c| scheme.color_of_cell(s, c)).collect();
                cs.iter().max().unwrap() - cs.iter().min().unwrap() + 1
            })
            .max()
            .unwrap()
    }

    #[test]
    fn semicross_examples() {
        let m = semicross_matrix_experimental(3).unwrap();
        assert_eq!(rows(&m), vec![vec![1, 2, 3], vec![1, -2, -1], vec![1, 2, -1]]);
        assert_eq!(m.determinant(), 16);
        assert!(!m.is_theorem_backed());
        assert!(matches!(semicross_matrix(3), Err(Error::UnsupportedByTheorem(_))));
        let m = semicross_matrix(2).unwrap();
        assert_eq!(rows(&m), vec![vec![1, 2], vec![1, -1]]);
        assert_eq!(m.determinant(), -3);
    }

    #[test]
    fn modular_semicross() {
        let m = semicross_matrix_modular(4, 3).unwrap();
        assert_eq!(rows(&m), rows(&semicross_matrix(4).unwrap()));
        assert_eq!(m.mode(0), RowMode::Plain);
        assert!((1..4).all(|s| m.mode(s) == RowMode::Modular(15)));
        let scheme =
            ColoringScheme::new(m, ClusterShape::SemiCross { arm: 1 }, &Dims::cube(4, 3).unwrap()).unwrap();
        for s in 1..4 {
            assert!(scheme.eta(s) <= 15);
            assert_eq!(scheme.span(s), measured_span(&scheme, s));
        }
        assert!(check_p1(&scheme).is_ok());
        assert!(check_p2(&scheme).is_ok());
    }

    #[test]
    fn cross_examples() {
        let m = cross_matrix(2, 5).unwrap();
        assert_eq!(rows(&m), vec![vec![1, 2], vec![2, -1]]);
        assert_eq!(m.determinant(), -5);
        assert_eq!(m.mode(1), RowMode::Modular(20));
        let m3 = cross_matrix(3, 3).unwrap();
        assert_eq!(m3.row(1), &[2, 4, -3]);
    }

    #[test]
    fn determinant_matches_expansion() {
        for d in 1..=7 {
            let m = semicross_matrix_experimental(d).unwrap();
            assert_eq!(m.determinant(), det(&rows(&m)), "semicross {d}");
            let c = cross_matrix(d, 3).unwrap();
            assert_eq!(c.determinant(), det(&rows(&c)), "cross {d}");
        }
    }

    #[test]
    fn colors_and_shift() {
        let dims = Dims::cube(2, 4).unwrap();
        let scheme =
            ColoringScheme::new(semicross_matrix(2).unwrap(), ClusterShape::SemiCross { arm: 1 }, &dims)
                .unwrap();
        let p = Position(vec![1, 1]);
        assert_eq!(scheme.matrix().raw_color(0, p.coords()), 3);
        assert_eq!(scheme.color_of(0, &Position(vec![0, 0])), 0);
        // row 2 = (1, -1): range [-3, 3]
        assert_eq!(scheme.lo(1), -3);
        assert_eq!(scheme.eta(1), 7);
        assert_eq!(scheme.delta(0), 0);
        // semi-cross at c under row 1: c, c+1, c+2
        let center = Position(vec![1, 1]);
        let c = scheme.color_of(0, &center);
        assert_eq!(scheme.color_of(0, &Position(vec![2, 1])), c + 1);
        assert_eq!(scheme.color_of(0, &Position(vec![1, 2])), c + 2);
    }

    #[test]
    fn p1_p2_small_schemes() {
        let dims = Dims::cube(2, 4).unwrap();
        let sc =
            ColoringScheme::new(semicross_matrix(2).unwrap(), ClusterShape::SemiCross { arm: 1 }, &dims)
                .unwrap();
        assert_eq!(check_p1(&sc), Ok(()));
        assert_eq!(check_p2(&sc), Ok(()));
        let cr = ColoringScheme::new(
            cross_matrix(2, 5).unwrap(),
            ClusterShape::Cross { arm: 1 },
            &Dims::cube(2, 5).unwrap(),
        )
        .unwrap();
        assert_eq!(check_p1(&cr), Ok(()));
        assert_eq!(check_p2(&cr), Ok(()));
        assert_eq!(cr.span(1), measured_span(&cr, 1));
    }

    #[test]
    fn duplicate_row_entries_fail_p1() {
        let m = ColoringMatrix::new(vec![vec![1, 1], vec![1, -1]], vec![RowMode::Plain; 2]).unwrap();
        let sc = ColoringScheme::new(m, ClusterShape::SemiCross { arm: 1 }, &Dims::cube(2, 4).unwrap())
            .unwrap();
        let err = check_p1(&sc).unwrap_err();
        assert_eq!(err.property, Property::P1);
        assert_eq!(err.coloring, Some(0));
    }

    #[test]
    fn singular_matrix_fails_p2() {
        let m = ColoringMatrix::new(vec![vec![1, 1], vec![2, 2]], vec![RowMode::Plain; 2]).unwrap();
        assert_eq!(p2_by_determinant(&m), Some(false));
        let sc = ColoringScheme::new(m, ClusterShape::SemiCross { arm: 1 }, &Dims::cube(2, 4).unwrap())
            .unwrap();
        let err = check_p2(&sc).unwrap_err();
        assert_eq!(err.positions.len(), 2);
        let a = sc.colors_of_cell(sc.dims().linear_index(&err.positions[0]).unwrap());
        let b = sc.colors_of_cell(sc.dims().linear_index(&err.positions[1]).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn p3_diagnostic() {
        // one cell per first color: vacuous
        let m = ColoringMatrix::new(vec![vec![1, 4], vec![1, -1]], vec![RowMode::Plain; 2]).unwrap();
        let sc = ColoringScheme::new(m, ClusterShape::SemiCross { arm: 1 }, &Dims::cube(2, 4).unwrap())
            .unwrap();
        assert_eq!(check_p3(&sc), Ok(()));
        let m = ColoringMatrix::new(vec![vec![1, 2], vec![0, 1]], vec![RowMode::Plain; 2]).unwrap();
        let sc = ColoringScheme::new(m, ClusterShape::SemiCross { arm: 1 }, &Dims::cube(2, 4).unwrap())
            .unwrap();
        assert_eq!(check_p3(&sc).unwrap_err().property, Property::P3);
    }

    #[test]
    fn projection() {
        let dims = Dims::cube(2, 4).unwrap();
        let sc =
            ColoringScheme::new(semicross_matrix(2).unwrap(), ClusterShape::SemiCross { arm: 1 }, &dims)
                .unwrap();
        let mut a = BitArray::zeros(&dims);
        assert!(sc.project(0, &a).unwrap().iter().all(|b| !b));
        a.set(5, true);
        let w = sc.project(0, &a).unwrap();
        assert_eq!(w.iter().filter(|&&b| b).count(), 1);
        assert!(w[sc.color_of_cell(0, 5)]);
        // (0,2) and (2,1) share first color 2
        let x = dims.linear_index(&Position(vec![0, 2])).unwrap();
        let y = dims.linear_index(&Position(vec![2, 1])).unwrap();
        assert_eq!(sc.color_of_cell(0, x), sc.color_of_cell(0, y));
        let mut b = BitArray::zeros(&dims);
        b.set(x, true);
        b.set(y, true);
        assert!(sc.project(0, &b).unwrap().iter().all(|b| !b));
    }
}
