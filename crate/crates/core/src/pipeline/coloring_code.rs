use std::collections::BTreeSet;

use crate::array::BitArray;
use crate::code::{Correction, LinearCode};
use crate::coloring::{check_p1, check_p2, ColoringScheme};
use crate::error::{DecodeError, Error, Result};
use crate::fire::{build_fire, ComponentCodeSpec, ComponentRole, FireCode};
use crate::gf2::Poly2;
use crate::lattice::{ClusterShape, Dims, ErrorPattern};
use crate::syndrome::{SegmentLayout, Syndrome};

/// A coloring-method code: one Fire component code per coloring; the
/// syndrome is the concatenation of the component syndromes of the
/// projections.
#[derive(Clone, Debug)]
pub struct ColoringCode {
    scheme: ColoringScheme,
    components: Vec<ComponentCodeSpec>,
    layout: SegmentLayout,
    /// Colors per cell, row-major.
    colors: Vec<Vec<usize>>,
    /// x^j mod g_s for every color j of coloring s.
    residues: Vec<Vec<Poly2>>,
}

/// Build the component codes for a scheme that satisfies (p.1) and (p.2).
pub fn assemble_coloring_code(scheme: ColoringScheme) -> Result<ColoringCode> {
    if let Err(ce) = check_p1(&scheme) {
        return Err(Error::Infeasible(ce.to_string()));
    }
    if let Err(ce) = check_p2(&scheme) {
        return Err(Error::Infeasible(ce.to_string()));
    }
    let components = (0..scheme.rank())
        .map(|s| {
            let target = scheme.span(s);
            let code = build_fire(target, scheme.eta(s))?;
            Ok(ComponentCodeSpec { code, role: ComponentRole::BurstCorrecting, coloring: s, target_burst: target })
        })
        .collect::<Result<Vec<_>>>()?;
    ColoringCode::from_parts(scheme, components)
}

impl ColoringCode {
    /// Assemble from explicit component codes.
    pub fn from_parts(scheme: ColoringScheme, components: Vec<ComponentCodeSpec>) -> Result<ColoringCode> {
        if components.len() != scheme.rank() {
            return Err(Error::LengthMismatch { expected: scheme.rank(), got: components.len() });
        }
        for (s, c) in components.iter().enumerate() {
            if c.code.burst() < scheme.span(s) || c.code.len() < scheme.eta(s) {
                return Err(Error::Infeasible(format!(
                    "component {} (b={}, n={}) cannot cover span {} over {} colors",
                    s + 1,
                    c.code.burst(),
                    c.code.len(),
                    scheme.span(s),
                    scheme.eta(s)
                )));
            }
        }
        let mut layout = SegmentLayout::new();
        for (s, c) in components.iter().enumerate() {
            layout.push(&format!("c{}", s + 1), c.code.redundancy());
        }
        let colors = (0..scheme.dims().volume()).map(|cell| scheme.colors_of_cell(cell)).collect();
        let residues = components
            .iter()
            .map(|c| (0..c.code.len()).map(|j| c.code.syndrome_of_position(j)).collect())
            .collect();
        Ok(ColoringCode { scheme, components, layout, colors, residues })
    }

    pub fn scheme(&self) -> &ColoringScheme {
        &self.scheme
    }

    pub fn components(&self) -> &[ComponentCodeSpec] {
        &self.components
    }

    pub fn layout(&self) -> &SegmentLayout {
        &self.layout
    }

    pub fn colors_of_cell(&self, cell: usize) -> &[usize] {
        &self.colors[cell]
    }

    /// Projection of `array` onto every component, decoded by the
    /// component codes and matched back to array cells.
    pub fn coloring_decode(&self, array: &BitArray) -> std::result::Result<Correction, DecodeError> {
        if array.dims() != self.dims() {
            return Err(DecodeError::Uncorrectable);
        }
        let residues = (0..self.components.len())
            .map(|s| {
                let word = self.scheme.project(s, array).map_err(|_| DecodeError::Uncorrectable)?;
                self.components[s].code.syndrome(&word).map_err(|_| DecodeError::Component(s))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        self.decode_residues(&residues)
    }

    fn decode_residues(&self, residues: &[Poly2]) -> std::result::Result<Correction, DecodeError> {
        let mut sets: Vec<Vec<usize>> = Vec::with_capacity(residues.len());
        for (s, &res) in residues.iter().enumerate() {
            let burst = self.components[s].code.decode_burst(res).map_err(|_| DecodeError::Component(s))?;
            sets.push(burst.map(|b| b.positions()).unwrap_or_default());
        }
        match sets.iter().filter(|e| e.is_empty()).count() {
            n if n == sets.len() => return Ok(Correction::NoError),
            0 => {}
            _ => return Err(DecodeError::Uncorrectable),
        }
        let found = self.match_colors(&sets);
        match found.len() {
            0 => Err(DecodeError::Uncorrectable),
            1 => Ok(Correction::Pattern(
                ErrorPattern::new(found.into_iter().next().unwrap()).expect("nonempty match"),
            )),
            n => Err(DecodeError::Ambiguous(n)),
        }
    }

    /// Every set of cells inside one cluster instance whose colors are
    /// exactly `sets[s]` under each coloring s.
    pub fn match_colors(&self, sets: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
        let dims = self.scheme.dims();
        let offsets = self.scheme.offsets();
        let mut anchors = BTreeSet::new();
        for cell in 0..dims.volume() {
            if (0..sets.len()).all(|s| sets[s].contains(&self.colors[cell][s])) {
                for o in offsets {
                    let neg: Vec<i64> = o.0.iter().map(|x| -x).collect();
                    if let Some(a) = dims.translate(cell, &neg) {
                        anchors.insert(a);
                    }
                }
            }
        }
        let mut found = BTreeSet::new();
        for anchor in anchors {
            let Some(cells) = dims.place(anchor, offsets) else { continue };
            let mut chosen: Vec<usize> =
                cells.into_iter().filter(|&c| sets[0].contains(&self.colors[c][0])).collect();
            if chosen.is_empty() {
                continue;
            }
            let consistent = (0..sets.len()).all(|s| {
                let mut odd = BTreeSet::new();
                for &c in &chosen {
                    let col = self.colors[c][s];
                    if !odd.remove(&col) {
                        odd.insert(col);
                    }
                }
                odd.into_iter().eq(sets[s].iter().copied())
            });
            if consistent {
                chosen.sort_unstable();
                found.insert(chosen);
            }
        }
        found
    }

    /// Σ of the component redundancies.
    pub fn component_redundancies(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.code.redundancy()).collect()
    }

    pub fn is_cross(&self) -> bool {
        matches!(self.scheme.shape(), ClusterShape::Cross { .. })
    }

    pub fn component(&self, s: usize) -> &FireCode {
        &self.components[s].code
    }
}

impl LinearCode for ColoringCode {
    fn dims(&self) -> &Dims {
        self.scheme.dims()
    }

    fn redundancy(&self) -> usize {
        self.layout.total()
    }

    fn column(&self, cell: usize) -> Syndrome {
        let mut out = Syndrome::zeros(self.redundancy());
        for (s, seg) in self.layout.segments().iter().enumerate() {
            out.set_segment(seg.offset, seg.width, self.residues[s][self.colors[cell][s]].0);
        }
        out
    }

    fn shape(&self) -> ClusterShape {
        self.scheme.shape()
    }

    fn name(&self) -> String {
        let family = if self.is_cross() { "cross" } else { "semicross" };
        let spans: Vec<String> = self.components.iter().map(|c| c.code.burst().to_string()).collect();
        format!("coloring-{family}[D={},b={}]", self.scheme.rank(), spans.join("/"))
    }

    fn decode_syndrome(&self, s: &Syndrome) -> std::result::Result<Correction, DecodeError> {
        if s.len() != self.redundancy() {
            return Err(DecodeError::Uncorrectable);
        }
        let residues: Vec<Poly2> = self
            .layout
            .segments()
            .iter()
            .map(|seg| Poly2(s.segment_u128(seg.offset, seg.width)))
            .collect();
        self.decode_residues(&residues)
    }
}
