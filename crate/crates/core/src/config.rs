//! Code configuration and the JSON code descriptor.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::coloring::{
    cross_matrix, semicross_matrix, semicross_matrix_experimental, semicross_matrix_modular,
    semicross_matrix_modular_experimental, ColoringScheme, SchemeSummary,
};
use crate::constructions::{auto_degree, build_a_in, build_b_in, build_c_in, build_d_in, build_e_in};
use crate::error::{Error, Result};
use crate::gf2::FieldCtx;
use crate::lattice::{ClusterShape, Dims};
use crate::pipeline::{assemble_coloring_code, redundancy_report, AnyCode, RedundancyReport};
use crate::syndrome::Segment;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Construction {
    A,
    B,
    C,
    D,
    E,
    #[serde(rename = "coloring-semicross")]
    ColoringSemicross,
    #[serde(rename = "coloring-cross")]
    ColoringCross,
}

impl Construction {
    pub fn tag(&self) -> &'static str {
        match self {
            Construction::A => "A",
            Construction::B => "B",
            Construction::C => "C",
            Construction::D => "D",
            Construction::E => "E",
            Construction::ColoringSemicross => "coloring-semicross",
            Construction::ColoringCross => "coloring-cross",
        }
    }

    pub fn is_coloring(&self) -> bool {
        matches!(self, Construction::ColoringSemicross | Construction::ColoringCross)
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Construction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Construction> {
        Ok(match s {
            "A" | "a" => Construction::A,
            "B" | "b" => Construction::B,
            "C" | "c" => Construction::C,
            "D" | "d" => Construction::D,
            "E" | "e" => Construction::E,
            "coloring-semicross" => Construction::ColoringSemicross,
            "coloring-cross" => Construction::ColoringCross,
            other => return Err(Error::Parse(format!("unknown construction {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeOptions {
    /// Reduce rows 2..D of the semi-cross coloring modulo n(D+1).
    #[serde(default)]
    pub modular: bool,
    /// Reject parameters outside the proven range instead of warning.
    #[serde(default)]
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeConfig {
    pub construction: Construction,
    pub dims: Vec<usize>,
    /// Field degree; `None` picks the smallest m with 2^m - 1 >= N.
    #[serde(default)]
    pub m: Option<u32>,
    /// Arm length for Construction D.
    #[serde(default)]
    pub arm: Option<usize>,
    /// Primitive polynomial override for GF(2^m).
    #[serde(default)]
    pub poly: Option<u32>,
    #[serde(default)]
    pub scheme: SchemeOptions,
}

/// A built code with the warnings raised while building it.
#[derive(Clone, Debug)]
pub struct Built {
    pub code: AnyCode,
    pub warnings: Vec<String>,
}

impl CodeConfig {
    pub fn new(construction: Construction, dims: Vec<usize>) -> CodeConfig {
        CodeConfig { construction, dims, m: None, arm: None, poly: None, scheme: SchemeOptions::default() }
    }

    pub fn build(&self) -> Result<Built> {
        let dims = Dims::new(self.dims.clone())?;
        let mut warnings = Vec::new();
        let code = if self.construction.is_coloring() {
            let d = dims.rank();
            if !dims.is_cube() {
                warnings.push(format!("coloring schemes are stated for cubes; dims {dims} are not"));
            }
            let n = dims.edges()[0];
            let (matrix, shape) = match self.construction {
                Construction::ColoringSemicross => {
                    let odd = d % 2 == 1;
                    if odd && self.scheme.strict {
                        return Err(Error::UnsupportedByTheorem(format!(
                            "semi-cross coloring requires an even dimension, got {d}"
                        )));
                    }
                    if odd {
                        warnings.push(format!("semi-cross coloring with odd D = {d} is experimental"));
                    }
                    let m = match (self.scheme.modular, odd) {
                        (true, false) => semicross_matrix_modular(d, n)?,
                        (true, true) => semicross_matrix_modular_experimental(d, n)?,
                        (false, false) => semicross_matrix(d)?,
                        (false, true) => semicross_matrix_experimental(d)?,
                    };
                    (m, ClusterShape::SemiCross { arm: 1 })
                }
                _ => (cross_matrix(d, n)?, ClusterShape::Cross { arm: 1 }),
            };
            AnyCode::Coloring(assemble_coloring_code(ColoringScheme::new(matrix, shape, &dims)?)?)
        } else {
            let m = self.m.unwrap_or_else(|| auto_degree(dims.volume()));
            let field = Arc::new(match self.poly {
                Some(p) => FieldCtx::with_poly(m, p)?,
                None => FieldCtx::new(m)?,
            });
            let code = match self.construction {
                Construction::A => build_a_in(&dims, field)?,
                Construction::B => build_b_in(&dims, field)?,
                Construction::C => build_c_in(&dims, field)?,
                Construction::D => build_d_in(&dims, field, self.arm.unwrap_or(1))?,
                _ => build_e_in(&dims, field)?,
            };
            AnyCode::Parity(code)
        };
        Ok(Built { code, warnings })
    }
}

/// Everything a built code is determined by, plus derived figures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Descriptor {
    pub config: CodeConfig,
    pub name: String,
    pub dims: Vec<usize>,
    pub r: usize,
    pub m: Option<u32>,
    pub primitive_poly: Option<String>,
    pub segments: Vec<Segment>,
    pub shape: ClusterShape,
    pub scheme: Option<SchemeSummary>,
    pub component_generators: Option<Vec<String>>,
    pub redundancy: RedundancyReport,
}

impl Descriptor {
    pub fn new(config: &CodeConfig, code: &AnyCode) -> Descriptor {
        let mut cfg = config.clone();
        let (m, poly, scheme, gens) = match code {
            AnyCode::Parity(p) => {
                cfg.m = Some(p.field().degree());
                (Some(p.field().degree()), Some(format!("{:#x}", p.field().primitive_poly())), None, None)
            }
            AnyCode::Coloring(c) => {
                let gens = c.components().iter().map(|s| format!("{:#x}", s.code.generator().0)).collect();
                (None, None, Some(c.scheme().summary()), Some(gens))
            }
        };
        Descriptor {
            config: cfg,
            name: code.name(),
            dims: code.dims().edges().to_vec(),
            r: code.redundancy(),
            m,
            primitive_poly: poly,
            segments: code.layout().segments().to_vec(),
            shape: code.shape(),
            scheme,
            component_generators: gens,
            redundancy: redundancy_report(code, false),
        }
    }
}
