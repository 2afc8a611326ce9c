use std::collections::HashMap;

use rayon::prelude::*;

use crate::code::{Correction, LinearCode};
use crate::error::DecodeError;
use crate::lattice::{enumerate_patterns, ErrorPattern};
use crate::syndrome::Syndrome;

/// Reference decoder: a syndrome lookup table over the correctable class.
#[derive(Clone, Debug)]
pub struct TableDecoder {
    table: HashMap<Syndrome, ErrorPattern>,
    collisions: Vec<(Option<ErrorPattern>, ErrorPattern)>,
    class_size: usize,
}

impl TableDecoder {
    pub fn build(code: &(dyn LinearCode + Sync)) -> TableDecoder {
        let patterns = enumerate_patterns(code.dims(), &code.shape());
        let syndromes: Vec<Syndrome> = patterns.par_iter().map(|p| code.syndrome_of(p)).collect();
        let mut table: HashMap<Syndrome, ErrorPattern> = HashMap::with_capacity(patterns.len());
        let mut collisions = Vec::new();
        for (p, s) in patterns.iter().zip(syndromes) {
            if s.is_zero() {
                collisions.push((None, p.clone()));
                continue;
            }
            if let Some(prev) = table.get(&s) {
                collisions.push((Some(prev.clone()), p.clone()));
                continue;
            }
            table.insert(s, p.clone());
        }
        TableDecoder { table, collisions, class_size: patterns.len() }
    }

    /// Number of nonzero patterns in the class.
    pub fn class_size(&self) -> usize {
        self.class_size
    }

    /// The class-to-syndrome map, no-error included, is one-to-one.
    pub fn is_injective(&self) -> bool {
        self.collisions.is_empty()
    }

    /// Pairs sharing a syndrome; `None` stands for the no-error event.
    pub fn collisions(&self) -> &[(Option<ErrorPattern>, ErrorPattern)] {
        &self.collisions
    }

    pub fn decode(&self, s: &Syndrome) -> Result<Correction, DecodeError> {
        if s.is_zero() {
            return Ok(Correction::NoError);
        }
        self.table.get(s).cloned().map(Correction::Pattern).ok_or(DecodeError::Uncorrectable)
    }
}
