//! Parity-check matrix text format.
//!
//! Header lines start with `# key value`; then one line per linear cell
//! index: `<index> <hex>`, the hex digits holding the r-bit column in
//! LSB-first nibble order.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::code::LinearCode;
use crate::config::CodeConfig;
use crate::error::{Error, Result};
use crate::pipeline::AnyCode;
use crate::syndrome::Syndrome;

pub fn export_h(code: &AnyCode, config: &CodeConfig) -> String {
    let mut out = String::new();
    let dims = code.dims();
    let _ = writeln!(out, "# mdecc parity-check matrix");
    let _ = writeln!(out, "# construction {}", config.construction);
    let _ = writeln!(out, "# name {}", code.name());
    let _ = writeln!(out, "# dims {dims}");
    let _ = writeln!(out, "# r {}", code.redundancy());
    match code {
        AnyCode::Parity(p) => {
            let _ = writeln!(out, "# m {}", p.field().degree());
            let _ = writeln!(out, "# primitive-poly {:#x}", p.field().primitive_poly());
        }
        AnyCode::Coloring(c) => {
            let gens: Vec<String> =
                c.components().iter().map(|s| format!("{:#x}", s.code.generator().0)).collect();
            let _ = writeln!(out, "# m -");
            let _ = writeln!(out, "# component-generators {}", gens.join(","));
        }
    }
    let _ = writeln!(out, "# segments {}", code.layout().describe());
    for cell in 0..dims.volume() {
        let _ = writeln!(out, "{cell} {}", code.column(cell).to_hex());
    }
    out
}

/// A parsed matrix file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImportedH {
    pub header: BTreeMap<String, String>,
    pub r: usize,
    pub columns: Vec<Syndrome>,
}

pub fn import_h(text: &str) -> Result<ImportedH> {
    let mut header = BTreeMap::new();
    let mut rows: Vec<(usize, &str)> = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.trim().split_once(' ') {
                header.insert(k.to_string(), v.trim().to_string());
            }
            continue;
        }
        let (idx, hex) =
            line.split_once(' ').ok_or_else(|| Error::Parse(format!("malformed column line {line:?}")))?;
        let idx = idx.parse().map_err(|_| Error::Parse(format!("bad index {idx:?}")))?;
        rows.push((idx, hex.trim()));
    }
    let r: usize = header
        .get("r")
        .ok_or_else(|| Error::Parse("missing r header".into()))?
        .parse()
        .map_err(|_| Error::Parse("bad r header".into()))?;
    let mut columns = Vec::with_capacity(rows.len());
    for (k, (idx, hex)) in rows.into_iter().enumerate() {
        if idx != k {
            return Err(Error::Parse(format!("expected index {k}, got {idx}")));
        }
        columns.push(Syndrome::from_hex(hex, r)?);
    }
    Ok(ImportedH { header, r, columns })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Construction;

    #[test]
    fn construction_a_first_line() {
        let mut cfg = CodeConfig::new(Construction::A, vec![4, 4]);
        cfg.m = Some(5);
        let code = cfg.build().unwrap().code;
        let text = export_h(&code, &cfg);
        let first = text.lines().find(|l| !l.starts_with('#')).unwrap();
        // bits 1 0 1 0 0 0 0
        assert_eq!(first, "0 50");
        assert!(text.contains("# segments indicator:0+1 dimension:1+1 field:2+5"));
        let back = import_h(&text).unwrap();
        assert_eq!(back.r, 7);
        assert_eq!(back.columns.len(), 16);
        for (cell, col) in back.columns.iter().enumerate() {
            assert_eq!(col, &code.column(cell));
        }
        assert_eq!(back.header["primitive-poly"], "0x25");
    }

    #[test]
    fn deterministic() {
        let cfg = CodeConfig::new(Construction::ColoringCross, vec![5, 5]);
        let a = export_h(&cfg.build().unwrap().code, &cfg);
        let b = export_h(&cfg.build().unwrap().code, &cfg);
        assert_eq!(a, b);
    }

    #[test]
    fn malformed() {
        assert!(import_h("# r 4\n0 f\n2 1\n").is_err());
        assert!(import_h("0 f\n").is_err());
        assert!(import_h("# r 4\n0 g\n").is_err());
    }
}
