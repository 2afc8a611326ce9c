use crate::bch::BchColumns;
use crate::code::LinearCode;
use crate::gf2::FieldElem;
use crate::syndrome::Syndrome;

use super::ParityCode;

pub(super) fn column(code: &ParityCode, bch: &BchColumns, cell: usize) -> Syndrome {
    let mut s = Syndrome::zeros(code.redundancy());
    s.set(0, true);
    let pos = code.dims().position(cell);
    let v = pos
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, &i)| i % 2 == 1)
        .fold(0u64, |acc, (a, _)| acc ^ bch.column(a));
    let seg = code.layout().get("bch").expect("bch segment");
    s.set_segment(seg.offset, seg.width, v as u128);
    code.write_field(&mut s, cell);
    s
}

pub(super) fn candidates(code: &ParityCode, bch: &BchColumns, s: &Syndrome) -> Vec<Vec<usize>> {
    if s.get(0) {
        return code.singles(s);
    }
    let Some(axes) = bch.identify_subset(code.read(s, "bch"), 2) else {
        return Vec::new();
    };
    let f = code.field();
    let sigma = code.sigma(s);
    match axes[..] {
        // center and one arm cell
        [j] => {
            let gamma = f.add(FieldElem::ONE, f.alpha_pow(code.step_of(j)));
            code.solve(gamma, sigma)
                .into_iter()
                .filter_map(|x| code.step(x, j, 1).map(|y| vec![x, y]))
                .collect()
        }
        // two arm cells on different axes
        [j, k] => {
            let gamma = f.add(FieldElem::ONE, f.alpha_pow(code.step_of(k) - code.step_of(j)));
            code.solve(gamma, sigma)
                .into_iter()
                .filter_map(|x| {
                    let p = code.step(x, j, -1)?;
                    Some(vec![x, code.step(p, k, 1)?])
                })
                .collect()
        }
        _ => Vec::new(),
    }
}
