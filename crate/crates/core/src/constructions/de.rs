use crate::bch::BchColumns;
use crate::code::LinearCode;
use crate::gf2::FieldElem;
use crate::syndrome::Syndrome;

use super::ParityCode;

/// Per-axis BCH blocks: axis ℓ owns columns ℓ·block .. (ℓ+1)·block - 1 and a
/// cell contributes the column of residue i_ℓ mod block on every axis.
struct Blocks<'a> {
    bch: &'a BchColumns,
    block: usize,
}

impl Blocks<'_> {
    fn sum(&self, coords: &[usize]) -> u64 {
        coords
            .iter()
            .enumerate()
            .fold(0, |acc, (a, &i)| acc ^ self.bch.column(a * self.block + i % self.block))
    }

    /// Residues touched per axis, as (axis, [r0, r1]).
    fn split(&self, subset: &[usize]) -> Option<Vec<(usize, [usize; 2])>> {
        let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
        for &c in subset {
            let (axis, r) = (c / self.block, c % self.block);
            match out.iter_mut().find(|(a, _)| *a == axis) {
                Some((_, rs)) => rs.push(r),
                None => out.push((axis, vec![r])),
            }
        }
        out.into_iter()
            .map(|(a, rs)| <[usize; 2]>::try_from(rs).ok().map(|rs| (a, rs)))
            .collect()
    }
}

/// Moves `d` along an axis that turn residue `from` into `to`, with the
/// residue of the starting cell.
fn moves(block: usize, pair: [usize; 2], deltas: &[i64]) -> Vec<(usize, i64)> {
    let m = block as i64;
    let mut out = Vec::new();
    for (from, to) in [(pair[0], pair[1]), (pair[1], pair[0])] {
        for &d in deltas {
            if (from as i64 + d).rem_euclid(m) == to as i64 && !out.contains(&(from, d)) {
                out.push((from, d));
            }
        }
    }
    out
}

fn write(code: &ParityCode, blocks: &Blocks, cell: usize, half_sum: bool) -> Syndrome {
    let mut s = Syndrome::zeros(code.redundancy());
    s.set(0, true);
    let pos = code.dims().position(cell);
    let seg = code.layout().get("bch").expect("bch segment");
    s.set_segment(seg.offset, seg.width, blocks.sum(pos.coords()) as u128);
    if half_sum {
        let total: usize = pos.coords().iter().sum();
        let seg = code.layout().get("half-sum").expect("half-sum segment");
        s.set(seg.offset, total / 2 % 2 == 1);
    }
    code.write_field(&mut s, cell);
    s
}

pub(super) fn column_d(code: &ParityCode, bch: &BchColumns, arm: usize, cell: usize) -> Syndrome {
    write(code, &Blocks { bch, block: 2 * arm }, cell, false)
}

pub(super) fn column_e(code: &ParityCode, bch: &BchColumns, cell: usize) -> Syndrome {
    write(code, &Blocks { bch, block: 4 }, cell, true)
}

pub(super) fn candidates_d(
    code: &ParityCode,
    bch: &BchColumns,
    arm: usize,
    s: &Syndrome,
) -> Vec<Vec<usize>> {
    let deltas: Vec<i64> = (1..=arm as i64).collect();
    pairs(code, &Blocks { bch, block: 2 * arm }, s, &deltas, &deltas)
}

pub(super) fn candidates_e(code: &ParityCode, bch: &BchColumns, s: &Syndrome) -> Vec<Vec<usize>> {
    pairs(code, &Blocks { bch, block: 4 }, s, &[1, 2], &[-1, 1])
}

/// Candidates for a single error or an error pair: `line` lists the
/// distances of same-axis pairs, `arms` the signed arm offsets of pairs on
/// two different axes.
fn pairs(
    code: &ParityCode,
    blocks: &Blocks,
    s: &Syndrome,
    line: &[i64],
    arms: &[i64],
) -> Vec<Vec<usize>> {
    if s.get(0) {
        return code.singles(s);
    }
    let Some(subset) = blocks.bch.identify_subset(code.read(s, "bch"), 4) else {
        return Vec::new();
    };
    let Some(split) = blocks.split(&subset) else {
        return Vec::new();
    };
    let f = code.field();
    let sigma = code.sigma(s);
    let block = blocks.block;
    let mut out = Vec::new();
    match split[..] {
        [(j, rs)] => {
            for (from, d) in moves(block, rs, line) {
                let gamma = f.add(FieldElem::ONE, f.alpha_pow(d * code.step_of(j)));
                for x in code.solve(gamma, sigma) {
                    if code.dims().coord(x, j) % block != from {
                        continue;
                    }
                    if let Some(y) = code.step(x, j, d) {
                        out.push(vec![x, y]);
                    }
                }
            }
        }
        [(j, rj), (k, rk)] => {
            for (from_j, a) in moves(block, rj, arms) {
                for (from_k, b) in moves(block, rk, arms) {
                    // x = p + a e_j, y = p + b e_k
                    let e = b * code.step_of(k) - a * code.step_of(j);
                    let gamma = f.add(FieldElem::ONE, f.alpha_pow(e));
                    for x in code.solve(gamma, sigma) {
                        if code.dims().coord(x, k) % block != from_k {
                            continue;
                        }
                        let Some(p) = code.step(x, j, -a) else { continue };
                        if code.dims().coord(p, j) % block != from_j {
                            continue;
                        }
                        if let Some(y) = code.step(p, k, b) {
                            out.push(vec![x, y]);
                        }
                    }
                }
            }
        }
        _ => {}
    }
    out
}
