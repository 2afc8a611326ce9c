use proptest::prelude::*;

use mdecc::array::BitArray;
use mdecc::coloring::{
    check_p2, p2_by_determinant, semicross_matrix, ColoringMatrix, ColoringScheme, RowMode,
};
use mdecc::config::{CodeConfig, Construction};
use mdecc::fire::{build_fire, Burst};
use mdecc::gf2::FieldCtx;
use mdecc::lattice::shape_offsets;
use mdecc::pipeline::{AnyCode, Encoder};
use mdecc::{ClusterShape, Dims, LinearCode};

fn code(construction: Construction, dims: &[usize]) -> AnyCode {
    CodeConfig::new(construction, dims.to_vec()).build().unwrap().code
}

fn small_code() -> impl Strategy<Value = AnyCode> {
    prop_oneof![
        Just(code(Construction::A, &[4, 5])),
        Just(code(Construction::B, &[3, 3, 3])),
        Just(code(Construction::C, &[4, 4])),
        Just(code(Construction::D, &[4, 4])),
        Just(code(Construction::E, &[3, 5])),
        Just(code(Construction::ColoringSemicross, &[5, 5])),
    ]
}

fn cell_set(volume: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..volume, 0..8)
}

// Oracle: schoolbook product modulo the field polynomial.
fn slow_mul(a: u32, b: u32, poly: u32, m: u32) -> u32 {
    let mut acc: u64 = 0;
    for k in 0..m {
        if b >> k & 1 == 1 {
            acc ^= (a as u64) << k;
        }
    }
    for k in (m..2 * m).rev() {
        if acc >> k & 1 == 1 {
            acc ^= (poly as u64) << (k - m);
        }
    }
    acc as u32
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn syndrome_is_linear(code in small_code(), seed in any::<u64>()) {
        let n = code.dims().volume();
        let mut rng = seed;
        let mut draw = || { rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (rng >> 33) as usize % n };
        let x: Vec<usize> = (0..5).map(|_| draw()).collect();
        let y: Vec<usize> = (0..5).map(|_| draw()).collect();
        let mut xy = x.clone();
        xy.extend(&y);
        let sum = &code.syndrome_of_cells(&x) ^ &code.syndrome_of_cells(&y);
        prop_assert_eq!(code.syndrome_of_cells(&xy), sum);
    }

    #[test]
    fn projection_is_linear(a in cell_set(36), b in cell_set(36)) {
        let dims = Dims::new(vec![6, 6]).unwrap();
        let scheme = ColoringScheme::new(semicross_matrix(2).unwrap(), ClusterShape::SemiCross { arm: 1 }, &dims).unwrap();
        let mut xa = BitArray::zeros(&dims);
        let mut xb = BitArray::zeros(&dims);
        for &c in &a { xa.flip(c); }
        for &c in &b { xb.flip(c); }
        let mut xab = xa.clone();
        for c in xb.ones().collect::<Vec<_>>() { xab.flip(c); }
        for s in 0..2 {
            let pa = scheme.project(s, &xa).unwrap();
            let pb = scheme.project(s, &xb).unwrap();
            let sum: Vec<bool> = pa.iter().zip(&pb).map(|(u, v)| u ^ v).collect();
            prop_assert_eq!(scheme.project(s, &xab).unwrap(), sum);
        }
    }

    #[test]
    fn encoded_arrays_are_codewords(code in small_code(), seed in any::<u64>()) {
        let enc = Encoder::new(&code);
        prop_assert_eq!(enc.rank() + enc.info_len(), code.dims().volume());
        let info: Vec<bool> = (0..enc.info_len()).map(|k| (seed.rotate_left(k as u32 % 64) ^ k as u64) & 1 == 1).collect();
        let word = enc.encode(&info).unwrap();
        prop_assert!(code.syndrome_of_array(&word).is_zero());
        prop_assert_eq!(enc.extract(&word), info.clone());
        prop_assert_eq!(enc.encode(&info).unwrap(), word);
    }

    #[test]
    fn fire_decodes_its_bursts(b in 1usize..6, n in 2usize..200, pos in any::<usize>(), pat in any::<u64>()) {
        let fire = build_fire(b, n).unwrap();
        let len = b.min(n);
        let pattern = (pat & ((1u64 << len) - 1)) | 1;
        let burst = Burst::new(pos % (n - (64 - pattern.leading_zeros() as usize) + 1), pattern).unwrap();
        let mut word = vec![false; n];
        for p in burst.positions() { word[p] = true; }
        let s = fire.syndrome(&word).unwrap();
        prop_assert_eq!(s, fire.syndrome_of_burst(&burst));
        prop_assert_eq!(fire.decode_burst(s), Ok(Some(burst)));
        prop_assert!(fire.redundancy() <= fire.redundancy_bound());
    }

    #[test]
    fn field_product_matches_schoolbook(m in 2u32..14, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = FieldCtx::new(m).unwrap();
        let mask = (1u32 << m) - 1;
        let (x, y, z) = (f.elem(a & mask).unwrap(), f.elem(b & mask).unwrap(), f.elem(c & mask).unwrap());
        prop_assert_eq!(f.mul(x, y).bits(), slow_mul(a & mask, b & mask, f.primitive_poly(), m));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        if !x.is_zero() {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.alpha_pow(0));
        }
    }

    #[test]
    fn p2_agrees_with_determinant(e in proptest::collection::vec(-2i64..=2, 4)) {
        let matrix = ColoringMatrix::new(vec![e[..2].to_vec(), e[2..].to_vec()], vec![RowMode::Plain; 2]).unwrap();
        let dims = Dims::new(vec![6, 6]).unwrap();
        let scheme = ColoringScheme::new(matrix.clone(), ClusterShape::SemiCross { arm: 1 }, &dims).unwrap();
        // a singular 2x2 matrix with entries in [-2, 2] has a kernel vector inside the box
        prop_assert_eq!(p2_by_determinant(&matrix), Some(check_p2(&scheme).is_ok()));
    }
}

#[test]
fn delta_equals_measured_span() {
    for (d, n) in [(2, 5), (2, 9), (4, 4)] {
        let dims = Dims::cube(d, n).unwrap();
        let shape = ClusterShape::SemiCross { arm: 1 };
        let scheme = ColoringScheme::new(semicross_matrix(d).unwrap(), shape, &dims).unwrap();
        let offsets = shape_offsets(&shape, d);
        let b = offsets.len() as i64;
        for s in 0..d {
            let values: Vec<i64> =
                offsets.iter().map(|o| o.0.iter().zip(scheme.matrix().row(s)).map(|(x, m)| x * m).sum()).collect();
            let span = values.iter().max().unwrap() - values.iter().min().unwrap() + 1;
            assert_eq!(scheme.span(s) as i64, span, "D={d} s={s}");
            assert_eq!(scheme.delta(s), span - b, "D={d} s={s}");
        }
    }
}
