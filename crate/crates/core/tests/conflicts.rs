//! Certified structure in the cases where the expected decomposition fails.

use bgg_core::decomp::{decompose_b, projective_a1, split_into_indecomposables, verma_flag, Catalogued, SummandKind, Verdict};
use bgg_core::module::{tensor, verma, TruncatedModule};
use bgg_core::rootdata::{CartanType, Weight};
use bgg_core::tensorblocks::block_component;

fn w(c: &[i64]) -> Weight {
    Weight::from_ints(c)
}

/// Sorted Verma flags of the indecomposable pieces of the principal block.
fn principal_piece_flags(m: &TruncatedModule) -> Vec<Vec<Vec<i64>>> {
    let zero = Weight::zero(m.rank());
    let block = block_component(m, &zero).unwrap().as_module(m);
    let pieces = split_into_indecomposables(&block).unwrap();
    let mut flags: Vec<Vec<Vec<i64>>> = pieces
        .iter()
        .map(|p| {
            assert_eq!(p.evidence.verdict, Verdict::IndecomposableWithinWindow);
            let f = verma_flag(&p.sub.as_module(&block)).expect("piece has a Verma flag");
            let mut ws: Vec<Vec<i64>> = f.steps.iter().map(|s| s.int_coords().unwrap()).collect();
            ws.sort();
            ws
        })
        .collect();
    flags.sort();
    flags
}

#[test]
fn projective_splits_as_dual_verma_plus_verma_over_borel() {
    for l in 0..=4 {
        let ctx = Catalogued::Projective { lambda: w(&[l]) };
        let m = ctx.build(10).unwrap();
        let cert = decompose_b(&m, &ctx).unwrap();
        assert!(cert.valid(), "{:?}", cert.failures());
        let kinds: Vec<SummandKind> = cert.summands.iter().map(|s| s.kind).collect();
        assert_eq!(kinds, vec![SummandKind::DualVerma, SummandKind::Verma]);
        assert!(cert.reverify(&m).unwrap());
    }
}

#[test]
fn sl2_verma_times_projective_principal_block() {
    let m0 = verma(CartanType::A1, &w(&[0]), 10).unwrap();
    let p = projective_a1(&w(&[0]), 10).unwrap();
    let t = tensor(&m0, &p, 10).unwrap();
    assert_eq!(principal_piece_flags(&t), vec![vec![vec![-2]], vec![vec![-2], vec![0]]]);
}

#[test]
fn sl3_verma_square_principal_block() {
    let m0 = verma(CartanType::A2, &w(&[0, 0]), 8).unwrap();
    let t = tensor(&m0, &m0, 8).unwrap();
    let ext = vec![vec![-3, 0], vec![-2, -2], vec![0, -3]];
    let mut want = vec![
        vec![vec![-3, 0], vec![-2, -2], vec![0, -3]],
        ext,
        vec![vec![-2, -2]],
        vec![vec![-2, 1]],
        vec![vec![0, 0]],
        vec![vec![1, -2]],
    ];
    want.sort();
    assert_eq!(principal_piece_flags(&t), want);
}
