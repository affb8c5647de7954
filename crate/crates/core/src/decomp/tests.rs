use super::*;
use crate::exactla::{RatMatrix, SubspaceBasis};
use crate::module::{saturate, verma, FormalCharacter, Levi, ModuleMap, Submodule, TruncatedModule};
use crate::rootdata::{CartanType, Weight};

fn w(c: &[i64]) -> Weight {
    Weight::from_ints(c)
}

/// Weight `-a*alpha - b*beta` in A2 fundamental coordinates.
fn neg_root(a: i64, b: i64) -> Weight {
    w(&[-2 * a + b, a - 2 * b])
}

fn a1_verma(l: i64, depth: u32) -> TruncatedModule {
    verma(CartanType::A1, &w(&[l]), depth).unwrap()
}

fn top_only(m: &TruncatedModule) -> Submodule {
    Submodule::from_spaces([([0, 0], SubspaceBasis::full(m.dim(&[0, 0])))].into_iter().collect())
}

fn a2_cert(word: &[usize], depth: u32) -> (TruncatedModule, DecompositionCertificate) {
    let ctx = Catalogued::Verma { ty: CartanType::A2, lambda: w(&[0, 0]), word: word.to_vec() };
    let m = ctx.build(depth).unwrap();
    let c = decompose_b(&m, &ctx).unwrap();
    (m, c)
}

#[test]
fn direct_sum_of_head_and_verma_in_sl2() {
    let g = a1_verma(0, 6);
    let r = g.restrict(Levi::borel()).unwrap();
    let low = saturate(&g, Submodule::zero(), vec![([1, 0], vec![1.into()])]);
    let (ok, ev) = is_direct(&r, &[top_only(&r), low]).unwrap();
    assert!(ok);
    assert!(ev.is_decomposition());
}

#[test]
fn module_with_itself_is_not_direct() {
    let m = a1_verma(0, 5);
    let full = Submodule::full(&m);
    let (ok, ev) = is_direct(&m, &[full.clone(), full]).unwrap();
    assert!(!ok);
    assert!(!ev.maximal_direct);
}

#[test]
fn non_closed_family_is_rejected() {
    let m = a1_verma(0, 4);
    let bad = Submodule::from_spaces([([1, 0], SubspaceBasis::full(1))].into_iter().collect());
    assert!(is_direct(&m, &[bad]).is_err());
}

#[test]
fn head_complement_sl2_zero_is_top() {
    let m = a1_verma(0, 6);
    let h = head_complement(&m, Levi::borel()).unwrap();
    assert_eq!(h.total_dim(), 1);
    assert_eq!(h.dim(&[0, 0]), 1);
}

#[test]
fn head_complement_sl2_two() {
    let m = a1_verma(2, 6);
    let h = head_complement(&m, Levi::borel()).unwrap();
    let ch = h.character(&m);
    assert_eq!(ch.as_pairs(), vec![(w(&[-2]), 1), (w(&[0]), 1), (w(&[2]), 1)]);
    let rest = m.character().checked_sub(&ch).unwrap();
    assert!(rest.same_dims(&FormalCharacter::verma(CartanType::A1, &w(&[-4]), m.top(), 6)));
    let r = m.restrict(Levi::borel()).unwrap();
    assert!(complement(&r, &h).unwrap().is_some());
}

#[test]
fn head_complement_sl3_zero_is_top() {
    let m = verma(CartanType::A2, &w(&[0, 0]), 5).unwrap();
    let h = head_complement(&m, Levi::borel()).unwrap();
    assert_eq!(h.total_dim(), 1);
}

#[test]
fn head_complement_rejects_shallow_window() {
    let m = verma(CartanType::A2, &w(&[1, 1]), 3).unwrap();
    assert!(matches!(head_complement(&m, Levi::borel()), Err(crate::Error::Window(_))));
}

#[test]
fn head_complement_solution_is_unique_for_dominant_weights() {
    for l in 0..=4 {
        assert!(head_complement(&a1_verma(l, 10), Levi::borel()).is_ok(), "A1 lambda {l}");
    }
    for l in [[0, 0], [1, 0], [1, 1]] {
        let m = verma(CartanType::A2, &w(&l), 6).unwrap();
        assert!(head_complement(&m, Levi::borel()).is_ok(), "A2 lambda {l:?}");
    }
}

#[test]
fn verma_flag_of_verma_is_single_step() {
    for m in [a1_verma(3, 6), verma(CartanType::A2, &w(&[1, 0]), 5).unwrap()] {
        let f = verma_flag(&m).unwrap();
        assert_eq!(f.multiplicities(), vec![(m.top().clone(), 1)]);
    }
}

#[test]
fn dual_verma_has_no_flag() {
    let d = a1_verma(0, 6).dual().unwrap();
    assert!(verma_flag(&d).is_none());
}

#[test]
fn tilting_examples_sl2() {
    assert!(is_tilting(&a1_verma(-2, 8)));
    assert!(!is_tilting(&a1_verma(0, 8)));
    assert!(is_tilting(&projective_a1(&w(&[0]), 8).unwrap()));
}

#[test]
fn projective_realization_has_expected_flag() {
    let p = projective_a1(&w(&[0]), 8).unwrap();
    let f = verma_flag(&p).unwrap();
    assert_eq!(f.multiplicities(), vec![(w(&[0]), 1), (w(&[-2]), 1)]);
}

#[test]
fn fitting_split_of_zero_and_identity() {
    let m = a1_verma(1, 5);
    let (k, i, ev) = fitting_split(&m, &ModuleMap::zero()).unwrap();
    assert_eq!(k.total_dim(), m.total_dim());
    assert!(i.is_zero());
    assert!(ev.is_decomposition());
    let (k, i, _) = fitting_split(&m, &ModuleMap::identity(&m)).unwrap();
    assert!(k.is_zero());
    assert_eq!(i.total_dim(), m.total_dim());
}

#[test]
fn fitting_split_of_projection_onto_one_copy() {
    let v = a1_verma(-2, 5);
    let m = v.direct_sum(&v).unwrap().restrict(Levi::borel()).unwrap();
    let mut f = ModuleMap::zero();
    for o in m.support() {
        let mut p = RatMatrix::zeros(2, 2);
        p.set(0, 0, 1.into());
        f.blocks.insert(m.weight_of(&o), p);
    }
    f.check_commutes(&m, &m).unwrap();
    let (k, i, ev) = fitting_split(&m, &f).unwrap();
    assert!(ev.is_decomposition());
    assert!(k.character(&m).same_dims(&v.character()));
    assert!(i.character(&m).same_dims(&v.character()));
}

#[test]
fn simple_restriction_of_m_alpha() {
    let (m, c) = a2_cert(&[], 7);
    let subs: Vec<Submodule> = c.summands.iter().map(|s| s.sub.clone()).collect();
    let reps = simple_restriction_filtration(&m, &subs).unwrap();
    let ma = c.summands.iter().position(|s| s.label.starts_with("M_a")).unwrap();
    assert_eq!(reps[ma].steps, vec![neg_root(1, 2), neg_root(1, 0)]);
    let head = c.summands.iter().position(|s| s.kind == SummandKind::Simple).unwrap();
    assert_eq!(reps[head].steps, vec![w(&[0, 0])]);
}

#[test]
fn simple_restriction_of_sl2_verma_summand() {
    let m = a1_verma(0, 6);
    let r = m.restrict(Levi::borel()).unwrap();
    let low = saturate(&m, Submodule::zero(), vec![([1, 0], vec![1.into()])]);
    let reps = simple_restriction_filtration(&m, &[top_only(&r), low]).unwrap();
    assert_eq!(reps[0].steps, vec![w(&[0])]);
    assert_eq!(reps[1].steps, vec![w(&[-2])]);
}

#[test]
fn dual_verma_is_indecomposable() {
    let d = a1_verma(0, 8).dual().unwrap();
    let ev = is_indecomposable_window(&d, default_margin(&d).unwrap()).unwrap();
    assert_eq!(ev.verdict, Verdict::IndecomposableWithinWindow);
}

#[test]
fn projective_over_borel_is_decomposable() {
    let p = projective_a1(&w(&[0]), 8).unwrap().restrict(Levi::borel()).unwrap();
    let ev = is_indecomposable_window(&p, default_margin(&p).unwrap()).unwrap();
    assert_eq!(ev.verdict, Verdict::Decomposable);
    assert!(ev.idempotent.is_some());
}

#[test]
fn projective_over_sl2_is_indecomposable() {
    let p = projective_a1(&w(&[0]), 8).unwrap();
    let ev = is_indecomposable_window(&p, default_margin(&p).unwrap()).unwrap();
    assert_eq!(ev.verdict, Verdict::IndecomposableWithinWindow);
}

#[test]
fn m_alpha_is_indecomposable() {
    let (m, sub) = crate::module::m_alpha_basis(&w(&[0, 0]), crate::module::MAlpha::Alpha, 7).unwrap();
    let ma = sub.as_module(&m);
    let ev = is_indecomposable_window(&ma, default_margin(&ma).unwrap()).unwrap();
    assert_eq!(ev.verdict, Verdict::IndecomposableWithinWindow);
}

#[test]
fn margin_zero_is_rejected() {
    assert!(is_indecomposable_window(&a1_verma(0, 4), 0).is_err());
}

#[test]
fn decompose_sl2_verma() {
    let ctx = Catalogued::Verma { ty: CartanType::A1, lambda: w(&[0]), word: vec![] };
    let m = ctx.build(8).unwrap();
    let c = decompose_b(&m, &ctx).unwrap();
    assert!(c.valid(), "{:?}", c.failures());
    let kinds: Vec<SummandKind> = c.summands.iter().map(|s| s.kind).collect();
    assert_eq!(kinds, vec![SummandKind::Simple, SummandKind::Verma]);
    assert!(c.reverify(&m.restrict(Levi::borel()).unwrap()).unwrap());
}

#[test]
fn decompose_sl2_projective() {
    let ctx = Catalogued::Projective { lambda: w(&[1]) };
    let m = ctx.build(9).unwrap();
    let c = decompose_b(&m, &ctx).unwrap();
    assert!(c.valid(), "{:?}", c.failures());
    let kinds: Vec<SummandKind> = c.summands.iter().map(|s| s.kind).collect();
    assert_eq!(kinds, vec![SummandKind::DualVerma, SummandKind::Verma]);
    assert!(c.checks.iter().any(|k| k.name.starts_with("no summand isomorphic")));
}

#[test]
fn decompose_sl3_dominant_verma() {
    let (m, c) = a2_cert(&[], 7);
    assert!(c.valid(), "{:?}", c.failures());
    let kinds: Vec<SummandKind> = c.summands.iter().map(|s| s.kind).collect();
    assert_eq!(
        kinds,
        vec![SummandKind::Simple, SummandKind::QuotientOfVerma, SummandKind::QuotientOfVerma, SummandKind::Verma]
    );
    assert!(c.reverify(&m.restrict(Levi::borel()).unwrap()).unwrap());
}

#[test]
fn decompose_sl3_length_two_verma() {
    let (_, c) = a2_cert(&[0, 1], 7);
    assert!(c.valid(), "{:?}", c.failures());
    let kinds: Vec<SummandKind> = c.summands.iter().map(|s| s.kind).collect();
    assert_eq!(kinds, vec![SummandKind::Simple, SummandKind::Verma]);
    assert_eq!(c.summands[0].params["highest_weight"], serde_json::json!([-3, 0]));
}

#[test]
fn decompose_sl3_simple_reflection_verma() {
    for word in [[0usize], [1]] {
        let (_, c) = a2_cert(&word, 7);
        assert!(c.valid(), "{word:?}: {:?}", c.failures());
        assert_eq!(c.summands.len(), 3);
    }
}

#[test]
fn certificate_json_has_stable_shape() {
    let ctx = Catalogued::DualVerma { lambda: w(&[0]) };
    let m = ctx.build(6).unwrap();
    let c = decompose_b(&m, &ctx).unwrap();
    let j = c.to_json(false);
    assert_eq!(j["summands"].as_array().unwrap().len(), 1);
    assert_eq!(j["summands"][0]["kind"], "dual-verma");
    assert!(j["summands"][0].get("inclusion").is_none());
    assert!(c.to_json(true)["summands"][0].get("inclusion").is_some());
}

#[test]
fn table_case_identifiers_round_trip() {
    for c in TableCase::all() {
        assert_eq!(c.id().parse::<TableCase>().unwrap(), c);
    }
    assert_eq!("3".parse::<TableCase>().unwrap(), TableCase::Sl3(3));
    assert!("sl3-case-8".parse::<TableCase>().is_err());
}

#[test]
fn table_cases_four_and_seven_are_single_vermas() {
    for k in [4, 7] {
        let c = verify_block_tensor_table(&TableCase::Sl3(k), 6).unwrap();
        assert!(c.valid(), "case {k}: {:?}", c.failures());
        assert_eq!(c.kinds(), vec![(SummandKind::Verma, "M(s_a s_b s_a.0)".to_string())]);
    }
}

#[test]
fn sl2_table_dual_block_is_projective() {
    let c = verify_block_tensor_table(&TableCase::Sl2(Sl2Table::VermaDual), 8).unwrap();
    assert!(c.valid(), "{:?}", c.failures());
    assert_eq!(c.summands[0].kind, SummandKind::Projective);
}

#[test]
fn borel_window_uses_margin_zero() {
    let b = a1_verma(0, 4).restrict(crate::module::Levi::borel()).unwrap();
    assert_eq!(default_margin(&b).unwrap(), 0);
    assert!(is_indecomposable_window(&b, 0).is_ok());
}
