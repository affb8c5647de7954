use super::*;
use crate::exactla::unit;

fn w(c: &[i64]) -> Weight {
    Weight::from_ints(c)
}

fn a2() -> CartanType {
    CartanType::A2
}

/// Weight `top - a*alpha - b*beta` in A2 fundamental coordinates.
fn below(top: &[i64], a: i64, b: i64) -> Weight {
    w(&[top[0] - 2 * a + b, top[1] + a - 2 * b])
}

fn index_of(m: &TruncatedModule, o: &Offset, label: &str) -> usize {
    m.labels(o).iter().position(|l| l == label).unwrap_or_else(|| panic!("no basis vector {label}"))
}

#[test]
fn a1_verma_zero_depth_three() {
    let m = verma(CartanType::A1, &w(&[0]), 3).unwrap();
    let c = m.character();
    assert_eq!(c.as_pairs(), vec![(w(&[-6]), 1), (w(&[-4]), 1), (w(&[-2]), 1), (w(&[0]), 1)]);
    m.check_relations().unwrap();
}

#[test]
fn a2_verma_dims_match_partition_count() {
    // partitions of a*alpha + b*beta into alpha, beta, alpha+beta: min(a, b) + 1
    let m = verma(a2(), &w(&[0, 0]), 6).unwrap();
    for o in m.window() {
        assert_eq!(m.dim(&o), o[0].min(o[1]) as usize + 1, "offset {o:?}");
    }
    assert_eq!(verma(a2(), &w(&[0, 0]), 2).unwrap().dim(&[1, 1]), 2);
    assert_eq!(verma(a2(), &w(&[0, 0]), 4).unwrap().dim(&[2, 2]), 3);
}

#[test]
fn verma_relations_hold() {
    for l in [[0, 0], [1, 0], [2, 1], [-3, 1]] {
        verma(a2(), &w(&l), 5).unwrap().check_relations().unwrap();
    }
    let half = Weight::new(vec![Q::new(1, 2), Q::new(-1, 3)]);
    verma(a2(), &half, 4).unwrap().check_relations().unwrap();
}

#[test]
fn maximal_vectors_in_verma_zero() {
    let m = verma(CartanType::A1, &w(&[0]), 3).unwrap();
    assert_eq!(m.maximal_vectors(&w(&[-2])).unwrap().dim(), 1);

    let m = verma(a2(), &w(&[0, 0]), 6).unwrap();
    let s = m.maximal_vectors(&below(&[0, 0], 1, 0)).unwrap();
    assert_eq!(s.dim(), 1);
    assert!(s.contains(&unit(1, index_of(&m, &[1, 0], "y_a v+"))));
    let s = m.maximal_vectors(&below(&[0, 0], 1, 2)).unwrap();
    assert_eq!(s.dim(), 1);
    let n = m.dim(&[1, 2]);
    assert!(s.contains(&unit(n, index_of(&m, &[1, 2], "y_b^2 y_a v+"))));
}

#[test]
fn maximal_vectors_exactly_on_linkage_class() {
    let m = verma(a2(), &w(&[0, 0]), 6).unwrap();
    let expect: Vec<Offset> = vec![[0, 0], [0, 1], [1, 0], [1, 2], [2, 1], [2, 2]];
    let table = m.maximal_vector_table();
    let got: Vec<Offset> = table.iter().map(|(o, _)| *o).collect();
    let mut e = expect.clone();
    e.sort();
    assert_eq!(got, e);
    assert!(table.iter().all(|(_, d)| *d == 1));
    let d = root_datum(a2());
    let class = d.linkage_class(&w(&[0, 0])).unwrap();
    for o in expect {
        assert!(class.contains(&m.weight_of(&o)));
    }
}

#[test]
fn shapovalov_examples() {
    let g = shapovalov_gram(CartanType::A1, &w(&[0]), &w(&[2]), 1).unwrap();
    assert_eq!(g, RatMatrix::from_ints(&[&[0]]));
    let g = shapovalov_gram(CartanType::A1, &w(&[2]), &w(&[2]), 1).unwrap();
    assert_eq!(g, RatMatrix::from_ints(&[&[2]]));
    // alpha + beta = (1, 1) in fundamental coordinates
    let g = shapovalov_gram(a2(), &w(&[0, 0]), &w(&[1, 1]), 2).unwrap();
    assert_eq!((g.rows(), g.cols(), g.rank()), (2, 2, 0));
    assert!(shapovalov_gram(a2(), &w(&[0, 0]), &w(&[1, 1]), 1).is_err());
}

#[test]
fn shapovalov_is_symmetric_and_matches_sl2_formula() {
    // <y^k v, y^k v> = k! * prod_{i<k} (lambda - i)
    for lam in [-2i64, 0, 3, 5] {
        for k in 1..5i64 {
            let g = shapovalov_gram(CartanType::A1, &w(&[lam]), &w(&[2 * k]), 6).unwrap();
            let mut e = 1i64;
            for i in 0..k {
                e *= (i + 1) * (lam - i);
            }
            assert_eq!(g, RatMatrix::from_ints(&[&[e]]), "lambda {lam} k {k}");
        }
    }
    let g = shapovalov_gram(a2(), &w(&[2, 1]), &w(&[2, 2]), 4).unwrap();
    assert_eq!(g, g.transpose());
}

#[test]
fn simple_examples() {
    let c = simple(CartanType::A1, &w(&[0]), 4).unwrap().character();
    assert_eq!(c.as_pairs(), vec![(w(&[0]), 1)]);
    let c = simple(CartanType::A1, &w(&[2]), 4).unwrap().character();
    assert_eq!(c.as_pairs(), vec![(w(&[-2]), 1), (w(&[0]), 1), (w(&[2]), 1)]);
    let c = simple(a2(), &w(&[0, 0]), 4).unwrap().character();
    assert_eq!(c.as_pairs(), vec![(w(&[0, 0]), 1)]);
    let l = simple(a2(), &w(&[1, 0]), 4).unwrap();
    assert_eq!(l.total_dim(), 3);
    let l = simple(a2(), &w(&[1, 1]), 5).unwrap();
    assert_eq!(l.total_dim(), 8);
    assert_eq!(l.dim(&[1, 1]), 2);
    l.check_relations().unwrap();
    assert_eq!(simple(a2(), &w(&[2, 0]), 4).unwrap().total_dim(), 6);
}

#[test]
fn max_submodule_matches_radical() {
    for l in [[0, 0], [1, 0], [1, 1]] {
        let m = verma(a2(), &w(&l), 5).unwrap();
        let q = quotient(&m, &max_submodule(&m)).unwrap().module;
        assert_eq!(q.character(), simple(a2(), &w(&l), 5).unwrap().character());
    }
}

#[test]
fn dual_examples() {
    let m = verma(a2(), &w(&[1, 0]), 4).unwrap();
    let d = m.dual().unwrap();
    assert_eq!(d.character(), m.character());
    d.check_relations().unwrap();
    let dd = d.dual().unwrap();
    for o in m.window() {
        for g in m.gens() {
            assert_eq!(dd.action(g, &o), m.action(g, &o));
        }
    }
    let m = verma(CartanType::A1, &w(&[0]), 4).unwrap();
    let d = m.dual().unwrap();
    assert_eq!(d.maximal_vectors(&w(&[0])).unwrap().dim(), 1);
    for o in d.window() {
        if o != [0, 0] && d.is_interior(&o) {
            assert_eq!(d.maximal_vectors_at(&o).dim(), 0, "offset {o:?}");
        }
    }
    assert!(m.restrict(Levi::borel()).unwrap().dual().is_err());
}

#[test]
fn restrict_examples() {
    let m = verma(CartanType::A1, &w(&[0]), 3).unwrap();
    let r = m.restrict(Levi::borel()).unwrap();
    assert_eq!(r.gens(), vec![Gen::X(0)]);
    assert_eq!(r.acting_tag(), "b");
    assert_eq!(r.character(), m.character());
    let m = verma(a2(), &w(&[0, 0]), 4).unwrap();
    let r = m.restrict(Levi::borel()).unwrap();
    assert_eq!(r.maximal_vectors(&below(&[0, 0], 1, 2)).unwrap().dim(), 1);
    assert!(r.restrict(Levi::full(a2())).is_err());
}

#[test]
fn induce_examples() {
    let v = one_dim(CartanType::A1, &w(&[0]), 4).unwrap();
    let i = induce(&v, 4).unwrap();
    assert_eq!(i.character(), verma(CartanType::A1, &w(&[0]), 4).unwrap().character());
    assert!(induce(&v, 5).is_err());

    let m = verma(a2(), &w(&[0, 0]), 4).unwrap();
    let ind = induce(&m.restrict(Levi::borel()).unwrap(), 4).unwrap();
    ind.check_relations().unwrap();
    let t = tensor(&m, &m, 4).unwrap();
    assert!(ind.character().same_dims(&t.character()));
}

#[test]
fn induce_restrict_adjunction_levi() {
    let p = Levi::from_indices(&[0]);
    let m = simple(a2(), &w(&[1, 1]), 4).unwrap();
    let ind = induce(&m.restrict(p).unwrap(), 4).unwrap();
    ind.check_relations().unwrap();
    let gv = generalized_verma(a2(), &w(&[0, 0]), p, 4).unwrap();
    let t = tensor(&gv, &m, 4).unwrap();
    assert!(ind.character().same_dims(&t.character()));
}

#[test]
fn generalized_verma_examples() {
    let gv = generalized_verma(a2(), &w(&[1, 2]), Levi::borel(), 4).unwrap();
    assert_eq!(gv.character(), verma(a2(), &w(&[1, 2]), 4).unwrap().character());
    let p = Levi::from_indices(&[0]);
    let gv = generalized_verma(a2(), &w(&[0, 0]), p, 2).unwrap();
    assert_eq!(gv.dim(&[1, 1]), 1);
    gv.check_relations().unwrap();
    let l = levi_simple(a2(), &w(&[2, -1]), p, 4).unwrap();
    assert_eq!(l.total_dim(), 3);
    assert_eq!(l.acting_tag(), p.tag(a2()));
    assert!(matches!(
        generalized_verma(a2(), &w(&[-1, 0]), p, 2),
        Err(Error::NotLeviDominant { .. })
    ));
    assert!(generalized_verma(a2(), &w(&[0, -1]), p, 2).is_ok());
}

#[test]
fn generalized_verma_is_quotient_of_verma() {
    let p = Levi::from_indices(&[1]);
    let lam = w(&[1, 1]);
    let m = verma(a2(), &lam, 4).unwrap();
    let gv = generalized_verma(a2(), &lam, p, 4).unwrap();
    // the kernel of M(l) -> M_p(l) is generated by y_b^{<l,b>+1} v+
    let s = submodule_generated(&m, &[ModuleVec::new(below(&[1, 1], 0, 2), vec![Q::one()])]).unwrap();
    let q = quotient(&m, &s).unwrap().module;
    assert_eq!(q.character(), gv.character());
}

#[test]
fn submodule_examples() {
    let m = verma(a2(), &w(&[0, 0]), 4).unwrap();
    let s = submodule_generated(&m, &[ModuleVec::new(w(&[0, 0]), vec![Q::one()])]).unwrap();
    assert_eq!(s.total_dim(), m.total_dim());

    let m = verma(CartanType::A1, &w(&[0]), 4).unwrap();
    let s = submodule_generated(&m, &[ModuleVec::new(w(&[-2]), vec![Q::one()])]).unwrap();
    let sub = FormalCharacter::verma(CartanType::A1, &w(&[-2]), &w(&[0]), 4);
    assert_eq!(s.character(&m), sub);
    let inc = s.inclusion(&m);
    inc.check_commutes(&s.as_module(&m), &m).unwrap();

    let b = m.restrict(Levi::borel()).unwrap();
    let s = submodule_generated(&b, &[ModuleVec::new(w(&[0]), vec![Q::one()])]).unwrap();
    assert_eq!(s.total_dim(), 1);
    assert!(submodule_generated(&b, &[ModuleVec::new(w(&[2]), vec![Q::one()])]).is_err());
}

#[test]
fn quotient_examples() {
    let m = verma(CartanType::A1, &w(&[0]), 4).unwrap();
    let q = quotient(&m, &Submodule::zero()).unwrap().module;
    assert_eq!(q.character(), m.character());
    assert!(quotient(&m, &Submodule::full(&m)).unwrap().module.is_zero());
    let s = submodule_generated(&m, &[ModuleVec::new(w(&[-2]), vec![Q::one()])]).unwrap();
    let q = quotient(&m, &s).unwrap().module;
    assert_eq!(q.character().as_pairs(), vec![(w(&[0]), 1)]);
    assert_eq!(s.character(&m).add(&q.character()), m.character());

    let mut bad = Submodule::zero();
    bad.insert(&m, &[2, 0], &[Q::one()]);
    assert!(matches!(quotient(&m, &bad), Err(Error::NotSubmodule { .. })));
}

#[test]
fn direct_sum_character_adds() {
    let a = verma(a2(), &w(&[0, 0]), 3).unwrap();
    let b = simple(a2(), &w(&[0, 0]), 3).unwrap();
    let s = a.direct_sum(&b).unwrap();
    assert_eq!(s.character(), a.character().add(&b.character()));
    s.check_relations().unwrap();
}

#[test]
fn tensor_relations_and_character() {
    let a = simple(a2(), &w(&[1, 0]), 3).unwrap();
    let b = verma(a2(), &w(&[0, 1]), 3).unwrap();
    let t = tensor(&a, &b, 3).unwrap();
    t.check_relations().unwrap();
    let (ca, cb) = (a.character(), b.character());
    for (wt, d) in t.character().entries() {
        assert_eq!(*d, tensor_weight_dim(&ca, &cb, wt).unwrap());
    }
    assert!(tensor(&a, &b, 4).is_err());
}

#[test]
fn m_alpha_examples() {
    let (m, ma) = m_alpha_basis(&w(&[0, 0]), MAlpha::Alpha, 6).unwrap();
    let (_, mb) = m_alpha_basis(&w(&[0, 0]), MAlpha::Beta, 6).unwrap();
    let va = unit(1, index_of(&m, &[1, 0], "y_a v+"));
    assert!(ma.contains(&[1, 0], &va));
    let n = m.dim(&[1, 2]);
    assert!(ma.contains(&[1, 2], &unit(n, index_of(&m, &[1, 2], "y_b^2 y_a v+"))));
    assert!(!ma.contains(&[0, 1], &unit(1, 0)));
    assert!(mb.contains(&[0, 1], &unit(1, 0)));

    let top = w(&[0, 0]);
    let l0 = simple(a2(), &top, 6).unwrap().character();
    let mw0 = FormalCharacter::verma(a2(), &w(&[-2, -2]), &top, 6);
    let total = l0.add(&ma.character(&m)).add(&mb.character(&m)).add(&mw0);
    assert_eq!(total, m.character());
}

#[test]
fn m_alpha_closed_for_other_weights() {
    for l in [[1, 0], [0, 1], [1, 1], [2, 1]] {
        for which in [MAlpha::Alpha, MAlpha::Beta] {
            m_alpha_basis(&w(&l), which, 6).unwrap();
        }
    }
    assert!(m_alpha_basis(&w(&[-1, 0]), MAlpha::Alpha, 4).is_err());
}
