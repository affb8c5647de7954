use super::*;
use crate::exactla::RatMatrix;
use crate::module::{simple, verma, FormalCharacter, TruncatedModule};
use crate::rat::Q;
use crate::rootdata::{root_datum, CartanType, Weight};
use crate::Error;

fn w(c: &[i64]) -> Weight {
    Weight::from_ints(c)
}

const A1: CartanType = CartanType::A1;
const A2: CartanType = CartanType::A2;

#[test]
fn a1_tensor_of_vermas() {
    let m = verma(A1, &w(&[0]), 5).unwrap();
    let t = tensor(&m, &m, 5).unwrap();
    for k in 0..=5i64 {
        assert_eq!(t.character().get(&w(&[-2 * k])), k as usize + 1);
    }
    t.check_relations().unwrap();
}

#[test]
fn tensor_with_trivial_is_identity_on_characters() {
    let m = verma(A2, &w(&[1, 0]), 4).unwrap();
    let triv = simple(A2, &w(&[0, 0]), 4).unwrap();
    assert!(tensor(&m, &triv, 4).unwrap().character().same_dims(&m.character()));
    let cm = m.character();
    for (wt, d) in cm.entries() {
        assert_eq!(tensor_weight_dim(&cm, &triv.character(), wt).unwrap(), *d);
    }
}

#[test]
fn a2_tensor_dim_at_minus_alpha_minus_beta() {
    // convolution of partition counts p(a, b) = min(a, b) + 1 over splits of alpha + beta
    let p = |a: i32, b: i32| a.min(b) as usize + 1;
    let mut expect = 0;
    for a in 0..=1 {
        for b in 0..=1 {
            expect += p(a, b) * p(1 - a, 1 - b);
        }
    }
    assert_eq!(expect, 6);
    let m = verma(A2, &w(&[0, 0]), 3).unwrap();
    let t = tensor(&m, &m, 3).unwrap();
    assert_eq!(t.character().get(&w(&[-1, -1])), expect);
}

#[test]
fn tensor_weight_dim_examples() {
    let c = verma(A1, &w(&[0]), 4).unwrap().character();
    assert_eq!(tensor_weight_dim(&c, &c, &w(&[-4])).unwrap(), 3);
    assert!(tensor_weight_dim(&c, &c, &w(&[-10])).is_err());
    let a = verma(A2, &w(&[1, 0]), 4).unwrap();
    let b = simple(A2, &w(&[1, 1]), 4).unwrap();
    let t = tensor(&a, &b, 4).unwrap();
    let (ca, cb) = (a.character(), b.character());
    for o in t.window() {
        let wt = t.weight_of(&o);
        assert_eq!(t.dim(&o), tensor_weight_dim(&ca, &cb, &wt).unwrap());
    }
}

#[test]
fn tensor_duality_on_characters() {
    let a = verma(A2, &w(&[0, 1]), 3).unwrap();
    let b = simple(A2, &w(&[1, 0]), 3).unwrap();
    let lhs = tensor(&a, &b, 3).unwrap().dual().unwrap();
    let rhs = tensor(&a.dual().unwrap(), &b.dual().unwrap(), 3).unwrap();
    assert_eq!(lhs.character(), rhs.character());
    rhs.check_relations().unwrap();
}

/// Casimir of the trace form: (lambda, lambda + 2 rho) with the normalized inner product.
fn casimir_oracle(ty: CartanType, l: &[i64]) -> Q {
    match ty {
        CartanType::A1 => Q::new(l[0] * (l[0] + 2), 2),
        CartanType::A2 => {
            let s = [l[0] + 2, l[1] + 2];
            let ip = |a: [i64; 2], b: [i64; 2]| 2 * a[0] * b[0] + a[0] * b[1] + a[1] * b[0] + 2 * a[1] * b[1];
            Q::new(ip([l[0], l[1]], s), 3)
        }
    }
}

#[test]
fn quadratic_casimir_matches_oracle() {
    let m = verma(A1, &w(&[0]), 2).unwrap();
    assert_eq!(central_element_action(&m, 2, &w(&[0])).unwrap(), RatMatrix::from_ints(&[&[0]]));
    for l in -4..5 {
        assert_eq!(central_eigenvalues(A1, &w(&[l])).unwrap(), vec![casimir_oracle(A1, &[l])]);
    }
    for l in [[0, 0], [1, 0], [0, 1], [2, 1], [-3, 1], [-1, -1]] {
        assert_eq!(central_eigenvalues(A2, &w(&l)).unwrap()[0], casimir_oracle(A2, &l));
    }
}

/// Scalar by which `sum tr(e^a e^b e^c) rho(e_a) rho(e_b) rho(e_c)` acts in a representation `rho`.
fn gelfand_scalar(rho: impl Fn(&RatMatrix) -> RatMatrix, degree: usize) -> Q {
    let d = root_datum(A2);
    let mats: Vec<RatMatrix> = d
        .basis
        .iter()
        .map(|b| RatMatrix::from_rows(b.matrix.iter().map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect()))
        .collect();
    let dual = super::center::dual_basis(d);
    let n = mats.len();
    let mut total: Option<RatMatrix> = None;
    let mut idx = vec![0usize; degree];
    loop {
        let mut t = dual[idx[0]].clone();
        let mut r = rho(&mats[idx[0]]);
        for &i in &idx[1..] {
            t = t.mul(&dual[i]);
            r = r.mul(&rho(&mats[i]));
        }
        let term = r.scale(&t.trace());
        total = Some(match total {
            None => term,
            Some(acc) => acc.add(&term),
        });
        let mut pos = degree;
        loop {
            if pos == 0 {
                let m = total.unwrap();
                assert_eq!(m, RatMatrix::scalar(m.rows(), m.get(0, 0)));
                return m.get(0, 0).clone();
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[test]
fn gelfand_invariants_match_direct_evaluation() {
    let defining = |m: &RatMatrix| m.clone();
    let dual = |m: &RatMatrix| m.transpose().scale(&Q::from_int(-1));
    for (rho_w, is_dual) in [([1, 0], false), ([0, 1], true)] {
        let e = central_eigenvalues(A2, &w(&rho_w)).unwrap();
        for (k, val) in [2usize, 3].iter().zip(&e) {
            let expect = if is_dual { gelfand_scalar(dual, *k) } else { gelfand_scalar(defining, *k) };
            assert_eq!(*val, expect, "degree {k} at {rho_w:?}");
        }
    }
    let e = central_eigenvalues(A2, &w(&[1, 0])).unwrap();
    let f = central_eigenvalues(A2, &w(&[0, 1])).unwrap();
    assert_ne!(e[1], f[1]);
}

#[test]
fn unsupported_central_degree() {
    let m = verma(A1, &w(&[0]), 2).unwrap();
    assert!(matches!(central_element_action(&m, 3, &w(&[0])), Err(Error::UnsupportedCentral(_))));
    let m = verma(A2, &w(&[0, 0]), 2).unwrap();
    assert!(matches!(central_element_action(&m, 4, &w(&[0, 0])), Err(Error::UnsupportedCentral(_))));
    let b = m.restrict(crate::module::Levi::borel()).unwrap();
    assert!(central_element_action(&b, 2, &w(&[0, 0])).is_err());
}

fn assert_central(m: &TruncatedModule, degree: u32) {
    for o in m.window() {
        if !m.is_interior(&o) {
            continue;
        }
        let c = central_element_action(m, degree, &m.weight_of(&o)).unwrap();
        for g in m.gens() {
            let t = m.target(g, &o);
            if !m.in_window(&t) || m.dim(&t) == 0 {
                continue;
            }
            let a = m.action(g, &o).unwrap();
            let ct = central_element_action(m, degree, &m.weight_of(&t)).unwrap();
            assert_eq!(ct.mul(&a), a.mul(&c), "{g:?} at {o:?}");
        }
    }
}

#[test]
fn center_commutes_with_generators() {
    let m = verma(A2, &w(&[1, 0]), 4).unwrap();
    assert_central(&m, 2);
    assert_central(&m, 3);
    let a = verma(A2, &w(&[0, 0]), 3).unwrap();
    let t = tensor(&a, &simple(A2, &w(&[1, 0]), 3).unwrap(), 3).unwrap();
    assert_central(&t, 2);
    assert_central(&t, 3);
}

#[test]
fn central_character_linkage() {
    assert_eq!(central_character(A1, &w(&[0])).unwrap(), central_character(A1, &w(&[-2])).unwrap());
    assert_ne!(central_character(A1, &w(&[0])).unwrap(), central_character(A1, &w(&[-4])).unwrap());
    let d = root_datum(A2);
    let zero = central_character(A2, &w(&[0, 0])).unwrap();
    for x in &d.weyl_group {
        assert_eq!(central_character(A2, &d.dot_action(x, &w(&[0, 0]))).unwrap(), zero);
    }
    assert_eq!(zero.rep, w(&[0, 0]));
    assert_ne!(central_character(A2, &w(&[1, 0])).unwrap(), zero);
    let j = serde_json::to_string(&zero).unwrap();
    assert_eq!(j, r#"{"rep":[0,0],"eigen":["0","0"]}"#);
}

#[test]
fn a1_block_of_tensor_square() {
    let d = 6;
    let m = verma(A1, &w(&[0]), d).unwrap();
    let t = tensor(&m, &m, d).unwrap();
    let bd = block_decompose(&t).unwrap();
    let b0 = bd.block(&w(&[0])).unwrap();
    let top = w(&[0]);
    let expect = FormalCharacter::verma(A1, &top, &top, d).add(&FormalCharacter::verma(A1, &w(&[-2]), &top, d));
    assert_eq!(b0.character(&t), expect);
    let total = bd.blocks.iter().fold(FormalCharacter::new(A1, top.clone(), d), |acc, (_, s)| acc.add(&s.character(&t)));
    assert_eq!(total, t.character());
}

#[test]
fn verma_is_a_single_block() {
    for l in [[0, 0], [2, -1], [-3, -3]] {
        let m = verma(A2, &w(&l), 4).unwrap();
        let bd = block_decompose(&m).unwrap();
        assert_eq!(bd.blocks.len(), 1);
        assert_eq!(bd.blocks[0].1.total_dim(), m.total_dim());
    }
}

#[test]
fn a2_block_with_antidominant_verma() {
    let d = 4;
    let a = verma(A2, &w(&[0, 0]), d).unwrap();
    let b = verma(A2, &w(&[-2, -2]), d).unwrap();
    let t = tensor(&a, &b, d).unwrap();
    let bd = block_decompose(&t).unwrap();
    let b0 = bd.block(&w(&[0, 0])).unwrap();
    assert_eq!(b0.character(&t), b.character());
}

#[test]
fn blocks_are_linkage_pure() {
    let d = 4;
    let a = verma(A2, &w(&[0, 0]), d).unwrap();
    let b = simple(A2, &w(&[1, 1]), d).unwrap();
    let t = tensor(&a, &b, d).unwrap();
    let bd = block_decompose(&t).unwrap();
    assert!(bd.blocks.len() > 1);
    let dat = root_datum(A2);
    let mut total = 0;
    for (label, s) in &bd.blocks {
        let sm = s.as_module(&t);
        sm.check_relations().unwrap();
        for (o, _) in sm.maximal_vector_table() {
            assert_eq!(dat.linkage_rep(&sm.weight_of(&o)).unwrap(), label.rep);
        }
        total += s.total_dim();
    }
    assert_eq!(total, t.total_dim());
}

#[test]
fn single_block_matches_full_decomposition() {
    let d = 5;
    let a = verma(A2, &w(&[0, 0]), d).unwrap();
    let t = tensor(&a, &a, d).unwrap();
    let bd = block_decompose(&t).unwrap();
    for (label, s) in &bd.blocks {
        assert_eq!(&block_component(&t, &label.rep).unwrap(), s, "{label}");
    }
    let m = verma(A1, &w(&[0]), 6).unwrap();
    let t = tensor(&m, &m, 6).unwrap();
    let bd = block_decompose(&t).unwrap();
    assert_eq!(&block_component(&t, &w(&[-2])).unwrap(), bd.block(&w(&[0])).unwrap());
}

#[test]
fn pure_tensor_of_highest_weight_vectors() {
    let a = verma(A2, &w(&[0, 0]), 3).unwrap();
    let b = verma(A2, &w(&[1, 0]), 3).unwrap();
    let one = vec![Q::one()];
    let (o, v) = tensor_pure(&a, &b, 3, (&[0, 0], &one), (&[0, 0], &one)).unwrap();
    assert_eq!(o, [0, 0]);
    assert_eq!(v, one);
    let t = tensor(&a, &b, 3).unwrap();
    let yb = b.apply(crate::module::Gen::Y(0), &[0, 0], &one).unwrap();
    let (o2, v2) = tensor_pure(&a, &b, 3, (&[0, 0], &one), (&yb.0, &yb.1)).unwrap();
    let ya = a.apply(crate::module::Gen::Y(0), &[0, 0], &one).unwrap();
    let (_, v3) = tensor_pure(&a, &b, 3, (&ya.0, &ya.1), (&[0, 0], &one)).unwrap();
    let (_, lowered) = t.apply(crate::module::Gen::Y(0), &[0, 0], &one).unwrap();
    let sum: Vec<Q> = v2.iter().zip(&v3).map(|(x, y)| x + y).collect();
    assert_eq!(o2, [1, 0]);
    assert_eq!(lowered, sum);
}
