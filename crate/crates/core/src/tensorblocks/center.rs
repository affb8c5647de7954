//! Gelfand invariants in the enveloping algebra, normal ordered, and their
//! action on truncated modules.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactla::{solve, unit, RatMatrix};
use crate::module::{Offset, TruncatedModule};
use crate::rat::Q;
use crate::rootdata::{root_datum, CartanType, RootDatum};

type Word = Vec<u8>;

/// An element of U(g) as a combination of PBW monomials in ascending basis order.
pub type UElt = BTreeMap<Word, Q>;

fn add_into(acc: &mut UElt, w: Word, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(w.clone()).or_insert_with(Q::zero);
    *e += &c;
    if e.is_zero() {
        acc.remove(&w);
    }
}

/// Rewrite a word into normal order using `ab = ba + [a, b]`.
pub fn normal_order(d: &RootDatum, word: &[u8], memo: &mut HashMap<Word, UElt>) -> UElt {
    if let Some(r) = memo.get(word) {
        return r.clone();
    }
    let mut out = UElt::new();
    match word.windows(2).position(|p| p[0] > p[1]) {
        None => {
            out.insert(word.to_vec(), Q::one());
        }
        Some(i) => {
            let mut swapped = word.to_vec();
            swapped.swap(i, i + 1);
            for (w, c) in normal_order(d, &swapped, memo) {
                add_into(&mut out, w, c);
            }
            for &(b, cb) in d.bracket(word[i] as usize, word[i + 1] as usize) {
                let mut w = word[..i].to_vec();
                w.push(b as u8);
                w.extend_from_slice(&word[i + 2..]);
                for (w2, c) in normal_order(d, &w, memo) {
                    add_into(&mut out, w2, &c * &Q::from_int(cb));
                }
            }
        }
    }
    memo.insert(word.to_vec(), out.clone());
    out
}

fn mat_of(m: &[Vec<i64>]) -> RatMatrix {
    RatMatrix::from_rows(m.iter().map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect())
}

/// Dual basis of the trace form of the defining representation, as matrices.
pub(crate) fn dual_basis(d: &RootDatum) -> Vec<RatMatrix> {
    let mats: Vec<RatMatrix> = d.basis.iter().map(|b| mat_of(&b.matrix)).collect();
    let n = mats.len();
    let mut gram = RatMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            gram.set(a, b, mats[a].mul(&mats[b]).trace());
        }
    }
    let cols: Vec<Vec<Q>> = (0..n).map(|i| solve(&gram, &unit(n, i)).expect("trace form is nondegenerate")).collect();
    let inv = RatMatrix::from_columns(n, &cols);
    (0..n)
        .map(|a| {
            let mut m = RatMatrix::zeros(mats[0].rows(), mats[0].cols());
            for (b, mb) in mats.iter().enumerate() {
                let c = inv.get(a, b);
                if !c.is_zero() {
                    m = m.add(&mb.scale(c));
                }
            }
            m
        })
        .collect()
}

fn build_casimir(ty: CartanType, degree: u32) -> UElt {
    let d = root_datum(ty);
    let dual = dual_basis(d);
    let n = d.basis_len();
    let mut memo = HashMap::new();
    let mut out = UElt::new();
    let k = degree as usize;
    let mut idx = vec![0usize; k];
    loop {
        let mut p = dual[idx[0]].clone();
        for &i in &idx[1..] {
            p = p.mul(&dual[i]);
        }
        let c = p.trace();
        if !c.is_zero() {
            let w: Word = idx.iter().map(|&i| i as u8).collect();
            for (w2, c2) in normal_order(d, &w, &mut memo) {
                add_into(&mut out, w2, &c * &c2);
            }
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
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

/// Normal-ordered Gelfand invariant of the given degree.
pub fn casimir(ty: CartanType, degree: u32) -> Result<&'static UElt> {
    static CACHE: [[OnceLock<UElt>; 2]; 2] = [[OnceLock::new(), OnceLock::new()], [OnceLock::new(), OnceLock::new()]];
    let slot = match (ty, degree) {
        (CartanType::A1, 2) => &CACHE[0][0],
        (CartanType::A2, 2) => &CACHE[1][0],
        (CartanType::A2, 3) => &CACHE[1][1],
        _ => {
            return Err(Error::UnsupportedCentral(format!(
                "degree {degree} for {} (the center is generated by {})",
                ty.name(),
                central_degrees(ty).iter().map(|k| format!("C{k}")).collect::<Vec<_>>().join(", ")
            )))
        }
    };
    Ok(slot.get_or_init(|| build_casimir(ty, degree)))
}

/// Degrees of the center generators.
pub fn central_degrees(ty: CartanType) -> &'static [u32] {
    match ty {
        CartanType::A1 => &[2],
        CartanType::A2 => &[2, 3],
    }
}

/// Matrix of `C_degree` on the weight space of `lambda` in `m`.
pub fn central_element_action(m: &TruncatedModule, degree: u32, lambda: &crate::rootdata::Weight) -> Result<RatMatrix> {
    let o = m.offset_or_err(lambda)?;
    central_action_at(m, degree, &o)
}

pub(crate) fn central_action_at(m: &TruncatedModule, degree: u32, o: &Offset) -> Result<RatMatrix> {
    if !m.is_g_module() {
        return Err(Error::Precondition(format!("the center acts only on g-modules, not over {}", m.acting_tag())));
    }
    let c = casimir(m.ty(), degree)?;
    let n = m.dim(o);
    // products of word suffixes, shared between terms
    let mut memo: HashMap<Word, Option<(Offset, RatMatrix)>> = HashMap::new();
    memo.insert(Vec::new(), Some((*o, RatMatrix::identity(n))));
    let mut total = RatMatrix::zeros(n, n);
    for (w, coef) in c {
        if let Some((t, p)) = suffix_product(m, w, &mut memo)? {
            debug_assert_eq!(t, *o);
            total = total.add(&p.scale(coef));
        }
    }
    Ok(total)
}

/// Matrix of a word acting from the base offset; `None` when it is zero.
fn suffix_product(
    m: &TruncatedModule,
    w: &[u8],
    memo: &mut HashMap<Word, Option<(Offset, RatMatrix)>>,
) -> Result<Option<(Offset, RatMatrix)>> {
    if let Some(r) = memo.get(w) {
        return Ok(r.clone());
    }
    let r = match suffix_product(m, &w[1..], memo)? {
        None => None,
        Some((cur, acc)) => {
            let (t, e) = m
                .elt_matrix(w[0] as usize, &cur)
                .ok_or_else(|| Error::Window("central element leaves the window".into()))?;
            let p = e.mul(&acc);
            (p.rows() > 0 && !p.is_zero()).then_some((t, p))
        }
    };
    memo.insert(w.to_vec(), r.clone());
    Ok(r)
}
