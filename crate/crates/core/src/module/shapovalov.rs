//! Contravariant form on Verma modules, simple quotients, and the explicit
//! b-submodules `M_alpha`, `M_beta` of an sl3 Verma module.

use std::collections::BTreeMap;

use super::induce::{verma, verma_words};
use super::{ht, quotient, Gen, Levi, Offset, Submodule, TruncatedModule};
use crate::error::{Error, Result};
use crate::exactla::{kernel, RatMatrix, SubspaceBasis};
use crate::rat::Q;
use crate::rootdata::{root_datum, CartanType, Weight};

/// Which of the two explicit b-submodules of an sl3 Verma module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MAlpha {
    Alpha,
    Beta,
}

/// Gram matrix of the contravariant form on a Verma module at offset `o`.
pub(crate) fn gram_at(m: &TruncatedModule, o: &Offset) -> Result<RatMatrix> {
    let d = m.datum();
    let n = m.dim(o);
    let words = verma_words(m.ty(), o);
    debug_assert_eq!(words.len(), n);
    let mut rows = Vec::with_capacity(n);
    for w in &words {
        let mut x = RatMatrix::identity(n);
        let mut cur = *o;
        let mut sign = 1i64;
        for &z in w {
            let (t, s) = d.tau(z as usize);
            sign *= s;
            let (next, e) = m
                .elt_matrix(t, &cur)
                .ok_or_else(|| Error::Window("raising action undefined on the window".into()))?;
            x = e.mul(&x);
            cur = next;
        }
        let row = if x.rows() == 0 { vec![Q::zero(); n] } else { x.row(0).to_vec() };
        rows.push(row.iter().map(|c| c * &Q::from_int(sign)).collect());
    }
    Ok(RatMatrix::from_rows(rows))
}

/// Gram matrix of the contravariant form on `M(lambda)` at weight `lambda - nu`.
pub fn shapovalov_gram(ty: CartanType, lambda: &Weight, nu: &Weight, depth: u32) -> Result<RatMatrix> {
    let d = root_datum(ty);
    let o = d
        .int_root_coords(nu)
        .filter(|o| o[0] >= 0 && o[1] >= 0 && ht(o) <= depth)
        .ok_or_else(|| Error::Window(format!("{nu} is not a positive-cone weight of height at most {depth}")))?;
    let m = verma(ty, lambda, ht(&o))?;
    gram_at(&m, &o)
}

/// Radical of the contravariant form restricted to a submodule of a Verma module.
pub(crate) fn radical_in(m: &TruncatedModule, s: &Submodule) -> Result<Submodule> {
    let mut spaces = BTreeMap::new();
    for (o, sp) in s.spaces() {
        let g = gram_at(m, o)?;
        let b = sp.as_columns();
        let k = kernel(&b.transpose().mul(&g).mul(&b));
        let vecs: Vec<Vec<Q>> = k.vectors().iter().map(|c| b.mul_vec(c)).collect();
        if !vecs.is_empty() {
            spaces.insert(*o, SubspaceBasis::from_vectors(m.dim(o), vecs));
        }
    }
    Ok(Submodule::from_spaces(spaces))
}

/// Simple module `L(lambda)` on the window of height `depth`.
pub fn simple(ty: CartanType, lambda: &Weight, depth: u32) -> Result<TruncatedModule> {
    let m = verma(ty, lambda, depth)?;
    let rad = radical_in(&m, &Submodule::full(&m))?;
    let mut out = quotient(&m, &rad)?.module;
    out.set_provenance("simple", format!("L({lambda})"));
    Ok(out)
}

/// Vectors at each weight that no sequence of raising generators carries to the top.
pub fn max_submodule(m: &TruncatedModule) -> Submodule {
    let top = m.dim(&[0, 0]);
    let mut paths: BTreeMap<Offset, RatMatrix> = BTreeMap::new();
    let mut spaces = BTreeMap::new();
    let mut offs = m.window();
    offs.sort_by_key(ht);
    for o in offs {
        let n = m.dim(&o);
        let p = if o == [0, 0] {
            RatMatrix::identity(top)
        } else {
            let mut p = RatMatrix::zeros(0, n);
            for i in 0..m.rank() {
                let t = m.target(Gen::X(i), &o);
                if let (Some(prev), Some(x)) = (paths.get(&t), m.stored(Gen::X(i), &o)) {
                    p = p.vstack(&prev.mul(x));
                }
            }
            p
        };
        if n > 0 {
            let k = kernel(&p);
            if !k.is_zero() {
                spaces.insert(o, k);
            }
        }
        paths.insert(o, p);
    }
    Submodule::from_spaces(spaces)
}

/// The b-submodule of `restrict(M(lambda), b)` spanned by the explicit monomial family
/// `y_ab^l y_b^p y_a^k y_a^n v+` with `l < m` (for `Alpha`) or its mirror with `a`, `b`
/// exchanged (for `Beta`), where `n`, `m` are the pairings of `lambda + rho`.
pub fn m_alpha_basis(lambda: &Weight, which: MAlpha, depth: u32) -> Result<(TruncatedModule, Submodule)> {
    let ty = CartanType::A2;
    let d = root_datum(ty);
    d.check_rank(lambda)?;
    if !d.is_dominant_integral(lambda) {
        return Err(Error::Precondition(format!("{lambda} is not dominant integral")));
    }
    let lr = lambda + &d.rho;
    let n = lr.pairing(0).to_i64().unwrap() as u32;
    let mm = lr.pairing(1).to_i64().unwrap() as u32;
    let (bound, shift) = match which {
        MAlpha::Alpha => (mm, n),
        MAlpha::Beta => (n, mm),
    };
    let full = verma(ty, lambda, depth)?;
    let m = full.restrict(Levi::borel())?;
    let sub = alpha_family(&full, which, bound, shift);
    sub.check_closed(&m)?;
    Ok((m, sub))
}

/// Span of `y_ab^l y_2^p y_1^(k + shift) v+` with `l < bound`, where `1` is the
/// first simple root of `which` and `2` the other one, inside a Verma module.
pub fn alpha_family(full: &TruncatedModule, which: MAlpha, bound: u32, shift: u32) -> Submodule {
    let d = full.datum();
    let depth = full.depth();
    let (first, second) = match which {
        MAlpha::Alpha => (0usize, 1usize),
        MAlpha::Beta => (1, 0),
    };
    let yab = d.element_with_root([-1, -1]).unwrap();
    let mut spaces: BTreeMap<Offset, SubspaceBasis> = BTreeMap::new();
    // exponents: l of y_ab, p of the second simple, k + shift of the first simple
    for l in 0..bound.min(depth + 1) {
        for p in 0..=depth {
            for kk in shift..=depth {
                if 2 * l + p + kk > depth {
                    continue;
                }
                let mut o: Offset = [0, 0];
                let mut v = vec![Q::one()];
                let steps = std::iter::repeat_n(Gen::Y(first), kk as usize)
                    .chain(std::iter::repeat_n(Gen::Y(second), p as usize));
                for g in steps {
                    let (t, w) = full.apply(g, &o, &v).expect("in-window lowering");
                    o = t;
                    v = w;
                }
                for _ in 0..l {
                    let (t, w) = full.apply_elt(yab, &o, &v).expect("in-window lowering");
                    o = t;
                    v = w;
                }
                spaces.entry(o).or_insert_with(|| SubspaceBasis::zero(full.dim(&o))).insert(&v);
            }
        }
    }
    spaces.retain(|_, s| !s.is_zero());
    Submodule::from_spaces(spaces)
}
