//! Parabolic induction by PBW straightening.
//!
//! Basis of `Ind(V)`: ordered monomials in the lowering root vectors outside
//! the Levi factor, tensored with a basis of `V`. Letters are basis indices of
//! the root datum, kept in ascending order, which is the normal order
//! `y_{a+b}^c y_b^q y_a^p`.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use super::{add_off, ht, sub_off, Gen, Levi, Offset, TruncatedModule};
use crate::error::{Error, Result};
use crate::exactla::{unit, RatMatrix};
use crate::rat::Q;
use crate::rootdata::{root_datum, CartanType, EltKind, RootDatum, Weight};

type Word = Vec<u8>;
type Elem = BTreeMap<Word, Vec<Q>>;

/// Upper bound on memoized straightening results before giving up.
const MEMO_LIMIT: usize = 5_000_000;

struct Inducer<'a> {
    v: &'a TruncatedModule,
    d: &'static RootDatum,
    mul_memo: HashMap<(u8, Word), Rc<BTreeMap<Word, Q>>>,
    act_memo: HashMap<(u8, Word, Offset, usize), Rc<Elem>>,
}

fn letter_offset(d: &RootDatum, a: u8) -> Offset {
    let r = d.basis[a as usize].root;
    [-r[0], -r[1]]
}

fn word_offset(d: &RootDatum, w: &[u8]) -> Offset {
    w.iter().fold([0, 0], |acc, &a| add_off(&acc, &letter_offset(d, a)))
}

fn add_scaled(acc: &mut Elem, w: &Word, v: &[Q], c: &Q) {
    if c.is_zero() || v.iter().all(Q::is_zero) {
        return;
    }
    match acc.get_mut(w) {
        Some(cur) => {
            for (x, y) in cur.iter_mut().zip(v) {
                if !y.is_zero() {
                    x.add_mul(c, y);
                }
            }
        }
        None => {
            acc.insert(w.clone(), v.iter().map(|y| y * c).collect());
        }
    }
}

fn prune(mut e: Elem) -> Elem {
    e.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    e
}

impl<'a> Inducer<'a> {
    fn is_outside(&self, a: usize) -> bool {
        let b = &self.d.basis[a];
        b.kind == EltKind::Lower && (0..self.d.rank).any(|j| b.root[j] != 0 && !self.v.levi().contains(j))
    }

    fn check_memo(&self) -> Result<()> {
        if self.act_memo.len() + self.mul_memo.len() > MEMO_LIMIT {
            return Err(Error::Resource("straightening cache limit exceeded".into()));
        }
        Ok(())
    }

    /// `z * word` in the enveloping algebra of the nilradical, normal ordered.
    fn mul_left(&mut self, z: u8, word: &[u8]) -> Rc<BTreeMap<Word, Q>> {
        let key = (z, word.to_vec());
        if let Some(r) = self.mul_memo.get(&key) {
            return r.clone();
        }
        let mut out: BTreeMap<Word, Q> = BTreeMap::new();
        if word.is_empty() || z <= word[0] {
            let mut w = vec![z];
            w.extend_from_slice(word);
            out.insert(w, Q::one());
        } else {
            // z w0 rest = w0 (z rest) + [z, w0] rest
            let w0 = word[0];
            let rest = &word[1..];
            let inner = self.mul_left(z, rest);
            for (w, c) in inner.iter() {
                let outer = self.mul_left(w0, w);
                for (w2, c2) in outer.iter() {
                    *out.entry(w2.clone()).or_insert_with(Q::zero) += &(c * c2);
                }
            }
            let br: Vec<(usize, i64)> = self.d.bracket(z as usize, w0 as usize).to_vec();
            for (b, cb) in br {
                let cb = Q::from_int(cb);
                let sub = self.mul_left(b as u8, rest);
                for (w, c) in sub.iter() {
                    *out.entry(w.clone()).or_insert_with(Q::zero) += &(&cb * c);
                }
            }
            out.retain(|_, c| !c.is_zero());
        }
        let r = Rc::new(out);
        self.mul_memo.insert(key, r.clone());
        r
    }

    /// `g * (word ⊗ e_k)` where `e_k` is a basis vector of `V` at `voff`.
    fn act(&mut self, g: u8, word: &[u8], voff: Offset, k: usize) -> Result<Rc<Elem>> {
        let key = (g, word.to_vec(), voff, k);
        if let Some(r) = self.act_memo.get(&key) {
            return Ok(r.clone());
        }
        self.check_memo()?;
        let gi = g as usize;
        let n = self.v.dim(&voff);
        let basis_vec = unit(n, k);
        let mut out: Elem = BTreeMap::new();
        let kind = self.d.basis[gi].kind;
        if self.is_outside(gi) {
            let prod = self.mul_left(g, word);
            for (w, c) in prod.iter() {
                add_scaled(&mut out, w, &basis_vec, c);
            }
        } else if kind == EltKind::Cartan {
            let i = self.d.basis[gi].simple.unwrap();
            let total = add_off(&word_offset(self.d, word), &voff);
            let c = self.v.pairing(&total, i);
            add_scaled(&mut out, &word.to_vec(), &basis_vec, &c);
        } else if word.is_empty() {
            let (_, w) = self
                .v
                .apply_elt(gi, &voff, &basis_vec)
                .ok_or_else(|| Error::Window("induced action left the window of the inducing module".into()))?;
            add_scaled(&mut out, &Vec::new(), &w, &Q::one());
        } else {
            let z1 = word[0];
            let rest = &word[1..];
            let inner = self.act(g, rest, voff, k)?;
            for (w, vec) in inner.iter() {
                let prod = self.mul_left(z1, w);
                for (w2, c) in prod.iter() {
                    add_scaled(&mut out, w2, vec, c);
                }
            }
            let br: Vec<(usize, i64)> = self.d.bracket(gi, z1 as usize).to_vec();
            for (b, cb) in br {
                let sub = self.act(b as u8, rest, voff, k)?;
                for (w, vec) in sub.iter() {
                    add_scaled(&mut out, w, vec, &Q::from_int(cb));
                }
            }
        }
        let r = Rc::new(prune(out));
        self.act_memo.insert(key, r.clone());
        Ok(r)
    }
}

/// All ordered words in `letters` (ascending) with height at most `depth`.
fn words(d: &RootDatum, letters: &[u8], depth: u32) -> Vec<Word> {
    fn rec(d: &RootDatum, letters: &[u8], depth: u32, cur: &mut Word, out: &mut Vec<Word>) {
        out.push(cur.clone());
        let last = cur.last().copied();
        for &l in letters {
            if last.is_some_and(|x| l < x) {
                continue;
            }
            cur.push(l);
            if ht(&word_offset(d, cur)) <= depth {
                rec(d, letters, depth, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, letters, depth, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn word_label(d: &RootDatum, w: &[u8]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let name = d.basis[w[i] as usize].name;
        parts.push(if j - i == 1 { name.to_string() } else { format!("{name}^{}", j - i) });
        i = j;
    }
    parts.join(" ")
}

/// Induce a module over `p_I` up to `g`, truncated at `depth`.
pub fn induce(v: &TruncatedModule, depth: u32) -> Result<TruncatedModule> {
    if depth > v.depth() {
        return Err(Error::Window(format!(
            "induction depth {depth} exceeds the inducing module depth {}",
            v.depth()
        )));
    }
    let ty = v.ty();
    let d = root_datum(ty);
    let mut ind = Inducer { v, d, mul_memo: HashMap::new(), act_memo: HashMap::new() };
    let letters: Vec<u8> = (0..d.basis_len()).filter(|&a| ind.is_outside(a)).map(|a| a as u8).collect();
    let all_words = words(d, &letters, depth);
    let mut out = TruncatedModule::empty(
        ty,
        Levi::full(ty),
        v.top().clone(),
        depth,
        "induced",
        format!("induce({})", v.construction()),
    );
    let window = out.window();
    let mut bases: BTreeMap<Offset, Vec<(Word, usize)>> = BTreeMap::new();
    let mut index: BTreeMap<Offset, HashMap<(Word, usize), usize>> = BTreeMap::new();
    let one_dim_v = v.total_dim() == 1;
    for o in &window {
        let mut b = Vec::new();
        let mut labels = Vec::new();
        for w in &all_words {
            let voff = sub_off(o, &word_offset(d, w));
            if voff[0] < 0 || voff[1] < 0 {
                continue;
            }
            let vl = v.labels(&voff);
            #[allow(clippy::needless_range_loop)]
            for k in 0..v.dim(&voff) {
                b.push((w.clone(), k));
                let wl = word_label(d, w);
                labels.push(match (one_dim_v, wl.is_empty()) {
                    (true, true) => "v+".to_string(),
                    (true, false) => format!("{wl} v+"),
                    (false, true) => vl[k].clone(),
                    (false, false) => format!("{wl} ⊗ {}", vl[k]),
                });
            }
        }
        out.set_dim(*o, b.len());
        if !b.is_empty() {
            out.set_labels(*o, labels);
        }
        index.insert(*o, b.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect());
        bases.insert(*o, b);
    }
    for g in out.gens() {
        let gi = match g {
            Gen::X(i) => d.x(i),
            Gen::Y(j) => d.y(j),
        } as u8;
        for o in &window {
            let t = out.target(g, o);
            if !out.in_window(&t) || out.dim(o) == 0 || out.dim(&t) == 0 {
                continue;
            }
            let mut m = RatMatrix::zeros(out.dim(&t), out.dim(o));
            for (col, (w, k)) in bases[o].iter().enumerate() {
                let voff = sub_off(o, &word_offset(d, w));
                let e = ind.act(gi, w, voff, *k)?;
                for (w2, vec) in e.iter() {
                    for (r, c) in vec.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let row = index[&t].get(&(w2.clone(), r)).ok_or_else(|| {
                            Error::Window("straightened term outside the induced window".into())
                        })?;
                        m.set(*row, col, c.clone());
                    }
                }
            }
            out.set_action(g, *o, m);
        }
    }
    Ok(out)
}

/// One-dimensional module of weight `lambda` over the Borel subalgebra.
pub fn one_dim(ty: CartanType, lambda: &Weight, depth: u32) -> Result<TruncatedModule> {
    root_datum(ty).check_rank(lambda)?;
    let mut m = TruncatedModule::empty(ty, Levi::borel(), lambda.clone(), depth, "one-dim", format!("C({lambda})"));
    m.set_dim([0, 0], 1);
    m.set_labels([0, 0], vec!["v+".into()]);
    Ok(m)
}

/// Verma module `M(lambda)` truncated at `depth`.
pub fn verma(ty: CartanType, lambda: &Weight, depth: u32) -> Result<TruncatedModule> {
    let mut m = induce(&one_dim(ty, lambda, depth)?, depth)?;
    m.set_provenance("verma", format!("M({lambda})"));
    Ok(m)
}

/// Generalized Verma module induced from the Levi simple `L_I(lambda)`.
pub fn generalized_verma(ty: CartanType, lambda: &Weight, levi: Levi, depth: u32) -> Result<TruncatedModule> {
    let l = levi_simple(ty, lambda, levi, depth)?;
    let mut m = induce(&l, depth)?;
    m.set_provenance("generalized-verma", format!("M_{}({lambda})", levi.tag(ty)));
    Ok(m)
}

/// Simple module of the Levi factor with highest weight `lambda`, extended to `p_I`.
pub fn levi_simple(ty: CartanType, lambda: &Weight, levi: Levi, depth: u32) -> Result<TruncatedModule> {
    let d = root_datum(ty);
    d.check_rank(lambda)?;
    for j in levi.indices(ty) {
        let c = lambda.pairing(j);
        if !c.is_integer() || c.is_negative() {
            return Err(Error::NotLeviDominant { weight: lambda.to_string(), levi: levi.tag(ty) });
        }
    }
    if levi == Levi::borel() {
        return one_dim(ty, lambda, depth);
    }
    let m = verma(ty, lambda, depth)?.restrict(levi)?;
    let top = super::ModuleVec::new(lambda.clone(), vec![Q::one()]);
    let s = super::submodule_generated(&m, &[top])?;
    let inner = s.as_module(&m);
    let rad = super::shapovalov::radical_in(&m, &s)?;
    let q = super::quotient(&inner, &s.restrict_to(&rad))?;
    let mut out = q.module;
    out.set_provenance("levi-simple", format!("L_{}({lambda})", levi.tag(ty)));
    Ok(out)
}

/// PBW words of the Verma basis at offset `o`, in basis order.
pub(crate) fn verma_words(ty: CartanType, o: &Offset) -> Vec<Vec<u8>> {
    let d = root_datum(ty);
    let letters: Vec<u8> =
        (0..d.basis_len()).filter(|&a| d.basis[a].kind == EltKind::Lower).map(|a| a as u8).collect();
    words(d, &letters, ht(o)).into_iter().filter(|w| word_offset(d, w) == *o).collect()
}
