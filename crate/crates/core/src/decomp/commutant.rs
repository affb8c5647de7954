//! Weight-preserving maps commuting with the action on a reduced window, and
//! windowed indecomposability.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{idempotent_search, kernel, unit, BlockMat, RatMatrix, SubspaceBasis};
use crate::module::{ht, saturate, sub_off, unit_offset, Gen, Offset, Submodule, TruncatedModule};
use super::forms::Forms;
use crate::rat::Q;

/// A basis of the algebra of weight-preserving maps commuting with the action,
/// on the weights of height at most `height` below the top.
#[derive(Clone, Debug)]
pub struct Commutant {
    pub height: u32,
    pub offsets: Vec<Offset>,
    pub basis: Vec<BlockMat>,
}

impl Commutant {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Weights where the module is not spanned by images of its lowering generators.
pub fn generator_offsets(m: &TruncatedModule) -> Vec<Offset> {
    m.support()
        .into_iter()
        .filter(|o| {
            let n = m.dim(o);
            let mut span = SubspaceBasis::zero(n);
            for g in m.gens() {
                let Gen::Y(j) = g else { continue };
                let src = sub_off(o, &unit_offset(j));
                if src[0] < 0 || src[1] < 0 || m.dim(&src) == 0 {
                    continue;
                }
                let a = m.action(g, &src).expect("lowering into the window");
                for c in 0..a.cols() {
                    span.insert(&a.column(c));
                }
            }
            span.dim() < n
        })
        .collect()
}

/// Solve for the commutant on weights of height at most `height`.
///
/// Weights are processed from the top. A map is determined on the image of the
/// lowering generators by the maps above; only a complement carries new
/// parameters, and every commutation relation is imposed as soon as both of its
/// sides are known, which keeps the parameter space small.
pub fn commutant(m: &TruncatedModule, height: u32) -> Commutant {
    let mut offs: Vec<Offset> = m.support().into_iter().filter(|o| ht(o) <= height).collect();
    offs.sort_by_key(|o| (ht(o), *o));
    let mut forms: BTreeMap<Offset, Forms> = BTreeMap::new();
    let mut p = 0usize;
    for o in &offs {
        let n = m.dim(o);
        // lowering data: (numeric lowering matrix, forms of Y X_src)
        let mut lower: Vec<(RatMatrix, Forms)> = Vec::new();
        for g in m.gens() {
            let Gen::Y(j) = g else { continue };
            let src = sub_off(o, &unit_offset(j));
            let Some(xs) = forms.get(&src) else { continue };
            let a = m.action(g, &src).expect("lowering into the window");
            let yx = xs.left_mul(&a);
            lower.push((a, yx));
        }
        let mut span = SubspaceBasis::zero(n);
        let mut basis_cols: Vec<Vec<Q>> = Vec::new();
        let mut chosen: Vec<(usize, usize)> = Vec::new();
        for (li, (a, _)) in lower.iter().enumerate() {
            for c in 0..a.cols() {
                let v = a.column(c);
                if span.insert(&v) {
                    basis_cols.push(v);
                    chosen.push((li, c));
                }
            }
        }
        let free: Vec<usize> = (0..n).filter(|&i| span.insert(&unit(n, i))).collect();
        let new_p = p + free.len() * n;
        for f in forms.values_mut() {
            f.pad(new_p);
        }
        for (_, yx) in lower.iter_mut() {
            yx.pad(new_p);
        }
        p = new_p;
        let mut img = Forms::zeros(n, n, p);
        for (col, &(li, c)) in chosen.iter().enumerate() {
            let yx = &lower[li].1;
            for r in 0..n {
                img.entry_mut(r, col).clone_from_slice(yx.entry(r, c));
            }
        }
        let first_new = p - free.len() * n;
        for (fi, &i) in free.iter().enumerate() {
            basis_cols.push(unit(n, i));
            let col = chosen.len() + fi;
            for r in 0..n {
                img.entry_mut(r, col)[first_new + fi * n + r] = Q::one();
            }
        }
        let b = RatMatrix::from_columns(n, &basis_cols);
        let binv = inverse(&b);
        let x = img.right_mul(&binv);
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for (a, yx) in &lower {
            x.right_mul(a).sub(yx).push_rows(&mut rows);
        }
        for i in 0..m.rank() {
            let t = m.target(Gen::X(i), o);
            let Some(xt) = forms.get(&t) else { continue };
            let Some(a) = m.action(Gen::X(i), o) else { continue };
            if a.rows() == 0 {
                continue;
            }
            xt.right_mul(&a).sub(&x.left_mul(&a)).push_rows(&mut rows);
        }
        forms.insert(*o, x);
        if !rows.is_empty() {
            let k = kernel(&RatMatrix::from_rows(rows)).as_columns();
            for f in forms.values_mut() {
                f.substitute(&k);
            }
            p = k.cols();
        }
    }
    let basis = (0..p)
        .map(|k| BlockMat::new(offs.iter().map(|o| forms[o].eval_unit(k)).collect()))
        .collect();
    Commutant { height, offsets: offs, basis }
}

fn inverse(b: &RatMatrix) -> RatMatrix {
    let n = b.rows();
    let cols: Vec<Vec<Q>> =
        (0..n).map(|i| crate::exactla::solve(b, &unit(n, i)).expect("basis matrix is invertible")).collect();
    RatMatrix::from_columns(n, &cols)
}

/// Outcome of the windowed idempotent search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    IndecomposableWithinWindow,
    Decomposable,
    Undecided,
    Zero,
}

/// Evidence for a windowed indecomposability verdict.
#[derive(Clone, Debug, Serialize)]
pub struct IndecomposabilityEvidence {
    pub verdict: Verdict,
    pub depth: u32,
    pub margin: u32,
    pub commutant_dim: usize,
    pub radical_dim: usize,
    #[serde(skip)]
    pub idempotent: Option<BlockMat>,
    #[serde(skip)]
    pub commutant: Option<Commutant>,
}

/// Default margin. For a module without lowering operators the window is a
/// quotient module, so the whole window is used. For g-modules: one more than
/// the height span of the maximal-vector and generator weights, capped so those
/// weights stay inside the reduced window.
pub fn default_margin(m: &TruncatedModule) -> Result<u32> {
    if !m.is_g_module() {
        return Ok(0);
    }
    let mut hs: Vec<u32> = m.maximal_vector_table().into_iter().map(|(o, _)| ht(&o)).collect();
    if m.is_g_module() {
        hs.extend(generator_offsets(m).iter().map(ht));
    }
    let (Some(&lo), Some(&hi)) = (hs.iter().min(), hs.iter().max()) else {
        return Ok(1);
    };
    if hi >= m.depth() {
        return Err(Error::Window(format!(
            "maximal vectors reach height {hi}, leaving no margin at depth {}",
            m.depth()
        )));
    }
    Ok((1 + hi - lo).min(m.depth() - hi))
}

/// Search for a nontrivial idempotent among endomorphisms on the reduced window.
pub fn is_indecomposable_window(m: &TruncatedModule, margin: u32) -> Result<IndecomposabilityEvidence> {
    if margin < 1 && m.is_g_module() {
        return Err(Error::Precondition("margin must be at least 1 for g-modules".into()));
    }
    if margin > m.depth() {
        return Err(Error::Window(format!("margin {margin} leaves an empty window at depth {}", m.depth())));
    }
    let height = m.depth() - margin;
    let mut ev = IndecomposabilityEvidence {
        verdict: Verdict::Zero,
        depth: m.depth(),
        margin,
        commutant_dim: 0,
        radical_dim: 0,
        idempotent: None,
        commutant: None,
    };
    if m.support().iter().all(|o| ht(o) > height) {
        return Ok(ev);
    }
    let c = commutant(m, height);
    ev.commutant_dim = c.dim();
    match idempotent_search(&c.basis) {
        Ok(r) => {
            ev.radical_dim = r.radical_dim;
            ev.verdict = if r.idempotent.is_some() { Verdict::Decomposable } else { Verdict::IndecomposableWithinWindow };
            ev.idempotent = r.idempotent;
        }
        Err(Error::Undecided(_)) => ev.verdict = Verdict::Undecided,
        Err(e) => return Err(e),
    }
    ev.commutant = Some(c);
    Ok(ev)
}

/// Images of an idempotent and its complement on the reduced window, each
/// saturated to a submodule of the whole module.
pub fn split_by_idempotent(m: &TruncatedModule, c: &Commutant, e: &BlockMat) -> (Submodule, Submodule) {
    let mut seeds_a = Vec::new();
    let mut seeds_b = Vec::new();
    for (o, blk) in c.offsets.iter().zip(&e.blocks) {
        let comp = RatMatrix::identity(blk.rows()).sub(blk);
        for j in 0..blk.cols() {
            seeds_a.push((*o, blk.column(j)));
            seeds_b.push((*o, comp.column(j)));
        }
    }
    (saturate(m, Submodule::zero(), seeds_a), saturate(m, Submodule::zero(), seeds_b))
}
