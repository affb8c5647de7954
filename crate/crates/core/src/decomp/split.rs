//! Head complements, complements of submodules, and Fitting splittings.

use std::collections::BTreeMap;

use super::direct::{is_direct, DirectnessEvidence};
use super::forms::Forms;
use crate::error::{Error, Result};
use crate::exactla::{column_space, kernel, RatMatrix, SubspaceBasis};
use crate::module::{ht, quotient, saturate, Gen, Levi, ModuleMap, Offset, Submodule, TruncatedModule};
use crate::rat::Q;

/// Split `m` as `ker f^n (+) im f^n` for an endomorphism `f`, with `n` the first
/// power at which every weight block has stable rank.
pub fn fitting_split(m: &TruncatedModule, f: &ModuleMap) -> Result<(Submodule, Submodule, DirectnessEvidence)> {
    let mut kers = BTreeMap::new();
    let mut ims = BTreeMap::new();
    for o in m.support() {
        let a = f.block(m, m, &m.weight_of(&o));
        let mut p = a.clone();
        let mut r = p.rank();
        loop {
            let next = p.mul(&a);
            let rn = next.rank();
            if rn == r {
                break;
            }
            p = next;
            r = rn;
        }
        kers.insert(o, kernel(&p));
        ims.insert(o, column_space(&p));
    }
    let ker = Submodule::from_spaces(kers);
    let im = Submodule::from_spaces(ims);
    let (_, ev) = is_direct(m, &[ker.clone(), im.clone()])?;
    Ok((ker, im, ev))
}

/// The complement of the radical of a generalized Verma module of dominant
/// highest weight over the parabolic with Levi `levi`: the submodule of
/// `restrict(m, levi)` generated by the unique (up to scale) vector `v` of
/// weight `w0 lambda` with `x_i^(n_i) v = 0` and `y_j v = 0` for `j` in the Levi.
pub fn head_complement(m: &TruncatedModule, levi: Levi) -> Result<Submodule> {
    let d = m.datum();
    let lambda = m.top();
    if !d.is_dominant_integral(lambda) {
        return Err(Error::Precondition(format!("{lambda} is not dominant integral")));
    }
    let low = d.longest().apply(lambda);
    let o = m.offset_of(&low).ok_or_else(|| Error::Window(format!("weight {low} lies outside the window")))?;
    if ht(&o) >= m.depth() {
        return Err(Error::Window(format!(
            "depth {} is too small: the lowest weight {low} needs depth at least {}",
            m.depth(),
            ht(&o) + 1
        )));
    }
    let shifted = &d.rho - &low;
    let n = m.dim(&o);
    let mut eqs = RatMatrix::zeros(0, n);
    for i in 0..m.rank() {
        let k = shifted.pairing(i).to_i64().expect("integral") as usize;
        let path = vec![Gen::X(i); k];
        let a = m.compose(&path, &o).expect("raising stays defined");
        eqs = eqs.vstack(&a);
    }
    for j in levi.indices(m.ty()) {
        let a = m.action(Gen::Y(j), &o).ok_or_else(|| Error::Window("lowering leaves the window".into()))?;
        eqs = eqs.vstack(&a);
    }
    let sol = kernel(&eqs);
    if sol.dim() != 1 {
        return Err(Error::Verification(format!(
            "head complement system at {low} has a {}-dimensional solution space",
            sol.dim()
        )));
    }
    let r = m.restrict(levi)?;
    Ok(saturate(&r, Submodule::zero(), vec![(o, sol.vectors()[0].clone())]))
}

/// A complement of the submodule `s` in `m` over the acting algebra of `m`, found
/// as the image of a module section of `m -> m/s`; `None` when no section exists
/// on the window.
///
/// Weights are processed from the top and the affine space of partial sections
/// is cut down as soon as each relation becomes available.
pub fn complement(m: &TruncatedModule, s: &Submodule) -> Result<Option<Submodule>> {
    let q = quotient(m, s)?;
    let qm = &q.module;
    let mut offs = m.support();
    offs.sort_by_key(|o| (ht(o), *o));
    // parameter 0 carries the constant term
    let mut p = 1usize;
    let mut one = Forms::zeros(1, 1, 1);
    one.entry_mut(0, 0)[0] = Q::one();
    let mut sig: BTreeMap<Offset, Forms> = BTreeMap::new();
    for o in &offs {
        let n = m.dim(o);
        let qd = qm.dim(o);
        let sub = s.space_or_zero(m, o);
        let sd = sub.dim();
        let new_p = p + sd * qd;
        for f in sig.values_mut() {
            f.pad(new_p);
        }
        one.pad(new_p);
        let mut x = Forms::zeros(n, qd, new_p);
        let kept = q.kept.get(o).cloned().unwrap_or_default();
        for (c, &i) in kept.iter().enumerate() {
            x.entry_mut(i, c)[0] = Q::one();
        }
        for (a, v) in sub.vectors().iter().enumerate() {
            for c in 0..qd {
                let idx = p + a * qd + c;
                for (r, val) in v.iter().enumerate() {
                    if !val.is_zero() {
                        x.entry_mut(r, c)[idx] = val.clone();
                    }
                }
            }
        }
        p = new_p;
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for g in m.gens() {
            match g {
                Gen::X(_) => {
                    let t = m.target(g, o);
                    if !m.in_window(&t) {
                        continue;
                    }
                    let a = m.action(g, o).expect("raising acts");
                    let lhs = x.left_mul(&a);
                    let rhs = match sig.get(&t) {
                        Some(st) => st.right_mul(&qm.action(g, o).expect("raising acts")),
                        None => Forms::zeros(m.dim(&t), qd, p),
                    };
                    lhs.sub(&rhs).push_rows(&mut rows);
                }
                Gen::Y(j) => {
                    let src = crate::module::sub_off(o, &crate::module::unit_offset(j));
                    let Some(ss) = sig.get(&src) else { continue };
                    let a = m.action(g, &src).expect("lowering into the window");
                    let lhs = ss.left_mul(&a);
                    let rhs = x.right_mul(&qm.action(g, &src).expect("lowering into the window"));
                    lhs.sub(&rhs).push_rows(&mut rows);
                }
            }
        }
        sig.insert(*o, x);
        if !rows.is_empty() {
            let k = kernel(&RatMatrix::from_rows(rows)).as_columns();
            for f in sig.values_mut() {
                f.substitute(&k);
            }
            one.substitute(&k);
            p = k.cols();
        }
    }
    let Some(k) = (0..p).find(|&k| !one.entry(0, 0)[k].is_zero()) else {
        return Ok(None);
    };
    let scale = one.entry(0, 0)[k].recip();
    let mut spaces = BTreeMap::new();
    for (o, f) in &sig {
        let mat = f.eval_unit(k).scale(&scale);
        let cs: SubspaceBasis = column_space(&mat);
        if !cs.is_zero() {
            spaces.insert(*o, cs);
        }
    }
    let c = Submodule::from_spaces(spaces);
    c.check_closed(m)?;
    Ok(Some(c))
}
