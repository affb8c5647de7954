//! Verma flags, tilting tests and simple-restriction filtrations.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactla::SubspaceBasis;
use crate::module::{ht, saturate, simple, unit_offset, sub_off, FormalCharacter, Gen, Offset, Submodule, TruncatedModule};
use crate::rootdata::{weight_json, Weight};

/// Highest weights of successive subquotients with the chain of submodules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagReport {
    /// Subquotient highest weights, in extraction order.
    pub steps: Vec<Weight>,
    /// `chain[k]` is the submodule after `k` steps.
    pub chain: Vec<Submodule>,
}

impl FlagReport {
    /// Multiplicity of each highest weight, weights in descending order.
    pub fn multiplicities(&self) -> Vec<(Weight, usize)> {
        let mut m: BTreeMap<Weight, usize> = BTreeMap::new();
        for w in &self.steps {
            *m.entry(w.clone()).or_insert(0) += 1;
        }
        m.into_iter().rev().collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl Serialize for FlagReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let flag: Vec<serde_json::Value> = self
            .multiplicities()
            .iter()
            .map(|(w, k)| json!({"weight": weight_json(w), "mult": k}))
            .collect();
        let steps: Vec<serde_json::Value> = self.steps.iter().map(weight_json).collect();
        json!({"flag": flag, "steps": steps}).serialize(s)
    }
}

/// Offsets where `sub` is a proper subspace and nothing strictly above is.
fn top_gaps(m: &TruncatedModule, sub: &Submodule) -> Vec<Offset> {
    let gaps: Vec<Offset> = m.support().into_iter().filter(|o| sub.dim(o) < m.dim(o)).collect();
    gaps.iter()
        .filter(|o| !gaps.iter().any(|p| p != *o && p[0] <= o[0] && p[1] <= o[1]))
        .copied()
        .collect()
}

/// A vector of `m` at `o` outside the subspace `s`.
fn vector_outside(m: &TruncatedModule, o: &Offset, s: &SubspaceBasis) -> Vec<crate::rat::Q> {
    let n = m.dim(o);
    (0..n)
        .map(|i| crate::exactla::unit(n, i))
        .find(|v| !s.contains(v))
        .expect("subspace is proper")
}

/// Greedy Verma flag of a g-module: repeatedly take a vector at a maximal
/// weight of the quotient, and require that it generates a free module.
/// Ties between incomparable weights go to the lexicographically larger weight.
pub fn verma_flag(m: &TruncatedModule) -> Option<FlagReport> {
    if !m.is_g_module() {
        return None;
    }
    let ty = m.ty();
    let mut cur = Submodule::zero();
    let mut report = FlagReport { steps: Vec::new(), chain: vec![cur.clone()] };
    loop {
        let gaps = top_gaps(m, &cur);
        let Some(o) = gaps.into_iter().max_by_key(|o| m.weight_of(o)) else {
            return Some(report);
        };
        let w = m.weight_of(&o);
        let u = vector_outside(m, &o, &cur.space_or_zero(m, &o));
        let next = saturate(m, cur.clone(), vec![(o, u)]);
        let inc = next.character(m).checked_sub(&cur.character(m))?;
        if !inc.same_dims(&FormalCharacter::verma(ty, &w, m.top(), m.depth())) {
            return None;
        }
        report.steps.push(w);
        report.chain.push(next.clone());
        cur = next;
    }
}

/// Both the module and its contravariant dual have Verma flags on the window.
pub fn is_tilting(m: &TruncatedModule) -> bool {
    verma_flag(m).is_some() && m.dual().ok().as_ref().and_then(verma_flag).is_some()
}

/// Per-summand subquotient weights of the filtration of a direct sum of
/// restricted modules by restricted simple modules.
///
/// `summands` are submodules of `restrict(ambient, levi)` forming a direct sum
/// decomposition. A maximal vector (modulo the part already removed) of
/// minimal weight is located, attributed to the unique summand containing it
/// modulo that part, and the g-submodule it generates is removed; its
/// character must be that of the simple module of that highest weight.
pub fn simple_restriction_filtration(ambient: &TruncatedModule, summands: &[Submodule]) -> Result<Vec<FlagReport>> {
    if !ambient.is_g_module() {
        return Err(Error::Precondition("the ambient module must be a g-module".into()));
    }
    let ty = ambient.ty();
    let mut cur = Submodule::zero();
    let mut reports: Vec<FlagReport> =
        summands.iter().map(|_| FlagReport { steps: Vec::new(), chain: vec![Submodule::zero()] }).collect();
    loop {
        // maximal vectors modulo the current submodule
        let mut cands: Vec<(Offset, SubspaceBasis)> = Vec::new();
        for o in ambient.support() {
            let f = cur.space_or_zero(ambient, &o);
            if f.dim() == ambient.dim(&o) {
                continue;
            }
            let z = maximal_modulo(ambient, &cur, &o);
            if z.dim() > f.dim() {
                cands.push((o, z));
            }
        }
        if cands.is_empty() {
            if cur.total_dim() != ambient.total_dim() {
                return Err(Error::Verification("quotient without maximal vectors".into()));
            }
            return Ok(reports);
        }
        let minimal: Vec<&(Offset, SubspaceBasis)> = cands
            .iter()
            .filter(|(o, _)| !cands.iter().any(|(p, _)| p != o && p[0] >= o[0] && p[1] >= o[1]))
            .collect();
        let (o, z) = minimal.into_iter().min_by_key(|(o, _)| ambient.weight_of(o)).expect("nonempty");
        let w = ambient.weight_of(o);
        let f = cur.space_or_zero(ambient, o);
        let mut owner = None;
        for (i, s) in summands.iter().enumerate() {
            let inside = s.space_or_zero(ambient, o).sum(&f).intersect(z);
            if inside.dim() > f.dim() {
                owner = Some((i, inside));
                break;
            }
        }
        let Some((i, inside)) = owner else {
            return Err(Error::Verification(format!("maximal vector at {w} straddles the summands")));
        };
        let u = inside.vectors().iter().find(|v| !f.contains(v)).expect("proper").clone();
        let next = saturate(ambient, cur.clone(), vec![(*o, u)]);
        let inc = next.character(ambient).checked_sub(&cur.character(ambient)).expect("growing chain");
        let l = simple(ty, &w, ambient.depth() - ht(o))?;
        if !inc.same_dims(&l.character()) {
            return Err(Error::Verification(format!("subquotient at {w} is not the simple module")));
        }
        reports[i].steps.push(w);
        reports[i].chain.push(next.intersect(&summands[i]));
        cur = next;
    }
}

/// Vectors at `o` sent into `sub` by every raising generator.
fn maximal_modulo(m: &TruncatedModule, sub: &Submodule, o: &Offset) -> SubspaceBasis {
    let n = m.dim(o);
    let mut eqs = crate::exactla::RatMatrix::zeros(0, n);
    for i in 0..m.rank() {
        let t = sub_off(o, &unit_offset(i));
        if !m.in_window(&t) || m.dim(&t) == 0 {
            continue;
        }
        let a = m.action(Gen::X(i), o).expect("raising acts");
        let s = sub.space_or_zero(m, &t);
        let cols: Vec<Vec<crate::rat::Q>> = (0..n).map(|j| s.reduce(&a.column(j))).collect();
        eqs = eqs.vstack(&crate::exactla::RatMatrix::from_columns(m.dim(&t), &cols));
    }
    crate::exactla::kernel(&eqs)
}
