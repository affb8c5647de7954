use std::collections::BTreeMap;

use super::{FormalCharacter, Gen, Offset, TruncatedModule};
use crate::error::{Error, Result};
use crate::exactla::{column_space, kernel, unit, RatMatrix, SubspaceBasis};
use crate::rat::Q;
use crate::rootdata::Weight;

/// A weight vector: a weight and coordinates in that weight space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVec {
    pub weight: Weight,
    pub coords: Vec<Q>,
}

impl ModuleVec {
    pub fn new(weight: Weight, coords: Vec<Q>) -> Self {
        ModuleVec { weight, coords }
    }
}

/// A graded subspace of a module, stored per offset in ambient coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Submodule {
    spaces: BTreeMap<Offset, SubspaceBasis>,
}

impl Submodule {
    pub fn zero() -> Self {
        Submodule::default()
    }

    pub fn full(m: &TruncatedModule) -> Self {
        let spaces = m.support().into_iter().map(|o| (o, SubspaceBasis::full(m.dim(&o)))).collect();
        Submodule { spaces }
    }

    pub fn from_spaces(spaces: BTreeMap<Offset, SubspaceBasis>) -> Self {
        Submodule { spaces: spaces.into_iter().filter(|(_, s)| !s.is_zero()).collect() }
    }

    pub fn space(&self, o: &Offset) -> Option<&SubspaceBasis> {
        self.spaces.get(o)
    }

    pub fn space_or_zero(&self, m: &TruncatedModule, o: &Offset) -> SubspaceBasis {
        self.spaces.get(o).cloned().unwrap_or_else(|| SubspaceBasis::zero(m.dim(o)))
    }

    pub fn spaces(&self) -> &BTreeMap<Offset, SubspaceBasis> {
        &self.spaces
    }

    pub fn dim(&self, o: &Offset) -> usize {
        self.spaces.get(o).map_or(0, SubspaceBasis::dim)
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(SubspaceBasis::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn contains(&self, o: &Offset, v: &[Q]) -> bool {
        match self.spaces.get(o) {
            Some(s) => s.contains(v),
            None => v.iter().all(Q::is_zero),
        }
    }

    pub fn contains_sub(&self, other: &Submodule) -> bool {
        other.spaces.iter().all(|(o, s)| s.vectors().iter().all(|v| self.contains(o, v)))
    }

    pub fn character(&self, m: &TruncatedModule) -> FormalCharacter {
        let mut c = FormalCharacter::new(m.ty(), m.top().clone(), m.depth());
        for (o, s) in &self.spaces {
            c.set(m.weight_of(o), s.dim());
        }
        c
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        let mut spaces = self.spaces.clone();
        for (o, s) in &other.spaces {
            match spaces.get_mut(o) {
                Some(t) => *t = t.sum(s),
                None => {
                    spaces.insert(*o, s.clone());
                }
            }
        }
        Submodule { spaces }
    }

    pub fn intersect(&self, other: &Submodule) -> Submodule {
        let spaces = self
            .spaces
            .iter()
            .filter_map(|(o, s)| other.spaces.get(o).map(|t| (*o, s.intersect(t))))
            .collect();
        Submodule::from_spaces(spaces)
    }

    /// Insert a vector, returning whether the space grew.
    pub fn insert(&mut self, m: &TruncatedModule, o: &Offset, v: &[Q]) -> bool {
        let s = self.spaces.entry(*o).or_insert_with(|| SubspaceBasis::zero(m.dim(o)));
        s.insert(v)
    }

    /// Every generator maps the subspace into itself wherever the action is defined.
    pub fn check_closed(&self, m: &TruncatedModule) -> Result<()> {
        for (o, s) in &self.spaces {
            for g in m.gens() {
                for v in s.vectors() {
                    let Some((t, w)) = m.apply(g, o, v) else { continue };
                    if !m.in_window(&t) {
                        continue;
                    }
                    if !self.contains(&t, &w) {
                        return Err(Error::NotSubmodule {
                            generator: gen_name(m, g),
                            weight: m.weight_of(o).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The submodule as a module in its own echelon basis (same window as the ambient).
    pub fn as_module(&self, m: &TruncatedModule) -> TruncatedModule {
        let mut out = TruncatedModule::empty(
            m.ty(),
            m.levi(),
            m.top().clone(),
            m.depth(),
            "submodule",
            format!("sub({})", m.construction()),
        );
        for (o, s) in &self.spaces {
            out.set_dim(*o, s.dim());
        }
        for g in m.gens() {
            for (o, s) in &self.spaces {
                let t = m.target(g, o);
                let Some(ts) = self.spaces.get(&t) else { continue };
                if !m.in_window(&t) {
                    continue;
                }
                let cols: Vec<Vec<Q>> = s
                    .vectors()
                    .iter()
                    .map(|v| {
                        let (_, w) = m.apply(g, o, v).expect("in-window action");
                        ts.coords_unchecked(&w)
                    })
                    .collect();
                out.set_action(g, *o, RatMatrix::from_columns(ts.dim(), &cols));
            }
        }
        out
    }

    /// Inclusion of `as_module(m)` into `m`.
    pub fn inclusion(&self, m: &TruncatedModule) -> ModuleMap {
        let blocks = self.spaces.iter().map(|(o, s)| (m.weight_of(o), s.as_columns())).collect();
        ModuleMap { blocks }
    }

    /// Pull back a submodule of `self.as_module(m)` to ambient coordinates.
    pub fn lift(&self, inner: &Submodule) -> Submodule {
        let spaces = inner
            .spaces
            .iter()
            .map(|(o, s)| {
                let outer = &self.spaces[o];
                let vecs = s.vectors().iter().map(|c| outer.combine(c)).collect();
                (*o, SubspaceBasis::from_vectors(outer.ambient(), vecs))
            })
            .collect();
        Submodule::from_spaces(spaces)
    }

    /// Express a submodule of the ambient (contained in `self`) in the coordinates of `self.as_module`.
    pub fn restrict_to(&self, other: &Submodule) -> Submodule {
        let spaces = other
            .spaces
            .iter()
            .filter_map(|(o, s)| {
                let outer = self.spaces.get(o)?;
                let vecs = s.vectors().iter().map(|v| outer.coords_unchecked(v)).collect();
                Some((*o, SubspaceBasis::from_vectors(outer.dim(), vecs)))
            })
            .collect();
        Submodule::from_spaces(spaces)
    }
}

/// Smallest action-closed graded subspace containing `gens`, saturated inside the window.
pub fn submodule_generated(m: &TruncatedModule, gens: &[ModuleVec]) -> Result<Submodule> {
    let mut seeds = Vec::with_capacity(gens.len());
    for g in gens {
        let o = m.offset_or_err(&g.weight)?;
        if g.coords.len() != m.dim(&o) {
            return Err(Error::Precondition(format!("vector length mismatch at weight {}", g.weight)));
        }
        seeds.push((o, g.coords.clone()));
    }
    Ok(saturate(m, Submodule::zero(), seeds))
}

/// Extend `start` (assumed closed) by the submodule generated by `seeds`.
pub fn saturate(m: &TruncatedModule, start: Submodule, seeds: Vec<(Offset, Vec<Q>)>) -> Submodule {
    let mut sub = start;
    let mut work: Vec<(Offset, Vec<Q>)> = Vec::new();
    for (o, v) in seeds {
        if sub.insert(m, &o, &v) {
            work.push((o, v));
        }
    }
    let gens = m.gens();
    while let Some((o, v)) = work.pop() {
        for &g in &gens {
            let Some((t, w)) = m.apply(g, &o, &v) else { continue };
            if !m.in_window(&t) || w.iter().all(Q::is_zero) {
                continue;
            }
            if sub.insert(m, &t, &w) {
                work.push((t, w));
            }
        }
    }
    sub
}

/// A quotient module together with the data to project into it.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: TruncatedModule,
    pub sub: Submodule,
    /// Ambient coordinates kept as the quotient basis, per offset.
    pub kept: BTreeMap<Offset, Vec<usize>>,
}

impl Quotient {
    pub fn project(&self, o: &Offset, v: &[Q]) -> Vec<Q> {
        let r = match self.sub.space(o) {
            Some(s) => s.reduce(v),
            None => v.to_vec(),
        };
        self.kept.get(o).map(|k| k.iter().map(|&i| r[i].clone()).collect()).unwrap_or_default()
    }

    pub fn lift(&self, o: &Offset, v: &[Q], ambient_dim: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); ambient_dim];
        if let Some(k) = self.kept.get(o) {
            for (c, &i) in v.iter().zip(k) {
                out[i] = c.clone();
            }
        }
        out
    }

    /// Preimage in the ambient of a submodule of the quotient.
    pub fn preimage(&self, m: &TruncatedModule, inner: &Submodule) -> Submodule {
        let mut out = self.sub.clone();
        for (o, s) in inner.spaces() {
            for v in s.vectors() {
                let l = self.lift(o, v, m.dim(o));
                out.insert(m, o, &l);
            }
        }
        out
    }
}

pub fn quotient(m: &TruncatedModule, s: &Submodule) -> Result<Quotient> {
    s.check_closed(m)?;
    let mut kept = BTreeMap::new();
    let mut out = TruncatedModule::empty(
        m.ty(),
        m.levi(),
        m.top().clone(),
        m.depth(),
        "quotient",
        format!("quotient({})", m.construction()),
    );
    for o in m.support() {
        let pivots: Vec<usize> = s.space(&o).map(|b| b.pivots().to_vec()).unwrap_or_default();
        let k: Vec<usize> = (0..m.dim(&o)).filter(|i| !pivots.contains(i)).collect();
        out.set_dim(o, k.len());
        if !k.is_empty() {
            kept.insert(o, k);
        }
    }
    let q = Quotient { module: out, sub: s.clone(), kept };
    let mut out = q.module.clone();
    for g in m.gens() {
        for (o, k) in &q.kept {
            let t = m.target(g, o);
            if !m.in_window(&t) || out.dim(&t) == 0 {
                continue;
            }
            let cols: Vec<Vec<Q>> = k
                .iter()
                .map(|&i| {
                    let (_, w) = m.apply(g, o, &unit(m.dim(o), i)).expect("in-window action");
                    q.project(&t, &w)
                })
                .collect();
            out.set_action(g, *o, RatMatrix::from_columns(out.dim(&t), &cols));
        }
    }
    Ok(Quotient { module: out, ..q })
}

/// Weight-preserving linear map given by per-weight blocks (target x source).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleMap {
    pub blocks: BTreeMap<Weight, RatMatrix>,
}

impl ModuleMap {
    pub fn identity(m: &TruncatedModule) -> Self {
        let blocks = m.support().into_iter().map(|o| (m.weight_of(&o), RatMatrix::identity(m.dim(&o)))).collect();
        ModuleMap { blocks }
    }

    pub fn zero() -> Self {
        ModuleMap::default()
    }

    pub fn block(&self, src: &TruncatedModule, tgt: &TruncatedModule, w: &Weight) -> RatMatrix {
        let rows = tgt.offset_of(w).map_or(0, |o| tgt.dim(&o));
        let cols = src.offset_of(w).map_or(0, |o| src.dim(&o));
        self.blocks.get(w).cloned().unwrap_or_else(|| RatMatrix::zeros(rows, cols))
    }

    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        let blocks = first
            .blocks
            .iter()
            .filter_map(|(w, a)| self.blocks.get(w).map(|b| (w.clone(), b.mul(a))))
            .collect();
        ModuleMap { blocks }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(RatMatrix::is_zero)
    }

    /// The map commutes with every shared generator wherever both sides are defined.
    pub fn check_commutes(&self, src: &TruncatedModule, tgt: &TruncatedModule) -> Result<()> {
        for o in src.support() {
            let w = src.weight_of(&o);
            let Some(to) = tgt.offset_of(&w) else { continue };
            let f = self.block(src, tgt, &w);
            for g in src.gens() {
                if !tgt.acts(g) {
                    continue;
                }
                let st = src.target(g, &o);
                let tt = tgt.target(g, &to);
                if !src.in_window(&st) || !tgt.in_window(&tt) {
                    continue;
                }
                let w2 = src.weight_of(&st);
                let f2 = self.block(src, tgt, &w2);
                let lhs = f2.mul(&src.action(g, &o).unwrap());
                let rhs = tgt.action(g, &to).unwrap().mul(&f);
                if lhs != rhs {
                    return Err(Error::Verification(format!(
                        "map does not commute with {g:?} at weight {w}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn kernel(&self, src: &TruncatedModule, tgt: &TruncatedModule) -> Submodule {
        let spaces = src
            .support()
            .into_iter()
            .map(|o| {
                let w = src.weight_of(&o);
                (o, kernel(&self.block(src, tgt, &w)))
            })
            .collect();
        Submodule::from_spaces(spaces)
    }

    pub fn image(&self, src: &TruncatedModule, tgt: &TruncatedModule) -> Submodule {
        let spaces = tgt
            .support()
            .into_iter()
            .filter_map(|o| {
                let w = tgt.weight_of(&o);
                src.offset_of(&w)?;
                Some((o, column_space(&self.block(src, tgt, &w))))
            })
            .collect();
        Submodule::from_spaces(spaces)
    }

    pub fn is_injective(&self, src: &TruncatedModule, tgt: &TruncatedModule) -> bool {
        self.kernel(src, tgt).is_zero()
    }
}

pub(crate) fn gen_name(m: &TruncatedModule, g: Gen) -> String {
    let d = m.datum();
    let a = match g {
        Gen::X(i) => d.x(i),
        Gen::Y(i) => d.y(i),
    };
    d.basis[a].name.to_string()
}
