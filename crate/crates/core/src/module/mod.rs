//! Truncated weight modules: a finite window of weight spaces below a top
//! weight together with exact matrices for the simple raising and lowering
//! generators.

mod character;
mod induce;
mod shapovalov;
mod sub;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

pub use character::{tensor_weight_dim, FormalCharacter};
pub use induce::{generalized_verma, induce, levi_simple, one_dim, verma};
pub use shapovalov::{alpha_family, m_alpha_basis, max_submodule, shapovalov_gram, simple, MAlpha};
pub use sub::{quotient, saturate, submodule_generated, ModuleMap, ModuleVec, Quotient, Submodule};

use crate::error::{Error, Result};
use crate::exactla::{kernel, RatMatrix, SubspaceBasis};
use crate::rat::Q;
use crate::rootdata::{root_datum, CartanType, EltKind, RootDatum, Weight};

/// Distance from the top weight in simple-root coordinates.
pub type Offset = [i32; 2];

pub fn ht(o: &Offset) -> u32 {
    (o[0] + o[1]) as u32
}

pub fn unit_offset(i: usize) -> Offset {
    let mut o = [0, 0];
    o[i] = 1;
    o
}

pub fn add_off(a: &Offset, b: &Offset) -> Offset {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn sub_off(a: &Offset, b: &Offset) -> Offset {
    [a[0] - b[0], a[1] - b[1]]
}

pub fn nonneg(o: &Offset) -> bool {
    o[0] >= 0 && o[1] >= 0
}

/// Set of simple roots whose lowering generators act: the Levi set of `p_I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Levi(u8);

impl Levi {
    pub fn borel() -> Levi {
        Levi(0)
    }

    pub fn full(ty: CartanType) -> Levi {
        Levi((1 << ty.rank()) - 1)
    }

    pub fn from_indices(ix: &[usize]) -> Levi {
        Levi(ix.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn is_subset(self, o: Levi) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn intersect(self, o: Levi) -> Levi {
        Levi(self.0 & o.0)
    }

    pub fn is_full(self, ty: CartanType) -> bool {
        self == Levi::full(ty)
    }

    pub fn indices(self, ty: CartanType) -> Vec<usize> {
        (0..ty.rank()).filter(|&i| self.contains(i)).collect()
    }

    pub fn tag(self, ty: CartanType) -> String {
        if self.is_full(ty) {
            return "g".into();
        }
        if self.0 == 0 {
            return "b".into();
        }
        let names = ["a", "b"];
        let parts: Vec<&str> = self.indices(ty).iter().map(|&i| names[i]).collect();
        format!("p{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    X(usize),
    Y(usize),
}

#[derive(Clone)]
pub struct TruncatedModule {
    ty: CartanType,
    levi: Levi,
    top: Weight,
    depth: u32,
    dims: BTreeMap<Offset, usize>,
    raise: Vec<BTreeMap<Offset, RatMatrix>>,
    lower: Vec<BTreeMap<Offset, RatMatrix>>,
    labels: BTreeMap<Offset, Vec<String>>,
    kind: String,
    construction: String,
}

impl fmt::Debug for TruncatedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TruncatedModule({} over {}, top {}, depth {}, dim {})",
            self.construction,
            self.acting_tag(),
            self.top,
            self.depth,
            self.total_dim()
        )
    }
}

impl TruncatedModule {
    /// An empty module shell on a window; spaces and actions are filled by constructors.
    pub(crate) fn empty(ty: CartanType, levi: Levi, top: Weight, depth: u32, kind: &str, construction: String) -> Self {
        let r = ty.rank();
        TruncatedModule {
            ty,
            levi,
            top,
            depth,
            dims: BTreeMap::new(),
            raise: vec![BTreeMap::new(); r],
            lower: vec![BTreeMap::new(); r],
            labels: BTreeMap::new(),
            kind: kind.to_string(),
            construction,
        }
    }

    pub(crate) fn set_dim(&mut self, o: Offset, d: usize) {
        if d > 0 {
            self.dims.insert(o, d);
        } else {
            self.dims.remove(&o);
        }
    }

    pub(crate) fn set_action(&mut self, g: Gen, o: Offset, m: RatMatrix) {
        if m.is_zero() {
            return;
        }
        match g {
            Gen::X(i) => self.raise[i].insert(o, m),
            Gen::Y(j) => self.lower[j].insert(o, m),
        };
    }

    pub(crate) fn set_labels(&mut self, o: Offset, l: Vec<String>) {
        self.labels.insert(o, l);
    }

    pub(crate) fn set_provenance(&mut self, kind: &str, construction: String) {
        self.kind = kind.to_string();
        self.construction = construction;
    }

    pub fn ty(&self) -> CartanType {
        self.ty
    }

    pub fn datum(&self) -> &'static RootDatum {
        root_datum(self.ty)
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn levi(&self) -> Levi {
        self.levi
    }

    pub fn is_g_module(&self) -> bool {
        self.levi.is_full(self.ty)
    }

    pub fn acting_tag(&self) -> String {
        self.levi.tag(self.ty)
    }

    pub fn top(&self) -> &Weight {
        &self.top
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    pub fn construction(&self) -> &str {
        &self.construction
    }

    pub fn descriptor(&self) -> serde_json::Value {
        json!({
            "algebra": self.ty.name(),
            "acting": self.acting_tag(),
            "kind": self.kind,
            "hw": self.top,
            "depth": self.depth,
            "construction": self.construction,
        })
    }

    /// All offsets of the window, ordered by height then coordinates.
    pub fn window(&self) -> Vec<Offset> {
        window_offsets(self.ty, self.depth)
    }

    pub fn in_window(&self, o: &Offset) -> bool {
        nonneg(o) && ht(o) <= self.depth && (self.rank() == 2 || o[1] == 0)
    }

    /// Offsets below the clipping boundary: every lowering action is defined there.
    pub fn is_interior(&self, o: &Offset) -> bool {
        self.in_window(o) && ht(o) < self.depth
    }

    pub fn dim(&self, o: &Offset) -> usize {
        self.dims.get(o).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Offsets with nonzero spaces, ordered by height then coordinates.
    pub fn support(&self) -> Vec<Offset> {
        let mut v: Vec<Offset> = self.dims.keys().copied().collect();
        v.sort_by_key(|o| (ht(o), *o));
        v
    }

    pub fn labels(&self, o: &Offset) -> Vec<String> {
        match self.labels.get(o) {
            Some(l) => l.clone(),
            None => (0..self.dim(o)).map(|k| format!("e{k}")).collect(),
        }
    }

    pub fn weight_of(&self, o: &Offset) -> Weight {
        let d = self.datum();
        let r: Vec<Q> = (0..self.rank()).map(|i| Q::from_int(i64::from(o[i]))).collect();
        &self.top - &d.from_root_coords(&r)
    }

    pub fn offset_of(&self, w: &Weight) -> Option<Offset> {
        let o = self.datum().int_root_coords(&(&self.top - w))?;
        self.in_window(&o).then_some(o)
    }

    pub fn offset_or_err(&self, w: &Weight) -> Result<Offset> {
        self.offset_of(w).ok_or_else(|| Error::Window(format!("weight {w} is outside the window of {self:?}")))
    }

    /// `<weight(o), alpha_i^vee>`.
    pub fn pairing(&self, o: &Offset, i: usize) -> Q {
        let d = self.datum();
        let mut c = self.top.pairing(i).clone();
        for (j, &oj) in o.iter().enumerate().take(self.rank()) {
            c -= &Q::from_int(i64::from(oj) * d.cartan[j][i]);
        }
        c
    }

    pub fn acts(&self, g: Gen) -> bool {
        match g {
            Gen::X(_) => true,
            Gen::Y(j) => self.levi.contains(j),
        }
    }

    pub fn gens(&self) -> Vec<Gen> {
        let mut v: Vec<Gen> = (0..self.rank()).map(Gen::X).collect();
        v.extend(self.levi.indices(self.ty).into_iter().map(Gen::Y));
        v
    }

    pub fn target(&self, g: Gen, o: &Offset) -> Offset {
        match g {
            Gen::X(i) => sub_off(o, &unit_offset(i)),
            Gen::Y(j) => add_off(o, &unit_offset(j)),
        }
    }

    /// Matrix of a generator from `o`, or `None` if the target is outside the window
    /// or the generator does not act.
    pub fn action(&self, g: Gen, o: &Offset) -> Option<RatMatrix> {
        if !self.acts(g) {
            return None;
        }
        let t = self.target(g, o);
        if !self.in_window(&t) {
            return if matches!(g, Gen::X(_)) { Some(RatMatrix::zeros(0, self.dim(o))) } else { None };
        }
        let stored = match g {
            Gen::X(i) => self.raise[i].get(o),
            Gen::Y(j) => self.lower[j].get(o),
        };
        Some(stored.cloned().unwrap_or_else(|| RatMatrix::zeros(self.dim(&t), self.dim(o))))
    }

    pub(crate) fn stored(&self, g: Gen, o: &Offset) -> Option<&RatMatrix> {
        match g {
            Gen::X(i) => self.raise[i].get(o),
            Gen::Y(j) => self.lower[j].get(o),
        }
    }

    /// Apply a simple generator; `None` when clipped by the window.
    pub fn apply(&self, g: Gen, o: &Offset, v: &[Q]) -> Option<(Offset, Vec<Q>)> {
        if !self.acts(g) {
            return None;
        }
        let t = self.target(g, o);
        if !self.in_window(&t) {
            return if matches!(g, Gen::X(_)) { Some((t, Vec::new())) } else { None };
        }
        let out = match self.stored(g, o) {
            Some(m) => m.mul_vec(v),
            None => vec![Q::zero(); self.dim(&t)],
        };
        Some((t, out))
    }

    /// Apply any Chevalley basis element (by index in the root datum).
    pub fn apply_elt(&self, a: usize, o: &Offset, v: &[Q]) -> Option<(Offset, Vec<Q>)> {
        let d = self.datum();
        let b = &d.basis[a];
        match (b.kind, b.simple) {
            (EltKind::Cartan, Some(i)) => {
                let c = self.pairing(o, i);
                Some((*o, v.iter().map(|x| x * &c).collect()))
            }
            (EltKind::Raise, Some(i)) => self.apply(Gen::X(i), o, v),
            (EltKind::Lower, Some(j)) => self.apply(Gen::Y(j), o, v),
            (EltKind::Raise, None) => {
                // x_{a+b} = x_a x_b - x_b x_a
                let (o1, v1) = self.apply(Gen::X(1), o, v)?;
                let (t, a1) = self.apply(Gen::X(0), &o1, &v1)?;
                let (o2, v2) = self.apply(Gen::X(0), o, v)?;
                let (_, a2) = self.apply(Gen::X(1), &o2, &v2)?;
                Some((t, sub_vecs(&a1, &a2)))
            }
            (EltKind::Lower, None) => {
                // y_{a+b} = y_a y_b - y_b y_a
                let (o1, v1) = self.apply(Gen::Y(1), o, v)?;
                let (t, a1) = self.apply(Gen::Y(0), &o1, &v1)?;
                let (o2, v2) = self.apply(Gen::Y(0), o, v)?;
                let (_, a2) = self.apply(Gen::Y(1), &o2, &v2)?;
                Some((t, sub_vecs(&a1, &a2)))
            }
            (EltKind::Cartan, None) => unreachable!("Cartan elements are simple coroots"),
        }
    }

    /// Whether a basis element acts on this module.
    pub fn elt_acts(&self, a: usize) -> bool {
        let d = self.datum();
        let b = &d.basis[a];
        match b.kind {
            EltKind::Raise | EltKind::Cartan => true,
            EltKind::Lower => {
                (0..self.rank()).all(|j| b.root[j] == 0 || self.levi.contains(j))
            }
        }
    }

    /// Matrix of a basis element from offset `o`, if defined on the window.
    pub fn elt_matrix(&self, a: usize, o: &Offset) -> Option<(Offset, RatMatrix)> {
        let n = self.dim(o);
        let mut cols = Vec::with_capacity(n);
        let mut target = None;
        for k in 0..n {
            let (t, v) = self.apply_elt(a, o, &crate::exactla::unit(n, k))?;
            target = Some(t);
            cols.push(v);
        }
        let t = match target {
            Some(t) => t,
            None => {
                let b = &self.datum().basis[a];
                let t = [o[0] - b.root[0], o[1] - b.root[1]];
                if !self.in_window(&t) && b.kind == EltKind::Lower {
                    return None;
                }
                t
            }
        };
        Some((t, RatMatrix::from_columns(self.dim(&t), &cols)))
    }

    pub fn character(&self) -> FormalCharacter {
        FormalCharacter::from_module(self)
    }

    /// Maximal vectors (killed by every raising generator) at offset `o`.
    pub fn maximal_vectors_at(&self, o: &Offset) -> SubspaceBasis {
        let n = self.dim(o);
        let mut stacked = RatMatrix::zeros(0, n);
        for i in 0..self.rank() {
            if let Some(m) = self.stored(Gen::X(i), o) {
                stacked = stacked.vstack(m);
            }
        }
        kernel(&stacked)
    }

    pub fn maximal_vectors(&self, w: &Weight) -> Result<SubspaceBasis> {
        let o = self.offset_or_err(w)?;
        Ok(self.maximal_vectors_at(&o))
    }

    /// Weights carrying maximal vectors, with the dimension of the maximal-vector space.
    pub fn maximal_vector_table(&self) -> Vec<(Offset, usize)> {
        self.support()
            .into_iter()
            .filter_map(|o| {
                let d = self.maximal_vectors_at(&o).dim();
                (d > 0).then_some((o, d))
            })
            .collect()
    }

    /// Forget lowering generators outside `levi`.
    pub fn restrict(&self, levi: Levi) -> Result<TruncatedModule> {
        if !levi.is_subset(self.levi) {
            return Err(Error::Precondition(format!(
                "cannot restrict from {} to {}",
                self.acting_tag(),
                levi.tag(self.ty)
            )));
        }
        let mut m = self.clone();
        m.levi = levi;
        for j in 0..self.rank() {
            if !levi.contains(j) {
                m.lower[j].clear();
            }
        }
        Ok(m)
    }

    /// Contravariant dual: the transpose of the action twisted by the anti-involution.
    pub fn dual(&self) -> Result<TruncatedModule> {
        if !self.is_g_module() {
            return Err(Error::Precondition("the contravariant dual needs a g-module".into()));
        }
        let mut m = TruncatedModule::empty(
            self.ty,
            self.levi,
            self.top.clone(),
            self.depth,
            "dual",
            format!("dual({})", self.construction),
        );
        m.dims = self.dims.clone();
        for i in 0..self.rank() {
            let e = unit_offset(i);
            for (o, mat) in &self.lower[i] {
                // y_i: M_o -> M_{o+e}; its transpose is x_i on the dual from o+e
                m.raise[i].insert(add_off(o, &e), mat.transpose());
            }
            for (o, mat) in &self.raise[i] {
                let t = sub_off(o, &e);
                if self.in_window(o) && self.in_window(&t) {
                    m.lower[i].insert(t, mat.transpose());
                }
            }
        }
        Ok(m)
    }

    /// Exact defining relations on interior weights.
    pub fn check_relations(&self) -> Result<()> {
        let r = self.rank();
        for o in self.window() {
            let n = self.dim(&o);
            if n == 0 {
                continue;
            }
            let fail = |what: &str| {
                Err(Error::Verification(format!("{what} fails at weight {} of {self:?}", self.weight_of(&o))))
            };
            // [x_i, y_j] = delta_ij h_i
            if self.is_interior(&o) {
                for i in 0..r {
                    for j in self.levi.indices(self.ty) {
                        let xy = self.compose(&[Gen::Y(j), Gen::X(i)], &o);
                        let yx = self.compose(&[Gen::X(i), Gen::Y(j)], &o);
                        let (Some(xy), Some(yx)) = (xy, yx) else { continue };
                        let mut lhs = xy.sub(&yx);
                        if i == j {
                            lhs = lhs.sub(&RatMatrix::scalar(n, &self.pairing(&o, i)));
                        }
                        if !lhs.is_zero() {
                            return fail("[x,y] = h");
                        }
                    }
                }
            }
            if r == 2 {
                for (i, j) in [(0, 1), (1, 0)] {
                    let serre = |a: Gen, b: Gen| -> Option<RatMatrix> {
                        let t1 = self.compose(&[b, a, a], &o)?;
                        let t2 = self.compose(&[a, b, a], &o)?;
                        let t3 = self.compose(&[a, a, b], &o)?;
                        Some(t1.sub(&t2.scale(&Q::from_int(2))).add(&t3))
                    };
                    if let Some(s) = serre(Gen::X(i), Gen::X(j)) {
                        if !s.is_zero() {
                            return fail("raising Serre relation");
                        }
                    }
                    if self.levi.contains(i) && self.levi.contains(j) {
                        if let Some(s) = serre(Gen::Y(i), Gen::Y(j)) {
                            if !s.is_zero() {
                                return fail("lowering Serre relation");
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Product of generators applied right to left (`gens[0]` acts first), or
    /// `None` if any step leaves the window.
    pub fn compose(&self, gens: &[Gen], o: &Offset) -> Option<RatMatrix> {
        let mut cur = *o;
        let mut acc = RatMatrix::identity(self.dim(o));
        for &g in gens {
            let t = self.target(g, &cur);
            if !self.in_window(&t) {
                if !matches!(g, Gen::X(_)) {
                    return None;
                }
                let end = gens.iter().fold(*o, |c, &h| self.target(h, &c));
                return if self.in_window(&end) {
                    Some(RatMatrix::zeros(self.dim(&end), self.dim(o)))
                } else if nonneg(&end) {
                    None
                } else {
                    Some(RatMatrix::zeros(0, self.dim(o)))
                };
            }
            let m = self.action(g, &cur)?;
            acc = m.mul(&acc);
            cur = t;
        }
        Some(acc)
    }

    /// Direct sum of two modules on the same window.
    pub fn direct_sum(&self, other: &TruncatedModule) -> Result<TruncatedModule> {
        if self.ty != other.ty || self.top != other.top || self.depth != other.depth || self.levi != other.levi {
            return Err(Error::Incompatible("direct sum needs equal windows and acting algebras".into()));
        }
        let mut m = TruncatedModule::empty(
            self.ty,
            self.levi,
            self.top.clone(),
            self.depth,
            "sum",
            format!("{} + {}", self.construction, other.construction),
        );
        for o in self.window() {
            m.set_dim(o, self.dim(&o) + other.dim(&o));
        }
        for g in self.gens() {
            for o in self.window() {
                let t = self.target(g, &o);
                if !self.in_window(&t) || m.dim(&o) == 0 || m.dim(&t) == 0 {
                    continue;
                }
                let (a, b) = (self.action(g, &o).unwrap(), other.action(g, &o).unwrap());
                let mut blk = RatMatrix::zeros(m.dim(&t), m.dim(&o));
                for i in 0..a.rows() {
                    for j in 0..a.cols() {
                        blk.set(i, j, a.get(i, j).clone());
                    }
                }
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        blk.set(a.rows() + i, a.cols() + j, b.get(i, j).clone());
                    }
                }
                m.set_action(g, o, blk);
            }
        }
        Ok(m)
    }
}

pub(crate) fn sub_vecs(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn window_offsets(ty: CartanType, depth: u32) -> Vec<Offset> {
    let d = depth as i32;
    let mut v = Vec::new();
    for h in 0..=d {
        match ty {
            CartanType::A1 => v.push([h, 0]),
            CartanType::A2 => {
                for a in (0..=h).rev() {
                    v.push([a, h - a]);
                }
            }
        }
    }
    v
}

/// Blocks `(left offset, right offset, starting index)` of a tensor weight space,
/// left offsets in lexicographic order; coordinates inside a block are left-major.
fn tensor_layout(m: &TruncatedModule, n: &TruncatedModule, o: &Offset) -> Vec<(Offset, Offset, usize)> {
    let mut blocks = Vec::new();
    let mut start = 0;
    let mut lefts: Vec<Offset> = m.dims.keys().filter(|l| nonneg(&sub_off(o, l))).copied().collect();
    lefts.sort();
    for l in lefts {
        let r = sub_off(o, &l);
        let sz = m.dim(&l) * n.dim(&r);
        if sz > 0 {
            blocks.push((l, r, start));
            start += sz;
        }
    }
    blocks
}

/// Coordinates of the pure tensor `u (x) v` in `tensor(m, n, depth)`.
pub fn tensor_pure(
    m: &TruncatedModule,
    n: &TruncatedModule,
    depth: u32,
    (lo, u): (&Offset, &[Q]),
    (ro, v): (&Offset, &[Q]),
) -> Result<(Offset, Vec<Q>)> {
    let o = add_off(lo, ro);
    if ht(&o) > depth {
        return Err(Error::Window(format!("pure tensor at height {} exceeds depth {depth}", ht(&o))));
    }
    let blocks = tensor_layout(m, n, &o);
    let total: usize = blocks.iter().map(|(l, r, _)| m.dim(l) * n.dim(r)).sum();
    let mut out = vec![Q::zero(); total];
    let Some(&(_, _, start)) = blocks.iter().find(|b| &b.0 == lo) else {
        return Ok((o, out));
    };
    let dr = n.dim(ro);
    for (k, a) in u.iter().enumerate() {
        for (j, b) in v.iter().enumerate() {
            out[start + k * dr + j] = a * b;
        }
    }
    Ok((o, out))
}

/// Tensor product over the common acting algebra, truncated at `depth`.
pub fn tensor(m: &TruncatedModule, n: &TruncatedModule, depth: u32) -> Result<TruncatedModule> {
    if m.ty != n.ty {
        return Err(Error::Incompatible("tensor factors have different root data".into()));
    }
    if depth > m.depth.min(n.depth) {
        return Err(Error::Window(format!(
            "tensor depth {depth} exceeds factor depths {} and {}",
            m.depth, n.depth
        )));
    }
    let levi = m.levi.intersect(n.levi);
    let mut out = TruncatedModule::empty(
        m.ty,
        levi,
        &m.top + &n.top,
        depth,
        "tensor",
        format!("tensor({}, {})", m.construction, n.construction),
    );
    let layout = |o: &Offset| tensor_layout(m, n, o);
    let window = out.window();
    let layouts: BTreeMap<Offset, Vec<(Offset, Offset, usize)>> = window.iter().map(|o| (*o, layout(o))).collect();
    for o in &window {
        let d: usize = layouts[o].iter().map(|(l, r, _)| m.dim(l) * n.dim(r)).sum();
        out.set_dim(*o, d);
    }
    for g in out.gens() {
        for o in &window {
            let t = out.target(g, o);
            if !out.in_window(&t) || out.dim(o) == 0 || out.dim(&t) == 0 {
                continue;
            }
            let tl = &layouts[&t];
            let find = |l: &Offset| tl.iter().find(|b| &b.0 == l).map(|b| b.2);
            let mut blk = RatMatrix::zeros(out.dim(&t), out.dim(o));
            for (l, r, start) in &layouts[o] {
                let (dl, dr) = (m.dim(l), n.dim(r));
                // g acting on the left factor
                let lt = m.target(g, l);
                if let (Some(a), Some(ts)) = (m.stored(g, l), find(&lt)) {
                    let dr_t = n.dim(r);
                    for i in 0..a.rows() {
                        for k in 0..dl {
                            let c = a.get(i, k);
                            if c.is_zero() {
                                continue;
                            }
                            for jr in 0..dr {
                                blk.add_to(ts + i * dr_t + jr, start + k * dr + jr, c);
                            }
                        }
                    }
                }
                // g acting on the right factor
                let rt = n.target(g, r);
                if let (Some(b), Some(ts)) = (n.stored(g, r), find(l)) {
                    let dr_t = n.dim(&rt);
                    for k in 0..dl {
                        for i in 0..b.rows() {
                            for jr in 0..dr {
                                let c = b.get(i, jr);
                                if !c.is_zero() {
                                    blk.add_to(ts + k * dr_t + i, start + k * dr + jr, c);
                                }
                            }
                        }
                    }
                }
            }
            out.set_action(g, *o, blk);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
