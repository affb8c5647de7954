//! Central characters and the block decomposition of a truncated g-module.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use serde_json::json;

use super::center::{central_action_at, central_degrees};
use crate::error::{Error, Result};
use crate::exactla::{RatMatrix, SubspaceBasis};
use crate::module::{ht, one_dim, sub_off, unit_offset, Gen, Offset, Submodule, TruncatedModule};
use crate::rat::Q;
use crate::rootdata::{root_datum, weight_json, CartanType, Weight};

/// A central character: linkage representative and eigenvalues of the center generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockLabel {
    pub rep: Weight,
    pub eigen: Vec<Q>,
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.eigen.iter().map(Q::to_string).collect();
        write!(f, "chi{} ({})", self.rep, e.join(", "))
    }
}

impl Serialize for BlockLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let e: Vec<String> = self.eigen.iter().map(Q::to_string).collect();
        json!({"rep": weight_json(&self.rep), "eigen": e}).serialize(s)
    }
}

/// Eigenvalues of the center generators on a highest weight vector of weight `lambda`.
pub fn central_eigenvalues(ty: CartanType, lambda: &Weight) -> Result<Vec<Q>> {
    let v = induced_top(ty, lambda)?;
    central_degrees(ty)
        .iter()
        .map(|&k| Ok(central_action_at(&v, k, &[0, 0])?.get(0, 0).clone()))
        .collect()
}

fn induced_top(ty: CartanType, lambda: &Weight) -> Result<TruncatedModule> {
    crate::module::induce(&one_dim(ty, lambda, 0)?, 0)
}

pub fn central_character(ty: CartanType, lambda: &Weight) -> Result<BlockLabel> {
    let rep = root_datum(ty).linkage_rep(lambda)?;
    Ok(BlockLabel { rep, eigen: central_eigenvalues(ty, lambda)? })
}

/// Result of a block decomposition.
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub blocks: Vec<(BlockLabel, Submodule)>,
    /// Degrees of the center generators whose eigenvalues were needed to split a weight space.
    pub degrees_used: Vec<u32>,
}

impl BlockDecomposition {
    pub fn mechanism(&self) -> &'static str {
        "central-eigenvalues"
    }

    pub fn block(&self, rep: &Weight) -> Option<&Submodule> {
        self.blocks.iter().find(|(l, _)| &l.rep == rep).map(|(_, s)| s)
    }
}

/// Vectors `v` with `a v` in `s`.
fn preimage(a: &RatMatrix, s: &SubspaceBasis) -> SubspaceBasis {
    let n = a.cols();
    let cols: Vec<Vec<Q>> = (0..n).map(|j| s.reduce(&a.column(j))).collect();
    RatMatrix::from_columns(a.rows(), &cols).kernel()
}

/// Generalized kernel of a square matrix.
fn generalized_kernel(a: &RatMatrix) -> SubspaceBasis {
    let mut v = SubspaceBasis::zero(a.rows());
    loop {
        let next = preimage(a, &v);
        if next.dim() == v.dim() {
            return v;
        }
        v = next;
    }
}

/// The generalized eigenspace of the center for the central character of `lambda`.
///
/// Same top-down sweep as [`block_decompose`], tracking one block only: away
/// from weights linked to `lambda` the block is the image of the lowering
/// generators, and at linked weights it is the common generalized kernel.
pub fn block_component(m: &TruncatedModule, lambda: &Weight) -> Result<Submodule> {
    if !m.is_g_module() {
        return Err(Error::Precondition(format!("block decomposition needs a g-module, not {}", m.acting_tag())));
    }
    let ty = m.ty();
    let d = root_datum(ty);
    let rep = d.linkage_rep(lambda)?;
    let target = central_eigenvalues(ty, lambda)?;
    let mut offs = m.support();
    offs.sort_by_key(|o| (ht(o), *o));
    let mut spaces: BTreeMap<Offset, SubspaceBasis> = BTreeMap::new();
    for o in offs {
        let n = m.dim(&o);
        let mu = m.weight_of(&o);
        let sp = if d.linkage_rep(&mu)? == rep {
            let mut e = SubspaceBasis::full(n);
            for (pos, &k) in central_degrees(ty).iter().enumerate() {
                let c = central_action_at(m, k, &o)?.sub(&RatMatrix::scalar(n, &target[pos]));
                e = e.intersect(&generalized_kernel(&c));
            }
            e
        } else {
            let mut image = SubspaceBasis::zero(n);
            for j in 0..m.rank() {
                let src = sub_off(&o, &unit_offset(j));
                let Some(s) = spaces.get(&src) else { continue };
                for v in s.vectors() {
                    let (_, w) = m.apply(Gen::Y(j), &src, v).expect("lowering into the support");
                    image.insert(&w);
                }
            }
            image
        };
        if !sp.is_zero() {
            spaces.insert(o, sp);
        }
    }
    let sub = Submodule::from_spaces(spaces);
    sub.check_closed(m)?;
    Ok(sub)
}

/// Split a g-module into generalized eigenspaces of the center.
///
/// Weight spaces are processed from the top down. At each weight the image of
/// the lowering generators is already split by the blocks above; on the
/// quotient by that image the center acts by the central character of the
/// weight itself, so only that one eigenspace needs a matrix computation.
pub fn block_decompose(m: &TruncatedModule) -> Result<BlockDecomposition> {
    if !m.is_g_module() {
        return Err(Error::Precondition(format!("block decomposition needs a g-module, not {}", m.acting_tag())));
    }
    let ty = m.ty();
    let rank = m.rank();
    let mut offs = m.support();
    offs.sort_by_key(|o| (ht(o), *o));
    let mut spaces: BTreeMap<Offset, BTreeMap<Vec<Q>, SubspaceBasis>> = BTreeMap::new();
    let mut reps: BTreeMap<Vec<Q>, BTreeSet<Weight>> = BTreeMap::new();
    let mut used: BTreeSet<u32> = BTreeSet::new();
    let mut eig_cache: BTreeMap<Weight, Vec<Q>> = BTreeMap::new();
    for o in offs {
        let n = m.dim(&o);
        let mut image: BTreeMap<Vec<Q>, SubspaceBasis> = BTreeMap::new();
        for j in 0..rank {
            let src = sub_off(&o, &unit_offset(j));
            if src[0] < 0 || src[1] < 0 {
                continue;
            }
            let Some(blocks) = spaces.get(&src) else { continue };
            for (t, e) in blocks {
                let sp = image.entry(t.clone()).or_insert_with(|| SubspaceBasis::zero(n));
                for v in e.vectors() {
                    let (_, w) = m.apply(Gen::Y(j), &src, v).expect("lowering into the support");
                    sp.insert(&w);
                }
            }
        }
        image.retain(|_, s| !s.is_zero());
        let covered: usize = image.values().map(SubspaceBasis::dim).sum();
        if covered < n {
            let mu = m.weight_of(&o);
            let t = match eig_cache.get(&mu) {
                Some(t) => t.clone(),
                None => {
                    let t = central_eigenvalues(ty, &mu)?;
                    eig_cache.insert(mu.clone(), t.clone());
                    t
                }
            };
            reps.entry(t.clone()).or_default().insert(root_datum(ty).linkage_rep(&mu)?);
            let others: usize = image.iter().filter(|(k, _)| **k != t).map(|(_, s)| s.dim()).sum();
            let own = if others == 0 {
                SubspaceBasis::full(n)
            } else {
                let degs = central_degrees(ty);
                let need = if image.keys().any(|k| *k != t && k[0] == t[0]) { degs.len() } else { 1 };
                let mut e = SubspaceBasis::full(n);
                for (pos, &k) in degs[..need].iter().enumerate() {
                    used.insert(k);
                    let c = central_action_at(m, k, &o)?.sub(&RatMatrix::scalar(n, &t[pos]));
                    e = e.intersect(&generalized_kernel(&c));
                }
                if e.dim() != n - others {
                    return Err(Error::Verification(format!(
                        "generalized eigenspace at weight {mu} has dimension {} (expected {})",
                        e.dim(),
                        n - others
                    )));
                }
                e
            };
            image.insert(t, own);
        }
        let total: usize = image.values().map(SubspaceBasis::dim).sum();
        if total != n {
            return Err(Error::Verification(format!(
                "block spaces at weight {} have total dimension {total} (expected {n})",
                m.weight_of(&o)
            )));
        }
        spaces.insert(o, image);
    }
    let mut by_tuple: BTreeMap<Vec<Q>, BTreeMap<Offset, SubspaceBasis>> = BTreeMap::new();
    for (o, blocks) in spaces {
        for (t, s) in blocks {
            by_tuple.entry(t).or_default().insert(o, s);
        }
    }
    let mut blocks = Vec::new();
    for (t, sp) in by_tuple {
        let rs = &reps[&t];
        if rs.len() > 1 {
            let names: Vec<String> = rs.iter().map(Weight::to_string).collect();
            return Err(Error::Verification(format!(
                "center eigenvalues do not separate the linkage classes of {}",
                names.join(", ")
            )));
        }
        let sub = Submodule::from_spaces(sp);
        sub.check_closed(m)?;
        let rep = rs.iter().next().unwrap().clone();
        blocks.push((BlockLabel { rep, eigen: t }, sub));
    }
    blocks.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(BlockDecomposition { blocks, degrees_used: used.into_iter().collect() })
}
