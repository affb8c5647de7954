use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::{ht, Offset, TruncatedModule};
use crate::rootdata::{root_datum, CartanType, Weight};

/// Weight multiplicities on a declared window (top weight and depth).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalCharacter {
    pub ty: CartanType,
    pub top: Weight,
    pub depth: u32,
    dims: BTreeMap<Weight, usize>,
}

impl FormalCharacter {
    pub fn new(ty: CartanType, top: Weight, depth: u32) -> Self {
        FormalCharacter { ty, top, depth, dims: BTreeMap::new() }
    }

    pub fn from_module(m: &TruncatedModule) -> Self {
        let mut c = FormalCharacter::new(m.ty(), m.top().clone(), m.depth());
        for o in m.support() {
            c.dims.insert(m.weight_of(&o), m.dim(&o));
        }
        c
    }

    /// Truncated Verma character of highest weight `lambda` on this window.
    pub fn verma(ty: CartanType, lambda: &Weight, top: &Weight, depth: u32) -> Self {
        let d = root_datum(ty);
        let mut c = FormalCharacter::new(ty, top.clone(), depth);
        for o in super::window_offsets(ty, depth) {
            let w = c.weight_at(&o);
            let n = d.kostant_partition(&(lambda - &w));
            if n > 0 {
                c.dims.insert(w, n as usize);
            }
        }
        c
    }

    pub fn weight_at(&self, o: &Offset) -> Weight {
        let d = root_datum(self.ty);
        let r: Vec<crate::rat::Q> =
            (0..self.ty.rank()).map(|i| crate::rat::Q::from_int(i64::from(o[i]))).collect();
        &self.top - &d.from_root_coords(&r)
    }

    fn height_of(&self, w: &Weight) -> Option<u32> {
        let o = root_datum(self.ty).int_root_coords(&(&self.top - w))?;
        (o[0] >= 0 && o[1] >= 0).then(|| ht(&o))
    }

    pub fn get(&self, w: &Weight) -> usize {
        self.dims.get(w).copied().unwrap_or(0)
    }

    pub fn set(&mut self, w: Weight, d: usize) {
        if d == 0 {
            self.dims.remove(&w);
        } else {
            self.dims.insert(w, d);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Weight, &usize)> {
        self.dims.iter()
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Entries at height at most `h` below the top.
    pub fn truncate(&self, h: u32) -> FormalCharacter {
        let mut c = FormalCharacter::new(self.ty, self.top.clone(), h.min(self.depth));
        for (w, d) in &self.dims {
            if self.height_of(w).is_some_and(|x| x <= h) {
                c.dims.insert(w.clone(), *d);
            }
        }
        c
    }

    pub fn add(&self, o: &FormalCharacter) -> FormalCharacter {
        let mut c = self.clone();
        for (w, d) in &o.dims {
            *c.dims.entry(w.clone()).or_insert(0) += d;
        }
        c
    }

    /// `self - o`, or `None` if some multiplicity would become negative.
    pub fn checked_sub(&self, o: &FormalCharacter) -> Option<FormalCharacter> {
        let mut c = self.clone();
        for (w, d) in &o.dims {
            let cur = c.get(w);
            if cur < *d {
                return None;
            }
            c.set(w.clone(), cur - d);
        }
        Some(c)
    }

    /// Pointwise `self <= o`.
    pub fn le(&self, o: &FormalCharacter) -> bool {
        self.dims.iter().all(|(w, d)| *d <= o.get(w))
    }

    /// Same multiplicities (windows may differ).
    pub fn same_dims(&self, o: &FormalCharacter) -> bool {
        self.dims == o.dims
    }

    pub fn as_pairs(&self) -> Vec<(Weight, usize)> {
        self.dims.iter().map(|(w, d)| (w.clone(), *d)).collect()
    }
}

impl Serialize for FormalCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(serde_json::Value, usize)> =
            self.dims.iter().map(|(w, d)| (crate::rootdata::weight_json(w), *d)).collect();
        pairs.serialize(s)
    }
}

/// Multiplicity of `lambda` in the tensor product of two characters.
pub fn tensor_weight_dim(cm: &FormalCharacter, cn: &FormalCharacter, lambda: &Weight) -> crate::Result<usize> {
    let reach = cm.depth.min(cn.depth);
    let top = &cm.top + &cn.top;
    let d = root_datum(cm.ty);
    let o = d
        .int_root_coords(&(&top - lambda))
        .filter(|o| o[0] >= 0 && o[1] >= 0 && ht(o) <= reach)
        .ok_or_else(|| crate::Error::Window(format!("weight {lambda} is outside the reliable tensor window")))?;
    let _ = o;
    let mut total = 0;
    for (mu, a) in &cm.dims {
        let nu = lambda - mu;
        total += a * cn.get(&nu);
    }
    Ok(total)
}
