//! Directness of a family of submodules via maximal vectors.

use serde::Serialize;

use crate::error::Result;
use crate::exactla::SubspaceBasis;
use crate::module::{FormalCharacter, Submodule, TruncatedModule};
use crate::rootdata::{weight_json, Weight};

/// Ranks of the maximal-vector spaces of each submodule and of their sum at one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightRanks {
    pub weight: Weight,
    pub ranks: Vec<usize>,
    pub sum_rank: usize,
}

impl Serialize for WeightRanks {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::json!({"weight": weight_json(&self.weight), "ranks": self.ranks, "sum": self.sum_rank}).serialize(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectnessEvidence {
    /// Maximal-vector spaces are independent at every interior weight.
    pub maximal_direct: bool,
    /// Weight spaces themselves are independent at every interior weight.
    pub total_direct: bool,
    /// Sum of the submodule characters is bounded by the module character.
    pub char_bound: bool,
    /// Sum of the submodule characters equals the module character on the interior.
    pub char_equal: bool,
    pub table: Vec<WeightRanks>,
}

impl DirectnessEvidence {
    pub fn is_direct(&self) -> bool {
        self.maximal_direct && self.char_bound
    }

    /// The family is a direct-sum decomposition of the module on the interior.
    pub fn is_decomposition(&self) -> bool {
        self.is_direct() && self.total_direct && self.char_equal
    }
}

/// Test whether the sum of `subs` is direct by comparing maximal-vector ranks.
pub fn is_direct(m: &TruncatedModule, subs: &[Submodule]) -> Result<(bool, DirectnessEvidence)> {
    for s in subs {
        s.check_closed(m)?;
    }
    let depth = m.depth();
    let mut maximal_direct = true;
    let mut total_direct = true;
    let mut table = Vec::new();
    for o in m.support() {
        if !m.is_interior(&o) {
            continue;
        }
        let n = m.dim(&o);
        let plus = m.maximal_vectors_at(&o);
        let mut ranks = Vec::with_capacity(subs.len());
        let mut sum = SubspaceBasis::zero(n);
        let mut total = SubspaceBasis::zero(n);
        let mut total_dims = 0;
        for s in subs {
            let sp = s.space_or_zero(m, &o);
            let mx = sp.intersect(&plus);
            ranks.push(mx.dim());
            sum = sum.sum(&mx);
            total = total.sum(&sp);
            total_dims += sp.dim();
        }
        let sum_rank = sum.dim();
        if sum_rank != ranks.iter().sum::<usize>() {
            maximal_direct = false;
        }
        if total.dim() != total_dims {
            total_direct = false;
        }
        if ranks.iter().any(|&r| r > 0) {
            table.push(WeightRanks { weight: m.weight_of(&o), ranks, sum_rank });
        }
    }
    let mut chars = FormalCharacter::new(m.ty(), m.top().clone(), depth);
    for s in subs {
        chars = chars.add(&s.character(m));
    }
    let interior = |c: &FormalCharacter| c.truncate(depth.saturating_sub(1));
    let own = interior(&m.character());
    let sum = interior(&chars);
    let char_bound = sum.le(&own);
    let char_equal = sum == own;
    let ev = DirectnessEvidence { maximal_direct, total_direct, char_bound, char_equal, table };
    Ok((ev.is_direct(), ev))
}
