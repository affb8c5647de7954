//! Direct-sum decompositions, commutants, Verma flags and certificates.

mod certificate;
mod commutant;
mod direct;
mod flag;
mod forms;
mod split;
mod table;

pub use certificate::{
    decompose_b, projective_a1, weyl_label, Catalogued, Check, DecompositionCertificate, SummandCertificate,
    SummandKind,
};
pub use commutant::{
    commutant, default_margin, generator_offsets, is_indecomposable_window, split_by_idempotent, Commutant,
    IndecomposabilityEvidence, Verdict,
};
pub use direct::{is_direct, DirectnessEvidence, WeightRanks};
pub use flag::{is_tilting, simple_restriction_filtration, verma_flag, FlagReport};
pub use split::{complement, fitting_split, head_complement};
pub use table::{
    sl3_vanishing_pairs, split_into_indecomposables, verify_block_tensor_table, Piece, Sl2Table, TableCase,
};

#[cfg(test)]
mod tests;
