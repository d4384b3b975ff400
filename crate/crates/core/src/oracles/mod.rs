//! Closed forms and brute-force verifiers for the dihedral and normalizer facts.

pub mod dihedral;
pub mod structure;
pub mod survey;

pub use dihedral::{dihedral_normalizer_formula, verify_dihedral_normalizers, DihedralNormalizerVerdict};
pub use structure::{find_dihedral_product, no_dihedral_product_check, semidirect_involution_check};
pub use survey::{
    dihedral_subgroup_survey, verify_divd, verify_normc2psl, verify_psl28, ConjugationTable, DihedralSubgroup,
    DihedralSurvey, DivdReport, Fingerprint, InvolutionTable, Normc2pslReport, Psl28Report,
};

use crate::error::Result;
use crate::perm::PermutationGroup;

/// Number of D_{2d} subgroups of `g` for one d.
pub fn count_dihedral_subgroups(g: &PermutationGroup, d: u64, bound: u64) -> Result<usize> {
    let (_, _, survey) = dihedral_subgroup_survey(g, bound)?;
    Ok(survey.subgroups_per_d.get(&d).copied().unwrap_or(0))
}
