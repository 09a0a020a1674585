//! Permutation images of the presented groups, built from coset tables.

use thiserror::Error;

use crate::coset::{enumerate, CosetTable, EnumerationError, EnumerationLimits};
use crate::perm::checks::{CheckError, LabeledGroup};
use crate::perm::PermGroup;
use crate::words::{catalog, parse_word};

/// Generators of `X*` and `Y*` inside the completions.
pub const XSTAR_WORDS: [&str; 6] = ["a", "b", "p", "q", "t", "u"];
pub const YSTAR_WORDS: [&str; 6] = ["a", "b", "r", "s", "t", "u"];
pub const ZSTAR_WORDS: [&str; 4] = ["a", "b", "t", "u"];

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("unknown catalog entry `{0}`")]
    Unknown(String),
    #[error("bad subgroup word `{0}`")]
    BadWord(String),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// Enumerates `name` over the subgroup generated by `words`.
pub fn enumerate_over(name: &str, words: &[&str], limits: &EnumerationLimits) -> Result<CosetTable, ModelError> {
    let entry = catalog(name).map_err(|_| ModelError::Unknown(name.into()))?;
    let p = &entry.presentation;
    let sub = words
        .iter()
        .map(|w| parse_word(w, p.generators()).map_err(|_| ModelError::BadWord((*w).into())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(enumerate(p, &sub, limits)?)
}

/// The group order of a catalog entry, by enumeration over the trivial subgroup.
pub fn order_by_enumeration(name: &str, limits: &EnumerationLimits) -> Result<usize, ModelError> {
    Ok(enumerate_over(name, &[], limits)?.live_count())
}

/// The action of `name` on the cosets of `<words>`, with generator labels.
pub fn coset_image(name: &str, words: &[&str], limits: &EnumerationLimits) -> Result<LabeledGroup, ModelError> {
    let t = enumerate_over(name, words, limits)?;
    Ok(LabeledGroup::new(t.live_count(), t.coset_action()))
}

/// `F_i` acting on the cosets of `X*`.
pub fn completion_image(i: usize, limits: &EnumerationLimits) -> Result<LabeledGroup, ModelError> {
    coset_image(&format!("F{i}"), &XSTAR_WORDS, limits)
}

/// `X*` on the 9 cosets of `<p, q, b, u>`.
pub fn xstar_affine_image(limits: &EnumerationLimits) -> Result<LabeledGroup, ModelError> {
    coset_image("Xstar", &["p", "q", "b", "u"], limits)
}

/// The regular representation of a catalog entry.
pub fn regular_image(name: &str, limits: &EnumerationLimits) -> Result<LabeledGroup, ModelError> {
    coset_image(name, &[], limits)
}

/// `<words>` inside a labeled image.
pub fn subgroup(g: &LabeledGroup, words: &[&str]) -> Result<PermGroup, ModelError> {
    Ok(g.subgroup(words)?)
}
