//! Deterministic k-fold splits over manifest clip ids.

use super::Manifest;
use crate::error::{Error, Result};
use crate::nn::SeededRng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fold {
    pub train: Vec<String>,
    pub test: Vec<String>,
}

/// Splits the manifest's clips into `k` folds.
///
/// Test sets are pairwise disjoint, cover every clip id, and differ in size
/// by at most one; each train set is the complement of its test set in
/// manifest order. Deterministic for a fixed seed.
pub fn make_folds(manifest: &Manifest, k: usize, seed: u64) -> Result<Vec<Fold>> {
    let ids = manifest.clip_ids();
    if k < 2 {
        return Err(Error::Precondition {
            what: format!("k = {k}; need k >= 2"),
        });
    }
    if ids.len() < k {
        return Err(Error::Precondition {
            what: format!("k = {k} exceeds clip count {}", ids.len()),
        });
    }
    let mut shuffled = ids.clone();
    let mut rng = SeededRng::new(seed);
    rng.shuffle(&mut shuffled);

    let mut folds = Vec::with_capacity(k);
    for i in 0..k {
        let mut test: Vec<String> = shuffled
            .iter()
            .enumerate()
            .filter(|(j, _)| j % k == i)
            .map(|(_, id)| id.clone())
            .collect();
        test.sort();
        let train: Vec<String> = ids.iter().filter(|id| !test.contains(id)).cloned().collect();
        folds.push(Fold { train, test });
    }
    Ok(folds)
}
