//! Stratified k-fold assignment.
//!
//! Record indices are grouped by class (class order, original record order
//! within a class), each group is shuffled with one seeded [`Lcg64`] stream,
//! the groups are concatenated and dealt round-robin. That keeps both the
//! fold sizes and every per-class count within one of each other.

use crate::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::num::Scalar;
use crate::rng::Lcg64;

pub fn stratified_kfold<F: Scalar>(
    ds: &LabeledDataset<F>,
    k: usize,
    seed: u64,
) -> Result<Vec<Vec<usize>>> {
    let n = ds.len();
    if k < 2 || k > n {
        return Err(Error::BadFoldCount { k, n });
    }

    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); ds.n_classes()];
    for (i, rec) in ds.records().iter().enumerate() {
        let class = rec.class.ok_or(Error::UnlabeledRecord(i))?;
        by_class[class].push(i);
    }

    let mut rng = Lcg64::new(seed);
    let mut dealt = Vec::with_capacity(n);
    for group in &mut by_class {
        rng.shuffle(group);
        dealt.extend_from_slice(group);
    }

    let mut folds = vec![Vec::new(); k];
    for (j, idx) in dealt.into_iter().enumerate() {
        folds[j % k].push(idx);
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(folds)
}
