use itertools::Itertools;
use rug::Integer;

use super::binomial;
use crate::error::{Error, Result};
use crate::tree::CanonicalTree;

/// Largest number of leaf subsets [`count_by_subsets`] will visit.
pub const SUBSET_CAP: u64 = 5_000_000;

/// Copies of `pattern` in `tree` by inducing every |pattern|-subset of leaves
/// and comparing canonical keys.
pub fn count_by_subsets(pattern: &CanonicalTree, tree: &CanonicalTree) -> Result<Integer> {
    let (n, k) = (tree.leaf_count(), pattern.leaf_count());
    if k > n {
        return Ok(Integer::new());
    }
    let subsets = binomial(n, k);
    if subsets > SUBSET_CAP {
        return Err(Error::CapExceeded {
            what: "subset enumeration",
            n,
            cap: max_leaves_for(k),
        });
    }
    let mut hits = 0u64;
    for subset in (0..n).combinations(k) {
        if tree.induced_subtree(&subset)? == *pattern {
            hits += 1;
        }
    }
    Ok(Integer::from(hits))
}

/// Largest tree size whose k-subsets stay under [`SUBSET_CAP`].
fn max_leaves_for(k: usize) -> usize {
    (k..).take_while(|&n| binomial(n, k) <= SUBSET_CAP).last().unwrap_or(k)
}
