use super::Mode;
use crate::count::count_by_subsets;
use crate::enumerate::{enumerate_trees, Arity};
use crate::error::{Error, Result};

/// Largest n [`brute_max`] accepts for trees of the given arity.
pub fn brute_cap(arity: Arity) -> usize {
    match arity {
        Arity::Binary => 12,
        Arity::Ternary => 9,
        Arity::Unbounded => 8,
    }
}

/// max over all n-leaf trees of the mode's arity of the pattern count, by
/// enumerating every tree and every leaf subset.
pub fn brute_max(n: usize, mode: &Mode) -> Result<u128> {
    let cap = brute_cap(mode.arity());
    if n > cap {
        return Err(Error::CapExceeded {
            what: "brute-force maximum",
            n,
            cap,
        });
    }
    let pattern = mode.pattern_spec();
    let mut best = 0u128;
    for tree in enumerate_trees(n, mode.arity())? {
        let c = count_by_subsets(pattern.tree(), &tree)?;
        best = best.max(c.to_u128().expect("bounded by C(n, k)"));
    }
    Ok(best)
}
