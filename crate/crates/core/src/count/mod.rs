//! Counting leaf-induced copies of a pattern tree.
//!
//! Three independent routes are provided: brute-force subset enumeration
//! ([`count_by_subsets`]), the branch recursions for the named patterns, and
//! closed forms for complete d-ary trees. [`count`] picks the cheapest exact
//! route for a given pattern and tree.

mod closed_form;
mod pattern;
mod recursion;
mod subsets;

use rug::{Integer, Rational};

pub use closed_form::{count_qk_complete, count_qk_complete_recursive, count_sk_complete, qk_complete_limit};
pub use pattern::{eligible_patterns, GeneralPattern, PatternId, PatternSpec};
pub use recursion::{count_a5, count_cd22, count_general, count_q4, count_qk, count_s3, count_star};
pub use subsets::{count_by_subsets, SUBSET_CAP};

use crate::error::Result;
use crate::tree::CanonicalTree;

/// Exact fraction, always kept in lowest terms.
pub type ExactRational = Rational;

pub fn binomial(n: usize, k: usize) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::from(n).binomial(k as u32)
}

/// `r` rounded half-to-even to `places` decimals, without trailing-zero trimming.
pub fn to_decimal(r: &Rational, places: u32) -> String {
    let scale = Integer::from(Integer::u_pow_u(10, places));
    let scaled = Rational::from(r * &scale);
    let (floor, frac) = {
        let f = scaled.clone().floor();
        let floor = f.numer().clone();
        (floor.clone(), scaled - floor)
    };
    let half = Rational::from((1, 2));
    let rounded = match frac.cmp(&half) {
        std::cmp::Ordering::Less => floor,
        std::cmp::Ordering::Greater => floor + 1u32,
        std::cmp::Ordering::Equal if floor.is_even() => floor,
        std::cmp::Ordering::Equal => floor + 1u32,
    };
    let neg = rounded < 0;
    let digits = rounded.abs().to_string();
    let width = places as usize + 1;
    let digits = format!("{digits:0>width$}");
    let (int, fracpart) = digits.split_at(digits.len() - places as usize);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{fracpart}")
    }
}

/// Number of copies of `pattern` in `tree`, by the fastest exact route.
pub fn count(pattern: &PatternSpec, tree: &CanonicalTree) -> Result<Integer> {
    if pattern.size() > tree.leaf_count() {
        return Ok(Integer::new());
    }
    match pattern.id() {
        PatternId::A5 => Ok(recursion::a5_pair(tree).0),
        PatternId::CD22 => Ok(recursion::a5_pair(tree).1),
        PatternId::Q4 => Ok(recursion::star_companion_pair(tree, 4).0),
        PatternId::S3 => Ok(recursion::star_companion_pair(tree, 4).1),
        PatternId::Star(k) => Ok(recursion::star_counts(tree, *k)),
        PatternId::Qk(k) => Ok(recursion::star_companion_pair(tree, *k).0),
        PatternId::General(g) if tree.is_binary() => Ok(count_general(g, tree)?.0),
        PatternId::General(_) | PatternId::Tree => count_by_subsets(pattern.tree(), tree),
    }
}

/// Density of `pattern` in `tree`: copies over the number of |pattern|-subsets
/// of leaves, and zero when the pattern is larger than the tree.
pub fn density(pattern: &PatternSpec, tree: &CanonicalTree) -> Result<ExactRational> {
    let (n, k) = (tree.leaf_count(), pattern.size());
    if k > n {
        return Ok(Rational::new());
    }
    let c = count(pattern, tree)?;
    Ok(Rational::from((c, binomial(n, k))))
}
