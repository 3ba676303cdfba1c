//! Exhaustive generation of all isomorphism classes of n-leaf trees.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tree::CanonicalTree;

/// Bound on the number of children per vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arity {
    Binary,
    Ternary,
    Unbounded,
}

impl Arity {
    pub fn max_children(self) -> Option<usize> {
        match self {
            Arity::Binary => Some(2),
            Arity::Ternary => Some(3),
            Arity::Unbounded => None,
        }
    }

    /// Largest n accepted by [`enumerate_trees`].
    pub fn enumeration_cap(self) -> usize {
        match self {
            Arity::Binary => 18,
            Arity::Ternary => 13,
            Arity::Unbounded => 12,
        }
    }

    pub fn admits(self, tree: &CanonicalTree) -> bool {
        self.max_children().is_none_or(|d| tree.max_outdegree() <= d)
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arity::Binary => "2",
            Arity::Ternary => "3",
            Arity::Unbounded => "any",
        })
    }
}

impl FromStr for Arity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" | "binary" => Ok(Arity::Binary),
            "3" | "ternary" => Ok(Arity::Ternary),
            "any" | "unbounded" => Ok(Arity::Unbounded),
            _ => Err(Error::InvalidConstruction(format!("unknown arity {s:?}"))),
        }
    }
}

/// Every n-leaf tree of the given arity exactly once, in canonical order.
pub fn enumerate_trees(n: usize, arity: Arity) -> Result<Vec<CanonicalTree>> {
    let cap = arity.enumeration_cap();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "tree enumeration",
            n,
            cap,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok(all_up_to(n, arity).pop().unwrap_or_default())
}

/// `result[m - 1]` holds all m-leaf trees for m in 1..=n.
fn all_up_to(n: usize, arity: Arity) -> Vec<Vec<CanonicalTree>> {
    let mut by_size: Vec<Vec<CanonicalTree>> = vec![vec![CanonicalTree::leaf()]];
    for m in 2..=n {
        let max_parts = arity.max_children().unwrap_or(m).min(m);
        let mut out = Vec::new();
        let mut parts = Vec::new();
        for p in 2..=max_parts {
            partitions(m, p, 1, &mut parts, &mut |parts| {
                combine(parts, &by_size, &mut Vec::new(), &mut out);
            });
        }
        out.sort();
        by_size.push(out);
    }
    by_size
}

/// Calls `f` with every nondecreasing sequence of `parts` positive integers
/// summing to `total`, each at least `min`.
fn partitions(total: usize, parts: usize, min: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if parts == 1 {
        if total >= min {
            acc.push(total);
            f(acc);
            acc.pop();
        }
        return;
    }
    let mut first = min;
    while first * parts <= total {
        acc.push(first);
        partitions(total - first, parts - 1, first, acc, f);
        acc.pop();
        first += 1;
    }
}

/// Picks one tree per part, with nondecreasing indices inside runs of equal
/// part sizes so each multiset of branches appears once.
fn combine(
    parts: &[usize],
    by_size: &[Vec<CanonicalTree>],
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<CanonicalTree>,
) {
    let depth = chosen.len();
    if depth == parts.len() {
        let children = chosen.iter().map(|&(s, i)| by_size[s - 1][i].clone()).collect();
        out.push(CanonicalTree::join(children));
        return;
    }
    let size = parts[depth];
    let start = match chosen.last() {
        Some(&(s, i)) if s == size => i,
        _ => 0,
    };
    for i in start..by_size[size - 1].len() {
        chosen.push((size, i));
        combine(parts, by_size, chosen, out);
        chosen.pop();
    }
}
