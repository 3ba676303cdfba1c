//! Exact densities in explicitly built trees.

use rug::Rational;

use crate::construct::{build, ConstructionParams};
use crate::count::{density, PatternSpec};
use crate::error::{Error, Result};

pub fn construction_density(params: &ConstructionParams, pattern: &PatternSpec) -> Result<Rational> {
    density(pattern, &build(params)?)
}

/// Branch sizes (floor(x1 n), floor(x2 n), floor(x3 n), remainder) of
/// S(n1, n2, n3, n4) with n leaves; every part must be positive.
pub fn s_construction_sizes(x: [f64; 3], n: usize) -> Result<[usize; 4]> {
    let parts = x.map(|v| (v * n as f64).floor() as usize);
    let used: usize = parts.iter().sum();
    if used >= n || parts.contains(&0) {
        return Err(Error::InvalidConstruction(format!("S sizes for n = {n} from {x:?}")));
    }
    Ok([parts[0], parts[1], parts[2], n - used])
}

/// Density of Q4 in the tree with even ternary branches of sizes n1 and
/// n - n1, for every n1 in 1..n; index i holds n1 = i + 1.
pub fn two_branch_q4_densities(n: usize) -> Result<Vec<Rational>> {
    let q4 = PatternSpec::q4();
    (1..n)
        .map(|n1| construction_density(&ConstructionParams::EvenTernaryPair { n1, n2: n - n1 }, &q4))
        .collect()
}
