//! Limit densities along complete trees.

use rug::Rational;

use crate::count::qk_complete_limit;
use crate::error::{Error, Result};

/// Inducibility of CD22 among binary trees.
pub const CD22_BINARY_INDUCIBILITY: (u32, u32) = (3, 7);

/// lim_h γ(pattern, CD^d_h) for Q4 (d = 3) and A5 (d = 2).
pub fn limit_density_complete(pattern: &str) -> Result<Rational> {
    match pattern {
        "Q4" => Ok(qk_complete_limit(3, 4)),
        // Every CD22 copy completes to A5 with any outside leaf; in the
        // limit that is 2·5 / (2^5 - 2) times the CD22 density.
        "A5" => Ok(Rational::from((2 * 5, (1u32 << 5) - 2)) * Rational::from(CD22_BINARY_INDUCIBILITY)),
        other => Err(Error::UnknownPattern(other.to_owned())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_limits() {
        assert_eq!(limit_density_complete("Q4").unwrap(), Rational::from((1, 13)));
        assert_eq!(limit_density_complete("A5").unwrap(), Rational::from((1, 7)));
        assert!(limit_density_complete("S3").is_err());
    }

    #[test]
    fn general_limit_formula_at_d3_k4() {
        // 4! · 2 · C(3, 3) / ((27 - 3)(27 - 1))
        assert_eq!(Rational::from((24 * 2, 24 * 26)), Rational::from((1, 13)));
    }
}
