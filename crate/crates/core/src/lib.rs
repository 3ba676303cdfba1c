//! Leaf-induced subtree counting and inducibility bounds for rooted trees.
//!
//! * [`tree`], [`construct`], [`enumerate`]: canonical trees, explicit
//!   families and exhaustive generation.
//! * [`count`]: exact pattern counts and densities.
//! * [`envelope`]: the envelope-pruned dynamic program for the maximum
//!   number of copies of A5, Q4 or an eligible binary pattern.
//! * [`bounds`]: limit densities, the polynomial optimisations behind the
//!   lower bounds, and the minimal-polynomial check.

pub mod bounds;
pub mod construct;
pub mod count;
pub mod enumerate;
pub mod envelope;
pub mod error;
pub mod tree;

pub use construct::{build, ConstructionParams};
pub use count::{ExactRational, PatternSpec};
pub use enumerate::{enumerate_trees, Arity};
pub use error::{Error, Result};
pub use tree::{canonicalize, CanonicalTree, RawTree};

/// Sizes the global worker pool. Without the `parallel` feature every
/// computation is sequential and this is a no-op.
pub fn configure_threads(threads: usize) -> Result<()> {
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::InvalidConstruction(format!("thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}
