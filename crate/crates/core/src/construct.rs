//! Explicit tree families: even trees, complete trees, stars, caterpillars and
//! the two extremal constructions used for the lower bounds.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tree::CanonicalTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstructionParams {
    /// Even d-ary tree with `n` leaves, `d` in {2, 3}.
    EvenTree {
        d: usize,
        n: usize,
    },
    /// Complete d-ary tree of height `h` (d^h leaves).
    Complete {
        d: usize,
        h: u32,
    },
    Star {
        k: usize,
    },
    /// Binary caterpillar with `n` leaves.
    CaterpillarF {
        n: usize,
    },
    /// Even binary trees of sizes n1..n4 hung along a path of three binary
    /// vertices, n1 next to the root.
    SConstruction {
        n: [usize; 4],
    },
    /// Complete ternary trees of heights h and h + 1 under a common root.
    WTree {
        h: u32,
    },
    /// Even ternary trees of sizes n1 and n2 under a common root.
    EvenTernaryPair {
        n1: usize,
        n2: usize,
    },
}

impl ConstructionParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConstruction(m));
        match *self {
            Self::EvenTree { d, n } => {
                if !(2..=3).contains(&d) {
                    return bad(format!("even trees need d in {{2, 3}}, got {d}"));
                }
                if n == 0 {
                    return bad("even trees need n >= 1".into());
                }
            }
            Self::Complete { d, .. } if d < 2 => return bad(format!("complete trees need d >= 2, got {d}")),
            Self::Star { k } if k < 2 => return bad(format!("stars need k >= 2, got {k}")),
            Self::CaterpillarF { n: 0 } => return bad("caterpillars need n >= 1".into()),
            Self::SConstruction { n } if n.contains(&0) => {
                return bad(format!("S construction needs all parts >= 1, got {n:?}"))
            }
            Self::EvenTernaryPair { n1, n2 } if n1 == 0 || n2 == 0 => {
                return bad(format!("pair construction needs n1, n2 >= 1, got {n1}, {n2}"))
            }
            _ => {}
        }
        Ok(())
    }

    pub fn leaf_count(&self) -> Option<usize> {
        match *self {
            Self::EvenTree { n, .. } | Self::CaterpillarF { n } => Some(n),
            Self::Complete { d, h } => d.checked_pow(h),
            Self::Star { k } => Some(k),
            Self::SConstruction { n } => Some(n.iter().sum()),
            Self::WTree { h } => 3usize.checked_pow(h).map(|a| a * 4),
            Self::EvenTernaryPair { n1, n2 } => Some(n1 + n2),
        }
    }
}

/// Builds the tree described by `params`.
pub fn build(params: &ConstructionParams) -> Result<CanonicalTree> {
    params.validate()?;
    let mut even = EvenTrees::default();
    Ok(match *params {
        ConstructionParams::EvenTree { d: 2, n } => even.binary(n),
        ConstructionParams::EvenTree { n, .. } => even.ternary(n),
        ConstructionParams::Complete { d, h } => complete(d, h),
        ConstructionParams::Star { k } => CanonicalTree::star(k)?,
        ConstructionParams::CaterpillarF { n } => {
            let mut t = CanonicalTree::leaf();
            for _ in 1..n {
                t = CanonicalTree::join(vec![t, CanonicalTree::leaf()]);
            }
            t
        }
        ConstructionParams::SConstruction { n: [n1, n2, n3, n4] } => {
            let bottom = CanonicalTree::join(vec![even.binary(n3), even.binary(n4)]);
            let middle = CanonicalTree::join(vec![even.binary(n2), bottom]);
            CanonicalTree::join(vec![even.binary(n1), middle])
        }
        ConstructionParams::WTree { h } => CanonicalTree::join(vec![complete(3, h), complete(3, h + 1)]),
        ConstructionParams::EvenTernaryPair { n1, n2 } => CanonicalTree::join(vec![even.ternary(n1), even.ternary(n2)]),
    })
}

fn complete(d: usize, h: u32) -> CanonicalTree {
    let mut t = CanonicalTree::leaf();
    for _ in 0..h {
        t = CanonicalTree::join(vec![t; d]);
    }
    t
}

/// Memoised even trees so that equal-sized branches share storage.
#[derive(Default)]
struct EvenTrees {
    binary: HashMap<usize, CanonicalTree>,
    ternary: HashMap<usize, CanonicalTree>,
}

impl EvenTrees {
    fn binary(&mut self, n: usize) -> CanonicalTree {
        if n == 1 {
            return CanonicalTree::leaf();
        }
        if let Some(t) = self.binary.get(&n) {
            return t.clone();
        }
        let t = CanonicalTree::join(vec![self.binary(n / 2), self.binary(n - n / 2)]);
        self.binary.insert(n, t.clone());
        t
    }

    fn ternary(&mut self, n: usize) -> CanonicalTree {
        match n {
            1 => return CanonicalTree::leaf(),
            2 => return CanonicalTree::join(vec![CanonicalTree::leaf(), CanonicalTree::leaf()]),
            _ => {}
        }
        if let Some(t) = self.ternary.get(&n) {
            return t.clone();
        }
        let (q, r) = (n / 3, n % 3);
        let parts = (0..3).map(|i| if i < r { q + 1 } else { q });
        let children = parts.map(|k| self.ternary(k)).collect();
        let t = CanonicalTree::join(children);
        self.ternary.insert(n, t.clone());
        t
    }
}

impl fmt::Display for ConstructionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::EvenTree { d, n } => write!(f, "E{d}:{n}"),
            Self::Complete { d, h } => write!(f, "CD:{d},{h}"),
            Self::Star { k } => write!(f, "Star:{k}"),
            Self::CaterpillarF { n } => write!(f, "F:{n}"),
            Self::SConstruction { n: [a, b, c, d] } => write!(f, "S:{a},{b},{c},{d}"),
            Self::WTree { h } => write!(f, "W:{h}"),
            Self::EvenTernaryPair { n1, n2 } => write!(f, "T3:{n1},{n2}"),
        }
    }
}

/// Accepts `E2:n`, `E3:n`, `CD:d,h`, `Star:k`, `F:n`, `S:n1,n2,n3,n4`, `W:h`
/// and `T3:n1,n2`.
impl FromStr for ConstructionParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConstruction(format!("cannot parse {s:?}"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let params = match (kind.trim(), nums.as_slice()) {
            ("E2", &[n]) => Self::EvenTree { d: 2, n },
            ("E3", &[n]) => Self::EvenTree { d: 3, n },
            ("CD", &[d, h]) => Self::Complete {
                d,
                h: u32::try_from(h).map_err(|_| bad())?,
            },
            ("Star", &[k]) => Self::Star { k },
            ("F", &[n]) => Self::CaterpillarF { n },
            ("S", &[a, b, c, d]) => Self::SConstruction { n: [a, b, c, d] },
            ("W", &[h]) => Self::WTree {
                h: u32::try_from(h).map_err(|_| bad())?,
            },
            ("T3", &[n1, n2]) => Self::EvenTernaryPair { n1, n2 },
            _ => return Err(bad()),
        };
        params.validate()?;
        Ok(params)
    }
}
