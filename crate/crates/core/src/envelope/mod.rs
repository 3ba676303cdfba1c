//! The envelope-pruned dynamic program for max_{|T| = n} c(pattern, T).
//!
//! For every size n we keep a list L(n) of count pairs (pattern count,
//! companion count) of trees that can occur as fringe subtrees of an optimal
//! tree. The list for n is built from the lists of smaller sizes by combining
//! branch points, then pruned in three ways:
//!
//! 1. a branch point of size m is only used while building size n if no later
//!    point of L(m) trades companion copies for pattern copies at a rate of at
//!    least the number of leaves outside the branch ([`branch_filter`]);
//! 2. dominated points are dropped ([`pareto_prune`]);
//! 3. only the vertices of the upper envelope survive ([`upper_envelope`]).
//!
//! Counts fit in `u128` for every supported n; products used in slope
//! comparisons fall back to arbitrary precision when they would overflow.

mod brute;
mod cache;
mod mode;
mod table;

use std::cmp::Ordering;

use rug::Integer;

pub use brute::{brute_cap, brute_max};
pub use cache::EnvelopeCache;
pub use cache::{parse as parse_cache, serialize as serialize_cache, CACHE_VERSION};
pub use mode::Mode;
pub use table::{compute_envelope, EnvelopeTable, Strategy, ENVELOPE_MAX_N};

/// The count pair of one tree with `n` leaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CountPoint {
    pub n: usize,
    pub primary: u128,
    pub companion: u128,
}

impl CountPoint {
    pub fn new(n: usize, primary: u128, companion: u128) -> Self {
        CountPoint { n, primary, companion }
    }

    /// The single-leaf tree.
    pub fn leaf() -> Self {
        CountPoint::new(1, 0, 0)
    }
}

/// L(n) for one mode: companion counts strictly increasing, pattern counts
/// strictly decreasing, slopes strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeList {
    pub n: usize,
    pub mode: Mode,
    pub points: Vec<CountPoint>,
}

impl EnvelopeList {
    /// Largest pattern count, carried by the first point.
    pub fn max_primary(&self) -> u128 {
        self.points.first().map_or(0, |p| p.primary)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The `<companion> <primary>` lines of the cache format.
    pub fn body(&self) -> String {
        let mut s = String::new();
        for p in &self.points {
            s.push_str(&format!("{} {}\n", p.companion, p.primary));
        }
        s
    }

    /// Checks the ordering and strict concavity invariants.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.points.is_empty() {
            return Err(format!("L({}) is empty", self.n));
        }
        if let Some(p) = self.points.iter().find(|p| p.n != self.n) {
            return Err(format!("point of size {} in L({})", p.n, self.n));
        }
        for w in self.points.windows(2) {
            if w[0].companion >= w[1].companion || w[0].primary <= w[1].primary {
                return Err(format!("L({}) not strictly monotone at {:?}", self.n, w));
            }
        }
        for w in self.points.windows(3) {
            // slope(w0 -> w1) > slope(w1 -> w2)
            if concave_keep(&w[0], &w[1], &w[2]) {
                continue;
            }
            return Err(format!("L({}) slopes not strictly decreasing at {:?}", self.n, w));
        }
        Ok(())
    }
}

/// Which side the tie `slope == m - n` falls on in the branch filter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// A point whose outgoing slope equals the threshold is excluded.
    #[default]
    ExcludeTies,
    /// Only slopes strictly above the threshold exclude a point.
    KeepTies,
}

/// Which pruning steps run; everything on by default.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PruneConfig {
    pub branch_filter: bool,
    pub upper_envelope: bool,
    pub boundary: Boundary,
}

impl Default for PruneConfig {
    fn default() -> Self {
        PruneConfig {
            branch_filter: true,
            upper_envelope: true,
            boundary: Boundary::ExcludeTies,
        }
    }
}

impl PruneConfig {
    /// Dominance pruning only.
    pub fn dominance_only() -> Self {
        PruneConfig {
            branch_filter: false,
            upper_envelope: false,
            boundary: Boundary::ExcludeTies,
        }
    }
}

fn choose2(n: u128) -> u128 {
    n * n.saturating_sub(1) / 2
}

/// A5 / CD22 counts of the binary tree with the two given branches.
pub fn combine_binary(left: &CountPoint, right: &CountPoint) -> CountPoint {
    let (na, nb) = (left.n as u128, right.n as u128);
    CountPoint {
        n: left.n + right.n,
        primary: left.primary + right.primary + na * right.companion + nb * left.companion,
        companion: left.companion + right.companion + choose2(na) * choose2(nb),
    }
}

/// Q4 / S3 counts of the tree with two or three given branches.
pub fn combine_ternary(b1: &CountPoint, b2: &CountPoint, b3: Option<&CountPoint>) -> CountPoint {
    let mut branches = vec![b1, b2];
    branches.extend(b3);
    let total: usize = branches.iter().map(|b| b.n).sum();
    let mut primary = 0u128;
    let mut companion = 0u128;
    for b in &branches {
        primary += b.primary + (total - b.n) as u128 * b.companion;
        companion += b.companion;
    }
    if let Some(b3) = b3 {
        companion += b1.n as u128 * b2.n as u128 * b3.n as u128;
    }
    CountPoint {
        n: total,
        primary,
        companion,
    }
}

/// Compares `a * b` with `c * d` exactly.
fn cmp_products(a: u128, b: u128, c: u128, d: u128) -> Ordering {
    match (a.checked_mul(b), c.checked_mul(d)) {
        (Some(x), Some(y)) => x.cmp(&y),
        _ => (Integer::from(a) * b).cmp(&(Integer::from(c) * d)),
    }
}

/// True when `mid` lies strictly above the chord from `left` to `right`,
/// i.e. slope(left -> mid) > slope(mid -> right). Points are in envelope order.
fn concave_keep(left: &CountPoint, mid: &CountPoint, right: &CountPoint) -> bool {
    let (drop_l, run_l) = (left.primary - mid.primary, mid.companion - left.companion);
    let (drop_r, run_r) = (mid.primary - right.primary, right.companion - mid.companion);
    // -drop_l / run_l > -drop_r / run_r  <=>  drop_r * run_l > drop_l * run_r
    cmp_products(drop_r, run_l, drop_l, run_r) == Ordering::Greater
}

/// The points of `envelope` (for size m) usable as a branch of a tree with
/// `target_n` leaves: the suffix starting at the first point whose slope to
/// its successor is below -`threshold`, where `threshold` is the minimal
/// number of ways to complete a copy outside the branch. The last point is
/// always allowed.
pub fn branch_filter(envelope: &EnvelopeList, target_n: usize, boundary: Boundary) -> &[CountPoint] {
    debug_assert!(target_n > envelope.n);
    let threshold = envelope.mode.outside_weight(target_n - envelope.n);
    let points = &envelope.points;
    let start = points
        .windows(2)
        .position(|w| {
            let drop = w[0].primary - w[1].primary;
            let run = w[1].companion - w[0].companion;
            // slope = -drop / run against -threshold
            match cmp_products(drop, 1, threshold, run) {
                Ordering::Greater => true,
                Ordering::Equal => boundary == Boundary::KeepTies,
                Ordering::Less => false,
            }
        })
        .unwrap_or(points.len().saturating_sub(1));
    &points[start..]
}

/// Removes dominated points (another point at least as good in both counts)
/// and collapses duplicates. Output is sorted by increasing companion count.
pub fn pareto_prune(mut points: Vec<CountPoint>) -> Vec<CountPoint> {
    points.sort_unstable_by(|a, b| b.companion.cmp(&a.companion).then_with(|| b.primary.cmp(&a.primary)));
    let mut kept: Vec<CountPoint> = Vec::with_capacity(points.len());
    for p in points {
        if kept.last().is_none_or(|best| p.primary > best.primary) {
            kept.push(p);
        }
    }
    kept.reverse();
    kept
}

/// Keeps the vertices of the upper envelope of a Pareto-pruned list; points
/// on a chord between two others are removed.
pub fn upper_envelope(points: Vec<CountPoint>, mode: &Mode) -> EnvelopeList {
    let n = points.first().map_or(0, |p| p.n);
    let mut hull: Vec<CountPoint> = Vec::with_capacity(points.len());
    for p in points {
        while hull.len() >= 2 && !concave_keep(&hull[hull.len() - 2], &hull[hull.len() - 1], &p) {
            hull.pop();
        }
        hull.push(p);
    }
    EnvelopeList {
        n,
        mode: mode.clone(),
        points: hull,
    }
}
