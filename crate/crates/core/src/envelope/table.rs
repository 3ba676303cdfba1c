use rug::{Integer, Rational};

use super::{branch_filter, pareto_prune, upper_envelope, CountPoint, EnvelopeCache, EnvelopeList, Mode, PruneConfig};
use crate::count::binomial;
use crate::enumerate::Arity;
use crate::error::{Error, Result};
use crate::tree::CanonicalTree;

/// Largest n any mode will build.
pub const ENVELOPE_MAX_N: usize = 10_000;

/// How the size splits of one L(n) are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        return Strategy::Parallel;
        #[cfg(not(feature = "parallel"))]
        return Strategy::Sequential;
    }
}

/// The lists L(1), ..., L(n) for one mode, grown on demand.
#[derive(Debug)]
pub struct EnvelopeTable {
    mode: Mode,
    prune: PruneConfig,
    strategy: Strategy,
    reverse_splits: bool,
    cache: Option<EnvelopeCache>,
    lists: Vec<EnvelopeList>,
}

/// Branch sizes of one candidate shape, ascending.
type Split = Vec<usize>;

impl EnvelopeTable {
    pub fn new(mode: Mode) -> Self {
        EnvelopeTable {
            lists: vec![EnvelopeList {
                n: 1,
                mode: mode.clone(),
                points: vec![CountPoint::leaf()],
            }],
            mode,
            prune: PruneConfig::default(),
            strategy: Strategy::default(),
            reverse_splits: false,
            cache: None,
        }
    }

    pub fn with_prune(mut self, prune: PruneConfig) -> Self {
        self.prune = prune;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    /// Visits size splits in reverse order; the result must not change.
    pub fn with_reverse_splits(mut self, reverse: bool) -> Self {
        self.reverse_splits = reverse;
        self
    }

    /// Reads and writes lists through `cache`. Only used with the default
    /// pruning configuration.
    pub fn with_cache(mut self, cache: EnvelopeCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    /// Largest n built so far.
    pub fn computed_n(&self) -> usize {
        self.lists.len()
    }

    fn cache(&self) -> Option<&EnvelopeCache> {
        self.cache.as_ref().filter(|_| self.prune == PruneConfig::default())
    }

    /// Builds every list up to `n`.
    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        if n > ENVELOPE_MAX_N {
            return Err(Error::CapExceeded {
                what: "envelope size",
                n,
                cap: ENVELOPE_MAX_N,
            });
        }
        while self.lists.len() < n {
            let m = self.lists.len() + 1;
            let cached = match self.cache() {
                Some(c) => c.load(&self.mode, m)?,
                None => None,
            };
            let list = match cached {
                Some(list) => list,
                None => {
                    let list = self.build(m);
                    if let Some(c) = self.cache() {
                        c.store(&list)?;
                    }
                    list
                }
            };
            // Concavity only holds once the upper envelope has been taken.
            debug_assert!(!self.prune.upper_envelope || list.check_invariants().is_ok());
            self.lists.push(list);
        }
        Ok(())
    }

    /// L(n), building it first if necessary.
    pub fn envelope(&mut self, n: usize) -> Result<&EnvelopeList> {
        if n == 0 {
            return Err(Error::EmptyLeafSet);
        }
        self.extend_to(n)?;
        Ok(&self.lists[n - 1])
    }

    /// Already-built L(n).
    pub fn get(&self, n: usize) -> Option<&EnvelopeList> {
        n.checked_sub(1).and_then(|i| self.lists.get(i))
    }

    pub fn max_count(&mut self, n: usize) -> Result<u128> {
        Ok(self.envelope(n)?.max_primary())
    }

    /// max_count / C(n, |pattern|), zero below the pattern size.
    pub fn max_density(&mut self, n: usize) -> Result<Rational> {
        let k = self.mode.pattern_size();
        if n < k {
            return Ok(Rational::new());
        }
        let c = self.max_count(n)?;
        Ok(Rational::from((Integer::from(c), binomial(n, k))))
    }

    /// max_density(n), checked to be no larger than the density at every
    /// smaller size from the pattern size on.
    pub fn upper_bound(&mut self, n: usize) -> Result<Rational> {
        let k = self.mode.pattern_size();
        if n < k {
            return Err(Error::BelowPatternSize { n, pattern: k });
        }
        let value = self.max_density(n)?;
        let mut prev = self.max_density(k)?;
        for m in k + 1..=n {
            let cur = self.max_density(m)?;
            if cur > prev {
                return Err(Error::NotMonotone {
                    earlier: m - 1,
                    later: m,
                    earlier_value: prev.to_string(),
                    later_value: cur.to_string(),
                });
            }
            prev = cur;
        }
        Ok(value)
    }

    fn splits(&self, n: usize) -> Vec<Split> {
        let mut out = Vec::new();
        for k in 1..=n / 2 {
            out.push(vec![k, n - k]);
        }
        if self.mode.arity() == Arity::Ternary {
            for k1 in 1..=n / 3 {
                for k2 in k1..=(n - k1) / 2 {
                    out.push(vec![k1, k2, n - k1 - k2]);
                }
            }
        }
        if self.reverse_splits {
            out.reverse();
        }
        out
    }

    /// Points of L(m) usable as a branch at size n.
    fn allowed(&self, m: usize, n: usize) -> &[CountPoint] {
        let list = &self.lists[m - 1];
        if self.prune.branch_filter {
            branch_filter(list, n, self.prune.boundary)
        } else {
            &list.points
        }
    }

    fn reduce(&self, points: Vec<CountPoint>) -> Vec<CountPoint> {
        let points = pareto_prune(points);
        if self.prune.upper_envelope {
            upper_envelope(points, &self.mode).points
        } else {
            points
        }
    }

    /// All trees of one split shape, reduced locally; global reduction of the
    /// union gives the same result as reducing everything at once.
    fn candidates(&self, split: &[usize], n: usize) -> Vec<CountPoint> {
        let mut out = Vec::new();
        for_each_multiset(
            split,
            |m| self.allowed(m, n),
            |branches| out.push(self.mode.combine(branches)),
        );
        self.reduce(out)
    }

    fn build(&self, n: usize) -> EnvelopeList {
        let splits = self.splits(n);
        let per_split: Vec<Vec<CountPoint>> = match self.strategy {
            Strategy::Sequential => splits.iter().map(|s| self.candidates(s, n)).collect(),
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                splits.par_iter().map(|s| self.candidates(s, n)).collect()
            }
        };
        let points = self.reduce(per_split.into_iter().flatten().collect());
        EnvelopeList {
            n,
            mode: self.mode.clone(),
            points,
        }
    }

    /// One tree with `n` leaves realising the point at `index` of L(n),
    /// found by searching the splits that could have produced it.
    pub fn witness(&mut self, n: usize, index: usize) -> Result<CanonicalTree> {
        self.extend_to(n)?;
        let target = *self.lists[n - 1]
            .points
            .get(index)
            .ok_or_else(|| Error::InvalidConstruction(format!("L({n}) has no point {index}")))?;
        self.realise(&target)
    }

    fn realise(&self, target: &CountPoint) -> Result<CanonicalTree> {
        if target.n == 1 {
            return Ok(CanonicalTree::leaf());
        }
        for split in self.splits(target.n) {
            let mut found: Option<Vec<CountPoint>> = None;
            for_each_multiset(
                &split,
                |m| self.allowed(m, target.n),
                |branches| {
                    if found.is_none() && self.mode.combine(branches) == *target {
                        found = Some(branches.iter().map(|&&p| p).collect());
                    }
                },
            );
            if let Some(branches) = found {
                let children = branches.iter().map(|b| self.realise(b)).collect::<Result<Vec<_>>>()?;
                return Ok(CanonicalTree::join(children));
            }
        }
        Err(Error::InvalidConstruction(format!("no decomposition of {target:?}")))
    }
}

/// Calls `f` on every multiset of points with one point per entry of `sizes`
/// (ascending); equal sizes draw non-decreasing indices from the same list.
fn for_each_multiset<'a>(sizes: &[usize], list: impl Fn(usize) -> &'a [CountPoint], mut f: impl FnMut(&[&CountPoint])) {
    fn go<'a>(
        sizes: &[usize],
        lists: &[&'a [CountPoint]],
        depth: usize,
        min_index: usize,
        chosen: &mut Vec<&'a CountPoint>,
        f: &mut impl FnMut(&[&CountPoint]),
    ) {
        if depth == sizes.len() {
            f(chosen);
            return;
        }
        let start = if depth > 0 && sizes[depth] == sizes[depth - 1] {
            min_index
        } else {
            0
        };
        for (i, p) in lists[depth].iter().enumerate().skip(start) {
            chosen.push(p);
            go(sizes, lists, depth + 1, i, chosen, f);
            chosen.pop();
        }
    }
    let lists: Vec<&[CountPoint]> = sizes.iter().map(|&m| list(m)).collect();
    go(sizes, &lists, 0, 0, &mut Vec::with_capacity(sizes.len()), &mut f);
}

/// L(n) for `mode` without a cache.
pub fn compute_envelope(n: usize, mode: Mode) -> Result<EnvelopeList> {
    let mut table = EnvelopeTable::new(mode);
    Ok(table.envelope(n)?.clone())
}
