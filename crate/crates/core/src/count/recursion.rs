//! Branch recursions, memoised over fringe subtrees by canonical key.

use std::collections::HashMap;

use rug::Integer;

use super::binomial;
use super::pattern::GeneralPattern;
use crate::error::{Error, Result};
use crate::tree::CanonicalTree;

/// Bottom-up fold over fringe subtrees; isomorphic subtrees are evaluated once.
fn fold<'a, T: Clone>(
    tree: &'a CanonicalTree,
    memo: &mut HashMap<&'a str, T>,
    leaf: &T,
    node: &impl Fn(&[(usize, T)]) -> T,
) -> T {
    if tree.is_leaf() {
        return leaf.clone();
    }
    if let Some(v) = memo.get(tree.key()) {
        return v.clone();
    }
    let parts: Vec<(usize, T)> = tree
        .children()
        .iter()
        .map(|c| (c.leaf_count(), fold(c, memo, leaf, node)))
        .collect();
    let v = node(&parts);
    memo.insert(tree.key(), v.clone());
    v
}

fn run<T: Clone>(tree: &CanonicalTree, leaf: T, node: impl Fn(&[(usize, T)]) -> T) -> T {
    fold(tree, &mut HashMap::new(), &leaf, &node)
}

/// Elementary symmetric polynomial e_k of the branch sizes.
fn elementary(sizes: impl Iterator<Item = usize>, k: usize) -> Integer {
    let mut e = vec![Integer::new(); k + 1];
    e[0] = Integer::from(1);
    for s in sizes {
        for j in (1..=k).rev() {
            let add = Integer::from(&e[j - 1] * s);
            e[j] += add;
        }
    }
    e.swap_remove(k)
}

/// Σ over ordered pairs i ≠ j of |T_i| · c_j.
fn leaf_times_other(parts: &[(usize, Integer, Integer)]) -> Integer {
    let total_leaves: usize = parts.iter().map(|p| p.0).sum();
    parts
        .iter()
        .map(|(n, _, c)| Integer::from(c * (total_leaves - n)))
        .sum()
}

/// (c(A5, T), c(CD22, T)). Valid for any topological tree.
pub(crate) fn a5_pair(tree: &CanonicalTree) -> (Integer, Integer) {
    run(tree, (Integer::new(), Integer::new()), |parts| {
        let flat: Vec<(usize, Integer, Integer)> = parts.iter().map(|(n, (a, c))| (*n, a.clone(), c.clone())).collect();
        let a5 = flat.iter().map(|p| &p.1).sum::<Integer>() + leaf_times_other(&flat);
        let pair_sizes = parts.iter().map(|(n, _)| binomial(*n, 2));
        let mut cd = flat.iter().map(|p| &p.2).sum::<Integer>();
        // Σ_{i<j} C(n_i,2) C(n_j,2)
        let mut prefix = Integer::new();
        for b in pair_sizes {
            cd += Integer::from(&prefix * &b);
            prefix += b;
        }
        (a5, cd)
    })
}

/// (c(Q_k, T), c(S_{k-1}, T)) for k >= 3. Valid for any topological tree.
pub(crate) fn star_companion_pair(tree: &CanonicalTree, k: usize) -> (Integer, Integer) {
    run(tree, (Integer::new(), Integer::new()), |parts| {
        let flat: Vec<(usize, Integer, Integer)> = parts.iter().map(|(n, (q, s))| (*n, q.clone(), s.clone())).collect();
        let q = flat.iter().map(|p| &p.1).sum::<Integer>() + leaf_times_other(&flat);
        let s = flat.iter().map(|p| &p.2).sum::<Integer>() + elementary(parts.iter().map(|p| p.0), k - 1);
        (q, s)
    })
}

/// c(S_k, T). Valid for any topological tree.
pub(crate) fn star_counts(tree: &CanonicalTree, k: usize) -> Integer {
    run(tree, Integer::new(), |parts| {
        parts.iter().map(|p| &p.1).sum::<Integer>() + elementary(parts.iter().map(|p| p.0), k)
    })
}

fn require_arity(tree: &CanonicalTree, max: usize) -> Result<()> {
    let found = tree.max_outdegree();
    if found > max {
        return Err(Error::Arity { max, found });
    }
    Ok(())
}

/// Copies of A5 in a binary tree.
pub fn count_a5(tree: &CanonicalTree) -> Result<Integer> {
    require_arity(tree, 2)?;
    Ok(a5_pair(tree).0)
}

/// Copies of CD22 in a binary tree.
pub fn count_cd22(tree: &CanonicalTree) -> Result<Integer> {
    require_arity(tree, 2)?;
    Ok(a5_pair(tree).1)
}

/// Copies of Q4 in a ternary tree.
pub fn count_q4(tree: &CanonicalTree) -> Result<Integer> {
    require_arity(tree, 3)?;
    Ok(star_companion_pair(tree, 4).0)
}

/// Copies of S3 in a ternary tree.
pub fn count_s3(tree: &CanonicalTree) -> Result<Integer> {
    require_arity(tree, 3)?;
    Ok(star_companion_pair(tree, 4).1)
}

/// Copies of the star S_k (k >= 2) in any tree.
pub fn count_star(tree: &CanonicalTree, k: usize) -> Integer {
    star_counts(tree, k)
}

/// Copies of Q_k (k >= 3) in any tree.
pub fn count_qk(tree: &CanonicalTree, k: usize) -> Result<Integer> {
    if k < 3 {
        return Err(Error::UnknownPattern(format!("Qk:{k}")));
    }
    Ok(star_companion_pair(tree, k).0)
}

/// (c(B, T), c(B2, T)) for an eligible pattern B in a binary tree.
pub fn count_general(pattern: &GeneralPattern, tree: &CanonicalTree) -> Result<(Integer, Integer)> {
    require_arity(tree, 2)?;
    let s1 = pattern.b1_size();
    let (s21, s22) = pattern.b2_branch_sizes();
    let iso = pattern.branches_isomorphic();
    Ok(run(tree, (Integer::new(), Integer::new()), |parts| {
        let [(na, (ba, ca)), (nb, (bb, cb))] = [&parts[0], &parts[1]];
        let mut cross = binomial(*na, s1) * cb + binomial(*nb, s1) * ca;
        if iso {
            cross /= 2;
        }
        let b = Integer::from(ba + bb) + cross;
        let mut cross2 = binomial(*na, s21) * binomial(*nb, s22) + binomial(*nb, s21) * binomial(*na, s22);
        if s21 == s22 {
            cross2 /= 2;
        }
        let c = Integer::from(ca + cb) + cross2;
        (b, c)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build, ConstructionParams};

    fn t(s: &str) -> CanonicalTree {
        s.parse().unwrap()
    }

    #[test]
    fn small_values() {
        let cd22 = t("((**)(**))");
        assert_eq!(count_cd22(&cd22).unwrap(), 1);
        let cd23 = build(&ConstructionParams::Complete { d: 2, h: 3 }).unwrap();
        assert_eq!(count_a5(&cd23).unwrap(), 8);
        assert_eq!(count_cd22(&cd23).unwrap(), 38);
        assert_eq!(count_s3(&t("(***)")).unwrap(), 1);
        assert_eq!(count_q4(&t("(*(***))")).unwrap(), 1);
        let cd32 = build(&ConstructionParams::Complete { d: 3, h: 2 }).unwrap();
        assert_eq!(count_q4(&cd32).unwrap(), 18);
        assert_eq!(count_s3(&cd32).unwrap(), 30);
    }

    #[test]
    fn arity_errors() {
        assert!(matches!(count_a5(&t("(***)")), Err(Error::Arity { max: 2, found: 3 })));
        assert!(matches!(count_q4(&t("(****)")), Err(Error::Arity { max: 3, found: 4 })));
    }

    #[test]
    fn general_a5_full_tree() {
        let e5 = t("((**)(*(**)))");
        let g = GeneralPattern::new(e5.clone()).unwrap();
        assert_eq!(count_general(&g, &e5).unwrap().0, 1);
    }

    #[test]
    fn elementary_symmetric() {
        assert_eq!(elementary([1, 2, 3].into_iter(), 2), 11);
        assert_eq!(elementary([1, 2, 3].into_iter(), 3), 6);
        assert_eq!(elementary([4, 5].into_iter(), 3), 0);
    }
}
