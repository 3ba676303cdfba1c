//! Rooted topological trees in canonical form.
//!
//! A tree is stored with its children sorted by `(leaf_count, key)`, where the
//! key is the nested-parentheses text of the canonical form (`*` for a leaf,
//! `(` children `)` for an internal vertex). Two trees are isomorphic exactly
//! when their keys are equal, so equality, ordering and hashing all go
//! through the key.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An unordered rooted tree with no vertex of outdegree one, in canonical form.
///
/// Cloning is cheap: subtrees are shared behind an `Arc`.
#[derive(Clone)]
pub struct CanonicalTree(Arc<Node>);

struct Node {
    children: Vec<CanonicalTree>,
    leaf_count: usize,
    key: Box<str>,
}

/// A rooted tree with arbitrary child order, as read from text or assembled
/// by hand. Turned into a [`CanonicalTree`] by [`canonicalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTree {
    pub children: Vec<RawTree>,
}

impl RawTree {
    pub fn leaf() -> Self {
        RawTree { children: Vec::new() }
    }

    pub fn node(children: Vec<RawTree>) -> Self {
        RawTree { children }
    }
}

/// Canonical representative of `raw`. Rejects any vertex with exactly one child.
pub fn canonicalize(raw: &RawTree) -> Result<CanonicalTree> {
    match raw.children.len() {
        0 => Ok(CanonicalTree::leaf()),
        1 => Err(Error::OutdegreeOne),
        _ => {
            let children = raw.children.iter().map(canonicalize).collect::<Result<Vec<_>>>()?;
            CanonicalTree::node(children)
        }
    }
}

impl CanonicalTree {
    pub fn leaf() -> Self {
        CanonicalTree(Arc::new(Node {
            children: Vec::new(),
            leaf_count: 1,
            key: "*".into(),
        }))
    }

    /// Joins `children` under a new root. Needs at least two children.
    pub fn node(children: Vec<CanonicalTree>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::OutdegreeOne);
        }
        Ok(Self::join(children))
    }

    /// Like [`CanonicalTree::node`] but for callers that already know there are
    /// at least two children.
    pub(crate) fn join(mut children: Vec<CanonicalTree>) -> Self {
        debug_assert!(children.len() >= 2);
        children.sort();
        let leaf_count = children.iter().map(|c| c.leaf_count()).sum();
        let mut key = String::with_capacity(2 + children.iter().map(|c| c.key().len()).sum::<usize>());
        key.push('(');
        for c in &children {
            key.push_str(c.key());
        }
        key.push(')');
        CanonicalTree(Arc::new(Node {
            children,
            leaf_count,
            key: key.into_boxed_str(),
        }))
    }

    /// Star with `k >= 2` leaves.
    pub fn star(k: usize) -> Result<Self> {
        Self::node(vec![Self::leaf(); k])
    }

    pub fn children(&self) -> &[CanonicalTree] {
        &self.0.children
    }

    pub fn is_leaf(&self) -> bool {
        self.0.children.is_empty()
    }

    pub fn leaf_count(&self) -> usize {
        self.0.leaf_count
    }

    /// The canonical key, identical to the text format.
    pub fn key(&self) -> &str {
        &self.0.key
    }

    /// Largest outdegree over all vertices (0 for a single leaf).
    pub fn max_outdegree(&self) -> usize {
        self.children()
            .iter()
            .map(|c| c.max_outdegree())
            .max()
            .unwrap_or(0)
            .max(self.children().len())
    }

    pub fn is_binary(&self) -> bool {
        self.max_outdegree() <= 2
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.children().iter().map(|c| c.vertex_count()).sum::<usize>()
    }

    pub fn to_raw(&self) -> RawTree {
        RawTree::node(self.children().iter().map(|c| c.to_raw()).collect())
    }

    /// The tree spanned by the chosen leaves, with outdegree-one vertices
    /// suppressed. Leaves are numbered left to right in canonical order,
    /// starting at zero; the order of `leaves` does not matter.
    pub fn induced_subtree(&self, leaves: &[usize]) -> Result<CanonicalTree> {
        if leaves.is_empty() {
            return Err(Error::EmptyLeafSet);
        }
        let mut sorted = leaves.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLeaf(w[0]));
        }
        if let Some(&last) = sorted.last() {
            if last >= self.leaf_count() {
                return Err(Error::LeafOutOfRange {
                    index: last,
                    leaves: self.leaf_count(),
                });
            }
        }
        Ok(self.induce_sorted(&sorted, 0).expect("nonempty selection"))
    }

    /// `selected` is sorted, within `offset..offset + leaf_count`.
    fn induce_sorted(&self, selected: &[usize], offset: usize) -> Option<CanonicalTree> {
        if selected.is_empty() {
            return None;
        }
        if self.is_leaf() {
            return Some(self.clone());
        }
        if selected.len() == self.leaf_count() {
            return Some(self.clone());
        }
        let mut parts = Vec::new();
        let mut start = offset;
        let mut rest = selected;
        for child in self.children() {
            let end = start + child.leaf_count();
            let split = rest.partition_point(|&i| i < end);
            let (mine, tail) = rest.split_at(split);
            if let Some(t) = child.induce_sorted(mine, start) {
                parts.push(t);
            }
            rest = tail;
            start = end;
        }
        match parts.len() {
            0 => None,
            1 => parts.pop(),
            _ => Some(Self::join(parts)),
        }
    }

    /// The tree with leaf `index` removed (and the resulting outdegree-one
    /// vertex suppressed). `None` for a single leaf.
    pub fn remove_leaf(&self, index: usize) -> Result<Option<CanonicalTree>> {
        let n = self.leaf_count();
        if index >= n {
            return Err(Error::LeafOutOfRange { index, leaves: n });
        }
        if n == 1 {
            return Ok(None);
        }
        let keep: Vec<usize> = (0..n).filter(|&i| i != index).collect();
        self.induced_subtree(&keep).map(Some)
    }
}

impl PartialEq for CanonicalTree {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.key() == other.key()
    }
}

impl Eq for CanonicalTree {}

impl Ord for CanonicalTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.leaf_count()
            .cmp(&other.leaf_count())
            .then_with(|| self.key().cmp(other.key()))
    }
}

impl PartialOrd for CanonicalTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for CanonicalTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Display for CanonicalTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl fmt::Debug for CanonicalTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalTree({})", self.key())
    }
}

/// Parses the parentheses format. Whitespace is ignored and children may come
/// in any order.
pub fn parse_raw(text: &str) -> Result<RawTree> {
    let bytes: Vec<(usize, u8)> = text
        .bytes()
        .enumerate()
        .filter(|(_, b)| !b.is_ascii_whitespace())
        .collect();
    let mut pos = 0;
    let tree = parse_at(&bytes, &mut pos)?;
    if pos != bytes.len() {
        return Err(Error::Parse {
            offset: bytes[pos].0,
            message: "trailing input".into(),
        });
    }
    Ok(tree)
}

fn parse_at(bytes: &[(usize, u8)], pos: &mut usize) -> Result<RawTree> {
    let Some(&(offset, b)) = bytes.get(*pos) else {
        return Err(Error::Parse {
            offset: bytes.last().map_or(0, |x| x.0 + 1),
            message: "unexpected end of input".into(),
        });
    };
    match b {
        b'*' => {
            *pos += 1;
            Ok(RawTree::leaf())
        }
        b'(' => {
            *pos += 1;
            let mut children = Vec::new();
            loop {
                match bytes.get(*pos) {
                    Some(&(_, b')')) => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => children.push(parse_at(bytes, pos)?),
                    None => {
                        return Err(Error::Parse {
                            offset,
                            message: "unclosed '('".into(),
                        })
                    }
                }
            }
            Ok(RawTree::node(children))
        }
        other => Err(Error::Parse {
            offset,
            message: format!("unexpected character {:?}", other as char),
        }),
    }
}

impl FromStr for CanonicalTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        canonicalize(&parse_raw(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> CanonicalTree {
        s.parse().unwrap()
    }

    #[test]
    fn leaf_is_its_own_canonical_form() {
        let leaf = canonicalize(&RawTree::leaf()).unwrap();
        assert!(leaf.is_leaf());
        assert_eq!(leaf.key(), "*");
        assert_eq!(leaf.leaf_count(), 1);
    }

    #[test]
    fn mirror_orderings_of_a5_agree() {
        let a = t("(*((**)(**)))");
        let b = t("(((**)(**))*)");
        assert_eq!(a.key(), b.key());
        assert_eq!(a.key(), "(*((**)(**)))");
    }

    #[test]
    fn rejects_outdegree_one() {
        assert!(matches!("((**))".parse::<CanonicalTree>(), Err(Error::OutdegreeOne)));
        assert!(matches!("(*)".parse::<CanonicalTree>(), Err(Error::OutdegreeOne)));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("(**".parse::<CanonicalTree>(), Err(Error::Parse { .. })));
        assert!(matches!("(**))".parse::<CanonicalTree>(), Err(Error::Parse { .. })));
        assert!(matches!("(*x)".parse::<CanonicalTree>(), Err(Error::Parse { .. })));
        assert!(matches!("".parse::<CanonicalTree>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(t(" ( * ( * * ) ) "), t("(*(**))"));
    }

    #[test]
    fn figure_one_induction() {
        // Root with branches: cherry, leaf, and a vertex holding a cherry and two leaves.
        let tree = t("((**)*((**)**))");
        // Canonical leaf order: lone leaf (0), cherry (1, 2), then the 4-leaf
        // branch: its two direct leaves (3, 4) and its inner cherry (5, 6).
        assert_eq!(tree.key(), "(*(**)(**(**)))");
        // ℓ1 = 1 (cherry), ℓ2 = 0 (lone leaf), ℓ3 = 5 (inner cherry), ℓ4 = 3.
        let induced = tree.induced_subtree(&[1, 0, 5, 3]).unwrap();
        assert_eq!(induced, t("(**(**))"));
    }

    #[test]
    fn full_subset_is_identity() {
        let tree = t("((**)(*(**))*)");
        let all: Vec<usize> = (0..tree.leaf_count()).collect();
        assert_eq!(tree.induced_subtree(&all).unwrap(), tree);
    }

    #[test]
    fn induced_errors() {
        let tree = t("((**)(**))");
        assert!(matches!(tree.induced_subtree(&[]), Err(Error::EmptyLeafSet)));
        assert!(matches!(
            tree.induced_subtree(&[0, 4]),
            Err(Error::LeafOutOfRange { index: 4, leaves: 4 })
        ));
        assert!(matches!(tree.induced_subtree(&[1, 1]), Err(Error::DuplicateLeaf(1))));
    }

    #[test]
    fn three_leaves_of_cd22_give_the_caterpillar() {
        let cd22 = t("((**)(**))");
        let cat3 = t("(*(**))");
        for skip in 0..4 {
            let keep: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
            assert_eq!(cd22.induced_subtree(&keep).unwrap(), cat3);
        }
    }

    #[test]
    fn leaves_sort_before_larger_branches() {
        let tree = t("(((**)*)*(**))");
        assert_eq!(tree.key(), "(*(**)(*(**)))");
        assert_eq!(tree.leaf_count(), 6);
        assert_eq!(tree.max_outdegree(), 3);
        assert!(!tree.is_binary());
    }
}
