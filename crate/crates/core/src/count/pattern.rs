use std::fmt;
use std::str::FromStr;

use crate::enumerate::{enumerate_trees, Arity};
use crate::error::{Error, Result};
use crate::tree::CanonicalTree;

/// A binary pattern B whose branches are B1 and B2 = (B21, B22) with
/// 1 <= |B1|, |B21|, |B22| <= 3.
///
/// Sub-patterns with at most three leaves are unique per size in binary trees,
/// so copies of B can be counted from the pair (c(B, ·), c(B2, ·)) alone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralPattern {
    tree: CanonicalTree,
    b1: CanonicalTree,
    b2: CanonicalTree,
    b21: usize,
    b22: usize,
}

impl GeneralPattern {
    pub fn new(tree: CanonicalTree) -> Result<Self> {
        if !tree.is_binary() || tree.is_leaf() {
            return Err(Error::Ineligible(tree.key().to_owned()));
        }
        let [x, y] = [tree.children()[0].clone(), tree.children()[1].clone()];
        // Children are sorted, so `y` is the larger branch; try it as B2 first.
        for (b1, b2) in [(&x, &y), (&y, &x)] {
            if b1.leaf_count() > 3 || b2.is_leaf() {
                continue;
            }
            let (s21, s22) = (b2.children()[0].leaf_count(), b2.children()[1].leaf_count());
            if s21 <= 3 && s22 <= 3 {
                return Ok(GeneralPattern {
                    b1: b1.clone(),
                    b2: b2.clone(),
                    b21: s21,
                    b22: s22,
                    tree,
                });
            }
        }
        Err(Error::Ineligible(tree.key().to_owned()))
    }

    pub fn tree(&self) -> &CanonicalTree {
        &self.tree
    }

    /// The companion pattern B2.
    pub fn companion(&self) -> &CanonicalTree {
        &self.b2
    }

    pub fn b1_size(&self) -> usize {
        self.b1.leaf_count()
    }

    /// Leaf counts of the two branches of B2, smaller first.
    pub fn b2_branch_sizes(&self) -> (usize, usize) {
        (self.b21, self.b22)
    }

    /// B1 and B2 isomorphic, in which case the cross term counts each copy once.
    pub fn branches_isomorphic(&self) -> bool {
        self.b1 == self.b2
    }

    pub fn size(&self) -> usize {
        self.tree.leaf_count()
    }
}

/// All eligible binary patterns, in canonical order.
pub fn eligible_patterns() -> Vec<GeneralPattern> {
    (3..=9)
        .flat_map(|n| enumerate_trees(n, Arity::Binary).expect("below cap"))
        .filter_map(|t| GeneralPattern::new(t).ok())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PatternId {
    A5,
    CD22,
    Q4,
    S3,
    Star(usize),
    Qk(usize),
    General(GeneralPattern),
    /// Any other tree; counted by subset enumeration.
    Tree,
}

/// A countable pattern: its tree plus the route used to count it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternSpec {
    id: PatternId,
    tree: CanonicalTree,
}

impl PatternSpec {
    pub fn a5() -> Self {
        Self::from_tree("(*((**)(**)))".parse().expect("literal"))
    }

    pub fn cd22() -> Self {
        Self::from_tree("((**)(**))".parse().expect("literal"))
    }

    pub fn q4() -> Self {
        Self::from_tree("(*(***))".parse().expect("literal"))
    }

    pub fn s3() -> Self {
        Self::from_tree("(***)".parse().expect("literal"))
    }

    pub fn star(k: usize) -> Result<Self> {
        Ok(Self::from_tree(CanonicalTree::star(k)?))
    }

    /// Q_k: branches S_{k-1} and a single leaf, k >= 3.
    pub fn qk(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::UnknownPattern(format!("Qk:{k}")));
        }
        let tree = CanonicalTree::join(vec![CanonicalTree::leaf(), CanonicalTree::star(k - 1)?]);
        Ok(Self::from_tree(tree))
    }

    pub fn general(tree: CanonicalTree) -> Result<Self> {
        let g = GeneralPattern::new(tree.clone())?;
        Ok(PatternSpec {
            id: PatternId::General(g),
            tree,
        })
    }

    /// Identifies the most specific counting route for `tree`.
    pub fn from_tree(tree: CanonicalTree) -> Self {
        let id = match tree.key() {
            "(*((**)(**)))" => PatternId::A5,
            "((**)(**))" => PatternId::CD22,
            "(*(***))" => PatternId::Q4,
            "(***)" => PatternId::S3,
            _ if tree.children().len() >= 2 && tree.children().iter().all(CanonicalTree::is_leaf) => {
                PatternId::Star(tree.leaf_count())
            }
            _ if is_qk(&tree) => PatternId::Qk(tree.leaf_count()),
            _ => match GeneralPattern::new(tree.clone()) {
                Ok(g) => PatternId::General(g),
                Err(_) => PatternId::Tree,
            },
        };
        PatternSpec { id, tree }
    }

    pub fn id(&self) -> &PatternId {
        &self.id
    }

    pub fn tree(&self) -> &CanonicalTree {
        &self.tree
    }

    pub fn size(&self) -> usize {
        self.tree.leaf_count()
    }

    /// The pattern whose count accompanies this one in its recursion.
    pub fn companion(&self) -> Option<PatternSpec> {
        match &self.id {
            PatternId::A5 => Some(Self::cd22()),
            PatternId::Q4 => Some(Self::s3()),
            PatternId::Qk(k) => Self::star(k - 1).ok(),
            PatternId::General(g) => Some(Self::from_tree(g.companion().clone())),
            _ => None,
        }
    }
}

fn is_qk(tree: &CanonicalTree) -> bool {
    let c = tree.children();
    c.len() == 2 && c[0].is_leaf() && c[1].children().len() >= 2 && c[1].children().iter().all(CanonicalTree::is_leaf)
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.id {
            PatternId::A5 => f.write_str("A5"),
            PatternId::CD22 => f.write_str("CD22"),
            PatternId::Q4 => f.write_str("Q4"),
            PatternId::S3 => f.write_str("S3"),
            PatternId::Star(k) => write!(f, "Sk:{k}"),
            PatternId::Qk(k) => write!(f, "Qk:{k}"),
            PatternId::General(_) | PatternId::Tree => f.write_str(self.tree.key()),
        }
    }
}

/// Accepts `A5`, `CD22`, `Q4`, `S3`, `Sk:<k>`, `Qk:<k>` or a tree in the
/// parentheses format.
impl FromStr for PatternSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unknown = || Error::UnknownPattern(s.to_owned());
        // Names are case-insensitive; tree keys are not affected.
        let upper = s.to_ascii_uppercase();
        match upper.as_str() {
            "A5" => return Ok(Self::a5()),
            "CD22" => return Ok(Self::cd22()),
            "Q4" => return Ok(Self::q4()),
            "S3" => return Ok(Self::s3()),
            _ => {}
        }
        if let Some(k) = upper.strip_prefix("SK:") {
            return Self::star(k.parse().map_err(|_| unknown())?);
        }
        if let Some(k) = upper.strip_prefix("QK:") {
            return Self::qk(k.parse().map_err(|_| unknown())?);
        }
        if s.starts_with('(') || s == "*" {
            return Ok(Self::from_tree(s.parse()?));
        }
        Err(unknown())
    }
}
