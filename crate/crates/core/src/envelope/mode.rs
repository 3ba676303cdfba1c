use std::fmt;
use std::str::FromStr;

use super::{combine_binary, combine_ternary, CountPoint};
use crate::count::{GeneralPattern, PatternSpec};
use crate::enumerate::Arity;
use crate::error::{Error, Result};

/// Which pattern the dynamic program maximises, and over which trees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// A5 with companion CD22, binary trees.
    A5Binary,
    /// Q4 with companion S3, trees of outdegree at most three.
    Q4Ternary,
    /// An eligible pattern B with companion B2, binary trees.
    General(GeneralPattern),
}

fn choose_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

impl Mode {
    pub fn pattern_size(&self) -> usize {
        match self {
            Mode::A5Binary => 5,
            Mode::Q4Ternary => 4,
            Mode::General(g) => g.size(),
        }
    }

    pub fn arity(&self) -> Arity {
        match self {
            Mode::Q4Ternary => Arity::Ternary,
            _ => Arity::Binary,
        }
    }

    pub fn pattern_spec(&self) -> PatternSpec {
        match self {
            Mode::A5Binary => PatternSpec::a5(),
            Mode::Q4Ternary => PatternSpec::q4(),
            Mode::General(g) => PatternSpec::general(g.tree().clone()).expect("eligible"),
        }
    }

    /// The `mode=` value of the cache header.
    pub fn tag(&self) -> String {
        match self {
            Mode::A5Binary => "A5".into(),
            Mode::Q4Ternary => "Q4".into(),
            Mode::General(g) => format!("GEN:{}", g.tree().key()),
        }
    }

    /// A file-system safe directory name for the cache.
    pub fn dir_name(&self) -> String {
        match self {
            Mode::A5Binary => "a5".into(),
            Mode::Q4Ternary => "q4".into(),
            Mode::General(g) => {
                let body: String = g
                    .tree()
                    .key()
                    .chars()
                    .map(|c| match c {
                        '(' => 'L',
                        ')' => 'R',
                        _ => 'x',
                    })
                    .collect();
                format!("gen-{body}")
            }
        }
    }

    /// Count point of the tree whose branches carry the given points.
    /// Binary modes take exactly two branches.
    pub fn combine(&self, branches: &[&CountPoint]) -> CountPoint {
        match (self, branches) {
            (Mode::A5Binary, [a, b]) => combine_binary(a, b),
            (Mode::Q4Ternary, [a, b]) => combine_ternary(a, b, None),
            (Mode::Q4Ternary, [a, b, c]) => combine_ternary(a, b, Some(c)),
            (Mode::General(g), [a, b]) => combine_general(g, a, b),
            _ => panic!("{} branches are not valid in mode {}", branches.len(), self.tag()),
        }
    }

    /// Lower bound on the pattern copies each companion copy inside a branch
    /// completes to, given `outside` leaves not in that branch.
    pub fn outside_weight(&self, outside: usize) -> u128 {
        match self {
            Mode::A5Binary | Mode::Q4Ternary => outside as u128,
            Mode::General(g) => choose_u128(outside, g.b1_size()),
        }
    }
}

fn combine_general(g: &GeneralPattern, a: &CountPoint, b: &CountPoint) -> CountPoint {
    let s1 = g.b1_size();
    let (s21, s22) = g.b2_branch_sizes();
    let mut cross = choose_u128(a.n, s1) * b.companion + choose_u128(b.n, s1) * a.companion;
    if g.branches_isomorphic() {
        cross /= 2;
    }
    let mut cross2 = choose_u128(a.n, s21) * choose_u128(b.n, s22) + choose_u128(b.n, s21) * choose_u128(a.n, s22);
    if s21 == s22 {
        cross2 /= 2;
    }
    CountPoint {
        n: a.n + b.n,
        primary: a.primary + b.primary + cross,
        companion: a.companion + b.companion + cross2,
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// Accepts `a5`, `q4` or `gen:<tree>` (case-insensitive prefix), as well as
/// the cache tags `A5`, `Q4`, `GEN:<tree>`.
impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "a5" => return Ok(Mode::A5Binary),
            "q4" => return Ok(Mode::Q4Ternary),
            _ => {}
        }
        if s.len() > 4 && s[..4].eq_ignore_ascii_case("gen:") {
            let tree = s[4..].parse()?;
            return Ok(Mode::General(GeneralPattern::new(tree)?));
        }
        Err(Error::UnknownPattern(s.to_owned()))
    }
}
