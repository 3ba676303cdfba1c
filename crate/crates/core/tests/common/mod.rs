#![allow(dead_code)]

use inducibility::{CanonicalTree, RawTree};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random tree with `n` leaves: repeatedly joins 2..=`max_children` random
/// parts until one remains.
pub fn random_tree(n: usize, max_children: usize, seed: u64) -> CanonicalTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = vec![CanonicalTree::leaf(); n];
    while parts.len() > 1 {
        let k = rng.gen_range(2..=max_children.min(parts.len()));
        parts.shuffle(&mut rng);
        let children = parts.split_off(parts.len() - k);
        parts.push(CanonicalTree::node(children).unwrap());
    }
    parts.pop().unwrap()
}

/// `raw` with every child list shuffled.
pub fn shuffled(raw: &RawTree, rng: &mut ChaCha8Rng) -> RawTree {
    let mut children: Vec<RawTree> = raw.children.iter().map(|c| shuffled(c, rng)).collect();
    children.shuffle(rng);
    RawTree::node(children)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
