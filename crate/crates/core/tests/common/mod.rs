//! Shared generators for the integration tests.

#![allow(dead_code)]

use positroid::perm::Permutation;
use positroid::shapes::{k_subsets, lengthadditive_from_paths, path_leq, LatticePath};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A length-additive factorisation `w = x v` of type `(k, n)`.
#[derive(Debug, Clone)]
pub struct Pair {
    pub k: usize,
    pub n: usize,
    pub v: Permutation,
    pub w: Permutation,
    pub x: Permutation,
}

/// Every length-additive pair with `1 <= k < n` and `n` in `ns`, built from
/// pairs of nested lattice paths.
pub fn all_pairs(ns: std::ops::RangeInclusive<usize>) -> Vec<Pair> {
    let mut out = Vec::new();
    for n in ns {
        for k in 1..n {
            let subsets = k_subsets(n, k);
            for a in &subsets {
                let j = LatticePath::from_ne_labels(k, n, a);
                for b in &subsets {
                    let l = LatticePath::from_ne_labels(k, n, b);
                    if path_leq(&j, &l) {
                        let (v, w) = lengthadditive_from_paths(&j, &l, k, n).unwrap();
                        let x = &w * &v.inverse();
                        out.push(Pair { k, n, v, w, x });
                    }
                }
            }
        }
    }
    out
}

/// `count` pairs drawn uniformly (with repetition) from `all_pairs(ns)`.
pub fn random_pairs(ns: std::ops::RangeInclusive<usize>, count: usize, seed: u64) -> Vec<Pair> {
    let all = all_pairs(ns);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| all.choose(&mut rng).unwrap().clone()).collect()
}
