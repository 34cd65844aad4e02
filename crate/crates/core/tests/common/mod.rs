#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treesplit::{Rational, RootedTree};

pub fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn star() -> RootedTree {
    RootedTree::parse("5\n0 - 0\n1 0 1/4\n2 0 1/4\n3 0 1/4\n4 0 1/4").unwrap()
}

pub fn path3() -> RootedTree {
    RootedTree::parse("3\n0 - 1/3\n1 0 1/3\n2 1 1/3").unwrap()
}

pub fn cat2() -> RootedTree {
    treesplit::gen_tight_family(&treesplit::TightFamilyParams::new(2, r("1/20")).unwrap())
}

/// Naive ancestor-or-self test by walking parent links.
pub fn naive_ancestor(t: &RootedTree, x: usize, y: usize) -> bool {
    let mut v = Some(y);
    while let Some(u) = v {
        if u == x {
            return true;
        }
        v = t.parent(u);
    }
    false
}

pub fn naive_related(t: &RootedTree, x: usize, y: usize) -> bool {
    naive_ancestor(t, x, y) || naive_ancestor(t, y, x)
}

/// Every assignment of every vertex to A, B or neither, no pruning at all.
/// Returns the best `min(w(A), w(B))` and the canonical optimal pair: lowest
/// assigned id in A, then lexicographically smallest A, then B.
pub fn unpruned_best_pair(t: &RootedTree) -> (Rational, Vec<usize>, Vec<usize>) {
    let n = t.len();
    let total = 3usize.pow(n as u32);
    let mut best: Option<(Rational, Vec<usize>, Vec<usize>)> = None;
    for code in 0..total {
        let mut c = code;
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for v in 0..n {
            match c % 3 {
                1 => a.push(v),
                2 => b.push(v),
                _ => {}
            }
            c /= 3;
        }
        if let (Some(&x), Some(&y)) = (a.first(), b.first()) {
            if y < x {
                continue;
            }
        } else if a.is_empty() && !b.is_empty() {
            continue;
        }
        if a.iter().any(|&x| b.iter().any(|&y| naive_related(t, x, y))) {
            continue;
        }
        let wa: Rational = a.iter().map(|&v| t.weight(v)).sum();
        let wb: Rational = b.iter().map(|&v| t.weight(v)).sum();
        let value = wa.min(wb);
        let better = match &best {
            None => true,
            Some((bv, ba, bb)) => value > *bv || (value == *bv && (&a, &b) < (ba, bb)),
        };
        if better {
            best = Some((value, a, b));
        }
    }
    best.unwrap()
}

/// Same shape, fresh integer weights in `0..=max_weight`.
pub fn reweight(t: &RootedTree, seed: u64, max_weight: u64) -> RootedTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = (0..t.len())
        .map(|_| Rational::from_integer(rng.gen_range(0..=max_weight)))
        .collect();
    t.with_weights(w).unwrap()
}

/// Random trees with arbitrary labels (the root need not be 0) and small
/// rational weights, so ties and zero weights show up often.
pub fn arb_tree(max_n: usize) -> impl Strategy<Value = RootedTree> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(any::<prop::sample::Index>(), n),
                prop::collection::vec((0u64..=6, 1u64..=3), n),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
        })
        .prop_map(|(picks, weights, label)| {
            let n = label.len();
            let mut parents = vec![None; n];
            for i in 1..n {
                parents[label[i]] = Some(label[picks[i].index(i)]);
            }
            let weights = weights
                .into_iter()
                .map(|(p, q)| Rational::new(p, q).unwrap())
                .collect();
            RootedTree::from_parents(parents, weights).unwrap()
        })
}
