mod common;

use common::{arb_tree, cat2, r};
use proptest::prelude::*;
use treesplit::{
    best_root_path, branches_of, build_partition, gen_random_tree, partition::replay, Color,
    PartitionResult, Rational, RootedTree,
};

fn check_structure(t: &RootedTree, res: &PartitionResult) -> Result<(), String> {
    let n = t.len();
    if !t.are_unrelated_sets(&res.a, &res.b).unwrap() {
        return Err("A and B are related".into());
    }
    let mut seen = vec![0u8; n];
    for &v in res.a.iter().chain(&res.b).chain(&res.residual_path) {
        seen[v] += 1;
    }
    if seen.iter().any(|&c| c != 1) {
        return Err(format!("A, B, residual do not partition V: {seen:?}"));
    }
    if let Some(&last) = res.residual_path.last() {
        if t.root_path(last).unwrap() != res.residual_path {
            return Err("residual is not a root path".into());
        }
    }
    // Colored vertices are exactly the root path to r*.
    let spine = t.root_path(res.r_star).unwrap();
    let colored: Vec<usize> = res.colors.keys().copied().collect();
    let mut sorted_spine = spine.clone();
    sorted_spine.sort_unstable();
    if colored != sorted_spine || res.colors.values().any(|&c| c == Color::Uncolored) {
        return Err("colored set is not the spine".into());
    }
    if !t.children(res.r_star).is_empty() {
        return Err("r* is not a leaf".into());
    }
    if t.weight_of(&res.a).unwrap() != res.weight_a || t.weight_of(&res.b).unwrap() != res.weight_b
    {
        return Err("reported weights are wrong".into());
    }
    let (a, b, colors) = replay(t, &res.trace);
    if a != res.a || b != res.b || colors != res.color_vec(n) {
        return Err("trace replay differs".into());
    }
    Ok(())
}

fn guarantee_holds(t: &RootedTree, res: &PartitionResult) -> bool {
    let (_, best) = best_root_path(t);
    let w = t.total_weight();
    best.scale(3) >= *w || (res.weight_a.scale(3) >= *w && res.weight_b.scale(3) >= *w)
}

#[test]
fn structure_and_guarantee_on_random_trees() {
    let mut conditioned = 0;
    for seed in 0..10_000u64 {
        let n = 1 + (seed % 60) as usize;
        let max_w = [1, 3, 10, 1000][(seed % 4) as usize];
        let t = gen_random_tree(n, seed, max_w).unwrap();
        let res = build_partition(&t);
        check_structure(&t, &res).unwrap_or_else(|e| panic!("seed {seed}: {e}\n{}", t.to_text()));
        assert!(guarantee_holds(&t, &res), "seed {seed}\n{}", t.to_text());
        let (_, best) = best_root_path(&t);
        if best.scale(3) < *t.total_weight() {
            conditioned += 1;
        }
    }
    // Make sure the conditional guarantee was actually exercised.
    assert!(
        conditioned > 3_000,
        "only {conditioned} trees without a heavy path"
    );
}

#[test]
fn spine_follows_branches_of() {
    for seed in 0..500u64 {
        let t = gen_random_tree(1 + (seed % 40) as usize, seed, 4).unwrap();
        let res = build_partition(&t);
        let spine = t.root_path(res.r_star).unwrap();
        for w in spine.windows(2) {
            let br = branches_of(&t, w[0]);
            assert_eq!(br.last().unwrap().root, w[1], "seed {seed}");
        }
    }
}

#[test]
fn cat2_branches_at_root() {
    let br = branches_of(&cat2(), 0);
    let roots: Vec<usize> = br.iter().map(|b| b.root).collect();
    assert_eq!(roots, vec![3, 4, 1]);
    assert_eq!(br[0].weight, r("1/9"));
    assert_eq!(br[1].weight, r("1/9"));
    // {1,2,5,6,7,8}: 1/20 + 1/20 + 4/9
    assert_eq!(br[2].weight, r("1/20") + r("1/20") + r("4/9"));
    let mut sub = cat2().index().subtree(1).to_vec();
    sub.sort_unstable();
    assert_eq!(sub, vec![1, 2, 5, 6, 7, 8]);
}

#[test]
fn deep_path_and_wide_star() {
    let n = 300_000;
    let path = RootedTree::from_parents(
        (0..n).map(|i: usize| i.checked_sub(1)).collect(),
        vec![Rational::one(); n],
    )
    .unwrap();
    let res = build_partition(&path);
    assert_eq!(res.r_star, n - 1);
    assert_eq!(res.residual_path, vec![0]);
    assert_eq!(res.a.len(), n - 1);

    let star = RootedTree::from_parents(
        (0..n).map(|i| (i > 0).then_some(0)).collect(),
        vec![Rational::one(); n],
    )
    .unwrap();
    let res = build_partition(&star);
    check_structure(&star, &res).unwrap();
    assert_eq!(res.a.len() + res.b.len(), n - 1);
}

proptest! {
    #[test]
    fn invariants_on_relabeled_trees(t in arb_tree(40)) {
        let res = build_partition(&t);
        prop_assert!(check_structure(&t, &res).is_ok(), "{:?}", check_structure(&t, &res));
        prop_assert!(guarantee_holds(&t, &res));
    }

    #[test]
    fn deterministic(t in arb_tree(40)) {
        prop_assert_eq!(build_partition(&t), build_partition(&t));
    }

    #[test]
    fn scale_invariant(t in arb_tree(40), p in 1u64..50, q in 1u64..50) {
        let k = Rational::new(p, q).unwrap();
        let scaled = t.with_weights(t.weights().iter().map(|w| w * &k).collect()).unwrap();
        let x = build_partition(&t);
        let y = build_partition(&scaled);
        prop_assert_eq!(x.a, y.a);
        prop_assert_eq!(x.b, y.b);
        prop_assert_eq!(x.colors, y.colors);
        prop_assert_eq!(x.r_star, y.r_star);
        prop_assert_eq!(x.residual_path, y.residual_path);
    }
}
