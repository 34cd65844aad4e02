mod common;

use std::time::Instant;

use common::r;
use treesplit::{
    gen_tight_family, oracle_best_pair, oracle_best_pair_jobs, oracle_best_path, Rational,
    RootedTree, TightFamilyParams,
};

fn leaf_paths(t: &RootedTree) -> Vec<Rational> {
    (0..t.len())
        .filter(|&v| t.children(v).is_empty())
        .map(|v| t.weight_of(&t.root_path(v).unwrap()).unwrap())
        .collect()
}

fn expected_path(m: u64) -> Rational {
    r("1/3") + Rational::new(1, 3 * (m + 1)).unwrap()
}

#[test]
fn family_properties() {
    for m in 2..=8usize {
        let t = gen_tight_family(&TightFamilyParams::standard(m).unwrap());
        assert_eq!(t.total_weight(), &Rational::one());
        assert!(t.weights().iter().all(|w| !w.is_zero()));
        for w in leaf_paths(&t) {
            assert!(w >= r("1/3") && w <= expected_path(m as u64), "m {m}: {w}");
        }
        assert_eq!(oracle_best_path(&t), expected_path(m as u64));
        // Proper spine prefixes stay below a third; the whole spine is exactly a third.
        for s in 0..m {
            assert!(t.weight_of(&t.root_path(s).unwrap()).unwrap() < r("1/3"));
        }
        assert_eq!(t.weight_of(&t.root_path(m).unwrap()).unwrap(), r("1/3"));
        // The a-leaves against the b-leaves.
        let a: Vec<usize> = (0..=m).map(|i| m + 1 + 2 * i).collect();
        let b: Vec<usize> = (0..=m).map(|i| m + 2 + 2 * i).collect();
        assert!(t.are_unrelated_sets(&a, &b).unwrap());
        assert_eq!(t.weight_of(&a).unwrap(), r("1/3"));
        assert_eq!(t.weight_of(&b).unwrap(), r("1/3"));
    }
}

#[test]
fn witness_value_decreases_toward_a_third() {
    let values: Vec<Rational> = (2..=8u64).map(expected_path).collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn oracle_pair_value_is_exactly_a_third() {
    for m in 2..=5 {
        let t = gen_tight_family(&TightFamilyParams::standard(m).unwrap());
        let res = oracle_best_pair(&t, 30).unwrap();
        assert_eq!(res.best_pair_value, r("1/3"), "m {m}");
        assert_eq!(res.best_path_weight, expected_path(m as u64));
    }
}

#[test]
fn m5_with_eps_one_hundredth() {
    let t = gen_tight_family(&TightFamilyParams::new(5, r("1/100")).unwrap());
    assert_eq!(t.len(), 18);
    let start = Instant::now();
    let res = oracle_best_pair_jobs(&t, 18, 4).unwrap();
    eprintln!("m=5 oracle: {:?}", start.elapsed());
    assert_eq!(res.best_pair_value, r("1/3"));
    assert_eq!(res.best_path_weight, r("1/3") + r("1/18"));
}
