//! Tree generators: the tight caterpillar family, seeded random trees, and
//! every small shape.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::rational::Rational;
use crate::tree::RootedTree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

/// Parameters of the caterpillar `T(m, eps)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightFamilyParams {
    m: usize,
    eps: Rational,
}

impl TightFamilyParams {
    /// Requires `m >= 2` and `0 < eps <= 1/(3m(m+1))`.
    pub fn new(m: usize, eps: Rational) -> Result<Self, GenError> {
        if m < 2 {
            return Err(GenError::InvalidParams(format!("m = {m}, need m >= 2")));
        }
        let bound = Rational::new(1, 3 * (m as u64) * (m as u64 + 1)).unwrap();
        if eps.is_zero() || eps > bound {
            return Err(GenError::InvalidParams(format!(
                "eps = {eps}, need 0 < eps <= {bound}"
            )));
        }
        Ok(TightFamilyParams { m, eps })
    }

    /// `eps = 1/(6m(m+1))`, half the largest allowed value.
    pub fn standard(m: usize) -> Result<Self, GenError> {
        let m64 = m as u64;
        Self::new(m, Rational::new(1, 6 * m64 * (m64 + 1)).unwrap())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }
}

/// Spine `s_0..s_m` (ids `0..=m`, `s_0` the root) with two leaves on every
/// spine vertex: `a_i` at id `m+1+2i` and `b_i` at id `m+2+2i`.
///
/// `w(s_0) = 1/3 - m·eps`, `w(s_i) = eps` for `i >= 1`, and every leaf weighs
/// `1/(3(m+1))`. The total is 1, every root-to-leaf path weighs between `1/3`
/// and `1/3 + 1/(3(m+1))`, and no unrelated pair beats `1/3` on both sides.
pub fn gen_tight_family(p: &TightFamilyParams) -> RootedTree {
    let m = p.m;
    let n = 3 * (m + 1);
    let third = Rational::new(1, 3).unwrap();
    // 1/3 - m·eps, kept exact by going through the common denominator.
    let spine_sum = p.eps.scale(m as u64);
    let root_weight = {
        let d = third.denom() * spine_sum.denom();
        let num = third.numer() * spine_sum.denom() - spine_sum.numer() * third.denom();
        Rational::from_biguint(num, d)
    };
    let leaf = Rational::new(1, 3 * (m as u64 + 1)).unwrap();

    let mut parents = vec![None; n];
    let mut weights = vec![leaf; n];
    weights[0] = root_weight;
    for i in 1..=m {
        parents[i] = Some(i - 1);
        weights[i] = p.eps.clone();
    }
    for i in 0..=m {
        parents[m + 1 + 2 * i] = Some(i);
        parents[m + 2 + 2 * i] = Some(i);
    }
    RootedTree::from_parents(parents, weights).expect("caterpillar is a tree")
}

/// Uniform-attachment random tree.
///
/// The stream is `ChaCha8Rng::seed_from_u64(seed)`. For `i = 1..n` the parent
/// of `i` is drawn uniformly from `0..i`; then every vertex `0..n` gets an
/// integer weight drawn uniformly from `0..=max_weight`.
pub fn gen_random_tree(n: usize, seed: u64, max_weight: u64) -> Result<RootedTree, GenError> {
    if n == 0 {
        return Err(GenError::InvalidParams("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parents = Vec::with_capacity(n);
    parents.push(None);
    for i in 1..n {
        parents.push(Some(rng.gen_range(0..i)));
    }
    let weights = random_weights(&mut rng, n, max_weight);
    Ok(RootedTree::from_parents(parents, weights).expect("attachment tree is a tree"))
}

/// `n` integer weights uniform in `0..=max_weight`.
pub fn random_weights(rng: &mut impl Rng, n: usize, max_weight: u64) -> Vec<Rational> {
    (0..n)
        .map(|_| Rational::from_integer(rng.gen_range(0..=max_weight)))
        .collect()
}

/// Every parent array with `parent(i) < i`, unit weights. There are `(n-1)!`.
pub fn all_parent_arrays(n: usize) -> Result<ParentArrays, GenError> {
    if !(1..=9).contains(&n) {
        return Err(GenError::InvalidParams(format!(
            "n = {n}, need 1 <= n <= 9"
        )));
    }
    Ok(ParentArrays {
        digits: vec![0; n],
        done: false,
    })
}

/// Odometer over parent arrays; digit `i` ranges over `0..i`.
#[derive(Clone, Debug)]
pub struct ParentArrays {
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for ParentArrays {
    type Item = RootedTree;

    fn next(&mut self) -> Option<RootedTree> {
        if self.done {
            return None;
        }
        let n = self.digits.len();
        let parents = (0..n).map(|i| (i > 0).then_some(self.digits[i])).collect();
        let tree = RootedTree::from_parents(parents, vec![Rational::one(); n])
            .expect("parent(i) < i is always a tree");
        // Advance the last digit first so the stream starts with the path.
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.digits[i] + 1 < i {
                self.digits[i] += 1;
                break;
            }
            self.digits[i] = 0;
        }
        Some(tree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn cat2_weights() {
        let t = gen_tight_family(&TightFamilyParams::new(2, r("1/20")).unwrap());
        assert_eq!(t.len(), 9);
        assert_eq!(t.weight(0), &r("7/30"));
        assert_eq!(t.weight(1), &r("1/20"));
        assert_eq!(t.weight(2), &r("1/20"));
        for v in 3..9 {
            assert_eq!(t.weight(v), &r("1/9"));
        }
        assert_eq!(t.total_weight(), &Rational::one());
        assert_eq!(t.children(0), &[1, 3, 4]);
        assert_eq!(t.children(2), &[7, 8]);
    }

    #[test]
    fn tight_params_are_checked() {
        assert!(TightFamilyParams::new(1, r("1/100")).is_err());
        assert!(TightFamilyParams::new(2, r("0")).is_err());
        assert!(TightFamilyParams::new(2, r("1/17")).is_err());
        assert!(TightFamilyParams::new(2, r("1/18")).is_ok());
    }

    #[test]
    fn random_tree_is_seeded() {
        let a = gen_random_tree(40, 11, 9).unwrap();
        let b = gen_random_tree(40, 11, 9).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, gen_random_tree(40, 12, 9).unwrap());
        assert_eq!(gen_random_tree(1, 5, 3).unwrap().len(), 1);
        assert!(gen_random_tree(0, 5, 3).is_err());
        for v in 1..a.len() {
            assert!(a.parent(v).unwrap() < v);
        }
    }

    #[test]
    fn shape_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| all_parent_arrays(n).unwrap().count())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 24, 120]);
        assert!(all_parent_arrays(0).is_err());
        assert!(all_parent_arrays(10).is_err());
    }

    #[test]
    fn three_vertex_shapes_are_path_and_cherry() {
        let shapes: Vec<Vec<Option<usize>>> = all_parent_arrays(3)
            .unwrap()
            .map(|t| t.parents().to_vec())
            .collect();
        assert_eq!(
            shapes,
            vec![vec![None, Some(0), Some(0)], vec![None, Some(0), Some(1)]]
        );
    }
}
