//! Exhaustive ground truth for small trees.
//!
//! Nothing here shares code with the greedy construction or the prefix-sum
//! path search: root paths are summed by walking parent links, and the best
//! unrelated pair comes from a depth-first search over every assignment of
//! vertices to `A`, `B` or neither.

use std::cmp::Ordering;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mass::{Mass, Masses};
use crate::rational::Rational;
use crate::tree::RootedTree;

pub const DEFAULT_MAX_N: usize = 15;

/// Vertex sets are bitmasks, so no search can go past this.
const MASK_BITS: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("tree has {n} vertices, more than the oracle limit of {max_n}")]
    TooLarge { n: usize, max_n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub best_path_weight: Rational,
    /// Max over unrelated pairs of `min(w(A), w(B))`.
    pub best_pair_value: Rational,
    /// Canonical optimal pair: the smallest assigned id is in `a`, then `a`
    /// and `b` are lexicographically smallest as sorted lists.
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// Heaviest root path weight, one parent walk per vertex.
pub fn oracle_best_path(t: &RootedTree) -> Rational {
    let mut best = Rational::zero();
    for u in 0..t.len() {
        let mut sum = Rational::zero();
        let mut v = Some(u);
        while let Some(x) = v {
            sum += t.weight(x);
            v = t.parent(x);
        }
        if sum > best {
            best = sum;
        }
    }
    best
}

pub fn oracle_best_pair(t: &RootedTree, max_n: usize) -> Result<OracleResult, OracleError> {
    oracle_best_pair_jobs(t, max_n, 1)
}

/// Same result as [`oracle_best_pair`], with the search split over `jobs`
/// threads. The output does not depend on `jobs`.
pub fn oracle_best_pair_jobs(
    t: &RootedTree,
    max_n: usize,
    jobs: usize,
) -> Result<OracleResult, OracleError> {
    let n = t.len();
    if n > max_n || n > MASK_BITS {
        return Err(OracleError::TooLarge {
            n,
            max_n: max_n.min(MASK_BITS),
        });
    }
    let scaled = t.scaled();
    let (value, a, b) = match &scaled.masses {
        Masses::Small(m) => search(t, m, &scaled.denom, jobs),
        Masses::Big(m) => search(t, m, &scaled.denom, jobs),
    };
    Ok(OracleResult {
        best_path_weight: oracle_best_path(t),
        best_pair_value: value,
        a,
        b,
    })
}

/// True iff the heavier of the best path and the best pair reaches `W/3`.
pub fn theorem_check(t: &RootedTree, max_n: usize) -> Result<bool, OracleError> {
    let res = oracle_best_pair(t, max_n)?;
    let best = res.best_path_weight.max(res.best_pair_value);
    Ok(best.scale(3) >= *t.total_weight())
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let i = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(i)
    })
}

/// Lexicographic order of the sorted member lists of two masks.
fn lex_cmp(mut x: u128, mut y: u128) -> Ordering {
    loop {
        match (x == 0, y == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (i, j) = (x.trailing_zeros(), y.trailing_zeros());
        if i != j {
            return i.cmp(&j);
        }
        x &= x - 1;
        y &= y - 1;
    }
}

#[derive(Clone, Debug)]
struct Candidate<M> {
    value: M,
    a: u128,
    b: u128,
}

impl<M: Mass> Candidate<M> {
    fn beats(&self, other: &Candidate<M>) -> bool {
        match self.value.cmp(&other.value) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => lex_cmp(self.a, other.a)
                .then_with(|| lex_cmp(self.b, other.b))
                .is_lt(),
        }
    }
}

#[derive(Clone)]
struct State<M> {
    i: usize,
    a: u128,
    b: u128,
    /// Vertices barred from `A` (related to some member of `B`), and vice versa.
    block_a: u128,
    block_b: u128,
    wa: M,
    wb: M,
}

struct PairSearch<'a, M> {
    n: usize,
    mass: &'a [M],
    related: Vec<u128>,
    best: Option<Candidate<M>>,
}

impl<'a, M: Mass> PairSearch<'a, M> {
    fn new(t: &RootedTree, mass: &'a [M]) -> Self {
        let n = t.len();
        let mut related = vec![0u128; n];
        for u in 0..n {
            let mut v = Some(u);
            while let Some(x) = v {
                related[u] |= 1 << x;
                related[x] |= 1 << u;
                v = t.parent(x);
            }
        }
        PairSearch {
            n,
            mass,
            related,
            best: None,
        }
    }

    fn sum(&self, mask: u128) -> M {
        let mut s = M::zero();
        for i in bits(mask) {
            s += &self.mass[i];
        }
        s
    }

    fn offer(&mut self, s: &State<M>) {
        let value = s.wa.clone().min(s.wb.clone());
        let cand = Candidate {
            value,
            a: s.a,
            b: s.b,
        };
        if self.best.as_ref().is_none_or(|b| cand.beats(b)) {
            self.best = Some(cand);
        }
    }

    /// Upper bound on what any completion of `s` can reach is below the
    /// current best. Ties are kept, so the canonical optimum survives.
    fn hopeless(&self, s: &State<M>) -> bool {
        let Some(best) = &self.best else {
            return false;
        };
        let all = if self.n == MASK_BITS {
            u128::MAX
        } else {
            (1u128 << self.n) - 1
        };
        let future = all & !((1u128 << s.i) - 1);
        let cap_a = s.wa.clone() + self.sum(future & !s.block_a);
        let cap_b = s.wb.clone() + self.sum(future & !s.block_b);
        if cap_a.min(cap_b) < best.value {
            return true;
        }
        let cap_both = s.wa.clone() + s.wb.clone() + self.sum(future & !(s.block_a & s.block_b));
        cap_both < best.value.clone() + best.value.clone()
    }

    /// Successor states for vertex `s.i`, lighter side first.
    fn branch(&self, s: &State<M>) -> Vec<State<M>> {
        let i = s.i;
        let bit = 1u128 << i;
        let mut out = Vec::with_capacity(3);
        let can_a = s.block_a & bit == 0;
        // The lowest assigned vertex always sits in A.
        let can_b = s.block_b & bit == 0 && (s.a | s.b) != 0;
        let to_a = || State {
            i: i + 1,
            a: s.a | bit,
            block_b: s.block_b | self.related[i],
            wa: s.wa.clone() + self.mass[i].clone(),
            ..s.clone()
        };
        let to_b = || State {
            i: i + 1,
            b: s.b | bit,
            block_a: s.block_a | self.related[i],
            wb: s.wb.clone() + self.mass[i].clone(),
            ..s.clone()
        };
        if s.wa <= s.wb {
            if can_a {
                out.push(to_a());
            }
            if can_b {
                out.push(to_b());
            }
        } else {
            if can_b {
                out.push(to_b());
            }
            if can_a {
                out.push(to_a());
            }
        }
        out.push(State {
            i: i + 1,
            ..s.clone()
        });
        out
    }

    fn run(&mut self, s: State<M>) {
        self.offer(&s);
        if s.i == self.n || self.hopeless(&s) {
            return;
        }
        for next in self.branch(&s) {
            self.run(next);
        }
    }

    /// All states after deciding the first `k` vertices.
    fn prefixes(&self, root: State<M>, k: usize) -> Vec<State<M>> {
        let mut level = vec![root];
        for _ in 0..k {
            level = level.iter().flat_map(|s| self.branch(s)).collect();
        }
        level
    }
}

fn search<M: Mass>(
    t: &RootedTree,
    mass: &[M],
    denom: &BigUint,
    jobs: usize,
) -> (Rational, Vec<usize>, Vec<usize>) {
    let root = State {
        i: 0,
        a: 0,
        b: 0,
        block_a: 0,
        block_b: 0,
        wa: M::zero(),
        wb: M::zero(),
    };
    let base = PairSearch::new(t, mass);
    let best = if jobs <= 1 || t.len() < 4 {
        let mut s = base;
        s.run(root);
        s.best.expect("the empty pair is always offered")
    } else {
        let mut k = 0;
        while k < t.len() && 3usize.pow(k as u32) < 8 * jobs {
            k += 1;
        }
        let starts = base.prefixes(root, k);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            starts
                .into_par_iter()
                .map(|s| {
                    let mut local = PairSearch {
                        n: base.n,
                        mass: base.mass,
                        related: base.related.clone(),
                        best: None,
                    };
                    local.run(s);
                    local.best.expect("every start is offered")
                })
                .reduce_with(|x, y| if y.beats(&x) { y } else { x })
                .expect("at least one start")
        })
    };
    (
        best.value.to_rational(denom),
        bits(best.a).collect(),
        bits(best.b).collect(),
    )
}
