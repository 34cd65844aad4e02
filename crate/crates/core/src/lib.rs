//! Heavy root paths and unrelated vertex-set pairs in weighted rooted trees.
//!
//! Two vertices of a rooted tree are *related* when one lies on the root path
//! of the other. For any nonnegative weighting with total `W`, either some
//! root path weighs at least `W/3`, or there are two sets `A`, `B` with no
//! related cross pair, each weighing at least `W/3`. This crate finds such a
//! witness in `O(n log n)` exact arithmetic, checks witnesses, and provides a
//! brute-force oracle plus generators for testing against it.
//!
//! ```
//! use treesplit::{solve, verify, one_third, RootedTree, Witness};
//!
//! let star = RootedTree::parse("5\n0 - 0\n1 0 1/4\n2 0 1/4\n3 0 1/4\n4 0 1/4").unwrap();
//! let w = solve(&star).unwrap();
//! assert!(matches!(w, Witness::Pair { .. }));
//! assert!(verify(&star, &w, &one_third()).unwrap().is_valid());
//! ```

pub mod generators;
mod mass;
pub mod oracle;
pub mod partition;
pub mod rational;
pub mod tree;
pub mod witness;

pub use generators::{
    all_parent_arrays, gen_random_tree, gen_tight_family, GenError, TightFamilyParams,
};
pub use oracle::{
    oracle_best_pair, oracle_best_pair_jobs, oracle_best_path, theorem_check, OracleError,
    OracleResult,
};
pub use partition::{branches_of, build_partition, Color, PartitionResult, Side, TraceEvent};
pub use rational::Rational;
pub use tree::{AncestorIndex, RootedTree, TreeError};
pub use witness::{
    best_root_path, one_third, solve, solve_with_threshold, verify, SolveError, VerifyReport,
    Violation, Witness,
};
