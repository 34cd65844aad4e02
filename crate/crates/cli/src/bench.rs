//! Timing harness for the solver on large random trees.

use std::time::Instant;

use treesplit::{gen_random_tree, solve, GenError, Witness};

#[derive(Clone, Debug)]
pub struct BenchStats {
    pub n: usize,
    pub seed: u64,
    pub repeat: usize,
    pub witness_kind: &'static str,
    pub median_ns: u128,
    pub nodes_per_sec: f64,
}

/// Generates one uniform-attachment tree and times `repeat` solves of it.
pub fn run_bench(
    n: usize,
    seed: u64,
    max_weight: u64,
    repeat: usize,
) -> Result<BenchStats, GenError> {
    let tree = gen_random_tree(n, seed, max_weight)?;
    let repeat = repeat.max(1);
    let mut times = Vec::with_capacity(repeat);
    let mut kind = "";
    for _ in 0..repeat {
        let start = Instant::now();
        let w = solve(&tree);
        times.push(start.elapsed().as_nanos());
        kind = match w {
            Ok(Witness::Path { .. }) => "path",
            Ok(Witness::Pair { .. }) => "pair",
            Err(_) => "violation",
        };
    }
    times.sort_unstable();
    let median_ns = times[times.len() / 2];
    Ok(BenchStats {
        n,
        seed,
        repeat,
        witness_kind: kind,
        median_ns,
        nodes_per_sec: n as f64 / (median_ns.max(1) as f64 / 1e9),
    })
}
