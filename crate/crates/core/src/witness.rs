//! Heavy root path or heavy unrelated pair: producing and checking witnesses.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mass::{Mass, Masses};
use crate::partition::{build_partition, PartitionResult};
use crate::rational::Rational;
use crate::tree::{RootedTree, TreeError};

pub fn one_third() -> Rational {
    Rational::new(1, 3).unwrap()
}

/// Certificate that `t` has a root path or an unrelated pair of sets, each
/// weighing at least the threshold fraction of the total.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Path {
        u: usize,
        path: Vec<usize>,
        weight: Rational,
    },
    Pair {
        a: Vec<usize>,
        b: Vec<usize>,
        weight_a: Rational,
        weight_b: Rational,
    },
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(
        "pair witness below a third of the total: w(A) = {}, w(B) = {}, W = {}",
        partition.weight_a, partition.weight_b, tree.total_weight()
    )]
    TheoremViolation {
        tree: Box<RootedTree>,
        partition: Box<PartitionResult>,
    },
    #[error(
        "no witness reaches {threshold} of the total: w(A) = {}, w(B) = {}",
        partition.weight_a, partition.weight_b
    )]
    BelowThreshold {
        threshold: Rational,
        partition: Box<PartitionResult>,
    },
}

/// Heaviest root path endpoint and its weight; ties go to the smallest id.
pub fn best_root_path(t: &RootedTree) -> (usize, Rational) {
    let scaled = t.scaled();
    match &scaled.masses {
        Masses::Small(m) => heaviest_prefix(t, m, &scaled.denom),
        Masses::Big(m) => heaviest_prefix(t, m, &scaled.denom),
    }
}

fn heaviest_prefix<M: Mass>(
    t: &RootedTree,
    mass: &[M],
    denom: &num_bigint::BigUint,
) -> (usize, Rational) {
    let mut prefix: Vec<M> = vec![M::zero(); t.len()];
    for &v in t.index().preorder() {
        let mut acc = match t.parent(v) {
            Some(p) => prefix[p].clone(),
            None => M::zero(),
        };
        acc += &mass[v];
        prefix[v] = acc;
    }
    let mut best = 0;
    for v in 1..t.len() {
        if prefix[v] > prefix[best] {
            best = v;
        }
    }
    (best, prefix[best].to_rational(denom))
}

/// Witness at the one-third threshold.
pub fn solve(t: &RootedTree) -> Result<Witness, SolveError> {
    solve_with_threshold(t, &one_third())
}

/// Returns the heaviest root path if it reaches `threshold · W`, otherwise
/// the greedy unrelated pair. A pair below the threshold is reported as a
/// theorem violation when `threshold <= 1/3`, and as plain failure above it.
pub fn solve_with_threshold(t: &RootedTree, threshold: &Rational) -> Result<Witness, SolveError> {
    let total = t.total_weight();
    let (u, weight) = best_root_path(t);
    if weight.cmp_fraction_of(threshold, total) != Ordering::Less {
        return Ok(Witness::Path {
            u,
            path: t.root_path(u).expect("endpoint is a vertex"),
            weight,
        });
    }
    let partition = build_partition(t);
    let reaches = |w: &Rational| w.cmp_fraction_of(threshold, total) != Ordering::Less;
    if reaches(&partition.weight_a) && reaches(&partition.weight_b) {
        return Ok(Witness::Pair {
            a: partition.a,
            b: partition.b,
            weight_a: partition.weight_a,
            weight_b: partition.weight_b,
        });
    }
    if *threshold <= one_third() {
        Err(SolveError::TheoremViolation {
            tree: Box::new(t.clone()),
            partition: Box::new(partition),
        })
    } else {
        Err(SolveError::BelowThreshold {
            threshold: threshold.clone(),
            partition: Box::new(partition),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Path,
    A,
    B,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::Path => "path",
            Part::A => "A",
            Part::B => "B",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotRootPath {
        u: usize,
        expected: Vec<usize>,
    },
    WeightMismatch {
        part: Part,
        claimed: Rational,
        actual: Rational,
    },
    DuplicateEntry {
        part: Part,
        vertex: usize,
    },
    Overlap {
        vertex: usize,
    },
    RelatedPair {
        a: usize,
        b: usize,
    },
    BelowThreshold {
        part: Part,
        weight: Rational,
        required: Rational,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotRootPath { u, expected } => {
                write!(f, "path is not the root path to {u}, expected {expected:?}")
            }
            Violation::WeightMismatch {
                part,
                claimed,
                actual,
            } => {
                write!(
                    f,
                    "weight mismatch for {part}: claimed {claimed}, actual {actual}"
                )
            }
            Violation::DuplicateEntry { part, vertex } => {
                write!(f, "vertex {vertex} listed twice in {part}")
            }
            Violation::Overlap { vertex } => write!(f, "vertex {vertex} is in both A and B"),
            Violation::RelatedPair { a, b } => write!(f, "related pair ({a}, {b})"),
            Violation::BelowThreshold {
                part,
                weight,
                required,
            } => {
                write!(f, "{part} weighs {weight}, below the required {required}")
            }
        }
    }
}

/// Every condition a witness fails. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks `w` against `t` at `threshold · W`. Out-of-range ids are an error
/// rather than a violation.
pub fn verify(
    t: &RootedTree,
    w: &Witness,
    threshold: &Rational,
) -> Result<VerifyReport, TreeError> {
    let total = t.total_weight();
    let required = threshold * total;
    let mut out = Vec::new();
    let check_threshold = |out: &mut Vec<Violation>, part, weight: &Rational| {
        if *weight < required {
            out.push(Violation::BelowThreshold {
                part,
                weight: weight.clone(),
                required: required.clone(),
            });
        }
    };
    match w {
        Witness::Path { u, path, weight } => {
            for &v in path {
                t.check_vertex(v)?;
            }
            let expected = t.root_path(*u)?;
            if *path != expected {
                out.push(Violation::NotRootPath { u: *u, expected });
            }
            let actual = t.weight_of(path)?;
            if actual != *weight {
                out.push(Violation::WeightMismatch {
                    part: Part::Path,
                    claimed: weight.clone(),
                    actual: actual.clone(),
                });
            }
            check_threshold(&mut out, Part::Path, &actual);
        }
        Witness::Pair {
            a,
            b,
            weight_a,
            weight_b,
        } => {
            let mut member = vec![0u8; t.len()];
            for (part, set, bit) in [(Part::A, a, 1u8), (Part::B, b, 2u8)] {
                for &v in set.iter() {
                    t.check_vertex(v)?;
                    if member[v] & bit != 0 {
                        out.push(Violation::DuplicateEntry { part, vertex: v });
                    }
                    member[v] |= bit;
                }
            }
            for (v, &m) in member.iter().enumerate() {
                if m == 3 {
                    out.push(Violation::Overlap { vertex: v });
                }
            }
            if let Some((x, y)) = t.find_related_pair(a, b)? {
                out.push(Violation::RelatedPair { a: x, b: y });
            }
            for (part, claimed, bit) in [(Part::A, weight_a, 1u8), (Part::B, weight_b, 2u8)] {
                let actual: Rational = (0..t.len())
                    .filter(|&v| member[v] & bit != 0)
                    .map(|v| t.weight(v))
                    .sum();
                if actual != *claimed {
                    out.push(Violation::WeightMismatch {
                        part,
                        claimed: claimed.clone(),
                        actual: actual.clone(),
                    });
                }
                check_threshold(&mut out, part, &actual);
            }
        }
    }
    Ok(VerifyReport { violations: out })
}
