//! Greedy construction of two unrelated vertex sets.
//!
//! Starting at the root, the construction walks down a spine that always
//! enters the heaviest branch. At each spine vertex every lighter branch is
//! handed, whole, to whichever of `A` and `B` is currently lighter (ties go to
//! `A`), and the spine vertex is colored by where its side branches went:
//! red if all went to `A`, blue if all went to `B`, green otherwise. The spine
//! ends at a leaf `r*`, which joins the lighter set. A climb then recolors
//! green degree-2 spine vertices with the color of `r*`, and the final
//! absorption walk moves the same-colored spine suffix above `r*` into the
//! set holding `r*`. What is left over is a root path.
//!
//! When no root path carries a third of the total weight, both sets carry at
//! least a third.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::mass::{Mass, Masses};
use crate::rational::Rational;
use crate::tree::RootedTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Color {
    Red,
    Blue,
    Green,
    Uncolored,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    fn color(self) -> Color {
        match self {
            Side::A => Color::Red,
            Side::B => Color::Blue,
        }
    }
}

/// One lighter-or-heaviest child subtree of a spine vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub root: usize,
    /// Smallest vertex id in the branch; breaks weight ties.
    pub min_vertex: usize,
    pub weight: Rational,
}

/// One step of the construction. Weights are the running totals of `A` and
/// `B` after the step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event")]
pub enum TraceEvent {
    BranchAssigned {
        at: usize,
        root: usize,
        side: Side,
        weight_a: Rational,
        weight_b: Rational,
    },
    RootColored {
        vertex: usize,
        color: Color,
    },
    Descend {
        vertex: usize,
    },
    LastRootAssigned {
        vertex: usize,
        side: Side,
        weight_a: Rational,
        weight_b: Rational,
    },
    Recolored {
        vertex: usize,
        color: Color,
    },
    Absorbed {
        vertex: usize,
        side: Side,
        weight_a: Rational,
        weight_b: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionResult {
    /// Sorted ascending.
    pub a: Vec<usize>,
    /// Sorted ascending.
    pub b: Vec<usize>,
    pub weight_a: Rational,
    pub weight_b: Rational,
    pub r_star: usize,
    /// Vertices in neither set, root first.
    pub residual_path: Vec<usize>,
    /// Colors of the colored (spine) vertices only.
    pub colors: BTreeMap<usize, Color>,
    pub trace: Vec<TraceEvent>,
}

impl PartitionResult {
    /// Full per-vertex color vector.
    pub fn color_vec(&self, n: usize) -> Vec<Color> {
        let mut out = vec![Color::Uncolored; n];
        for (&v, &c) in &self.colors {
            out[v] = c;
        }
        out
    }
}

/// Child subtrees of `v`, lightest first; equal weights ordered by smallest
/// contained vertex id. The last entry is the branch the spine descends into.
pub fn branches_of(t: &RootedTree, v: usize) -> Vec<Branch> {
    let idx = t.index();
    let mut out: Vec<Branch> = t
        .children(v)
        .iter()
        .map(|&c| {
            let sub = idx.subtree(c);
            Branch {
                root: c,
                min_vertex: sub.iter().copied().min().unwrap(),
                weight: t.weight_of(sub).unwrap(),
            }
        })
        .collect();
    out.sort_by(|x, y| {
        x.weight
            .cmp(&y.weight)
            .then(x.min_vertex.cmp(&y.min_vertex))
    });
    out
}

pub fn build_partition(t: &RootedTree) -> PartitionResult {
    let scaled = t.scaled();
    match &scaled.masses {
        Masses::Small(m) => Builder::new(t, m, &scaled.denom).run(),
        Masses::Big(m) => Builder::new(t, m, &scaled.denom).run(),
    }
}

struct Builder<'a, M: Mass> {
    t: &'a RootedTree,
    denom: &'a BigUint,
    mass: &'a [M],
    subtree: Vec<M>,
    min_vertex: Vec<usize>,
    side: Vec<Option<Side>>,
    color: Vec<Color>,
    weight_a: M,
    weight_b: M,
    trace: Vec<TraceEvent>,
}

impl<'a, M: Mass> Builder<'a, M> {
    fn new(t: &'a RootedTree, mass: &'a [M], denom: &'a BigUint) -> Self {
        let n = t.len();
        let mut subtree = mass.to_vec();
        let mut min_vertex: Vec<usize> = (0..n).collect();
        for &v in t.index().preorder().iter().rev() {
            if let Some(p) = t.parent(v) {
                let (child_mass, child_min) = (subtree[v].clone(), min_vertex[v]);
                subtree[p] += &child_mass;
                min_vertex[p] = min_vertex[p].min(child_min);
            }
        }
        Builder {
            t,
            denom,
            mass,
            subtree,
            min_vertex,
            side: vec![None; n],
            color: vec![Color::Uncolored; n],
            weight_a: M::zero(),
            weight_b: M::zero(),
            trace: Vec::new(),
        }
    }

    fn lighter(&self) -> Side {
        if self.weight_a <= self.weight_b {
            Side::A
        } else {
            Side::B
        }
    }

    fn add(&mut self, side: Side, m: &M) {
        match side {
            Side::A => self.weight_a += m,
            Side::B => self.weight_b += m,
        }
    }

    fn totals(&self) -> (Rational, Rational) {
        (
            self.weight_a.to_rational(self.denom),
            self.weight_b.to_rational(self.denom),
        )
    }

    fn run(mut self) -> PartitionResult {
        let t = self.t;
        let idx = t.index();
        let mut spine = Vec::new();
        let mut rho = t.root();
        let mut order: Vec<usize> = Vec::new();
        loop {
            spine.push(rho);
            let children = t.children(rho);
            if children.is_empty() {
                break;
            }
            order.clear();
            order.extend_from_slice(children);
            order.sort_by(|&x, &y| {
                self.subtree[x]
                    .cmp(&self.subtree[y])
                    .then(self.min_vertex[x].cmp(&self.min_vertex[y]))
            });
            let (&heaviest, lighter) = order.split_last().unwrap();
            let mut sent_to = [false; 2];
            for &c in lighter {
                let side = self.lighter();
                sent_to[side as usize] = true;
                for &v in idx.subtree(c) {
                    self.side[v] = Some(side);
                }
                let m = self.subtree[c].clone();
                self.add(side, &m);
                let (weight_a, weight_b) = self.totals();
                self.trace.push(TraceEvent::BranchAssigned {
                    at: rho,
                    root: c,
                    side,
                    weight_a,
                    weight_b,
                });
            }
            let color = match sent_to {
                [true, false] => Color::Red,
                [false, true] => Color::Blue,
                _ => Color::Green,
            };
            self.color[rho] = color;
            self.trace
                .push(TraceEvent::RootColored { vertex: rho, color });
            rho = heaviest;
            self.trace.push(TraceEvent::Descend { vertex: rho });
        }

        let r_star = rho;
        let side = self.lighter();
        let c = side.color();
        self.side[r_star] = Some(side);
        self.color[r_star] = c;
        self.add(side, &self.mass[r_star]);
        let (weight_a, weight_b) = self.totals();
        self.trace.push(TraceEvent::LastRootAssigned {
            vertex: r_star,
            side,
            weight_a,
            weight_b,
        });

        let mut x = t.parent(r_star);
        while let Some(v) = x {
            if self.color[v] != Color::Green && self.color[v] != c {
                break;
            }
            if self.color[v] == Color::Green && t.degree(v) == 2 {
                self.color[v] = c;
                self.trace.push(TraceEvent::Recolored {
                    vertex: v,
                    color: c,
                });
            }
            x = t.parent(v);
        }

        let mut u = r_star;
        while let Some(p) = t.parent(u) {
            if self.side[p].is_some() || self.color[p] != c {
                break;
            }
            self.side[p] = Some(side);
            self.add(side, &self.mass[p]);
            let (weight_a, weight_b) = self.totals();
            self.trace.push(TraceEvent::Absorbed {
                vertex: p,
                side,
                weight_a,
                weight_b,
            });
            u = p;
        }

        let residual_path: Vec<usize> = spine
            .iter()
            .copied()
            .take_while(|&v| self.side[v].is_none())
            .collect();
        debug_assert!(spine[residual_path.len()..]
            .iter()
            .all(|&v| self.side[v].is_some()));

        let mut a = Vec::new();
        let mut b = Vec::new();
        for (v, s) in self.side.iter().enumerate() {
            match s {
                Some(Side::A) => a.push(v),
                Some(Side::B) => b.push(v),
                None => {}
            }
        }
        let colors = self
            .color
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != Color::Uncolored)
            .map(|(v, &c)| (v, c))
            .collect();
        let (weight_a, weight_b) = self.totals();
        PartitionResult {
            a,
            b,
            weight_a,
            weight_b,
            r_star,
            residual_path,
            colors,
            trace: self.trace,
        }
    }
}

/// Re-executes a trace against `t`, returning `(a, b, colors)`.
pub fn replay(t: &RootedTree, trace: &[TraceEvent]) -> (Vec<usize>, Vec<usize>, Vec<Color>) {
    let n = t.len();
    let mut side: Vec<Option<Side>> = vec![None; n];
    let mut color = vec![Color::Uncolored; n];
    for ev in trace {
        match *ev {
            TraceEvent::BranchAssigned { root, side: s, .. } => {
                for &v in t.index().subtree(root) {
                    side[v] = Some(s);
                }
            }
            TraceEvent::RootColored { vertex, color: c }
            | TraceEvent::Recolored { vertex, color: c } => color[vertex] = c,
            TraceEvent::Descend { .. } => {}
            TraceEvent::LastRootAssigned {
                vertex, side: s, ..
            } => {
                side[vertex] = Some(s);
                color[vertex] = s.color();
            }
            TraceEvent::Absorbed {
                vertex, side: s, ..
            } => side[vertex] = Some(s),
        }
    }
    let pick = |want: Side| {
        side.iter()
            .enumerate()
            .filter(|(_, s)| **s == Some(want))
            .map(|(v, _)| v)
            .collect()
    };
    (pick(Side::A), pick(Side::B), color)
}
