//! Rooted trees with exact vertex weights.
//!
//! The text format is line based:
//!
//! ```text
//! # optional comments
//! 3
//! 0 - 1/3
//! 1 0 1/3
//! 2 1 1/3
//! ```
//!
//! The first non-comment line is the vertex count `n`, followed by exactly `n`
//! lines `id parent weight`. The root's parent is `-`. Ids must cover `0..n`
//! exactly, in any order.

use std::fmt;

use thiserror::Error;

use crate::mass::ScaledWeights;
use crate::rational::{Rational, RationalError};

/// Where a tree error was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    /// 1-based line in the source text.
    Line(usize),
    /// Vertex of a programmatically built tree.
    Vertex(usize),
    Input,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line(l) => write!(f, "line {l}"),
            Location::Vertex(v) => write!(f, "vertex {v}"),
            Location::Input => write!(f, "input"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("{at}: vertex {id} is listed more than once")]
    DuplicateVertex { at: Location, id: usize },
    #[error("{at}: vertex {id} is a second root")]
    MultipleRoots { at: Location, id: usize },
    #[error("{at}: no vertex has parent `-`")]
    NoRoot { at: Location },
    #[error("{at}: vertex {id} lies on a parent cycle")]
    Cycle { at: Location, id: usize },
    #[error("{at}: weight `{value}` is negative")]
    NegativeWeight { at: Location, value: String },
    #[error("{at}: {reason}")]
    MalformedLine { at: Location, reason: String },
    #[error("vertex {0} does not exist")]
    InvalidVertex(usize),
}

/// Preorder entry/exit stamps from one depth-first traversal.
///
/// `x` is an ancestor-or-self of `y` iff `entry[x] <= entry[y]` and
/// `exit[y] <= exit[x]`. Exits are exclusive, so the subtree of `v` is
/// `order[entry[v]..exit[v]]`.
#[derive(Clone, Debug)]
pub struct AncestorIndex {
    entry: Vec<usize>,
    exit: Vec<usize>,
    order: Vec<usize>,
}

impl AncestorIndex {
    fn build(root: usize, child_start: &[usize], child_list: &[usize]) -> Self {
        let n = child_start.len() - 1;
        let mut entry = vec![0; n];
        let mut exit = vec![0; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            entry[v] = order.len();
            order.push(v);
            stack.extend(child_list[child_start[v]..child_start[v + 1]].iter().rev());
        }
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            for &c in &child_list[child_start[v]..child_start[v + 1]] {
                size[v] += size[c];
            }
            exit[v] = entry[v] + size[v];
        }
        AncestorIndex { entry, exit, order }
    }

    pub fn entry(&self, v: usize) -> usize {
        self.entry[v]
    }

    pub fn exit(&self, v: usize) -> usize {
        self.exit[v]
    }

    /// Vertices in preorder, children visited in ascending id order.
    pub fn preorder(&self) -> &[usize] {
        &self.order
    }

    pub fn is_ancestor_or_self(&self, x: usize, y: usize) -> bool {
        self.entry[x] <= self.entry[y] && self.exit[y] <= self.exit[x]
    }

    /// The subtree rooted at `v`, in preorder.
    pub fn subtree(&self, v: usize) -> &[usize] {
        &self.order[self.entry[v]..self.exit[v]]
    }
}

/// An immutable rooted tree on vertices `0..n` with nonnegative rational weights.
#[derive(Clone, Debug)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    child_start: Vec<usize>,
    child_list: Vec<usize>,
    weights: Vec<Rational>,
    total: Rational,
    scaled: ScaledWeights,
    index: AncestorIndex,
}

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.weights == other.weights
    }
}

impl Eq for RootedTree {}

impl RootedTree {
    /// Builds a tree from a parent array. Children end up in ascending id order.
    pub fn from_parents(
        parents: Vec<Option<usize>>,
        weights: Vec<Rational>,
    ) -> Result<Self, TreeError> {
        if parents.len() != weights.len() {
            return Err(TreeError::MalformedLine {
                at: Location::Input,
                reason: format!("{} parents but {} weights", parents.len(), weights.len()),
            });
        }
        Self::validated(parents, weights, Location::Vertex)
    }

    fn validated(
        parent: Vec<Option<usize>>,
        weights: Vec<Rational>,
        locate: impl Fn(usize) -> Location,
    ) -> Result<Self, TreeError> {
        let n = parent.len();
        let mut root = None;
        for (v, p) in parent.iter().enumerate() {
            match *p {
                None if root.is_some() => {
                    return Err(TreeError::MultipleRoots {
                        at: locate(v),
                        id: v,
                    })
                }
                None => root = Some(v),
                Some(p) if p >= n => {
                    return Err(TreeError::MalformedLine {
                        at: locate(v),
                        reason: format!("parent {p} is out of range 0..{n}"),
                    })
                }
                Some(_) => {}
            }
        }
        find_cycle(&parent).map_or(Ok(()), |v| {
            Err(TreeError::Cycle {
                at: locate(v),
                id: v,
            })
        })?;
        let root = root.ok_or(TreeError::NoRoot {
            at: Location::Input,
        })?;

        let mut child_start = vec![0usize; n + 1];
        for p in parent.iter().flatten() {
            child_start[p + 1] += 1;
        }
        for i in 0..n {
            child_start[i + 1] += child_start[i];
        }
        let mut fill = child_start.clone();
        let mut child_list = vec![0usize; n.saturating_sub(1)];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                child_list[fill[p]] = v;
                fill[p] += 1;
            }
        }

        let total = weights.iter().sum();
        let scaled = ScaledWeights::new(&weights);
        let index = AncestorIndex::build(root, &child_start, &child_list);
        Ok(RootedTree {
            root,
            parent,
            child_start,
            child_list,
            weights,
            total,
            scaled,
            index,
        })
    }

    /// Parses the line-based tree format.
    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(TreeError::NoRoot {
            at: Location::Line(1),
        })?;
        let n: usize = header.parse().map_err(|_| TreeError::MalformedLine {
            at: Location::Line(header_line),
            reason: format!("expected a vertex count, found `{header}`"),
        })?;
        if n == 0 {
            return Err(TreeError::NoRoot {
                at: Location::Line(header_line),
            });
        }

        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut weights: Vec<Option<Rational>> = vec![None; n];
        let mut line_of = vec![0usize; n];
        let mut root_seen = false;
        let mut seen = 0usize;
        let mut last_line = header_line;
        for (ln, line) in lines {
            last_line = ln;
            let at = Location::Line(ln);
            let malformed = |reason: String| TreeError::MalformedLine { at, reason };
            if seen == n {
                return Err(malformed(format!("more than {n} vertex lines")));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [id, par, w] = fields[..] else {
                return Err(malformed(format!(
                    "expected `id parent weight`, found {} fields",
                    fields.len()
                )));
            };
            let id: usize = id
                .parse()
                .map_err(|_| malformed(format!("bad vertex id `{id}`")))?;
            if id >= n {
                return Err(malformed(format!("vertex id {id} is out of range 0..{n}")));
            }
            if weights[id].is_some() {
                return Err(TreeError::DuplicateVertex { at, id });
            }
            let par = if par == "-" {
                if root_seen {
                    return Err(TreeError::MultipleRoots { at, id });
                }
                root_seen = true;
                None
            } else {
                let p: usize = par
                    .parse()
                    .map_err(|_| malformed(format!("bad parent `{par}`")))?;
                if p >= n {
                    return Err(malformed(format!("parent {p} is out of range 0..{n}")));
                }
                Some(p)
            };
            let w: Rational = w.parse().map_err(|e| match e {
                RationalError::Negative(value) => TreeError::NegativeWeight { at, value },
                other => malformed(other.to_string()),
            })?;
            parent[id] = par;
            weights[id] = Some(w);
            line_of[id] = ln;
            seen += 1;
        }
        if seen < n {
            return Err(TreeError::MalformedLine {
                at: Location::Line(last_line),
                reason: format!("expected {n} vertex lines, found {seen}"),
            });
        }
        let weights = weights.into_iter().map(Option::unwrap).collect();
        Self::validated(parent, weights, |v| Location::Line(line_of[v]))
    }

    /// Serializes to the line format, one vertex per line in id order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.len());
        for (v, w) in self.weights.iter().enumerate() {
            match self.parent[v] {
                Some(p) => out.push_str(&format!("{v} {p} {w}\n")),
                None => out.push_str(&format!("{v} - {w}\n")),
            }
        }
        out
    }

    /// Same shape, new weights.
    pub fn with_weights(&self, weights: Vec<Rational>) -> Result<Self, TreeError> {
        Self::from_parents(self.parent.clone(), weights)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.child_list[self.child_start[v]..self.child_start[v + 1]]
    }

    /// Number of tree edges at `v`, counting the parent edge.
    pub fn degree(&self, v: usize) -> usize {
        self.children(v).len() + usize::from(self.parent[v].is_some())
    }

    pub fn weight(&self, v: usize) -> &Rational {
        &self.weights[v]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn total_weight(&self) -> &Rational {
        &self.total
    }

    pub(crate) fn scaled(&self) -> &ScaledWeights {
        &self.scaled
    }

    pub fn index(&self) -> &AncestorIndex {
        &self.index
    }

    pub fn check_vertex(&self, v: usize) -> Result<usize, TreeError> {
        if v < self.len() {
            Ok(v)
        } else {
            Err(TreeError::InvalidVertex(v))
        }
    }

    /// True iff one of `x`, `y` is a descendant of the other. Every vertex is
    /// related to itself.
    pub fn is_related(&self, x: usize, y: usize) -> Result<bool, TreeError> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        Ok(self.index.is_ancestor_or_self(x, y) || self.index.is_ancestor_or_self(y, x))
    }

    /// Vertices from the root down to `u`.
    pub fn root_path(&self, u: usize) -> Result<Vec<usize>, TreeError> {
        self.check_vertex(u)?;
        let mut path = vec![u];
        let mut v = u;
        while let Some(p) = self.parent[v] {
            path.push(p);
            v = p;
        }
        path.reverse();
        Ok(path)
    }

    pub fn weight_of(&self, vertices: &[usize]) -> Result<Rational, TreeError> {
        let mut sum = Rational::zero();
        for &v in vertices {
            sum += &self.weights[self.check_vertex(v)?];
        }
        Ok(sum)
    }

    pub fn are_unrelated_sets(&self, a: &[usize], b: &[usize]) -> Result<bool, TreeError> {
        Ok(self.find_related_pair(a, b)?.is_none())
    }

    /// Some `(x, y)` with `x ∈ a`, `y ∈ b` and `x`, `y` related, if one exists.
    /// Runs in `O(n + |a| + |b|)`.
    pub fn find_related_pair(
        &self,
        a: &[usize],
        b: &[usize],
    ) -> Result<Option<(usize, usize)>, TreeError> {
        let n = self.len();
        let mut in_a = vec![false; n];
        for &x in a {
            in_a[self.check_vertex(x)?] = true;
        }
        for &y in b {
            self.check_vertex(y)?;
        }
        if a.is_empty() || b.is_empty() {
            return Ok(None);
        }
        let order = self.index.preorder();
        // Nearest member of `a` on each vertex's root path.
        let mut above: Vec<Option<usize>> = vec![None; n];
        for &v in order {
            above[v] = if in_a[v] {
                Some(v)
            } else {
                self.parent[v].and_then(|p| above[p])
            };
        }
        // First member of `a` at or after each preorder position.
        let mut next = vec![None; n + 1];
        for i in (0..n).rev() {
            next[i] = if in_a[order[i]] { Some(i) } else { next[i + 1] };
        }
        for &y in b {
            if let Some(x) = above[y] {
                return Ok(Some((x, y)));
            }
            if let Some(i) = next[self.index.entry(y)] {
                if i < self.index.exit(y) {
                    return Ok(Some((order[i], y)));
                }
            }
        }
        Ok(None)
    }
}

/// A vertex on a parent cycle, if any. Iterative, so deep trees are fine.
fn find_cycle(parent: &[Option<usize>]) -> Option<usize> {
    const NEW: u8 = 0;
    const ACTIVE: u8 = 1;
    const DONE: u8 = 2;
    let mut state = vec![NEW; parent.len()];
    let mut walk = Vec::new();
    for start in 0..parent.len() {
        let mut v = start;
        while state[v] == NEW {
            state[v] = ACTIVE;
            walk.push(v);
            match parent[v] {
                Some(p) => v = p,
                None => break,
            }
        }
        if state[v] == ACTIVE && parent[v].is_some() {
            return Some(v);
        }
        for &w in &walk {
            state[w] = DONE;
        }
        walk.clear();
    }
    None
}
