//! Dyck paths, their north-step labels, first-return decomposition and the
//! bijection with rooted planar binary trees.
//!
//! A path of size `n` is a word of `n` north steps `(0,1)` and `n` east
//! steps `(1,0)` from `(0,0)` to `(n,n)` that never dips below `y = x`,
//! i.e. every prefix has at least as many `N` as `E`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    North,
    East,
}

impl Step {
    fn symbol(self) -> char {
        match self {
            Step::North => 'N',
            Step::East => 'E',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height = 0i64;
        for (pos, step) in steps.iter().enumerate() {
            height += if *step == Step::North { 1 } else { -1 };
            if height < 0 {
                return Err(Error::InvalidPath(format!("drops below the diagonal at step {}", pos + 1)));
            }
        }
        if height != 0 {
            return Err(Error::InvalidPath(format!("ends {height} above the diagonal")));
        }
        Ok(DyckPath { steps })
    }

    pub fn empty() -> Self {
        DyckPath { steps: Vec::new() }
    }

    /// Number of north steps.
    pub fn size(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `N + below + E + after`, the inverse of [`decompose`].
    pub fn compose(below: &DyckPath, after: &DyckPath) -> DyckPath {
        let mut steps = Vec::with_capacity(below.steps.len() + after.steps.len() + 2);
        steps.push(Step::North);
        steps.extend_from_slice(&below.steps);
        steps.push(Step::East);
        steps.extend_from_slice(&after.steps);
        DyckPath { steps }
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps.iter().try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'N' | 'n' => Ok(Step::North),
                'E' | 'e' => Ok(Step::East),
                other => Err(Error::InvalidPath(format!("unexpected symbol {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }
}

impl Serialize for DyckPath {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DyckPath {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// All paths of size `n` in lexicographic order with `N < E`.
pub fn enumerate(n: usize) -> Result<DyckPaths> {
    enumerate_bounded(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_bounded(n: usize, bound: usize) -> Result<DyckPaths> {
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let mut first = vec![Step::North; n];
    first.resize(2 * n, Step::East);
    Ok(DyckPaths { n, next: Some(first) })
}

/// Streaming enumerator returned by [`enumerate`]; holds a single path.
#[derive(Clone, Debug)]
pub struct DyckPaths {
    n: usize,
    next: Option<Vec<Step>>,
}

impl DyckPaths {
    fn advance(n: usize, steps: &[Step]) -> Option<Vec<Step>> {
        // the successor flips the rightmost N that can become an E without
        // dipping below the diagonal, then completes with N...NE...E
        let mut height = steps.iter().fold(0i64, |h, s| h + if *s == Step::North { 1 } else { -1 });
        let mut norths = n;
        for pos in (0..steps.len()).rev() {
            let step = steps[pos];
            height -= if step == Step::North { 1 } else { -1 };
            if step == Step::North {
                norths -= 1;
                if height >= 1 {
                    let mut out = steps[..pos].to_vec();
                    out.push(Step::East);
                    out.resize(pos + 1 + (n - norths), Step::North);
                    out.resize(2 * n, Step::East);
                    return Some(out);
                }
            }
        }
        None
    }
}

impl Iterator for DyckPaths {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        let current = self.next.take()?;
        self.next = Self::advance(self.n, &current);
        Some(DyckPath { steps: current })
    }
}

/// Paths of size `n` whose first return to the diagonal is at `(k, k)`.
pub fn enumerate_with_first_return(n: usize, k: usize) -> Result<impl Iterator<Item = DyckPath>> {
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, max: n });
    }
    let belows = enumerate(k - 1)?;
    enumerate(n - k)?;
    Ok(belows.flat_map(move |below| {
        enumerate(n - k)
            .expect("bound checked above")
            .map(move |after| DyckPath::compose(&below, &after))
    }))
}

/// Catalan number `C_n` as `u128` (exact up to `n = 67`).
pub fn catalan(n: usize) -> u128 {
    let mut c = 1u128;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

/// The label `(d, i, u)` of a north step: `d` and `i` are the largest and
/// smallest returns of the path suffix to its own diagonal, `u` the
/// x-coordinate where the step starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NorthStepLabel {
    pub d: usize,
    pub i: usize,
    pub u: usize,
}

impl fmt::Display for NorthStepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.d, self.i, self.u)
    }
}

/// One label per north step, in path order.
pub fn north_step_labels(path: &DyckPath) -> Vec<NorthStepLabel> {
    let steps = path.steps();
    let mut labels = Vec::with_capacity(path.size());
    let mut x = 0;
    for (pos, &step) in steps.iter().enumerate() {
        if step == Step::East {
            x += 1;
            continue;
        }
        // walk the suffix from this step; a return (k,k) counts only while
        // the suffix prefix has stayed weakly above its own diagonal
        let (mut height, mut easts) = (0i64, 0usize);
        let (mut first, mut last) = (None, 0);
        for &s in &steps[pos..] {
            if s == Step::North {
                height += 1;
            } else {
                height -= 1;
                easts += 1;
            }
            if height < 0 {
                break;
            }
            if height == 0 {
                first.get_or_insert(easts);
                last = easts;
            }
        }
        let i = first.expect("a north step of a Dyck path always returns");
        labels.push(NorthStepLabel { d: last, i, u: x });
    }
    labels
}

/// First-return decomposition `D = N + below + E + after`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// The first `k >= 1` with the path through `(k, k)`.
    pub first_return: usize,
    /// Size `k - 1`: the part strictly between the first two diagonal
    /// touches, lowered by one.
    pub below: DyckPath,
    /// Size `n - k`: the remainder after `(k, k)`, moved to the origin.
    pub after: DyckPath,
}

pub fn decompose(path: &DyckPath) -> Result<Decomposition> {
    if path.is_empty() {
        return Err(Error::EmptyPath);
    }
    let steps = path.steps();
    let mut height = 0i64;
    let end = steps
        .iter()
        .position(|s| {
            height += if *s == Step::North { 1 } else { -1 };
            height == 0
        })
        .expect("a non-empty Dyck path returns to the diagonal");
    Ok(Decomposition {
        first_return: end.div_ceil(2),
        below: DyckPath { steps: steps[1..end].to_vec() },
        after: DyckPath { steps: steps[end + 1..].to_vec() },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BinaryTree {
    Leaf,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(left), Box::new(right))
    }

    pub fn leaves(&self) -> usize {
        match self {
            BinaryTree::Leaf => 1,
            BinaryTree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Leaf => f.write_str("."),
            BinaryTree::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

/// Left subtree from the part below the first return, right subtree from
/// the part after it.
pub fn to_binary_tree(path: &DyckPath) -> BinaryTree {
    match decompose(path) {
        Err(_) => BinaryTree::Leaf,
        Ok(parts) => BinaryTree::node(to_binary_tree(&parts.below), to_binary_tree(&parts.after)),
    }
}

pub fn from_binary_tree(tree: &BinaryTree) -> DyckPath {
    match tree {
        BinaryTree::Leaf => DyckPath::empty(),
        BinaryTree::Node(l, r) => DyckPath::compose(&from_binary_tree(l), &from_binary_tree(r)),
    }
}
