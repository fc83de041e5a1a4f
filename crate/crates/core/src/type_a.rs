//! Root data of type `A_n` realised in the zero-sum hyperplane of `R^{n+1}`.
//!
//! Simple roots are `e_i - e_{i+1}`; the fundamental weights are their dual
//! basis inside the hyperplane. The Weyl group acts by permuting coordinates,
//! which is the only part of it used here.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ratpoly::{to_f64, Rational};

/// `(A_d^{-1})_{ij} = min(i, j) - i*j/(d+1)`, the Gram entry of the
/// fundamental weights `i` and `j`.
pub fn inverse_cartan_entry(d: usize, i: usize, j: usize) -> Result<Rational> {
    for index in [i, j] {
        if index == 0 || index > d {
            return Err(Error::IndexOutOfRange { index, max: d });
        }
    }
    Ok(Rational::new(
        BigInt::from(i.min(j) * (d + 1) - i * j),
        BigInt::from(d + 1),
    ))
}

/// The tridiagonal Cartan matrix of `A_n`.
pub fn cartan_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// A point of `R^{n+1}` whose coordinates sum to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmbientPoint {
    coords: Vec<Rational>,
}

impl AmbientPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let sum: Rational = coords.iter().sum();
        if !sum.is_zero() {
            return Err(Error::NotInHyperplane { sum: sum.to_string() });
        }
        Ok(AmbientPoint { coords })
    }

    pub fn origin(n: usize) -> Self {
        AmbientPoint { coords: vec![Rational::zero(); n + 1] }
    }

    /// Rank `n`, one less than the number of coordinates.
    pub fn rank(&self) -> usize {
        self.coords.len().saturating_sub(1)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn dot(&self, other: &AmbientPoint) -> Rational {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(to_f64).collect()
    }

    /// Applies a coordinate permutation: entry `k` of the result is
    /// coordinate `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> AmbientPoint {
        AmbientPoint { coords: perm.iter().map(|&k| self.coords[k].clone()).collect() }
    }
}

impl fmt::Display for AmbientPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.coords))
    }
}

/// Coordinates `(x_1, ..., x_n)` of `x_1*w_1 + ... + x_n*w_n` in the basis
/// of fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    x: Vec<Rational>,
}

impl WeightVector {
    pub fn new(x: Vec<Rational>) -> Self {
        WeightVector { x }
    }

    pub fn rank(&self) -> usize {
        self.x.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.x
    }

    pub fn is_dominant(&self) -> bool {
        self.x.iter().all(|c| !c.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().all(Zero::is_zero)
    }

    pub fn ensure_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant { coords: format!("({})", join(&self.x)) })
        }
    }

    pub fn scale(&self, t: &Rational) -> WeightVector {
        WeightVector { x: self.x.iter().map(|c| c * t).collect() }
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.x))
    }
}

fn join(values: &[Rational]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// `alpha_i = e_i - e_{i+1}` in `R^{n+1}`.
pub fn simple_root_ambient(n: usize, i: usize) -> Result<AmbientPoint> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    let mut coords = vec![Rational::zero(); n + 1];
    coords[i - 1] = Rational::from_integer(1.into());
    coords[i] = Rational::from_integer((-1).into());
    Ok(AmbientPoint { coords })
}

/// `w_i`: the first `i` coordinates are `1 - i/(n+1)`, the rest `-i/(n+1)`.
pub fn fundamental_weight_ambient(n: usize, i: usize) -> Result<AmbientPoint> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    let low = Rational::new(BigInt::from(-(i as i64)), BigInt::from(n + 1));
    let high = &low + Rational::from_integer(1.into());
    let coords = (0..=n).map(|k| if k < i { high.clone() } else { low.clone() }).collect();
    Ok(AmbientPoint { coords })
}

pub fn to_ambient(v: &WeightVector) -> AmbientPoint {
    let n = v.rank();
    // coordinate k is sum_{i >= k} x_i - (sum_i i*x_i)/(n+1)
    let weighted: Rational = v
        .x
        .iter()
        .enumerate()
        .map(|(i, xi)| xi * Rational::from_integer(BigInt::from(i + 1)))
        .sum();
    let offset = weighted / Rational::from_integer(BigInt::from(n + 1));
    let mut coords = vec![Rational::zero(); n + 1];
    let mut tail = Rational::zero();
    for k in (0..=n).rev() {
        if k < n {
            tail += &v.x[k];
        }
        coords[k] = &tail - &offset;
    }
    AmbientPoint { coords }
}

/// `x_i = (p, alpha_i) = p_i - p_{i+1}`.
pub fn to_weight_coords(p: &AmbientPoint) -> WeightVector {
    WeightVector { x: p.coords.windows(2).map(|w| &w[0] - &w[1]).collect() }
}

/// The unique dominant point of the permutation orbit: coordinates sorted
/// in non-increasing order.
pub fn dominant_representative(p: &AmbientPoint) -> AmbientPoint {
    let mut coords = p.coords.clone();
    coords.sort_by(|a, b| b.cmp(a));
    AmbientPoint { coords }
}

/// A subset of the simple reflections `{s_1, ..., s_n}`, by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleSubset {
    n: usize,
    members: BTreeSet<usize>,
}

impl SimpleSubset {
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::IndexOutOfRange { index: bad, max: n });
        }
        Ok(SimpleSubset { n, members })
    }

    pub fn empty(n: usize) -> Self {
        SimpleSubset { n, members: BTreeSet::new() }
    }

    pub fn full(n: usize) -> Self {
        SimpleSubset { n, members: (1..=n).collect() }
    }

    /// `{1, ..., n}` without `i`.
    pub fn without(n: usize, i: usize) -> Result<Self> {
        let mut s = Self::full(n);
        if !s.members.remove(&i) {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        Ok(s)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).len() <= 1
    }

    /// Every subset of `{1, ..., n}`, ordered by bitmask.
    pub fn all(n: usize) -> impl Iterator<Item = SimpleSubset> {
        assert!(n < 32, "too many subsets");
        (0u32..(1 << n)).map(move |mask| SimpleSubset {
            n,
            members: (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect(),
        })
    }
}

impl fmt::Display for SimpleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.members.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// The connected set `{1+offset, ..., size+offset}` of simple reflections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub size: usize,
    pub offset: usize,
}

impl Interval {
    pub fn members(&self) -> std::ops::RangeInclusive<usize> {
        self.offset + 1..=self.offset + self.size
    }
}

/// Maximal runs of consecutive indices, in increasing order.
pub fn connected_components(j: &SimpleSubset) -> Vec<Interval> {
    let mut runs: Vec<Interval> = Vec::new();
    for i in j.members() {
        match runs.last_mut() {
            Some(run) if run.offset + run.size + 1 == i => run.size += 1,
            _ => runs.push(Interval { size: 1, offset: i - 1 }),
        }
    }
    runs
}

/// `{ i : x_i = 0 }`, the simple reflections fixing a dominant weight.
pub fn stabilizer(v: &WeightVector) -> Result<SimpleSubset> {
    v.ensure_dominant()?;
    Ok(SimpleSubset {
        n: v.rank(),
        members: v.x.iter().enumerate().filter(|(_, c)| c.is_zero()).map(|(i, _)| i + 1).collect(),
    })
}
