//! Volume polynomials of the type-`A_n` permutohedron.
//!
//! `V_n(x)` is the Euclidean `n`-volume of the convex hull of all coordinate
//! permutations of `x_1*w_1 + ... + x_n*w_n`. It is computed two ways:
//!
//! * [`volume_dyck`]: a sum over Dyck paths of products of the degree-one
//!   polynomials attached to their north steps, and
//! * [`volume_recursive`]: the facet recursion
//!   `V_n = sum_i G'_{n,i} * V_{i-1} * V_{n-i}[i]`, which comes from cutting
//!   the polytope into pyramids over its facets.
//!
//! Both are exact. [`pyramid_eval`] evaluates the facet decomposition in
//! floating point from the geometric data alone and is used as a check.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::dyck::{self, north_step_labels, DyckPath};
use crate::error::{Error, Result};
use crate::ratpoly::{to_f64, Rational, RationalPoly, ScaledPoly};
use crate::type_a::{connected_components, inverse_cartan_entry, SimpleSubset, WeightVector};

/// Which normalisation of the north-step polynomials to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GammaKind {
    /// `(1/d) * C(d+1, i) * sum_j c_{d,i,j} x_{j+u}`; rational coefficients.
    Rational,
    /// The rational form divided by `sqrt(c_{d,i,i})`; this is the form in
    /// which the Dyck sum equals the volume without a global factor.
    Primed,
}

fn binomial(n: usize, k: usize) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// The degree-one polynomial attached to label `(d, i, u)`.
pub fn gamma(d: usize, i: usize, u: usize, kind: GammaKind) -> Result<ScaledPoly> {
    if i == 0 || i > d {
        return Err(Error::InvalidIndices { d, i });
    }
    let scale = Rational::new(binomial(d + 1, i), BigInt::from(d));
    let coeffs = (1..=d)
        .map(|j| Ok(inverse_cartan_entry(d, i, j)? * &scale))
        .collect::<Result<Vec<_>>>()?;
    let linear: ScaledPoly = RationalPoly::linear(&coeffs).shift(u as u32).into();
    Ok(match kind {
        GammaKind::Rational => linear,
        GammaKind::Primed => {
            let c = inverse_cartan_entry(d, i, i)?;
            linear.mul(&ScaledPoly::sqrt_of(&c.recip()))
        }
    })
}

/// Product of [`gamma`] over the north steps of `path`.
pub fn gamma_path(path: &DyckPath, kind: GammaKind) -> ScaledPoly {
    north_step_labels(path).iter().fold(ScaledPoly::one(), |acc, l| {
        acc.mul(&gamma(l.d, l.i, l.u, kind).expect("labels satisfy 1 <= i <= d"))
    })
}

/// `prod_N c_{d_N, i_N, i_N}` over the north steps; always `1/(n+1)`.
pub fn path_constant(path: &DyckPath) -> Rational {
    north_step_labels(path)
        .iter()
        .map(|l| inverse_cartan_entry(l.d, l.i, l.i).expect("labels satisfy 1 <= i <= d"))
        .product()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    DyckSum,
    Recursion,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dyck" => Ok(Method::DyckSum),
            "recursive" => Ok(Method::Recursion),
            other => Err(Error::Parse(format!("unknown method {other:?}"))),
        }
    }
}

/// `V_n` together with how it was obtained.
#[derive(Clone, Debug)]
pub struct VolumePolynomial {
    pub n: usize,
    pub value: ScaledPoly,
    pub method: Method,
}

impl PartialEq for VolumePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.value == other.value
    }
}

pub fn volume(n: usize, method: Method) -> Result<VolumePolynomial> {
    match method {
        Method::DyckSum => volume_dyck(n),
        Method::Recursion => Ok(volume_recursive(n)),
    }
}

/// `V_n` as the sum of the primed path products over all Dyck paths of
/// size `n`, folded in parallel on the current rayon pool.
pub fn volume_dyck(n: usize) -> Result<VolumePolynomial> {
    volume_dyck_via(n, GammaKind::Primed)
}

/// Same as [`volume_dyck`]; with [`GammaKind::Rational`] the path products
/// are summed first and the total is multiplied by `sqrt(n+1)`.
pub fn volume_dyck_via(n: usize, kind: GammaKind) -> Result<VolumePolynomial> {
    let (sum, _) = dyck_sum(n, kind)?;
    let value = match kind {
        GammaKind::Primed => sum,
        GammaKind::Rational => sum.mul(&ScaledPoly::new(RationalPoly::one(), n as u64 + 1)),
    };
    Ok(VolumePolynomial { n, value, method: Method::DyckSum })
}

/// The raw path sum and the number of addends folded into it.
pub fn dyck_sum(n: usize, kind: GammaKind) -> Result<(ScaledPoly, u64)> {
    let paths = dyck::enumerate(n)?;
    let (sum, count) = paths
        .par_bridge()
        .fold(
            || (ScaledPoly::zero(), 0u64),
            |(acc, count), path| {
                let product = gamma_path(&path, kind);
                (add_same_radicand(&acc, &product), count + 1)
            },
        )
        .reduce(
            || (ScaledPoly::zero(), 0u64),
            |(a, ca), (b, cb)| (add_same_radicand(&a, &b), ca + cb),
        );
    Ok((sum, count))
}

fn add_same_radicand(a: &ScaledPoly, b: &ScaledPoly) -> ScaledPoly {
    a.add(b).expect("all addends of a volume sum share the radicand of n+1")
}

/// `V_0, ..., V_n` by the facet recursion.
pub fn recursive_table(n: usize) -> Vec<ScaledPoly> {
    let mut table: Vec<ScaledPoly> = vec![ScaledPoly::one()];
    for m in 1..=n {
        let mut total = ScaledPoly::zero();
        for i in 1..=m {
            let facet = gamma(m, i, 0, GammaKind::Primed)
                .expect("1 <= i <= m")
                .mul(&table[i - 1])
                .mul(&table[m - i].shift(i as u32));
            total = add_same_radicand(&total, &facet);
        }
        table.push(total);
    }
    table
}

pub fn volume_recursive(n: usize) -> VolumePolynomial {
    let value = recursive_table(n).pop().expect("table holds V_0..V_n");
    VolumePolynomial { n, value, method: Method::Recursion }
}

/// Volume of the face spanned by the orbit of the parabolic subgroup for
/// `j`: the product over connected components `{1+u, ..., d+u}` of
/// `V_d[u]`. Only variables indexed by `j` occur.
pub fn face_volume(j: &SimpleSubset) -> ScaledPoly {
    let components = connected_components(j);
    let largest = components.iter().map(|c| c.size).max().unwrap_or(0);
    let table = recursive_table(largest);
    face_volume_from(&table, j)
}

fn face_volume_from(table: &[ScaledPoly], j: &SimpleSubset) -> ScaledPoly {
    connected_components(j)
        .iter()
        .fold(ScaledPoly::one(), |acc, c| acc.mul(&table[c.size].shift(c.offset as u32)))
}

/// Floating-point facet decomposition
/// `(1/n) * sum_i C(n+1, i) * (lambda, w_i)/|w_i| * V_{S - {i}}(lambda)`.
pub fn pyramid_eval(x: &WeightVector) -> Result<f64> {
    x.ensure_dominant()?;
    let n = x.rank();
    if n == 0 {
        return Ok(1.0);
    }
    let table = recursive_table(n - 1);
    let mut total = 0.0;
    for i in 1..=n {
        let mut pairing = Rational::zero();
        for (j, xj) in x.coords().iter().enumerate() {
            pairing += xj * inverse_cartan_entry(n, j + 1, i)?;
        }
        let norm = to_f64(&inverse_cartan_entry(n, i, i)?).sqrt();
        let facet = face_volume_from(&table, &SimpleSubset::without(n, i)?)
            .evaluate(x.coords())?
            .to_f64();
        let index = to_f64(&Rational::from_integer(binomial(n + 1, i)));
        total += index * to_f64(&pairing) / norm * facet;
    }
    Ok(total / n as f64)
}

/// `V_n` evaluated at `x` in floating point.
pub fn evaluate_volume(poly: &ScaledPoly, x: &WeightVector) -> Result<f64> {
    Ok(poly.evaluate(x.coords())?.to_f64())
}

/// The constant `1/(n+1)` that every path constant equals.
pub fn expected_path_constant(n: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(n + 1))
}
