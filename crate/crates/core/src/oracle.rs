//! Geometric checks that never touch the path polynomials: the vertex orbit,
//! a majorization membership test, an exact-input shoelace area in rank 2
//! and a seeded Monte Carlo volume estimate.
//!
//! The membership test uses the classical description of the convex hull of
//! a permutation orbit: `p` lies in the hull of the orbit of `lambda` iff,
//! for every `k`, the sum of the `k` largest coordinates of `p` is at most
//! the corresponding sum for `lambda` (both totals being zero).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratpoly::Rational;
use crate::type_a::{simple_root_ambient, to_ambient, AmbientPoint, WeightVector};
use crate::volume::{pyramid_eval, volume_dyck, volume_recursive};

/// Seed used when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0x5EED_2024;

/// Monte Carlo samples are split into this many independently seeded
/// chunks, regardless of the number of worker threads, so the estimate only
/// depends on `(seed, samples)`.
pub const MONTE_CARLO_CHUNKS: u64 = 64;

/// Relative tolerance for floating-point cross-checks.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Monte Carlo acceptance band in standard errors.
pub const MONTE_CARLO_SIGMAS: f64 = 4.0;

/// The distinct coordinate permutations of a dominant weight, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    pub n: usize,
    pub vertices: Vec<AmbientPoint>,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Lexicographic successor of a permutation of a multiset, in place.
fn next_permutation(values: &mut [Rational]) -> bool {
    let Some(pivot) = (1..values.len()).rev().find(|&k| values[k - 1] < values[k]) else {
        return false;
    };
    let swap = (pivot..values.len())
        .rev()
        .find(|&k| values[k] > values[pivot - 1])
        .expect("pivot has a larger element to its right");
    values.swap(pivot - 1, swap);
    values[pivot..].reverse();
    true
}

pub fn orbit_vertices(x: &WeightVector) -> Result<VertexSet> {
    x.ensure_dominant()?;
    let mut coords = to_ambient(x).coords().to_vec();
    coords.sort();
    let mut vertices = Vec::new();
    loop {
        vertices.push(AmbientPoint::new(coords.clone()).expect("permutation keeps the zero sum"));
        if !next_permutation(&mut coords) {
            break;
        }
    }
    Ok(VertexSet { n: x.rank(), vertices })
}

fn descending_prefix_sums(coords: &[Rational]) -> Vec<Rational> {
    let mut sorted = coords.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    sorted
        .iter()
        .scan(Rational::from_integer(0.into()), |acc, c| {
            *acc += c;
            Some(acc.clone())
        })
        .collect()
}

/// Exact membership of `p` in the permutohedron of `x`.
pub fn contains(x: &WeightVector, p: &AmbientPoint) -> Result<bool> {
    x.ensure_dominant()?;
    if p.rank() != x.rank() {
        return Err(Error::DimensionMismatch { expected: x.rank(), actual: p.rank() });
    }
    let bound = descending_prefix_sums(to_ambient(x).coords());
    let sums = descending_prefix_sums(p.coords());
    Ok(sums.iter().zip(&bound).all(|(s, b)| s <= b))
}

/// Floating-point version of [`contains`] with the bound prepared once.
#[derive(Clone, Debug)]
struct Majorization {
    bound: Vec<f64>,
    slack: f64,
}

impl Majorization {
    fn new(lambda: &[f64]) -> Self {
        let mut sorted = lambda.to_vec();
        sorted.sort_by(|a, b| b.total_cmp(a));
        let bound: Vec<f64> = sorted
            .iter()
            .scan(0.0, |acc, c| {
                *acc += c;
                Some(*acc)
            })
            .collect();
        let scale = lambda.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        Majorization { bound, slack: 1e-12 * scale.max(1.0) }
    }

    fn contains(&self, p: &mut [f64]) -> bool {
        p.sort_by(|a, b| b.total_cmp(a));
        let mut acc = 0.0;
        for (c, b) in p.iter().zip(&self.bound) {
            acc += c;
            if acc > b + self.slack {
                return false;
            }
        }
        true
    }
}

/// Gram-Schmidt on the simple roots: an orthonormal basis of the zero-sum
/// hyperplane of `R^{n+1}`.
pub fn orthonormal_basis(n: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    for i in 1..=n {
        let mut v = simple_root_ambient(n, i).expect("1 <= i <= n").to_f64();
        for b in &basis {
            let proj: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
            v.iter_mut().zip(b).for_each(|(a, c)| *a -= proj * c);
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        v.iter_mut().for_each(|a| *a /= norm);
        basis.push(v);
    }
    basis
}

fn project(basis: &[Vec<f64>], p: &[f64]) -> Vec<f64> {
    basis.iter().map(|b| b.iter().zip(p).map(|(a, c)| a * c).sum()).collect()
}

/// Area of the rank-2 permutohedron by the shoelace formula.
pub fn area_2d(x: &WeightVector) -> Result<f64> {
    if x.rank() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, actual: x.rank() });
    }
    let basis = orthonormal_basis(2);
    let mut points: Vec<Vec<f64>> = orbit_vertices(x)?
        .vertices
        .iter()
        .map(|v| project(&basis, &v.to_f64()))
        .collect();
    if points.len() < 3 {
        return Ok(0.0);
    }
    let count = points.len() as f64;
    let cx = points.iter().map(|p| p[0]).sum::<f64>() / count;
    let cy = points.iter().map(|p| p[1]).sum::<f64>() / count;
    points.sort_by(|a, b| {
        let ta = (a[1] - cy).atan2(a[0] - cx);
        let tb = (b[1] - cy).atan2(b[0] - cx);
        ta.total_cmp(&tb)
    });
    let twice: f64 = (0..points.len())
        .map(|k| {
            let (p, q) = (&points[k], &points[(k + 1) % points.len()]);
            p[0] * q[1] - q[0] * p[1]
        })
        .sum();
    Ok(twice.abs() / 2.0)
}

/// Distance between the two orbit vertices in rank 1.
pub fn segment_length(x: &WeightVector) -> Result<f64> {
    if x.rank() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, actual: x.rank() });
    }
    let vs = orbit_vertices(x)?;
    let first = vs.vertices[0].to_f64();
    let last = vs.vertices[vs.len() - 1].to_f64();
    Ok(first.iter().zip(&last).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub mean: f64,
    pub standard_error: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Hit-or-miss estimate over the bounding box of the vertices, taken in an
/// orthonormal basis of the hyperplane so that box volume and polytope
/// volume use the same measure.
///
/// Chunk `c` draws from ChaCha8 seeded with `seed` on stream `c`.
pub fn monte_carlo_volume(x: &WeightVector, samples: u64, seed: u64) -> Result<VolumeEstimate> {
    x.ensure_dominant()?;
    let n = x.rank();
    if n == 0 {
        return Err(Error::DimensionMismatch { expected: 1, actual: 0 });
    }
    let degenerate = VolumeEstimate { mean: 0.0, standard_error: 0.0, samples, seed };
    if samples == 0 || x.is_zero() {
        return Ok(degenerate);
    }

    let basis = orthonormal_basis(n);
    let projected: Vec<Vec<f64>> = orbit_vertices(x)?
        .vertices
        .iter()
        .map(|v| project(&basis, &v.to_f64()))
        .collect();
    let lo: Vec<f64> = (0..n).map(|k| projected.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> =
        (0..n).map(|k| projected.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max)).collect();
    let box_volume: f64 = lo.iter().zip(&hi).map(|(l, h)| h - l).product();
    if box_volume <= 0.0 {
        return Ok(degenerate);
    }

    let test = Majorization::new(&to_ambient(x).to_f64());
    let hits: u64 = (0..MONTE_CARLO_CHUNKS)
        .into_par_iter()
        .map(|chunk| {
            let quota = samples / MONTE_CARLO_CHUNKS + u64::from(chunk < samples % MONTE_CARLO_CHUNKS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let mut point = vec![0.0; n + 1];
            let mut hits = 0u64;
            for _ in 0..quota {
                point.iter_mut().for_each(|c| *c = 0.0);
                for k in 0..n {
                    let t = lo[k] + (hi[k] - lo[k]) * rng.gen::<f64>();
                    point.iter_mut().zip(&basis[k]).for_each(|(c, b)| *c += t * b);
                }
                if test.contains(&mut point) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();

    let total = samples as f64;
    let fraction = hits as f64 / total;
    let standard_error = if samples > 1 {
        let variance = fraction * (1.0 - fraction) * total / (total - 1.0);
        box_volume * (variance / total).sqrt()
    } else {
        0.0
    };
    Ok(VolumeEstimate { mean: fraction * box_volume, standard_error, samples, seed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub samples: u64,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { samples: 1_000_000, seed: DEFAULT_SEED }
    }
}

/// One line of a [`VerificationReport`]. `tolerance` is the absolute bound
/// that `|observed - expected|` was held to.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub observed: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn within(name: &str, expected: f64, observed: f64, tolerance: f64) -> Self {
        Check {
            name: name.to_string(),
            expected,
            observed,
            tolerance,
            pass: (observed - expected).abs() <= tolerance,
        }
    }

    fn relative(name: &str, expected: f64, observed: f64) -> Self {
        Self::within(name, expected, observed, FLOAT_TOLERANCE * expected.abs().max(1.0))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub x: Vec<String>,
    /// Exact value of the volume polynomial at `x`, e.g. `"3*sqrt(3)"`.
    pub formula_exact: String,
    pub formula_value: f64,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monte_carlo: Option<VolumeEstimate>,
    pub passed: bool,
}

/// Evaluates the Dyck-sum polynomial at `x` and compares it against the
/// recursion, the floating-point facet decomposition and a geometric oracle
/// (segment length for rank 1, shoelace area for rank 2, Monte Carlo above).
pub fn verify(x: &WeightVector, budget: &Budget) -> Result<VerificationReport> {
    x.ensure_dominant()?;
    let n = x.rank();
    let dyck = volume_dyck(n)?.value;
    let recursive = volume_recursive(n).value;
    let exact = dyck.evaluate(x.coords())?;
    let formula = exact.to_f64();

    let mut checks = Vec::new();
    let recursive_value = recursive.evaluate(x.coords())?.to_f64();
    checks.push(Check {
        name: "dyck_equals_recursive".into(),
        expected: recursive_value,
        observed: formula,
        tolerance: 0.0,
        pass: dyck == recursive,
    });
    checks.push(Check::relative("pyramid", formula, pyramid_eval(x)?));

    let mut monte_carlo = None;
    match n {
        0 => {}
        1 => checks.push(Check::relative("segment_length", formula, segment_length(x)?)),
        2 => checks.push(Check::relative("shoelace_area", formula, area_2d(x)?)),
        _ => {
            let estimate = monte_carlo_volume(x, budget.samples, budget.seed)?;
            checks.push(Check::within(
                "monte_carlo",
                formula,
                estimate.mean,
                MONTE_CARLO_SIGMAS * estimate.standard_error,
            ));
            monte_carlo = Some(estimate);
        }
    }

    let passed = checks.iter().all(|c| c.pass);
    Ok(VerificationReport {
        n,
        x: x.coords().iter().map(ToString::to_string).collect(),
        formula_exact: exact.to_string(),
        formula_value: formula,
        checks,
        monte_carlo,
        passed,
    })
}
