//! Exact sparse multivariate polynomials over the rationals.
//!
//! [`RationalPoly`] is a map from [`Monomial`] to a non-zero [`Rational`]
//! coefficient. Variables are 1-based (`x1, x2, ...`). [`ScaledPoly`] pairs a
//! polynomial with a squarefree radicand `r` and stands for `poly * sqrt(r)`,
//! which is enough to carry the `sqrt(n+1)` normalisations of the volume
//! formulas without leaving exact arithmetic.
//!
//! Monomials are ordered graded-lexicographically with `x1 > x2 > ...`;
//! rendering emits terms from the largest monomial down.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Shorthand for `num / den`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q` or `p`, with an optional sign. Decimals are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    if text.is_empty() || text.contains('.') || text.contains('e') || text.contains('E') {
        return Err(Error::Parse(format!("not a rational: {text:?}")));
    }
    Rational::from_str(text).map_err(|e| Error::Parse(format!("not a rational: {text:?} ({e})")))
}

/// Splits `r = s^2 * q` with `q` squarefree; returns `(s, q)`.
pub fn squarefree_split(r: u64) -> (u64, u64) {
    assert!(r > 0, "radicand must be positive");
    let mut square_root = 1u64;
    let mut rest = r;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        while rest.is_multiple_of(p * p) {
            rest /= p * p;
            square_root *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (square_root, rest)
}

pub fn is_squarefree(r: u64) -> bool {
    r > 0 && squarefree_split(r).0 == 1
}

/// A product of variables with positive exponents, stored as
/// `(variable, exponent)` pairs sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    powers: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// The single variable `x_index`. Panics on index 0.
    pub fn var(index: u32) -> Self {
        assert!(index >= 1, "variables are 1-based");
        Monomial { powers: vec![(index, 1)] }
    }

    /// Builds a monomial from `(variable, exponent)` pairs in any order.
    /// Zero exponents are dropped and repeated variables accumulate.
    pub fn from_powers<I: IntoIterator<Item = (u32, u32)>>(powers: I) -> Self {
        let mut map = BTreeMap::new();
        for (var, exp) in powers {
            assert!(var >= 1, "variables are 1-based");
            if exp > 0 {
                *map.entry(var).or_insert(0) += exp;
            }
        }
        Monomial { powers: map.into_iter().collect() }
    }

    pub fn powers(&self) -> &[(u32, u32)] {
        &self.powers
    }

    pub fn exponent(&self, var: u32) -> u32 {
        self.powers
            .binary_search_by_key(&var, |&(v, _)| v)
            .map(|pos| self.powers[pos].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.powers.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    /// Largest variable index present, 0 for the constant monomial.
    pub fn max_var(&self) -> u32 {
        self.powers.last().map_or(0, |&(v, _)| v)
    }

    pub fn shift(&self, by: u32) -> Self {
        Monomial { powers: self.powers.iter().map(|&(v, e)| (v + by, e)).collect() }
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.powers.iter(), other.powers.iter());
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    // a smaller variable index present on one side only is the
                    // larger variable with a positive exponent
                    match va.cmp(&vb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {}
                    }
                    match ea.cmp(&eb) {
                        Ordering::Equal => {}
                        unequal => return unequal,
                    }
                }
            }
        }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic, `x1 > x2 > ...`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        let mut powers = Vec::with_capacity(self.powers.len() + rhs.powers.len());
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() && j < rhs.powers.len() {
            let (va, ea) = self.powers[i];
            let (vb, eb) = rhs.powers[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    powers.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    powers.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    powers.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        powers.extend_from_slice(&self.powers[i..]);
        powers.extend_from_slice(&rhs.powers[j..]);
        Monomial { powers }
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms([(Monomial::one(), c)])
    }

    pub fn var(index: u32) -> Self {
        Self::from_terms([(Monomial::var(index), Rational::one())])
    }

    /// Collects terms, merging equal monomials and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut poly = Self::zero();
        for (m, c) in terms {
            poly.add_term(m, c);
        }
        poly
    }

    /// `sum_j coeffs[j] * x_{j+1}`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| (Monomial::var(j as u32 + 1), c.clone())),
        )
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|d| d == first),
        }
    }

    pub fn max_var(&self) -> u32 {
        self.terms.keys().map(Monomial::max_var).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Substitutes `x_j -> x_{j+by}`.
    pub fn shift(&self, by: u32) -> Self {
        if by == 0 {
            return self.clone();
        }
        RationalPoly {
            terms: self.terms.iter().map(|(m, c)| (m.shift(by), c.clone())).collect(),
        }
    }

    /// Substitutes `x_j -> x_{n+1-j}` for every `j <= n`. Panics if the
    /// polynomial uses a variable beyond `n`.
    pub fn reverse_variables(&self, n: u32) -> Self {
        assert!(self.max_var() <= n, "polynomial uses variables beyond x{n}");
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            (Monomial::from_powers(m.powers().iter().map(|&(v, e)| (n + 1 - v, e))), c.clone())
        }))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        let needed = self.max_var();
        if (needed as usize) > point.len() {
            return Err(Error::MissingVariable { needed, supplied: point.len() });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m.powers() {
                term *= num_traits::pow(point[v as usize - 1].clone(), e as usize);
            }
            total += term;
        }
        Ok(total)
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;

    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;

    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;

    fn neg(self) -> RationalPoly {
        RationalPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;

    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        let mut out = RationalPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma * mb, ca * cb);
            }
        }
        out
    }
}

/// `poly * sqrt(radicand)` with `radicand` squarefree, and `radicand = 1`
/// whenever `poly` is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledPoly {
    poly: RationalPoly,
    radicand: u64,
}

impl Default for ScaledPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<RationalPoly> for ScaledPoly {
    fn from(poly: RationalPoly) -> Self {
        ScaledPoly { poly, radicand: 1 }
    }
}

impl ScaledPoly {
    /// Canonicalises `poly * sqrt(radicand)`: square factors of the radicand
    /// move into the coefficients. Panics on a zero radicand.
    pub fn new(poly: RationalPoly, radicand: u64) -> Self {
        let (root, rest) = squarefree_split(radicand);
        Self::canonical(poly.scale(&Rational::from_integer(BigInt::from(root))), rest)
    }

    fn canonical(poly: RationalPoly, radicand: u64) -> Self {
        let radicand = if poly.is_zero() { 1 } else { radicand };
        ScaledPoly { poly, radicand }
    }

    pub fn zero() -> Self {
        ScaledPoly { poly: RationalPoly::zero(), radicand: 1 }
    }

    pub fn one() -> Self {
        RationalPoly::one().into()
    }

    /// The constant `sqrt(q)` for a non-negative rational `q`.
    pub fn sqrt_of(q: &Rational) -> Self {
        assert!(!q.is_negative(), "square root of a negative rational");
        if q.is_zero() {
            return Self::zero();
        }
        // sqrt(a/b) = sqrt(a*b) / b
        let product = (q.numer() * q.denom())
            .to_u64()
            .expect("radicand exceeds 64 bits");
        let poly = RationalPoly::constant(Rational::new(BigInt::one(), q.denom().clone()));
        Self::new(poly, product)
    }

    pub fn poly(&self) -> &RationalPoly {
        &self.poly
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn into_parts(self) -> (RationalPoly, u64) {
        (self.poly, self.radicand)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.poly.degree()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.poly.is_homogeneous()
    }

    pub fn max_var(&self) -> u32 {
        self.poly.max_var()
    }

    pub fn add(&self, rhs: &ScaledPoly) -> Result<ScaledPoly> {
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if self.radicand != rhs.radicand {
            return Err(Error::IncompatibleRadicand { left: self.radicand, right: rhs.radicand });
        }
        Ok(Self::canonical(&self.poly + &rhs.poly, self.radicand))
    }

    pub fn mul(&self, rhs: &ScaledPoly) -> ScaledPoly {
        // both radicands squarefree: r1*r2 = g^2 * (r1/g)*(r2/g) with the
        // cofactors coprime, so their product is squarefree too
        let g = self.radicand.gcd(&rhs.radicand);
        let radicand = (self.radicand / g)
            .checked_mul(rhs.radicand / g)
            .expect("radicand exceeds 64 bits");
        let mut poly = &self.poly * &rhs.poly;
        if g != 1 {
            poly = poly.scale(&Rational::from_integer(BigInt::from(g)));
        }
        Self::canonical(poly, radicand)
    }

    pub fn scale(&self, c: &Rational) -> ScaledPoly {
        Self::canonical(self.poly.scale(c), self.radicand)
    }

    pub fn shift(&self, by: u32) -> ScaledPoly {
        ScaledPoly { poly: self.poly.shift(by), radicand: self.radicand }
    }

    pub fn reverse_variables(&self, n: u32) -> ScaledPoly {
        ScaledPoly { poly: self.poly.reverse_variables(n), radicand: self.radicand }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Evaluation> {
        let rational = self.poly.evaluate(point)?;
        let radicand = if rational.is_zero() { 1 } else { self.radicand };
        Ok(Evaluation { rational, radicand })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => render_plain(self),
            Format::Latex => render_latex(self),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_schema()).expect("polynomial schema serialises")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_schema()).expect("polynomial schema serialises")
    }

    fn to_schema(&self) -> PolySchema {
        PolySchema {
            radicand: self.radicand,
            terms: self
                .poly
                .terms()
                .rev()
                .map(|(m, c)| TermSchema {
                    coeff: c.to_string(),
                    exps: m.powers().iter().copied().collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<ScaledPoly> {
        let schema: PolySchema =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_schema(schema)
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<ScaledPoly> {
        let schema: PolySchema =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_schema(schema)
    }

    fn from_schema(schema: PolySchema) -> Result<ScaledPoly> {
        if schema.radicand == 0 {
            return Err(Error::Parse("radicand must be positive".into()));
        }
        let mut terms = Vec::with_capacity(schema.terms.len());
        for term in schema.terms {
            if term.exps.keys().any(|&v| v == 0) {
                return Err(Error::Parse("variable indices are 1-based".into()));
            }
            terms.push((Monomial::from_powers(term.exps), parse_rational(&term.coeff)?));
        }
        Ok(ScaledPoly::new(RationalPoly::from_terms(terms), schema.radicand))
    }
}

impl fmt::Display for ScaledPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_plain(self))
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&plain_terms(self))
    }
}

/// The exact value `rational * sqrt(radicand)` of an evaluated [`ScaledPoly`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub rational: Rational,
    pub radicand: u64,
}

impl Evaluation {
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.rational) * (self.radicand as f64).sqrt()
    }
}

impl fmt::Display for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 1 {
            write!(f, "{}", self.rational)
        } else if self.rational.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", self.rational, self.radicand)
        }
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Latex,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Format::Plain),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolySchema {
    radicand: u64,
    terms: Vec<TermSchema>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermSchema {
    coeff: String,
    exps: BTreeMap<u32, u32>,
}

fn plain_monomial(m: &Monomial) -> String {
    m.powers()
        .iter()
        .map(|&(v, e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn plain_terms(poly: &RationalPoly) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in poly.terms().rev().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let magnitude = c.abs();
        if m.is_one() {
            out.push_str(&magnitude.to_string());
        } else if magnitude.is_one() {
            out.push_str(&plain_monomial(m));
        } else {
            out.push_str(&format!("{magnitude}*{}", plain_monomial(m)));
        }
    }
    out
}

fn render_plain(p: &ScaledPoly) -> String {
    let body = plain_terms(&p.poly);
    if p.radicand == 1 {
        body
    } else {
        format!("sqrt({})*({body})", p.radicand)
    }
}

fn latex_braced(n: u32) -> String {
    if n < 10 {
        n.to_string()
    } else {
        format!("{{{n}}}")
    }
}

fn latex_monomial(m: &Monomial) -> String {
    m.powers()
        .iter()
        .map(|&(v, e)| {
            if e == 1 {
                format!("x_{}", latex_braced(v))
            } else {
                format!("x_{}^{}", latex_braced(v), latex_braced(e))
            }
        })
        .collect()
}

fn latex_coefficient(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn render_latex(p: &ScaledPoly) -> String {
    let body = if p.poly.is_zero() {
        "0".to_string()
    } else {
        let mut out = String::new();
        for (k, (m, c)) in p.poly.terms().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let magnitude = c.abs();
            if m.is_one() {
                out.push_str(&latex_coefficient(&magnitude));
            } else {
                if !magnitude.is_one() {
                    out.push_str(&latex_coefficient(&magnitude));
                }
                out.push_str(&latex_monomial(m));
            }
        }
        out
    };
    if p.radicand == 1 {
        body
    } else {
        format!("\\sqrt{{{}}}\\left({body}\\right)", p.radicand)
    }
}
