//! The rank-one group `L(p)` generated by `x_1..x_n, c` with `p_i x_i = c`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Rational, Result};

/// A point `(u:w)` of the projective line with rational coordinates.
///
/// Equality is on the stored pair; use [`Point::projectively_equal`] to
/// compare points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    u: Rational,
    w: Rational,
}

impl Point {
    pub fn new(u: Rational, w: Rational) -> Result<Self> {
        if u.is_zero() && w.is_zero() {
            return Err(Error::InvalidParameters("point (0:0)".into()));
        }
        Ok(Point { u, w })
    }

    pub fn from_ints(u: i64, w: i64) -> Result<Self> {
        Point::new(Rational::from_integer(u.into()), Rational::from_integer(w.into()))
    }

    /// `(1:0)`.
    pub fn infinity() -> Self {
        Point { u: Rational::one(), w: Rational::zero() }
    }

    /// `(0:1)`.
    pub fn zero() -> Self {
        Point { u: Rational::zero(), w: Rational::one() }
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }

    pub fn w(&self) -> &Rational {
        &self.w
    }

    pub fn projectively_equal(&self, other: &Point) -> bool {
        &self.u * &other.w == &other.u * &self.w
    }

    /// `u/w`, or `None` at `(1:0)`.
    pub fn affine(&self) -> Option<Rational> {
        if self.w.is_zero() {
            None
        } else {
            Some(&self.u / &self.w)
        }
    }

    /// Default point for index `i` (0-based): `(1:0), (0:1), (1:1), (2:1), ...`.
    pub fn default_for(i: usize) -> Self {
        match i {
            0 => Point::infinity(),
            1 => Point::zero(),
            k => Point::from_ints(k as i64 - 1, 1).expect("nonzero"),
        }
    }

    /// Parses `"u:w"` with `u`, `w` integers or fractions `p/q`.
    pub fn parse(s: &str) -> Result<Self> {
        let (u, w) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidParameters(format!("point {s:?} is not of the form u:w")))?;
        Point::new(parse_rational(u)?, parse_rational(w)?)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.u, self.w)
    }
}

/// Parses an integer or a fraction `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::UnsupportedCoefficient(format!("{s:?} is not an exact rational"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coord {
    Int(i64),
    Text(String),
    Float(f64),
}

fn coord_out(q: &Rational) -> Coord {
    match (q.is_integer(), q.to_integer().to_i64()) {
        (true, Some(v)) => Coord::Int(v),
        _ => Coord::Text(q.to_string()),
    }
}

fn coord_in(c: Coord) -> Result<Rational> {
    match c {
        Coord::Int(v) => Ok(Rational::from_integer(v.into())),
        Coord::Text(s) => parse_rational(&s),
        Coord::Float(x) => Err(Error::UnsupportedCoefficient(format!(
            "{x} is a float; write rationals as \"p/q\""
        ))),
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [coord_out(&self.u), coord_out(&self.w)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [u, w] = <[Coord; 2]>::deserialize(d)?;
        let u = coord_in(u).map_err(serde::de::Error::custom)?;
        let w = coord_in(w).map_err(serde::de::Error::custom)?;
        Point::new(u, w).map_err(serde::de::Error::custom)
    }
}

/// Weights `p` and points `lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParameters", into = "RawParameters")]
pub struct Parameters {
    weights: Vec<i64>,
    points: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct RawParameters {
    p: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<Vec<Point>>,
}

impl TryFrom<RawParameters> for Parameters {
    type Error = Error;
    fn try_from(raw: RawParameters) -> Result<Self> {
        match raw.lambda {
            Some(points) => Parameters::new(raw.p, points),
            None => Parameters::with_default_points(raw.p),
        }
    }
}

impl From<Parameters> for RawParameters {
    fn from(p: Parameters) -> Self {
        RawParameters { p: p.weights, lambda: Some(p.points) }
    }
}

impl Parameters {
    pub fn new(weights: Vec<i64>, points: Vec<Point>) -> Result<Self> {
        if weights.len() != points.len() {
            return Err(Error::InvalidParameters(format!(
                "{} weights but {} points",
                weights.len(),
                points.len()
            )));
        }
        if let Some(p) = weights.iter().find(|&&p| p < 2) {
            return Err(Error::InvalidParameters(format!("weight {p} < 2")));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i].projectively_equal(&points[j]) {
                    return Err(Error::InvalidParameters(format!(
                        "points {} and {} coincide: {}",
                        i + 1,
                        j + 1,
                        points[i]
                    )));
                }
            }
        }
        Ok(Parameters { weights, points })
    }

    /// Uses [`Point::default_for`] for every index.
    pub fn with_default_points(weights: Vec<i64>) -> Result<Self> {
        let points = (0..weights.len()).map(Point::default_for).collect();
        Parameters::new(weights, points)
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn lcm(&self) -> i64 {
        self.weights.iter().fold(1, |l, &p| l.lcm(&p))
    }

    /// `points[0] = (1:0)` and `points[1] = (0:1)`.
    pub fn is_normalized(&self) -> bool {
        self.n() >= 2
            && self.points[0].projectively_equal(&Point::infinity())
            && self.points[1].projectively_equal(&Point::zero())
    }

    /// Reduces raw coefficients `sum raw_i x_i + c_raw c` to normal form.
    pub fn normal_form(&self, raw: &[i64], c_raw: i64) -> Result<LElement> {
        if raw.len() != self.n() {
            return Err(Error::ParameterMismatch(format!(
                "{} coefficients for {} weights",
                raw.len(),
                self.n()
            )));
        }
        let mut c = c_raw;
        let xi = raw
            .iter()
            .zip(&self.weights)
            .map(|(&a, &p)| {
                c += a.div_euclid(p);
                a.rem_euclid(p)
            })
            .collect();
        Ok(LElement { weights: self.weights.clone(), xi, c })
    }

    pub fn zero(&self) -> LElement {
        LElement { weights: self.weights.clone(), xi: vec![0; self.n()], c: 0 }
    }

    pub fn c(&self) -> LElement {
        LElement { c: 1, ..self.zero() }
    }

    /// The generator `x_i`, 0-based.
    pub fn x(&self, i: usize) -> LElement {
        let mut raw = vec![0; self.n()];
        raw[i] = 1;
        self.normal_form(&raw, 0).expect("length matches")
    }

    /// `omega = (n-2)c - sum x_i`.
    pub fn omega(&self) -> LElement {
        self.normal_form(&vec![-1; self.n()], self.n() as i64 - 2)
            .expect("length matches")
    }

    /// `s = sum x_i`.
    pub fn s(&self) -> LElement {
        self.normal_form(&vec![1; self.n()], 0).expect("length matches")
    }

    /// `s_k = s + k c`.
    pub fn s_a(&self, k: i64) -> LElement {
        self.normal_form(&vec![1; self.n()], k).expect("length matches")
    }

    pub fn special_elements(&self) -> SpecialElements {
        SpecialElements { params: self.clone() }
    }

    fn check(&self, x: &LElement) -> Result<()> {
        if x.weights != self.weights {
            return Err(Error::ParameterMismatch(format!(
                "element over {:?} used with weights {:?}",
                x.weights, self.weights
            )));
        }
        Ok(())
    }
}

/// `c`, `omega`, `s` and `s_a(k)` for fixed parameters.
#[derive(Clone, Debug)]
pub struct SpecialElements {
    params: Parameters,
}

impl SpecialElements {
    pub fn c(&self) -> LElement {
        self.params.c()
    }
    pub fn omega(&self) -> LElement {
        self.params.omega()
    }
    pub fn s(&self) -> LElement {
        self.params.s()
    }
    pub fn s_a(&self, k: i64) -> Result<LElement> {
        if k < 0 {
            return Err(Error::Precondition(format!("s_a needs k >= 0, got {k}")));
        }
        Ok(self.params.s_a(k))
    }
}

/// Normal form `(a_1..a_n; a)` with `0 <= a_i < p_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LElement {
    weights: Vec<i64>,
    xi: Vec<i64>,
    c: i64,
}

/// The serialized shape of an [`LElement`], without its weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LCoords {
    pub xi: Vec<i64>,
    pub c: i64,
}

impl LCoords {
    pub fn into_element(self, params: &Parameters) -> Result<LElement> {
        params.normal_form(&self.xi, self.c)
    }
}

impl Serialize for LElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl LElement {
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Arm coefficients `a_i`.
    pub fn xi(&self) -> &[i64] {
        &self.xi
    }

    /// Coefficient `a` of `c`.
    pub fn c_coeff(&self) -> i64 {
        self.c
    }

    pub fn coords(&self) -> LCoords {
        LCoords { xi: self.xi.clone(), c: self.c }
    }

    fn same_group(&self, other: &LElement) -> Result<()> {
        if self.weights != other.weights {
            return Err(Error::ParameterMismatch(format!(
                "weights {:?} vs {:?}",
                self.weights, other.weights
            )));
        }
        Ok(())
    }

    fn reduced(&self, raw: Vec<i64>, c: i64) -> LElement {
        let mut c = c;
        let xi = raw
            .into_iter()
            .zip(&self.weights)
            .map(|(a, &p)| {
                c += a.div_euclid(p);
                a.rem_euclid(p)
            })
            .collect();
        LElement { weights: self.weights.clone(), xi, c }
    }

    pub fn try_add(&self, other: &LElement) -> Result<LElement> {
        self.same_group(other)?;
        let raw = self.xi.iter().zip(&other.xi).map(|(a, b)| a + b).collect();
        Ok(self.reduced(raw, self.c + other.c))
    }

    pub fn try_sub(&self, other: &LElement) -> Result<LElement> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> LElement {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> LElement {
        let raw = self.xi.iter().map(|a| a * k).collect();
        self.reduced(raw, self.c * k)
    }

    pub fn is_zero(&self) -> bool {
        self.c == 0 && self.xi.iter().all(|&a| a == 0)
    }

    /// Membership in `L_+`.
    pub fn is_positive(&self) -> bool {
        self.c >= 0
    }

    /// `self <= other`, i.e. `other - self` is positive.
    pub fn leq(&self, other: &LElement) -> Result<bool> {
        Ok(other.try_sub(self)?.is_positive())
    }

    /// `0 <= self <= c`.
    pub fn in_interval_0_c(&self) -> bool {
        let support = self.xi.iter().filter(|&&a| a > 0).count() as i64;
        self.c >= 0 && self.c + support <= 1
    }

    /// Indices `i` with `a_i != 0`.
    pub fn support(&self) -> Vec<usize> {
        (0..self.xi.len()).filter(|&i| self.xi[i] != 0).collect()
    }

    /// The degree homomorphism `delta: L -> Z`.
    pub fn degree(&self) -> i64 {
        let l = self.weights.iter().fold(1i64, |l, &p| l.lcm(&p));
        self.xi.iter().zip(&self.weights).map(|(a, p)| a * (l / p)).sum::<i64>() + self.c * l
    }

    pub fn is_torsion(&self) -> bool {
        self.degree() == 0
    }
}

impl fmt::Display for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.xi.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "; {})", self.c)
    }
}

// Operator forms panic on mismatched weights; the `try_*` methods report it.
impl Add for &LElement {
    type Output = LElement;
    fn add(self, rhs: &LElement) -> LElement {
        self.try_add(rhs).expect("elements of the same group")
    }
}

impl Add for LElement {
    type Output = LElement;
    fn add(self, rhs: LElement) -> LElement {
        &self + &rhs
    }
}

impl Sub for &LElement {
    type Output = LElement;
    fn sub(self, rhs: &LElement) -> LElement {
        self.try_sub(rhs).expect("elements of the same group")
    }
}

impl Sub for LElement {
    type Output = LElement;
    fn sub(self, rhs: LElement) -> LElement {
        &self - &rhs
    }
}

impl Neg for &LElement {
    type Output = LElement;
    fn neg(self) -> LElement {
        LElement::neg(self)
    }
}

impl Neg for LElement {
    type Output = LElement;
    fn neg(self) -> LElement {
        LElement::neg(&self)
    }
}

fn require_nontorsion(params: &Parameters, x: &LElement) -> Result<()> {
    params.check(x)?;
    if x.is_torsion() {
        return Err(Error::Precondition(format!("{x} is torsion")));
    }
    Ok(())
}

/// `gcd(p_i, a_i) = 1` for every `i`, with `gcd(p, 0) = p`.
pub fn coprime_criterion(params: &Parameters, x: &LElement) -> Result<bool> {
    require_nontorsion(params, x)?;
    Ok(x.xi.iter().zip(&params.weights).all(|(a, p)| a.gcd(p) == 1))
}

/// Drops indices with `a_i = 0` and divides the rest by `gcd(a_i, p_i)`.
pub fn reduce_parameters(params: &Parameters, x: &LElement) -> Result<(Parameters, LElement)> {
    require_nontorsion(params, x)?;
    let support = x.support();
    let mut weights = Vec::with_capacity(support.len());
    let mut raw = Vec::with_capacity(support.len());
    for &i in &support {
        let d = x.xi[i].gcd(&params.weights[i]);
        weights.push(params.weights[i] / d);
        raw.push(x.xi[i] / d);
    }
    let points = support.iter().map(|&i| params.points[i].clone()).collect();
    let reduced = Parameters::new(weights, points)?;
    let x = reduced.normal_form(&raw, x.c)?;
    Ok((reduced, x))
}

pub fn all_ai_one(params: &Parameters, x: &LElement) -> Result<bool> {
    if !coprime_criterion(params, x)? {
        return Err(Error::Precondition(format!("{x} fails the coprime criterion")));
    }
    Ok(x.xi.iter().all(|&a| a == 1))
}
