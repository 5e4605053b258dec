//! The L-graded ring `S = Q[t0, t1, x_1..x_n] / (x_i^{p_i} - l_i(t0, t1))`.
//!
//! Linear forms follow the point convention: `(1:0) -> t1`, `(0:1) -> t0`,
//! and `(u:w) -> (u/w) t0 - t1` otherwise.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::lgroup::{LElement, Parameters, Point};
use crate::linalg;
use crate::{Error, Rational, Result};

/// `t0^e0 t1^e1 prod x_i^f_i`. The derived order is lexicographic on
/// `(e0, f_1, ..., f_n)`, with `e1` last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub e0: u32,
    pub f: Vec<u32>,
    pub e1: u32,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { e0: 0, f: vec![0; n], e1: 0 }
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            e0: self.e0 + other.e0,
            e1: self.e1 + other.e1,
            f: self.f.iter().zip(&other.f).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        let mut push = |name: String, e: u32| match e {
            0 => {}
            1 => factors.push(name),
            _ => factors.push(format!("{name}^{e}")),
        };
        push("t0".into(), self.e0);
        push("t1".into(), self.e1);
        for (i, &e) in self.f.iter().enumerate() {
            push(format!("x{}", i + 1), e);
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// A polynomial with reduced monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match i {
                0 if c.is_negative() => write!(f, "-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let a = c.abs();
            let mono = m.to_string();
            match (a.is_one(), mono == "1") {
                (true, _) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// `a t0 + b t1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub t0: Rational,
    pub t1: Rational,
}

pub fn linear_form(point: &Point) -> LinearForm {
    if point.w().is_zero() {
        LinearForm { t0: Rational::zero(), t1: Rational::one() }
    } else if point.u().is_zero() {
        LinearForm { t0: Rational::one(), t1: Rational::zero() }
    } else {
        LinearForm { t0: point.u() / point.w(), t1: -Rational::one() }
    }
}

/// The canonical basis `t0^j t1^{a-j} prod x_i^{a_i}`, `j = 0..a`, of `S_y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPiece {
    pub degree: LElement,
    pub basis: Vec<Monomial>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// A subspace of a graded piece, stored as reduced echelon rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: GradedPiece,
    pub rows: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient: GradedPiece) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn full(ambient: GradedPiece) -> Self {
        let d = ambient.dim();
        let rows = (0..d)
            .map(|i| (0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Subspace { ambient, rows }
    }

    pub fn spanned_by(ambient: GradedPiece, vectors: Vec<Vec<Rational>>) -> Self {
        let rows = linalg::rref(vectors);
        Subspace { ambient, rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient.dim()
    }
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    if a.ambient != b.ambient {
        return Err(Error::ParameterMismatch("subspaces of different pieces".into()));
    }
    let rows = a.rows.iter().chain(&b.rows).cloned().collect();
    Ok(Subspace::spanned_by(a.ambient.clone(), rows))
}

pub fn subspace_equal(a: &Subspace, b: &Subspace) -> Result<bool> {
    if a.ambient != b.ambient {
        return Err(Error::ParameterMismatch("subspaces of different pieces".into()));
    }
    Ok(a.rows == b.rows)
}

/// `dim S_y = a + 1` for `y = (a_i; a)` with `a >= 0`, else 0.
pub fn graded_dim(y: &LElement) -> usize {
    if y.c_coeff() < 0 {
        0
    } else {
        y.c_coeff() as usize + 1
    }
}

/// Arithmetic in `S` for fixed parameters.
#[derive(Clone, Debug)]
pub struct GradedRing {
    params: Parameters,
    forms: Vec<LinearForm>,
}

impl GradedRing {
    pub fn new(params: &Parameters) -> Self {
        GradedRing { params: params.clone(), forms: params.points().iter().map(linear_form).collect() }
    }

    pub fn params(&self) -> &Parameters {
        &self.params
    }

    pub fn linear_forms(&self) -> &[LinearForm] {
        &self.forms
    }

    fn n(&self) -> usize {
        self.params.n()
    }

    pub fn constant(&self, c: Rational) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(self.n()), c);
        p
    }

    pub fn one(&self) -> Poly {
        self.constant(Rational::one())
    }

    pub fn t0(&self) -> Poly {
        self.monomial(Monomial { e0: 1, ..Monomial::one(self.n()) })
    }

    pub fn t1(&self) -> Poly {
        self.monomial(Monomial { e1: 1, ..Monomial::one(self.n()) })
    }

    /// The generator `x_i`, 0-based.
    pub fn x(&self, i: usize) -> Poly {
        let mut m = Monomial::one(self.n());
        m.f[i] = 1;
        self.monomial(m)
    }

    /// A monomial with arbitrary exponents, rewritten to reduced form.
    pub fn monomial(&self, m: Monomial) -> Poly {
        self.reduce(m, Rational::one())
    }

    fn reduce(&self, mut m: Monomial, coeff: Rational) -> Poly {
        let mut powers = Vec::new();
        for (i, &p) in self.params.weights().iter().enumerate() {
            let p = p as u32;
            powers.push(m.f[i] / p);
            m.f[i] %= p;
        }
        let mut out = Poly::zero();
        out.add_term(m, coeff);
        for (i, &k) in powers.iter().enumerate() {
            for _ in 0..k {
                out = self.times_form(&out, &self.forms[i]);
            }
        }
        out
    }

    fn times_form(&self, p: &Poly, l: &LinearForm) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &p.terms {
            if !l.t0.is_zero() {
                out.add_term(Monomial { e0: m.e0 + 1, ..m.clone() }, c * &l.t0);
            }
            if !l.t1.is_zero() {
                out.add_term(Monomial { e1: m.e1 + 1, ..m.clone() }, c * &l.t1);
            }
        }
        out
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let prod = self.reduce(ma.mul(mb), ca * cb);
                for (m, c) in prod.terms {
                    out.add_term(m, c);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &Poly, k: u32) -> Poly {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// The L-degree of a reduced monomial.
    pub fn degree_of(&self, m: &Monomial) -> LElement {
        let raw: Vec<i64> = m.f.iter().map(|&e| e as i64).collect();
        self.params
            .normal_form(&raw, (m.e0 + m.e1) as i64)
            .expect("monomial over these parameters")
    }

    /// The common degree of all terms, or `None` if `p` is zero or not
    /// homogeneous.
    pub fn homogeneous_degree(&self, p: &Poly) -> Option<LElement> {
        let mut degrees = p.terms.keys().map(|m| self.degree_of(m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn graded_basis(&self, y: &LElement) -> GradedPiece {
        let a = y.c_coeff();
        let f: Vec<u32> = y.xi().iter().map(|&e| e as u32).collect();
        let basis = (0..=a)
            .map(|j| Monomial { e0: j as u32, f: f.clone(), e1: (a - j) as u32 })
            .collect();
        GradedPiece { degree: y.clone(), basis }
    }

    /// Coordinates of a homogeneous element of `piece` in its basis.
    pub fn coordinates(&self, piece: &GradedPiece, p: &Poly) -> Result<Vec<Rational>> {
        let mut coords = vec![Rational::zero(); piece.dim()];
        for (m, c) in &p.terms {
            let pos = piece
                .basis
                .iter()
                .position(|b| b == m)
                .ok_or_else(|| Error::Precondition(format!("{m} is not in S_{}", piece.degree)))?;
            coords[pos] = c.clone();
        }
        Ok(coords)
    }

    /// Combination of basis elements of `piece` with the given coordinates.
    pub fn from_coordinates(&self, piece: &GradedPiece, coords: &[Rational]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in piece.basis.iter().zip(coords) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// The span of `polys` inside `S_y`.
    pub fn span(&self, y: &LElement, polys: &[Poly]) -> Result<Subspace> {
        let piece = self.graded_basis(y);
        let vectors = polys
            .iter()
            .map(|p| self.coordinates(&piece, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::spanned_by(piece, vectors))
    }

    pub fn full_piece(&self, y: &LElement) -> Subspace {
        Subspace::full(self.graded_basis(y))
    }

    /// `S_y S_z` as a subspace of `S_{y+z}`.
    pub fn piece_product(&self, y: &LElement, z: &LElement) -> Result<Subspace> {
        let target = y.try_add(z)?;
        let by = self.graded_basis(y);
        let bz = self.graded_basis(z);
        let mut products = Vec::with_capacity(by.dim() * bz.dim());
        for a in &by.basis {
            for b in &bz.basis {
                products.push(self.mul(&self.monomial(a.clone()), &self.monomial(b.clone())));
            }
        }
        self.span(&target, &products)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: &[i64]) -> GradedRing {
        GradedRing::new(&Parameters::with_default_points(p.to_vec()).unwrap())
    }

    #[test]
    fn dims_and_bases() {
        let r = ring(&[2, 3, 3]);
        let p = r.params().clone();
        assert_eq!(graded_dim(&p.c()), 2);
        assert_eq!(graded_dim(&p.omega()), 0);
        assert_eq!(graded_dim(&p.s()), 1);
        let b = r.graded_basis(&p.c().scale(2));
        let names: Vec<String> = b.basis.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["t1^2", "t0*t1", "t0^2"]);
        assert_eq!(r.graded_basis(&p.x(0)).basis[0].to_string(), "x1");
        let q = ring(&[3, 5, 5]);
        let y = q.params().normal_form(&[2, 2, 3], 0).unwrap();
        assert_eq!(q.graded_basis(&y).basis[0].to_string(), "x1^2*x2^2*x3^3");
    }

    #[test]
    fn rewriting() {
        let r = ring(&[2, 3, 3]);
        assert_eq!(r.mul(&r.x(0), &r.x(0)), r.t1());
        assert_eq!(r.pow(&r.x(1), 3), r.t0());
        // (1:1) gives t0 - t1.
        assert_eq!(r.pow(&r.x(2), 3), r.t0().sub(&r.t1()));
        let m = Monomial { e0: 0, f: vec![3, 0, 0], e1: 0 };
        assert_eq!(r.monomial(m).to_string(), "t1*x1");
        assert_eq!(r.pow(&r.x(2), 4).to_string(), "-t1*x3 + t0*x3");
    }

    #[test]
    fn products_of_pieces() {
        let r = ring(&[2, 3, 3]);
        let p = r.params().clone();
        let cc = r.piece_product(&p.c(), &p.c()).unwrap();
        assert!(cc.is_full() && cc.dim() == 3);
        let xx = r.piece_product(&p.x(0), &p.x(0)).unwrap();
        assert_eq!((xx.dim(), xx.ambient.dim()), (1, 2));
        let z = Subspace::zero(xx.ambient.clone());
        assert!(subspace_equal(&subspace_sum(&xx, &z).unwrap(), &xx).unwrap());
        assert!(subspace_equal(&subspace_sum(&xx, &xx).unwrap(), &xx).unwrap());
        let other = r.full_piece(&p.c().scale(2));
        assert!(subspace_sum(&xx, &other).is_err());
    }

    #[test]
    fn degrees() {
        let r = ring(&[2, 3, 3]);
        let p = r.params().clone();
        let f = r.mul(&r.x(1), &r.x(2));
        assert_eq!(r.homogeneous_degree(&f), Some(&p.x(1) + &p.x(2)));
        assert_eq!(r.homogeneous_degree(&r.t0().add(&r.x(0))), None);
    }
}
