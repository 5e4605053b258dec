//! Intersection pairing on labelled trees, fundamental and canonical cycles.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::lgroup::parse_rational;
use crate::linalg;
use crate::resolution::DualGraph;
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionMatrix {
    pub entries: Vec<Vec<i64>>,
}

impl IntersectionMatrix {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(Z . E_i)`.
    pub fn dot_basis(&self, z: &Cycle, i: usize) -> Rational {
        z.coeffs
            .iter()
            .zip(&self.entries[i])
            .map(|(c, &m)| c * Rational::from_integer(m.into()))
            .sum()
    }
}

/// Rational coefficients per vertex; serialized as strings like `"1/3"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    pub coeffs: Vec<Rational>,
}

impl Serialize for Cycle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        text.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cycle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = Vec::<String>::deserialize(d)?;
        let coeffs = text
            .iter()
            .map(|t| parse_rational(t))
            .collect::<Result<_>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Cycle { coeffs })
    }
}

impl Cycle {
    pub fn zero(n: usize) -> Self {
        Cycle { coeffs: vec![Rational::zero(); n] }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut z = Cycle::zero(n);
        z.coeffs[i] = Rational::one();
        z
    }

    pub fn ones(n: usize) -> Self {
        Cycle { coeffs: vec![Rational::one(); n] }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Cycle { coeffs: v.iter().map(|&x| Rational::from_integer(x.into())).collect() }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Cycle) -> Cycle {
        Cycle { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Cycle) -> Cycle {
        Cycle { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    /// Integer coefficients, if all are integral and fit in `i64`.
    pub fn as_integers(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    /// `{vertex name: coefficient}` with coefficients as strings.
    pub fn to_json(&self, g: &DualGraph) -> serde_json::Value {
        let map = g
            .vertices
            .iter()
            .zip(&self.coeffs)
            .map(|(v, c)| (v.name.clone(), serde_json::Value::String(c.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }
}

pub fn matrix_from_graph(g: &DualGraph) -> IntersectionMatrix {
    let n = g.len();
    let mut entries = vec![vec![0; n]; n];
    for (i, v) in g.vertices.iter().enumerate() {
        entries[i][i] = v.label;
    }
    for &(a, b) in &g.edges {
        entries[a][b] += 1;
        entries[b][a] += 1;
    }
    IntersectionMatrix { entries }
}

/// Sign test on exact leading principal minors.
pub fn is_negative_definite(m: &IntersectionMatrix) -> bool {
    let q = linalg::to_rational(&m.entries);
    (1..=m.len()).all(|k| {
        let minor: Vec<Vec<Rational>> = q[..k].iter().map(|row| row[..k].to_vec()).collect();
        let det = linalg::determinant(&minor);
        if k % 2 == 0 {
            det.is_positive()
        } else {
            det.is_negative()
        }
    })
}

/// Laufer's sequence from `E_start`; `pick` chooses among the vertices with
/// `(Z . E_i) > 0`.
pub fn laufer_cycle(
    m: &IntersectionMatrix,
    start: usize,
    mut pick: impl FnMut(&[usize]) -> usize,
) -> Result<Cycle> {
    if !is_negative_definite(m) {
        return Err(Error::NotNegativeDefinite);
    }
    let n = m.len();
    let mut z = Cycle::basis(n, start);
    loop {
        let positive: Vec<usize> = (0..n).filter(|&i| m.dot_basis(&z, i).is_positive()).collect();
        if positive.is_empty() {
            return Ok(z);
        }
        let i = pick(&positive);
        z.coeffs[i] += Rational::one();
    }
}

/// Starts at vertex 0 and always increments the lowest eligible index.
pub fn fundamental_cycle(m: &IntersectionMatrix) -> Result<Cycle> {
    if m.is_empty() {
        return Err(Error::Precondition("empty matrix".into()));
    }
    laufer_cycle(m, 0, |c| c[0])
}

pub fn is_reduced(z: &Cycle) -> Result<bool> {
    let ints = z
        .as_integers()
        .ok_or_else(|| Error::Precondition("non-integer cycle".into()))?;
    Ok(ints.iter().all(|&c| c == 1))
}

/// The rational cycle with `Z_K . E_i = E_i^2 + 2`.
pub fn canonical_cycle(m: &IntersectionMatrix) -> Result<Cycle> {
    let q = linalg::to_rational(&m.entries);
    let rhs: Vec<Rational> = (0..m.len())
        .map(|i| Rational::from_integer((m.entries[i][i] + 2).into()))
        .collect();
    let coeffs = linalg::solve(&q, &rhs).ok_or(Error::Singular)?;
    Ok(Cycle { coeffs })
}

pub fn pair(m: &IntersectionMatrix, a: &Cycle, b: &Cycle) -> Result<Rational> {
    if a.len() != m.len() || b.len() != m.len() {
        return Err(Error::ParameterMismatch("cycle length differs from the matrix".into()));
    }
    Ok((0..m.len()).map(|i| &a.coeffs[i] * m.dot_basis(b, i)).sum())
}
