use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::hj::hj_expand;
use crate::lgroup::{LElement, Parameters, Point};
use crate::resolution::is_minimal;
use crate::{Error, Result};

/// Weights `q`, points `mu` and relations of a canonical algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalAlgebraDesc {
    pub q: Vec<i64>,
    pub mu: Vec<Point>,
    /// 1-based indices `i` with `a_i != 0`.
    pub indices: Vec<usize>,
    /// Arm lengths `q_i - 1` of the quiver `Q_q`.
    pub arm_lengths: Vec<i64>,
    pub relations: Vec<String>,
}

fn power(var: &str, e: i64) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

/// `x1^q1 - mu_i x2^q2 + x_i^qi` for `i >= 3`, `mu_i` affine when the first
/// two points are `(1:0), (0:1)`.
pub fn canonical_relations(q: &[i64], mu: &[Point]) -> Vec<String> {
    let normalized = mu.len() >= 2
        && mu[0].projectively_equal(&Point::infinity())
        && mu[1].projectively_equal(&Point::zero());
    (2..q.len())
        .map(|i| {
            let coeff = match (normalized, mu[i].affine()) {
                (true, Some(l)) if l.is_negative() => format!("+ {}*", -l),
                (true, Some(l)) if l.is_one() => "- ".to_string(),
                (true, Some(l)) => format!("- {l}*"),
                _ => format!("- {}*", mu[i]),
            };
            format!(
                "{} {}{} + {}",
                power("x1", q[0]),
                coeff,
                power("x2", q[1]),
                power(&format!("x{}", i + 1), q[i])
            )
        })
        .collect()
}

/// The degree-zero part of the reconstruction algebra as a canonical algebra.
pub fn degree_zero_canonical(params: &Parameters, x: &LElement) -> Result<CanonicalAlgebraDesc> {
    if !is_minimal(params, x)? {
        return Err(Error::NotMinimal(format!("{x} lies in [0, c]")));
    }
    let support = x.support();
    let q: Vec<i64> = support
        .iter()
        .map(|&i| {
            let p = params.weights()[i];
            hj_expand(p, p - x.xi()[i]).map(|e| e.alphas.len() as i64 + 1)
        })
        .collect::<Result<_>>()?;
    let mu: Vec<Point> = support.iter().map(|&i| params.points()[i].clone()).collect();
    Ok(CanonicalAlgebraDesc {
        relations: canonical_relations(&q, &mu),
        arm_lengths: q.iter().map(|k| k - 1).collect(),
        indices: support.iter().map(|i| i + 1).collect(),
        q,
        mu,
    })
}
