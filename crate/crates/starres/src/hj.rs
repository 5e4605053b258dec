//! Hirzebruch-Jung continued fractions `r/a = [a_1, ..., a_m]`, the i-series
//! and the set `I(r, a)`, with two independent characterizations of the set.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HJExpansion {
    pub r: i64,
    pub a: i64,
    pub alphas: Vec<i64>,
}

fn check_range(r: i64, a: i64) -> Result<()> {
    if r < 1 || a < 1 || a > r {
        return Err(Error::Precondition(format!("need 1 <= a <= r, got r={r}, a={a}")));
    }
    Ok(())
}

pub fn hj_expand(r: i64, a: i64) -> Result<HJExpansion> {
    check_range(r, a)?;
    let mut alphas = Vec::new();
    if a < r {
        let (mut num, mut den) = (r, a);
        while den != 0 {
            let alpha = Integer::div_ceil(&num, &den);
            alphas.push(alpha);
            (num, den) = (den, alpha * den - num);
        }
    }
    Ok(HJExpansion { r, a, alphas })
}

/// Value of `a_1 - 1/(a_2 - 1/(...))`. The empty expansion evaluates to 1.
pub fn hj_eval(alphas: &[i64]) -> Result<Ratio<i64>> {
    if let Some(bad) = alphas.iter().find(|&&x| x < 2) {
        return Err(Error::Precondition(format!("entry {bad} < 2")));
    }
    let Some((&last, rest)) = alphas.split_last() else {
        return Ok(Ratio::from_integer(1));
    };
    Ok(rest
        .iter()
        .rev()
        .fold(Ratio::from_integer(last), |acc, &x| Ratio::from_integer(x) - acc.recip()))
}

/// `i_0 = r > i_1 = a > ... > i_{m+1} = 0`; empty for `a = r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ISeries {
    pub terms: Vec<i64>,
}

impl ISeries {
    pub fn as_set(&self) -> BTreeSet<i64> {
        self.terms.iter().copied().collect()
    }
}

pub fn i_series(r: i64, a: i64) -> Result<ISeries> {
    let e = hj_expand(r, a)?;
    if a == r {
        return Ok(ISeries { terms: Vec::new() });
    }
    let mut terms = vec![r, a];
    for (t, alpha) in e.alphas.iter().enumerate() {
        terms.push(alpha * terms[t + 1] - terms[t]);
    }
    Ok(ISeries { terms })
}

pub fn i_set(r: i64, a: i64) -> Result<BTreeSet<i64>> {
    Ok(i_series(r, a)?.as_set())
}

/// Reversal of the i-series of `r/(r-a)`.
pub fn j_series(r: i64, a: i64) -> Result<ISeries> {
    check_range(r, a)?;
    if a == r {
        return Err(Error::Precondition("j-series needs a < r".into()));
    }
    let mut terms = i_series(r, r - a)?.terms;
    terms.reverse();
    Ok(ISeries { terms })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionMonomial {
    pub i: i64,
    pub j: i64,
    pub weight: i64,
}

/// Monomials `x^i y^j` of the G-basis of `1/r(1,a)` outside the L-space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightGrid {
    pub r: i64,
    pub a: i64,
    pub region: Vec<RegionMonomial>,
}

fn check_coprime(r: i64, a: i64) -> Result<()> {
    if r < 2 || a < 1 || a >= r {
        return Err(Error::Precondition(format!("need 1 <= a < r, got r={r}, a={a}")));
    }
    if r.gcd(&a) != 1 {
        return Err(Error::Precondition(format!(
            "gcd({r},{a}) != 1; reduce to 1/(r/h)(1,a/h) first"
        )));
    }
    Ok(())
}

pub fn ito_region(r: i64, a: i64) -> Result<WeightGrid> {
    check_coprime(r, a)?;
    let n = r as usize;
    let invariant = |i: usize, j: usize| (i as i64 + a * j as i64) % r == 0;
    // divisible[i][j]: some invariant monomial other than 1 divides x^i y^j.
    let mut divisible = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            divisible[i][j] = ((i, j) != (0, 0) && invariant(i, j))
                || (i > 0 && divisible[i - 1][j])
                || (j > 0 && divisible[i][j - 1]);
        }
    }
    let mut region = Vec::new();
    for i in 1..n {
        for j in 1..n {
            if !divisible[i][j] {
                region.push(RegionMonomial {
                    i: i as i64,
                    j: j as i64,
                    weight: (i as i64 + a * j as i64) % r,
                });
            }
        }
    }
    Ok(WeightGrid { r, a, region })
}

/// Numbers in `[0, r]` that are not the weight of a region monomial.
pub fn ito_oracle(r: i64, a: i64) -> Result<BTreeSet<i64>> {
    let grid = ito_region(r, a)?;
    let weights: BTreeSet<i64> = grid.region.iter().map(|m| m.weight).collect();
    Ok((0..=r).filter(|u| !weights.contains(u)).collect())
}

/// `[k]_r`, the representative of `k` in `[0, r-1]`.
pub fn residue(k: i64, r: i64) -> i64 {
    k.rem_euclid(r)
}

/// Decides `u in I(r, r - a)` by the residue inequality, with `l` ranging
/// over `[1, r]`.
pub fn residue_criterion(r: i64, a: i64, u: i64) -> Result<bool> {
    if r < 1 || r.gcd(&a) != 1 {
        return Err(Error::Precondition(format!("gcd({r},{a}) != 1")));
    }
    if !(0..r).contains(&u) {
        return Err(Error::Precondition(format!("u={u} outside [0, {}]", r - 1)));
    }
    Ok((1..=r).all(|l| {
        let lhs = residue(u + l * a - 1, r);
        (1..=l).any(|m| lhs >= residue(m * a - 1, r))
    }))
}
