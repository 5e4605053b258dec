//! Seeded cross-checks between each classification and its oracle.

use num_integer::Integer;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::gradedring::graded_dim;
use crate::hj::{i_set, ito_oracle, residue_criterion};
use crate::intersection::{canonical_cycle, fundamental_cycle, is_reduced, matrix_from_graph};
use crate::lgroup::{coprime_criterion, reduce_parameters, LElement, Parameters};
use crate::reconalg::{quiver_combinatorial, quiver_from_intersection};
use crate::resolution::{dual_graph, specials, speciality_oracle};
use crate::{Rational, Result};

/// Bounds for [`random_case`].
#[derive(Clone, Copy, Debug)]
pub struct CaseBounds {
    pub max_n: usize,
    pub max_p: i64,
    pub max_a: i64,
    /// Every `a_i` nonzero and prime to `p_i`.
    pub coprime: bool,
    /// Minimum number of nonzero `a_i`.
    pub min_v: usize,
    /// Reject `x` in `[0, c]`.
    pub minimal: bool,
}

/// A random nonzero positive `x` over default points.
pub fn random_case(rng: &mut impl Rng, b: &CaseBounds) -> (Parameters, LElement) {
    loop {
        let n = rng.gen_range(b.min_v.max(1)..=b.max_n);
        let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(2..=b.max_p)).collect();
        let xi: Vec<i64> = weights
            .iter()
            .map(|&p| loop {
                let a = rng.gen_range(0..p);
                if !b.coprime || a.gcd(&p) == 1 {
                    break a;
                }
            })
            .collect();
        let c = rng.gen_range(0..=b.max_a);
        let params = Parameters::with_default_points(weights).expect("weights >= 2");
        let x = params.normal_form(&xi, c).expect("lengths match");
        if x.is_zero() || x.support().len() < b.min_v || (b.minimal && x.in_interval_0_c()) {
            continue;
        }
        return (params, x);
    }
}

/// A random positive non-torsion `x` failing the coprime criterion.
pub fn random_non_coprime(rng: &mut impl Rng, max_n: usize, max_p: i64, max_a: i64) -> (Parameters, LElement) {
    let b = CaseBounds { max_n, max_p, max_a, coprime: false, min_v: 0, minimal: false };
    loop {
        let (p, x) = random_case(rng, &b);
        if !x.is_torsion() && !coprime_criterion(&p, &x).expect("non-torsion") {
            return (p, x);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepConfig {
    pub seed: u64,
    pub max_r: i64,
    pub samples: usize,
    pub l_max: i64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { seed: 0, max_r: 40, samples: 20, l_max: 8 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

impl SweepReport {
    pub fn first_counterexample(&self) -> Option<(&str, &str)> {
        self.checks
            .iter()
            .find_map(|c| c.counterexample.as_deref().map(|e| (c.name.as_str(), e)))
    }
}

fn describe(p: &Parameters, x: &LElement) -> String {
    format!("p={:?} x={x}", p.weights())
}

fn hj_triangle(max_r: i64) -> Result<CheckOutcome> {
    let mut cases = 0;
    for r in 2..=max_r {
        for a in (1..r).filter(|a| a.gcd(&r) == 1) {
            cases += 1;
            let recursion = i_set(r, a)?;
            let grid = ito_oracle(r, a)?;
            let mut residue: Vec<i64> = Vec::new();
            for u in 0..r {
                if residue_criterion(r, r - a, u)? {
                    residue.push(u);
                }
            }
            let truncated: Vec<i64> = recursion.iter().copied().filter(|&u| u < r).collect();
            if recursion != grid || residue != truncated {
                return Ok(CheckOutcome {
                    name: "hj_triangle".into(),
                    cases,
                    counterexample: Some(format!(
                        "r={r} a={a}: recursion {recursion:?}, grid {grid:?}, residue {residue:?}"
                    )),
                });
            }
        }
    }
    Ok(CheckOutcome { name: "hj_triangle".into(), cases, counterexample: None })
}

fn sampled(
    name: &str,
    rng: &mut ChaCha8Rng,
    samples: usize,
    bounds: CaseBounds,
    mut check: impl FnMut(&Parameters, &LElement) -> Result<Option<String>>,
) -> Result<CheckOutcome> {
    for i in 0..samples {
        let (p, x) = random_case(rng, &bounds);
        if let Some(msg) = check(&p, &x)? {
            return Ok(CheckOutcome {
                name: name.into(),
                cases: i + 1,
                counterexample: Some(format!("{}: {msg}", describe(&p, &x))),
            });
        }
    }
    Ok(CheckOutcome { name: name.into(), cases: samples, counterexample: None })
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut checks = vec![hj_triangle(config.max_r)?];
    let small = CaseBounds { max_n: 4, max_p: 6, max_a: 3, coprime: true, min_v: 1, minimal: false };

    checks.push(sampled("beta_equals_a_plus_v", &mut rng, config.samples, small, |p, x| {
        let g = dual_graph(p, x)?;
        let a = graded_dim(&(x - &p.c())) as i64;
        let beta = -g.vertices[0].label;
        Ok((beta != a + x.support().len() as i64 || a != x.c_coeff())
            .then(|| format!("center {} but a + v = {}", -beta, a + x.support().len() as i64)))
    })?);

    let minimal = CaseBounds { minimal: true, coprime: false, ..small };
    checks.push(sampled("cycles", &mut rng, config.samples, minimal, |p, x| {
        let m = matrix_from_graph(&dual_graph(p, x)?);
        let zf = fundamental_cycle(&m)?;
        if !is_reduced(&zf)? {
            return Ok(Some("fundamental cycle is not reduced".into()));
        }
        let zk = canonical_cycle(&m)?;
        let ok = (0..m.len())
            .all(|i| m.dot_basis(&zk, i) == Rational::from_integer((m.entries[i][i] + 2).into()));
        Ok((!ok).then(|| "canonical cycle violates its system".into()))
    })?);

    let star = CaseBounds { min_v: 2, ..minimal };
    checks.push(sampled("quiver_cross_construction", &mut rng, config.samples, star, |p, x| {
        let g = dual_graph(p, x)?;
        let q1 = quiver_from_intersection(&g, &specials(p, x)?)?;
        let q2 = quiver_combinatorial(p, x)?;
        Ok((q1 != q2).then(|| "intersection and combinatorial quivers differ".into()))
    })?);

    let oracle_bounds = CaseBounds { max_n: 3, max_p: 5, coprime: true, minimal: true, ..small };
    let l_max = config.l_max;
    checks.push(sampled("speciality_oracle", &mut rng, config.samples, oracle_bounds, |p, x| {
        for j in 0..p.n() {
            let pj = p.weights()[j];
            let expected = i_set(pj, pj - x.xi()[j])?;
            for u in 0..=pj {
                let y = p.x(j).scale(u);
                let verdict = speciality_oracle(p, x, &y, l_max)?;
                if verdict.special != expected.contains(&u) {
                    return Ok(Some(format!("arm {} u={u}: oracle says {}", j + 1, verdict.special)));
                }
            }
        }
        Ok(None)
    })?);

    let mut reduction = CheckOutcome { name: "parameter_reduction".into(), cases: 0, counterexample: None };
    for _ in 0..config.samples {
        let (p, x) = random_non_coprime(&mut rng, 4, 6, 3);
        reduction.cases += 1;
        let (p2, x2) = reduce_parameters(&p, &x)?;
        let dims_agree = (0..=8).all(|k| graded_dim(&x.scale(k)) == graded_dim(&x2.scale(k)));
        if !dims_agree || !coprime_criterion(&p2, &x2)? {
            reduction.counterexample = Some(describe(&p, &x));
            break;
        }
    }
    checks.push(reduction);

    let passed = checks.iter().all(|c| c.counterexample.is_none());
    Ok(SweepReport { config: config.clone(), checks, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let cfg = SweepConfig { seed: 7, max_r: 12, samples: 4, l_max: 6 };
        let report = run_sweep(&cfg).unwrap();
        assert!(report.passed, "{:?}", report.first_counterexample());
    }

    #[test]
    fn generators_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = CaseBounds { max_n: 3, max_p: 5, max_a: 2, coprime: true, min_v: 2, minimal: true };
        for _ in 0..50 {
            let (p, x) = random_case(&mut rng, &b);
            assert!(p.weights().iter().all(|&w| (2..=5).contains(&w)));
            assert!(coprime_criterion(&p, &x).unwrap());
            assert!(x.support().len() >= 2 && !x.in_interval_0_c());
        }
        let (p, x) = random_non_coprime(&mut rng, 3, 6, 2);
        assert!(!coprime_criterion(&p, &x).unwrap());
    }
}
