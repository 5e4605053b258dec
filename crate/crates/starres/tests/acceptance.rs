//! Acceptance suite. Runs without the libtest harness and prints one line
//! per criterion; exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use starres::gradedring::{graded_dim, GradedRing};
use starres::hj::{hj_expand, i_series, i_set, ito_oracle, residue_criterion};
use starres::intersection::{
    canonical_cycle, fundamental_cycle, is_negative_definite, is_reduced, matrix_from_graph,
};
use starres::lgroup::{coprime_criterion, reduce_parameters, LElement, Parameters, Point};
use starres::reconalg::{domestic_classify, quiver_combinatorial, quiver_from_intersection, wahl_generators, wahl_verify};
use starres::resolution::{dual_graph, specials, speciality_oracle, DualGraph, ModuleLabel, Shape};
use starres::sweep::{random_case, random_non_coprime, CaseBounds};
use starres::Rational;

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn setup(p: &[i64], xi: &[i64], c: i64) -> (Parameters, LElement) {
    let params = Parameters::with_default_points(p.to_vec()).unwrap();
    let x = params.normal_form(xi, c).unwrap();
    (params, x)
}

/// `i_0 = r`, `i_1 = a`, `i_{t+1} = ceil(i_{t-1}/i_t) i_t - i_{t-1}` until 0.
fn series_by_hand(r: i64, a: i64) -> Vec<i64> {
    let mut s = vec![r, a];
    while *s.last().unwrap() > 0 {
        let (prev, cur) = (s[s.len() - 2], s[s.len() - 1]);
        let alpha = (prev + cur - 1) / cur;
        s.push(alpha * cur - prev);
    }
    s
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn c01_iseries() -> Check {
    let e = ok(hj_expand(17, 10))?;
    ensure!(e.alphas == vec![2, 4, 2, 2], "expansion {:?}", e.alphas);
    let s = ok(i_series(17, 10))?;
    ensure!(s.terms == vec![17, 10, 3, 2, 1, 0], "series {:?}", s.terms);
    let want: BTreeSet<i64> = [0, 1, 2, 3, 10, 17].into();
    ensure!(s.as_set() == want, "set {:?}", s.as_set());
    let runs = 1000;
    let start = Instant::now();
    for _ in 0..runs {
        let _ = i_series(17, 10).unwrap();
    }
    let per_call = start.elapsed() / runs;
    ensure!(per_call < Duration::from_millis(1), "{per_call:?} per call");
    Ok(format!("{per_call:?} per call"))
}

fn c02_triangle() -> Check {
    let mut pairs = 0;
    for r in 2..=40 {
        for a in (1..r).filter(|&a| gcd(r, a) == 1) {
            pairs += 1;
            let recursion = ok(i_set(r, a))?;
            let by_hand: BTreeSet<i64> = series_by_hand(r, a).into_iter().collect();
            let grid = ok(ito_oracle(r, a))?;
            let mut residue = BTreeSet::new();
            for u in 0..=r {
                if u == r || ok(residue_criterion(r, r - a, u))? {
                    residue.insert(u);
                }
            }
            ensure!(recursion == by_hand, "r={r} a={a}: recursion {recursion:?} vs {by_hand:?}");
            ensure!(recursion == grid, "r={r} a={a}: grid {grid:?} vs {recursion:?}");
            ensure!(recursion == residue, "r={r} a={a}: residue {residue:?} vs {recursion:?}");
        }
    }
    Ok(format!("{pairs} coprime pairs"))
}

fn c03_example() -> Check {
    let (p, x) = setup(&[3, 5, 5], &[2, 2, 3], 0);
    let g = ok(dual_graph(&p, &x))?;
    let Shape::Star { center, arms } = &g.shape else {
        return Err("not a star".into());
    };
    ensure!(g.vertices[*center].label == -3, "center {}", g.vertices[*center].label);
    let arm_labels: Vec<Vec<i64>> =
        arms.iter().map(|a| a.vertices.iter().map(|&v| g.vertices[v].label).collect()).collect();
    ensure!(arm_labels == vec![vec![-3], vec![-2, -3], vec![-3, -2]], "arms {arm_labels:?}");
    let labels: BTreeSet<ModuleLabel> = ok(specials(&p, &x))?.into_iter().map(|m| m.label).collect();
    let want: BTreeSet<ModuleLabel> = [
        ModuleLabel::R,
        ModuleLabel::SC,
        ModuleLabel::Arm { j: 1, u: 1 },
        ModuleLabel::Arm { j: 2, u: 3 },
        ModuleLabel::Arm { j: 2, u: 1 },
        ModuleLabel::Arm { j: 3, u: 2 },
        ModuleLabel::Arm { j: 3, u: 1 },
    ]
    .into();
    ensure!(labels == want, "specials {labels:?}");
    let q = ok(quiver_combinatorial(&p, &x))?;
    ensure!(q.arrows[1][0] == 0, "center -> * arrows {}", q.arrows[1][0]);
    Ok("7 specials".into())
}

fn c04_beta() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let b = CaseBounds { max_n: 4, max_p: 6, max_a: 3, coprime: true, min_v: 1, minimal: false };
    for _ in 0..100 {
        let (p, x) = random_case(&mut rng, &b);
        let g = ok(dual_graph(&p, &x))?;
        let v = x.support().len() as i64;
        let a = GradedRing::new(&p).graded_basis(&(&x - &p.c())).dim() as i64;
        ensure!(a == x.c_coeff(), "{x}: dim S_(x-c) = {a}");
        ensure!(g.vertices[0].label == -(a + v), "{x}: center {} vs -(a+v) = {}", g.vertices[0].label, -(a + v));
    }
    Ok("100 cases".into())
}

/// Graphs emitted for seeded random minimal inputs.
fn sample_graphs(seed: u64, count: usize) -> Vec<DualGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = CaseBounds { max_n: 4, max_p: 6, max_a: 3, coprime: false, min_v: 1, minimal: true };
    (0..count)
        .map(|_| {
            let (p, x) = random_case(&mut rng, &b);
            dual_graph(&p, &x).unwrap()
        })
        .collect()
}

fn int_matrix(g: &DualGraph) -> Vec<Vec<i64>> {
    let n = g.len();
    let mut m = vec![vec![0; n]; n];
    for (i, v) in g.vertices.iter().enumerate() {
        m[i][i] = v.label;
    }
    for &(a, b) in &g.edges {
        m[a][b] = 1;
        m[b][a] = 1;
    }
    m
}

/// Componentwise minimum over nonzero `Z` in `[0, 4]^V` with `Z.E_i <= 0`.
fn brute_force_zf(m: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = m.len();
    let mut z = vec![0i64; n];
    let mut best: Option<Vec<i64>> = None;
    loop {
        let mut k = 0;
        while k < n && z[k] == 4 {
            z[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        z[k] += 1;
        let anti_nef = (0..n).all(|i| (0..n).map(|j| m[i][j] * z[j]).sum::<i64>() <= 0);
        if anti_nef {
            best = Some(match best {
                None => z.clone(),
                Some(b) => b.iter().zip(&z).map(|(x, y)| *x.min(y)).collect(),
            });
        }
    }
    best
}

fn lib_zf(g: &DualGraph) -> std::result::Result<Vec<i64>, String> {
    let zf = ok(fundamental_cycle(&matrix_from_graph(g)))?;
    zf.as_integers().ok_or_else(|| "non-integral Z_f".into())
}

fn c05_fundamental() -> Check {
    let graphs = sample_graphs(5, 30);
    let mut checked = 0;
    for g in &graphs {
        if g.len() > 8 {
            continue;
        }
        checked += 1;
        let zf = lib_zf(g)?;
        let brute = brute_force_zf(&int_matrix(g)).ok_or("no anti-nef cycle in the box")?;
        ensure!(zf == brute, "{:?}: Laufer {zf:?} vs brute force {brute:?}", g.labels());
        ensure!(zf.iter().all(|&c| c == 1), "{:?}: Z_f = {zf:?}", g.labels());
        let zf_cycle = ok(fundamental_cycle(&matrix_from_graph(g)))?;
        ensure!(ok(is_reduced(&zf_cycle))?, "{:?}: not reduced", g.labels());
    }
    ensure!(checked >= 10, "only {checked} graphs of at most 8 vertices");
    // beta < v controls
    let controls = [
        DualGraph::star(-2, &[(1, vec![-2]), (2, vec![-2]), (3, vec![-2])]),
        DualGraph::star(-2, &[(1, vec![-3]), (2, vec![-3]), (3, vec![-3])]),
        DualGraph::star(-3, &[(1, vec![-2, -2]), (2, vec![-2]), (3, vec![-3]), (4, vec![-2])]),
        DualGraph::star(-2, &[(1, vec![-2, -2]), (2, vec![-2, -2]), (3, vec![-2])]),
    ];
    let mut used = 0;
    for g in &controls {
        if !is_negative_definite(&matrix_from_graph(g)) {
            continue;
        }
        used += 1;
        let zf = lib_zf(g)?;
        let brute = brute_force_zf(&int_matrix(g)).ok_or("no anti-nef cycle in the box")?;
        ensure!(zf == brute, "control {:?}: {zf:?} vs {brute:?}", g.labels());
        ensure!(zf.iter().any(|&c| c > 1), "control {:?} has reduced Z_f", g.labels());
    }
    ensure!(used >= 2, "only {used} negative definite controls");
    Ok(format!("{checked} graphs, {used} controls"))
}

fn canonical_system_holds(g: &DualGraph) -> std::result::Result<bool, String> {
    let zk = ok(canonical_cycle(&matrix_from_graph(g)))?;
    let m = int_matrix(g);
    Ok((0..m.len()).all(|i| {
        let lhs: Rational = (0..m.len()).map(|j| Rational::from_integer(m[i][j].into()) * &zk.coeffs[j]).sum();
        lhs == Rational::from_integer((m[i][i] + 2).into())
    }))
}

fn c06_canonical() -> Check {
    let mut graphs = sample_graphs(6, 40);
    let (p, x) = setup(&[3, 5, 5], &[2, 2, 3], 0);
    graphs.push(dual_graph(&p, &x).unwrap());
    for g in &graphs {
        ensure!(canonical_system_holds(g)?, "{:?}: M.Z_K != E^2 + 2", g.labels());
    }
    let twos = |k: usize| vec![-2; k];
    let mut adet: Vec<DualGraph> = (1..=7).map(|k| DualGraph::star(-2, &[(1, twos(k - 1))])).collect();
    adet.extend((4..=8).map(|k| DualGraph::star(-2, &[(1, twos(1)), (2, twos(1)), (3, twos(k - 3))])));
    adet.extend((6..=8).map(|k| DualGraph::star(-2, &[(1, twos(1)), (2, twos(2)), (3, twos(k - 4))])));
    for g in &adet {
        let zk = ok(canonical_cycle(&matrix_from_graph(g)))?;
        ensure!(zk.coeffs.iter().all(Zero::is_zero), "{:?}: Z_K = {zk:?}", g.labels());
    }
    Ok(format!("{} graphs, {} ADE trees", graphs.len(), adet.len()))
}

fn c07_quiver() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let b = CaseBounds { max_n: 4, max_p: 6, max_a: 3, coprime: false, min_v: 2, minimal: true };
    for _ in 0..50 {
        let (p, x) = random_case(&mut rng, &b);
        let g = ok(dual_graph(&p, &x))?;
        let q1 = ok(quiver_from_intersection(&g, &ok(specials(&p, &x))?))?;
        let q2 = ok(quiver_combinatorial(&p, &x))?;
        ensure!(q1.arrows == q2.arrows, "{x}: arrows {:?} vs {:?}", q1.arrows, q2.arrows);
        ensure!(q1.relations == q2.relations, "{x}: relations {:?} vs {:?}", q1.relations, q2.relations);
    }
    Ok("50 cases".into())
}

fn c08_wahl() -> Check {
    let points = [(1, 0), (0, 1), (1, 1), (2, 1)];
    let triples: [&[i64]; 5] = [&[2, 3, 3], &[2, 3, 4], &[2, 3, 5], &[3, 4, 5], &[2, 3, 3, 4]];
    for w in triples {
        let pts = points[..w.len()].iter().map(|&(u, v)| Point::from_ints(u, v).unwrap()).collect();
        let p = ok(Parameters::new(w.to_vec(), pts))?;
        let ring = GradedRing::new(&p);
        let pres = ok(wahl_generators(&p))?;
        let [top, bottom] = &pres.matrix;
        for i in 0..top.len() {
            for j in i + 1..top.len() {
                let lhs = ring.mul(&pres.eval(&ring, &top[i]), &pres.eval(&ring, &bottom[j]));
                let rhs = ring.mul(&pres.eval(&ring, &top[j]), &pres.eval(&ring, &bottom[i]));
                ensure!(lhs.sub(&rhs).is_zero(), "{w:?}: minor ({i},{j}) = {}", lhs.sub(&rhs));
            }
        }
        let report = ok(wahl_verify(&p, 12))?;
        ensure!(report.passed, "{w:?}: {:?}", report.first_failure());
        for n in 0..=12 {
            let want = w.iter().map(|&pi| (n / pi) as usize).sum::<usize>() + 1;
            let d = report.dimensions.iter().find(|d| d.degree == n).ok_or(format!("{w:?}: degree {n} missing"))?;
            ensure!(d.span == want, "{w:?} N={n}: span {} vs {want}", d.span);
            ensure!(graded_dim(&p.s().scale(n)) == want, "{w:?} N={n}: dim S_Ns");
        }
    }
    Ok("5 weight tuples up to N = 12".into())
}

fn oracle_agrees(p: &Parameters, x: &LElement) -> std::result::Result<usize, String> {
    let mut tried = 0;
    for j in 0..p.n() {
        let pj = p.weights()[j];
        let expected: BTreeSet<i64> = series_by_hand(pj, pj - x.xi()[j]).into_iter().collect();
        for u in 0..=pj {
            tried += 1;
            let v = ok(speciality_oracle(p, x, &p.x(j).scale(u), 8))?;
            if expected.contains(&u) {
                ensure!(v.special, "{x} arm {} u={u}: fails at l = {:?}", j + 1, v.witness);
            } else {
                ensure!(!v.special, "{x} arm {} u={u}: passes every l <= 8", j + 1);
                ensure!(matches!(v.witness, Some(l) if (1..=8).contains(&l)), "{x}: witness {:?}", v.witness);
            }
        }
    }
    Ok(tried)
}

fn c09_oracle() -> Check {
    let (p, x) = setup(&[3, 5, 5], &[2, 2, 3], 0);
    let mut tried = oracle_agrees(&p, &x)?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let b = CaseBounds { max_n: 3, max_p: 5, max_a: 3, coprime: true, min_v: 1, minimal: true };
    for _ in 0..20 {
        let (p, x) = random_case(&mut rng, &b);
        tried += oracle_agrees(&p, &x)?;
    }
    Ok(format!("{tried} (x, u) pairs"))
}

fn c10_domestic() -> Check {
    for (w, letter, h) in [([2, 3, 3], "T", 6), ([2, 3, 4], "O", 12), ([2, 3, 5], "I", 30)] {
        let p = Parameters::with_default_points(w.to_vec()).unwrap();
        for m in 3..=6 {
            let info = ok(domestic_classify(&p, m))?;
            let index = h * (m - 2) + 1;
            ensure!(info.label() == format!("{letter}_{index}"), "{w:?} m={m}: {}", info.label());
            let lhs = p.omega().scale(index);
            let rhs = p.normal_form(&[-1, -1, -1], -(m - 3)).unwrap();
            ensure!(lhs == rhs, "{w:?} m={m}: {lhs} vs {rhs}");
            let g = ok(dual_graph(&p, &p.s_a(m - 3)))?;
            let Shape::Star { center, arms } = &g.shape else {
                return Err(format!("{w:?} m={m}: not a star"));
            };
            ensure!(g.vertices[*center].label == -m, "{w:?} m={m}: center {}", g.vertices[*center].label);
            for (arm, &pi) in arms.iter().zip(&w) {
                let labels: Vec<i64> = arm.vertices.iter().map(|&v| g.vertices[v].label).collect();
                ensure!(labels == vec![-2; (pi - 1) as usize], "{w:?} m={m}: arm {labels:?}");
            }
        }
    }
    Ok("12 cases".into())
}

fn c11_reduction() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let (p, x) = random_non_coprime(&mut rng, 4, 6, 3);
        let (p2, x2) = ok(reduce_parameters(&p, &x))?;
        let (r1, r2) = (GradedRing::new(&p), GradedRing::new(&p2));
        for k in 0..=8 {
            let d1 = r1.graded_basis(&x.scale(k)).dim();
            let d2 = r2.graded_basis(&x2.scale(k)).dim();
            ensure!(d1 == d2, "{x} -> {x2}: degree {k}: {d1} vs {d2}");
        }
        ensure!(ok(coprime_criterion(&p2, &x2))?, "{x} -> {x2} still fails the criterion");
    }
    Ok("20 cases".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check, Option<Duration>); 11] = [
        ("i-series of 17/10", c01_iseries, None),
        ("recursion, grid and residue agree", c02_triangle, Some(Duration::from_secs(10))),
        ("(3,5,5) with x = (2,2,3;0)", c03_example, None),
        ("center label is -(a+v)", c04_beta, Some(Duration::from_secs(30))),
        ("fundamental cycle", c05_fundamental, None),
        ("canonical cycle", c06_canonical, None),
        ("quiver cross-construction", c07_quiver, Some(Duration::from_secs(60))),
        ("0-Wahl presentation", c08_wahl, Some(Duration::from_secs(60))),
        ("speciality oracle vs i-series", c09_oracle, Some(Duration::from_secs(120))),
        ("domestic table", c10_domestic, None),
        ("parameter reduction", c11_reduction, None),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
