use std::fmt;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::gradedring::{graded_dim, GradedRing, Monomial, Poly};
use crate::lgroup::{LElement, Parameters};
use crate::linalg;
use crate::resolution::ModuleLabel;
use crate::{Error, Rational, Result};

fn require_wahl(params: &Parameters) -> Result<()> {
    if params.n() < 3 {
        return Err(Error::Precondition(format!("need n >= 3, got {}", params.n())));
    }
    if !params.is_normalized() {
        return Err(Error::Precondition("points must start with (1:0), (0:1)".into()));
    }
    Ok(())
}

/// `lambda_i = u/w` for the point `(u:w)` at 0-based index `i >= 2`.
fn lambda(params: &Parameters, i: usize) -> Rational {
    params.points()[i].affine().expect("points beyond the first differ from (1:0)")
}

/// A polynomial in the generators `u_1..u_n, v`; exponent slot `n` is `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub terms: Vec<(Rational, Vec<u32>)>,
}

impl Word {
    fn gen(n: usize, slot: usize, e: u32) -> Word {
        let mut exps = vec![0; n + 1];
        exps[slot] = e;
        Word { terms: vec![(Rational::one(), exps)] }
    }

    fn u(n: usize, i: usize) -> Word {
        Word::gen(n, i, 1)
    }

    fn v(n: usize, e: u32) -> Word {
        Word::gen(n, n, e)
    }

    fn plus(mut self, mut other: Word) -> Word {
        self.terms.append(&mut other.terms);
        self
    }

    fn times(mut self, k: Rational) -> Word {
        for t in &mut self.terms {
            t.0 *= &k;
        }
        self
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.terms.first().map_or(0, |t| t.1.len() - 1);
        for (idx, (c, exps)) in self.terms.iter().enumerate() {
            let factors: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(s, &e)| {
                    let name = if s == n { "v".to_string() } else { format!("u{}", s + 1) };
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let body = if factors.is_empty() { "1".to_string() } else { factors.join("*") };
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            if c.abs().is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "{}*{body}", c.abs())?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WahlGenerator {
    pub name: String,
    #[serde(skip)]
    pub poly: Poly,
    pub formula: String,
    /// Multiple of `s` giving the L-degree.
    pub degree: i64,
    pub l_degree: LElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct WahlPresentation {
    /// `u_1, ..., u_n, v`.
    pub generators: Vec<WahlGenerator>,
    #[serde(serialize_with = "words_as_strings")]
    pub matrix: [Vec<Word>; 2],
}

fn words_as_strings<S: serde::Serializer>(m: &[Vec<Word>; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    rows.serialize(s)
}

impl WahlPresentation {
    pub fn eval(&self, ring: &GradedRing, w: &Word) -> Poly {
        let mut out = Poly::zero();
        for (c, exps) in &w.terms {
            let mut term = ring.constant(c.clone());
            for (slot, &e) in exps.iter().enumerate() {
                term = ring.mul(&term, &ring.pow(&self.generators[slot].poly, e));
            }
            out = out.add(&term);
        }
        out
    }
}

pub fn wahl_generators(params: &Parameters) -> Result<WahlPresentation> {
    require_wahl(params)?;
    let ring = GradedRing::new(params);
    let n = params.n();
    let p: Vec<u32> = params.weights().iter().map(|&w| w as u32).collect();
    let mut generators = Vec::with_capacity(n + 1);
    let mut push = |name: String, f: Vec<u32>, sign: i64, degree: i64| {
        let poly = ring
            .monomial(Monomial { e0: 0, f, e1: 0 })
            .scale(&Rational::from_integer(sign.into()));
        let l_degree = ring.homogeneous_degree(&poly).expect("nonzero monomial");
        generators.push(WahlGenerator { formula: poly.to_string(), name, poly, degree, l_degree });
    };
    for i in 0..n {
        let mut f = vec![0; n];
        let degree = match i {
            0 => {
                f[0] = p[0] + p[1];
                f[2..].iter_mut().for_each(|e| *e = p[1]);
                p[1]
            }
            1 => {
                f[1] = p[0] + p[1];
                f[2..].iter_mut().for_each(|e| *e = p[0]);
                p[0]
            }
            _ => {
                f[0] = p[i];
                f[1] = p[1] + p[i];
                for k in 2..n {
                    if k != i {
                        f[k] = p[i];
                    }
                }
                p[i]
            }
        };
        push(format!("u{}", i + 1), f, if i >= 2 { -1 } else { 1 }, degree as i64);
    }
    push("v".into(), vec![1; n], 1, 1);

    let mut top = Vec::with_capacity(n);
    let mut bottom = Vec::with_capacity(n);
    for i in 1..n {
        top.push(Word::u(n, i));
    }
    top.push(Word::v(n, p[1]));
    bottom.push(Word::v(n, p[0]));
    for i in 2..n {
        bottom.push(Word::u(n, i).times(lambda(params, i)).plus(Word::v(n, p[i])));
    }
    bottom.push(Word::u(n, 0));
    Ok(WahlPresentation { generators, matrix: [top, bottom] })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorCheck {
    pub columns: (usize, usize),
    pub value: String,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionCheck {
    pub degree: i64,
    pub span: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WahlReport {
    pub minors: Vec<MinorCheck>,
    pub dimensions: Vec<DimensionCheck>,
    pub passed: bool,
}

impl WahlReport {
    pub fn first_failure(&self) -> Option<String> {
        if let Some(m) = self.minors.iter().find(|m| !m.zero) {
            return Some(format!("minor {:?} = {}", m.columns, m.value));
        }
        self.dimensions
            .iter()
            .find(|d| d.span != d.expected)
            .map(|d| format!("degree {}: span {} != {}", d.degree, d.span, d.expected))
    }
}

/// Checks the minors vanish in `S` and that words in the generators span
/// `S_{Ns}` for `N = 0..=max_degree`.
pub fn wahl_verify(params: &Parameters, max_degree: i64) -> Result<WahlReport> {
    let pres = wahl_generators(params)?;
    let ring = GradedRing::new(params);
    let n = params.n();
    let entries: Vec<Vec<Poly>> = pres
        .matrix
        .iter()
        .map(|row| row.iter().map(|w| pres.eval(&ring, w)).collect())
        .collect();
    let mut minors = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = ring
                .mul(&entries[0][i], &entries[1][j])
                .sub(&ring.mul(&entries[0][j], &entries[1][i]));
            minors.push(MinorCheck { columns: (i + 1, j + 1), zero: d.is_zero(), value: d.to_string() });
        }
    }

    let s = params.s();
    let mut spans: Vec<Vec<Poly>> = vec![vec![ring.one()]];
    let mut dimensions = vec![DimensionCheck { degree: 0, span: 1, expected: graded_dim(&params.zero()) }];
    for big_n in 1..=max_degree {
        let target = s.scale(big_n);
        let piece = ring.graded_basis(&target);
        let mut vectors = Vec::new();
        for g in &pres.generators {
            if g.degree > big_n {
                continue;
            }
            for b in &spans[(big_n - g.degree) as usize] {
                vectors.push(ring.coordinates(&piece, &ring.mul(&g.poly, b))?);
            }
        }
        let rows = linalg::rref(vectors);
        dimensions.push(DimensionCheck { degree: big_n, span: rows.len(), expected: graded_dim(&target) });
        spans.push(rows.iter().map(|r| ring.from_coordinates(&piece, r)).collect());
    }
    let passed = minors.iter().all(|m| m.zero) && dimensions.iter().all(|d| d.span == d.expected);
    Ok(WahlReport { minors, dimensions, passed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialIdeal {
    pub label: ModuleLabel,
    pub name: String,
    pub ideal: String,
}

fn v_pow(e: i64) -> String {
    if e == 1 {
        "v".into()
    } else {
        format!("v^{e}")
    }
}

/// Ideals of `R` realizing the special modules of `S^s`, center first, then
/// each arm from the center outward.
pub fn wahl_special_ideals(params: &Parameters) -> Result<Vec<SpecialIdeal>> {
    if params.n() < 3 {
        return Err(Error::Precondition(format!("need n >= 3, got {}", params.n())));
    }
    let p = params.weights();
    let mut out = vec![SpecialIdeal {
        label: ModuleLabel::SC,
        name: ModuleLabel::SC.to_string(),
        ideal: format!("({}, u1)", v_pow(p[1])),
    }];
    for (j, &pj) in p.iter().enumerate() {
        for k in 1..pj {
            let ideal = match j {
                0 => format!("({}, u1)", v_pow(p[1] + k)),
                1 => format!("(u1, {})", v_pow(p[1] - k)),
                _ => format!("(u{}, {})", j + 1, v_pow(pj - k)),
            };
            let label = ModuleLabel::Arm { j: j + 1, u: pj - k };
            out.push(SpecialIdeal { label, name: label.to_string(), ideal });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowColor {
    Black,
    Red,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelledArrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
    pub color: ArrowColor,
    pub l_degree: LElement,
    pub z_degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Canonical,
    TwoCycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub source: usize,
    pub target: usize,
    /// Coefficient and path (arrow indices in traversal order) per term.
    pub terms: Vec<(String, Vec<usize>)>,
    pub text: String,
}

/// The doubled canonical quiver with labelled arrows and its relations.
/// Vertex 0 is `*`, vertex 1 the center, then arm vertices `(j, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WahlQuiver {
    pub vertices: Vec<ModuleLabel>,
    pub names: Vec<String>,
    pub arrows: Vec<LabelledArrow>,
    pub relations: Vec<Relation>,
}

impl WahlQuiver {
    pub fn arrow_counts(&self) -> Vec<Vec<i64>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0; n]; n];
        for a in &self.arrows {
            m[a.source][a.target] += 1;
        }
        m
    }

    pub fn relation_counts(&self) -> Vec<Vec<i64>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0; n]; n];
        for r in &self.relations {
            m[r.source][r.target] += 1;
        }
        m
    }

    /// `(L-degree, Z-degree)` of every term of `r`.
    pub fn term_degrees(&self, r: &Relation, zero: &LElement) -> Vec<(LElement, i64)> {
        r.terms
            .iter()
            .map(|(_, path)| {
                path.iter().fold((zero.clone(), 0), |(l, z), &a| {
                    (&l + &self.arrows[a].l_degree, z + self.arrows[a].z_degree)
                })
            })
            .collect()
    }

    pub fn is_homogeneous(&self, r: &Relation, zero: &LElement) -> bool {
        let d = self.term_degrees(r, zero);
        d.windows(2).all(|w| w[0] == w[1])
    }
}

fn coefficient_text(c: &Rational) -> String {
    c.to_string()
}

pub fn wahl_relations(params: &Parameters) -> Result<WahlQuiver> {
    require_wahl(params)?;
    let p = params.weights();
    let n = p.len();
    let s = params.s();
    let mut vertices = vec![ModuleLabel::R, ModuleLabel::SC];
    // vertex index of arm j (0-based), position k (1-based)
    let mut pos = vec![Vec::new(); n];
    for (j, &pj) in p.iter().enumerate() {
        pos[j].push(1);
        for k in 1..pj {
            pos[j].push(vertices.len());
            vertices.push(ModuleLabel::Arm { j: j + 1, u: pj - k });
        }
    }
    let names = vertices
        .iter()
        .map(|l| if *l == ModuleLabel::R { "*".to_string() } else { l.to_string() })
        .collect();

    let mut arrows = Vec::new();
    let mut inward = vec![Vec::new(); n];
    for (j, &pj) in p.iter().enumerate() {
        let xj = params.x(j);
        let black = |source, target, label: String| LabelledArrow {
            source,
            target,
            label,
            color: ArrowColor::Black,
            l_degree: xj.clone(),
            z_degree: 0,
        };
        let red = |source, target, label: String| LabelledArrow {
            source,
            target,
            label,
            color: ArrowColor::Red,
            l_degree: &s - &xj,
            z_degree: 1,
        };
        let top = pos[j][(pj - 1) as usize];
        let (b_star, r_star) = match j {
            0 => ("u1".to_string(), "v/u1".to_string()),
            _ => ("v".to_string(), "inc".to_string()),
        };
        let (b_arm, r_arm) = match j {
            0 => ("inc", "v"),
            _ => ("v", "inc"),
        };
        let (b_center, r_center) = match j {
            0 => ("inc".to_string(), "v".to_string()),
            1 => ("v".to_string(), "inc".to_string()),
            _ => (format!("{}/u{}", v_pow(p[1] + 1), j + 1), format!("u{}/{}", j + 1, v_pow(p[1]))),
        };
        inward[j].push(arrows.len());
        arrows.push(black(0, top, b_star));
        for k in (1..pj - 1).rev() {
            let (outer, inner) = (pos[j][(k + 1) as usize], pos[j][k as usize]);
            inward[j].push(arrows.len());
            arrows.push(black(outer, inner, b_arm.to_string()));
        }
        inward[j].push(arrows.len());
        arrows.push(black(pos[j][1], 1, b_center));
        arrows.push(red(1, pos[j][1], r_center));
        for k in 1..pj - 1 {
            arrows.push(red(pos[j][k as usize], pos[j][(k + 1) as usize], r_arm.to_string()));
        }
        arrows.push(red(top, 0, r_star));
    }

    let arrow_text = |path: &[usize]| -> String {
        path.iter().map(|&a| arrows[a].label.clone()).collect::<Vec<_>>().join("*")
    };
    let mut relations = Vec::new();
    for i in 2..n {
        let l = lambda(params, i);
        let terms = vec![
            ("1".to_string(), inward[0].clone()),
            (coefficient_text(&-l.clone()), inward[1].clone()),
            ("1".to_string(), inward[i].clone()),
        ];
        let text = format!(
            "[{}] - {}*[{}] + [{}]",
            arrow_text(&inward[0]),
            l,
            arrow_text(&inward[1]),
            arrow_text(&inward[i])
        );
        relations.push(Relation { kind: RelationKind::Canonical, source: 0, target: 1, terms, text });
    }
    for vert in 0..vertices.len() {
        let cycles: Vec<Vec<usize>> = arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| a.source == vert)
            .filter_map(|(i, a)| {
                arrows
                    .iter()
                    .position(|b| b.source == a.target && b.target == vert)
                    .map(|back| vec![i, back])
            })
            .collect();
        for w in cycles.windows(2) {
            let text = format!("[{}] - [{}]", arrow_text(&w[0]), arrow_text(&w[1]));
            let terms = vec![("1".to_string(), w[0].clone()), ("-1".to_string(), w[1].clone())];
            relations.push(Relation { kind: RelationKind::TwoCycle, source: vert, target: vert, terms, text });
        }
    }
    Ok(WahlQuiver { vertices, names, arrows, relations })
}
