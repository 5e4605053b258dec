//! Dual graphs of the resolution of `Spec S^x`, special CM modules and the
//! speciality oracle.

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::gradedring::{graded_dim, subspace_sum, GradedRing, Subspace};
use crate::hj::{hj_expand, i_series};
use crate::lgroup::{coprime_criterion, LCoords, LElement, Parameters};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub name: String,
    pub label: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arm {
    /// 1-based weight index.
    pub j: usize,
    /// Vertex indices from the center outward.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Shape {
    Point,
    Chain { order: Vec<usize> },
    Star { center: usize, arms: Vec<Arm> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub params: Parameters,
    pub x: LCoords,
}

/// A labelled tree; labels are self-intersection numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
    pub shape: Shape,
    pub provenance: Option<Provenance>,
}

impl DualGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn labels(&self) -> Vec<i64> {
        self.vertices.iter().map(|v| v.label).collect()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match (a == i, b == i) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    pub fn is_tree(&self) -> bool {
        let n = self.len();
        if n == 0 || self.edges.len() != n - 1 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// A star or chain built from a center label and arms of labels.
    pub fn star(center_label: i64, arms: &[(usize, Vec<i64>)]) -> DualGraph {
        let mut vertices = vec![Vertex { name: "center".into(), label: center_label }];
        let mut edges = Vec::new();
        let mut shape_arms = Vec::new();
        for (j, labels) in arms {
            let mut ids = Vec::new();
            let mut prev = 0;
            for (k, &label) in labels.iter().enumerate() {
                let id = vertices.len();
                vertices.push(Vertex { name: format!("E_{j}_{}", k + 1), label });
                edges.push((prev, id));
                ids.push(id);
                prev = id;
            }
            shape_arms.push(Arm { j: *j, vertices: ids });
        }
        let shape = match shape_arms.len() {
            0 => Shape::Point,
            1 => Shape::Chain { order: (0..vertices.len()).collect() },
            _ => Shape::Star { center: 0, arms: shape_arms },
        };
        DualGraph { vertices, edges, shape, provenance: None }
    }
}

fn require_nonzero_positive(params: &Parameters, x: &LElement) -> Result<()> {
    if x.weights() != params.weights() {
        return Err(Error::ParameterMismatch(format!(
            "element over {:?} used with weights {:?}",
            x.weights(),
            params.weights()
        )));
    }
    if !x.is_positive() || x.is_zero() {
        return Err(Error::Precondition(format!("{x} must be nonzero and positive")));
    }
    Ok(())
}

/// Labels of arm `j` (0-based): `hj_expand(p_j, p_j - a_j)`, negated.
fn arm_labels(params: &Parameters, x: &LElement, j: usize) -> Vec<i64> {
    let p = params.weights()[j];
    hj_expand(p, p - x.xi()[j])
        .expect("0 < a_j < p_j")
        .alphas
        .into_iter()
        .map(|a| -a)
        .collect()
}

pub fn dual_graph(params: &Parameters, x: &LElement) -> Result<DualGraph> {
    require_nonzero_positive(params, x)?;
    let support = x.support();
    let center = -(x.c_coeff() + support.len() as i64);
    let arms: Vec<(usize, Vec<i64>)> =
        support.iter().map(|&j| (j + 1, arm_labels(params, x, j))).collect();
    let mut g = DualGraph::star(center, &arms);
    g.provenance = Some(Provenance { params: params.clone(), x: x.coords() });
    Ok(g)
}

pub fn is_minimal(params: &Parameters, x: &LElement) -> Result<bool> {
    require_nonzero_positive(params, x)?;
    Ok(!x.in_interval_0_c())
}

/// Contracts `-1` vertices of a chain, lowest position first, until every
/// label is at most `-2` or a single vertex is left.
pub fn blow_down_chain(g: &DualGraph) -> Result<DualGraph> {
    let order = match &g.shape {
        Shape::Chain { order } => order.clone(),
        Shape::Point => vec![0],
        Shape::Star { .. } => return Err(Error::Precondition("blow_down_chain needs a chain".into())),
    };
    let mut chain: Vec<Vertex> = order.iter().map(|&i| g.vertices[i].clone()).collect();
    while chain.len() > 1 {
        let Some(k) = chain.iter().position(|v| v.label == -1) else {
            break;
        };
        chain.remove(k);
        if k > 0 {
            chain[k - 1].label += 1;
        }
        if k < chain.len() {
            chain[k].label += 1;
        }
    }
    let n = chain.len();
    let shape = if n == 1 { Shape::Point } else { Shape::Chain { order: (0..n).collect() } };
    Ok(DualGraph {
        vertices: chain,
        edges: (1..n).map(|i| (i - 1, i)).collect(),
        shape,
        provenance: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ModuleLabel {
    R,
    SC,
    /// `S(u x_j)^x`, `j` 1-based.
    Arm { j: usize, u: i64 },
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLabel::R => write!(f, "R"),
            ModuleLabel::SC => write!(f, "S(c)^x"),
            ModuleLabel::Arm { j, u: 1 } => write!(f, "S(x_{j})^x"),
            ModuleLabel::Arm { j, u } => write!(f, "S({u}x_{j})^x"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialModule {
    pub label: ModuleLabel,
    pub name: String,
    /// Vertex of the dual graph; `None` for `R`.
    pub vertex: Option<usize>,
}

impl SpecialModule {
    fn new(label: ModuleLabel, vertex: Option<usize>) -> Self {
        SpecialModule { label, name: label.to_string(), vertex }
    }
}

/// Special CM modules of rank one with their vertices in [`dual_graph`].
pub fn specials(params: &Parameters, x: &LElement) -> Result<Vec<SpecialModule>> {
    if !is_minimal(params, x)? {
        return Err(Error::NotMinimal(format!("{x} lies in [0, c]")));
    }
    let mut out = vec![SpecialModule::new(ModuleLabel::R, None), SpecialModule::new(ModuleLabel::SC, Some(0))];
    let mut next = 1;
    for j in x.support() {
        let p = params.weights()[j];
        let terms = i_series(p, p - x.xi()[j])?.terms;
        for &u in &terms[1..terms.len() - 1] {
            out.push(SpecialModule::new(ModuleLabel::Arm { j: j + 1, u }, Some(next)));
            next += 1;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialityVerdict {
    pub special: bool,
    /// First `l` at which the product decomposition fails.
    pub witness: Option<i64>,
    pub l_max: i64,
}

pub const DEFAULT_L_MAX: i64 = 8;

/// Checks `S_{y+w+lx} = sum_{m=1..l} S_{w+mx} S_{y+(l-m)x}` for
/// `l = 1..l_max`, where `w` is the dualizing element.
pub fn speciality_oracle(
    params: &Parameters,
    x: &LElement,
    y: &LElement,
    l_max: i64,
) -> Result<SpecialityVerdict> {
    if !coprime_criterion(params, x)? {
        return Err(Error::Precondition(format!("{x} fails the coprime criterion")));
    }
    if x.in_interval_0_c() {
        return Err(Error::NotMinimal(format!("{x} lies in [0, c]")));
    }
    if y.weights() != params.weights() || !y.in_interval_0_c() {
        return Err(Error::Precondition(format!("{y} must lie in [0, c]")));
    }
    if l_max < 1 {
        return Err(Error::Precondition(format!("l_max = {l_max} < 1")));
    }
    let ring = GradedRing::new(params);
    let omega = params.omega();
    for l in 1..=l_max {
        let target = y + &omega + x.scale(l);
        if graded_dim(&target) == 0 {
            continue;
        }
        let mut sum = Subspace::zero(ring.graded_basis(&target));
        for m in 1..=l {
            let left = &omega + &x.scale(m);
            let right = y + &x.scale(l - m);
            if graded_dim(&left) == 0 || graded_dim(&right) == 0 {
                continue;
            }
            sum = subspace_sum(&sum, &ring.piece_product(&left, &right)?)?;
        }
        if !sum.is_full() {
            return Ok(SpecialityVerdict { special: false, witness: Some(l), l_max });
        }
    }
    Ok(SpecialityVerdict { special: true, witness: None, l_max })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionReport {
    pub graph: DualGraph,
    pub specials: Option<Vec<SpecialModule>>,
    pub minimal: bool,
}

pub fn resolution_report(params: &Parameters, x: &LElement) -> Result<ResolutionReport> {
    let graph = dual_graph(params, x)?;
    let minimal = is_minimal(params, x)?;
    let specials = if minimal { Some(specials(params, x)?) } else { None };
    Ok(ResolutionReport { graph, specials, minimal })
}

/// Undirected DOT; module names become tooltips when given.
pub fn to_dot(g: &DualGraph, modules: Option<&[SpecialModule]>) -> String {
    let mut out = String::from("graph dual {\n");
    for (i, v) in g.vertices.iter().enumerate() {
        let tip = modules
            .and_then(|ms| ms.iter().find(|m| m.vertex == Some(i)))
            .map(|m| format!(", tooltip=\"{}\"", m.name))
            .unwrap_or_default();
        let _ = writeln!(out, "  {} [label=\"{}\"{}];", v.name, v.label, tip);
    }
    for &(a, b) in &g.edges {
        let _ = writeln!(out, "  {} -- {};", g.vertices[a].name, g.vertices[b].name);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(p: &[i64], xi: &[i64], c: i64) -> (Parameters, LElement) {
        let params = Parameters::with_default_points(p.to_vec()).unwrap();
        let x = params.normal_form(xi, c).unwrap();
        (params, x)
    }

    #[test]
    fn example_star() {
        let (p, x) = setup(&[3, 5, 5], &[2, 2, 3], 0);
        let g = dual_graph(&p, &x).unwrap();
        assert_eq!(g.labels(), vec![-3, -3, -2, -3, -3, -2]);
        assert!(g.is_tree());
        let Shape::Star { arms, .. } = &g.shape else { panic!("star expected") };
        assert_eq!(arms.len(), 3);
        let names: Vec<String> = specials(&p, &x).unwrap().into_iter().map(|m| m.name).collect();
        assert_eq!(
            names,
            ["R", "S(c)^x", "S(x_1)^x", "S(3x_2)^x", "S(x_2)^x", "S(2x_3)^x", "S(x_3)^x"]
        );
    }

    #[test]
    fn degenerate_shapes() {
        let (p, x) = setup(&[2, 3, 3], &[0, 0, 0], 3);
        let g = dual_graph(&p, &x).unwrap();
        assert_eq!((g.labels(), &g.shape), (vec![-3], &Shape::Point));
        let (p, x) = setup(&[2, 3, 3], &[0, 2, 0], 1);
        let g = dual_graph(&p, &x).unwrap();
        assert_eq!(g.labels(), vec![-2, -3]);
        assert!(matches!(g.shape, Shape::Chain { .. }));
        let labels: Vec<ModuleLabel> = specials(&p, &x).unwrap().into_iter().map(|m| m.label).collect();
        assert_eq!(labels, [ModuleLabel::R, ModuleLabel::SC, ModuleLabel::Arm { j: 2, u: 1 }]);
        let (p, x) = setup(&[3, 5, 5], &[2, 0, 0], 0);
        assert!(!is_minimal(&p, &x).unwrap());
        assert!(matches!(specials(&p, &x), Err(Error::NotMinimal(_))));
        assert!(dual_graph(&p, &p.zero()).is_err());
        assert!(!is_minimal(&p, &p.c()).unwrap());
    }

    #[test]
    fn s_veronese_arms_of_twos() {
        let (p, _) = setup(&[2, 3, 4], &[0, 0, 0], 0);
        let g = dual_graph(&p, &p.s_a(2)).unwrap();
        assert_eq!(g.labels(), vec![-5, -2, -2, -2, -2, -2, -2]);
        assert_eq!(specials(&p, &p.s_a(2)).unwrap().len(), 8);
    }

    #[test]
    fn blow_down() {
        let chain = |labels: &[i64]| DualGraph::star(labels[0], &[(1, labels[1..].to_vec())]);
        assert_eq!(blow_down_chain(&chain(&[-1, -3])).unwrap().labels(), vec![-2]);
        assert_eq!(blow_down_chain(&chain(&[-2, -1, -3])).unwrap().labels(), vec![-1]);
        assert_eq!(blow_down_chain(&chain(&[-2, -3, -2])).unwrap().labels(), vec![-2, -3, -2]);
        let (p, x) = setup(&[3, 5, 5], &[2, 2, 3], 0);
        assert!(blow_down_chain(&dual_graph(&p, &x).unwrap()).is_err());
    }

    #[test]
    fn oracle_on_example() {
        let (p, x) = setup(&[3, 5, 5], &[2, 2, 3], 0);
        let v = speciality_oracle(&p, &x, &p.x(1), DEFAULT_L_MAX).unwrap();
        assert!(v.special);
        let v = speciality_oracle(&p, &x, &p.x(1).scale(2), DEFAULT_L_MAX).unwrap();
        assert!(!v.special && v.witness.is_some());
        assert!(speciality_oracle(&p, &x, &p.c(), DEFAULT_L_MAX).unwrap().special);
    }

    #[test]
    fn dot_and_json() {
        let (p, x) = setup(&[3, 5, 5], &[2, 2, 3], 0);
        let report = resolution_report(&p, &x).unwrap();
        let dot = to_dot(&report.graph, report.specials.as_deref());
        assert!(dot.contains("center [label=\"-3\", tooltip=\"S(c)^x\"];"));
        assert!(dot.contains("center -- E_1_1;"));
        let text = serde_json::to_string(&report.graph).unwrap();
        let back: DualGraph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report.graph);
    }
}
