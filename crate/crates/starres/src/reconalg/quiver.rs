use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::intersection::{
    canonical_cycle, fundamental_cycle, is_negative_definite, matrix_from_graph, Cycle,
};
use crate::lgroup::{LElement, Parameters};
use crate::resolution::{dual_graph, specials, DualGraph, ModuleLabel, Shape, SpecialModule};
use crate::{Error, Rational, Result};

/// Vertex 0 is the extending vertex `*` (the module `R`); vertex `i + 1`
/// is vertex `i` of the dual graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverData {
    pub vertices: Vec<ModuleLabel>,
    pub names: Vec<String>,
    pub arrows: Vec<Vec<i64>>,
    pub relations: Vec<Vec<i64>>,
    /// Set when the dual graph is not a star with at least two arms.
    pub degenerate: bool,
}

impl QuiverData {
    fn empty(vertices: Vec<ModuleLabel>, degenerate: bool) -> Self {
        let n = vertices.len();
        let names = vertices
            .iter()
            .map(|l| if *l == ModuleLabel::R { "*".to_string() } else { l.to_string() })
            .collect();
        QuiverData { vertices, names, arrows: vec![vec![0; n]; n], relations: vec![vec![0; n]; n], degenerate }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Same vertex labels in the same order and equal matrices.
    pub fn same_counts(&self, other: &QuiverData) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows && self.relations == other.relations
    }
}

fn vertex_labels(g: &DualGraph, modules: &[SpecialModule]) -> Result<Vec<ModuleLabel>> {
    let mut labels = vec![ModuleLabel::R];
    for i in 0..g.len() {
        let mut at = modules.iter().filter(|m| m.vertex == Some(i));
        match (at.next(), at.next()) {
            (Some(m), None) => labels.push(m.label),
            _ => {
                return Err(Error::Precondition(format!(
                    "vertex {} needs exactly one module",
                    g.vertices[i].name
                )))
            }
        }
    }
    Ok(labels)
}

fn integral(q: &Rational) -> Result<i64> {
    Cycle { coeffs: vec![q.clone()] }
        .as_integers()
        .map(|v| v[0])
        .ok_or_else(|| Error::Internal(format!("{q} should be an integer")))
}

fn plus(x: i64) -> i64 {
    x.max(0)
}

fn minus(x: i64) -> i64 {
    (-x).max(0)
}

/// Arrow and relation counts from `Z_f`, `Z_K` and the pairing.
pub fn quiver_from_intersection(g: &DualGraph, modules: &[SpecialModule]) -> Result<QuiverData> {
    if let Some(v) = g.vertices.iter().find(|v| v.label > -2) {
        return Err(Error::NotMinimal(format!("vertex {} has label {}", v.name, v.label)));
    }
    let m = matrix_from_graph(g);
    if !is_negative_definite(&m) {
        return Err(Error::NotNegativeDefinite);
    }
    let labels = vertex_labels(g, modules)?;
    let degenerate = !matches!(g.shape, Shape::Star { .. });
    let mut q = QuiverData::empty(labels, degenerate);
    let n = g.len();
    let zf = fundamental_cycle(&m)?;
    let zk = canonical_cycle(&m)?;
    let diff = zk.sub(&zf);

    let zf_sq = (0..n).map(|i| &zf.coeffs[i] * m.dot_basis(&zf, i)).sum::<Rational>();
    q.relations[0][0] = -1 - integral(&zf_sq)?;
    for i in 0..n {
        let star_to_i = integral(&m.dot_basis(&diff, i))?;
        q.arrows[0][i + 1] = plus(star_to_i);
        q.relations[0][i + 1] = minus(star_to_i);
        q.arrows[i + 1][0] = -integral(&m.dot_basis(&zf, i))?;
        for j in 0..n {
            let eij = m.entries[i][j];
            if i != j {
                q.arrows[i + 1][j + 1] = plus(eij);
            }
            q.relations[i + 1][j + 1] = plus(-1 - eij);
        }
    }
    Ok(q)
}

/// The double quiver of the dual graph with `*` joined to the arm ends,
/// `alpha - 2` extra arrows to `*` from every arm vertex, `a` extra arrows
/// from the center, and relation counts from the same local data.
pub fn quiver_combinatorial(params: &Parameters, x: &LElement) -> Result<QuiverData> {
    let v = x.support().len();
    if v < 2 {
        return Err(Error::Degenerate(format!("{v} nonzero arm coefficients; need at least 2")));
    }
    let g = dual_graph(params, x)?;
    let modules = specials(params, x)?;
    let Shape::Star { center, arms } = &g.shape else {
        return Err(Error::Internal("expected a star".into()));
    };
    let mut q = QuiverData::empty(vertex_labels(&g, &modules)?, false);
    let a = x.c_coeff();
    let beta = -g.vertices[*center].label;
    let c = center + 1;

    q.relations[c][c] = beta - 1;
    q.arrows[c][0] = a;
    q.relations[0][c] = v as i64 - 2;
    let mut star_loops = -1 + a + v as i64;
    for arm in arms {
        let mut prev = c;
        for &vert in &arm.vertices {
            let k = vert + 1;
            let alpha = -g.vertices[vert].label;
            q.arrows[prev][k] = 1;
            q.arrows[k][prev] = 1;
            q.relations[k][k] = alpha - 1;
            q.arrows[k][0] += alpha - 2;
            star_loops += alpha - 2;
            prev = k;
        }
        q.arrows[0][prev] = 1;
        q.arrows[prev][0] += 1;
    }
    q.relations[0][0] = star_loops;
    Ok(q)
}

/// Directed DOT; arrows moving away from `*` are black, the rest red.
pub fn quiver_to_dot(q: &QuiverData, g: &DualGraph) -> String {
    let depth = depth_from_star(g);
    let node = |i: usize| if i == 0 { "star".to_string() } else { g.vertices[i - 1].name.clone() };
    let mut out = String::from("digraph quiver {\n");
    for (i, name) in q.names.iter().enumerate() {
        let _ = writeln!(out, "  {} [label=\"{}\"];", node(i), name);
    }
    for i in 0..q.len() {
        for j in 0..q.len() {
            let color = if depth[j] > depth[i] { "black" } else { "red" };
            for _ in 0..q.arrows[i][j] {
                let _ = writeln!(out, "  {} -> {} [color={color}];", node(i), node(j));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Distance from `*` through the arm ends, indexed like [`QuiverData`].
fn depth_from_star(g: &DualGraph) -> Vec<usize> {
    let n = g.len();
    let mut depth = vec![usize::MAX; n + 1];
    depth[0] = 0;
    let mut frontier: Vec<usize> = match &g.shape {
        Shape::Star { arms, .. } => arms.iter().filter_map(|a| a.vertices.last().copied()).collect(),
        Shape::Chain { order } => order.last().copied().into_iter().collect(),
        Shape::Point => vec![0],
    };
    let mut d = 1;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in frontier {
            if depth[v + 1] == usize::MAX {
                depth[v + 1] = d;
                next.extend(g.neighbors(v));
            }
        }
        frontier = next;
        d += 1;
    }
    depth
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
    fn a1() {
        let g = DualGraph::star(-2, &[]);
        let modules = vec![
            SpecialModule { label: ModuleLabel::R, name: "R".into(), vertex: None },
            SpecialModule { label: ModuleLabel::SC, name: "S(c)^x".into(), vertex: Some(0) },
        ];
        let q = quiver_from_intersection(&g, &modules).unwrap();
        // -E.Z_f = (Z_K - Z_f).E = 2: the doubled extended A_1 diagram
        assert_eq!(q.arrows, vec![vec![0, 2], vec![2, 0]]);
        assert_eq!(q.relations, vec![vec![1, 0], vec![0, 1]]);
        assert!(q.degenerate);
    }

    #[test]
    fn example_cross_construction() {
        let (p, x) = setup(&[3, 5, 5], &[2, 2, 3], 0);
        let g = dual_graph(&p, &x).unwrap();
        let q1 = quiver_from_intersection(&g, &specials(&p, &x).unwrap()).unwrap();
        let q2 = quiver_combinatorial(&p, &x).unwrap();
        assert_eq!(q1, q2);
        assert_eq!(q1.arrows[1][0], 0);
        // the -3 vertex on arm 1 has one extra arrow to *
        assert_eq!(q1.arrows[2][0], 2);
    }

    #[test]
    fn s_veronese_extra_center_arrows() {
        let (p, _) = setup(&[2, 3, 3], &[0, 0, 0], 0);
        let x = p.s_a(2);
        let q = quiver_combinatorial(&p, &x).unwrap();
        assert_eq!(q.arrows[1][0], 2);
        let g = dual_graph(&p, &x).unwrap();
        assert_eq!(q, quiver_from_intersection(&g, &specials(&p, &x).unwrap()).unwrap());
    }

    #[test]
    fn rejects_degenerate_and_non_minimal() {
        let (p, x) = setup(&[2, 3, 3], &[0, 2, 0], 1);
        assert!(matches!(quiver_combinatorial(&p, &x), Err(Error::Degenerate(_))));
        let g = DualGraph::star(-1, &[(1, vec![-3])]);
        assert!(matches!(quiver_from_intersection(&g, &[]), Err(Error::NotMinimal(_))));
    }

    #[test]
    fn dot_colors() {
        let (p, x) = setup(&[3, 5, 5], &[2, 2, 3], 0);
        let g = dual_graph(&p, &x).unwrap();
        let q = quiver_combinatorial(&p, &x).unwrap();
        let dot = quiver_to_dot(&q, &g);
        assert!(dot.contains("star -> E_1_1 [color=black];"));
        assert!(dot.contains("E_1_1 -> star [color=red];"));
        assert!(dot.contains("E_1_1 -> center [color=black];"));
    }
}
