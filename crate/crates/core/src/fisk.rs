//! Dual spheres, the Fisk variety and Eulerian manifolds.
//!
//! In a d-manifold the vertices common to all unit spheres of a
//! (d-2)-simplex form a circle, its dual sphere. The simplex is odd when that
//! circle has odd length, and the odd simplices make up the Fisk variety
//! `O(G)`. A manifold with empty Fisk variety is called d-Eulerian.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{intersect_sorted, Graph, Induced, Simplex};
use crate::manifolds::{require_manifold, Answer, Recognizer, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentShape {
    /// Connected, every carrier degree 2.
    Cycle,
    Point,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiskComponent {
    /// Vertices in labels of the host graph.
    pub vertices: Vec<usize>,
    pub shape: ComponentShape,
    pub f_vector: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiskVariety {
    /// Dimension of the host manifold.
    pub dim: i64,
    /// Odd (d-2)-simplices, lexicographic.
    pub odd_simplices: Vec<Simplex>,
    /// Dual circle length of each odd simplex.
    pub circle_lengths: Vec<usize>,
    /// Vertices of the odd simplices, sorted; vertex `i` of `carrier` is
    /// `carrier_vertices[i]`.
    pub carrier_vertices: Vec<usize>,
    /// Edges only between vertices sharing an odd simplex.
    pub carrier: Graph,
    pub components: Vec<FiskComponent>,
}

impl FiskVariety {
    pub fn is_empty(&self) -> bool {
        self.odd_simplices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.odd_simplices.len()
    }

    /// Carrier edges in host labels.
    pub fn carrier_edges(&self) -> Vec<(usize, usize)> {
        self.carrier
            .edges()
            .into_iter()
            .map(|(u, v)| (self.carrier_vertices[u], self.carrier_vertices[v]))
            .collect()
    }

    fn relabel(mut self, map: &[usize]) -> Self {
        self.odd_simplices = self
            .odd_simplices
            .into_iter()
            .map(|s| Simplex::new(s.verts().iter().map(|&v| map[v]).collect()))
            .collect();
        // Sorted maps keep every list sorted.
        for v in &mut self.carrier_vertices {
            *v = map[*v];
        }
        for c in &mut self.components {
            for v in &mut c.vertices {
                *v = map[*v];
            }
        }
        self
    }
}

fn check_circle(circle: &Graph, x: &Simplex) -> Result<()> {
    let n = circle.order();
    if n < 4 || !circle.is_connected() || (0..n).any(|v| circle.degree(v) != 2) {
        return Err(Error::domain(format!("dual sphere of {x:?} is not a circle")));
    }
    Ok(())
}

fn common_neighbors(g: &Graph, x: &Simplex) -> Vec<usize> {
    let mut verts = x.verts().iter();
    let first = verts.next().map(|&v| g.neighbors(v).to_vec()).unwrap_or_default();
    verts.fold(first, |acc, &v| intersect_sorted(&acc, g.neighbors(v)))
}

/// The circle `S(x_0) ∩ ... ∩ S(x_{d-2})` of a (d-2)-simplex of a d-manifold.
pub fn dual_sphere(g: &Graph, x: &Simplex) -> Result<Induced> {
    let d = require_manifold(&mut Recognizer::new(DEFAULT_BUDGET), g)?;
    if d < 2 {
        return Err(Error::domain(format!("dual spheres need dimension at least 2, got {d}")));
    }
    if x.dim() != d - 2 || !x.is_clique_in(g) {
        return Err(Error::domain(format!("{x:?} is not a {}-simplex", d - 2)));
    }
    let circle = g.induced_unchecked(&common_neighbors(g, x));
    check_circle(&circle.graph, x)?;
    Ok(circle)
}

fn classify(carrier: &Graph, comp: &[usize], vertices: &[usize]) -> FiskComponent {
    let sub = carrier.induced_unchecked(comp).graph;
    let shape = if comp.len() == 1 {
        ComponentShape::Point
    } else if comp.len() >= 3 && (0..sub.order()).all(|v| sub.degree(v) == 2) {
        ComponentShape::Cycle
    } else {
        ComponentShape::Other
    };
    FiskComponent {
        vertices: comp.iter().map(|&i| vertices[i]).collect(),
        shape,
        f_vector: sub.f_vector().counts,
    }
}

fn variety_of(g: &Graph, d: i64) -> Result<FiskVariety> {
    if d < 2 {
        return Err(Error::domain(format!("the Fisk variety needs dimension at least 2, got {d}")));
    }
    let mut odd_simplices = Vec::new();
    let mut circle_lengths = Vec::new();
    for x in g.cliques((d - 1) as usize) {
        let common = common_neighbors(g, &x);
        // Each d-simplex through x is x plus an edge of the dual circle.
        let hinged = g.induced_unchecked(&common).graph.size();
        if hinged != common.len() {
            return Err(Error::domain(format!(
                "dual sphere of {x:?} has {} vertices but {hinged} edges",
                common.len()
            )));
        }
        if common.len() % 2 == 1 {
            odd_simplices.push(x);
            circle_lengths.push(common.len());
        }
    }
    let mut carrier_vertices: Vec<usize> = odd_simplices.iter().flat_map(|s| s.verts().iter().copied()).collect();
    carrier_vertices.sort_unstable();
    carrier_vertices.dedup();
    let index = |v: usize| carrier_vertices.binary_search(&v).expect("carrier vertex");
    let mut edges = Vec::new();
    for s in &odd_simplices {
        let v = s.verts();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                edges.push((index(v[i]), index(v[j])));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let carrier = Graph::from_edges(carrier_vertices.len(), edges)?;
    let components = carrier
        .components()
        .iter()
        .map(|c| classify(&carrier, c, &carrier_vertices))
        .collect();
    Ok(FiskVariety { dim: d, odd_simplices, circle_lengths, carrier_vertices, carrier, components })
}

pub fn fisk_variety(g: &Graph) -> Result<FiskVariety> {
    fisk_variety_with_budget(g, DEFAULT_BUDGET)
}

pub fn fisk_variety_with_budget(g: &Graph, budget: u64) -> Result<FiskVariety> {
    let d = require_manifold(&mut Recognizer::new(budget), g)?;
    variety_of(g, d)
}

/// `O(S(v))`, in labels of `g`.
pub fn fisk_local(g: &Graph, v: usize) -> Result<FiskVariety> {
    let mut rec = Recognizer::new(DEFAULT_BUDGET);
    let d = require_manifold(&mut rec, g)?;
    if d < 3 {
        return Err(Error::domain(format!("local Fisk sets need dimension at least 3, got {d}")));
    }
    let link = g.unit_sphere(v)?;
    Ok(variety_of(&link.graph, d - 1)?.relabel(&link.map))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LinkVerdict {
    Empty,
    /// `O(S(x))` is a sphere of dimension `d - 3`.
    Sphere,
    Other,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiskCriterionReport {
    pub dim: i64,
    /// One verdict per vertex of the host.
    pub verdicts: Vec<LinkVerdict>,
    pub criterion_holds: bool,
    /// Manifold recognition on the carrier of `O(G)`.
    pub manifold_check: Answer<i64>,
    /// The carrier is a manifold of dimension `d - 2`.
    pub carrier_is_expected_manifold: bool,
    pub variety: FiskVariety,
}

impl FiskCriterionReport {
    pub fn failing_vertices(&self) -> Vec<usize> {
        (0..self.verdicts.len()).filter(|&v| self.verdicts[v] == LinkVerdict::Other).collect()
    }
}

pub fn fisk_criterion(g: &Graph) -> Result<FiskCriterionReport> {
    fisk_criterion_with_budget(g, DEFAULT_BUDGET)
}

/// Classifies every local Fisk set and checks whether `O(G)` is a
/// (d-2)-manifold.
pub fn fisk_criterion_with_budget(g: &Graph, budget: u64) -> Result<FiskCriterionReport> {
    let mut rec = Recognizer::new(budget);
    let d = require_manifold(&mut rec, g)?;
    if d < 3 {
        return Err(Error::domain(format!("the Fisk criterion needs dimension at least 3, got {d}")));
    }
    let variety = variety_of(g, d)?;
    let mut verdicts = Vec::with_capacity(g.order());
    for v in 0..g.order() {
        let link = g.unit_sphere(v)?;
        let local = variety_of(&link.graph, d - 1)?;
        let verdict = if local.is_empty() {
            LinkVerdict::Empty
        } else {
            match rec.is_sphere(&local.carrier) {
                Answer::Yes { witness } if witness.dim == d - 3 => LinkVerdict::Sphere,
                Answer::Unknown { budget } => {
                    return Err(Error::BudgetExhausted { what: "local Fisk set recognition", budget })
                }
                _ => LinkVerdict::Other,
            }
        };
        verdicts.push(verdict);
    }
    let criterion_holds = verdicts.iter().all(|v| *v != LinkVerdict::Other);
    let manifold_check = rec.is_manifold(&variety.carrier);
    let carrier_is_expected_manifold = manifold_check.witness() == Some(&(d - 2));
    Ok(FiskCriterionReport { dim: d, verdicts, criterion_holds, manifold_check, carrier_is_expected_manifold, variety })
}

/// Whether the manifold `g` has an empty Fisk variety.
pub fn is_d_eulerian(g: &Graph) -> Result<bool> {
    Ok(fisk_variety(g)?.is_empty())
}

/// Hierholzer circuit through every edge once, starting at vertex 0 and
/// always leaving by the smallest unused edge. Steps are `(from, to)`.
pub fn eulerian_circuit(g: &Graph) -> Result<Vec<(usize, usize)>> {
    if let Some(v) = (0..g.order()).find(|&v| g.degree(v) % 2 == 1) {
        return Err(Error::domain(format!("vertex {v} has odd degree {}", g.degree(v))));
    }
    let comps = g.components();
    if comps.len() > 1 {
        return Err(Error::domain(format!(
            "graph is disconnected: vertices {} and {} lie in different components",
            comps[0][0], comps[1][0]
        )));
    }
    if g.size() == 0 {
        return Ok(Vec::new());
    }
    let mut next = vec![0usize; g.order()];
    let mut used = std::collections::HashSet::new();
    let mut stack = vec![0usize];
    let mut walk = Vec::with_capacity(g.size() + 1);
    while let Some(&u) = stack.last() {
        let nbrs = g.neighbors(u);
        while next[u] < nbrs.len() && used.contains(&(u.min(nbrs[next[u]]), u.max(nbrs[next[u]]))) {
            next[u] += 1;
        }
        if next[u] == nbrs.len() {
            walk.push(u);
            stack.pop();
        } else {
            let w = nbrs[next[u]];
            used.insert((u.min(w), u.max(w)));
            stack.push(w);
        }
    }
    walk.reverse();
    Ok(walk.windows(2).map(|p| (p[0], p[1])).collect())
}
