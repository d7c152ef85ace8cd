//! Recognizers for contractible graphs, spheres and manifolds.
//!
//! The definitions are inductive over unit spheres:
//!
//! * the one-point graph is contractible, and `G` is contractible when some
//!   vertex `v` has a contractible unit sphere `S(v)` and `G - v` is
//!   contractible;
//! * the empty graph is the (-1)-sphere;
//! * `G` is a d-manifold when every `S(v)` is a (d-1)-sphere, and a d-sphere
//!   when it is a d-manifold and `G - v` is contractible for some `v`.
//!
//! The search is exponential in the worst case, so every query runs against a
//! node budget and may answer [`Answer::Unknown`]. Results are memoized by
//! canonical certificate for small graphs, which lets the many isomorphic unit
//! spheres of a manifold share one computation; larger graphs are keyed by
//! their exact adjacency. Witnesses are stored in the labeling of the key and
//! translated back on every hit, so they always refer to the queried graph.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::canonical_form;

pub use crate::homology::{betti, BettiVector};

/// Default number of recursion nodes a [`Recognizer`] may expand.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

const CERT_MAX_ORDER: usize = 40;
const CERT_BUDGET: u64 = 20_000;

/// Three-valued result of a recognizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Answer<W> {
    Yes { witness: W },
    No { refutation: Refutation },
    /// The budget ran out before the search finished.
    Unknown { budget: u64 },
}

impl<W> Answer<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Answer::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Answer::No { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Answer::Unknown { .. })
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Answer::Yes { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Why a recognizer said no. Vertex numbers refer to the queried graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Refutation {
    /// The empty graph is a sphere but not contractible.
    EmptyGraph,
    Disconnected,
    /// No vertex has both a contractible unit sphere and a contractible
    /// deletion.
    NoContractibleVertex,
    LinkNotSphere { vertex: usize },
    MixedDimension { first: usize, first_dim: i64, second: usize, second_dim: i64 },
    /// A manifold, but no vertex deletion is contractible.
    NoContractibleDeletion,
}

/// Witness for a sphere: its dimension, the vertex whose deletion is
/// contractible, and the collapse order of that deletion (in labels of the
/// whole graph).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereWitness {
    pub dim: i64,
    pub removed: Option<usize>,
    pub collapse: Vec<usize>,
}

trait Relabel {
    fn relabel(&self, f: &dyn Fn(usize) -> usize) -> Self;
}

impl Relabel for Vec<usize> {
    fn relabel(&self, f: &dyn Fn(usize) -> usize) -> Self {
        self.iter().map(|&v| f(v)).collect()
    }
}

impl Relabel for i64 {
    fn relabel(&self, _: &dyn Fn(usize) -> usize) -> Self {
        *self
    }
}

impl Relabel for SphereWitness {
    fn relabel(&self, f: &dyn Fn(usize) -> usize) -> Self {
        SphereWitness {
            dim: self.dim,
            removed: self.removed.map(f),
            collapse: self.collapse.relabel(f),
        }
    }
}

impl Relabel for Refutation {
    fn relabel(&self, f: &dyn Fn(usize) -> usize) -> Self {
        match *self {
            Refutation::LinkNotSphere { vertex } => Refutation::LinkNotSphere { vertex: f(vertex) },
            Refutation::MixedDimension { first, first_dim, second, second_dim } => Refutation::MixedDimension {
                first: f(first),
                first_dim,
                second: f(second),
                second_dim,
            },
            ref other => other.clone(),
        }
    }
}

impl<W: Relabel> Relabel for std::result::Result<W, Refutation> {
    fn relabel(&self, f: &dyn Fn(usize) -> usize) -> Self {
        match self {
            Ok(w) => Ok(w.relabel(f)),
            Err(r) => Err(r.relabel(f)),
        }
    }
}

type Outcome<W> = std::result::Result<W, Refutation>;

struct Exhausted;

struct Key {
    bytes: Vec<u8>,
    /// Canonical position of each vertex, when keyed by certificate.
    labeling: Option<Vec<usize>>,
}

impl Key {
    fn of(g: &Graph) -> Key {
        if g.order() <= CERT_MAX_ORDER {
            if let Ok(c) = canonical_form(g, CERT_BUDGET) {
                let mut bytes = vec![0u8];
                bytes.extend(c.certificate);
                return Key { bytes, labeling: Some(c.labeling) };
            }
        }
        let mut bytes = vec![1u8];
        bytes.extend((g.order() as u32).to_le_bytes());
        for v in 0..g.order() {
            bytes.extend((g.degree(v) as u32).to_le_bytes());
            for &w in g.neighbors(v) {
                bytes.extend((w as u32).to_le_bytes());
            }
        }
        Key { bytes, labeling: None }
    }

    fn store<W: Relabel>(&self, value: &Outcome<W>) -> Outcome<W> {
        match &self.labeling {
            Some(lab) => value.relabel(&|v| lab[v]),
            None => value.relabel(&|v| v),
        }
    }

    fn load<W: Relabel>(&self, value: &Outcome<W>) -> Outcome<W> {
        match &self.labeling {
            Some(lab) => {
                let mut inverse = vec![0; lab.len()];
                for (v, &p) in lab.iter().enumerate() {
                    inverse[p] = v;
                }
                value.relabel(&|p| inverse[p])
            }
            None => value.relabel(&|v| v),
        }
    }
}

/// Vertices by ascending degree, ties by index.
fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    order
}

/// Recognizer with a shared budget and memo tables. Reuse one instance for a
/// batch of related queries to share cached sub-results.
pub struct Recognizer {
    limit: u64,
    used: u64,
    contractible: HashMap<Vec<u8>, Outcome<Vec<usize>>>,
    sphere: HashMap<Vec<u8>, Outcome<SphereWitness>>,
    manifold: HashMap<Vec<u8>, Outcome<i64>>,
}

impl Default for Recognizer {
    fn default() -> Self {
        Recognizer::new(DEFAULT_BUDGET)
    }
}

impl Recognizer {
    pub fn new(budget: u64) -> Self {
        Recognizer {
            limit: budget,
            used: 0,
            contractible: HashMap::new(),
            sphere: HashMap::new(),
            manifold: HashMap::new(),
        }
    }

    pub fn nodes_used(&self) -> u64 {
        self.used
    }

    /// Starts a fresh budget while keeping the memo tables.
    pub fn reset_budget(&mut self, budget: u64) {
        self.limit = budget;
        self.used = 0;
    }

    fn tick(&mut self) -> std::result::Result<(), Exhausted> {
        if self.used >= self.limit {
            return Err(Exhausted);
        }
        self.used += 1;
        Ok(())
    }

    fn finish<W>(&self, r: std::result::Result<Outcome<W>, Exhausted>) -> Answer<W> {
        match r {
            Ok(Ok(witness)) => Answer::Yes { witness },
            Ok(Err(refutation)) => Answer::No { refutation },
            Err(Exhausted) => Answer::Unknown { budget: self.limit },
        }
    }

    /// On yes, the witness is an order in which vertices can be removed, each
    /// having a contractible unit sphere at the time, until one remains.
    pub fn is_contractible(&mut self, g: &Graph) -> Answer<Vec<usize>> {
        let r = self.contractible(g);
        self.finish(r)
    }

    pub fn is_sphere(&mut self, g: &Graph) -> Answer<SphereWitness> {
        let r = self.sphere(g);
        self.finish(r)
    }

    /// On yes, the witness is the dimension.
    pub fn is_manifold(&mut self, g: &Graph) -> Answer<i64> {
        let r = self.manifold(g);
        self.finish(r)
    }

    fn contractible(&mut self, g: &Graph) -> std::result::Result<Outcome<Vec<usize>>, Exhausted> {
        match g.order() {
            0 => return Ok(Err(Refutation::EmptyGraph)),
            1 => return Ok(Ok(Vec::new())),
            _ => {}
        }
        let key = Key::of(g);
        if let Some(hit) = self.contractible.get(&key.bytes) {
            return Ok(key.load(hit));
        }
        self.tick()?;
        let result = if !g.is_connected() {
            Err(Refutation::Disconnected)
        } else {
            let mut found = Err(Refutation::NoContractibleVertex);
            for v in degree_order(g) {
                let link = g.unit_sphere(v).expect("vertex in range");
                if self.contractible(&link.graph)?.is_err() {
                    continue;
                }
                let rest = g.remove_vertex(v).expect("vertex in range");
                if let Ok(seq) = self.contractible(&rest.graph)? {
                    let mut order = vec![v];
                    order.extend(seq.iter().map(|&w| rest.map[w]));
                    found = Ok(order);
                    break;
                }
            }
            found
        };
        self.contractible.insert(key.bytes.clone(), key.store(&result));
        Ok(result)
    }

    fn sphere(&mut self, g: &Graph) -> std::result::Result<Outcome<SphereWitness>, Exhausted> {
        if g.is_empty() {
            return Ok(Ok(SphereWitness { dim: -1, removed: None, collapse: Vec::new() }));
        }
        let key = Key::of(g);
        if let Some(hit) = self.sphere.get(&key.bytes) {
            return Ok(key.load(hit));
        }
        self.tick()?;
        let result = match self.manifold(g)? {
            Err(r) => Err(r),
            Ok(dim) => {
                let mut found = Err(Refutation::NoContractibleDeletion);
                for v in degree_order(g) {
                    let rest = g.remove_vertex(v).expect("vertex in range");
                    if let Ok(seq) = self.contractible(&rest.graph)? {
                        found = Ok(SphereWitness {
                            dim,
                            removed: Some(v),
                            collapse: seq.iter().map(|&w| rest.map[w]).collect(),
                        });
                        break;
                    }
                }
                found
            }
        };
        self.sphere.insert(key.bytes.clone(), key.store(&result));
        Ok(result)
    }

    fn manifold(&mut self, g: &Graph) -> std::result::Result<Outcome<i64>, Exhausted> {
        if g.is_empty() {
            return Ok(Ok(-1));
        }
        let key = Key::of(g);
        if let Some(hit) = self.manifold.get(&key.bytes) {
            return Ok(key.load(hit));
        }
        self.tick()?;
        let mut result = Ok(0);
        let mut seen: Option<(usize, i64)> = None;
        for v in 0..g.order() {
            let link = g.unit_sphere(v).expect("vertex in range");
            match self.sphere(&link.graph)? {
                Err(_) => {
                    result = Err(Refutation::LinkNotSphere { vertex: v });
                    break;
                }
                Ok(w) => match seen {
                    None => seen = Some((v, w.dim)),
                    Some((first, first_dim)) if first_dim != w.dim => {
                        result = Err(Refutation::MixedDimension {
                            first,
                            first_dim: first_dim + 1,
                            second: v,
                            second_dim: w.dim + 1,
                        });
                        break;
                    }
                    Some(_) => {}
                },
            }
        }
        if result.is_ok() {
            result = Ok(seen.map_or(-1, |(_, d)| d + 1));
        }
        self.manifold.insert(key.bytes.clone(), key.store(&result));
        Ok(result)
    }
}

pub fn is_contractible(g: &Graph, budget: u64) -> Answer<Vec<usize>> {
    Recognizer::new(budget).is_contractible(g)
}

pub fn is_sphere(g: &Graph, budget: u64) -> Answer<SphereWitness> {
    Recognizer::new(budget).is_sphere(g)
}

pub fn is_manifold(g: &Graph, budget: u64) -> Answer<i64> {
    Recognizer::new(budget).is_manifold(g)
}

/// Dimension of `g` if it is a manifold, or a domain error naming why not.
pub(crate) fn require_manifold(rec: &mut Recognizer, g: &Graph) -> Result<i64> {
    match rec.is_manifold(g) {
        Answer::Yes { witness } => Ok(witness),
        Answer::No { refutation } => Err(Error::domain(format!("not a manifold: {refutation:?}"))),
        Answer::Unknown { budget } => Err(Error::BudgetExhausted { what: "manifold recognition", budget }),
    }
}

pub fn euler_characteristic(g: &Graph) -> i64 {
    g.euler_characteristic()
}

/// For a triangle-free graph: 1 if it is a forest, 2 otherwise.
pub fn homotopy_chromatic_triangle_free(g: &Graph) -> Result<u8> {
    if !g.is_triangle_free() {
        return Err(Error::domain("graph contains a triangle"));
    }
    Ok(if g.is_forest() { 1 } else { 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{cell600, complete, cycle, icosahedron, join, octahedron, path, points, suspension};

    /// Replays a collapse order against the recursive definition.
    fn replay(g: &Graph, seq: &[usize]) -> bool {
        let mut rec = Recognizer::default();
        let mut alive: Vec<usize> = (0..g.order()).collect();
        for &v in seq {
            let current = g.induced(&alive).unwrap();
            let Some(pos) = current.map.iter().position(|&w| w == v) else { return false };
            let link = current.graph.unit_sphere(pos).unwrap();
            if !rec.is_contractible(&link.graph).is_yes() {
                return false;
            }
            alive.retain(|&w| w != v);
        }
        alive.len() == 1
    }

    #[test]
    fn contractible_examples() {
        assert!(is_contractible(&points(1), DEFAULT_BUDGET).is_yes());
        let wheel = join(&cycle(5), &points(1));
        let ans = is_contractible(&wheel, DEFAULT_BUDGET);
        assert!(replay(&wheel, ans.witness().unwrap()));
        assert!(is_contractible(&cycle(4), DEFAULT_BUDGET).is_no());
        assert!(is_contractible(&Graph::empty(), DEFAULT_BUDGET).is_no());
        assert!(is_contractible(&path(6), DEFAULT_BUDGET).is_yes());
        assert_eq!(
            is_contractible(&points(2), DEFAULT_BUDGET),
            Answer::No { refutation: Refutation::Disconnected }
        );
    }

    #[test]
    fn sphere_examples() {
        let dim = |g: &Graph| is_sphere(g, DEFAULT_BUDGET).witness().map(|w| w.dim);
        assert_eq!(dim(&Graph::empty()), Some(-1));
        assert_eq!(dim(&points(2)), Some(0));
        assert_eq!(dim(&points(1)), None);
        assert_eq!(dim(&cycle(4)), Some(1));
        assert_eq!(dim(&cycle(3)), None);
        assert_eq!(dim(&octahedron()), Some(2));
        assert_eq!(dim(&icosahedron()), Some(2));
        assert_eq!(dim(&join(&cycle(5), &cycle(5))), Some(3));
        let ball = icosahedron().remove_vertex(0).unwrap().graph;
        assert_eq!(dim(&ball), None);
        assert!(is_contractible(&ball, DEFAULT_BUDGET).is_yes());
    }

    #[test]
    fn sphere_witness_replays() {
        let g = join(&cycle(5), &cycle(4));
        let w = is_sphere(&g, DEFAULT_BUDGET).witness().cloned().unwrap();
        let removed = w.removed.unwrap();
        let rest: Vec<usize> = (0..g.order()).filter(|&v| v != removed).collect();
        let sub = g.induced(&rest).unwrap();
        let local: Vec<usize> = w.collapse.iter().map(|v| sub.map.iter().position(|x| x == v).unwrap()).collect();
        assert!(replay(&sub.graph, &local));
    }

    #[test]
    fn manifold_examples() {
        assert_eq!(is_manifold(&icosahedron(), DEFAULT_BUDGET), Answer::Yes { witness: 2 });
        assert_eq!(is_manifold(&cell600(), DEFAULT_BUDGET), Answer::Yes { witness: 3 });
        assert_eq!(
            is_manifold(&complete(4), DEFAULT_BUDGET),
            Answer::No { refutation: Refutation::LinkNotSphere { vertex: 0 } }
        );
        let mixed = crate::builders::disjoint_union(&cycle(4), &octahedron());
        assert!(matches!(
            is_manifold(&mixed, DEFAULT_BUDGET),
            Answer::No { refutation: Refutation::MixedDimension { first: 0, first_dim: 1, second: 4, second_dim: 2 } }
        ));
        assert_eq!(is_manifold(&points(3), DEFAULT_BUDGET), Answer::Yes { witness: 0 });
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let g = join(&cycle(5), &cycle(5));
        assert_eq!(is_sphere(&g, 3), Answer::Unknown { budget: 3 });
    }

    #[test]
    fn sphere_euler_characteristic() {
        let s0 = points(2);
        for g in [octahedron(), icosahedron(), join(&cycle(5), &cycle(5)), join(&join(&s0, &cycle(5)), &cycle(4))] {
            let d = is_sphere(&g, DEFAULT_BUDGET).witness().unwrap().dim;
            assert_eq!(euler_characteristic(&g), 1 + if d % 2 == 0 { 1 } else { -1 });
            assert_eq!(is_manifold(&g, DEFAULT_BUDGET), Answer::Yes { witness: d });
        }
    }

    #[test]
    fn octahedron_deletions_are_contractible() {
        let oct = octahedron();
        let mut rec = Recognizer::default();
        for v in 0..6 {
            assert!(rec.is_contractible(&oct.remove_vertex(v).unwrap().graph).is_yes());
        }
        let ico = suspension(&cycle(5));
        assert!(rec.is_contractible(&ico.remove_vertex(6).unwrap().graph).is_yes());
    }

    #[test]
    fn homotopy_chromatic() {
        assert_eq!(homotopy_chromatic_triangle_free(&path(7)).unwrap(), 1);
        assert_eq!(homotopy_chromatic_triangle_free(&cycle(4)).unwrap(), 2);
        assert_eq!(homotopy_chromatic_triangle_free(&points(3)).unwrap(), 1);
        assert!(homotopy_chromatic_triangle_free(&complete(3)).is_err());
    }
}
