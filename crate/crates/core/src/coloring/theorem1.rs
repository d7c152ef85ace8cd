//! The dual graph of a manifold and the two-forest coloring pipeline.
//!
//! The pipeline for a d-manifold `G`:
//!
//! 1. build the dual graph on the maximal simplices;
//! 2. split its vertices into two classes that each induce a forest, first by
//!    2-coloring a spanning tree, then by greedy exchange, then by exact
//!    search;
//! 3. walk every tree of the first class with palette `0..=d` and every tree
//!    of the second with `d+1..=2d+1`, giving the one vertex a tree edge adds
//!    the unused color of its simplex (a vertex keeps the first color it
//!    receives);
//! 4. repair leftover conflicts by recoloring within the `2d + 2` colors;
//! 5. if the result is still improper, fall back to an exact search for a
//!    `2d + 2` coloring.
//!
//! Only the verified output counts; the trace records which stage produced it.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::exact::{chromatic_number, k_colorable, Chromatic, KColoring};
use super::{find_conflict, Coloring};
use crate::error::{Error, Result};
use crate::graph::{Graph, Simplex};
use crate::manifolds::{require_manifold, Answer, Recognizer};

/// Graph on the maximal simplices, adjacent when they share a codimension-one
/// face.
#[derive(Clone, Debug, Serialize)]
pub struct DualGraph {
    pub graph: Graph,
    pub simplices: Vec<Simplex>,
    /// `|E| - |V| + 1` for each connected component.
    pub cycle_ranks: Vec<usize>,
    pub triangle_free: bool,
    /// Common degree, if the dual graph is regular.
    pub regular: Option<usize>,
    /// Dimension of the source when it was recognized as a manifold.
    pub manifold_dim: Option<i64>,
    pub warning: Option<String>,
}

impl DualGraph {
    pub fn cycle_rank(&self) -> usize {
        self.cycle_ranks.iter().sum()
    }
}

pub fn dual_graph(g: &Graph, budget: u64) -> DualGraph {
    let mut rec = Recognizer::new(budget);
    let (manifold_dim, warning) = match rec.is_manifold(g) {
        Answer::Yes { witness } => (Some(witness), None),
        Answer::No { refutation } => (None, Some(format!("source is not a manifold: {refutation:?}"))),
        Answer::Unknown { budget } => (None, Some(format!("manifold check ran out of budget ({budget})"))),
    };
    let simplices = g.maximal_cliques();
    let top = simplices.iter().map(Simplex::len).max().unwrap_or(0);
    let mut by_face: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (i, s) in simplices.iter().enumerate().filter(|(_, s)| s.len() == top && top >= 2) {
        for skip in 0..top {
            let face: Vec<usize> = s.verts().iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
            by_face.entry(face).or_default().push(i);
        }
    }
    let mut edges = Vec::new();
    for holders in by_face.values() {
        for (a, &x) in holders.iter().enumerate() {
            for &y in &holders[a + 1..] {
                edges.push((x, y));
            }
        }
    }
    let graph = Graph::from_edges(simplices.len(), edges).expect("dual edges are in range");
    let cycle_ranks = graph
        .components()
        .iter()
        .map(|comp| {
            let e: usize = comp.iter().map(|&v| graph.degree(v)).sum::<usize>() / 2;
            e + 1 - comp.len()
        })
        .collect();
    let regular = match graph.order() {
        0 => None,
        _ => {
            let d = graph.degree(0);
            (0..graph.order()).all(|v| graph.degree(v) == d).then_some(d)
        }
    };
    DualGraph {
        triangle_free: graph.is_triangle_free(),
        graph,
        simplices,
        cycle_ranks,
        regular,
        manifold_dim,
        warning,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionMethod {
    SpanningTreeBipartition,
    GreedyExchange,
    ExactSearch,
    Failed,
}

/// Outcome of the two-forest partition. On failure `classes` holds the
/// spanning-tree bipartition and `forests_ok` says which class has a cycle.
#[derive(Clone, Debug, Serialize)]
pub struct ForestPartitionReport {
    pub classes: [Vec<usize>; 2],
    pub forests_ok: [bool; 2],
    pub method: PartitionMethod,
    /// Dual edges outside the spanning forest.
    pub cut_edges: Vec<(usize, usize)>,
}

impl ForestPartitionReport {
    pub fn success(&self) -> bool {
        self.forests_ok[0] && self.forests_ok[1]
    }
}

/// Union-find without path compression so unions can be undone.
struct RollbackUnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<(usize, usize)>,
}

impl RollbackUnionFind {
    fn new(n: usize) -> Self {
        RollbackUnionFind { parent: (0..n).collect(), size: vec![1; n], history: Vec::new() }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.history.push((b, a));
    }

    fn checkpoint(&self) -> usize {
        self.history.len()
    }

    fn rollback(&mut self, to: usize) {
        while self.history.len() > to {
            let (child, root) = self.history.pop().expect("history entry");
            self.parent[child] = child;
            self.size[root] -= self.size[child];
        }
    }
}

struct Partitioner<'a> {
    g: &'a Graph,
    class: Vec<Option<usize>>,
    uf: [RollbackUnionFind; 2],
}

impl<'a> Partitioner<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.order();
        Partitioner {
            g,
            class: vec![None; n],
            uf: [RollbackUnionFind::new(n), RollbackUnionFind::new(n)],
        }
    }

    /// Whether `v` can join class `c` without closing a cycle.
    fn fits(&self, v: usize, c: usize) -> bool {
        let mut roots = Vec::new();
        for &w in self.g.neighbors(v) {
            if self.class[w] == Some(c) {
                let r = self.uf[c].find(w);
                if roots.contains(&r) {
                    return false;
                }
                roots.push(r);
            }
        }
        true
    }

    fn place(&mut self, v: usize, c: usize) {
        self.class[v] = Some(c);
        let nbrs: Vec<usize> = self.g.neighbors(v).iter().copied().filter(|&w| self.class[w] == Some(c)).collect();
        for w in nbrs {
            self.uf[c].union(v, w);
        }
    }

    fn classes(&self) -> [Vec<usize>; 2] {
        let mut out = [Vec::new(), Vec::new()];
        for (v, c) in self.class.iter().enumerate() {
            out[c.expect("all placed")].push(v);
        }
        out
    }

    fn exact(&mut self, order: &[usize], pref: &[usize], depth: usize, nodes: &mut u64, budget: u64) -> Option<bool> {
        if depth == order.len() {
            return Some(true);
        }
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        let v = order[depth];
        for c in [pref[v], 1 - pref[v]] {
            if !self.fits(v, c) {
                continue;
            }
            let mark = self.uf[c].checkpoint();
            self.place(v, c);
            match self.exact(order, pref, depth + 1, nodes, budget) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.uf[c].rollback(mark);
            self.class[v] = None;
        }
        Some(false)
    }
}

fn induces_forest(g: &Graph, class: &[usize]) -> bool {
    g.induced_unchecked(class).graph.is_forest()
}

/// Splits the dual graph into two classes that each induce a forest.
pub fn two_forest_partition(dual: &DualGraph, budget: u64) -> ForestPartitionReport {
    let g = &dual.graph;
    let n = g.order();
    // Spanning forest by BFS; depth parity gives the tree bipartition.
    let mut parity = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut tree_edges = std::collections::HashSet::new();
    for s in 0..n {
        if parity[s] != usize::MAX {
            continue;
        }
        parity[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in g.neighbors(u) {
                if parity[w] == usize::MAX {
                    parity[w] = 1 - parity[u];
                    tree_edges.insert((u.min(w), u.max(w)));
                    queue.push_back(w);
                }
            }
        }
    }
    let cut_edges: Vec<(usize, usize)> = g.edges().into_iter().filter(|e| !tree_edges.contains(e)).collect();
    let tree_classes = [
        (0..n).filter(|&v| parity[v] == 0).collect::<Vec<_>>(),
        (0..n).filter(|&v| parity[v] == 1).collect::<Vec<_>>(),
    ];
    let tree_ok = [induces_forest(g, &tree_classes[0]), induces_forest(g, &tree_classes[1])];
    if tree_ok == [true, true] {
        return ForestPartitionReport {
            classes: tree_classes,
            forests_ok: tree_ok,
            method: PartitionMethod::SpanningTreeBipartition,
            cut_edges,
        };
    }

    let mut greedy = Partitioner::new(g);
    let mut stuck = false;
    for &v in &order {
        let c = parity[v];
        if greedy.fits(v, c) {
            greedy.place(v, c);
        } else if greedy.fits(v, 1 - c) {
            greedy.place(v, 1 - c);
        } else {
            stuck = true;
            break;
        }
    }
    if !stuck {
        return ForestPartitionReport {
            classes: greedy.classes(),
            forests_ok: [true, true],
            method: PartitionMethod::GreedyExchange,
            cut_edges,
        };
    }

    let mut exact = Partitioner::new(g);
    let mut nodes = 0;
    if exact.exact(&order, &parity, 0, &mut nodes, budget) == Some(true) {
        return ForestPartitionReport {
            classes: exact.classes(),
            forests_ok: [true, true],
            method: PartitionMethod::ExactSearch,
            cut_edges,
        };
    }
    ForestPartitionReport {
        classes: tree_classes,
        forests_ok: tree_ok,
        method: PartitionMethod::Failed,
        cut_edges,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem1Stage {
    /// Batch propagation alone gave a proper coloring.
    ForestPropagation,
    /// Propagation plus bounded recoloring.
    Repair,
    /// Exact search for a `2d + 2` coloring.
    Fallback,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Coloring {
    pub dim: i64,
    pub coloring: Coloring,
    pub stage: Theorem1Stage,
    pub trace: Vec<String>,
    pub partition: ForestPartitionReport,
}

const ROOT_TRIES: usize = 4;

/// Colors the uncolored vertices of simplex `s` from the batch palette
/// `base..base + width`. Returns how many vertices had no free batch color.
fn color_simplex(g: &Graph, s: &Simplex, colors: &mut [Option<usize>], base: usize, width: usize) -> usize {
    let mut missed = 0;
    for &v in s.verts() {
        if colors[v].is_some() {
            continue;
        }
        let taken = |c: usize, colors: &[Option<usize>]| s.verts().iter().any(|&w| colors[w] == Some(c));
        let free: Vec<usize> = (base..base + width).filter(|&c| !taken(c, colors)).collect();
        let clash = |c: usize, colors: &[Option<usize>]| g.neighbors(v).iter().any(|&w| colors[w] == Some(c));
        let pick = free
            .iter()
            .copied()
            .find(|&c| !clash(c, colors))
            .or_else(|| free.first().copied());
        colors[v] = Some(pick.unwrap_or_else(|| {
            missed += 1;
            base
        }));
    }
    missed
}

fn conflicts(g: &Graph, colors: &[Option<usize>]) -> usize {
    g.edges()
        .iter()
        .filter(|&&(u, v)| colors[u].is_some() && colors[u] == colors[v])
        .count()
}

/// Propagates colors through one tree of the dual graph from `root`.
fn propagate_tree(
    g: &Graph,
    dual: &DualGraph,
    members: &[usize],
    root: usize,
    colors: &mut [Option<usize>],
    base: usize,
    width: usize,
) {
    let in_tree: std::collections::HashSet<usize> = members.iter().copied().collect();
    let mut seen = std::collections::HashSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(s) = queue.pop_front() {
        color_simplex(g, &dual.simplices[s], colors, base, width);
        for &t in dual.graph.neighbors(s) {
            if in_tree.contains(&t) && seen.insert(t) {
                queue.push_back(t);
            }
        }
    }
}

/// Bounded recoloring: each conflicting vertex takes the smallest color in
/// `0..palette` unused by its neighbors. Returns the number of recolorings.
fn repair(g: &Graph, colors: &mut [usize], palette: usize) -> usize {
    let mut changes = 0;
    for _ in 0..g.order().max(1) {
        let mut changed = false;
        for (u, v) in g.edges() {
            if colors[u] != colors[v] {
                continue;
            }
            for x in [v, u] {
                let free = (0..palette).find(|&c| g.neighbors(x).iter().all(|&w| colors[w] != c));
                if let Some(c) = free {
                    colors[x] = c;
                    changes += 1;
                    changed = true;
                    break;
                }
            }
        }
        if !changed {
            break;
        }
    }
    changes
}

/// Colors a d-manifold with at most `2d + 2` colors.
pub fn theorem1_color(g: &Graph, budget: u64) -> Result<Theorem1Coloring> {
    let mut rec = Recognizer::new(budget);
    let d = require_manifold(&mut rec, g)?;
    let width = (d + 1).max(1) as usize;
    let palette = 2 * width;
    let mut trace = Vec::new();

    let dual = dual_graph(g, budget);
    trace.push(format!(
        "dual graph: {} simplices, {} adjacencies, cycle rank {}",
        dual.graph.order(),
        dual.graph.size(),
        dual.cycle_rank()
    ));
    let partition = two_forest_partition(&dual, budget);
    trace.push(format!("two-forest partition: {:?}", partition.method));

    if partition.success() {
        let mut colors: Vec<Option<usize>> = vec![None; g.order()];
        for (batch, class) in partition.classes.iter().enumerate() {
            let base = batch * width;
            let forest = dual.graph.induced_unchecked(class);
            for comp in forest.graph.components() {
                let members: Vec<usize> = comp.iter().map(|&i| forest.map[i]).collect();
                let mut best: Option<(usize, Vec<Option<usize>>)> = None;
                for &root in members.iter().take(ROOT_TRIES) {
                    let mut attempt = colors.clone();
                    propagate_tree(g, &dual, &members, root, &mut attempt, base, width);
                    let bad = conflicts(g, &attempt);
                    if best.as_ref().is_none_or(|(b, _)| bad < *b) {
                        best = Some((bad, attempt));
                    }
                    if bad == 0 {
                        break;
                    }
                }
                if let Some((_, attempt)) = best {
                    colors = attempt;
                }
            }
        }
        // Vertices outside every maximal simplex cannot exist in a manifold
        // of positive dimension, but isolated points of a 0-manifold do.
        let mut colors: Vec<usize> = colors.into_iter().map(|c| c.unwrap_or(0)).collect();
        let bad = find_conflict(g, &colors).map_or(0, |_| conflicts(g, &colors.iter().map(|&c| Some(c)).collect::<Vec<_>>()));
        trace.push(format!("batch propagation: {bad} monochromatic edges"));
        let mut stage = Theorem1Stage::ForestPropagation;
        if bad > 0 {
            let changes = repair(g, &mut colors, palette);
            trace.push(format!("repair: {changes} recolorings"));
            stage = Theorem1Stage::Repair;
        }
        if find_conflict(g, &colors).is_none() {
            let coloring = Coloring::new(g, colors)?;
            if coloring.k <= palette {
                trace.push(format!("verified: proper with {} colors", coloring.k));
                return Ok(Theorem1Coloring { dim: d, coloring, stage, trace, partition });
            }
        }
        trace.push("verification failed".into());
    }

    trace.push(format!("fallback: exact search for {palette} colors"));
    match k_colorable(g, palette, budget) {
        KColoring::Colored(coloring) => {
            trace.push(format!("verified: proper with {} colors", coloring.k));
            Ok(Theorem1Coloring { dim: d, coloring, stage: Theorem1Stage::Fallback, trace, partition })
        }
        KColoring::Refuted => Err(Error::domain(format!("no proper {palette}-coloring exists"))),
        KColoring::Unknown { budget } => Err(Error::BudgetExhausted { what: "fallback coloring", budget }),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub dim: i64,
    pub lower: usize,
    pub upper: usize,
    /// `ceil(3(d+1)/2)`.
    pub conjecture: usize,
    pub chromatic: Option<usize>,
    pub interval: [usize; 2],
}

pub fn bounds_report(g: &Graph, budget: u64) -> Result<BoundsReport> {
    let mut rec = Recognizer::new(budget);
    let d = require_manifold(&mut rec, g)?;
    let w = (d + 1) as usize;
    let Chromatic { lower, upper, optimal, .. } = chromatic_number(g, budget);
    Ok(BoundsReport {
        dim: d,
        lower: w,
        upper: 2 * w,
        conjecture: (3 * w).div_ceil(2),
        chromatic: optimal.then_some(upper),
        interval: [lower, upper],
    })
}
