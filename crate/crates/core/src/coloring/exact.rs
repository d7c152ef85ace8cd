//! Exact coloring and clique solvers.
//!
//! `k_colorable` is a DSATUR backtracking search: a maximum clique found up
//! front is precolored `0..q`, the next vertex is always the most saturated
//! one (ties by degree, then index), and a branch opens at most one new color.
//! The maximum clique search is a bitset branch and bound bounded by greedy
//! coloring of the candidate set.

use serde::Serialize;

use super::Coloring;
use crate::graph::Graph;

/// Default node budget of a single exact search.
pub const DEFAULT_COLOR_BUDGET: u64 = 50_000_000;

const NONE: usize = usize::MAX;

#[derive(Clone)]
pub(crate) struct BitGraph {
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl BitGraph {
    pub(crate) fn new(g: &Graph) -> Self {
        let n = g.order();
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; words]; n];
        for (u, v) in g.edges() {
            rows[u][v / 64] |= 1 << (v % 64);
            rows[v][u / 64] |= 1 << (u % 64);
        }
        BitGraph { words, rows }
    }

    fn full(&self, n: usize) -> Vec<u64> {
        let mut s = vec![0u64; self.words];
        for v in 0..n {
            s[v / 64] |= 1 << (v % 64);
        }
        s
    }
}

fn members(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + b)
        })
    })
}

fn is_empty(set: &[u64]) -> bool {
    set.iter().all(|&w| w == 0)
}

/// A clique search result; `exact` is false when the budget cut it short.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueSearch {
    pub clique: Vec<usize>,
    pub exact: bool,
}

struct CliqueState<'a> {
    bits: &'a BitGraph,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl CliqueState<'_> {
    /// Greedy sequential coloring of `p`; returns vertices in color order and
    /// the color bound of each.
    fn color_sort(&self, p: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = p.to_vec();
        let mut order = Vec::new();
        let mut bounds = Vec::new();
        let mut color = 0;
        while !is_empty(&uncolored) {
            color += 1;
            let mut q = uncolored.clone();
            loop {
                let Some(v) = members(&q).next() else { break };
                uncolored[v / 64] &= !(1 << (v % 64));
                q[v / 64] &= !(1 << (v % 64));
                for (qw, rw) in q.iter_mut().zip(&self.bits.rows[v]) {
                    *qw &= !rw;
                }
                order.push(v);
                bounds.push(color);
            }
        }
        (order, bounds)
    }

    fn expand(&mut self, mut p: Vec<u64>) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let (order, bounds) = self.color_sort(&p);
        for i in (0..order.len()).rev() {
            if self.current.len() + bounds[i] <= self.best.len() || self.exhausted {
                return;
            }
            let v = order[i];
            self.current.push(v);
            let next: Vec<u64> = p.iter().zip(&self.bits.rows[v]).map(|(a, b)| a & b).collect();
            if is_empty(&next) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            p[v / 64] &= !(1 << (v % 64));
        }
    }
}

/// Maximum clique by branch and bound, sorted ascending.
pub fn max_clique(g: &Graph, budget: u64) -> CliqueSearch {
    if g.is_empty() {
        return CliqueSearch { clique: Vec::new(), exact: true };
    }
    let bits = BitGraph::new(g);
    // Greedy start: grow from each vertex by highest degree.
    let mut best: Vec<usize> = Vec::new();
    for s in 0..g.order() {
        let mut clique = vec![s];
        let mut cand: Vec<usize> = g.neighbors(s).to_vec();
        while let Some(&v) = cand.iter().max_by_key(|&&v| (g.degree(v), std::cmp::Reverse(v))) {
            clique.push(v);
            cand.retain(|&w| w != v && g.has_edge(v, w));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    let mut state = CliqueState {
        bits: &bits,
        best,
        current: Vec::new(),
        nodes: 0,
        budget,
        exhausted: false,
    };
    let full = bits.full(g.order());
    state.expand(full);
    let mut clique = state.best;
    clique.sort_unstable();
    CliqueSearch { clique, exact: !state.exhausted }
}

/// Result of a k-colorability query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KColoring {
    Colored(Coloring),
    /// The search space was exhausted: no proper k-coloring exists.
    Refuted,
    Unknown { budget: u64 },
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    /// counts[v * k + c]: colored neighbors of `v` with color `c`.
    counts: Vec<u32>,
    sat: Vec<usize>,
    uncolored: usize,
    nodes: u64,
    budget: u64,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, k: usize, budget: u64) -> Self {
        let n = g.order();
        Dsatur {
            g,
            k,
            color: vec![NONE; n],
            counts: vec![0; n * k.max(1)],
            sat: vec![0; n],
            uncolored: n,
            nodes: 0,
            budget,
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        self.uncolored -= 1;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.counts[w * self.k + c];
            if *slot == 0 {
                self.sat[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = NONE;
        self.uncolored += 1;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.counts[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    fn select(&self) -> usize {
        let mut best = NONE;
        for v in 0..self.g.order() {
            if self.color[v] != NONE {
                continue;
            }
            if best == NONE
                || (self.sat[v], self.g.degree(v)) > (self.sat[best], self.g.degree(best))
            {
                best = v;
            }
        }
        best
    }

    /// Ok(true): colored; Ok(false): refuted; Err: budget.
    fn search(&mut self, used: usize) -> Result<bool, ()> {
        if self.uncolored == 0 {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(());
        }
        let v = self.select();
        if self.sat[v] >= self.k {
            return Ok(false);
        }
        for c in 0..self.k.min(used + 1) {
            if self.counts[v * self.k + c] != 0 {
                continue;
            }
            self.assign(v, c);
            if self.search(used.max(c + 1))? {
                return Ok(true);
            }
            self.unassign(v);
        }
        Ok(false)
    }
}

pub fn k_colorable(g: &Graph, k: usize, budget: u64) -> KColoring {
    let n = g.order();
    if n == 0 {
        return KColoring::Colored(Coloring::new(g, Vec::new()).expect("empty coloring"));
    }
    if k == 0 {
        return KColoring::Refuted;
    }
    let clique = max_clique(g, budget.min(1_000_000)).clique;
    if clique.len() > k {
        return KColoring::Refuted;
    }
    let mut s = Dsatur::new(g, k, budget);
    for (c, &v) in clique.iter().enumerate() {
        s.assign(v, c);
    }
    match s.search(clique.len()) {
        Ok(true) => KColoring::Colored(Coloring::new(g, s.color).expect("search yields a proper coloring")),
        Ok(false) => KColoring::Refuted,
        Err(()) => KColoring::Unknown { budget },
    }
}

/// Greedy DSATUR: always proper, usually close to optimal.
pub fn dsatur_greedy(g: &Graph) -> Coloring {
    let n = g.order();
    let mut s = Dsatur::new(g, n.max(1), u64::MAX);
    for _ in 0..n {
        let v = s.select();
        let c = (0..n).find(|&c| s.counts[v * s.k + c] == 0).expect("a free color");
        s.assign(v, c);
    }
    Coloring::new(g, s.color).expect("greedy coloring is proper")
}

/// Why the reported chromatic number is optimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OptimalityCertificate {
    /// A clique of size X forces X colors.
    Clique { clique: Vec<usize> },
    /// The exhaustive search with `k = X - 1` colors failed.
    SearchExhausted { k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chromatic {
    pub lower: usize,
    pub upper: usize,
    /// A proper coloring with `upper` colors.
    pub coloring: Coloring,
    pub optimal: bool,
    pub certificate: Option<OptimalityCertificate>,
}

impl Chromatic {
    /// The chromatic number, when the search finished.
    pub fn value(&self) -> Option<usize> {
        self.optimal.then_some(self.upper)
    }
}

/// Exact chromatic number. When a search runs out of budget the result is the
/// interval `[lower, upper]` with `optimal == false`.
pub fn chromatic_number(g: &Graph, budget: u64) -> Chromatic {
    let clique = max_clique(g, budget.min(5_000_000));
    let mut lower = clique.clique.len();
    let mut best = dsatur_greedy(g);
    let mut upper = best.k;
    let mut certificate = Some(OptimalityCertificate::Clique { clique: clique.clique.clone() });
    let mut k = lower;
    while k < upper {
        match k_colorable(g, k, budget) {
            KColoring::Colored(c) => {
                best = c;
                upper = k;
            }
            KColoring::Refuted => {
                lower = k + 1;
                certificate = Some(OptimalityCertificate::SearchExhausted { k });
                k += 1;
            }
            KColoring::Unknown { .. } => {
                return Chromatic {
                    lower,
                    upper,
                    coloring: best,
                    optimal: false,
                    certificate: None,
                };
            }
        }
    }
    Chromatic {
        lower: upper,
        upper,
        coloring: best,
        optimal: true,
        certificate,
    }
}

pub fn clique_number(g: &Graph) -> usize {
    max_clique(g, u64::MAX).clique.len()
}

pub fn independence_number(g: &Graph) -> usize {
    clique_number(&g.complement())
}

/// Fewest cliques covering the vertices: the chromatic number of the
/// complement. `None` when the search budget ran out.
pub fn clique_cover_number(g: &Graph, budget: u64) -> Option<usize> {
    chromatic_number(&g.complement(), budget).value()
}
