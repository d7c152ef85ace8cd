//! Exact isomorphism testing and canonical certificates for small graphs.
//!
//! Both routines start from colour refinement (1-dimensional Weisfeiler-Leman
//! with isomorphism-invariant colour names) and then backtrack. Neither uses
//! hashing heuristics: a certificate is the lexicographically smallest
//! adjacency bit string over every leaf of the individualisation tree, and an
//! isomorphism answer always comes with a checked witness.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default node budget for [`canonical_certificate`] and [`are_isomorphic`].
pub const DEFAULT_ISO_BUDGET: u64 = 2_000_000;

/// Relabels `g` so that vertex `v` becomes `perm[v]`.
pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    assert_eq!(perm.len(), g.order());
    let mut adj = vec![Vec::new(); g.order()];
    for (u, v) in g.edges() {
        adj[perm[u]].push(perm[v]);
        adj[perm[v]].push(perm[u]);
    }
    Graph::from_adjacency_unsorted(adj)
}

/// One round of refinement for several graphs at once, so colour names are
/// comparable between them. Returns the number of classes.
fn refine_round(graphs: &[&Graph], colors: &mut [Vec<usize>]) -> usize {
    let sigs: Vec<Vec<(usize, Vec<usize>)>> = graphs
        .iter()
        .zip(colors.iter())
        .map(|(g, c)| {
            (0..g.order())
                .map(|v| {
                    let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| c[w]).collect();
                    nb.sort_unstable();
                    (c[v], nb)
                })
                .collect()
        })
        .collect();
    let mut names: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
    for s in sigs.iter().flatten() {
        names.insert(s, 0);
    }
    for (i, v) in names.values_mut().enumerate() {
        *v = i;
    }
    for (c, s) in colors.iter_mut().zip(sigs.iter()) {
        for (cv, sv) in c.iter_mut().zip(s.iter()) {
            *cv = names[sv];
        }
    }
    names.len()
}

fn refine_joint(graphs: &[&Graph], colors: &mut [Vec<usize>]) {
    let mut classes = usize::MAX;
    loop {
        let k = refine_round(graphs, colors);
        if k == classes {
            return;
        }
        classes = k;
    }
}

fn refine(g: &Graph, colors: &mut Vec<usize>) {
    refine_joint(&[g], std::slice::from_mut(colors));
}

fn bit_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    let mut m = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    fn tick(&mut self, what: &'static str) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExhausted { what, budget: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Searches for an isomorphism `A -> B`. On success the witness maps each
/// vertex of `a` to its image in `b`.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<Option<Vec<usize>>> {
    are_isomorphic_with_budget(a, b, DEFAULT_ISO_BUDGET)
}

pub fn are_isomorphic_with_budget(a: &Graph, b: &Graph, budget: u64) -> Result<Option<Vec<usize>>> {
    let n = a.order();
    if n != b.order() || a.size() != b.size() {
        return Ok(None);
    }
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(None);
    }
    let mut colors = vec![vec![0; n], vec![0; n]];
    refine_joint(&[a, b], &mut colors);
    let (ca, cb) = (&colors[0], &colors[1]);
    let mut ha = ca.clone();
    let mut hb = cb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return Ok(None);
    }

    // Vertex order for A: grow from the rarest colour, preferring vertices
    // with many already-placed neighbours.
    let mut class_size = BTreeMap::new();
    for &c in ca {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(links[v]), class_size[&ca[v]], v))
            .expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
        for &w in a.neighbors(v) {
            links[w] += 1;
        }
    }

    let ma = bit_matrix(a);
    let mb = bit_matrix(b);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut budget = Budget { used: 0, limit: budget };
    let found = iso_search(0, &order, ca, cb, &ma, &mb, &mut map, &mut used, &mut budget)?;
    if !found {
        return Ok(None);
    }
    debug_assert!(a.edges().iter().all(|&(u, v)| b.has_edge(map[u], map[v])));
    Ok(Some(map))
}

#[allow(clippy::too_many_arguments)]
fn iso_search(
    depth: usize,
    order: &[usize],
    ca: &[usize],
    cb: &[usize],
    ma: &[Vec<bool>],
    mb: &[Vec<bool>],
    map: &mut [usize],
    used: &mut [bool],
    budget: &mut Budget,
) -> Result<bool> {
    if depth == order.len() {
        return Ok(true);
    }
    budget.tick("isomorphism search")?;
    let v = order[depth];
    // Trying `v` itself first makes the identity the witness for equal graphs.
    let candidates = std::iter::once(v).chain((0..cb.len()).filter(|&w| w != v));
    for w in candidates {
        if used[w] || cb[w] != ca[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| ma[v][u] == mb[w][map[u]]);
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if iso_search(depth + 1, order, ca, cb, ma, mb, map, used, budget)? {
            return Ok(true);
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    Ok(false)
}

/// A canonical form: the certificate plus the labeling that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub certificate: Vec<u8>,
    /// `labeling[v]` is the canonical position of vertex `v`.
    pub labeling: Vec<usize>,
}

/// Certificate equal for two graphs exactly when they are isomorphic.
pub fn canonical_certificate(g: &Graph) -> Result<Vec<u8>> {
    Ok(canonical_form(g, DEFAULT_ISO_BUDGET)?.certificate)
}

pub fn canonical_form(g: &Graph, budget: u64) -> Result<Canonical> {
    let n = g.order();
    let matrix = bit_matrix(g);
    let mut colors = vec![0; n];
    refine(g, &mut colors);
    let mut best: Option<Canonical> = None;
    let mut budget = Budget { used: 0, limit: budget };
    canon_search(g, &matrix, colors, &mut best, &mut budget)?;
    Ok(best.unwrap_or(Canonical {
        certificate: encode(0, &[], &matrix),
        labeling: Vec::new(),
    }))
}

fn encode(n: usize, inverse: &[usize], matrix: &[Vec<bool>]) -> Vec<u8> {
    let mut out = (n as u32).to_le_bytes().to_vec();
    let mut byte = 0u8;
    let mut bits = 0;
    for i in 0..n {
        for j in i + 1..n {
            byte = (byte << 1) | matrix[inverse[i]][inverse[j]] as u8;
            bits += 1;
            if bits == 8 {
                out.push(byte);
                byte = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(byte << (8 - bits));
    }
    out
}

fn canon_search(
    g: &Graph,
    matrix: &[Vec<bool>],
    colors: Vec<usize>,
    best: &mut Option<Canonical>,
    budget: &mut Budget,
) -> Result<()> {
    budget.tick("canonical labeling")?;
    let n = g.order();
    let mut count = vec![0usize; n];
    for &c in &colors {
        count[c] += 1;
    }
    let target = (0..n).find(|&c| count[c] > 1);
    let Some(cell) = target else {
        let mut inverse = vec![0; n];
        for (v, &c) in colors.iter().enumerate() {
            inverse[c] = v;
        }
        let cert = encode(n, &inverse, matrix);
        if best.as_ref().is_none_or(|b| cert < b.certificate) {
            *best = Some(Canonical { certificate: cert, labeling: colors });
        }
        return Ok(());
    };
    for v in (0..n).filter(|&v| colors[v] == cell) {
        let mut next: Vec<usize> = colors
            .iter()
            .enumerate()
            .map(|(u, &c)| 2 * c + usize::from(c == cell && u != v))
            .collect();
        compress(&mut next);
        refine(g, &mut next);
        canon_search(g, matrix, next, best, budget)?;
    }
    Ok(())
}

fn compress(colors: &mut [usize]) {
    let mut distinct: Vec<usize> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for c in colors.iter_mut() {
        *c = distinct.binary_search(c).expect("present");
    }
}
