//! Finite simple graphs and their Whitney complexes.
//!
//! A [`Graph`] is immutable once built: vertices are `0..n` and every
//! adjacency list is sorted and duplicate free. Simplices are cliques, so
//! the Whitney complex is never stored, only enumerated.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// The graph with no vertices, the (-1)-sphere.
    pub fn empty() -> Self {
        Graph::default()
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { n, adj })
    }

    /// Builds from adjacency lists that are already known to be symmetric,
    /// sorted and loop free.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let g = Graph { n: adj.len(), adj };
        debug_assert!(g.validate().is_ok());
        g
    }

    pub(crate) fn from_adjacency_unsorted(mut adj: Vec<Vec<usize>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph::from_sorted_adjacency(adj)
    }

    /// Checks symmetry, irreflexivity and sortedness.
    pub fn validate(&self) -> Result<()> {
        if self.adj.len() != self.n {
            return Err(Error::domain("adjacency length differs from n"));
        }
        for (u, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::domain(format!("neighbors of {u} not strictly sorted")));
            }
            for &v in list {
                if v >= self.n {
                    return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
                }
                if v == u {
                    return Err(Error::SelfLoop(u));
                }
                if self.adj[v].binary_search(&u).is_err() {
                    return Err(Error::domain(format!("edge ({u}, {v}) is not symmetric")));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// The unit sphere `S(v)`: the graph generated by the neighbors of `v`.
    pub fn unit_sphere(&self, v: usize) -> Result<Induced> {
        self.check_vertex(v)?;
        Ok(self.induced_unchecked(&self.adj[v]))
    }

    /// Induced subgraph on `vertices`. The order of `vertices` is kept, so a
    /// sorted input gives an order-preserving relabeling.
    pub fn induced(&self, vertices: &[usize]) -> Result<Induced> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut seen = vertices.to_vec();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("induced: repeated vertex"));
        }
        Ok(self.induced_unchecked(vertices))
    }

    pub(crate) fn induced_unchecked(&self, vertices: &[usize]) -> Induced {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Induced {
            graph: Graph::from_sorted_adjacency(adj),
            map: vertices.to_vec(),
        }
    }

    /// `G - v`, relabeled in order.
    pub fn remove_vertex(&self, v: usize) -> Result<Induced> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&w| w != v).collect();
        Ok(self.induced_unchecked(&keep))
    }

    pub fn complement(&self) -> Graph {
        let adj = (0..self.n)
            .map(|u| {
                let mut it = self.adj[u].iter().peekable();
                let mut list = Vec::with_capacity(self.n - 1 - self.adj[u].len());
                for v in 0..self.n {
                    if it.peek() == Some(&&v) {
                        it.next();
                    } else if v != u {
                        list.push(v);
                    }
                }
                list
            })
            .collect();
        Graph::from_sorted_adjacency(adj)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// All cliques with exactly `k` vertices, sorted lexicographically.
    pub fn cliques(&self, k: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        if k == 0 {
            return out;
        }
        let mut stack = Vec::with_capacity(k);
        for v in 0..self.n {
            stack.push(v);
            let cand: Vec<usize> = self.higher_neighbors(v).to_vec();
            self.extend_cliques(&mut stack, &cand, k, &mut |c| out.push(Simplex(c.to_vec())));
            stack.pop();
        }
        out
    }

    /// Every nonempty clique, ordered by size and then lexicographically.
    pub fn all_cliques(&self) -> Vec<Simplex> {
        let mut by_size: Vec<Vec<Simplex>> = Vec::new();
        let mut stack = Vec::new();
        for v in 0..self.n {
            stack.push(v);
            let cand: Vec<usize> = self.higher_neighbors(v).to_vec();
            self.extend_cliques(&mut stack, &cand, usize::MAX, &mut |c| {
                if by_size.len() < c.len() {
                    by_size.resize_with(c.len(), Vec::new);
                }
                by_size[c.len() - 1].push(Simplex(c.to_vec()));
            });
            stack.pop();
        }
        by_size
            .into_iter()
            .flat_map(|mut level| {
                level.sort_unstable();
                level
            })
            .collect()
    }

    fn higher_neighbors(&self, v: usize) -> &[usize] {
        let list = &self.adj[v];
        let start = list.partition_point(|&w| w <= v);
        &list[start..]
    }

    /// Depth-first clique growth. With `target == usize::MAX` every clique is
    /// reported; otherwise only cliques of size `target`.
    fn extend_cliques(
        &self,
        stack: &mut Vec<usize>,
        cand: &[usize],
        target: usize,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        if target == usize::MAX || stack.len() == target {
            emit(stack);
            if stack.len() == target {
                return;
            }
        }
        for (i, &w) in cand.iter().enumerate() {
            let next = intersect_sorted(&cand[i + 1..], &self.adj[w]);
            if target != usize::MAX && stack.len() + 1 + next.len() < target {
                continue;
            }
            stack.push(w);
            self.extend_cliques(stack, &next, target, emit);
            stack.pop();
        }
    }

    /// Maximal cliques by Bron-Kerbosch with pivoting, each sorted and the
    /// list sorted lexicographically.
    pub fn maximal_cliques(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        let p: Vec<usize> = (0..self.n).collect();
        self.bron_kerbosch(&mut Vec::new(), p, Vec::new(), &mut out);
        out.sort_unstable();
        out
    }

    fn bron_kerbosch(&self, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Simplex>) {
        if p.is_empty() {
            if x.is_empty() && !r.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(Simplex(c));
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| (intersect_sorted(&p, &self.adj[u]).len(), std::cmp::Reverse(u)))
            .expect("p is nonempty");
        let mut p = p;
        let mut x = x;
        let branch: Vec<usize> = p
            .iter()
            .copied()
            .filter(|v| self.adj[pivot].binary_search(v).is_err())
            .collect();
        for v in branch {
            r.push(v);
            self.bron_kerbosch(
                r,
                intersect_sorted(&p, &self.adj[v]),
                intersect_sorted(&x, &self.adj[v]),
                out,
            );
            r.pop();
            p.retain(|&w| w != v);
            let pos = x.partition_point(|&w| w < v);
            x.insert(pos, v);
        }
    }

    /// Dimension of the Whitney complex (clique number minus one, -1 when empty).
    pub fn dimension(&self) -> i64 {
        self.f_vector().counts.len() as i64 - 1
    }

    pub fn f_vector(&self) -> FVector {
        let mut counts: Vec<usize> = Vec::new();
        let mut stack = Vec::new();
        for v in 0..self.n {
            stack.push(v);
            let cand: Vec<usize> = self.higher_neighbors(v).to_vec();
            self.extend_cliques(&mut stack, &cand, usize::MAX, &mut |c| {
                if counts.len() < c.len() {
                    counts.resize(c.len(), 0);
                }
                counts[c.len() - 1] += 1;
            });
            stack.pop();
        }
        FVector { counts }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges()
            .iter()
            .all(|&(u, v)| intersect_sorted(&self.adj[u], &self.adj[v]).is_empty())
    }

    /// Acyclic: every component is a tree.
    pub fn is_forest(&self) -> bool {
        self.size() + self.components().len() == self.n
    }
}

pub(crate) fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// A subgraph together with the original label of each of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced {
    pub graph: Graph,
    /// `map[i]` is the vertex of the host graph that became vertex `i`.
    pub map: Vec<usize>,
}

/// A clique, stored as its strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut verts: Vec<usize>) -> Self {
        verts.sort_unstable();
        verts.dedup();
        Simplex(verts)
    }

    pub fn verts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    /// True when every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn is_clique_in(&self, g: &Graph) -> bool {
        self.0.iter().all(|&v| v < g.order())
            && self
                .0
                .iter()
                .enumerate()
                .all(|(i, &u)| self.0[i + 1..].iter().all(|&v| g.has_edge(u, v)))
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Number of simplices in each dimension, `counts[k]` being the k-simplices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector {
    pub counts: Vec<usize>,
}

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}
