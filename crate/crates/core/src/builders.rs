//! Graph generators and the constructions of graph arithmetic.
//!
//! Every construction labels its output deterministically:
//!
//! * [`join`] and [`disjoint_union`] put the vertices of `a` first, then those
//!   of `b` shifted by `a.order()`.
//! * [`sabidussi`] and [`shannon`] number the pair `(i, j)` as
//!   `i * b.order() + j` (row-major).
//! * [`barycentric`] and [`cartesian`] return the simplices behind each new
//!   vertex.
//! * [`edge_refine`] keeps every old vertex and appends the new one last.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{intersect_sorted, Graph, Simplex};

/// Upper bound on the number of simplices a refinement or product will
/// enumerate before giving up.
pub const SIMPLEX_LIMIT: usize = 200_000;

fn from_edges_unchecked(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced a valid edge list")
}

/// The cyclic graph `C_n`. A 1-sphere for `n >= 4`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    from_edges_unchecked(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    from_edges_unchecked(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `n` isolated vertices; `points(2)` is the 0-sphere.
pub fn points(n: usize) -> Graph {
    from_edges_unchecked(n, [])
}

/// The path on `n` vertices.
pub fn path(n: usize) -> Graph {
    from_edges_unchecked(n, (1..n).map(|i| (i - 1, i)))
}

/// The octahedron `S_0 + S_0 + S_0`; antipodes are `(0,1)`, `(2,3)`, `(4,5)`.
pub fn octahedron() -> Graph {
    from_edges_unchecked(
        6,
        (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).filter(|&(u, v)| u / 2 != v / 2),
    )
}

/// Icosahedron: apex 0, upper ring 1..=5, lower ring 6..=10, apex 11.
pub fn icosahedron() -> Graph {
    let mut e = Vec::with_capacity(30);
    for i in 0..5 {
        let (up, up_next) = (1 + i, 1 + (i + 1) % 5);
        let (lo, lo_next) = (6 + i, 6 + (i + 1) % 5);
        e.extend([(0, up), (up, up_next), (up, lo), (up, lo_next), (lo, lo_next), (lo, 11)]);
    }
    from_edges_unchecked(12, e)
}

/// The 600-cell, a 3-sphere with 120 vertices and 720 edges, loaded from the
/// bundled graph document.
pub fn cell600() -> Graph {
    crate::io::from_json(include_str!("../data/cell600.json")).expect("bundled 600-cell document")
}

/// Zykov join: disjoint union plus every edge between the two sides.
pub fn join(a: &Graph, b: &Graph) -> Graph {
    let (na, nb) = (a.order(), b.order());
    let mut adj = Vec::with_capacity(na + nb);
    for u in 0..na {
        let mut list = a.neighbors(u).to_vec();
        list.extend(na..na + nb);
        adj.push(list);
    }
    for u in 0..nb {
        let mut list: Vec<usize> = (0..na).collect();
        list.extend(b.neighbors(u).iter().map(|&w| w + na));
        adj.push(list);
    }
    Graph::from_sorted_adjacency(adj)
}

/// `G + S_0`.
pub fn suspension(g: &Graph) -> Graph {
    join(g, &points(2))
}

pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let na = a.order();
    let mut adj: Vec<Vec<usize>> = (0..na).map(|u| a.neighbors(u).to_vec()).collect();
    adj.extend((0..b.order()).map(|u| b.neighbors(u).iter().map(|&w| w + na).collect()));
    Graph::from_sorted_adjacency(adj)
}

fn pair_product(a: &Graph, b: &Graph, adjacent: impl Fn(usize, usize, usize, usize) -> bool) -> Graph {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut adj = vec![Vec::new(); n];
    for p in 0..n {
        let (x, y) = (p / nb, p % nb);
        for q in p + 1..n {
            let (u, v) = (q / nb, q % nb);
            if adjacent(x, y, u, v) {
                adj[p].push(q);
                adj[q].push(p);
            }
        }
    }
    Graph::from_sorted_adjacency(adj)
}

/// Large (Sabidussi) product: `(a,b) ~ (c,d)` iff `a ~ c` in `A` or `b ~ d`
/// in `B`. Equal coordinates do not count as adjacent.
pub fn sabidussi(a: &Graph, b: &Graph) -> Graph {
    pair_product(a, b, |x, y, u, v| a.has_edge(x, u) || b.has_edge(y, v))
}

/// Strong (Shannon) product: distinct pairs whose coordinates are each equal
/// or adjacent.
pub fn shannon(a: &Graph, b: &Graph) -> Graph {
    pair_product(a, b, |x, y, u, v| {
        (x == u || a.has_edge(x, u)) && (y == v || b.has_edge(y, v))
    })
}

/// A refinement together with the simplex behind each of its vertices.
#[derive(Clone, Debug)]
pub struct Barycentric {
    pub graph: Graph,
    pub simplices: Vec<Simplex>,
}

impl Barycentric {
    /// Dimension of the simplex behind each vertex. This labeling is a proper
    /// coloring of the refined graph.
    pub fn dimension_labels(&self) -> Vec<usize> {
        self.simplices.iter().map(|s| s.len() - 1).collect()
    }
}

fn checked_cliques(g: &Graph) -> Result<Vec<Simplex>> {
    let total = g.f_vector().total();
    if total > SIMPLEX_LIMIT {
        return Err(Error::TooLarge(format!("{total} simplices exceed the limit of {SIMPLEX_LIMIT}")));
    }
    Ok(g.all_cliques())
}

/// For each simplex, the indices of the simplices it strictly contains.
fn strict_faces(simplices: &[Simplex]) -> Vec<Vec<usize>> {
    let index: std::collections::HashMap<&[usize], usize> =
        simplices.iter().enumerate().map(|(i, s)| (s.verts(), i)).collect();
    simplices
        .iter()
        .map(|s| {
            let v = s.verts();
            let k = v.len();
            let mut faces = Vec::new();
            // Every nonempty proper subset of v.
            for mask in 1u64..(1u64 << k) - 1 {
                let sub: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| v[i]).collect();
                faces.push(index[sub.as_slice()]);
            }
            faces
        })
        .collect()
}

/// Barycentric refinement `G_1`: vertices are the nonempty cliques of `G`,
/// joined when one strictly contains the other.
pub fn barycentric(g: &Graph) -> Result<Barycentric> {
    let simplices = checked_cliques(g)?;
    let faces = strict_faces(&simplices);
    let mut adj = vec![Vec::new(); simplices.len()];
    for (s, fs) in faces.iter().enumerate() {
        for &f in fs {
            adj[s].push(f);
            adj[f].push(s);
        }
    }
    Ok(Barycentric {
        graph: Graph::from_adjacency_unsorted(adj),
        simplices,
    })
}

/// The product `(A x B)_1` together with the simplex pair behind each vertex.
#[derive(Clone, Debug)]
pub struct Cartesian {
    pub graph: Graph,
    pub pairs: Vec<(Simplex, Simplex)>,
}

impl Cartesian {
    /// `dim x + dim y` for each vertex `(x, y)`; a proper coloring.
    pub fn dimension_labels(&self) -> Vec<usize> {
        self.pairs.iter().map(|(x, y)| x.len() + y.len() - 2).collect()
    }
}

/// Cartesian product `(A x B)_1`: pairs of nonempty cliques, with `(x,y)`
/// joined to `(u,v)` when they differ and `x ⊆ u, y ⊆ v` (or the reverse).
/// Pairs are numbered row-major in the clique orders of `A` and `B`.
pub fn cartesian(a: &Graph, b: &Graph) -> Result<Cartesian> {
    let sa = checked_cliques(a)?;
    let sb = checked_cliques(b)?;
    let total = sa.len() * sb.len();
    if total > SIMPLEX_LIMIT {
        return Err(Error::TooLarge(format!("{total} product vertices exceed the limit of {SIMPLEX_LIMIT}")));
    }
    // Faces including the simplex itself.
    let with_self = |faces: Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        faces
            .into_iter()
            .enumerate()
            .map(|(i, mut f)| {
                f.push(i);
                f
            })
            .collect()
    };
    let fa = with_self(strict_faces(&sa));
    let fb = with_self(strict_faces(&sb));
    let nb = sb.len();
    let mut adj = vec![Vec::new(); total];
    for x in 0..sa.len() {
        for y in 0..nb {
            let p = x * nb + y;
            for &u in &fa[x] {
                for &v in &fb[y] {
                    let q = u * nb + v;
                    if q != p {
                        adj[p].push(q);
                        adj[q].push(p);
                    }
                }
            }
        }
    }
    let pairs = sa
        .iter()
        .flat_map(|x| sb.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    Ok(Cartesian {
        graph: Graph::from_adjacency_unsorted(adj),
        pairs,
    })
}

/// Edge refinement: delete `(a, b)` and add a vertex joined to `a`, `b` and
/// every vertex of `S(a) ∩ S(b)`. The new vertex is `g.order()`.
pub fn edge_refine(g: &Graph, a: usize, b: usize) -> Result<Graph> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if !g.has_edge(a, b) {
        return Err(Error::NotAnEdge(a, b));
    }
    let m = g.order();
    let common = intersect_sorted(g.neighbors(a), g.neighbors(b));
    let mut adj: Vec<Vec<usize>> = (0..m).map(|u| g.neighbors(u).to_vec()).collect();
    adj[a].retain(|&w| w != b);
    adj[b].retain(|&w| w != a);
    let mut new = vec![a, b];
    new.extend(&common);
    for &w in &new {
        adj[w].push(m);
    }
    adj.push(new);
    Ok(Graph::from_adjacency_unsorted(adj))
}

/// Applies `steps` edge refinements at uniformly chosen edges. The same seed
/// always gives the same graph.
pub fn random_edge_refinements(g: &Graph, steps: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = g.clone();
    for _ in 0..steps {
        let edges = g.edges();
        let Some(&(a, b)) = edges.choose(&mut rng) else { break };
        g = edge_refine(&g, a, b).expect("chosen pair is an edge");
    }
    g
}
