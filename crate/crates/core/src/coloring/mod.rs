//! Vertex colorings: exact solvers, the dual graph of a manifold and the
//! constructive `2d + 2` coloring built from a two-forest partition of it.

mod exact;
mod theorem1;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use exact::{
    chromatic_number, clique_cover_number, clique_number, dsatur_greedy, independence_number, k_colorable,
    max_clique, Chromatic, CliqueSearch, KColoring, OptimalityCertificate, DEFAULT_COLOR_BUDGET,
};
pub use theorem1::{
    bounds_report, dual_graph, theorem1_color, two_forest_partition, BoundsReport, DualGraph,
    ForestPartitionReport, PartitionMethod, Theorem1Coloring, Theorem1Stage,
};

/// A proper vertex coloring with colors `0..k`, every one of them used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub k: usize,
    pub colors: Vec<usize>,
}

/// First monochromatic edge, if any.
pub fn find_conflict(g: &Graph, colors: &[usize]) -> Option<(usize, usize)> {
    g.edges().into_iter().find(|&(u, v)| colors[u] == colors[v])
}

impl Coloring {
    /// Verifies properness and renumbers the used colors to `0..k`, keeping
    /// their relative order.
    pub fn new(g: &Graph, colors: Vec<usize>) -> Result<Self> {
        if colors.len() != g.order() {
            return Err(Error::domain(format!(
                "coloring has {} entries for {} vertices",
                colors.len(),
                g.order()
            )));
        }
        if let Some((u, v)) = find_conflict(g, &colors) {
            return Err(Error::domain(format!("edge ({u}, {v}) is monochromatic")));
        }
        let mut used = colors.clone();
        used.sort_unstable();
        used.dedup();
        let colors = colors
            .into_iter()
            .map(|c| used.binary_search(&c).expect("color is used"))
            .collect();
        Ok(Coloring { k: used.len(), colors })
    }

    pub fn is_proper_for(&self, g: &Graph) -> bool {
        self.colors.len() == g.order()
            && self.colors.iter().all(|&c| c < self.k)
            && find_conflict(g, &self.colors).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{
        barycentric, complete, cycle, disjoint_union, icosahedron, join, octahedron, points, sabidussi,
        shannon, suspension,
    };

    const B: u64 = DEFAULT_COLOR_BUDGET;

    fn chi(g: &Graph) -> usize {
        let r = chromatic_number(g, B);
        assert!(r.coloring.is_proper_for(g));
        assert_eq!(r.coloring.k, r.upper);
        r.value().expect("exact")
    }

    #[test]
    fn coloring_rejects_conflicts() {
        assert!(Coloring::new(&complete(2), vec![0, 0]).is_err());
        assert!(Coloring::new(&complete(2), vec![0]).is_err());
        let c = Coloring::new(&cycle(4), vec![3, 7, 3, 7]).unwrap();
        assert_eq!((c.k, c.colors), (2, vec![0, 1, 0, 1]));
    }

    #[test]
    fn chromatic_examples() {
        let r = chromatic_number(&join(&cycle(5), &cycle(5)), B);
        assert_eq!(r.value(), Some(6));
        assert_eq!(r.certificate, Some(OptimalityCertificate::SearchExhausted { k: 5 }));
        assert_eq!(chi(&icosahedron()), 4);
        assert_eq!(chi(&join(&cycle(5), &icosahedron())), 7);
        assert_eq!(chi(&Graph::empty()), 0);
        assert_eq!(chi(&points(3)), 1);
        assert_eq!(chi(&octahedron()), 3);
    }

    #[test]
    fn k_colorable_examples() {
        assert!(matches!(k_colorable(&points(5), 1, B), KColoring::Colored(c) if c.k == 1));
        assert_eq!(k_colorable(&icosahedron(), 3, B), KColoring::Refuted);
        let b = barycentric(&icosahedron()).unwrap();
        assert!(matches!(k_colorable(&b.graph, 3, B), KColoring::Colored(_)));
        assert_eq!(k_colorable(&b.graph, 2, B), KColoring::Refuted);
        assert_eq!(k_colorable(&complete(3), 0, B), KColoring::Refuted);
    }

    #[test]
    fn clique_and_independence_numbers() {
        assert_eq!(clique_number(&join(&cycle(5), &cycle(5))), 4);
        assert_eq!(independence_number(&shannon(&cycle(5), &cycle(5))), 5);
        assert_eq!(clique_cover_number(&cycle(5), B), Some(3));
        assert_eq!(chi(&cycle(5).complement()), 3);
        assert_eq!(clique_number(&icosahedron()), 3);
        assert_eq!(clique_number(&Graph::empty()), 0);
    }

    fn grid() -> Vec<Graph> {
        vec![cycle(4), cycle(5), complete(2), complete(3), points(2), octahedron()]
    }

    #[test]
    fn join_additivity_and_minimal_monoid() {
        for a in grid() {
            for b in grid() {
                let (xa, xb) = (chi(&a), chi(&b));
                let j = join(&a, &b);
                let xj = chi(&j);
                assert_eq!(xj, xa + xb);
                let minimal = |g: &Graph, x: usize| x as i64 == g.dimension() + 1;
                if minimal(&a, xa) && minimal(&b, xb) {
                    assert!(minimal(&j, xj));
                }
            }
        }
    }

    #[test]
    fn suspension_adds_one() {
        for g in grid() {
            let s = suspension(&g);
            assert_eq!(chi(&s), chi(&g) + 1);
            assert_eq!(clique_number(&s), clique_number(&g) + 1);
        }
    }

    #[test]
    fn sphere_corollaries() {
        let c5 = cycle(5);
        assert_eq!(chi(&c5), 3);
        assert_eq!(chi(&join(&c5, &c5)), 6);
        assert_eq!(chi(&join(&join(&points(2), &c5), &c5)), 7);
    }

    /// The large product is bounded by the product of chromatic numbers and
    /// attains it on every pair here except `C5 * C5`, whose chromatic number
    /// is 8: the eight classes {(0,0)}, {0,2}x{1,3}, {0,3}x{2,4}, {1,3}x{0,2},
    /// {1,3}x{1,3}, {1,4}x{1,4}, {2,4}x{0,3}, {2,4}x{2,4} cover the 25 pairs
    /// and each class is contained in a product of independent sets.
    #[test]
    fn sabidussi_products() {
        let base = [complete(2), complete(3), cycle(4), cycle(5)];
        for a in &base {
            for b in &base {
                let x = chi(&sabidussi(a, b));
                let bound = chi(a) * chi(b);
                assert!(x <= bound);
                if a.order() == 5 && b.order() == 5 {
                    assert_eq!(x, 8);
                } else {
                    assert_eq!(x, bound, "{a:?} * {b:?}");
                }
            }
        }
    }

    #[test]
    fn shannon_bounds() {
        let base = [complete(2), complete(3), cycle(4), cycle(5)];
        for a in &base {
            for b in &base {
                let x = chi(&shannon(a, b));
                assert!(chi(a).max(chi(b)) <= x && x <= chi(a) * chi(b));
            }
        }
        assert_eq!(chi(&shannon(&cycle(5), &cycle(5))), 5);
        assert_eq!(chi(&shannon(&cycle(4), &cycle(4))), 4);
    }

    #[test]
    fn union_takes_max() {
        for a in grid() {
            for b in grid() {
                assert_eq!(chi(&disjoint_union(&a, &b)), chi(&a).max(chi(&b)));
            }
        }
    }

    #[test]
    fn budget_gives_interval() {
        let g = join(&cycle(5), &cycle(5));
        let r = chromatic_number(&g, 1);
        assert!(!r.optimal);
        assert!(r.lower <= 6 && r.upper >= 6);
        assert!(r.coloring.is_proper_for(&g));
    }
}
