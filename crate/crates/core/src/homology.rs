//! Rational Betti numbers of the Whitney complex.
//!
//! Boundary ranks are computed by exact integer row reduction: a row is
//! reduced against earlier pivots with `r <- (a/g) r - (b/g) p` and then
//! divided by its content, which keeps the arithmetic fraction free and the
//! entries small on simplicial boundary matrices.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Simplex};

/// Largest Whitney complex [`betti`] will reduce.
pub const BETTI_SIMPLEX_LIMIT: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BettiVector {
    pub b: Vec<usize>,
}

impl BettiVector {
    /// The vector without trailing zeros.
    pub fn trimmed(&self) -> &[usize] {
        let end = self.b.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
        &self.b[..end]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.b
            .iter()
            .enumerate()
            .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum()
    }
}

type SparseRow = Vec<(usize, i128)>;

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn overflow() -> Error {
    Error::TooLarge("coefficient growth in boundary reduction".into())
}

fn normalize(row: &mut SparseRow) {
    let content = row.iter().fold(0, |g, &(_, x)| gcd(g, x));
    if content > 1 {
        for e in row.iter_mut() {
            e.1 /= content;
        }
    }
    if row.first().is_some_and(|e| e.1 < 0) {
        for e in row.iter_mut() {
            e.1 = -e.1;
        }
    }
}

/// `alpha * r - beta * p`, dropping zeros.
fn combine(r: &SparseRow, alpha: i128, p: &SparseRow, beta: i128) -> Result<SparseRow> {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let (col, val) = match (r.get(i), p.get(j)) {
            (Some(&(cr, vr)), Some(&(cp, vp))) if cr == cp => {
                i += 1;
                j += 1;
                let a = vr.checked_mul(alpha).ok_or_else(overflow)?;
                let b = vp.checked_mul(beta).ok_or_else(overflow)?;
                (cr, a.checked_sub(b).ok_or_else(overflow)?)
            }
            (Some(&(cr, vr)), Some(&(cp, _))) if cr < cp => {
                i += 1;
                (cr, vr.checked_mul(alpha).ok_or_else(overflow)?)
            }
            (Some(&(cr, vr)), None) => {
                i += 1;
                (cr, vr.checked_mul(alpha).ok_or_else(overflow)?)
            }
            (_, Some(&(cp, vp))) => {
                j += 1;
                (cp, vp.checked_mul(beta).ok_or_else(overflow)?.checked_neg().ok_or_else(overflow)?)
            }
            (None, None) => unreachable!(),
        };
        if val != 0 {
            out.push((col, val));
        }
    }
    Ok(out)
}

/// Rank over the rationals of a sparse integer matrix given by rows.
pub(crate) fn rank(rows: impl IntoIterator<Item = SparseRow>) -> Result<usize> {
    let mut pivots: HashMap<usize, SparseRow> = HashMap::new();
    for mut row in rows {
        normalize(&mut row);
        while let Some(&(col, b)) = row.first() {
            match pivots.get(&col) {
                Some(p) => {
                    let a = p[0].1;
                    let g = gcd(a, b);
                    row = combine(&row, a / g, p, b / g)?;
                    normalize(&mut row);
                }
                None => {
                    pivots.insert(col, row);
                    break;
                }
            }
        }
    }
    Ok(pivots.len())
}

fn boundary_rows<'a>(
    level: &'a [Simplex],
    faces: &'a HashMap<&'a [usize], usize>,
) -> impl Iterator<Item = SparseRow> + 'a {
    level.iter().map(move |s| {
        let v = s.verts();
        let mut row: SparseRow = (0..v.len())
            .map(|i| {
                let face: Vec<usize> = v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &w)| w).collect();
                (faces[face.as_slice()], if i % 2 == 0 { 1 } else { -1 })
            })
            .collect();
        row.sort_unstable();
        row
    })
}

/// Betti numbers `b_0..b_top` of the Whitney complex over the rationals.
/// The empty graph has an empty Betti vector.
pub fn betti(g: &Graph) -> Result<BettiVector> {
    let fv = g.f_vector();
    if fv.total() > BETTI_SIMPLEX_LIMIT {
        return Err(Error::TooLarge(format!(
            "{} simplices exceed the Betti limit of {BETTI_SIMPLEX_LIMIT}",
            fv.total()
        )));
    }
    let all = g.all_cliques();
    let mut levels: Vec<Vec<Simplex>> = vec![Vec::new(); fv.counts.len()];
    for s in all {
        levels[s.len() - 1].push(s);
    }
    // ranks[k] = rank of the boundary map from k-simplices to (k-1)-simplices.
    let mut ranks = vec![0usize; levels.len() + 1];
    for k in 1..levels.len() {
        let index: HashMap<&[usize], usize> =
            levels[k - 1].iter().enumerate().map(|(i, s)| (s.verts(), i)).collect();
        ranks[k] = rank(boundary_rows(&levels[k], &index))?;
    }
    let b = (0..levels.len())
        .map(|k| levels[k].len() - ranks[k] - ranks[k + 1])
        .collect();
    Ok(BettiVector { b })
}
