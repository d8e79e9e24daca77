//! Tangency graph of a finite set of circles, its components, and explicit
//! tangency chains in the Euclidean fields.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::arith::HalfInt;
use crate::circle::{circle_from_matrix, pedoe_product, OrientedCircle};
use crate::error::{Error, Result};
use crate::moebius::{elementary_decomposition, Matrix2};

use super::{centre_f64, CircleSet};

/// Two circles of a list, by index, with their Pedoe product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairProduct {
    pub i: usize,
    pub j: usize,
    pub product: HalfInt,
}

type Cell = (i64, i64);

/// All pairs `i < j` of `circles` that meet (|Pedoe product| <= 1).
///
/// Proper circles are bucketed on a grid whose cell is the largest
/// diameter present, so meeting circles sit in neighbouring cells; lines
/// are compared against everything.
pub fn intersecting_pairs(circles: &[OrientedCircle]) -> Vec<PairProduct> {
    let mut lines = Vec::new();
    let mut proper = Vec::new();
    for (i, c) in circles.iter().enumerate() {
        if c.is_line() {
            lines.push(i);
        } else {
            proper.push(i);
        }
    }
    let meets = |i: usize, j: usize| -> Option<PairProduct> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let p = pedoe_product(&circles[i], &circles[j]).expect("one field");
        (p.twice_value.abs() <= 2).then_some(PairProduct { i, j, product: p })
    };

    let mut out: Vec<PairProduct> = Vec::new();
    for (n, &i) in lines.iter().enumerate() {
        for &j in lines[n + 1..].iter().chain(proper.iter()) {
            out.extend(meets(i, j));
        }
    }

    if let Some(max_r) = proper
        .iter()
        .filter_map(|&i| circles[i].radius())
        .reduce(f64::max)
    {
        let h = 2.0 * max_r;
        let mut grid: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();
        for &i in &proper {
            let (x, y) = centre_f64(&circles[i]).expect("proper circle");
            grid.entry(((x / h).floor() as i64, (y / h).floor() as i64))
                .or_default()
                .push(i);
        }
        let cells: Vec<(&Cell, &Vec<usize>)> = grid.iter().collect();
        let found: Vec<PairProduct> = cells
            .par_iter()
            .flat_map_iter(|&(&(cx, cy), members)| {
                let mut local = Vec::new();
                for (n, &i) in members.iter().enumerate() {
                    for &j in &members[n + 1..] {
                        local.extend(meets(i, j));
                    }
                }
                for (dx, dy) in [(1, -1), (1, 0), (1, 1), (0, 1)] {
                    if let Some(other) = grid.get(&(cx + dx, cy + dy)) {
                        for &i in members {
                            for &j in other {
                                local.extend(meets(i, j));
                            }
                        }
                    }
                }
                local
            })
            .collect();
        out.extend(found);
    }
    out.sort_by_key(|p| (p.i, p.j));
    out
}

/// Circles as vertices, tangencies as edges.
#[derive(Clone, Debug)]
pub struct TangencyGraph {
    pub vertices: Vec<OrientedCircle>,
    pub edges: Vec<(usize, usize)>,
}

pub fn tangency_graph(set: &CircleSet) -> TangencyGraph {
    let vertices = set.to_vec();
    let edges = intersecting_pairs(&vertices)
        .into_iter()
        .filter(|p| p.product.twice_value.abs() == 2)
        .map(|p| (p.i, p.j))
        .collect();
    TangencyGraph { vertices, edges }
}

/// Connected components as a label per vertex; labels are the smallest
/// vertex index of each component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub labels: Vec<usize>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.labels.iter().enumerate().filter(|(i, l)| i == *l).count()
    }

    pub fn same(&self, i: usize, j: usize) -> bool {
        self.labels[i] == self.labels[j]
    }

    /// Vertex indices grouped by component, in order of smallest member.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut by: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, l) in self.labels.iter().enumerate() {
            by.entry(*l).or_default().push(i);
        }
        by.into_values().collect()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl TangencyGraph {
    pub fn components(&self) -> Components {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        for &(i, j) in &self.edges {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                // the smaller index becomes the root, so roots are minima
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
        let labels = (0..n).map(|i| find(&mut parent, i)).collect();
        Components { labels }
    }

    /// Edge list as pairs of JSON circle records, one edge per line.
    pub fn edge_list(&self) -> String {
        let mut s = String::new();
        for &(i, j) in &self.edges {
            s.push_str(&format!(
                "{} {}\n",
                self.vertices[i].to_json(),
                self.vertices[j].to_json()
            ));
        }
        s
    }
}

/// A chain of circles from `M1(R)` to `M2(R)` in which consecutive circles
/// are tangent; built from an elementary factorisation of `M1^-1 M2`.
pub fn tangency_path(m1: &Matrix2, m2: &Matrix2) -> Result<Vec<OrientedCircle>> {
    let disc = m1.disc();
    if !disc.is_euclidean() {
        return Err(Error::NotEuclideanField(disc.value()));
    }
    let w = m1.inverse()? * *m2;
    // rescale by a unit so that the determinant is 1; circles do not change
    let det = w.det();
    let root = disc
        .units()
        .into_iter()
        .find(|v| *v * *v == det)
        .ok_or_else(|| Error::NonUnitDeterminant(det.to_string()))?;
    let w = w.scale(root.conj());
    let word = elementary_decomposition(&w)?;
    let mut path = vec![circle_from_matrix(m1)?];
    let mut p = *m1;
    for g in &word.gens {
        p = p * g.matrix(disc);
        let c = circle_from_matrix(&p)?;
        if *path.last().expect("non-empty") != c {
            path.push(c);
        }
    }
    let target = circle_from_matrix(m2)?;
    if *path.last().expect("non-empty") != target {
        return Err(Error::CertificateFailure(format!(
            "path ends at {} instead of {target}",
            path.last().expect("non-empty")
        )));
    }
    for pair in path.windows(2) {
        let p = pedoe_product(&pair[0], &pair[1])?;
        if p.twice_value.abs() != 2 {
            return Err(Error::CertificateFailure(format!(
                "{} and {} are not tangent",
                pair[0], pair[1]
            )));
        }
    }
    Ok(path)
}
