//! H0/H1 persistence of a point cloud's Čech or Rips filtration without
//! materialising the triangles.
//!
//! H0 comes from union-find over the sorted edges. H1 is computed by reducing
//! the coboundary matrix (edges against triangles) in reverse filtration order;
//! edges that merged components are cleared up front. Triangle coboundaries
//! are enumerated on demand and the reduction stores only the combination of
//! edges behind each reduced column, never the columns themselves.

use std::cmp::Ordering;
use std::collections::HashMap;

use super::{Barcode, Interval};
use crate::complex::{cech_triangle_value, FiltrationKind, MAX_SIMPLEX_DIM};
use crate::error::{Error, Result};
use crate::shapes::Point;

#[derive(Debug, Clone, Copy)]
struct Edge {
    value: f64,
    a: u32,
    b: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Triangle {
    value: f64,
    verts: [u32; 3],
}

impl Triangle {
    fn cmp(&self, other: &Triangle) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then_with(|| self.verts.cmp(&other.verts))
    }
}

struct Cloud {
    n: usize,
    dist2: Vec<f64>,
    edges: Vec<Edge>,
    neighbours: Vec<Vec<u32>>,
    kind: FiltrationKind,
    max_radius: f64,
}

impl Cloud {
    fn new(points: &[Point], kind: FiltrationKind, max_radius: f64, with_edges: bool) -> Self {
        let n = points.len();
        let mut dist2 = vec![0.0; n * n];
        let mut edges = Vec::new();
        let mut neighbours = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                let d2 = points[i].dist2(&points[j]);
                dist2[i * n + j] = d2;
                dist2[j * n + i] = d2;
                let value = d2.sqrt() / 2.0;
                if with_edges && value <= max_radius {
                    edges.push(Edge {
                        value,
                        a: i as u32,
                        b: j as u32,
                    });
                    neighbours[i].push(j as u32);
                    neighbours[j].push(i as u32);
                }
            }
        }
        edges.sort_by(|x, y| {
            x.value
                .total_cmp(&y.value)
                .then(x.a.cmp(&y.a))
                .then(x.b.cmp(&y.b))
        });
        Cloud {
            n,
            dist2,
            edges,
            neighbours,
            kind,
            max_radius,
        }
    }

    #[inline]
    fn d2(&self, i: u32, j: u32) -> f64 {
        self.dist2[i as usize * self.n + j as usize]
    }

    #[inline]
    fn triangle_value(&self, i: u32, j: u32, k: u32) -> f64 {
        let (ij, ik, jk) = (self.d2(i, j), self.d2(i, k), self.d2(j, k));
        match self.kind {
            FiltrationKind::Cech => cech_triangle_value(ij, ik, jk),
            FiltrationKind::Rips => ij.max(ik).max(jk).sqrt() / 2.0,
        }
    }

    fn cofacet(&self, e: &Edge, k: u32) -> Option<Triangle> {
        if k == e.a || k == e.b {
            return None;
        }
        let mut verts = [e.a, e.b, k];
        verts.sort_unstable();
        // sorted so every edge of the triangle computes a bit-identical value
        let value = self.triangle_value(verts[0], verts[1], verts[2]);
        if value > self.max_radius {
            return None;
        }
        Some(Triangle { value, verts })
    }

    /// Candidate third vertices: the shorter neighbour list of the endpoints.
    fn candidates(&self, e: &Edge) -> &[u32] {
        let na = &self.neighbours[e.a as usize];
        let nb = &self.neighbours[e.b as usize];
        if na.len() <= nb.len() {
            na
        } else {
            nb
        }
    }

    fn min_cofacet(&self, e: &Edge) -> Option<Triangle> {
        let mut best: Option<Triangle> = None;
        for &k in self.candidates(e) {
            if let Some(t) = self.cofacet(e, k) {
                if best.map_or(true, |b| t.cmp(&b) == Ordering::Less) {
                    best = Some(t);
                }
            }
        }
        best
    }

    fn coboundary(&self, e: &Edge) -> Vec<Triangle> {
        let mut out: Vec<Triangle> = self
            .candidates(e)
            .iter()
            .filter_map(|&k| self.cofacet(e, k))
            .collect();
        out.sort_by(Triangle::cmp);
        out
    }
}

fn xor_triangles(a: &[Triangle], b: &[Triangle]) -> Vec<Triangle> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        true
    }
}

/// Barcode in dimensions below `max_dim` (at most H0 and H1) of the Čech or
/// Rips filtration of `points`, truncated at `max_radius`.
pub fn cloud_barcode(
    points: &[Point],
    kind: FiltrationKind,
    max_dim: usize,
    max_radius: f64,
) -> Result<Barcode> {
    if points.is_empty() {
        return Err(Error::EmptyInput("point cloud"));
    }
    if max_dim > 2 {
        return Err(Error::InvalidArgument(format!(
            "the implicit engine covers max_dim <= 2 (H0, H1); got {max_dim}, use max_dim <= {MAX_SIMPLEX_DIM} with the explicit complex"
        )));
    }
    if !(max_radius > 0.0) || !max_radius.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "max_radius must be positive and finite, got {max_radius}"
        )));
    }
    let cloud = Cloud::new(points, kind, max_radius, max_dim >= 1);
    let mut intervals = Vec::new();

    // H0
    let mut uf = UnionFind::new(cloud.n);
    let mut merges = vec![false; cloud.edges.len()];
    let mut components = cloud.n;
    for (idx, e) in cloud.edges.iter().enumerate() {
        if uf.union(e.a, e.b) {
            merges[idx] = true;
            components -= 1;
            intervals.push(Interval {
                dim: 0,
                birth: 0.0,
                death: e.value,
            });
        }
    }
    for _ in 0..components {
        intervals.push(Interval {
            dim: 0,
            birth: 0.0,
            death: f64::INFINITY,
        });
    }

    if max_dim >= 1 {
        intervals.extend(h1_intervals(&cloud, &merges, max_dim >= 2));
    }
    Ok(Barcode::truncated(intervals, max_dim, max_radius))
}

fn h1_intervals(cloud: &Cloud, merges: &[bool], with_triangles: bool) -> Vec<Interval> {
    let mut out = Vec::new();
    let edges = &cloud.edges;
    // pivot triangle -> edge index that owns it
    let mut owner: HashMap<[u32; 3], u32> = HashMap::new();
    // extra edges (besides the column's own edge) combined into each reduced column
    let mut combination: HashMap<u32, Vec<u32>> = HashMap::new();

    for idx in (0..edges.len()).rev() {
        if merges[idx] {
            continue;
        }
        let e = &edges[idx];
        if !with_triangles {
            out.push(Interval {
                dim: 1,
                birth: e.value,
                death: f64::INFINITY,
            });
            continue;
        }
        let pivot = match cloud.min_cofacet(e) {
            None => None,
            Some(t) if !owner.contains_key(&t.verts) => Some(t),
            Some(_) => {
                let (pivot, used) = reduce_column(cloud, e, &owner, &combination);
                if pivot.is_some() && !used.is_empty() {
                    combination.insert(idx as u32, used);
                }
                pivot
            }
        };
        match pivot {
            Some(t) => {
                owner.insert(t.verts, idx as u32);
                out.push(Interval {
                    dim: 1,
                    birth: e.value,
                    death: t.value,
                });
            }
            None => out.push(Interval {
                dim: 1,
                birth: e.value,
                death: f64::INFINITY,
            }),
        }
    }
    out
}

/// Reduce the coboundary column of `e` against the columns already owning
/// pivots. Returns the new pivot (if the column survives) and the other edges
/// whose coboundaries were added, with GF(2) cancellation applied.
fn reduce_column(
    cloud: &Cloud,
    e: &Edge,
    owner: &HashMap<[u32; 3], u32>,
    combination: &HashMap<u32, Vec<u32>>,
) -> (Option<Triangle>, Vec<u32>) {
    let edges = &cloud.edges;
    let mut working = cloud.coboundary(e);
    let mut used: Vec<u32> = Vec::new();
    let pivot = loop {
        let Some(low) = working.first().copied() else {
            break None;
        };
        let Some(&other) = owner.get(&low.verts) else {
            break Some(low);
        };
        let extra = combination.get(&other).map(Vec::as_slice).unwrap_or(&[]);
        for &f in std::iter::once(&other).chain(extra) {
            working = xor_triangles(&working, &cloud.coboundary(&edges[f as usize]));
            used.push(f);
        }
    };
    used.sort_unstable();
    let mut odd = Vec::with_capacity(used.len());
    for chunk in used.chunk_by(|a, b| a == b) {
        if chunk.len() % 2 == 1 {
            odd.push(chunk[0]);
        }
    }
    (pivot, odd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_filtration;
    use crate::homology::persistence;
    use rand::Rng;

    fn same_low_dims(a: &Barcode, b: &Barcode, dims: usize) {
        for k in 0..dims {
            let x: Vec<(f64, f64)> = a.of_dim(k).map(|i| (i.birth, i.death)).collect();
            let y: Vec<(f64, f64)> = b.of_dim(k).map(|i| (i.birth, i.death)).collect();
            assert_eq!(x.len(), y.len(), "dim {k}: {x:?} vs {y:?}");
            for (p, q) in x.iter().zip(&y) {
                assert!((p.0 - q.0).abs() < 1e-12 && (p.1 == q.1 || (p.1 - q.1).abs() < 1e-12));
            }
        }
    }

    #[test]
    fn matches_explicit_reduction_on_random_clouds() {
        let mut rng = crate::rng::stream(5);
        for trial in 0..40 {
            let n = rng.gen_range(1..25);
            let pts: Vec<Point> = (0..n)
                .map(|_| Point::new2(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)))
                .collect();
            let r = rng.gen_range(0.05..0.8);
            let kind = if trial % 2 == 0 {
                FiltrationKind::Cech
            } else {
                FiltrationKind::Rips
            };
            let fc = build_filtration(&pts, 2, r, kind).unwrap();
            let explicit = persistence(&fc);
            let implicit = cloud_barcode(&pts, kind, 2, r).unwrap();
            same_low_dims(&explicit, &implicit, 2);
        }
    }

    #[test]
    fn dimension_one_only_has_essential_loops() {
        let pts = [
            Point::new2(0.0, 0.0),
            Point::new2(1.0, 0.0),
            Point::new2(1.0, 1.0),
            Point::new2(0.0, 1.0),
        ];
        let bc = cloud_barcode(&pts, FiltrationKind::Cech, 1, 1.0).unwrap();
        // 6 edges, 3 merge components; the other 3 are never filled
        assert_eq!(bc.of_dim(1).count(), 3);
        assert!(bc.of_dim(1).all(|i| i.death.is_infinite()));
        let bc0 = cloud_barcode(&pts, FiltrationKind::Cech, 0, 1.0).unwrap();
        assert_eq!(bc0.of_dim(0).filter(|i| i.death.is_infinite()).count(), 4);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(cloud_barcode(&[], FiltrationKind::Cech, 2, 1.0).is_err());
        let p = [Point::new2(0.0, 0.0)];
        assert!(cloud_barcode(&p, FiltrationKind::Cech, 3, 1.0).is_err());
        assert!(cloud_barcode(&p, FiltrationKind::Cech, 2, 0.0).is_err());
    }
}
