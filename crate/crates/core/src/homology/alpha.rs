//! Planar Čech persistence through the alpha filtration.
//!
//! For points in the plane the Delaunay-restricted (alpha) filtration and the
//! Čech filtration are homotopy equivalent at every radius, through maps that
//! commute with the inclusions, so their barcodes agree. Positive-length bars
//! are born at half lengths of Gabriel edges and die at circumradii of acute
//! triangles; both are computed with the same formulas as the Čech
//! filtration, so endpoints match bit for bit. The alpha complex has O(n)
//! simplices, which makes a few hundred points cheap at any radius.

use std::collections::HashMap;

use super::{persistence, Barcode};
use crate::complex::{cech_triangle_value, FilteredComplex, Simplex};
use crate::error::{Error, Result};
use crate::shapes::Point;

fn circumradius(ab2: f64, ac2: f64, bc2: f64) -> f64 {
    let longest = ab2.max(ac2).max(bc2);
    if 2.0 * longest <= ab2 + ac2 + bc2 {
        // acute or right: the circumball is the enclosing ball
        return cech_triangle_value(ab2, ac2, bc2);
    }
    let area16 = 2.0 * (ab2 * ac2 + ac2 * bc2 + bc2 * ab2) - ab2 * ab2 - ac2 * ac2 - bc2 * bc2;
    if area16 <= 0.0 {
        return f64::INFINITY;
    }
    (ab2 * ac2 * bc2 / area16).sqrt()
}

/// Barcode of the Čech filtration of planar `points` up to `max_radius`,
/// reported with the same completeness as a `max_dim`-skeleton.
pub fn alpha_barcode(points: &[Point], max_dim: usize, max_radius: f64) -> Result<Barcode> {
    if points.is_empty() {
        return Err(Error::EmptyInput("point cloud"));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != 2) {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: p.dim(),
        });
    }
    if !(max_radius > 0.0) || !max_radius.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "max_radius must be positive and finite, got {max_radius}"
        )));
    }
    let fc = alpha_filtration(points, max_dim.min(2), max_radius)?;
    let bc = persistence(&fc);
    Ok(Barcode::truncated(bc.intervals().to_vec(), max_dim, max_radius))
}

pub(crate) fn alpha_filtration(points: &[Point], max_dim: usize, max_radius: f64) -> Result<FilteredComplex> {
    let n = points.len();
    let d2 = |a: u32, b: u32| points[a as usize].dist2(&points[b as usize]);

    // exact duplicates collapse onto their first copy at radius 0
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by(|&a, &b| {
        let (pa, pb) = (points[a as usize], points[b as usize]);
        pa.x().total_cmp(&pb.x()).then(pa.y().total_cmp(&pb.y())).then(a.cmp(&b))
    });
    let mut rep: Vec<u32> = (0..n as u32).collect();
    let mut unique: Vec<u32> = Vec::with_capacity(n);
    for w in 0..n {
        let i = order[w];
        match unique.last() {
            Some(&u) if points[u as usize].coords() == points[i as usize].coords() => rep[i as usize] = u,
            _ => unique.push(i),
        }
    }

    let mut edges: HashMap<(u32, u32), f64> = HashMap::new();
    let mut triangles: Vec<([u32; 3], f64)> = Vec::new();
    let key = |a: u32, b: u32| if a < b { (a, b) } else { (b, a) };

    let dpts: Vec<delaunator::Point> = unique
        .iter()
        .map(|&i| delaunator::Point {
            x: points[i as usize].x(),
            y: points[i as usize].y(),
        })
        .collect();
    let tri = delaunator::triangulate(&dpts);
    let mut seen = vec![false; unique.len()];
    if tri.triangles.is_empty() {
        // collinear: the Delaunay graph is the path along the line
        for w in tri.hull.windows(2) {
            let (a, b) = (unique[w[0]], unique[w[1]]);
            edges.insert(key(a, b), d2(a, b).sqrt() / 2.0);
        }
        tri.hull.iter().for_each(|&h| seen[h] = true);
    } else {
        for t in tri.triangles.chunks_exact(3) {
            let mut v = [unique[t[0]], unique[t[1]], unique[t[2]]];
            t.iter().for_each(|&h| seen[h] = true);
            v.sort_unstable();
            let [a, b, c] = v;
            let value = circumradius(d2(a, b), d2(a, c), d2(b, c));
            for (p, q, opp) in [(a, b, c), (a, c, b), (b, c, a)] {
                let half = d2(p, q).sqrt() / 2.0;
                let slot = edges.entry((p, q)).or_insert(half);
                // the opposite vertex inside the diametral ball attaches the
                // edge to this triangle (at most one side of an edge can be obtuse)
                let (pp, qq, oo) = (points[p as usize], points[q as usize], points[opp as usize]);
                let dot = (pp.x() - oo.x()) * (qq.x() - oo.x()) + (pp.y() - oo.y()) * (qq.y() - oo.y());
                if dot < 0.0 {
                    *slot = value;
                }
            }
            triangles.push((v, value));
        }
    }
    // points the triangulation skipped as near-duplicates join their nearest point
    for (h, _) in seen.iter().enumerate().filter(|(_, s)| !**s) {
        let a = unique[h];
        if let Some(b) = unique
            .iter()
            .copied()
            .filter(|&b| b != a)
            .min_by(|&x, &y| d2(a, x).total_cmp(&d2(a, y)).then(x.cmp(&y)))
        {
            edges.entry(key(a, b)).or_insert(d2(a, b).sqrt() / 2.0);
        }
    }

    let mut simplices: Vec<(Simplex, f64)> = (0..n as u32).map(|v| (Simplex::vertex(v), 0.0)).collect();
    for (i, &r) in rep.iter().enumerate() {
        if r != i as u32 {
            simplices.push((Simplex::new(&[r, i as u32])?, 0.0));
        }
    }
    if max_dim >= 1 {
        for (&(a, b), &v) in &edges {
            if v <= max_radius {
                simplices.push((Simplex::from_sorted(&[a, b]), v));
            }
        }
    }
    if max_dim >= 2 {
        for &(t, v) in &triangles {
            // rounding must not put a triangle before its edges
            let v = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
                .iter()
                .fold(v, |acc, e| acc.max(edges[e]));
            if v <= max_radius {
                simplices.push((Simplex::from_sorted(&t), v));
            }
        }
    }
    FilteredComplex::from_simplices(simplices, max_dim, max_radius)
}
