//! Brute-force oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use manifold_teach::complex::{cech_filtration, FilteredComplex, Simplex};
use manifold_teach::homology::{betti_gf2, persistence, BettiProfile};
use manifold_teach::rng::stream;
use manifold_teach::Point;
use rand::Rng;

/// Components and holes of the union of closed `eps`-disks, rasterised at
/// pitch `eps / 50`. Foreground uses 4-connectivity, background
/// 8-connectivity, so the two counts are dual.
pub fn pixel_betti(points: &[Point], eps: f64) -> (usize, usize) {
    let pitch = eps / 50.0;
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in points {
        x0 = x0.min(p.x());
        y0 = y0.min(p.y());
        x1 = x1.max(p.x());
        y1 = y1.max(p.y());
    }
    // two empty pixels of margin on every side
    let (ox, oy) = (x0 - eps - 2.0 * pitch, y0 - eps - 2.0 * pitch);
    let w = ((x1 - x0 + 2.0 * eps) / pitch) as usize + 5;
    let h = ((y1 - y0 + 2.0 * eps) / pitch) as usize + 5;
    let mut inside = vec![false; w * h];
    let e2 = eps * eps;
    for p in points {
        let i0 = ((p.x() - eps - ox) / pitch).floor().max(0.0) as usize;
        let i1 = (((p.x() + eps - ox) / pitch).ceil() as usize).min(w - 1);
        let j0 = ((p.y() - eps - oy) / pitch).floor().max(0.0) as usize;
        let j1 = (((p.y() + eps - oy) / pitch).ceil() as usize).min(h - 1);
        for j in j0..=j1 {
            let cy = oy + (j as f64 + 0.5) * pitch - p.y();
            for i in i0..=i1 {
                let cx = ox + (i as f64 + 0.5) * pitch - p.x();
                if cx * cx + cy * cy <= e2 {
                    inside[j * w + i] = true;
                }
            }
        }
    }
    let count = |fg: bool, diag: bool| -> usize {
        let mut seen = vec![false; w * h];
        let mut comps = 0;
        let mut queue = VecDeque::new();
        for start in 0..w * h {
            if seen[start] || inside[start] != fg {
                continue;
            }
            comps += 1;
            seen[start] = true;
            queue.push_back(start);
            while let Some(c) = queue.pop_front() {
                let (i, j) = ((c % w) as i64, (c / w) as i64);
                for dj in -1i64..=1 {
                    for di in -1i64..=1 {
                        if (di == 0 && dj == 0) || (!diag && di != 0 && dj != 0) {
                            continue;
                        }
                        let (ni, nj) = (i + di, j + dj);
                        if ni < 0 || nj < 0 || ni >= w as i64 || nj >= h as i64 {
                            continue;
                        }
                        let n = nj as usize * w + ni as usize;
                        if !seen[n] && inside[n] == fg {
                            seen[n] = true;
                            queue.push_back(n);
                        }
                    }
                }
            }
        }
        comps
    };
    // the unbounded background is one component; the rest are holes
    (count(true, false), count(false, true) - 1)
}

/// A random planar cloud of 3..=12 points: uniform in the unit square, or a
/// jittered ring so that holes are common.
pub fn random_cloud(rng: &mut impl Rng) -> Vec<Point> {
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(3..=12);
        (0..n)
            .map(|_| Point::new2(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)))
            .collect()
    } else {
        let n = rng.gen_range(5..=12);
        let step = std::f64::consts::TAU / n as f64;
        (0..n)
            .map(|k| {
                let t = (k as f64 + rng.gen_range(-0.3..0.3)) * step;
                let r = 0.4 + rng.gen_range(-0.06..0.06);
                Point::new2(0.5 + r * t.cos(), 0.5 + r * t.sin())
            })
            .collect()
    }
}

/// A radius at least 5% away (relatively) from every Čech critical value of
/// `points`, so the rasterised union has the topology of the true union.
/// Half the time it is drawn inside an H1 bar, when there is one.
pub fn generic_radius(points: &[Point], rng: &mut impl Rng) -> f64 {
    let fc = cech_filtration(points, 2, 2.0).expect("valid cloud");
    let values: Vec<f64> = fc.simplices().iter().map(|&(_, v)| v).filter(|&v| v > 0.0).collect();
    let generic = |eps: f64| values.iter().all(|&v| (v - eps).abs() > 0.05 * eps);
    let bars: Vec<(f64, f64)> = persistence(&fc).of_dim(1).map(|iv| (iv.birth, iv.death.min(2.0))).collect();
    if !bars.is_empty() && rng.gen_bool(0.5) {
        let (lo, hi) = bars[rng.gen_range(0..bars.len())];
        for _ in 0..1000 {
            let eps = rng.gen_range(lo..hi);
            if generic(eps) {
                return eps;
            }
        }
    }
    loop {
        let eps: f64 = rng.gen_range(0.04..0.45);
        if generic(eps) {
            return eps;
        }
    }
}

/// One nerve-fidelity case: (Čech b0, b1) and (pixel b0, b1).
pub fn nerve_case(seed: u64) -> ((usize, usize), (usize, usize)) {
    let mut rng = stream(seed);
    let pts = random_cloud(&mut rng);
    let eps = generic_radius(&pts, &mut rng);
    let fc = cech_filtration(&pts, 2, 2.0).unwrap();
    let b = betti_gf2(&fc.complex_at(eps).unwrap(), 1).unwrap();
    ((b.b0, b.b1), pixel_betti(&pts, eps))
}

/// A random filtration of at most `max_simplices` simplices on up to 6
/// vertices, up to dimension 3, with face values never above coface values.
pub fn random_filtration(rng: &mut impl Rng, max_simplices: usize) -> FilteredComplex {
    let n = rng.gen_range(3..=6u32);
    let mut values: HashMap<Simplex, f64> = HashMap::new();
    for v in 0..n {
        values.insert(Simplex::vertex(v), rng.gen_range(0.0..0.3));
    }
    // draw random simplices and close them downwards
    let mut tries = 0;
    while values.len() < max_simplices && tries < 200 {
        tries += 1;
        let k = rng.gen_range(2..=4usize).min(n as usize);
        let mut verts: Vec<u32> = (0..n).collect();
        for i in 0..k {
            let j = rng.gen_range(i..n as usize);
            verts.swap(i, j);
        }
        let s = Simplex::new(&verts[..k]).unwrap();
        let mut closure = vec![s];
        let mut i = 0;
        while i < closure.len() {
            let f: Vec<Simplex> = closure[i].facets().collect();
            for f in f {
                if !closure.contains(&f) {
                    closure.push(f);
                }
            }
            i += 1;
        }
        let fresh = closure.iter().filter(|c| !values.contains_key(c)).count();
        if values.len() + fresh > max_simplices {
            continue;
        }
        // faces first, each new simplex above its faces
        closure.sort_by_key(|c| c.dim());
        for c in closure {
            if values.contains_key(&c) {
                continue;
            }
            let floor = c.facets().map(|f| values[&f]).fold(0.0, f64::max);
            values.insert(c, floor + rng.gen_range(0.0..0.4));
        }
    }
    let max = values.values().cloned().fold(0.0, f64::max);
    FilteredComplex::from_simplices(values.into_iter().collect(), 3, max + 1.0).unwrap()
}

/// rank_at against betti_gf2 at 5 random radii of one random filtration;
/// returns the number of agreeing radii.
pub fn rank_case(seed: u64) -> usize {
    let mut rng = stream(seed);
    let fc = random_filtration(&mut rng, 50);
    let bc = persistence(&fc);
    let top = fc.max_radius() - 1.0;
    (0..5)
        .filter(|_| {
            let eps = rng.gen_range(0.0..top + 0.1);
            let cx = fc.complex_at(eps).unwrap();
            let direct = if cx.is_empty() { BettiProfile::default() } else { betti_gf2(&cx, 2).unwrap() };
            (0..3).all(|k| bc.rank_at(k, eps) == direct.get(k))
        })
        .count()
}
