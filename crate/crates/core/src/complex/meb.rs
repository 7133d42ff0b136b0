//! Minimal enclosing balls of up to four points, the Čech filtration value.

use crate::shapes::Point;

/// Relative slack used when checking that a candidate ball contains a point.
const CONTAIN_SLACK: f64 = 1e-12;

/// Circumradius of a triangle given its squared side lengths, or half the
/// longest side when the triangle is right or obtuse (then the midpoint ball of
/// that side is the minimal enclosing ball).
pub fn triangle_radius(ab2: f64, ac2: f64, bc2: f64) -> f64 {
    let (longest, s1, s2) = if ab2 >= ac2 && ab2 >= bc2 {
        (ab2, ac2, bc2)
    } else if ac2 >= bc2 {
        (ac2, ab2, bc2)
    } else {
        (bc2, ab2, ac2)
    };
    if longest >= s1 + s2 {
        return longest.sqrt() / 2.0;
    }
    // 16 * area^2 from squared sides
    let area16 = 2.0 * (ab2 * ac2 + ac2 * bc2 + bc2 * ab2) - ab2 * ab2 - ac2 * ac2 - bc2 * bc2;
    if area16 <= 0.0 {
        return longest.sqrt() / 2.0;
    }
    (ab2 * ac2 * bc2 / area16).sqrt()
}

/// Čech value of a triangle: its enclosing radius, never below the values of
/// its edges so that the filtration stays monotone under rounding.
pub fn cech_triangle_value(ab2: f64, ac2: f64, bc2: f64) -> f64 {
    let edges = ab2.max(ac2).max(bc2).sqrt() / 2.0;
    triangle_radius(ab2, ac2, bc2).max(edges)
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm2(a: [f64; 3]) -> f64 {
    dot(a, a)
}

/// Circumcentre of an acute triangle in 3-space, from barycentric weights.
fn triangle_center(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> Option<[f64; 3]> {
    let a2 = norm2(sub(b, c));
    let b2 = norm2(sub(a, c));
    let c2 = norm2(sub(a, b));
    let wa = a2 * (b2 + c2 - a2);
    let wb = b2 * (a2 + c2 - b2);
    let wc = c2 * (a2 + b2 - c2);
    let total = wa + wb + wc;
    if total <= 0.0 || !total.is_finite() {
        return None;
    }
    Some([
        (wa * a[0] + wb * b[0] + wc * c[0]) / total,
        (wa * a[1] + wb * b[1] + wc * c[1]) / total,
        (wa * a[2] + wb * b[2] + wc * c[2]) / total,
    ])
}

fn tetra_center(p: [[f64; 3]; 4]) -> Option<[f64; 3]> {
    let a = sub(p[1], p[0]);
    let b = sub(p[2], p[0]);
    let c = sub(p[3], p[0]);
    let det = 2.0 * dot(a, cross(b, c));
    let scale = norm2(a).max(norm2(b)).max(norm2(c));
    if det.abs() <= 1e-12 * scale.powf(1.5) || scale == 0.0 {
        return None;
    }
    let bc = cross(b, c);
    let ca = cross(c, a);
    let ab = cross(a, b);
    let (na, nb, nc) = (norm2(a), norm2(b), norm2(c));
    Some([
        p[0][0] + (na * bc[0] + nb * ca[0] + nc * ab[0]) / det,
        p[0][1] + (na * bc[1] + nb * ca[1] + nc * ab[1]) / det,
        p[0][2] + (na * bc[2] + nb * ca[2] + nc * ab[2]) / det,
    ])
}

fn encloses(center: [f64; 3], radius: f64, pts: &[[f64; 3]]) -> bool {
    let limit = radius * (1.0 + CONTAIN_SLACK) + f64::EPSILON;
    pts.iter().all(|p| norm2(sub(*p, center)).sqrt() <= limit)
}

/// Radius of the smallest ball containing 1 to 4 points.
///
/// The minimal ball is the circumball of some subset of at most four points, so
/// the smallest enclosing candidate among all subsets is exact.
pub fn min_enclosing_radius(points: &[Point]) -> f64 {
    assert!(
        (1..=4).contains(&points.len()),
        "min_enclosing_radius takes 1 to 4 points"
    );
    let p: Vec<[f64; 3]> = points.iter().map(Point::xyz).collect();
    match p.len() {
        1 => 0.0,
        2 => norm2(sub(p[0], p[1])).sqrt() / 2.0,
        3 => triangle_radius(
            norm2(sub(p[0], p[1])),
            norm2(sub(p[0], p[2])),
            norm2(sub(p[1], p[2])),
        ),
        _ => {
            let mut best = f64::INFINITY;
            for i in 0..4 {
                for j in i + 1..4 {
                    let center = [
                        (p[i][0] + p[j][0]) / 2.0,
                        (p[i][1] + p[j][1]) / 2.0,
                        (p[i][2] + p[j][2]) / 2.0,
                    ];
                    let r = norm2(sub(p[i], p[j])).sqrt() / 2.0;
                    if r < best && encloses(center, r, &p) {
                        best = r;
                    }
                }
            }
            for skip in 0..4 {
                let tri: Vec<[f64; 3]> = (0..4).filter(|&k| k != skip).map(|k| p[k]).collect();
                if let Some(center) = triangle_center(tri[0], tri[1], tri[2]) {
                    let r = norm2(sub(tri[0], center)).sqrt();
                    if r < best && encloses(center, r, &p) {
                        best = r;
                    }
                }
            }
            if let Some(center) = tetra_center([p[0], p[1], p[2], p[3]]) {
                let r = norm2(sub(p[0], center)).sqrt();
                if r < best && encloses(center, r, &p) {
                    best = r;
                }
            }
            best
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p2(x: f64, y: f64) -> Point {
        Point::new2(x, y)
    }

    #[test]
    fn single_and_pair() {
        assert_eq!(min_enclosing_radius(&[p2(0.0, 0.0)]), 0.0);
        assert_eq!(min_enclosing_radius(&[p2(0.0, 0.0), p2(2.0, 0.0)]), 1.0);
    }

    #[test]
    fn equilateral_on_unit_circle() {
        let pts: Vec<Point> = (0..3)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
                p2(t.cos(), t.sin())
            })
            .collect();
        assert_abs_diff_eq!(min_enclosing_radius(&pts), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn obtuse_uses_longest_edge() {
        let pts = [p2(0.0, 0.0), p2(4.0, 0.0), p2(1.0, 1.0)];
        assert_abs_diff_eq!(min_enclosing_radius(&pts), 2.0, epsilon = 1e-15);
        // the third point is inside the midpoint ball of the long edge
        assert!(p2(1.0, 1.0).dist(&p2(2.0, 0.0)) <= 2.0);
    }

    #[test]
    fn regular_tetrahedron() {
        let s = 1.0 / 2f64.sqrt();
        let pts = [
            Point::new3(1.0, 0.0, -s),
            Point::new3(-1.0, 0.0, -s),
            Point::new3(0.0, 1.0, s),
            Point::new3(0.0, -1.0, s),
        ];
        // circumradius of a regular tetrahedron with edge a is a*sqrt(6)/4, a = 2
        assert_abs_diff_eq!(
            min_enclosing_radius(&pts),
            2.0 * 6f64.sqrt() / 4.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn four_points_with_interior_point() {
        // square corners plus centre: ball spans the diagonal
        let pts = [p2(0.0, 0.0), p2(1.0, 0.0), p2(1.0, 1.0), p2(0.5, 0.5)];
        assert_abs_diff_eq!(min_enclosing_radius(&pts), 2f64.sqrt() / 2.0, epsilon = 1e-12);
        let square = [p2(0.0, 0.0), p2(1.0, 0.0), p2(1.0, 1.0), p2(0.0, 1.0)];
        assert_abs_diff_eq!(min_enclosing_radius(&square), 2f64.sqrt() / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn at_least_half_diameter() {
        let pts = [
            Point::new3(0.3, -1.2, 0.7),
            Point::new3(2.0, 0.1, -0.4),
            Point::new3(-0.5, 0.9, 1.1),
            Point::new3(0.2, 0.2, -1.5),
        ];
        let r = min_enclosing_radius(&pts);
        for a in &pts {
            for b in &pts {
                assert!(r >= a.dist(b) / 2.0 - 1e-12);
            }
        }
        assert!(r <= pts.iter().flat_map(|a| pts.iter().map(move |b| a.dist(b))).fold(0.0, f64::max));
    }
}
