//! Target manifolds and regions: sampling, membership and reach scales.

use std::f64::consts::PI;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::homology::BettiProfile;
use crate::rng;

/// Tolerance used by [`Shape::contains`] for the curve and surface shapes.
pub const SURFACE_TOLERANCE: f64 = 1e-9;

/// A point in R^2 or R^3. Planar points carry `z = 0` internally so that all
/// geometry can run in three dimensions.
#[derive(Clone, Copy, PartialEq)]
pub struct Point {
    xyz: [f64; 3],
    dim: u8,
}

impl Point {
    pub fn new2(x: f64, y: f64) -> Self {
        Point {
            xyz: [x, y, 0.0],
            dim: 2,
        }
    }

    pub fn new3(x: f64, y: f64, z: f64) -> Self {
        Point {
            xyz: [x, y, z],
            dim: 3,
        }
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite coordinate in {coords:?}"
            )));
        }
        match *coords {
            [x, y] => Ok(Point::new2(x, y)),
            [x, y, z] => Ok(Point::new3(x, y, z)),
            _ => Err(Error::InvalidArgument(format!(
                "points must have 2 or 3 coordinates, got {}",
                coords.len()
            ))),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn coords(&self) -> &[f64] {
        &self.xyz[..self.dim as usize]
    }

    /// Coordinates padded to three dimensions.
    pub fn xyz(&self) -> [f64; 3] {
        self.xyz
    }

    pub fn x(&self) -> f64 {
        self.xyz[0]
    }

    pub fn y(&self) -> f64 {
        self.xyz[1]
    }

    pub fn dist2(&self, other: &Point) -> f64 {
        let dx = self.xyz[0] - other.xyz[0];
        let dy = self.xyz[1] - other.xyz[1];
        let dz = self.xyz[2] - other.xyz[2];
        dx * dx + dy * dy + dz * dz
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist2(other).sqrt()
    }

    pub fn norm(&self) -> f64 {
        self.xyz.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn scale(&self, factor: f64) -> Point {
        Point {
            xyz: self.xyz.map(|c| c * factor),
            dim: self.dim,
        }
    }

    pub fn translate(&self, offset: [f64; 3]) -> Point {
        Point {
            xyz: [
                self.xyz[0] + offset[0],
                self.xyz[1] + offset[1],
                if self.dim == 3 { self.xyz[2] + offset[2] } else { 0.0 },
            ],
            dim: self.dim,
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords())
    }
}

/// Planar barbell-shaped annulus: `Outer \ interior(Hole)`.
///
/// `Outer` is two disks of radius `lobe_outer_radius` centred at
/// `(±lobe_offset, 0)` joined by the band `[-d, d] x [-h_o, h_o]`; `Hole` is the
/// same construction with `lobe_hole_radius` and `hole_neck_halfwidth`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Barbell {
    pub lobe_offset: f64,
    pub lobe_outer_radius: f64,
    pub lobe_hole_radius: f64,
    pub outer_neck_halfwidth: f64,
    pub hole_neck_halfwidth: f64,
}

impl Default for Barbell {
    fn default() -> Self {
        Barbell {
            lobe_offset: 1.4,
            lobe_outer_radius: 1.1,
            lobe_hole_radius: 1.0,
            outer_neck_halfwidth: 0.36,
            hole_neck_halfwidth: 0.26,
        }
    }
}

impl Barbell {
    fn validate(&self) -> Result<()> {
        let Barbell {
            lobe_offset: d,
            lobe_outer_radius: big_r,
            lobe_hole_radius: rho,
            outer_neck_halfwidth: h_o,
            hole_neck_halfwidth: w_i,
        } = *self;
        let all_finite = [d, big_r, rho, h_o, w_i].iter().all(|v| v.is_finite());
        if !all_finite || d <= 0.0 {
            return Err(Error::InvalidShape("barbell lobe offset must be > 0".into()));
        }
        if !(0.0 < w_i && w_i < rho && rho < big_r) {
            return Err(Error::InvalidShape(format!(
                "barbell needs 0 < hole_neck_halfwidth < lobe_hole_radius < lobe_outer_radius, got {w_i}, {rho}, {big_r}"
            )));
        }
        if !(w_i < h_o && h_o < big_r) {
            return Err(Error::InvalidShape(format!(
                "barbell needs hole_neck_halfwidth < outer_neck_halfwidth < lobe_outer_radius, got {w_i}, {h_o}, {big_r}"
            )));
        }
        Ok(())
    }

    fn in_outer(&self, x: f64, y: f64) -> bool {
        let r2 = self.lobe_outer_radius * self.lobe_outer_radius;
        let d = self.lobe_offset;
        (x - d).powi(2) + y * y <= r2
            || (x + d).powi(2) + y * y <= r2
            || (x.abs() <= d && y.abs() <= self.outer_neck_halfwidth)
    }

    fn in_hole_interior(&self, x: f64, y: f64) -> bool {
        let r2 = self.lobe_hole_radius * self.lobe_hole_radius;
        let d = self.lobe_offset;
        (x - d).powi(2) + y * y < r2
            || (x + d).powi(2) + y * y < r2
            || (x.abs() < d && y.abs() < self.hole_neck_halfwidth)
    }

    pub fn contains_xy(&self, x: f64, y: f64) -> bool {
        self.in_outer(x, y) && !self.in_hole_interior(x, y)
    }

    /// Axis-aligned bounding box `(x_min, x_max, y_min, y_max)`.
    pub fn bounding_box(&self) -> (f64, f64, f64, f64) {
        let half_w = self.lobe_offset + self.lobe_outer_radius;
        let half_h = self.lobe_outer_radius.max(self.outer_neck_halfwidth);
        (-half_w, half_w, -half_h, half_h)
    }
}

/// A target shape. Values are validated on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Circle {
        radius: f64,
        center: [f64; 2],
    },
    /// Surface swept by a circle of radius `tube_radius` rotated around a core
    /// circle of radius `core_radius` in the xy-plane.
    Torus {
        tube_radius: f64,
        core_radius: f64,
        center: [f64; 3],
    },
    BarbellAnnulus(Barbell),
}

/// Bottleneck scale `reach` and homotopy-preserving thickening scale
/// `topological_reach`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReachProfile {
    pub reach: f64,
    pub topological_reach: f64,
}

impl Shape {
    pub fn circle(radius: f64) -> Result<Self> {
        let s = Shape::Circle {
            radius,
            center: [0.0, 0.0],
        };
        s.validate()?;
        Ok(s)
    }

    pub fn torus(tube_radius: f64, core_radius: f64) -> Result<Self> {
        let s = Shape::Torus {
            tube_radius,
            core_radius,
            center: [0.0; 3],
        };
        s.validate()?;
        Ok(s)
    }

    pub fn barbell(params: Barbell) -> Result<Self> {
        params.validate()?;
        Ok(Shape::BarbellAnnulus(params))
    }

    pub fn default_barbell() -> Self {
        Shape::BarbellAnnulus(Barbell::default())
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Shape::Circle { radius, center } => {
                if !(radius.is_finite() && radius > 0.0) || center.iter().any(|c| !c.is_finite())
                {
                    return Err(Error::InvalidShape(format!(
                        "circle radius must be positive, got {radius}"
                    )));
                }
                Ok(())
            }
            Shape::Torus {
                tube_radius,
                core_radius,
                center,
            } => {
                if !(tube_radius > 0.0 && core_radius > tube_radius && core_radius.is_finite())
                    || center.iter().any(|c| !c.is_finite())
                {
                    return Err(Error::InvalidShape(format!(
                        "torus needs 0 < tube_radius < core_radius, got {tube_radius}, {core_radius}"
                    )));
                }
                Ok(())
            }
            Shape::BarbellAnnulus(b) => b.validate(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Shape::Circle { .. } => "circle",
            Shape::Torus { .. } => "torus",
            Shape::BarbellAnnulus(_) => "barbell",
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            Shape::Circle { .. } | Shape::BarbellAnnulus(_) => 2,
            Shape::Torus { .. } => 3,
        }
    }

    pub fn target_betti(&self) -> BettiProfile {
        match self {
            Shape::Circle { .. } | Shape::BarbellAnnulus(_) => BettiProfile::new(1, 1, 0),
            Shape::Torus { .. } => BettiProfile::new(1, 2, 1),
        }
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        if p.dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: p.dim(),
            });
        }
        Ok(match *self {
            Shape::Circle { radius, center } => {
                let r = (p.x() - center[0]).hypot(p.y() - center[1]);
                (r - radius).abs() <= SURFACE_TOLERANCE
            }
            Shape::Torus {
                tube_radius,
                core_radius,
                center,
            } => {
                let [x, y, z] = p.xyz();
                let (qx, qy, qz) = (x - center[0], y - center[1], z - center[2]);
                let ring = qx.hypot(qy) - core_radius;
                (ring.hypot(qz) - tube_radius).abs() <= SURFACE_TOLERANCE
            }
            Shape::BarbellAnnulus(b) => b.contains_xy(p.x(), p.y()),
        })
    }

    /// Draw `n` points uniformly from the shape (arc length, surface area or
    /// planar area). Deterministic in `(self, n, seed)`.
    pub fn sample_uniform(&self, n: usize, seed: u64) -> Vec<Point> {
        let mut rng = rng::stream(seed);
        let mut out = Vec::with_capacity(n);
        match *self {
            Shape::Circle { radius, center } => {
                for _ in 0..n {
                    let theta = rng.gen_range(0.0..2.0 * PI);
                    out.push(Point::new2(
                        center[0] + radius * theta.cos(),
                        center[1] + radius * theta.sin(),
                    ));
                }
            }
            Shape::Torus {
                tube_radius,
                core_radius,
                center,
            } => {
                // area element is proportional to (R + r cos phi)
                while out.len() < n {
                    let theta = rng.gen_range(0.0..2.0 * PI);
                    let phi = rng.gen_range(0.0..2.0 * PI);
                    let accept: f64 = rng.gen_range(0.0..1.0);
                    let w = (core_radius + tube_radius * phi.cos()) / (core_radius + tube_radius);
                    if accept < w {
                        out.push(torus_point(tube_radius, core_radius, center, theta, phi));
                    }
                }
            }
            Shape::BarbellAnnulus(b) => {
                let (x0, x1, y0, y1) = b.bounding_box();
                while out.len() < n {
                    let x = rng.gen_range(x0..x1);
                    let y = rng.gen_range(y0..y1);
                    if b.contains_xy(x, y) {
                        out.push(Point::new2(x, y));
                    }
                }
            }
        }
        out
    }

    pub fn reach_profile(&self) -> ReachProfile {
        match *self {
            Shape::Circle { radius, .. } => ReachProfile {
                reach: radius,
                topological_reach: radius,
            },
            Shape::Torus {
                tube_radius,
                core_radius,
                ..
            } => ReachProfile {
                reach: tube_radius.min(core_radius - tube_radius),
                topological_reach: tube_radius,
            },
            Shape::BarbellAnnulus(b) => ReachProfile {
                reach: b.hole_neck_halfwidth,
                topological_reach: b.lobe_hole_radius,
            },
        }
    }
}

/// Point on a torus at core angle `theta` and tube angle `phi`.
pub fn torus_point(tube: f64, core: f64, center: [f64; 3], theta: f64, phi: f64) -> Point {
    let ring = core + tube * phi.cos();
    Point::new3(
        center[0] + ring * theta.cos(),
        center[1] + ring * theta.sin(),
        center[2] + tube * phi.sin(),
    )
}
