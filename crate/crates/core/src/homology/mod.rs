//! GF(2) homology: Betti numbers of static complexes, persistence barcodes of
//! filtrations, and exact queries on barcodes.

use std::fmt;
use std::fmt::Write as _;

use crate::complex::{build_filtration, FiltrationKind};
use crate::error::{Error, Result};
use crate::shapes::Point;

mod alpha;
mod betti;
mod cloud;
mod reduce;

pub use alpha::alpha_barcode;
pub use betti::{betti_gf2, gf2_rank};
pub use cloud::cloud_barcode;
pub use reduce::{persistence, persistence_pairs, PersistencePairs};

/// Betti numbers `(b0, b1, b2)` over GF(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BettiProfile {
    pub b0: usize,
    pub b1: usize,
    pub b2: usize,
}

impl BettiProfile {
    pub const fn new(b0: usize, b1: usize, b2: usize) -> Self {
        BettiProfile { b0, b1, b2 }
    }

    pub fn get(&self, dim: usize) -> usize {
        match dim {
            0 => self.b0,
            1 => self.b1,
            2 => self.b2,
            _ => 0,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.b0 as i64 - self.b1 as i64 + self.b2 as i64
    }

    /// Equality restricted to dimensions `0..dims`.
    pub fn agrees_below(&self, other: &BettiProfile, dims: usize) -> bool {
        (0..dims.min(3)).all(|k| self.get(k) == other.get(k))
    }
}

impl fmt::Display for BettiProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.b0, self.b1, self.b2)
    }
}

impl std::str::FromStr for BettiProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<usize> = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidArgument(format!("bad Betti profile {s:?}")))?;
        match parts[..] {
            [b0, b1, b2] => Ok(BettiProfile::new(b0, b1, b2)),
            _ => Err(Error::InvalidArgument(format!("bad Betti profile {s:?}"))),
        }
    }
}

/// A persistence interval `[birth, death)`; `death` may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
}

impl Interval {
    pub fn length(&self) -> f64 {
        self.death - self.birth
    }

    pub fn is_finite(&self) -> bool {
        self.death.is_finite()
    }

    pub fn contains(&self, epsilon: f64) -> bool {
        self.birth <= epsilon && epsilon < self.death
    }
}

/// Multiset of persistence intervals, sorted by `(dim, birth, death)`.
///
/// Dimensions below `complete_below` describe the full filtration of the
/// underlying point cloud; higher dimensions (when present) describe the
/// dimension-truncated complex only.
#[derive(Debug, Clone, PartialEq)]
pub struct Barcode {
    intervals: Vec<Interval>,
    complete_below: usize,
    max_radius: f64,
}

impl Barcode {
    pub fn new(intervals: Vec<Interval>, complete_below: usize) -> Self {
        Self::truncated(intervals, complete_below, f64::INFINITY)
    }

    /// A barcode of a filtration truncated at `max_radius`: infinite deaths
    /// mean "still alive at `max_radius`".
    pub fn truncated(mut intervals: Vec<Interval>, complete_below: usize, max_radius: f64) -> Self {
        intervals.retain(|iv| iv.birth < iv.death);
        intervals.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then(a.birth.total_cmp(&b.birth))
                .then(a.death.total_cmp(&b.death))
        });
        Barcode {
            intervals,
            complete_below,
            max_radius,
        }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn complete_below(&self) -> usize {
        self.complete_below
    }

    pub fn max_radius(&self) -> f64 {
        self.max_radius
    }

    pub fn of_dim(&self, dim: usize) -> impl Iterator<Item = &Interval> + '_ {
        self.intervals.iter().filter(move |iv| iv.dim == dim)
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Number of `dim`-intervals alive at `epsilon` (`birth <= eps < death`).
    pub fn rank_at(&self, dim: usize, epsilon: f64) -> usize {
        self.of_dim(dim).filter(|iv| iv.contains(epsilon)).count()
    }

    pub fn betti_at(&self, epsilon: f64) -> BettiProfile {
        BettiProfile::new(
            self.rank_at(0, epsilon),
            self.rank_at(1, epsilon),
            self.rank_at(2, epsilon),
        )
    }

    /// Keep intervals with `death - birth >= min_length`; infinite ones always stay.
    pub fn filter(&self, min_length: f64) -> Barcode {
        Barcode {
            intervals: self
                .intervals
                .iter()
                .filter(|iv| !iv.is_finite() || iv.length() >= min_length)
                .copied()
                .collect(),
            complete_below: self.complete_below,
            max_radius: self.max_radius,
        }
    }

    /// `[min birth, max death]` of the `dim`-intervals, if any.
    pub fn support(&self, dim: usize) -> Option<(f64, f64)> {
        self.of_dim(dim).fold(None, |acc, iv| match acc {
            None => Some((iv.birth, iv.death)),
            Some((lo, hi)) => Some((lo.min(iv.birth), hi.max(iv.death))),
        })
    }

    /// Sorted, deduplicated interval endpoints strictly inside `(lo, hi)`.
    fn breakpoints(&self, dim: Option<usize>, lo: f64, hi: f64) -> Vec<f64> {
        let mut pts: Vec<f64> = self
            .intervals
            .iter()
            .filter(|iv| dim.map_or(true, |d| iv.dim == d))
            .flat_map(|iv| [iv.birth, iv.death])
            .filter(|&x| x > lo && x < hi)
            .collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// Split `[lo, hi)` into maximal pieces on which every rank is constant.
    pub fn constant_pieces(&self, lo: f64, hi: f64) -> Vec<(f64, f64)> {
        pieces(self.breakpoints(None, lo, hi), lo, hi)
    }

    /// Fraction of `within` on which the `dim`-rank equals `rank`, computed
    /// exactly from interval endpoints.
    pub fn rank_measure(&self, dim: usize, rank: usize, within: (f64, f64)) -> Result<f64> {
        let (lo, hi) = within;
        if !(hi > lo) || !(hi - lo).is_finite() {
            return Err(Error::InvalidArgument(format!(
                "rank_measure needs a non-degenerate finite window, got ({lo}, {hi})"
            )));
        }
        let total: f64 = pieces(self.breakpoints(Some(dim), lo, hi), lo, hi)
            .into_iter()
            .filter(|&(a, _)| self.rank_at(dim, a) == rank)
            .map(|(a, b)| b - a)
            .sum();
        Ok(total / (hi - lo))
    }

    /// CSV rows `dim,birth,death` with `inf` for unbounded deaths.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("dim,birth,death\n");
        for iv in &self.intervals {
            let death = if iv.death.is_finite() {
                crate::io::fmt_f64(iv.death)
            } else {
                "inf".to_string()
            };
            let _ = writeln!(out, "{},{},{}", iv.dim, crate::io::fmt_f64(iv.birth), death);
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut intervals = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with("dim") || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(Error::parse(idx + 1, "expected dim,birth,death"));
            }
            let dim = fields[0]
                .parse()
                .map_err(|_| Error::parse(idx + 1, "bad dimension"))?;
            let birth = fields[1]
                .parse()
                .map_err(|_| Error::parse(idx + 1, "bad birth"))?;
            let death = match fields[2] {
                "inf" => f64::INFINITY,
                s => s.parse().map_err(|_| Error::parse(idx + 1, "bad death"))?,
            };
            intervals.push(Interval { dim, birth, death });
        }
        Ok(Barcode::new(intervals, 3))
    }
}

fn pieces(breaks: Vec<f64>, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(breaks.len() + 1);
    let mut a = lo;
    for b in breaks {
        out.push((a, b));
        a = b;
    }
    out.push((a, hi));
    out
}

/// Persistence barcode of a point cloud's filtration.
///
/// Planar Čech filtrations go through the alpha complex (same barcode, far
/// fewer simplices). Otherwise, up to `max_dim = 2` the implicit cohomology
/// engine computes H0 and H1 without materialising the complex, and
/// `max_dim = 3` builds the explicit complex and reduces its boundary matrix.
pub fn point_cloud_barcode(
    points: &[Point],
    kind: FiltrationKind,
    max_dim: usize,
    max_radius: f64,
) -> Result<Barcode> {
    let planar = !points.is_empty() && points.iter().all(|p| p.dim() == 2);
    if planar && kind == FiltrationKind::Cech && max_dim <= 2 {
        alpha_barcode(points, max_dim, max_radius)
    } else if max_dim <= 2 {
        cloud_barcode(points, kind, max_dim, max_radius)
    } else {
        let fc = build_filtration(points, max_dim, max_radius, kind)?;
        Ok(persistence(&fc))
    }
}
