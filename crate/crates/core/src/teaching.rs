//! Teacher side: teaching-number formulas, constructive point teaching sets,
//! the standard demonstrations and an exact validity check.

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;

use crate::complex::{DemonstrationSet, FiltrationKind};
use crate::error::{Error, Result};
use crate::homology::{point_cloud_barcode, BettiProfile};
use crate::shapes::{torus_point, Point};

/// An interval of admissible ball radii.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Window {
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() || lo < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "epsilon window needs 0 <= lo < hi, got ({lo}, {hi})"
            )));
        }
        Ok(Window {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    /// `[lo, hi)`
    pub fn half_open(lo: f64, hi: f64) -> Result<Self> {
        Window::new(lo, hi, true, false)
    }

    /// `(lo, hi)`
    pub fn open(lo: f64, hi: f64) -> Result<Self> {
        Window::new(lo, hi, false, false)
    }

    pub fn contains(&self, eps: f64) -> bool {
        let above = if self.lo_closed { eps >= self.lo } else { eps > self.lo };
        let below = if self.hi_closed { eps <= self.hi } else { eps < self.hi };
        above && below
    }

    pub fn scaled(&self, factor: f64) -> Window {
        Window {
            lo: self.lo * factor,
            hi: self.hi * factor,
            ..*self
        }
    }

    /// Exact textual form, e.g. `[0.8660254037844386,1)`.
    pub fn to_exact_string(&self) -> String {
        format!(
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            crate::io::fmt_f64(self.lo),
            crate::io::fmt_f64(self.hi),
            if self.hi_closed { ']' } else { ')' }
        )
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("bad epsilon window {s:?}"));
        let lo_closed = match s.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(bad()),
        };
        let hi_closed = match s.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(bad()),
        };
        let inner = &s[1..s.len() - 1];
        let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        Window::new(lo, hi, lo_closed, hi_closed)
    }
}

fn short(x: f64) -> String {
    if (x - x.round()).abs() < 1e-9 {
        format!("{:.1}", x.round())
    } else {
        format!("{x:.4}")
    }
}

impl fmt::Display for Window {
    /// Four decimals, integers as `1.0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            short(self.lo),
            short(self.hi),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Points chosen by a teacher, the radii for which they are meant to work, and
/// the Betti profile they should convey.
#[derive(Debug, Clone, PartialEq)]
pub struct TeachingSet {
    pub points: Vec<Point>,
    pub window: Window,
    pub target: BettiProfile,
}

impl TeachingSet {
    /// Header line `# window=<w> target=<b0,b1,b2>` followed by point rows.
    pub fn to_text(&self) -> String {
        format!(
            "# window={} target={},{},{}\n{}",
            self.window.to_exact_string(),
            self.target.b0,
            self.target.b1,
            self.target.b2,
            crate::io::points_to_csv(&self.points)
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (idx, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty teaching set file"))?;
        let header_line = idx + 1;
        let rest = header
            .trim()
            .strip_prefix('#')
            .ok_or_else(|| Error::parse(header_line, "expected '# window=... target=...' header"))?;
        let mut window = None;
        let mut target = None;
        for field in rest.split_whitespace() {
            if let Some(w) = field.strip_prefix("window=") {
                window = Some(Window::parse(w).map_err(|e| Error::parse(header_line, e.to_string()))?);
            } else if let Some(t) = field.strip_prefix("target=") {
                target = Some(
                    t.parse::<BettiProfile>()
                        .map_err(|e| Error::parse(header_line, e.to_string()))?,
                );
            } else {
                return Err(Error::parse(header_line, format!("unknown header field {field:?}")));
            }
        }
        let window = window.ok_or_else(|| Error::parse(header_line, "missing window="))?;
        let target = target.ok_or_else(|| Error::parse(header_line, "missing target="))?;
        // keep original line numbers for point errors
        let body: String = text
            .lines()
            .enumerate()
            .map(|(i, l)| if i + 1 == header_line { "" } else { l })
            .collect::<Vec<_>>()
            .join("\n");
        let points = crate::io::points_from_csv(&body)?;
        if points.is_empty() {
            return Err(Error::parse(header_line, "teaching set has no points"));
        }
        Ok(TeachingSet {
            points,
            window,
            target,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountKind {
    ExactMinimal,
    UpperBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TeachingCount {
    pub value: u64,
    pub kind: CountKind,
    /// For sequence counts: the most points any one sequence needs.
    pub points_per_sequence_max: Option<u64>,
}

impl TeachingCount {
    fn bound(value: u64) -> Self {
        TeachingCount {
            value,
            kind: CountKind::UpperBound,
            points_per_sequence_max: None,
        }
    }
}

/// Three equidistant points on a circle of radius `r`, taught with
/// `eps in [sqrt(3)/2 r, r)`. Three is the minimal teaching number for a loop.
pub fn circle_teaching_set(r: f64) -> Result<(TeachingSet, TeachingCount)> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    let points = (0..3)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / 3.0;
            Point::new2(r * t.cos(), r * t.sin())
        })
        .collect();
    let set = TeachingSet {
        points,
        window: Window::half_open(3f64.sqrt() / 2.0 * r, r)?,
        target: BettiProfile::new(1, 1, 0),
    };
    let count = TeachingCount {
        value: 3,
        kind: CountKind::ExactMinimal,
        points_per_sequence_max: None,
    };
    Ok((set, count))
}

/// How the 51-point torus count is assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusCountBreakdown {
    /// Three tube points rotated nine times around the core circle.
    pub rotated_base: u64,
    /// One filler per gap left between neighbouring tube circles.
    pub gap_fillers: u64,
    /// Points dropped from the over-taught core circle.
    pub removed_from_core: u64,
}

impl TorusCountBreakdown {
    pub fn before_removal(&self) -> u64 {
        self.rotated_base + self.gap_fillers
    }

    pub fn total(&self) -> u64 {
        self.before_removal() - self.removed_from_core
    }
}

pub fn torus_teaching_breakdown() -> TorusCountBreakdown {
    TorusCountBreakdown {
        rotated_base: 3 * 9,
        gap_fillers: 27,
        removed_from_core: 3,
    }
}

pub fn torus_teaching_count() -> TeachingCount {
    TeachingCount::bound(torus_teaching_breakdown().total())
}

/// Upper bound `49g + 2` for a closed orientable genus-`g` surface.
pub fn min_teaching_number_closed(g: i64) -> Result<TeachingCount> {
    if g < 1 {
        return Err(Error::InvalidArgument(format!("genus must be >= 1, got {g}")));
    }
    Ok(TeachingCount::bound(49 * g as u64 + 2))
}

/// Upper bound `49g + 2 - b` for genus `g` with `b` boundary circles.
pub fn min_teaching_number_with_boundary(g: i64, b: i64) -> Result<TeachingCount> {
    let closed = min_teaching_number_closed(g)?;
    if b < 0 || b as u64 > closed.value - 1 {
        return Err(Error::InvalidArgument(format!(
            "boundary count must lie in [0, {}], got {b}",
            closed.value - 1
        )));
    }
    Ok(TeachingCount::bound(closed.value - b as u64))
}

/// `3g - 3` sequences of at most 4 points each, one per pants curve.
pub fn pants_decomposition_count(g: i64) -> Result<TeachingCount> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!(
            "pants decompositions need genus >= 2, got {g}"
        )));
    }
    Ok(TeachingCount {
        value: 3 * g as u64 - 3,
        kind: CountKind::UpperBound,
        points_per_sequence_max: Some(4),
    })
}

/// Ring grid on an embedded torus: `k_tube` equidistant points on each of
/// `k_rings` tube circles. With `stagger`, a second set of rings sits halfway
/// between the first, rotated by half a tube step (the gap fillers), doubling
/// the point count. The window runs from half the tube chord to `r1`.
pub fn torus_grid_teaching_set(
    r1: f64,
    r2: f64,
    k_tube: usize,
    k_rings: usize,
    stagger: bool,
) -> Result<TeachingSet> {
    if !(r1 > 0.0 && r2 > r1 && r2.is_finite()) {
        return Err(Error::InvalidShape(format!(
            "torus needs 0 < r1 < r2, got r1={r1}, r2={r2}"
        )));
    }
    if k_tube < 3 || k_rings < 3 {
        return Err(Error::InvalidArgument(format!(
            "need k_tube >= 3 and k_rings >= 3, got {k_tube}, {k_rings}"
        )));
    }
    let tube_step = 2.0 * PI / k_tube as f64;
    let ring_step = 2.0 * PI / k_rings as f64;
    let mut points = Vec::with_capacity(k_tube * k_rings * if stagger { 2 } else { 1 });
    for j in 0..k_rings {
        for i in 0..k_tube {
            points.push(torus_point(r1, r2, [0.0; 3], j as f64 * ring_step, i as f64 * tube_step));
        }
    }
    if stagger {
        for j in 0..k_rings {
            for i in 0..k_tube {
                points.push(torus_point(
                    r1,
                    r2,
                    [0.0; 3],
                    (j as f64 + 0.5) * ring_step,
                    (i as f64 + 0.5) * tube_step,
                ));
            }
        }
    }
    let half_chord = r1 * (PI / k_tube as f64).sin();
    Ok(TeachingSet {
        points,
        window: Window::open(half_chord, r1)?,
        target: BettiProfile::new(1, 2, 1),
    })
}

/// Outcome of [`verify_teaching_set`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub valid: bool,
    /// First sub-window on which the learned Betti profile equals the target.
    pub witness: Option<Window>,
}

/// Is there a radius in the window at which the Čech nerve of the points has
/// the target Betti profile? Checked exactly on the rank-constant pieces of
/// the barcode, never by sampling radii.
pub fn verify_teaching_set(ts: &TeachingSet) -> Result<Verdict> {
    if ts.points.is_empty() {
        return Ok(Verdict {
            valid: false,
            witness: None,
        });
    }
    let ambient = ts.points[0].dim();
    let max_dim = if ambient == 3 { 3 } else { 2 };
    if ambient == 2 && ts.target.b2 != 0 {
        // a union of planar disks has no voids
        return Ok(Verdict {
            valid: false,
            witness: None,
        });
    }
    let w = ts.window;
    let bc = point_cloud_barcode(&ts.points, FiltrationKind::Cech, max_dim, w.hi)?;
    let dims = bc.complete_below();
    for (a, b) in bc.constant_pieces(0.0, w.hi) {
        let lo = a.max(w.lo);
        let hi = b.min(w.hi);
        if lo >= hi {
            continue;
        }
        if bc.betti_at(a).agrees_below(&ts.target, dims) {
            let lo_closed = if lo == w.lo { w.lo_closed } else { true };
            return Ok(Verdict {
                valid: true,
                witness: Some(Window {
                    lo,
                    hi,
                    lo_closed,
                    hi_closed: false,
                }),
            });
        }
    }
    if w.hi_closed && bc.betti_at(w.hi).agrees_below(&ts.target, dims) {
        return Ok(Verdict {
            valid: true,
            witness: Some(Window {
                lo: w.hi,
                hi: w.hi,
                lo_closed: true,
                hi_closed: true,
            }),
        });
    }
    Ok(Verdict {
        valid: false,
        witness: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridCandidate {
    pub k_tube: usize,
    pub k_rings: usize,
    pub stagger: bool,
    pub size: usize,
    pub valid: bool,
}

/// Verify every ring grid with `k_tube` in `tube_range` and `k_rings` in
/// `ring_range`, with and without stagger. Rows are ordered by
/// `(size, k_tube, k_rings, stagger)`.
pub fn torus_grid_search(
    r1: f64,
    r2: f64,
    tube_range: std::ops::RangeInclusive<usize>,
    ring_range: std::ops::RangeInclusive<usize>,
) -> Result<Vec<GridCandidate>> {
    let mut jobs = Vec::new();
    for k_tube in tube_range {
        for k_rings in ring_range.clone() {
            for stagger in [false, true] {
                jobs.push((k_tube, k_rings, stagger));
            }
        }
    }
    let mut rows = jobs
        .into_par_iter()
        .map(|(k_tube, k_rings, stagger)| {
            let ts = torus_grid_teaching_set(r1, r2, k_tube, k_rings, stagger)?;
            let valid = verify_teaching_set(&ts)?.valid;
            Ok(GridCandidate {
                k_tube,
                k_rings,
                stagger,
                size: ts.points.len(),
                valid,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|c| (c.size, c.k_tube, c.k_rings, c.stagger));
    Ok(rows)
}

/// `{[a, b, c, a]}`: a loop through three points.
pub fn circle_demo() -> DemonstrationSet {
    DemonstrationSet::new().with_sequence(&["a", "b", "c", "a"])
}

/// Four loops over nine points, the last repeating the first.
pub fn torus_demo() -> DemonstrationSet {
    DemonstrationSet::new().with_sequences(&[
        &["a1", "a2", "a3", "a1"],
        &["b1", "b2", "b3", "b1"],
        &["c1", "c2", "c3", "c1"],
        &["a1", "a2", "a3", "a1"],
    ])
}

/// Two strips sharing the endpoints `a1, b1, a6, b6`.
pub fn pants_demo() -> DemonstrationSet {
    DemonstrationSet::new()
        .with_sequences(&[&["a1", "a2", "a3", "a6"], &["b1", "b2", "b3", "b6"]])
        .with_sequences(&[&["a1", "a4", "a5", "a6"], &["b1", "b4", "b5", "b6"]])
}

/// Gluing two boundary loops that share the point `b1`.
pub fn pants_gluing_demo() -> DemonstrationSet {
    DemonstrationSet::new().with_sequences(&[&["b1", "b2", "b3", "b1"], &["b1", "b4", "b5", "b1"]])
}
