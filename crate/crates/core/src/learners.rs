//! Learner side: the ball-union and demonstration learners, the feasibility
//! test, and three policies for choosing the ball radius.

use crate::complex::{build_demo_complex, build_filtration, DemoComplex, DemonstrationSet, FiltrationKind};
use crate::error::{Error, Result};
use crate::homology::{betti_gf2, point_cloud_barcode, Barcode, BettiProfile};
use crate::shapes::{Point, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Policy {
    Taught,
    Uniform,
    Persistent,
}

impl Policy {
    pub fn name(&self) -> &'static str {
        match self {
            Policy::Taught => "taught",
            Policy::Uniform => "uniform",
            Policy::Persistent => "persistent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearnerOutcome {
    pub policy: Policy,
    /// Probability of learning the right geometry (0 or 1 except for uniform).
    pub success: f64,
    pub chosen_epsilon: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityVerdict {
    pub feasible: bool,
    pub witness_epsilon: Option<f64>,
}

impl FeasibilityVerdict {
    const NO: FeasibilityVerdict = FeasibilityVerdict {
        feasible: false,
        witness_epsilon: None,
    };
}

/// How barcodes are computed for the radius policies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolicySettings {
    pub kind: FiltrationKind,
    pub max_radius: f64,
    pub max_dim: usize,
    pub min_bar_length: f64,
}

impl Default for PolicySettings {
    fn default() -> Self {
        PolicySettings {
            kind: FiltrationKind::Cech,
            max_radius: 2.0,
            max_dim: 2,
            min_bar_length: 0.05,
        }
    }
}

/// Planar shapes only need the 2-skeleton; surfaces in space need tetrahedra
/// for their voids.
fn dims_for(shape: &Shape) -> usize {
    if shape.ambient_dim() == 3 {
        3
    } else {
        2
    }
}

/// Betti profile of the Čech nerve at `epsilon`: what a ball-union learner
/// sees.
pub fn learn_union_of_balls(points: &[Point], epsilon: f64, max_dim: usize) -> Result<BettiProfile> {
    if points.is_empty() {
        return Err(Error::EmptyInput("points"));
    }
    let fc = build_filtration(points, max_dim, epsilon, FiltrationKind::Cech)?;
    // the top dimension is not exact on a truncated nerve
    betti_gf2(&fc.complex_at(epsilon)?, max_dim.saturating_sub(1))
}

/// Complex and Betti profile a demonstration learner builds.
pub fn learn_from_demonstration(demo: &DemonstrationSet) -> Result<(DemoComplex, BettiProfile)> {
    let cx = build_demo_complex(demo)?;
    let betti = betti_gf2(&cx.to_static(), 2)?;
    Ok((cx, betti))
}

/// Is there some radius below the reach at which the ball union has the
/// shape's homotopy type?
pub fn feasible(points: &[Point], shape: &Shape) -> Result<FeasibilityVerdict> {
    if points.is_empty() {
        return Ok(FeasibilityVerdict::NO);
    }
    let tau = shape.reach_profile().reach;
    let bc = point_cloud_barcode(points, FiltrationKind::Cech, dims_for(shape), tau)?;
    Ok(feasible_from_barcode(&bc, shape))
}

/// Feasibility read off a barcode that is exact on `(0, reach)`.
pub fn feasible_from_barcode(bc: &Barcode, shape: &Shape) -> FeasibilityVerdict {
    let tau = shape.reach_profile().reach;
    let target = shape.target_betti();
    let dims = bc.complete_below();
    bc.constant_pieces(0.0, tau)
        .into_iter()
        .find(|&(a, _)| bc.betti_at(a).agrees_below(&target, dims))
        .map_or(FeasibilityVerdict::NO, |(a, b)| FeasibilityVerdict {
            feasible: true,
            witness_epsilon: Some(0.5 * (a + b)),
        })
}

/// A learner told the topology by a demonstration succeeds exactly when the
/// sample admits a good radius.
pub fn taught_policy(points: &[Point], shape: &Shape, taught: &DemonstrationSet) -> Result<LearnerOutcome> {
    check_teacher(shape, taught)?;
    Ok(taught_outcome(feasible(points, shape)?))
}

pub(crate) fn check_teacher(shape: &Shape, taught: &DemonstrationSet) -> Result<()> {
    let (_, betti) = learn_from_demonstration(taught)?;
    let target = shape.target_betti();
    if betti.b1 != target.b1 {
        return Err(Error::TeacherContract {
            taught: betti.b1,
            target: target.b1,
        });
    }
    Ok(())
}

pub fn taught_outcome(v: FeasibilityVerdict) -> LearnerOutcome {
    LearnerOutcome {
        policy: Policy::Taught,
        success: if v.feasible { 1.0 } else { 0.0 },
        chosen_epsilon: v.witness_epsilon,
    }
}

pub fn uniform_policy(points: &[Point], shape: &Shape) -> Result<LearnerOutcome> {
    let bc = policy_barcode(points, &PolicySettings::default())?;
    Ok(uniform_from_barcode(&bc, shape, 0.05))
}

pub fn persistent_policy(points: &[Point], shape: &Shape) -> Result<LearnerOutcome> {
    let bc = policy_barcode(points, &PolicySettings::default())?;
    Ok(persistent_from_barcode(&bc, shape, 0.05))
}

pub fn policy_barcode(points: &[Point], s: &PolicySettings) -> Result<Barcode> {
    if points.is_empty() {
        return Err(Error::EmptyInput("points"));
    }
    point_cloud_barcode(points, s.kind, s.max_dim, s.max_radius)
}

/// Radius drawn uniformly from the support of the long H1 bars; the success
/// probability is the exact share of that support where the learned profile
/// is right and the radius is below the reach.
pub fn uniform_from_barcode(bc: &Barcode, shape: &Shape, min_bar_length: f64) -> LearnerOutcome {
    let fail = LearnerOutcome {
        policy: Policy::Uniform,
        success: 0.0,
        chosen_epsilon: None,
    };
    let Some((lo, hi)) = bc.filter(min_bar_length).support(1) else {
        return fail;
    };
    let hi = if hi.is_finite() { hi } else { bc.max_radius() };
    if !(hi > lo) || !hi.is_finite() {
        return fail;
    }
    let tau = shape.reach_profile().reach;
    let target = shape.target_betti();
    let dims = bc.complete_below();
    let good: f64 = bc
        .constant_pieces(lo, hi.min(tau).max(lo))
        .into_iter()
        .filter(|&(a, b)| b > a && bc.betti_at(a).agrees_below(&target, dims))
        .map(|(a, b)| b - a)
        .sum();
    LearnerOutcome {
        success: (good / (hi - lo)).clamp(0.0, 1.0),
        ..fail
    }
}

/// Radius at the middle of the longest finite long H1 bar.
pub fn persistent_from_barcode(bc: &Barcode, shape: &Shape, min_bar_length: f64) -> LearnerOutcome {
    let filtered = bc.filter(min_bar_length);
    let best = filtered
        .of_dim(1)
        .filter(|iv| iv.is_finite())
        .fold(None, |best: Option<(f64, f64)>, iv| match best {
            Some((b, d)) if d - b >= iv.length() => Some((b, d)),
            _ => Some((iv.birth, iv.death)),
        });
    let Some((b, d)) = best else {
        return LearnerOutcome {
            policy: Policy::Persistent,
            success: 0.0,
            chosen_epsilon: None,
        };
    };
    let eps = 0.5 * (b + d);
    let tau = shape.reach_profile().reach;
    let ok = eps < tau && bc.betti_at(eps).agrees_below(&shape.target_betti(), bc.complete_below());
    LearnerOutcome {
        policy: Policy::Persistent,
        success: if ok { 1.0 } else { 0.0 },
        chosen_epsilon: Some(eps),
    }
}
