//! Seeded Monte Carlo studies on sampled shapes: feasibility against sample
//! size, two-loop barcode statistics, and accuracy of the radius policies.
//!
//! Every trial draws its own sample from `derive(seed, [size, trial])`, so rows
//! never depend on scheduling or on which other sizes are in the run.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::complex::FiltrationKind;
use crate::error::{Error, Result};
use crate::homology::{point_cloud_barcode, Barcode};
use crate::io::fmt_f64;
use crate::learners::{feasible_from_barcode, persistent_from_barcode, taught_outcome, uniform_from_barcode};
use crate::rng::derive;
use crate::shapes::{Point, Shape};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub shape: Shape,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub max_radius: f64,
    pub min_bar_length: f64,
    pub max_dim: usize,
    pub kind: FiltrationKind,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            shape: Shape::default_barbell(),
            sizes: vec![50, 100, 150, 200, 300, 400, 500],
            trials: 20,
            seed: 42,
            max_radius: 2.0,
            min_bar_length: 0.05,
            max_dim: 2,
            kind: FiltrationKind::Cech,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.shape.validate()?;
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.trials == 0 {
            return bad("trials must be >= 1".into());
        }
        if self.sizes.is_empty() {
            return bad("sizes must not be empty".into());
        }
        if self.sizes[0] == 0 || self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!("sizes must be positive and strictly increasing, got {:?}", self.sizes));
        }
        let tau = self.shape.reach_profile().reach;
        if !(self.max_radius.is_finite() && self.max_radius >= tau) {
            return bad(format!("max_radius must be finite and >= reach {tau}, got {}", self.max_radius));
        }
        if !(self.min_bar_length >= 0.0 && self.min_bar_length.is_finite()) {
            return bad(format!("min_bar_length must be >= 0, got {}", self.min_bar_length));
        }
        if !(1..=3).contains(&self.max_dim) {
            return bad(format!("max_dim must be 1, 2 or 3, got {}", self.max_dim));
        }
        Ok(())
    }

    fn jobs(&self) -> Vec<(usize, usize)> {
        self.sizes
            .iter()
            .flat_map(|&s| (0..self.trials).map(move |t| (s, t)))
            .collect()
    }
}

pub fn trial_seed(seed: u64, size: usize, trial: usize) -> u64 {
    derive(seed, &[size as u64, trial as u64])
}

pub fn trial_points(cfg: &ExperimentConfig, size: usize, trial: usize) -> Vec<Point> {
    cfg.shape.sample_uniform(size, trial_seed(cfg.seed, size, trial))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityRow {
    pub size: usize,
    pub trial: usize,
    pub feasible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarcodeRow {
    pub size: usize,
    pub trial: usize,
    pub two_loop_fraction: f64,
    pub h1_bars: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResultRow {
    pub size: usize,
    pub trial: usize,
    pub feasible: bool,
    pub taught_acc: f64,
    pub uniform_acc: f64,
    pub persistent_acc: f64,
    pub two_loop_fraction: f64,
    pub h1_bar_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyRow {
    pub size: usize,
    pub taught: f64,
    pub uniform: f64,
    pub persistent: f64,
}

/// Long-bar count and the share of the long-H1 support carrying two loops.
pub fn two_loop_statistics(bc: &Barcode, min_bar_length: f64) -> (f64, usize) {
    let long = bc.filter(min_bar_length);
    let count = long.of_dim(1).count();
    let fraction = match long.support(1) {
        Some((lo, hi)) => {
            let hi = if hi.is_finite() { hi } else { bc.max_radius() };
            if hi > lo {
                long.rank_measure(1, 2, (lo, hi)).unwrap_or(0.0)
            } else {
                0.0
            }
        }
        None => 0.0,
    };
    (fraction, count)
}

fn barcode_for(cfg: &ExperimentConfig, points: &[Point], max_radius: f64) -> Result<Barcode> {
    point_cloud_barcode(points, cfg.kind, cfg.max_dim, max_radius)
}

/// One row per `(size, trial)`; feasibility only needs the filtration up to
/// the reach.
pub fn feasibility_study(cfg: &ExperimentConfig) -> Result<Vec<FeasibilityRow>> {
    cfg.validate()?;
    let tau = cfg.shape.reach_profile().reach;
    cfg.jobs()
        .into_par_iter()
        .map(|(size, trial)| {
            let bc = barcode_for(cfg, &trial_points(cfg, size, trial), tau)?;
            Ok(FeasibilityRow {
                size,
                trial,
                feasible: feasible_from_barcode(&bc, &cfg.shape).feasible,
            })
        })
        .collect()
}

/// `(size, rate)` in size order.
pub fn feasibility_rates(rows: &[FeasibilityRow]) -> Vec<(usize, f64)> {
    group_means(rows, |r| r.size, |r| if r.feasible { 1.0 } else { 0.0 })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BarcodeStudy {
    pub size: usize,
    pub rows: Vec<BarcodeRow>,
    /// Barcode of trial 0, for plotting.
    pub example: Barcode,
    pub mean_two_loop_fraction: f64,
    /// Population variance over trials.
    pub variance_two_loop_fraction: f64,
}

impl BarcodeStudy {
    pub fn share_with_bars(&self, count: usize) -> f64 {
        self.rows.iter().filter(|r| r.h1_bars == count).count() as f64 / self.rows.len() as f64
    }
}

pub fn barcode_study(cfg: &ExperimentConfig, size: usize) -> Result<BarcodeStudy> {
    let cfg = ExperimentConfig {
        sizes: vec![size],
        ..cfg.clone()
    };
    cfg.validate()?;
    let results: Vec<(BarcodeRow, Barcode)> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let bc = barcode_for(&cfg, &trial_points(&cfg, size, trial), cfg.max_radius)?;
            let (two_loop_fraction, h1_bars) = two_loop_statistics(&bc, cfg.min_bar_length);
            let row = BarcodeRow {
                size,
                trial,
                two_loop_fraction,
                h1_bars,
            };
            Ok((row, bc))
        })
        .collect::<Result<_>>()?;
    let fractions: Vec<f64> = results.iter().map(|(r, _)| r.two_loop_fraction).collect();
    let (mean, variance) = mean_variance(&fractions);
    let mut it = results.into_iter();
    let (first, example) = it.next().expect("trials >= 1");
    let mut rows = vec![first];
    rows.extend(it.map(|(r, _)| r));
    Ok(BarcodeStudy {
        size,
        rows,
        example,
        mean_two_loop_fraction: mean,
        variance_two_loop_fraction: variance,
    })
}

/// Evaluate all three policies on every trial from one shared barcode.
pub fn accuracy_study(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    cfg.validate()?;
    cfg.jobs()
        .into_par_iter()
        .map(|(size, trial)| {
            let bc = barcode_for(cfg, &trial_points(cfg, size, trial), cfg.max_radius)?;
            let verdict = feasible_from_barcode(&bc, &cfg.shape);
            let (two_loop_fraction, h1_bar_count) = two_loop_statistics(&bc, cfg.min_bar_length);
            Ok(ResultRow {
                size,
                trial,
                feasible: verdict.feasible,
                taught_acc: taught_outcome(verdict).success,
                uniform_acc: uniform_from_barcode(&bc, &cfg.shape, cfg.min_bar_length).success,
                persistent_acc: persistent_from_barcode(&bc, &cfg.shape, cfg.min_bar_length).success,
                two_loop_fraction,
                h1_bar_count,
            })
        })
        .collect()
}

pub fn accuracy_table(rows: &[ResultRow]) -> Vec<AccuracyRow> {
    let taught = group_means(rows, |r| r.size, |r| r.taught_acc);
    let uniform = group_means(rows, |r| r.size, |r| r.uniform_acc);
    let persistent = group_means(rows, |r| r.size, |r| r.persistent_acc);
    taught
        .into_iter()
        .zip(uniform)
        .zip(persistent)
        .map(|(((size, t), (_, u)), (_, p))| AccuracyRow {
            size,
            taught: t,
            uniform: u,
            persistent: p,
        })
        .collect()
}

fn group_means<T>(rows: &[T], key: impl Fn(&T) -> usize, val: impl Fn(&T) -> f64) -> Vec<(usize, f64)> {
    let mut out: Vec<(usize, f64, usize)> = Vec::new();
    for r in rows {
        let k = key(r);
        match out.last_mut() {
            Some((last, sum, n)) if *last == k => {
                *sum += val(r);
                *n += 1;
            }
            _ => out.push((k, val(r), 1)),
        }
    }
    out.into_iter().map(|(k, s, n)| (k, s / n as f64)).collect()
}

pub fn mean_variance(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var)
}

pub fn feasibility_csv(rows: &[FeasibilityRow]) -> String {
    let mut out = String::from("size,trial,feasible\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.size, r.trial, r.feasible as u8);
    }
    out
}

pub fn barcode_stats_csv(rows: &[BarcodeRow]) -> String {
    let mut out = String::from("size,trial,two_loop_fraction,h1_bars\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", r.size, r.trial, fmt_f64(r.two_loop_fraction), r.h1_bars);
    }
    out
}

pub fn accuracy_csv(table: &[AccuracyRow]) -> String {
    let mut out = String::from("size,taught,uniform,persistent\n");
    for r in table {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.size,
            fmt_f64(r.taught),
            fmt_f64(r.uniform),
            fmt_f64(r.persistent)
        );
    }
    out
}

pub fn results_csv(rows: &[ResultRow]) -> String {
    let mut out =
        String::from("size,trial,feasible,taught_acc,uniform_acc,persistent_acc,two_loop_fraction,h1_bar_count\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.size,
            r.trial,
            r.feasible as u8,
            fmt_f64(r.taught_acc),
            fmt_f64(r.uniform_acc),
            fmt_f64(r.persistent_acc),
            fmt_f64(r.two_loop_fraction),
            r.h1_bar_count
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::Interval;

    fn small() -> ExperimentConfig {
        ExperimentConfig {
            sizes: vec![20, 40],
            trials: 3,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn validation() {
        assert!(ExperimentConfig::default().validate().is_ok());
        for cfg in [
            ExperimentConfig { trials: 0, ..small() },
            ExperimentConfig { sizes: vec![40, 20], ..small() },
            ExperimentConfig { sizes: vec![], ..small() },
            ExperimentConfig { max_radius: 0.1, ..small() },
            ExperimentConfig { max_dim: 4, ..small() },
        ] {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }

    #[test]
    fn seeds_do_not_depend_on_other_sizes() {
        let a = small();
        let b = ExperimentConfig { sizes: vec![10, 40], ..small() };
        assert_eq!(trial_points(&a, 40, 2), trial_points(&b, 40, 2));
        assert_ne!(trial_points(&a, 40, 1), trial_points(&a, 40, 2));
    }

    #[test]
    fn tiny_samples_are_never_feasible() {
        let rows = feasibility_study(&small()).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| !r.feasible));
        assert_eq!(feasibility_rates(&rows), vec![(20, 0.0), (40, 0.0)]);
        assert!(feasibility_csv(&rows).starts_with("size,trial,feasible\n20,0,0\n"));
    }

    #[test]
    fn two_loop_fraction_of_reported_bars() {
        let bc = Barcode::truncated(
            vec![
                Interval { dim: 1, birth: 0.158, death: 1.751 },
                Interval { dim: 1, birth: 0.357, death: 1.747 },
                Interval { dim: 1, birth: 0.2, death: 0.21 },
            ],
            2,
            2.0,
        );
        let (f, n) = two_loop_statistics(&bc, 0.05);
        assert_eq!(n, 2);
        assert!((f - (1.747 - 0.357) / (1.751 - 0.158)).abs() < 1e-12);
    }

    #[test]
    fn circle_has_one_long_loop() {
        let cfg = ExperimentConfig {
            shape: Shape::circle(1.0).unwrap(),
            trials: 2,
            ..small()
        };
        let st = barcode_study(&cfg, 100).unwrap();
        assert!(st.rows.iter().all(|r| r.h1_bars == 1 && r.two_loop_fraction == 0.0));
        assert_eq!(st.mean_two_loop_fraction, 0.0);
    }

    #[test]
    fn accuracy_rows_are_consistent() {
        let cfg = ExperimentConfig {
            shape: Shape::circle(1.0).unwrap(),
            ..small()
        };
        let rows = accuracy_study(&cfg).unwrap();
        let feas = feasibility_study(&cfg).unwrap();
        for (r, f) in rows.iter().zip(&feas) {
            assert_eq!((r.size, r.trial, r.feasible), (f.size, f.trial, f.feasible));
            assert!(r.taught_acc >= r.uniform_acc && r.taught_acc >= r.persistent_acc);
        }
        let table = accuracy_table(&rows);
        assert_eq!(table.len(), 2);
        assert_eq!(
            table.iter().map(|r| r.taught).collect::<Vec<_>>(),
            feasibility_rates(&feas).iter().map(|r| r.1).collect::<Vec<_>>()
        );
        assert_eq!(accuracy_csv(&table).lines().count(), 3);
        assert_eq!(results_csv(&rows).lines().count(), 7);
    }

    #[test]
    fn mean_and_population_variance() {
        assert_eq!(mean_variance(&[1.0, 3.0]), (2.0, 1.0));
        assert_eq!(mean_variance(&[]), (0.0, 0.0));
    }
}
