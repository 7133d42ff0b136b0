//! Column reduction of the filtered boundary matrix with the twist (clearing)
//! optimisation.

use std::collections::HashMap;

use super::betti::xor_sorted;
use super::{Barcode, Interval};
use crate::complex::{FilteredComplex, Simplex};

/// Persistence pairs as indices into [`FilteredComplex::simplices`].
///
/// Every simplex is either a creator or a destroyer; `pairs` holds
/// `(creator, destroyer)` and `essential` the creators that never die.
/// Zero-length pairs are kept here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistencePairs {
    pub pairs: Vec<(usize, usize)>,
    pub essential: Vec<usize>,
}

pub fn persistence_pairs(fc: &FilteredComplex) -> PersistencePairs {
    let simplices = fc.simplices();
    let n = simplices.len();
    let index: HashMap<Simplex, u32> = simplices
        .iter()
        .enumerate()
        .map(|(i, (s, _))| (*s, i as u32))
        .collect();

    let mut reduced: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut pivot_owner: Vec<Option<u32>> = vec![None; n];
    let mut cleared = vec![false; n];
    let top = simplices.iter().map(|(s, _)| s.dim()).max().unwrap_or(0);

    for dim in (1..=top).rev() {
        for j in 0..n {
            let (s, _) = simplices[j];
            if s.dim() != dim || cleared[j] {
                continue;
            }
            let mut col: Vec<u32> = s.facets().map(|f| index[&f]).collect();
            col.sort_unstable();
            while let Some(&low) = col.last() {
                match pivot_owner[low as usize] {
                    Some(k) => col = xor_sorted(&col, &reduced[k as usize]),
                    None => break,
                }
            }
            if let Some(&low) = col.last() {
                pivot_owner[low as usize] = Some(j as u32);
                cleared[low as usize] = true;
                reduced[j] = col;
            }
        }
    }

    let mut pairs = Vec::new();
    let mut essential = Vec::new();
    for i in 0..n {
        match pivot_owner[i] {
            Some(j) => pairs.push((i, j as usize)),
            None if reduced[i].is_empty() => essential.push(i),
            None => {}
        }
    }
    PersistencePairs { pairs, essential }
}

/// Barcode of a filtered complex. Intervals of every dimension present (up to
/// 2) are reported; zero-length intervals are dropped and classes that never
/// die within the truncated filtration get an infinite death.
pub fn persistence(fc: &FilteredComplex) -> Barcode {
    let pp = persistence_pairs(fc);
    let s = fc.simplices();
    let mut intervals = Vec::with_capacity(pp.pairs.len() + pp.essential.len());
    for &(b, d) in &pp.pairs {
        let dim = s[b].0.dim();
        if dim <= 2 {
            intervals.push(Interval {
                dim,
                birth: s[b].1,
                death: s[d].1,
            });
        }
    }
    for &b in &pp.essential {
        let dim = s[b].0.dim();
        if dim <= 2 {
            intervals.push(Interval {
                dim,
                birth: s[b].1,
                death: f64::INFINITY,
            });
        }
    }
    Barcode::truncated(intervals, fc.max_dim(), fc.max_radius())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cech_filtration;
    use crate::shapes::Point;
    use approx::assert_abs_diff_eq;

    fn circle3() -> Vec<Point> {
        (0..3)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
                Point::new2(t.cos(), t.sin())
            })
            .collect()
    }

    #[test]
    fn circle_barcode() {
        let bc = persistence(&cech_filtration(&circle3(), 2, 2.0).unwrap());
        let h0: Vec<_> = bc.of_dim(0).collect();
        assert_eq!(h0.len(), 3);
        assert_eq!(h0.iter().filter(|i| !i.is_finite()).count(), 1);
        for i in h0.iter().filter(|i| i.is_finite()) {
            assert_abs_diff_eq!(i.death, 3f64.sqrt() / 2.0, epsilon = 1e-12);
        }
        let h1: Vec<_> = bc.of_dim(1).collect();
        assert_eq!(h1.len(), 1);
        assert_abs_diff_eq!(h1[0].birth, 3f64.sqrt() / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(h1[0].death, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn two_points() {
        let pts = [Point::new2(0.0, 0.0), Point::new2(2.0, 0.0)];
        let bc = persistence(&cech_filtration(&pts, 2, 2.0).unwrap());
        let h0: Vec<(f64, f64)> = bc.of_dim(0).map(|i| (i.birth, i.death)).collect();
        assert_eq!(h0, vec![(0.0, 1.0), (0.0, f64::INFINITY)]);
    }

    #[test]
    fn square_loop() {
        let pts = [
            Point::new2(0.0, 0.0),
            Point::new2(1.0, 0.0),
            Point::new2(1.0, 1.0),
            Point::new2(0.0, 1.0),
        ];
        let bc = persistence(&cech_filtration(&pts, 2, 1.0).unwrap());
        let h1: Vec<_> = bc.of_dim(1).collect();
        assert_eq!(h1.len(), 1);
        assert_abs_diff_eq!(h1[0].birth, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(h1[0].death, 2f64.sqrt() / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn censored_deaths_are_infinite() {
        let bc = persistence(&cech_filtration(&circle3(), 2, 0.9).unwrap());
        let h1: Vec<_> = bc.of_dim(1).collect();
        assert_eq!(h1.len(), 1);
        assert!(h1[0].death.is_infinite());
    }

    #[test]
    fn every_simplex_is_classified_once() {
        let fc = cech_filtration(&circle3(), 2, 2.0).unwrap();
        let pp = persistence_pairs(&fc);
        assert_eq!(2 * pp.pairs.len() + pp.essential.len(), fc.len());
    }
}
