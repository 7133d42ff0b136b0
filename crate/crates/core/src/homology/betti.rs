use std::collections::HashMap;

use super::BettiProfile;
use crate::complex::{Simplex, StaticComplex};
use crate::error::{Error, Result};

/// Rank over GF(2) of a matrix given as columns of sorted row indices.
pub fn gf2_rank(columns: Vec<Vec<u32>>) -> usize {
    let mut pivots: HashMap<u32, Vec<u32>> = HashMap::new();
    let mut rank = 0;
    for mut col in columns {
        while let Some(&low) = col.last() {
            match pivots.get(&low) {
                Some(other) => col = xor_sorted(&col, other),
                None => {
                    pivots.insert(low, col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

pub(crate) fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Betti numbers `b_k = dim ker d_k - dim im d_{k+1}` for `k <= max_dim`
/// (higher entries are reported as zero).
pub fn betti_gf2(complex: &StaticComplex, max_dim: usize) -> Result<BettiProfile> {
    if complex.is_empty() {
        return Err(Error::EmptyInput("complex"));
    }
    let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); 4];
    for s in complex.simplices() {
        by_dim[s.dim()].push(*s);
    }
    let index: Vec<HashMap<Simplex, u32>> = by_dim
        .iter()
        .map(|ss| ss.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect())
        .collect();
    // rank of d_k : C_k -> C_{k-1}
    let boundary_rank = |k: usize| -> usize {
        if k == 0 || k >= by_dim.len() {
            return 0;
        }
        let cols = by_dim[k]
            .iter()
            .map(|s| {
                let mut col: Vec<u32> = s.facets().map(|f| index[k - 1][&f]).collect();
                col.sort_unstable();
                col
            })
            .collect();
        gf2_rank(cols)
    };
    let ranks: Vec<usize> = (0..=4).map(boundary_rank).collect();
    let mut b = [0usize; 3];
    for (k, slot) in b.iter_mut().enumerate().take(max_dim.min(2) + 1) {
        *slot = by_dim[k].len() - ranks[k] - ranks[k + 1];
    }
    Ok(BettiProfile::new(b[0], b[1], b[2]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v).unwrap()
    }

    fn closure(tops: &[&[u32]]) -> StaticComplex {
        let mut all = Vec::new();
        for t in tops {
            let n = t.len();
            for mask in 1u32..(1 << n) {
                let sub: Vec<u32> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| t[i]).collect();
                all.push(s(&sub));
            }
        }
        StaticComplex::new(all).unwrap()
    }

    #[test]
    fn single_vertex() {
        let cx = StaticComplex::new(vec![Simplex::vertex(0)]).unwrap();
        assert_eq!(betti_gf2(&cx, 2).unwrap(), BettiProfile::new(1, 0, 0));
    }

    #[test]
    fn triangle_boundary_is_a_circle() {
        let cx = closure(&[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(betti_gf2(&cx, 2).unwrap(), BettiProfile::new(1, 1, 0));
        let filled = closure(&[&[0, 1, 2]]);
        assert_eq!(betti_gf2(&filled, 2).unwrap(), BettiProfile::new(1, 0, 0));
    }

    #[test]
    fn tetrahedron_boundary_is_a_sphere() {
        let cx = closure(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        assert_eq!(betti_gf2(&cx, 2).unwrap(), BettiProfile::new(1, 0, 1));
        assert_eq!(betti_gf2(&cx, 1).unwrap(), BettiProfile::new(1, 0, 0));
    }

    #[test]
    fn two_components() {
        let cx = closure(&[&[0, 1], &[2]]);
        assert_eq!(betti_gf2(&cx, 0).unwrap().b0, 2);
    }

    #[test]
    fn empty_is_an_error() {
        assert!(betti_gf2(&StaticComplex::new(vec![]).unwrap(), 2).is_err());
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(gf2_rank(vec![vec![0, 1], vec![1, 2], vec![0, 2]]), 2);
        assert_eq!(gf2_rank(vec![vec![], vec![3]]), 1);
    }
}
