//! Simplicial complexes: filtered Čech/Rips complexes of point clouds, static
//! sub-complexes, and the demonstration complex.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::shapes::Point;

pub mod demo;
mod meb;

pub use demo::{build_demo_complex, DemoComplex, DemoItem, DemonstrationSet};
pub use meb::{cech_triangle_value, min_enclosing_radius, triangle_radius};

/// Highest simplex dimension supported by the builders.
pub const MAX_SIMPLEX_DIM: usize = 3;

/// A simplex on at most four vertices, stored sorted.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Simplex {
    len: u8,
    verts: [u32; 4],
}

impl Simplex {
    pub fn new(vertices: &[u32]) -> Result<Self> {
        if vertices.is_empty() || vertices.len() > 4 {
            return Err(Error::InvalidArgument(format!(
                "a simplex has 1 to 4 vertices, got {}",
                vertices.len()
            )));
        }
        let mut verts = [u32::MAX; 4];
        verts[..vertices.len()].copy_from_slice(vertices);
        verts[..vertices.len()].sort_unstable();
        if verts[..vertices.len()].windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!(
                "repeated vertex in simplex {vertices:?}"
            )));
        }
        Ok(Simplex {
            len: vertices.len() as u8,
            verts,
        })
    }

    pub fn vertex(v: u32) -> Self {
        Simplex {
            len: 1,
            verts: [v, u32::MAX, u32::MAX, u32::MAX],
        }
    }

    pub(crate) fn from_sorted(vertices: &[u32]) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut verts = [u32::MAX; 4];
        verts[..vertices.len()].copy_from_slice(vertices);
        Simplex {
            len: vertices.len() as u8,
            verts,
        }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts[..self.len as usize]
    }

    pub fn dim(&self) -> usize {
        self.len as usize - 1
    }

    /// Codimension-one faces, in lexicographic order of the removed vertex
    /// reversed (i.e. the face dropping the last vertex comes first).
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.len as usize;
        let count = if n > 1 { n } else { 0 };
        (0..count).rev().map(move |skip| {
            let mut verts = [u32::MAX; 4];
            let mut k = 0;
            for (i, &v) in self.vertices().iter().enumerate() {
                if i != skip {
                    verts[k] = v;
                    k += 1;
                }
            }
            Simplex {
                len: (n - 1) as u8,
                verts,
            }
        })
    }
}

impl Ord for Simplex {
    /// Dimension first, then lexicographic vertex order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.vertices().cmp(other.vertices()))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Simplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.vertices())
    }
}

/// How simplex filtration values are computed from a point cloud.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FiltrationKind {
    /// Radius of the minimal enclosing ball (nerve of the union of balls).
    #[default]
    Cech,
    /// Half the largest pairwise distance.
    Rips,
}

impl std::str::FromStr for FiltrationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cech" => Ok(FiltrationKind::Cech),
            "rips" => Ok(FiltrationKind::Rips),
            other => Err(Error::InvalidArgument(format!(
                "unknown filtration kind {other:?} (expected cech or rips)"
            ))),
        }
    }
}

/// Total order used for filtrations: value, then dimension, then vertices.
pub fn filtration_cmp(a: &(Simplex, f64), b: &(Simplex, f64)) -> Ordering {
    a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0))
}

/// Simplices with filtration values, sorted into filtration order.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    simplices: Vec<(Simplex, f64)>,
    vertex_count: usize,
    max_dim: usize,
    max_radius: f64,
}

impl FilteredComplex {
    /// Build from an arbitrary list of simplices, validating face closure and
    /// monotonicity. The list is sorted into filtration order.
    pub fn from_simplices(
        mut simplices: Vec<(Simplex, f64)>,
        max_dim: usize,
        max_radius: f64,
    ) -> Result<Self> {
        let mut values: HashMap<Simplex, f64> = HashMap::with_capacity(simplices.len());
        let mut vertex_count = 0;
        for &(s, v) in &simplices {
            if !(v >= 0.0) || v > max_radius {
                return Err(Error::InvalidArgument(format!(
                    "filtration value {v} of {s:?} outside [0, {max_radius}]"
                )));
            }
            if s.dim() > max_dim {
                return Err(Error::InvalidArgument(format!(
                    "{s:?} exceeds max_dim {max_dim}"
                )));
            }
            if values.insert(s, v).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate simplex {s:?}")));
            }
            if s.dim() == 0 {
                vertex_count = vertex_count.max(s.vertices()[0] as usize + 1);
            }
        }
        for &(s, v) in &simplices {
            for f in s.facets() {
                match values.get(&f) {
                    None => {
                        return Err(Error::InvalidArgument(format!(
                            "face {f:?} of {s:?} is missing"
                        )))
                    }
                    Some(&fv) if fv > v => {
                        return Err(Error::InvalidArgument(format!(
                            "face {f:?} enters at {fv} after its coface {s:?} at {v}"
                        )))
                    }
                    _ => {}
                }
            }
        }
        simplices.sort_by(filtration_cmp);
        Ok(FilteredComplex {
            simplices,
            vertex_count,
            max_dim,
            max_radius,
        })
    }

    pub fn simplices(&self) -> &[(Simplex, f64)] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn max_radius(&self) -> f64 {
        self.max_radius
    }

    pub fn count_by_dim(&self) -> [usize; 4] {
        let mut counts = [0; 4];
        for (s, _) in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }

    /// The sub-complex of simplices present at scale `epsilon`.
    pub fn complex_at(&self, epsilon: f64) -> Result<StaticComplex> {
        if epsilon > self.max_radius {
            return Err(Error::EpsilonOutOfRange {
                epsilon,
                max_radius: self.max_radius,
            });
        }
        if !(epsilon >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "epsilon must be non-negative, got {epsilon}"
            )));
        }
        let simplices = self
            .simplices
            .iter()
            .take_while(|(_, v)| *v <= epsilon)
            .map(|(s, _)| *s)
            .collect();
        Ok(StaticComplex::new_unchecked(simplices))
    }

    /// CSV rows `dim,vertices...,filtration`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (s, v) in &self.simplices {
            let _ = write!(out, "{}", s.dim());
            for x in s.vertices() {
                let _ = write!(out, ",{x}");
            }
            let _ = writeln!(out, ",{}", crate::io::fmt_f64(*v));
        }
        out
    }
}

/// A finite simplicial complex without filtration values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticComplex {
    simplices: Vec<Simplex>,
}

impl StaticComplex {
    /// Validates face closure; the simplex list is sorted and deduplicated.
    pub fn new(mut simplices: Vec<Simplex>) -> Result<Self> {
        simplices.sort_unstable();
        simplices.dedup();
        let set: std::collections::HashSet<Simplex> = simplices.iter().copied().collect();
        for s in &simplices {
            if let Some(f) = s.facets().find(|f| !set.contains(f)) {
                return Err(Error::InvalidArgument(format!(
                    "face {f:?} of {s:?} is missing"
                )));
            }
        }
        Ok(StaticComplex { simplices })
    }

    pub(crate) fn new_unchecked(mut simplices: Vec<Simplex>) -> Self {
        simplices.sort_unstable();
        StaticComplex { simplices }
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices_of_dim(&self, dim: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().filter(move |s| s.dim() == dim)
    }

    pub fn count_by_dim(&self) -> [usize; 4] {
        let mut counts = [0; 4];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }
}

fn validate_cloud(points: &[Point], max_dim: usize, max_radius: f64) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptyInput("point cloud"));
    }
    if max_dim > MAX_SIMPLEX_DIM {
        return Err(Error::InvalidArgument(format!(
            "max_dim must be at most {MAX_SIMPLEX_DIM}, got {max_dim}"
        )));
    }
    if !(max_radius > 0.0) || !max_radius.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "max_radius must be positive and finite, got {max_radius}"
        )));
    }
    let d = points[0].dim();
    if let Some(p) = points.iter().find(|p| p.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: p.dim(),
        });
    }
    Ok(())
}

/// Čech filtration: every simplex of dimension at most `max_dim` whose minimal
/// enclosing ball has radius at most `max_radius`.
pub fn cech_filtration(points: &[Point], max_dim: usize, max_radius: f64) -> Result<FilteredComplex> {
    build_filtration(points, max_dim, max_radius, FiltrationKind::Cech)
}

/// Rips filtration at ball-radius scale: half the diameter of each simplex.
pub fn rips_filtration(points: &[Point], max_dim: usize, max_radius: f64) -> Result<FilteredComplex> {
    build_filtration(points, max_dim, max_radius, FiltrationKind::Rips)
}

pub fn build_filtration(
    points: &[Point],
    max_dim: usize,
    max_radius: f64,
    kind: FiltrationKind,
) -> Result<FilteredComplex> {
    validate_cloud(points, max_dim, max_radius)?;
    let n = points.len();
    let mut simplices: Vec<(Simplex, f64)> = (0..n as u32).map(|v| (Simplex::vertex(v), 0.0)).collect();

    // upper neighbours within 2 * max_radius, sorted
    let mut upper: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut edge_value: HashMap<(u32, u32), f64> = HashMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = points[i].dist(&points[j]) / 2.0;
            if v <= max_radius {
                upper[i].push(j as u32);
                edge_value.insert((i as u32, j as u32), v);
            }
        }
    }
    if max_dim >= 1 {
        for (&(i, j), &v) in &edge_value {
            simplices.push((Simplex::from_sorted(&[i, j]), v));
        }
    }
    let ev = |a: u32, b: u32| edge_value[&(a.min(b), a.max(b))];
    let d2 = |a: u32, b: u32| points[a as usize].dist2(&points[b as usize]);

    let mut tri_value: HashMap<Simplex, f64> = HashMap::new();
    if max_dim >= 2 {
        for i in 0..n as u32 {
            let ni = &upper[i as usize];
            for (a, &j) in ni.iter().enumerate() {
                for &k in &ni[a + 1..] {
                    if !edge_value.contains_key(&(j, k)) {
                        continue;
                    }
                    let v = match kind {
                        FiltrationKind::Cech => cech_triangle_value(d2(i, j), d2(i, k), d2(j, k)),
                        FiltrationKind::Rips => ev(i, j).max(ev(i, k)).max(ev(j, k)),
                    };
                    if v <= max_radius {
                        let s = Simplex::from_sorted(&[i, j, k]);
                        tri_value.insert(s, v);
                        simplices.push((s, v));
                    }
                }
            }
        }
    }
    if max_dim >= 3 {
        for (&t, &_tv) in &tri_value {
            let [i, j, k] = [t.verts[0], t.verts[1], t.verts[2]];
            for &l in &upper[k as usize] {
                let s = Simplex::from_sorted(&[i, j, k, l]);
                let faces: Vec<f64> = match s.facets().map(|f| tri_value.get(&f).copied()).collect() {
                    Some(v) => v,
                    None => continue,
                };
                let face_max = faces.iter().copied().fold(0.0, f64::max);
                let v = match kind {
                    FiltrationKind::Cech => {
                        let pts = [i, j, k, l].map(|x| points[x as usize]);
                        min_enclosing_radius(&pts).max(face_max)
                    }
                    FiltrationKind::Rips => face_max,
                };
                if v <= max_radius {
                    simplices.push((s, v));
                }
            }
        }
    }
    simplices.sort_by(filtration_cmp);
    Ok(FilteredComplex {
        simplices,
        vertex_count: n,
        max_dim,
        max_radius,
    })
}
