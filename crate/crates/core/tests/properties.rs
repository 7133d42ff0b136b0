use std::collections::HashMap;

use manifold_teach::complex::{
    build_demo_complex, cech_filtration, rips_filtration, DemoItem, DemonstrationSet, FiltrationKind, Simplex,
};
use manifold_teach::homology::{betti_gf2, point_cloud_barcode, Barcode};
use manifold_teach::learners::{
    feasible, feasible_from_barcode, persistent_from_barcode, policy_barcode, taught_outcome, uniform_from_barcode,
    PolicySettings,
};
use manifold_teach::teaching::{
    circle_teaching_set, min_teaching_number_closed, min_teaching_number_with_boundary, pants_decomposition_count,
    verify_teaching_set,
};
use manifold_teach::{Point, Shape};
use proptest::prelude::*;

fn cloud(max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), 1..max)
        .prop_map(|v| v.into_iter().map(|(x, y)| Point::new2(x, y)).collect())
}

fn cloud3(max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((0.0..1.0f64, 0.0..1.0f64, 0.0..1.0f64), 1..max)
        .prop_map(|v| v.into_iter().map(|(x, y, z)| Point::new3(x, y, z)).collect())
}

fn rigid(points: &[Point], angle: f64, shift: (f64, f64)) -> Vec<Point> {
    let (s, c) = angle.sin_cos();
    points
        .iter()
        .map(|p| Point::new2(c * p.x() - s * p.y() + shift.0, s * p.x() + c * p.y() + shift.1))
        .collect()
}

/// Births and deaths per dimension, as sorted lists, ignoring bars shorter
/// than rounding noise.
fn endpoints(bc: &Barcode) -> Vec<(Vec<f64>, Vec<f64>)> {
    (0..3)
        .map(|k| {
            let bars: Vec<_> = bc.of_dim(k).filter(|iv| iv.length() > 1e-9).collect();
            let mut b: Vec<f64> = bars.iter().map(|iv| iv.birth).collect();
            let mut d: Vec<f64> = bars.iter().map(|iv| iv.death).collect();
            b.sort_by(f64::total_cmp);
            d.sort_by(f64::total_cmp);
            (b, d)
        })
        .collect()
}

fn close(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y || (x - y).abs() <= 1e-9)
}

fn label() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["a", "b", "c", "d", "e", "f"]).prop_map(str::to_string)
}

fn demo_item() -> impl Strategy<Value = DemoItem> {
    prop_oneof![
        prop::collection::vec(label(), 1..6).prop_map(DemoItem::Sequence),
        (2usize..5, 2usize..4).prop_flat_map(|(len, count)| {
            prop::collection::vec(prop::collection::vec(label(), len..=len), count..=count)
                .prop_map(DemoItem::SequenceOfSequences)
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn filtrations_are_closed_and_monotone(pts in cloud(14), r in 0.05..1.0f64, rips in any::<bool>()) {
        let fc = if rips { rips_filtration(&pts, 3, r) } else { cech_filtration(&pts, 3, r) }.unwrap();
        let values: HashMap<Simplex, f64> = fc.simplices().iter().copied().collect();
        for (s, v) in fc.simplices() {
            prop_assert!(*v <= r);
            for f in s.facets() {
                prop_assert!(values[&f] <= *v, "{:?} enters after {:?}", f, s);
            }
        }
        for w in fc.simplices().windows(2) {
            prop_assert!(w[0].1 <= w[1].1);
        }
    }

    #[test]
    fn rips_values_never_exceed_cech(pts in cloud3(12)) {
        let cech: HashMap<Simplex, f64> = cech_filtration(&pts, 3, 4.0).unwrap().simplices().iter().copied().collect();
        let rips = rips_filtration(&pts, 3, 4.0).unwrap();
        for (s, v) in rips.simplices() {
            prop_assert!(*v <= cech[s] + 1e-12, "{:?}: rips {} > cech {}", s, v, cech[s]);
        }
    }

    #[test]
    fn barcodes_survive_rigid_motions(
        pts in cloud(25),
        angle in 0.0..std::f64::consts::TAU,
        dx in -5.0..5.0f64,
        dy in -5.0..5.0f64,
        rips in any::<bool>(),
    ) {
        let kind = if rips { FiltrationKind::Rips } else { FiltrationKind::Cech };
        let a = point_cloud_barcode(&pts, kind, 2, 1.5).unwrap();
        let b = point_cloud_barcode(&rigid(&pts, angle, (dx, dy)), kind, 2, 1.5).unwrap();
        for ((ba, da), (bb, db)) in endpoints(&a).iter().zip(&endpoints(&b)) {
            prop_assert!(close(ba, bb) && close(da, db), "{:?} vs {:?}", a, b);
        }
    }

    #[test]
    fn euler_characteristic_matches_betti(items in prop::collection::vec(demo_item(), 1..5)) {
        let demo = DemonstrationSet { items, ..Default::default() };
        let cx = build_demo_complex(&demo).unwrap();
        let b = betti_gf2(&cx.to_static(), 2).unwrap();
        prop_assert_eq!(cx.euler_characteristic(), b.euler_characteristic());
    }

    #[test]
    fn repeating_an_item_changes_nothing(items in prop::collection::vec(demo_item(), 1..5), pick in any::<prop::sample::Index>()) {
        let demo = DemonstrationSet { items, ..Default::default() };
        let mut doubled = demo.clone();
        doubled.items.push(pick.get(&demo.items).clone());
        prop_assert_eq!(build_demo_complex(&demo).unwrap(), build_demo_complex(&doubled).unwrap());
    }

    #[test]
    fn circle_teaching_scales_with_radius(r in 0.01..100.0f64) {
        let (unit, _) = circle_teaching_set(1.0).unwrap();
        let (ts, count) = circle_teaching_set(r).unwrap();
        prop_assert!(count.value >= 3);
        for (p, q) in unit.points.iter().zip(&ts.points) {
            prop_assert!(p.scale(r).dist(q) <= 1e-12 * r.max(1.0));
        }
        let w = unit.window.scaled(r);
        prop_assert!((w.lo - ts.window.lo).abs() <= 1e-12 * r && (w.hi - ts.window.hi).abs() <= 1e-12 * r);
        let v = verify_teaching_set(&ts).unwrap();
        prop_assert!(v.valid);
        let shape = Shape::circle(r).unwrap();
        for p in &ts.points {
            prop_assert!(shape.contains(p).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// taught >= uniform >= 0 and taught >= persistent on barbell samples;
    /// uniform success implies feasibility.
    #[test]
    fn policies_are_dominated_by_the_taught_learner(n in 20usize..400, seed in any::<u64>()) {
        let shape = Shape::default_barbell();
        let pts = shape.sample_uniform(n, seed);
        let s = PolicySettings::default();
        let bc = policy_barcode(&pts, &s).unwrap();
        let v = feasible_from_barcode(&bc, &shape);
        prop_assert_eq!(v.feasible, feasible(&pts, &shape).unwrap().feasible);
        let taught = taught_outcome(v).success;
        let uniform = uniform_from_barcode(&bc, &shape, s.min_bar_length).success;
        let persistent = persistent_from_barcode(&bc, &shape, s.min_bar_length).success;
        prop_assert!((0.0..=1.0).contains(&uniform));
        prop_assert!(taught >= uniform && taught >= persistent);
        if uniform > 0.0 {
            prop_assert!(v.feasible);
        }
        let moved = rigid(&pts, 1.1, (3.0, -2.0));
        prop_assert_eq!(feasible(&moved, &shape).unwrap().feasible, v.feasible);
    }
}

#[test]
fn teaching_number_formulas_are_consistent() {
    let mut last = 0;
    for g in 1..=100 {
        let closed = min_teaching_number_closed(g).unwrap().value;
        assert_eq!(closed, min_teaching_number_with_boundary(g, 0).unwrap().value);
        assert!(closed > last);
        last = closed;
    }
    let pants: Vec<u64> = (2..=100).map(|g| pants_decomposition_count(g).unwrap().value).collect();
    assert!(pants.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn samples_are_deterministic_and_on_the_shape() {
    for shape in [Shape::circle(1.5).unwrap(), Shape::torus(1.0, 2.5).unwrap(), Shape::default_barbell()] {
        let a = shape.sample_uniform(300, 9);
        assert_eq!(a, shape.sample_uniform(300, 9));
        assert!(a.iter().all(|p| shape.contains(p).unwrap()), "{}", shape.name());
    }
}
