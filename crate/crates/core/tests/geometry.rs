use std::f64::consts::PI;

use mmwave_core::geometry::{
    blockage_hexagon, blockage_pair, exact_blockage_area, projected_width, reflection_point, specular_reflection,
    Branch, ConvexPolygon, EllipseLocus, OrientedRect, Point2, Segment2,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type P = Point2<f64>;

/// Tangency of a line with direction θ on the parametric ellipse
/// `(m cos t, n sin t)`, located by bisection on the parallelism condition.
/// Of the two antipodal roots, returns the one nearest `near`.
fn parametric_tangency(d: f64, lr: f64, theta: f64, near: P) -> P {
    let m = lr / 2.0;
    let n = (lr * lr - d * d).sqrt() / 2.0;
    let g = |t: f64| -m * t.sin() * theta.sin() - n * t.cos() * theta.cos();
    let mut best: Option<P> = None;
    for k in 0..64 {
        // offset so no root sits on a bracket edge
        let (mut lo, mut hi) = (0.01 + k as f64 * PI / 32.0, 0.01 + (k + 1) as f64 * PI / 32.0);
        if g(lo) * g(hi) > 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(lo) * g(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let t = 0.5 * (lo + hi);
        let p = P::new(m * t.cos(), n * t.sin());
        if best.is_none_or(|q| p.dist(near) < q.dist(near)) {
            best = Some(p);
        }
    }
    best.expect("tangency found")
}

#[test]
fn tangency_matches_root_finder_oracle() {
    // frozen from the bisection oracle below and an independent Brent solve
    let want = P::new(60.133_779_430_295_49, 33.407_655_239_053_04);
    let oracle = parametric_tangency(100.0, 150.0, 3.0 * PI / 4.0, P::new(1.0, 1.0));
    assert!((oracle.x / want.x - 1.0).abs() < 1e-12 && (oracle.y / want.y - 1.0).abs() < 1e-12);
    let p = reflection_point(100.0, 150.0, 3.0 * PI / 4.0, Branch::LSide).unwrap();
    assert!((p.x / want.x - 1.0).abs() < 1e-9 && (p.y / want.y - 1.0).abs() < 1e-9, "{p:?}");
}

#[test]
fn all_branches_match_oracle() {
    for &theta in &[0.3, 1.0, PI / 2.0, 2.0, 2.8, PI] {
        for b in Branch::ALL {
            let p = reflection_point(100.0, 170.0, theta, b).unwrap();
            let dir = if b.is_l_side() { theta } else { theta + PI / 2.0 };
            let q = parametric_tangency(100.0, 170.0, dir, p);
            assert!(p.dist(q) < 1e-9 * 170.0, "theta={theta} {b:?}: {p:?} vs {q:?}");
        }
    }
}

#[test]
fn exact_area_matches_rejection_sampling() {
    // 10⁷-sample rejection estimate with an independent clipping test: 11791.51 ± 4.53
    let a = exact_blockage_area(100.0, 150.0, 2.0 * PI / 3.0, 55.0, 50.0).unwrap();
    assert!((a - 11_791.51).abs() < 3.0 * 4.53, "{a}");
}

// Separating-axis test between a segment and a rectangle, kept apart from
// the library's clipping routine.
fn sat_hits(a: P, b: P, c: P, l: f64, w: f64, th: f64) -> bool {
    let u = P::new(th.cos(), th.sin());
    let v = P::new(-th.sin(), th.cos());
    let d = b - a;
    let nrm = P::new(-d.y, d.x);
    let corners: Vec<P> = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)]
        .iter()
        .map(|&(s, t)| c + u * (s * l / 2.0) + v * (t * w / 2.0))
        .collect();
    let axes = [u, v, nrm];
    axes.iter().all(|&ax| {
        let (s0, s1) = (a.dot(ax), b.dot(ax));
        let (smin, smax) = (s0.min(s1), s0.max(s1));
        let proj: Vec<f64> = corners.iter().map(|p| p.dot(ax)).collect();
        let rmin = proj.iter().cloned().fold(f64::INFINITY, f64::min);
        let rmax = proj.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        smax > rmin && rmax > smin
    })
}

#[test]
fn exact_area_matches_sampling_on_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..20 {
        let lr = rng.random_range(105.0..250.0);
        let th = rng.random_range(0.05..PI);
        let l = rng.random_range(5.0..80.0);
        let w = rng.random_range(5.0..80.0);
        let exact = exact_blockage_area(100.0, lr, th, l, w).unwrap();
        let r1 = reflection_point(100.0, lr, th, Branch::LSide).unwrap();
        let (tx, rx) = (P::new(-50.0, 0.0), P::new(50.0, 0.0));
        let reach = l.hypot(w);
        let (x0, x1) = (-50.0 - reach, 50.0f64.max(r1.x) + reach);
        let (y0, y1) = (r1.y.min(0.0) - reach, r1.y.max(0.0) + reach);
        let box_area = (x1 - x0) * (y1 - y0);
        let n = 200_000;
        let hits = (0..n)
            .filter(|_| {
                let c = P::new(rng.random_range(x0..x1), rng.random_range(y0..y1));
                sat_hits(tx, r1, c, l, w, th) || sat_hits(r1, rx, c, l, w, th)
            })
            .count();
        let p = hits as f64 / n as f64;
        let est = p * box_area;
        let se = (p * (1.0 - p) / n as f64).sqrt() * box_area;
        assert!((est - exact).abs() < 4.0 * se + 1e-6 * exact, "lr={lr} th={th} l={l} w={w}: {est}±{se} vs {exact}");
    }
}

fn reflect_dir(d: P, wall: P) -> P {
    let t = wall * (1.0 / wall.norm());
    t * (2.0 * d.dot(t)) - d
}

proptest! {
    #[test]
    fn tangency_lies_on_ellipse(lr in 100.5f64..500.0, th in 0.001f64..PI, bi in 1u8..=4) {
        let p = reflection_point(100.0, lr, th, Branch::from_index(bi).unwrap()).unwrap();
        let e = EllipseLocus::new(100.0, lr).unwrap();
        prop_assert!((e.focal_sum(p) / lr - 1.0).abs() < 1e-9);
    }

    #[test]
    fn tangency_slope_matches_wall(lr in 101.0f64..500.0, th in 0.01f64..PI - 0.01) {
        let p = reflection_point(100.0, lr, th, Branch::LSide).unwrap();
        let m = lr / 2.0;
        let n2 = (lr * lr - 1e4) / 4.0;
        // ellipse normal (x/m², y/n²) is perpendicular to the wall direction
        let normal = P::new(p.x / (m * m), p.y / n2);
        let dir = P::new(th.cos(), th.sin());
        prop_assert!(normal.dot(dir).abs() < 1e-9 * normal.norm());
    }

    #[test]
    fn specular_angles_are_equal(
        wx in -100.0f64..100.0, wy in 5.0f64..100.0, len in 1.0f64..200.0, ang in -1.2f64..1.2,
        rx_x in -80.0f64..80.0,
    ) {
        let a = P::new(wx, wy);
        let b = a + P::new(ang.cos(), ang.sin()) * len;
        let wall = Segment2::new(a, b).unwrap();
        let (tx, rx) = (P::new(-60.0, 0.0), P::new(rx_x, -3.0));
        if let Some(hit) = specular_reflection(tx, rx, &wall) {
            let inc = (hit.point - tx) * (1.0 / hit.point.dist(tx));
            let out = (rx - hit.point) * (1.0 / rx.dist(hit.point));
            let mirrored = reflect_dir(inc, wall.direction());
            prop_assert!(mirrored.dist(out) < 1e-8);
            prop_assert!((hit.length - tx.dist(hit.point) - hit.point.dist(rx)).abs() < 1e-9 * hit.length);
        }
    }

    #[test]
    fn hexagon_area_is_sweep_plus_footprint(
        ax in -50.0f64..50.0, ay in -50.0f64..50.0, bx in -50.0f64..50.0, by in -50.0f64..50.0,
        l in 1.0f64..60.0, w in 1.0f64..60.0, th in 0.01f64..PI,
    ) {
        prop_assume!((ax - bx).hypot(ay - by) > 1e-3);
        let s = Segment2::new(P::new(ax, ay), P::new(bx, by)).unwrap();
        let h = blockage_hexagon(&s, l, w, th).unwrap();
        let want = s.length() * projected_width(&s, l, w, th) + l * w;
        prop_assert!((h.area() / want - 1.0).abs() < 1e-9);
    }

    #[test]
    fn union_area_is_bounded(lr in 101.0f64..300.0, th in 0.01f64..PI, l in 1.0f64..80.0, w in 1.0f64..80.0) {
        let (a, b) = blockage_pair(100.0, lr, th, l, w).unwrap();
        let u = exact_blockage_area(100.0, lr, th, l, w).unwrap();
        prop_assert!(u >= a.area().max(b.area()) * (1.0 - 1e-12));
        prop_assert!(u <= (a.area() + b.area()) * (1.0 + 1e-12));
    }

    #[test]
    fn polygon_intersection_is_symmetric(
        cx in -20.0f64..20.0, cy in -20.0f64..20.0, th1 in 0.01f64..PI, th2 in 0.01f64..PI,
    ) {
        let r1 = OrientedRect::new(P::origin(), 30.0, 10.0, th1).unwrap();
        let r2 = OrientedRect::new(P::new(cx, cy), 25.0, 15.0, th2).unwrap();
        let p1 = ConvexPolygon::new(r1.corners().to_vec()).unwrap();
        let p2 = ConvexPolygon::new(r2.corners().to_vec()).unwrap();
        let a = p1.intersection(&p2).map_or(0.0, |p| p.area());
        let b = p2.intersection(&p1).map_or(0.0, |p| p.area());
        prop_assert!((a - b).abs() < 1e-8);
        prop_assert!(a <= p1.area().min(p2.area()) * (1.0 + 1e-12));
    }
}

#[test]
fn tilted_rectangle_overlap_matches_external_oracle() {
    // area from an independent polygon-clipping library
    let r1 = OrientedRect::new(P::origin(), 30.0, 10.0, 0.632_132_722_790_811_3).unwrap();
    let r2 = OrientedRect::new(P::origin(), 25.0, 15.0, 0.492_152_544_286_392_43).unwrap();
    let p1 = ConvexPolygon::new(r1.corners().to_vec()).unwrap();
    let p2 = ConvexPolygon::new(r2.corners().to_vec()).unwrap();
    let a = p1.intersection(&p2).unwrap().area();
    assert!((a - 252.469_463_921_584_35).abs() < 1e-9, "{a}");
}
