use crate::analytic::rho;
use crate::geometry::{segment_intersects_rect, specular_reflection, Point2, Segment2, GRAZING_EPS};
use crate::montecarlo::{Scene, SceneConfig};

/// A surviving first-order reflection path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathRecord {
    pub reflection_point: Point2<f64>,
    pub building_index: usize,
    /// Wall of the building, counter-clockwise; 0 and 2 are the `l` sides.
    pub wall_index: usize,
    pub path_length: f64,
    pub delay: f64,
    pub pathloss: f64,
}

fn point_segment_distance(p: Point2<f64>, a: Point2<f64>, b: Point2<f64>) -> f64 {
    let d = b - a;
    let t = ((p - a).dot(d) / d.dot(d)).clamp(0.0, 1.0);
    p.dist(a + d * t)
}

/// True iff some building blocks the segment `a → b`.
fn blocked(scene: &Scene, a: Point2<f64>, b: Point2<f64>) -> bool {
    let Ok(seg) = Segment2::new(a, b) else { return false };
    scene.buildings.iter().any(|r| {
        point_segment_distance(r.center, a, b) < r.circumradius() && segment_intersects_rect(&seg, r, GRAZING_EPS)
    })
}

/// Every unblocked single-bounce path between the terminals.
pub fn enumerate_paths(scene: &Scene, cfg: &SceneConfig) -> Vec<PathRecord> {
    let (tx, rx) = (cfg.tx, cfg.rx);
    let mut out = Vec::new();
    for (bi, rect) in scene.buildings.iter().enumerate() {
        for (wi, wall) in rect.walls().iter().enumerate() {
            // counter-clockwise walls: the exterior lies to the right
            let d = wall.direction();
            if d.cross(tx - wall.a) >= 0.0 || d.cross(rx - wall.a) >= 0.0 {
                continue;
            }
            let Some(hit) = specular_reflection(tx, rx, wall) else { continue };
            if blocked(scene, tx, hit.point) || blocked(scene, hit.point, rx) {
                continue;
            }
            let delay = hit.length / cfg.link.c;
            out.push(PathRecord {
                reflection_point: hit.point,
                building_index: bi,
                wall_index: wi,
                path_length: hit.length,
                delay,
                pathloss: rho(delay, &cfg.link).unwrap_or(0.0),
            });
        }
    }
    out
}

/// True iff the direct path crosses a building interior.
pub fn los_blocked(scene: &Scene, cfg: &SceneConfig) -> bool {
    blocked(scene, cfg.tx, cfg.rx)
}
