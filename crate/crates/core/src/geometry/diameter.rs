//! Diameter of a segment/arc figure.
//!
//! The distance between two boundary points, viewed as a function of their
//! positions along two edges, is maximized either at edge endpoints, at the
//! farthest point of an arc from a fixed endpoint, or at the points where the
//! line through two arc centers meets both arcs. All of these candidates are
//! enumerated exactly; a discretized rotating-calipers pass is folded in as a
//! fallback.

use super::edge::Arc;
use super::hull::point_set_diameter;
use super::{Figure, Point, Tolerance};

const SPAN_EPS: f64 = 1e-12;

fn arc_point(a: &Arc, dir: Point) -> Option<Point> {
    a.spans_angle(dir.angle(), SPAN_EPS)
        .then(|| a.center + dir * a.radius)
}

/// Exact candidate maximum over arc-derived critical points and vertices.
pub fn diameter_candidates(f: &Figure) -> f64 {
    let verts = f.vertices();
    let arcs: Vec<&Arc> = f.arcs().collect();
    let mut best = 0.0f64;

    for (i, a) in verts.iter().enumerate() {
        for b in &verts[i + 1..] {
            best = best.max(a.distance(*b));
        }
    }

    for arc in &arcs {
        for v in &verts {
            let away = arc.center - *v;
            if away.norm() > 0.0 {
                if let Some(p) = arc_point(arc, away.normalized()) {
                    best = best.max(v.distance(p));
                }
            } else {
                best = best.max(arc.radius);
            }
        }
    }

    for (i, a) in arcs.iter().enumerate() {
        for b in &arcs[i..] {
            let axis = b.center - a.center;
            if axis.norm() > SPAN_EPS * a.radius.max(b.radius) {
                let u = axis.normalized();
                for sa in [1.0, -1.0] {
                    let Some(pa) = arc_point(a, u * sa) else { continue };
                    for sb in [1.0, -1.0] {
                        if let Some(pb) = arc_point(b, u * sb) {
                            best = best.max(pa.distance(pb));
                        }
                    }
                }
            } else {
                // concentric: look for antipodal directions shared by the spans
                let reach = a.radius + b.radius;
                let antipodal = |x: &Arc, y: &Arc| {
                    [x.start - x.center, x.end - x.center]
                        .into_iter()
                        .any(|d| y.spans_angle((-d).angle(), SPAN_EPS))
                };
                if a.full_turn || b.full_turn || antipodal(a, b) || antipodal(b, a) {
                    best = best.max(reach);
                }
            }
        }
    }
    best
}

impl Figure {
    /// Largest distance between two boundary points.
    pub fn diameter(&self, tol: &Tolerance) -> f64 {
        let exact = diameter_candidates(self);
        if self.is_polygon() {
            return exact;
        }
        let fallback = point_set_diameter(&self.discretize_points(tol.arc_max_sagitta));
        exact.max(fallback)
    }
}
