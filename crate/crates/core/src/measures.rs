//! Figure ∩ disc area, exterior area and the exterior fraction μ.
//!
//! The intersection area is accumulated edge by edge as the signed area of
//! the fan from the disc center over each edge, clipped to the disc: in polar
//! coordinates about the center this is `½∫ min(ρ, r)² dφ`. Pieces of an
//! edge inside the disc contribute their boundary integral; pieces outside
//! contribute `½r²` times the angle they subtend at the center.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::geometry::{Arc, Circle, Edge, Figure, Orientation, Point, Tolerance};
use crate::error::{Error, Result};

/// How the intersection with the disc was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Exact per-edge decomposition on the segment/arc boundary.
    Analytic,
    /// Arcs replaced by chords first.
    Clipped,
    /// Monte Carlo.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Intersection {
    pub area: f64,
    pub est_error: f64,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MuReport {
    pub total_area: f64,
    pub interior_area: f64,
    pub exterior_area: f64,
    pub mu: f64,
    pub method: Method,
    pub est_error: f64,
}

/// Signed angle from `a` to `b` as seen from the origin, in `(-π, π]`.
#[inline]
fn angle_between(a: Point, b: Point) -> f64 {
    a.cross(b).atan2(a.dot(b))
}

/// Side of the disc boundary for a piece with no crossing in its interior.
/// The piece may still touch the boundary, so the decision uses the sample
/// farthest from it rather than a fixed point.
fn piece_inside(at: impl Fn(f64) -> Point, r2: f64) -> bool {
    let gap = [0.25, 0.5, 0.75]
        .map(|u| at(u).norm_sq() - r2)
        .into_iter()
        .max_by(|a, b| a.abs().total_cmp(&b.abs()))
        .unwrap_or(0.0);
    gap <= 0.0
}

/// Clipped fan term for the segment `a → b`, coordinates relative to the
/// disc center.
pub(crate) fn segment_term(a: Point, b: Point, r: f64) -> f64 {
    let d = b - a;
    let dd = d.norm_sq();
    let r2 = r * r;
    let mut ts = [0.0, 0.0, 0.0, 0.0];
    let mut n = 1;
    if dd > 0.0 {
        let half_b = a.dot(d);
        let c = a.norm_sq() - r2;
        let disc = half_b * half_b - dd * c;
        if disc > 0.0 {
            let s = disc.sqrt();
            for t in [(-half_b - s) / dd, (-half_b + s) / dd] {
                if t > 0.0 && t < 1.0 {
                    ts[n] = t;
                    n += 1;
                }
            }
        }
    }
    ts[n] = 1.0;
    n += 1;

    let mut sum = 0.0;
    for w in ts[..n].windows(2) {
        let p = a + d * w[0];
        let q = a + d * w[1];
        let inside = piece_inside(|u| a + d * (w[0] + u * (w[1] - w[0])), r2);
        sum += if inside {
            0.5 * p.cross(q)
        } else {
            0.5 * r2 * angle_between(p, q)
        };
    }
    sum
}

/// Clipped fan term for an arc; `center` is the disc center.
fn arc_term(arc: &Arc, center: Point, r: f64, eps: f64) -> f64 {
    let q = arc.center - center;
    let big_r = arc.radius;
    let d = q.norm();
    let r2 = r * r;
    let sweep = arc.sweep();
    let sign = match arc.orientation {
        Orientation::Ccw => 1.0,
        Orientation::Cw => -1.0,
    };

    if d <= eps * big_r.max(1.0) && (big_r - r).abs() <= eps * r.max(1.0) {
        // the arc lies on the disc boundary
        return 0.5 * r2 * sign * sweep;
    }

    // split offsets along the arc where it crosses the disc boundary
    let mut cuts = vec![0.0];
    if d > 0.0 && d <= big_r + r && d >= (big_r - r).abs() {
        let cos_g = ((big_r * big_r + d * d - r2) / (2.0 * big_r * d)).clamp(-1.0, 1.0);
        let gamma = cos_g.acos();
        let beta = (-q).angle();
        let mut inner: Vec<f64> = [beta - gamma, beta + gamma]
            .iter()
            .map(|&a| arc.offset_of_angle(a))
            .filter(|&u| u > 1e-14 && u < sweep - 1e-14)
            .collect();
        inner.sort_by(f64::total_cmp);
        inner.dedup_by(|a, b| (*a - *b).abs() <= 1e-14);
        cuts.extend(inner);
    }
    cuts.push(sweep);

    let mut sum = 0.0;
    for w in cuts.windows(2) {
        let p = arc.point_at_offset(w[0]) - center;
        let e = arc.point_at_offset(w[1]) - center;
        let piece = sign * (w[1] - w[0]);
        if piece_inside(|u| arc.point_at_offset(w[0] + u * (w[1] - w[0])) - center, r2) {
            sum += 0.5 * p.cross(e) + 0.5 * big_r * big_r * (piece - piece.sin());
        } else {
            // angle subtended at the disc center, including a full turn when
            // the center sits inside the circular segment of this piece
            let mut turn = angle_between(p, e);
            if q.norm_sq() < big_r * big_r {
                let side = (e - p).cross(-p);
                if piece.abs() >= TAU - 1e-15 {
                    turn += sign * TAU;
                } else if sign > 0.0 && side < 0.0 {
                    turn += TAU;
                } else if sign < 0.0 && side > 0.0 {
                    turn -= TAU;
                }
            }
            sum += 0.5 * r2 * turn;
        }
    }
    sum
}

fn scale_of(f: &Figure, c: &Circle) -> f64 {
    let (lo, hi) = f.bounding_box();
    (hi - lo).norm().max(c.radius)
}

/// Exact area of `f ∩ disc(c)`.
pub fn disc_intersection_area(f: &Figure, c: &Circle, tol: &Tolerance) -> Intersection {
    let area: f64 = f
        .edges()
        .iter()
        .map(|e| match e {
            Edge::Segment { start, end } => segment_term(*start - c.center, *end - c.center, c.radius),
            Edge::Arc(a) => arc_term(a, c.center, c.radius, tol.geom_eps),
        })
        .sum();
    let s = scale_of(f, c);
    Intersection {
        area,
        est_error: 64.0 * f64::EPSILON * (f.edges().len() as f64) * s * s,
        method: Method::Analytic,
    }
}

/// Area of `f ∩ disc(c)` after replacing arcs by chords of sagitta at most
/// `max_sagitta`. The error is bounded by `perimeter · max_sagitta`.
pub fn disc_intersection_area_clipped(f: &Figure, c: &Circle, max_sagitta: f64) -> Result<Intersection> {
    let poly = f.discretize(max_sagitta)?;
    let pts = poly.vertices();
    let area = polygon_disc_intersection_area(&pts, c);
    let exact_edges = if f.is_polygon() { 0.0 } else { f.perimeter() * max_sagitta };
    let s = scale_of(f, c);
    Ok(Intersection {
        area,
        est_error: exact_edges + 64.0 * f64::EPSILON * (pts.len() as f64) * s * s,
        method: Method::Clipped,
    })
}

/// Area of the simple polygon `pts ∩ disc(c)` (signed by orientation).
pub fn polygon_disc_intersection_area(pts: &[Point], c: &Circle) -> f64 {
    let n = pts.len();
    (0..n)
        .map(|i| segment_term(pts[i] - c.center, pts[(i + 1) % n] - c.center, c.radius))
        .sum()
}

/// Shoelace area of a closed polygon (positive when counter-clockwise).
pub fn polygon_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    0.5 * (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum::<f64>()
}

pub fn exterior_area(f: &Figure, c: &Circle, tol: &Tolerance) -> Result<f64> {
    Ok(mu(f, c, tol)?.exterior_area)
}

pub fn mu(f: &Figure, c: &Circle, tol: &Tolerance) -> Result<MuReport> {
    report(f.area(), disc_intersection_area(f, c, tol))
}

pub fn mu_clipped(f: &Figure, c: &Circle, max_sagitta: f64) -> Result<MuReport> {
    report(f.area(), disc_intersection_area_clipped(f, c, max_sagitta)?)
}

/// Builds the report, snapping values within `est_error` of 0 or of the
/// total onto those bounds.
fn report(total: f64, inter: Intersection) -> Result<MuReport> {
    let err = inter.est_error;
    if total <= err {
        return Err(Error::DegenerateFigure(format!(
            "figure area {total:e} is zero; the exterior fraction is undefined"
        )));
    }
    let mut interior = inter.area;
    if interior < -err || interior > total + err {
        return Err(Error::Consistency(format!(
            "disc intersection {interior:e} outside [0, {total:e}] beyond the error bound {err:e}"
        )));
    }
    if interior <= err {
        interior = 0.0;
    } else if total - interior <= err {
        interior = total;
    }
    let exterior = total - interior;
    Ok(MuReport {
        total_area: total,
        interior_area: interior,
        exterior_area: exterior,
        mu: exterior / total,
        method: inter.method,
        est_error: err,
    })
}

/// Outcome of the diameter-one area bound for a figure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LittlewoodVerdict {
    Ok { area: f64, diameter: f64, bound: f64 },
    Violated { area: f64, diameter: f64, bound: f64 },
    NotApplicable { diameter: f64 },
}

impl LittlewoodVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, LittlewoodVerdict::Ok { .. })
    }
}

/// For a figure of diameter at most 1, checks `area ≤ π/4`.
pub fn littlewood_check(f: &Figure, tol: &Tolerance) -> LittlewoodVerdict {
    let diameter = f.diameter(tol);
    if diameter > 1.0 + tol.geom_eps {
        return LittlewoodVerdict::NotApplicable { diameter };
    }
    let area = f.area();
    let bound = std::f64::consts::FRAC_PI_4;
    if area <= bound + tol.area_tol {
        LittlewoodVerdict::Ok { area, diameter, bound }
    } else {
        LittlewoodVerdict::Violated { area, diameter, bound }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn square_inside_and_outside() {
        let c = Circle::new(Point::ORIGIN, 10.0).unwrap();
        let sq = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        assert!((polygon_disc_intersection_area(&sq, &c) - 1.0).abs() < 1e-15);
        let far = Circle::new(Point::new(5.0, 5.0), 1.0).unwrap();
        assert!(polygon_disc_intersection_area(&sq, &far).abs() < 1e-15);
    }

    #[test]
    fn big_square_clips_whole_disc() {
        let c = Circle::new(Point::new(0.1, -0.2), 0.3).unwrap();
        let sq = [
            Point::new(-1.0, -1.0),
            Point::new(1.0, -1.0),
            Point::new(1.0, 1.0),
            Point::new(-1.0, 1.0),
        ];
        assert!((polygon_disc_intersection_area(&sq, &c) - c.area()).abs() < 1e-15);
    }

    #[test]
    fn half_plane_cut() {
        // square [0,2]×[-2,2] against the unit disc: half the disc
        let sq = [
            Point::new(0.0, -2.0),
            Point::new(2.0, -2.0),
            Point::new(2.0, 2.0),
            Point::new(0.0, 2.0),
        ];
        let c = Circle::new(Point::ORIGIN, 1.0).unwrap();
        assert!((polygon_disc_intersection_area(&sq, &c) - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn circle_against_itself_and_shifted() {
        let c = Circle::reference();
        let f = Figure::circle(&c);
        let r = mu(&f, &c, &tol()).unwrap();
        assert_eq!(r.mu, 0.0);
        assert!((r.interior_area - PI / 4.0).abs() < 1e-15);

        // two unit circles at distance 1: lens area 2π/3 − √3/2
        let a = Figure::circle(&Circle::new(Point::ORIGIN, 1.0).unwrap());
        let b = Circle::new(Point::new(1.0, 0.0), 1.0).unwrap();
        let lens = 2.0 * PI / 3.0 - 3f64.sqrt() / 2.0;
        assert!((disc_intersection_area(&a, &b, &tol()).area - lens).abs() < 1e-14);
    }

    #[test]
    fn disjoint_and_containing_circles() {
        let f = Figure::circle(&Circle::new(Point::ORIGIN, 1.0).unwrap());
        let far = Circle::new(Point::new(3.0, 0.0), 1.0).unwrap();
        assert!(disc_intersection_area(&f, &far, &tol()).area.abs() < 1e-14);
        let small = Circle::new(Point::new(0.2, 0.0), 0.3).unwrap();
        assert!((disc_intersection_area(&f, &small, &tol()).area - small.area()).abs() < 1e-14);
        let big = Circle::new(Point::new(0.2, 0.0), 3.0).unwrap();
        assert!((disc_intersection_area(&f, &big, &tol()).area - PI).abs() < 1e-14);
    }

    #[test]
    fn zero_area_is_an_error() {
        let inter = Intersection {
            area: 0.0,
            est_error: 1e-15,
            method: Method::Analytic,
        };
        assert!(matches!(report(0.0, inter), Err(Error::DegenerateFigure(_))));
    }

    #[test]
    fn inconsistent_intersection_is_an_error() {
        let inter = Intersection {
            area: 2.0,
            est_error: 1e-15,
            method: Method::Analytic,
        };
        assert!(matches!(report(1.0, inter), Err(Error::Consistency(_))));
    }

    /// Half lens: an arc internally tangent to the disc at its midpoint.
    /// Moving the configuration perturbs the tangency by an ulp either way.
    #[test]
    fn internally_tangent_arc() {
        let s3 = 3f64.sqrt();
        for (turn, shift) in [(0.0, 0.0), (5.431448335890793, 1.7519788917262025), (1.1, -0.3)] {
            let (c, s) = (f64::cos(turn), f64::sin(turn));
            let m = |x: f64, y: f64| Point::new(c * x - s * y, s * x + c * y + shift);
            let (d, cc, k) = (m(0.0, -s3 / 2.0), m(0.0, s3 / 2.0), m(-0.5, 0.0));
            let f = Figure::new(vec![Edge::arc(d, cc, k, Orientation::Ccw), Edge::segment(cc, d)]).unwrap();
            let disc = Circle::new(Point::new(0.0, shift), 0.5).unwrap();
            let got = disc_intersection_area(&f, &disc, &tol()).area;
            assert!((got - PI / 8.0).abs() < 1e-14, "turn {turn}: {got}");
        }
    }
}
