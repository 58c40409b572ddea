use std::f64::consts::{PI, TAU};

use super::classify::Classifier;
use super::edge::{Arc, Edge, Orientation};
use super::simple::find_self_intersection;
use super::{Circle, Point, Tolerance};
use crate::error::{Error, Result};

/// Relative sagitta used when checking a boundary for self-intersection.
const SIMPLICITY_SAGITTA: f64 = 1e-5;

/// Turns sharper than this (radians) away from straight count as corners.
const ANGLE_EPS: f64 = 1e-9;

/// Point classification returned by [`Figure::contains`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// A closed, simple, positively oriented boundary made of segments and arcs.
///
/// Values of this type always satisfy the figure invariants; the only way to
/// obtain one from raw edges is through [`Figure::new`] or
/// [`Figure::with_tolerance`].
#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    edges: Vec<Edge>,
}

impl Figure {
    pub fn new(edges: Vec<Edge>) -> Result<Self> {
        Self::with_tolerance(edges, &Tolerance::default())
    }

    /// Validates and normalizes `edges`: snaps closure gaps below
    /// `geom_eps`, merges collinear consecutive segments, and reverses
    /// negatively oriented input.
    pub fn with_tolerance(edges: Vec<Edge>, tol: &Tolerance) -> Result<Self> {
        let eps = tol.geom_eps;
        if edges.is_empty() {
            return Err(Error::InvalidFigure("no edges".into()));
        }
        for (i, e) in edges.iter().enumerate() {
            check_edge(i, e, eps)?;
        }
        let n = edges.len();
        for i in 0..n {
            let gap = edges[i].end().distance(edges[(i + 1) % n].start());
            if gap > eps {
                return Err(Error::InvalidFigure(format!(
                    "boundary not closed: edge {i} ends {gap:e} away from the next start"
                )));
            }
        }
        let mut edges: Vec<Edge> = (0..n)
            .map(|i| edges[i].with_start(edges[(i + n - 1) % n].end()))
            .collect();
        if let Some(Edge::Arc(a)) = edges.first() {
            if a.full_turn && n > 1 {
                return Err(Error::InvalidFigure("full circle must be the only edge".into()));
            }
        }
        merge_collinear(&mut edges, eps);

        let mut fig = Figure { edges };
        let signed = fig.signed_area();
        let scale = fig.bounding_size().max(eps);
        if signed.abs() <= eps * scale {
            return Err(Error::DegenerateFigure(format!("enclosed area {signed:e} is zero")));
        }
        if signed < 0.0 {
            fig = fig.reversed();
        }

        let poly = fig.discretize_points(SIMPLICITY_SAGITTA * scale);
        if let Some((i, j)) = find_self_intersection(&poly) {
            return Err(Error::InvalidFigure(format!(
                "boundary is not simple (pieces {i} and {j} of the discretized outline meet)"
            )));
        }
        Ok(fig)
    }

    pub fn polygon(points: &[Point]) -> Result<Self> {
        Self::polygon_with_tolerance(points, &Tolerance::default())
    }

    pub fn polygon_with_tolerance(points: &[Point], tol: &Tolerance) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidFigure(format!(
                "polygon needs at least 3 vertices, got {}",
                points.len()
            )));
        }
        let n = points.len();
        let edges = (0..n)
            .map(|i| Edge::segment(points[i], points[(i + 1) % n]))
            .collect();
        Self::with_tolerance(edges, tol)
    }

    pub fn circle(c: &Circle) -> Self {
        Figure {
            edges: vec![Edge::full_circle(c.center, c.radius, 0.0)],
        }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Start points of the edges, in boundary order.
    pub fn vertices(&self) -> Vec<Point> {
        self.edges.iter().map(Edge::start).collect()
    }

    pub fn is_polygon(&self) -> bool {
        self.edges.iter().all(|e| matches!(e, Edge::Segment { .. }))
    }

    pub fn arcs(&self) -> impl Iterator<Item = &Arc> {
        self.edges.iter().filter_map(Edge::as_arc)
    }

    pub fn signed_area(&self) -> f64 {
        self.edges.iter().map(Edge::area_term).sum()
    }

    /// Enclosed area: shoelace over the edge chords plus a circular-segment
    /// term per arc.
    pub fn area(&self) -> f64 {
        self.signed_area()
    }

    pub fn perimeter(&self) -> f64 {
        self.edges.iter().map(Edge::length).sum()
    }

    pub fn reversed(&self) -> Self {
        Figure {
            edges: self.edges.iter().rev().map(Edge::reversed).collect(),
        }
    }

    /// Tight axis-aligned bounding box.
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut add = |p: Point| {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        };
        for e in &self.edges {
            add(e.start());
            add(e.end());
            if let Edge::Arc(a) = e {
                for k in 0..4 {
                    let theta = k as f64 * PI / 2.0;
                    if a.spans_angle(theta, 0.0) {
                        add(a.center + Point::polar(theta) * a.radius);
                    }
                }
            }
        }
        (lo, hi)
    }

    fn bounding_size(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi - lo).norm()
    }

    /// Outline with every arc replaced by chords of sagitta at most
    /// `max_sagitta`; each arc endpoint is kept exactly.
    pub(crate) fn discretize_points(&self, max_sagitta: f64) -> Vec<Point> {
        let mut pts = Vec::new();
        for e in &self.edges {
            pts.push(e.start());
            if let Edge::Arc(a) = e {
                pts.extend(a.interior_samples(a.chords_for_sagitta(max_sagitta)));
            }
        }
        pts
    }

    /// Segments-only copy of the figure; arcs become chains of chords whose
    /// sagitta does not exceed `max_sagitta`. Polygons come back unchanged.
    pub fn discretize(&self, max_sagitta: f64) -> Result<Figure> {
        if !(max_sagitta.is_finite() && max_sagitta > 0.0) {
            return Err(Error::Domain(format!("max_sagitta must be positive, got {max_sagitta}")));
        }
        if self.is_polygon() {
            return Ok(self.clone());
        }
        let pts = self.discretize_points(max_sagitta);
        let n = pts.len();
        Ok(Figure {
            edges: (0..n).map(|i| Edge::segment(pts[i], pts[(i + 1) % n])).collect(),
        })
    }

    /// True iff every corner turns left (or goes straight) and every arc
    /// bulges outward.
    pub fn is_convex(&self) -> bool {
        let n = self.edges.len();
        for (i, e) in self.edges.iter().enumerate() {
            if let Edge::Arc(a) = e {
                if a.orientation == Orientation::Cw {
                    return false;
                }
                if a.full_turn {
                    return n == 1;
                }
            }
            let t_in = e.end_tangent();
            let t_out = self.edges[(i + 1) % n].start_tangent();
            let turn = t_in.cross(t_out).atan2(t_in.dot(t_out));
            if turn < -ANGLE_EPS || turn > PI - ANGLE_EPS {
                return false;
            }
        }
        true
    }

    /// Classifies `p` as inside, on (within `geom_eps`), or outside the
    /// boundary.
    pub fn contains(&self, p: Point, tol: &Tolerance) -> Location {
        Classifier::new(self, tol.geom_eps).classify(p)
    }

    /// Containment tester for repeated queries against this figure.
    pub fn classifier(&self, tol: &Tolerance) -> Classifier<'_> {
        Classifier::new(self, tol.geom_eps)
    }

    /// Winding number of the boundary around `p`; `p` must not lie on it.
    ///
    /// Each arc contributes the angle subtended by its chord plus one full
    /// turn when `p` sits in the circular segment cut off by that chord.
    pub fn winding_number(&self, p: Point) -> i64 {
        let mut total = 0.0;
        for e in &self.edges {
            let a = e.start() - p;
            let b = e.end() - p;
            total += a.cross(b).atan2(a.dot(b));
            if let Edge::Arc(arc) = e {
                total += arc_loop_turns(arc, p) * TAU;
            }
        }
        (total / TAU).round() as i64
    }
}

/// Winding (±1 or 0) of the closed loop "arc, then chord back" around `p`.
fn arc_loop_turns(arc: &Arc, p: Point) -> f64 {
    if (p - arc.center).norm_sq() >= arc.radius * arc.radius {
        return 0.0;
    }
    if arc.full_turn {
        return match arc.orientation {
            Orientation::Ccw => 1.0,
            Orientation::Cw => -1.0,
        };
    }
    let side = (arc.end - arc.start).cross(p - arc.start);
    match arc.orientation {
        Orientation::Ccw if side < 0.0 => 1.0,
        Orientation::Cw if side > 0.0 => -1.0,
        _ => 0.0,
    }
}

fn check_edge(i: usize, e: &Edge, eps: f64) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidFigure(format!("edge {i}: {msg}")));
    if !(e.start().is_finite() && e.end().is_finite()) {
        return bad("non-finite coordinate".into());
    }
    match e {
        Edge::Segment { start, end } => {
            if start.distance(*end) <= eps {
                return bad("zero-length segment".into());
            }
        }
        Edge::Arc(a) => {
            if !a.center.is_finite() || !(a.radius.is_finite() && a.radius > 0.0) {
                return bad(format!("arc radius {} / center must be finite and positive", a.radius));
            }
            for (name, p) in [("start", a.start), ("end", a.end)] {
                let off = (p.distance(a.center) - a.radius).abs();
                if off > eps * a.radius.max(1.0) {
                    return bad(format!("arc {name} is {off:e} off its circle"));
                }
            }
            let closed = a.start.distance(a.end) <= eps;
            if a.full_turn && !closed {
                return bad("full-turn arc must start where it ends".into());
            }
            if !a.full_turn && closed {
                return bad("zero-length arc".into());
            }
        }
    }
    Ok(())
}

fn merge_collinear(edges: &mut Vec<Edge>, eps: f64) {
    let collinear = |a: &Edge, b: &Edge| match (a, b) {
        (Edge::Segment { start: s0, end: m }, Edge::Segment { end: e1, .. }) => {
            let u = *m - *s0;
            let v = *e1 - *m;
            u.dot(v) > 0.0 && u.cross(v).abs() <= eps * u.norm() * v.norm()
        }
        _ => false,
    };
    let mut i = 0;
    while edges.len() > 3 && i < edges.len() {
        let j = (i + 1) % edges.len();
        if collinear(&edges[i], &edges[j]) {
            let merged = Edge::segment(edges[i].start(), edges[j].end());
            edges[i] = merged;
            edges.remove(j);
            if j < i {
                i -= 1;
            }
        } else {
            i += 1;
        }
    }
}
