use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        }
    }

    fn sign(self) -> f64 {
        match self {
            Orientation::Ccw => 1.0,
            Orientation::Cw => -1.0,
        }
    }
}

/// Circular arc from `start` to `end` around `center`.
///
/// A full circle has `start == end` and `full_turn` set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub start: Point,
    pub end: Point,
    pub center: Point,
    pub radius: f64,
    pub orientation: Orientation,
    pub full_turn: bool,
}

/// Wraps an angle into `[0, 2π)`.
#[inline]
pub(crate) fn wrap_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

impl Arc {
    pub fn start_angle(&self) -> f64 {
        (self.start - self.center).angle()
    }

    /// Unsigned swept angle in `(0, 2π]`.
    pub fn sweep(&self) -> f64 {
        if self.full_turn {
            return TAU;
        }
        let a0 = self.start_angle();
        let a1 = (self.end - self.center).angle();
        let d = match self.orientation {
            Orientation::Ccw => wrap_angle(a1 - a0),
            Orientation::Cw => wrap_angle(a0 - a1),
        };
        if d == 0.0 {
            TAU
        } else {
            d
        }
    }

    /// Swept angle, negative for clockwise arcs.
    pub fn signed_sweep(&self) -> f64 {
        self.orientation.sign() * self.sweep()
    }

    pub fn length(&self) -> f64 {
        self.radius * self.sweep()
    }

    /// Point at angular offset `u` (unsigned, `0..=sweep`) from the start.
    pub fn point_at_offset(&self, u: f64) -> Point {
        self.center + Point::polar(self.start_angle() + self.orientation.sign() * u) * self.radius
    }

    /// Angular offset of direction `theta` from the start, measured along
    /// the arc direction, in `[0, 2π)`.
    pub fn offset_of_angle(&self, theta: f64) -> f64 {
        let a0 = self.start_angle();
        match self.orientation {
            Orientation::Ccw => wrap_angle(theta - a0),
            Orientation::Cw => wrap_angle(a0 - theta),
        }
    }

    /// Whether the ray from the center at angle `theta` hits the arc.
    pub fn spans_angle(&self, theta: f64, eps: f64) -> bool {
        if self.full_turn {
            return true;
        }
        let off = self.offset_of_angle(theta);
        off <= self.sweep() + eps || off >= TAU - eps
    }

    pub fn midpoint(&self) -> Point {
        self.point_at_offset(0.5 * self.sweep())
    }

    /// Unit tangent in the direction of travel at a point on the arc.
    pub fn tangent_at(&self, p: Point) -> Point {
        let r = (p - self.center).normalized();
        match self.orientation {
            Orientation::Ccw => r.perp(),
            Orientation::Cw => -r.perp(),
        }
    }

    /// Area between the chord and the arc, signed by orientation.
    pub fn segment_area(&self) -> f64 {
        let phi = self.signed_sweep();
        0.5 * self.radius * self.radius * (phi - phi.sin())
    }

    /// Distance from `p` to the arc.
    pub fn distance_to(&self, p: Point) -> f64 {
        let v = p - self.center;
        let d = v.norm();
        if d > 0.0 && self.spans_angle(v.angle(), 0.0) {
            (d - self.radius).abs()
        } else if d == 0.0 {
            self.radius
        } else {
            p.distance(self.start).min(p.distance(self.end))
        }
    }

    /// Points splitting the arc into `n` equal pieces, endpoints excluded.
    pub fn interior_samples(&self, n: usize) -> impl Iterator<Item = Point> + '_ {
        let sweep = self.sweep();
        (1..n).map(move |k| self.point_at_offset(sweep * k as f64 / n as f64))
    }

    /// Number of chords needed so that no chord is farther than
    /// `max_sagitta` from the arc.
    pub fn chords_for_sagitta(&self, max_sagitta: f64) -> usize {
        // sagitta of a chord subtending δ is 2r·sin²(δ/4)
        let x = (max_sagitta / (2.0 * self.radius)).sqrt().min(1.0);
        let delta = 4.0 * x.asin();
        let n = (self.sweep() / delta).ceil() as usize;
        let min = if self.full_turn { 3 } else { 1 };
        n.max(min)
    }

    pub fn reversed(&self) -> Self {
        Self {
            start: self.end,
            end: self.start,
            orientation: self.orientation.flipped(),
            ..*self
        }
    }

    /// Whether the arc is longer than a half circle.
    pub fn is_major(&self) -> bool {
        self.sweep() > PI
    }
}

/// One piece of a figure boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Edge {
    Segment { start: Point, end: Point },
    Arc(Arc),
}

impl Edge {
    pub fn segment(start: Point, end: Point) -> Self {
        Edge::Segment { start, end }
    }

    /// Arc from `start` to `end`; the radius is taken from `start`.
    pub fn arc(start: Point, end: Point, center: Point, orientation: Orientation) -> Self {
        Edge::Arc(Arc {
            start,
            end,
            center,
            radius: start.distance(center),
            orientation,
            full_turn: false,
        })
    }

    pub fn full_circle(center: Point, radius: f64, start_angle: f64) -> Self {
        let p = center + Point::polar(start_angle) * radius;
        Edge::Arc(Arc {
            start: p,
            end: p,
            center,
            radius,
            orientation: Orientation::Ccw,
            full_turn: true,
        })
    }

    pub fn start(&self) -> Point {
        match self {
            Edge::Segment { start, .. } => *start,
            Edge::Arc(a) => a.start,
        }
    }

    pub fn end(&self) -> Point {
        match self {
            Edge::Segment { end, .. } => *end,
            Edge::Arc(a) => a.end,
        }
    }

    pub fn as_arc(&self) -> Option<&Arc> {
        match self {
            Edge::Arc(a) => Some(a),
            Edge::Segment { .. } => None,
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Edge::Segment { start, end } => start.distance(*end),
            Edge::Arc(a) => a.length(),
        }
    }

    /// This edge's term of the boundary integral ½∮(x dy − y dx).
    pub fn area_term(&self) -> f64 {
        let chord = 0.5 * self.start().cross(self.end());
        match self {
            Edge::Segment { .. } => chord,
            Edge::Arc(a) => chord + a.segment_area(),
        }
    }

    pub fn start_tangent(&self) -> Point {
        match self {
            Edge::Segment { start, end } => (*end - *start).normalized(),
            Edge::Arc(a) => a.tangent_at(a.start),
        }
    }

    pub fn end_tangent(&self) -> Point {
        match self {
            Edge::Segment { start, end } => (*end - *start).normalized(),
            Edge::Arc(a) => a.tangent_at(a.end),
        }
    }

    pub fn distance_to(&self, p: Point) -> f64 {
        match self {
            Edge::Segment { start, end } => segment_distance(*start, *end, p),
            Edge::Arc(a) => a.distance_to(p),
        }
    }

    pub fn reversed(&self) -> Self {
        match self {
            Edge::Segment { start, end } => Edge::Segment {
                start: *end,
                end: *start,
            },
            Edge::Arc(a) => Edge::Arc(a.reversed()),
        }
    }

    pub fn with_start(self, p: Point) -> Self {
        match self {
            Edge::Segment { end, .. } => Edge::Segment { start: p, end },
            Edge::Arc(a) => {
                let end = if a.full_turn { p } else { a.end };
                Edge::Arc(Arc { start: p, end, ..a })
            }
        }
    }
}

pub(crate) fn segment_distance(a: Point, b: Point, p: Point) -> f64 {
    let d = b - a;
    let len_sq = d.norm_sq();
    if len_sq == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(d) / len_sq).clamp(0.0, 1.0);
    p.distance(a + d * t)
}
