//! Point-in-figure classification by ray crossing.
//!
//! A horizontal ray is cast from the query point towards +x and its crossings
//! with the exact segments and arcs are counted. Rays that graze a vertex or
//! an arc's horizontal tangent fall back to the winding number.

use super::edge::{Arc, Edge, Orientation};
use super::{Figure, Location, Point};

#[derive(Debug, Clone)]
enum Piece {
    Segment {
        a: Point,
        b: Point,
    },
    Arc {
        center: Point,
        r: f64,
        /// Start and end relative to the center, counter-clockwise.
        from: Point,
        to: Point,
        minor: bool,
        full: bool,
    },
}

impl Piece {
    fn from_arc(arc: &Arc) -> Self {
        let (s, e) = match arc.orientation {
            Orientation::Ccw => (arc.start, arc.end),
            Orientation::Cw => (arc.end, arc.start),
        };
        Piece::Arc {
            center: arc.center,
            r: arc.radius,
            from: s - arc.center,
            to: e - arc.center,
            minor: arc.sweep() <= std::f64::consts::PI,
            full: arc.full_turn,
        }
    }
}

#[inline]
fn in_span(from: Point, to: Point, minor: bool, full: bool, v: Point) -> bool {
    if full {
        return true;
    }
    if minor {
        from.cross(v) >= 0.0 && v.cross(to) >= 0.0
    } else {
        !(to.cross(v) > 0.0 && v.cross(from) > 0.0)
    }
}

/// A figure prepared for many containment queries.
#[derive(Debug, Clone)]
pub struct Classifier<'a> {
    figure: &'a Figure,
    pieces: Vec<Piece>,
    /// Heights at which a horizontal ray is degenerate.
    critical_y: Vec<f64>,
    eps: f64,
}

impl<'a> Classifier<'a> {
    pub fn new(figure: &'a Figure, geom_eps: f64) -> Self {
        let mut critical_y = Vec::new();
        let pieces = figure
            .edges()
            .iter()
            .map(|e| {
                critical_y.push(e.start().y);
                match e {
                    Edge::Segment { start, end } => Piece::Segment { a: *start, b: *end },
                    Edge::Arc(a) => {
                        critical_y.push(a.center.y + a.radius);
                        critical_y.push(a.center.y - a.radius);
                        Piece::from_arc(a)
                    }
                }
            })
            .collect();
        Self {
            figure,
            pieces,
            critical_y,
            eps: geom_eps,
        }
    }

    fn on_boundary(&self, p: Point) -> bool {
        let eps = self.eps;
        self.pieces.iter().any(|piece| match *piece {
            Piece::Segment { a, b } => super::edge::segment_distance(a, b, p) <= eps,
            Piece::Arc {
                center,
                r,
                from,
                to,
                minor,
                full,
            } => {
                let v = p - center;
                let d = v.norm();
                if (d - r).abs() > eps {
                    // off the circle: only an endpoint can be that close
                    (v - from).norm() <= eps || (v - to).norm() <= eps
                } else {
                    d == 0.0 || in_span(from, to, minor, full, v) || (v - from).norm() <= eps || (v - to).norm() <= eps
                }
            }
        })
    }

    fn crossings(&self, p: Point) -> usize {
        let mut count = 0;
        for piece in &self.pieces {
            match *piece {
                Piece::Segment { a, b } => {
                    if (a.y > p.y) != (b.y > p.y) {
                        let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                        if x > p.x {
                            count += 1;
                        }
                    }
                }
                Piece::Arc {
                    center,
                    r,
                    from,
                    to,
                    minor,
                    full,
                } => {
                    let dy = p.y - center.y;
                    let h2 = r * r - dy * dy;
                    if h2 <= 0.0 {
                        continue;
                    }
                    let dx = h2.sqrt();
                    for sx in [dx, -dx] {
                        if center.x + sx > p.x && in_span(from, to, minor, full, Point::new(sx, dy)) {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    pub fn classify(&self, p: Point) -> Location {
        if self.on_boundary(p) {
            return Location::Boundary;
        }
        let grazing = self.critical_y.iter().any(|&y| (y - p.y).abs() <= self.eps);
        let inside = if grazing {
            self.figure.winding_number(p) != 0
        } else {
            self.crossings(p) % 2 == 1
        };
        if inside {
            Location::Inside
        } else {
            Location::Outside
        }
    }
}
