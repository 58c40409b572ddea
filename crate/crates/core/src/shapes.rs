//! Named figures built on the shared diameter `K = (−½, 0)`, `L = (½, 0)`.
//!
//! `C = (0, √3/2)` and `D = (0, −√3/2)` are where the unit circles about `K`
//! and `L` meet.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Circle, Edge, Figure, Orientation, Point};
use crate::littlewood::RadialProfile;

pub fn k() -> Point {
    Point::new(-0.5, 0.0)
}

pub fn l() -> Point {
    Point::new(0.5, 0.0)
}

pub fn c() -> Point {
    Point::new(0.0, 3f64.sqrt() / 2.0)
}

pub fn d() -> Point {
    Point::new(0.0, -3f64.sqrt() / 2.0)
}

/// Exterior fraction of the mixed triangle, `(5π − 6√3)/(8π − 6√3)`.
pub fn mu_star() -> f64 {
    let s3 = 3f64.sqrt();
    (5.0 * PI - 6.0 * s3) / (8.0 * PI - 6.0 * s3)
}

/// Closed-form values a shape is expected to reproduce.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Expected {
    pub area: Option<f64>,
    pub perimeter: Option<f64>,
    pub diameter: Option<f64>,
    pub mu: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedShape {
    pub name: String,
    pub figure: Figure,
    pub reference_circle: Option<Circle>,
    /// Whether the figure has diameter 1 realized by the segment KL.
    pub shares_kl: bool,
    pub expected: Expected,
}

/// Area of the intersection of two discs.
pub fn disc_disc_area(r1: f64, r2: f64, dist: f64) -> f64 {
    if dist >= r1 + r2 {
        return 0.0;
    }
    if dist <= (r1 - r2).abs() {
        let r = r1.min(r2);
        return PI * r * r;
    }
    let a1 = ((dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist * r1)).acos();
    let a2 = ((dist * dist + r2 * r2 - r1 * r1) / (2.0 * dist * r2)).acos();
    r1 * r1 * (a1 - a1.sin() * a1.cos()) + r2 * r2 * (a2 - a2.sin() * a2.cos())
}

pub fn unit_circle() -> NamedShape {
    let circle = Circle::reference();
    NamedShape {
        name: "unit_circle".into(),
        // boundary starts at L
        figure: Figure::circle(&circle),
        reference_circle: Some(circle),
        shares_kl: true,
        expected: Expected {
            area: Some(FRAC_PI_4),
            perimeter: Some(PI),
            diameter: Some(1.0),
            mu: Some(0.0),
        },
    }
}

pub fn mixed_triangle() -> NamedShape {
    let s3 = 3f64.sqrt();
    let figure = Figure::new(vec![
        Edge::segment(k(), l()),
        Edge::arc(l(), c(), k(), Orientation::Ccw),
        Edge::arc(c(), k(), l(), Orientation::Ccw),
    ])
    .expect("mixed triangle is a valid figure");
    NamedShape {
        name: "mixed_triangle".into(),
        figure,
        reference_circle: Some(Circle::reference()),
        shares_kl: true,
        expected: Expected {
            // π/3 − √3/4 = 0.61418484930437...
            area: Some((8.0 * PI - 6.0 * s3) / 24.0),
            perimeter: Some(1.0 + 2.0 * FRAC_PI_3),
            diameter: Some(1.0),
            // 0.36061737...
            mu: Some(mu_star()),
        },
    }
}

pub fn lens() -> NamedShape {
    let s3 = 3f64.sqrt();
    let figure = Figure::new(vec![
        Edge::arc(d(), c(), k(), Orientation::Ccw),
        Edge::arc(c(), d(), l(), Orientation::Ccw),
    ])
    .expect("lens is a valid figure");
    let area = 2.0 * PI / 3.0 - s3 / 2.0;
    NamedShape {
        name: "lens".into(),
        figure,
        reference_circle: Some(Circle::reference()),
        shares_kl: false,
        expected: Expected {
            area: Some(area),
            perimeter: Some(4.0 * FRAC_PI_3),
            diameter: Some(s3),
            // the reference disc lies inside the lens
            mu: Some(1.0 - FRAC_PI_4 / area),
        },
    }
}

pub fn reuleaux() -> NamedShape {
    let s3 = 3f64.sqrt();
    let figure = Figure::new(vec![
        Edge::arc(k(), l(), c(), Orientation::Ccw),
        Edge::arc(l(), c(), k(), Orientation::Ccw),
        Edge::arc(c(), k(), l(), Orientation::Ccw),
    ])
    .expect("Reuleaux triangle is a valid figure");
    let area = (PI - s3) / 2.0;
    // the reference disc lies within 1 of K and L, so only the disc about C cuts it
    let inside = disc_disc_area(0.5, 1.0, s3 / 2.0);
    NamedShape {
        name: "reuleaux".into(),
        figure,
        reference_circle: Some(Circle::reference()),
        shares_kl: true,
        expected: Expected {
            area: Some(area),
            perimeter: Some(PI),
            diameter: Some(1.0),
            mu: Some(1.0 - inside / area),
        },
    }
}

/// Triangle `K, L, M` with `|KM| = |KL| = 1` and apex angle `∠LKM`.
///
/// The angle must lie in `(0, π/3]`; at `π/3` the apex is `C`.
pub fn isosceles(apex_angle: f64) -> Result<NamedShape> {
    if !(apex_angle > 0.0 && apex_angle <= FRAC_PI_3 + 1e-15) {
        return Err(Error::Domain(format!(
            "apex angle must lie in (0, π/3], got {apex_angle}"
        )));
    }
    let m = if (apex_angle - FRAC_PI_3).abs() <= 1e-15 {
        c()
    } else {
        k() + Point::polar(apex_angle)
    };
    let figure = Figure::polygon(&[k(), l(), m])?;
    let expected = Expected {
        area: Some(0.5 * apex_angle.sin()),
        perimeter: Some(2.0 + 2.0 * (apex_angle / 2.0).sin()),
        diameter: Some(1.0),
        mu: ((apex_angle - FRAC_PI_3).abs() <= 1e-15).then(|| {
            // equilateral: the half disc minus the two circular segments cut by KC and LC
            0.5 - PI / (6.0 * 3f64.sqrt())
        }),
    };
    Ok(NamedShape {
        name: format!("isosceles:{apex_angle}"),
        figure,
        reference_circle: Some(Circle::reference()),
        shares_kl: true,
        expected,
    })
}

/// The part of the mixed triangle outside the reference disc: the upper
/// reference semicircle below, the two unit arcs through `C` above.
pub fn exterior_crescent() -> NamedShape {
    let s3 = 3f64.sqrt();
    let figure = Figure::new(vec![
        Edge::arc(k(), l(), Point::ORIGIN, Orientation::Cw),
        Edge::arc(l(), c(), k(), Orientation::Ccw),
        Edge::arc(c(), k(), l(), Orientation::Ccw),
    ])
    .expect("exterior crescent is a valid figure");
    NamedShape {
        name: "exterior_crescent".into(),
        figure,
        reference_circle: Some(Circle::reference()),
        shares_kl: true,
        expected: Expected {
            // 0.22148589...
            area: Some((5.0 * PI - 6.0 * s3) / 24.0),
            perimeter: Some(2.0 * FRAC_PI_3 + PI / 2.0),
            diameter: Some(1.0),
            mu: Some(1.0),
        },
    }
}

/// Non-convex L-shaped hexagon of diameter 1, used for hull checks.
pub fn l_shaped() -> Figure {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let pts = [(0.0, 0.0), (1.0, 0.0), (1.0, 0.3), (0.3, 0.3), (0.3, 1.0), (0.0, 1.0)]
        .map(|(x, y)| Point::new(x * s, y * s));
    Figure::polygon(&pts).expect("L shape is a valid figure")
}

/// Polygon through `(ρᵢ cos θᵢ, ρᵢ sin θᵢ)`, closed through the origin.
pub fn radial_figure(profile: &RadialProfile) -> Result<NamedShape> {
    let mut pts: Vec<Point> = Vec::with_capacity(profile.len() + 1);
    for (&t, &r) in profile.theta().iter().zip(profile.rho()) {
        let p = Point::polar(t) * r;
        if pts.last().is_none_or(|q: &Point| q.distance(p) > 1e-12) {
            pts.push(p);
        }
    }
    if pts.first().is_some_and(|p| p.distance(Point::ORIGIN) > 1e-12)
        && pts.last().is_some_and(|p| p.distance(Point::ORIGIN) > 1e-12)
    {
        pts.push(Point::ORIGIN);
    }
    if pts.len() > 1 && pts[0].distance(pts[pts.len() - 1]) <= 1e-12 {
        pts.pop();
    }
    if pts.len() < 3 {
        return Err(Error::DegenerateFigure("radial profile encloses no area".into()));
    }
    let figure = Figure::polygon(&pts)?;
    Ok(NamedShape {
        name: "radial".into(),
        figure,
        reference_circle: None,
        shares_kl: false,
        expected: Expected::default(),
    })
}

pub const LIBRARY: [&str; 6] = [
    "unit_circle",
    "mixed_triangle",
    "lens",
    "reuleaux",
    "isosceles",
    "exterior_crescent",
];

/// Looks up a library shape. `isosceles` takes an optional apex angle as
/// `isosceles:<radians>` and defaults to π/3.
pub fn by_name(name: &str) -> Result<NamedShape> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, Some(a)),
        None => (name, None),
    };
    match (base, arg) {
        ("unit_circle", None) => Ok(unit_circle()),
        ("mixed_triangle", None) => Ok(mixed_triangle()),
        ("lens", None) => Ok(lens()),
        ("reuleaux", None) => Ok(reuleaux()),
        ("exterior_crescent", None) => Ok(exterior_crescent()),
        ("isosceles", None) => isosceles(FRAC_PI_3),
        ("isosceles", Some(a)) => {
            let angle = a
                .parse::<f64>()
                .map_err(|e| Error::Domain(format!("bad apex angle `{a}`: {e}")))?;
            isosceles(angle)
        }
        _ => Err(Error::NotFound(format!("no shape named `{name}`"))),
    }
}

/// Every library shape, with the isosceles triangle at `π/3`.
pub fn library() -> Vec<NamedShape> {
    LIBRARY.iter().map(|n| by_name(n).expect("library shape")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Tolerance;

    #[test]
    fn named_points() {
        assert!((k().distance(c()) - 1.0).abs() < 1e-15);
        assert!((l().distance(c()) - 1.0).abs() < 1e-15);
        assert!((c().distance(d()) - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn isosceles_domain() {
        assert!(isosceles(0.0).is_err());
        assert!(isosceles(1.2).is_err());
        assert!(isosceles(f64::NAN).is_err());
        let t = isosceles(0.5).unwrap();
        let tol = Tolerance::default();
        assert!((t.figure.diameter(&tol) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lookup() {
        assert!(by_name("isosceles:0.25").is_ok());
        assert!(matches!(by_name("square"), Err(Error::NotFound(_))));
        assert!(matches!(by_name("isosceles:x"), Err(Error::Domain(_))));
        assert_eq!(library().len(), LIBRARY.len());
    }

    #[test]
    fn disc_disc_limits() {
        assert_eq!(disc_disc_area(1.0, 1.0, 3.0), 0.0);
        assert!((disc_disc_area(1.0, 0.5, 0.1) - PI / 4.0).abs() < 1e-15);
        assert!((disc_disc_area(1.0, 1.0, 1.0) - (2.0 * PI / 3.0 - 3f64.sqrt() / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn radial_rejects_degenerate() {
        let zero = RadialProfile::from_fn(16, |_| 0.0).unwrap();
        assert!(radial_figure(&zero).is_err());
    }
}
