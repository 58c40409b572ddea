//! The identity suite behind `verify`, and SVG drawings of figures.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::fuzz;
use crate::geometry::{convex_hull, Circle, Edge, Figure, Orientation, Tolerance};
use crate::littlewood::{max_chord_sq, radial_area, RadialProfile};
use crate::measures::{self, littlewood_check, LittlewoodVerdict};
use crate::optimizer::{optimize_mu, perturbation_audit, OptConfig};
use crate::oracle;
use crate::shapes::{self, mu_star, NamedShape};

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Closed form stated in the source derivation.
    Paper,
    /// Elementary identity.
    Trivial,
    /// Computed independently and confirmed by the Monte Carlo oracle.
    Derived,
}

/// How `computed` is compared with `expected`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `|computed − expected| ≤ tolerance`
    Eq,
    /// `computed < expected`
    Lt,
    /// `computed > expected`
    Gt,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub provenance: Provenance,
    pub relation: Relation,
    pub computed: f64,
    pub abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub overall: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Tolerance for values computed through chord discretization.
    pub area_tol: f64,
    /// Samples for the Monte Carlo cross-checks.
    pub oracle_samples: u64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            area_tol: 1e-6,
            oracle_samples: 1_000_000,
            seed: 7,
        }
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn push(&mut self, name: &str, prov: Provenance, rel: Relation, expected: f64, computed: f64, tolerance: f64) {
        let abs_error = (computed - expected).abs();
        let pass = match rel {
            Relation::Eq => abs_error <= tolerance,
            Relation::Lt => computed < expected,
            Relation::Gt => computed > expected,
        };
        self.checks.push(Check {
            name: name.into(),
            expected,
            provenance: prov,
            relation: rel,
            computed,
            abs_error,
            tolerance,
            pass,
        });
    }

    fn eq(&mut self, name: &str, prov: Provenance, expected: f64, computed: f64, tolerance: f64) {
        self.push(name, prov, Relation::Eq, expected, computed, tolerance);
    }

    fn holds(&mut self, name: &str, prov: Provenance, ok: bool) {
        self.push(name, prov, Relation::Eq, 1.0, f64::from(u8::from(ok)), 0.0);
    }
}

/// NaN stands in for a computation that errored; it fails every comparison.
fn value(r: Result<f64>) -> f64 {
    r.unwrap_or(f64::NAN)
}

/// Runs the identity suite. Failures become report entries.
pub fn verify(opts: &VerifyOptions) -> VerificationReport {
    use Provenance::{Derived, Paper, Trivial};
    let tol = Tolerance::default();
    let circle = Circle::reference();
    let s3 = 3f64.sqrt();
    let mut s = Suite { checks: Vec::new() };

    let mixed = shapes::mixed_triangle().figure;
    let mixed_area = (8.0 * PI - 6.0 * s3) / 24.0;

    s.eq("mixed_triangle.area", Paper, mixed_area, mixed.area(), 1e-9);
    s.eq(
        "mixed_triangle.area.clipped",
        Paper,
        mixed_area,
        value(mixed.discretize(tol.arc_max_sagitta).map(|p| p.area())),
        opts.area_tol,
    );
    let m = measures::mu(&mixed, &circle, &tol).ok();
    s.eq(
        "mixed_triangle.exterior_area",
        Paper,
        (5.0 * PI - 6.0 * s3) / 24.0,
        m.map_or(f64::NAN, |m| m.exterior_area),
        1e-6,
    );
    s.eq(
        "mixed_triangle.disc_intersection",
        Paper,
        FRAC_PI_8,
        measures::disc_intersection_area(&mixed, &circle, &tol).area,
        1e-6,
    );
    s.eq(
        "mixed_triangle.disc_intersection.clipped",
        Paper,
        FRAC_PI_8,
        value(measures::disc_intersection_area_clipped(&mixed, &circle, tol.arc_max_sagitta).map(|i| i.area)),
        opts.area_tol,
    );
    let mu_mixed = m.map_or(f64::NAN, |m| m.mu);
    s.eq("mixed_triangle.mu", Paper, mu_star(), mu_mixed, 1e-6);
    s.eq("mixed_triangle.mu.rounded", Paper, 0.36, (mu_mixed * 100.0).round() / 100.0, 1e-12);

    let unit = shapes::unit_circle().figure;
    s.eq("unit_circle.area", Paper, FRAC_PI_4, unit.area(), 1e-9);
    let library_fail = shapes::library()
        .iter()
        .filter(|sh| sh.figure.is_convex() && sh.figure.diameter(&tol) <= 1.0 + tol.geom_eps)
        .filter(|sh| !littlewood_check(&sh.figure, &tol).is_ok())
        .count();
    s.eq("littlewood.library_failures", Paper, 0.0, library_fail as f64, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let fuzz_fail = (0..1000)
        .filter(|_| {
            fuzz::random_convex_figure(&mut rng, 16, 1.0).map_or(true, |f| !littlewood_check(&f, &tol).is_ok())
        })
        .count();
    s.eq("littlewood.fuzz_failures", Paper, 0.0, fuzz_fail as f64, 0.0);

    match RadialProfile::from_fn(10_000, f64::sin) {
        Ok(p) => {
            let a = radial_area(&p);
            s.eq("radial_area.sine", Paper, FRAC_PI_4, a.direct, 1e-6);
            s.eq("max_chord_sq.sine", Trivial, 1.0, max_chord_sq(&p), 1e-12);
            s.eq("radial_area.paired_minus_direct", Trivial, 0.0, a.paired - a.direct, 1e-12);
        }
        Err(_) => s.holds("radial_area.sine", Paper, false),
    }

    let lens = shapes::lens().figure;
    s.eq("lens.diameter", Paper, s3, lens.diameter(&tol), 1e-9);
    s.holds(
        "lens.littlewood_not_applicable",
        Paper,
        matches!(littlewood_check(&lens, &tol), LittlewoodVerdict::NotApplicable { .. }),
    );

    let crescent = shapes::exterior_crescent().figure;
    let cm = measures::mu(&crescent, &circle, &tol);
    s.eq("exterior_crescent.mu", Paper, 1.0, value(cm.map(|m| m.mu)), 0.0);
    s.eq(
        "exterior_crescent.disc_intersection",
        Paper,
        0.0,
        measures::disc_intersection_area(&crescent, &circle, &tol).area,
        1e-9,
    );
    s.holds("exterior_crescent.not_convex", Paper, !crescent.is_convex());

    let iso_mu = shapes::isosceles(PI / 3.0)
        .and_then(|sh| measures::mu(&sh.figure, &circle, &tol))
        .ok();
    s.push(
        "isosceles.exterior_area",
        Derived,
        Relation::Gt,
        0.0,
        iso_mu.map_or(f64::NAN, |m| m.exterior_area),
        0.0,
    );
    let iso_mu = iso_mu.map_or(f64::NAN, |m| m.mu);
    s.push("isosceles.mu_below_mixed", Derived, Relation::Lt, mu_mixed - 1e-3, iso_mu, 0.0);
    s.eq("isosceles.mu", Derived, 0.5 - PI / (6.0 * s3), iso_mu, 1e-9);

    let reuleaux = shapes::reuleaux().figure;
    s.eq("reuleaux.perimeter", Paper, PI, reuleaux.perimeter(), 1e-9);
    s.eq("reuleaux.area", Derived, (PI - s3) / 2.0, reuleaux.area(), 1e-9);
    s.push("reuleaux.area_below_circle", Paper, Relation::Lt, unit.area(), reuleaux.area(), 0.0);

    for (name, f) in [("exterior_crescent", &crescent), ("l_shaped", &shapes::l_shaped())] {
        match convex_hull(f, &tol) {
            Ok(h) => {
                s.push(&format!("{name}.hull_area_grows"), Paper, Relation::Gt, f.area(), h.area(), 0.0);
                s.eq(&format!("{name}.hull_diameter"), Paper, f.diameter(&tol), h.diameter(&tol), 1e-9);
            }
            Err(_) => s.holds(&format!("{name}.hull"), Paper, false),
        }
    }

    let audit = perturbation_audit(&mixed, &tol).ok();
    s.holds("perturbation.arc_bulge", Paper, audit.as_ref().is_some_and(|a| a.bulge_flagged));
    s.holds(
        "perturbation.strip_below_kl",
        Paper,
        audit.is_some_and(|a| a.strips.iter().all(|st| st.decreased && st.feasible)),
    );

    let n = opts.oracle_samples;
    match (oracle::mc_area(&mixed, n, opts.seed), oracle::mc_mu(&mixed, &circle, n, opts.seed)) {
        (Ok(a), Ok(mm)) => {
            s.eq("oracle.mixed_triangle.area", Paper, mixed_area, a.value, 4.0 * a.std_error);
            s.eq("oracle.mixed_triangle.mu", Paper, mu_star(), mm.value, 4.0 * mm.std_error);
        }
        _ => s.holds("oracle.mixed_triangle", Paper, false),
    }

    let cfg = OptConfig {
        n_points: 1,
        iterations: 2_000,
        restarts: 2,
        seed: opts.seed,
        ..OptConfig::default()
    };
    s.eq(
        "optimizer.single_point",
        Derived,
        0.5 - PI / (6.0 * s3),
        value(optimize_mu(&cfg).map(|t| t.best_mu)),
        1e-9,
    );

    let overall = s.checks.iter().all(|c| c.pass);
    VerificationReport {
        checks: s.checks,
        overall,
    }
}

impl VerificationReport {
    /// Fixed-width table, one line per check.
    pub fn table(&self) -> String {
        let w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(5);
        let mut out = format!(
            "{:<w$}  {:>22}  {:>22}  {:>10}  {:>9}  {:<8}  result\n",
            "check", "expected", "computed", "abs_error", "tolerance", "source"
        );
        for c in &self.checks {
            let rel = match c.relation {
                Relation::Eq => "",
                Relation::Lt => "<",
                Relation::Gt => ">",
            };
            let prov = match c.provenance {
                Provenance::Paper => "paper",
                Provenance::Trivial => "trivial",
                Provenance::Derived => "derived",
            };
            let _ = writeln!(
                out,
                "{:<w$}  {:>22}  {:>22.17}  {:>10.3e}  {:>9.1e}  {:<8}  {}",
                c.name,
                format!("{rel}{:.17}", c.expected),
                c.computed,
                c.abs_error,
                c.tolerance,
                prov,
                if c.pass { "PASS" } else { "FAIL" }
            );
        }
        let _ = writeln!(
            out,
            "overall: {} ({}/{} checks passed)",
            if self.overall { "PASS" } else { "FAIL" },
            self.checks.iter().filter(|c| c.pass).count(),
            self.checks.len()
        );
        out
    }
}

/// Pixels per unit length.
const SCALE: f64 = 200.0;
/// Drawing window `[-X, X] × [-Y, Y]` in figure coordinates.
const HALF_W: f64 = 1.2;
const HALF_H: f64 = 1.1;

fn sx(x: f64) -> String {
    format!("{:.3}", (x + HALF_W) * SCALE)
}

fn sy(y: f64) -> String {
    format!("{:.3}", (HALF_H - y) * SCALE)
}

fn len(v: f64) -> String {
    format!("{:.3}", v * SCALE)
}

/// SVG path data for the boundary. The y axis is flipped, so
/// counter-clockwise arcs get sweep flag 0.
fn path_data(f: &Figure) -> String {
    let mut d = String::new();
    let first = f.edges()[0].start();
    let _ = write!(d, "M {} {}", sx(first.x), sy(first.y));
    for e in f.edges() {
        match e {
            Edge::Segment { end, .. } => {
                let _ = write!(d, " L {} {}", sx(end.x), sy(end.y));
            }
            Edge::Arc(a) => {
                let sweep = match a.orientation {
                    Orientation::Ccw => 0,
                    Orientation::Cw => 1,
                };
                let r = len(a.radius);
                if a.full_turn {
                    // two half turns; a single arc command cannot close a circle
                    let mid = a.point_at_offset(PI);
                    let _ = write!(d, " A {r} {r} 0 0 {sweep} {} {}", sx(mid.x), sy(mid.y));
                    let _ = write!(d, " A {r} {r} 0 0 {sweep} {} {}", sx(a.end.x), sy(a.end.y));
                } else {
                    let large = u8::from(a.is_major());
                    let _ = write!(d, " A {r} {r} 0 {large} {sweep} {} {}", sx(a.end.x), sy(a.end.y));
                }
            }
        }
    }
    d.push_str(" Z");
    d
}

/// Draws `f` with circle `c`: the part of `f` outside the disc is shaded and
/// `K`, `L`, `C`, `D` are labelled. Output depends only on the inputs.
pub fn render_svg(title: &str, f: &Figure, c: Option<&Circle>, tol: &Tolerance) -> Result<String> {
    let w = len(2.0 * HALF_W);
    let h = len(2.0 * HALF_H);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", escape(title));
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let d = path_data(f);

    if let Some(c) = c {
        let _ = writeln!(s, r#"<defs><mask id="outside">"#);
        let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="{}" fill="black"/>"#,
            sx(c.center.x),
            sy(c.center.y),
            len(c.radius)
        );
        let _ = writeln!(s, "</mask></defs>");
        let _ = writeln!(s, r##"<path d="{d}" fill="#d9534f" fill-opacity="0.45" mask="url(#outside)"/>"##);
        let _ = writeln!(
            s,
            r##"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="#337ab7" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
            sx(c.center.x),
            sy(c.center.y),
            len(c.radius)
        );
    }
    let _ = writeln!(s, r##"<path d="{d}" fill="none" stroke="#222222" stroke-width="2" stroke-linejoin="round"/>"##);

    for (label, p, dy) in [
        ("K", shapes::k(), 0.0),
        ("L", shapes::l(), 0.0),
        ("C", shapes::c(), 0.06),
        ("D", shapes::d(), -0.09),
    ] {
        let dx = match label {
            "K" => -0.09,
            "L" => 0.04,
            _ => -0.02,
        };
        let _ = writeln!(s, r##"<circle cx="{}" cy="{}" r="3" fill="#222222"/>"##, sx(p.x), sy(p.y));
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="serif" font-size="22">{label}</text>"#,
            sx(p.x + dx),
            sy(p.y + dy - 0.02)
        );
    }
    if let Some(c) = c {
        let m = measures::mu(f, c, tol)?;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="serif" font-size="22">μ ≈ {:.4}</text>"#,
            sx(-HALF_W + 0.05),
            sy(HALF_H - 0.12),
            m.mu
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn render_shape(shape: &NamedShape, tol: &Tolerance) -> Result<String> {
    render_svg(&shape.name, &shape.figure, shape.reference_circle.as_ref(), tol)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
